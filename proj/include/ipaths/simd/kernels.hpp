#pragma once

// Row kernels for the dense score table. Each kernel has a scalar reference
// and an AVX2 variant; the variant is chosen once at startup from CPUID and
// can be pinned with IPATHS_SIMD=scalar|avx2 or set_isa_override().
//
// Both variants are bit-identical: no FMA contraction, and the max is taken
// with a strict comparison so the earlier candidate wins ties.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace ipaths::simd {

enum class Isa { Scalar, Avx2 };

std::string to_string(Isa isa);

struct KernelTable {
    Isa isa;

    /// best[j], arg[j] <- cand[j], cand_arg wherever cand[j] > best[j].
    void (*merge_max)(double* best, std::int64_t* arg, const double* cand, std::int64_t cand_arg,
                      std::size_t len);

    /// out[j] <- in[j] + weight * factors[j]. -inf entries stay -inf.
    void (*extend_row)(double* out, const double* in, double weight, const double* factors,
                       std::size_t len);
};

bool isa_supported(Isa isa);

/// Kernel table for a specific ISA; throws std::runtime_error if the CPU
/// lacks it.
const KernelTable& kernels_for(Isa isa);

/// Currently selected kernels.
const KernelTable& kernels();

/// Forces a variant (nullopt restores automatic selection).
void set_isa_override(std::optional<Isa> isa);

namespace detail {
extern const KernelTable scalar_kernels;
#if defined(IPATHS_HAVE_AVX2)
extern const KernelTable avx2_kernels;
#endif
}  // namespace detail

}  // namespace ipaths::simd
