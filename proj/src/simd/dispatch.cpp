#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "ipaths/simd/kernels.hpp"

namespace ipaths::simd {

std::string to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return true;
        case Isa::Avx2:
#if defined(IPATHS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& kernels_for(Isa isa) {
    if (!isa_supported(isa))
        throw std::runtime_error("SIMD variant '" + to_string(isa) + "' is not available on this CPU");
#if defined(IPATHS_HAVE_AVX2)
    if (isa == Isa::Avx2)
        return detail::avx2_kernels;
#endif
    return detail::scalar_kernels;
}

namespace {

const KernelTable* detect() {
    if (const char* env = std::getenv("IPATHS_SIMD")) {
        std::string_view want(env);
        if (want == "scalar")
            return &detail::scalar_kernels;
        if (want == "avx2")
            return &kernels_for(Isa::Avx2);
    }
    return isa_supported(Isa::Avx2) ? &kernels_for(Isa::Avx2) : &detail::scalar_kernels;
}

std::atomic<const KernelTable*> g_override{nullptr};

}  // namespace

const KernelTable& kernels() {
    if (const KernelTable* forced = g_override.load(std::memory_order_acquire))
        return *forced;
    static const KernelTable* selected = detect();
    return *selected;
}

void set_isa_override(std::optional<Isa> isa) {
    g_override.store(isa ? &kernels_for(*isa) : nullptr, std::memory_order_release);
}

}  // namespace ipaths::simd
