#include "ipaths/simd/kernels.hpp"

namespace ipaths::simd {

namespace {

void merge_max_scalar(double* best, std::int64_t* arg, const double* cand, std::int64_t cand_arg,
                      std::size_t len) {
    for (std::size_t j = 0; j < len; ++j) {
        if (cand[j] > best[j]) {
            best[j] = cand[j];
            arg[j] = cand_arg;
        }
    }
}

void extend_row_scalar(double* out, const double* in, double weight, const double* factors,
                       std::size_t len) {
    for (std::size_t j = 0; j < len; ++j) {
        const double gain = weight * factors[j];
        out[j] = in[j] + gain;
    }
}

}  // namespace

namespace detail {
const KernelTable scalar_kernels{Isa::Scalar, &merge_max_scalar, &extend_row_scalar};
}

}  // namespace ipaths::simd
