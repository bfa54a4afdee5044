// Compiled with -mavx2 only; callers reach it through the dispatch table
// after a CPUID check.

#include <immintrin.h>

#include "ipaths/simd/kernels.hpp"

namespace ipaths::simd {

namespace {

void merge_max_avx2(double* best, std::int64_t* arg, const double* cand, std::int64_t cand_arg,
                    std::size_t len) {
    const __m256i fill = _mm256_set1_epi64x(cand_arg);
    std::size_t j = 0;
    for (; j + 4 <= len; j += 4) {
        const __m256d b = _mm256_loadu_pd(best + j);
        const __m256d c = _mm256_loadu_pd(cand + j);
        // ordered, non-signalling: NaN never wins, matching the scalar '>'
        const __m256d take = _mm256_cmp_pd(c, b, _CMP_GT_OQ);
        _mm256_storeu_pd(best + j, _mm256_blendv_pd(b, c, take));
        const __m256d a = _mm256_castsi256_pd(
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(arg + j)));
        const __m256d merged = _mm256_blendv_pd(a, _mm256_castsi256_pd(fill), take);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(arg + j), _mm256_castpd_si256(merged));
    }
    for (; j < len; ++j) {
        if (cand[j] > best[j]) {
            best[j] = cand[j];
            arg[j] = cand_arg;
        }
    }
}

void extend_row_avx2(double* out, const double* in, double weight, const double* factors,
                     std::size_t len) {
    const __m256d w = _mm256_set1_pd(weight);
    std::size_t j = 0;
    for (; j + 4 <= len; j += 4) {
        const __m256d gain = _mm256_mul_pd(w, _mm256_loadu_pd(factors + j));
        _mm256_storeu_pd(out + j, _mm256_add_pd(_mm256_loadu_pd(in + j), gain));
    }
    for (; j < len; ++j) {
        const double gain = weight * factors[j];
        out[j] = in[j] + gain;
    }
}

}  // namespace

namespace detail {
const KernelTable avx2_kernels{Isa::Avx2, &merge_max_avx2, &extend_row_avx2};
}

}  // namespace ipaths::simd
