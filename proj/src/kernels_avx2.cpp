// AVX2/FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma; nothing here may be called unless the CPU reports both
// features (the dispatcher in kernels.cpp checks).

#if defined(__x86_64__) || defined(_M_X64)

#include "lobscale/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace lobscale::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline __m256d abs_pd(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffll));
    return _mm256_and_pd(v, mask);
}

}  // namespace

double sum(const double* x, std::size_t n) {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
        a1 = _mm256_add_pd(a1, _mm256_loadu_pd(x + i + 4));
    }
    double acc = hsum(_mm256_add_pd(a0, a1));
    for (; i < n; ++i) acc += x[i];
    return acc;
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        a0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), a0);
        a1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), a1);
    }
    double acc = hsum(_mm256_add_pd(a0, a1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double lag_dot(const double* x, std::size_t count, std::size_t lag) {
    return dot(x, x + lag, count);
}

double lag_sq_diff_sum(const double* x, std::size_t count, std::size_t lag) {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= count; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i + lag), _mm256_loadu_pd(x + i));
        const __m256d d1 =
            _mm256_sub_pd(_mm256_loadu_pd(x + i + 4 + lag), _mm256_loadu_pd(x + i + 4));
        a0 = _mm256_fmadd_pd(d0, d0, a0);
        a1 = _mm256_fmadd_pd(d1, d1, a1);
    }
    double acc = hsum(_mm256_add_pd(a0, a1));
    for (; i < count; ++i) {
        const double d = x[i + lag] - x[i];
        acc += d * d;
    }
    return acc;
}

double lag_abs_diff_sum(const double* x, std::size_t count, std::size_t lag) {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= count; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i + lag), _mm256_loadu_pd(x + i));
        const __m256d d1 =
            _mm256_sub_pd(_mm256_loadu_pd(x + i + 4 + lag), _mm256_loadu_pd(x + i + 4));
        a0 = _mm256_add_pd(a0, abs_pd(d0));
        a1 = _mm256_add_pd(a1, abs_pd(d1));
    }
    double acc = hsum(_mm256_add_pd(a0, a1));
    for (; i < count; ++i) acc += std::fabs(x[i + lag] - x[i]);
    return acc;
}

double abs_dev_sum(const double* x, std::size_t n, double center) {
    const __m256d c = _mm256_set1_pd(center);
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        a0 = _mm256_add_pd(a0, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), c)));
        a1 = _mm256_add_pd(a1, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i + 4), c)));
    }
    double acc = hsum(_mm256_add_pd(a0, a1));
    for (; i < n; ++i) acc += std::fabs(x[i] - center);
    return acc;
}

}  // namespace lobscale::kernels::avx2

#endif  // x86_64
