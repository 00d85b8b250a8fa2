#pragma once

#include <cstddef>

// Arithmetic inner loops shared by the estimators and the fractional
// reversion. Scalar versions are the reference; an AVX2/FMA variant is
// selected at runtime when the CPU supports it. All lag kernels take the
// number of terms, not the array length: the caller guarantees that
// x[0 .. count+lag) is valid.

namespace lobscale::kernels {

namespace scalar {
double sum(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
// sum of x[i] * x[i+lag] for i in [0, count)
double lag_dot(const double* x, std::size_t count, std::size_t lag);
// sum of (x[i+lag] - x[i])^2 for i in [0, count)
double lag_sq_diff_sum(const double* x, std::size_t count, std::size_t lag);
// sum of |x[i+lag] - x[i]| for i in [0, count)
double lag_abs_diff_sum(const double* x, std::size_t count, std::size_t lag);
// sum of |x[i] - center| for i in [0, n)
double abs_dev_sum(const double* x, std::size_t n, double center);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define LOBSCALE_HAVE_AVX2_BUILD 1
namespace avx2 {
double sum(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double lag_dot(const double* x, std::size_t count, std::size_t lag);
double lag_sq_diff_sum(const double* x, std::size_t count, std::size_t lag);
double lag_abs_diff_sum(const double* x, std::size_t count, std::size_t lag);
double abs_dev_sum(const double* x, std::size_t n, double center);
}  // namespace avx2
#endif

enum class Backend { scalar, avx2 };

struct Ops {
    double (*sum)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    double (*lag_dot)(const double*, std::size_t, std::size_t);
    double (*lag_sq_diff_sum)(const double*, std::size_t, std::size_t);
    double (*lag_abs_diff_sum)(const double*, std::size_t, std::size_t);
    double (*abs_dev_sum)(const double*, std::size_t, double);
};

const Ops& active();
Backend active_backend();
const char* backend_name(Backend b);
bool backend_available(Backend b);
// Override the dispatch decision (used by the equivalence tests and the
// CLI --kernels flag). Requesting an unavailable backend falls back to scalar.
void force_backend(Backend b);

inline double sum(const double* x, std::size_t n) { return active().sum(x, n); }
inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline double lag_dot(const double* x, std::size_t count, std::size_t lag) {
    return active().lag_dot(x, count, lag);
}
inline double lag_sq_diff_sum(const double* x, std::size_t count, std::size_t lag) {
    return active().lag_sq_diff_sum(x, count, lag);
}
inline double lag_abs_diff_sum(const double* x, std::size_t count, std::size_t lag) {
    return active().lag_abs_diff_sum(x, count, lag);
}
inline double abs_dev_sum(const double* x, std::size_t n, double center) {
    return active().abs_dev_sum(x, n, center);
}

}  // namespace lobscale::kernels
