#include "lobscale/kernels.hpp"

#include <cmath>

namespace lobscale::kernels::scalar {

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double lag_dot(const double* x, std::size_t count, std::size_t lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += x[i] * x[i + lag];
    return acc;
}

double lag_sq_diff_sum(const double* x, std::size_t count, std::size_t lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double d = x[i + lag] - x[i];
        acc += d * d;
    }
    return acc;
}

double lag_abs_diff_sum(const double* x, std::size_t count, std::size_t lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += std::fabs(x[i + lag] - x[i]);
    return acc;
}

double abs_dev_sum(const double* x, std::size_t n, double center) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i] - center);
    return acc;
}

}  // namespace lobscale::kernels::scalar
