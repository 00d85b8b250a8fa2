#include "lobscale/kernels.hpp"

namespace lobscale::kernels {

namespace {

constexpr Ops kScalarOps{
    &scalar::sum,          &scalar::dot,
    &scalar::lag_dot,      &scalar::lag_sq_diff_sum,
    &scalar::lag_abs_diff_sum, &scalar::abs_dev_sum,
};

#ifdef LOBSCALE_HAVE_AVX2_BUILD
constexpr Ops kAvx2Ops{
    &avx2::sum,          &avx2::dot,
    &avx2::lag_dot,      &avx2::lag_sq_diff_sum,
    &avx2::lag_abs_diff_sum, &avx2::abs_dev_sum,
};

bool cpu_has_avx2_fma() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

Backend detect() {
#ifdef LOBSCALE_HAVE_AVX2_BUILD
    if (cpu_has_avx2_fma()) return Backend::avx2;
#endif
    return Backend::scalar;
}

Backend g_backend = detect();

}  // namespace

bool backend_available(Backend b) {
    if (b == Backend::scalar) return true;
#ifdef LOBSCALE_HAVE_AVX2_BUILD
    if (b == Backend::avx2) return cpu_has_avx2_fma();
#endif
    return false;
}

void force_backend(Backend b) {
    g_backend = backend_available(b) ? b : Backend::scalar;
}

Backend active_backend() { return g_backend; }

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "?";
}

const Ops& active() {
#ifdef LOBSCALE_HAVE_AVX2_BUILD
    if (g_backend == Backend::avx2) return kAvx2Ops;
#endif
    return kScalarOps;
}

}  // namespace lobscale::kernels
