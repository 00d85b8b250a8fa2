#pragma once

#include <cstdint>
#include <vector>

#include "lobscale/series.hpp"

namespace lobscale {

struct TransformConfig {
    std::uint64_t seed = 1;
    double bound = 100000.0;  // soft diffusion bound B
    double d = -0.3;          // memory parameter, |d| < 0.5
    int truncation = 1000;    // reversion terms
    bool drop_warmup = false; // drop the first `truncation` reverted samples
                              // before running estimators

    void validate() const;
};

/// Uniform random permutation (Fisher-Yates over mt19937_64) of an increment
/// series. Deterministic per seed; the seed is recorded in the output meta.
Series shuffle_increments(const Series& increments, std::uint64_t seed);

/// Running sum offset by `start`. Output length equals input length.
Series accumulate(const Series& increments, double start);

/// Accumulation with the soft boundary x <- max(min(x + y, B), -B).
Series bound_series(const Series& increments, double bound, double start);

/// ARFIMA(0,d,0) weights w_0 = 1, w_j = w_{j-1} * (j - 1 + d) / j.
/// Computed by recursion; direct Gamma quotients overflow for large j.
std::vector<double> fractional_weights(double d, int n_terms);

/// Fractional reversion: y[i] = sum_{j=0}^{min(i, n_terms-1)} w_j * z[i-j].
/// Leading samples use only the available history, so length is preserved.
Series fractional_revert(const Series& increments, double d, int n_terms);

/// Copy without the first `count` samples (warm-up exclusion for estimator
/// runs on reverted series).
Series drop_prefix(const Series& s, std::size_t count);

}  // namespace lobscale
