#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lobscale/series.hpp"

namespace lobscale {

/// Result of an ordinary least-squares line fit on log-log points.
struct ExponentFit {
    double exponent = 0.0;   // slope
    double intercept = 0.0;  // in log space
    double fit_min = 0.0;    // abscissa range actually used
    double fit_max = 0.0;
    double r_squared = 0.0;
    double std_error = 0.0;  // of the slope
    int n_points = 0;
};

/// Abscissa window for a fit; hi == 0 means no upper bound.
struct FitRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Geometric-bin histogram normalized to integrate to one.
struct LogHistogram {
    std::vector<double> bin_edges;        // size bins()+1, increasing
    std::vector<double> densities;        // count / (total * bin width)
    std::vector<std::int64_t> counts;

    std::size_t bins() const { return counts.size(); }
    double center(std::size_t i) const;   // geometric mean of the bin edges
};

using LagCurve = std::vector<std::pair<std::int64_t, double>>;

/// Sample mean square displacement M(k) = mean over i of (x[i+k] - x[i])^2.
LagCurve sample_msd(const Series& x, std::span<const std::int64_t> lags);

/// Log-log line through an MSD curve; exponent is the scaling lambda.
/// Points with M(k) = 0 are excluded. Default range is [10, N/100] via
/// msd_default_fit_range.
ExponentFit fit_msd_exponent(const LagCurve& msd, FitRange range);
FitRange msd_default_fit_range(std::size_t n);

/// Autocovariance rho(k) = (1/(N-k)) * sum_i y[i] y[i+k]; uncentered by
/// default (increment series are zero-mean by construction).
LagCurve autocovariance(const Series& y, std::span<const std::int64_t> lags,
                        bool centered = false);

/// Absolute Value Estimator: block means over size n, delta_n = mean
/// |block mean - overall mean| ~ n^{H-1}; returns H = 1 + slope.
ExponentFit ave_hurst(const Series& y, std::span<const std::int64_t> block_sizes);

/// Higuchi path-length estimator: L_n ~ n^{-D}, returns H = 2 - D.
ExponentFit higuchi_hurst(const Series& x, std::span<const std::int64_t> window_sizes);

enum class TailSide { positive, negative, absolute };

/// Power-law tail fit of an increment PDF over the top `tail_fraction` of
/// samples (log-binned regression), with the Hill estimator on the same tail
/// as a cross-check. `nu` is the PDF exponent: P(x) ~ |x|^{-nu}.
struct TailFit {
    double nu = 0.0;
    double hill_nu = 0.0;
    ExponentFit fit;
    std::size_t tail_samples = 0;

    double alpha() const { return nu - 1.0; }
    double inv_alpha() const { return 1.0 / (nu - 1.0); }
    bool normalizable() const { return nu > 1.0; }
};

TailFit tail_fit(const Series& y, TailSide side, double tail_fraction,
                 int bins_per_decade = 8, int min_bin_count = 5);

/// Geometric bins spanning [min, max] of strictly positive samples.
LogHistogram log_histogram(std::span<const double> samples, int bins_per_decade);

/// Shared log-log OLS: keeps points with x in [range.lo, range.hi] and y > 0.
ExponentFit fit_power_law(std::span<const double> x, std::span<const double> y,
                          FitRange range);

// Geometric grids n_j = floor(2^{j/2}), deduplicated, within [lo, hi].
std::vector<std::int64_t> geometric_grid(std::int64_t lo, std::int64_t hi);
// Lag grid for sample_msd: [1, N/8].
std::vector<std::int64_t> msd_lag_grid(std::size_t n);
// Block grid for ave_hurst, capped so every n keeps at least min_blocks
// blocks; n_max = 0 leaves only the block-count cap.
std::vector<std::int64_t> ave_block_grid(std::size_t n, std::int64_t n_min = 1,
                                         std::int64_t n_max = 0, int min_blocks = 8);
std::vector<std::int64_t> higuchi_window_grid(std::size_t n, std::int64_t n_min = 1,
                                              std::int64_t n_max = 0, int min_windows = 4);

}  // namespace lobscale
