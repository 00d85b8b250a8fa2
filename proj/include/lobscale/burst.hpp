#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lobscale/estimators.hpp"
#include "lobscale/series.hpp"

namespace lobscale {

/// Burst and inter-burst durations (in ticks) of a path series around one
/// threshold. Segments before the first and after the last crossing are
/// censored: counted in discarded_edges, their ticks in edge_ticks.
struct DurationSample {
    double threshold = 0.0;
    std::vector<std::int64_t> bursts;       // ticks spent at or above threshold
    std::vector<std::int64_t> interbursts;  // ticks spent below
    int discarded_edges = 0;
    std::int64_t edge_ticks = 0;
};

enum class DurationKind { burst, interburst };

/// Indices i where the series changes side of the threshold between i-1 and
/// i. x == threshold counts as above.
std::vector<std::size_t> find_crossings(const Series& x, double threshold);

/// Split a path series into burst / inter-burst durations at one threshold.
DurationSample durations(const Series& x, double threshold);

/// Durations at thresholds h = multiplier * stddev(x), one sample per
/// multiplier, input order preserved.
std::vector<std::pair<double, DurationSample>> threshold_sweep(
    const Series& x, std::span<const double> multipliers);

/// Power-law fit of a duration PDF: P(T) ~ T^{-eta}, H = 2 - eta.
struct BurstFit {
    double eta = 0.0;
    double h_bd = 0.0;
    ExponentFit fit;
};

/// Log-binned histogram of integer durations over [lo, hi]; bin edges are
/// snapped to integers so no bin is narrower than one tick. Densities are
/// normalized by the full duration count, so the histogram is the sample PDF
/// restricted to [lo, hi].
LogHistogram duration_histogram(std::span<const std::int64_t> durations,
                                std::int64_t lo, std::int64_t hi, int bins_per_decade);

BurstFit fit_burst_pdf(const DurationSample& sample, DurationKind kind, FitRange range,
                       int bins_per_decade = 6, int min_bin_count = 3);

}  // namespace lobscale
