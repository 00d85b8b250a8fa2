#include "lobscale/burst.hpp"

#include <algorithm>
#include <cmath>

namespace lobscale {

std::vector<std::size_t> find_crossings(const Series& x, double threshold) {
    if (x.empty()) throw Error("find_crossings: empty series");
    std::vector<std::size_t> out;
    bool above = x.values[0] >= threshold;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const bool a = x.values[i] >= threshold;
        if (a != above) {
            out.push_back(i);
            above = a;
        }
    }
    return out;
}

DurationSample durations(const Series& x, double threshold) {
    DurationSample ds;
    ds.threshold = threshold;
    const auto cross = find_crossings(x, threshold);
    const auto n = static_cast<std::int64_t>(x.size());
    if (cross.empty()) {
        ds.discarded_edges = 1;  // the whole series is one censored segment
        ds.edge_ticks = n - 1;
        return ds;
    }
    ds.discarded_edges = 2;
    ds.edge_ticks = static_cast<std::int64_t>(cross.front()) +
                    (n - 1 - static_cast<std::int64_t>(cross.back()));
    bool above = x.values[cross.front()] >= threshold;
    for (std::size_t j = 0; j + 1 < cross.size(); ++j) {
        const auto len = static_cast<std::int64_t>(cross[j + 1] - cross[j]);
        (above ? ds.bursts : ds.interbursts).push_back(len);
        above = !above;
    }
    return ds;
}

std::vector<std::pair<double, DurationSample>> threshold_sweep(
    const Series& x, std::span<const double> multipliers) {
    if (x.empty()) throw Error("threshold_sweep: empty series");
    const std::size_t n = x.size();
    double mean = 0.0;
    for (const double v : x.values) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const double v : x.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    if (var == 0.0) throw Error("threshold_sweep: series has zero variance");
    const double sigma = std::sqrt(var);

    std::vector<std::pair<double, DurationSample>> out;
    out.reserve(multipliers.size());
    for (const double m : multipliers) out.emplace_back(m, durations(x, m * sigma));
    return out;
}

LogHistogram duration_histogram(std::span<const std::int64_t> durations,
                                std::int64_t lo, std::int64_t hi, int bins_per_decade) {
    if (durations.empty()) throw Error("duration_histogram: no durations");
    if (lo < 1 || hi <= lo) throw Error("duration_histogram: bad bin range");
    if (bins_per_decade < 1) throw Error("duration_histogram: bins_per_decade must be >= 1");
    const double ratio = std::pow(10.0, 1.0 / bins_per_decade);

    LogHistogram h;
    h.bin_edges.push_back(static_cast<double>(lo));
    while (h.bin_edges.back() <= static_cast<double>(hi)) {
        const double e = h.bin_edges.back();
        h.bin_edges.push_back(std::max(e + 1.0, std::ceil(e * ratio)));
    }
    const std::size_t bins = h.bin_edges.size() - 1;
    h.counts.assign(bins, 0);
    for (const std::int64_t t : durations) {
        const auto td = static_cast<double>(t);
        if (td < h.bin_edges.front() || td >= h.bin_edges.back()) continue;
        const std::size_t idx =
            static_cast<std::size_t>(std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), td) -
                                     h.bin_edges.begin()) -
            1;
        ++h.counts[idx];
    }
    h.densities.resize(bins);
    const double total = static_cast<double>(durations.size());
    for (std::size_t i = 0; i < bins; ++i)
        h.densities[i] =
            static_cast<double>(h.counts[i]) / (total * (h.bin_edges[i + 1] - h.bin_edges[i]));
    return h;
}

BurstFit fit_burst_pdf(const DurationSample& sample, DurationKind kind, FitRange range,
                       int bins_per_decade, int min_bin_count) {
    const auto& durs = kind == DurationKind::burst ? sample.bursts : sample.interbursts;
    if (durs.size() < 100)
        throw Error("fit_burst_pdf: insufficient sample (" + std::to_string(durs.size()) +
                    " durations, need >= 100)");
    const auto lo = static_cast<std::int64_t>(range.lo > 0.0 ? range.lo : 2.0);
    std::int64_t hi = static_cast<std::int64_t>(range.hi);
    if (hi <= lo) throw Error("fit_burst_pdf: bad fit range");

    LogHistogram h = duration_histogram(durs, lo, hi, bins_per_decade);
    std::vector<double> centers, dens;
    for (std::size_t i = 0; i < h.bins(); ++i) {
        if (h.counts[i] < min_bin_count) continue;
        centers.push_back(h.center(i));
        dens.push_back(h.densities[i]);
    }
    BurstFit bf;
    bf.fit = fit_power_law(centers, dens, FitRange{0.0, 0.0});
    bf.eta = -bf.fit.exponent;
    bf.h_bd = 2.0 - bf.eta;
    return bf;
}

}  // namespace lobscale
