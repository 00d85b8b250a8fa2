#include "lobscale/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "lobscale/kernels.hpp"

namespace lobscale {

double LogHistogram::center(std::size_t i) const {
    return std::sqrt(bin_edges[i] * bin_edges[i + 1]);
}

ExponentFit fit_power_law(std::span<const double> x, std::span<const double> y,
                          FitRange range) {
    std::vector<double> lx, ly;
    lx.reserve(x.size());
    ly.reserve(x.size());
    double used_min = 0.0, used_max = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < range.lo || (range.hi > 0.0 && x[i] > range.hi)) continue;
        if (!(y[i] > 0.0)) continue;  // log-undefined points are excluded
        if (lx.empty() || x[i] < used_min) used_min = x[i];
        if (lx.empty() || x[i] > used_max) used_max = x[i];
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    const std::size_t n = lx.size();
    if (n < 3) throw Error("fit_power_law: fewer than 3 usable points in fit range");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = lx[i] - mx;
        const double dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw Error("fit_power_law: degenerate abscissa");

    ExponentFit fit;
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    fit.fit_min = used_min;
    fit.fit_max = used_max;
    fit.n_points = static_cast<int>(n);
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.intercept + fit.exponent * lx[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.std_error = n > 2 ? std::sqrt(ss_res / (static_cast<double>(n) - 2.0) / sxx) : 0.0;
    return fit;
}

std::vector<std::int64_t> geometric_grid(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> grid;
    for (int j = 0;; ++j) {
        const auto n = static_cast<std::int64_t>(std::floor(std::pow(2.0, 0.5 * j)));
        if (n > hi) break;
        if (n >= lo && (grid.empty() || n != grid.back())) grid.push_back(n);
    }
    return grid;
}

std::vector<std::int64_t> msd_lag_grid(std::size_t n) {
    if (n < 16) throw Error("msd_lag_grid: series too short");
    return geometric_grid(1, static_cast<std::int64_t>(n / 8));
}

std::vector<std::int64_t> ave_block_grid(std::size_t n, std::int64_t n_min,
                                         std::int64_t n_max, int min_blocks) {
    std::int64_t cap = static_cast<std::int64_t>(n) / min_blocks;
    if (n_max > 0) cap = std::min(cap, n_max);
    auto grid = geometric_grid(std::max<std::int64_t>(n_min, 1), cap);
    if (grid.size() < 3) throw Error("ave_block_grid: series too short for a fit");
    return grid;
}

std::vector<std::int64_t> higuchi_window_grid(std::size_t n, std::int64_t n_min,
                                              std::int64_t n_max, int min_windows) {
    std::int64_t cap = (static_cast<std::int64_t>(n) - 1) / min_windows;
    if (n_max > 0) cap = std::min(cap, n_max);
    auto grid = geometric_grid(std::max<std::int64_t>(n_min, 1), cap);
    if (grid.size() < 3) throw Error("higuchi_window_grid: series too short for a fit");
    return grid;
}

LagCurve sample_msd(const Series& x, std::span<const std::int64_t> lags) {
    if (x.empty()) throw Error("sample_msd: empty series");
    const std::size_t n = x.size();
    LagCurve out;
    out.reserve(lags.size());
    for (const std::int64_t k : lags) {
        if (k < 1) throw Error("sample_msd: lags must be >= 1");
        if (static_cast<std::size_t>(k) >= n)
            throw Error("sample_msd: lag " + std::to_string(k) + " >= series length");
        const std::size_t count = n - static_cast<std::size_t>(k);
        const double s = kernels::lag_sq_diff_sum(x.values.data(), count,
                                                  static_cast<std::size_t>(k));
        out.emplace_back(k, s / static_cast<double>(count));
    }
    return out;
}

FitRange msd_default_fit_range(std::size_t n) {
    return FitRange{10.0, std::max(20.0, static_cast<double>(n) / 100.0)};
}

ExponentFit fit_msd_exponent(const LagCurve& msd, FitRange range) {
    std::vector<double> ks, ms;
    ks.reserve(msd.size());
    ms.reserve(msd.size());
    for (const auto& [k, m] : msd) {
        ks.push_back(static_cast<double>(k));
        ms.push_back(m);
    }
    return fit_power_law(ks, ms, range);
}

LagCurve autocovariance(const Series& y, std::span<const std::int64_t> lags,
                        bool centered) {
    if (y.empty()) throw Error("autocovariance: empty series");
    const std::size_t n = y.size();
    double mean = 0.0;
    const double* data = y.values.data();
    std::vector<double> centered_values;
    if (centered) {
        mean = kernels::sum(data, n) / static_cast<double>(n);
        centered_values.resize(n);
        for (std::size_t i = 0; i < n; ++i) centered_values[i] = data[i] - mean;
        data = centered_values.data();
    }
    LagCurve out;
    out.reserve(lags.size());
    for (const std::int64_t k : lags) {
        if (k < 0) throw Error("autocovariance: negative lag");
        if (static_cast<std::size_t>(k) >= n)
            throw Error("autocovariance: lag " + std::to_string(k) + " >= series length");
        const std::size_t count = n - static_cast<std::size_t>(k);
        const double s = kernels::lag_dot(data, count, static_cast<std::size_t>(k));
        out.emplace_back(k, s / static_cast<double>(count));
    }
    return out;
}

ExponentFit ave_hurst(const Series& y, std::span<const std::int64_t> block_sizes) {
    if (y.is_path) throw Error("ave_hurst: expects an increment series, got a path");
    if (y.empty()) throw Error("ave_hurst: empty series");
    const std::size_t n = y.size();
    const double mean = kernels::sum(y.values.data(), n) / static_cast<double>(n);

    std::vector<double> ns, deltas;
    std::vector<double> block_means;
    for (const std::int64_t bs : block_sizes) {
        if (bs < 1) throw Error("ave_hurst: block size must be >= 1");
        const std::size_t m = n / static_cast<std::size_t>(bs);
        if (m < 8)
            throw Error("ave_hurst: block size " + std::to_string(bs) +
                        " leaves fewer than 8 blocks");
        block_means.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            const double* blk = y.values.data() + j * static_cast<std::size_t>(bs);
            block_means[j] =
                kernels::sum(blk, static_cast<std::size_t>(bs)) / static_cast<double>(bs);
        }
        const double delta =
            kernels::abs_dev_sum(block_means.data(), m, mean) / static_cast<double>(m);
        if (delta == 0.0) throw Error("ave_hurst: degenerate series (zero dispersion)");
        ns.push_back(static_cast<double>(bs));
        deltas.push_back(delta);
    }
    ExponentFit fit = fit_power_law(ns, deltas, FitRange{0.0, 0.0});
    fit.exponent = 1.0 + fit.exponent;  // delta_n ~ n^{H-1}
    return fit;
}

ExponentFit higuchi_hurst(const Series& x, std::span<const std::int64_t> window_sizes) {
    if (!x.is_path) throw Error("higuchi_hurst: expects a path series, got increments");
    if (x.size() < 2) throw Error("higuchi_hurst: series too short");
    const std::size_t n = x.size();

    std::vector<double> ns, lengths;
    for (const std::int64_t w : window_sizes) {
        if (w < 1) throw Error("higuchi_hurst: window size must be >= 1");
        const std::size_t m = (n - 1) / static_cast<std::size_t>(w);
        if (m < 4)
            throw Error("higuchi_hurst: window " + std::to_string(w) +
                        " leaves fewer than 4 strides");
        // The phase/stride double sum collapses to one contiguous lag sum:
        // every index pair (i + j*w, i + (j-1)*w) walks t, t+w over
        // t = 0 .. (m-1)*w - 1 exactly once.
        const std::size_t count = (m - 1) * static_cast<std::size_t>(w);
        const double s =
            kernels::lag_abs_diff_sum(x.values.data(), count, static_cast<std::size_t>(w));
        const double wd = static_cast<double>(w);
        const double len =
            static_cast<double>(n - 1) / (wd * wd * wd) * s / static_cast<double>(m - 1);
        if (len == 0.0) throw Error("higuchi_hurst: zero path length");
        ns.push_back(wd);
        lengths.push_back(len);
    }
    ExponentFit fit = fit_power_law(ns, lengths, FitRange{0.0, 0.0});
    fit.exponent = 2.0 + fit.exponent;  // L_n ~ n^{-D}, H = 2 - D
    return fit;
}

LogHistogram log_histogram(std::span<const double> samples, int bins_per_decade) {
    if (samples.empty()) throw Error("log_histogram: no samples");
    if (bins_per_decade < 1) throw Error("log_histogram: bins_per_decade must be >= 1");
    double lo = samples[0], hi = samples[0];
    for (const double s : samples) {
        if (!(s > 0.0)) throw Error("log_histogram: non-positive sample");
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    const double ratio = std::pow(10.0, 1.0 / bins_per_decade);
    std::size_t bins =
        static_cast<std::size_t>(std::floor(std::log10(hi / lo) * bins_per_decade)) + 1;
    while (lo * std::pow(ratio, static_cast<double>(bins)) <= hi) ++bins;

    LogHistogram h;
    h.bin_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
        h.bin_edges[i] = lo * std::pow(ratio, static_cast<double>(i));
    h.counts.assign(bins, 0);
    for (const double s : samples) {
        auto idx = static_cast<std::size_t>(
            std::max(0.0, std::floor(std::log10(s / lo) * bins_per_decade)));
        if (idx >= bins) idx = bins - 1;
        while (idx > 0 && s < h.bin_edges[idx]) --idx;
        while (idx + 1 < bins && s >= h.bin_edges[idx + 1]) ++idx;
        ++h.counts[idx];
    }
    h.densities.resize(bins);
    const double total = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < bins; ++i) {
        const double width = h.bin_edges[i + 1] - h.bin_edges[i];
        h.densities[i] = static_cast<double>(h.counts[i]) / (total * width);
    }
    return h;
}

TailFit tail_fit(const Series& y, TailSide side, double tail_fraction,
                 int bins_per_decade, int min_bin_count) {
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
        throw Error("tail_fit: tail_fraction must be in (0, 1]");
    std::vector<double> mags;
    mags.reserve(y.size());
    for (const double v : y.values) {
        switch (side) {
            case TailSide::positive:
                if (v > 0.0) mags.push_back(v);
                break;
            case TailSide::negative:
                if (v < 0.0) mags.push_back(-v);
                break;
            case TailSide::absolute:
                if (v != 0.0) mags.push_back(std::fabs(v));
                break;
        }
    }
    std::sort(mags.begin(), mags.end());
    const auto k = static_cast<std::size_t>(
        static_cast<double>(mags.size()) * tail_fraction);
    if (k < 1000) throw Error("tail_fit: insufficient tail mass (" + std::to_string(k) +
                              " samples, need >= 1000)");
    std::span<const double> tail(mags.data() + (mags.size() - k), k);

    LogHistogram h = log_histogram(tail, bins_per_decade);
    std::vector<double> centers, dens;
    for (std::size_t i = 0; i < h.bins(); ++i) {
        if (h.counts[i] < min_bin_count) continue;
        centers.push_back(h.center(i));
        dens.push_back(h.densities[i]);
    }

    TailFit tf;
    tf.fit = fit_power_law(centers, dens, FitRange{0.0, 0.0});
    tf.nu = -tf.fit.exponent;
    tf.tail_samples = k;
    // Hill estimator over the same order statistics, anchored at the
    // tail threshold.
    const double u = tail[0];
    double acc = 0.0;
    for (const double t : tail) acc += std::log(t / u);
    tf.hill_nu = acc > 0.0 ? static_cast<double>(k) / acc + 1.0 : 0.0;
    return tf;
}

}  // namespace lobscale
