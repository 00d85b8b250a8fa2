#include "lobscale/transform.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "lobscale/kernels.hpp"
#include "lobscale/rng.hpp"

namespace lobscale {

namespace {

void require_increment_domain(const Series& s, const char* op) {
    if (s.empty()) throw Error(std::string(op) + ": empty input series");
    if (s.is_path) throw Error(std::string(op) + ": expects an increment series, got a path");
}

}  // namespace

void TransformConfig::validate() const {
    if (bound <= 0.0) throw Error("transform config: bound must be positive");
    if (!(std::fabs(d) < 0.5)) throw Error("transform config: |d| must be < 0.5");
    if (truncation < 1) throw Error("transform config: truncation must be >= 1");
}

Series shuffle_increments(const Series& increments, std::uint64_t seed) {
    require_increment_domain(increments, "shuffle_increments");
    Series out = increments;
    Rng rng(seed);
    auto& v = out.values;
    for (std::size_t i = v.size() - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
        std::swap(v[i], v[j]);
    }
    out.kind = SeriesKind::shuffled;
    out.meta.source += " |> shuffle(fisher-yates/mt19937_64, seed=" + std::to_string(seed) + ")";
    return out;
}

Series accumulate(const Series& increments, double start) {
    require_increment_domain(increments, "accumulate");
    Series out;
    out.values.resize(increments.size());
    double acc = start;
    for (std::size_t i = 0; i < increments.size(); ++i) {
        acc += increments.values[i];
        out.values[i] = acc;
    }
    // Accumulating the increments of an empirical series reproduces it.
    out.kind = increments.kind == SeriesKind::increments ? SeriesKind::empirical
                                                         : increments.kind;
    out.is_path = true;
    out.meta = increments.meta;
    out.meta.source += " |> accumulate(start=" + std::to_string(start) + ")";
    return out;
}

Series bound_series(const Series& increments, double bound, double start) {
    require_increment_domain(increments, "bound_series");
    if (bound <= 0.0) throw Error("bound_series: bound must be positive");
    Series out;
    out.values.resize(increments.size());
    double x = start;
    for (std::size_t i = 0; i < increments.size(); ++i) {
        x = std::max(std::min(x + increments.values[i], bound), -bound);
        out.values[i] = x;
    }
    out.kind = SeriesKind::bounded;
    out.is_path = true;
    out.meta = increments.meta;
    out.meta.source += " |> bound(B=" + std::to_string(bound) + ")";
    return out;
}

std::vector<double> fractional_weights(double d, int n_terms) {
    if (!(std::fabs(d) < 0.5)) throw Error("fractional_weights: |d| must be < 0.5");
    if (n_terms < 1) throw Error("fractional_weights: n_terms must be >= 1");
    std::vector<double> w(static_cast<std::size_t>(n_terms));
    w[0] = 1.0;
    for (int j = 1; j < n_terms; ++j)
        w[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(j - 1)] * (j - 1 + d) / j;
    return w;
}

Series fractional_revert(const Series& increments, double d, int n_terms) {
    require_increment_domain(increments, "fractional_revert");
    const std::vector<double> w = fractional_weights(d, n_terms);
    const std::size_t n = increments.size();
    const std::size_t len = w.size();

    // Reversed weights turn each output sample into a contiguous dot product:
    // y[i] = dot(wr[L-1-i ..], z[0 .. i]) while history is short, then
    // y[i] = dot(wr, z[i-L+1 .. i]) at full depth.
    std::vector<double> wr(len);
    for (std::size_t j = 0; j < len; ++j) wr[j] = w[len - 1 - j];

    Series out;
    out.values.resize(n);
    const double* z = increments.values.data();
    const std::size_t warm = std::min(n, len - 1);
    for (std::size_t i = 0; i < warm; ++i)
        out.values[i] = kernels::dot(wr.data() + (len - 1 - i), z, i + 1);
    for (std::size_t i = warm; i < n; ++i)
        out.values[i] = kernels::dot(wr.data(), z + (i + 1 - len), len);

    out.kind = SeriesKind::reverted;
    out.is_path = false;
    out.meta = increments.meta;
    out.meta.source += " |> revert(d=" + std::to_string(d) +
                       ", terms=" + std::to_string(n_terms) + ")";
    return out;
}

Series drop_prefix(const Series& s, std::size_t count) {
    if (count >= s.size()) throw Error("drop_prefix: nothing left after dropping prefix");
    Series out = s;
    out.values.erase(out.values.begin(),
                     out.values.begin() + static_cast<std::ptrdiff_t>(count));
    out.meta.source += " |> drop_prefix(" + std::to_string(count) + ")";
    return out;
}

}  // namespace lobscale
