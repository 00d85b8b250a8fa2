#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>

namespace lobscale {

/// 64-bit FNV-1a over a byte string.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Stable per-(ticker, day) seed derivation from the master seed, so days can
/// be shuffled in parallel while staying reproducible.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view ticker,
                                 std::string_view date) {
    std::string key;
    key.reserve(ticker.size() + date.size() + 17);
    key.append(std::to_string(master));
    key.push_back('|');
    key.append(ticker);
    key.push_back('|');
    key.append(date);
    return fnv1a64(key);
}

// Deterministic variate generation on top of std::mt19937_64. The standard
// fixes the engine's output bit-for-bit but leaves the library distributions
// implementation-defined, so every transform we rely on lives here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe as a log() argument.
    double uniform01_inclusive() {
        return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound); rejection sampling, unbiased.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % bound;
    }

    /// Standard normal via Box-Muller; generates in pairs and caches one.
    double gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = uniform01_inclusive();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    double gaussian(double sigma) { return sigma * gaussian(); }

    /// Symmetric alpha-stable variate (Chambers-Mallows-Stuck).
    /// alpha = 2 reduces to N(0, 2 * scale^2).
    double stable(double alpha, double scale) {
        const double v = std::numbers::pi * (uniform01() - 0.5);
        const double w = -std::log(uniform01_inclusive());
        if (alpha == 1.0) return scale * std::tan(v);
        const double x = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
                         std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
        return scale * x;
    }

    /// Pareto magnitude with PDF tail ~ x^{-nu} for x >= x_min, random sign.
    double pareto_symmetric(double nu, double x_min) {
        const double mag = x_min * std::pow(uniform01_inclusive(), -1.0 / (nu - 1.0));
        return (eng_() & 1u) ? mag : -mag;
    }

private:
    std::mt19937_64 eng_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace lobscale
