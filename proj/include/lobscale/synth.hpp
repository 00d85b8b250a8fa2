#pragma once

#include <cstdint>
#include <string>

#include "lobscale/series.hpp"

namespace lobscale {

enum class NoiseKind { gaussian, stable, pareto_symmetric };

const char* to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& name);

/// Synthetic generator spec: i.i.d. noise, optionally fractionally integrated
/// into an ARFIMA(0,d,0) path. Only the fields of the selected noise kind are
/// read.
struct GenSpec {
    NoiseKind noise = NoiseKind::gaussian;
    double sigma = 1.0;   // gaussian
    double alpha = 2.0;   // stable, in (0, 2]
    double scale = 1.0;   // stable
    double nu = 3.0;      // pareto: PDF tail exponent, > 1
    double x_min = 1.0;   // pareto
    double d = 0.0;
    std::size_t length = 0;
    std::uint64_t seed = 1;
    int truncation = 1000;  // reversion terms when d != 0

    void validate() const;
    std::string describe() const;
};

/// N i.i.d. noise samples per the spec; increment-domain, seed-deterministic.
Series gen_noise(const GenSpec& spec);

/// The increment process of gen_arfima: noise fractionally reverted with d.
/// With d = 0 this is exactly the generated noise.
Series gen_arfima_increments(const GenSpec& spec);

/// Accumulated ARFIMA(0,d,0): gen_arfima_increments summed from zero.
Series gen_arfima(const GenSpec& spec);

}  // namespace lobscale
