#include "lobscale/synth.hpp"

#include <cmath>

#include "lobscale/rng.hpp"
#include "lobscale/transform.hpp"

namespace lobscale {

const char* to_string(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::gaussian: return "gaussian";
        case NoiseKind::stable: return "stable";
        case NoiseKind::pareto_symmetric: return "pareto_symmetric";
    }
    return "?";
}

NoiseKind noise_kind_from_string(const std::string& name) {
    if (name == "gaussian") return NoiseKind::gaussian;
    if (name == "stable") return NoiseKind::stable;
    if (name == "pareto_symmetric" || name == "pareto") return NoiseKind::pareto_symmetric;
    throw Error("unknown noise kind: " + name);
}

void GenSpec::validate() const {
    if (length == 0) throw Error("gen spec: length must be >= 1");
    if (!(std::fabs(d) < 0.5)) throw Error("gen spec: |d| must be < 0.5");
    if (truncation < 1) throw Error("gen spec: truncation must be >= 1");
    switch (noise) {
        case NoiseKind::gaussian:
            if (sigma <= 0.0) throw Error("gen spec: sigma must be positive");
            break;
        case NoiseKind::stable:
            if (!(alpha > 0.0 && alpha <= 2.0)) throw Error("gen spec: alpha must be in (0, 2]");
            if (scale <= 0.0) throw Error("gen spec: scale must be positive");
            break;
        case NoiseKind::pareto_symmetric:
            if (!(nu > 1.0)) throw Error("gen spec: nu must be > 1");
            if (x_min <= 0.0) throw Error("gen spec: x_min must be positive");
            break;
    }
}

std::string GenSpec::describe() const {
    std::string s = to_string(noise);
    switch (noise) {
        case NoiseKind::gaussian: s += "(sigma=" + std::to_string(sigma) + ")"; break;
        case NoiseKind::stable:
            s += "(alpha=" + std::to_string(alpha) + ", scale=" + std::to_string(scale) + ")";
            break;
        case NoiseKind::pareto_symmetric:
            s += "(nu=" + std::to_string(nu) + ", x_min=" + std::to_string(x_min) + ")";
            break;
    }
    s += ", d=" + std::to_string(d) + ", N=" + std::to_string(length) +
         ", seed=" + std::to_string(seed);
    return s;
}

Series gen_noise(const GenSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    Series out;
    out.values.resize(spec.length);
    switch (spec.noise) {
        case NoiseKind::gaussian:
            for (auto& v : out.values) v = rng.gaussian(spec.sigma);
            break;
        case NoiseKind::stable:
            for (auto& v : out.values) v = rng.stable(spec.alpha, spec.scale);
            break;
        case NoiseKind::pareto_symmetric:
            for (auto& v : out.values) v = rng.pareto_symmetric(spec.nu, spec.x_min);
            break;
    }
    out.kind = SeriesKind::synthetic;
    out.is_path = false;
    out.meta.source = "gen_noise(" + spec.describe() + ")";
    return out;
}

Series gen_arfima_increments(const GenSpec& spec) {
    Series noise = gen_noise(spec);
    if (spec.d == 0.0) return noise;
    Series inc = fractional_revert(noise, spec.d, spec.truncation);
    inc.kind = SeriesKind::synthetic;
    return inc;
}

Series gen_arfima(const GenSpec& spec) {
    Series out = accumulate(gen_arfima_increments(spec), 0.0);
    out.kind = SeriesKind::synthetic;
    out.meta.source = "gen_arfima(" + spec.describe() +
                      ", terms=" + std::to_string(spec.truncation) + ")";
    return out;
}

}  // namespace lobscale
