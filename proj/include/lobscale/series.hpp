#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lobscale {

/// Base error for everything the library throws on bad input or bad data.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Provenance of a series: how its values came to be.
enum class SeriesKind {
    empirical,   // order-disbalance level reconstructed from book data
    increments,  // first differences of a level series
    shuffled,    // randomly permuted increments
    bounded,     // accumulated with a soft clamp at +-B
    reverted,    // fractionally reverted increments
    synthetic,   // generated noise or generated process path
};

const char* to_string(SeriesKind kind);
SeriesKind series_kind_from_string(const std::string& name);

struct SeriesMeta {
    std::string ticker;
    std::string date_start;
    std::string date_end;
    std::string source;  // human-readable provenance chain, includes seeds
};

/// An ordered sequence of real values plus provenance. `is_path` separates
/// level series (estimated with MSD / Higuchi / burst analysis) from
/// increment series (AVE, tail fits, autocovariance).
struct Series {
    std::vector<double> values;
    SeriesKind kind = SeriesKind::empirical;
    bool is_path = true;
    SeriesMeta meta;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
};

}  // namespace lobscale
