#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lobscale/burst.hpp"
#include "lobscale/estimators.hpp"
#include "lobscale/series.hpp"
#include "lobscale/synth.hpp"
#include "lobscale/transform.hpp"

namespace lobscale {

struct EstimatorConfig {
    double msd_fit_lo = 10.0;
    double msd_fit_hi = 0.0;  // 0 -> N/100
    std::int64_t ave_min_block = 1;
    std::int64_t ave_max_block = 0;  // 0 -> capped by block count only
    std::int64_t higuchi_min_window = 1;
    std::int64_t higuchi_max_window = 0;
    double tail_fraction = 0.01;
    int tail_bins_per_decade = 8;
    int tail_min_bin_count = 5;
    double burst_fit_lo = 2.0;
    double burst_fit_hi = 20.0;  // lowest duration decade above T=2
    int burst_bins_per_decade = 6;
    int burst_min_bin_count = 3;
    bool centered_autocovariance = false;

    nlohmann::json to_json() const;
    static EstimatorConfig from_json(const nlohmann::json& j);
};

/// A named synthetic series processed by the pipeline alongside real
/// tickers, as an oracle run.
struct SyntheticEntry {
    std::string name;
    GenSpec spec;
};

struct RunConfig {
    std::filesystem::path data_root = "data";
    std::filesystem::path out_dir = "out";
    std::vector<std::string> tickers;
    std::vector<SyntheticEntry> synthetic;
    std::string date_start;  // inclusive ISO dates; empty = open
    std::string date_end;
    int depth = 10;
    int jobs = 0;  // 0 -> hardware concurrency
    std::uint64_t seed = 1;
    TransformConfig transform;
    std::vector<double> threshold_multipliers{0.5, 1.0, 1.5};
    EstimatorConfig est;
    bool export_series = false;
    bool export_histograms = true;

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig load(const std::filesystem::path& path);
    void validate() const;
};

/// One estimator result inside a report. A failed estimator leaves the value
/// NaN and the error message set; other cells are unaffected.
struct EstimateCell {
    double value = std::numeric_limits<double>::quiet_NaN();
    double std_error = std::numeric_limits<double>::quiet_NaN();
    double r_squared = std::numeric_limits<double>::quiet_NaN();
    int n_points = 0;
    std::string error;

    bool ok() const { return error.empty(); }
    nlohmann::json to_json() const;
};

/// Per-stock row of every estimated exponent plus the derived memory
/// parameters. Suffixes: R = shuffled increments, F = fractionally reverted.
struct StockReport {
    std::string ticker;
    std::string date_start, date_end;
    int n_days = 0;
    std::size_t n_increments = 0;

    EstimateCell lambda, lambda_r, lambda_f;
    EstimateCell h_av, h_avr, h_avf;
    EstimateCell h_hig, h_higr, h_higf;
    EstimateCell h_bd, h_bdr, h_bdf;
    EstimateCell nu, nu_f;  // increment-PDF tail exponents
    double nu_hill = std::numeric_limits<double>::quiet_NaN();
    double nu_f_hill = std::numeric_limits<double>::quiet_NaN();

    double inv_alpha() const { return 1.0 / (nu.value - 1.0); }
    /// Theoretical codifference decay gamma = alpha - alpha*H, recorded as a
    /// derived quantity from the tail alpha and the AVE Hurst estimate.
    double gamma_codifference() const { return (nu.value - 1.0) * (1.0 - h_av.value); }
    double d_msd() const { return (lambda.value - 1.0) / 2.0; }
    double d_msdf() const { return (lambda_f.value - 1.0) / 2.0; }
    double d_av() const { return h_av.value - h_avr.value; }
    double d_hig() const { return h_hig.value - h_higr.value; }
    double d_bd() const { return h_bd.value - h_bdr.value; }
    double d_avf() const { return h_avf.value - h_avr.value; }
    double d_higf() const { return h_higf.value - h_higr.value; }

    nlohmann::json to_json() const;
};

struct AggregateStat {
    double mean = std::numeric_limits<double>::quiet_NaN();
    double sd = std::numeric_limits<double>::quiet_NaN();
    int n = 0;
};

/// Cross-stock means and standard deviations of the derived memory
/// parameters.
struct Aggregate {
    int n_reports = 0;
    AggregateStat d_msd, d_av, d_hig, d_bd, d_msdf, d_avf, d_higf;

    nlohmann::json to_json() const;
};

struct DayFiles {
    std::string date;
    std::filesystem::path message_file;
    std::filesystem::path orderbook_file;
};

/// Find the LOBSTER message/orderbook pairs for a ticker under data_root.
/// Throws with the list of gaps when a date has only half of a pair, or when
/// nothing matches.
std::vector<DayFiles> discover_lobster_days(const std::filesystem::path& data_root,
                                            const std::string& ticker, int depth,
                                            const std::string& date_start,
                                            const std::string& date_end);

/// Everything the run produces for one stock besides the report row; kept so
/// callers can export or inspect the intermediate series.
struct StockSeries {
    Series increments_emp;      // Y
    Series increments_shuffled; // Y_R
    Series increments_reverted; // Y_F
    Series path_emp;            // X
    Series path_shuffled;       // X_R
    Series path_bounded;        // X_RB
    Series path_reverted;       // X_F
};

/// Full per-stock pipeline: ingest, transforms, every estimator on its
/// series variant. Estimator failures are recorded per cell; file problems
/// throw. `out` receives the intermediate series when non-null.
StockReport run_stock(const RunConfig& config, const std::string& ticker,
                      StockSeries* out = nullptr);

/// Same pipeline on a ready-made joint increment series (synthetic input or
/// reloaded intermediates); `first_value` anchors the empirical path. When
/// `pre_shuffled` is given it is used as the randomized variant Y_R instead
/// of shuffling the joint series (run_stock passes the per-day shuffles).
StockReport run_increments(const RunConfig& config, const Series& joint_increments,
                           double first_value, StockSeries* out = nullptr,
                           const Series* pre_shuffled = nullptr);

Aggregate aggregate(std::span<const StockReport> reports);

// Table-shaped CSV exports (one row per stock) and the full JSON report with
// the config embedded for provenance.
void export_table1_csv(std::span<const StockReport> reports, const std::filesystem::path& path);
void export_table2_csv(std::span<const StockReport> reports, const std::filesystem::path& path);
void export_report_json(std::span<const StockReport> reports, const RunConfig& config,
                        const std::optional<Aggregate>& agg, const std::filesystem::path& path);

/// Histogram / series artifacts for one stock, named
/// `<ticker>_<date_start>_<date_end>_<kind>.csv` under out_dir.
void export_stock_artifacts(const RunConfig& config, const StockReport& report,
                            const StockSeries& series);

struct PipelineError {
    std::string stage;
    std::string ticker;
    std::string message;
};

struct PipelineResult {
    std::vector<StockReport> reports;
    std::optional<Aggregate> agg;
    std::vector<PipelineError> errors;

    bool ok() const { return errors.empty(); }
};

/// Fan the per-ticker runs across a worker pool and gather the report,
/// aggregate, and artifacts. Ticker-level failures land in `errors`; the run
/// continues for the rest.
PipelineResult run_pipeline(const RunConfig& config);

void write_error_manifest(const std::filesystem::path& path,
                          std::span<const PipelineError> errors);

nlohmann::json exponent_fit_to_json(const ExponentFit& fit);
nlohmann::json tail_fit_to_json(const TailFit& fit);
nlohmann::json burst_fit_to_json(const BurstFit& fit);

}  // namespace lobscale
