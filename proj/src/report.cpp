#include "lobscale/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "lobscale/lob.hpp"
#include "lobscale/rng.hpp"
#include "lobscale/series_io.hpp"
#include "lobscale/synth.hpp"

namespace lobscale {

namespace {

using nlohmann::json;

int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 2 : static_cast<int>(hw);
}

// Index-sharded worker pool; results land by index, first exception rethrows
// after join.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
    const int workers = std::min<int>(resolve_jobs(jobs), static_cast<int>(count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::mutex err_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

EstimateCell cell_from_fit(double value, const ExponentFit& fit) {
    EstimateCell c;
    c.value = value;
    c.std_error = fit.std_error;
    c.r_squared = fit.r_squared;
    c.n_points = fit.n_points;
    return c;
}

template <typename F>
EstimateCell guarded(F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        EstimateCell c;
        c.error = e.what();
        return c;
    }
}

}  // namespace

json EstimatorConfig::to_json() const {
    return json{{"msd_fit_lo", msd_fit_lo},
                {"msd_fit_hi", msd_fit_hi},
                {"ave_min_block", ave_min_block},
                {"ave_max_block", ave_max_block},
                {"higuchi_min_window", higuchi_min_window},
                {"higuchi_max_window", higuchi_max_window},
                {"tail_fraction", tail_fraction},
                {"tail_bins_per_decade", tail_bins_per_decade},
                {"tail_min_bin_count", tail_min_bin_count},
                {"burst_fit_lo", burst_fit_lo},
                {"burst_fit_hi", burst_fit_hi},
                {"burst_bins_per_decade", burst_bins_per_decade},
                {"burst_min_bin_count", burst_min_bin_count},
                {"centered_autocovariance", centered_autocovariance}};
}

EstimatorConfig EstimatorConfig::from_json(const json& j) {
    EstimatorConfig c;
    c.msd_fit_lo = j.value("msd_fit_lo", c.msd_fit_lo);
    c.msd_fit_hi = j.value("msd_fit_hi", c.msd_fit_hi);
    c.ave_min_block = j.value("ave_min_block", c.ave_min_block);
    c.ave_max_block = j.value("ave_max_block", c.ave_max_block);
    c.higuchi_min_window = j.value("higuchi_min_window", c.higuchi_min_window);
    c.higuchi_max_window = j.value("higuchi_max_window", c.higuchi_max_window);
    c.tail_fraction = j.value("tail_fraction", c.tail_fraction);
    c.tail_bins_per_decade = j.value("tail_bins_per_decade", c.tail_bins_per_decade);
    c.tail_min_bin_count = j.value("tail_min_bin_count", c.tail_min_bin_count);
    c.burst_fit_lo = j.value("burst_fit_lo", c.burst_fit_lo);
    c.burst_fit_hi = j.value("burst_fit_hi", c.burst_fit_hi);
    c.burst_bins_per_decade = j.value("burst_bins_per_decade", c.burst_bins_per_decade);
    c.burst_min_bin_count = j.value("burst_min_bin_count", c.burst_min_bin_count);
    c.centered_autocovariance = j.value("centered_autocovariance", c.centered_autocovariance);
    return c;
}

namespace {

json gen_spec_to_json(const GenSpec& s) {
    return json{{"noise", to_string(s.noise)}, {"sigma", s.sigma},
                {"alpha", s.alpha},            {"scale", s.scale},
                {"nu", s.nu},                  {"x_min", s.x_min},
                {"d", s.d},                    {"length", s.length},
                {"seed", s.seed},              {"truncation", s.truncation}};
}

GenSpec gen_spec_from_json(const json& j) {
    GenSpec s;
    s.noise = noise_kind_from_string(j.value("noise", "gaussian"));
    s.sigma = j.value("sigma", s.sigma);
    s.alpha = j.value("alpha", s.alpha);
    s.scale = j.value("scale", s.scale);
    s.nu = j.value("nu", s.nu);
    s.x_min = j.value("x_min", s.x_min);
    s.d = j.value("d", s.d);
    s.length = j.value("length", s.length);
    s.seed = j.value("seed", s.seed);
    s.truncation = j.value("truncation", s.truncation);
    return s;
}

}  // namespace

json RunConfig::to_json() const {
    json synth = json::array();
    for (const SyntheticEntry& e : synthetic) {
        json js = gen_spec_to_json(e.spec);
        js["name"] = e.name;
        synth.push_back(js);
    }
    return json{{"data_root", data_root.string()},
                {"out_dir", out_dir.string()},
                {"tickers", tickers},
                {"synthetic", synth},
                {"date_start", date_start},
                {"date_end", date_end},
                {"depth", depth},
                {"jobs", jobs},
                {"seed", seed},
                {"transform",
                 json{{"bound", transform.bound},
                      {"d", transform.d},
                      {"truncation", transform.truncation},
                      {"drop_warmup", transform.drop_warmup}}},
                {"threshold_multipliers", threshold_multipliers},
                {"estimators", est.to_json()},
                {"export_series", export_series},
                {"export_histograms", export_histograms}};
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig c;
    c.data_root = j.value("data_root", c.data_root.string());
    c.out_dir = j.value("out_dir", c.out_dir.string());
    c.tickers = j.value("tickers", c.tickers);
    if (j.contains("synthetic")) {
        for (const json& js : j.at("synthetic")) {
            SyntheticEntry e;
            e.name = js.value("name", "synthetic");
            e.spec = gen_spec_from_json(js);
            c.synthetic.push_back(std::move(e));
        }
    }
    c.date_start = j.value("date_start", c.date_start);
    c.date_end = j.value("date_end", c.date_end);
    c.depth = j.value("depth", c.depth);
    c.jobs = j.value("jobs", c.jobs);
    c.seed = j.value("seed", c.seed);
    if (j.contains("transform")) {
        const json& t = j.at("transform");
        c.transform.bound = t.value("bound", c.transform.bound);
        c.transform.d = t.value("d", c.transform.d);
        c.transform.truncation = t.value("truncation", c.transform.truncation);
        c.transform.drop_warmup = t.value("drop_warmup", c.transform.drop_warmup);
    }
    c.threshold_multipliers = j.value("threshold_multipliers", c.threshold_multipliers);
    if (j.contains("estimators")) c.est = EstimatorConfig::from_json(j.at("estimators"));
    c.export_series = j.value("export_series", c.export_series);
    c.export_histograms = j.value("export_histograms", c.export_histograms);
    return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw Error("config " + path.string() + ": " + e.what());
    }
    RunConfig c = from_json(j);
    c.validate();
    return c;
}

void RunConfig::validate() const {
    if (depth < 1) throw Error("config: depth must be >= 1");
    transform.validate();
    if (est.tail_fraction <= 0.0 || est.tail_fraction > 1.0)
        throw Error("config: tail_fraction must be in (0, 1]");
    for (const SyntheticEntry& e : synthetic) e.spec.validate();
}

json EstimateCell::to_json() const {
    json j{{"value", value},
           {"std_error", std_error},
           {"r_squared", r_squared},
           {"n_points", n_points}};
    if (!error.empty()) j["error"] = error;
    return j;
}

json StockReport::to_json() const {
    json cells{{"lambda", lambda.to_json()},       {"lambda_r", lambda_r.to_json()},
               {"lambda_f", lambda_f.to_json()},   {"h_av", h_av.to_json()},
               {"h_avr", h_avr.to_json()},         {"h_avf", h_avf.to_json()},
               {"h_hig", h_hig.to_json()},         {"h_higr", h_higr.to_json()},
               {"h_higf", h_higf.to_json()},       {"h_bd", h_bd.to_json()},
               {"h_bdr", h_bdr.to_json()},         {"h_bdf", h_bdf.to_json()},
               {"nu", nu.to_json()},               {"nu_f", nu_f.to_json()}};
    return json{{"ticker", ticker},
                {"date_start", date_start},
                {"date_end", date_end},
                {"n_days", n_days},
                {"n_increments", n_increments},
                {"exponents", cells},
                {"nu_hill", nu_hill},
                {"nu_f_hill", nu_f_hill},
                {"derived",
                 json{{"inv_alpha", inv_alpha()},
                      {"gamma_codifference", gamma_codifference()},
                      {"d_msd", d_msd()},
                      {"d_msdf", d_msdf()},
                      {"d_av", d_av()},
                      {"d_hig", d_hig()},
                      {"d_bd", d_bd()},
                      {"d_avf", d_avf()},
                      {"d_higf", d_higf()}}}};
}

json Aggregate::to_json() const {
    const auto stat = [](const AggregateStat& s) {
        return json{{"mean", s.mean}, {"sd", s.sd}, {"n", s.n}};
    };
    return json{{"n_reports", n_reports}, {"d_msd", stat(d_msd)},
                {"d_av", stat(d_av)},     {"d_hig", stat(d_hig)},
                {"d_bd", stat(d_bd)},     {"d_msdf", stat(d_msdf)},
                {"d_avf", stat(d_avf)},   {"d_higf", stat(d_higf)}};
}

json exponent_fit_to_json(const ExponentFit& fit) {
    return json{{"exponent", fit.exponent},   {"intercept", fit.intercept},
                {"fit_min", fit.fit_min},     {"fit_max", fit.fit_max},
                {"r_squared", fit.r_squared}, {"std_error", fit.std_error},
                {"n_points", fit.n_points}};
}

json tail_fit_to_json(const TailFit& fit) {
    return json{{"nu", fit.nu},
                {"hill_nu", fit.hill_nu},
                {"alpha", fit.alpha()},
                {"inv_alpha", fit.inv_alpha()},
                {"normalizable", fit.normalizable()},
                {"tail_samples", fit.tail_samples},
                {"fit", exponent_fit_to_json(fit.fit)}};
}

json burst_fit_to_json(const BurstFit& fit) {
    return json{{"eta", fit.eta}, {"h_bd", fit.h_bd}, {"fit", exponent_fit_to_json(fit.fit)}};
}

std::vector<DayFiles> discover_lobster_days(const std::filesystem::path& data_root,
                                            const std::string& ticker, int depth,
                                            const std::string& date_start,
                                            const std::string& date_end) {
    if (!std::filesystem::exists(data_root))
        throw Error("data root does not exist: " + data_root.string());

    // LOBSTER naming: TICKER_DATE_STARTMS_ENDMS_{message|orderbook}_DEPTH.csv
    struct Pair {
        std::filesystem::path message, orderbook;
    };
    std::map<std::string, Pair> by_date;
    const std::string depth_str = std::to_string(depth);
    for (const auto& entry : std::filesystem::recursive_directory_iterator(data_root)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
        const std::string stem = entry.path().stem().string();
        std::vector<std::string> tok;
        std::size_t start = 0;
        while (true) {
            const std::size_t us = stem.find('_', start);
            if (us == std::string::npos) {
                tok.push_back(stem.substr(start));
                break;
            }
            tok.push_back(stem.substr(start, us - start));
            start = us + 1;
        }
        if (tok.size() != 6) continue;
        if (tok[0] != ticker || tok[5] != depth_str) continue;
        if (tok[4] != "message" && tok[4] != "orderbook") continue;
        const std::string& date = tok[1];
        if (!date_start.empty() && date < date_start) continue;
        if (!date_end.empty() && date > date_end) continue;
        auto& pair = by_date[date];
        (tok[4] == "message" ? pair.message : pair.orderbook) = entry.path();
    }
    if (by_date.empty())
        throw Error("no LOBSTER files for ticker " + ticker + " (depth " + depth_str +
                    ") under " + data_root.string());

    std::vector<DayFiles> days;
    std::string gaps;
    for (const auto& [date, pair] : by_date) {
        if (pair.message.empty() || pair.orderbook.empty()) {
            gaps += " " + ticker + "/" + date + ":" +
                    (pair.message.empty() ? "message" : "orderbook");
            continue;
        }
        days.push_back(DayFiles{date, pair.message, pair.orderbook});
    }
    if (!gaps.empty()) throw Error("missing LOBSTER files:" + gaps);
    return days;
}

namespace {

struct DayResult {
    Series incs;
    Series incs_shuffled;
    double first_value = 0.0;
};

DayResult process_day(const RunConfig& config, const std::string& ticker,
                      const DayFiles& day) {
    const auto events = parse_messages(day.message_file);
    const auto snaps = parse_orderbook(day.orderbook_file, config.depth);
    if (events.size() != snaps.size())
        throw Error(ticker + "/" + day.date + ": message rows (" +
                    std::to_string(events.size()) + ") != orderbook rows (" +
                    std::to_string(snaps.size()) + ")");
    Series x = build_disbalance(snaps);
    x.meta.ticker = ticker;
    x.meta.date_start = x.meta.date_end = day.date;
    DayResult r;
    r.first_value = x.values.front();
    r.incs = increments(x);
    r.incs_shuffled =
        shuffle_increments(r.incs, derive_seed(config.seed, ticker, day.date));
    return r;
}

}  // namespace

StockReport run_increments(const RunConfig& config, const Series& joint_increments,
                           double first_value, StockSeries* out,
                           const Series* pre_shuffled) {
    const EstimatorConfig& est = config.est;
    StockSeries local;
    StockSeries& ss = out ? *out : local;

    ss.increments_emp = joint_increments;
    ss.path_emp = accumulate(ss.increments_emp, first_value);
    if (pre_shuffled) {
        if (pre_shuffled->size() != joint_increments.size())
            throw Error("run_increments: shuffled variant length mismatch");
        ss.increments_shuffled = *pre_shuffled;
    } else {
        ss.increments_shuffled =
            shuffle_increments(ss.increments_emp,
                               derive_seed(config.seed, joint_increments.meta.ticker, "joint"));
    }
    ss.path_shuffled = accumulate(ss.increments_shuffled, 0.0);
    ss.path_bounded = bound_series(ss.increments_shuffled, config.transform.bound, 0.0);
    ss.increments_reverted = fractional_revert(ss.increments_shuffled, config.transform.d,
                                               config.transform.truncation);
    ss.path_reverted = accumulate(ss.increments_reverted, 0.0);

    // Estimators may exclude the reversion warm-up prefix.
    const auto warm = static_cast<std::size_t>(config.transform.truncation);
    const bool drop = config.transform.drop_warmup && ss.increments_reverted.size() > 2 * warm;
    const Series inc_f = drop ? drop_prefix(ss.increments_reverted, warm)
                              : ss.increments_reverted;
    const Series path_f = drop ? accumulate(inc_f, 0.0) : ss.path_reverted;

    StockReport rep;
    rep.ticker = joint_increments.meta.ticker;
    rep.date_start = joint_increments.meta.date_start;
    rep.date_end = joint_increments.meta.date_end;
    rep.n_increments = joint_increments.size();

    const auto msd_cell = [&](const Series& x) {
        return guarded([&] {
            const auto lags = msd_lag_grid(x.size());
            const auto curve = sample_msd(x, lags);
            FitRange r{est.msd_fit_lo, est.msd_fit_hi};
            if (r.hi <= 0.0) r.hi = msd_default_fit_range(x.size()).hi;
            const ExponentFit fit = fit_msd_exponent(curve, r);
            return cell_from_fit(fit.exponent, fit);
        });
    };
    const auto ave_cell = [&](const Series& y) {
        return guarded([&] {
            const auto grid = ave_block_grid(y.size(), est.ave_min_block, est.ave_max_block);
            const ExponentFit fit = ave_hurst(y, grid);
            return cell_from_fit(fit.exponent, fit);
        });
    };
    const auto hig_cell = [&](const Series& x) {
        return guarded([&] {
            const auto grid =
                higuchi_window_grid(x.size(), est.higuchi_min_window, est.higuchi_max_window);
            const ExponentFit fit = higuchi_hurst(x, grid);
            return cell_from_fit(fit.exponent, fit);
        });
    };
    const auto bd_cell = [&](const Series& x) {
        return guarded([&] {
            const DurationSample ds = durations(x, 0.0);
            const BurstFit bf =
                fit_burst_pdf(ds, DurationKind::burst, FitRange{est.burst_fit_lo, est.burst_fit_hi},
                              est.burst_bins_per_decade, est.burst_min_bin_count);
            return cell_from_fit(bf.h_bd, bf.fit);
        });
    };
    const auto tail_cell = [&](const Series& y, double* hill_out) {
        return guarded([&] {
            const TailFit tf = tail_fit(y, TailSide::absolute, est.tail_fraction,
                                        est.tail_bins_per_decade, est.tail_min_bin_count);
            if (hill_out) *hill_out = tf.hill_nu;
            return cell_from_fit(tf.nu, tf.fit);
        });
    };

    rep.lambda = msd_cell(ss.path_emp);
    rep.lambda_r = msd_cell(ss.path_shuffled);
    rep.lambda_f = msd_cell(path_f);
    rep.h_av = ave_cell(ss.increments_emp);
    rep.h_avr = ave_cell(ss.increments_shuffled);
    rep.h_avf = ave_cell(inc_f);
    rep.h_hig = hig_cell(ss.path_emp);
    rep.h_higr = hig_cell(ss.path_shuffled);
    rep.h_higf = hig_cell(path_f);
    rep.h_bd = bd_cell(ss.path_emp);
    rep.h_bdr = bd_cell(ss.path_bounded);
    rep.h_bdf = bd_cell(path_f);
    rep.nu = tail_cell(ss.increments_emp, &rep.nu_hill);
    rep.nu_f = tail_cell(inc_f, &rep.nu_f_hill);
    return rep;
}

StockReport run_stock(const RunConfig& config, const std::string& ticker, StockSeries* out) {
    const auto days = discover_lobster_days(config.data_root, ticker, config.depth,
                                            config.date_start, config.date_end);
    std::vector<DayResult> results(days.size());
    parallel_for(days.size(), config.jobs,
                 [&](std::size_t i) { results[i] = process_day(config, ticker, days[i]); });

    std::vector<Series> incs, shuffled;
    incs.reserve(results.size());
    shuffled.reserve(results.size());
    for (auto& r : results) {
        incs.push_back(std::move(r.incs));
        shuffled.push_back(std::move(r.incs_shuffled));
    }
    Series joint = join_daily(incs);
    // randomization is applied per day and then joined, matching the
    // per-(ticker, day) seed derivation
    const Series joint_shuffled = join_daily(shuffled);

    StockReport rep =
        run_increments(config, joint, results.front().first_value, out, &joint_shuffled);
    rep.ticker = ticker;
    rep.n_days = static_cast<int>(days.size());
    rep.date_start = days.front().date;
    rep.date_end = days.back().date;
    return rep;
}

Aggregate aggregate(std::span<const StockReport> reports) {
    if (reports.size() < 2) throw Error("aggregate: need at least 2 reports");
    const auto stat = [&](auto&& value_fn, auto&& ok_fn) {
        std::vector<double> vals;
        for (const StockReport& r : reports)
            if (ok_fn(r)) vals.push_back(value_fn(r));
        AggregateStat s;
        s.n = static_cast<int>(vals.size());
        if (vals.empty()) return s;
        double mean = 0.0;
        for (const double v : vals) mean += v;
        mean /= static_cast<double>(vals.size());
        double ss = 0.0;
        for (const double v : vals) ss += (v - mean) * (v - mean);
        s.mean = mean;
        s.sd = vals.size() > 1 ? std::sqrt(ss / (static_cast<double>(vals.size()) - 1.0)) : 0.0;
        return s;
    };

    Aggregate a;
    a.n_reports = static_cast<int>(reports.size());
    a.d_msd = stat([](const StockReport& r) { return r.d_msd(); },
                   [](const StockReport& r) { return r.lambda.ok(); });
    a.d_msdf = stat([](const StockReport& r) { return r.d_msdf(); },
                    [](const StockReport& r) { return r.lambda_f.ok(); });
    a.d_av = stat([](const StockReport& r) { return r.d_av(); },
                  [](const StockReport& r) { return r.h_av.ok() && r.h_avr.ok(); });
    a.d_hig = stat([](const StockReport& r) { return r.d_hig(); },
                   [](const StockReport& r) { return r.h_hig.ok() && r.h_higr.ok(); });
    a.d_bd = stat([](const StockReport& r) { return r.d_bd(); },
                  [](const StockReport& r) { return r.h_bd.ok() && r.h_bdr.ok(); });
    a.d_avf = stat([](const StockReport& r) { return r.d_avf(); },
                   [](const StockReport& r) { return r.h_avf.ok() && r.h_avr.ok(); });
    a.d_higf = stat([](const StockReport& r) { return r.d_higf(); },
                    [](const StockReport& r) { return r.h_higf.ok() && r.h_higr.ok(); });
    return a;
}

namespace {

std::string csv_num(double v) { return std::isfinite(v) ? format_double(v) : "nan"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    if (!out) throw Error("write failed: " + path.string());
}

}  // namespace

void export_table1_csv(std::span<const StockReport> reports, const std::filesystem::path& path) {
    std::string text = "stock,lambda,h_av,h_avr,h_hig,h_higr,h_bd,h_bdr,inv_alpha\n";
    for (const StockReport& r : reports) {
        text += r.ticker + ',' + csv_num(r.lambda.value) + ',' + csv_num(r.h_av.value) + ',' +
                csv_num(r.h_avr.value) + ',' + csv_num(r.h_hig.value) + ',' +
                csv_num(r.h_higr.value) + ',' + csv_num(r.h_bd.value) + ',' +
                csv_num(r.h_bdr.value) + ',' + csv_num(r.inv_alpha()) + '\n';
    }
    write_text(path, text);
}

void export_table2_csv(std::span<const StockReport> reports, const std::filesystem::path& path) {
    std::string text = "stock,lambda,lambda_f,h_av,h_avf,h_hig,h_higf,h_bd,h_bdf\n";
    for (const StockReport& r : reports) {
        text += r.ticker + ',' + csv_num(r.lambda.value) + ',' + csv_num(r.lambda_f.value) +
                ',' + csv_num(r.h_av.value) + ',' + csv_num(r.h_avf.value) + ',' +
                csv_num(r.h_hig.value) + ',' + csv_num(r.h_higf.value) + ',' +
                csv_num(r.h_bd.value) + ',' + csv_num(r.h_bdf.value) + '\n';
    }
    write_text(path, text);
}

void export_report_json(std::span<const StockReport> reports, const RunConfig& config,
                        const std::optional<Aggregate>& agg, const std::filesystem::path& path) {
    json j{{"config", config.to_json()}};
    json rows = json::array();
    for (const StockReport& r : reports) rows.push_back(r.to_json());
    j["reports"] = rows;
    if (agg) j["aggregate"] = agg->to_json();
    write_text(path, j.dump(2) + "\n");
}

void export_stock_artifacts(const RunConfig& config, const StockReport& report,
                            const StockSeries& series) {
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    const std::string ds = report.date_start.empty() ? "all" : report.date_start;
    const std::string de = report.date_end.empty() ? "all" : report.date_end;
    const std::string prefix =
        (report.ticker.empty() ? "series" : report.ticker) + "_" + ds + "_" + de;
    const auto out = [&](const std::string& name) { return config.out_dir / (prefix + name); };

    if (config.export_histograms) {
        const auto abs_hist = [&](const Series& y, const std::string& name) {
            std::vector<double> mags;
            mags.reserve(y.size());
            for (const double v : y.values)
                if (v != 0.0) mags.push_back(std::fabs(v));
            if (mags.size() < 2) return;
            write_log_histogram_csv(log_histogram(mags, config.est.tail_bins_per_decade),
                                    out(name));
        };
        abs_hist(series.increments_emp, "_inc_abs_hist.csv");
        abs_hist(series.increments_reverted, "_inc_reverted_abs_hist.csv");

        const auto duration_csv = [&](const std::vector<std::int64_t>& durs,
                                      const std::string& name) {
            if (durs.size() < 2) return;
            const std::int64_t hi = *std::max_element(durs.begin(), durs.end());
            if (hi < 2) return;
            write_log_histogram_csv(
                duration_histogram(durs, 1, hi, config.est.burst_bins_per_decade), out(name));
        };
        const auto zero_burst = [&](const Series& x, const std::string& name) {
            try {
                duration_csv(durations(x, 0.0).bursts, name);
            } catch (const Error&) {
            }
        };
        zero_burst(series.path_emp, "_burst_hist_empirical.csv");
        zero_burst(series.path_bounded, "_burst_hist_random.csv");
        zero_burst(series.path_reverted, "_burst_hist_reverted.csv");

        const auto sweep_hists = [&](const Series& x, const std::string& tag) {
            try {
                for (const auto& [mult, sample] :
                     threshold_sweep(x, config.threshold_multipliers)) {
                    char suffix[64];
                    std::snprintf(suffix, sizeof suffix, "_interburst_hist_%s_m%g.csv",
                                  tag.c_str(), mult);
                    duration_csv(sample.interbursts, suffix);
                }
            } catch (const Error&) {
            }
        };
        sweep_hists(series.path_emp, "empirical");
        sweep_hists(series.path_bounded, "random");
    }

    if (config.export_series) {
        write_series_csv(series.path_emp, out("_disbalance.csv"));
        write_series_csv(series.increments_emp, out("_increments.csv"));
        write_series_csv(series.increments_shuffled, out("_increments_shuffled.csv"));
        write_series_csv(series.path_bounded, out("_bounded.csv"));
        write_series_csv(series.increments_reverted, out("_increments_reverted.csv"));
    }
}

PipelineResult run_pipeline(const RunConfig& config) {
    PipelineResult result;
    const std::size_t n_items = config.tickers.size() + config.synthetic.size();
    if (n_items == 0) {
        result.errors.push_back({"config", "", "no tickers or synthetic series configured"});
        return result;
    }
    std::filesystem::create_directories(config.out_dir);

    std::vector<std::optional<StockReport>> slots(n_items);
    std::vector<PipelineError> errors(n_items);
    parallel_for(n_items, config.jobs, [&](std::size_t i) {
        const bool is_ticker = i < config.tickers.size();
        const std::string name = is_ticker
                                     ? config.tickers[i]
                                     : config.synthetic[i - config.tickers.size()].name;
        try {
            StockSeries series;
            StockReport rep;
            if (is_ticker) {
                rep = run_stock(config, name, &series);
            } else {
                GenSpec spec = config.synthetic[i - config.tickers.size()].spec;
                Series inc = gen_arfima_increments(spec);
                inc.meta.ticker = name;
                rep = run_increments(config, inc, 0.0, &series);
                rep.ticker = name;
            }
            export_stock_artifacts(config, rep, series);
            slots[i] = std::move(rep);
        } catch (const std::exception& e) {
            errors[i] = {is_ticker ? "run_stock" : "run_synthetic", name, e.what()};
        }
    });
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i])
            result.reports.push_back(std::move(*slots[i]));
        else
            result.errors.push_back(std::move(errors[i]));
    }
    if (result.reports.size() >= 2) result.agg = aggregate(result.reports);
    return result;
}

void write_error_manifest(const std::filesystem::path& path,
                          std::span<const PipelineError> errors) {
    json list = json::array();
    for (const PipelineError& e : errors)
        list.push_back(json{{"stage", e.stage}, {"ticker", e.ticker}, {"message", e.message}});
    write_text(path, json{{"status", "error"}, {"errors", list}}.dump(2) + "\n");
}

}  // namespace lobscale
