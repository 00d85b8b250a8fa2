// lobscale CLI: ingest LOBSTER data, run series surgeries and synthetic
// generators, estimate scaling exponents, and reproduce the full
// per-stock report pipeline.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lobscale/burst.hpp"
#include "lobscale/estimators.hpp"
#include "lobscale/kernels.hpp"
#include "lobscale/lob.hpp"
#include "lobscale/report.hpp"
#include "lobscale/series_io.hpp"
#include "lobscale/synth.hpp"
#include "lobscale/transform.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lobscale;

namespace {

struct GlobalOpts {
    std::string kernels = "auto";
    fs::path manifest_dir = ".";
};

void apply_kernel_choice(const std::string& choice) {
    if (choice == "auto") return;
    if (choice == "scalar") {
        kernels::force_backend(kernels::Backend::scalar);
    } else if (choice == "avx2") {
        if (!kernels::backend_available(kernels::Backend::avx2))
            throw Error("avx2 kernels not available on this CPU");
        kernels::force_backend(kernels::Backend::avx2);
    } else {
        throw Error("unknown kernel backend: " + choice);
    }
}

void write_single_error_manifest(const fs::path& dir, const std::string& stage,
                                 const std::string& message) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    write_error_manifest(dir / "error_manifest.json",
                         std::vector<PipelineError>{{stage, "", message}});
}

json series_summary(const Series& s) {
    return json{{"length", s.size()},
                {"kind", to_string(s.kind)},
                {"is_path", s.is_path},
                {"ticker", s.meta.ticker},
                {"source", s.meta.source}};
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot write " + out_path);
    out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
    std::string kind = "arfima";
    std::string noise = "gaussian";
    double sigma = 1.0, alpha = 1.5, scale = 1.0, nu = 3.0, x_min = 1.0;
    double d = 0.0;
    std::size_t length = 0;
    std::uint64_t seed = 1;
    int terms = 1000;
    std::string ticker;
    std::string out;
};

int cmd_generate(const GenerateArgs& a) {
    GenSpec spec;
    spec.noise = noise_kind_from_string(a.noise);
    spec.sigma = a.sigma;
    spec.alpha = a.alpha;
    spec.scale = a.scale;
    spec.nu = a.nu;
    spec.x_min = a.x_min;
    spec.d = a.d;
    spec.length = a.length;
    spec.seed = a.seed;
    spec.truncation = a.terms;

    Series s = a.kind == "noise" ? gen_noise(spec)
             : a.kind == "increments" ? gen_arfima_increments(spec)
             : gen_arfima(spec);
    if (a.kind != "noise" && a.kind != "increments" && a.kind != "arfima")
        throw Error("generate: --kind must be noise, increments or arfima");
    s.meta.ticker = a.ticker;
    write_series_csv(s, a.out);
    std::cout << "wrote " << s.size() << " samples to " << a.out << " (" << s.meta.source
              << ")\n";
    return 0;
}

// ---------------------------------------------------------------------------
// ingest

struct IngestArgs {
    std::string messages, orderbook;
    int depth = 10;
    std::string ticker, date;
    std::string out_dir = ".";
    std::string prefix;
};

int cmd_ingest(const IngestArgs& a) {
    const auto events = parse_messages(a.messages);
    const auto snaps = parse_orderbook(a.orderbook, a.depth);
    if (events.size() != snaps.size())
        throw Error("message rows (" + std::to_string(events.size()) +
                    ") != orderbook rows (" + std::to_string(snaps.size()) + ")");
    Series x = build_disbalance(snaps);
    x.meta.ticker = a.ticker;
    x.meta.date_start = x.meta.date_end = a.date;
    const Series y = increments(x);

    fs::create_directories(a.out_dir);
    std::string prefix = a.prefix;
    if (prefix.empty())
        prefix = (a.ticker.empty() ? "lob" : a.ticker) + (a.date.empty() ? "" : "_" + a.date);
    const fs::path base = fs::path(a.out_dir) / prefix;
    write_series_csv(x, base.string() + "_disbalance.csv");
    write_series_csv(y, base.string() + "_increments.csv");
    std::cout << "parsed " << events.size() << " events -> " << base.string()
              << "_{disbalance,increments}.csv\n";
    return 0;
}

// ---------------------------------------------------------------------------
// transform

struct TransformArgs {
    std::string in, out;
    std::string op;
    std::uint64_t seed = 1;
    double start = 0.0;
    double bound = 100000.0;
    double d = -0.3;
    int terms = 1000;
};

int cmd_transform(const TransformArgs& a) {
    const Series in = read_series_csv(a.in);
    Series out;
    if (a.op == "shuffle") {
        out = shuffle_increments(in, a.seed);
    } else if (a.op == "accumulate") {
        out = accumulate(in, a.start);
    } else if (a.op == "bound") {
        out = bound_series(in, a.bound, a.start);
    } else if (a.op == "revert") {
        out = fractional_revert(in, a.d, a.terms);
    } else if (a.op == "increments") {
        out = increments(in);
    } else {
        throw Error("transform: unknown --op " + a.op);
    }
    write_series_csv(out, a.out);
    std::cout << "wrote " << out.size() << " samples to " << a.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateArgs {
    std::string in, out;
    double msd_fit_lo = 10.0, msd_fit_hi = 0.0;
    double tail_fraction = 0.01;
    int bins_per_decade = 8;
    int acf_lags = 20;
    bool centered = false;
};

int cmd_estimate(const EstimateArgs& a) {
    const Series s = read_series_csv(a.in);
    json results;
    const auto guarded = [&](const char* name, auto&& fn) {
        try {
            results[name] = fn();
        } catch (const std::exception& e) {
            results[name] = json{{"error", e.what()}};
        }
    };
    if (s.is_path) {
        guarded("msd", [&] {
            const auto lags = msd_lag_grid(s.size());
            const auto curve = sample_msd(s, lags);
            const FitRange r{a.msd_fit_lo, a.msd_fit_hi > 0
                                               ? a.msd_fit_hi
                                               : msd_default_fit_range(s.size()).hi};
            const ExponentFit fit = fit_msd_exponent(curve, r);
            json points = json::array();
            for (const auto& [k, m] : curve) points.push_back(json{{"lag", k}, {"msd", m}});
            return json{{"fit", exponent_fit_to_json(fit)},
                        {"lambda", fit.exponent},
                        {"d_msd", (fit.exponent - 1.0) / 2.0},
                        {"points", points}};
        });
        guarded("higuchi", [&] {
            const ExponentFit fit = higuchi_hurst(s, higuchi_window_grid(s.size()));
            return json{{"fit", exponent_fit_to_json(fit)}, {"h", fit.exponent}};
        });
    } else {
        guarded("ave", [&] {
            const ExponentFit fit = ave_hurst(s, ave_block_grid(s.size()));
            return json{{"fit", exponent_fit_to_json(fit)}, {"h", fit.exponent}};
        });
        guarded("tail", [&] {
            return tail_fit_to_json(
                tail_fit(s, TailSide::absolute, a.tail_fraction, a.bins_per_decade));
        });
        guarded("autocovariance", [&] {
            json acf = json::array();
            for (const auto& [k, v] : autocovariance(s, geometric_grid(0, a.acf_lags), a.centered))
                acf.push_back(json{{"lag", k}, {"rho", v}});
            return acf;
        });
    }
    emit(json{{"series", series_summary(s)}, {"results", results}}, a.out);
    return 0;
}

// ---------------------------------------------------------------------------
// burst

struct BurstArgs {
    std::string in, out_dir = ".", prefix = "burst";
    std::vector<double> multipliers;
    double threshold = 0.0;
    bool use_threshold = false;
    double fit_lo = 2.0, fit_hi = 20.0;
    int bins_per_decade = 6;
    int min_bin_count = 3;
};

int cmd_burst(const BurstArgs& a) {
    const Series s = read_series_csv(a.in);
    fs::create_directories(a.out_dir);
    const fs::path base = fs::path(a.out_dir) / a.prefix;

    std::vector<std::pair<double, DurationSample>> samples;
    if (!a.multipliers.empty()) {
        for (const auto& [m, ds] : threshold_sweep(s, a.multipliers)) samples.emplace_back(m, ds);
    } else {
        samples.emplace_back(0.0, durations(s, a.threshold));
        samples.back().second.threshold = a.threshold;
    }

    json out = json::array();
    for (const auto& [mult, ds] : samples) {
        json entry{{"multiplier", mult},
                   {"threshold", ds.threshold},
                   {"n_bursts", ds.bursts.size()},
                   {"n_interbursts", ds.interbursts.size()},
                   {"discarded_edges", ds.discarded_edges},
                   {"edge_ticks", ds.edge_ticks}};
        for (const DurationKind kind : {DurationKind::burst, DurationKind::interburst}) {
            const char* tag = kind == DurationKind::burst ? "burst" : "interburst";
            const auto& durs = kind == DurationKind::burst ? ds.bursts : ds.interbursts;
            char name[96];
            std::snprintf(name, sizeof name, "_%s_hist_m%g.csv", tag, mult);
            if (durs.size() >= 2) {
                const std::int64_t hi = *std::max_element(durs.begin(), durs.end());
                if (hi >= 2)
                    write_log_histogram_csv(
                        duration_histogram(durs, 1, hi, a.bins_per_decade),
                        base.string() + name);
            }
            try {
                const BurstFit bf = fit_burst_pdf(ds, kind, FitRange{a.fit_lo, a.fit_hi},
                                                  a.bins_per_decade, a.min_bin_count);
                entry[std::string(tag) + "_fit"] = burst_fit_to_json(bf);
            } catch (const std::exception& e) {
                entry[std::string(tag) + "_fit"] = json{{"error", e.what()}};
            }
        }
        out.push_back(entry);
    }
    emit(json{{"series", series_summary(s)}, {"thresholds", out}},
         base.string() + "_fits.json");
    std::cout << "burst analysis written to " << base.string() << "_*\n";
    return 0;
}

// ---------------------------------------------------------------------------
// report / run-all

struct ReportArgs {
    std::string config_path;
    std::vector<std::string> tickers;
    std::string out_dir, data_root;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 0;
    bool run_all = false;
};

int cmd_report(const ReportArgs& a) {
    RunConfig cfg = a.config_path.empty() ? RunConfig{} : RunConfig::load(a.config_path);
    if (!a.tickers.empty()) cfg.tickers = a.tickers;
    if (!a.out_dir.empty()) cfg.out_dir = a.out_dir;
    if (!a.data_root.empty()) cfg.data_root = a.data_root;
    if (a.seed_set) cfg.seed = a.seed;
    if (a.jobs > 0) cfg.jobs = a.jobs;
    if (a.run_all) cfg.export_histograms = true;
    cfg.validate();

    const PipelineResult result = run_pipeline(cfg);
    fs::create_directories(cfg.out_dir);
    std::ofstream cfg_out(cfg.out_dir / "run_config.json", std::ios::binary);
    cfg_out << cfg.to_json().dump(2) << "\n";
    if (!result.reports.empty()) {
        export_table1_csv(result.reports, cfg.out_dir / "report_table1.csv");
        export_table2_csv(result.reports, cfg.out_dir / "report_table2.csv");
        export_report_json(result.reports, cfg, result.agg, cfg.out_dir / "report.json");
    }
    for (const StockReport& r : result.reports) {
        std::printf("%-6s lambda=%.3f H_AV=%.3f H_AVR=%.3f H_Hig=%.3f H_HigR=%.3f "
                    "H_BD=%.3f H_BDR=%.3f 1/alpha=%.3f\n",
                    r.ticker.c_str(), r.lambda.value, r.h_av.value, r.h_avr.value,
                    r.h_hig.value, r.h_higr.value, r.h_bd.value, r.h_bdr.value, r.inv_alpha());
    }
    if (result.agg) {
        std::printf("aggregate over %d stocks: d_MSD=%.3f(%.3f) d_AV=%.3f(%.3f) "
                    "d_Hig=%.3f(%.3f) d_BD=%.3f(%.3f)\n",
                    result.agg->n_reports, result.agg->d_msd.mean, result.agg->d_msd.sd,
                    result.agg->d_av.mean, result.agg->d_av.sd, result.agg->d_hig.mean,
                    result.agg->d_hig.sd, result.agg->d_bd.mean, result.agg->d_bd.sd);
    }
    if (!result.ok()) {
        write_error_manifest(cfg.out_dir / "error_manifest.json", result.errors);
        for (const PipelineError& e : result.errors)
            std::cerr << "error [" << e.stage << "] " << e.ticker << ": " << e.message << "\n";
        return 1;
    }
    return 0;
}

std::vector<std::string> rewrite_stage_flag(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--stage" && i + 1 < args.size()) {
            const std::string stage = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                       args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            args.insert(args.begin(), stage);
            break;
        }
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Order-disbalance scaling analysis over limit-order-book event data"};
    app.require_subcommand(0, 1);

    GlobalOpts global;
    app.add_option("--kernels", global.kernels, "Kernel backend: auto, scalar, avx2")
        ->capture_default_str();

    GenerateArgs gen;
    auto* cgen = app.add_subcommand("generate", "Generate synthetic noise or ARFIMA series");
    cgen->add_option("--kind", gen.kind, "noise, increments or arfima")->capture_default_str();
    cgen->add_option("--noise", gen.noise, "gaussian, stable or pareto")->capture_default_str();
    cgen->add_option("--sigma", gen.sigma, "gaussian sigma")->capture_default_str();
    cgen->add_option("--alpha", gen.alpha, "stable index in (0,2]")->capture_default_str();
    cgen->add_option("--scale", gen.scale, "stable scale")->capture_default_str();
    cgen->add_option("--nu", gen.nu, "pareto PDF tail exponent")->capture_default_str();
    cgen->add_option("--xmin", gen.x_min, "pareto lower cutoff")->capture_default_str();
    cgen->add_option("--d", gen.d, "memory parameter, |d| < 0.5")->capture_default_str();
    cgen->add_option("--length", gen.length, "number of samples")->required();
    cgen->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
    cgen->add_option("--terms", gen.terms, "reversion truncation")->capture_default_str();
    cgen->add_option("--ticker", gen.ticker, "label recorded in metadata");
    cgen->add_option("--out", gen.out, "output CSV path")->required();

    IngestArgs ing;
    auto* cing = app.add_subcommand("ingest", "Parse a LOBSTER message/orderbook pair");
    cing->add_option("--messages", ing.messages, "message CSV")->required();
    cing->add_option("--orderbook", ing.orderbook, "orderbook CSV")->required();
    cing->add_option("--depth", ing.depth, "book depth")->capture_default_str();
    cing->add_option("--ticker", ing.ticker, "ticker label");
    cing->add_option("--date", ing.date, "ISO date label");
    cing->add_option("--out", ing.out_dir, "output directory")->capture_default_str();
    cing->add_option("--prefix", ing.prefix, "output filename prefix");

    TransformArgs tr;
    auto* ctr = app.add_subcommand("transform", "Apply a series surgery");
    ctr->add_option("--in", tr.in, "input series CSV")->required();
    ctr->add_option("--op", tr.op, "shuffle, accumulate, bound, revert or increments")
        ->required();
    ctr->add_option("--seed", tr.seed, "shuffle seed")->capture_default_str();
    ctr->add_option("--start", tr.start, "accumulation start value")->capture_default_str();
    ctr->add_option("--bound", tr.bound, "soft bound B")->capture_default_str();
    ctr->add_option("--d", tr.d, "reversion memory parameter")->capture_default_str();
    ctr->add_option("--terms", tr.terms, "reversion truncation")->capture_default_str();
    ctr->add_option("--out", tr.out, "output series CSV")->required();

    EstimateArgs est;
    auto* cest = app.add_subcommand("estimate", "Run scaling estimators on a series");
    cest->add_option("--in", est.in, "input series CSV")->required();
    cest->add_option("--out", est.out, "output JSON (default stdout)");
    cest->add_option("--msd-fit-lo", est.msd_fit_lo)->capture_default_str();
    cest->add_option("--msd-fit-hi", est.msd_fit_hi, "0 = N/100")->capture_default_str();
    cest->add_option("--tail-fraction", est.tail_fraction)->capture_default_str();
    cest->add_option("--bins-per-decade", est.bins_per_decade)->capture_default_str();
    cest->add_option("--acf-lags", est.acf_lags, "max autocovariance lag")->capture_default_str();
    cest->add_flag("--centered", est.centered, "subtract the mean in autocovariance");

    BurstArgs bur;
    auto* cbur = app.add_subcommand("burst", "Burst / inter-burst duration analysis");
    cbur->add_option("--in", bur.in, "input path-series CSV")->required();
    cbur->add_option("--out", bur.out_dir, "output directory")->capture_default_str();
    cbur->add_option("--prefix", bur.prefix, "output filename prefix")->capture_default_str();
    cbur->add_option("--multipliers", bur.multipliers,
                     "sigma multipliers for a threshold sweep");
    cbur->add_option("--threshold", bur.threshold, "absolute threshold (default 0)")
        ->capture_default_str();
    cbur->add_option("--fit-lo", bur.fit_lo)->capture_default_str();
    cbur->add_option("--fit-hi", bur.fit_hi)->capture_default_str();
    cbur->add_option("--bins-per-decade", bur.bins_per_decade)->capture_default_str();
    cbur->add_option("--min-count", bur.min_bin_count, "minimum bin count used in the fit")
        ->capture_default_str();

    ReportArgs rep;
    auto* crep = app.add_subcommand("report", "Full per-stock estimator report");
    auto* call = app.add_subcommand("run-all", "Report plus all histogram artifacts");
    for (auto* c : {crep, call}) {
        c->add_option("--config", rep.config_path, "run configuration JSON");
        c->add_option("--tickers", rep.tickers, "override config tickers");
        c->add_option("--out", rep.out_dir, "override output directory");
        c->add_option("--data-root", rep.data_root, "override data root");
        c->add_option("--seed", rep.seed, "override master seed")
            ->each([&](const std::string&) { rep.seed_set = true; });
        c->add_option("--jobs", rep.jobs, "worker threads");
    }

    const auto args = rewrite_stage_flag(argc, argv);
    try {
        // CLI11 parses reversed argv
        std::vector<std::string> rargs(args.rbegin(), args.rend());
        app.parse(rargs);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        apply_kernel_choice(global.kernels);
        if (cgen->parsed()) return cmd_generate(gen);
        if (cing->parsed()) return cmd_ingest(ing);
        if (ctr->parsed()) return cmd_transform(tr);
        if (cest->parsed()) return cmd_estimate(est);
        if (cbur->parsed()) return cmd_burst(bur);
        if (crep->parsed() || call->parsed()) {
            rep.run_all = call->parsed();
            return cmd_report(rep);
        }
        std::cout << app.help();
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        fs::path dir = ".";
        if (crep->parsed() || call->parsed()) {
            if (!rep.out_dir.empty()) dir = rep.out_dir;
        } else if (cbur->parsed()) {
            dir = bur.out_dir;
        } else if (cing->parsed()) {
            dir = ing.out_dir;
        }
        write_single_error_manifest(dir, "cli", e.what());
        return 1;
    }
}
