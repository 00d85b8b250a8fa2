#include "lobscale/series_io.hpp"

#include <charconv>
#include <fstream>

#include <json.hpp>

namespace lobscale {

const char* to_string(SeriesKind kind) {
    switch (kind) {
        case SeriesKind::empirical: return "empirical";
        case SeriesKind::increments: return "increments";
        case SeriesKind::shuffled: return "shuffled";
        case SeriesKind::bounded: return "bounded";
        case SeriesKind::reverted: return "reverted";
        case SeriesKind::synthetic: return "synthetic";
    }
    return "?";
}

SeriesKind series_kind_from_string(const std::string& name) {
    for (const SeriesKind k :
         {SeriesKind::empirical, SeriesKind::increments, SeriesKind::shuffled,
          SeriesKind::bounded, SeriesKind::reverted, SeriesKind::synthetic}) {
        if (name == to_string(k)) return k;
    }
    throw Error("unknown series kind: " + name);
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
    std::filesystem::path p = csv_path;
    p.replace_extension(".meta.json");
    return p;
}

void write_series_csv(const Series& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    for (const double v : series.values) out << format_double(v) << '\n';
    if (!out) throw Error("write failed: " + path.string());

    nlohmann::json meta{
        {"kind", to_string(series.kind)},
        {"is_path", series.is_path},
        {"length", series.size()},
        {"ticker", series.meta.ticker},
        {"date_start", series.meta.date_start},
        {"date_end", series.meta.date_end},
        {"source", series.meta.source},
    };
    std::ofstream side(sidecar_path(path), std::ios::binary);
    if (!side) throw Error("cannot write " + sidecar_path(path).string());
    side << meta.dump(2) << '\n';
}

Series read_series_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    Series s;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
        if (ec != std::errc() || ptr != line.data() + line.size())
            throw Error(path.string() + ":" + std::to_string(line_no) +
                        ": unparsable value '" + line + "'");
        s.values.push_back(v);
    }
    if (s.values.empty()) throw Error(path.string() + ": empty series file");

    const auto side = sidecar_path(path);
    if (std::filesystem::exists(side)) {
        std::ifstream sin(side, std::ios::binary);
        nlohmann::json meta = nlohmann::json::parse(sin);
        s.kind = series_kind_from_string(meta.value("kind", "synthetic"));
        s.is_path = meta.value("is_path", false);
        s.meta.ticker = meta.value("ticker", "");
        s.meta.date_start = meta.value("date_start", "");
        s.meta.date_end = meta.value("date_end", "");
        s.meta.source = meta.value("source", "");
    } else {
        s.kind = SeriesKind::synthetic;
        s.is_path = false;
    }
    return s;
}

void write_log_histogram_csv(const LogHistogram& hist, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << "bin_center,density,count\n";
    for (std::size_t i = 0; i < hist.bins(); ++i)
        out << format_double(hist.center(i)) << ',' << format_double(hist.densities[i]) << ','
            << hist.counts[i] << '\n';
    if (!out) throw Error("write failed: " + path.string());
}

}  // namespace lobscale
