#include "lobscale/lob.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <string_view>

namespace lobscale {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return data;
}

// Iterates lines without copying; tolerates \r\n and a missing final newline.
struct LineCursor {
    std::string_view rest;
    std::size_t line_no = 0;

    bool next(std::string_view& line) {
        while (!rest.empty()) {
            const std::size_t nl = rest.find('\n');
            line = nl == std::string_view::npos ? rest : rest.substr(0, nl);
            rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (!line.empty()) return true;  // skip blank lines (trailing newline)
        }
        return false;
    }
};

std::int64_t parse_int(std::string_view field, const std::filesystem::path& file,
                       std::size_t line, const char* what) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw ParseError(file, line, std::string("unparsable ") + what + " '" +
                                         std::string(field) + "'");
    return value;
}

// LOBSTER times are seconds.nanoseconds after midnight; parsed to integer
// nanoseconds so that values survive a round trip exactly.
std::int64_t parse_time_ns(std::string_view field, const std::filesystem::path& file,
                           std::size_t line) {
    const std::size_t dot = field.find('.');
    const std::string_view secs = dot == std::string_view::npos ? field : field.substr(0, dot);
    const std::int64_t s = parse_int(secs, file, line, "time");
    std::int64_t nanos = 0;
    if (dot != std::string_view::npos) {
        std::string_view frac = field.substr(dot + 1);
        if (frac.empty() || frac.size() > 9)
            throw ParseError(file, line, "time fraction must have 1..9 digits");
        nanos = parse_int(frac, file, line, "time fraction");
        for (std::size_t i = frac.size(); i < 9; ++i) nanos *= 10;
    }
    if (s < 0 || nanos < 0) throw ParseError(file, line, "negative time");
    return s * 1000000000ll + nanos;
}

std::size_t split_fields(std::string_view line, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out.size();
}

}  // namespace

std::int64_t BookSnapshot::disbalance() const {
    std::int64_t bid = 0, ask = 0;
    for (const BookLevel& lv : levels) {
        bid += lv.bid_size;
        ask += lv.ask_size;
    }
    return bid - ask;
}

std::vector<LobEvent> parse_messages(const std::filesystem::path& path) {
    const std::string data = read_file(path);
    LineCursor cur{data};
    std::vector<std::string_view> fields;
    std::vector<LobEvent> events;
    std::string_view line;
    std::int64_t prev_time = -1;
    while (cur.next(line)) {
        if (split_fields(line, fields) != 6)
            throw ParseError(path, cur.line_no,
                             "expected 6 columns, got " + std::to_string(fields.size()));
        LobEvent ev;
        ev.time_ns = parse_time_ns(fields[0], path, cur.line_no);
        const std::int64_t type = parse_int(fields[1], path, cur.line_no, "event type");
        if (type < 1 || type > 7)
            throw ParseError(path, cur.line_no, "event type out of range 1..7");
        ev.type = static_cast<LobEventType>(type);
        ev.order_id = parse_int(fields[2], path, cur.line_no, "order id");
        ev.size = parse_int(fields[3], path, cur.line_no, "size");
        if (ev.size < 0) throw ParseError(path, cur.line_no, "negative size");
        ev.price = parse_int(fields[4], path, cur.line_no, "price");
        const std::int64_t dir = parse_int(fields[5], path, cur.line_no, "direction");
        if (dir != 1 && dir != -1)
            throw ParseError(path, cur.line_no, "direction must be 1 or -1");
        ev.direction = static_cast<int>(dir);
        if (ev.time_ns < prev_time)
            throw ParseError(path, cur.line_no, "time decreases within file");
        prev_time = ev.time_ns;
        events.push_back(ev);
    }
    if (events.empty()) throw Error(path.string() + ": empty input");
    return events;
}

std::vector<BookSnapshot> parse_orderbook(const std::filesystem::path& path, int depth) {
    if (depth < 1) throw Error("parse_orderbook: depth must be >= 1");
    const std::string data = read_file(path);
    const std::size_t want = static_cast<std::size_t>(depth) * 4;
    LineCursor cur{data};
    std::vector<std::string_view> fields;
    std::vector<BookSnapshot> snaps;
    std::string_view line;
    while (cur.next(line)) {
        if (split_fields(line, fields) != want)
            throw ParseError(path, cur.line_no,
                             "expected " + std::to_string(want) + " columns, got " +
                                 std::to_string(fields.size()));
        BookSnapshot snap;
        snap.levels.resize(static_cast<std::size_t>(depth));
        for (int k = 0; k < depth; ++k) {
            auto& lv = snap.levels[static_cast<std::size_t>(k)];
            const std::size_t base = static_cast<std::size_t>(k) * 4;
            lv.ask_price = parse_int(fields[base], path, cur.line_no, "ask price");
            lv.ask_size = parse_int(fields[base + 1], path, cur.line_no, "ask size");
            lv.bid_price = parse_int(fields[base + 2], path, cur.line_no, "bid price");
            lv.bid_size = parse_int(fields[base + 3], path, cur.line_no, "bid size");
            if (lv.ask_size < 0 || lv.bid_size < 0)
                throw ParseError(path, cur.line_no, "negative size");
        }
        // Monotonicity across occupied levels only; sentinel-padded levels
        // (size 0) repeat the sentinel price.
        std::int64_t prev_ask = 0, prev_bid = 0;
        bool has_ask = false, has_bid = false;
        for (const auto& lv : snap.levels) {
            if (lv.ask_size > 0) {
                if (has_ask && lv.ask_price <= prev_ask)
                    throw ParseError(path, cur.line_no, "ask prices not strictly increasing");
                prev_ask = lv.ask_price;
                has_ask = true;
            }
            if (lv.bid_size > 0) {
                if (has_bid && lv.bid_price >= prev_bid)
                    throw ParseError(path, cur.line_no, "bid prices not strictly decreasing");
                prev_bid = lv.bid_price;
                has_bid = true;
            }
        }
        snaps.push_back(std::move(snap));
    }
    if (snaps.empty()) throw Error(path.string() + ": empty input");
    return snaps;
}

Series build_disbalance(std::span<const BookSnapshot> snapshots) {
    if (snapshots.empty()) throw Error("build_disbalance: empty snapshot sequence");
    Series out;
    out.values.reserve(snapshots.size());
    for (const BookSnapshot& s : snapshots)
        out.values.push_back(static_cast<double>(s.disbalance()));
    out.kind = SeriesKind::empirical;
    out.is_path = true;
    out.meta.source = "build_disbalance";
    return out;
}

Series increments(const Series& series) {
    if (series.size() < 2) throw Error("increments: need at least 2 samples");
    Series out;
    out.values.resize(series.size() - 1);
    for (std::size_t i = 0; i + 1 < series.size(); ++i)
        out.values[i] = series.values[i + 1] - series.values[i];
    out.kind = SeriesKind::increments;
    out.is_path = false;
    out.meta = series.meta;
    out.meta.source += " |> increments";
    return out;
}

Series join_daily(std::span<const Series> daily_increments) {
    if (daily_increments.empty()) throw Error("join_daily: no series");
    const Series& first = daily_increments.front();
    std::size_t total = 0;
    for (const Series& s : daily_increments) {
        if (s.is_path) throw Error("join_daily: expects increment series");
        if (s.kind != first.kind) throw Error("join_daily: mixed series kinds");
        if (s.meta.ticker != first.meta.ticker)
            throw Error("join_daily: ticker mismatch ('" + first.meta.ticker + "' vs '" +
                        s.meta.ticker + "')");
        total += s.size();
    }
    Series out;
    out.values.reserve(total);
    for (const Series& s : daily_increments)
        out.values.insert(out.values.end(), s.values.begin(), s.values.end());
    out.kind = first.kind;
    out.is_path = false;
    out.meta.ticker = first.meta.ticker;
    out.meta.date_start = first.meta.date_start;
    out.meta.date_end = daily_increments.back().meta.date_end.empty()
                            ? daily_increments.back().meta.date_start
                            : daily_increments.back().meta.date_end;
    out.meta.source =
        "join_daily(" + std::to_string(daily_increments.size()) + " days)";
    return out;
}

std::string format_message_row(const LobEvent& ev) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "%" PRId64 ".%09" PRId64 ",%d,%" PRId64 ",%" PRId64 ",%" PRId64 ",%d",
                  static_cast<std::int64_t>(ev.time_ns / 1000000000),
                  static_cast<std::int64_t>(ev.time_ns % 1000000000),
                  static_cast<int>(ev.type), ev.order_id, ev.size, ev.price, ev.direction);
    return buf;
}

std::string format_orderbook_row(const BookSnapshot& snap) {
    std::string row;
    row.reserve(snap.levels.size() * 32);
    char buf[96];
    for (std::size_t k = 0; k < snap.levels.size(); ++k) {
        const auto& lv = snap.levels[k];
        std::snprintf(buf, sizeof buf, "%s%" PRId64 ",%" PRId64 ",%" PRId64 ",%" PRId64,
                      k == 0 ? "" : ",", lv.ask_price, lv.ask_size, lv.bid_price, lv.bid_size);
        row += buf;
    }
    return row;
}

namespace {

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    for (const std::string& r : rows) out << r << '\n';
    if (!out) throw Error("write failed: " + path.string());
}

}  // namespace

void write_messages(const std::filesystem::path& path, std::span<const LobEvent> events) {
    std::vector<std::string> rows;
    rows.reserve(events.size());
    for (const LobEvent& ev : events) rows.push_back(format_message_row(ev));
    write_lines(path, rows);
}

void write_orderbook(const std::filesystem::path& path, std::span<const BookSnapshot> snaps) {
    std::vector<std::string> rows;
    rows.reserve(snaps.size());
    for (const BookSnapshot& s : snaps) rows.push_back(format_orderbook_row(s));
    write_lines(path, rows);
}

}  // namespace lobscale
