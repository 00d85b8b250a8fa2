#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lobscale/series.hpp"

namespace lobscale {

/// Parse failure with file and 1-based line attribution.
class ParseError : public Error {
public:
    ParseError(const std::filesystem::path& file, std::size_t line, const std::string& what)
        : Error(file.string() + ":" + std::to_string(line) + ": " + what) {}
};

/// LOBSTER message event types.
enum class LobEventType : int {
    submission = 1,
    cancellation = 2,
    deletion = 3,
    execution_visible = 4,
    execution_hidden = 5,
    cross = 6,
    trading_halt = 7,
};

/// One row of a LOBSTER message file. Times are kept as integer nanoseconds
/// after midnight and prices as price * 10000, so parsing is lossless and
/// re-serialization is byte-identical.
struct LobEvent {
    std::int64_t time_ns = 0;
    LobEventType type = LobEventType::submission;
    std::int64_t order_id = 0;
    std::int64_t size = 0;
    std::int64_t price = 0;
    int direction = 1;  // +1 buy, -1 sell

    double time_seconds() const { return static_cast<double>(time_ns) * 1e-9; }
};

struct BookLevel {
    std::int64_t ask_price = 0;
    std::int64_t ask_size = 0;
    std::int64_t bid_price = 0;
    std::int64_t bid_size = 0;
};

/// One row of a LOBSTER orderbook file: the book state after the paired
/// event, best levels first. Unoccupied levels carry the LOBSTER sentinel
/// prices and size 0.
struct BookSnapshot {
    std::vector<BookLevel> levels;

    /// Total bid volume minus total ask volume across all levels; exact
    /// integer arithmetic.
    std::int64_t disbalance() const;
};

std::vector<LobEvent> parse_messages(const std::filesystem::path& path);
std::vector<BookSnapshot> parse_orderbook(const std::filesystem::path& path, int depth);

/// Order-disbalance event series: values[j] = disbalance of snapshot j.
Series build_disbalance(std::span<const BookSnapshot> snapshots);

/// First differences of a path series; length N-1.
Series increments(const Series& series);

/// Concatenate per-day increment series of one ticker. Increments never
/// straddle a day boundary: each day differentiates independently, so
/// overnight book resets produce no spurious increment.
Series join_daily(std::span<const Series> daily_increments);

// Serializers matching the LOBSTER column layout; used by the round-trip
// checks and for writing synthetic fixtures.
std::string format_message_row(const LobEvent& ev);
std::string format_orderbook_row(const BookSnapshot& snap);
void write_messages(const std::filesystem::path& path, std::span<const LobEvent> events);
void write_orderbook(const std::filesystem::path& path, std::span<const BookSnapshot> snaps);

}  // namespace lobscale
