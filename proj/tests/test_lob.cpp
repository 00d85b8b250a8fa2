#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "lobscale/lob.hpp"
#include "lobscale/transform.hpp"

using namespace lobscale;
namespace fs = std::filesystem;

namespace {

fs::path tmp_file(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("parse_messages: LOBSTER column layout") {
    const auto p = tmp_file("msg_ok.csv",
                            "34200.000000001,1,11885113,21,2238100,1\n"
                            "34200.000000002,3,11885113,21,2238100,-1\n");
    const auto events = parse_messages(p);
    REQUIRE(events.size() == 2);
    CHECK(events[0].time_ns == 34200000000001ll);
    CHECK(events[0].time_seconds() == doctest::Approx(34200.000000001).epsilon(1e-12));
    CHECK(events[0].type == LobEventType::submission);
    CHECK(events[0].order_id == 11885113);
    CHECK(events[0].size == 21);
    CHECK(events[0].price == 2238100);
    CHECK(events[0].direction == 1);
    CHECK(events[1].type == LobEventType::deletion);
    CHECK(events[1].direction == -1);
}

TEST_CASE("parse_messages: error paths name the line") {
    const auto empty = tmp_file("msg_empty.csv", "");
    CHECK_THROWS_WITH_AS(parse_messages(empty), doctest::Contains("empty input"), Error);

    const auto short_row = tmp_file("msg_short.csv",
                                    "34200.0,1,1,1,100,1\n"
                                    "34201.0,1,1,1,100\n");
    CHECK_THROWS_WITH_AS(parse_messages(short_row), doctest::Contains(":2:"), ParseError);

    const auto bad_num = tmp_file("msg_badnum.csv", "34200.0,1,x,1,100,1\n");
    CHECK_THROWS_AS(parse_messages(bad_num), ParseError);

    const auto bad_type = tmp_file("msg_badtype.csv", "34200.0,9,1,1,100,1\n");
    CHECK_THROWS_WITH_AS(parse_messages(bad_type), doctest::Contains("event type"), ParseError);

    const auto time_back = tmp_file("msg_timeback.csv",
                                    "34201.0,1,1,1,100,1\n"
                                    "34200.0,1,2,1,100,1\n");
    CHECK_THROWS_WITH_AS(parse_messages(time_back), doctest::Contains("time decreases"),
                         ParseError);
}

TEST_CASE("parse_orderbook: depth handling and sentinels") {
    const auto p1 = tmp_file("ob_d1.csv", "2239500,100,2238100,21\n");
    const auto snaps = parse_orderbook(p1, 1);
    REQUIRE(snaps.size() == 1);
    CHECK(snaps[0].levels[0].ask_price == 2239500);
    CHECK(snaps[0].levels[0].ask_size == 100);
    CHECK(snaps[0].levels[0].bid_price == 2238100);
    CHECK(snaps[0].levels[0].bid_size == 21);

    // all-sentinel row: 10 empty levels, sizes 0
    std::string row;
    for (int k = 0; k < 10; ++k)
        row += std::string(k ? "," : "") + "9999999999,0,-9999999999,0";
    const auto p2 = tmp_file("ob_sentinel.csv", row + "\n");
    const auto empty_book = parse_orderbook(p2, 10);
    REQUIRE(empty_book.size() == 1);
    CHECK(empty_book[0].disbalance() == 0);

    // 36 columns when depth 10 expects 40
    std::string bad;
    for (int k = 0; k < 9; ++k) bad += std::string(k ? "," : "") + "1,1,1,1";
    const auto p3 = tmp_file("ob_short.csv", bad + "\n");
    CHECK_THROWS_WITH_AS(parse_orderbook(p3, 10), doctest::Contains("expected 40 columns"),
                         ParseError);

    const auto p4 = tmp_file("ob_negsize.csv", "2239500,-5,2238100,21\n");
    CHECK_THROWS_WITH_AS(parse_orderbook(p4, 1), doctest::Contains("negative size"), ParseError);

    // bids must strictly decrease across occupied levels
    const auto p5 = tmp_file("ob_badbid.csv", "100,1,90,1,101,1,95,1\n");
    CHECK_THROWS_WITH_AS(parse_orderbook(p5, 2), doctest::Contains("bid prices"), ParseError);
}

TEST_CASE("round trip: parse then serialize reproduces the fixture") {
    const std::string msg_fixture =
        "34200.000000001,1,11885113,21,2238100,1\n"
        "34200.100000002,4,11885113,10,2238100,-1\n"
        "57599.999999999,2,11885114,5,2240000,1\n";
    const auto mp = tmp_file("msg_rt.csv", msg_fixture);
    const auto events = parse_messages(mp);
    const auto mp2 = fs::temp_directory_path() / "msg_rt2.csv";
    write_messages(mp2, events);
    CHECK(slurp(mp2) == msg_fixture);

    const std::string ob_fixture =
        "2239500,100,2238100,21,2239600,50,2238000,10\n"
        "2239500,90,2238100,21,9999999999,0,-9999999999,0\n";
    const auto op = tmp_file("ob_rt.csv", ob_fixture);
    const auto snaps = parse_orderbook(op, 2);
    const auto op2 = fs::temp_directory_path() / "ob_rt2.csv";
    write_orderbook(op2, snaps);
    CHECK(slurp(op2) == ob_fixture);
}

TEST_CASE("build_disbalance: hand sums") {
    BookSnapshot s1;
    s1.levels = {{2239500, 100, 2238100, 21}, {2239600, 5, 2238000, 10}};
    CHECK(s1.disbalance() == (21 + 10) - (100 + 5));  // -74

    BookSnapshot sym;
    sym.levels = {{101, 7, 99, 7}, {102, 3, 98, 3}};
    CHECK(sym.disbalance() == 0);

    const std::vector<BookSnapshot> snaps{s1, sym};
    const Series x = build_disbalance(snaps);
    REQUIRE(x.size() == 2);
    CHECK(x.values[0] == -74.0);
    CHECK(x.values[1] == 0.0);
    CHECK(x.kind == SeriesKind::empirical);
    CHECK(x.is_path);

    CHECK_THROWS_AS(build_disbalance(std::vector<BookSnapshot>{}), Error);
}

TEST_CASE("disbalance antisymmetry under bid/ask swap") {
    BookSnapshot s;
    s.levels = {{101, 40, 99, 25}, {102, 17, 98, 3}};
    BookSnapshot swapped;
    for (const auto& lv : s.levels)
        swapped.levels.push_back({lv.bid_price, lv.bid_size, lv.ask_price, lv.ask_size});
    CHECK(s.disbalance() == -swapped.disbalance());
}

TEST_CASE("increments") {
    Series x;
    x.values = {0.0, 3.0, 1.0};
    const Series y = increments(x);
    REQUIRE(y.size() == 2);
    CHECK(y.values[0] == 3.0);
    CHECK(y.values[1] == -2.0);
    CHECK(y.kind == SeriesKind::increments);
    CHECK(!y.is_path);

    Series constant;
    constant.values = {5.0, 5.0, 5.0};
    for (const double v : increments(constant).values) CHECK(v == 0.0);

    Series single;
    single.values = {1.0};
    CHECK_THROWS_AS(increments(single), Error);
}

TEST_CASE("increments / accumulate round trip is exact on integer counts") {
    Series x;
    x.meta.ticker = "TEST";
    for (int i = 0; i < 200; ++i) x.values.push_back(static_cast<double>((i * 7919) % 4001 - 2000));
    const Series y = increments(x);
    const Series back = accumulate(y, x.values[0]);
    REQUIRE(back.size() == x.size() - 1);
    for (std::size_t i = 0; i < back.size(); ++i) CHECK(back.values[i] == x.values[i + 1]);
    CHECK(back.kind == SeriesKind::empirical);
}

TEST_CASE("join_daily") {
    Series d1, d2;
    d1.kind = d2.kind = SeriesKind::increments;
    d1.is_path = d2.is_path = false;
    d1.meta.ticker = d2.meta.ticker = "AAPL";
    d1.meta.date_start = d1.meta.date_end = "2020-08-03";
    d2.meta.date_start = d2.meta.date_end = "2020-08-04";
    d1.values.assign(100, 1.0);
    d2.values.assign(50, -1.0);

    const std::vector<Series> days{d1, d2};
    const Series joint = join_daily(days);
    CHECK(joint.size() == 150);
    CHECK(joint.meta.date_start == "2020-08-03");
    CHECK(joint.meta.date_end == "2020-08-04");

    const std::vector<Series> one{d1};
    CHECK(join_daily(one).values == d1.values);

    Series other = d2;
    other.meta.ticker = "MSFT";
    const std::vector<Series> mixed{d1, other};
    CHECK_THROWS_WITH_AS(join_daily(mixed), doctest::Contains("ticker mismatch"), Error);
}

TEST_CASE("join_daily: overnight jump never becomes an increment") {
    // Two 2-point days; the close->open gap (100 -> 500) must not appear.
    Series day1, day2;
    day1.values = {0.0, 100.0};
    day2.values = {500.0, 501.0};
    day1.meta.ticker = day2.meta.ticker = "T";
    const Series y1 = increments(day1);
    const Series y2 = increments(day2);
    const std::vector<Series> days{y1, y2};
    const Series joint = join_daily(days);
    REQUIRE(joint.size() == 2);
    CHECK(joint.values[0] == 100.0);
    CHECK(joint.values[1] == 1.0);
}
