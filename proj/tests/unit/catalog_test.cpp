#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "ffd/catalog.hpp"
#include "oracles.hpp"

using namespace ffd;

TEST(RecordId, RoundTrip) {
    const RecordKey key{64, 2, 13, 5381};
    EXPECT_EQ(make_record_id(key), "64-2-13.5381");
    EXPECT_EQ(parse_record_id("64-2-13.5381"), key);
    for (const char* bad : {"64-2-13", "63-2-13.1", "64-2.1", "64-2-13.0", "a-b-c.d", "64-2-13.1x"})
        EXPECT_THROW(parse_record_id(bad), ValidationError) << bad;
}

TEST(Record, RenderFormat) {
    const auto d = make_design(4, 1, {4, 8, 7, 13});
    const auto r = make_record(d, 2, "16-1-3.1", "st");
    EXPECT_EQ(render_record(r), "16-1-4.2;4,8,7,13;3;0:0,1:1;0:0,1:2;0:0,1:0;16-1-3.1;st");
    const auto seed = make_record(seed_design(4, 2), 1, "", "full");
    EXPECT_EQ(render_record(seed), "16-2-0.1;-;inf;0:0,1:0,2:0;0:0,1:0,2:0;0:0,1:0,2:0;-;full");
}

TEST(Record, RoundTripIsLossless) {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 3 + trial % 4;
        const int m = trial % (k / 2 + 1);
        const int n = std::min(k - 2 * m + trial % 5, oracle::column_pool_size(k, m));
        const auto d = oracle::random_design(k, m, n, rng);
        const auto r = make_record(d, 1 + trial, trial % 3 ? "x-y" : "", trial % 2 ? "st" : "dop");
        const auto back = parse_record(render_record(r));
        EXPECT_EQ(back, r);
        EXPECT_EQ(record_design(back), d);
    }
}

TEST(Record, ParseErrorsCarryLineNumbers) {
    const std::string good = "16-1-3.1;4,8,5;3;0:0,1:1;0:0,1:0;0:0,1:0;-;st";
    EXPECT_NO_THROW(parse_record(good, 1));
    const std::vector<std::string> bad{
        "16-1-3.1;4,8,5;3;0:0,1:1;0:0,1:0;0:0,1:0;-",         // missing field
        "16-1-3.1;4,8;3;0:0,1:1;0:0,1:0;0:0,1:0;-;st",        // column count
        "16-1-3.1;4,8,99;3;0:0,1:1;0:0,1:0;0:0,1:0;-;st",     // column range
        "16-1-3.1;4,8,5;x;0:0,1:1;0:0,1:0;0:0,1:0;-;st",      // resolution
        "16-1-3.1;4,8,5;3;0:0;0:0,1:0;0:0,1:0;-;st",          // vector length
        "16-1-3.1;4,8,5;3;1:0,0:1;0:0,1:0;0:0,1:0;-;st",      // type order
        "16-1-3.1;4,8,5;3;0:0,1:-1;0:0,1:0;0:0,1:0;-;st",     // negative count
        "16-1-3.1;4,8,5;3;0:0,1:1;0:0,1:0;0:0,1:0;;st",       // empty parent
        "16-1-3;4,8,5;3;0:0,1:1;0:0,1:0;0:0,1:0;-;st",        // id
    };
    for (const auto& line : bad) {
        try {
            parse_record(line, 7);
            ADD_FAILURE() << "accepted: " << line;
        } catch (const ParseError& e) {
            EXPECT_EQ(e.line(), 7u);
        }
    }
}

TEST(Catalog, ReadSkipsCommentsAndChecksIds) {
    std::stringstream ss;
    write_catalog(ss, {make_record(make_design(4, 1, {4, 8, 5}), 1, "16-1-2.1", "st"),
                       make_record(make_design(4, 1, {4, 8, 12}), 2, "16-1-2.1", "st")});
    ss << "\n# trailing comment\n";
    const auto text = ss.str();
    std::istringstream in(text);
    const auto records = read_catalog(in);
    ASSERT_EQ(records.size(), 2u);
    EXPECT_EQ(records[1].id, "16-1-3.2");

    std::istringstream dup(text + render_record(records[0]) + "\n");
    try {
        read_catalog(dup);
        ADD_FAILURE();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 6u);
    }
    std::istringstream broken("# header\n\nnot a record\n");
    try {
        read_catalog(broken);
        ADD_FAILURE();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}
