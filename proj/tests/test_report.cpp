#include "klein/report.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace klein;

TEST(Report, RealSectionIsSeedIndependent) {
    auto a = run_verification({{"real"}, 1, false});
    auto b = run_verification({{"real"}, 99, false});
    ASSERT_EQ(a.claims.size(), 1u);
    EXPECT_TRUE(a.pass());
    EXPECT_EQ(a.claims[0].computed, b.claims[0].computed);
}

TEST(Report, DeterministicBytes) {
    VerifyOptions o{{"group", "z24", "chains"}, 7, false};
    EXPECT_EQ(run_verification(o).jsonl(), run_verification(o).jsonl());
}

TEST(Report, DifferentSeedsChangeCenters) {
    auto a = run_verification({{"z24"}, 1, false}).jsonl();
    auto b = run_verification({{"z24"}, 2, false}).jsonl();
    EXPECT_NE(a, b);
}

TEST(Report, UnknownSectionRejected) {
    EXPECT_THROW(run_verification({{"nonsense"}, 1, false}), std::invalid_argument);
}

TEST(Report, JsonlShape) {
    auto r = run_verification({{"incidence", "real"}, 3, false});
    std::istringstream in(r.jsonl());
    std::string line;
    std::vector<Json> recs;
    while (std::getline(in, line)) recs.push_back(Json::parse(line));
    ASSERT_EQ(recs.size(), r.claims.size() + 2);
    EXPECT_EQ(recs.front()["record"], "header");
    EXPECT_EQ(recs.back()["record"], "footer");
    EXPECT_EQ(recs.back()["verdict"], "pass");
    for (std::size_t i = 1; i + 1 < recs.size(); ++i) {
        EXPECT_EQ(recs[i]["record"], "claim");
        EXPECT_FALSE(recs[i].contains("wall_ms"));
    }
}

TEST(Report, QuadricListingDiscrepancyIsFlagged) {
    auto r = run_verification({{"group"}, 1, false});
    const auto* c = r.find("group.quadric_orbits");
    ASSERT_NE(c, nullptr);
    EXPECT_TRUE(c->pass);
    const auto& it = c->computed["t_iterates"];
    EXPECT_EQ(it["Q1"][3], "Q4");
    EXPECT_EQ(it["Q1"][4], "Q5");
    EXPECT_EQ(it["Q6"][3], "Q9");
    EXPECT_EQ(it["Q6"][4], "Q10");
    EXPECT_EQ(c->computed["listing_discrepancies"].size(), 2u);
}

TEST(Report, TimingsAreOptIn) {
    auto r = run_verification({{"real"}, 3, true});
    EXPECT_NE(r.jsonl().find("wall_ms"), std::string::npos);
}

TEST(PointFile, DumpRoundTrip) {
    auto k = build_klein();
    std::istringstream in(dump_points(k.points));
    auto pts = parse_pointset(in);
    EXPECT_EQ(pts, k.points);
}

TEST(PointFile, DuplicateNamesBothLines) {
    std::istringstream in("# two copies\n0 0 1 1\n1 0 0 0\n0 0 2 2  # same point\n");
    try {
        parse_pointset(in, "dup.txt");
        FAIL();
    } catch (const PointFileError& e) {
        std::string w = e.what();
        EXPECT_NE(w.find("lines 2 and 4"), std::string::npos) << w;
    }
}

TEST(PointFile, ParseErrorsHaveLineAndColumn) {
    std::istringstream bad("1 0 0 0\n1 2 x 0\n");
    try {
        parse_pointset(bad, "bad.txt");
        FAIL();
    } catch (const PointFileError& e) {
        EXPECT_NE(std::string(e.what()).find("bad.txt:2:5"), std::string::npos) << e.what();
    }
    std::istringstream three("1 2 3\n");
    EXPECT_THROW(parse_pointset(three), PointFileError);
    std::istringstream empty("# nothing\n\n");
    EXPECT_THROW(parse_pointset(empty), PointFileError);
    std::istringstream zero("0 0 0 0\n");
    EXPECT_THROW(parse_pointset(zero), PointFileError);
}

TEST(PointFile, ResidualGridFromFile) {
    auto k = build_klein();
    std::vector<ProjPoint> res;
    auto z = z24_subset().indices;
    for (std::size_t p = 0; p < 60; ++p)
        if (std::find(z.begin(), z.end(), p) == z.end()) res.push_back(k.points[p]);
    std::istringstream in(dump_points(res));
    auto pts = parse_pointset(in);
    ASSERT_EQ(pts.size(), 36u);
    auto g = grid_check(pts);
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(g->a, 6u);
    EXPECT_EQ(g->b, 6u);
}

TEST(Figure, PointsSegmentsLabels) {
    auto svg = render_figure(build_klein());
    auto count = [&](const std::string& needle) {
        std::size_t n = 0;
        for (auto p = svg.find(needle); p != std::string::npos; p = svg.find(needle, p + 1)) ++n;
        return n;
    };
    EXPECT_EQ(count("<circle class=\"point\""), 15u);
    EXPECT_EQ(count("<line class=\"segment\""), 3u);
    for (const char* lab : {">25<", ">26<", ">27<", ">9<", ">17<", ">21<"}) EXPECT_EQ(count(lab), 1u) << lab;
}

TEST(Figure, WellFormedXml) {
    // tags balance: every opening tag is closed or self-closing
    auto svg = render_figure(build_klein());
    std::vector<std::string> stack;
    for (std::size_t p = svg.find('<'); p != std::string::npos; p = svg.find('<', p + 1)) {
        auto q = svg.find('>', p);
        ASSERT_NE(q, std::string::npos);
        std::string tag = svg.substr(p + 1, q - p - 1);
        if (tag[0] == '?') continue;
        if (tag[0] == '/') {
            ASSERT_FALSE(stack.empty());
            EXPECT_EQ(stack.back(), tag.substr(1));
            stack.pop_back();
        } else if (tag.back() != '/') {
            stack.push_back(tag.substr(0, tag.find(' ')));
        }
    }
    EXPECT_TRUE(stack.empty());
}
