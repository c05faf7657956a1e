#include "klein/klein_config.hpp"

#include <gtest/gtest.h>

using namespace klein;

namespace {
const KleinConfiguration& K() {
    static const KleinConfiguration k = build_klein();
    return k;
}
std::map<std::size_t, std::size_t> sizes(const std::vector<std::vector<std::size_t>>& v) {
    std::map<std::size_t, std::size_t> m;
    for (const auto& x : v) ++m[x.size()];
    return m;
}
}  // namespace

TEST(Config, Counts) {
    EXPECT_EQ(K().points.size(), 60u);
    EXPECT_EQ(K().lines.size(), 30u);
    EXPECT_EQ(K().quadrics.size(), 10u);
    EXPECT_EQ(K().planes.size(), 60u);
}

TEST(Config, Incidences) {
    using M = std::map<std::size_t, std::size_t>;
    EXPECT_EQ(sizes(K().line_points), (M{{6, 30}}));
    EXPECT_EQ(sizes(K().point_lines), (M{{3, 60}}));
    EXPECT_EQ(sizes(K().line_quadrics), (M{{4, 30}}));
    EXPECT_EQ(sizes(K().quadric_lines), (M{{12, 10}}));
    EXPECT_EQ(sizes(K().plane_points), (M{{15, 60}}));
}

TEST(Config, PointsDistinctAndNormalized) {
    std::set<ProjPoint> s(K().points.begin(), K().points.end());
    EXPECT_EQ(s.size(), 60u);
    for (const auto& p : K().points) {
        std::size_t k = 0;
        while (p[k].is_zero()) ++k;
        EXPECT_TRUE(p[k].is_one());
    }
}

TEST(Config, MeetingLinesMeetInConfigurationPoints) {
    EXPECT_GT(check_line_intersections_in_points(K()), 0u);
}

TEST(Config, ArrangementStatistics) {
    auto st = incidence_stats(K());
    using M = std::map<std::size_t, std::size_t>;
    EXPECT_EQ(st.t, (M{{4, 960}, {6, 480}, {15, 60}}));
    EXPECT_EQ(st.t1, (M{{2, 360}, {3, 320}, {6, 30}}));
    EXPECT_EQ(st.plane_pairs, 60u * 59 / 2);
}

TEST(Config, MaxCollinearIsSix) {
    auto sets = collinear_structure(K().points);
    auto h = collinearity_histogram(sets);
    EXPECT_EQ(h.rbegin()->first, 6u);
    EXPECT_EQ(h.rbegin()->second, 30u);
}

TEST(Config, IndexOfRoundTrip) {
    for (std::size_t i = 0; i < 60; ++i) EXPECT_EQ(K().index_of(K().points[i]), i);
    for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(K().index_of(K().lines[i]), i);
    EXPECT_EQ(K().index_of(make_point(1, 2, 3, 5)), KleinConfiguration::npos);
}

TEST(Config, LabelsAreOneBased) {
    EXPECT_EQ(point_label(0), "P1");
    EXPECT_EQ(line_label(29), "l30");
    EXPECT_EQ(quadric_label(9), "Q10");
}
