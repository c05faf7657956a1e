#include "klein/subconfigs.hpp"

#include <gtest/gtest.h>

using namespace klein;

namespace {
const KleinConfiguration& K() {
    static const KleinConfiguration k = build_klein();
    return k;
}
}  // namespace

TEST(Z24, Structure) {
    auto s = z24_structure(K());
    EXPECT_TRUE(s.coordinates_match);
    EXPECT_TRUE(s.matches_display);
    EXPECT_TRUE(s.label_mismatches.empty());
    EXPECT_TRUE(s.configuration_24_3_18_4());
    EXPECT_EQ(s.max_collinear, 4u);
    EXPECT_EQ(s.max_on_l30, 4u);
    EXPECT_EQ(s.labels.front(), "AB");
    EXPECT_TRUE(s.ok());
}

TEST(Z24, LetterSublistsAreSkewCovers) {
    auto s = z24_structure(K());
    ASSERT_EQ(s.letter_covers.size(), 6u);
    EXPECT_EQ(s.letter_covers.at('A'), (std::vector<std::size_t>{0, 11, 14, 19, 24, 29}));
    EXPECT_TRUE(s.letter_covers_ok);
}

TEST(Z24, NotReachableByRemovalChain) {
    // every chain step keeps whole lines of a cover: 6 points on a line, Z24 has at most 4
    auto s = z24_structure(K());
    EXPECT_LT(s.max_on_l30, 6u);
}

TEST(Z24, C4Property) {
    auto c = verify_c4(K(), 4);
    EXPECT_EQ(c.quartics_through, 12u);
    EXPECT_EQ(c.unexpected.condition_count, 20u);
    EXPECT_EQ(c.unexpected.expected, 0u);
    EXPECT_GE(c.unexpected.actual, 1u);
    EXPECT_TRUE(c.ok());
    for (const auto& ci : c.ci) {
        EXPECT_EQ(ci.d1, 4u);
        EXPECT_EQ(ci.d2, 6u);
    }
}

TEST(Z24, ResidualGrid) {
    auto g = residual_grid(K());
    EXPECT_EQ(g.a, 6u);
    EXPECT_EQ(g.b, 6u);
    EXPECT_TRUE(pairwise_skew(g.ruling1));
    EXPECT_TRUE(pairwise_skew(g.ruling2));
}

TEST(Real, CollinearityCertificate) {
    auto c = real_premise(K());
    EXPECT_EQ(c.plane_points.size(), 15u);
    EXPECT_EQ(c.plane_points, (std::vector<std::size_t>{9, 10, 11, 12, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27}));
    EXPECT_TRUE(c.failing_triples.empty());
    EXPECT_TRUE(c.failing_quadruples.empty());
    EXPECT_EQ(c.pairs, 66u);
    EXPECT_TRUE(c.pair_coverage);
    EXPECT_TRUE(c.ok());
}

TEST(Real, NonCollinearTripleDetected) {
    EXPECT_FALSE(collinear({K().points[8], K().points[16], K().points[17]}));
    EXPECT_TRUE(collinear({K().points[8], K().points[16], K().points[22]}));
}

TEST(Subsets, Specs) {
    EXPECT_EQ(z24_subset().indices.size(), 24u);
    EXPECT_EQ(planar_f12_subset().name, "planar_F12");
    EXPECT_EQ(planar_f12_subset().points(K()).size(), 12u);
}
