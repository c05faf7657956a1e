#include "klein/group.hpp"
#include "klein/interpolation.hpp"
#include "klein/projection.hpp"

#include <gtest/gtest.h>

using namespace klein;

namespace {
const KleinConfiguration& K() {
    static const KleinConfiguration k = build_klein();
    return k;
}
const LinearSystem& sextics() {
    static const LinearSystem s = forms_through(K().points, 6);
    return s;
}
std::vector<ProjPoint> W() {
    std::vector<ProjPoint> w;
    for (std::size_t i = 0; i < 60; ++i)
        if (i < 24 || i > 27) w.push_back(K().points[i]);
    return w;
}
}  // namespace

TEST(Ideal, SexticsThroughZ60HaveDimension24) { EXPECT_EQ(sextics().dimension(), 24u); }

TEST(Ideal, NoQuinticsThroughZ60) { EXPECT_EQ(forms_through(K().points, 5).dimension(), 0u); }

TEST(Ideal, DisplayedGeneratorsAreABasis) {
    auto gens = ideal_generators();
    ASSERT_EQ(gens.size(), 24u);
    EXPECT_EQ(span_dimension(gens), 24u);
    for (const auto& g : gens) {
        EXPECT_TRUE(g.is_homogeneous());
        EXPECT_EQ(g.total_degree(), 6);
        EXPECT_TRUE(in_span(sextics().basis, g));
    }
}

TEST(Ideal, DiminishedSet) {
    auto w = W();
    EXPECT_EQ(w.size(), 56u);
    EXPECT_EQ(forms_through(w, 5).dimension(), 0u);
    auto s6 = forms_through(w, 6);
    EXPECT_EQ(s6.dimension(), 28u);
    for (const auto& g : extra_generators()) {
        EXPECT_TRUE(in_span(s6.basis, g));
        EXPECT_FALSE(in_span(sextics().basis, g));
    }
}

TEST(Ideal, DegreeSixSystemIsGroupStable) {
    auto g = generate_group(g80_generators(), GroupMode::projective);
    EXPECT_TRUE(group_stable(ideal_generators(), g.generators));
}

TEST(Ideal, MonotoneAlongRemovalChain) {
    // removing points can only enlarge the system
    auto tab = tabulated_covers();
    std::vector<char> gone(60, 0);
    std::size_t prev = sextics().dimension();
    for (std::size_t s = 0; s < 4; ++s) {
        for (auto p : K().line_points[tab[0].lines[s]]) gone[p] = 1;
        std::vector<ProjPoint> pts;
        for (std::size_t p = 0; p < 60; ++p)
            if (!gone[p]) pts.push_back(K().points[p]);
        std::size_t d = forms_through(pts, 6).dimension();
        EXPECT_GE(d, prev);
        prev = d;
    }
}

TEST(FatPoints, ConditionCounts) {
    EXPECT_EQ(fat_point_condition_count(1), 1u);
    EXPECT_EQ(fat_point_condition_count(2), 4u);
    EXPECT_EQ(fat_point_condition_count(4), 20u);
    EXPECT_EQ(fat_point_condition_count(6), 56u);
}

TEST(FatPoints, MultiplicityOfProducts) {
    const auto& c = ctx::xyzw();
    auto f = parse_poly("(x - y)^3*(x + w) + (x - y)^4", c);
    EXPECT_EQ(multiplicity_at(f, make_point(1, 1, 0, 0)), 3u);
    EXPECT_EQ(multiplicity_at(f, make_point(1, 0, 0, 0)), 0u);
}

TEST(Cone, Identities) {
    auto cert = certify_cone(cone_f(), K().points);
    EXPECT_TRUE(cert.points_failing.empty());
    EXPECT_EQ(cert.points_checked, 60u);
    EXPECT_EQ(cert.vertex_partials_checked, 56u);
    EXPECT_TRUE(cert.vertex_partials_failing.empty());
    EXPECT_TRUE(cert.bihomogeneous_6_6);
    EXPECT_TRUE(cert.swap_symmetric);
    EXPECT_TRUE(cert.in_generator_span);
    EXPECT_EQ(cert.coefficients.size(), 24u);
}

TEST(Cone, SpecializedConeHasMultiplicitySixAtVertex) {
    PointSampler sp(42, &K());
    auto v = sp.next();
    auto f = cone_at(cone_f(), v);
    EXPECT_EQ(multiplicity_at(f, v), 6u);
    for (const auto& p : K().points) EXPECT_TRUE(evaluate(f, p).is_zero());
}

TEST(Cone, UnexpectedAtSeeds) {
    auto rep = verify_unexpected(K().points, 6, {6}, 77, &K());
    EXPECT_EQ(rep.base_dimension, 24u);
    EXPECT_EQ(rep.condition_count, 56u);
    EXPECT_EQ(rep.expected, 0u);
    EXPECT_EQ(rep.actual, 1u);
    EXPECT_TRUE(rep.seeds_agree);
    EXPECT_TRUE(rep.unexpected());
}

TEST(Cone, GenericUnexpectedness) {
    auto cert = certify_cone(cone_f(), K().points);
    auto u = verify_cone_unexpected(3, K(), cert.coefficients);
    EXPECT_TRUE(u.ok());
    EXPECT_EQ(u.symbolic.rank, 23u);
}

TEST(Mult422, SymbolicRankAndSamples) {
    auto cert = verify_mult_sequence_422(1, K());
    EXPECT_EQ(cert.symbolic.rows, 20u);
    EXPECT_EQ(cert.symbolic.cols, 24u);
    EXPECT_EQ(cert.symbolic.rank, 15u);
    EXPECT_TRUE(cert.symbolic.ok());
    ASSERT_EQ(cert.samples.size(), 3u);
    for (const auto& s : cert.samples) {
        EXPECT_EQ(s.rank, 23u);
        EXPECT_EQ(s.kernel_dim, 1u);
    }
    EXPECT_TRUE(cert.ok());
}

TEST(Semicontinuity, SpecializationRankNeverExceedsGenericRank) {
    auto M = fatpoint_conditions_symbolic(ideal_generators(), 4);
    std::size_t generic = rank(M);
    PointSampler sp(99, &K());
    for (int s = 0; s < 4; ++s) EXPECT_LE(rank(specialize(M, sp.next().coords())), generic);
    // special position: a point of the configuration drops the rank
    EXPECT_LT(rank(specialize(M, K().points[0].coords())), generic);
}

TEST(Sampling, DeterministicAndNonDegenerate) {
    PointSampler a(5, &K()), b(5, &K());
    for (int i = 0; i < 10; ++i) {
        auto p = a.next();
        EXPECT_EQ(p, b.next());
        EXPECT_FALSE(PointSampler(0, &K()).degenerate(p));
    }
    EXPECT_TRUE(a.degenerate(K().points[3]));
    EXPECT_NE(suite_seed(1, 0), suite_seed(1, 1));
}
