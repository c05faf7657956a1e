#include "klein/group.hpp"
#include "klein/klein_config.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace klein;

TEST(Group, HeisenbergOrder32) {
    auto h = generate_group(heisenberg_generators().list(), GroupMode::linear);
    EXPECT_EQ(h.order(), 32u);
}

TEST(Group, GeneratorsAnticommute) {
    auto g = heisenberg_generators();
    EXPECT_EQ(g.s1 * g.t1, -(g.t1 * g.s1));
    EXPECT_EQ(g.s2 * g.t2, -(g.t2 * g.s2));
    EXPECT_EQ(g.s1 * g.t2, g.t2 * g.s1);
}

TEST(Group, CenterEqualsCommutatorEqualsPlusMinusOne) {
    auto h = generate_group(heisenberg_generators().list(), GroupMode::linear);
    auto z = center(h);
    auto d = commutator_subgroup(h);
    auto one = GroupElement::identity();
    ASSERT_EQ(z.size(), 2u);
    ASSERT_EQ(d.order(), 2u);
    EXPECT_TRUE(d.contains(one));
    EXPECT_TRUE(d.contains(-one));
    EXPECT_NE(std::find(z.begin(), z.end(), -one), z.end());
}

TEST(Group, ProjectiveClosureHas80Elements) {
    auto g = generate_group(g80_generators(), GroupMode::projective);
    EXPECT_EQ(g.order(), 80u);
}

TEST(Group, LinearClosureExceedsSmallCap) {
    EXPECT_THROW(generate_group(g80_generators(), GroupMode::linear, 50), GroupTooLarge);
}

TEST(Group, ElementsPermuteThePoints) {
    auto k = build_klein();
    auto g = generate_group(g80_generators(), GroupMode::projective);
    for (const auto& e : g.elements) {
        auto perm = induced_permutation(e, k.points);
        ASSERT_TRUE(perm.has_value());
        std::set<std::size_t> img(perm->begin(), perm->end());
        EXPECT_EQ(img.size(), 60u);
    }
}

TEST(Group, QuadricsSplitIntoTwoOrbitsOfFive) {
    auto k = build_klein();
    auto g = generate_group(g80_generators(), GroupMode::projective);
    std::set<std::size_t> sizes_seen;
    std::vector<MultiPoly> qs;
    for (const auto& q : k.quadrics) qs.push_back(q.normalized());
    std::vector<bool> done(qs.size(), false);
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (done[i]) continue;
        auto o = orbit(g, qs[i]);
        for (const auto& f : o) {
            auto it = std::find(qs.begin(), qs.end(), f);
            ASSERT_NE(it, qs.end()) << "orbit leaves the ten quadrics";
            done[std::size_t(it - qs.begin())] = true;
        }
        sizes.push_back(o.size());
    }
    EXPECT_EQ(sizes, (std::vector<std::size_t>{5, 5}));
}

TEST(Group, ActionIsARightAction) {
    // (gh).f = f(ghX) = (h acting after g on coordinates): check (gh).f == g.(h.f)
    auto gen = g80_generators();
    auto f = parse_poly("x^2*y + (1+i)*z*w^2 - x*y*z", ctx::xyzw());
    for (const auto& a : gen)
        for (const auto& b : gen) EXPECT_EQ((a * b).act_on(f), b.act_on(a.act_on(f)));
}

TEST(Group, CyclicOrbitOfT) {
    auto t = klein_t();
    auto orb = cyclic_orbit(t, parse_poly("x", ctx::xyzw()));
    EXPECT_GE(orb.size(), 2u);
}

TEST(Group, SingularMatrixRejected) {
    ExactMatrix m(4, 4);
    EXPECT_THROW(GroupElement{m}, SingularMatrix);
}
