#include "klein/interpolation.hpp"
#include "klein/projection.hpp"
#include "klein/subconfigs.hpp"

#include <gtest/gtest.h>

using namespace klein;

namespace {
const KleinConfiguration& K() {
    static const KleinConfiguration k = build_klein();
    return k;
}
const MultiPoly& C6() {
    static const MultiPoly c = c6_from_cone(cone_f());
    return c;
}
}  // namespace

TEST(Projection, CenterIsRejected) {
    auto c = make_point(1, 2, 3, 4);
    EXPECT_THROW(project(c, c), DegenerateGeometry);
    EXPECT_THROW(project(c, c, Chart::hyperplane_x), DegenerateGeometry);
}

TEST(Projection, CollinearStaysCollinear) {
    PointSampler sp(8, &K());
    auto c = sp.next();
    for (std::size_t l = 0; l < 30; ++l)
        for (Chart ch : {Chart::difference, Chart::hyperplane_x}) {
            auto img = project(c, K().lines[l], ch);
            for (auto p : K().line_points[l]) EXPECT_TRUE(img.contains(project(c, K().points[p], ch)));
        }
}

TEST(Projection, TabulatedLineImagesMatch) {
    for (std::size_t l = 0; l < 30; ++l)
        EXPECT_TRUE(proportional(project_symbolic(K().lines[l]), tabulated_line_image(l))) << "l" << l + 1;
}

TEST(Projection, ChartsDifferByAPlaneCollineation) {
    PointSampler sp(21, &K());
    auto c = sp.next();
    auto z = K().points[40];
    auto d = project(c, z, Chart::difference);
    auto h = project(c, z, Chart::hyperplane_x);
    // pushing the hyperplane curve to the difference chart keeps containment
    auto ch = curve_at(C6(), c);
    auto cd = curve_at(to_difference_chart(C6()), c);
    EXPECT_TRUE(evaluate(ch, h).is_zero());
    EXPECT_TRUE(evaluate(cd, d).is_zero());
}

TEST(C6, CertificateAndDisplayedDiscrepancy) {
    auto cert = certify_c6(K(), cone_f());
    EXPECT_TRUE(cert.ok());
    ASSERT_TRUE(cert.pullback_factor.has_value());
    EXPECT_EQ(*cert.pullback_factor, parse_poly("a^5", ctx::xyzw_abcd()));
    // the printed polynomial differs from the cone's image in one summand only
    EXPECT_FALSE(cert.displayed_exact());
    EXPECT_EQ(cert.displayed_minus_derived,
              parse_poly("20*s^3*t^2*u*a^2*c*d^2 - 20*s^3*t^2*u*b^2*c^3", ctx::stu_abcd()));
    EXPECT_FALSE(cert.displayed_failing_hyperplane.empty());
}

TEST(C6, SignCorrectedDisplayEqualsDerived) {
    auto shown = c6_curve();
    auto fix = parse_poly("20*c*(a^2*d^2 - b^2*c^2)*s^3*t^2*u", ctx::stu_abcd());
    EXPECT_EQ(shown - fix, C6());
}

TEST(Covers, ExactlySixMatchingTheTable) {
    auto found = disjoint_covers(K().lines, K().points, 10);
    auto tab = tabulated_covers();
    ASSERT_EQ(found.size(), 6u);
    for (const auto& t : tab) {
        bool hit = false;
        for (const auto& f : found) hit = hit || f.lines == t.lines;
        EXPECT_TRUE(hit) << t.label;
    }
}

TEST(Covers, MembershipLabelsAreConsistent) {
    auto tab = tabulated_covers();
    for (std::size_t l = 0; l < 30; ++l) {
        std::string fam;
        for (const auto& t : tab)
            if (std::find(t.lines.begin(), t.lines.end(), l) != t.lines.end()) fam += t.label;
        EXPECT_EQ(fam, cover_letters(l));
    }
}

TEST(Covers, HalfGridEquidistribution) {
    for (const auto& t : tabulated_covers())
        for (auto l : t.lines) EXPECT_EQ(K().line_points[l].size(), 6u);
}

TEST(Geproci, Z60AllCoversThreeSeeds) {
    auto tab = tabulated_covers();
    for (std::size_t i = 0; i < tab.size(); ++i) {
        auto ci = verify_geproci(K().points, select_lines(K(), tab[i].lines), family_curve(C6()),
                                 Chart::hyperplane_x, 100 + i, &K());
        ASSERT_EQ(ci.size(), 3u);
        for (const auto& c : ci) {
            EXPECT_TRUE(c.ok()) << tab[i].label;
            EXPECT_EQ(c.d1, 6u);
            EXPECT_EQ(c.d2, 10u);
        }
    }
}

TEST(Geproci, CertificatesRecheckFromStoredData) {
    auto tab = tabulated_covers();
    auto ci = verify_geproci(K().points, select_lines(K(), tab[2].lines), family_curve(C6()), Chart::hyperplane_x, 5,
                             &K());
    for (const auto& c : ci) {
        auto again = certify_ci(curve_at(C6(), c.center), c.lines, c.points);
        EXPECT_EQ(again.ok(), c.ok());
        for (const auto& p : c.points) {
            EXPECT_TRUE(evaluate(c.curve, p).is_zero());
            MultiPoly prod(ctx::stu(), GaussianRational(1));
            GaussianRational v(1);
            for (const auto& l : c.lines) v *= l.coeffs.dot(p);
            EXPECT_TRUE(v.is_zero());
        }
    }
}

TEST(Geproci, WrongCurveFails) {
    auto tab = tabulated_covers();
    auto ci = verify_geproci(K().points, select_lines(K(), tab[0].lines), family_curve(c6_curve()),
                             Chart::hyperplane_x, 5, &K(), 1);
    ASSERT_EQ(ci.size(), 1u);
    EXPECT_FALSE(ci[0].ok());
}

TEST(Geproci, StarOf45Nodes) {
    auto tab = tabulated_covers();
    auto ci = verify_geproci(K().points, select_lines(K(), tab[0].lines), family_curve(C6()), Chart::hyperplane_x, 9,
                             &K());
    for (const auto& c : ci) {
        auto s = star_check(c.lines, c.curve);
        EXPECT_EQ(s.nodes, 45u);
        EXPECT_TRUE(s.ok());
    }
}

TEST(Grid, Z60IsNotAGrid) { EXPECT_FALSE(grid_check(K().points).has_value()); }

TEST(Grid, SmallGridIsFound) {
    // 2 x 3 grid on a smooth quadric xw = yz: lines of both rulings
    std::vector<ProjPoint> pts;
    for (long s : {1, 2})
        for (long t : {1, 3, 5}) pts.push_back(make_point(1, s, t, s * t));
    auto g = grid_check(pts);
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(g->a * g->b, 6u);
}

TEST(Grid, RulingCurveCertifiesBothTypes) {
    std::vector<ProjPoint> pts;
    for (long s : {1, 2, 4})
        for (long t : {1, 3, 5, 7}) pts.push_back(make_point(1, s, t, s * t));
    auto g = grid_check(pts);
    ASSERT_TRUE(g.has_value());
    for (int flip = 0; flip < 2; ++flip) {
        const auto& cover = flip ? g->ruling2 : g->ruling1;
        const auto& other = flip ? g->ruling1 : g->ruling2;
        auto ci = verify_geproci(pts, cover, ruling_curve(other, Chart::hyperplane_x), Chart::hyperplane_x, 7,
                                 nullptr, 2);
        ASSERT_EQ(ci.size(), 2u);
        for (const auto& c : ci) {
            EXPECT_TRUE(c.ok());
            EXPECT_EQ(c.d1, other.size());
            EXPECT_EQ(c.d2, cover.size());
        }
    }
}

TEST(Chains, IndexOrderAndPairedOrder) {
    auto tab = tabulated_covers();
    auto order = paired_removal_order(tab[0], 'D', 'F');
    ASSERT_EQ(order.size(), 10u);
    for (std::size_t s = 0; s <= 7; ++s) {
        auto st = removal_chain(K(), tab[0], s, 3 + s, 1, order);
        EXPECT_EQ(st.points.size(), 60 - 6 * s);
        if (s <= 6) {
            EXPECT_FALSE(st.grid.has_value()) << s;
            ASSERT_EQ(st.ci.size(), 1u);
            EXPECT_TRUE(st.ci[0].ok()) << s;
            EXPECT_EQ(st.ci[0].d2, 10 - s);
        } else {
            EXPECT_TRUE(st.grid.has_value());
        }
        if (s == 5) {
            auto five = st.lines_with[5];
            ASSERT_EQ(five.size(), 2u);
            for (auto l : five) EXPECT_EQ(cover_letters(l), "DF");
        }
    }
    // index order also leaves two 5-point lines at step 5, from another pair of families
    auto idx = removal_chain(K(), tab[0], 5, 1, 1);
    ASSERT_EQ(idx.lines_with[5].size(), 2u);
    EXPECT_EQ(cover_letters(idx.lines_with[5][0]), cover_letters(idx.lines_with[5][1]));
}

TEST(Chains, BadOrderRejected) {
    auto tab = tabulated_covers();
    EXPECT_THROW(removal_chain(K(), tab[0], 8, 1), std::invalid_argument);
    EXPECT_THROW(removal_chain(K(), tab[0], 2, 1, 1, {0, 1, 2}), std::invalid_argument);
}
