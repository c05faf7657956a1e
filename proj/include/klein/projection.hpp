#ifndef KLEIN_PROJECTION_HPP
#define KLEIN_PROJECTION_HPP

#include "geometry.hpp"
#include "interpolation.hpp"
#include "klein_config.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "sampling.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace klein {

namespace data {
// Which of the six ten-line covers A..F contains each line.
inline constexpr std::array<const char*, 30> kCoverMembership{
    "AB", "EF", "CD", "CE", "DF", "CD", "EF", "DF", "CE", "CF", "BD", "AE", "AD", "BE", "AE",
    "BD", "BE", "AD", "DE", "AC", "BF", "BC", "AF", "BF", "AC", "AF", "BC", "DE", "CF", "AB",
};

// Images of the 30 lines under projection from (a:b:c:d), in s,t,u.
inline constexpr std::array<const char*, 30> kProjectedLines{
    "s",
    "(c^2-cd)s+(ac-ad-bc+bd)t+(-ab+b^2)u",
    "(c^2-cd)s+(ac-ad+bc-bd)t+(-ab-b^2)u",
    "(i*cd+c^2)s+(i*(ad+bc)+ac-bd)t+(i*ab-b^2)u",
    "(i*cd+c^2)s+(i*(ad-bc)+ac+bd)t+(i*ab+b^2)u",
    "(c^2+cd)s+(ac+ad-bc-bd)t+(ab-b^2)u",
    "(c^2+cd)s+(ac+ad+bc+bd)t+(ab+b^2)u",
    "(-i*cd+c^2)s+(-i*(ad-bc)+ac+bd)t+(-i*ab+b^2)u",
    "(-i*cd+c^2)s+(-i*(ad+bc)+ac-bd)t+(-i*ab-b^2)u",
    "cs+at",
    "(bc-cd)s+(-ad+bc)t+(-ab+bc)u",
    "(bc-cd)s+(-ad-bc)t+(-ab-bc)u",
    "(i*cd+bc)s+i*(ad-bc)t+(i*ab-bc)u",
    "(i*cd+bc)s+i*(ad+bc)t+(i*ab+bc)u",
    "(bc+cd)s+(ad+bc)t+(ab-bc)u",
    "(bc+cd)s+(ad-bc)t+(ab+bc)u",
    "(-i*cd+bc)s-i*(ad+bc)t+(-i*ab+bc)u",
    "(-i*cd+bc)s-i*(ad-bc)t+(-i*ab-bc)u",
    "cds+adt+abu",
    "(bc-c^2)s+(-ac+bd)t+(b^2-bc)u",
    "(bc-c^2)s+(-ac-bd)t+(-b^2+bc)u",
    "(i*c^2+bc)s+i*(ac-bd)t+(-i*b^2+bc)u",
    "(i*c^2+bc)s+i*(ac+bd)t+(i*b^2-bc)u",
    "(bc+c^2)s+(ac+bd)t+(b^2+bc)u",
    "(bc+c^2)s+(ac-bd)t+(-b^2-bc)u",
    "(-i*c^2+bc)s-i*(ac+bd)t+(-i*b^2-bc)u",
    "(-i*c^2+bc)s-i*(ac-bd)t+(i*b^2+bc)u",
    "t",
    "dt+bu",
    "u",
};

// The sextic through the projected points, coefficients in a,b,c,d.
inline constexpr std::array<const char*, 12> kC6Summands{
    "b(a^4-b^4)tu(t^4-u^4)",
    "c(a^4-c^4)su(u^4-s^4)",
    "d(a^4-d^4)st(s^4-t^4)",
    "5b(d^4-c^4)s^4tu",
    "5c(b^4-d^4)st^4u",
    "5d(c^4-b^4)stu^4",
    "10b(a^2d^2-b^2c^2)s^2t^3u",
    "10c(a^2d^2-b^2c^2)s^3t^2u",
    "10d(a^2c^2-b^2d^2)s^3tu^2",
    "10b(b^2d^2-a^2c^2)s^2tu^3",
    "10c(a^2b^2-c^2d^2)st^2u^3",
    "10d(c^2d^2-a^2b^2)st^3u^2",
};
}  // namespace data

// ---------------------------------------------------------------------------
// Projection from a center (a:b:c:d) to the plane, in two coordinate charts:
//   difference:   (x:y:z:w) -> (ay-bx : bz-cy : cw-dz)
//   hyperplane_x: (x:y:z:w) -> (ay-bx : az-cx : aw-dx), i.e. the point where
//                 the line through the center meets the plane x = 0.
// They differ by a projective change of plane coordinates depending on the center.

enum class Chart { difference, hyperplane_x };

inline const char* chart_name(Chart c) { return c == Chart::difference ? "difference" : "hyperplane_x"; }

/// The three forms in {x,y,z,w,a,b,c,d}.
inline std::array<MultiPoly, 3> projection_forms(Chart chart = Chart::difference) {
    const auto& c = ctx::xyzw_abcd();
    if (chart == Chart::hyperplane_x) return {parse_poly("ay-bx", c), parse_poly("az-cx", c), parse_poly("aw-dx", c)};
    return {parse_poly("ay-bx", c), parse_poly("bz-cy", c), parse_poly("cw-dz", c)};
}

inline std::array<GaussianRational, 3> projection_coords(const ProjPoint& center, const ProjPoint& p,
                                                         Chart chart = Chart::difference) {
    const auto& q = center.coords();
    if (chart == Chart::hyperplane_x)
        return {q[0] * p[1] - q[1] * p[0], q[0] * p[2] - q[2] * p[0], q[0] * p[3] - q[3] * p[0]};
    return {q[0] * p[1] - q[1] * p[0], q[1] * p[2] - q[2] * p[1], q[2] * p[3] - q[3] * p[2]};
}

inline PlanePoint project(const ProjPoint& center, const ProjPoint& p, Chart chart = Chart::difference) {
    auto c = projection_coords(center, p, chart);
    if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero())
        throw DegenerateGeometry("projection is undefined at " + p.str() + " (base point of the map)");
    return PlanePoint(c);
}

inline PlaneLine project(const ProjPoint& center, const ProjLine& l, Chart chart = Chart::difference) {
    if (l.contains(center)) throw DegenerateGeometry("line passes through the projection center");
    const auto& sp = l.spanning_points();
    return line_through(project(center, sp[0], chart), project(center, sp[1], chart));
}

/// Image of a point under projection from the symbolic center (a:b:c:d).
inline std::array<MultiPoly, 3> project_symbolic(const ProjPoint& p, Chart chart = Chart::difference) {
    const auto& c = ctx::abcd();
    auto var = [&](std::size_t k) { return MultiPoly::monomial(c, Monomial::variable(k), GaussianRational(1)); };
    if (chart == Chart::hyperplane_x)
        return {var(0) * p[1] - var(1) * p[0], var(0) * p[2] - var(2) * p[0], var(0) * p[3] - var(3) * p[0]};
    return {var(0) * p[1] - var(1) * p[0], var(1) * p[2] - var(2) * p[1], var(2) * p[3] - var(3) * p[2]};
}

inline std::array<MultiPoly, 3> cross(const std::array<MultiPoly, 3>& p, const std::array<MultiPoly, 3>& q) {
    return {p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
}

/// Coefficients (of s, t, u) of the image of a line under the symbolic projection.
inline std::array<MultiPoly, 3> project_symbolic(const ProjLine& l, Chart chart = Chart::difference) {
    const auto& sp = l.spanning_points();
    return cross(project_symbolic(sp[0], chart), project_symbolic(sp[1], chart));
}

/// Proportional over Q(i)(a,b,c,d): both nonzero and all 2x2 cross minors vanish.
inline bool proportional(const std::array<MultiPoly, 3>& p, const std::array<MultiPoly, 3>& q) {
    auto c = cross(p, q);
    bool pz = p[0].is_zero() && p[1].is_zero() && p[2].is_zero();
    bool qz = q[0].is_zero() && q[1].is_zero() && q[2].is_zero();
    return !pz && !qz && c[0].is_zero() && c[1].is_zero() && c[2].is_zero();
}

/// Coefficients of s, t, u in a form linear in s,t,u with coefficients in a,b,c,d.
inline std::array<MultiPoly, 3> linear_coefficients(const MultiPoly& f) {
    if (!(f.context() == ctx::stu_abcd())) throw ContextMismatch("expected a form in {s,t,u,a,b,c,d}");
    std::array<std::vector<Term>, 3> parts;
    for (const auto& t : f.terms()) {
        std::size_t which = 3;
        unsigned deg = 0;
        for (std::size_t v = 0; v < 3; ++v)
            if (unsigned e = t.mono.exponent(v)) {
                which = v;
                deg += e;
            }
        if (deg != 1) throw std::invalid_argument("not linear in s,t,u: " + f.str());
        std::array<unsigned, 4> e{};
        for (std::size_t v = 0; v < 4; ++v) e[v] = t.mono.exponent(v + 3);
        parts[which].push_back({Monomial::from_exponents(e), t.coeff});
    }
    return {MultiPoly::from_terms(ctx::abcd(), parts[0]), MultiPoly::from_terms(ctx::abcd(), parts[1]),
            MultiPoly::from_terms(ctx::abcd(), parts[2])};
}

inline std::array<MultiPoly, 3> tabulated_line_image(std::size_t k) {
    return linear_coefficients(parse_poly(data::kProjectedLines.at(k), ctx::stu_abcd()));
}

/// C6 as displayed, a polynomial in {s,t,u,a,b,c,d}. Its coordinates are those of
/// the hyperplane_x chart.
inline MultiPoly c6_curve() {
    MultiPoly f(ctx::stu_abcd());
    for (const char* s : data::kC6Summands) f += parse_poly(s, ctx::stu_abcd());
    return f;
}

/// Rewrites a curve family from hyperplane_x coordinates to difference
/// coordinates: (s', t', u') = (bc s, c(at + cs), abu + adt + cds), up to the
/// common factor bc.
inline MultiPoly to_difference_chart(const MultiPoly& family) {
    const auto& c = ctx::stu_abcd();
    Assignment as{{"s", parse_poly("bcs", c)}, {"t", parse_poly("c(at+cs)", c)}, {"u", parse_poly("abu+adt+cds", c)}};
    return substitute(family, as, c);
}

/// A curve family in {s,t,u,a,b,c,d} at a concrete center.
inline MultiPoly curve_at(const MultiPoly& family, const ProjPoint& center) {
    return evaluate_block(family, 3, center.coords(), ctx::stu());
}

/// The family evaluated at the symbolic image of p: a polynomial in a,b,c,d.
inline MultiPoly curve_at_symbolic_image(const MultiPoly& family, const ProjPoint& p, Chart chart) {
    auto img = project_symbolic(p, chart);
    Assignment as{{"s", img[0]}, {"t", img[1]}, {"u", img[2]}};
    return substitute(family, as, ctx::abcd());
}

/// Substitutes the projection forms into a curve family: a polynomial in {x,y,z,w,a,b,c,d}.
inline MultiPoly pull_back(const MultiPoly& family, Chart chart) {
    auto f = projection_forms(chart);
    Assignment as{{"s", f[0]}, {"t", f[1]}, {"u", f[2]}};
    return substitute(family, as, ctx::xyzw_abcd());
}

/// The sextic cut on the plane x = 0 by the cone F, divided by a: the image of
/// the cone in hyperplane_x coordinates.
inline MultiPoly c6_from_cone(const MultiPoly& F) {
    const GaussianRational zero(0);
    MultiPoly section = evaluate_block(F, 0, std::span<const GaussianRational>(&zero, 1), ctx::stu_abcd());
    return divide_exact(section, MultiPoly::variable(ctx::stu_abcd(), "a"));
}

struct C6Certificate {
    bool homogeneous_sextic = false;             // derived curve has degree 6 in s,t,u
    std::vector<std::size_t> points_failing;     // derived curve against hyperplane_x images
    std::vector<std::size_t> transported_failing;  // derived curve, moved to difference coordinates
    std::vector<std::size_t> lines_not_matching;   // computed line image not proportional to the table
    std::optional<MultiPoly> pullback_factor;      // h with C(pi(X)) = h * F, hyperplane_x chart
    // The displayed polynomial, checked as given.
    MultiPoly displayed_minus_derived;             // zero iff the display is exact
    std::vector<std::size_t> displayed_failing_hyperplane;
    std::vector<std::size_t> displayed_failing_difference;

    bool ok() const {
        return homogeneous_sextic && points_failing.empty() && transported_failing.empty() &&
               lines_not_matching.empty() && pullback_factor.has_value();
    }
    bool displayed_exact() const { return displayed_minus_derived.is_zero(); }
};

inline C6Certificate certify_c6(const KleinConfiguration& k, const MultiPoly& F) {
    C6Certificate cert;
    MultiPoly shown = c6_curve();
    MultiPoly c6 = c6_from_cone(F);
    MultiPoly c6d = to_difference_chart(c6);
    cert.displayed_minus_derived = shown - c6;
    cert.homogeneous_sextic = !c6.is_zero();
    for (const auto& t : c6.terms())
        cert.homogeneous_sextic = cert.homogeneous_sextic &&
                                  t.mono.exponent(0) + t.mono.exponent(1) + t.mono.exponent(2) == 6;
    for (std::size_t i = 0; i < k.points.size(); ++i) {
        if (!curve_at_symbolic_image(c6, k.points[i], Chart::hyperplane_x).is_zero()) cert.points_failing.push_back(i);
        if (!curve_at_symbolic_image(c6d, k.points[i], Chart::difference).is_zero())
            cert.transported_failing.push_back(i);
        if (!curve_at_symbolic_image(shown, k.points[i], Chart::hyperplane_x).is_zero())
            cert.displayed_failing_hyperplane.push_back(i);
        if (!curve_at_symbolic_image(shown, k.points[i], Chart::difference).is_zero())
            cert.displayed_failing_difference.push_back(i);
    }
    for (std::size_t l = 0; l < k.lines.size(); ++l)
        if (!proportional(project_symbolic(k.lines[l]), tabulated_line_image(l))) cert.lines_not_matching.push_back(l);
    if (auto h = try_divide_exact(pull_back(c6, Chart::hyperplane_x), F)) cert.pullback_factor = *std::move(h);
    return cert;
}

// ---------------------------------------------------------------------------
// Covers by pairwise disjoint lines.

struct LineCover {
    std::vector<std::size_t> lines;  // ascending indices into the line list searched
    std::string label;
    friend bool operator==(const LineCover& a, const LineCover& b) { return a.lines == b.lines; }
};

namespace detail {

// Enumerates sets of `size` pairwise skew lines whose point sets partition
// {0..npoints-1}. Branches on the lowest uncovered point, so each set is visited
// once; lines without points are appended afterwards in index order. The
// visitor returns true to stop.
inline void enumerate_skew_covers(const std::vector<ProjLine>& lines,
                                  const std::vector<std::vector<std::size_t>>& line_points, std::size_t npoints,
                                  std::size_t size, const std::function<bool(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::vector<std::size_t>> point_lines(npoints);
    std::vector<std::size_t> empty_lines;
    for (std::size_t l = 0; l < lines.size(); ++l) {
        if (line_points[l].empty()) empty_lines.push_back(l);
        for (auto p : line_points[l]) point_lines[p].push_back(l);
    }
    std::vector<char> covered(npoints, 0);
    std::vector<std::size_t> chosen;
    bool stop = false;
    auto compatible = [&](std::size_t l) {
        for (auto c : chosen)
            if (c == l || lines[c].meets(lines[l])) return false;
        return true;
    };
    std::function<void(std::size_t)> fill = [&](std::size_t from) {
        if (stop) return;
        if (chosen.size() == size) {
            auto sorted = chosen;
            std::sort(sorted.begin(), sorted.end());
            stop = visit(sorted);
            return;
        }
        for (std::size_t e = from; e < empty_lines.size() && !stop; ++e) {
            if (!compatible(empty_lines[e])) continue;
            chosen.push_back(empty_lines[e]);
            fill(e + 1);
            chosen.pop_back();
        }
    };
    std::function<void(std::size_t)> rec = [&](std::size_t first_uncovered) {
        if (stop) return;
        while (first_uncovered < npoints && covered[first_uncovered]) ++first_uncovered;
        if (first_uncovered == npoints) {
            fill(0);
            return;
        }
        if (chosen.size() == size) return;
        for (auto l : point_lines[first_uncovered]) {
            bool clash = false;
            for (auto p : line_points[l]) clash = clash || covered[p];
            if (clash || !compatible(l)) continue;
            chosen.push_back(l);
            for (auto p : line_points[l]) covered[p] = 1;
            rec(first_uncovered + 1);
            for (auto p : line_points[l]) covered[p] = 0;
            chosen.pop_back();
            if (stop) return;
        }
    };
    rec(0);
}

inline std::vector<std::vector<std::size_t>> incidences(const std::vector<ProjLine>& lines,
                                                        const std::vector<ProjPoint>& points) {
    std::vector<std::vector<std::size_t>> out(lines.size());
    for (std::size_t l = 0; l < lines.size(); ++l)
        for (std::size_t p = 0; p < points.size(); ++p)
            if (lines[l].contains(points[p])) out[l].push_back(p);
    return out;
}

}  // namespace detail

/// All sets of `size` pairwise disjoint lines covering the points, in
/// lexicographic order of their sorted index lists.
inline std::vector<LineCover> disjoint_covers(const std::vector<ProjLine>& lines, const std::vector<ProjPoint>& points,
                                              std::size_t size) {
    std::vector<LineCover> out;
    detail::enumerate_skew_covers(lines, detail::incidences(lines, points), points.size(), size,
                                  [&](const std::vector<std::size_t>& c) {
                                      out.push_back({c, ""});
                                      return false;
                                  });
    std::sort(out.begin(), out.end(), [](const LineCover& a, const LineCover& b) { return a.lines < b.lines; });
    return out;
}

/// The six tabulated covers A..F of the 30 lines (0-based line indices).
inline std::vector<LineCover> tabulated_covers() {
    std::vector<LineCover> out;
    for (char letter : std::string("ABCDEF")) {
        LineCover c{{}, std::string(1, letter)};
        for (std::size_t l = 0; l < data::kCoverMembership.size(); ++l)
            if (std::string_view(data::kCoverMembership[l]).find(letter) != std::string_view::npos) c.lines.push_back(l);
        out.push_back(std::move(c));
    }
    return out;
}

/// Letters of the tabulated covers containing a line.
inline std::string cover_letters(std::size_t line) { return data::kCoverMembership.at(line); }

// ---------------------------------------------------------------------------
// Complete-intersection certificates.

struct CIcertificate {
    std::uint64_t seed = 0;
    Chart chart = Chart::difference;
    ProjPoint center;
    std::size_t d1 = 0, d2 = 0;  // curve degree, number of lines
    MultiPoly curve;              // in s,t,u
    std::vector<PlaneLine> lines;
    std::vector<PlanePoint> points;
    bool distinct = false;           // the images are pairwise distinct
    bool on_curve = false;           // every image lies on the curve
    bool each_on_one_line = false;   // every image lies on exactly one projected line
    bool exact_restrictions = false; // on each line the curve cuts exactly its images, each simply
    bool transversal = false;        // gradient and line normal independent at every image
    bool bezout = false;             // d1 * d2 == number of points
    std::size_t resamples = 0;

    bool ok() const { return distinct && on_curve && each_on_one_line && exact_restrictions && transversal && bezout; }
};

namespace detail {

inline const VariableContext& binary_context() {
    static const VariableContext c({"l", "m"});
    return c;
}

// Two points spanning a plane line.
inline std::array<std::array<GaussianRational, 3>, 2> line_basis(const PlaneLine& L) {
    ExactMatrix m(1, 3);
    for (std::size_t k = 0; k < 3; ++k) m(0, k) = L.coeffs[k];
    auto rk = rank_kernel(m);
    return {{{rk.kernel[0][0], rk.kernel[0][1], rk.kernel[0][2]}, {rk.kernel[1][0], rk.kernel[1][1], rk.kernel[1][2]}}};
}

// The curve restricted to the line, as a binary form in l, m.
inline MultiPoly restrict_to_line(const MultiPoly& curve, const std::array<std::array<GaussianRational, 3>, 2>& ab) {
    const auto& bc = binary_context();
    MultiPoly l = MultiPoly::variable(bc, "l"), m = MultiPoly::variable(bc, "m");
    Assignment as;
    const char* names[3] = {"s", "t", "u"};
    for (std::size_t k = 0; k < 3; ++k) as.emplace(names[k], l * ab[0][k] + m * ab[1][k]);
    return substitute(curve, as, bc);
}

// A nonzero linear form in l, m vanishing exactly at the parameter of q.
inline MultiPoly point_factor(const PlanePoint& q, const std::array<std::array<GaussianRational, 3>, 2>& ab) {
    const auto& bc = binary_context();
    auto ca = klein::cross(q.coords(), ab[0]);
    auto cb = klein::cross(q.coords(), ab[1]);
    for (std::size_t k = 0; k < 3; ++k) {
        MultiPoly f = MultiPoly::variable(bc, "l") * ca[k] + MultiPoly::variable(bc, "m") * cb[k];
        if (!f.is_zero()) return f;
    }
    throw DegenerateGeometry("point factor vanishes identically");
}

}  // namespace detail

/// Checks that the curve and the union of the lines meet exactly in the points,
/// transversally. Assumes the points are the images in the plane of a set Z.
inline CIcertificate certify_ci(const MultiPoly& curve, const std::vector<PlaneLine>& lines,
                                const std::vector<PlanePoint>& points) {
    CIcertificate c;
    c.curve = curve;
    c.lines = lines;
    c.points = points;
    c.d1 = std::size_t(std::max(0, curve.total_degree()));
    c.d2 = lines.size();
    c.bezout = curve.is_homogeneous() && c.d1 * c.d2 == points.size();
    auto sorted = points;
    std::sort(sorted.begin(), sorted.end());
    c.distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    c.on_curve = true;
    c.each_on_one_line = true;
    c.transversal = true;
    std::vector<std::vector<std::size_t>> on_line(lines.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        c.on_curve = c.on_curve && evaluate(curve, points[p]).is_zero();
        std::size_t count = 0;
        for (std::size_t l = 0; l < lines.size(); ++l)
            if (lines[l].contains(points[p])) {
                ++count;
                on_line[l].push_back(p);
            }
        c.each_on_one_line = c.each_on_one_line && count == 1;
        std::array<GaussianRational, 3> grad;
        for (std::size_t v = 0; v < 3; ++v) grad[v] = evaluate(partial(curve, v), points[p]);
        for (std::size_t l = 0; l < lines.size(); ++l) {
            if (!lines[l].contains(points[p])) continue;
            auto cr = klein::cross(grad, lines[l].coeffs.coords());
            c.transversal = c.transversal && !(cr[0].is_zero() && cr[1].is_zero() && cr[2].is_zero());
        }
    }
    c.exact_restrictions = !curve.is_zero();
    for (std::size_t l = 0; l < lines.size() && c.exact_restrictions; ++l) {
        auto ab = detail::line_basis(lines[l]);
        MultiPoly r = detail::restrict_to_line(curve, ab);
        MultiPoly prod(detail::binary_context(), GaussianRational(1));
        for (auto p : on_line[l]) prod *= detail::point_factor(points[p], ab);
        c.exact_restrictions = !r.is_zero() && r.normalized() == prod.normalized();
    }
    return c;
}

/// A curve through the projected set, given the center and the projected points.
using CurveChoice = std::function<MultiPoly(const ProjPoint& center, const std::vector<PlanePoint>& images)>;

inline CurveChoice family_curve(MultiPoly family) {
    return [family = std::move(family)](const ProjPoint& center, const std::vector<PlanePoint>&) {
        return curve_at(family, center);
    };
}

/// The union of the projected lines of a ruling, for grids.
inline CurveChoice ruling_curve(std::vector<ProjLine> ruling, Chart chart) {
    return [ruling = std::move(ruling), chart](const ProjPoint& center, const std::vector<PlanePoint>&) {
        MultiPoly f = MultiPoly::from_terms(ctx::stu(), {{Monomial{}, GaussianRational(1)}});
        const auto s = MultiPoly::variable(ctx::stu(), "s"), t = MultiPoly::variable(ctx::stu(), "t"),
                   u = MultiPoly::variable(ctx::stu(), "u");
        for (const auto& l : ruling) {
            const auto& c = project(center, l, chart).coeffs;
            f *= c[0] * s + c[1] * t + c[2] * u;
        }
        return f;
    };
}

/// Certifies at `seeds` specializations of the center that the projection of Z is
/// the complete intersection of the chosen curve with the projected cover lines.
/// Centers whose projection identifies two points of Z are resampled.
inline std::vector<CIcertificate> verify_geproci(const std::vector<ProjPoint>& Z, const std::vector<ProjLine>& cover,
                                                 const CurveChoice& curve, Chart chart, std::uint64_t seed,
                                                 const KleinConfiguration* config, std::size_t seeds = 3,
                                                 std::size_t max_resamples = 20) {
    std::vector<CIcertificate> out;
    for (std::size_t s = 0; s < seeds; ++s) {
        const std::uint64_t sub = splitmix64(seed + s);
        PointSampler sampler(sub, config);
        std::size_t resamples = 0;
        for (;;) {
            ProjPoint center = sampler.next();
            std::vector<PlanePoint> imgs;
            std::vector<PlaneLine> lines;
            bool degenerate = false;
            try {
                for (const auto& z : Z) imgs.push_back(project(center, z, chart));
                for (const auto& l : cover) lines.push_back(project(center, l, chart));
            } catch (const DegenerateGeometry&) {
                degenerate = true;
            }
            if (!degenerate) {
                auto sorted = imgs;
                std::sort(sorted.begin(), sorted.end());
                degenerate = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
            }
            // center in the plane spanned by a point and a cover line missing it
            for (std::size_t i = 0; !degenerate && i < Z.size(); ++i)
                for (std::size_t j = 0; !degenerate && j < cover.size(); ++j)
                    degenerate = !cover[j].contains(Z[i]) && lines[j].contains(imgs[i]);
            if (degenerate && resamples < max_resamples) {
                ++resamples;
                continue;
            }
            CIcertificate c = degenerate ? CIcertificate{} : certify_ci(curve(center, imgs), lines, imgs);
            c.seed = sub;
            c.chart = chart;
            c.center = center;
            c.resamples = resamples;
            out.push_back(std::move(c));
            break;
        }
    }
    return out;
}

struct StarCheck {
    std::size_t lines = 0;
    std::size_t nodes = 0;          // distinct pairwise intersection points
    bool only_double_points = false;
    bool off_curve = false;
    bool ok() const { return only_double_points && off_curve && nodes == lines * (lines - 1) / 2; }
};

/// The projected lines meet only in pairs, away from the curve.
inline StarCheck star_check(const std::vector<PlaneLine>& lines, const MultiPoly& curve) {
    StarCheck s;
    s.lines = lines.size();
    std::vector<PlanePoint> nodes;
    s.off_curve = true;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            PlanePoint p = meet(lines[i], lines[j]);
            s.off_curve = s.off_curve && !evaluate(curve, p).is_zero();
            nodes.push_back(p);
        }
    std::sort(nodes.begin(), nodes.end());
    s.only_double_points = std::adjacent_find(nodes.begin(), nodes.end()) == nodes.end();
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    s.nodes = nodes.size();
    return s;
}

/// Plane curves of a degree through plane points (kernel of the evaluation matrix).
inline std::vector<MultiPoly> plane_curves_through(const std::vector<PlanePoint>& points, unsigned degree) {
    auto monos = monomials_of_degree(3, degree);
    ExactMatrix m(points.size(), monos.size());
    for (std::size_t r = 0; r < points.size(); ++r)
        for (std::size_t c = 0; c < monos.size(); ++c)
            m(r, c) = evaluate(MultiPoly::monomial(ctx::stu(), monos[c], GaussianRational(1)), points[r]);
    std::vector<MultiPoly> out;
    for (const auto& v : rank_kernel(std::move(m)).kernel) {
        std::vector<Term> terms;
        for (std::size_t c = 0; c < monos.size(); ++c)
            if (!v[c].is_zero()) terms.push_back({monos[c], v[c]});
        out.push_back(MultiPoly::from_terms(ctx::stu(), std::move(terms)).normalized());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Grids.

struct GridStructure {
    std::size_t a = 0, b = 0;
    std::vector<ProjLine> ruling1;  // a lines with b points each
    std::vector<ProjLine> ruling2;  // b lines with a points each
};

/// Checks the grid invariants against a point set.
inline bool is_grid_of(const GridStructure& g, const std::vector<ProjPoint>& Z) {
    if (g.ruling1.size() != g.a || g.ruling2.size() != g.b || g.a * g.b != Z.size()) return false;
    for (const auto* r : {&g.ruling1, &g.ruling2})
        for (std::size_t i = 0; i < r->size(); ++i)
            for (std::size_t j = i + 1; j < r->size(); ++j)
                if (!(*r)[i].skew((*r)[j])) return false;
    std::vector<ProjPoint> meets;
    for (const auto& l : g.ruling1)
        for (const auto& m : g.ruling2) {
            if (l == m || !l.meets(m)) return false;
            meets.push_back(l.intersection(m));
        }
    auto z = Z;
    std::sort(meets.begin(), meets.end());
    std::sort(z.begin(), z.end());
    return meets == z;
}

/// Exhaustive search for an (a,b)-grid structure, 2 <= a <= b, a*b = |Z|.
/// Returns the first structure found (a ascending, rulings in canonical order).
inline std::optional<GridStructure> grid_check(const std::vector<ProjPoint>& Z) {
    const std::size_t n = Z.size();
    if (n < 4) return std::nullopt;
    auto sets = collinear_structure(Z);
    for (std::size_t a = 2; a * a <= n; ++a) {
        if (n % a) continue;
        const std::size_t b = n / a;
        std::vector<ProjLine> wide, narrow;
        std::vector<std::vector<std::size_t>> wide_pts, narrow_pts;
        for (const auto& s : sets) {
            if (s.points.size() == b) {
                wide.push_back(s.line);
                wide_pts.push_back(s.points);
            }
            if (s.points.size() == a) {
                narrow.push_back(s.line);
                narrow_pts.push_back(s.points);
            }
        }
        if (wide.size() < a || narrow.size() < b) continue;
        std::optional<GridStructure> found;
        detail::enumerate_skew_covers(wide, wide_pts, n, a, [&](const std::vector<std::size_t>& r1) {
            // Second-ruling candidates meet every first-ruling line in exactly one point.
            std::vector<std::size_t> owner(n);
            for (std::size_t i = 0; i < r1.size(); ++i)
                for (auto p : wide_pts[r1[i]]) owner[p] = i;
            std::vector<ProjLine> cand;
            std::vector<std::vector<std::size_t>> cand_pts;
            for (std::size_t k = 0; k < narrow.size(); ++k) {
                std::vector<char> hit(a, 0);
                bool good = true;
                for (auto p : narrow_pts[k]) {
                    good = good && !hit[owner[p]];
                    hit[owner[p]] = 1;
                }
                if (good) {
                    cand.push_back(narrow[k]);
                    cand_pts.push_back(narrow_pts[k]);
                }
            }
            detail::enumerate_skew_covers(cand, cand_pts, n, b, [&](const std::vector<std::size_t>& r2) {
                GridStructure g{a, b, {}, {}};
                for (auto i : r1) g.ruling1.push_back(wide[i]);
                for (auto j : r2) g.ruling2.push_back(cand[j]);
                if (is_grid_of(g, Z)) found = std::move(g);
                return found.has_value();
            });
            return found.has_value();
        });
        if (found) return found;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Removing the points of cover lines.

struct ChainStep {
    std::size_t k = 0;
    std::vector<std::size_t> removed_lines;     // indices into the 30 lines
    std::vector<std::size_t> remaining_lines;
    std::vector<std::size_t> points;            // indices into the 60 points
    std::vector<CIcertificate> ci;              // for k <= 6
    std::optional<GridStructure> grid;
    std::size_t max_collinear = 0;
    /// Lines with exactly c points of the remaining set, for c = 6, 5, 4: indices
    /// into the 30 lines (or npos for lines outside them).
    std::map<std::size_t, std::vector<std::size_t>> lines_with;
};

inline ChainStep removal_step(const KleinConfiguration& k, const std::vector<std::size_t>& cover_lines,
                              const std::vector<std::size_t>& removed, std::uint64_t seed, std::size_t seeds = 3) {
    ChainStep st;
    st.k = removed.size();
    st.removed_lines = removed;
    for (auto l : cover_lines)
        if (std::find(removed.begin(), removed.end(), l) == removed.end()) st.remaining_lines.push_back(l);
    std::vector<char> gone(k.points.size(), 0);
    for (auto l : removed)
        for (auto p : k.line_points[l]) gone[p] = 1;
    std::vector<ProjPoint> pts;
    for (std::size_t p = 0; p < k.points.size(); ++p)
        if (!gone[p]) {
            st.points.push_back(p);
            pts.push_back(k.points[p]);
        }
    auto sets = collinear_structure(pts);
    st.max_collinear = sets.empty() ? 0 : sets.front().points.size();
    for (std::size_t c : {6u, 5u, 4u})
        for (const auto& s : sets)
            if (s.points.size() == c) st.lines_with[c].push_back(k.index_of(s.line));
    st.grid = grid_check(pts);
    if (st.k <= 6) {
        std::vector<ProjLine> rem;
        for (auto l : st.remaining_lines) rem.push_back(k.lines[l]);
        st.ci = verify_geproci(pts, rem, family_curve(c6_from_cone(cone_f())), Chart::hyperplane_x, seed, &k, seeds);
    }
    return st;
}

/// Removes the first `steps` lines of `order` (default: the cover in index order).
inline ChainStep removal_chain(const KleinConfiguration& k, const LineCover& cover, std::size_t steps,
                               std::uint64_t seed, std::size_t seeds = 3, std::vector<std::size_t> order = {}) {
    if (steps > 7 || steps > cover.lines.size()) throw std::invalid_argument("removal chain supports 0..7 steps");
    if (order.empty()) order = cover.lines;
    auto a = order, b = cover.lines;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw std::invalid_argument("removal order must be a permutation of the cover lines");
    std::vector<std::size_t> removed(order.begin(), order.begin() + std::ptrdiff_t(steps));
    return removal_step(k, cover.lines, removed, seed, seeds);
}

/// Removal order through which the two lines labelled xy end up as the only
/// 5-point lines at step 5: the two cover lines also in family x, one in family
/// y, one line of neither, the other y line, then the rest by index. Taking
/// both pairs within the first four steps would leave the xy lines with 6
/// points at step 4.
inline std::vector<std::size_t> paired_removal_order(const LineCover& cover, char x, char y) {
    std::vector<std::size_t> xs, ys, rest;
    for (auto l : cover.lines) {
        std::string fam = cover_letters(l);
        if (fam.find(x) != std::string::npos) xs.push_back(l);
        else if (fam.find(y) != std::string::npos) ys.push_back(l);
        else rest.push_back(l);
    }
    if (xs.size() != 2 || ys.size() != 2 || rest.empty()) throw std::invalid_argument("families must pair with the cover");
    std::vector<std::size_t> order{xs[0], xs[1], ys[0], rest[0], ys[1]};
    order.insert(order.end(), rest.begin() + 1, rest.end());
    return order;
}

}  // namespace klein

#endif  // KLEIN_PROJECTION_HPP
