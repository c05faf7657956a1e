#ifndef KLEIN_KLEIN_CONFIG_HPP
#define KLEIN_KLEIN_CONFIG_HPP

#include "geometry.hpp"
#include "poly.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace klein {

class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace data {

// Coordinates of P1..P60 as (x, y, z, w), entries in {0, 1, -1, i, -i}.
inline constexpr std::array<std::array<const char*, 4>, 60> kPointCoords{{
    {"0", "0", "1", "1"},   {"0", "0", "1", "i"},   {"0", "0", "1", "-1"},  {"0", "0", "1", "-i"},
    {"0", "1", "0", "1"},   {"0", "1", "0", "i"},   {"0", "1", "0", "-1"},  {"0", "1", "0", "-i"},
    {"0", "1", "1", "0"},   {"0", "1", "i", "0"},   {"0", "1", "-1", "0"},  {"0", "1", "-i", "0"},
    {"1", "0", "0", "1"},   {"1", "0", "0", "i"},   {"1", "0", "0", "-1"},  {"1", "0", "0", "-i"},
    {"1", "0", "1", "0"},   {"1", "0", "i", "0"},   {"1", "0", "-1", "0"},  {"1", "0", "-i", "0"},
    {"1", "1", "0", "0"},   {"1", "i", "0", "0"},   {"1", "-1", "0", "0"},  {"1", "-i", "0", "0"},
    {"1", "0", "0", "0"},   {"0", "1", "0", "0"},   {"0", "0", "1", "0"},   {"0", "0", "0", "1"},
    {"1", "1", "1", "1"},   {"1", "1", "1", "-1"},  {"1", "1", "-1", "1"},  {"1", "1", "-1", "-1"},
    {"1", "-1", "1", "1"},  {"1", "-1", "1", "-1"}, {"1", "-1", "-1", "1"}, {"1", "-1", "-1", "-1"},
    {"1", "1", "i", "i"},   {"1", "1", "i", "-i"},  {"1", "1", "-i", "i"},  {"1", "1", "-i", "-i"},
    {"1", "-1", "i", "i"},  {"1", "-1", "i", "-i"}, {"1", "-1", "-i", "i"}, {"1", "-1", "-i", "-i"},
    {"1", "i", "1", "i"},   {"1", "i", "1", "-i"},  {"1", "-i", "1", "i"},  {"1", "-i", "1", "-i"},
    {"1", "i", "-1", "i"},  {"1", "i", "-1", "-i"}, {"1", "-i", "-1", "i"}, {"1", "-i", "-1", "-i"},
    {"1", "i", "i", "1"},   {"1", "i", "-i", "1"},  {"1", "-i", "i", "1"},  {"1", "-i", "-i", "1"},
    {"1", "i", "i", "-1"},  {"1", "i", "-i", "-1"}, {"1", "-i", "i", "-1"}, {"1", "-i", "-i", "-1"},
}};

// The lines l1..l30 as V(first, second).
inline constexpr std::array<std::array<const char*, 2>, 30> kLineForms{{
    {"x", "y"},         {"z-w", "x-y"},     {"z-w", "x+y"},     {"z+i*w", "x+i*y"}, {"z+i*w", "x-i*y"},
    {"z+w", "x-y"},     {"z+w", "x+y"},     {"z-i*w", "x+i*y"}, {"z-i*w", "x-i*y"}, {"z", "x"},
    {"y-w", "x-z"},     {"y-w", "x+z"},     {"y+i*w", "x+i*z"}, {"y+i*w", "x-i*z"}, {"y+w", "x-z"},
    {"y+w", "x+z"},     {"y-i*w", "x+i*z"}, {"y-i*w", "x-i*z"}, {"w", "x"},         {"y-z", "x-w"},
    {"y-z", "x+w"},     {"y+i*z", "x+i*w"}, {"y+i*z", "x-i*w"}, {"y+z", "x-w"},     {"y+z", "x+w"},
    {"y-i*z", "x+i*w"}, {"y-i*z", "x-i*w"}, {"z", "y"},         {"w", "y"},         {"w", "z"},
}};

inline constexpr std::array<const char*, 10> kQuadrics{
    "x^2 + y^2 + z^2 + w^2", "x*w + z*y", "x*z + y*w", "x^2 + y^2 - z^2 - w^2", "x^2 - y^2 - z^2 + w^2",
    "x^2 - y^2 + z^2 - w^2", "x*w - y*z", "x*y + z*w", "x*y - z*w", "x*z - y*w",
};

}  // namespace data

inline std::string point_label(std::size_t idx) { return "P" + std::to_string(idx + 1); }
inline std::string line_label(std::size_t idx) { return "l" + std::to_string(idx + 1); }
inline std::string quadric_label(std::size_t idx) { return "Q" + std::to_string(idx + 1); }

/// Constant expression such as "-i" or "1/2".
inline GaussianRational parse_constant(const char* text) {
    return parse_poly(text, VariableContext()).constant_value();
}

inline ProjPoint parse_point(const std::array<const char*, 4>& c) {
    return make_point(parse_constant(c[0]), parse_constant(c[1]), parse_constant(c[2]), parse_constant(c[3]));
}

/// The 60 points in the published numbering (index k is P_{k+1}).
inline std::vector<ProjPoint> klein_points() {
    std::vector<ProjPoint> pts;
    pts.reserve(60);
    for (const auto& c : data::kPointCoords) pts.push_back(parse_point(c));
    return pts;
}

inline std::vector<ProjLine> klein_lines() {
    std::vector<ProjLine> lines;
    lines.reserve(30);
    for (const auto& f : data::kLineForms)
        lines.push_back(ProjLine::from_forms(parse_poly(f[0], ctx::xyzw()), parse_poly(f[1], ctx::xyzw())));
    return lines;
}

inline std::vector<MultiPoly> klein_quadrics() {
    std::vector<MultiPoly> q;
    for (const char* s : data::kQuadrics) q.push_back(parse_poly(s, ctx::xyzw()));
    return q;
}

/// Plane dual to a point under the standard bilinear form.
inline ProjPlane dual_plane(const ProjPoint& p) { return ProjPlane{ProjVec<4>(p.coords())}; }

struct KleinConfiguration {
    std::vector<ProjPoint> points;
    std::vector<ProjLine> lines;
    std::vector<MultiPoly> quadrics;
    std::vector<ProjPlane> planes;

    std::vector<std::vector<std::size_t>> line_points;     // line -> points on it
    std::vector<std::vector<std::size_t>> point_lines;     // point -> lines through it
    std::vector<std::vector<std::size_t>> line_quadrics;   // line -> quadrics containing it
    std::vector<std::vector<std::size_t>> quadric_lines;   // quadric -> lines on it
    std::vector<std::vector<std::size_t>> plane_points;    // plane -> points on it
    std::vector<std::vector<std::size_t>> point_planes;    // point -> planes through it

    /// Index of p in `points`, or npos.
    std::size_t index_of(const ProjPoint& p) const {
        auto it = std::find(points.begin(), points.end(), p);
        return it == points.end() ? npos : std::size_t(it - points.begin());
    }
    std::size_t index_of(const ProjLine& l) const {
        auto it = std::find(lines.begin(), lines.end(), l);
        return it == lines.end() ? npos : std::size_t(it - lines.begin());
    }

    static constexpr std::size_t npos = std::size_t(-1);
};

/// A quadric contains a line iff it vanishes at three distinct points of it.
inline bool quadric_contains_line(const MultiPoly& q, const ProjLine& l) {
    const auto& [p, r] = l.spanning_points();
    std::array<GaussianRational, 4> mid;
    for (std::size_t k = 0; k < 4; ++k) mid[k] = p[k] + r[k];
    return evaluate(q, p).is_zero() && evaluate(q, r).is_zero() &&
           evaluate(q, std::span<const GaussianRational>(mid)).is_zero();
}

/// Builds the configuration and checks every incidence count by exact evaluation.
inline KleinConfiguration build_klein() {
    KleinConfiguration k;
    k.points = klein_points();
    k.lines = klein_lines();
    k.quadrics = klein_quadrics();
    for (const auto& p : k.points) k.planes.push_back(dual_plane(p));

    {
        std::set<ProjPoint> distinct(k.points.begin(), k.points.end());
        if (distinct.size() != 60) throw ConfigurationError("point list contains duplicates");
    }
    for (std::size_t a = 0; a < k.lines.size(); ++a)
        for (std::size_t b = a + 1; b < k.lines.size(); ++b)
            if (k.lines[a] == k.lines[b]) throw ConfigurationError(line_label(a) + " equals " + line_label(b));

    k.line_points.assign(30, {});
    k.point_lines.assign(60, {});
    for (std::size_t l = 0; l < 30; ++l)
        for (std::size_t p = 0; p < 60; ++p)
            if (k.lines[l].contains(k.points[p])) {
                k.line_points[l].push_back(p);
                k.point_lines[p].push_back(l);
            }
    k.line_quadrics.assign(30, {});
    k.quadric_lines.assign(10, {});
    for (std::size_t l = 0; l < 30; ++l)
        for (std::size_t q = 0; q < 10; ++q)
            if (quadric_contains_line(k.quadrics[q], k.lines[l])) {
                k.line_quadrics[l].push_back(q);
                k.quadric_lines[q].push_back(l);
            }
    k.plane_points.assign(60, {});
    k.point_planes.assign(60, {});
    for (std::size_t h = 0; h < 60; ++h)
        for (std::size_t p = 0; p < 60; ++p)
            if (k.planes[h].contains(k.points[p])) {
                k.plane_points[h].push_back(p);
                k.point_planes[p].push_back(h);
            }

    auto expect = [](std::size_t got, std::size_t want, const std::string& what) {
        if (got != want)
            throw ConfigurationError(what + ": expected " + std::to_string(want) + ", found " + std::to_string(got));
    };
    for (std::size_t l = 0; l < 30; ++l) {
        expect(k.line_points[l].size(), 6, "points on " + line_label(l));
        expect(k.line_quadrics[l].size(), 4, "quadrics through " + line_label(l));
        if (!k.lines[l].satisfies_plucker_relation()) throw ConfigurationError(line_label(l) + " violates the Plücker relation");
    }
    for (std::size_t p = 0; p < 60; ++p) expect(k.point_lines[p].size(), 3, "lines through " + point_label(p));
    for (std::size_t q = 0; q < 10; ++q) expect(k.quadric_lines[q].size(), 12, "lines on " + quadric_label(q));
    for (std::size_t h = 0; h < 60; ++h) expect(k.plane_points[h].size(), 15, "points on the plane dual to " + point_label(h));
    return k;
}

/// Every intersection point of two meeting lines of the configuration; each
/// must be one of the 60 points. Returns the number of meeting pairs.
inline std::size_t check_line_intersections_in_points(const KleinConfiguration& k) {
    std::size_t meeting = 0;
    for (std::size_t a = 0; a < k.lines.size(); ++a)
        for (std::size_t b = a + 1; b < k.lines.size(); ++b) {
            if (!k.lines[a].meets(k.lines[b])) continue;
            ++meeting;
            ProjPoint p = k.lines[a].intersection(k.lines[b]);
            if (k.index_of(p) == KleinConfiguration::npos)
                throw ConfigurationError(line_label(a) + " and " + line_label(b) + " meet outside the configuration at " + p.str());
        }
    return meeting;
}

/// t[i]: points on exactly i planes (i >= 3); t1[j]: lines on exactly j planes (j >= 2).
struct ArrangementStats {
    std::map<std::size_t, std::size_t> t;
    std::map<std::size_t, std::size_t> t1;
    std::size_t plane_pairs = 0;
};

/// Exhaustive enumeration over an arrangement of planes: all pairwise
/// intersection lines (deduplicated by Plücker vector) and all points where
/// a line of the arrangement meets a further plane.
inline ArrangementStats incidence_stats(const std::vector<ProjPlane>& planes) {
    ArrangementStats st;
    std::map<std::array<GaussianRational, 6>, ProjLine, PluckerLess> lines;
    for (std::size_t a = 0; a < planes.size(); ++a)
        for (std::size_t b = a + 1; b < planes.size(); ++b) {
            ++st.plane_pairs;
            ProjLine l = ProjLine::from_forms(planes[a], planes[b]);
            lines.try_emplace(l.plucker(), l);
        }
    std::set<ProjPoint> points;
    for (const auto& [key, l] : lines) {
        std::size_t through = 0;
        for (const auto& h : planes) {
            if (l.lies_in(h)) {
                ++through;
            } else {
                points.insert(l.intersection(h));
            }
        }
        ++st.t1[through];
    }
    for (const auto& p : points) {
        std::size_t m = 0;
        for (const auto& h : planes)
            if (h.contains(p)) ++m;
        if (m >= 3) ++st.t[m];
    }
    return st;
}

inline ArrangementStats incidence_stats(const KleinConfiguration& k) { return incidence_stats(k.planes); }

struct CollinearSet {
    ProjLine line;
    std::vector<std::size_t> points;  // indices into the input list, ascending
};

/// Every line spanned by two of the points with its full incident subset,
/// ordered by decreasing size, then by point indices.
inline std::vector<CollinearSet> collinear_structure(const std::vector<ProjPoint>& pts) {
    std::map<std::array<GaussianRational, 6>, CollinearSet, PluckerLess> by_line;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            ProjLine l = ProjLine::through(pts[i], pts[j]);
            auto [it, inserted] = by_line.try_emplace(l.plucker(), CollinearSet{l, {}});
            auto& v = it->second.points;
            if (inserted) {
                v = {i, j};
            } else {
                if (!std::binary_search(v.begin(), v.end(), i)) v.insert(std::lower_bound(v.begin(), v.end(), i), i);
                if (!std::binary_search(v.begin(), v.end(), j)) v.insert(std::lower_bound(v.begin(), v.end(), j), j);
            }
        }
    std::vector<CollinearSet> out;
    out.reserve(by_line.size());
    for (auto& [key, s] : by_line) out.push_back(std::move(s));
    std::sort(out.begin(), out.end(), [](const CollinearSet& a, const CollinearSet& b) {
        if (a.points.size() != b.points.size()) return a.points.size() > b.points.size();
        return a.points < b.points;
    });
    return out;
}

/// Histogram size -> number of lines, from collinear_structure().
inline std::map<std::size_t, std::size_t> collinearity_histogram(const std::vector<CollinearSet>& sets) {
    std::map<std::size_t, std::size_t> h;
    for (const auto& s : sets) ++h[s.points.size()];
    return h;
}

inline std::vector<ProjPoint> select(const std::vector<ProjPoint>& pts, const std::vector<std::size_t>& idx) {
    std::vector<ProjPoint> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(pts.at(i));
    return out;
}

}  // namespace klein

#endif  // KLEIN_KLEIN_CONFIG_HPP
