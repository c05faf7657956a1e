#ifndef KLEIN_SUBCONFIGS_HPP
#define KLEIN_SUBCONFIGS_HPP

#include "interpolation.hpp"
#include "klein_config.hpp"
#include "projection.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace klein {

/// Named subset of the 60 points (0-based indices).
struct SubsetSpec {
    std::string name;
    std::vector<std::size_t> indices;

    std::vector<ProjPoint> points(const KleinConfiguration& k) const { return select(k.points, indices); }
};

namespace data {
// 1-based, as in the point numbering; coordinates alongside for a transcription check.
inline constexpr std::array<std::size_t, 24> kZ24{1,  3,  5,  7,  9,  11, 13, 15, 17, 19, 21, 23,
                                                  25, 26, 27, 28, 29, 30, 31, 32, 33, 34, 35, 36};
inline constexpr std::array<std::array<const char*, 4>, 24> kZ24Coords{{
    {"0", "0", "1", "1"},   {"0", "0", "1", "-1"},  {"0", "1", "0", "1"},   {"0", "1", "0", "-1"},
    {"0", "1", "1", "0"},   {"0", "1", "-1", "0"},  {"1", "0", "0", "1"},   {"1", "0", "0", "-1"},
    {"1", "0", "1", "0"},   {"1", "0", "-1", "0"},  {"1", "1", "0", "0"},   {"1", "-1", "0", "0"},
    {"1", "0", "0", "0"},   {"0", "1", "0", "0"},   {"0", "0", "1", "0"},   {"0", "0", "0", "1"},
    {"1", "1", "1", "1"},   {"1", "1", "1", "-1"},  {"1", "1", "-1", "1"},  {"1", "1", "-1", "-1"},
    {"1", "-1", "1", "1"},  {"1", "-1", "1", "-1"}, {"1", "-1", "-1", "1"}, {"1", "-1", "-1", "-1"},
}};

struct LabelledLine {
    std::size_t line;  // 1-based
    const char* label;
};
inline constexpr std::array<LabelledLine, 18> kL18{{
    {1, "AB"},  {2, "EF"},  {3, "CD"},  {6, "CD"},  {7, "EF"},  {10, "CF"},
    {11, "BD"}, {12, "AE"}, {15, "AE"}, {16, "BD"}, {19, "DE"}, {20, "AC"},
    {21, "BF"}, {24, "BF"}, {25, "AC"}, {28, "DE"}, {29, "CF"}, {30, "AB"},
}};

inline constexpr std::array<std::size_t, 6> kResidualRuling1{4, 9, 14, 17, 22, 27};
inline constexpr std::array<std::size_t, 6> kResidualRuling2{5, 8, 13, 18, 23, 26};

inline constexpr std::array<std::size_t, 12> kPlanarF12{9, 10, 11, 12, 17, 18, 19, 20, 21, 22, 23, 24};
inline constexpr std::array<std::array<std::size_t, 3>, 16> kF12Triples{{
    {9, 17, 23},  {9, 18, 24},  {9, 19, 21},  {9, 20, 22},  {10, 17, 22}, {10, 18, 23}, {10, 19, 24}, {10, 20, 21},
    {11, 17, 21}, {11, 18, 22}, {11, 19, 23}, {11, 20, 24}, {12, 17, 24}, {12, 18, 21}, {12, 19, 22}, {12, 20, 23},
}};
inline constexpr std::array<std::array<std::size_t, 4>, 3> kF12Quadruples{{
    {9, 10, 11, 12}, {17, 18, 19, 20}, {21, 22, 23, 24}}};

// w = 0 section: the coordinate triangle 25, 26, 27 with 17..20, 9..12, 21..24 on its sides.
inline constexpr std::array<std::size_t, 15> kW0Plane{9, 10, 11, 12, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27};
}  // namespace data

inline SubsetSpec z24_subset() {
    SubsetSpec s{"Z24", {}};
    for (auto i : data::kZ24) s.indices.push_back(i - 1);
    return s;
}

inline SubsetSpec planar_f12_subset() {
    SubsetSpec s{"planar_F12", {}};
    for (auto i : data::kPlanarF12) s.indices.push_back(i - 1);
    return s;
}

// ---------------------------------------------------------------------------
// Z24 and its 18 lines.

struct Z24Structure {
    SubsetSpec subset;
    bool coordinates_match = false;        // list indices agree with the displayed coordinates
    std::vector<std::size_t> lines;        // derived: lines of the 30 with >= 4 points of Z24, 0-based
    bool matches_display = false;          // derived set == displayed set
    std::vector<std::string> labels;       // displayed label per derived line
    std::vector<std::size_t> label_mismatches;  // lines whose label differs from cover membership
    std::map<std::size_t, std::size_t> points_per_line;  // count -> #lines (over the 18)
    std::map<std::size_t, std::size_t> lines_per_point;  // count -> #points (over Z24)
    std::size_t max_on_l30 = 0;            // max |l cap Z24| over the 30 lines
    std::size_t max_collinear = 0;         // over all lines of P3
    std::map<char, std::vector<std::size_t>> letter_covers;  // letter -> 6 lines
    bool letter_covers_ok = false;         // each is skew and covers Z24

    bool configuration_24_3_18_4() const {
        return lines.size() == 18 && points_per_line.size() == 1 && points_per_line.count(4) &&
               lines_per_point.size() == 1 && lines_per_point.count(3) && lines_per_point.at(3) == 24;
    }
    bool ok() const {
        return coordinates_match && matches_display && label_mismatches.empty() && configuration_24_3_18_4() &&
               max_on_l30 == 4 && max_collinear == 4 && letter_covers.size() == 6 && letter_covers_ok;
    }
};

inline std::vector<ProjLine> select_lines(const KleinConfiguration& k, const std::vector<std::size_t>& idx) {
    std::vector<ProjLine> out;
    for (auto i : idx) out.push_back(k.lines.at(i));
    return out;
}

inline bool pairwise_skew(const std::vector<ProjLine>& ls) {
    for (std::size_t i = 0; i < ls.size(); ++i)
        for (std::size_t j = i + 1; j < ls.size(); ++j)
            if (!ls[i].skew(ls[j])) return false;
    return true;
}

inline bool covers_points(const std::vector<ProjLine>& ls, const std::vector<ProjPoint>& pts) {
    for (const auto& p : pts)
        if (std::none_of(ls.begin(), ls.end(), [&](const ProjLine& l) { return l.contains(p); })) return false;
    return true;
}

inline Z24Structure z24_structure(const KleinConfiguration& k) {
    Z24Structure s;
    s.subset = z24_subset();
    s.coordinates_match = true;
    for (std::size_t i = 0; i < data::kZ24.size(); ++i)
        s.coordinates_match = s.coordinates_match && parse_point(data::kZ24Coords[i]) == k.points[s.subset.indices[i]];
    std::vector<char> in(k.points.size(), 0);
    for (auto i : s.subset.indices) in[i] = 1;
    for (std::size_t l = 0; l < k.lines.size(); ++l) {
        std::size_t c = 0;
        for (auto p : k.line_points[l]) c += in[p];
        s.max_on_l30 = std::max(s.max_on_l30, c);
        if (c >= 4) {
            s.lines.push_back(l);
            ++s.points_per_line[c];
        }
    }
    std::vector<std::size_t> shown;
    for (const auto& e : data::kL18) shown.push_back(e.line - 1);
    s.matches_display = shown == s.lines;
    for (auto l : s.lines) {
        auto it = std::find_if(data::kL18.begin(), data::kL18.end(), [&](const auto& e) { return e.line - 1 == l; });
        std::string label = it == data::kL18.end() ? "" : it->label;
        s.labels.push_back(label);
        if (label != cover_letters(l)) s.label_mismatches.push_back(l);
        for (char c : label) s.letter_covers[c].push_back(l);
    }
    for (auto p : s.subset.indices) {
        std::size_t c = 0;
        for (auto l : s.lines)
            if (k.lines[l].contains(k.points[p])) ++c;
        ++s.lines_per_point[c];
    }
    auto pts = s.subset.points(k);
    auto sets = collinear_structure(pts);
    s.max_collinear = sets.empty() ? 0 : sets.front().points.size();
    s.letter_covers_ok = true;
    for (const auto& [letter, ls] : s.letter_covers) {
        auto lines = select_lines(k, ls);
        s.letter_covers_ok = s.letter_covers_ok && ls.size() == 6 && pairwise_skew(lines) && covers_points(lines, pts);
    }
    return s;
}

// ---------------------------------------------------------------------------
// The C(4) property of Z24.

struct C4Certificate {
    std::size_t quartics_through = 0;       // dim of quartics through Z24
    UnexpectednessReport unexpected;        // one general point of multiplicity 4
    std::vector<ProjPoint> vertices;        // per seed
    std::vector<bool> cone_ok;              // kernel element has multiplicity 4 at the vertex
    std::vector<std::size_t> plane_quartics;  // kernel dim of the 24 x 15 plane system, per seed
    std::vector<CIcertificate> ci;          // Gamma and six lines of one letter

    bool ok() const {
        bool good = unexpected.unexpected() && !cone_ok.empty() && !ci.empty();
        for (bool c : cone_ok) good = good && c;
        for (auto d : plane_quartics) good = good && d == 1;
        for (const auto& c : ci) good = good && c.ok() && c.d1 == 4 && c.d2 == 6;
        return good && plane_quartics.size() == ci.size();
    }
};

/// The unique plane quartic through the images; throws unless unique.
inline CurveChoice unique_plane_curve(unsigned degree) {
    return [degree](const ProjPoint&, const std::vector<PlanePoint>& images) {
        auto curves = plane_curves_through(images, degree);
        if (curves.size() != 1)
            throw std::runtime_error("expected a unique plane curve of degree " + std::to_string(degree) +
                                     ", found " + std::to_string(curves.size()));
        return curves.front();
    };
}

inline C4Certificate verify_c4(const KleinConfiguration& k, std::uint64_t seed, std::size_t seeds = 3, char letter = 'A') {
    C4Certificate c;
    auto pts = z24_subset().points(k);
    LinearSystem sys = forms_through(pts, 4);
    c.quartics_through = sys.dimension();
    c.unexpected = verify_unexpected(pts, 4, {4}, seed, &k, seeds);
    for (const auto& vs : c.unexpected.points_per_seed) {
        const ProjPoint& v = vs.front();
        c.vertices.push_back(v);
        auto ker = rank_kernel(fatpoint_conditions(sys.basis, v, 4)).kernel;
        bool ok = ker.size() == 1;
        if (ok) {
            MultiPoly f = combine(sys.basis, ker.front());
            ok = multiplicity_at(f, v) == 4;
            for (const auto& z : pts) ok = ok && evaluate(f, z).is_zero();
        }
        c.cone_ok.push_back(ok);
    }
    std::vector<std::size_t> ls;
    for (const auto& e : data::kL18)
        if (std::string(e.label).find(letter) != std::string::npos) ls.push_back(e.line - 1);
    c.ci = verify_geproci(pts, select_lines(k, ls), unique_plane_curve(4), Chart::hyperplane_x,
                          splitmix64(seed ^ 0xc4), &k, seeds);
    for (const auto& ci : c.ci) c.plane_quartics.push_back(plane_curves_through(ci.points, 4).size());
    return c;
}

// ---------------------------------------------------------------------------
// Residual grid.

inline GridStructure residual_grid(const KleinConfiguration& k) {
    std::vector<std::size_t> r1, r2;
    for (auto l : data::kResidualRuling1) r1.push_back(l - 1);
    for (auto l : data::kResidualRuling2) r2.push_back(l - 1);
    GridStructure g{6, 6, select_lines(k, r1), select_lines(k, r2)};
    std::vector<char> in24(k.points.size(), 0);
    for (auto i : z24_subset().indices) in24[i] = 1;
    std::vector<ProjPoint> residual;
    for (std::size_t p = 0; p < k.points.size(); ++p)
        if (!in24[p]) residual.push_back(k.points[p]);
    if (!pairwise_skew(g.ruling1)) throw std::runtime_error("residual ruling 1 is not pairwise skew");
    if (!pairwise_skew(g.ruling2)) throw std::runtime_error("residual ruling 2 is not pairwise skew");
    std::vector<ProjPoint> meets;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            if (!g.ruling1[i].meets(g.ruling2[j]))
                throw std::runtime_error("residual rulings: l" + std::to_string(r1[i] + 1) + " misses l" +
                                         std::to_string(r2[j] + 1));
            meets.push_back(g.ruling1[i].intersection(g.ruling2[j]));
        }
    std::sort(meets.begin(), meets.end());
    std::sort(residual.begin(), residual.end());
    if (meets != residual) throw std::runtime_error("ruling intersections differ from Z60 minus Z24");
    if (!is_grid_of(g, residual)) throw std::runtime_error("residual set fails the grid invariants");
    return g;
}

// ---------------------------------------------------------------------------
// The planar 12-point set on w = 0.

struct CollinearityCertificate {
    std::vector<std::size_t> plane_points;  // Z60 points on w = 0, 1-based
    std::vector<std::array<std::size_t, 3>> triples;
    std::vector<std::array<std::size_t, 4>> quadruples;
    std::vector<std::size_t> failing_triples;
    std::vector<std::size_t> failing_quadruples;
    std::size_t pairs = 0;
    std::size_t pairs_covered = 0;
    bool pair_coverage = false;

    bool ok() const {
        return plane_points.size() == 15 && triples.size() == 16 && quadruples.size() == 3 && failing_triples.empty() &&
               failing_quadruples.empty() && pairs == 66 && pair_coverage;
    }
};

inline bool collinear(const std::vector<ProjPoint>& pts) {
    if (pts.size() < 3) return true;
    ProjLine l = ProjLine::through(pts[0], pts[1]);
    return std::all_of(pts.begin() + 2, pts.end(), [&](const ProjPoint& p) { return l.contains(p); });
}

inline CollinearityCertificate real_premise(const KleinConfiguration& k) {
    CollinearityCertificate c;
    for (std::size_t p = 0; p < k.points.size(); ++p)
        if (k.points[p][3].is_zero()) c.plane_points.push_back(p + 1);
    auto pt = [&](std::size_t one_based) { return k.points.at(one_based - 1); };
    for (std::size_t t = 0; t < data::kF12Triples.size(); ++t) {
        const auto& tr = data::kF12Triples[t];
        c.triples.push_back(tr);
        if (!collinear({pt(tr[0]), pt(tr[1]), pt(tr[2])})) c.failing_triples.push_back(t);
    }
    for (std::size_t q = 0; q < data::kF12Quadruples.size(); ++q) {
        const auto& qd = data::kF12Quadruples[q];
        c.quadruples.push_back(qd);
        if (!collinear({pt(qd[0]), pt(qd[1]), pt(qd[2]), pt(qd[3])})) c.failing_quadruples.push_back(q);
    }
    const auto& f = data::kPlanarF12;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            ++c.pairs;
            ProjLine l = ProjLine::through(pt(f[i]), pt(f[j]));
            for (std::size_t m = 0; m < f.size(); ++m)
                if (m != i && m != j && l.contains(pt(f[m]))) {
                    ++c.pairs_covered;
                    break;
                }
        }
    c.pair_coverage = c.pairs_covered == c.pairs;
    return c;
}

}  // namespace klein

#endif  // KLEIN_SUBCONFIGS_HPP
