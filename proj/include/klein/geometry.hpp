#ifndef KLEIN_GEOMETRY_HPP
#define KLEIN_GEOMETRY_HPP

#include "gaussian_rational.hpp"
#include "matrix.hpp"
#include "poly.hpp"

#include <array>
#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace klein {

class DegenerateGeometry : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Scales v so that its first nonzero entry is 1. Returns false for the zero vector.
inline bool normalize_projective(std::span<GaussianRational> v) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k].is_zero()) continue;
        if (v[k].is_one()) return true;
        GaussianRational inv = v[k].inverse();
        for (std::size_t j = k; j < v.size(); ++j) v[j] *= inv;
        return true;
    }
    return false;
}

/// Homogeneous coordinate vector up to scalar, stored normalized.
template <std::size_t N>
class ProjVec {
public:
    ProjVec() = default;
    explicit ProjVec(std::array<GaussianRational, N> c) : c_(std::move(c)) {
        if (!normalize_projective(c_)) throw DegenerateGeometry("all homogeneous coordinates are zero");
    }

    const GaussianRational& operator[](std::size_t k) const { return c_[k]; }
    const std::array<GaussianRational, N>& coords() const noexcept { return c_; }

    GaussianRational dot(const ProjVec& o) const {
        GaussianRational s;
        for (std::size_t k = 0; k < N; ++k)
            if (!c_[k].is_zero() && !o.c_[k].is_zero()) s += c_[k] * o.c_[k];
        return s;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t k = 0; k < N; ++k) s += (k ? ":" : "") + c_[k].str();
        return s + "]";
    }

    friend bool operator==(const ProjVec&, const ProjVec&) = default;
    friend auto operator<=>(const ProjVec& a, const ProjVec& b) {
        for (std::size_t k = 0; k < N; ++k)
            if (auto c = a.c_[k] <=> b.c_[k]; c != 0) return c;
        return std::strong_ordering::equal;
    }

private:
    std::array<GaussianRational, N> c_{};
};

using ProjPoint = ProjVec<4>;
using PlanePoint = ProjVec<3>;

inline ProjPoint make_point(GaussianRational a, GaussianRational b, GaussianRational c, GaussianRational d) {
    return ProjPoint({std::move(a), std::move(b), std::move(c), std::move(d)});
}

/// Plane a*x + b*y + c*z + d*w = 0.
struct ProjPlane {
    ProjVec<4> coeffs;

    bool contains(const ProjPoint& p) const { return coeffs.dot(p).is_zero(); }
    MultiPoly form() const {
        const auto& c = ctx::xyzw();
        MultiPoly f(c);
        for (std::size_t k = 0; k < 4; ++k) f += MultiPoly::monomial(c, Monomial::variable(k), coeffs[k]);
        return f;
    }
    friend bool operator==(const ProjPlane&, const ProjPlane&) = default;
    friend auto operator<=>(const ProjPlane&, const ProjPlane&) = default;
};

/// Line a*s + b*t + c*u = 0 in the projective plane.
struct PlaneLine {
    ProjVec<3> coeffs;

    bool contains(const PlanePoint& p) const { return coeffs.dot(p).is_zero(); }
    friend bool operator==(const PlaneLine&, const PlaneLine&) = default;
    friend auto operator<=>(const PlaneLine&, const PlaneLine&) = default;
};

inline std::array<GaussianRational, 3> cross(const std::array<GaussianRational, 3>& p,
                                             const std::array<GaussianRational, 3>& q) {
    return {p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
}

inline PlaneLine line_through(const PlanePoint& p, const PlanePoint& q) {
    auto c = cross(p.coords(), q.coords());
    if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero()) throw DegenerateGeometry("coincident plane points");
    return PlaneLine{ProjVec<3>(c)};
}

inline PlanePoint meet(const PlaneLine& l, const PlaneLine& m) {
    auto c = cross(l.coeffs.coords(), m.coeffs.coords());
    if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero()) throw DegenerateGeometry("coincident plane lines");
    return PlanePoint(c);
}

/// Basis of the right kernel of a k x 4 system, as coordinate vectors.
inline std::vector<std::array<GaussianRational, 4>> kernel4(const std::vector<std::array<GaussianRational, 4>>& rows) {
    ExactMatrix m(rows.size(), 4);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < 4; ++c) m(r, c) = rows[r][c];
    auto rk = rank_kernel(std::move(m));
    std::vector<std::array<GaussianRational, 4>> out;
    for (auto& v : rk.kernel) out.push_back({v[0], v[1], v[2], v[3]});
    return out;
}

/// Line in P^3: two spanning points, two defining linear forms, and the
/// normalized Plücker vector (p01, p02, p03, p12, p13, p23), which is the key
/// for equality.
class ProjLine {
public:
    static ProjLine through(const ProjPoint& p, const ProjPoint& q) {
        ProjLine l;
        l.init_from_points(p.coords(), q.coords());
        auto forms = kernel4({p.coords(), q.coords()});
        l.forms_ = {ProjVec<4>(forms.at(0)), ProjVec<4>(forms.at(1))};
        return l;
    }
    /// The line V(u, v) for two independent linear forms.
    static ProjLine from_forms(const ProjPlane& u, const ProjPlane& v) {
        auto pts = kernel4({u.coeffs.coords(), v.coeffs.coords()});
        if (pts.size() != 2) throw DegenerateGeometry("linear forms are dependent");
        ProjLine l;
        l.init_from_points(pts[0], pts[1]);
        l.forms_ = {u.coeffs, v.coeffs};
        return l;
    }
    static ProjLine from_forms(const MultiPoly& u, const MultiPoly& v) {
        return from_forms(plane_from_form(u), plane_from_form(v));
    }

    /// Plücker vector computed from the two defining forms (dual coordinates).
    std::array<GaussianRational, 6> plucker_from_forms() const {
        const auto& u = forms_[0].coords();
        const auto& v = forms_[1].coords();
        auto pi = [&](int i, int j) { return u[i] * v[j] - u[j] * v[i]; };
        std::array<GaussianRational, 6> p{pi(2, 3), -pi(1, 3), pi(1, 2), pi(0, 3), -pi(0, 2), pi(0, 1)};
        normalize_projective(p);
        return p;
    }

    const std::array<GaussianRational, 6>& plucker() const noexcept { return plucker_; }
    const std::array<ProjPoint, 2>& spanning_points() const noexcept { return points_; }
    const std::array<ProjVec<4>, 2>& forms() const noexcept { return forms_; }

    MultiPoly form(std::size_t k) const { return ProjPlane{forms_.at(k)}.form(); }

    bool contains(const ProjPoint& p) const {
        return forms_[0].dot(p).is_zero() && forms_[1].dot(p).is_zero();
    }
    bool lies_in(const ProjPlane& h) const { return h.contains(points_[0]) && h.contains(points_[1]); }

    /// Reciprocal Plücker product; zero iff the lines are coplanar.
    GaussianRational pairing(const ProjLine& o) const {
        const auto& p = plucker_;
        const auto& q = o.plucker_;
        return p[0] * q[5] - p[1] * q[4] + p[2] * q[3] + p[3] * q[2] - p[4] * q[1] + p[5] * q[0];
    }
    bool meets(const ProjLine& o) const { return pairing(o).is_zero(); }
    bool skew(const ProjLine& o) const { return !meets(o); }

    /// Common point of two distinct coplanar lines.
    ProjPoint intersection(const ProjLine& o) const {
        if (*this == o) throw DegenerateGeometry("intersection of a line with itself");
        auto k = kernel4({forms_[0].coords(), forms_[1].coords(), o.forms_[0].coords(), o.forms_[1].coords()});
        if (k.size() != 1) throw DegenerateGeometry("lines do not meet");
        return ProjPoint(k[0]);
    }

    /// Point where the line crosses a plane not containing it.
    ProjPoint intersection(const ProjPlane& h) const {
        GaussianRational hp = h.coeffs.dot(points_[0]);
        GaussianRational hq = h.coeffs.dot(points_[1]);
        if (hp.is_zero() && hq.is_zero()) throw DegenerateGeometry("line lies in the plane");
        std::array<GaussianRational, 4> r;
        for (std::size_t k = 0; k < 4; ++k) r[k] = hq * points_[0][k] - hp * points_[1][k];
        return ProjPoint(r);
    }

    bool satisfies_plucker_relation() const {
        const auto& p = plucker_;
        return (p[0] * p[5] - p[1] * p[4] + p[2] * p[3]).is_zero();
    }

    std::string plucker_str() const {
        std::string s = "(";
        for (std::size_t k = 0; k < 6; ++k) s += (k ? "," : "") + plucker_[k].str();
        return s + ")";
    }

    friend bool operator==(const ProjLine& a, const ProjLine& b) { return a.plucker_ == b.plucker_; }

    static ProjPlane plane_from_form(const MultiPoly& f) {
        if (!(f.context() == ctx::xyzw())) throw ContextMismatch("linear form must live in {x,y,z,w}");
        std::array<GaussianRational, 4> c;
        for (const auto& t : f.terms()) {
            if (t.mono.degree() != 1) throw std::invalid_argument("not a linear form: " + f.str());
            for (std::size_t k = 0; k < 4; ++k)
                if (t.mono.exponent(k)) c[k] = t.coeff;
        }
        return ProjPlane{ProjVec<4>(c)};
    }

private:
    void init_from_points(const std::array<GaussianRational, 4>& p, const std::array<GaussianRational, 4>& q) {
        auto m = [&](int i, int j) { return p[i] * q[j] - p[j] * q[i]; };
        plucker_ = {m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3)};
        if (!normalize_projective(plucker_)) throw DegenerateGeometry("points do not span a line");
        points_ = {ProjPoint(p), ProjPoint(q)};
    }

    std::array<GaussianRational, 6> plucker_{};
    std::array<ProjPoint, 2> points_{};
    std::array<ProjVec<4>, 2> forms_{};
};

/// Plücker key ordering, for maps keyed by lines.
struct PluckerLess {
    bool operator()(const std::array<GaussianRational, 6>& a, const std::array<GaussianRational, 6>& b) const {
        for (std::size_t k = 0; k < 6; ++k)
            if (auto c = a[k] <=> b[k]; c != 0) return c < 0;
        return false;
    }
};

/// Evaluates a form in {x,y,z,w} at a point.
inline GaussianRational evaluate(const MultiPoly& f, const ProjPoint& p) {
    return evaluate(f, std::span<const GaussianRational>(p.coords()));
}

inline GaussianRational evaluate(const MultiPoly& f, const PlanePoint& p) {
    return evaluate(f, std::span<const GaussianRational>(p.coords()));
}

}  // namespace klein

#endif  // KLEIN_GEOMETRY_HPP
