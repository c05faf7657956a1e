#ifndef KLEIN_INTERPOLATION_HPP
#define KLEIN_INTERPOLATION_HPP

#include "geometry.hpp"
#include "klein_config.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "sampling.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace klein {

namespace data {
// Degree-6 generators of the ideal of the 60 points.
inline constexpr std::array<const char*, 24> kGenerators{
    "xy(x^4-y^4)",         "xz(z^4-x^4)",         "xw(x^4-w^4)",         "yz(y^4-z^4)",
    "yw(w^4-y^4)",         "zw(z^4-w^4)",         "xy(z^4-w^4)",         "xz(y^4-w^4)",
    "xw(y^4-z^4)",         "yz(x^4-w^4)",         "yw(x^4-z^4)",         "zw(x^4-y^4)",
    "yw(x^2y^2-z^2w^2)",   "xw(x^2y^2-z^2w^2)",   "yz(x^2y^2-z^2w^2)",   "xz(x^2y^2-z^2w^2)",
    "zw(x^2z^2-y^2w^2)",   "xw(x^2z^2-y^2w^2)",   "yz(x^2z^2-y^2w^2)",   "xy(x^2z^2-y^2w^2)",
    "zw(y^2z^2-x^2w^2)",   "yw(y^2z^2-x^2w^2)",   "xz(y^2z^2-x^2w^2)",   "xy(y^2z^2-x^2w^2)",
};

// Extra sextics through the 56 non-coordinate points.
inline constexpr std::array<const char*, 4> kExtraGenerators{
    "2x^2y^2z^2-x^4w^2-y^4w^2-z^4w^2+w^6",
    "2x^2y^2w^2-x^4z^2-y^4z^2-w^4z^2+z^6",
    "2x^2z^2w^2-x^4y^2-z^4y^2-w^4y^2+y^6",
    "2y^2z^2w^2-y^4x^2-z^4x^2-w^4x^2+x^6",
};

// Cone of degree 6 with vertex (a:b:c:d), bihomogeneous of bidegree (6,6).
inline constexpr std::array<const char*, 24> kConeSummands{
    "xy(x^4-y^4)cd(c^4-d^4)",
    "xz(z^4-x^4)bd(b^4-d^4)",
    "xw(x^4-w^4)bc(b^4-c^4)",
    "yz(y^4-z^4)ad(a^4-d^4)",
    "yw(w^4-y^4)ac(a^4-c^4)",
    "zw(z^4-w^4)ab(a^4-b^4)",
    "5xy(z^4-w^4)cd(a^4-b^4)",
    "5xz(y^4-w^4)bd(c^4-a^4)",
    "5xw(y^4-z^4)bc(a^4-d^4)",
    "5yz(x^4-w^4)ad(b^4-c^4)",
    "5yw(x^4-z^4)ac(d^4-b^4)",
    "5zw(x^4-y^4)ab(c^4-d^4)",
    "10yw(x^2y^2-z^2w^2)ac(c^2d^2-a^2b^2)",
    "10xw(x^2y^2-z^2w^2)bc(a^2b^2-c^2d^2)",
    "10yz(x^2y^2-z^2w^2)ad(a^2b^2-c^2d^2)",
    "10xz(x^2y^2-z^2w^2)bd(c^2d^2-a^2b^2)",
    "10zw(x^2z^2-y^2w^2)ab(a^2c^2-b^2d^2)",
    "10xw(x^2z^2-y^2w^2)bc(b^2d^2-a^2c^2)",
    "10yz(x^2z^2-y^2w^2)ad(b^2d^2-a^2c^2)",
    "10xy(x^2z^2-y^2w^2)cd(a^2c^2-b^2d^2)",
    "10zw(y^2z^2-x^2w^2)ab(a^2d^2-b^2c^2)",
    "10yw(y^2z^2-x^2w^2)ac(b^2c^2-a^2d^2)",
    "10xz(y^2z^2-x^2w^2)bd(b^2c^2-a^2d^2)",
    "10xy(y^2z^2-x^2w^2)cd(a^2d^2-b^2c^2)",
};
}  // namespace data

inline std::vector<MultiPoly> ideal_generators() {
    std::vector<MultiPoly> g;
    for (const char* s : data::kGenerators) g.push_back(parse_poly(s, ctx::xyzw()));
    return g;
}

inline std::vector<MultiPoly> extra_generators() {
    std::vector<MultiPoly> g;
    for (const char* s : data::kExtraGenerators) g.push_back(parse_poly(s, ctx::xyzw()));
    return g;
}

// ---------------------------------------------------------------------------
// Variable-block helpers for the union context {x,y,z,w,a,b,c,d}.

/// Relabels a polynomial to a context of the same size (x->a, y->b, ...).
inline MultiPoly relabel(const MultiPoly& p, const VariableContext& target) {
    if (p.context().size() != target.size()) throw ContextMismatch("relabel needs contexts of equal size");
    return MultiPoly::from_terms(target, p.terms());
}

/// Sets the variables first .. first+values.size()-1 to scalars; the remaining
/// variables become those of `target`, in order.
inline MultiPoly evaluate_block(const MultiPoly& p, std::size_t first, std::span<const GaussianRational> values,
                                const VariableContext& target) {
    const std::size_t k = values.size();
    const std::size_t n = p.context().size();
    if (first + k > n || n - k != target.size()) throw ContextMismatch("block evaluation: variable count mismatch");
    std::vector<Term> out;
    out.reserve(p.size());
    std::vector<unsigned> e(target.size());
    for (const auto& t : p.terms()) {
        GaussianRational c = t.coeff;
        for (std::size_t v = 0; v < k && !c.is_zero(); ++v) {
            unsigned ex = t.mono.exponent(first + v);
            for (unsigned j = 0; j < ex; ++j) c *= values[v];
        }
        if (c.is_zero()) continue;
        std::size_t o = 0;
        for (std::size_t v = 0; v < n; ++v)
            if (v < first || v >= first + k) e[o++] = t.mono.exponent(v);
        out.push_back({Monomial::from_exponents(e), std::move(c)});
    }
    return MultiPoly::from_terms(target, std::move(out));
}

inline MultiPoly evaluate_leading(const MultiPoly& p, std::span<const GaussianRational> values,
                                  const VariableContext& target) {
    return evaluate_block(p, 0, values, target);
}

/// For p in {x,y,z,w,a,b,c,d}: the polynomial in {a,b,c,d} obtained by x->a, y->b, z->c, w->d.
inline MultiPoly restrict_to_diagonal(const MultiPoly& p) {
    if (!(p.context() == ctx::xyzw_abcd())) throw ContextMismatch("diagonal restriction needs {x,y,z,w,a,b,c,d}");
    std::vector<Term> out;
    out.reserve(p.size());
    std::array<unsigned, 4> e{};
    for (const auto& t : p.terms()) {
        for (std::size_t v = 0; v < 4; ++v) e[v] = t.mono.exponent(v) + t.mono.exponent(v + 4);
        out.push_back({Monomial::from_exponents(e), t.coeff});
    }
    return MultiPoly::from_terms(ctx::abcd(), std::move(out));
}

/// Interchanges the blocks {x,y,z,w} and {a,b,c,d}.
inline MultiPoly swap_blocks(const MultiPoly& p) {
    if (!(p.context() == ctx::xyzw_abcd())) throw ContextMismatch("block swap needs {x,y,z,w,a,b,c,d}");
    std::vector<Term> out;
    out.reserve(p.size());
    std::array<unsigned, 8> e{};
    for (const auto& t : p.terms()) {
        for (std::size_t v = 0; v < 4; ++v) {
            e[v] = t.mono.exponent(v + 4);
            e[v + 4] = t.mono.exponent(v);
        }
        out.push_back({Monomial::from_exponents(e), t.coeff});
    }
    return MultiPoly::from_terms(ctx::xyzw_abcd(), std::move(out));
}

// ---------------------------------------------------------------------------
// Linear systems.

/// Rows: points; columns: degree-d monomials in x,y,z,w (descending grlex).
inline ExactMatrix evaluation_matrix(const std::vector<ProjPoint>& points, unsigned degree) {
    auto monos = monomials_of_degree(4, degree);
    ExactMatrix m(points.size(), monos.size());
    for (std::size_t r = 0; r < points.size(); ++r)
        for (std::size_t c = 0; c < monos.size(); ++c)
            m(r, c) = evaluate(MultiPoly::monomial(ctx::xyzw(), monos[c], GaussianRational(1)), points[r]);
    return m;
}

/// Rows: polynomials; columns: the given monomials.
inline ExactMatrix coefficient_matrix(const std::vector<MultiPoly>& polys, const std::vector<Monomial>& monos) {
    ExactMatrix m(polys.size(), monos.size());
    for (std::size_t r = 0; r < polys.size(); ++r)
        for (std::size_t c = 0; c < monos.size(); ++c) m(r, c) = polys[r].coefficient(monos[c]);
    return m;
}

/// Dimension of the span of homogeneous forms of a common degree.
inline std::size_t span_dimension(const std::vector<MultiPoly>& forms) {
    if (forms.empty()) return 0;
    const auto& c = forms.front().context();
    auto monos = monomials_of_degree(c.size(), unsigned(std::max(0, forms.front().total_degree())));
    return rank(coefficient_matrix(forms, monos));
}

inline bool in_span(const std::vector<MultiPoly>& basis, const MultiPoly& f) {
    auto ext = basis;
    ext.push_back(f);
    return span_dimension(ext) == span_dimension(basis);
}

struct LinearSystem {
    unsigned degree = 0;
    std::vector<ProjPoint> base;
    std::vector<MultiPoly> basis;
    std::size_t conditions_rank = 0;

    std::size_t dimension() const noexcept { return basis.size(); }
};

/// Forms of the given degree vanishing at every point.
inline LinearSystem forms_through(const std::vector<ProjPoint>& points, unsigned degree) {
    if (degree == 0) throw std::invalid_argument("forms_through needs degree >= 1");
    LinearSystem sys;
    sys.degree = degree;
    sys.base = points;
    auto monos = monomials_of_degree(4, degree);
    auto rk = rank_kernel(evaluation_matrix(points, degree));
    sys.conditions_rank = rk.rank;
    for (const auto& v : rk.kernel) {
        std::vector<Term> terms;
        for (std::size_t c = 0; c < monos.size(); ++c)
            if (!v[c].is_zero()) terms.push_back({monos[c], v[c]});
        sys.basis.push_back(MultiPoly::from_terms(ctx::xyzw(), std::move(terms)).normalized());
    }
    return sys;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

/// Number of conditions imposed by a point of multiplicity m in P^3.
inline std::size_t fat_point_condition_count(unsigned m) { return binomial(m + 2, 3); }

/// The order-(m-1) partials of the basis forms (all C(m+2,3) of them; by Euler's
/// relation they also force the lower orders). Rows: partials in descending
/// grlex order of the multi-index; columns: basis forms.
inline std::vector<std::vector<MultiPoly>> fat_point_partials(const std::vector<MultiPoly>& basis, unsigned m) {
    if (m == 0) throw std::invalid_argument("multiplicity must be at least 1");
    std::vector<std::vector<MultiPoly>> rows;
    for (const auto& alpha : monomials_of_degree(4, m - 1)) {
        std::vector<MultiPoly> row;
        row.reserve(basis.size());
        for (const auto& f : basis) {
            if (f.total_degree() >= 0 && unsigned(f.total_degree()) < m - 1)
                throw std::invalid_argument("multiplicity exceeds degree + 1");
            row.push_back(partial(f, alpha));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Conditions for multiplicity m at a concrete point.
inline ExactMatrix fatpoint_conditions(const std::vector<MultiPoly>& basis, const ProjPoint& p, unsigned m) {
    auto parts = fat_point_partials(basis, m);
    ExactMatrix out(parts.size(), basis.size());
    for (std::size_t r = 0; r < parts.size(); ++r)
        for (std::size_t c = 0; c < basis.size(); ++c) out(r, c) = evaluate(parts[r][c], p);
    return out;
}

/// Conditions for multiplicity m at the symbolic point (a:b:c:d); entries in Q(i)[a,b,c,d].
inline PolyMatrix fatpoint_conditions_symbolic(const std::vector<MultiPoly>& basis, unsigned m) {
    auto parts = fat_point_partials(basis, m);
    PolyMatrix out(parts.size(), basis.size(), MultiPoly(ctx::abcd()));
    for (std::size_t r = 0; r < parts.size(); ++r)
        for (std::size_t c = 0; c < basis.size(); ++c) out(r, c) = relabel(parts[r][c], ctx::abcd());
    return out;
}

/// Stacks the conditions of several fat points.
inline ExactMatrix stacked_conditions(const std::vector<MultiPoly>& basis,
                                      const std::vector<std::pair<ProjPoint, unsigned>>& fat) {
    ExactMatrix m(0, basis.size());
    for (const auto& [p, mult] : fat) m.append_rows(fatpoint_conditions(basis, p, mult));
    return m;
}

/// Combination sum_k v[k] * basis[k].
inline MultiPoly combine(const std::vector<MultiPoly>& basis, const std::vector<GaussianRational>& v) {
    MultiPoly f(basis.empty() ? ctx::xyzw() : basis.front().context());
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (!v[k].is_zero()) f += basis[k] * v[k];
    return f;
}

/// Multiplicity of a form at a point: smallest order with a nonvanishing partial
/// (capped at degree + 1 for the zero form).
inline unsigned multiplicity_at(const MultiPoly& f, const ProjPoint& p) {
    const unsigned deg = unsigned(std::max(0, f.total_degree()));
    for (unsigned order = 0; order <= deg; ++order)
        for (const auto& alpha : monomials_of_degree(4, order))
            if (!evaluate(partial(f, alpha), p).is_zero()) return order;
    return deg + 1;
}

// ---------------------------------------------------------------------------
// Unexpectedness.

struct UnexpectednessReport {
    unsigned degree = 0;
    std::vector<unsigned> multiplicities;
    std::size_t base_dimension = 0;   // forms of this degree through Z
    std::size_t condition_count = 0;  // sum of C(m+2,3)
    std::size_t actual = 0;
    std::size_t expected = 0;
    std::vector<std::size_t> actual_per_seed;
    std::vector<std::vector<ProjPoint>> points_per_seed;
    bool seeds_agree = true;

    bool unexpected() const { return seeds_agree && actual > expected; }
};

/// Dimension of forms of `degree` through Z with general fat points of the given
/// multiplicities, computed at `seeds` independent specializations.
inline UnexpectednessReport verify_unexpected(const std::vector<ProjPoint>& Z, unsigned degree,
                                              const std::vector<unsigned>& mults, std::uint64_t seed,
                                              const KleinConfiguration* config = nullptr, std::size_t seeds = 3) {
    UnexpectednessReport rep;
    rep.degree = degree;
    rep.multiplicities = mults;
    LinearSystem sys = forms_through(Z, degree);
    rep.base_dimension = sys.dimension();
    for (unsigned m : mults) rep.condition_count += fat_point_condition_count(m);
    rep.expected = rep.base_dimension > rep.condition_count ? rep.base_dimension - rep.condition_count : 0;
    for (std::size_t s = 0; s < seeds; ++s) {
        PointSampler sampler(splitmix64(seed + s), config);
        std::vector<std::pair<ProjPoint, unsigned>> fat;
        std::vector<ProjPoint> pts;
        for (unsigned m : mults) {
            ProjPoint p = sampler.next();
            for (const auto& z : Z)
                if (z == p) throw std::logic_error("sampled point lies in Z");
            fat.emplace_back(p, m);
            pts.push_back(p);
        }
        std::size_t dim = sys.dimension();
        if (dim > 0 && !fat.empty()) dim -= rank(stacked_conditions(sys.basis, fat));
        rep.actual_per_seed.push_back(dim);
        rep.points_per_seed.push_back(std::move(pts));
    }
    rep.actual = rep.actual_per_seed.empty() ? sys.dimension() : rep.actual_per_seed.front();
    for (auto d : rep.actual_per_seed) rep.seeds_agree = rep.seeds_agree && d == rep.actual;
    return rep;
}

// ---------------------------------------------------------------------------
// The cone F.

inline MultiPoly cone_f() {
    MultiPoly f(ctx::xyzw_abcd());
    for (const char* s : data::kConeSummands) f += parse_poly(s, ctx::xyzw_abcd());
    return f;
}

/// Coefficients c_k(a,b,c,d) with F = sum_k g_k(x,y,z,w) c_k(a,b,c,d), found by
/// solving on a set of pivot monomials and then re-checked as an exact identity.
/// Returns std::nullopt if F is not in the span of the generators.
inline std::optional<std::vector<MultiPoly>> cone_coefficients(const MultiPoly& F, const std::vector<MultiPoly>& gens) {
    auto monos = monomials_of_degree(4, 6);
    ExactMatrix g = coefficient_matrix(gens, monos);  // 24 x 84
    // Pivot columns pick 24 monomials on which the generators are independent.
    auto rk = rank_kernel(g);
    if (rk.rank != gens.size()) throw std::invalid_argument("generators are dependent");
    ExactMatrix sq(gens.size(), gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k)
        for (std::size_t r = 0; r < gens.size(); ++r) sq(k, r) = g(r, rk.pivot_columns[k]);
    ExactMatrix inv = inverse(sq);  // sum_r sq(k,r) c_r = F_k
    // F_k: coefficient of x-monomial k in F, a polynomial in a,b,c,d.
    std::vector<MultiPoly> fk(gens.size(), MultiPoly(ctx::abcd()));
    std::vector<Term> buf;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const Monomial& xm = monos[rk.pivot_columns[k]];
        buf.clear();
        std::array<unsigned, 4> e{};
        for (const auto& t : F.terms()) {
            bool match = true;
            for (std::size_t v = 0; v < 4; ++v) match = match && t.mono.exponent(v) == xm.exponent(v);
            if (!match) continue;
            for (std::size_t v = 0; v < 4; ++v) e[v] = t.mono.exponent(v + 4);
            buf.push_back({Monomial::from_exponents(e), t.coeff});
        }
        fk[k] = MultiPoly::from_terms(ctx::abcd(), buf);
    }
    std::vector<MultiPoly> c(gens.size(), MultiPoly(ctx::abcd()));
    for (std::size_t r = 0; r < gens.size(); ++r)
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (!inv(r, k).is_zero()) c[r] += fk[k] * inv(r, k);
    MultiPoly check(ctx::xyzw_abcd());
    for (std::size_t r = 0; r < gens.size(); ++r)
        check += embed(gens[r], ctx::xyzw_abcd()) * embed(c[r], ctx::xyzw_abcd());
    if (!(check == F)) return std::nullopt;
    return c;
}

struct ConeCertificate {
    std::size_t points_checked = 0;
    std::vector<std::size_t> points_failing;  // indices where F(P_i; a,b,c,d) != 0
    std::size_t vertex_partials_checked = 0;
    std::vector<std::string> vertex_partials_failing;  // multi-indices
    bool bihomogeneous_6_6 = false;
    bool swap_symmetric = false;
    bool in_generator_span = false;
    std::vector<MultiPoly> coefficients;  // c_k(a,b,c,d)

    bool ok() const {
        return points_failing.empty() && vertex_partials_failing.empty() && bihomogeneous_6_6 && swap_symmetric &&
               in_generator_span;
    }
};

/// Exact identity checks for F: vanishing at every point of Z identically in
/// (a,b,c,d), all order-5 partials in (x,y,z,w) vanishing on the diagonal
/// (multiplicity 6 at the vertex), bidegree, block-swap symmetry.
inline ConeCertificate certify_cone(const MultiPoly& F, const std::vector<ProjPoint>& Z) {
    ConeCertificate cert;
    for (std::size_t i = 0; i < Z.size(); ++i) {
        ++cert.points_checked;
        if (!evaluate_leading(F, Z[i].coords(), ctx::abcd()).is_zero()) cert.points_failing.push_back(i);
    }
    for (const auto& alpha : monomials_of_degree(4, 5)) {
        ++cert.vertex_partials_checked;
        if (!restrict_to_diagonal(partial(F, alpha)).is_zero())
            cert.vertex_partials_failing.push_back(MultiPoly::monomial(ctx::xyzw(), alpha, GaussianRational(1)).str());
    }
    cert.bihomogeneous_6_6 = !F.is_zero();
    for (const auto& t : F.terms()) {
        unsigned dx = 0, da = 0;
        for (std::size_t v = 0; v < 4; ++v) {
            dx += t.mono.exponent(v);
            da += t.mono.exponent(v + 4);
        }
        cert.bihomogeneous_6_6 = cert.bihomogeneous_6_6 && dx == 6 && da == 6;
    }
    cert.swap_symmetric = swap_blocks(F) == F;
    if (auto c = cone_coefficients(F, ideal_generators())) {
        cert.in_generator_span = true;
        cert.coefficients = *std::move(c);
    }
    return cert;
}

/// F at a concrete vertex, as a sextic in x,y,z,w.
inline MultiPoly cone_at(const MultiPoly& F, const ProjPoint& vertex) {
    // Move the a,b,c,d block to the front, then evaluate it.
    return evaluate_leading(swap_blocks(F), vertex.coords(), ctx::xyzw());
}

// ---------------------------------------------------------------------------
// Generic rank of the multiplicity-4 conditions.

struct SymbolicRankCertificate {
    std::size_t rows = 0, cols = 0;
    std::size_t rank = 0;                  // generic rank by fraction-free elimination over Q(i)[a,b,c,d]
    std::size_t specialization_rank = 0;   // lower bound
    std::size_t kernel_witnesses = 0;      // number of symbolic kernel vectors supplied
    std::size_t witness_rank = 0;          // their rank at the specialization (lower bound on kernel dim)
    bool witnesses_annihilated = false;    // M * v == 0 exactly for every witness
    ProjPoint specialization;
    /// The elimination result agrees with the independent bounds.
    bool ok() const {
        return witnesses_annihilated && specialization_rank == rank && specialization_rank + witness_rank == cols;
    }
};

/// Generic rank of a polynomial matrix M over Q(i)(a,b,c,d), by symbolic
/// elimination, cross-checked by two bounds: rank >= rank of a specialization,
/// and rank <= cols - (rank of the supplied symbolic kernel vectors, which is at
/// least their rank at the same specialization).
inline SymbolicRankCertificate certify_generic_rank(const PolyMatrix& M, const std::vector<std::vector<MultiPoly>>& witnesses,
                                                    const ProjPoint& at) {
    SymbolicRankCertificate cert;
    cert.rows = M.rows();
    cert.cols = M.cols();
    cert.specialization = at;
    cert.specialization_rank = rank(specialize(M, at.coords()));
    cert.kernel_witnesses = witnesses.size();
    cert.witnesses_annihilated = true;
    for (const auto& v : witnesses)
        for (const auto& e : multiply(M, v))
            if (!e.is_zero()) cert.witnesses_annihilated = false;
    if (!witnesses.empty()) {
        ExactMatrix w(M.cols(), witnesses.size());
        for (std::size_t j = 0; j < witnesses.size(); ++j)
            for (std::size_t i = 0; i < M.cols(); ++i) w(i, j) = evaluate(witnesses[j][i], at.coords());
        cert.witness_rank = rank(w);
    }
    cert.rank = rank(M);
    return cert;
}

/// The second derivatives in (a,b,c,d) of the cone coefficients. Since F has
/// multiplicity 6 at its vertex for every vertex, each second derivative has
/// multiplicity at least 4 there, so these are kernel vectors of the symbolic
/// multiplicity-4 matrix.
inline std::vector<std::vector<MultiPoly>> cone_second_derivatives(const std::vector<MultiPoly>& coefficients) {
    std::vector<std::vector<MultiPoly>> out;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j) {
            std::vector<MultiPoly> v;
            for (const auto& c : coefficients) v.push_back(partial(partial(c, i), j));
            out.push_back(std::move(v));
        }
    return out;
}

struct Sextic422 {
    ProjPoint p, q1, q2;
    std::size_t rank = 0;          // of the (20 + 4 + 4) x 24 system
    std::size_t kernel_dim = 0;
    bool degenerate = false;       // coincident points or rank drop
    std::optional<MultiPoly> sextic;  // only when unique
    std::vector<GaussianRational> coefficients;  // with respect to the 24 generators
};

/// Sextics through Z with multiplicity 4 at p and 2 at q1, q2.
inline Sextic422 sextic_422(const std::vector<MultiPoly>& gens, const ProjPoint& p, const ProjPoint& q1,
                            const ProjPoint& q2) {
    Sextic422 out{p, q1, q2};
    ExactMatrix m = stacked_conditions(gens, {{p, 4}, {q1, 2}, {q2, 2}});
    auto rk = rank_kernel(m);
    out.rank = rk.rank;
    out.kernel_dim = rk.kernel.size();
    out.degenerate = p == q1 || p == q2 || q1 == q2 || out.rank != gens.size() - 1;
    if (!out.degenerate) {
        out.coefficients = rk.kernel.front();
        normalize_projective(out.coefficients);
        out.sextic = combine(gens, out.coefficients);
    }
    return out;
}

struct Mult422Certificate {
    SymbolicRankCertificate symbolic;
    std::vector<Sextic422> samples;
    std::vector<bool> sample_multiplicities_ok;
    bool ok() const {
        if (!symbolic.ok() || symbolic.rank != 15 || samples.empty()) return false;
        for (std::size_t k = 0; k < samples.size(); ++k)
            if (samples[k].degenerate || samples[k].kernel_dim != 1 || !sample_multiplicities_ok[k]) return false;
        return true;
    }
};

inline Mult422Certificate verify_mult_sequence_422(std::uint64_t seed, const KleinConfiguration& config,
                                                   std::size_t seeds = 3) {
    Mult422Certificate cert;
    auto gens = ideal_generators();
    auto cone = certify_cone(cone_f(), config.points);
    PointSampler sp(splitmix64(seed), &config);
    cert.symbolic = certify_generic_rank(fatpoint_conditions_symbolic(gens, 4),
                                         cone_second_derivatives(cone.coefficients), sp.next());
    for (std::size_t s = 0; s < seeds; ++s) {
        PointSampler sampler(splitmix64(seed + 1 + s), &config);
        ProjPoint p = sampler.next(), q1 = sampler.next(), q2 = sampler.next();
        Sextic422 sx = sextic_422(gens, p, q1, q2);
        bool mult_ok = false;
        if (sx.sextic) {
            mult_ok = multiplicity_at(*sx.sextic, p) >= 4 && multiplicity_at(*sx.sextic, q1) >= 2 &&
                      multiplicity_at(*sx.sextic, q2) >= 2;
            for (const auto& z : config.points) mult_ok = mult_ok && evaluate(*sx.sextic, z).is_zero();
        }
        cert.samples.push_back(std::move(sx));
        cert.sample_multiplicities_ok.push_back(mult_ok);
    }
    return cert;
}

struct ConeUnexpectedness {
    SymbolicRankCertificate symbolic;  // multiplicity-6 conditions at (a:b:c:d)
    std::size_t base_dimension = 0;
    std::size_t actual = 0;
    std::size_t expected = 0;
    bool ok() const { return symbolic.ok() && actual == 1 && expected == 0; }
    bool unexpected() const { return actual > expected; }
};

/// Sextics through the 60 points with a point of multiplicity 6 at the general
/// point (a:b:c:d): exactly one (the cone), where none are expected.
inline ConeUnexpectedness verify_cone_unexpected(std::uint64_t seed, const KleinConfiguration& config,
                                                 const std::vector<MultiPoly>& cone_coefficients) {
    ConeUnexpectedness out;
    auto gens = ideal_generators();
    out.base_dimension = gens.size();
    PointSampler sp(splitmix64(seed), &config);
    out.symbolic = certify_generic_rank(fatpoint_conditions_symbolic(gens, 6), {cone_coefficients}, sp.next());
    out.actual = gens.size() - out.symbolic.rank;
    const std::size_t cond = fat_point_condition_count(6);
    out.expected = out.base_dimension > cond ? out.base_dimension - cond : 0;
    return out;
}

/// Stability of a linear system under a set of coordinate changes: each image
/// f(gX) of a basis form lies in the span of the basis.
template <class Elements>
bool group_stable(const std::vector<MultiPoly>& basis, const Elements& elements) {
    const std::size_t dim = span_dimension(basis);
    for (const auto& g : elements) {
        auto ext = basis;
        for (const auto& f : basis) ext.push_back(g.act_on(f));
        if (span_dimension(ext) != dim) return false;
    }
    return true;
}

}  // namespace klein

#endif  // KLEIN_INTERPOLATION_HPP
