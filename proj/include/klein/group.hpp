#ifndef KLEIN_GROUP_HPP
#define KLEIN_GROUP_HPP

#include "geometry.hpp"
#include "matrix.hpp"
#include "poly.hpp"

#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace klein {

class GroupTooLarge : public std::runtime_error {
public:
    explicit GroupTooLarge(std::size_t cap)
        : std::runtime_error("group closure exceeded the size cap of " + std::to_string(cap) + " elements"),
          cap_(cap) {}
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

enum class GroupMode { linear, projective };

/// Invertible 4x4 matrix over Q(i).
class GroupElement {
public:
    explicit GroupElement(ExactMatrix m) : m_(std::move(m)) {
        if (m_.rows() != 4 || m_.cols() != 4) throw std::invalid_argument("group elements are 4x4");
        if (rank(m_) != 4) throw SingularMatrix();
    }
    static GroupElement identity() {
        return GroupElement(ExactMatrix::identity(4, GaussianRational(0), GaussianRational(1)));
    }
    /// Parses 16 row-major entries, each a constant expression such as "(1+i)/2"-free "1/2+1/2i".
    static GroupElement from_strings(const std::array<const char*, 16>& entries, const GaussianRational& scale = 1) {
        ExactMatrix m(4, 4);
        for (std::size_t k = 0; k < 16; ++k)
            m(k / 4, k % 4) = parse_poly(entries[k], VariableContext()).constant_value() * scale;
        return GroupElement(std::move(m));
    }

    const ExactMatrix& matrix() const noexcept { return m_; }
    const GaussianRational& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    GroupElement inverse() const { return GroupElement(klein::inverse(m_)); }

    /// Representative of the scalar class: first nonzero entry (row-major) equals 1.
    GroupElement projective_canonical() const {
        std::vector<GaussianRational> v = m_.data();
        normalize_projective(v);
        ExactMatrix m(4, 4);
        for (std::size_t k = 0; k < 16; ++k) m(k / 4, k % 4) = v[k];
        return GroupElement(std::move(m), Unchecked{});
    }
    bool projectively_equal(const GroupElement& o) const {
        return projective_canonical() == o.projective_canonical();
    }

    /// g * P.
    ProjPoint apply(const ProjPoint& p) const {
        std::array<GaussianRational, 4> r;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (!m_(i, j).is_zero() && !p[j].is_zero()) r[i] += m_(i, j) * p[j];
        return ProjPoint(r);
    }

    /// f(g X): substitutes the coordinates of g*(x,y,z,w) into f.
    MultiPoly act_on(const MultiPoly& f) const {
        const auto& c = ctx::xyzw();
        if (!(f.context() == c)) throw ContextMismatch("group elements act on forms in {x,y,z,w}");
        Assignment as;
        for (std::size_t i = 0; i < 4; ++i) {
            MultiPoly row(c);
            for (std::size_t j = 0; j < 4; ++j)
                row += MultiPoly::monomial(c, Monomial::variable(j), m_(i, j));
            as.emplace(c.name(i), std::move(row));
        }
        return substitute(f, as, c);
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t r = 0; r < 4; ++r) {
            s += r ? ",[" : "[";
            for (std::size_t c = 0; c < 4; ++c) s += (c ? "," : "") + std::string("\"") + m_(r, c).str() + "\"";
            s += "]";
        }
        return s + "]";
    }

    friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
        return GroupElement(a.m_ * b.m_, Unchecked{});
    }
    GroupElement operator-() const {
        ExactMatrix m = m_;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) m(r, c) = -m(r, c);
        return GroupElement(std::move(m), Unchecked{});
    }
    friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.m_ == b.m_; }

private:
    struct Unchecked {};
    GroupElement(ExactMatrix m, Unchecked) : m_(std::move(m)) {}

    ExactMatrix m_;
};

struct ElementKeyLess {
    bool operator()(const GroupElement& a, const GroupElement& b) const {
        const auto& x = a.matrix().data();
        const auto& y = b.matrix().data();
        for (std::size_t k = 0; k < x.size(); ++k)
            if (auto c = x[k] <=> y[k]; c != 0) return c < 0;
        return false;
    }
};

/// Finite matrix group stored as its full element list in breadth-first order.
/// In projective mode each element is the canonical representative of its scalar class.
struct MatrixGroup {
    std::vector<GroupElement> generators;
    std::vector<GroupElement> elements;
    GroupMode mode = GroupMode::linear;

    std::size_t order() const noexcept { return elements.size(); }

    bool contains(const GroupElement& g) const {
        GroupElement key = mode == GroupMode::projective ? g.projective_canonical() : g;
        for (const auto& e : elements)
            if (e == key) return true;
        return false;
    }
};

/// Breadth-first closure of the generators under right multiplication.
inline MatrixGroup generate_group(const std::vector<GroupElement>& generators, GroupMode mode, std::size_t cap = 100000) {
    MatrixGroup g;
    g.mode = mode;
    g.generators = generators;
    auto canon = [&](const GroupElement& e) { return mode == GroupMode::projective ? e.projective_canonical() : e; };
    std::map<GroupElement, std::size_t, ElementKeyLess> seen;
    std::deque<std::size_t> queue;
    GroupElement id = canon(GroupElement::identity());
    seen.emplace(id, 0);
    g.elements.push_back(id);
    queue.push_back(0);
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        for (const auto& s : generators) {
            GroupElement next = canon(g.elements[cur] * s);
            if (seen.count(next)) continue;
            if (g.elements.size() >= cap) throw GroupTooLarge(cap);
            seen.emplace(next, g.elements.size());
            queue.push_back(g.elements.size());
            g.elements.push_back(std::move(next));
        }
    }
    return g;
}

/// Elements commuting with every element.
inline std::vector<GroupElement> center(const MatrixGroup& g) {
    std::vector<GroupElement> out;
    for (const auto& a : g.elements) {
        bool central = true;
        for (const auto& b : g.generators)
            if (!(a * b == b * a)) {
                central = false;
                break;
            }
        if (central) out.push_back(a);
    }
    return out;
}

/// Subgroup generated by all commutators a b a^-1 b^-1 (linear mode).
inline MatrixGroup commutator_subgroup(const MatrixGroup& g) {
    std::map<GroupElement, int, ElementKeyLess> comms;
    std::vector<GroupElement> inv;
    inv.reserve(g.elements.size());
    for (const auto& a : g.elements) inv.push_back(a.inverse());
    for (std::size_t i = 0; i < g.elements.size(); ++i)
        for (std::size_t j = 0; j < g.elements.size(); ++j)
            comms.emplace(g.elements[i] * g.elements[j] * inv[i] * inv[j], 0);
    std::vector<GroupElement> gens;
    for (auto& [c, unused] : comms) gens.push_back(c);
    return generate_group(gens, GroupMode::linear, g.elements.size());
}

/// Orbit of a form under a set of elements: images f(gX), normalized, in
/// order of first appearance.
inline std::vector<MultiPoly> orbit(const std::vector<GroupElement>& elements, const MultiPoly& f) {
    std::vector<MultiPoly> out;
    for (const auto& g : elements) {
        MultiPoly img = g.act_on(f).normalized();
        bool known = false;
        for (const auto& o : out)
            if (o == img) {
                known = true;
                break;
            }
        if (!known) out.push_back(std::move(img));
    }
    return out;
}

inline std::vector<MultiPoly> orbit(const MatrixGroup& g, const MultiPoly& f) { return orbit(g.elements, f); }

/// Orbit under the cyclic group generated by one element: f, g.f, g.g.f, ...
inline std::vector<MultiPoly> cyclic_orbit(const GroupElement& g, const MultiPoly& f, std::size_t cap = 1000) {
    std::vector<MultiPoly> out{f.normalized()};
    while (out.size() <= cap) {
        MultiPoly next = g.act_on(out.back()).normalized();
        if (next == out.front()) return out;
        for (const auto& o : out)
            if (o == next) throw std::logic_error("cyclic orbit re-entered a non-initial element");
        out.push_back(std::move(next));
    }
    throw GroupTooLarge(cap);
}

/// Permutation induced on a point list, or std::nullopt if some image leaves the list.
inline std::optional<std::vector<std::size_t>> induced_permutation(const GroupElement& g, const std::vector<ProjPoint>& pts) {
    std::map<ProjPoint, std::size_t> index;
    for (std::size_t k = 0; k < pts.size(); ++k) index.emplace(pts[k], k);
    std::vector<std::size_t> perm;
    perm.reserve(pts.size());
    for (const auto& p : pts) {
        auto it = index.find(g.apply(p));
        if (it == index.end()) return std::nullopt;
        perm.push_back(it->second);
    }
    return perm;
}

namespace data {
inline constexpr std::array<const char*, 16> kS1{"0", "0", "1", "0", "0", "0", "0", "1", "1", "0", "0", "0", "0", "1", "0", "0"};
inline constexpr std::array<const char*, 16> kS2{"0", "1", "0", "0", "1", "0", "0", "0", "0", "0", "0", "1", "0", "0", "1", "0"};
inline constexpr std::array<const char*, 16> kT1{"1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "-1", "0", "0", "0", "0", "-1"};
inline constexpr std::array<const char*, 16> kT2{"1", "0", "0", "0", "0", "-1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "-1"};
// T = (1+i)/2 * kTBody
inline constexpr std::array<const char*, 16> kTBody{"-i", "0", "0", "i", "0", "1", "1", "0", "1", "0", "0", "1", "0", "-i", "i", "0"};
}  // namespace data

struct HeisenbergGenerators {
    GroupElement s1, s2, t1, t2;
    std::vector<GroupElement> list() const { return {s1, s2, t1, t2}; }
};

inline HeisenbergGenerators heisenberg_generators() {
    return {GroupElement::from_strings(data::kS1), GroupElement::from_strings(data::kS2),
            GroupElement::from_strings(data::kT1), GroupElement::from_strings(data::kT2)};
}

inline GroupElement klein_t() {
    return GroupElement::from_strings(data::kTBody, GaussianRational(mpq_class(1, 2), mpq_class(1, 2)));
}

/// S1, S2, T1, T2, T.
inline std::vector<GroupElement> g80_generators() {
    auto h = heisenberg_generators().list();
    h.push_back(klein_t());
    return h;
}

}  // namespace klein

#endif  // KLEIN_GROUP_HPP
