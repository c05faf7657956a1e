#ifndef KLEIN_POLY_HPP
#define KLEIN_POLY_HPP

#include "gaussian_rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace klein {

class ContextMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Ordered list of variable names. Polynomials only combine inside one context;
/// moving between contexts goes through embed() or substitute().
class VariableContext {
public:
    static constexpr std::size_t kMaxVars = 8;

    VariableContext() : names_(std::make_shared<const std::vector<std::string>>()) {}
    explicit VariableContext(std::vector<std::string> names) {
        if (names.size() > kMaxVars) throw std::invalid_argument("at most 8 variables per context");
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i].empty()) throw std::invalid_argument("empty variable name");
            for (std::size_t j = 0; j < i; ++j)
                if (names[i] == names[j]) throw std::invalid_argument("duplicate variable " + names[i]);
        }
        names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
    }

    std::size_t size() const noexcept { return names_->size(); }
    const std::string& name(std::size_t i) const { return names_->at(i); }
    const std::vector<std::string>& names() const noexcept { return *names_; }

    std::optional<std::size_t> index_of(std::string_view n) const {
        for (std::size_t i = 0; i < names_->size(); ++i)
            if ((*names_)[i] == n) return i;
        return std::nullopt;
    }
    bool contains(std::string_view n) const { return index_of(n).has_value(); }

    /// Variables of *this followed by those of `other` not already present.
    VariableContext union_with(const VariableContext& other) const {
        std::vector<std::string> v = *names_;
        for (const auto& n : other.names())
            if (!contains(n)) v.push_back(n);
        return VariableContext(std::move(v));
    }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < size(); ++i) s += (i ? "," : "") + name(i);
        return s + "}";
    }

    friend bool operator==(const VariableContext& a, const VariableContext& b) {
        return a.names_ == b.names_ || *a.names_ == *b.names_;
    }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

namespace ctx {
inline const VariableContext& xyzw() {
    static const VariableContext c({"x", "y", "z", "w"});
    return c;
}
inline const VariableContext& abcd() {
    static const VariableContext c({"a", "b", "c", "d"});
    return c;
}
inline const VariableContext& stu() {
    static const VariableContext c({"s", "t", "u"});
    return c;
}
inline const VariableContext& xyzw_abcd() {
    static const VariableContext c({"x", "y", "z", "w", "a", "b", "c", "d"});
    return c;
}
inline const VariableContext& stu_abcd() {
    static const VariableContext c({"s", "t", "u", "a", "b", "c", "d"});
    return c;
}
}  // namespace ctx

/// Exponent vector of up to 8 variables, one byte each. Variable 0 sits in the
/// most significant byte so that comparing the packed words is lex order.
class Monomial {
public:
    constexpr Monomial() = default;

    static Monomial from_exponents(std::span<const unsigned> e) {
        if (e.size() > VariableContext::kMaxVars) throw std::invalid_argument("too many exponents");
        Monomial m;
        unsigned deg = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] > 255) throw std::overflow_error("exponent exceeds 255");
            m.packed_ |= std::uint64_t(e[i]) << shift(i);
            deg += e[i];
        }
        if (deg > 255) throw std::overflow_error("total degree exceeds 255");
        m.degree_ = deg;
        return m;
    }
    static Monomial variable(std::size_t var, unsigned power = 1) {
        std::array<unsigned, 8> e{};
        e.at(var) = power;
        return from_exponents(std::span<const unsigned>(e.data(), var + 1));
    }

    unsigned exponent(std::size_t var) const { return unsigned((packed_ >> shift(var)) & 0xffu); }
    unsigned degree() const noexcept { return degree_; }
    std::uint64_t packed() const noexcept { return packed_; }

    Monomial with_exponent(std::size_t var, unsigned e) const {
        Monomial m = *this;
        unsigned old = exponent(var);
        if (e > 255 || degree_ - old + e > 255) throw std::overflow_error("degree exceeds 255");
        m.packed_ = (m.packed_ & ~(std::uint64_t(0xff) << shift(var))) | (std::uint64_t(e) << shift(var));
        m.degree_ = degree_ - old + e;
        return m;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        if (a.degree_ + b.degree_ > 255) throw std::overflow_error("total degree exceeds 255");
        Monomial m;
        m.packed_ = a.packed_ + b.packed_;  // no byte carries: every exponent <= total degree <= 255
        m.degree_ = a.degree_ + b.degree_;
        return m;
    }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < VariableContext::kMaxVars; ++i)
            if (exponent(i) > other.exponent(i)) return false;
        return true;
    }
    /// Requires divisor.divides(*this).
    Monomial operator/(const Monomial& divisor) const {
        Monomial m;
        m.packed_ = packed_ - divisor.packed_;
        m.degree_ = degree_ - divisor.degree_;
        return m;
    }

    /// Graded lexicographic order.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
        return a.packed_ <=> b.packed_;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.packed_ == b.packed_; }

private:
    static constexpr unsigned shift(std::size_t var) { return unsigned(8 * (7 - var)); }

    std::uint64_t packed_ = 0;
    unsigned degree_ = 0;
};

/// All monomials of the given degree in `nvars` variables, descending grlex.
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
    std::vector<Monomial> out;
    std::array<unsigned, 8> e{};
    auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
        if (var + 1 == nvars) {
            e[var] = left;
            out.push_back(Monomial::from_exponents(std::span<const unsigned>(e.data(), nvars)));
            return;
        }
        for (unsigned k = left + 1; k-- > 0;) {
            e[var] = k;
            self(self, var + 1, left - k);
        }
    };
    if (nvars == 0) {
        if (degree == 0) out.emplace_back();
        return out;
    }
    rec(rec, 0, degree);
    return out;
}

struct Term {
    Monomial mono;
    GaussianRational coeff;
};

/// Sparse polynomial over Q(i). Terms are kept sorted by descending grlex
/// order with no zero coefficients.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(VariableContext c) : ctx_(std::move(c)) {}
    MultiPoly(VariableContext c, GaussianRational constant) : ctx_(std::move(c)) {
        if (!constant.is_zero()) terms_.push_back({Monomial(), std::move(constant)});
    }

    static MultiPoly variable(const VariableContext& c, std::string_view name) {
        auto idx = c.index_of(name);
        if (!idx) throw ContextMismatch("unknown variable '" + std::string(name) + "' in " + c.str());
        return monomial(c, Monomial::variable(*idx), GaussianRational(1));
    }
    static MultiPoly monomial(const VariableContext& c, Monomial m, GaussianRational coeff) {
        MultiPoly p(c);
        if (!coeff.is_zero()) p.terms_.push_back({m, std::move(coeff)});
        return p;
    }
    /// Arbitrary order, duplicates allowed.
    static MultiPoly from_terms(const VariableContext& c, std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
        MultiPoly p(c);
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
                p.terms_.back().coeff += t.coeff;
                if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
            } else if (!t.coeff.is_zero()) {
                p.terms_.push_back(std::move(t));
            }
        }
        return p;
    }

    const VariableContext& context() const noexcept { return ctx_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree() == 0); }

    /// -1 for the zero polynomial.
    int total_degree() const {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, int(t.mono.degree()));
        return d;
    }
    unsigned degree_in(std::size_t var) const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.exponent(var));
        return d;
    }
    bool is_homogeneous() const {
        for (const auto& t : terms_)
            if (t.mono.degree() != terms_.front().mono.degree()) return false;
        return true;
    }

    const Term& leading_term() const {
        if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
        return terms_.front();
    }
    GaussianRational coefficient(const Monomial& m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, const Monomial& k) { return t.mono > k; });
        return (it != terms_.end() && it->mono == m) ? it->coeff : GaussianRational(0);
    }
    GaussianRational constant_value() const {
        if (!is_constant()) throw std::domain_error("polynomial is not constant: " + str());
        return terms_.empty() ? GaussianRational(0) : terms_[0].coeff;
    }

    /// Scaled so that the leading coefficient is 1 (zero stays zero).
    MultiPoly normalized() const {
        if (terms_.empty() || terms_.front().coeff.is_one()) return *this;
        GaussianRational inv = terms_.front().coeff.inverse();
        MultiPoly p = *this;
        for (auto& t : p.terms_) t.coeff *= inv;
        return p;
    }

    MultiPoly& operator+=(const MultiPoly& o) { return *this = merge(*this, o, false); }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = merge(*this, o, true); }
    MultiPoly& operator*=(const GaussianRational& c) {
        if (c.is_zero()) {
            terms_.clear();
        } else if (!c.is_one()) {
            for (auto& t : terms_) t.coeff *= c;
        }
        return *this;
    }
    MultiPoly operator-() const {
        MultiPoly p = *this;
        for (auto& t : p.terms_) t.coeff = -t.coeff;
        return p;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }
    friend MultiPoly operator*(MultiPoly a, const GaussianRational& c) { return a *= c; }
    friend MultiPoly operator*(const GaussianRational& c, MultiPoly a) { return a *= c; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return multiply(a, b); }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = multiply(*this, o); }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (!(a.ctx_ == b.ctx_)) return false;
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t k = 0; k < a.terms_.size(); ++k)
            if (!(a.terms_[k].mono == b.terms_[k].mono) || !(a.terms_[k].coeff == b.terms_[k].coeff)) return false;
        return true;
    }

    /// Human-readable form, e.g. "x^2 - (1/2+1/2i)*y*z + 3"; parse_poly() reads it back.
    std::string str() const;

    static MultiPoly multiply(const MultiPoly& a, const MultiPoly& b);

private:
    static void require_same(const MultiPoly& a, const MultiPoly& b) {
        if (!(a.ctx_ == b.ctx_))
            throw ContextMismatch("polynomials from contexts " + a.ctx_.str() + " and " + b.ctx_.str());
    }
    static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract);

    VariableContext ctx_;
    std::vector<Term> terms_;
};

inline MultiPoly MultiPoly::merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    require_same(a, b);
    MultiPoly r(a.ctx_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].mono > b.terms_[j].mono)) {
            r.terms_.push_back(a.terms_[i++]);
        } else if (i == a.terms_.size() || b.terms_[j].mono > a.terms_[i].mono) {
            r.terms_.push_back(b.terms_[j]);
            if (subtract) r.terms_.back().coeff = -r.terms_.back().coeff;
            ++j;
        } else {
            GaussianRational c = a.terms_[i].coeff;
            if (subtract) c -= b.terms_[j].coeff; else c += b.terms_[j].coeff;
            if (!c.is_zero()) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    return r;
}

inline MultiPoly MultiPoly::multiply(const MultiPoly& a, const MultiPoly& b) {
    require_same(a, b);
    MultiPoly r(a.ctx_);
    if (a.is_zero() || b.is_zero()) return r;
    if (a.size() == 1 || b.size() == 1) {
        const MultiPoly& single = a.size() == 1 ? a : b;
        const MultiPoly& other = a.size() == 1 ? b : a;
        const Term& s = single.terms_[0];
        r.terms_.reserve(other.size());
        for (const auto& t : other.terms_) r.terms_.push_back({t.mono * s.mono, t.coeff * s.coeff});
        return r;  // multiplying by a monomial preserves the order
    }
    std::unordered_map<std::uint64_t, std::pair<Monomial, GaussianRational>> acc;
    acc.reserve(a.size() * b.size());
    GaussianRational prod;
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            Monomial m = ta.mono * tb.mono;
            prod = ta.coeff;
            prod *= tb.coeff;
            auto [it, inserted] = acc.try_emplace(m.packed(), m, prod);
            if (!inserted) it->second.second += prod;
        }
    }
    r.terms_.reserve(acc.size());
    for (auto& [key, mc] : acc)
        if (!mc.second.is_zero()) r.terms_.push_back({mc.first, std::move(mc.second)});
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.mono > y.mono; });
    return r;
}

inline std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        GaussianRational c = t.coeff;
        bool negative = c.is_real() && sgn(c.re()) < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t v = 0; v < ctx_.size(); ++v) {
            unsigned e = t.mono.exponent(v);
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += ctx_.name(v);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        std::string coeff = c.is_real() ? c.str() : "(" + c.str() + ")";
        if (mono.empty()) {
            out += coeff;
        } else if (c.is_one()) {
            out += mono;
        } else {
            out += coeff + "*" + mono;
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

inline MultiPoly pow(const MultiPoly& p, unsigned e) {
    MultiPoly result(p.context(), GaussianRational(1));
    MultiPoly base = p;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return result;
}

/// Iterated formal partial derivative d^order p / d var^order.
inline MultiPoly partial(const MultiPoly& p, std::size_t var, unsigned order = 1) {
    if (var >= p.context().size()) throw ContextMismatch("variable index out of range");
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        unsigned e = t.mono.exponent(var);
        if (e < order) continue;
        long factor = 1;
        for (unsigned k = 0; k < order; ++k) factor *= long(e - k);
        out.push_back({t.mono.with_exponent(var, e - order), t.coeff * GaussianRational(factor)});
    }
    // Lowering one exponent keeps the relative grlex order of distinct results.
    return MultiPoly::from_terms(p.context(), std::move(out));
}

inline MultiPoly partial(const MultiPoly& p, std::string_view var, unsigned order = 1) {
    auto idx = p.context().index_of(var);
    if (!idx) throw ContextMismatch("unknown variable '" + std::string(var) + "'");
    return partial(p, *idx, order);
}

/// Mixed partial with multi-index `alpha` (one entry per context variable).
inline MultiPoly partial(const MultiPoly& p, const Monomial& alpha) {
    MultiPoly r = p;
    for (std::size_t v = 0; v < p.context().size() && !r.is_zero(); ++v)
        if (alpha.exponent(v)) r = partial(r, v, alpha.exponent(v));
    return r;
}

/// Full scalar evaluation; `values` has one entry per context variable.
inline GaussianRational evaluate(const MultiPoly& p, std::span<const GaussianRational> values) {
    const std::size_t n = p.context().size();
    if (values.size() != n) throw ContextMismatch("evaluation needs one value per variable");
    unsigned maxdeg = 0;
    for (const auto& t : p.terms()) maxdeg = std::max(maxdeg, t.mono.degree());
    std::vector<std::vector<GaussianRational>> powers(n);
    for (std::size_t v = 0; v < n; ++v) {
        powers[v].reserve(maxdeg + 1);
        powers[v].emplace_back(1);
        for (unsigned k = 1; k <= maxdeg; ++k) powers[v].push_back(powers[v].back() * values[v]);
    }
    GaussianRational sum, prod;
    for (const auto& t : p.terms()) {
        prod = t.coeff;
        for (std::size_t v = 0; v < n && !prod.is_zero(); ++v) {
            unsigned e = t.mono.exponent(v);
            if (e) prod *= powers[v][e];
        }
        sum += prod;
    }
    return sum;
}

/// Variable assignment for substitute(): variable name -> value in the target context.
using Assignment = std::map<std::string, MultiPoly, std::less<>>;

/// Simultaneous substitution. Unassigned variables are carried over by name and
/// must exist in `target`; every assigned value must live in `target`.
inline MultiPoly substitute(const MultiPoly& p, const Assignment& assignment, const VariableContext& target) {
    const VariableContext& src = p.context();
    for (const auto& [name, value] : assignment) {
        if (!src.contains(name)) throw ContextMismatch("unknown variable '" + name + "' in " + src.str());
        if (!(value.context() == target))
            throw ContextMismatch("value for '" + name + "' is not in target context " + target.str());
    }
    std::vector<MultiPoly> image;
    image.reserve(src.size());
    for (std::size_t v = 0; v < src.size(); ++v) {
        auto it = assignment.find(src.name(v));
        if (it != assignment.end()) {
            image.push_back(it->second);
        } else if (target.contains(src.name(v))) {
            image.push_back(MultiPoly::variable(target, src.name(v)));
        } else {
            throw ContextMismatch("variable '" + src.name(v) + "' has no value and is absent from " + target.str());
        }
    }
    std::vector<std::vector<MultiPoly>> powers(src.size());
    auto power = [&](std::size_t v, unsigned e) -> const MultiPoly& {
        auto& cache = powers[v];
        if (cache.empty()) cache.emplace_back(target, GaussianRational(1));
        while (cache.size() <= e) cache.push_back(cache.back() * image[v]);
        return cache[e];
    };
    std::vector<Term> acc;
    for (const auto& t : p.terms()) {
        MultiPoly prod(target, t.coeff);
        for (std::size_t v = 0; v < src.size() && !prod.is_zero(); ++v) {
            unsigned e = t.mono.exponent(v);
            if (e) prod *= power(v, e);
        }
        acc.insert(acc.end(), prod.terms().begin(), prod.terms().end());
    }
    return MultiPoly::from_terms(target, std::move(acc));
}

/// Re-expresses p in a context containing all of its variables (by name).
inline MultiPoly embed(const MultiPoly& p, const VariableContext& target) {
    if (p.context() == target) return p;
    std::vector<std::size_t> map(p.context().size());
    for (std::size_t v = 0; v < p.context().size(); ++v) {
        auto idx = target.index_of(p.context().name(v));
        if (!idx) throw ContextMismatch("cannot embed " + p.context().str() + " into " + target.str());
        map[v] = *idx;
    }
    std::vector<Term> out;
    out.reserve(p.size());
    std::array<unsigned, 8> e{};
    for (const auto& t : p.terms()) {
        e.fill(0);
        for (std::size_t v = 0; v < map.size(); ++v) e[map[v]] = t.mono.exponent(v);
        out.push_back({Monomial::from_exponents(std::span<const unsigned>(e.data(), target.size())), t.coeff});
    }
    return MultiPoly::from_terms(target, std::move(out));
}

/// Quotient a / b when b divides a exactly; std::nullopt otherwise.
inline std::optional<MultiPoly> try_divide_exact(const MultiPoly& a, const MultiPoly& b) {
    if (!(a.context() == b.context())) throw ContextMismatch("division across contexts");
    if (b.is_zero()) throw DivisionByZero();
    const VariableContext& c = a.context();
    if (a.is_zero()) return MultiPoly(c);
    const Term& lead = b.leading_term();
    if (b.size() == 1) {
        std::vector<Term> q;
        q.reserve(a.size());
        GaussianRational inv = lead.coeff.inverse();
        for (const auto& t : a.terms()) {
            if (!lead.mono.divides(t.mono)) return std::nullopt;
            q.push_back({t.mono / lead.mono, t.coeff * inv});
        }
        return MultiPoly::from_terms(c, std::move(q));
    }
    GaussianRational inv = lead.coeff.inverse();
    std::map<Monomial, GaussianRational, std::greater<>> rem;
    for (const auto& t : a.terms()) rem.emplace(t.mono, t.coeff);
    std::vector<Term> quotient;
    GaussianRational tmp;
    while (!rem.empty()) {
        auto it = rem.begin();
        if (!lead.mono.divides(it->first)) return std::nullopt;
        Monomial qm = it->first / lead.mono;
        GaussianRational qc = it->second * inv;
        rem.erase(it);
        for (std::size_t k = 1; k < b.size(); ++k) {
            const Term& bt = b.terms()[k];
            Monomial m = bt.mono * qm;
            tmp = bt.coeff;
            tmp *= qc;
            auto [pos, inserted] = rem.try_emplace(m, -tmp);
            if (!inserted) {
                pos->second -= tmp;
                if (pos->second.is_zero()) rem.erase(pos);
            }
        }
        quotient.push_back({qm, std::move(qc)});
    }
    return MultiPoly::from_terms(c, std::move(quotient));
}

class InexactDivision : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
    auto q = try_divide_exact(a, b);
    if (!q) throw InexactDivision("polynomial division is not exact");
    return *std::move(q);
}

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, const VariableContext& c) : text_(text), ctx_(c) {}

    MultiPoly parse() {
        MultiPoly p = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_ + 1);
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n')) ++pos_;
    }
    bool peek(char ch) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == ch;
    }
    bool starts_factor() {
        skip_ws();
        if (pos_ >= text_.size()) return false;
        char ch = text_[pos_];
        return ch == '(' || (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z');
    }

    MultiPoly expr() {
        MultiPoly acc(ctx_);
        bool negate = false;
        if (peek('+')) {
            ++pos_;
        } else if (peek('-')) {
            ++pos_;
            negate = true;
        }
        MultiPoly t = term();
        acc = negate ? -t : t;
        while (true) {
            if (peek('+')) {
                ++pos_;
                acc += term();
            } else if (peek('-')) {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }
    MultiPoly term() {
        MultiPoly acc = factor();
        while (true) {
            if (peek('*')) {
                ++pos_;
                acc *= factor();
            } else if (starts_factor()) {
                acc *= factor();
            } else {
                return acc;
            }
        }
    }
    MultiPoly factor() {
        MultiPoly base = primary();
        if (peek('^')) {
            ++pos_;
            skip_ws();
            std::size_t start = pos_;
            unsigned e = 0;
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') e = e * 10 + unsigned(text_[pos_++] - '0');
            if (pos_ == start) throw ParseError("expected exponent", pos_ + 1);
            return pow(base, e);
        }
        return base;
    }
    MultiPoly primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_ + 1);
        char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            MultiPoly inner = expr();
            if (!peek(')')) throw ParseError("expected ')'", pos_ + 1);
            ++pos_;
            return inner;
        }
        if (ch >= '0' && ch <= '9') return MultiPoly(ctx_, GaussianRational(parse_unsigned_rational(text_, pos_)));
        // Longest variable name that prefixes the input; 'i' is the imaginary unit otherwise.
        std::size_t best = 0, best_len = 0;
        for (std::size_t v = 0; v < ctx_.size(); ++v) {
            const std::string& n = ctx_.name(v);
            if (n.size() > best_len && text_.substr(pos_, n.size()) == n) {
                best = v;
                best_len = n.size();
            }
        }
        if (best_len) {
            pos_ += best_len;
            return MultiPoly::monomial(ctx_, Monomial::variable(best), GaussianRational(1));
        }
        if (ch == 'i') {
            ++pos_;
            return MultiPoly(ctx_, GaussianRational::imag_unit());
        }
        throw ParseError("unknown symbol '" + std::string(1, ch) + "' for context " + ctx_.str(), pos_ + 1);
    }

    std::string_view text_;
    const VariableContext& ctx_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses +, -, *, ^, parentheses, rationals p/q, the unit i, and juxtaposition
/// as multiplication ("5xy(z^4-w^4)").
inline MultiPoly parse_poly(std::string_view text, const VariableContext& c) {
    return detail::PolyParser(text, c).parse();
}

}  // namespace klein

#endif  // KLEIN_POLY_HPP
