#ifndef KLEIN_GAUSSIAN_RATIONAL_HPP
#define KLEIN_GAUSSIAN_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace klein {

class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("division by zero in Q(i)") {}
};

/// Error raised by the text parsers; `column` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t column)
        : std::runtime_error(what + " (column " + std::to_string(column) + ")"), column_(column) {}
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

/// Exact element re + im*i of Q(i). Both parts are kept canonical by GMP.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational imag_unit() { return {mpq_class(0), mpq_class(1)}; }

    const mpq_class& re() const noexcept { return re_; }
    const mpq_class& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const noexcept { return sgn(im_) == 0 && re_ == 1; }
    bool is_real() const noexcept { return sgn(im_) == 0; }
    bool is_gaussian_integer() const {
        return re_.get_den() == 1 && im_.get_den() == 1;
    }

    GaussianRational conj() const { return {re_, -im_}; }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational inverse() const {
        if (is_zero()) throw DivisionByZero();
        mpq_class n = norm();
        return {re_ / n, -im_ / n};
    }

    /// Rough size measure used for pivot selection.
    std::size_t bit_size() const {
        return mpz_sizeinbase(re_.get_num_mpz_t(), 2) + mpz_sizeinbase(re_.get_den_mpz_t(), 2) +
               mpz_sizeinbase(im_.get_num_mpz_t(), 2) + mpz_sizeinbase(im_.get_den_mpz_t(), 2);
    }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        if (sgn(o.im_) != 0) im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        if (sgn(o.im_) != 0) im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        if (is_real() && o.is_real()) {
            re_ *= o.re_;
            return *this;
        }
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw DivisionByZero();
        if (o.is_real()) {
            re_ /= o.re_;
            if (sgn(im_) != 0) im_ /= o.re_;
            return *this;
        }
        return *this *= o.inverse();
    }

    GaussianRational operator-() const { return {-re_, -im_}; }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    /// Total order (real part, then imaginary part); only meaningful for keys.
    friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
        int c = cmp(a.re_, b.re_);
        if (c == 0) c = cmp(a.im_, b.im_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Canonical text: "re", or "re+imi" / "re-imi" with each part "p" or "p/q".
    std::string str() const {
        std::string out = re_.get_str();
        if (sgn(im_) == 0) return out;
        out += sgn(im_) > 0 ? "+" : "-";
        out += mpq_class(abs(im_)).get_str();
        out += "i";
        return out;
    }

    static GaussianRational parse(std::string_view text);

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

namespace detail {

// Parses an unsigned rational "p" or "p/q" at text[pos]; advances pos.
inline mpq_class parse_unsigned_rational(std::string_view text, std::size_t& pos) {
    auto digits = [&](std::string& out) {
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') out += text[pos++];
        if (pos == start) throw ParseError("expected digit", pos + 1);
    };
    std::string num, den;
    digits(num);
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        digits(den);
    }
    mpq_class q;
    if (den.empty()) {
        q = mpz_class(num);
    } else {
        mpz_class d(den);
        if (d == 0) throw ParseError("zero denominator", pos);
        q = mpq_class(mpz_class(num), d);
        q.canonicalize();
    }
    return q;
}

}  // namespace detail

inline GaussianRational GaussianRational::parse(std::string_view text) {
    std::size_t pos = 0;
    auto sign = [&]() -> int {
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) return text[pos++] == '-' ? -1 : 1;
        return 0;
    };
    if (text.empty()) throw ParseError("empty number", 1);
    // a bare "i" stands for 1i
    auto magnitude = [&]() -> mpq_class {
        if (pos < text.size() && text[pos] == 'i') return 1;
        return detail::parse_unsigned_rational(text, pos);
    };
    int s1 = sign();
    mpq_class first = magnitude();
    if (s1 < 0) first = -first;
    if (pos == text.size()) return {first, 0};
    if (text[pos] == 'i') {
        if (pos + 1 != text.size()) throw ParseError("trailing characters", pos + 2);
        return {0, first};
    }
    int s2 = sign();
    if (s2 == 0) throw ParseError("expected '+' or '-'", pos + 1);
    mpq_class second = magnitude();
    if (pos >= text.size() || text[pos] != 'i') throw ParseError("expected 'i'", pos + 1);
    if (pos + 1 != text.size()) throw ParseError("trailing characters", pos + 2);
    return {first, s2 < 0 ? mpq_class(-second) : second};
}

inline GaussianRational gq_div(const GaussianRational& p, const GaussianRational& q) { return p / q; }

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& q) { return os << q.str(); }

}  // namespace klein

#endif  // KLEIN_GAUSSIAN_RATIONAL_HPP
