#include "klein/gaussian_rational.hpp"
#include "klein/matrix.hpp"
#include "klein/poly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace klein;

namespace {

GaussianRational random_q(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
    return {mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))};
}

MultiPoly random_poly(std::mt19937_64& rng, const VariableContext& c, unsigned maxdeg, std::size_t terms) {
    std::vector<Term> t;
    std::uniform_int_distribution<unsigned> e(0, maxdeg);
    for (std::size_t k = 0; k < terms; ++k) {
        std::vector<unsigned> ex(c.size());
        for (auto& x : ex) x = e(rng) / unsigned(c.size());
        t.push_back({Monomial::from_exponents(ex), random_q(rng)});
    }
    return MultiPoly::from_terms(c, std::move(t));
}

}  // namespace

TEST(GaussianRational, FieldAxioms) {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 300; ++it) {
        auto a = random_q(rng), b = random_q(rng), c = random_q(rng);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a - a, GaussianRational(0));
        if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), GaussianRational(1));
    }
}

TEST(GaussianRational, ImaginaryUnit) {
    auto i = GaussianRational::imag_unit();
    EXPECT_EQ(i * i, GaussianRational(-1));
    EXPECT_EQ(i.conj() * i, GaussianRational(1));
}

TEST(GaussianRational, ParsePrintRoundTrip) {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        auto a = random_q(rng);
        EXPECT_EQ(GaussianRational::parse(a.str()), a) << a.str();
    }
    EXPECT_EQ(GaussianRational::parse("1/2+1/2i"), GaussianRational(mpq_class(1, 2), mpq_class(1, 2)));
    EXPECT_EQ(GaussianRational::parse("-i"), GaussianRational(0, -1));
    EXPECT_EQ(GaussianRational::parse("1+i"), GaussianRational(1, 1));
    EXPECT_THROW(GaussianRational::parse("1+"), ParseError);
}

TEST(GaussianRational, ParseErrorsCarryColumn) {
    try {
        GaussianRational::parse("3+4j");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_GE(e.column(), 1u);
    }
    EXPECT_THROW(GaussianRational::parse(""), ParseError);
}

TEST(GaussianRational, DivisionByZeroThrows) {
    EXPECT_THROW(GaussianRational(1) / GaussianRational(0), DivisionByZero);
}

TEST(MultiPoly, RingAxioms) {
    std::mt19937_64 rng(3);
    const auto& c = ctx::xyzw();
    for (int it = 0; it < 40; ++it) {
        auto p = random_poly(rng, c, 8, 5), q = random_poly(rng, c, 8, 4), r = random_poly(rng, c, 8, 3);
        EXPECT_EQ(p + q, q + p);
        EXPECT_EQ(p * q, q * p);
        EXPECT_EQ((p * q) * r, p * (q * r));
        EXPECT_EQ(p * (q + r), p * q + p * r);
        EXPECT_TRUE((p - p).is_zero());
    }
}

TEST(MultiPoly, ExactDivisionRecoversFactor) {
    std::mt19937_64 rng(5);
    const auto& c = ctx::abcd();
    for (int it = 0; it < 20; ++it) {
        auto p = random_poly(rng, c, 6, 4), q = random_poly(rng, c, 6, 3);
        if (q.is_zero()) continue;
        EXPECT_EQ(divide_exact(p * q, q), p);
    }
    auto a = MultiPoly::variable(c, "a"), b = MultiPoly::variable(c, "b");
    EXPECT_FALSE(try_divide_exact(a + b, a).has_value());
    EXPECT_THROW(divide_exact(a + b, a), InexactDivision);
}

TEST(MultiPoly, ParsePrintRoundTrip) {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 30; ++it) {
        auto p = random_poly(rng, ctx::xyzw_abcd(), 10, 6);
        EXPECT_EQ(parse_poly(p.str(), ctx::xyzw_abcd()), p) << p.str();
    }
    EXPECT_EQ(parse_poly("2xy", ctx::xyzw()), parse_poly("2*x*y", ctx::xyzw()));
}

TEST(MultiPoly, ContextMismatchIsRejected) {
    auto x = MultiPoly::variable(ctx::xyzw(), "x");
    auto a = MultiPoly::variable(ctx::abcd(), "a");
    EXPECT_THROW(x + a, ContextMismatch);
    EXPECT_THROW(parse_poly("q", ctx::xyzw()), std::exception);
}

TEST(MultiPoly, EulerIdentityForForms) {
    std::mt19937_64 rng(13);
    const auto& c = ctx::xyzw();
    auto f = parse_poly("x^3*y - 2*z^2*w^2 + (1+i)*x*y*z*w", c);
    MultiPoly euler(c);
    for (std::size_t v = 0; v < 4; ++v) euler += MultiPoly::variable(c, c.name(v)) * partial(f, v);
    EXPECT_EQ(euler, f * GaussianRational(4));
}

TEST(MultiPoly, SubstitutionComposes) {
    const auto& c = ctx::xyzw();
    auto f = parse_poly("x^2 - y*z + w", c);
    Assignment as{{"x", parse_poly("y + z", c)}, {"w", parse_poly("2", c)}};
    EXPECT_EQ(substitute(f, as, c), parse_poly("y^2 + y*z + z^2 + 2", c));
}

TEST(Matrix, RankAndKernelAgree) {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 20; ++it) {
        std::size_t r = 3 + it % 5, cols = 4 + it % 4;
        ExactMatrix m(r, cols);
        // rank deficient by construction: last row = sum of the first two
        for (std::size_t i = 0; i + 1 < r; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_q(rng);
        for (std::size_t j = 0; j < cols; ++j) m(r - 1, j) = m(0, j) + m(1, j);
        auto rk = rank_kernel(m);
        EXPECT_EQ(rk.rank, rank(m));
        EXPECT_EQ(rk.rank + rk.kernel.size(), cols);
        EXPECT_LE(rk.rank, r - 1);
        for (const auto& v : rk.kernel)
            for (const auto& x : multiply(m, v)) EXPECT_TRUE(x.is_zero());
    }
}

TEST(Matrix, InverseRoundTrip) {
    std::mt19937_64 rng(19);
    ExactMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = random_q(rng);
    auto id = ExactMatrix::identity(4, GaussianRational(0), GaussianRational(1));
    EXPECT_EQ(m * inverse(m), id);
    ExactMatrix s(2, 2);
    s(0, 0) = 1, s(0, 1) = 2, s(1, 0) = 2, s(1, 1) = 4;
    EXPECT_THROW(inverse(s), SingularMatrix);
}

TEST(Matrix, SymbolicRankBoundsSpecializations) {
    // Vandermonde-like in a: generic rank 3, drops at a = b
    const auto& c = ctx::abcd();
    PolyMatrix m(3, 3);
    const char* e[9] = {"1", "a", "a^2", "1", "b", "b^2", "1", "c", "c^2"};
    for (std::size_t k = 0; k < 9; ++k) m(k / 3, k % 3) = parse_poly(e[k], c);
    EXPECT_EQ(rank(m), 3u);
    std::array<GaussianRational, 4> gen{2, 3, 5, 7}, bad{2, 2, 5, 7};
    EXPECT_EQ(rank(specialize(m, gen)), 3u);
    EXPECT_EQ(rank(specialize(m, bad)), 2u);
}

TEST(Matrix, IntegerBareiss) {
    Matrix<mpz_class> m(3, 3);
    int v[9] = {2, 4, 6, 1, 3, 5, 3, 7, 11};
    for (int k = 0; k < 9; ++k) m(k / 3, k % 3) = v[k];
    EXPECT_EQ(rank(m), 2u);
}
