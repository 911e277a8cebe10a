#include <doctest.h>

#include <random>

#include "arithdyn/poly.hpp"
#include "../support/oracles.hpp"

using namespace arithdyn;

namespace {

IntPoly random_poly(std::mt19937_64& rng, int deg, int bound) {
    std::vector<BigInt> c;
    for (int i = 0; i <= deg; ++i) c.emplace_back(static_cast<long>(rng() % (2 * bound + 1)) - bound);
    if (c.back() == 0) c.back() = 1;
    return IntPoly(c);
}

oracle::QPoly to_q(const IntPoly& p) {
    std::vector<mpq_class> c;
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return oracle::QPoly(c);
}

}  // namespace

TEST_CASE("gcd agrees with Euclid over Q") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const IntPoly g = random_poly(rng, static_cast<int>(rng() % 3), 5);
        const IntPoly a = random_poly(rng, static_cast<int>(rng() % 4), 9) * g;
        const IntPoly b = random_poly(rng, static_cast<int>(rng() % 4), 9) * g;
        const IntPoly mine = gcd(a, b);
        const auto ref = oracle::gcd(to_q(a), to_q(b));
        REQUIRE(mine.degree() == ref.degree());
        // Same up to a rational scalar.
        const mpq_class s = mpq_class(mine.leading()) / ref.c.back();
        for (std::size_t k = 0; k < ref.c.size(); ++k) CHECK(mpq_class(mine.coeff(k)) == s * ref.c[k]);
        CHECK(divide_exact(a, mine).has_value());
        CHECK(divide_exact(b, mine).has_value());
    }
}

TEST_CASE("squarefree decomposition reassembles") {
    const IntPoly x1(std::vector<BigInt>{-1, 1});  // x - 1
    const IntPoly x2(std::vector<BigInt>{1, 0, 1});  // x^2 + 1
    const IntPoly a = x1 * x1 * x1 * x2 * x2 * IntPoly(std::vector<BigInt>{3, 2});
    const auto dec = squarefree_decomposition(a);
    IntPoly prod = IntPoly::constant(1);
    for (const auto& [f, e] : dec) {
        for (unsigned k = 0; k < e; ++k) prod = prod * f;
    }
    CHECK(prod.primitive() == a.primitive());
    CHECK(squarefree_part(a).degree() == oracle::distinct_roots(to_q(a)));
}

TEST_CASE("rational roots") {
    // (2x - 3)(x + 5)(x^2 + 2)
    const IntPoly a = IntPoly(std::vector<BigInt>{-3, 2}) * IntPoly(std::vector<BigInt>{5, 1}) *
                      IntPoly(std::vector<BigInt>{2, 0, 1});
    const auto r = rational_roots(a);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == Rational(-5));
    CHECK(r[1] == Rational(3, 2));
    CHECK(rational_roots(IntPoly(std::vector<BigInt>{0, 0, 1})) == std::vector<Rational>{Rational(0)});
}

TEST_CASE("resultant") {
    const auto x0sq = BinaryForm(2, {0, 0, 1});
    const auto x1sq = BinaryForm(2, {1, 0, 0});
    CHECK(abs(resultant(x0sq, x1sq)) == 1);
    // Res(2x0^2 + x1^2, 2x1^2): 2x1^2 has the double root [1:0]; the value
    // is lead(Q)^deg P * P(1,0)^2 = 4 * 4 = 16.
    const auto P = BinaryForm(2, {1, 0, 2});
    const auto Q = BinaryForm(2, {2, 0, 0});
    CHECK(resultant(P, Q) == 16);
    // Common factor gives zero.
    const auto A = BinaryForm(2, {-1, 0, 1});  // x0^2 - x1^2
    const auto B = BinaryForm(2, {0, -1, 1});  // x0^2 - x0 x1
    CHECK(resultant(A, B) == 0);
}

TEST_CASE("resultant matches the product formula on monic forms") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 40; ++i) {
        // P = (x0 - a x1)(x0 - b x1), Q = (x0 - c x1)(x0 - e x1): Res = prod (a_i - c_j)
        long r[4];
        for (auto& v : r) v = static_cast<long>(rng() % 13) - 6;
        const BinaryForm P = BinaryForm::linear(1, -r[0]) * BinaryForm::linear(1, -r[1]);
        const BinaryForm Q = BinaryForm::linear(1, -r[2]) * BinaryForm::linear(1, -r[3]);
        const BigInt expect = BigInt(r[0] - r[2]) * (r[0] - r[3]) * (r[1] - r[2]) * (r[1] - r[3]);
        CHECK(resultant(P, Q) == expect);
    }
}

TEST_CASE("bareiss agrees with cofactor expansion") {
    std::mt19937_64 rng(9);
    for (int n = 1; n <= 6; ++n) {
        for (int t = 0; t < 10; ++t) {
            std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
            for (auto& row : m)
                for (auto& v : row) v = static_cast<long>(rng() % 21) - 10;
            CHECK(bareiss_determinant(m) == oracle::cofactor_det(m));
        }
    }
}

TEST_CASE("binary form basics") {
    const BinaryForm F(3, {0, 1, 0, 1});  // x0^3 + x0 x1^2 = x0 (x0^2 + x1^2)
    CHECK(F.eval(2, 1) == 10);
    CHECK(F.infinity_multiplicity() == 0);
    CHECK(distinct_root_count(F) == 3);
    const auto fac = factor_form(F);
    REQUIRE(fac.size() == 2);
    std::size_t total = 0;
    for (const auto& f : fac) total += f.form.degree() * f.multiplicity;
    CHECK(total == 3);
    CHECK(form_divides(BinaryForm::linear(1, 0), F));
    CHECK_FALSE(form_divides(BinaryForm::linear(1, 1), F));
    const BinaryForm G = BinaryForm(2, {1, 0, 0}).pow(2);  // x1^4
    CHECK(G.infinity_multiplicity() == 4);
    CHECK(distinct_root_count(G) == 1);
}

TEST_CASE("composition of forms matches composition of polynomials") {
    // F = x0^2 + x1^2 composed with (x0^2 + x1^2, x1^2) is (f o f) for f = x^2 + 1.
    const BinaryForm F(2, {1, 0, 1});
    const BinaryForm X1(2, {1, 0, 0});
    const auto C = compose(F, F, X1);
    const auto f = oracle::QPoly({1, 0, 1});
    const auto ff = f.compose(f);
    for (std::size_t i = 0; i <= 4; ++i) CHECK(mpq_class(C.coeff(i)) == (i < ff.c.size() ? ff.c[i] : mpq_class(0)));
}
