#include <doctest.h>

#include <random>

#include "arithdyn/errors.hpp"
#include "arithdyn/integrality.hpp"
#include "../support/oracles.hpp"

using namespace arithdyn;

namespace {

RatMap M(std::vector<Rational> num, std::vector<Rational> den) { return make_map(num, den); }

RatMap random_map(std::mt19937_64& rng) {
    while (true) {
        const std::size_t d = 2 + rng() % 2;
        const bool poly = rng() % 2;
        std::vector<Rational> num, den;
        for (std::size_t i = 0; i <= d; ++i) num.emplace_back(static_cast<long>(rng() % 7) - 3);
        if (poly) {
            den = {Rational(1)};
        } else {
            for (std::size_t i = 0; i < d; ++i) den.emplace_back(static_cast<long>(rng() % 7) - 3);
        }
        try {
            return make_map(num, den);
        } catch (const PreconditionError&) {
        }
    }
}

ProjPoint random_point(std::mt19937_64& rng) {
    if (rng() % 10 == 0) return ProjPoint::infinity();
    return ProjPoint(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 5));
}

// Integrality of f^n(a) against f^n(b) by affine iteration, independent of the forms.
bool oracle_integral_after(const RatMap& f, const ProjPoint& a, const ProjPoint& b, std::size_t n,
                           const std::vector<long>& S) {
    std::vector<mpq_class> p, q;
    for (const auto& c : f.num().coeffs()) p.emplace_back(c);
    for (const auto& c : f.den().coeffs()) q.emplace_back(c);
    const oracle::AffineMap g{oracle::QPoly(p), oracle::QPoly(q)};
    auto aff = [](const ProjPoint& P) -> std::optional<mpq_class> {
        if (P.is_infinity()) return std::nullopt;
        return mpq_class(P.x0(), P.x1());
    };
    auto x = aff(a), y = aff(b);
    for (std::size_t i = 0; i < n; ++i) {
        x = g(x);
        y = g(y);
    }
    auto coords = [](const std::optional<mpq_class>& v) {
        if (!v) return std::pair<mpz_class, mpz_class>{1, 0};
        return std::pair<mpz_class, mpz_class>{v->get_num(), v->get_den()};
    };
    const auto [a0, a1] = coords(x);
    const auto [b0, b1] = coords(y);
    const mpz_class cross = a0 * b1 - a1 * b0;
    return cross != 0 && oracle::strip(cross, S) == 1;
}

std::vector<long> random_S(std::mt19937_64& rng, const RatMap& f) {
    std::vector<long> S;
    for (const auto& p : f.bad_primes().primes()) S.push_back(p.get_si());
    for (long p : {2L, 3L, 5L, 7L}) {
        if (rng() % 2) S.push_back(p);
    }
    return S;
}

PlaceSet to_places(const std::vector<long>& S) {
    std::vector<BigInt> v;
    for (long p : S) v.emplace_back(p);
    return PlaceSet(v);
}

}  // namespace

TEST_CASE("pair integrality") {
    auto w = is_integral_pair(ProjPoint(8, 1), ProjPoint(-8, 1), PlaceSet{2});
    CHECK(w.verdict);
    CHECK(w.cross_term == 16);
    w = is_integral_pair(ProjPoint(5, 3), ProjPoint(5, 3), PlaceSet{2, 3, 5});
    CHECK_FALSE(w.verdict);
    CHECK(w.cross_term == 0);
    w = is_integral_pair(ProjPoint(2, 1), ProjPoint(0, 1), PlaceSet{});
    CHECK_FALSE(w.verdict);
    CHECK(w.cross_term == 2);
    CHECK(w.violating_primes == std::vector<BigInt>{2});
    CHECK(is_integral_pair(ProjPoint(2, 1), ProjPoint(0, 1), PlaceSet{2}).verdict);
}

TEST_CASE("witness of a large cross term") {
    BigInt p;
    mpz_nextprime(p.get_mpz_t(), BigInt("1" + std::string(60, '0')).get_mpz_t());
    const auto w = integrality_witness(p * p * 6, PlaceSet{2, 3});
    CHECK_FALSE(w.verdict);
    BigInt rest = p * p;
    for (const auto& q : w.violating_primes) {
        while (rest % q == 0) rest /= q;
    }
    CHECK(rest == w.unfactored);
    const auto u = integrality_witness(BigInt(-96), PlaceSet{2, 3});
    CHECK(u.verdict);
    CHECK(u.unfactored == 1);
}

TEST_CASE("D_n cross values") {
    const auto sq = M({1, 0, 0}, {1});
    CHECK(d_n_cross_form_value(sq, ProjPoint(2, 1), ProjPoint(3, 1), 1) == -5);
    CHECK(d_n_cross_form_value(sq, ProjPoint(2, 1), ProjPoint(3, 1), 0) == -1);
    CHECK(d_n_cross_form_value(M({1, 0, 1}, {1, 0}), ProjPoint(4, 7), ProjPoint(4, 7), 2) == 0);
    CHECK(is_integral_rel_Dn(sq, ProjPoint(2, 1), ProjPoint(3, 1), 1, PlaceSet{5}).verdict);
    CHECK_FALSE(is_integral_rel_Dn(sq, ProjPoint(2, 1), ProjPoint(3, 1), 1, PlaceSet{}).verdict);
}

TEST_CASE("D_0 agrees with pair integrality") {
    std::mt19937_64 rng(51);
    for (int t = 0; t < 50; ++t) {
        const RatMap f = random_map(rng);
        const ProjPoint a = random_point(rng), b = random_point(rng);
        const PlaceSet S = to_places(random_S(rng, f));
        CHECK(is_integral_rel_Dn(f, a, b, 0, S).verdict == is_integral_pair(a, b, S).verdict);
    }
}

TEST_CASE("functoriality examples") {
    CHECK(check_functoriality(M({1, 0, 0}, {1}), ProjPoint(2, 1), ProjPoint(3, 1), 1, PlaceSet{5}));
    CHECK(check_functoriality(M({1, 0, 0, 0}, {1}), ProjPoint(2, 1), ProjPoint(-2, 1), 2, PlaceSet{2}));
    const auto half = M({1, 0, Rational(1, 2)}, {1});
    CHECK_THROWS_WITH_AS(check_functoriality(half, ProjPoint(1, 1), ProjPoint(0, 1), 1, PlaceSet{3}),
                         "S is missing the bad-reduction prime 2", PreconditionError);
}

TEST_CASE("functoriality on random instances") {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 120; ++t) {
        const RatMap f = random_map(rng);
        const ProjPoint a = random_point(rng), b = random_point(rng);
        const std::size_t n = rng() % 4;
        const auto S = random_S(rng, f);
        const PlaceSet places = to_places(S);
        const bool lhs = is_integral_rel_Dn(f, a, b, n, places).verdict;
        CHECK(lhs == oracle_integral_after(f, a, b, n, S));
        CHECK(check_functoriality(f, a, b, n, places));
    }
}

TEST_CASE("monotonicity") {
    CHECK(monotonicity_check(M({1, 0, 0}, {1}), ProjPoint(2, 1), ProjPoint(3, 1), 0, 1, PlaceSet{5}));
    std::mt19937_64 rng(71);
    for (int t = 0; t < 100; ++t) {
        const RatMap f = random_map(rng);
        const ProjPoint a = random_point(rng), b = random_point(rng);
        std::size_t m = rng() % 4, n = rng() % 4;
        if (m > n) std::swap(m, n);
        const PlaceSet S = to_places(random_S(rng, f));
        const bool hi = is_integral_rel_Dn(f, a, b, n, S).verdict;
        const bool lo = is_integral_rel_Dn(f, a, b, m, S).verdict;
        CHECK((!hi || lo));
        CHECK(monotonicity_check(f, a, b, m, n, S));
    }
    CHECK_THROWS_AS(monotonicity_check(M({1, 0, 0}, {1}), ProjPoint(2, 1), ProjPoint(3, 1), 2, 1, PlaceSet{}),
                    PreconditionError);
}
