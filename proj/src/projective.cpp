#include "arithdyn/projective.hpp"

#include <cctype>

#include "arithdyn/errors.hpp"

namespace arithdyn {

ProjPoint::ProjPoint(BigInt a0, BigInt a1) : a0_(std::move(a0)), a1_(std::move(a1)) {
    if (a0_ == 0 && a1_ == 0) throw PreconditionError("not a projective point");
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a0_.get_mpz_t(), a1_.get_mpz_t());
    if ((a1_ != 0 && a1_ < 0) || (a1_ == 0 && a0_ < 0)) g = -g;
    mpz_divexact(a0_.get_mpz_t(), a0_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(a1_.get_mpz_t(), a1_.get_mpz_t(), g.get_mpz_t());
}

ProjPoint normalize(const Rational& x0, const Rational& x1) {
    if (x0.is_zero() && x1.is_zero()) throw PreconditionError("not a projective point");
    // Scale both by the product of denominators, then reduce.
    return ProjPoint(x0.num() * x1.den(), x1.num() * x0.den());
}

ProjPoint ProjPoint::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text == "inf" || text == "infinity" || text == "oo") return infinity();
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') throw ParseError("missing ']' in point", text.size());
        auto inner = text.substr(1, text.size() - 2);
        auto colon = inner.find(':');
        if (colon == std::string_view::npos) throw ParseError("missing ':' in point", 1);
        Rational x0 = Rational::parse(trim(inner.substr(0, colon)));
        Rational x1 = Rational::parse(trim(inner.substr(colon + 1)));
        return normalize(x0, x1);
    }
    if (text.empty()) throw ParseError("empty point", 0);
    return affine(Rational::parse(text));
}

std::optional<Rational> ProjPoint::affine_value() const {
    if (is_infinity()) return std::nullopt;
    return Rational(a0_, a1_);
}

BigInt ProjPoint::height_bound() const {
    BigInt x = abs(a0_), y = abs(a1_);
    return x > y ? x : y;
}

std::string ProjPoint::to_string() const { return "[" + to_decimal(a0_) + ":" + to_decimal(a1_) + "]"; }

std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
    if (a.is_infinity() || b.is_infinity()) {
        if (a.is_infinity() && b.is_infinity()) return std::strong_ordering::equal;
        return a.is_infinity() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    // Denominators are positive, so cross-multiplication preserves order.
    int c = cmp(BigInt(a.a0_ * b.a1_), BigInt(b.a0_ * a.a1_));
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

BigInt cross_term(const ProjPoint& P, const ProjPoint& Q) { return P.x0() * Q.x1() - P.x1() * Q.x0(); }

double ChordalValue::approx() const {
    if (const auto* q = std::get_if<Rational>(&value)) return q->value().get_d();
    return std::get<double>(value);
}

ChordalValue chordal_distance(const ProjPoint& P, const ProjPoint& Q, const Place& place) {
    const BigInt cross = cross_term(P, Q);
    if (const auto* p = std::get_if<BigInt>(&place)) {
        if (!is_prime(*p)) throw PreconditionError("chordal distance at non-prime " + to_decimal(*p));
        if (cross == 0) return {place, Rational(0)};
        // Normalized coordinates have max(|a0|_p, |a1|_p) = 1.
        BigInt denom;
        mpz_pow_ui(denom.get_mpz_t(), p->get_mpz_t(), static_cast<unsigned long>(valuation(cross, *p)));
        return {place, Rational(BigInt(1), denom)};
    }
    if (cross == 0) return {place, 0.0};
    mpf_class num(abs(cross), 256);
    mpf_class np(P.x0() * P.x0() + P.x1() * P.x1(), 256);
    mpf_class nq(Q.x0() * Q.x0() + Q.x1() * Q.x1(), 256);
    mpf_class ratio(0, 256);
    ratio = num / (sqrt(np) * sqrt(nq));
    return {place, ratio.get_d()};
}

}  // namespace arithdyn
