#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "arithdyn/arith.hpp"

namespace arithdyn {

/// A point [a0:a1] of the projective line over Q in normalized coordinates:
/// coprime integers, not both zero, last nonzero coordinate positive.
/// Infinity is [1:0].
class ProjPoint {
public:
    ProjPoint() : a0_(0), a1_(1) {}
    /// Normalizes (a0, a1); throws PreconditionError on (0, 0).
    ProjPoint(BigInt a0, BigInt a1);

    static ProjPoint infinity() { return ProjPoint(1, 0); }
    static ProjPoint affine(const Rational& x) { return ProjPoint(x.num(), x.den()); }

    /// Accepts "[a0:a1]" with integer or rational entries, an affine
    /// rational "x" (read as [x:1]) and "inf".
    static ProjPoint parse(std::string_view text);

    const BigInt& x0() const { return a0_; }
    const BigInt& x1() const { return a1_; }
    bool is_infinity() const { return a1_ == 0; }
    /// x0/x1, or nullopt at infinity.
    std::optional<Rational> affine_value() const;

    /// max(|a0|, |a1|); its log is the height of the point.
    BigInt height_bound() const;
    double log_height() const { return log_abs(height_bound()); }

    std::string to_string() const;

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    /// Total order: affine points by value, infinity last.
    friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b);

private:
    BigInt a0_, a1_;
};

/// The unique normalized representative of [x0:x1].
ProjPoint normalize(const Rational& x0, const Rational& x1);

/// a0*b1 - a1*b0 for normalized coordinates.
BigInt cross_term(const ProjPoint& P, const ProjPoint& Q);

struct Archimedean {
    friend bool operator==(Archimedean, Archimedean) { return true; }
};

/// A place of Q: a rational prime or the archimedean place.
using Place = std::variant<BigInt, Archimedean>;

struct ChordalValue {
    Place place;
    /// Exact at primes; double at the archimedean place (relative error
    /// below 1e-12, never consulted by integrality decisions).
    std::variant<Rational, double> value;

    double approx() const;
};

ChordalValue chordal_distance(const ProjPoint& P, const ProjPoint& Q, const Place& place);

}  // namespace arithdyn
