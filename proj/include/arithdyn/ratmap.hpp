#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "arithdyn/arith.hpp"
#include "arithdyn/poly.hpp"
#include "arithdyn/projective.hpp"

namespace arithdyn {

/// Resource caps shared by every operation that builds iterated forms or
/// iterates orbits.
struct Limits {
    std::size_t degree_cap = 4096;       ///< maximum degree of an iterated form
    std::size_t digit_budget = 1000000;  ///< maximum decimal digits per orbit coordinate
};

/// A rational self-map of P^1 over Q of degree d >= 2, as a pair of coprime
/// integer binary forms (P, Q) with content 1. Sign convention: the
/// coefficient of the highest power of x0 appearing in Q is positive.
class RatMap {
public:
    /// Validates and normalizes; throws PreconditionError on degree < 2 or a
    /// common factor.
    static RatMap from_forms(BinaryForm P, BinaryForm Q);

    std::size_t degree() const { return P_.degree(); }
    const BinaryForm& num() const { return P_; }
    const BinaryForm& den() const { return Q_; }
    const BigInt& resultant() const { return resultant_; }
    /// Primes of bad reduction: the prime divisors of Res(P, Q).
    const PlaceSet& bad_primes() const { return bad_primes_; }

    /// Q = c * x1^d, i.e. f is a polynomial in the affine coordinate.
    bool is_polynomial() const;

    /// Canonical coefficient format "num=c_k,...,c_0;den=c_j,...,c_0".
    std::string to_coefficient_string() const;
    /// Affine rendering p(x)/q(x), for humans.
    std::string to_expression() const;

    friend bool operator==(const RatMap& a, const RatMap& b) { return a.P_ == b.P_ && a.Q_ == b.Q_; }

private:
    RatMap() = default;
    BinaryForm P_, Q_;
    BigInt resultant_;
    PlaceSet bad_primes_;
};

/// Builds f = p/q from coefficient lists, highest degree first.
RatMap make_map(std::span<const Rational> num_coeffs, std::span<const Rational> den_coeffs);

ProjPoint eval(const RatMap& f, const ProjPoint& P);
ProjPoint iterate(const RatMap& f, const ProjPoint& P, std::size_t n);

struct IteratedForms {
    BinaryForm P, Q;
};

/// (P_n, Q_n) with P_n/Q_n = f^n, coprime and of content 1. Throws
/// CapExceeded when d^n exceeds the degree cap.
IteratedForms iterated_forms(const RatMap& f, std::size_t n, const Limits& limits = {});

/// f^n as a map in its own right.
RatMap iterate_map(const RatMap& f, std::size_t n, const Limits& limits = {});

/// x -> (a*x + b)/(c*x + d), acting on [x0:x1] as [a*x0 + b*x1 : c*x0 + d*x1].
struct Mobius {
    BigInt a, b, c, d;
    BigInt determinant() const { return a * d - b * c; }
    Mobius inverse() const { return {d, -b, -c, a}; }
    ProjPoint apply(const ProjPoint& P) const;
};

/// sigma o f o sigma^{-1}; throws on a singular sigma.
RatMap conjugate(const RatMap& f, const Mobius& sigma);

PlaceSet bad_reduction_primes(const RatMap& f);

/// Either a rational point or a set of conjugate points cut out by an
/// irreducible (quadratic) or unresolved rootless form.
struct Locus {
    enum class Kind { Rational, Quadratic, Unresolved };
    Kind kind = Kind::Rational;
    std::optional<ProjPoint> point;  ///< set for Kind::Rational
    BinaryForm form;                 ///< primitive defining form (linear for rational points)

    std::size_t point_count() const { return form.degree(); }
    std::string to_string() const;

    friend bool operator==(const Locus& a, const Locus& b) { return a.kind == b.kind && a.form == b.form; }
};

struct CriticalDatum {
    Locus locus;
    unsigned ramification_index = 2;
    bool totally_ramified = false;
    bool periodic = false;
    std::optional<std::size_t> period;
};

/// Critical points from the Wronskian P_x0*Q_x1 - P_x1*Q_x0; a root of
/// multiplicity e-1 has ramification index e. Periodicity is filled in for
/// rational critical points.
std::vector<CriticalDatum> critical_data(const RatMap& f, std::size_t cycle_search = 64);

/// lcm of the periods of the periodic rational critical points (1 if none).
/// Advisory: replacing f by f^M makes those points fixed.
std::size_t critical_period_lcm(const RatMap& f);

/// Totally ramified fixed points of f^2; at most two points in total.
std::vector<Locus> exceptional_points(const RatMap& f, const Limits& limits = {});

struct PoweringWitness {
    bool powering = false;
    /// The f-invariant pair of totally ramified points: two rational loci or
    /// a single quadratic locus.
    std::vector<Locus> pair;
    bool fixed_pointwise = false;  ///< true: x^d type, false: x^-d type
};

PoweringWitness is_powering_conjugate(const RatMap& f);

/// Number of distinct points of f^{-k}(b) over an algebraic closure.
std::size_t preimage_count(const RatMap& f, const ProjPoint& b, std::size_t k, const Limits& limits = {});

struct EscapeCertificate {
    double threshold = 0;       ///< log-height above which heights strictly increase
    std::size_t achieved_at = 0;
    double c_f = 0;             ///< h(f(P)) >= d*h(P) - c_f for all P
};

struct Preperiodic {
    std::size_t tail = 0;
    std::size_t period = 1;
};

struct Undecided {
    std::size_t iterations = 0;
};

using OrbitVerdict = std::variant<Preperiodic, EscapeCertificate, Undecided>;

/// c_f from the Sylvester cofactor identity g1*P + g2*Q = R*x0^(2d-1),
/// h1*P + h2*Q = R*x1^(2d-1).
double height_constant(const RatMap& f);

OrbitVerdict certify_wandering(const RatMap& f, const ProjPoint& u, std::size_t max_iter);

}  // namespace arithdyn
