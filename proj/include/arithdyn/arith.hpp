#pragma once

// Exact integers and rationals, finite sets of primes, p-adic valuations and
// logarithmic heights. Integers are GMP's mpz_class; everything else here is
// built on top of it.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace arithdyn {

using BigInt = mpz_class;

std::string to_decimal(const BigInt& n);
BigInt parse_bigint(std::string_view text);

/// Number of decimal digits of |n| (1 for zero).
std::size_t decimal_digits(const BigInt& n);

/// Natural log of |n|; n must be nonzero. Accurate for arbitrarily large n.
double log_abs(const BigInt& n);

/// Reduced fraction with positive denominator; zero is 0/1.
class Rational {
public:
    Rational() = default;
    Rational(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(const BigInt& n) : value_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(const BigInt& num, const BigInt& den);
    explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

    /// Parses "p/q", "-p/q" or an integer "p".
    static Rational parse(std::string_view text);

    BigInt num() const { return value_.get_num(); }
    BigInt den() const { return value_.get_den(); }
    const mpq_class& value() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    /// Canonical "p/q" form, or "p" when the denominator is 1.
    std::string to_string() const;

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ + b.value_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ - b.value_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ * b.value_)); }
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_{0};
};

bool is_prime(const BigInt& n);

/// A finite set of rational primes. The archimedean place is implicitly a
/// member of every PlaceSet and is never stored.
class PlaceSet {
public:
    PlaceSet() = default;
    explicit PlaceSet(std::vector<BigInt> primes);
    PlaceSet(std::initializer_list<long> primes);

    /// Parses "2,3,7" (whitespace tolerated); the empty string is the empty set.
    static PlaceSet parse(std::string_view text);

    const std::vector<BigInt>& primes() const { return primes_; }
    bool contains(const BigInt& p) const;
    bool includes(const PlaceSet& other) const;
    bool empty() const { return primes_.empty(); }
    std::size_t size() const { return primes_.size(); }

    PlaceSet united(const PlaceSet& other) const;
    PlaceSet with(const BigInt& p) const;

    std::string to_string() const;

    friend bool operator==(const PlaceSet&, const PlaceSet&) = default;

private:
    std::vector<BigInt> primes_;
};

/// v_p(n) for nonzero integer n.
long valuation(const BigInt& n, const BigInt& p);
/// v_p(q) for nonzero rational q; |q|_p = p^(-v_p(q)).
long valuation(const Rational& q, const BigInt& p);

/// |n| with every prime of S divided out.
BigInt strip_places(const BigInt& n, const PlaceSet& S);

bool is_s_unit(const BigInt& n, const PlaceSet& S);
bool is_s_unit(const Rational& q, const PlaceSet& S);

/// log max(|num|, den); log_height(0) = 0.
double log_height(const Rational& q);

using Factorization = std::vector<std::pair<BigInt, unsigned>>;

/// Complete factorization of |n| (n nonzero) by trial division and
/// Pollard-Brent rho. Throws CapExceeded if a composite cofactor resists.
Factorization factor(const BigInt& n);

struct PartialFactorization {
    Factorization primes;
    BigInt cofactor{1};  // unfactored part, 1 when complete
};

/// Best-effort factorization with bounded effort: trial division to
/// `trial_bound`, then rho on cofactors of at most `rho_digits` digits.
PartialFactorization partial_factor(const BigInt& n, unsigned long trial_bound = 10000,
                                    std::size_t rho_digits = 40);

/// Primes dividing n, as a PlaceSet.
PlaceSet prime_support(const BigInt& n);

}  // namespace arithdyn
