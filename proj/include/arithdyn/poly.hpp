#pragma once

// Univariate integer polynomials and integer binary forms.
//
// IntPoly stores coefficients lowest degree first. BinaryForm stores a
// homogeneous form of fixed degree D as c[i] = coefficient of x0^i x1^(D-i);
// its dehomogenization at x1 = 1 is the IntPoly with the same vector.

#include <optional>
#include <string>
#include <vector>

#include "arithdyn/arith.hpp"

namespace arithdyn {

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs);
    static IntPoly constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }
    static IntPoly monomial(const BigInt& c, std::size_t degree);

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<BigInt>& coeffs() const { return c_; }
    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
    const BigInt& leading() const { return c_.back(); }

    BigInt content() const;
    IntPoly primitive() const;  // content 1, positive leading coefficient
    IntPoly derivative() const;

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    IntPoly operator-() const;
    IntPoly scaled(const BigInt& k) const;

    friend bool operator==(const IntPoly&, const IntPoly&) = default;

    /// Evaluates the homogenization of degree `degree` at (p, q): sum c_i p^i q^(degree-i).
    BigInt eval_homogeneous(const BigInt& p, const BigInt& q, std::size_t degree) const;

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<BigInt> c_;
};

/// Exact quotient a / b over Z, or nullopt if b does not divide a in Z[x].
std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b);

/// Greatest common divisor in Z[x] (content included), positive leading
/// coefficient. Multi-modular with a trial-division certificate.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

/// Squarefree part of a nonzero primitive polynomial.
IntPoly squarefree_part(const IntPoly& a);

/// Yun's squarefree decomposition of a primitive polynomial of positive
/// degree: a = c * prod f_i^i, returned as (f_i, i) with deg f_i > 0.
std::vector<std::pair<IntPoly, unsigned>> squarefree_decomposition(const IntPoly& a);

/// Distinct rational roots of a nonzero polynomial, ascending.
std::vector<Rational> rational_roots(const IntPoly& a);

class BinaryForm {
public:
    BinaryForm() = default;
    /// coeffs.size() must equal degree + 1.
    BinaryForm(std::size_t degree, std::vector<BigInt> coeffs);
    static BinaryForm zero(std::size_t degree) { return BinaryForm(degree, std::vector<BigInt>(degree + 1)); }
    /// a*x0 + b*x1
    static BinaryForm linear(const BigInt& a, const BigInt& b) { return BinaryForm(1, {b, a}); }
    static BinaryForm from_poly(const IntPoly& p, std::size_t degree);

    std::size_t degree() const { return degree_; }
    const std::vector<BigInt>& coeffs() const { return c_; }
    const BigInt& coeff(std::size_t i) const { return c_[i]; }
    bool is_zero() const;

    /// The dehomogenization F(x, 1).
    IntPoly dehomogenize() const { return IntPoly(c_); }
    /// Multiplicity of the root [1:0], i.e. the power of x1 dividing the form.
    std::size_t infinity_multiplicity() const;

    BigInt content() const;
    BigInt eval(const BigInt& x0, const BigInt& x1) const;

    BinaryForm d_x0() const;
    BinaryForm d_x1() const;

    friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b);
    friend BinaryForm operator-(const BinaryForm& a, const BinaryForm& b);
    friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
    BinaryForm scaled(const BigInt& k) const;
    BinaryForm divided_by(const BigInt& k) const;  // exact
    BinaryForm pow(std::size_t e) const;

    friend bool operator==(const BinaryForm&, const BinaryForm&) = default;

    std::string to_string() const;

private:
    std::size_t degree_ = 0;
    std::vector<BigInt> c_{BigInt(0)};
};

/// F(A, B) for forms A, B of equal degree.
BinaryForm compose(const BinaryForm& F, const BinaryForm& A, const BinaryForm& B);

/// Homogeneous resultant: determinant of the Sylvester matrix of the two
/// forms of their stated degrees.
BigInt resultant(const BinaryForm& P, const BinaryForm& Q);

/// True iff G divides F in Q[x0, x1].
bool form_divides(const BinaryForm& G, const BinaryForm& F);

/// Number of distinct roots of a nonzero form on the projective line over an
/// algebraic closure.
std::size_t distinct_root_count(const BinaryForm& F);

/// One irreducible-over-Q-or-unresolved piece of a binary form.
struct FormFactor {
    /// Primitive factor. Degree 1 is a rational point, degree 2 an
    /// irreducible quadratic; higher degree factors have no rational root and
    /// are left unresolved.
    BinaryForm form;
    unsigned multiplicity = 1;
};

/// Factors a nonzero form into linear factors, irreducible quadratics and
/// unresolved rootless pieces, with multiplicities.
std::vector<FormFactor> factor_form(const BinaryForm& F);

/// Determinant of a square integer matrix by fraction-free elimination.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m);

}  // namespace arithdyn
