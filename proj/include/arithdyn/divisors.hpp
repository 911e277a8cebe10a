#pragma once

// Bihomogeneous forms on P^1 x P^1 and the divisor tower D_0 <= D_1 <= ...
// of a rational map: G_n = P_n(x)Q_n(y) - P_n(y)Q_n(x) cuts out D_n and the
// exact quotients B_n = G_n / G_{n-1} cut out the effective differences.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arithdyn/poly.hpp"
#include "arithdyn/projective.hpp"
#include "arithdyn/ratmap.hpp"

namespace arithdyn {

/// Integer bihomogeneous form of bidegree (dx, dy) in (x0, x1; y0, y1).
/// Coefficient (i, k) multiplies x0^i x1^(dx-i) y0^k y1^(dy-k).
class BiForm {
public:
    BiForm() : BiForm(0, 0) {}
    BiForm(std::size_t dx, std::size_t dy);

    std::size_t deg_x() const { return dx_; }
    std::size_t deg_y() const { return dy_; }
    const BigInt& coeff(std::size_t i, std::size_t k) const { return c_[i * (dy_ + 1) + k]; }
    BigInt& coeff(std::size_t i, std::size_t k) { return c_[i * (dy_ + 1) + k]; }

    bool is_zero() const;
    std::size_t term_count() const;
    BigInt content() const;

    /// Content 1 and positive coefficient at the lexicographically largest
    /// exponent quadruple (i, j, k, l).
    BiForm normalized() const;
    /// F(y, x).
    BiForm swapped() const;
    /// F(x, x) as a binary form of degree dx + dy.
    BinaryForm restrict_diagonal() const;
    BigInt eval(const ProjPoint& x, const ProjPoint& y) const;

    friend BiForm operator*(const BiForm& a, const BiForm& b);
    friend BiForm operator-(const BiForm& a, const BiForm& b);
    BiForm scaled(const BigInt& k) const;
    BiForm operator-() const { return scaled(-1); }

    friend bool operator==(const BiForm&, const BiForm&) = default;

    /// Sparse "(i,j,k,l):c" terms, lexicographically descending, ';'-separated.
    std::string to_string() const;

private:
    std::size_t dx_, dy_;
    std::vector<BigInt> c_;
};

/// F(x) * G(y), bidegree (deg F, deg G).
BiForm outer(const BinaryForm& F, const BinaryForm& G);

/// Exact quotient a / b in Z[x0, x1, y0, y1], or nullopt when b does not divide a.
std::optional<BiForm> divide_exact(const BiForm& a, const BiForm& b);

/// x0*y1 - x1*y0.
BiForm diagonal_form();

/// Normalized G_n for n >= 1 (G_0 is the diagonal form).
BiForm g_form(const RatMap& f, std::size_t n, const Limits& limits = {});

class DivisorTower {
public:
    /// Builds G_0..G_depth and B_0..B_depth. Each B_k is computed by exact
    /// division; a nonzero remainder raises InvariantFailure.
    static DivisorTower build(const RatMap& f, std::size_t depth, const Limits& limits = {});

    const RatMap& map() const { return map_; }
    std::size_t depth() const { return g_.size() - 1; }
    const BiForm& g(std::size_t k) const { return g_.at(k); }
    const BiForm& b(std::size_t k) const { return b_.at(k); }

private:
    explicit DivisorTower(RatMap f) : map_(std::move(f)) {}
    RatMap map_;
    std::vector<BiForm> g_, b_;
};

/// B_i of the tower (B_0 is the diagonal).
const BiForm& b_component(const DivisorTower& tower, std::size_t i);

/// For a polynomial map: is the top-degree part of B_N (affine x, y)
/// proportional to (x^(d^N) - y^(d^N)) / (x^(d^(N-1)) - y^(d^(N-1)))?
bool leading_form_check(const RatMap& f, std::size_t N, const Limits& limits = {});

/// Rational c with B_1 vanishing at (c, c), ascending.
std::vector<ProjPoint> diagonal_critical_intersections(const DivisorTower& tower);

struct IntersectionReport {
    struct Link {
        std::size_t index = 0;   ///< a vanishing index other than the smallest
        ProjPoint image_x;       ///< f^(index-1)(xi)
        ProjPoint image_y;       ///< f^(index-1)(eta)
        bool coincide = false;
        bool critical = false;
    };
    std::vector<std::size_t> vanishing;
    std::vector<Link> chain;
    /// Every link coincides at a critical point.
    bool chain_holds = true;
};

/// Which of the B_i (i in `indices`) vanish at (xi, eta); when two or more
/// do, checks for each vanishing index i above the smallest that
/// f^(i-1)(xi) = f^(i-1)(eta) is a critical point of f.
IntersectionReport multi_intersection_probe(const DivisorTower& tower, const ProjPoint& xi, const ProjPoint& eta,
                                            std::span<const std::size_t> indices);

}  // namespace arithdyn
