#pragma once

#include <vector>

#include "arithdyn/arith.hpp"
#include "arithdyn/projective.hpp"
#include "arithdyn/ratmap.hpp"

namespace arithdyn {

/// Evidence for an S-integrality verdict. With normalized coordinates the
/// finite-place condition reduces to: the cross term is a nonzero S-unit.
struct IntegralityWitness {
    BigInt cross_term;
    /// Primes outside S dividing the cross term that were actually found.
    std::vector<BigInt> violating_primes;
    /// Part of the S-free cross term left unfactored (1 when fully factored).
    BigInt unfactored{1};
    bool verdict = false;
};

/// Builds the witness for a given cross term.
IntegralityWitness integrality_witness(const BigInt& cross, const PlaceSet& S);

/// Is P S-integral relative to Q (equivalently (P, Q) relative to the diagonal)?
/// A point is never integral relative to itself.
IntegralityWitness is_integral_pair(const ProjPoint& P, const ProjPoint& Q, const PlaceSet& S);

/// P_n(a)Q_n(b) - P_n(b)Q_n(a); n = 0 gives a0*b1 - a1*b0.
BigInt d_n_cross_form_value(const RatMap& f, const ProjPoint& a, const ProjPoint& b, std::size_t n,
                            const Limits& limits = {});

/// (a, b) S-integral relative to D_n. Requires S to contain every prime of
/// bad reduction of f.
IntegralityWitness is_integral_rel_Dn(const RatMap& f, const ProjPoint& a, const ProjPoint& b, std::size_t n,
                                      const PlaceSet& S, const Limits& limits = {});

/// Value of the biconditional
///   (a, b) integral rel D_n  <=>  (f^n(a), f^n(b)) integral rel D_0.
bool check_functoriality(const RatMap& f, const ProjPoint& a, const ProjPoint& b, std::size_t n,
                         const PlaceSet& S, const Limits& limits = {});

/// Value of the implication: integral rel D_n => integral rel D_m (m <= n).
bool monotonicity_check(const RatMap& f, const ProjPoint& a, const ProjPoint& b, std::size_t m, std::size_t n,
                        const PlaceSet& S, const Limits& limits = {});

/// Throws PreconditionError naming the first bad-reduction prime missing from S.
void require_good_reduction_outside(const RatMap& f, const PlaceSet& S);

}  // namespace arithdyn
