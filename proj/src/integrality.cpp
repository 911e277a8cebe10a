#include "arithdyn/integrality.hpp"

#include "arithdyn/errors.hpp"

namespace arithdyn {

IntegralityWitness integrality_witness(const BigInt& cross, const PlaceSet& S) {
    IntegralityWitness w;
    w.cross_term = cross;
    if (cross == 0) {
        w.unfactored = 0;
        return w;
    }
    const BigInt rest = strip_places(cross, S);
    w.verdict = rest == 1;
    if (!w.verdict) {
        auto pf = partial_factor(rest);
        for (auto& [p, e] : pf.primes) w.violating_primes.push_back(p);
        w.unfactored = pf.cofactor;
    }
    return w;
}

IntegralityWitness is_integral_pair(const ProjPoint& P, const ProjPoint& Q, const PlaceSet& S) {
    return integrality_witness(cross_term(P, Q), S);
}

BigInt d_n_cross_form_value(const RatMap& f, const ProjPoint& a, const ProjPoint& b, std::size_t n,
                            const Limits& limits) {
    if (n == 0) return cross_term(a, b);
    const auto forms = iterated_forms(f, n, limits);
    return forms.P.eval(a.x0(), a.x1()) * forms.Q.eval(b.x0(), b.x1()) -
           forms.P.eval(b.x0(), b.x1()) * forms.Q.eval(a.x0(), a.x1());
}

void require_good_reduction_outside(const RatMap& f, const PlaceSet& S) {
    for (const auto& p : f.bad_primes().primes()) {
        if (!S.contains(p)) {
            throw PreconditionError("S is missing the bad-reduction prime " + to_decimal(p));
        }
    }
}

IntegralityWitness is_integral_rel_Dn(const RatMap& f, const ProjPoint& a, const ProjPoint& b, std::size_t n,
                                      const PlaceSet& S, const Limits& limits) {
    require_good_reduction_outside(f, S);
    return integrality_witness(d_n_cross_form_value(f, a, b, n, limits), S);
}

bool check_functoriality(const RatMap& f, const ProjPoint& a, const ProjPoint& b, std::size_t n,
                         const PlaceSet& S, const Limits& limits) {
    const bool lhs = is_integral_rel_Dn(f, a, b, n, S, limits).verdict;
    const bool rhs = is_integral_pair(iterate(f, a, n), iterate(f, b, n), S).verdict;
    return lhs == rhs;
}

bool monotonicity_check(const RatMap& f, const ProjPoint& a, const ProjPoint& b, std::size_t m, std::size_t n,
                        const PlaceSet& S, const Limits& limits) {
    if (m > n) throw PreconditionError("monotonicity check needs m <= n");
    if (!is_integral_rel_Dn(f, a, b, n, S, limits).verdict) return true;
    return is_integral_rel_Dn(f, a, b, m, S, limits).verdict;
}

}  // namespace arithdyn
