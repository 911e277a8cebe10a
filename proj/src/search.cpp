#include "arithdyn/search.hpp"

#include <algorithm>
#include <set>

#include "arithdyn/errors.hpp"

namespace arithdyn {

std::size_t default_orbit_cap(std::size_t d, const Limits& limits) {
    std::size_t n = 0, deg = 1;
    while (deg <= limits.degree_cap / d) {
        deg *= d;
        ++n;
    }
    return n;
}

namespace {

bool within_budget(const ProjPoint& P, const Limits& limits) {
    // mpz_sizeinbase overestimates by at most one digit.
    return mpz_sizeinbase(P.x0().get_mpz_t(), 10) <= limits.digit_budget &&
           mpz_sizeinbase(P.x1().get_mpz_t(), 10) <= limits.digit_budget;
}

}  // namespace

std::vector<ProjPoint> orbit(const RatMap& f, const ProjPoint& P, std::size_t count, const Limits& limits) {
    std::vector<ProjPoint> out;
    if (!within_budget(P, limits)) return out;
    out.push_back(P);
    for (std::size_t i = 0; i < count; ++i) {
        ProjPoint next = eval(f, out.back());
        if (!within_budget(next, limits)) break;
        out.push_back(std::move(next));
    }
    return out;
}

PairReport find_integral_pairs(const RatMap& f, const ProjPoint& u, const ProjPoint& w, const PlaceSet& S,
                               const PairWindow& window, const SearchOptions& options) {
    const std::size_t cap = options.orbit_cap ? options.orbit_cap : default_orbit_cap(f.degree(), options.limits);
    if (window.m_max > cap || window.n_max > cap) {
        throw PreconditionError("window " + std::to_string(window.m_max) + "x" + std::to_string(window.n_max) +
                                " exceeds the orbit cap " + std::to_string(cap));
    }
    PairReport rep;
    rep.window = window;
    rep.S = S;
    const auto ou = orbit(f, u, window.m_max, options.limits);
    const auto ow = orbit(f, w, window.n_max, options.limits);
    if (ou.empty() || ow.empty()) throw CapExceeded("starting point exceeds the digit budget");
    rep.searched = {ou.size() - 1, ow.size() - 1};
    if (rep.searched != window) {
        rep.truncated = true;
        rep.truncation_reason = "digit budget of " + std::to_string(options.limits.digit_budget) +
                                " digits exceeded; searched " + std::to_string(rep.searched.m_max) + "x" +
                                std::to_string(rep.searched.n_max);
    }

    const bool good = S.includes(f.bad_primes());
    rep.mode = options.functorial && good ? SearchMode::Functorial : SearchMode::Direct;
    std::vector<IteratedForms> forms;
    if (rep.mode == SearchMode::Functorial) {
        const std::size_t depth = std::min(options.functorial_depth, cap);
        for (std::size_t k = 1; k <= depth; ++k) forms.push_back(iterated_forms(f, k, options.limits));
    }

    for (std::size_t m = 0; m <= rep.searched.m_max; ++m) {
        for (std::size_t n = 0; n <= rep.searched.n_max; ++n) {
            IntegralityWitness wit;
            const std::size_t k = rep.mode == SearchMode::Functorial ? std::min({m, n, forms.size()}) : 0;
            if (k == 0) {
                wit = is_integral_pair(ou[m], ow[n], S);
            } else {
                const ProjPoint& a = ou[m - k];
                const ProjPoint& b = ow[n - k];
                const auto& F = forms[k - 1];
                const BigInt cross = F.P.eval(a.x0(), a.x1()) * F.Q.eval(b.x0(), b.x1()) -
                                     F.P.eval(b.x0(), b.x1()) * F.Q.eval(a.x0(), a.x1());
                wit = integrality_witness(cross, S);
            }
            GridCell cell{m, n, wit.verdict, std::nullopt};
            if (!wit.violating_primes.empty()) {
                cell.smallest_violating_prime =
                    *std::min_element(wit.violating_primes.begin(), wit.violating_primes.end());
            }
            rep.grid.push_back(cell);
            if (wit.verdict) rep.pairs.push_back({m, n, std::move(wit)});
        }
    }
    for (const auto& p : rep.pairs) {
        const std::size_t far = std::max(p.m, p.n);
        rep.frontier = rep.frontier ? std::max(*rep.frontier, far) : far;
    }

    auto& h = rep.hypotheses;
    h.u = certify_wandering(f, u, options.certify_iterations);
    h.w = certify_wandering(f, w, options.certify_iterations);
    h.powering = is_powering_conjugate(f);
    h.exceptional = exceptional_points(f, options.limits);
    h.finiteness_hypotheses_hold = std::holds_alternative<EscapeCertificate>(h.u) &&
                             std::holds_alternative<EscapeCertificate>(h.w) && !h.powering.powering;
    return rep;
}

// ---------------------------------------------------------------------------
// Coset structure

namespace {

using Cell = std::pair<std::size_t, std::size_t>;

struct Candidate {
    Coset coset;
    std::vector<Cell> members;
    std::size_t fresh = 0;
};

bool inside(const Cell& c, const PairWindow& w) { return c.first <= w.m_max && c.second <= w.n_max; }

std::vector<Cell> family(const Cell& base, const std::vector<Cell>& gens, const PairWindow& w) {
    std::vector<Cell> out;
    if (gens.empty()) {
        if (inside(base, w)) out.push_back(base);
        return out;
    }
    const Cell g1 = gens[0];
    const Cell g2 = gens.size() > 1 ? gens[1] : Cell{0, 0};
    for (std::size_t a = 0;; ++a) {
        const Cell row{base.first + a * g1.first, base.second + a * g1.second};
        if (!inside(row, w)) break;
        if (gens.size() == 1) {
            out.push_back(row);
        } else {
            for (std::size_t b = 0;; ++b) {
                const Cell c{row.first + b * g2.first, row.second + b * g2.second};
                if (!inside(c, w)) break;
                out.push_back(c);
            }
        }
        if (g1 == Cell{0, 0}) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool better(const Candidate& a, const Candidate& b) {
    if (a.fresh != b.fresh) return a.fresh > b.fresh;
    if (a.coset.generators.size() != b.coset.generators.size())
        return a.coset.generators.size() < b.coset.generators.size();
    if (a.coset.base != b.coset.base) return a.coset.base < b.coset.base;
    return a.coset.generators < b.coset.generators;
}

}  // namespace

CosetStructure detect_coset_structure(const PairReport& report) {
    CosetStructure out;
    const PairWindow& w = report.searched;
    std::set<Cell> pairs;
    for (const auto& p : report.pairs) pairs.insert({p.m, p.n});
    if (pairs.empty()) return out;

    std::set<Cell> gens;
    for (const auto& p : pairs) {
        for (const auto& q : pairs) {
            if (q.first >= p.first && q.second >= p.second && q != p) gens.insert({q.first - p.first, q.second - p.second});
        }
    }
    std::vector<Cell> small;
    for (const auto& g : gens) {
        if (g.first <= 2 && g.second <= 2) small.push_back(g);
    }

    std::set<Cell> covered;
    while (true) {
        std::optional<Candidate> best;
        auto consider = [&](const Cell& base, std::vector<Cell> gs, std::size_t min_size) {
            auto members = family(base, gs, w);
            if (members.size() < min_size) return;
            std::size_t fresh = 0;
            for (const auto& c : members) {
                if (!pairs.count(c)) return;
                if (!covered.count(c)) ++fresh;
            }
            Candidate cand{{base, std::move(gs)}, std::move(members), fresh};
            if (cand.fresh >= 2 && (!best || better(cand, *best))) best = std::move(cand);
        };
        for (const auto& base : pairs) {
            for (const auto& g : gens) consider(base, {g}, 2);
            for (std::size_t i = 0; i < small.size(); ++i) {
                for (std::size_t j = i + 1; j < small.size(); ++j) consider(base, {small[i], small[j]}, 3);
            }
        }
        if (!best) break;
        for (const auto& c : best->members) covered.insert(c);
        out.cosets.push_back(std::move(best->coset));
    }
    for (const auto& p : pairs) {
        if (!covered.count(p)) out.residual.push_back(p);
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> expand(const CosetStructure& cs, const PairWindow& window) {
    std::set<Cell> all;
    for (const auto& c : cs.cosets) {
        for (const auto& m : family(c.base, c.generators, window)) all.insert(m);
    }
    for (const auto& r : cs.residual) {
        if (inside(r, window)) all.insert(r);
    }
    return {all.begin(), all.end()};
}

// ---------------------------------------------------------------------------
// Powering maps

namespace {

PlaceSet support_of_point(const ProjPoint& P) {
    PlaceSet s;
    if (P.x0() != 0) s = s.united(prime_support(P.x0()));
    if (P.x1() != 0) s = s.united(prime_support(P.x1()));
    return s;
}

}  // namespace

PoweringAnalysis powering_pair_analysis(const RatMap& f, const ProjPoint& u, const ProjPoint& w, const PlaceSet& S,
                                        const PairWindow& window, const SearchOptions& options) {
    PoweringAnalysis out;
    out.witness = is_powering_conjugate(f);
    if (!out.witness.powering) throw PreconditionError("map is not conjugate to a powering map");
    for (const auto* P : {&u, &w}) {
        if (P->is_infinity() || P->x0() == 0) {
            throw PreconditionError("point " + P->to_string() + " must be finite and nonzero");
        }
    }
    out.enlarged = S.united(f.bad_primes()).united(support_of_point(u)).united(support_of_point(w));
    out.report = find_integral_pairs(f, u, w, out.enlarged, window, options);
    const auto ou = orbit(f, u, out.report.searched.m_max, options.limits);
    const auto ow = orbit(f, w, out.report.searched.n_max, options.limits);
    for (const auto& p : out.report.pairs) {
        TauAnnotation a{p.m, p.n, std::nullopt, false, false};
        const auto x = ou[p.m].affine_value();
        const auto y = ow[p.n].affine_value();
        if (x && y && !x->is_zero() && !y->is_zero()) {
            const Rational ratio = *x / *y;
            a.tau = ratio - Rational(1);
            a.tau_unit = !a.tau->is_zero() && is_s_unit(*a.tau, out.enlarged);
            a.tau_plus_one_unit = is_s_unit(ratio, out.enlarged);
            out.distinct_taus.push_back(*a.tau);
        }
        out.annotations.push_back(std::move(a));
    }
    std::sort(out.distinct_taus.begin(), out.distinct_taus.end());
    out.distinct_taus.erase(std::unique(out.distinct_taus.begin(), out.distinct_taus.end()), out.distinct_taus.end());
    return out;
}

// ---------------------------------------------------------------------------
// Exceptional points

ExceptionalEnlargement exceptional_case_enlarge(const RatMap& f, const ProjPoint& u, const PlaceSet& S,
                                                const PairWindow& window, const std::optional<ProjPoint>& w,
                                                const SearchOptions& options) {
    std::vector<ProjPoint> rational;
    for (const auto& l : exceptional_points(f, options.limits)) {
        if (l.kind == Locus::Kind::Rational) rational.push_back(*l.point);
    }
    if (rational.empty()) throw PreconditionError("f has no rational exceptional point");
    ProjPoint z;
    if (w) {
        if (std::find(rational.begin(), rational.end(), *w) == rational.end()) {
            throw PreconditionError("w = " + w->to_string() + " is not an exceptional point");
        }
        z = *w;
    } else {
        auto inf = std::find(rational.begin(), rational.end(), ProjPoint::infinity());
        z = inf != rational.end() ? *inf : rational.front();
    }
    {
        ProjPoint p = u;
        for (std::size_t m = 0; m <= window.m_max + 2; ++m) {
            if (std::find(rational.begin(), rational.end(), p) != rational.end()) {
                throw PreconditionError("u hits exceptional point");
            }
            p = eval(f, p);
        }
    }

    ExceptionalEnlargement out;
    out.exceptional = z;
    out.window = window;
    PlaceSet enlarged = S.united(f.bad_primes());
    const ProjPoint fz = eval(f, z);
    Mobius sigma{1, 0, 0, 1};
    if (fz == z) {
        // Send z to infinity; then g^2 is a polynomial.
        if (!z.is_infinity()) {
            sigma = {0, z.x1(), z.x1(), -z.x0()};
            enlarged = enlarged.united(prime_support(z.x1()));
        }
    } else {
        // z and f(z) are swapped: send z to infinity and f(z) to zero.
        sigma = {fz.x1(), -fz.x0(), z.x1(), -z.x0()};
        enlarged = enlarged.united(prime_support(sigma.determinant()));
    }
    const RatMap g = conjugate(f, sigma);
    enlarged = enlarged.united(g.bad_primes());
    const ProjPoint u1 = sigma.apply(u);
    const ProjPoint gu1 = eval(g, u1);
    const auto g2 = iterated_forms(g, 2, options.limits);
    const std::size_t D = g2.Q.degree();
    for (std::size_t i = 1; i <= D; ++i) {
        if (g2.Q.coeff(i) != 0) throw InvariantFailure("second iterate is not polynomial at the exceptional point");
    }
    enlarged = enlarged.united(prime_support(g2.Q.coeff(0))).united(prime_support(g2.P.coeff(D)));
    enlarged = enlarged.united(prime_support(u1.x1())).united(prime_support(gu1.x1()));
    if (!(fz == z)) {
        enlarged = enlarged.united(prime_support(u1.x0())).united(prime_support(gu1.x0()));
        for (const auto& c : g.num().coeffs()) {
            if (c != 0) enlarged = enlarged.united(prime_support(c));
        }
        for (const auto& c : g.den().coeffs()) {
            if (c != 0) enlarged = enlarged.united(prime_support(c));
        }
    }
    out.enlarged = enlarged;

    const auto rep = find_integral_pairs(f, u, z, enlarged, window, options);
    out.failures = static_cast<std::size_t>(
        std::count_if(rep.grid.begin(), rep.grid.end(), [](const GridCell& c) { return !c.verdict; }));
    out.verified = !rep.truncated && out.failures == 0;
    return out;
}

}  // namespace arithdyn
