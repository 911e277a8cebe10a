#include "arithdyn/ratmap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {

// Flips the sign of both forms so that Q's highest-x0 coefficient is positive.
void normalize_sign(BinaryForm& P, BinaryForm& Q) {
    for (std::size_t i = Q.degree() + 1; i-- > 0;) {
        if (Q.coeff(i) == 0) continue;
        if (Q.coeff(i) < 0) {
            P = P.scaled(-1);
            Q = Q.scaled(-1);
        }
        return;
    }
}

void remove_content(BinaryForm& P, BinaryForm& Q) {
    BigInt g = gcd(P.content(), Q.content());
    if (g != 1 && g != 0) {
        P = P.divided_by(g);
        Q = Q.divided_by(g);
    }
}

std::vector<Rational> strip_leading_zeros(std::span<const Rational> coeffs) {
    std::size_t i = 0;
    while (i < coeffs.size() && coeffs[i].is_zero()) ++i;
    return {coeffs.begin() + static_cast<long>(i), coeffs.end()};
}

}  // namespace

RatMap RatMap::from_forms(BinaryForm P, BinaryForm Q) {
    if (P.degree() != Q.degree()) throw PreconditionError("numerator and denominator forms differ in degree");
    if (Q.is_zero()) throw PreconditionError("denominator is zero");
    if (P.degree() < 2) throw PreconditionError("degree below 2");
    remove_content(P, Q);
    normalize_sign(P, Q);
    RatMap f;
    f.resultant_ = arithdyn::resultant(P, Q);
    if (f.resultant_ == 0) throw PreconditionError("p and q not coprime");
    f.P_ = std::move(P);
    f.Q_ = std::move(Q);
    f.bad_primes_ = prime_support(f.resultant_);
    return f;
}

bool RatMap::is_polynomial() const {
    for (std::size_t i = 1; i <= Q_.degree(); ++i) {
        if (Q_.coeff(i) != 0) return false;
    }
    return true;
}

std::string RatMap::to_coefficient_string() const {
    auto list = [](const BinaryForm& F) {
        const IntPoly p = F.dehomogenize();
        std::string s;
        for (long i = p.degree(); i >= 0; --i) {
            if (!s.empty()) s += ',';
            s += to_decimal(p.coeff(static_cast<std::size_t>(i)));
        }
        return s;
    };
    return "num=" + list(P_) + ";den=" + list(Q_);
}

std::string RatMap::to_expression() const {
    const IntPoly p = P_.dehomogenize(), q = Q_.dehomogenize();
    if (q.degree() == 0 && q.coeff(0) == 1) return p.to_string();
    return "(" + p.to_string() + ")/(" + q.to_string() + ")";
}

RatMap make_map(std::span<const Rational> num_coeffs, std::span<const Rational> den_coeffs) {
    const auto num = strip_leading_zeros(num_coeffs);
    const auto den = strip_leading_zeros(den_coeffs);
    if (den.empty()) throw PreconditionError("denominator is zero");
    if (num.empty()) throw PreconditionError("degree below 2");
    const std::size_t d = std::max(num.size(), den.size()) - 1;
    if (d < 2) throw PreconditionError("degree below 2");
    BigInt l = 1;
    for (const auto& c : num) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    for (const auto& c : den) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    auto to_form = [&](const std::vector<Rational>& cs) {
        std::vector<BigInt> out(d + 1);
        const std::size_t deg = cs.size() - 1;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            mpq_class scaled = cs[k].value() * mpq_class(l);
            scaled.canonicalize();
            out[deg - k] = scaled.get_num();
        }
        return BinaryForm(d, std::move(out));
    };
    return RatMap::from_forms(to_form(num), to_form(den));
}

ProjPoint eval(const RatMap& f, const ProjPoint& P) {
    return ProjPoint(f.num().eval(P.x0(), P.x1()), f.den().eval(P.x0(), P.x1()));
}

ProjPoint iterate(const RatMap& f, const ProjPoint& P, std::size_t n) {
    ProjPoint out = P;
    for (std::size_t i = 0; i < n; ++i) out = eval(f, out);
    return out;
}

IteratedForms iterated_forms(const RatMap& f, std::size_t n, const Limits& limits) {
    if (n == 0) throw PreconditionError("iterated forms need n >= 1");
    std::size_t deg = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (deg > limits.degree_cap / f.degree()) {
            throw CapExceeded("form degree cap: degree " + std::to_string(f.degree()) + "^" + std::to_string(n) +
                              " exceeds " + std::to_string(limits.degree_cap));
        }
        deg *= f.degree();
    }
    BinaryForm P = f.num(), Q = f.den();
    for (std::size_t k = 2; k <= n; ++k) {
        BinaryForm nP = compose(f.num(), P, Q);
        BinaryForm nQ = compose(f.den(), P, Q);
        remove_content(nP, nQ);
        P = std::move(nP);
        Q = std::move(nQ);
    }
    normalize_sign(P, Q);
    return {std::move(P), std::move(Q)};
}

RatMap iterate_map(const RatMap& f, std::size_t n, const Limits& limits) {
    auto forms = iterated_forms(f, n, limits);
    return RatMap::from_forms(std::move(forms.P), std::move(forms.Q));
}

ProjPoint Mobius::apply(const ProjPoint& P) const {
    return ProjPoint(a * P.x0() + b * P.x1(), c * P.x0() + d * P.x1());
}

RatMap conjugate(const RatMap& f, const Mobius& sigma) {
    if (sigma.determinant() == 0) throw PreconditionError("singular Mobius transformation");
    const Mobius inv = sigma.inverse();
    const BinaryForm A = BinaryForm::linear(inv.a, inv.b);
    const BinaryForm B = BinaryForm::linear(inv.c, inv.d);
    const BinaryForm P1 = compose(f.num(), A, B);
    const BinaryForm Q1 = compose(f.den(), A, B);
    return RatMap::from_forms(P1.scaled(sigma.a) + Q1.scaled(sigma.b), P1.scaled(sigma.c) + Q1.scaled(sigma.d));
}

PlaceSet bad_reduction_primes(const RatMap& f) { return f.bad_primes(); }

std::string Locus::to_string() const {
    if (kind == Kind::Rational) return point->to_string();
    return "{roots of " + form.to_string() + "}";
}

namespace {

Locus locus_of(const BinaryForm& factor) {
    Locus l;
    l.form = factor;
    if (factor.degree() == 1) {
        l.kind = Locus::Kind::Rational;
        l.point = ProjPoint(-factor.coeff(0), factor.coeff(1));
    } else {
        l.kind = factor.degree() == 2 ? Locus::Kind::Quadratic : Locus::Kind::Unresolved;
    }
    return l;
}

bool locus_less(const Locus& a, const Locus& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind == Locus::Kind::Rational) return *a.point < *b.point;
    return a.form.to_string() < b.form.to_string();
}

BinaryForm wronskian(const RatMap& f) {
    return f.num().d_x0() * f.den().d_x1() - f.num().d_x1() * f.den().d_x0();
}

}  // namespace

std::vector<CriticalDatum> critical_data(const RatMap& f, std::size_t cycle_search) {
    const BinaryForm W = wronskian(f);
    if (W.is_zero()) throw InvariantFailure("vanishing Wronskian");
    std::vector<CriticalDatum> out;
    for (const auto& fac : factor_form(W)) {
        CriticalDatum c;
        c.locus = locus_of(fac.form);
        c.ramification_index = fac.multiplicity + 1;
        c.totally_ramified = c.ramification_index == f.degree();
        if (c.locus.kind == Locus::Kind::Rational && cycle_search > 0) {
            const auto verdict = certify_wandering(f, *c.locus.point, cycle_search);
            if (const auto* pre = std::get_if<Preperiodic>(&verdict); pre && pre->tail == 0) {
                c.periodic = true;
                c.period = pre->period;
            }
        }
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const CriticalDatum& a, const CriticalDatum& b) {
        return locus_less(a.locus, b.locus);
    });
    return out;
}

std::size_t critical_period_lcm(const RatMap& f) {
    std::size_t m = 1;
    for (const auto& c : critical_data(f)) {
        if (c.periodic && c.period) m = std::lcm(m, *c.period);
    }
    return m;
}

std::vector<Locus> exceptional_points(const RatMap& f, const Limits& limits) {
    const RatMap g = iterate_map(f, 2, limits);
    const BinaryForm fixed_form = BinaryForm::linear(0, 1) * g.num() - BinaryForm::linear(1, 0) * g.den();
    std::vector<Locus> out;
    std::size_t count = 0;
    for (const auto& c : critical_data(g, 0)) {
        if (!c.totally_ramified) continue;
        bool fixed = false;
        if (c.locus.kind == Locus::Kind::Rational) {
            fixed = eval(g, *c.locus.point) == *c.locus.point;
        } else {
            fixed = form_divides(c.locus.form, fixed_form);
        }
        if (fixed) {
            count += c.locus.point_count();
            out.push_back(c.locus);
        }
    }
    if (count > 2) throw InvariantFailure("more than two exceptional points");
    return out;
}

PoweringWitness is_powering_conjugate(const RatMap& f) {
    PoweringWitness w;
    std::vector<Locus> total;
    std::size_t count = 0;
    for (const auto& c : critical_data(f, 0)) {
        if (c.totally_ramified) {
            total.push_back(c.locus);
            count += c.locus.point_count();
        }
    }
    if (count != 2) return w;
    if (total.size() == 2 && total[0].kind == Locus::Kind::Rational && total[1].kind == Locus::Kind::Rational) {
        const ProjPoint& a = *total[0].point;
        const ProjPoint& b = *total[1].point;
        const ProjPoint fa = eval(f, a), fb = eval(f, b);
        if (fa == a && fb == b) {
            w.fixed_pointwise = true;
        } else if (!(fa == b && fb == a)) {
            return w;
        }
    } else if (total.size() == 1 && total[0].kind == Locus::Kind::Quadratic) {
        const BinaryForm& q = total[0].form;
        if (!form_divides(q, compose(q, f.num(), f.den()))) return w;
        const BinaryForm fixed_form = BinaryForm::linear(0, 1) * f.num() - BinaryForm::linear(1, 0) * f.den();
        w.fixed_pointwise = form_divides(q, fixed_form);
    } else {
        return w;
    }
    w.powering = true;
    w.pair = std::move(total);
    return w;
}

std::size_t preimage_count(const RatMap& f, const ProjPoint& b, std::size_t k, const Limits& limits) {
    if (k == 0) throw PreconditionError("preimage depth must be positive");
    const auto forms = iterated_forms(f, k, limits);
    const BinaryForm F = forms.P.scaled(b.x1()) - forms.Q.scaled(b.x0());
    return distinct_root_count(F);
}

namespace {

// Solves M x = e_target over Q and returns det(M) * x, an integer vector.
std::vector<BigInt> cofactors(const std::vector<std::vector<BigInt>>& M, const BigInt& det, std::size_t target) {
    const std::size_t n = M.size();
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = M[i][j];
        a[i][n] = i == target ? 1 : 0;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw InvariantFailure("singular Sylvester system");
        std::swap(a[piv], a[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const mpq_class factor = a[r][col] / a[col][col];
            for (std::size_t j = col; j <= n; ++j) a[r][j] -= factor * a[col][j];
        }
    }
    std::vector<BigInt> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        mpq_class x = a[i][n] / a[i][i] * det;
        x.canonicalize();
        if (x.get_den() != 1) throw InvariantFailure("non-integral Sylvester cofactor");
        out[i] = x.get_num();
    }
    return out;
}

}  // namespace

double height_constant(const RatMap& f) {
    const std::size_t d = f.degree();
    const std::size_t n = 2 * d;
    // Column j < d: coefficient j of g1 (x0^j x1^(d-1-j)); column d + j: of g2.
    std::vector<std::vector<BigInt>> M(n, std::vector<BigInt>(n));
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i <= d; ++i) {
            M[i + j][j] += f.num().coeff(i);
            M[i + j][d + j] += f.den().coeff(i);
        }
    }
    const BigInt det = bareiss_determinant(M);
    if (det == 0) throw InvariantFailure("singular Sylvester matrix for a coprime pair");
    BigInt cmax = 1;
    for (std::size_t target : {n - 1, std::size_t{0}}) {
        for (const auto& c : cofactors(M, det, target)) {
            if (abs(c) > cmax) cmax = abs(c);
        }
    }
    return log_abs(det) + std::log(2.0 * static_cast<double>(d)) + log_abs(cmax);
}

OrbitVerdict certify_wandering(const RatMap& f, const ProjPoint& u, std::size_t max_iter) {
    if (max_iter == 0) throw PreconditionError("max_iter must be positive");
    const double c_f = height_constant(f);
    const double threshold = c_f / static_cast<double>(f.degree() - 1) + std::log(2.0);
    std::map<ProjPoint, std::size_t> seen;
    ProjPoint P = u;
    for (std::size_t i = 0; i <= max_iter; ++i) {
        if (auto it = seen.find(P); it != seen.end()) return Preperiodic{it->second, i - it->second};
        seen.emplace(P, i);
        if (P.log_height() > threshold) return EscapeCertificate{threshold, i, c_f};
        if (i < max_iter) P = eval(f, P);
    }
    return Undecided{max_iter};
}

}  // namespace arithdyn
