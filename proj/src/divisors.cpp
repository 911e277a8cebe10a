#include "arithdyn/divisors.hpp"

#include <algorithm>

#include "arithdyn/errors.hpp"

namespace arithdyn {

BiForm::BiForm(std::size_t dx, std::size_t dy) : dx_(dx), dy_(dy), c_((dx + 1) * (dy + 1)) {}

bool BiForm::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const BigInt& c) { return c == 0; });
}

std::size_t BiForm::term_count() const {
    return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const BigInt& c) { return c != 0; }));
}

BigInt BiForm::content() const {
    BigInt g = 0;
    for (const auto& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

BiForm BiForm::normalized() const {
    if (is_zero()) return *this;
    BigInt g = content();
    for (std::size_t i = dx_ + 1; i-- > 0;) {
        bool found = false;
        for (std::size_t k = dy_ + 1; k-- > 0;) {
            if (coeff(i, k) != 0) {
                if (coeff(i, k) < 0) g = -g;
                found = true;
                break;
            }
        }
        if (found) break;
    }
    BiForm out(dx_, dy_);
    for (std::size_t n = 0; n < c_.size(); ++n) mpz_divexact(out.c_[n].get_mpz_t(), c_[n].get_mpz_t(), g.get_mpz_t());
    return out;
}

BiForm BiForm::swapped() const {
    BiForm out(dy_, dx_);
    for (std::size_t i = 0; i <= dx_; ++i) {
        for (std::size_t k = 0; k <= dy_; ++k) out.coeff(k, i) = coeff(i, k);
    }
    return out;
}

BinaryForm BiForm::restrict_diagonal() const {
    std::vector<BigInt> out(dx_ + dy_ + 1);
    for (std::size_t i = 0; i <= dx_; ++i) {
        for (std::size_t k = 0; k <= dy_; ++k) out[i + k] += coeff(i, k);
    }
    return BinaryForm(dx_ + dy_, std::move(out));
}

namespace {

// terms[i] = a0^i * a1^(deg - i)
std::vector<BigInt> monomial_values(const ProjPoint& a, std::size_t deg) {
    std::vector<BigInt> p0(deg + 1), p1(deg + 1), out(deg + 1);
    p0[0] = 1;
    p1[0] = 1;
    for (std::size_t e = 1; e <= deg; ++e) {
        p0[e] = p0[e - 1] * a.x0();
        p1[e] = p1[e - 1] * a.x1();
    }
    for (std::size_t i = 0; i <= deg; ++i) out[i] = p0[i] * p1[deg - i];
    return out;
}

}  // namespace

BigInt BiForm::eval(const ProjPoint& x, const ProjPoint& y) const {
    const auto mx = monomial_values(x, dx_);
    const auto my = monomial_values(y, dy_);
    BigInt acc = 0;
    for (std::size_t i = 0; i <= dx_; ++i) {
        if (mx[i] == 0) continue;
        BigInt row = 0;
        for (std::size_t k = 0; k <= dy_; ++k) {
            if (coeff(i, k) != 0) mpz_addmul(row.get_mpz_t(), coeff(i, k).get_mpz_t(), my[k].get_mpz_t());
        }
        mpz_addmul(acc.get_mpz_t(), row.get_mpz_t(), mx[i].get_mpz_t());
    }
    return acc;
}

BiForm operator*(const BiForm& a, const BiForm& b) {
    BiForm out(a.dx_ + b.dx_, a.dy_ + b.dy_);
    for (std::size_t i = 0; i <= a.dx_; ++i) {
        for (std::size_t k = 0; k <= a.dy_; ++k) {
            const BigInt& ca = a.coeff(i, k);
            if (ca == 0) continue;
            for (std::size_t j = 0; j <= b.dx_; ++j) {
                for (std::size_t l = 0; l <= b.dy_; ++l) {
                    const BigInt& cb = b.coeff(j, l);
                    if (cb != 0) mpz_addmul(out.coeff(i + j, k + l).get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
                }
            }
        }
    }
    return out;
}

BiForm operator-(const BiForm& a, const BiForm& b) {
    if (a.dx_ != b.dx_ || a.dy_ != b.dy_) throw InvariantFailure("subtracting forms of different bidegree");
    BiForm out = a;
    for (std::size_t n = 0; n < out.c_.size(); ++n) out.c_[n] -= b.c_[n];
    return out;
}

BiForm BiForm::scaled(const BigInt& k) const {
    BiForm out = *this;
    for (auto& c : out.c_) c *= k;
    return out;
}

std::string BiForm::to_string() const {
    std::string s;
    for (std::size_t i = dx_ + 1; i-- > 0;) {
        for (std::size_t k = dy_ + 1; k-- > 0;) {
            const BigInt& c = coeff(i, k);
            if (c == 0) continue;
            if (!s.empty()) s += ';';
            s += "(" + std::to_string(i) + "," + std::to_string(dx_ - i) + "," + std::to_string(k) + "," +
                 std::to_string(dy_ - k) + "):" + to_decimal(c);
        }
    }
    return s.empty() ? "0" : s;
}

BiForm outer(const BinaryForm& F, const BinaryForm& G) {
    BiForm out(F.degree(), G.degree());
    for (std::size_t i = 0; i <= F.degree(); ++i) {
        if (F.coeff(i) == 0) continue;
        for (std::size_t k = 0; k <= G.degree(); ++k) out.coeff(i, k) = F.coeff(i) * G.coeff(k);
    }
    return out;
}

std::optional<BiForm> divide_exact(const BiForm& a, const BiForm& b) {
    if (b.is_zero()) throw PreconditionError("division by the zero biform");
    if (a.deg_x() < b.deg_x() || a.deg_y() < b.deg_y()) return std::nullopt;
    const std::size_t qdx = a.deg_x() - b.deg_x(), qdy = a.deg_y() - b.deg_y();
    // Lexicographically leading term of b: largest x0 power, then largest y0 power.
    std::size_t li = 0, lk = 0;
    bool found = false;
    for (std::size_t i = b.deg_x() + 1; i-- > 0 && !found;) {
        for (std::size_t k = b.deg_y() + 1; k-- > 0;) {
            if (b.coeff(i, k) != 0) {
                li = i;
                lk = k;
                found = true;
                break;
            }
        }
    }
    const BigInt& lead = b.coeff(li, lk);
    std::vector<std::pair<std::size_t, std::size_t>> support;
    for (std::size_t i = 0; i <= b.deg_x(); ++i) {
        for (std::size_t k = 0; k <= b.deg_y(); ++k) {
            if (b.coeff(i, k) != 0) support.emplace_back(i, k);
        }
    }
    BiForm rem = a;
    BiForm q(qdx, qdy);
    BigInt t;
    for (std::size_t i = a.deg_x() + 1; i-- > 0;) {
        for (std::size_t k = a.deg_y() + 1; k-- > 0;) {
            if (rem.coeff(i, k) == 0) continue;
            if (i < li || k < lk) return std::nullopt;
            const std::size_t qi = i - li, qk = k - lk;
            if (qi > qdx || qk > qdy) return std::nullopt;
            if (!mpz_divisible_p(rem.coeff(i, k).get_mpz_t(), lead.get_mpz_t())) return std::nullopt;
            mpz_divexact(t.get_mpz_t(), rem.coeff(i, k).get_mpz_t(), lead.get_mpz_t());
            for (const auto& [bi, bk] : support) {
                mpz_submul(rem.coeff(qi + bi, qk + bk).get_mpz_t(), t.get_mpz_t(), b.coeff(bi, bk).get_mpz_t());
            }
            q.coeff(qi, qk) = t;
        }
    }
    return q;
}

BiForm diagonal_form() {
    BiForm g(1, 1);
    g.coeff(1, 0) = 1;   // x0*y1
    g.coeff(0, 1) = -1;  // -x1*y0
    return g;
}

BiForm g_form(const RatMap& f, std::size_t n, const Limits& limits) {
    if (n == 0) return diagonal_form();
    const auto forms = iterated_forms(f, n, limits);
    return (outer(forms.P, forms.Q) - outer(forms.Q, forms.P)).normalized();
}

DivisorTower DivisorTower::build(const RatMap& f, std::size_t depth, const Limits& limits) {
    DivisorTower t(f);
    t.g_.push_back(diagonal_form());
    t.b_.push_back(diagonal_form());
    for (std::size_t k = 1; k <= depth; ++k) {
        BiForm gk = g_form(f, k, limits);
        auto bk = divide_exact(gk, t.g_.back());
        if (!bk) throw InvariantFailure("G_" + std::to_string(k - 1) + " does not divide G_" + std::to_string(k));
        t.b_.push_back(bk->normalized());
        t.g_.push_back(std::move(gk));
    }
    return t;
}

const BiForm& b_component(const DivisorTower& tower, std::size_t i) {
    if (i > tower.depth()) throw PreconditionError("tower depth " + std::to_string(tower.depth()) + " below index " +
                                                   std::to_string(i));
    return tower.b(i);
}

bool leading_form_check(const RatMap& f, std::size_t N, const Limits& limits) {
    if (!f.is_polynomial()) throw PreconditionError("requires polynomial map");
    if (N == 0) throw PreconditionError("leading form check needs N >= 1");
    const auto tower = DivisorTower::build(f, N, limits);
    const BiForm& b = tower.b(N);
    const std::size_t d = f.degree();
    std::size_t step = 1;
    for (std::size_t i = 1; i < N; ++i) step *= d;
    const std::size_t D = (d - 1) * step;
    if (b.deg_x() != D || b.deg_y() != D) return false;
    for (std::size_t i = 0; i <= D; ++i) {
        for (std::size_t k = D - i + 1; k <= D; ++k) {
            if (b.coeff(i, k) != 0) return false;  // total degree above D
        }
    }
    // Top part: affine monomials x^i y^k with i + k = D.
    std::optional<BigInt> lambda;
    for (std::size_t i = 0; i <= D; ++i) {
        const std::size_t k = D - i;
        const BigInt& c = b.coeff(i, k);
        const bool on_support = i % step == 0;
        if (!on_support) {
            if (c != 0) return false;
            continue;
        }
        if (c == 0) return false;
        if (!lambda) lambda = c;
        if (c != *lambda) return false;
    }
    return true;
}

std::vector<ProjPoint> diagonal_critical_intersections(const DivisorTower& tower) {
    if (tower.depth() < 1) throw PreconditionError("tower depth must be at least 1");
    const BinaryForm r = tower.b(1).restrict_diagonal();
    std::vector<ProjPoint> out;
    if (r.is_zero()) throw InvariantFailure("B_1 vanishes on the diagonal");
    for (const auto& fac : factor_form(r)) {
        if (fac.form.degree() == 1) out.emplace_back(-fac.form.coeff(0), fac.form.coeff(1));
    }
    std::sort(out.begin(), out.end());
    return out;
}

IntersectionReport multi_intersection_probe(const DivisorTower& tower, const ProjPoint& xi, const ProjPoint& eta,
                                            std::span<const std::size_t> indices) {
    IntersectionReport rep;
    for (std::size_t i : indices) {
        if (i > tower.depth()) throw PreconditionError("index " + std::to_string(i) + " beyond tower depth");
        if (tower.b(i).eval(xi, eta) == 0) rep.vanishing.push_back(i);
    }
    std::sort(rep.vanishing.begin(), rep.vanishing.end());
    rep.vanishing.erase(std::unique(rep.vanishing.begin(), rep.vanishing.end()), rep.vanishing.end());
    if (rep.vanishing.size() < 2) return rep;
    std::vector<ProjPoint> critical;
    for (const auto& c : critical_data(tower.map(), 0)) {
        if (c.locus.kind == Locus::Kind::Rational) critical.push_back(*c.locus.point);
    }
    for (std::size_t n = 1; n < rep.vanishing.size(); ++n) {
        IntersectionReport::Link link;
        link.index = rep.vanishing[n];
        link.image_x = iterate(tower.map(), xi, link.index - 1);
        link.image_y = iterate(tower.map(), eta, link.index - 1);
        link.coincide = link.image_x == link.image_y;
        link.critical = link.coincide &&
                        std::find(critical.begin(), critical.end(), link.image_x) != critical.end();
        rep.chain_holds = rep.chain_holds && link.critical;
        rep.chain.push_back(std::move(link));
    }
    return rep;
}

}  // namespace arithdyn
