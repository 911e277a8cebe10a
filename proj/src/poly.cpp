#include "arithdyn/poly.hpp"

#include <algorithm>
#include <mutex>

#include "arithdyn/errors.hpp"

namespace arithdyn {

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(const BigInt& c, std::size_t degree) {
    std::vector<BigInt> v(degree + 1);
    v[degree] = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPoly::content() const {
    BigInt g = 0;
    for (const auto& c : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive() const {
    if (is_zero()) return {};
    BigInt g = content();
    if (c_.back() < 0) g = -g;
    std::vector<BigInt> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) mpz_divexact(out[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(out));
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(out));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
    return IntPoly(std::move(out));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly IntPoly::operator-() const {
    std::vector<BigInt> out(c_);
    for (auto& c : out) c = -c;
    return IntPoly(std::move(out));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            mpz_addmul(out[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        }
    }
    return IntPoly(std::move(out));
}

IntPoly IntPoly::scaled(const BigInt& k) const {
    std::vector<BigInt> out(c_);
    for (auto& c : out) c *= k;
    return IntPoly(std::move(out));
}

BigInt IntPoly::eval_homogeneous(const BigInt& p, const BigInt& q, std::size_t degree) const {
    if (static_cast<long>(degree) < this->degree()) throw PreconditionError("homogenization degree too small");
    BigInt acc = coeff(degree);
    BigInt qpow = 1;
    for (std::size_t k = 1; k <= degree; ++k) {
        qpow *= q;
        acc *= p;
        const BigInt c = coeff(degree - k);
        if (c != 0) mpz_addmul(acc.get_mpz_t(), c.get_mpz_t(), qpow.get_mpz_t());
    }
    return acc;
}

std::string IntPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (long i = degree(); i >= 0; --i) {
        const BigInt& c = c_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        BigInt mag = abs(c);
        if (s.empty()) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        bool unit = mag == 1 && i > 0;
        if (!unit) s += to_decimal(mag);
        if (i > 0) {
            if (!unit) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw PreconditionError("polynomial division by zero");
    if (a.is_zero()) return IntPoly{};
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<BigInt> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    std::vector<BigInt> q(r.size() - db);
    for (std::size_t k = q.size(); k-- > 0;) {
        BigInt& top = r[k + db];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), bc[db].get_mpz_t())) return std::nullopt;
        BigInt t;
        mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), bc[db].get_mpz_t());
        for (std::size_t j = 0; j <= db; ++j) mpz_submul(r[k + j].get_mpz_t(), t.get_mpz_t(), bc[j].get_mpz_t());
        q[k] = t;
    }
    for (const auto& c : r) {
        if (c != 0) return std::nullopt;
    }
    return IntPoly(std::move(q));
}

// ---------------------------------------------------------------------------
// Multi-modular gcd

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using ModPoly = std::vector<u64>;

const std::vector<u64>& gcd_primes(std::size_t at_least) {
    static std::mutex mu;
    static std::vector<u64> primes;
    std::lock_guard lock(mu);
    if (primes.size() < at_least) {
        u64 cand = primes.empty() ? (u64(1) << 62) - 1 : primes.back() - 2;
        if (cand % 2 == 0) --cand;
        while (primes.size() < at_least) {
            if (mpz_probab_prime_p(BigInt(static_cast<unsigned long>(cand)).get_mpz_t(), 30)) primes.push_back(cand);
            cand -= 2;
        }
    }
    return primes;
}

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

u64 reduce(const BigInt& c, u64 p) {
    return mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p));
}

void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly reduce(const IntPoly& a, u64 p) {
    ModPoly out(a.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = reduce(a.coeffs()[i], p);
    trim(out);
    return out;
}

// a mod b, in place; b nonzero.
void rem_mod(ModPoly& a, const ModPoly& b, u64 p) {
    const u64 inv = invmod(b.back(), p);
    while (a.size() >= b.size()) {
        const u64 t = mulmod(a.back(), inv, p);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
            const u64 sub = mulmod(t, b[j], p);
            u64& x = a[shift + j];
            x = x >= sub ? x - sub : x + p - sub;
        }
        trim(a);
    }
}

ModPoly monic_gcd_mod(ModPoly a, ModPoly b, u64 p) {
    while (!b.empty()) {
        rem_mod(a, b, p);
        std::swap(a, b);
    }
    if (a.empty()) return a;
    const u64 inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
    return a;
}

}  // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.is_zero() ? IntPoly{} : (b.leading() < 0 ? -b : b);
    if (b.is_zero()) return a.leading() < 0 ? -a : a;
    BigInt ca = a.content(), cb = b.content(), c;
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    const IntPoly A = a.primitive();
    const IntPoly B = b.primitive();
    if (A.degree() == 0 || B.degree() == 0) return IntPoly::constant(c);

    BigInt gamma;
    mpz_gcd(gamma.get_mpz_t(), A.leading().get_mpz_t(), B.leading().get_mpz_t());

    long best = std::min(A.degree(), B.degree()) + 1;
    std::vector<BigInt> acc;
    BigInt modulus;
    for (std::size_t idx = 0;; ++idx) {
        if (idx >= 4000) throw InvariantFailure("modular gcd failed to converge");
        const u64 p = gcd_primes(idx + 1)[idx];
        if (reduce(A.leading(), p) == 0 || reduce(B.leading(), p) == 0) continue;
        ModPoly g = monic_gcd_mod(reduce(A, p), reduce(B, p), p);
        const long dg = static_cast<long>(g.size()) - 1;
        if (dg == 0) return IntPoly::constant(c);
        if (dg > best) continue;
        const u64 gm = reduce(gamma, p);
        for (auto& x : g) x = mulmod(x, gm, p);
        const BigInt P(static_cast<unsigned long>(p));
        if (dg < best) {
            best = dg;
            acc.assign(g.size(), BigInt(0));
            for (std::size_t i = 0; i < g.size(); ++i) acc[i] = BigInt(static_cast<unsigned long>(g[i]));
            modulus = P;
            for (auto& x : acc) {
                if (x > modulus / 2) x -= modulus;
            }
            continue;
        }
        // CRT: x = acc mod modulus, x = g mod p.
        BigInt minv;
        BigInt mm = modulus % P;
        mpz_invert(minv.get_mpz_t(), mm.get_mpz_t(), P.get_mpz_t());
        const BigInt next_mod = modulus * P;
        bool stable = true;
        for (std::size_t i = 0; i < g.size(); ++i) {
            BigInt diff = BigInt(static_cast<unsigned long>(g[i])) - acc[i];
            diff = diff * minv;
            mpz_fdiv_r(diff.get_mpz_t(), diff.get_mpz_t(), P.get_mpz_t());
            BigInt x = acc[i] + modulus * diff;
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), next_mod.get_mpz_t());
            if (x > next_mod / 2) x -= next_mod;
            if (x != acc[i]) stable = false;
            acc[i] = x;
        }
        modulus = next_mod;
        if (stable) {
            IntPoly cand = IntPoly(acc).primitive();
            if (divide_exact(A, cand) && divide_exact(B, cand)) return cand.scaled(c);
        }
    }
}

IntPoly squarefree_part(const IntPoly& a) {
    if (a.is_zero()) throw PreconditionError("squarefree part of zero");
    const IntPoly A = a.primitive();
    if (A.degree() <= 0) return A;
    const IntPoly g = gcd(A, A.derivative()).primitive();
    auto q = divide_exact(A, g);
    if (!q) throw InvariantFailure("gcd does not divide its argument");
    return q->primitive();
}

std::vector<std::pair<IntPoly, unsigned>> squarefree_decomposition(const IntPoly& a) {
    std::vector<std::pair<IntPoly, unsigned>> out;
    const IntPoly A = a.primitive();
    if (A.degree() <= 0) return out;
    auto exact = [](const IntPoly& x, const IntPoly& y) {
        auto q = divide_exact(x, y);
        if (!q) throw InvariantFailure("inexact division in squarefree decomposition");
        return *q;
    };
    const IntPoly da = A.derivative();
    const IntPoly b = gcd(A, da).primitive();
    IntPoly c = exact(A, b);
    IntPoly d = exact(da, b) - c.derivative();
    for (unsigned i = 1; c.degree() > 0; ++i) {
        const IntPoly ai = gcd(c, d).primitive();
        c = exact(c, ai);
        d = exact(d, ai) - c.derivative();
        if (ai.degree() > 0) out.emplace_back(ai, i);
    }
    return out;
}

namespace {

std::vector<BigInt> divisors(const BigInt& n) {
    std::vector<BigInt> out{1};
    for (const auto& [p, e] : factor(n)) {
        const std::size_t base = out.size();
        BigInt pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Rational> rational_roots(const IntPoly& a) {
    if (a.is_zero()) throw PreconditionError("roots of the zero polynomial");
    std::vector<Rational> roots;
    std::size_t low = 0;
    while (a.coeffs()[low] == 0) ++low;
    if (low > 0) roots.emplace_back(0);
    IntPoly f(std::vector<BigInt>(a.coeffs().begin() + static_cast<long>(low), a.coeffs().end()));
    f = squarefree_part(f);
    const long n = f.degree();
    if (n == 1) {
        roots.emplace_back(-f.coeff(0), f.coeff(1));
    } else if (n == 2) {
        const BigInt disc = f.coeff(1) * f.coeff(1) - 4 * f.coeff(2) * f.coeff(0);
        if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
            const BigInt s = sqrt(disc);
            roots.emplace_back(-f.coeff(1) - s, 2 * f.coeff(2));
            if (s != 0) roots.emplace_back(-f.coeff(1) + s, 2 * f.coeff(2));
        }
    } else if (n > 2) {
        const auto nums = divisors(f.coeff(0));
        const auto dens = divisors(f.leading());
        for (const auto& q : dens) {
            for (const auto& p : nums) {
                if (gcd(p, q) != 1) continue;
                for (const BigInt& s : {BigInt(p), BigInt(-p)}) {
                    if (f.eval_homogeneous(s, q, static_cast<std::size_t>(n)) == 0) roots.emplace_back(s, q);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// ---------------------------------------------------------------------------
// BinaryForm

BinaryForm::BinaryForm(std::size_t degree, std::vector<BigInt> coeffs) : degree_(degree), c_(std::move(coeffs)) {
    if (c_.size() != degree_ + 1) throw InvariantFailure("binary form coefficient count mismatch");
}

BinaryForm BinaryForm::from_poly(const IntPoly& p, std::size_t degree) {
    if (p.degree() > static_cast<long>(degree)) throw PreconditionError("polynomial degree exceeds form degree");
    std::vector<BigInt> c(degree + 1);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) c[i] = p.coeffs()[i];
    return BinaryForm(degree, std::move(c));
}

bool BinaryForm::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const BigInt& c) { return c == 0; });
}

std::size_t BinaryForm::infinity_multiplicity() const {
    std::size_t k = 0;
    for (std::size_t i = degree_ + 1; i-- > 0 && c_[i] == 0;) ++k;
    return k;
}

BigInt BinaryForm::content() const { return dehomogenize().content(); }

BigInt BinaryForm::eval(const BigInt& x0, const BigInt& x1) const {
    return dehomogenize().eval_homogeneous(x0, x1, degree_);
}

BinaryForm BinaryForm::d_x0() const {
    if (degree_ == 0) return zero(0);
    std::vector<BigInt> out(degree_);
    for (std::size_t i = 1; i <= degree_; ++i) out[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return BinaryForm(degree_ - 1, std::move(out));
}

BinaryForm BinaryForm::d_x1() const {
    if (degree_ == 0) return zero(0);
    std::vector<BigInt> out(degree_);
    for (std::size_t i = 0; i < degree_; ++i) out[i] = c_[i] * static_cast<unsigned long>(degree_ - i);
    return BinaryForm(degree_ - 1, std::move(out));
}

BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
    if (a.degree_ != b.degree_) throw InvariantFailure("adding forms of different degree");
    std::vector<BigInt> out(a.c_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.c_[i];
    return BinaryForm(a.degree_, std::move(out));
}

BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) { return a + b.scaled(-1); }

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    std::vector<BigInt> out(a.degree_ + b.degree_ + 1);
    for (std::size_t i = 0; i <= a.degree_; ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j <= b.degree_; ++j) {
            mpz_addmul(out[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        }
    }
    return BinaryForm(a.degree_ + b.degree_, std::move(out));
}

BinaryForm BinaryForm::scaled(const BigInt& k) const {
    std::vector<BigInt> out(c_);
    for (auto& c : out) c *= k;
    return BinaryForm(degree_, std::move(out));
}

BinaryForm BinaryForm::divided_by(const BigInt& k) const {
    std::vector<BigInt> out(c_);
    for (auto& c : out) {
        if (!mpz_divisible_p(c.get_mpz_t(), k.get_mpz_t())) throw InvariantFailure("inexact form scaling");
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), k.get_mpz_t());
    }
    return BinaryForm(degree_, std::move(out));
}

BinaryForm BinaryForm::pow(std::size_t e) const {
    BinaryForm result(0, {BigInt(1)});
    BinaryForm base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::string BinaryForm::to_string() const {
    std::string s;
    for (std::size_t i = degree_ + 1; i-- > 0;) {
        const BigInt& c = c_[i];
        if (c == 0) continue;
        const std::size_t j = degree_ - i;
        BigInt mag = abs(c);
        if (s.empty()) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        std::string mono;
        auto var = [&](const char* name, std::size_t e) {
            if (e == 0) return;
            if (!mono.empty()) mono += "*";
            mono += name;
            if (e > 1) mono += "^" + std::to_string(e);
        };
        var("x0", i);
        var("x1", j);
        if (mono.empty()) {
            s += to_decimal(mag);
        } else {
            if (mag != 1) s += to_decimal(mag) + "*";
            s += mono;
        }
    }
    return s.empty() ? "0" : s;
}

BinaryForm compose(const BinaryForm& F, const BinaryForm& A, const BinaryForm& B) {
    if (A.degree() != B.degree()) throw InvariantFailure("composition with forms of unequal degree");
    const std::size_t d = F.degree();
    const std::size_t e = A.degree();
    std::vector<BinaryForm> apow{BinaryForm(0, {BigInt(1)})};
    std::vector<BinaryForm> bpow{BinaryForm(0, {BigInt(1)})};
    for (std::size_t i = 1; i <= d; ++i) {
        apow.push_back(apow.back() * A);
        bpow.push_back(bpow.back() * B);
    }
    BinaryForm out = BinaryForm::zero(d * e);
    for (std::size_t i = 0; i <= d; ++i) {
        if (F.coeff(i) == 0) continue;
        out = out + (apow[i] * bpow[d - i]).scaled(F.coeff(i));
    }
    return out;
}

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt t = m[i][j] * m[k][k];
                mpz_submul(t.get_mpz_t(), m[i][k].get_mpz_t(), m[k][j].get_mpz_t());
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

BigInt resultant(const BinaryForm& P, const BinaryForm& Q) {
    const std::size_t m = P.degree(), n = Q.degree();
    const std::size_t size = m + n;
    if (size == 0) return 1;
    std::vector<std::vector<BigInt>> syl(size, std::vector<BigInt>(size));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= m; ++j) syl[i][i + j] = P.coeff(m - j);
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= n; ++j) syl[n + i][i + j] = Q.coeff(n - j);
    }
    return bareiss_determinant(std::move(syl));
}

bool form_divides(const BinaryForm& G, const BinaryForm& F) {
    if (G.is_zero()) throw PreconditionError("division by the zero form");
    if (F.is_zero()) return true;
    if (G.degree() > F.degree()) return false;
    if (G.infinity_multiplicity() > F.infinity_multiplicity()) return false;
    return divide_exact(F.dehomogenize().primitive(), G.dehomogenize().primitive()).has_value();
}

std::size_t distinct_root_count(const BinaryForm& F) {
    if (F.is_zero()) throw PreconditionError("root count of the zero form");
    const std::size_t at_inf = F.infinity_multiplicity() > 0 ? 1 : 0;
    const IntPoly g = F.dehomogenize();
    if (g.degree() <= 0) return at_inf;
    return at_inf + static_cast<std::size_t>(squarefree_part(g).degree());
}

std::vector<FormFactor> factor_form(const BinaryForm& F) {
    if (F.is_zero()) throw PreconditionError("factorization of the zero form");
    std::vector<FormFactor> out;
    if (const std::size_t k = F.infinity_multiplicity(); k > 0) {
        out.push_back({BinaryForm::linear(0, 1), static_cast<unsigned>(k)});
    }
    const IntPoly g = F.dehomogenize();
    if (g.degree() <= 0) return out;
    for (auto& [piece, mult] : squarefree_decomposition(g)) {
        IntPoly rest = piece;
        for (const auto& r : rational_roots(piece)) {
            out.push_back({BinaryForm::linear(r.den(), -r.num()), mult});
            auto q = divide_exact(rest, IntPoly({-r.num(), r.den()}));
            if (!q) throw InvariantFailure("rational root does not divide");
            rest = q->primitive();
        }
        if (rest.degree() > 0) {
            out.push_back({BinaryForm::from_poly(rest, static_cast<std::size_t>(rest.degree())), mult});
        }
    }
    return out;
}

}  // namespace arithdyn
