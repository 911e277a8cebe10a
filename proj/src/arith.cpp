#include "arithdyn/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "arithdyn/errors.hpp"

namespace arithdyn {

std::string to_decimal(const BigInt& n) { return n.get_str(10); }

BigInt parse_bigint(std::string_view text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    if (i == text.size()) throw ParseError("expected integer", i);
    for (std::size_t j = i; j < text.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(text[j]))) throw ParseError("expected digit", j);
    }
    std::string s(text);
    if (s[0] == '+') s.erase(0, 1);
    return BigInt(s, 10);
}

std::size_t decimal_digits(const BigInt& n) {
    if (n == 0) return 1;
    // mpz_sizeinbase may overshoot by one for base 10.
    std::size_t est = mpz_sizeinbase(n.get_mpz_t(), 10);
    if (est <= 1) return est;
    BigInt pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), 10, est - 1);
    return abs(n) >= pow ? est : est - 1;
}

double log_abs(const BigInt& n) {
    if (n == 0) throw PreconditionError("log of zero");
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw PreconditionError("zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_bigint(text));
    BigInt num = parse_bigint(text.substr(0, slash));
    BigInt den = parse_bigint(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator", slash + 1);
    return Rational(num, den);
}

std::string Rational::to_string() const {
    if (is_integer()) return to_decimal(value_.get_num());
    return to_decimal(value_.get_num()) + "/" + to_decimal(value_.get_den());
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw PreconditionError("division by zero");
    return Rational(mpq_class(a.value_ / b.value_));
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

PlaceSet::PlaceSet(std::vector<BigInt> primes) : primes_(std::move(primes)) {
    for (const auto& p : primes_) {
        if (!is_prime(p)) throw PreconditionError("place set entry " + to_decimal(p) + " is not prime");
    }
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

PlaceSet::PlaceSet(std::initializer_list<long> primes)
    : PlaceSet(std::vector<BigInt>(primes.begin(), primes.end())) {}

PlaceSet PlaceSet::parse(std::string_view text) {
    std::vector<BigInt> out;
    std::size_t start = 0;
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    if (trim(text).empty()) return {};
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto piece = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (piece.empty()) throw ParseError("empty prime in place set", start);
        BigInt p;
        try {
            p = parse_bigint(piece);
        } catch (const ParseError&) {
            throw ParseError("malformed prime '" + std::string(piece) + "'", start);
        }
        if (!is_prime(p)) throw ParseError("'" + std::string(piece) + "' is not prime", start);
        out.push_back(p);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return PlaceSet(std::move(out));
}

bool PlaceSet::contains(const BigInt& p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

bool PlaceSet::includes(const PlaceSet& other) const {
    return std::includes(primes_.begin(), primes_.end(), other.primes_.begin(), other.primes_.end());
}

PlaceSet PlaceSet::united(const PlaceSet& other) const {
    std::vector<BigInt> all = primes_;
    all.insert(all.end(), other.primes_.begin(), other.primes_.end());
    return PlaceSet(std::move(all));
}

PlaceSet PlaceSet::with(const BigInt& p) const { return united(PlaceSet(std::vector<BigInt>{p})); }

std::string PlaceSet::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (i) s += ',';
        s += to_decimal(primes_[i]);
    }
    return s;
}

long valuation(const BigInt& n, const BigInt& p) {
    if (n == 0) throw PreconditionError("valuation of zero undefined");
    if (!is_prime(p)) throw PreconditionError("valuation base " + to_decimal(p) + " is not prime");
    BigInt rest = n;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rational& q, const BigInt& p) {
    if (q.is_zero()) throw PreconditionError("valuation of zero undefined");
    return valuation(q.num(), p) - valuation(q.den(), p);
}

BigInt strip_places(const BigInt& n, const PlaceSet& S) {
    BigInt rest = abs(n);
    if (rest == 0) return rest;
    for (const auto& p : S.primes()) {
        mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    }
    return rest;
}

bool is_s_unit(const BigInt& n, const PlaceSet& S) {
    if (n == 0) throw PreconditionError("S-unit test of zero");
    return strip_places(n, S) == 1;
}

bool is_s_unit(const Rational& q, const PlaceSet& S) {
    if (q.is_zero()) throw PreconditionError("S-unit test of zero");
    return strip_places(q.num(), S) == 1 && strip_places(q.den(), S) == 1;
}

double log_height(const Rational& q) {
    BigInt num = abs(q.num());
    BigInt den = q.den();
    const BigInt& m = num > den ? num : den;
    return log_abs(m);
}

namespace {

// Pollard-Brent rho. Returns a nontrivial factor of composite n, or 0 after
// exhausting the iteration budget.
BigInt rho_factor(const BigInt& n, unsigned long max_iterations) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1; c < 64; ++c) {
        BigInt y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1, iterations = 0;
        const unsigned long m = 128;
        auto step = [&](BigInt& v) {
            v = v * v + c;
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) step(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    step(y);
                    BigInt diff = abs(x - y);
                    q = q * diff;
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
                iterations += m;
            }
            r *= 2;
            if (iterations > max_iterations) break;
        }
        if (g == n) {
            do {
                step(ys);
                BigInt diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
        if (iterations > max_iterations) return 0;
    }
    return 0;
}

void add_factor(Factorization& out, const BigInt& p, unsigned e) {
    for (auto& [q, k] : out) {
        if (q == p) {
            k += e;
            return;
        }
    }
    out.emplace_back(p, e);
}

// Splits composite/prime cofactors with rho; leftovers go to `stuck`.
void split(const BigInt& n, Factorization& out, BigInt& stuck, std::size_t rho_digits,
           unsigned long budget) {
    if (n == 1) return;
    if (is_prime(n)) {
        add_factor(out, n, 1);
        return;
    }
    if (decimal_digits(n) > rho_digits) {
        stuck *= n;
        return;
    }
    BigInt f = rho_factor(n, budget);
    if (f == 0) {
        stuck *= n;
        return;
    }
    BigInt other = n / f;
    split(f, out, stuck, rho_digits, budget);
    split(other, out, stuck, rho_digits, budget);
}

PartialFactorization factor_impl(const BigInt& n, unsigned long trial_bound, std::size_t rho_digits,
                                 unsigned long budget) {
    if (n == 0) throw PreconditionError("factorization of zero");
    PartialFactorization res;
    BigInt rest = abs(n);
    auto trial = [&](unsigned long p) {
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++e;
            }
            res.primes.emplace_back(BigInt(p), e);
        }
    };
    trial(2);
    trial(3);
    for (unsigned long p = 5; p <= trial_bound && rest > 1; p += 6) {
        if (BigInt(p) * p > rest) break;
        trial(p);
        trial(p + 2);
    }
    BigInt stuck = 1;
    split(rest, res.primes, stuck, rho_digits, budget);
    std::sort(res.primes.begin(), res.primes.end());
    // Rho may split a prime power into repeated entries; merge them.
    Factorization merged;
    for (const auto& [p, e] : res.primes) add_factor(merged, p, e);
    res.primes = std::move(merged);
    res.cofactor = stuck;
    return res;
}

}  // namespace

Factorization factor(const BigInt& n) {
    auto res = factor_impl(n, 100000, 200, 50'000'000);
    if (res.cofactor != 1) {
        throw CapExceeded("factorization of a " + std::to_string(decimal_digits(res.cofactor)) +
                          "-digit cofactor did not finish");
    }
    return res.primes;
}

PartialFactorization partial_factor(const BigInt& n, unsigned long trial_bound, std::size_t rho_digits) {
    return factor_impl(n, trial_bound, rho_digits, 200'000);
}

PlaceSet prime_support(const BigInt& n) {
    std::vector<BigInt> ps;
    for (const auto& [p, e] : factor(n)) ps.push_back(p);
    return PlaceSet(std::move(ps));
}

}  // namespace arithdyn
