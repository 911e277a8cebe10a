// One line per criterion: "criterion N: PASS|FAIL  description  [details]".

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arithdyn/divisors.hpp"
#include "arithdyn/errors.hpp"
#include "arithdyn/integrality.hpp"
#include "arithdyn/parse.hpp"
#include "arithdyn/search.hpp"
#include "../support/oracles.hpp"

using namespace arithdyn;

namespace {

using Cell = std::pair<std::size_t, std::size_t>;

struct Entry {
    std::string expression;
    RatMap map;
};

std::string term(long c, std::size_t k) {
    std::string s = std::to_string(c);
    if (k >= 1) s += "*x";
    if (k >= 2) s += "^" + std::to_string(k);
    return s;
}

// All degree 2 and 3 polynomials with coefficients in [-3, 3], plus five
// non-polynomial maps, as expression strings.
std::vector<Entry> corpus() {
    std::vector<Entry> out;
    for (std::size_t d = 2; d <= 3; ++d) {
        std::vector<long> c(d + 1, -3);
        while (true) {
            if (c[0] != 0) {
                std::string e;
                for (std::size_t i = 0; i <= d; ++i) {
                    if (c[i] == 0) continue;
                    if (!e.empty()) e += c[i] < 0 ? " - " : " + ";
                    e += term(e.empty() ? c[i] : std::labs(c[i]), d - i);
                }
                out.push_back({e, parse_map_expression(e)});
            }
            std::size_t i = 0;
            while (i <= d && c[i] == 3) c[i++] = -3;
            if (i > d) break;
            ++c[i];
        }
    }
    for (const char* e : {"(x^2+1)/x", "(x^2-1)/x", "1/x^2", "(x^3+1)/(x^2-2)", "(2*x^2+x-1)/(x^2+3)"}) {
        out.push_back({e, parse_map_expression(e)});
    }
    return out;
}

std::optional<mpq_class> affine(const ProjPoint& P) {
    if (P.is_infinity()) return std::nullopt;
    return mpq_class(P.x0(), P.x1());
}

oracle::AffineMap affine_map(const RatMap& f) {
    std::vector<mpq_class> p, q;
    for (const auto& c : f.num().coeffs()) p.emplace_back(c);
    for (const auto& c : f.den().coeffs()) q.emplace_back(c);
    return {oracle::QPoly(p), oracle::QPoly(q)};
}

mpz_class oracle_cross(const std::optional<mpq_class>& x, const std::optional<mpq_class>& y) {
    auto coords = [](const std::optional<mpq_class>& v) {
        if (!v) return std::pair<mpz_class, mpz_class>{1, 0};
        return std::pair<mpz_class, mpz_class>{v->get_num(), v->get_den()};
    };
    const auto [a0, a1] = coords(x);
    const auto [b0, b1] = coords(y);
    return a0 * b1 - a1 * b0;
}

bool oracle_integral(const mpz_class& cross, const std::vector<long>& S) {
    return cross != 0 && oracle::strip(cross, S) == 1;
}

std::set<Cell> brute_force(const RatMap& f, const ProjPoint& u, const ProjPoint& w, const std::vector<long>& S,
                           std::size_t M, std::size_t N) {
    const auto g = affine_map(f);
    std::vector<std::optional<mpq_class>> ou{affine(u)}, ow{affine(w)};
    for (std::size_t i = 0; i < M; ++i) ou.push_back(g(ou.back()));
    for (std::size_t i = 0; i < N; ++i) ow.push_back(g(ow.back()));
    std::set<Cell> out;
    for (std::size_t m = 0; m <= M; ++m) {
        for (std::size_t n = 0; n <= N; ++n) {
            if (oracle_integral(oracle_cross(ou[m], ow[n]), S)) out.insert({m, n});
        }
    }
    return out;
}

std::set<Cell> found(const PairReport& r) {
    std::set<Cell> out;
    for (const auto& p : r.pairs) out.insert({p.m, p.n});
    return out;
}

std::vector<long> bad_list(const RatMap& f) {
    std::vector<long> S;
    for (const auto& p : f.bad_primes().primes()) S.push_back(p.get_si());
    return S;
}

PlaceSet places(const std::vector<long>& S) {
    std::vector<BigInt> v;
    for (long p : S) v.emplace_back(p);
    return PlaceSet(v);
}

ProjPoint random_point(std::mt19937_64& rng) {
    if (rng() % 12 == 0) return ProjPoint::infinity();
    return ProjPoint(static_cast<long>(rng() % 15) - 7, 1 + static_cast<long>(rng() % 5));
}

struct Result {
    bool pass = false;
    std::string detail;
};

// -------------------------------------------------------------------------

Result c1() {
    const auto t0 = std::chrono::steady_clock::now();
    const RatMap f = parse_map_expression("x^3");
    const auto r = find_integral_pairs(f, ProjPoint(2, 1), ProjPoint(-2, 1), PlaceSet{2}, {6, 6});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::set<Cell> diag;
    for (std::size_t m = 0; m <= 6; ++m) diag.insert({m, m});
    std::ostringstream d;
    d << found(r).size() << " pairs, " << secs << " s";
    return {found(r) == diag && !r.truncated && secs < 10.0, d.str()};
}

Result c2(const std::vector<Entry>& maps) {
    std::size_t failures = 0;
    for (const auto& e : maps) {
        std::vector<BiForm> G{diagonal_form()};
        for (std::size_t k = 1; k <= 3; ++k) G.push_back(g_form(e.map, k));
        for (std::size_t k = 1; k <= 3; ++k) {
            const auto q = divide_exact(G[k], G[k - 1]);
            if (!q || !((G[k - 1] * *q) == G[k])) ++failures;
        }
        try {
            DivisorTower::build(e.map, 3);
        } catch (const InvariantFailure&) {
            ++failures;
        }
    }
    return {failures == 0, std::to_string(maps.size()) + " maps, " + std::to_string(failures) + " failures"};
}

Result c3(const std::vector<Entry>& maps) {
    std::mt19937_64 rng(2024);
    std::size_t bad = 0;
    for (int t = 0; t < 200; ++t) {
        const RatMap& f = maps[rng() % maps.size()].map;
        const ProjPoint a = random_point(rng), b = random_point(rng);
        const std::size_t n = rng() % 4;
        std::vector<long> S = bad_list(f);
        for (long p : {2L, 3L, 5L, 7L}) {
            if (rng() % 2) S.push_back(p);
        }
        const PlaceSet Sp = places(S);
        const bool lhs = is_integral_rel_Dn(f, a, b, n, Sp).verdict;
        const auto g = affine_map(f);
        auto x = affine(a), y = affine(b);
        for (std::size_t i = 0; i < n; ++i) {
            x = g(x);
            y = g(y);
        }
        const bool rhs = oracle_integral(oracle_cross(x, y), S);
        if (lhs != rhs || !check_functoriality(f, a, b, n, Sp)) ++bad;
    }
    return {bad == 0, "200 instances, " + std::to_string(bad) + " violations"};
}

Result c4(const std::vector<Entry>& maps) {
    std::mt19937_64 rng(4048);
    std::size_t bad = 0, nonvacuous = 0;
    for (int t = 0; t < 200; ++t) {
        const RatMap& f = maps[rng() % maps.size()].map;
        const ProjPoint a = random_point(rng), b = random_point(rng);
        std::size_t m = rng() % 4, n = rng() % 4;
        if (m > n) std::swap(m, n);
        std::vector<long> S = bad_list(f);
        for (long p : {2L, 3L, 5L, 7L}) {
            if (rng() % 2) S.push_back(p);
        }
        const PlaceSet Sp = places(S);
        const bool hi = is_integral_rel_Dn(f, a, b, n, Sp).verdict;
        const bool lo = is_integral_rel_Dn(f, a, b, m, Sp).verdict;
        nonvacuous += hi;
        if ((hi && !lo) || !monotonicity_check(f, a, b, m, n, Sp)) ++bad;
    }
    return {bad == 0, "200 instances (" + std::to_string(nonvacuous) + " non-vacuous), " + std::to_string(bad) +
                          " violations"};
}

Result c5(const std::vector<Entry>& maps) {
    std::size_t bad = 0, checked = 0, exceptional_checked = 0;
    for (const auto& e : maps) {
        std::vector<ProjPoint> ex;
        for (const auto& l : exceptional_points(e.map)) {
            if (l.point) ex.push_back(*l.point);
        }
        for (const auto& b : ex) {
            ++exceptional_checked;
            if (preimage_count(e.map, b, 4) != 1) ++bad;
        }
        std::size_t sampled = 0;
        for (long v = 0; sampled < 10; v = v > 0 ? -v : -v + 1) {
            const ProjPoint b(v, 1 + (std::labs(v) % 3 == 2 ? 1 : 0));
            if (std::find(ex.begin(), ex.end(), b) != ex.end()) continue;
            ++sampled;
            ++checked;
            if (preimage_count(e.map, b, 4) < 3) ++bad;
        }
    }
    return {bad == 0, std::to_string(checked) + " generic and " + std::to_string(exceptional_checked) +
                          " exceptional targets, " + std::to_string(bad) + " failures"};
}

Result c6() {
    std::size_t wrong = 0, total = 0;
    std::vector<RatMap> yes;
    for (const char* e : {"x^2", "x^3", "1/x^2"}) yes.push_back(parse_map_expression(e));
    const std::array<Mobius, 5> sigmas{Mobius{1, 1, 0, 1}, Mobius{2, -1, 0, 1}, Mobius{1, 0, 1, 1},
                                       Mobius{2, 1, 1, 1}, Mobius{3, 2, -1, 1}};
    std::vector<RatMap> variants;
    for (std::size_t i = 0; i < sigmas.size(); ++i) variants.push_back(conjugate(yes[i % 3], sigmas[i]));
    for (const auto& f : yes) {
        ++total;
        wrong += !is_powering_conjugate(f).powering;
    }
    for (const auto& f : variants) {
        ++total;
        wrong += !is_powering_conjugate(f).powering;
    }
    for (const char* e : {"x^2+1", "(x^2+1)/x", "x^2-1"}) {
        ++total;
        wrong += is_powering_conjugate(parse_map_expression(e)).powering;
    }
    return {wrong == 0, std::to_string(total) + " maps, " + std::to_string(wrong) + " misclassified"};
}

Result c7(const std::vector<Entry>& maps) {
    std::size_t bad = 0, checked = 0;
    for (const auto& e : maps) {
        if (!e.map.is_polynomial()) continue;
        for (std::size_t N = 1; N <= 3; ++N) {
            ++checked;
            bad += !leading_form_check(e.map, N);
        }
    }
    return {bad == 0, std::to_string(checked) + " checks, " + std::to_string(bad) + " failures"};
}

Result c8(const std::vector<Entry>& maps) {
    std::size_t bad = 0;
    for (const auto& e : maps) {
        const auto tower = DivisorTower::build(e.map, 1);
        std::vector<ProjPoint> expected;
        for (const auto& c : critical_data(e.map, 0)) {
            if (c.locus.point && tower.b(1).eval(*c.locus.point, *c.locus.point) == 0) expected.push_back(*c.locus.point);
        }
        std::sort(expected.begin(), expected.end());
        if (diagonal_critical_intersections(tower) != expected) ++bad;
    }
    return {bad == 0, std::to_string(maps.size()) + " maps, " + std::to_string(bad) + " mismatches"};
}

Result c9(const std::vector<Entry>& maps) {
    bool ok = true;
    std::ostringstream d;
    const auto w = certify_wandering(parse_map_expression("x^2"), ProjPoint(2, 1), 64);
    const auto* cert = std::get_if<EscapeCertificate>(&w);
    ok = ok && cert && cert->achieved_at <= 3;
    d << "x^2 at 2 certified at iterate " << (cert ? std::to_string(cert->achieved_at) : "none");
    const auto p = certify_wandering(parse_map_expression("x^2-1"), ProjPoint(0, 1), 64);
    const auto* pre = std::get_if<Preperiodic>(&p);
    ok = ok && pre && pre->tail == 0 && pre->period == 2;
    d << "; x^2-1 at 0 " << (pre ? "preperiodic" : "not preperiodic");

    std::mt19937_64 rng(99);
    std::size_t violations = 0, points = 0;
    for (const auto& e : maps) {
        const double c = height_constant(e.map);
        const double threshold = c / static_cast<double>(e.map.degree() - 1) + std::log(2.0);
        const std::size_t digits = static_cast<std::size_t>(threshold / std::log(10.0)) + 2;
        for (int k = 0; k < 100; ++k) {
            std::string a = std::to_string(1 + rng() % 9), b = std::to_string(1 + rng() % 9);
            for (std::size_t i = 0; i < digits; ++i) a += static_cast<char>('0' + rng() % 10);
            const std::size_t bl = rng() % (digits + 1);
            for (std::size_t i = 0; i < bl; ++i) b += static_cast<char>('0' + rng() % 10);
            ProjPoint P(BigInt(a) * (rng() % 2 ? 1 : -1), BigInt(b));
            if (rng() % 2) P = ProjPoint(P.x1(), P.x0());
            if (!(P.log_height() > threshold)) continue;
            ++points;
            if (!(eval(e.map, P).log_height() > P.log_height())) ++violations;
        }
    }
    ok = ok && violations == 0;
    d << "; " << points << " points above threshold, " << violations << " violations";
    return {ok, d.str()};
}

Result c10() {
    bool ok = true;
    std::ostringstream d;
    struct Case {
        const char* map;
        long u, w;
    };
    for (const Case& c : {Case{"x^2+1", 1, 3}, Case{"x^2+x+1", 0, 2}}) {
        const RatMap f = parse_map_expression(c.map);
        const auto r = find_integral_pairs(f, ProjPoint(c.u, 1), ProjPoint(c.w, 1), PlaceSet{}, {10, 10});
        const auto pairs = found(r);
        // Independent: integer orbits, |difference| == 1 after stripping (empty) S.
        const auto ref = brute_force(f, ProjPoint(c.u, 1), ProjPoint(c.w, 1), {}, 10, 10);
        bool inner = true;
        for (const auto& [m, n] : pairs) inner = inner && std::max(m, n) <= 4;
        ok = ok && inner && pairs == ref && !r.truncated;
        d << c.map << ": " << pairs.size() << " pairs, frontier "
          << (r.frontier ? std::to_string(*r.frontier) : "none") << (pairs == ref ? ", matches oracle" : ", MISMATCH")
          << "; ";
    }
    return {ok, d.str()};
}

Result c11() {
    bool ok = true;
    std::ostringstream d;
    const RatMap f = parse_map_expression("x^2");
    for (const char* u : {"3", "1/3", "1/2"}) {
        const ProjPoint U = ProjPoint::parse(u);
        const auto e = exceptional_case_enlarge(f, U, PlaceSet{}, {8, 8}, ProjPoint::infinity());
        std::vector<long> S;
        for (const auto& p : e.enlarged.primes()) S.push_back(p.get_si());
        const auto ref = brute_force(f, U, ProjPoint::infinity(), S, 8, 8);
        ok = ok && e.verified && e.failures == 0 && ref.size() == 81;
        d << "u=" << u << " S'={" << e.enlarged.to_string() << "} failures " << e.failures << "; ";
    }
    return {ok, d.str()};
}

std::string run_cli(const std::string& args) {
    const std::string cmd = std::string(ARITHDYN_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    pclose(pipe);
    return out;
}

Result c12(const std::vector<Entry>& maps) {
    std::size_t bad = 0;
    for (const auto& e : maps) {
        const std::string s = e.map.to_coefficient_string();
        const RatMap g = parse_map(s);
        if (!(g == e.map) || g.to_coefficient_string() != s || !(parse_map(e.expression) == e.map)) ++bad;
    }
    const std::vector<std::string> commands{
        "pairs --map 'x^3' --u 2 --w -2 --S 2 --window 6x6 --no-timestamp",
        "divisor --map 'x^2+1' --n 3 --no-timestamp",
        "analyze --map '(x^2+1)/x' --u 3 --no-timestamp --format table",
        "exceptional --map 'x^2' --u 1/3 --window 8x8 --no-timestamp",
    };
    std::size_t nondeterministic = 0;
    for (const auto& c : commands) {
        const std::string a = run_cli(c), b = run_cli(c);
        if (a.empty() || a != b) ++nondeterministic;
    }
    return {bad == 0 && nondeterministic == 0,
            std::to_string(maps.size()) + " expressions, " + std::to_string(bad) + " round-trip failures; " +
                std::to_string(commands.size()) + " CLI commands, " + std::to_string(nondeterministic) +
                " nondeterministic"};
}

}  // namespace

int main() {
    const auto maps = corpus();
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"cube map window is exactly the diagonal", c1},
        {"G_{k-1} divides G_k for k <= 3 on the corpus", [&] { return c2(maps); }},
        {"functoriality on 200 random instances", [&] { return c3(maps); }},
        {"D_n monotonicity on 200 random instances", [&] { return c4(maps); }},
        {"fourth preimages have >= 3 points (1 at exceptional points)", [&] { return c5(maps); }},
        {"powering classification", c6},
        {"leading form of B_N for polynomial maps, N <= 3", [&] { return c7(maps); }},
        {"diagonal critical intersections of B_1", [&] { return c8(maps); }},
        {"escape certification soundness", [&] { return c9(maps); }},
        {"10x10 windows: pairs inside max(m,n) <= 4 and match brute force", c10},
        {"exceptional enlargement makes every 8x8 cell integral", c11},
        {"parser round trip and CLI determinism", [&] { return c12(maps); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        failed += !r.pass;
        std::cout << "criterion " << (i + 1) << ": " << (r.pass ? "PASS" : "FAIL") << "  " << criteria[i].first
                  << "  [" << r.detail << "]" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
