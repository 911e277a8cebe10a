#include "arithdyn/report.hpp"

#include <functional>
#include <iomanip>
#include <sstream>

#include <openssl/sha.h>

namespace arithdyn::report {

std::string sha256_hex(const std::string& data) {
    unsigned char digest[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
    std::ostringstream out;
    for (unsigned char b : digest) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(b);
    return out.str();
}

std::string big(const BigInt& n) {
    std::string s = to_decimal(n);
    const std::size_t digits = s.size() - (s[0] == '-' ? 1 : 0);
    if (digits <= kElideDigits) return s;
    return "elided(digits=" + std::to_string(digits) + ",sha256=" + sha256_hex(s) + ")";
}

Json point(const ProjPoint& P) { return "[" + big(P.x0()) + ":" + big(P.x1()) + "]"; }

Json witness(const IntegralityWitness& w) {
    Json primes = Json::array();
    for (const auto& p : w.violating_primes) primes.push_back(big(p));
    Json j;
    j["verdict"] = w.verdict;
    j["cross_term"] = big(w.cross_term);
    j["violating_primes"] = std::move(primes);
    if (w.unfactored != 1) j["unfactored"] = big(w.unfactored);
    return j;
}

Json verdict(const OrbitVerdict& v) {
    Json j;
    if (const auto* p = std::get_if<Preperiodic>(&v)) {
        j["kind"] = "preperiodic";
        j["tail"] = p->tail;
        j["period"] = p->period;
    } else if (const auto* e = std::get_if<EscapeCertificate>(&v)) {
        j["kind"] = "wandering";
        j["threshold"] = e->threshold;
        j["achieved_at"] = e->achieved_at;
        j["c_f"] = e->c_f;
    } else {
        j["kind"] = "undecided";
        j["iterations"] = std::get<Undecided>(v).iterations;
    }
    return j;
}

Json locus(const Locus& L) {
    Json j;
    switch (L.kind) {
        case Locus::Kind::Rational:
            j["kind"] = "rational";
            j["point"] = point(*L.point);
            break;
        case Locus::Kind::Quadratic:
            j["kind"] = "quadratic";
            break;
        case Locus::Kind::Unresolved:
            j["kind"] = "unresolved";
            break;
    }
    j["form"] = L.form.to_string();
    j["points"] = L.point_count();
    return j;
}

Json map_summary(const RatMap& f) {
    Json primes = Json::array();
    for (const auto& p : f.bad_primes().primes()) primes.push_back(big(p));
    Json j;
    j["coefficients"] = f.to_coefficient_string();
    j["expression"] = f.to_expression();
    j["degree"] = f.degree();
    j["polynomial"] = f.is_polynomial();
    j["resultant"] = big(f.resultant());
    j["bad_primes"] = std::move(primes);
    return j;
}

Json critical(const std::vector<CriticalDatum>& data) {
    Json arr = Json::array();
    for (const auto& c : data) {
        Json j;
        j["locus"] = locus(c.locus);
        j["ramification_index"] = c.ramification_index;
        j["totally_ramified"] = c.totally_ramified;
        j["periodic"] = c.periodic;
        j["period"] = c.period ? Json(*c.period) : Json(nullptr);
        arr.push_back(std::move(j));
    }
    return arr;
}

Json powering(const PoweringWitness& w) {
    Json pair = Json::array();
    for (const auto& l : w.pair) pair.push_back(locus(l));
    Json j;
    j["powering"] = w.powering;
    j["type"] = !w.powering ? "none" : (w.fixed_pointwise ? "x^d" : "x^-d");
    j["pair"] = std::move(pair);
    return j;
}

namespace {

Json window(const PairWindow& w) {
    Json j;
    j["m_max"] = w.m_max;
    j["n_max"] = w.n_max;
    return j;
}

Json places(const PlaceSet& S) {
    Json arr = Json::array();
    for (const auto& p : S.primes()) arr.push_back(big(p));
    return arr;
}

Json cell(std::size_t m, std::size_t n) { return Json::array({m, n}); }

}  // namespace

Json pairs(const PairReport& r) {
    Json j;
    j["window"] = window(r.window);
    j["searched"] = window(r.searched);
    j["truncated"] = r.truncated;
    if (r.truncated) j["truncation_reason"] = r.truncation_reason;
    j["S"] = places(r.S);
    j["mode"] = r.mode == SearchMode::Direct ? "direct" : "functorial";
    Json list = Json::array();
    for (const auto& p : r.pairs) {
        Json e;
        e["m"] = p.m;
        e["n"] = p.n;
        e["witness"] = witness(p.witness);
        list.push_back(std::move(e));
    }
    j["pairs"] = std::move(list);
    Json grid = Json::array();
    for (const auto& c : r.grid) {
        Json e;
        e["m"] = c.m;
        e["n"] = c.n;
        e["verdict"] = c.verdict;
        e["smallest_violating_prime"] = c.smallest_violating_prime ? Json(big(*c.smallest_violating_prime)) : Json(nullptr);
        grid.push_back(std::move(e));
    }
    j["grid"] = std::move(grid);
    j["frontier"] = r.frontier ? Json(*r.frontier) : Json(nullptr);
    Json h;
    h["u"] = verdict(r.hypotheses.u);
    h["w"] = verdict(r.hypotheses.w);
    h["powering"] = powering(r.hypotheses.powering);
    Json ex = Json::array();
    for (const auto& l : r.hypotheses.exceptional) ex.push_back(locus(l));
    h["exceptional"] = std::move(ex);
    h["finiteness_hypotheses_hold"] = r.hypotheses.finiteness_hypotheses_hold;
    j["hypotheses"] = std::move(h);
    return j;
}

Json cosets(const CosetStructure& cs) {
    Json arr = Json::array();
    for (const auto& c : cs.cosets) {
        Json gens = Json::array();
        for (const auto& g : c.generators) gens.push_back(cell(g.first, g.second));
        Json e;
        e["base"] = cell(c.base.first, c.base.second);
        e["generators"] = std::move(gens);
        arr.push_back(std::move(e));
    }
    Json res = Json::array();
    for (const auto& r : cs.residual) res.push_back(cell(r.first, r.second));
    Json j;
    j["cosets"] = std::move(arr);
    j["residual"] = std::move(res);
    j["scope"] = "window";
    return j;
}

Json powering_analysis(const PoweringAnalysis& a) {
    Json j;
    j["witness"] = powering(a.witness);
    j["enlarged_S"] = places(a.enlarged);
    j["search"] = pairs(a.report);
    Json ann = Json::array();
    for (const auto& t : a.annotations) {
        Json e;
        e["m"] = t.m;
        e["n"] = t.n;
        e["tau"] = t.tau ? Json(t.tau->to_string()) : Json(nullptr);
        e["tau_unit"] = t.tau_unit;
        e["tau_plus_one_unit"] = t.tau_plus_one_unit;
        ann.push_back(std::move(e));
    }
    j["annotations"] = std::move(ann);
    Json taus = Json::array();
    for (const auto& t : a.distinct_taus) taus.push_back(t.to_string());
    j["distinct_taus"] = std::move(taus);
    return j;
}

Json enlargement(const ExceptionalEnlargement& e) {
    Json j;
    j["exceptional_point"] = point(e.exceptional);
    j["enlarged_S"] = places(e.enlarged);
    j["window"] = window(e.window);
    j["verified"] = e.verified;
    j["failures"] = e.failures;
    return j;
}

Json biform(const BiForm& F) {
    Json j;
    j["bidegree"] = Json::array({F.deg_x(), F.deg_y()});
    j["terms"] = F.term_count();
    j["form"] = F.to_string();
    return j;
}

Json tower(const DivisorTower& t) {
    Json j;
    j["depth"] = t.depth();
    Json g = Json::array(), b = Json::array();
    for (std::size_t k = 0; k <= t.depth(); ++k) {
        g.push_back(biform(t.g(k)));
        b.push_back(biform(t.b(k)));
    }
    j["G"] = std::move(g);
    j["B"] = std::move(b);
    return j;
}

std::string to_json_text(const Json& doc) { return doc.dump(2) + "\n"; }

namespace {

std::string scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void flatten(const Json& v, const std::string& path, std::ostringstream& out) {
    if (v.is_object()) {
        for (const auto& [k, child] : v.items()) {
            flatten(child, path.empty() ? k : path + "." + k, out);
        }
    } else if (v.is_array()) {
        if (v.empty()) out << path << "\t[]\n";
        for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out << path << "\t" << scalar(v) << "\n";
    }
}

const Json* find_grid(const Json& v) {
    if (!v.is_object()) return nullptr;
    if (v.contains("grid") && v["grid"].is_array()) return &v["grid"];
    for (const auto& [k, child] : v.items()) {
        if (const Json* g = find_grid(child)) return g;
    }
    return nullptr;
}

}  // namespace

std::string to_table_text(const Json& doc) {
    std::ostringstream out;
    Json copy = doc;
    const Json* grid = find_grid(doc);
    // Grids are printed as a table, not flattened.
    std::function<void(Json&)> strip = [&](Json& v) {
        if (!v.is_object()) return;
        v.erase("grid");
        for (auto& [k, child] : v.items()) strip(child);
    };
    strip(copy);
    flatten(copy, "", out);
    if (grid) {
        out << "\nm\tn\tverdict\tsmallest_violating_prime\n";
        for (const auto& c : *grid) {
            out << c["m"].get<std::size_t>() << "\t" << c["n"].get<std::size_t>() << "\t"
                << (c["verdict"].get<bool>() ? "integral" : "not_integral") << "\t"
                << (c["smallest_violating_prime"].is_null() ? "-" : scalar(c["smallest_violating_prime"])) << "\n";
        }
    }
    return out.str();
}

}  // namespace arithdyn::report
