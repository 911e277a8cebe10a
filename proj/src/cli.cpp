#include "arithdyn/cli.hpp"

#include <chrono>
#include <ctime>

#include "arithdyn/divisors.hpp"
#include "arithdyn/errors.hpp"
#include "arithdyn/parse.hpp"
#include "arithdyn/report.hpp"

namespace arithdyn::cli {

using report::Json;

namespace {

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ProjPoint need(const std::optional<std::string>& text, const char* flag, const std::string& command) {
    if (!text) throw PreconditionError(command + " requires " + flag);
    return ProjPoint::parse(*text);
}

std::optional<ProjPoint> maybe(const std::optional<std::string>& text) {
    if (!text) return std::nullopt;
    return ProjPoint::parse(*text);
}

ProjPoint subject(const CommandConfig& c) {
    if (c.point) return ProjPoint::parse(*c.point);
    return need(c.u, "--point", c.command);
}

SearchOptions options_for(const CommandConfig& c) {
    SearchOptions o;
    o.limits = c.limits;
    o.functorial = c.functorial;
    return o;
}

struct Outcome {
    Json result;
    bool truncated = false;
};

Outcome analyze(const RatMap& f, const CommandConfig& c) {
    Outcome out;
    out.result["critical"] = report::critical(critical_data(f));
    out.result["critical_period_lcm"] = critical_period_lcm(f);
    Json ex = Json::array();
    for (const auto& l : exceptional_points(f, c.limits)) ex.push_back(report::locus(l));
    out.result["exceptional"] = std::move(ex);
    out.result["powering"] = report::powering(is_powering_conjugate(f));
    out.result["height_constant"] = height_constant(f);
    if (auto u = maybe(c.u)) out.result["u"] = report::verdict(certify_wandering(f, *u, c.n.value_or(64)));
    return out;
}

Outcome orbit_cmd(const RatMap& f, const CommandConfig& c) {
    Outcome out;
    const ProjPoint P = subject(c);
    const std::size_t count = c.n.value_or(10);
    const auto pts = orbit(f, P, count, c.limits);
    Json arr = Json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Json e;
        e["index"] = i;
        e["point"] = report::point(pts[i]);
        e["log_height"] = pts[i].log_height();
        arr.push_back(std::move(e));
    }
    out.result["start"] = report::point(P);
    out.result["requested"] = count;
    out.result["orbit"] = std::move(arr);
    out.truncated = pts.size() != count + 1;
    out.result["truncated"] = out.truncated;
    return out;
}

Outcome pairs_cmd(const RatMap& f, const CommandConfig& c) {
    Outcome out;
    const ProjPoint u = need(c.u, "--u", c.command);
    const ProjPoint w = need(c.w, "--w", c.command);
    const auto rep = find_integral_pairs(f, u, w, PlaceSet::parse(c.S), c.window.value_or(PairWindow{6, 6}),
                                         options_for(c));
    out.result = report::pairs(rep);
    out.result["structure"] = report::cosets(detect_coset_structure(rep));
    out.truncated = rep.truncated;
    return out;
}

Outcome divisor_cmd(const RatMap& f, const CommandConfig& c) {
    Outcome out;
    const std::size_t depth = c.n.value_or(2);
    const auto tower = DivisorTower::build(f, depth, c.limits);
    out.result = report::tower(tower);
    Json diag = Json::array();
    for (const auto& p : diagonal_critical_intersections(tower)) diag.push_back(report::point(p));
    out.result["diagonal_critical_intersections"] = std::move(diag);
    if (f.is_polynomial()) {
        Json lead = Json::array();
        for (std::size_t N = 1; N <= depth; ++N) lead.push_back(leading_form_check(f, N, c.limits));
        out.result["leading_form_check"] = std::move(lead);
    }
    if (c.u && c.w) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 1; i <= depth; ++i) idx.push_back(i);
        const auto probe = multi_intersection_probe(tower, ProjPoint::parse(*c.u), ProjPoint::parse(*c.w), idx);
        Json p;
        p["vanishing"] = probe.vanishing;
        Json chain = Json::array();
        for (const auto& l : probe.chain) {
            Json e;
            e["index"] = l.index;
            e["image_x"] = report::point(l.image_x);
            e["image_y"] = report::point(l.image_y);
            e["coincide"] = l.coincide;
            e["critical"] = l.critical;
            chain.push_back(std::move(e));
        }
        p["chain"] = std::move(chain);
        p["chain_holds"] = probe.chain_holds;
        out.result["intersection_probe"] = std::move(p);
    }
    return out;
}

Outcome certify_cmd(const RatMap& f, const CommandConfig& c) {
    Outcome out;
    const ProjPoint P = subject(c);
    out.result["point"] = report::point(P);
    out.result["verdict"] = report::verdict(certify_wandering(f, P, c.n.value_or(64)));
    return out;
}

Outcome powering_cmd(const RatMap& f, const CommandConfig& c) {
    Outcome out;
    out.result["witness"] = report::powering(is_powering_conjugate(f));
    if (c.u || c.w) {
        const ProjPoint u = need(c.u, "--u", c.command);
        const ProjPoint w = need(c.w, "--w", c.command);
        const auto a = powering_pair_analysis(f, u, w, PlaceSet::parse(c.S), c.window.value_or(PairWindow{6, 6}),
                                              options_for(c));
        out.result["analysis"] = report::powering_analysis(a);
        out.result["analysis"]["structure"] = report::cosets(detect_coset_structure(a.report));
        out.truncated = a.report.truncated;
    }
    return out;
}

Outcome exceptional_cmd(const RatMap& f, const CommandConfig& c) {
    Outcome out;
    Json ex = Json::array();
    for (const auto& l : exceptional_points(f, c.limits)) ex.push_back(report::locus(l));
    out.result["exceptional"] = std::move(ex);
    if (c.u) {
        const auto e = exceptional_case_enlarge(f, ProjPoint::parse(*c.u), PlaceSet::parse(c.S),
                                                c.window.value_or(PairWindow{8, 8}), maybe(c.w), options_for(c));
        out.result["enlargement"] = report::enlargement(e);
    }
    return out;
}

Json error_record(const char* kind, const std::exception& e) {
    Json j;
    j["kind"] = kind;
    j["message"] = e.what();
    return j;
}

}  // namespace

PairWindow parse_window(const std::string& text) {
    const auto x = text.find_first_of("xX");
    auto number = [&](const std::string& s, std::size_t at) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 6) {
            throw ParseError("malformed window '" + text + "', expected MxN", at);
        }
        return static_cast<std::size_t>(std::stoul(s));
    };
    if (x == std::string::npos) throw ParseError("malformed window '" + text + "', expected MxN", text.size());
    return {number(text.substr(0, x), 0), number(text.substr(x + 1), x + 1)};
}

RunResult run(const CommandConfig& config) {
    Json doc;
    doc["schema_version"] = report::kSchemaVersion;
    doc["command"] = config.command;
    if (config.timestamp) doc["timestamp"] = utc_now();
    Json input;
    input["map"] = config.map_spec;
    if (config.u) input["u"] = *config.u;
    if (config.w) input["w"] = *config.w;
    if (config.point) input["point"] = *config.point;
    input["S"] = config.S;
    if (!config.window && !config.window_spec.empty()) input["window"] = config.window_spec;
    if (config.window) input["window"] = std::to_string(config.window->m_max) + "x" + std::to_string(config.window->n_max);
    if (config.n) input["n"] = *config.n;
    input["degree_cap"] = config.limits.degree_cap;
    input["digit_budget"] = config.limits.digit_budget;
    doc["input"] = std::move(input);

    RunResult res;
    try {
        CommandConfig cfg = config;
        if (!cfg.window && !cfg.window_spec.empty()) cfg.window = parse_window(cfg.window_spec);
        const RatMap f = parse_map(cfg.map_spec);
        doc["map"] = report::map_summary(f);
        Outcome out;
        if (cfg.command == "analyze") {
            out = analyze(f, cfg);
        } else if (cfg.command == "orbit") {
            out = orbit_cmd(f, cfg);
        } else if (cfg.command == "pairs") {
            out = pairs_cmd(f, cfg);
        } else if (cfg.command == "divisor") {
            out = divisor_cmd(f, cfg);
        } else if (cfg.command == "certify") {
            out = certify_cmd(f, cfg);
        } else if (cfg.command == "powering") {
            out = powering_cmd(f, cfg);
        } else if (cfg.command == "exceptional") {
            out = exceptional_cmd(f, cfg);
        } else {
            throw PreconditionError("unknown command '" + cfg.command + "'");
        }
        doc["status"] = out.truncated ? "truncated" : "ok";
        doc["result"] = std::move(out.result);
        res.status = out.truncated ? kCap : kOk;
    } catch (const ParseError& e) {
        doc["status"] = "error";
        doc["error"] = error_record("parse", e);
        res.status = kPrecondition;
    } catch (const PreconditionError& e) {
        doc["status"] = "error";
        doc["error"] = error_record("precondition", e);
        res.status = kPrecondition;
    } catch (const CapExceeded& e) {
        doc["status"] = "error";
        doc["error"] = error_record("cap", e);
        res.status = kCap;
    } catch (const InvariantFailure& e) {
        doc["status"] = "error";
        doc["error"] = error_record("invariant", e);
        res.status = 1;
    }
    res.document = config.format == "table" ? report::to_table_text(doc) : report::to_json_text(doc);
    return res;
}

}  // namespace arithdyn::cli
