#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arithdyn/cli.hpp"
#include "arithdyn/divisors.hpp"
#include "arithdyn/errors.hpp"
#include "arithdyn/integrality.hpp"
#include "arithdyn/parse.hpp"
#include "arithdyn/search.hpp"

namespace py = pybind11;
using namespace arithdyn;

namespace {

py::object to_py(const BigInt& n) {
    return py::reinterpret_steal<py::object>(PyLong_FromString(to_decimal(n).c_str(), nullptr, 10));
}

BigInt from_py(const py::int_& n) { return parse_bigint(py::str(n).cast<std::string>()); }

ProjPoint point(const py::object& o) {
    if (py::isinstance<py::str>(o)) return ProjPoint::parse(o.cast<std::string>());
    if (py::isinstance<py::int_>(o)) return ProjPoint(from_py(o), 1);
    auto t = o.cast<py::tuple>();
    if (t.size() != 2) throw PreconditionError("point tuples are (x0, x1)");
    return ProjPoint(from_py(t[0]), from_py(t[1]));
}

py::tuple point_tuple(const ProjPoint& P) { return py::make_tuple(to_py(P.x0()), to_py(P.x1())); }

PlaceSet places(const py::object& o) {
    if (py::isinstance<py::str>(o)) return PlaceSet::parse(o.cast<std::string>());
    std::vector<BigInt> v;
    for (auto p : o) v.push_back(from_py(p.cast<py::int_>()));
    return PlaceSet(v);
}

py::dict verdict_dict(const OrbitVerdict& v) {
    py::dict d;
    if (const auto* p = std::get_if<Preperiodic>(&v)) {
        d["kind"] = "preperiodic";
        d["tail"] = p->tail;
        d["period"] = p->period;
    } else if (const auto* e = std::get_if<EscapeCertificate>(&v)) {
        d["kind"] = "wandering";
        d["achieved_at"] = e->achieved_at;
        d["threshold"] = e->threshold;
    } else {
        d["kind"] = "undecided";
    }
    return d;
}

py::object locus_obj(const Locus& l) {
    if (l.point) return point_tuple(*l.point);
    return py::str(l.to_string());
}

}  // namespace

PYBIND11_MODULE(arithdyn, m) {
    m.doc() = "S-integrality of orbits of rational maps on P^1 over Q";

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_OverflowError);
    py::register_exception<InvariantFailure>(m, "InvariantFailure", PyExc_RuntimeError);

    py::class_<RatMap>(m, "RatMap")
        .def_property_readonly("degree", &RatMap::degree)
        .def_property_readonly("resultant", [](const RatMap& f) { return to_py(f.resultant()); })
        .def_property_readonly("bad_primes",
                               [](const RatMap& f) {
                                   py::list out;
                                   for (const auto& p : f.bad_primes().primes()) out.append(to_py(p));
                                   return out;
                               })
        .def_property_readonly("is_polynomial", &RatMap::is_polynomial)
        .def("coefficients", &RatMap::to_coefficient_string)
        .def("__call__", [](const RatMap& f, const py::object& P) { return point_tuple(eval(f, point(P))); })
        .def("__eq__", [](const RatMap& a, const RatMap& b) { return a == b; })
        .def("__repr__", [](const RatMap& f) { return "RatMap(" + f.to_expression() + ")"; });

    m.def("parse_map", [](const std::string& s) { return parse_map(s); }, py::arg("text"));

    m.def(
        "iterate",
        [](const RatMap& f, const py::object& P, std::size_t n) { return point_tuple(iterate(f, point(P), n)); },
        py::arg("f"), py::arg("point"), py::arg("n"));

    m.def(
        "is_integral_pair",
        [](const py::object& P, const py::object& Q, const py::object& S) {
            return is_integral_pair(point(P), point(Q), places(S)).verdict;
        },
        py::arg("p"), py::arg("q"), py::arg("S") = py::str(""));

    m.def(
        "is_integral_rel_Dn",
        [](const RatMap& f, const py::object& a, const py::object& b, std::size_t n, const py::object& S) {
            return is_integral_rel_Dn(f, point(a), point(b), n, places(S)).verdict;
        },
        py::arg("f"), py::arg("a"), py::arg("b"), py::arg("n"), py::arg("S") = py::str(""));

    m.def(
        "find_integral_pairs",
        [](const RatMap& f, const py::object& u, const py::object& w, const py::object& S, std::size_t m_max,
           std::size_t n_max) {
            const auto r = find_integral_pairs(f, point(u), point(w), places(S), {m_max, n_max});
            std::vector<std::pair<std::size_t, std::size_t>> out;
            for (const auto& p : r.pairs) out.emplace_back(p.m, p.n);
            return out;
        },
        py::arg("f"), py::arg("u"), py::arg("w"), py::arg("S"), py::arg("m_max"), py::arg("n_max"));

    m.def(
        "certify_wandering",
        [](const RatMap& f, const py::object& u, std::size_t max_iter) {
            return verdict_dict(certify_wandering(f, point(u), max_iter));
        },
        py::arg("f"), py::arg("u"), py::arg("max_iter") = 64);

    m.def("exceptional_points", [](const RatMap& f) {
        py::list out;
        for (const auto& l : exceptional_points(f)) out.append(locus_obj(l));
        return out;
    });

    m.def("is_powering_conjugate", [](const RatMap& f) { return is_powering_conjugate(f).powering; });

    m.def(
        "preimage_count",
        [](const RatMap& f, const py::object& b, std::size_t k) { return preimage_count(f, point(b), k); },
        py::arg("f"), py::arg("b"), py::arg("k"));

    m.def(
        "b_component",
        [](const RatMap& f, std::size_t i) { return b_component(DivisorTower::build(f, i), i).to_string(); },
        py::arg("f"), py::arg("i"));

    m.def(
        "run",
        [](const std::string& command, const std::string& map, std::optional<std::string> u,
           std::optional<std::string> w, std::optional<std::string> point_, const std::string& S,
           const std::string& window, std::optional<std::size_t> n, const std::string& format, bool timestamp) {
            cli::CommandConfig c;
            c.command = command;
            c.map_spec = map;
            c.u = std::move(u);
            c.w = std::move(w);
            c.point = std::move(point_);
            c.S = S;
            c.window_spec = window;
            c.n = n;
            c.format = format;
            c.timestamp = timestamp;
            const auto r = cli::run(c);
            return py::make_tuple(r.status, r.document);
        },
        py::arg("command"), py::arg("map"), py::arg("u") = py::none(), py::arg("w") = py::none(),
        py::arg("point") = py::none(), py::arg("S") = "", py::arg("window") = "", py::arg("n") = py::none(),
        py::arg("format") = "json", py::arg("timestamp") = false);
}
