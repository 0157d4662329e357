#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wheelcalc/checks.hpp"
#include "wheelcalc/enumerative.hpp"
#include "wheelcalc/quotient.hpp"

namespace py = pybind11;
using namespace wc;

namespace {

py::object fraction(const Q& q) {
    // Leaked so it outlives interpreter shutdown.
    static auto* F = new py::object(py::module_::import("fractions").attr("Fraction"));
    return (*F)(py::int_(py::str(q.get_num().get_str())), py::int_(py::str(q.get_den().get_str())));
}

py::object pyint(const mpz_class& z) { return py::int_(py::str(z.get_str())); }

Q to_q(const py::handle& h) {
    Q q(py::str(h).cast<std::string>(), 10);
    q.canonicalize();
    return q;
}

Space space_of(const std::string& s) {
    auto sp = space_from_name(s);
    if (!sp) throw py::value_error("unknown space '" + s + "'");
    return *sp;
}

std::vector<LegKind> kinds_of(const std::vector<std::string>& ks) {
    std::vector<LegKind> out;
    for (auto& k : ks) {
        auto kind = kind_from_name(k);
        if (!kind) throw py::value_error("unknown leg kind '" + k + "'");
        out.push_back(*kind);
    }
    return out;
}

CheckConfig config_of(const py::dict& kw) {
    CheckConfig c;
    for (auto [k, v] : kw) {
        auto key = k.cast<std::string>();
        int x = v.cast<int>();
        if (key == "t1") c.trunc.t1 = x;
        else if (key == "t2") c.trunc.t2 = x;
        else if (key == "seed") c.seed = static_cast<std::uint64_t>(x);
        else if (key == "word_n" || key == "order") c.word_n = x;
        else if (key == "card_n") c.card_n = x;
        else if (key == "max_internal") c.max_internal = x;
        else if (key == "max_legs") c.max_legs = x;
        else if (key == "max_blocks") c.max_blocks = x;
        else if (key == "random_pairs") c.random_pairs = x;
        else throw py::key_error("unknown setting '" + key + "'");
    }
    return c;
}

py::dict result_dict(const CheckResult& r) {
    py::dict d;
    d["id"] = r.id;
    d["criterion"] = r.criterion;
    d["status"] = std::string(status_name(r.status));
    d["instances"] = r.instances;
    d["counterexample"] = r.counterexample;
    d["detail"] = r.detail;
    d["tested"] = r.tested;
    d["seconds"] = r.seconds;
    return d;
}

}  // namespace

PYBIND11_MODULE(_wheelcalc, m) {
    m.doc() = "Exact diagrammatic calculus on Jacobi and Weil diagrams";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded");
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);

    py::class_<LinComb>(m, "LinComb")
        .def(py::init([](const std::string& space) { return LinComb(space_of(space)); }), py::arg("space") = "B")
        .def_static(
            "from_text", [](const std::string& t, const std::string& s) { return lincomb_from_text(t, space_of(s)); },
            py::arg("text"), py::arg("space") = "B")
        .def_static("from_json", &lincomb_from_json_text)
        .def_static(
            "diagram",
            [](const std::string& d, const std::string& s, const py::object& c) {
                return LinComb::of(parse(d, space_of(s)), to_q(c));
            },
            py::arg("text"), py::arg("space") = "B", py::arg("coeff") = 1)
        .def_property_readonly("space", [](const LinComb& x) { return std::string(space_name(x.space)); })
        .def("terms",
             [](const LinComb& x) {
                 py::list out;
                 for (auto& [d, c] : x.terms) out.append(py::make_tuple(serialize(d), fraction(c)));
                 return out;
             })
        .def("coeff", [](const LinComb& x, const std::string& d) { return fraction(x.coeff(parse(d, x.space))); })
        .def("is_zero", &LinComb::is_zero)
        .def("__len__", &LinComb::size)
        .def("to_text", [](const LinComb& x) { return to_text(x); })
        .def("to_json", [](const LinComb& x) { return to_json_text(x); })
        .def("retagged", [](const LinComb& x, const std::string& s) { return x.retagged(space_of(s)); })
        .def("__add__", [](const LinComb& x, const LinComb& y) { return x + y; })
        .def("__sub__", [](const LinComb& x, const LinComb& y) { return x - y; })
        .def("__rmul__", [](const LinComb& x, const py::object& c) { return to_q(c) * x; })
        .def("__mul__", [](const LinComb& x, const py::object& c) { return to_q(c) * x; })
        .def("__eq__", [](const LinComb& x, const LinComb& y) { return x == y; })
        .def("__repr__", [](const LinComb& x) { return "<LinComb " + std::string(space_name(x.space)) + " " +
                                                        std::to_string(x.size()) + " terms>"; });

    m.def("juxtapose", py::overload_cast<const LinComb&, const LinComb&>(&juxtapose));
    m.def("disjoint_union", py::overload_cast<const LinComb&, const LinComb&>(&disjoint_union));
    m.def("apply_map", &apply_map, py::arg("name"), py::arg("v"));
    m.def("map_source", [](const std::string& n) { return std::string(space_name(map_source(n))); });
    m.def("reduce", [](const LinComb& x) { return reduce(x); });
    m.def("equal_mod", &equal_mod);
    m.def("vdash", [](const LinComb& v, const LinComb& w) { return vdash(v, w); });
    m.def("vdash_rewrite", &vdash_rewrite);
    m.def("canonical", [](const std::string& d, const std::string& s) {
        auto c = canonical_form(parse(d, space_of(s)));
        return py::make_tuple(serialize(c.d), c.sign);
    });

    m.def(
        "enumerate_slice",
        [](const std::string& s, int nv, const std::vector<std::string>& legs) {
            std::vector<std::string> out;
            for (auto& d : enumerate_slice({space_of(s), nv, kinds_of(legs)})) out.push_back(serialize(d));
            return out;
        },
        py::arg("space"), py::arg("nv"), py::arg("legs"));
    m.def(
        "dim", [](const std::string& s, int nv, const std::vector<std::string>& legs) {
            return dim({space_of(s), nv, kinds_of(legs)});
        },
        py::arg("space"), py::arg("nv"), py::arg("legs"));

    m.def(
        "series",
        [](const std::string& name, int order) {
            ExactSeries x;
            if (name == "tanh") x = series_tanh(order);
            else if (name == "logcosh") x = series_logcosh(order);
            else if (name == "psi") x = series_psi(order);
            else if (name == "Y") x = series_Y(order);
            else if (name == "Z") x = series_Z(order);
            else if (name == "wheels") x = series_wheels(order);
            else throw py::value_error("unknown series '" + name + "'");
            py::list out;
            for (auto& q : x.c) out.append(fraction(q));
            return out;
        },
        py::arg("name"), py::arg("order"));
    m.def("descent", &descent);
    m.def("phi_number", [](int n) { return pyint(phi_number(n)); });
    m.def("psi_number", [](int n) { return pyint(psi_number(n)); });
    m.def("family_count", [](const std::string& f, int n) {
        auto fam = family_from_name(f);
        if (!fam) throw py::value_error("unknown family '" + f + "'");
        return pyint(family_count(*fam, n));
    });

    m.def("check_ids", [] {
        std::vector<std::string> ids;
        for (auto& c : check_catalog()) ids.push_back(c.id);
        return ids;
    });
    m.def(
        "run_check",
        [](const std::string& id, const py::kwargs& kw) {
            auto cfg = config_of(kw);
            CheckResult r;
            {
                py::gil_scoped_release nogil;
                r = run_check(id, cfg);
            }
            return result_dict(r);
        },
        py::arg("id"));
}
