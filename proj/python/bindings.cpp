#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include <mbar/bounds.hpp>
#include <mbar/cli.hpp>
#include <mbar/dyer_lashof.hpp>
#include <mbar/series.hpp>
#include <mbar/stable_graph.hpp>
#include <mbar/target_spaces.hpp>

namespace py = pybind11;
using nlohmann::json;

namespace
{

// Arbitrary-precision integers cross the boundary as Python ints.
py::object to_py(const mbar::BigInt &x)
{
    return py::reinterpret_steal<py::object>(PyLong_FromString(x.str().c_str(), nullptr, 10));
}

mbar::BigInt from_py(const py::handle &x) { return mbar::BigInt(py::str(x).cast<std::string>()); }

py::list coeffs(const mbar::PoincareSeries &s)
{
    py::list out;
    for (const auto &c : s.coeffs())
        out.append(to_py(c));
    return out;
}

py::dict dims(const mbar::GradedDims &d)
{
    py::dict out;
    for (const auto &[deg, c] : d.entries())
        out[py::int_(deg)] = to_py(c);
    return out;
}

mbar::GradedDims dims_from(const py::dict &d)
{
    mbar::GradedDims out;
    for (const auto &[k, v] : d)
        out.add(k.cast<int>(), from_py(v));
    return out;
}

mbar::PoincareSeries series_from(const py::sequence &s)
{
    std::vector<mbar::BigInt> c;
    for (const auto &x : s)
        c.push_back(from_py(x));
    if (c.empty())
        throw mbar::ContractError("a series needs at least one coefficient");
    const int cap = static_cast<int>(c.size()) - 1;
    return mbar::PoincareSeries(cap, std::move(c));
}

py::object fraction(const mbar::Rational &r)
{
    return py::module_::import("fractions").attr("Fraction")(r.numerator(), r.denominator());
}

mbar::StableGraph graph_in(const std::string &text) { return mbar::graph_from_json(json::parse(text)); }
std::string graph_out(const mbar::StableGraph &g) { return json(g).dump(); }

std::string split_out(const mbar::SplitGraph &s)
{
    json comps = json::array();
    for (const auto &c : s.components) {
        json jc{{"vertices", c.vertices}, {"stable", c.stable()}};
        if (c.violation)
            jc["violation"] = {{"rule", mbar::rule_name(c.violation->rule)}, {"vertex", c.violation->vertex},
                               {"message", c.violation->message}};
        comps.push_back(std::move(jc));
    }
    return json{{"graph", s.graph}, {"components", std::move(comps)}}.dump();
}

mbar::DLConvention conv(const std::string &name) { return mbar::parse_convention(name); }

} // namespace

PYBIND11_MODULE(_mbar, m)
{
    m.doc() = "Stable graphs, Dyer-Lashof homology and Betti-number lower bounds for moduli of stable curves";

    // series
    m.def("series_mul", [](const py::sequence &a, const py::sequence &b) {
        return coeffs(mbar::series_mul(series_from(a), series_from(b)));
    });
    m.def(
        "free_graded_commutative",
        [](const py::dict &gens, int characteristic, int cap) {
            return coeffs(mbar::free_graded_commutative(dims_from(gens), mbar::FieldSpec(characteristic), cap));
        },
        py::arg("gens"), py::arg("characteristic"), py::arg("cap"));

    // target spaces
    m.def(
        "classifying_space_series",
        [](const std::string &group, int characteristic, int cap) {
            return coeffs(mbar::classifying_space_series(mbar::parse_group(group), mbar::FieldSpec(characteristic), cap));
        },
        py::arg("group"), py::arg("characteristic"), py::arg("cap"));
    m.def(
        "thom_generator_dims",
        [](const std::string &group, int characteristic, int cap) {
            return dims(mbar::thom_generator_dims(mbar::parse_group(group), mbar::FieldSpec(characteristic), cap));
        },
        py::arg("group"), py::arg("characteristic"), py::arg("cap"));

    // Dyer-Lashof
    m.def(
        "enumerate_dl_basis",
        [](int deg_x, int p, int cap, const std::string &convention) {
            return dims(mbar::enumerate_dl_basis(deg_x, p, cap, conv(convention)));
        },
        py::arg("deg_x"), py::arg("p"), py::arg("cap"), py::arg("convention") = "strict");
    m.def(
        "dl_words",
        [](int deg_x, int p, int cap, const std::string &convention) {
            std::vector<std::string> out;
            mbar::for_each_dl_word(deg_x, p, cap, conv(convention), [&](const mbar::DLWord &w) { out.push_back(json(w).dump()); });
            return out;
        },
        py::arg("deg_x"), py::arg("p"), py::arg("cap"), py::arg("convention") = "strict");
    m.def(
        "qx_homology_series",
        [](const py::dict &gens, int characteristic, int cap, const std::string &convention) {
            return coeffs(mbar::qx_homology_series(dims_from(gens), mbar::FieldSpec(characteristic), cap, conv(convention)));
        },
        py::arg("gens"), py::arg("characteristic"), py::arg("cap"), py::arg("convention") = "strict");

    // graphs, exchanged as JSON text
    m.def("validate", [](const std::string &g) -> py::object {
        const auto v = mbar::validate(graph_in(g));
        if (!v)
            return py::none();
        return py::dict(py::arg("rule") = mbar::rule_name(v->rule), py::arg("vertex") = v->vertex,
                        py::arg("half_edge") = v->half_edge, py::arg("message") = v->message);
    });
    m.def("genus", [](const std::string &g) { return mbar::genus(graph_in(g)); });
    m.def("contract_edges",
          [](const std::string &g, const std::vector<int> &k) { return graph_out(mbar::contract_edges(graph_in(g), k)); });
    m.def("cut_edges", [](const std::string &g, const std::vector<int> &k) { return split_out(mbar::cut_edges(graph_in(g), k)); });
    m.def("delete_edges",
          [](const std::string &g, const std::vector<int> &k) { return split_out(mbar::delete_edges(graph_in(g), k)); });
    m.def("canonical_form", [](const std::string &g) { return mbar::canonical_form(graph_in(g)).canonical_encoding; });
    m.def("is_isomorphic", [](const std::string &a, const std::string &b) { return mbar::is_isomorphic(graph_in(a), graph_in(b)); });
    m.def("automorphisms", [](const std::string &g) {
        const auto group = mbar::automorphisms(graph_in(g));
        py::list gens;
        for (const auto &a : group.generators)
            gens.append(py::dict(py::arg("half_edges") = a.half_edges, py::arg("vertices") = a.vertices));
        return py::make_tuple(to_py(group.order), gens);
    });
    m.def(
        "enumerate_stable_graphs",
        [](int g, int n, std::optional<int> max_edges, int jobs) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto &s : mbar::enumerate_stable_graphs(g, n, max_edges, jobs))
                out.emplace_back(s.iso.canonical_encoding, graph_out(s.representative));
            return out;
        },
        py::arg("g"), py::arg("n"), py::arg("max_edges") = py::none(), py::arg("jobs") = 1);
    m.def("enumerate_elementary", [](int g, int n) {
        std::vector<std::string> out;
        for (const auto &a : mbar::enumerate_elementary(g, n))
            out.push_back(a.name());
        return out;
    });

    // bound engine
    m.def("d_plus", [](int g, int n) {
        std::vector<std::string> out;
        for (const auto &a : mbar::d_plus(g, n))
            out.push_back(a.name());
        return out;
    });
    m.def(
        "c_best",
        [](int g, const std::string &a, const std::string &ell) {
            const auto best = mbar::c_best(g, mbar::parse_level_map(a, ell));
            return py::make_tuple(fraction(best.c), best.m);
        },
        py::arg("g"), py::arg("A"), py::arg("ell") = "");
    m.def(
        "c_real", [](int g, const std::string &a, const std::string &ell) { return fraction(mbar::c_real(g, mbar::parse_level_map(a, ell))); },
        py::arg("g"), py::arg("A"), py::arg("ell") = "");
    m.def(
        "betti_lower_bounds",
        [](int g, int n, const std::string &a, const std::string &ell, int characteristic, int cap, const std::string &convention) {
            return json(mbar::betti_lower_bounds(g, n, mbar::parse_level_map(a, ell), mbar::FieldSpec(characteristic), cap,
                                                 conv(convention)))
                .dump();
        },
        py::arg("g"), py::arg("n"), py::arg("A"), py::arg("ell") = "", py::arg("characteristic") = 0, py::arg("cap") = 10,
        py::arg("convention") = "strict");
    m.def(
        "best_bounds",
        [](int g, int n, int characteristic, int cap, const std::string &convention, int jobs) {
            return json(mbar::best_bounds(g, n, mbar::FieldSpec(characteristic), cap, conv(convention), jobs)).dump();
        },
        py::arg("g"), py::arg("n"), py::arg("characteristic") = 0, py::arg("cap") = 10, py::arg("convention") = "strict",
        py::arg("jobs") = 1);
    m.def(
        "build_test_graph",
        [](int g, int n, const std::string &a, const std::string &ell, const std::vector<int> &mult) {
            return graph_out(mbar::build_test_graph(g, n, mbar::parse_level_map(a, ell), mult));
        },
        py::arg("g"), py::arg("n"), py::arg("A"), py::arg("ell"), py::arg("m"));
    m.def(
        "wreath_order",
        [](const std::string &a, const std::string &ell, const std::vector<int> &mult) {
            return to_py(mbar::wreath_order(mbar::parse_level_map(a, ell), mult));
        },
        py::arg("A"), py::arg("ell"), py::arg("m"));
    m.def("sigma_quotient_range", [](int g, int h, int size_p) {
        const auto r = mbar::sigma_quotient_range(g, h, size_p);
        return py::make_tuple(fraction(r.degree_bound), r.min_n);
    });

    // command line, in-process
    m.def("cli", [](const std::vector<std::string> &args) {
        std::ostringstream out, err;
        const int status = mbar::cli::main(args, out, err);
        return py::make_tuple(status, out.str(), err.str());
    });
}
