// Python bindings for the main operations. Reports cross the boundary as
// plain dicts; structures, graphs and formulas as thin value classes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>

#include <hompres/compile.hpp>
#include <hompres/cores.hpp>
#include <hompres/errors.hpp>
#include <hompres/formula.hpp>
#include <hompres/graph.hpp>
#include <hompres/graphparams.hpp>
#include <hompres/hom.hpp>
#include <hompres/pp.hpp>
#include <hompres/projection.hpp>
#include <hompres/selftest.hpp>
#include <hompres/structure.hpp>
#include <hompres/subiso.hpp>

namespace py = pybind11;
using namespace hompres;

namespace {

Graph family_by_name(const std::string& kind, int k) {
    if (kind == "path") return family(GraphFamily::path, k);
    if (kind == "clique") return family(GraphFamily::clique, k);
    if (kind == "binary_tree") return family(GraphFamily::binary_tree, k);
    if (kind == "grid") return family(GraphFamily::grid, k);
    throw std::invalid_argument("unknown family '" + kind + "'");
}

py::dict measures_dict(const Circuit& c) {
    Measures m = measure(c);
    py::dict out;
    out["inputs"] = c.input_count();
    out["size"] = m.size;
    out["depth"] = m.depth;
    out["max_fanin"] = m.max_fanin;
    out["formula_size"] = m.formula_size;
    out["netlist"] = to_netlist(c);
    return out;
}

}  // namespace

PYBIND11_MODULE(_hompres, m) {
    m.doc() = "finite-model toolkit: cores, graph parameters, EP sentences, circuits, "
              "and colored subgraph-isomorphism reductions";

    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<bound_error>(m, "BoundError", PyExc_RuntimeError);

    py::class_<Graph>(m, "Graph")
        .def_static("parse", &parse_graph, py::arg("text"))
        .def_static("family", &family_by_name, py::arg("kind"), py::arg("k"))
        .def_static("from_edges", &Graph::from_edges, py::arg("order"), py::arg("edges"))
        .def_property_readonly("order", &Graph::order)
        .def_property_readonly("edges", [](const Graph& g) { return g.edges(); })
        .def("serialize", [](const Graph& g) { return serialize_graph(g); })
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "Graph(order=" + std::to_string(g.order()) + ", edges=" +
                   std::to_string(g.edge_count()) + ")";
        });

    py::class_<Structure>(m, "Structure")
        .def_static("parse", &parse_structure, py::arg("text"))
        .def_property_readonly("size", &Structure::size)
        .def("serialize", [](const Structure& s) { return serialize_structure(s); })
        .def("gaifman", &gaifman)
        .def("__eq__", [](const Structure& a, const Structure& b) { return a == b; });

    py::class_<Formula>(m, "Formula")
        .def_static("parse", &parse_formula, py::arg("text"))
        .def("render", [](const Formula& f) { return render(f); })
        .def_property_readonly("quantifier_rank", &quantifier_rank)
        .def_property_readonly("variable_width", &variable_width)
        .def("evaluate",
             [](const Formula& f, const Structure& s) { return evaluate(f, s); },
             py::arg("structure"));

    m.def("core", [](const Structure& s) {
        CoreResult r = compute_core(s);
        py::dict out;
        out["core"] = r.core;
        out["vertices"] = r.core_vertices;
        out["retraction"] = r.retraction.image;
        return out;
    });
    m.def("is_core", &is_core);
    m.def("hom_equivalent", &hom_equivalent);
    m.def("find_homomorphism", [](const Structure& a, const Structure& b) {
        auto r = find_homomorphism(a, b);
        return r ? std::optional<std::vector<int>>(r->image) : std::nullopt;
    });
    m.def("min_cores", [](const std::vector<Structure>& generators) {
        return min_cores(GeneratedClass{generators});
    });
    m.def(
        "is_hom_preserved",
        [](const Formula& phi, int max_size, int max_bits) {
            auto rep = is_hom_preserved(phi, infer_signature(phi), max_size, max_bits);
            py::dict out;
            out["preserved"] = rep.preserved;
            if (rep.counterexample) {
                out["model"] = rep.counterexample->first;
                out["non_model"] = rep.counterexample->second;
            }
            return out;
        },
        py::arg("phi"), py::arg("max_size") = 3, py::arg("max_bits") = 20);

    m.def(
        "tree_width",
        [](const Graph& g, int max_order) {
            auto r = tree_width(g, max_order);
            py::dict out;
            out["width"] = r.width;
            out["bags"] = r.decomposition.bags;
            out["parent"] = r.decomposition.parent;
            return out;
        },
        py::arg("g"), py::arg("max_order") = 12);
    m.def(
        "tree_depth",
        [](const Graph& g, int max_order) {
            auto r = tree_depth(g, max_order);
            py::dict out;
            out["depth"] = r.depth;
            out["parent"] = r.forest.parent;
            return out;
        },
        py::arg("g"), py::arg("max_order") = 14);
    m.def(
        "longest_path",
        [](const Graph& g, int max_order) {
            auto r = longest_path(g, max_order);
            py::dict out;
            out["length"] = r.length;
            out["path"] = r.path;
            return out;
        },
        py::arg("g"), py::arg("max_order") = 14);
    m.def("minor_contains", &minor_contains, py::arg("pattern"), py::arg("host"),
          py::arg("max_order") = 12);

    m.def(
        "compile_fo",
        [](const Formula& phi, int n) {
            return measures_dict(compile_fo(phi, infer_signature(phi), n));
        },
        py::arg("phi"), py::arg("n"));
    m.def(
        "model_table",
        [](const Formula& phi, int n, int max_bits) {
            return model_table(phi, infer_signature(phi), n, max_bits);
        },
        py::arg("phi"), py::arg("n"), py::arg("max_bits") = 20);

    m.def(
        "sub_solve",
        [](const Graph& g, int n, const std::vector<bool>& bits, const std::string& solver) {
            SubInstance x{BlowUp(g, n), bits};
            py::dict out;
            if (solver == "brute") {
                auto r = sub_bruteforce(x);
                out["found"] = r.found;
                if (r.witness) out["witness"] = *r.witness;
            } else if (solver == "dp") {
                out["found"] = sub_dp_treewidth(x, tree_width(g).decomposition);
            } else if (solver == "formula") {
                Circuit c = sub_formula_treedepth(g, tree_depth(g).forest, n);
                out["found"] = eval_circuit(c, bits);
            } else {
                throw std::invalid_argument("unknown solver '" + solver + "'");
            }
            return out;
        },
        py::arg("g"), py::arg("n"), py::arg("bits"), py::arg("solver") = "brute");
    m.def(
        "sub_formula_measures",
        [](const Graph& g, int n) {
            return measures_dict(sub_formula_treedepth(g, tree_depth(g).forest, n));
        },
        py::arg("g"), py::arg("n"));

    m.def(
        "hpt_reduction",
        [](const Structure& s, int n) { return serialize_projection(hpt_reduction(s, n)); },
        py::arg("m"), py::arg("n"));
    m.def(
        "hpt_pipeline",
        [](const Formula& phi, int max_size, int verify_size, int max_bits) {
            auto rep = hpt_pipeline(phi, infer_signature(phi), max_size, verify_size, max_bits);
            py::dict out;
            out["preserved"] = rep.preserved;
            if (!rep.preserved) {
                out["model"] = rep.preservation.counterexample->first;
                out["non_model"] = rep.preservation.counterexample->second;
                return out;
            }
            out["mincores"] = rep.mincores;
            out["tree_depths"] = rep.core_tree_depths;
            if (rep.psi) out["psi"] = render(*rep.psi);
            out["psi_quantifier_rank"] = rep.psi_quantifier_rank;
            out["equivalent"] = rep.equivalent;
            return out;
        },
        py::arg("phi"), py::arg("max_size") = 3, py::arg("verify_size") = 3,
        py::arg("max_bits") = 20);

    m.def(
        "selftest",
        [](const std::string& level, uint64_t seed) {
            auto rep = run_selftest(level, seed);
            py::dict out;
            out["level"] = rep.level;
            out["passed"] = rep.passed();
            py::list suites;
            for (const auto& s : rep.suites) {
                py::dict row;
                row["name"] = s.name;
                row["checked"] = s.checked;
                row["failures"] = s.failures;
                suites.append(row);
            }
            out["suites"] = suites;
            return out;
        },
        py::arg("level") = "quick", py::arg("seed") = 0);
}
