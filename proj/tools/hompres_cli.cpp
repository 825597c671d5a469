// Command-line front end: file ingestion, one subcommand per library
// operation, and machine-readable reports via --json.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

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

namespace {

using nlohmann::ordered_json;
using namespace hompres;

struct Cli {
    bool json = false;
    uint64_t seed = 0;
    int max_bits = 20;
    std::string command;
    ordered_json inputs = ordered_json::array();
    ordered_json results = ordered_json::object();
    std::vector<std::string> lines;
    int exit_code = 0;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
};

std::string fnv1a_hex(const std::string& data) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string slurp(Cli& cli, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    cli.inputs.push_back({{"path", path}, {"hash", "fnv1a:" + fnv1a_hex(text)}});
    return text;
}

void say(Cli& cli, const std::string& line) { cli.lines.push_back(line); }

void emit(const Cli& cli) {
    if (cli.json) {
        ordered_json rep;
        rep["command"] = cli.command;
        rep["inputs"] = cli.inputs;
        rep["results"] = cli.results;
        std::cout << rep.dump(2) << "\n";
    } else {
        for (const auto& l : cli.lines) std::cout << l << "\n";
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - cli.t0)
                      .count();
        std::cout << "time: " << ms << " ms\n";
    }
}

ordered_json signature_json(const Signature& sig) {
    ordered_json out = ordered_json::array();
    for (const auto& rel : sig.relations()) out.push_back({{"name", rel.name}, {"arity", rel.arity}});
    return out;
}

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(v[i]);
    }
    return out;
}

std::string op_text(const MinorOp& op) {
    switch (op.kind) {
        case MinorOp::Kind::delete_edge:
            return "delete " + std::to_string(op.u) + " " + std::to_string(op.v);
        case MinorOp::Kind::contract_edge:
            return "contract " + std::to_string(op.u) + " " + std::to_string(op.v);
        case MinorOp::Kind::delete_vertex:
            return "drop " + std::to_string(op.u);
    }
    return "?";
}

// --- subcommand bodies ---------------------------------------------------

void run_structure(Cli& cli, const std::string& path) {
    cli.command = "structure";
    Structure s = parse_structure(slurp(cli, path));
    Graph g = gaifman(s);
    cli.results["size"] = s.size();
    cli.results["signature"] = signature_json(s.signature());
    ordered_json counts = ordered_json::object();
    for (size_t r = 0; r < s.signature().relation_count(); ++r)
        counts[s.signature().relation(r).name] = s.tuple_count(r);
    cli.results["tuples"] = counts;
    cli.results["total_tuples"] = s.total_tuple_count();
    cli.results["gaifman"] = {{"order", g.order()}, {"edges", g.edge_count()}};
    cli.results["text"] = serialize_structure(s);
    say(cli, "universe size: " + std::to_string(s.size()));
    say(cli, "total tuples: " + std::to_string(s.total_tuple_count()));
    say(cli, "gaifman graph: " + std::to_string(g.order()) + " vertices, " +
                 std::to_string(g.edge_count()) + " edges");
    say(cli, serialize_structure(s));
}

void run_core(Cli& cli, const std::string& path) {
    cli.command = "core";
    Structure s = parse_structure(slurp(cli, path));
    CoreResult r = compute_core(s);
    cli.results["input_size"] = s.size();
    cli.results["core_size"] = r.core.size();
    cli.results["core_vertices"] = r.core_vertices;
    cli.results["input_is_core"] = r.core.size() == s.size();
    cli.results["retraction"] = r.retraction.image;
    cli.results["core"] = serialize_structure(r.core);
    say(cli, "core size: " + std::to_string(r.core.size()) + " (input " +
                 std::to_string(s.size()) + ")");
    say(cli, "core vertices: " + join_ints(r.core_vertices));
    say(cli, serialize_structure(r.core));
}

void run_mincores(Cli& cli, const std::vector<std::string>& paths) {
    cli.command = "mincores";
    GeneratedClass cls;
    for (const auto& p : paths) cls.generators.push_back(parse_structure(slurp(cli, p)));
    auto cores = min_cores(cls);
    cli.results["generators"] = paths.size();
    cli.results["count"] = cores.size();
    ordered_json list = ordered_json::array();
    say(cli, std::to_string(cores.size()) + " minimal core(s)");
    for (const auto& c : cores) {
        int td = tree_depth(gaifman(c)).depth;
        list.push_back({{"size", c.size()}, {"tree_depth", td}, {"text", serialize_structure(c)}});
        say(cli, "-- size " + std::to_string(c.size()) + ", tree-depth " + std::to_string(td));
        say(cli, serialize_structure(c));
    }
    cli.results["cores"] = list;
}

void run_check_preserved(Cli& cli, const std::string& path, int max_size) {
    cli.command = "check-preserved";
    FormulaFile f = parse_formula_file(slurp(cli, path));
    auto rep = is_hom_preserved(f.formula, f.signature(), max_size, cli.max_bits);
    cli.results["max_size"] = max_size;
    cli.results["preserved"] = rep.preserved;
    if (rep.preserved) {
        say(cli, "hom-preserved up to size " + std::to_string(max_size));
    } else {
        const auto& [a, b] = *rep.counterexample;
        cli.results["counterexample"] = {{"model", serialize_structure(a)},
                                         {"non_model", serialize_structure(b)},
                                         {"hom", rep.counterexample_hom->image}};
        say(cli, "NOT preserved; counterexample:");
        say(cli, "model:");
        say(cli, serialize_structure(a));
        say(cli, "maps into non-model via " + join_ints(rep.counterexample_hom->image));
        say(cli, serialize_structure(b));
        cli.exit_code = 1;
    }
}

void run_treewidth(Cli& cli, const std::string& path, int max_order) {
    cli.command = "treewidth";
    Graph g = parse_graph(slurp(cli, path));
    auto r = tree_width(g, max_order);
    cli.results["order"] = g.order();
    cli.results["width"] = r.width;
    ordered_json bags = ordered_json::array();
    for (const auto& b : r.decomposition.bags) bags.push_back(b);
    cli.results["decomposition"] = {{"bags", bags}, {"parent", r.decomposition.parent}};
    say(cli, "tree-width: " + std::to_string(r.width));
    for (size_t i = 0; i < r.decomposition.bags.size(); ++i)
        say(cli, "bag " + std::to_string(i) + " (parent " +
                     std::to_string(r.decomposition.parent[i]) +
                     "): " + join_ints(r.decomposition.bags[i]));
}

void run_treedepth(Cli& cli, const std::string& path, int max_order) {
    cli.command = "treedepth";
    Graph g = parse_graph(slurp(cli, path));
    auto r = tree_depth(g, max_order);
    cli.results["order"] = g.order();
    cli.results["depth"] = r.depth;
    cli.results["forest"] = {{"parent", r.forest.parent}};
    say(cli, "tree-depth: " + std::to_string(r.depth));
    say(cli, "forest parents: " + join_ints(r.forest.parent));
}

void run_longestpath(Cli& cli, const std::string& path, int max_order) {
    cli.command = "longestpath";
    Graph g = parse_graph(slurp(cli, path));
    auto r = longest_path(g, max_order);
    cli.results["order"] = g.order();
    cli.results["length"] = r.length;
    cli.results["path"] = r.path;
    say(cli, "longest path: " + std::to_string(r.length) + " vertices");
    say(cli, "witness: " + join_ints(r.path));
}

void run_minor(Cli& cli, const std::string& pattern_path, const std::string& host_path,
               int max_order) {
    cli.command = "minor";
    Graph h = parse_graph(slurp(cli, pattern_path));
    Graph g = parse_graph(slurp(cli, host_path));
    auto r = minor_contains(h, g, max_order);
    cli.results["pattern_order"] = h.order();
    cli.results["host_order"] = g.order();
    cli.results["contains"] = r.has_value();
    if (r) {
        ordered_json sets = ordered_json::array();
        for (const auto& s : *r) sets.push_back(s);
        cli.results["branch_sets"] = sets;
        say(cli, "minor: yes");
        for (size_t k = 0; k < r->size(); ++k)
            say(cli, "branch set " + std::to_string(k) + ": " + join_ints((*r)[k]));
    } else {
        say(cli, "minor: no");
    }
}

void run_trichotomy(Cli& cli, const std::string& path, int ell, int max_order) {
    cli.command = "trichotomy";
    Graph g = parse_graph(slurp(cli, path));
    auto r = trichotomy_check(g, ell, max_order);
    cli.results["ell"] = r.ell;
    cli.results["high_treewidth"] = r.high_treewidth;
    cli.results["long_path"] = r.long_path;
    cli.results["btree_minor"] = r.btree_minor;
    cli.results["labels"] = r.labels();
    std::string joined;
    for (const auto& l : r.labels()) joined += (joined.empty() ? "" : ", ") + l;
    say(cli, "holds: " + (joined.empty() ? std::string("none") : joined));
}

void run_formula(Cli& cli, const std::string& path) {
    cli.command = "formula";
    FormulaFile f = parse_formula_file(slurp(cli, path));
    auto cls = classify(f.formula);
    auto free = free_variables(f.formula);
    cli.results["text"] = render(f.formula);
    cli.results["quantifier_rank"] = quantifier_rank(f.formula);
    cli.results["variable_width"] = variable_width(f.formula);
    cli.results["positive"] = cls.positive;
    cli.results["existential"] = cls.existential;
    cli.results["existential_positive"] = cls.existential_positive;
    cli.results["signature"] = signature_json(f.signature());
    cli.results["free_variables"] = std::vector<std::string>(free.begin(), free.end());
    say(cli, render(f.formula));
    say(cli, "quantifier rank: " + std::to_string(quantifier_rank(f.formula)));
    say(cli, "variable width: " + std::to_string(variable_width(f.formula)));
    say(cli, std::string("existential-positive: ") + (cls.existential_positive ? "yes" : "no"));
}

void run_eval(Cli& cli, const std::string& formula_path, const std::string& structure_path) {
    cli.command = "eval";
    FormulaFile f = parse_formula_file(slurp(cli, formula_path));
    Structure s = parse_structure(slurp(cli, structure_path));
    bool value = evaluate(f.formula, s);
    cli.results["value"] = value;
    say(cli, value ? "true" : "false");
}

void run_compile(Cli& cli, const std::string& path, int n) {
    cli.command = "compile";
    FormulaFile f = parse_formula_file(slurp(cli, path));
    Circuit c = compile_fo(f.formula, f.signature(), n);
    Measures m = measure(c);
    cli.results["n"] = n;
    cli.results["input_count"] = c.input_count();
    cli.results["size"] = m.size;
    cli.results["depth"] = m.depth;
    cli.results["max_fanin"] = m.max_fanin;
    cli.results["formula_size"] = m.formula_size;
    cli.results["netlist"] = to_netlist(c);
    say(cli, "inputs: " + std::to_string(c.input_count()));
    say(cli, "size: " + std::to_string(m.size) + ", depth: " + std::to_string(m.depth) +
                 ", max fan-in: " + std::to_string(m.max_fanin) +
                 ", formula size: " + std::to_string(m.formula_size));
    say(cli, to_netlist(c));
}

void run_sub_solve(Cli& cli, const std::string& graph_path, int n,
                   const std::string& instance_path, const std::string& solver) {
    cli.command = "sub solve";
    Graph g = parse_graph(slurp(cli, graph_path));
    SubInstance x = parse_sub_instance(g, n, slurp(cli, instance_path));
    cli.results["graph_order"] = g.order();
    cli.results["graph_edges"] = g.edge_count();
    cli.results["n"] = n;
    cli.results["variables"] = x.blowup.variable_count();
    cli.results["solver"] = solver;
    bool found = false;
    if (solver == "brute") {
        auto r = sub_bruteforce(x);
        found = r.found;
        if (r.witness) cli.results["witness"] = *r.witness;
        if (r.witness) say(cli, "witness alpha: " + join_ints(*r.witness));
    } else if (solver == "dp") {
        found = sub_dp_treewidth(x, tree_width(g).decomposition);
    } else {
        Circuit c = sub_formula_treedepth(g, tree_depth(g).forest, n);
        found = eval_circuit(c, x.present);
    }
    cli.results["found"] = found;
    say(cli, std::string("found: ") + (found ? "yes" : "no"));
}

// truth table of SUB(g, n) for verification sweeps
std::vector<bool> sub_table_cli(const Graph& g, int n, int max_bits) {
    BlowUp bu(g, n);
    const int vars = bu.variable_count();
    if (vars > max_bits)
        throw bound_error("verification sweep needs " + std::to_string(vars) +
                          " bits, budget is " + std::to_string(max_bits));
    SubInstance x{bu, std::vector<bool>(static_cast<size_t>(vars))};
    std::vector<bool> table(size_t{1} << vars);
    for (uint64_t idx = 0; idx < table.size(); ++idx) {
        for (int i = 0; i < vars; ++i) x.present[static_cast<size_t>(i)] = (idx >> i) & 1;
        table[idx] = sub_bruteforce(x).found;
    }
    return table;
}

void verify_and_report(Cli& cli, const Graph& result_graph, const Graph& source_graph, int n,
                       const MonotoneProjection& rho) {
    auto f = sub_table_cli(result_graph, n, cli.max_bits);
    auto g = sub_table_cli(source_graph, n, cli.max_bits);
    auto check = verify_reduction(f, g, rho, cli.max_bits);
    cli.results["verified"] = check.ok;
    if (check.ok) {
        say(cli, "verified: identity holds on all " + std::to_string(f.size()) +
                     " assignments");
    } else {
        cli.results["verification_counterexample"] = *check.counterexample;
        say(cli, "verification FAILED at assignment " + std::to_string(*check.counterexample));
        cli.exit_code = 1;
    }
}

void run_reduce_minor(Cli& cli, const std::string& graph_path, int n, const std::string& op_name,
                      int u, int v, bool verify) {
    cli.command = "sub reduce-minor";
    Graph g = parse_graph(slurp(cli, graph_path));
    MinorOp op = op_name == "delete" ? MinorOp::del_edge(u, v) : MinorOp::contract(u, v);
    MonotoneProjection rho = minor_reduction(g, op, n);
    Graph h = apply_minor_op(g, op);
    cli.results["n"] = n;
    cli.results["operation"] = op_text(op);
    cli.results["result_graph"] = serialize_graph(h);
    cli.results["source_variables"] = rho.source_count;
    cli.results["target_entries"] = rho.target_count();
    cli.results["projection"] = serialize_projection(rho);
    say(cli, "operation: " + op_text(op));
    say(cli, "projection (" + std::to_string(rho.target_count()) + " entries over " +
                 std::to_string(rho.source_count) + " variables):");
    say(cli, serialize_projection(rho));
    if (verify) verify_and_report(cli, h, g, n, rho);
}

void run_reduce_path(Cli& cli, const std::string& graph_path, int n, bool verify) {
    cli.command = "sub reduce-path";
    Graph g = parse_graph(slurp(cli, graph_path));
    PathReduction pr = path_reduction(g, n);
    cli.results["n"] = n;
    cli.results["k"] = pr.k;
    ordered_json ops = ordered_json::array();
    for (const auto& op : pr.ops) ops.push_back(op_text(op));
    cli.results["operations"] = ops;
    cli.results["source_variables"] = pr.rho.source_count;
    cli.results["target_entries"] = pr.rho.target_count();
    cli.results["projection"] = serialize_projection(pr.rho);
    say(cli, "path length k = " + std::to_string(pr.k));
    for (const auto& op : pr.ops) say(cli, "op: " + op_text(op));
    say(cli, serialize_projection(pr.rho));
    if (verify) verify_and_report(cli, family(GraphFamily::path, pr.k), g, n, pr.rho);
}

void run_hpt_reduce(Cli& cli, const std::string& structure_path, int n,
                    const std::string& formula_path) {
    cli.command = "sub hpt-reduce";
    Structure m = parse_structure(slurp(cli, structure_path));
    MonotoneProjection rho = hpt_reduction(m, n);
    bool core = is_core(m);
    cli.results["n"] = n;
    cli.results["structure_size"] = m.size();
    cli.results["is_core"] = core;
    cli.results["source_variables"] = rho.source_count;
    cli.results["target_bits"] = rho.target_count();
    cli.results["projection"] = serialize_projection(rho);
    if (!core) say(cli, "warning: structure is not a core; the bound td(Gaifman) is not tight");
    say(cli, "projection: " + std::to_string(rho.target_count()) + " encoding bits over " +
                 std::to_string(rho.source_count) + " blow-up variables");
    say(cli, serialize_projection(rho));
    if (!formula_path.empty()) {
        FormulaFile f = parse_formula_file(slurp(cli, formula_path));
        HptCheck check = verify_hpt_reduction(f.formula, m, n, cli.max_bits);
        cli.results["verification"] = {
            {"ok", check.ok},
            {"preservation_checked_to", check.preservation_checked_to},
            {"preservation_holds", check.preservation_holds},
        };
        if (check.counterexample) cli.results["verification"]["counterexample"] = *check.counterexample;
        say(cli, std::string("equivalence sweep: ") + (check.ok ? "ok" : "FAILED"));
        say(cli, "preservation precondition checked to size " +
                     std::to_string(check.preservation_checked_to) +
                     (check.preservation_holds ? " (holds)" : " (FAILS)"));
        if (!check.ok) cli.exit_code = 1;
    }
}

void run_pipeline(Cli& cli, const std::string& formula_path, int max_size, int verify_size) {
    cli.command = "hpt pipeline";
    FormulaFile f = parse_formula_file(slurp(cli, formula_path));
    auto rep = hpt_pipeline(f.formula, f.signature(), max_size, verify_size, cli.max_bits);
    cli.results["max_size"] = max_size;
    cli.results["verify_size"] = verify_size;
    cli.results["preserved"] = rep.preserved;
    if (!rep.preserved) {
        const auto& [a, b] = *rep.preservation.counterexample;
        cli.results["counterexample"] = {{"model", serialize_structure(a)},
                                         {"non_model", serialize_structure(b)}};
        say(cli, "NOT hom-preserved; pipeline aborted");
        say(cli, "model:");
        say(cli, serialize_structure(a));
        say(cli, "non-model:");
        say(cli, serialize_structure(b));
        cli.exit_code = 1;
        return;
    }
    ordered_json cores = ordered_json::array();
    for (size_t i = 0; i < rep.mincores.size(); ++i)
        cores.push_back({{"size", rep.mincores[i].size()},
                         {"tree_depth", rep.core_tree_depths[i]},
                         {"text", serialize_structure(rep.mincores[i])}});
    cli.results["mincores"] = cores;
    cli.results["psi"] = rep.psi ? render(*rep.psi) : "";
    cli.results["psi_quantifier_rank"] = rep.psi_quantifier_rank;
    cli.results["equivalent"] = rep.equivalent;
    say(cli, "hom-preserved up to size " + std::to_string(max_size));
    say(cli, std::to_string(rep.mincores.size()) + " minimal core(s), tree-depths: " +
                 join_ints(rep.core_tree_depths));
    if (rep.psi) say(cli, "psi = " + render(*rep.psi));
    say(cli, "psi quantifier rank: " + std::to_string(rep.psi_quantifier_rank));
    if (rep.equivalent) {
        say(cli, "equivalent on all structures up to size " + std::to_string(verify_size));
    } else {
        cli.results["mismatch"] = serialize_structure(*rep.mismatch);
        say(cli, "NOT equivalent; mismatch:");
        say(cli, serialize_structure(*rep.mismatch));
        cli.exit_code = 1;
    }
}

void run_selftest(Cli& cli, const std::string& level) {
    cli.command = "selftest";
    SelftestReport rep = hompres::run_selftest(level, cli.seed);
    cli.results["level"] = rep.level;
    cli.results["seed"] = rep.seed;
    cli.results["max_bits"] = rep.max_bits;
    ordered_json suites = ordered_json::array();
    for (const auto& s : rep.suites) {
        ordered_json row = {{"name", s.name}, {"checked", s.checked}, {"failures", s.failures}};
        if (!s.first_failure.empty()) row["first_failure"] = s.first_failure;
        suites.push_back(row);
        say(cli, "suite " + s.name + ": " + std::to_string(s.checked) + " checked, " +
                     std::to_string(s.failures) + " failures" +
                     (s.first_failure.empty() ? "" : " (first: " + s.first_failure + ")"));
    }
    cli.results["suites"] = suites;
    cli.results["passed"] = rep.passed();
    say(cli, "selftest " + rep.level + ": " + (rep.passed() ? "PASS" : "FAIL"));
    if (!rep.passed()) cli.exit_code = 1;
}

}  // namespace

int main(int argc, char** argv) {
    Cli cli;
    CLI::App app{"finite-model toolkit: structures, cores, graph parameters, "
                 "existential-positive sentences, circuits, and colored subgraph-isomorphism "
                 "reductions"};
    app.require_subcommand(1);
    app.add_flag("--json", cli.json, "emit a machine-readable report");
    app.add_option("--seed", cli.seed, "seed for randomized corpora");
    app.add_option("--max-bits", cli.max_bits, "budget for exhaustive sweeps")
        ->envname("HOMPRES_MAX_BITS");

    auto add = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
        CLI::App* sc = parent->add_subcommand(name, desc);
        sc->fallthrough();
        return sc;
    };

    // structure
    {
        auto* sc = add(&app, "structure", "parse a structure file and report its shape");
        auto path = std::make_shared<std::string>();
        sc->add_option("file", *path, "structure file")->required();
        sc->callback([&cli, path] { run_structure(cli, *path); });
    }
    // core
    {
        auto* sc = add(&app, "core", "compute the core of a structure");
        auto path = std::make_shared<std::string>();
        sc->add_option("file", *path, "structure file")->required();
        sc->callback([&cli, path] { run_core(cli, *path); });
    }
    // mincores
    {
        auto* sc = add(&app, "mincores", "hom-minimal cores of a generated class");
        auto paths = std::make_shared<std::vector<std::string>>();
        sc->add_option("files", *paths, "generator structure files")->required();
        sc->callback([&cli, paths] { run_mincores(cli, *paths); });
    }
    // check-preserved
    {
        auto* sc = add(&app, "check-preserved", "brute-force homomorphism-preservation check");
        auto path = std::make_shared<std::string>();
        auto max_size = std::make_shared<int>(3);
        sc->add_option("--formula", *path, "formula file")->required();
        sc->add_option("--max-size", *max_size, "largest universe to sweep");
        sc->callback([&cli, path, max_size] { run_check_preserved(cli, *path, *max_size); });
    }
    // treewidth / treedepth / longestpath
    {
        auto* sc = add(&app, "treewidth", "exact tree-width with a witness decomposition");
        auto path = std::make_shared<std::string>();
        auto max_order = std::make_shared<int>(12);
        sc->add_option("file", *path, "graph file")->required();
        sc->add_option("--max-order", *max_order, "largest graph order accepted");
        sc->callback([&cli, path, max_order] { run_treewidth(cli, *path, *max_order); });
    }
    {
        auto* sc = add(&app, "treedepth", "exact tree-depth with a witness forest");
        auto path = std::make_shared<std::string>();
        auto max_order = std::make_shared<int>(14);
        sc->add_option("file", *path, "graph file")->required();
        sc->add_option("--max-order", *max_order, "largest graph order accepted");
        sc->callback([&cli, path, max_order] { run_treedepth(cli, *path, *max_order); });
    }
    {
        auto* sc = add(&app, "longestpath", "longest simple path, counted in vertices");
        auto path = std::make_shared<std::string>();
        auto max_order = std::make_shared<int>(14);
        sc->add_option("file", *path, "graph file")->required();
        sc->add_option("--max-order", *max_order, "largest graph order accepted");
        sc->callback([&cli, path, max_order] { run_longestpath(cli, *path, *max_order); });
    }
    // minor
    {
        auto* sc = add(&app, "minor", "branch-set witness that PATTERN is a minor of HOST");
        auto pat = std::make_shared<std::string>();
        auto host = std::make_shared<std::string>();
        auto max_order = std::make_shared<int>(12);
        sc->add_option("pattern", *pat, "pattern graph file")->required();
        sc->add_option("host", *host, "host graph file")->required();
        sc->add_option("--max-order", *max_order, "largest host order accepted");
        sc->callback([&cli, pat, host, max_order] { run_minor(cli, *pat, *host, *max_order); });
    }
    // trichotomy
    {
        auto* sc = add(&app, "trichotomy", "which escape clauses hold at level ell");
        auto path = std::make_shared<std::string>();
        auto ell = std::make_shared<int>(1);
        auto max_order = std::make_shared<int>(12);
        sc->add_option("file", *path, "graph file")->required();
        sc->add_option("--ell", *ell, "level")->required();
        sc->add_option("--max-order", *max_order, "largest graph order accepted");
        sc->callback([&cli, path, ell, max_order] { run_trichotomy(cli, *path, *ell, *max_order); });
    }
    // formula
    {
        auto* sc = add(&app, "formula", "parse a formula file and report its measures");
        auto path = std::make_shared<std::string>();
        sc->add_option("file", *path, "formula file")->required();
        sc->callback([&cli, path] { run_formula(cli, *path); });
    }
    // eval
    {
        auto* sc = add(&app, "eval", "evaluate a sentence on a structure");
        auto fpath = std::make_shared<std::string>();
        auto spath = std::make_shared<std::string>();
        sc->add_option("--formula", *fpath, "formula file")->required();
        sc->add_option("--structure", *spath, "structure file")->required();
        sc->callback([&cli, fpath, spath] { run_eval(cli, *fpath, *spath); });
    }
    // compile
    {
        auto* sc = add(&app, "compile", "compile a sentence to a circuit over encoding bits");
        auto path = std::make_shared<std::string>();
        auto n = std::make_shared<int>(2);
        sc->add_option("--formula", *path, "formula file")->required();
        sc->add_option("--n", *n, "universe size")->required();
        sc->callback([&cli, path, n] { run_compile(cli, *path, *n); });
    }
    // sub
    auto* sub = add(&app, "sub", "colored subgraph-isomorphism operations");
    sub->require_subcommand(1);
    {
        auto* sc = add(sub, "solve", "decide SUB(G, n) on an instance");
        auto gpath = std::make_shared<std::string>();
        auto n = std::make_shared<int>(2);
        auto xpath = std::make_shared<std::string>();
        auto solver = std::make_shared<std::string>("brute");
        sc->add_option("--graph", *gpath, "pattern graph file")->required();
        sc->add_option("--n", *n, "fibre size")->required();
        sc->add_option("--instance", *xpath, "instance bit file")->required();
        sc->add_option("--solver", *solver, "brute, dp, or formula")
            ->check(CLI::IsMember({"brute", "dp", "formula"}));
        sc->callback([&cli, gpath, n, xpath, solver] {
            run_sub_solve(cli, *gpath, *n, *xpath, *solver);
        });
    }
    {
        auto* sc = add(sub, "reduce-minor", "projection for one edge deletion/contraction");
        auto gpath = std::make_shared<std::string>();
        auto n = std::make_shared<int>(2);
        auto op = std::make_shared<std::string>();
        auto u = std::make_shared<int>(0);
        auto v = std::make_shared<int>(0);
        auto verify = std::make_shared<bool>(false);
        sc->add_option("--graph", *gpath, "graph file")->required();
        sc->add_option("--n", *n, "fibre size")->required();
        sc->add_option("--op", *op, "delete or contract")
            ->required()
            ->check(CLI::IsMember({"delete", "contract"}));
        sc->add_option("--u", *u, "edge endpoint")->required();
        sc->add_option("--v", *v, "edge endpoint")->required();
        sc->add_flag("--verify", *verify, "sweep the defining identity exhaustively");
        sc->callback([&cli, gpath, n, op, u, v, verify] {
            run_reduce_minor(cli, *gpath, *n, *op, *u, *v, *verify);
        });
    }
    {
        auto* sc = add(sub, "reduce-path", "projection from the canonical path P_td(G)");
        auto gpath = std::make_shared<std::string>();
        auto n = std::make_shared<int>(2);
        auto verify = std::make_shared<bool>(false);
        sc->add_option("--graph", *gpath, "graph file")->required();
        sc->add_option("--n", *n, "fibre size")->required();
        sc->add_flag("--verify", *verify, "sweep the defining identity exhaustively");
        sc->callback([&cli, gpath, n, verify] { run_reduce_path(cli, *gpath, *n, *verify); });
    }
    {
        auto* sc = add(sub, "hpt-reduce", "generalized projection from a structure's encoding");
        auto spath = std::make_shared<std::string>();
        auto n = std::make_shared<int>(2);
        auto fpath = std::make_shared<std::string>();
        sc->add_option("--structure", *spath, "structure file")->required();
        sc->add_option("--n", *n, "fibre size")->required();
        sc->add_option("--formula", *fpath, "verify the equivalence against this sentence");
        sc->callback([&cli, spath, n, fpath] { run_hpt_reduce(cli, *spath, *n, *fpath); });
    }
    // hpt
    auto* hpt = add(&app, "hpt", "homomorphism-preservation pipeline");
    hpt->require_subcommand(1);
    {
        auto* sc = add(hpt, "pipeline", "preservation, cores, sentence synthesis, equivalence");
        auto fpath = std::make_shared<std::string>();
        auto max_size = std::make_shared<int>(3);
        auto verify_size = std::make_shared<int>(3);
        sc->add_option("--formula", *fpath, "formula file")->required();
        sc->add_option("--max-size", *max_size, "model enumeration bound");
        sc->add_option("--verify-size", *verify_size, "equivalence sweep bound");
        sc->callback([&cli, fpath, max_size, verify_size] {
            run_pipeline(cli, *fpath, *max_size, *verify_size);
        });
    }
    // selftest
    {
        auto* sc = add(&app, "selftest", "cross-module invariant sweeps");
        auto level = std::make_shared<std::string>("quick");
        sc->add_option("--level", *level, "quick or full")
            ->check(CLI::IsMember({"quick", "full"}));
        sc->callback([&cli, level] { run_selftest(cli, *level); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const bound_error& e) {
        std::cerr << "bound exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    emit(cli);
    return cli.exit_code;
}
