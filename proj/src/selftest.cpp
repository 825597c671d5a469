#include <hompres/selftest.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <hompres/compile.hpp>
#include <hompres/cores.hpp>
#include <hompres/formula.hpp>
#include <hompres/graph.hpp>
#include <hompres/graphparams.hpp>
#include <hompres/hom.hpp>
#include <hompres/pp.hpp>
#include <hompres/projection.hpp>
#include <hompres/rng.hpp>
#include <hompres/structure.hpp>
#include <hompres/subiso.hpp>

namespace hompres {

bool SelftestReport::passed() const {
    for (const auto& s : suites)
        if (s.failures > 0) return false;
    return true;
}

namespace {

void check(SuiteTally& t, bool ok, const std::string& label) {
    ++t.checked;
    if (!ok) {
        ++t.failures;
        if (t.first_failure.empty()) t.first_failure = label;
    }
}

Graph random_connected_graph(Rng& rng, int order, double extra_edge_p) {
    Graph g(order);
    for (int v = 1; v < order; ++v) g.add_edge(v, rng.range(0, v - 1));
    for (int u = 0; u < order; ++u)
        for (int v = u + 1; v < order; ++v)
            if (!g.has_edge(u, v) && rng.chance(extra_edge_p)) g.add_edge(u, v);
    return g;
}

Structure random_structure(Rng& rng, const Signature& sig, int size) {
    uint64_t bits = sig.encoding_bits(size);
    return structure_from_index(sig, size, rng.below(uint64_t{1} << bits));
}

Structure from_tuples(const Signature& sig, int size,
                      const std::vector<std::vector<int>>& tuples) {
    Structure s(sig, size);
    for (const auto& t : tuples) s.add_tuple(0, t);
    return s;
}

std::vector<bool> index_bits(uint64_t idx, int count) {
    std::vector<bool> out(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) out[static_cast<size_t>(i)] = (idx >> i) & 1;
    return out;
}

// truth table of SUB(g, n), bit i of the table index carrying variable i
std::vector<bool> sub_table(const Graph& g, int n) {
    BlowUp bu(g, n);
    const int vars = bu.variable_count();
    SubInstance x{bu, std::vector<bool>(static_cast<size_t>(vars))};
    std::vector<bool> table(size_t{1} << vars);
    for (uint64_t idx = 0; idx < table.size(); ++idx) {
        x.present = index_bits(idx, vars);
        table[idx] = sub_bruteforce(x).found;
    }
    return table;
}

void suite_encode_roundtrip(SuiteTally& t, bool full) {
    std::vector<std::pair<Signature, int>> cases;
    Signature r2 = Signature::single_binary();
    for (int size = 1; size <= 3; ++size) cases.emplace_back(r2, size);
    if (full) cases.emplace_back(Signature({{"E", 2}, {"U", 1}}), 2);
    for (const auto& [sig, size] : cases) {
        auto all = enumerate_structures(sig, size);
        for (uint64_t i = 0; i < all.size(); ++i) {
            const Structure& s = all[i];
            std::string label = "size " + std::to_string(size) + " #" + std::to_string(i);
            check(t, decode(encode(s)) == s, "decode/encode " + label);
            check(t, structure_from_index(sig, size, i) == s, "from_index " + label);
        }
    }
}

void suite_parse_roundtrip(SuiteTally& t, uint64_t seed, bool full) {
    Rng rng(seed ^ 0xa1ceull);
    Signature sig({{"E", 2}, {"U", 1}});
    const int structures = full ? 300 : 150;
    for (int i = 0; i < structures; ++i) {
        Structure s = random_structure(rng, sig, rng.range(1, 4));
        check(t, parse_structure(serialize_structure(s)) == s,
              "structure #" + std::to_string(i));
    }
    const int graphs = full ? 200 : 100;
    for (int i = 0; i < graphs; ++i) {
        Graph g = random_connected_graph(rng, rng.range(1, 8), 0.3);
        check(t, parse_graph(serialize_graph(g)) == g, "graph #" + std::to_string(i));
    }
}

void suite_hom_soundness(SuiteTally& t, uint64_t seed, bool full) {
    Rng rng(seed ^ 0xb0b0ull);
    Signature sig = Signature::single_binary();
    const int pairs = full ? 300 : 150;
    for (int i = 0; i < pairs; ++i) {
        Structure a = random_structure(rng, sig, rng.range(1, 3));
        Structure b = random_structure(rng, sig, rng.range(1, 3));
        std::string label = "pair #" + std::to_string(i);
        auto maps = enumerate_homomorphisms(a, b);
        for (const auto& m : maps)
            check(t, check_homomorphism(m, a, b), "unsound map, " + label);
        auto found = find_homomorphism(a, b);
        check(t, found.has_value() == !maps.empty(), "search disagreement, " + label);
        if (found) check(t, check_homomorphism(*found, a, b), "unsound witness, " + label);
    }
}

void core_checks(SuiteTally& t, const Structure& a, const std::string& label) {
    CoreResult r = compute_core(a);
    check(t, is_core(r.core), label + ": result not a core");
    check(t, hom_equivalent(a, r.core), label + ": not hom-equivalent");
    check(t, r.core == induced_substructure(a, r.core_vertices), label + ": relabel mismatch");
    check(t, check_homomorphism(r.retraction, a, a), label + ": retraction not an endomorphism");
    bool idem = true;
    for (int v = 0; v < a.size(); ++v) {
        int w = r.retraction.image[static_cast<size_t>(v)];
        if (r.retraction.image[static_cast<size_t>(w)] != w) idem = false;
    }
    check(t, idem, label + ": retraction not idempotent");
    bool fixes = true;
    for (int v : r.core_vertices)
        if (r.retraction.image[static_cast<size_t>(v)] != v) fixes = false;
    check(t, fixes, label + ": core vertices moved");
}

void suite_core_invariants(SuiteTally& t, uint64_t seed, bool full) {
    Signature sig = Signature::single_binary();
    for (uint64_t i = 0; i < 512; ++i)
        core_checks(t, structure_from_index(sig, 3, i), "3/#" + std::to_string(i));
    if (full) {
        Rng rng(seed ^ 0xc04eull);
        for (int i = 0; i < 200; ++i)
            core_checks(t, random_structure(rng, sig, 4), "4/#" + std::to_string(i));
    }
}

void graph_param_checks(SuiteTally& t, const Graph& g, const std::string& label) {
    const int order = g.order();
    auto tw = tree_width(g, 16);
    auto td = tree_depth(g, 17);
    auto lp = longest_path(g, 17);
    check(t, tw.decomposition.valid_for(g) && tw.decomposition.width() == tw.width,
          label + ": bad decomposition");
    check(t, td.forest.valid_for(g) && td.forest.height() == td.depth, label + ": bad forest");
    bool path_ok = lp.length == static_cast<int>(lp.path.size()) && lp.length >= 1;
    for (size_t i = 0; path_ok && i + 1 < lp.path.size(); ++i)
        path_ok = g.has_edge(lp.path[i], lp.path[i + 1]);
    {
        auto sorted = lp.path;
        std::sort(sorted.begin(), sorted.end());
        path_ok = path_ok && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    }
    check(t, path_ok, label + ": bad path witness");
    check(t, tw.width <= td.depth - 1, label + ": tw vs td lower");
    check(t, td.depth - 1 <= tw.width * std::log2(static_cast<double>(order)) + 1e-9,
          label + ": tw vs td upper");
    check(t, (1LL << td.depth) >= lp.length + 1, label + ": lp vs td lower");
    check(t, td.depth <= lp.length, label + ": lp vs td upper");
}

void suite_graph_inequalities(SuiteTally& t, uint64_t seed, bool full) {
    Rng rng(seed ^ 0xd1a5ull);
    const int graphs = full ? 200 : 100;
    const int max_order = full ? 8 : 7;
    for (int i = 0; i < graphs; ++i) {
        Graph g = random_connected_graph(rng, rng.range(1, max_order), 0.3);
        graph_param_checks(t, g, "random #" + std::to_string(i));
    }
    const int max_k = full ? 4 : 3;
    for (auto kind : {GraphFamily::path, GraphFamily::clique, GraphFamily::binary_tree,
                      GraphFamily::grid})
        for (int k = 1; k <= max_k; ++k)
            graph_param_checks(t, family(kind, k),
                               "family " + std::to_string(static_cast<int>(kind)) + "/" +
                                   std::to_string(k));
}

void suite_pp_semantics(SuiteTally& t) {
    Signature sig = Signature::single_binary();
    std::vector<std::pair<std::string, Structure>> ms;
    ms.emplace_back("edge", from_tuples(sig, 2, {{0, 1}}));
    ms.emplace_back("k2", from_tuples(sig, 2, {{0, 1}, {1, 0}}));
    ms.emplace_back("loop", from_tuples(sig, 1, {{0, 0}}));
    ms.emplace_back("c3", from_tuples(sig, 3, {{0, 1}, {1, 2}, {2, 0}}));
    ms.emplace_back("k3", from_tuples(sig, 3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0}}));

    std::vector<Structure> all;
    for (int size = 1; size <= 3; ++size)
        for (const auto& b : enumerate_structures(sig, size)) all.push_back(b);

    std::vector<Structure> cls;
    for (const auto& [name, m] : ms) {
        PPSentence psi = pp_sentence_of(m, tree_depth(gaifman(m)).forest);
        check(t, psi.valid(), name + ": invalid pp sentence");
        Formula f = psi.to_formula();
        check(t, quantifier_rank(f) == psi.quantifier_rank(), name + ": rank mismatch");
        auto pieces = to_pp_disjunction(f, sig);
        check(t,
              pieces.size() == 1 && isomorphic(canonical_structure(pieces.front()), m),
              name + ": canonical structure not recovered");
        for (size_t i = 0; i < all.size(); ++i)
            check(t, evaluate(f, all[i]) == find_homomorphism(m, all[i]).has_value(),
                  name + ": semantics at structure #" + std::to_string(i));
        cls.push_back(m);
    }

    Formula disj = ep_sentence_of_class(cls);
    for (size_t i = 0; i < all.size(); ++i) {
        bool any = false;
        for (const auto& [name, m] : ms)
            if (find_homomorphism(m, all[i])) any = true;
        check(t, evaluate(disj, all[i]) == any,
              "class sentence at structure #" + std::to_string(i));
    }
}

void suite_compile_agreement(SuiteTally& t) {
    const std::vector<std::string> corpus = {
        "EX x. EX y. R(x,y)",
        "EX x. R(x,x)",
        "EX x. EX y. EX z. R(x,y) & R(y,z) & R(z,x)",
        "ALL x. EX y. R(x,y)",
        "ALL x. ALL y. ~R(x,y) | R(y,x)",
        "EX x. ALL y. R(x,y) | x = y",
        "ALL x. R(x,x) | ~R(x,x)",
        "EX x. EX y. ~(x = y) & R(x,y)",
    };
    Signature sig = Signature::single_binary();
    for (const auto& text : corpus) {
        Formula phi = parse_formula(text);
        for (int n = 1; n <= 3; ++n) {
            Circuit c = compile_fo(phi, sig, n);
            auto table = model_table(phi, sig, n);
            const int bits = static_cast<int>(sig.encoding_bits(n));
            bool agree = true;
            for (uint64_t idx = 0; idx < table.size(); ++idx)
                if (eval_circuit(c, index_bits(idx, bits)) != table[idx]) agree = false;
            check(t, agree, text + " @ n=" + std::to_string(n) + ": table mismatch");
            check(t, measure(c).depth <= quantifier_rank(phi) + 1,
                  text + " @ n=" + std::to_string(n) + ": depth");
        }
    }
}

std::vector<std::pair<std::string, Graph>> solver_graphs() {
    std::vector<std::pair<std::string, Graph>> out;
    out.emplace_back("P2", family(GraphFamily::path, 2));
    out.emplace_back("P3", family(GraphFamily::path, 3));
    out.emplace_back("P4", family(GraphFamily::path, 4));
    out.emplace_back("K3", family(GraphFamily::clique, 3));
    out.emplace_back("C4", Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
    out.emplace_back("K4-e", with_edge_deleted(family(GraphFamily::clique, 4), 2, 3));
    return out;
}

void suite_solver_agreement(SuiteTally& t, int max_bits) {
    for (const auto& [name, g] : solver_graphs()) {
        for (int n = 1; n <= 4; ++n) {
            const int vars = g.edge_count() * n * n;
            if (vars > max_bits) continue;
            auto td = tree_width(g).decomposition;
            Circuit c = sub_formula_treedepth(g, tree_depth(g).forest, n);
            BlowUp bu(g, n);
            SubInstance x{bu, {}};
            std::string label = name + " n=" + std::to_string(n);
            for (uint64_t idx = 0; idx < (uint64_t{1} << vars); ++idx) {
                x.present = index_bits(idx, vars);
                bool brute = sub_bruteforce(x).found;
                bool dp = sub_dp_treewidth(x, td);
                bool form = eval_circuit(c, x.present);
                check(t, brute == dp && brute == form,
                      label + " X=" + std::to_string(idx));
            }
        }
    }
}

void suite_solver_random(SuiteTally& t, uint64_t seed, int max_bits, bool full) {
    Rng rng(seed ^ 0x50f7ull);
    struct Case {
        std::string label;
        SubInstance x;
        TreeDecomposition td;
        Circuit c;
    };
    std::vector<Case> cases;
    for (const auto& [name, g] : solver_graphs())
        for (int n = 1; n <= 5; ++n) {
            const int vars = g.edge_count() * n * n;
            if (vars <= max_bits || vars > 32) continue;
            cases.push_back({name + " n=" + std::to_string(n),
                             SubInstance{BlowUp(g, n), {}}, tree_width(g).decomposition,
                             sub_formula_treedepth(g, tree_depth(g).forest, n)});
        }
    if (cases.empty()) return;
    const int total = full ? 1000 : 300;
    const double densities[3] = {0.25, 0.5, 0.75};
    for (int i = 0; i < total; ++i) {
        Case& cs = cases[static_cast<size_t>(i) % cases.size()];
        const int vars = cs.x.blowup.variable_count();
        std::vector<bool> bits(static_cast<size_t>(vars));
        for (int b = 0; b < vars; ++b) bits[static_cast<size_t>(b)] = rng.chance(densities[i % 3]);
        cs.x.present = bits;
        auto brute = sub_bruteforce(cs.x);
        bool dp = sub_dp_treewidth(cs.x, cs.td);
        bool form = eval_circuit(cs.c, bits);
        std::string label = cs.label + " random #" + std::to_string(i);
        check(t, brute.found == dp && brute.found == form, label);
        if (brute.found) {
            bool witness_ok = true;
            for (int var : pattern_copy(cs.x.blowup, *brute.witness))
                if (!bits[static_cast<size_t>(var)]) witness_ok = false;
            check(t, witness_ok, label + ": bad witness");
        }
    }
}

void reduction_check(SuiteTally& t, const std::vector<bool>& f, const std::vector<bool>& g,
                     const MonotoneProjection& rho, int max_bits, const std::string& label) {
    auto res = verify_reduction(f, g, rho, max_bits);
    t.checked += static_cast<long long>(f.size());
    if (!res.ok) {
        ++t.failures;
        if (t.first_failure.empty()) t.first_failure = label;
    }
}

void suite_reduction_gate(SuiteTally& t, int max_bits, bool full) {
    const int n = 2;
    Graph p4 = family(GraphFamily::path, 4);
    Graph p3 = family(GraphFamily::path, 3);
    Graph k3 = family(GraphFamily::clique, 3);
    Graph c4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});

    auto single = [&](const Graph& g, const MinorOp& op, const std::string& label) {
        Graph h = apply_minor_op(g, op);
        reduction_check(t, sub_table(h, n), sub_table(g, n), minor_reduction(g, op, n),
                        max_bits, label);
    };
    single(p4, MinorOp::del_edge(1, 2), "delete P4 {1,2}");
    single(k3, MinorOp::del_edge(0, 1), "delete K3 {0,1}");
    single(k3, MinorOp::contract(0, 1), "contract K3 {0,1}");
    single(c4, MinorOp::contract(0, 1), "contract C4 {0,1}");

    reduction_check(t, sub_table(p3, n), sub_table(p4, n),
                    minor_reduction_chain(p3, p4, {MinorOp::del_vertex(3)}, n), max_bits,
                    "chain P4 -> P3");
    reduction_check(t, sub_table(k3, n), sub_table(c4, n),
                    minor_reduction_chain(k3, c4, {MinorOp::contract(0, 1)}, n), max_bits,
                    "chain C4 -> K3");

    auto path_case = [&](const Graph& g, const std::string& label) {
        PathReduction pr = path_reduction(g, n);
        Graph pk = family(GraphFamily::path, pr.k);
        reduction_check(t, sub_table(pk, n), sub_table(g, n), pr.rho, max_bits, label);
    };
    path_case(k3, "path reduction K3");
    path_case(p4, "path reduction P4");
    if (full) {
        path_case(c4, "path reduction C4");
        path_case(with_edge_deleted(family(GraphFamily::clique, 4), 2, 3),
                  "path reduction K4-e");
    }

    // generalized projection against the model table of a preserved sentence
    Signature sig = Signature::single_binary();
    Structure k2 = from_tuples(sig, 2, {{0, 1}, {1, 0}});
    Formula phi = parse_formula("EX x. EX y. R(x,y)");
    reduction_check(t, sub_table(gaifman(k2), n), model_table(phi, sig, k2.size() * n),
                    hpt_reduction(k2, n), max_bits, "generalized K2");
}

void suite_hpt_projection_hom(SuiteTally& t) {
    Signature sig = Signature::single_binary();
    const int n = 2;
    std::vector<std::pair<std::string, Structure>> ms;
    ms.emplace_back("k3", from_tuples(sig, 3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0}}));
    ms.emplace_back("c3", from_tuples(sig, 3, {{0, 1}, {1, 2}, {2, 0}}));
    for (const auto& [name, m] : ms) {
        BlowUp bu(gaifman(m), n);
        auto rho = hpt_reduction(m, n);
        VertexMap pi{m.size() * n, m.size(), {}};
        for (int e = 0; e < m.size() * n; ++e) pi.image.push_back(e / n);
        const int vars = bu.variable_count();
        for (uint64_t idx = 0; idx < (uint64_t{1} << vars); ++idx) {
            BitEncoding enc{sig, m.size() * n, apply_projection(rho, index_bits(idx, vars))};
            check(t, check_homomorphism(pi, decode(enc), m),
                  name + ": projection not a homomorphism at X=" + std::to_string(idx));
        }
    }
}

void suite_hpt_equivalence(SuiteTally& t, int max_bits) {
    Signature sig = Signature::single_binary();
    auto run = [&](const std::string& text, const Structure& m, const std::string& label) {
        Formula phi = parse_formula(text);
        HptCheck res = verify_hpt_reduction(phi, m, 2, max_bits);
        check(t, res.ok, label + ": equivalence sweep failed");
        check(t, res.preservation_checked_to >= 2, label + ": precondition unchecked");
        check(t, res.preservation_holds, label + ": precondition failed");
    };
    run("EX x. EX y. EX z. R(x,y) & R(y,z) & R(z,x)",
        from_tuples(sig, 3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0}}), "triangle/K3");
    run("EX x. EX y. EX z. R(x,y) & R(y,z) & R(z,x)",
        from_tuples(sig, 3, {{0, 1}, {1, 2}, {2, 0}}), "triangle/C3");
    run("EX x. EX y. R(x,y)", from_tuples(sig, 2, {{0, 1}, {1, 0}}), "edge/K2");
    run("EX x. R(x,x)", from_tuples(sig, 1, {{0, 0}}), "loop/loop");
}

void suite_pipeline(SuiteTally& t, int max_bits, bool full) {
    Signature sig = Signature::single_binary();
    auto preserved_case = [&](const std::string& text, int expected_rank,
                              const std::string& label) {
        auto rep = hpt_pipeline(parse_formula(text), sig, 3, 3, max_bits);
        check(t, rep.preserved, label + ": preservation rejected");
        check(t, rep.equivalent, label + ": sentences differ");
        check(t, rep.psi_quantifier_rank == expected_rank, label + ": rank off");
        int max_td = 0;
        for (int d : rep.core_tree_depths) max_td = std::max(max_td, d);
        check(t, rep.psi_quantifier_rank == max_td, label + ": rank vs tree-depth");
    };
    preserved_case("EX x. EX y. EX z. R(x,y) & R(y,z) & R(z,x)", 3, "triangle");
    if (full) {
        preserved_case("EX x. EX y. R(x,y)", 2, "edge");
        preserved_case("EX x. R(x,x) | EX x. EX y. R(x,y)", 2, "loop-or-edge");
    }

    auto rep = hpt_pipeline(parse_formula("ALL x. ALL y. ~R(x,y)"), sig, 3, 3, max_bits);
    check(t, !rep.preserved, "negative: accepted a non-preserved sentence");
    bool witnessed = rep.preservation.counterexample.has_value();
    if (witnessed) {
        const auto& [a, b] = *rep.preservation.counterexample;
        Formula phi = parse_formula("ALL x. ALL y. ~R(x,y)");
        witnessed = evaluate(phi, a) && !evaluate(phi, b) && find_homomorphism(a, b).has_value();
    }
    check(t, witnessed, "negative: bad counterexample");
}

}  // namespace

SelftestReport run_selftest(const std::string& level, uint64_t seed) {
    if (level != "quick" && level != "full")
        throw std::invalid_argument("run_selftest: level must be quick or full");
    const bool full = level == "full";
    SelftestReport rep;
    rep.level = level;
    rep.seed = seed;
    rep.max_bits = full ? 22 : 16;

    auto suite = [&](const std::string& name, auto&& body) {
        SuiteTally t;
        t.name = name;
        body(t);
        rep.suites.push_back(std::move(t));
    };

    suite("encode-roundtrip", [&](SuiteTally& t) { suite_encode_roundtrip(t, full); });
    suite("parse-roundtrip", [&](SuiteTally& t) { suite_parse_roundtrip(t, seed, full); });
    suite("hom-soundness", [&](SuiteTally& t) { suite_hom_soundness(t, seed, full); });
    suite("core-invariants", [&](SuiteTally& t) { suite_core_invariants(t, seed, full); });
    suite("graph-inequalities", [&](SuiteTally& t) { suite_graph_inequalities(t, seed, full); });
    suite("pp-semantics", [&](SuiteTally& t) { suite_pp_semantics(t); });
    suite("compile-agreement", [&](SuiteTally& t) { suite_compile_agreement(t); });
    suite("solver-agreement", [&](SuiteTally& t) { suite_solver_agreement(t, rep.max_bits); });
    suite("solver-random",
          [&](SuiteTally& t) { suite_solver_random(t, seed, rep.max_bits, full); });
    suite("reduction-gate", [&](SuiteTally& t) { suite_reduction_gate(t, rep.max_bits, full); });
    suite("hpt-projection-hom", [&](SuiteTally& t) { suite_hpt_projection_hom(t); });
    suite("hpt-equivalence", [&](SuiteTally& t) { suite_hpt_equivalence(t, rep.max_bits); });
    suite("pipeline", [&](SuiteTally& t) { suite_pipeline(t, rep.max_bits, full); });
    return rep;
}

}  // namespace hompres
