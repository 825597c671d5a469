#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hompres/errors.hpp>
#include <hompres/graph.hpp>
#include <hompres/graphparams.hpp>
#include <hompres/projection.hpp>
#include <hompres/subiso.hpp>

#include "test_util.hpp"

using namespace hompres;
using namespace hompres::testutil;

namespace {

std::vector<bool> input_bits(std::size_t index, int width) {
    std::vector<bool> bits(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) bits[static_cast<std::size_t>(i)] = (index >> i) & 1;
    return bits;
}

// truth table of SUB(g, n), indexed with bit i carrying variable i
std::vector<bool> sub_table(const Graph& g, int n) {
    BlowUp bu(g, n);
    std::vector<bool> table(std::size_t{1} << bu.variable_count());
    for (std::size_t i = 0; i < table.size(); ++i)
        table[i] = sub_bruteforce({bu, input_bits(i, bu.variable_count())}).found;
    return table;
}

}  // namespace

TEST_CASE("blow-up indexing") {
    BlowUp bu(family(GraphFamily::path, 3), 2);
    CHECK(bu.variable_count() == 8);
    CHECK(bu.edge_rank(0, 1) == 0);
    CHECK(bu.edge_rank(1, 2) == 1);
    CHECK(bu.edge_rank(2, 1) == 1);
    CHECK_THROWS_AS(bu.edge_rank(0, 2), std::invalid_argument);

    CHECK(bu.var_index(0, 0, 1, 0) == 0);
    CHECK(bu.var_index(0, 1, 1, 0) == 2);
    CHECK(bu.var_index(1, 0, 0, 1) == 2);  // endpoint order is free
    CHECK(bu.var_index(1, 0, 2, 1) == 5);
    CHECK(bu.var_index(2, 1, 1, 0) == 5);

    CHECK(pattern_copy(bu, {1, 0, 1}) == std::vector<int>{2, 5});
    CHECK(pattern_copy(bu, {0, 0, 0}) == std::vector<int>{0, 4});

    CHECK_THROWS_AS(BlowUp(family(GraphFamily::path, 3), 0), std::invalid_argument);
}

TEST_CASE("brute-force solver") {
    BlowUp bu(family(GraphFamily::path, 3), 2);

    SubResult all = sub_bruteforce({bu, std::vector<bool>(8, true)});
    CHECK(all.found);
    CHECK(all.witness == Alpha{0, 0, 0});

    SubResult none = sub_bruteforce({bu, std::vector<bool>(8, false)});
    CHECK(!none.found);
    CHECK(!none.witness.has_value());

    BlowUp p2(family(GraphFamily::path, 2), 2);
    std::vector<bool> lone(4, false);
    lone[static_cast<std::size_t>(p2.var_index(0, 1, 1, 0))] = true;
    SubResult one = sub_bruteforce({p2, lone});
    CHECK(one.found);
    CHECK(one.witness == Alpha{1, 0});

    CHECK_THROWS_AS(sub_bruteforce({bu, std::vector<bool>(8, true)}, 4), bound_error);
}

TEST_CASE("solvers agree") {
    Graph p3 = family(GraphFamily::path, 3);
    BlowUp bu(p3, 2);
    TreeDecomposition td = tree_width(p3).decomposition;
    Circuit formula = sub_formula_treedepth(p3, tree_depth(p3).forest, 2);
    REQUIRE(formula.input_count() == 8);
    for (std::size_t i = 0; i < 256; ++i) {
        SubInstance x{bu, input_bits(i, 8)};
        bool brute = sub_bruteforce(x).found;
        CHECK(sub_dp_treewidth(x, td) == brute);
        CHECK(eval_circuit(formula, x.present) == brute);
    }

    Graph k3 = family(GraphFamily::clique, 3);
    BlowUp bk(k3, 2);
    TreeDecomposition tk = tree_width(k3).decomposition;
    Circuit fk = sub_formula_treedepth(k3, tree_depth(k3).forest, 2);
    for (std::size_t i = 0; i < (1u << 12); i += 7) {  // strided sweep
        SubInstance x{bk, input_bits(i, 12)};
        bool brute = sub_bruteforce(x).found;
        CHECK(sub_dp_treewidth(x, tk) == brute);
        CHECK(eval_circuit(fk, x.present) == brute);
    }
}

TEST_CASE("formula sizes track tree-depth") {
    struct Row {
        int k;
        long long want[3];  // n = 2, 3, 4
    };
    const Row rows[] = {
        {2, {4, 9, 16}},
        {3, {8, 18, 32}},
        {4, {24, 81, 192}},
        {7, {48, 162, 384}},
    };
    for (const auto& row : rows) {
        Graph g = family(GraphFamily::path, row.k);
        EliminationForest f = tree_depth(g).forest;
        for (int n = 2; n <= 4; ++n) {
            Circuit c = sub_formula_treedepth(g, f, n);
            Measures m = measure(c);
            CHECK(m.formula_size == row.want[n - 2]);
            CHECK(m.depth <= 2 * f.height() + 1);
        }
    }
    Circuit p7 = sub_formula_treedepth(family(GraphFamily::path, 7),
                                       tree_depth(family(GraphFamily::path, 7)).forest, 2);
    CHECK(measure(p7).depth == 6);
}

TEST_CASE("minor ops") {
    Graph p4 = family(GraphFamily::path, 4);
    CHECK(apply_minor_op(p4, MinorOp::del_edge(2, 3)) == parse_graph("n 4\ne 0 1\ne 1 2\n"));
    CHECK(apply_minor_op(p4, MinorOp::del_vertex(3)) == family(GraphFamily::path, 3));
    CHECK(apply_minor_op(family(GraphFamily::grid, 2), MinorOp::contract(0, 1)) ==
          family(GraphFamily::clique, 3));
    CHECK(apply_minor_op(p4, MinorOp::contract(2, 1)) == family(GraphFamily::path, 3));
    CHECK_THROWS_AS(apply_minor_op(p4, MinorOp::del_edge(0, 2)), std::invalid_argument);
}

TEST_CASE("single-step reductions serialize as expected") {
    Graph p3 = family(GraphFamily::path, 3);
    MonotoneProjection del = minor_reduction(p3, MinorOp::del_edge(1, 2), 2);
    CHECK(del.source_count == 4);
    CHECK(serialize_projection(del) == "x0\nx1\nx2\nx3\n1\n1\n1\n1\n");

    Graph k3 = family(GraphFamily::clique, 3);
    MonotoneProjection con = minor_reduction(k3, MinorOp::contract(0, 1), 2);
    CHECK(con.source_count == 4);
    CHECK(serialize_projection(con) ==
          "1\n0\n0\n1\nx0\nx1\nx2\nx3\nx0\nx1\nx2\nx3\n");

    CHECK_THROWS_AS(minor_reduction(p3, MinorOp::del_vertex(2), 2), std::invalid_argument);
}

TEST_CASE("single-step reductions are correct") {
    Graph p3 = family(GraphFamily::path, 3);
    Graph p3cut = apply_minor_op(p3, MinorOp::del_edge(1, 2));
    MonotoneProjection del = minor_reduction(p3, MinorOp::del_edge(1, 2), 2);
    CHECK(verify_reduction(sub_table(p3cut, 2), sub_table(p3, 2), del).ok);

    Graph k3 = family(GraphFamily::clique, 3);
    Graph k3con = apply_minor_op(k3, MinorOp::contract(0, 1));
    MonotoneProjection con = minor_reduction(k3, MinorOp::contract(0, 1), 2);
    CHECK(verify_reduction(sub_table(k3con, 2), sub_table(k3, 2), con).ok);
}

TEST_CASE("reduction chains") {
    Graph p4 = family(GraphFamily::path, 4);
    Graph p3 = family(GraphFamily::path, 3);
    MonotoneProjection chain =
        minor_reduction_chain(p3, p4, {MinorOp::del_vertex(3)}, 2);
    CHECK(chain.source_count == 8);
    CHECK(chain.target_count() == 12);
    CHECK(serialize_projection(chain) ==
          "x0\nx1\nx2\nx3\nx4\nx5\nx6\nx7\n1\n1\n1\n1\n");
    CHECK(verify_reduction(sub_table(p3, 2), sub_table(p4, 2), chain).ok);

    Graph c4 = family(GraphFamily::grid, 2);
    Graph k3 = family(GraphFamily::clique, 3);
    MonotoneProjection tok3 = minor_reduction_chain(k3, c4, {MinorOp::contract(0, 1)}, 2);
    CHECK(verify_reduction(sub_table(k3, 2), sub_table(c4, 2), tok3).ok);

    CHECK_THROWS_AS(minor_reduction_chain(k3, p4, {MinorOp::del_vertex(3)}, 2),
                    std::invalid_argument);
}

TEST_CASE("path reduction") {
    PathReduction pr = path_reduction(family(GraphFamily::path, 4), 2);
    CHECK(pr.k == 3);
    CHECK(pr.rho.source_count == 8);
    CHECK(pr.rho.target_count() == 12);
    CHECK(verify_reduction(sub_table(family(GraphFamily::path, 3), 2),
                           sub_table(family(GraphFamily::path, 4), 2), pr.rho)
              .ok);

    PathReduction pk = path_reduction(family(GraphFamily::clique, 3), 2);
    CHECK(pk.k == 3);
    CHECK(!pk.ops.empty());
    CHECK(verify_reduction(sub_table(family(GraphFamily::path, 3), 2),
                           sub_table(family(GraphFamily::clique, 3), 2), pk.rho)
              .ok);
}

TEST_CASE("hpt reduction entries") {
    Structure edge = from_tuples(2, {{0, 1}});
    MonotoneProjection small = hpt_reduction(edge, 1);
    CHECK(small.source_count == 1);
    CHECK(small.target_count() == 4);
    CHECK(serialize_projection(small) == "0\nx0\n0\n0\n");

    Structure loop = from_tuples(1, {{0, 0}});
    MonotoneProjection trivial = hpt_reduction(loop, 2);
    CHECK(trivial.source_count == 0);
    CHECK(serialize_projection(trivial) == "1\n1\n1\n1\n");
}

TEST_CASE("hpt reduction verifies") {
    Formula pair = parse_formula("EX x. EX y. R(x, y)");
    Structure edge = from_tuples(2, {{0, 1}});
    HptCheck ec = verify_hpt_reduction(pair, edge, 2);
    CHECK(ec.ok);
    CHECK(ec.preservation_holds);
    CHECK(ec.preservation_checked_to == 3);  // pair sweep: 2 * 9 bits <= 20

    Formula tri =
        parse_formula("EX x. EX y. EX z. R(x, y) & R(y, z) & R(z, x)");
    HptCheck tc = verify_hpt_reduction(tri, sym_structure(family(GraphFamily::clique, 3)), 2);
    CHECK(tc.ok);
    CHECK(tc.preservation_holds);

    HptCheck lc = verify_hpt_reduction(parse_formula("EX x. R(x, x)"),
                                       from_tuples(1, {{0, 0}}), 2);
    CHECK(lc.ok);

    // wrong target structure: the sweep finds a mismatch
    HptCheck bad = verify_hpt_reduction(tri, sym_structure(family(GraphFamily::path, 3)), 1);
    CHECK(!bad.ok);
    CHECK(bad.counterexample.has_value());

    CHECK_THROWS_AS(verify_hpt_reduction(tri, sym_structure(family(GraphFamily::clique, 3)), 3),
                    bound_error);
}

TEST_CASE("hpt pipeline") {
    Signature bin = Signature::single_binary();
    Formula tri =
        parse_formula("EX x. EX y. EX z. R(x, y) & R(y, z) & R(z, x)");
    HptPipelineReport rep = hpt_pipeline(tri, bin, 3, 3);
    CHECK(rep.preserved);
    REQUIRE(rep.mincores.size() == 1);
    CHECK(isomorphic(rep.mincores[0], directed_cycle(3)));
    CHECK(rep.core_tree_depths == std::vector<int>{3});
    REQUIRE(rep.psi.has_value());
    CHECK(rep.psi_quantifier_rank == 3);
    CHECK(rep.equivalent);
    CHECK(!rep.mismatch.has_value());

    Formula pair = parse_formula("EX x. EX y. R(x, y)");
    HptPipelineReport rp = hpt_pipeline(pair, bin, 3, 3);
    CHECK(rp.preserved);
    REQUIRE(rp.mincores.size() == 1);
    CHECK(isomorphic(rp.mincores[0], from_tuples(2, {{0, 1}})));
    CHECK(rp.psi_quantifier_rank == 2);
    CHECK(rp.equivalent);

    Formula noedge = parse_formula("ALL x. ALL y. ~R(x, y)");
    HptPipelineReport rn = hpt_pipeline(noedge, bin, 2, 2);
    CHECK(!rn.preserved);
    CHECK(!rn.equivalent);
    CHECK(!rn.psi.has_value());
    REQUIRE(rn.preservation.counterexample.has_value());
    const auto& [a, b] = *rn.preservation.counterexample;
    CHECK(evaluate(noedge, a));
    CHECK(!evaluate(noedge, b));
}

TEST_CASE("instance files") {
    Graph p3 = family(GraphFamily::path, 3);
    BlowUp bu(p3, 2);
    SubInstance x{bu, {true, false, false, false, true, false, false, false}};
    std::string text = serialize_sub_instance(x);
    CHECK(text == "1\n0\n0\n0\n1\n0\n0\n0\n");
    SubInstance back = parse_sub_instance(p3, 2, text);
    CHECK(back.present == x.present);

    SubInstance commented = parse_sub_instance(p3, 2, "# copy at zero\n1 0 0 0\n\n1 0 0 0\n");
    CHECK(commented.present == x.present);

    CHECK_THROWS_AS(parse_sub_instance(p3, 2, "1 0 0\n"), parse_error);
    CHECK_THROWS_AS(parse_sub_instance(p3, 2, "1 0 0 0\n2 0 0 0\n"), parse_error);
    try {
        parse_sub_instance(p3, 2, "1 0 0 0\nx 0 0 0\n");
    } catch (const parse_error& e) {
        CHECK(e.line == 2);
    }
}
