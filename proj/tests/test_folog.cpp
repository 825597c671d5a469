#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include <hompres/compile.hpp>
#include <hompres/cores.hpp>
#include <hompres/errors.hpp>
#include <hompres/formula.hpp>
#include <hompres/hom.hpp>
#include <hompres/pp.hpp>

#include "test_util.hpp"

using namespace hompres;
using namespace hompres::testutil;

namespace {

const char* kTriangle = "EX x. EX y. EX z. R(x, y) & R(y, z) & R(z, x)";

std::vector<bool> input_bits(std::size_t index, int width) {
    std::vector<bool> bits(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) bits[static_cast<std::size_t>(i)] = (index >> i) & 1;
    return bits;
}

std::vector<bool> circuit_table(const Circuit& c) {
    std::vector<bool> table(std::size_t{1} << c.input_count());
    for (std::size_t i = 0; i < table.size(); ++i)
        table[i] = eval_circuit(c, input_bits(i, c.input_count()));
    return table;
}

}  // namespace

TEST_CASE("parsing and rendering") {
    for (const char* text : {
             "EX x. R(x, x)",
             kTriangle,
             "ALL x. ALL y. ~R(x, y)",
             "EX x. (R(x, x) | EX y. R(x, y))",
             "R(x, y) & S(y) | T(x)",
             "~(x = y) & R(x, y)",
         }) {
        Formula f = parse_formula(text);
        CHECK(parse_formula(render(f)) == f);
    }

    CHECK(parse_formula("R(x,y)&S(y)|T(x)").kind() == Formula::Kind::disjunction);
    CHECK(parse_formula("R(x,y) & S(y) | T(x)").parts()[0].kind() == Formula::Kind::conjunction);
    CHECK(parse_formula("R(x,y) | S(y) & T(x)").parts()[1].kind() == Formula::Kind::conjunction);
    CHECK(parse_formula("~R(x,y) & S(y)").parts()[0].kind() == Formula::Kind::negation);
    // quantifier bodies extend maximally right
    Formula q = parse_formula("EX x. R(x,x) | S(x)");
    CHECK(q.kind() == Formula::Kind::exists);
    CHECK(q.body().kind() == Formula::Kind::disjunction);

    CHECK_THROWS_AS(parse_formula("EX x."), parse_error);
    CHECK_THROWS_AS(parse_formula("R(x"), parse_error);
    CHECK_THROWS_AS(parse_formula("R(x, y) &"), parse_error);
    CHECK_THROWS_AS(parse_formula(""), parse_error);
    CHECK_THROWS_AS(parse_formula("R(x) R(y)"), parse_error);
}

TEST_CASE("syntactic measures") {
    Formula tri = parse_formula(kTriangle);
    CHECK(quantifier_rank(tri) == 3);
    CHECK(variable_width(tri) == 3);
    CHECK(quantifier_rank(parse_formula("EX x. R(x, x)")) == 1);
    CHECK(quantifier_rank(parse_formula("EX x. (ALL y. R(x,y)) & (EX z. R(x,z))")) == 2);
    CHECK(variable_width(parse_formula("EX x. ALL y. R(x, y)")) == 2);
    CHECK(variable_width(parse_formula("R(x, y)")) == 2);

    CHECK(free_variables(parse_formula("EX x. R(x, y) & S(z, z)")) ==
          std::set<std::string>{"y", "z"});
    CHECK(free_variables(tri).empty());

    auto c1 = classify(tri);
    CHECK(c1.positive);
    CHECK(c1.existential);
    CHECK(c1.existential_positive);
    auto c2 = classify(parse_formula("EX x. ~R(x, x)"));
    CHECK(!c2.positive);
    CHECK(c2.existential);
    CHECK(!c2.existential_positive);
    auto c3 = classify(parse_formula("~(EX x. R(x, x))"));
    CHECK(!c3.existential);
    auto c4 = classify(parse_formula("ALL x. R(x, x)"));
    CHECK(c4.positive);
    CHECK(!c4.existential);

    Signature sig = infer_signature(parse_formula("R(x, y) & S(y) | T(x)"));
    CHECK(sig.relation_count() == 3);
    CHECK(sig.relation(0).name == "R");
    CHECK(sig.relation(1).arity == 1);
    CHECK_THROWS_AS(infer_signature(parse_formula("R(x, y) & R(x)")), std::invalid_argument);
}

TEST_CASE("normal forms") {
    CHECK(to_nnf(parse_formula("~(EX x. R(x, x))")) == parse_formula("ALL x. ~R(x, x)"));
    CHECK(to_nnf(parse_formula("~(R(x, y) & S(y))")) == parse_formula("~R(x, y) | ~S(y)"));
    CHECK(to_nnf(parse_formula("~~R(x, y)")) == parse_formula("R(x, y)"));
    CHECK(to_nnf(parse_formula("~(ALL x. R(x, x) | S(x))")) ==
          parse_formula("EX x. ~R(x, x) & ~S(x)"));

    Formula chain = parse_formula("R(x,x) & S(x) & T(x)");
    CHECK(flatten_connectives(chain).parts().size() == 3);
    CHECK(max_connective_block(parse_formula(kTriangle)) == 3);
    CHECK(max_connective_block(parse_formula("EX x. R(x, x)")) == 1);
}

TEST_CASE("evaluation") {
    Formula tri = parse_formula(kTriangle);
    CHECK(evaluate(tri, sym_structure(family(GraphFamily::clique, 3))));
    CHECK(evaluate(tri, directed_cycle(3)));
    CHECK(!evaluate(tri, sym_structure(family(GraphFamily::path, 3))));
    CHECK(!evaluate(tri, sym_structure(family(GraphFamily::grid, 2))));

    Formula out = parse_formula("ALL x. EX y. R(x, y)");
    CHECK(evaluate(out, directed_cycle(3)));
    CHECK(!evaluate(out, from_tuples(2, {{0, 1}})));

    Formula open = parse_formula("R(x, y)");
    CHECK(evaluate(open, directed_cycle(3), {{"x", 0}, {"y", 1}}));
    CHECK(!evaluate(open, directed_cycle(3), {{"x", 1}, {"y", 0}}));
    CHECK_THROWS(evaluate(open, directed_cycle(3)));
    CHECK_THROWS_AS(evaluate(parse_formula("S(x, y)"), directed_cycle(3), {{"x", 0}, {"y", 0}}),
                    std::invalid_argument);

    CHECK(evaluate(parse_formula("EX x. x = x"), directed_cycle(3)));
    CHECK(!evaluate(parse_formula("EX x. EX y. ~(x = y)"), from_tuples(1, {{0, 0}})));
}

TEST_CASE("model tables") {
    Signature bin = Signature::single_binary();
    auto table = model_table(parse_formula("EX x. R(x, x)"), bin, 2);
    REQUIRE(table.size() == 16);
    CHECK(!table[0]);
    CHECK(table[1]);
    CHECK(!table[6]);
    CHECK(table[8]);
    CHECK(std::count(table.begin(), table.end(), true) == 12);

    for (std::size_t i = 0; i < table.size(); ++i)
        CHECK(table[i] == evaluate(parse_formula("EX x. R(x, x)"),
                                   structure_from_index(bin, 2, i)));

    CHECK_THROWS_AS(model_table(parse_formula("EX x. R(x, x)"), bin, 5), bound_error);
}

TEST_CASE("formula files") {
    FormulaFile f1 = parse_formula_file("# tautology\nsignature R/2\nALL x. x = x\n");
    REQUIRE(f1.declared_signature.has_value());
    CHECK(f1.signature().relation_count() == 1);
    CHECK(f1.signature().relation(0).arity == 2);
    CHECK(f1.formula == parse_formula("ALL x. x = x"));

    FormulaFile f2 = parse_formula_file("EX x.\n  R(x, x)\n");
    CHECK(!f2.declared_signature.has_value());
    CHECK(f2.formula == parse_formula("EX x. R(x, x)"));
    CHECK(f2.signature().relation(0).name == "R");

    CHECK_THROWS_AS(parse_formula_file("signature R/2\n"), parse_error);
    CHECK_THROWS_AS(parse_formula_file("signature R\nEX x. R(x,x)\n"), parse_error);
}

TEST_CASE("pp sentences from structures") {
    Structure c3 = directed_cycle(3);
    EliminationForest chain{{-1, 0, 1}};
    REQUIRE(chain.valid_for(gaifman(c3)));

    PPSentence psi = pp_sentence_of(c3, chain);
    CHECK(psi.valid());
    CHECK(psi.var_count() == 3);
    CHECK(psi.quantifier_rank() == 3);
    CHECK(canonical_structure(psi) == c3);
    CHECK(psi.atoms.size() == 3);

    Formula f = psi.to_formula();
    Signature bin = Signature::single_binary();
    for (std::size_t i = 0; i < 16; ++i) {
        Structure a = structure_from_index(bin, 2, i);
        CHECK(evaluate(f, a) == find_homomorphism(c3, a).has_value());
    }
    CHECK(evaluate(f, sym_structure(family(GraphFamily::clique, 3))));
    CHECK(!evaluate(f, sym_structure(family(GraphFamily::path, 3))));
}

TEST_CASE("pp sentence validity") {
    Signature bin = Signature::single_binary();
    PPSentence split{bin, EliminationForest{{-1, -1}}, {PPAtom{"R", {0, 1}}}};
    CHECK(!split.valid());
    PPSentence chain{bin, EliminationForest{{-1, 0}}, {PPAtom{"R", {0, 1}}}};
    CHECK(chain.valid());
    CHECK(chain.quantifier_rank() == 2);

    PPSentence atomless{bin, EliminationForest{{-1}}, {}};
    CHECK(atomless.valid());
    CHECK(evaluate(atomless.to_formula(), from_tuples(1, {})));
}

TEST_CASE("to_pp_disjunction") {
    Signature bin = Signature::single_binary();

    auto single = to_pp_disjunction(parse_formula(kTriangle), bin);
    REQUIRE(single.size() == 1);
    CHECK(single[0].valid());
    CHECK(single[0].quantifier_rank() <= 3);
    CHECK(isomorphic(canonical_structure(single[0]), directed_cycle(3)));

    auto two = to_pp_disjunction(parse_formula("EX x. (R(x, x) | EX y. R(x, y))"), bin);
    REQUIRE(two.size() == 2);
    std::vector<int> sizes{two[0].var_count(), two[1].var_count()};
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{1, 2});
    for (const auto& p : two) CHECK(p.quantifier_rank() <= 2);

    auto merged = to_pp_disjunction(parse_formula("EX x. EX y. R(x, y) & x = y"), bin);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].var_count() == 1);
    CHECK(isomorphic(canonical_structure(merged[0]), from_tuples(1, {{0, 0}})));

    CHECK_THROWS_AS(to_pp_disjunction(parse_formula("ALL x. R(x, x)"), bin),
                    std::invalid_argument);
    CHECK_THROWS_AS(to_pp_disjunction(parse_formula("R(x, y)"), bin), std::invalid_argument);

    // semantic equivalence of the disjunction, size-2 sweep
    Formula phi = parse_formula("EX x. (R(x, x) | EX y. R(x, y))");
    for (std::size_t i = 0; i < 16; ++i) {
        Structure a = structure_from_index(bin, 2, i);
        bool any = false;
        for (const auto& p : two) any = any || evaluate(p.to_formula(), a);
        CHECK(any == evaluate(phi, a));
    }
}

TEST_CASE("ep sentence of a class") {
    Structure edge = from_tuples(2, {{0, 1}});
    Formula psi = ep_sentence_of_class({edge});
    CHECK(quantifier_rank(psi) == 2);
    auto cls = classify(psi);
    CHECK(cls.existential_positive);

    Signature bin = Signature::single_binary();
    Formula want = parse_formula("EX x. EX y. R(x, y)");
    for (std::size_t i = 0; i < 16; ++i) {
        Structure a = structure_from_index(bin, 2, i);
        CHECK(evaluate(psi, a) == evaluate(want, a));
    }
}

TEST_CASE("compilation agrees with model tables") {
    Signature bin = Signature::single_binary();
    const char* corpus[] = {
        "EX x. R(x, x)",
        "EX x. EX y. R(x, y)",
        "ALL x. ALL y. ~R(x, y)",
        "EX x. ALL y. R(x, y)",
        "ALL x. EX y. R(x, y)",
        kTriangle,
        "EX x. (R(x, x) | EX y. EX z. R(y, z))",
        "ALL x. EX y. R(x, y) & ~R(y, x)",
        "EX x. EX y. x = y",
    };
    for (const char* text : corpus) {
        Formula f = parse_formula(text);
        for (int n = 1; n <= 2; ++n) {
            Circuit c = compile_fo(f, bin, n);
            CHECK(circuit_table(c) == model_table(f, bin, n));
            CHECK(measure(c).depth <= quantifier_rank(f) + 1);
        }
    }
    Formula tri = parse_formula(kTriangle);
    Circuit c3 = compile_fo(tri, bin, 3);
    CHECK(circuit_table(c3) == model_table(tri, bin, 3));
}

TEST_CASE("compilation shape") {
    Signature bin = Signature::single_binary();
    Circuit tri = compile_fo(parse_formula(kTriangle), bin, 2);
    CHECK(measure(tri).depth == 4);

    Circuit pair = compile_fo(parse_formula("EX x. EX y. R(x, y)"), bin, 2);
    Measures m = measure(pair);
    CHECK(m.depth <= 3);
    CHECK(m.max_fanin <= 2);

    Circuit taut = compile_fo(parse_formula("EX x. x = x"), bin, 2);
    CHECK(measure(taut).size == 0);
    CHECK(eval_circuit(taut, input_bits(0, 4)));
    Circuit contra = compile_fo(parse_formula("EX x. ~(x = x)"), bin, 2);
    CHECK(!eval_circuit(contra, input_bits(15, 4)));
}
