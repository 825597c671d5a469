#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hompres/cores.hpp>
#include <hompres/errors.hpp>
#include <hompres/formula.hpp>
#include <hompres/graph.hpp>
#include <hompres/hom.hpp>

#include "test_util.hpp"

using namespace hompres;
using namespace hompres::testutil;

namespace {

Structure sym_k(int k) { return sym_structure(family(GraphFamily::clique, k)); }

Structure disjoint_union(const Structure& a, const Structure& b) {
    Structure u(a.signature(), a.size() + b.size());
    for (std::size_t r = 0; r < a.signature().relation_count(); ++r) {
        for (const auto& t : a.tuples(r)) u.add_tuple(r, t);
        for (auto t : b.tuples(r)) {
            for (auto& x : t) x += a.size();
            u.add_tuple(r, t);
        }
    }
    return u;
}

}  // namespace

TEST_CASE("homomorphism primitives") {
    Structure p3 = sym_structure(family(GraphFamily::path, 3));
    Structure k2 = sym_k(2);

    auto h = find_homomorphism(p3, k2);
    REQUIRE(h.has_value());
    CHECK(h->image == std::vector<int>{0, 1, 0});
    CHECK(check_homomorphism(*h, p3, k2));
    CHECK(!check_homomorphism(VertexMap{3, 2, {0, 0, 1}}, p3, k2));

    CHECK(!find_homomorphism(sym_k(3), k2).has_value());
    CHECK(find_homomorphism(k2, sym_k(3)).has_value());

    auto pinned = find_homomorphism_pinned(p3, k2, {1, -1, -1});
    REQUIRE(pinned.has_value());
    CHECK(pinned->image == std::vector<int>{1, 0, 1});
    CHECK(!find_homomorphism_pinned(p3, p3, {0, 2, -1}).has_value());

    auto all = enumerate_homomorphisms(k2, k2);
    CHECK(all.size() == 2);
    CHECK(all[0].image == std::vector<int>{0, 1});
    CHECK(all[1].image == std::vector<int>{1, 0});

    CHECK(is_embedding(VertexMap{2, 3, {0, 1}}, k2, sym_k(3)));
    CHECK(!is_embedding(VertexMap{3, 2, {0, 1, 0}}, p3, k2));
    CHECK(hom_equivalent(p3, k2));
    CHECK(!hom_equivalent(p3, sym_k(3)));

    CHECK(compose(VertexMap{2, 3, {2, 0}}, VertexMap{3, 2, {1, 1, 0}}).image ==
          std::vector<int>{0, 0, 2});
}

TEST_CASE("retractions") {
    Structure p3 = sym_structure(family(GraphFamily::path, 3));
    auto r = find_retraction(p3, {0, 1});
    REQUIRE(r.has_value());
    CHECK(r->image == std::vector<int>{0, 1, 0});
    CHECK(!find_retraction(p3, {0, 2}).has_value());
    CHECK(find_retraction(p3, {0, 1, 2})->image == std::vector<int>{0, 1, 2});
}

TEST_CASE("cores of named structures") {
    CHECK(is_core(sym_k(3)));
    CHECK(is_core(directed_cycle(3)));
    CHECK(is_core(sym_k(1)));
    CHECK(!is_core(sym_structure(family(GraphFamily::path, 3))));

    Structure cp3 = compute_core(sym_structure(family(GraphFamily::path, 3))).core;
    CHECK(cp3.size() == 2);
    CHECK(isomorphic(cp3, sym_k(2)));

    Structure cc4 = compute_core(sym_structure(family(GraphFamily::grid, 2))).core;
    CHECK(isomorphic(cc4, sym_k(2)));

    Structure loop = from_tuples(2, {{0, 1}, {1, 0}, {1, 1}});
    CHECK(compute_core(loop).core.size() == 1);
}

TEST_CASE("core invariants on a disjoint union") {
    Structure a = disjoint_union(sym_k(2), sym_k(3));
    CoreResult r = compute_core(a);
    CHECK(r.core.size() == 3);
    CHECK(isomorphic(r.core, sym_k(3)));
    CHECK(r.core_vertices == std::vector<int>{2, 3, 4});

    CHECK(r.retraction.source_size == 5);
    CHECK(check_homomorphism(r.retraction, a, a));
    CHECK(compose(r.retraction, r.retraction).image == r.retraction.image);
    for (int v : r.core_vertices) CHECK(r.retraction.image[v] == v);
    CHECK(induced_substructure(a, r.core_vertices) == r.core);
    CHECK(hom_equivalent(a, r.core));
    CHECK(is_core(r.core));
    CHECK(!r.chain.empty());
}

TEST_CASE("isomorphism") {
    Structure c3 = directed_cycle(3);
    Structure c3r = from_tuples(3, {{1, 0}, {2, 1}, {0, 2}});
    CHECK(isomorphic(c3, c3r));
    CHECK(!isomorphic(c3, sym_k(3)));
    CHECK(!isomorphic(c3, directed_cycle(4)));
    CHECK(isomorphic(sym_k(1), sym_k(1)));
}

TEST_CASE("min_cores") {
    auto mc = min_cores(GeneratedClass{{sym_k(3), directed_cycle(3)}});
    REQUIRE(mc.size() == 1);
    CHECK(isomorphic(mc[0], directed_cycle(3)));

    Structure loop = from_tuples(1, {{0, 0}});
    Structure edge = from_tuples(2, {{0, 1}});
    auto mc2 = min_cores(GeneratedClass{{loop, edge}});
    REQUIRE(mc2.size() == 1);
    CHECK(isomorphic(mc2[0], edge));

    auto mc3 = min_cores(GeneratedClass{{directed_cycle(2), directed_cycle(3)}});
    CHECK(mc3.size() == 2);
    CHECK(mc3[0].size() <= mc3[1].size());

    auto mc4 = min_cores(GeneratedClass{{sym_structure(family(GraphFamily::path, 3)), sym_k(2)}});
    REQUIRE(mc4.size() == 1);
    CHECK(mc4[0].size() == 2);
}

TEST_CASE("preservation checker") {
    Signature bin = Signature::single_binary();

    Formula edge = parse_formula("EX x. EX y. R(x, y)");
    PreservationReport ok = is_hom_preserved(edge, bin, 3);
    CHECK(ok.preserved);
    CHECK(!ok.counterexample.has_value());

    Formula noedge = parse_formula("ALL x. ALL y. ~R(x, y)");
    PreservationReport bad = is_hom_preserved(noedge, bin, 2);
    CHECK(!bad.preserved);
    REQUIRE(bad.counterexample.has_value());
    REQUIRE(bad.counterexample_hom.has_value());
    const auto& [a, b] = *bad.counterexample;
    CHECK(evaluate(noedge, a));
    CHECK(!evaluate(noedge, b));
    CHECK(check_homomorphism(*bad.counterexample_hom, a, b));

    Formula king = parse_formula("EX x. ALL y. R(x, y)");
    PreservationReport bad2 = is_hom_preserved(king, bin, 2);
    CHECK(!bad2.preserved);

    CHECK_THROWS_AS(is_hom_preserved(edge, bin, 5), bound_error);
}
