#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include <hompres/errors.hpp>
#include <hompres/graph.hpp>
#include <hompres/graphparams.hpp>

using namespace hompres;

namespace {

bool valid_branch_sets(const Graph& h, const Graph& g, const std::vector<std::vector<int>>& sets) {
    if (sets.size() != static_cast<std::size_t>(h.order())) return false;
    std::set<int> seen;
    for (const auto& s : sets) {
        if (s.empty()) return false;
        for (int v : s) {
            if (v < 0 || v >= g.order()) return false;
            if (!seen.insert(v).second) return false;
        }
        // connectivity via walk inside the set
        std::set<int> inside(s.begin(), s.end());
        std::vector<int> stack{s[0]};
        std::set<int> reached{s[0]};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < g.order(); ++w)
                if ((g.neighbours(v) >> w & 1) && inside.count(w) && reached.insert(w).second)
                    stack.push_back(w);
        }
        if (reached.size() != inside.size()) return false;
    }
    for (auto [u, v] : h.edges()) {
        bool touched = false;
        for (int x : sets[static_cast<std::size_t>(u)])
            for (int y : sets[static_cast<std::size_t>(v)])
                if (g.has_edge(x, y)) touched = true;
        if (!touched) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("tree-depth of paths") {
    const int want[] = {1, 2, 2, 3, 3, 3, 3, 4};
    for (int k = 1; k <= 8; ++k) {
        auto r = tree_depth(family(GraphFamily::path, k));
        CHECK(r.depth == want[k - 1]);
        CHECK(r.forest.valid_for(family(GraphFamily::path, k)));
        CHECK(r.forest.height() == r.depth);
    }
    CHECK(tree_depth(family(GraphFamily::path, 4)).forest.parent ==
          std::vector<int>{-1, 2, 0, 2});
    auto p7 = tree_depth(family(GraphFamily::path, 7)).forest;
    CHECK(p7.parent[3] == -1);
    CHECK(p7.depth_of(3) == 1);
    CHECK(p7.depth_of(1) == 2);
    CHECK(p7.depth_of(0) == 3);
    CHECK(p7.ancestors(0) == std::vector<int>{1, 3});
}

TEST_CASE("tree-width") {
    CHECK(tree_width(family(GraphFamily::path, 1)).width == 0);
    CHECK(tree_width(family(GraphFamily::path, 4)).width == 1);
    CHECK(tree_width(family(GraphFamily::grid, 2)).width == 2);
    CHECK(tree_width(family(GraphFamily::clique, 4)).width == 3);
    CHECK(tree_width(family(GraphFamily::grid, 3)).width == 3);
    CHECK(tree_width(family(GraphFamily::binary_tree, 3)).width == 1);

    auto r = tree_width(family(GraphFamily::grid, 2));
    CHECK(r.decomposition.valid_for(family(GraphFamily::grid, 2)));
    CHECK(r.decomposition.width() == r.width);
    for (std::size_t i = 1; i < r.decomposition.parent.size(); ++i)
        CHECK(r.decomposition.parent[i] < static_cast<int>(i));

    CHECK_THROWS_AS(tree_width(family(GraphFamily::path, 13)), bound_error);
}

TEST_CASE("tree-depth of other families") {
    CHECK(tree_depth(family(GraphFamily::grid, 2)).depth == 3);
    for (int k = 1; k <= 4; ++k) {
        CHECK(tree_depth(family(GraphFamily::clique, k)).depth == k);
        CHECK(tree_depth(family(GraphFamily::binary_tree, k), 15).depth == k);
    }
    CHECK_THROWS_AS(tree_depth(family(GraphFamily::path, 15)), bound_error);
}

TEST_CASE("longest path") {
    for (int k = 1; k <= 8; ++k) {
        auto r = longest_path(family(GraphFamily::path, k));
        CHECK(r.length == k);
        CHECK(static_cast<int>(r.path.size()) == r.length);
    }
    CHECK(longest_path(family(GraphFamily::grid, 2)).length == 4);
    CHECK(longest_path(family(GraphFamily::clique, 4)).length == 4);
    CHECK(longest_path(family(GraphFamily::binary_tree, 3)).length == 5);

    auto w = longest_path(family(GraphFamily::binary_tree, 3));
    for (std::size_t i = 0; i + 1 < w.path.size(); ++i)
        CHECK(family(GraphFamily::binary_tree, 3).has_edge(w.path[i], w.path[i + 1]));
    std::vector<int> sorted = w.path;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());

    CHECK_THROWS_AS(longest_path(family(GraphFamily::path, 15)), bound_error);
}

TEST_CASE("parameter inequalities on small families") {
    std::vector<Graph> corpus;
    for (int k = 1; k <= 6; ++k) corpus.push_back(family(GraphFamily::path, k));
    for (int k = 2; k <= 4; ++k) corpus.push_back(family(GraphFamily::clique, k));
    for (int k = 2; k <= 3; ++k) corpus.push_back(family(GraphFamily::binary_tree, k));
    corpus.push_back(family(GraphFamily::grid, 2));
    corpus.push_back(family(GraphFamily::grid, 3));
    for (const auto& g : corpus) {
        int tw = tree_width(g).width;
        int td = tree_depth(g).depth;
        int lp = longest_path(g).length;
        CHECK(tw <= td - 1);
        CHECK(static_cast<double>(td - 1) <=
              tw * std::log2(static_cast<double>(g.order())) + 1e-9);
        CHECK(std::log2(static_cast<double>(lp) + 1.0) <= static_cast<double>(td) + 1e-9);
        CHECK(td <= lp);
    }
}

TEST_CASE("minor containment") {
    Graph k3 = family(GraphFamily::clique, 3);
    Graph k4 = family(GraphFamily::clique, 4);
    Graph c4 = family(GraphFamily::grid, 2);
    Graph p3 = family(GraphFamily::path, 3);
    Graph p4 = family(GraphFamily::path, 4);

    auto a = minor_contains(k3, k4);
    REQUIRE(a.has_value());
    CHECK(valid_branch_sets(k3, k4, *a));

    auto b = minor_contains(k3, c4);
    REQUIRE(b.has_value());
    CHECK(valid_branch_sets(k3, c4, *b));

    CHECK(!minor_contains(k4, c4).has_value());
    CHECK(!minor_contains(k3, p4).has_value());

    auto c = minor_contains(p3, p4);
    REQUIRE(c.has_value());
    CHECK(valid_branch_sets(p3, p4, *c));

    CHECK_THROWS_AS(minor_contains(k3, family(GraphFamily::path, 13)), bound_error);
}

TEST_CASE("trichotomy labels") {
    auto r1 = trichotomy_check(family(GraphFamily::path, 4), 2);
    CHECK(r1.labels() == std::vector<std::string>{"long_path", "btree_minor"});
    CHECK(!r1.high_treewidth);

    auto r2 = trichotomy_check(family(GraphFamily::clique, 4), 2);
    CHECK(r2.labels() ==
          std::vector<std::string>{"high_treewidth", "long_path", "btree_minor"});

    auto r3 = trichotomy_check(family(GraphFamily::path, 2), 1);
    CHECK(r3.labels() ==
          std::vector<std::string>{"high_treewidth", "long_path", "btree_minor"});

    auto r4 = trichotomy_check(family(GraphFamily::path, 3), 2);
    CHECK(!r4.high_treewidth);
    CHECK(!r4.long_path);
    CHECK(r4.btree_minor);
    CHECK(r4.ell == 2);
}
