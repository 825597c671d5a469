#pragma once

#include <optional>
#include <vector>

#include <hompres/graph.hpp>

namespace hompres {

// Bags arranged along a rooted tree: parent[0] == -1 and parent[i] < i.
struct TreeDecomposition {
    std::vector<std::vector<int>> bags;  // each sorted ascending
    std::vector<int> parent;

    int width() const;  // max bag size - 1
    // every vertex covered, every edge inside some bag, and the bags
    // containing any fixed vertex form a connected subtree
    bool valid_for(const Graph& g) const;
};

// Rooted forest on the graph's own vertices: parent[v] == -1 for roots.
struct EliminationForest {
    std::vector<int> parent;

    int order() const { return static_cast<int>(parent.size()); }
    int height() const;        // max vertices on a root-to-leaf path
    int depth_of(int v) const;  // vertices on the root-to-v path, inclusive
    std::vector<int> ancestors(int v) const;  // strict ancestors, nearest first
    // parent pointers form a forest and every edge of g joins an
    // ancestor-descendant pair
    bool valid_for(const Graph& g) const;
};

struct TreeWidthResult {
    int width;
    TreeDecomposition decomposition;
};

struct TreeDepthResult {
    int depth;
    EliminationForest forest;
};

struct LongestPathResult {
    int length;  // counted in vertices
    std::vector<int> path;
};

// Exact tree-width with a witness decomposition of that width.
// Throws bound_error when g.order() > max_order.
TreeWidthResult tree_width(const Graph& g, int max_order = 12);

// Exact tree-depth with a witness forest of that height. Deletion ties are
// broken towards the lowest vertex index. Throws bound_error past max_order.
TreeDepthResult tree_depth(const Graph& g, int max_order = 14);

// Longest simple path, counted in vertices, with one witness path.
LongestPathResult longest_path(const Graph& g, int max_order = 14);

// Branch-set witness that h is a minor of g: result[k] lists the vertices of
// g forming the (connected) branch set of h's vertex k; sets are disjoint and
// adjacent in g wherever h has an edge. Returns nullopt when h is not a
// minor. Throws bound_error when g.order() > max_order.
std::optional<std::vector<std::vector<int>>> minor_contains(const Graph& h, const Graph& g,
                                                            int max_order = 12);

// Which of the three escape clauses hold for the pair (g, ell).
struct TrichotomyReport {
    int ell = 0;
    bool high_treewidth = false;  // tw(g) >= ell
    bool long_path = false;       // lp(g) >= 2^ell (path order, in vertices)
    bool btree_minor = false;     // B_ell is a minor of g

    std::vector<std::string> labels() const;  // subset of the three names
};

TrichotomyReport trichotomy_check(const Graph& g, int ell, int max_order = 12);

}  // namespace hompres
