#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hompres {

// Simple undirected graph on vertices {0..order-1}: no loops, no parallel
// edges. Order is capped at 64 so vertex sets fit in one machine word.
class Graph {
public:
    explicit Graph(int order);
    static Graph from_edges(int order, const std::vector<std::pair<int, int>>& edges);

    int order() const { return n_; }
    // sorted list of (u, v) with u < v
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool has_edge(int u, int v) const;
    uint64_t neighbours(int v) const { return adj_[static_cast<size_t>(v)]; }
    int degree(int v) const;
    void add_edge(int u, int v);  // idempotent

    bool operator==(const Graph&) const = default;

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<uint64_t> adj_;
};

enum class GraphFamily { path, clique, binary_tree, grid };

// path: P_k, k vertices. clique: K_k. binary_tree: complete binary tree where
// every leaf-to-root path has k vertices (k=1: single vertex). grid: k x k.
Graph family(GraphFamily kind, int k);

// text format: one `n <order>` line, then `e <u> <v>` lines; '#' comments
Graph parse_graph(const std::string& text);
std::string serialize_graph(const Graph&);

// --- vertex-mask helpers (masks index vertices bitwise) ---

uint64_t full_mask(int order);
// connected component of v inside `within` (v must be in `within`)
uint64_t component_of(const Graph&, int v, uint64_t within);
std::vector<uint64_t> components(const Graph&, uint64_t within);
bool is_connected(const Graph&);

// --- copy-building graph edits (used for minors) ---

Graph with_edge_deleted(const Graph&, int u, int v);
// merges v into u, relabels vertices above v down by one
Graph with_edge_contracted(const Graph&, int u, int v);
// drops v and its incident edges, relabels vertices above v down by one
Graph with_vertex_deleted(const Graph&, int v);
// new_label[v] = position of v in the relabeled graph (a permutation)
Graph relabelled(const Graph&, const std::vector<int>& new_label);
Graph induced_subgraph(const Graph&, uint64_t mask);  // relabels ascending

}  // namespace hompres
