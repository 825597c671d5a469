#include <hompres/graph.hpp>

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include <hompres/errors.hpp>

namespace hompres {

Graph::Graph(int order) : n_(order) {
    if (order < 1 || order > 64) throw std::invalid_argument("graph order must be in 1..64");
    adj_.assign(static_cast<size_t>(order), 0);
}

Graph Graph::from_edges(int order, const std::vector<std::pair<int, int>>& edges) {
    Graph g(order);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

void Graph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("loops are not allowed");
    if (has_edge(u, v)) return;
    if (u > v) std::swap(u, v);
    edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v)), {u, v});
    adj_[static_cast<size_t>(u)] |= 1ull << v;
    adj_[static_cast<size_t>(v)] |= 1ull << u;
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
    return (adj_[static_cast<size_t>(u)] >> v) & 1ull;
}

int Graph::degree(int v) const { return std::popcount(adj_[static_cast<size_t>(v)]); }

Graph family(GraphFamily kind, int k) {
    if (k < 1) throw std::invalid_argument("family parameter must be >= 1");
    switch (kind) {
        case GraphFamily::path: {
            Graph g(k);
            for (int i = 0; i + 1 < k; ++i) g.add_edge(i, i + 1);
            return g;
        }
        case GraphFamily::clique: {
            Graph g(k);
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) g.add_edge(i, j);
            return g;
        }
        case GraphFamily::binary_tree: {
            // heap numbering: 2^k - 1 vertices, children of i at 2i+1, 2i+2
            int order = (1 << k) - 1;
            Graph g(order);
            for (int i = 0; 2 * i + 2 < order; ++i) {
                g.add_edge(i, 2 * i + 1);
                g.add_edge(i, 2 * i + 2);
            }
            return g;
        }
        case GraphFamily::grid: {
            Graph g(k * k);
            auto id = [k](int r, int c) { return r * k + c; };
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) {
                    if (c + 1 < k) g.add_edge(id(r, c), id(r, c + 1));
                    if (r + 1 < k) g.add_edge(id(r, c), id(r + 1, c));
                }
            return g;
        }
    }
    throw std::invalid_argument("unknown graph family");
}

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int order = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "n") {
            if (order != -1) throw parse_error("duplicate 'n' line", line_no);
            if (!(ls >> order) || order < 1) throw parse_error("bad graph order", line_no);
            if (order > 64) throw parse_error("graph order exceeds 64", line_no);
        } else if (head == "e") {
            if (order == -1) throw parse_error("'e' before 'n'", line_no);
            int u, v;
            if (!(ls >> u >> v)) throw parse_error("bad edge line", line_no);
            if (u < 0 || v < 0 || u >= order || v >= order)
                throw parse_error("edge endpoint out of range", line_no);
            if (u == v) throw parse_error("loops are not allowed", line_no);
            edges.emplace_back(u, v);
        } else {
            throw parse_error("unknown directive '" + head + "'", line_no);
        }
        std::string rest;
        if (ls >> rest && rest[0] != '#') throw parse_error("trailing tokens", line_no);
    }
    if (order == -1) throw parse_error("missing 'n' line");
    return Graph::from_edges(order, edges);
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << "n " << g.order() << "\n";
    for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
    return out.str();
}

uint64_t full_mask(int order) { return order >= 64 ? ~0ull : (1ull << order) - 1; }

uint64_t component_of(const Graph& g, int v, uint64_t within) {
    uint64_t comp = 1ull << v;
    uint64_t frontier = comp;
    while (frontier) {
        uint64_t next = 0;
        while (frontier) {
            int u = std::countr_zero(frontier);
            frontier &= frontier - 1;
            next |= g.neighbours(u) & within & ~comp;
        }
        comp |= next;
        frontier = next;
    }
    return comp;
}

std::vector<uint64_t> components(const Graph& g, uint64_t within) {
    std::vector<uint64_t> out;
    uint64_t left = within;
    while (left) {
        int v = std::countr_zero(left);
        uint64_t comp = component_of(g, v, within);
        out.push_back(comp);
        left &= ~comp;
    }
    return out;
}

bool is_connected(const Graph& g) {
    return component_of(g, 0, full_mask(g.order())) == full_mask(g.order());
}

Graph with_edge_deleted(const Graph& g, int u, int v) {
    if (!g.has_edge(u, v)) throw std::invalid_argument("no such edge");
    if (u > v) std::swap(u, v);
    Graph h(g.order());
    for (auto [a, b] : g.edges())
        if (!(a == u && b == v)) h.add_edge(a, b);
    return h;
}

Graph with_edge_contracted(const Graph& g, int u, int v) {
    if (!g.has_edge(u, v)) throw std::invalid_argument("no such edge");
    if (u > v) std::swap(u, v);
    // merge v into u, then close the gap at v
    auto rename = [u, v](int x) {
        if (x == v) x = u;
        return x > v ? x - 1 : x;
    };
    Graph h(g.order() - 1);
    for (auto [a, b] : g.edges()) {
        int x = rename(a), y = rename(b);
        if (x != y) h.add_edge(x, y);
    }
    return h;
}

Graph with_vertex_deleted(const Graph& g, int v) {
    if (v < 0 || v >= g.order()) throw std::invalid_argument("vertex out of range");
    if (g.order() == 1) throw std::invalid_argument("cannot delete the last vertex");
    Graph h(g.order() - 1);
    for (auto [a, b] : g.edges()) {
        if (a == v || b == v) continue;
        h.add_edge(a > v ? a - 1 : a, b > v ? b - 1 : b);
    }
    return h;
}

Graph relabelled(const Graph& g, const std::vector<int>& new_label) {
    if (static_cast<int>(new_label.size()) != g.order())
        throw std::invalid_argument("relabel size mismatch");
    uint64_t seen = 0;
    for (int x : new_label) {
        if (x < 0 || x >= g.order() || ((seen >> x) & 1ull))
            throw std::invalid_argument("relabel is not a permutation");
        seen |= 1ull << x;
    }
    Graph h(g.order());
    for (auto [a, b] : g.edges())
        h.add_edge(new_label[static_cast<size_t>(a)], new_label[static_cast<size_t>(b)]);
    return h;
}

Graph induced_subgraph(const Graph& g, uint64_t mask) {
    std::vector<int> keep;
    for (int v = 0; v < g.order(); ++v)
        if ((mask >> v) & 1ull) keep.push_back(v);
    if (keep.empty()) throw std::invalid_argument("empty induced subgraph");
    std::vector<int> pos(static_cast<size_t>(g.order()), -1);
    for (size_t i = 0; i < keep.size(); ++i) pos[static_cast<size_t>(keep[i])] = static_cast<int>(i);
    Graph h(static_cast<int>(keep.size()));
    for (auto [a, b] : g.edges())
        if (pos[static_cast<size_t>(a)] >= 0 && pos[static_cast<size_t>(b)] >= 0)
            h.add_edge(pos[static_cast<size_t>(a)], pos[static_cast<size_t>(b)]);
    return h;
}

}  // namespace hompres
