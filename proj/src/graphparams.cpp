#include <hompres/graphparams.hpp>

#include <algorithm>
#include <bit>
#include <climits>
#include <cstdint>
#include <functional>
#include <string>

#include <hompres/errors.hpp>

namespace hompres {

namespace {

uint64_t bit(int v) { return uint64_t{1} << v; }

std::vector<int> mask_to_vertices(uint64_t mask) {
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

}  // namespace

int TreeDecomposition::width() const {
    int w = -1;
    for (const auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
    return w;
}

bool TreeDecomposition::valid_for(const Graph& g) const {
    const int n = g.order();
    const int m = static_cast<int>(bags.size());
    if (m == 0 || static_cast<int>(parent.size()) != m) return false;
    if (parent[0] != -1) return false;
    for (int i = 1; i < m; ++i)
        if (parent[static_cast<size_t>(i)] < 0 || parent[static_cast<size_t>(i)] >= i) return false;
    std::vector<uint64_t> bag_mask(static_cast<size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        int last = -1;
        for (int v : bags[static_cast<size_t>(i)]) {
            if (v <= last || v >= n) return false;  // sorted, unique, in range
            last = v;
            bag_mask[static_cast<size_t>(i)] |= bit(v);
        }
    }
    uint64_t covered = 0;
    for (uint64_t bm : bag_mask) covered |= bm;
    if (covered != full_mask(n)) return false;
    for (auto [u, v] : g.edges()) {
        bool found = false;
        for (uint64_t bm : bag_mask)
            if ((bm >> u & 1) && (bm >> v & 1)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    // bags holding any fixed vertex must form a connected subtree: exactly one
    // of them may have its parent outside the set
    for (int v = 0; v < n; ++v) {
        int tops = 0;
        for (int i = 0; i < m; ++i) {
            if (!(bag_mask[static_cast<size_t>(i)] >> v & 1)) continue;
            int p = parent[static_cast<size_t>(i)];
            if (p == -1 || !(bag_mask[static_cast<size_t>(p)] >> v & 1)) ++tops;
        }
        if (tops != 1) return false;
    }
    return true;
}

int EliminationForest::height() const {
    int h = 0;
    for (int v = 0; v < order(); ++v) h = std::max(h, depth_of(v));
    return h;
}

int EliminationForest::depth_of(int v) const {
    int d = 0;
    for (int u = v; u != -1; u = parent[static_cast<size_t>(u)]) {
        ++d;
        if (d > order()) return -1;  // cycle guard
    }
    return d;
}

std::vector<int> EliminationForest::ancestors(int v) const {
    std::vector<int> out;
    for (int u = parent[static_cast<size_t>(v)]; u != -1; u = parent[static_cast<size_t>(u)]) {
        out.push_back(u);
        if (static_cast<int>(out.size()) > order()) return {};  // cycle guard
    }
    return out;
}

bool EliminationForest::valid_for(const Graph& g) const {
    const int n = g.order();
    if (order() != n) return false;
    for (int v = 0; v < n; ++v) {
        int p = parent[static_cast<size_t>(v)];
        if (p == v || p < -1 || p >= n) return false;
        if (depth_of(v) < 0) return false;  // cycle
    }
    for (auto [u, v] : g.edges()) {
        auto anc = ancestors(v);
        bool comparable = std::find(anc.begin(), anc.end(), u) != anc.end();
        if (!comparable) {
            auto anc2 = ancestors(u);
            comparable = std::find(anc2.begin(), anc2.end(), v) != anc2.end();
        }
        if (!comparable) return false;
    }
    return true;
}

namespace {

// number of vertices outside eliminated+{v} reachable from v through
// eliminated vertices; equals v's degree once `eliminated` has been
// eliminated with fill-in
int q_value(const Graph& g, uint64_t eliminated, int v) {
    uint64_t closure = component_of(g, v, eliminated | bit(v));
    uint64_t outside = 0;
    for (uint64_t m = closure; m;) {
        int u = std::countr_zero(m);
        m &= m - 1;
        outside |= g.neighbours(u);
    }
    outside &= ~eliminated & ~bit(v);
    return std::popcount(outside);
}

TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<int>& order) {
    const int n = g.order();
    std::vector<uint64_t> adj(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) adj[static_cast<size_t>(v)] = g.neighbours(v);

    std::vector<uint64_t> bag_of_step(static_cast<size_t>(n), 0);
    uint64_t later = full_mask(n);
    for (int i = 0; i < n; ++i) {
        int v = order[static_cast<size_t>(i)];
        later &= ~bit(v);
        uint64_t nb = adj[static_cast<size_t>(v)] & later;
        bag_of_step[static_cast<size_t>(i)] = nb | bit(v);
        for (uint64_t m = nb; m;) {  // fill-in: later neighbours become a clique
            int u = std::countr_zero(m);
            m &= m - 1;
            adj[static_cast<size_t>(u)] |= nb & ~bit(u);
        }
    }

    std::vector<int> step_of(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) step_of[static_cast<size_t>(order[static_cast<size_t>(i)])] = i;

    // bags numbered in reverse elimination order so parents precede children
    TreeDecomposition td;
    td.bags.resize(static_cast<size_t>(n));
    td.parent.assign(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i)
        td.bags[static_cast<size_t>(n - 1 - i)] = mask_to_vertices(bag_of_step[static_cast<size_t>(i)]);
    for (int i = 0; i + 1 < n; ++i) {
        uint64_t others = bag_of_step[static_cast<size_t>(i)] & ~bit(order[static_cast<size_t>(i)]);
        int j = i + 1;  // lonely bags chain to the next elimination step
        if (others) {
            j = n;
            for (int u : mask_to_vertices(others)) j = std::min(j, step_of[static_cast<size_t>(u)]);
        }
        td.parent[static_cast<size_t>(n - 1 - i)] = n - 1 - j;
    }
    return td;
}

}  // namespace

TreeWidthResult tree_width(const Graph& g, int max_order) {
    const int n = g.order();
    if (n > max_order)
        throw bound_error("tree_width: order " + std::to_string(n) + " exceeds bound " +
                          std::to_string(max_order));
    const size_t sz = size_t{1} << n;
    std::vector<int8_t> dp(sz, 0);
    std::vector<int8_t> choice(sz, -1);
    for (uint64_t s = 1; s < sz; ++s) {
        int best = INT_MAX;
        int best_v = -1;
        for (uint64_t m = s; m;) {
            int v = std::countr_zero(m);
            m &= m - 1;
            uint64_t rest = s & ~bit(v);
            int cand = std::max(static_cast<int>(dp[rest]), q_value(g, rest, v));
            if (cand < best) {
                best = cand;
                best_v = v;
            }
        }
        dp[s] = static_cast<int8_t>(best);
        choice[s] = static_cast<int8_t>(best_v);
    }

    std::vector<int> order(static_cast<size_t>(n));
    uint64_t s = full_mask(n);
    for (int i = n - 1; i >= 0; --i) {  // choice[s] is the last vertex eliminated within s
        int v = choice[s];
        order[static_cast<size_t>(i)] = v;
        s &= ~bit(v);
    }
    return {dp[full_mask(n)], decomposition_from_order(g, order)};
}

namespace {

int td_rec(const Graph& g, uint64_t mask, std::vector<int16_t>& depth, std::vector<int8_t>& root) {
    if (depth[mask]) return depth[mask];
    int d;
    int r = -1;
    if ((mask & (mask - 1)) == 0) {
        d = 1;
        r = std::countr_zero(mask);
    } else {
        uint64_t comp = component_of(g, std::countr_zero(mask), mask);
        if (comp != mask) {
            d = std::max(td_rec(g, comp, depth, root), td_rec(g, mask & ~comp, depth, root));
        } else {
            d = INT_MAX;
            for (uint64_t m = mask; m;) {  // ascending, so ties pick the lowest vertex
                int v = std::countr_zero(m);
                m &= m - 1;
                int cand = 1 + td_rec(g, mask & ~bit(v), depth, root);
                if (cand < d) {
                    d = cand;
                    r = v;
                }
            }
        }
    }
    depth[mask] = static_cast<int16_t>(d);
    root[mask] = static_cast<int8_t>(r);
    return d;
}

void td_forest(const Graph& g, uint64_t mask, int above, std::vector<int>& parent,
               const std::vector<int8_t>& root) {
    if (mask == 0) return;
    if ((mask & (mask - 1)) == 0) {
        parent[static_cast<size_t>(std::countr_zero(mask))] = above;
        return;
    }
    uint64_t comp = component_of(g, std::countr_zero(mask), mask);
    if (comp != mask) {
        td_forest(g, comp, above, parent, root);
        td_forest(g, mask & ~comp, above, parent, root);
        return;
    }
    int v = root[mask];
    parent[static_cast<size_t>(v)] = above;
    td_forest(g, mask & ~bit(v), v, parent, root);
}

}  // namespace

TreeDepthResult tree_depth(const Graph& g, int max_order) {
    const int n = g.order();
    if (n > max_order)
        throw bound_error("tree_depth: order " + std::to_string(n) + " exceeds bound " +
                          std::to_string(max_order));
    const size_t sz = size_t{1} << n;
    std::vector<int16_t> depth(sz, 0);
    std::vector<int8_t> root(sz, -1);
    int d = td_rec(g, full_mask(n), depth, root);
    EliminationForest forest;
    forest.parent.assign(static_cast<size_t>(n), -1);
    td_forest(g, full_mask(n), -1, forest.parent, root);
    return {d, forest};
}

LongestPathResult longest_path(const Graph& g, int max_order) {
    const int n = g.order();
    if (n > max_order)
        throw bound_error("longest_path: order " + std::to_string(n) + " exceeds bound " +
                          std::to_string(max_order));
    const size_t sz = size_t{1} << n;
    std::vector<uint64_t> ends(sz, 0);  // endpoints of simple paths covering each mask
    std::vector<int8_t> prev(sz * static_cast<size_t>(n), -2);
    for (int v = 0; v < n; ++v) {
        ends[bit(v)] = bit(v);
        prev[bit(v) * static_cast<size_t>(n) + static_cast<size_t>(v)] = -1;
    }
    int best_count = 1;
    uint64_t best_mask = 1;
    int best_end = 0;
    for (uint64_t mask = 1; mask < sz; ++mask) {
        if (!ends[mask]) continue;
        int count = std::popcount(mask);
        if (count > best_count) {
            best_count = count;
            best_mask = mask;
            best_end = std::countr_zero(ends[mask]);
        }
        for (uint64_t em = ends[mask]; em;) {
            int v = std::countr_zero(em);
            em &= em - 1;
            for (uint64_t xm = g.neighbours(v) & ~mask; xm;) {
                int w = std::countr_zero(xm);
                xm &= xm - 1;
                uint64_t nm = mask | bit(w);
                if (!(ends[nm] >> w & 1)) {
                    ends[nm] |= bit(w);
                    prev[nm * static_cast<size_t>(n) + static_cast<size_t>(w)] =
                        static_cast<int8_t>(v);
                }
            }
        }
    }
    std::vector<int> path;
    uint64_t mask = best_mask;
    int v = best_end;
    while (v != -1) {
        path.push_back(v);
        int p = prev[mask * static_cast<size_t>(n) + static_cast<size_t>(v)];
        mask &= ~bit(v);
        v = p;
    }
    std::reverse(path.begin(), path.end());
    return {best_count, path};
}

std::optional<std::vector<std::vector<int>>> minor_contains(const Graph& h, const Graph& g,
                                                            int max_order) {
    const int n = g.order();
    const int hn = h.order();
    if (n > max_order)
        throw bound_error("minor_contains: order " + std::to_string(n) + " exceeds bound " +
                          std::to_string(max_order));
    if (hn > n) return std::nullopt;

    std::vector<uint64_t> subs;  // connected non-empty vertex sets, ascending
    std::vector<uint64_t> nbhd;
    for (uint64_t mask = 1; mask < (uint64_t{1} << n); ++mask) {
        if (component_of(g, std::countr_zero(mask), mask) != mask) continue;
        uint64_t nb = 0;
        for (uint64_t m = mask; m;) {
            int u = std::countr_zero(m);
            m &= m - 1;
            nb |= g.neighbours(u);
        }
        subs.push_back(mask);
        nbhd.push_back(nb & ~mask);
    }

    // assign high-degree pattern vertices first
    std::vector<int> h_order(static_cast<size_t>(hn));
    for (int v = 0; v < hn; ++v) h_order[static_cast<size_t>(v)] = v;
    std::stable_sort(h_order.begin(), h_order.end(),
                     [&](int a, int b) { return h.degree(a) > h.degree(b); });

    std::vector<uint64_t> branch(static_cast<size_t>(hn), 0);
    std::function<bool(int, uint64_t)> assign = [&](int idx, uint64_t used) -> bool {
        if (idx == hn) return true;
        int hv = h_order[static_cast<size_t>(idx)];
        for (size_t si = 0; si < subs.size(); ++si) {
            uint64_t s = subs[si];
            if (s & used) continue;
            if (std::popcount(used | s) + (hn - idx - 1) > n) continue;
            bool ok = true;
            for (int j = 0; j < idx && ok; ++j) {
                int hu = h_order[static_cast<size_t>(j)];
                if (h.has_edge(hv, hu) && !(nbhd[si] & branch[static_cast<size_t>(hu)])) ok = false;
            }
            if (!ok) continue;
            branch[static_cast<size_t>(hv)] = s;
            if (assign(idx + 1, used | s)) return true;
            branch[static_cast<size_t>(hv)] = 0;
        }
        return false;
    };
    if (!assign(0, 0)) return std::nullopt;

    std::vector<std::vector<int>> out;
    out.reserve(static_cast<size_t>(hn));
    for (int v = 0; v < hn; ++v) out.push_back(mask_to_vertices(branch[static_cast<size_t>(v)]));
    return out;
}

std::vector<std::string> TrichotomyReport::labels() const {
    std::vector<std::string> out;
    if (high_treewidth) out.push_back("high_treewidth");
    if (long_path) out.push_back("long_path");
    if (btree_minor) out.push_back("btree_minor");
    return out;
}

TrichotomyReport trichotomy_check(const Graph& g, int ell, int max_order) {
    if (ell < 1 || ell > 30) throw std::invalid_argument("trichotomy_check: ell out of range");
    TrichotomyReport r;
    r.ell = ell;
    r.high_treewidth = tree_width(g, max_order).width >= ell;
    r.long_path = longest_path(g, max_order).length >= (1 << ell);
    if (family(GraphFamily::binary_tree, ell).order() <= g.order())
        r.btree_minor = minor_contains(family(GraphFamily::binary_tree, ell), g, max_order)
                            .has_value();
    return r;
}

}  // namespace hompres
