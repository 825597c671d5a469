#include <hompres/subiso.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <hompres/errors.hpp>
#include <hompres/pp.hpp>

namespace hompres {

BlowUp::BlowUp(Graph base_graph, int copies) : base(std::move(base_graph)), n(copies) {
    if (n < 1) throw std::invalid_argument("BlowUp: need at least one copy");
}

int BlowUp::edge_rank(int v, int w) const {
    if (v > w) std::swap(v, w);
    const auto& es = base.edges();
    auto it = std::lower_bound(es.begin(), es.end(), std::make_pair(v, w));
    if (it == es.end() || *it != std::make_pair(v, w))
        throw std::invalid_argument("BlowUp: no such base edge");
    return static_cast<int>(it - es.begin());
}

int BlowUp::var_index(int v, int a, int w, int b) const {
    if (a < 0 || a >= n || b < 0 || b >= n)
        throw std::invalid_argument("BlowUp: fibre value out of range");
    if (v > w) {
        std::swap(v, w);
        std::swap(a, b);
    }
    return edge_rank(v, w) * n * n + a * n + b;
}

std::vector<int> pattern_copy(const BlowUp& bu, const Alpha& alpha) {
    if (static_cast<int>(alpha.size()) != bu.base.order())
        throw std::invalid_argument("pattern_copy: alpha size mismatch");
    for (int a : alpha)
        if (a < 0 || a >= bu.n) throw std::invalid_argument("pattern_copy: alpha value out of range");
    std::vector<int> vars;
    vars.reserve(bu.base.edges().size());
    for (auto [v, w] : bu.base.edges())
        vars.push_back(bu.var_index(v, alpha[static_cast<size_t>(v)], w,
                                    alpha[static_cast<size_t>(w)]));
    return vars;
}

SubResult sub_bruteforce(const SubInstance& x, long long max_assignments) {
    const int nv = x.blowup.base.order();
    const int n = x.blowup.n;
    if (static_cast<int>(x.present.size()) != x.blowup.variable_count())
        throw std::invalid_argument("sub_bruteforce: instance size mismatch");
    if (std::pow(static_cast<double>(n), nv) > static_cast<double>(max_assignments))
        throw bound_error("sub_bruteforce: assignment space exceeds bound");
    Alpha alpha(static_cast<size_t>(nv), 0);
    while (true) {
        bool all = true;
        for (auto [v, w] : x.blowup.base.edges()) {
            int var = x.blowup.var_index(v, alpha[static_cast<size_t>(v)], w,
                                         alpha[static_cast<size_t>(w)]);
            if (!x.present[static_cast<size_t>(var)]) {
                all = false;
                break;
            }
        }
        if (all) return {true, alpha};
        int pos = nv - 1;  // advance the odometer, last coordinate fastest
        while (pos >= 0 && alpha[static_cast<size_t>(pos)] == n - 1) {
            alpha[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) return {false, std::nullopt};
        ++alpha[static_cast<size_t>(pos)];
    }
}

namespace {

long long int_pow(int base, int exp) {
    long long out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace

bool sub_dp_treewidth(const SubInstance& x, const TreeDecomposition& td, long long max_states) {
    const Graph& g = x.blowup.base;
    const int n = x.blowup.n;
    if (static_cast<int>(x.present.size()) != x.blowup.variable_count())
        throw std::invalid_argument("sub_dp_treewidth: instance size mismatch");
    if (!td.valid_for(g)) throw std::invalid_argument("sub_dp_treewidth: invalid decomposition");

    const int bags = static_cast<int>(td.bags.size());
    std::vector<std::vector<int>> children(static_cast<size_t>(bags));
    for (int i = 1; i < bags; ++i)
        children[static_cast<size_t>(td.parent[static_cast<size_t>(i)])].push_back(i);

    // each edge is checked at the first bag containing both ends
    std::vector<std::vector<std::pair<int, int>>> edges_at(static_cast<size_t>(bags));
    for (auto [u, v] : g.edges()) {
        for (int t = 0; t < bags; ++t) {
            const auto& bag = td.bags[static_cast<size_t>(t)];
            if (std::binary_search(bag.begin(), bag.end(), u) &&
                std::binary_search(bag.begin(), bag.end(), v)) {
                edges_at[static_cast<size_t>(t)].emplace_back(u, v);
                break;
            }
        }
    }

    // feasible[code] for the bag's assignments, code mixed-radix over bag order
    std::function<std::vector<char>(int)> solve = [&](int t) -> std::vector<char> {
        const auto& bag = td.bags[static_cast<size_t>(t)];
        const int k = static_cast<int>(bag.size());
        long long states = int_pow(n, k);
        if (states > max_states) throw bound_error("sub_dp_treewidth: state space exceeds bound");
        std::vector<char> ok(static_cast<size_t>(states), 1);

        std::vector<int> assign(static_cast<size_t>(k));
        auto decode = [&](long long code) {
            for (int i = k - 1; i >= 0; --i) {
                assign[static_cast<size_t>(i)] = static_cast<int>(code % n);
                code /= n;
            }
        };
        auto pos_of = [&](int v) {
            return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
        };

        for (auto [u, v] : edges_at[static_cast<size_t>(t)]) {
            int pu = pos_of(u);
            int pv = pos_of(v);
            for (long long code = 0; code < states; ++code) {
                if (!ok[static_cast<size_t>(code)]) continue;
                decode(code);
                int var = x.blowup.var_index(u, assign[static_cast<size_t>(pu)], v,
                                             assign[static_cast<size_t>(pv)]);
                if (!x.present[static_cast<size_t>(var)]) ok[static_cast<size_t>(code)] = 0;
            }
        }

        for (int c : children[static_cast<size_t>(t)]) {
            auto sub = solve(c);
            const auto& cbag = td.bags[static_cast<size_t>(c)];
            std::vector<int> shared;  // vertices in both bags, ascending
            std::set_intersection(bag.begin(), bag.end(), cbag.begin(), cbag.end(),
                                  std::back_inserter(shared));
            long long shared_states = int_pow(n, static_cast<int>(shared.size()));
            std::vector<char> extendable(static_cast<size_t>(shared_states), 0);

            std::vector<int> cpos;
            for (int v : shared)
                cpos.push_back(static_cast<int>(
                    std::lower_bound(cbag.begin(), cbag.end(), v) - cbag.begin()));
            std::vector<int> cassign(cbag.size());
            for (long long code = 0; code < static_cast<long long>(sub.size()); ++code) {
                if (!sub[static_cast<size_t>(code)]) continue;
                long long rest = code;
                for (int i = static_cast<int>(cbag.size()) - 1; i >= 0; --i) {
                    cassign[static_cast<size_t>(i)] = static_cast<int>(rest % n);
                    rest /= n;
                }
                long long scode = 0;
                for (int p : cpos) scode = scode * n + cassign[static_cast<size_t>(p)];
                extendable[static_cast<size_t>(scode)] = 1;
            }

            std::vector<int> tpos;
            for (int v : shared) tpos.push_back(pos_of(v));
            for (long long code = 0; code < states; ++code) {
                if (!ok[static_cast<size_t>(code)]) continue;
                decode(code);
                long long scode = 0;
                for (int p : tpos) scode = scode * n + assign[static_cast<size_t>(p)];
                if (!extendable[static_cast<size_t>(scode)]) ok[static_cast<size_t>(code)] = 0;
            }
        }
        return ok;
    };

    auto root = solve(0);
    return std::find(root.begin(), root.end(), 1) != root.end();
}

Circuit sub_formula_treedepth(const Graph& g, const EliminationForest& f, int n) {
    if (!f.valid_for(g)) throw std::invalid_argument("sub_formula_treedepth: invalid forest");
    BlowUp bu(g, n);
    Circuit c(bu.variable_count(), /*share=*/false);

    std::vector<std::vector<int>> children(static_cast<size_t>(g.order()));
    std::vector<int> roots;
    for (int v = 0; v < g.order(); ++v) {
        int p = f.parent[static_cast<size_t>(v)];
        if (p == -1)
            roots.push_back(v);
        else
            children[static_cast<size_t>(p)].push_back(v);
    }

    std::vector<int> fibre(static_cast<size_t>(g.order()), -1);
    std::function<int(int)> build = [&](int v) -> int {
        auto anc = f.ancestors(v);
        std::sort(anc.begin(), anc.end());
        std::vector<int> options;
        options.reserve(static_cast<size_t>(n));
        for (int a = 0; a < n; ++a) {
            fibre[static_cast<size_t>(v)] = a;
            std::vector<int> parts;
            for (int u : anc)
                if (g.has_edge(u, v))
                    parts.push_back(
                        c.literal(bu.var_index(u, fibre[static_cast<size_t>(u)], v, a)));
            for (int ch : children[static_cast<size_t>(v)]) parts.push_back(build(ch));
            options.push_back(c.gate(NodeKind::and_gate, std::move(parts)));
        }
        fibre[static_cast<size_t>(v)] = -1;
        return c.gate(NodeKind::or_gate, std::move(options));
    };

    std::vector<int> tops;
    for (int r : roots) tops.push_back(build(r));
    c.set_output(c.gate(NodeKind::and_gate, std::move(tops)));
    return c;
}

MinorOp MinorOp::del_edge(int u, int v) { return {Kind::delete_edge, std::min(u, v), std::max(u, v)}; }
MinorOp MinorOp::contract(int u, int v) { return {Kind::contract_edge, std::min(u, v), std::max(u, v)}; }
MinorOp MinorOp::del_vertex(int u) { return {Kind::delete_vertex, u, -1}; }

Graph apply_minor_op(const Graph& g, const MinorOp& op) {
    switch (op.kind) {
        case MinorOp::Kind::delete_edge:
            return with_edge_deleted(g, op.u, op.v);
        case MinorOp::Kind::contract_edge:
            return with_edge_contracted(g, op.u, op.v);
        case MinorOp::Kind::delete_vertex:
            return with_vertex_deleted(g, op.u);
    }
    throw std::logic_error("apply_minor_op: unknown operation");
}

MonotoneProjection minor_reduction(const Graph& g, const MinorOp& op, int n) {
    if (op.kind == MinorOp::Kind::delete_vertex)
        throw std::invalid_argument("minor_reduction: expected an edge operation");
    if (!g.has_edge(op.u, op.v)) throw std::invalid_argument("minor_reduction: edge not in graph");
    const int lo = std::min(op.u, op.v);
    const int hi = std::max(op.u, op.v);
    Graph h = apply_minor_op(g, op);
    BlowUp bg(g, n);
    BlowUp bh(h, n);

    MonotoneProjection rho;
    rho.source_count = bh.variable_count();
    rho.entries.reserve(static_cast<size_t>(bg.variable_count()));
    const bool deleting = op.kind == MinorOp::Kind::delete_edge;
    auto relabel = [&](int x) {  // contraction: merge hi into lo, close the gap
        if (x == hi) x = lo;
        return x > hi ? x - 1 : x;
    };
    for (auto [p, q] : g.edges()) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (p == lo && q == hi) {
                    rho.entries.push_back(deleting ? ProjEntry::constant(true)
                                                   : ProjEntry::constant(a == b));
                } else if (deleting) {
                    rho.entries.push_back(ProjEntry::var(bh.var_index(p, a, q, b)));
                } else {
                    rho.entries.push_back(
                        ProjEntry::var(bh.var_index(relabel(p), a, relabel(q), b)));
                }
            }
    }
    return rho;
}

namespace {

// pure reindexing step for dropping an isolated vertex
MonotoneProjection drop_isolated(const Graph& g, int v, int n) {
    if (g.degree(v) != 0) throw std::logic_error("drop_isolated: vertex still has edges");
    Graph h = with_vertex_deleted(g, v);
    BlowUp bg(g, n);
    BlowUp bh(h, n);
    MonotoneProjection rho;
    rho.source_count = bh.variable_count();
    auto relabel = [v](int x) { return x > v ? x - 1 : x; };
    for (auto [p, q] : g.edges())
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                rho.entries.push_back(ProjEntry::var(bh.var_index(relabel(p), a, relabel(q), b)));
    return rho;
}

}  // namespace

MonotoneProjection minor_reduction_chain(const Graph& h, const Graph& g,
                                         const std::vector<MinorOp>& ops, int n) {
    Graph cur = g;
    MonotoneProjection total = identity_projection(BlowUp(g, n).variable_count());
    for (const auto& op : ops) {
        if (op.kind == MinorOp::Kind::delete_vertex) {
            std::vector<int> nbrs;
            for (int w = 0; w < cur.order(); ++w)
                if (cur.has_edge(op.u, w)) nbrs.push_back(w);
            for (int w : nbrs) {
                total = compose_projections(total,
                                            minor_reduction(cur, MinorOp::del_edge(op.u, w), n));
                cur = with_edge_deleted(cur, op.u, w);
            }
            total = compose_projections(total, drop_isolated(cur, op.u, n));
            cur = with_vertex_deleted(cur, op.u);
        } else {
            total = compose_projections(total, minor_reduction(cur, op, n));
            cur = apply_minor_op(cur, op);
        }
    }
    if (!(cur == h))
        throw std::invalid_argument("minor_reduction_chain: operations do not produce the target");
    return total;
}

PathReduction path_reduction(const Graph& g, int n, int max_order) {
    auto td = tree_depth(g, max_order);
    auto lp = longest_path(g, max_order);
    const int k = td.depth;  // td(g) <= lp(g), so the witness is long enough
    std::vector<int> path(lp.path.begin(), lp.path.begin() + k);

    std::set<std::pair<int, int>> keep;
    for (int i = 0; i + 1 < k; ++i)
        keep.insert({std::min(path[static_cast<size_t>(i)], path[static_cast<size_t>(i + 1)]),
                     std::max(path[static_cast<size_t>(i)], path[static_cast<size_t>(i + 1)])});

    PathReduction out;
    out.k = k;
    for (auto [u, v] : g.edges())
        if (!keep.count({u, v})) out.ops.push_back(MinorOp::del_edge(u, v));
    std::vector<int> dropped;
    for (int v = 0; v < g.order(); ++v)
        if (std::find(path.begin(), path.end(), v) == path.end()) dropped.push_back(v);
    for (auto it = dropped.rbegin(); it != dropped.rend(); ++it)
        out.ops.push_back(MinorOp::del_vertex(*it));

    Graph sub = g;  // replay to get the kept path with rank labels
    for (const auto& op : out.ops) sub = apply_minor_op(sub, op);
    MonotoneProjection chain = minor_reduction_chain(sub, g, out.ops, n);

    // relabel the surviving path onto the canonical P_k
    std::vector<int> sorted_path = path;
    std::sort(sorted_path.begin(), sorted_path.end());
    std::vector<int> sigma(static_cast<size_t>(k));  // sub label -> position on the path
    for (int j = 0; j < k; ++j) {
        auto at = std::find(path.begin(), path.end(), sorted_path[static_cast<size_t>(j)]);
        sigma[static_cast<size_t>(j)] = static_cast<int>(at - path.begin());
    }
    Graph pk = family(GraphFamily::path, k);
    BlowUp bsub(sub, n);
    BlowUp bpk(pk, n);
    MonotoneProjection relabel;
    relabel.source_count = bpk.variable_count();
    for (auto [p, q] : sub.edges())
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                relabel.entries.push_back(ProjEntry::var(
                    bpk.var_index(sigma[static_cast<size_t>(p)], a, sigma[static_cast<size_t>(q)], b)));
    out.rho = compose_projections(chain, relabel);
    return out;
}

MonotoneProjection hpt_reduction(const Structure& m, int n) {
    if (n < 1) throw std::invalid_argument("hpt_reduction: need n >= 1");
    Graph g = gaifman(m);
    BlowUp bu(g, n);
    const Signature& sig = m.signature();
    const int mn = m.size() * n;

    MonotoneProjection rho;
    rho.source_count = bu.variable_count();
    rho.entries.reserve(static_cast<size_t>(sig.encoding_bits(mn)));
    for (size_t rel = 0; rel < sig.relation_count(); ++rel) {
        const int arity = sig.relation(rel).arity;
        std::vector<int> elem(static_cast<size_t>(arity), 0);  // tuple over [m*n], lex order
        while (true) {
            Tuple base(static_cast<size_t>(arity));
            std::vector<int> fib(static_cast<size_t>(arity));
            for (int i = 0; i < arity; ++i) {
                base[static_cast<size_t>(i)] = elem[static_cast<size_t>(i)] / n;
                fib[static_cast<size_t>(i)] = elem[static_cast<size_t>(i)] % n;
            }
            if (m.has_tuple(rel, base)) {
                std::vector<int> sources;
                for (int i = 0; i < arity; ++i)
                    for (int j = i + 1; j < arity; ++j)
                        if (base[static_cast<size_t>(i)] != base[static_cast<size_t>(j)])
                            sources.push_back(bu.var_index(
                                base[static_cast<size_t>(i)], fib[static_cast<size_t>(i)],
                                base[static_cast<size_t>(j)], fib[static_cast<size_t>(j)]));
                rho.entries.push_back(ProjEntry::and_of(std::move(sources)));
            } else {
                rho.entries.push_back(ProjEntry::constant(false));
            }
            int pos = arity - 1;
            while (pos >= 0 && elem[static_cast<size_t>(pos)] == mn - 1) {
                elem[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++elem[static_cast<size_t>(pos)];
        }
    }
    return rho;
}

HptCheck verify_hpt_reduction(const Formula& phi, const Structure& m, int n, int max_bits) {
    const Signature& sig = m.signature();
    const Signature used = infer_signature(phi);
    for (const auto& rel : used.relations()) {
        auto idx = sig.index_of(rel.name);
        if (!idx || sig.relation(*idx).arity != rel.arity)
            throw std::invalid_argument("verify_hpt_reduction: formula does not match signature");
    }
    Graph g = gaifman(m);
    BlowUp bu(g, n);
    const int vars = bu.variable_count();
    if (vars > 20)
        throw bound_error("verify_hpt_reduction: " + std::to_string(vars) +
                          " instance variables exceed bound 20");
    const int mn = m.size() * n;

    HptCheck out;
    // preservation precondition, as far as the bit budget allows; the
    // model/non-model pair sweep touches two encodings per pair, so its
    // exponent is twice the per-structure width
    int checked_to = 0;
    for (int s = 1; s <= mn; ++s) {
        if (2 * sig.encoding_bits(s) > static_cast<uint64_t>(max_bits)) break;
        checked_to = s;
    }
    out.preservation_checked_to = checked_to;
    if (checked_to > 0) {
        auto pres = is_hom_preserved(phi, sig, checked_to, max_bits);
        out.preservation_holds = pres.preserved;
        out.preservation_counterexample = pres.counterexample;
    }

    auto rho = hpt_reduction(m, n);
    std::vector<bool> bits(static_cast<size_t>(vars));
    for (uint64_t x = 0; x < (uint64_t{1} << vars); ++x) {
        for (int i = 0; i < vars; ++i) bits[static_cast<size_t>(i)] = (x >> i) & 1;
        bool sub = sub_bruteforce(SubInstance{bu, bits}).found;
        BitEncoding enc{sig, mn, apply_projection(rho, bits)};
        bool model = evaluate(phi, decode(enc));
        if (sub != model) {
            out.ok = false;
            out.counterexample = x;
            return out;
        }
    }
    out.ok = true;
    return out;
}

HptPipelineReport hpt_pipeline(const Formula& phi, const Signature& sig, int size_bound,
                               int n_verify, int max_bits) {
    HptPipelineReport rep;
    rep.preservation = is_hom_preserved(phi, sig, size_bound, max_bits);
    rep.preserved = rep.preservation.preserved;
    if (!rep.preserved) return rep;

    std::vector<Structure> models;
    for (int s = 1; s <= size_bound; ++s)
        for (const auto& a : enumerate_structures(sig, s, max_bits))
            if (evaluate(phi, a)) models.push_back(a);

    if (!models.empty()) {
        rep.mincores = min_cores(GeneratedClass{models});
        for (const auto& m : rep.mincores)
            rep.core_tree_depths.push_back(tree_depth(gaifman(m)).depth);
        rep.psi = ep_sentence_of_class(rep.mincores);
        rep.psi_quantifier_rank = quantifier_rank(*rep.psi);
    }

    rep.equivalent = true;
    for (int s = 1; s <= n_verify && rep.equivalent; ++s)
        for (const auto& a : enumerate_structures(sig, s, max_bits)) {
            bool lhs = evaluate(phi, a);
            bool rhs = rep.psi ? evaluate(*rep.psi, a) : false;
            if (lhs != rhs) {
                rep.equivalent = false;
                rep.mismatch = a;
                break;
            }
        }
    return rep;
}

SubInstance parse_sub_instance(const Graph& base, int n, const std::string& text) {
    BlowUp bu(base, n);
    std::vector<bool> bits;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            if (tok == "0")
                bits.push_back(false);
            else if (tok == "1")
                bits.push_back(true);
            else
                throw parse_error("expected 0 or 1, got '" + tok + "'", lineno);
        }
    }
    if (static_cast<int>(bits.size()) != bu.variable_count())
        throw parse_error("expected " + std::to_string(bu.variable_count()) + " bits, got " +
                              std::to_string(bits.size()),
                          lineno);
    return {bu, std::move(bits)};
}

std::string serialize_sub_instance(const SubInstance& x) {
    std::string out;
    for (bool b : x.present) out += b ? "1\n" : "0\n";
    return out;
}

}  // namespace hompres
