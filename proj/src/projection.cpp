#include <hompres/projection.hpp>

#include <algorithm>
#include <stdexcept>

#include <hompres/errors.hpp>

namespace hompres {

ProjEntry ProjEntry::constant(bool value) {
    ProjEntry e;
    e.kind = value ? Kind::one : Kind::zero;
    return e;
}

ProjEntry ProjEntry::var(int source) {
    if (source < 0) throw std::invalid_argument("ProjEntry: negative source index");
    ProjEntry e;
    e.kind = Kind::source;
    e.source = source;
    return e;
}

ProjEntry ProjEntry::and_of(std::vector<int> sources) {
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    if (sources.empty()) return constant(true);
    if (sources.size() == 1) return var(sources.front());
    for (int s : sources)
        if (s < 0) throw std::invalid_argument("ProjEntry: negative source index");
    ProjEntry e;
    e.kind = Kind::and_sources;
    e.sources = std::move(sources);
    return e;
}

namespace {

void check_entry_range(const MonotoneProjection& rho) {
    for (const auto& e : rho.entries) {
        if (e.kind == ProjEntry::Kind::source && e.source >= rho.source_count)
            throw std::invalid_argument("projection entry exceeds source count");
        if (e.kind == ProjEntry::Kind::and_sources)
            for (int s : e.sources)
                if (s >= rho.source_count)
                    throw std::invalid_argument("projection entry exceeds source count");
    }
}

}  // namespace

MonotoneProjection identity_projection(int count) {
    if (count < 0) throw std::invalid_argument("identity_projection: negative count");
    MonotoneProjection rho;
    rho.source_count = count;
    rho.entries.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) rho.entries.push_back(ProjEntry::var(i));
    return rho;
}

std::vector<bool> apply_projection(const MonotoneProjection& rho,
                                   const std::vector<bool>& source) {
    if (static_cast<int>(source.size()) != rho.source_count)
        throw std::invalid_argument("apply_projection: source size mismatch");
    check_entry_range(rho);
    std::vector<bool> out;
    out.reserve(rho.entries.size());
    for (const auto& e : rho.entries) {
        switch (e.kind) {
            case ProjEntry::Kind::zero:
                out.push_back(false);
                break;
            case ProjEntry::Kind::one:
                out.push_back(true);
                break;
            case ProjEntry::Kind::source:
                out.push_back(source[static_cast<size_t>(e.source)]);
                break;
            case ProjEntry::Kind::and_sources: {
                bool v = true;
                for (int s : e.sources) v = v && source[static_cast<size_t>(s)];
                out.push_back(v);
                break;
            }
        }
    }
    return out;
}

MonotoneProjection compose_projections(const MonotoneProjection& outer,
                                       const MonotoneProjection& inner) {
    if (outer.source_count != inner.target_count())
        throw std::invalid_argument("compose_projections: index sets do not align");
    auto resolve = [&](int k) -> const ProjEntry& { return inner.entries[static_cast<size_t>(k)]; };
    MonotoneProjection out;
    out.source_count = inner.source_count;
    out.entries.reserve(outer.entries.size());
    for (const auto& e : outer.entries) {
        switch (e.kind) {
            case ProjEntry::Kind::zero:
            case ProjEntry::Kind::one:
                out.entries.push_back(e);
                break;
            case ProjEntry::Kind::source:
                out.entries.push_back(resolve(e.source));
                break;
            case ProjEntry::Kind::and_sources: {
                bool zero = false;
                std::vector<int> sources;
                for (int k : e.sources) {
                    const ProjEntry& r = resolve(k);
                    if (r.kind == ProjEntry::Kind::zero) {
                        zero = true;
                        break;
                    }
                    if (r.kind == ProjEntry::Kind::one) continue;
                    if (r.kind == ProjEntry::Kind::source)
                        sources.push_back(r.source);
                    else
                        sources.insert(sources.end(), r.sources.begin(), r.sources.end());
                }
                out.entries.push_back(zero ? ProjEntry::constant(false)
                                           : ProjEntry::and_of(std::move(sources)));
                break;
            }
        }
    }
    return out;
}

ReductionCheck verify_reduction(const std::vector<bool>& f, const std::vector<bool>& g,
                                const MonotoneProjection& rho, int max_bits) {
    const int src = rho.source_count;
    if (src > max_bits)
        throw bound_error("verify_reduction: " + std::to_string(src) +
                          " source bits exceed bound " + std::to_string(max_bits));
    if (f.size() != (size_t{1} << src))
        throw std::invalid_argument("verify_reduction: f table size mismatch");
    if (rho.target_count() > 30)
        throw bound_error("verify_reduction: target table too large");
    if (g.size() != (size_t{1} << rho.target_count()))
        throw std::invalid_argument("verify_reduction: g table size mismatch");
    check_entry_range(rho);
    std::vector<bool> x(static_cast<size_t>(src));
    for (uint64_t idx = 0; idx < (uint64_t{1} << src); ++idx) {
        for (int i = 0; i < src; ++i) x[static_cast<size_t>(i)] = (idx >> i) & 1;
        auto y = apply_projection(rho, x);
        uint64_t yidx = 0;
        for (size_t j = 0; j < y.size(); ++j)
            if (y[j]) yidx |= uint64_t{1} << j;
        if (f[idx] != g[yidx]) return {false, idx};
    }
    return {true, std::nullopt};
}

Circuit restrict_circuit(const Circuit& g, const MonotoneProjection& rho) {
    if (g.input_count() != rho.target_count())
        throw std::invalid_argument("restrict_circuit: circuit inputs do not match projection");
    if (g.output() < 0) throw std::invalid_argument("restrict_circuit: output not set");
    check_entry_range(rho);
    Circuit out(rho.source_count);
    const auto& nodes = g.nodes();
    std::vector<int> mapped(nodes.size(), -1);
    for (size_t i = 0; i < nodes.size(); ++i) {  // children precede parents
        const auto& node = nodes[i];
        switch (node.kind) {
            case NodeKind::const0:
                mapped[i] = out.constant(false);
                break;
            case NodeKind::const1:
                mapped[i] = out.constant(true);
                break;
            case NodeKind::literal: {
                const ProjEntry& e = rho.entries[static_cast<size_t>(node.var)];
                switch (e.kind) {
                    case ProjEntry::Kind::zero:
                        mapped[i] = out.constant(node.negated);
                        break;
                    case ProjEntry::Kind::one:
                        mapped[i] = out.constant(!node.negated);
                        break;
                    case ProjEntry::Kind::source:
                        mapped[i] = out.literal(e.source, node.negated);
                        break;
                    case ProjEntry::Kind::and_sources: {
                        std::vector<int> lits;
                        lits.reserve(e.sources.size());
                        for (int s : e.sources) lits.push_back(out.literal(s, node.negated));
                        // ~(a & b) = ~a | ~b keeps negations on the inputs
                        mapped[i] = out.gate(node.negated ? NodeKind::or_gate : NodeKind::and_gate,
                                             std::move(lits));
                        break;
                    }
                }
                break;
            }
            case NodeKind::and_gate:
            case NodeKind::or_gate: {
                std::vector<int> children;
                children.reserve(node.children.size());
                for (int ch : node.children) children.push_back(mapped[static_cast<size_t>(ch)]);
                mapped[i] = out.gate(node.kind, std::move(children));
                break;
            }
        }
    }
    out.set_output(mapped[static_cast<size_t>(g.output())]);
    return out;
}

std::string serialize_projection(const MonotoneProjection& rho) {
    std::string out;
    for (const auto& e : rho.entries) {
        switch (e.kind) {
            case ProjEntry::Kind::zero:
                out += "0\n";
                break;
            case ProjEntry::Kind::one:
                out += "1\n";
                break;
            case ProjEntry::Kind::source:
                out += "x" + std::to_string(e.source) + "\n";
                break;
            case ProjEntry::Kind::and_sources: {
                out += "and";
                for (int s : e.sources) out += " x" + std::to_string(s);
                out += "\n";
                break;
            }
        }
    }
    return out;
}

}  // namespace hompres
