#include <hompres/circuit.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hompres {

Circuit::Circuit(int input_count, bool share) : input_count_(input_count), share_(share) {
    if (input_count < 0) throw std::invalid_argument("Circuit: negative input count");
}

void Circuit::set_output(int node) {
    if (node < 0 || node >= static_cast<int>(nodes_.size()))
        throw std::invalid_argument("Circuit: output node out of range");
    output_ = node;
}

int Circuit::add_node(CircuitNode node) {
    if (share_) {
        auto key = std::make_tuple(static_cast<int>(node.kind), node.var, node.negated,
                                   node.children);
        auto it = pool_.find(key);
        if (it != pool_.end()) return it->second;
        int id = static_cast<int>(nodes_.size());
        pool_.emplace(std::move(key), id);
        nodes_.push_back(std::move(node));
        return id;
    }
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
}

int Circuit::constant(bool value) {
    CircuitNode node;
    node.kind = value ? NodeKind::const1 : NodeKind::const0;
    return add_node(std::move(node));
}

int Circuit::literal(int var, bool negated) {
    if (var < 0 || var >= input_count_) throw std::invalid_argument("Circuit: literal out of range");
    CircuitNode node;
    node.kind = NodeKind::literal;
    node.var = var;
    node.negated = negated;
    return add_node(std::move(node));
}

int Circuit::gate(NodeKind kind, std::vector<int> children) {
    if (kind != NodeKind::and_gate && kind != NodeKind::or_gate)
        throw std::invalid_argument("Circuit: gate kind must be AND or OR");
    const bool is_and = kind == NodeKind::and_gate;
    std::vector<int> kept;
    for (int c : children) {
        if (c < 0 || c >= static_cast<int>(nodes_.size()))
            throw std::invalid_argument("Circuit: gate child out of range");
        NodeKind ck = nodes_[static_cast<size_t>(c)].kind;
        if (ck == NodeKind::const0) {
            if (is_and) return constant(false);  // absorbing
            continue;                            // neutral for OR
        }
        if (ck == NodeKind::const1) {
            if (!is_and) return constant(true);
            continue;
        }
        kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.empty()) return constant(is_and);
    if (kept.size() == 1) return kept.front();
    CircuitNode node;
    node.kind = kind;
    node.children = std::move(kept);
    return add_node(std::move(node));
}

bool eval_circuit(const Circuit& c, const std::vector<bool>& input) {
    if (static_cast<int>(input.size()) != c.input_count())
        throw std::invalid_argument("eval_circuit: input size mismatch");
    if (c.output() < 0) throw std::invalid_argument("eval_circuit: output not set");
    const auto& nodes = c.nodes();
    std::vector<char> value(nodes.size(), 0);
    for (size_t i = 0; i < nodes.size(); ++i) {  // children precede parents
        const auto& node = nodes[i];
        switch (node.kind) {
            case NodeKind::const0:
                value[i] = 0;
                break;
            case NodeKind::const1:
                value[i] = 1;
                break;
            case NodeKind::literal:
                value[i] = static_cast<char>(input[static_cast<size_t>(node.var)] ^ node.negated);
                break;
            case NodeKind::and_gate: {
                char v = 1;
                for (int ch : node.children) v = static_cast<char>(v & value[static_cast<size_t>(ch)]);
                value[i] = v;
                break;
            }
            case NodeKind::or_gate: {
                char v = 0;
                for (int ch : node.children) v = static_cast<char>(v | value[static_cast<size_t>(ch)]);
                value[i] = v;
                break;
            }
        }
    }
    return value[static_cast<size_t>(c.output())] != 0;
}

namespace {

void collect_reachable(const Circuit& c, std::vector<bool>& seen) {
    std::vector<int> stack{c.output()};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        if (seen[static_cast<size_t>(id)]) continue;
        seen[static_cast<size_t>(id)] = true;
        for (int ch : c.nodes()[static_cast<size_t>(id)].children) stack.push_back(ch);
    }
}

}  // namespace

Measures measure(const Circuit& c) {
    if (c.output() < 0) throw std::invalid_argument("measure: output not set");
    const auto& nodes = c.nodes();
    std::vector<bool> seen(nodes.size(), false);
    collect_reachable(c, seen);

    Measures m;
    std::vector<int> depth(nodes.size(), 0);
    std::vector<long long> leaves(nodes.size(), 0);
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (!seen[i]) continue;
        const auto& node = nodes[i];
        if (node.kind == NodeKind::and_gate || node.kind == NodeKind::or_gate) {
            ++m.size;
            m.max_fanin = std::max(m.max_fanin, static_cast<int>(node.children.size()));
            int d = 0;
            long long l = 0;
            for (int ch : node.children) {
                d = std::max(d, depth[static_cast<size_t>(ch)]);
                l += leaves[static_cast<size_t>(ch)];
            }
            depth[i] = d + 1;
            leaves[i] = l;
        } else if (node.kind == NodeKind::literal) {
            leaves[i] = 1;
        }
    }
    m.depth = depth[static_cast<size_t>(c.output())];
    m.formula_size = leaves[static_cast<size_t>(c.output())];
    return m;
}

Circuit circuit_to_formula(const Circuit& c) {
    if (c.output() < 0) throw std::invalid_argument("circuit_to_formula: output not set");
    Circuit out(c.input_count(), /*share=*/false);
    std::function<int(int)> unfold = [&](int id) -> int {
        const auto& node = c.nodes()[static_cast<size_t>(id)];
        switch (node.kind) {
            case NodeKind::const0:
                return out.constant(false);
            case NodeKind::const1:
                return out.constant(true);
            case NodeKind::literal:
                return out.literal(node.var, node.negated);
            default: {
                std::vector<int> children;
                children.reserve(node.children.size());
                for (int ch : node.children) children.push_back(unfold(ch));
                return out.gate(node.kind, std::move(children));
            }
        }
    };
    out.set_output(unfold(c.output()));
    return out;
}

std::string to_netlist(const Circuit& c) {
    if (c.output() < 0) throw std::invalid_argument("to_netlist: output not set");
    const auto& nodes = c.nodes();
    std::vector<bool> seen(nodes.size(), false);
    collect_reachable(c, seen);

    std::string out;
    for (int i = 0; i < c.input_count(); ++i) out += "input " + std::to_string(i) + "\n";
    std::vector<int> renumber(nodes.size(), -1);
    int next = 0;
    for (size_t i = 0; i < nodes.size(); ++i) {  // ascending ids are topological
        if (!seen[i]) continue;
        renumber[i] = next++;
        const auto& node = nodes[i];
        switch (node.kind) {
            case NodeKind::const0:
            case NodeKind::const1:
                out += "const " + std::to_string(renumber[i]) + ' ' +
                       (node.kind == NodeKind::const1 ? "1" : "0") + "\n";
                break;
            case NodeKind::literal:
                out += "lit " + std::to_string(renumber[i]) + ' ' + std::to_string(node.var) +
                       (node.negated ? " neg" : "") + "\n";
                break;
            case NodeKind::and_gate:
            case NodeKind::or_gate: {
                out += "gate " + std::to_string(renumber[i]) +
                       (node.kind == NodeKind::and_gate ? " AND" : " OR");
                for (int ch : node.children)
                    out += ' ' + std::to_string(renumber[static_cast<size_t>(ch)]);
                out += "\n";
                break;
            }
        }
    }
    out += "output " + std::to_string(renumber[static_cast<size_t>(c.output())]) + "\n";
    return out;
}

}  // namespace hompres
