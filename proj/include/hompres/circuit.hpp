#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace hompres {

enum class NodeKind { const0, const1, literal, and_gate, or_gate };

struct CircuitNode {
    NodeKind kind;
    int var = -1;          // literal input index
    bool negated = false;  // negations appear only on literals
    std::vector<int> children;
};

// DAG of unbounded fan-in AND/OR gates over input literals. The builder
// hash-conses (unless sharing is disabled for tree-shaped output), folds
// constants, deduplicates children, and elides single-child gates, so
// children always precede parents and gates have at least two children.
class Circuit {
public:
    explicit Circuit(int input_count, bool share = true);

    int input_count() const { return input_count_; }
    const std::vector<CircuitNode>& nodes() const { return nodes_; }
    int output() const { return output_; }
    void set_output(int node);

    int constant(bool value);
    int literal(int var, bool negated = false);
    int gate(NodeKind kind, std::vector<int> children);

private:
    int add_node(CircuitNode node);

    int input_count_;
    bool share_;
    int output_ = -1;
    std::vector<CircuitNode> nodes_;
    // consing key: kind, var, negated, children
    std::map<std::tuple<int, int, bool, std::vector<int>>, int> pool_;
};

bool eval_circuit(const Circuit& c, const std::vector<bool>& input);

struct Measures {
    int size = 0;        // gates only; literals and constants are free
    int depth = 0;       // max gates on an input-to-output path
    int max_fanin = 0;
    long long formula_size = 0;  // leaf count after unfolding the DAG
};

Measures measure(const Circuit& c);

// unfolds all sharing below the output into a tree-shaped circuit
Circuit circuit_to_formula(const Circuit& c);

// line-oriented export of the nodes reachable from the output, renumbered
// in topological order: `input <idx>`, `lit <id> <var> [neg]`,
// `gate <id> AND|OR <child>...`, `const <id> 0|1`, `output <id>`
std::string to_netlist(const Circuit& c);

}  // namespace hompres
