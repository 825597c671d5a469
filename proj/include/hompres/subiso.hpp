#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <hompres/circuit.hpp>
#include <hompres/cores.hpp>
#include <hompres/formula.hpp>
#include <hompres/graph.hpp>
#include <hompres/graphparams.hpp>
#include <hompres/projection.hpp>
#include <hompres/structure.hpp>

namespace hompres {

// n-fold fibring of a base pattern graph: base vertex v carries copies
// (v,0..n-1), and each base edge {v,w} with v < w contributes n^2 edge
// variables, indexed edge-major: rank{v,w} * n^2 + a*n + b where a sits on
// the smaller endpoint. This fixes the canonical variable order used by
// instance files, projections and formulas.
struct BlowUp {
    Graph base;
    int n;

    BlowUp(Graph base_graph, int copies);
    int variable_count() const { return base.edge_count() * n * n; }
    int edge_rank(int v, int w) const;                // position in base.edges()
    int var_index(int v, int a, int w, int b) const;  // order of (v,a),(w,b) is free
};

struct SubInstance {
    BlowUp blowup;
    std::vector<bool> present;  // one bit per blow-up variable
};

// fibre choice per base vertex, values in [0, n)
using Alpha = std::vector<int>;

// variables of the alpha-copy of the pattern, ascending; one per base edge
std::vector<int> pattern_copy(const BlowUp& bu, const Alpha& alpha);

struct SubResult {
    bool found = false;
    std::optional<Alpha> witness;  // lexicographically least
};

// try every alpha in [n]^V, lexicographically
SubResult sub_bruteforce(const SubInstance& x, long long max_assignments = 1LL << 24);

// bag-assignment dynamic programming over the decomposition; agrees with
// sub_bruteforce everywhere
bool sub_dp_treewidth(const SubInstance& x, const TreeDecomposition& td,
                      long long max_states = 1LL << 24);

// tree-shaped circuit over the blow-up variables computing the same
// predicate: per forest level an OR over the level vertex's fibre values, an
// AND over edge-literals to its ancestors and its children's subformulas;
// depth <= 2*height(f)+1
Circuit sub_formula_treedepth(const Graph& g, const EliminationForest& f, int n);

struct MinorOp {
    enum class Kind { delete_edge, contract_edge, delete_vertex };
    Kind kind = Kind::delete_edge;
    int u = -1;
    int v = -1;  // unused by delete_vertex

    static MinorOp del_edge(int u, int v);
    // merges the larger endpoint into the smaller; labels above shift down
    static MinorOp contract(int u, int v);
    // deletes incident edges, then drops the vertex; labels above shift down
    static MinorOp del_vertex(int u);
};

Graph apply_minor_op(const Graph& g, const MinorOp& op);

// single-step projection witnessing SUB(result) <=mp SUB(g): entries are
// indexed by g's blow-up variables, sources by the result graph's. Edge
// deletion sends the deleted fibre to const 1; contraction sends it to the
// diagonal indicator (a == b). Edge operations only.
MonotoneProjection minor_reduction(const Graph& g, const MinorOp& op, int n);

// left-to-right composition over an operation sequence that must transform
// g exactly into h; delete_vertex expands to incident edge deletions
// followed by an index-shifting drop of the isolated vertex
MonotoneProjection minor_reduction_chain(const Graph& h, const Graph& g,
                                         const std::vector<MinorOp>& ops, int n);

struct PathReduction {
    int k = 0;  // td(g)
    std::vector<MinorOp> ops;
    MonotoneProjection rho;  // SUB(P_k, n) <=mp SUB(g, n)
};

// keeps the first td(g) vertices of a longest-path witness, deletes
// everything else, and relabels onto the canonical path
PathReduction path_reduction(const Graph& g, int n, int max_order = 14);

// generalized projection from the bit encoding of structures with universe
// |M|*n (element (v,a) is v*n + a) into SUB(gaifman(M), n) variables: a
// tuple bit maps to the conjunction of blow-up variables over its pairs of
// distinct pattern vertices when the underlying tuple is in M, else to
// const 0; the empty conjunction is const 1
MonotoneProjection hpt_reduction(const Structure& m, int n);

struct HptCheck {
    bool ok = false;
    std::optional<uint64_t> counterexample;  // failing instance, bits packed by variable
    int preservation_checked_to = 0;         // largest universe the precondition was checked at
    bool preservation_holds = false;
    std::optional<std::pair<Structure, Structure>> preservation_counterexample;
};

// sweeps every instance X and checks SUB(X) == evaluate(phi, decode(rho*(X)));
// the preservation precondition is checked up to the largest universe whose
// model/non-model pair sweep fits the bit budget (two encodings per pair),
// and the reached size is reported
HptCheck verify_hpt_reduction(const Formula& phi, const Structure& m, int n, int max_bits = 20);

struct HptPipelineReport {
    bool preserved = false;
    PreservationReport preservation;
    std::vector<Structure> mincores;
    std::vector<int> core_tree_depths;
    std::optional<Formula> psi;  // disjunction of the mincores' sentences
    int psi_quantifier_rank = 0;
    bool equivalent = false;
    std::optional<Structure> mismatch;  // structure where phi and psi disagree
};

// end to end: preservation check up to size_bound, model enumeration, core
// minimization, sentence synthesis, and equivalence sweep up to n_verify
HptPipelineReport hpt_pipeline(const Formula& phi, const Signature& sig, int size_bound,
                               int n_verify, int max_bits = 20);

// instance files: one 0/1 line per variable in canonical order
SubInstance parse_sub_instance(const Graph& base, int n, const std::string& text);
std::string serialize_sub_instance(const SubInstance& x);

}  // namespace hompres
