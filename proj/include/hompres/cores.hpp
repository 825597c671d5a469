#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <hompres/formula.hpp>
#include <hompres/hom.hpp>
#include <hompres/structure.hpp>

namespace hompres {

struct SubstructureView {
    Structure parent;
    std::vector<int> kept;  // ascending, non-empty
    Structure induced() const { return induced_substructure(parent, kept); }
};

struct GeneratedClass {
    std::vector<Structure> generators;  // non-empty, shared signature
};

// endomorphism of `a` that fixes `kept` pointwise with image inside it;
// nullopt when no such map exists
std::optional<VertexMap> find_retraction(const Structure& a, const std::vector<int>& kept);

struct CoreResult {
    Structure core;                  // relabeled onto {0..m-1}
    std::vector<int> core_vertices;  // original labels, ascending
    VertexMap retraction;            // idempotent endomorphism of the input onto core_vertices
    // chain[i] is an idempotent endomorphism of the i-th intermediate structure
    // (the input for i = 0, then each successive image relabeled onto {0..m-1});
    // lifted back to input labels the steps compose to `retraction`.
    std::vector<VertexMap> chain;
};

// smallest retract, found by repeatedly shrinking along non-surjective
// endomorphisms (deterministic: first vertex whose removal admits one)
CoreResult compute_core(const Structure& a);

// no proper retract, equivalently every endomorphism is surjective
bool is_core(const Structure& a);

bool isomorphic(const Structure& a, const Structure& b);

// cores of the generators that are minimal in the homomorphism preorder,
// deduplicated up to isomorphism, sorted by (size, encoding)
std::vector<Structure> min_cores(const GeneratedClass&);

struct PreservationReport {
    bool preserved = false;
    // on failure: first (a, b) with a |= phi, a -> b, b |/= phi
    std::optional<std::pair<Structure, Structure>> counterexample;
    std::optional<VertexMap> counterexample_hom;
};

// brute-force check over all pairs of structures with universes up to
// max_size; per-size encodings must fit the bit budget
PreservationReport is_hom_preserved(const Formula& phi, const Signature& sig, int max_size,
                                    int max_bits = 20);

}  // namespace hompres
