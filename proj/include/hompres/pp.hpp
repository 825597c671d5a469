#pragma once

#include <string>
#include <vector>

#include <hompres/formula.hpp>
#include <hompres/graphparams.hpp>
#include <hompres/structure.hpp>

namespace hompres {

struct PPAtom {
    std::string relation;
    std::vector<int> vars;
    bool operator==(const PPAtom&) const = default;
};

// Primitive-positive sentence: existential variables arranged in a rooted
// forest (the quantification tree) and a conjunction of relational atoms.
// Each atom's variables must lie on a single root-to-leaf chain, so the
// quantifier rank equals the forest height rather than the variable count.
struct PPSentence {
    Signature signature;
    EliminationForest forest;  // over variables {0..var_count-1}
    std::vector<PPAtom> atoms;

    int var_count() const { return forest.order(); }
    int quantifier_rank() const { return forest.height(); }
    bool valid() const;

    // Variables render as x0, x1, ...; atoms attach at their deepest
    // variable; an atomless node closes with the tautology `xV = xV`.
    Formula to_formula() const;
};

// Rewrites an existential-positive sentence into primitive-positive
// disjuncts by distributing disjunctions outward; equality atoms are
// eliminated by identifying variables. Each disjunct keeps quantifier rank
// at most qr(phi), and the disjunction of the results is equivalent to phi.
std::vector<PPSentence> to_pp_disjunction(const Formula& phi, const Signature& sig);

// universe = variables, tuples = atoms
Structure canonical_structure(const PPSentence& psi);

// One variable per universe element, quantified along the forest's
// branches; matrix = every tuple of m. The forest must be valid for
// gaifman(m), which guarantees the chain property for every atom.
PPSentence pp_sentence_of(const Structure& m, const EliminationForest& f);

// Disjunction over pp_sentence_of(M, optimal elimination forest); the
// result's quantifier rank is the largest Gaifman tree-depth involved.
Formula ep_sentence_of_class(const std::vector<Structure>& mincores);

}  // namespace hompres
