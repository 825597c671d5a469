#pragma once

#include <hompres/circuit.hpp>
#include <hompres/formula.hpp>
#include <hompres/structure.hpp>

namespace hompres {

// Compiles a sentence into an AND/OR circuit over the bit encoding of
// structures with the given signature and universe size n, so that
// eval_circuit(result, encode(A).bits) == evaluate(sentence, A) for every A
// with that universe. Quantifiers become fan-in-n OR/AND gates (one per
// instantiation block), connectives become one gate per block, relational
// atoms become literals (negated under NNF negation), and equality atoms
// fold to constants. Sub-circuits are shared via memoization keyed by the
// subformula and the environment restricted to its free variables.
Circuit compile_fo(const Formula& sentence, const Signature& sig, int n);

}  // namespace hompres
