#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <hompres/circuit.hpp>

namespace hompres {

// One target bit of a monotone projection: a constant, a single source bit,
// or a conjunction of source bits (the generalized form). Normalized so the
// empty conjunction is const1 and a singleton is a plain source entry.
struct ProjEntry {
    enum class Kind { zero, one, source, and_sources };
    Kind kind = Kind::zero;
    int source = -1;
    std::vector<int> sources;  // sorted, unique; kind == and_sources only

    static ProjEntry constant(bool value);
    static ProjEntry var(int source);
    static ProjEntry and_of(std::vector<int> sources);

    bool operator==(const ProjEntry&) const = default;
};

// rho maps each target bit (index into `entries`) to source bits; applying
// it turns a source assignment x into the target assignment rho*(x).
struct MonotoneProjection {
    int source_count = 0;
    std::vector<ProjEntry> entries;

    int target_count() const { return static_cast<int>(entries.size()); }
    bool operator==(const MonotoneProjection&) const = default;
};

MonotoneProjection identity_projection(int count);

std::vector<bool> apply_projection(const MonotoneProjection& rho, const std::vector<bool>& source);

// entry-level composition: apply(compose(outer, inner), x) ==
// apply(outer, apply(inner, x)); outer's sources must be inner's targets
MonotoneProjection compose_projections(const MonotoneProjection& outer,
                                       const MonotoneProjection& inner);

struct ReductionCheck {
    bool ok = false;
    std::optional<uint64_t> counterexample;  // first failing source assignment
};

// exhaustively checks f(x) == g(rho*(x)); truth tables are indexed with bit
// i of the table index carrying variable i
ReductionCheck verify_reduction(const std::vector<bool>& f, const std::vector<bool>& g,
                                const MonotoneProjection& rho, int max_bits = 22);

// rewires g's input literals through rho, producing a circuit over the
// source bits; a negated literal on an AND-set entry becomes an OR of
// negated source literals
Circuit restrict_circuit(const Circuit& g, const MonotoneProjection& rho);

// one line per entry: `0`, `1`, `x<i>`, or `and x<i> x<j> ...`
std::string serialize_projection(const MonotoneProjection& rho);

}  // namespace hompres
