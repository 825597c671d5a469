#pragma once

#include <optional>
#include <vector>

#include <hompres/structure.hpp>

namespace hompres {

// total map {0..source_size-1} -> {0..target_size-1}
struct VertexMap {
    int source_size = 0;
    int target_size = 0;
    std::vector<int> image;
    bool operator==(const VertexMap&) const = default;
};

VertexMap identity_map(int n);
VertexMap compose(const VertexMap& outer, const VertexMap& inner);  // outer after inner

bool check_homomorphism(const VertexMap&, const Structure& a, const Structure& b);

// lexicographically least homomorphism (vertices ascending, candidates
// ascending), with per-tuple support pruning
std::optional<VertexMap> find_homomorphism(const Structure& a, const Structure& b);

// same, but source vertex v is forced to pins[v] when pins[v] >= 0
std::optional<VertexMap> find_homomorphism_pinned(const Structure& a, const Structure& b,
                                                  const std::vector<int>& pins);

// all homomorphisms in lexicographic order; errors when target^source
// exceeds max_maps
std::vector<VertexMap> enumerate_homomorphisms(const Structure& a, const Structure& b,
                                               uint64_t max_maps = 1ull << 22);

// injective, and tuples correspond exactly on the image
bool is_embedding(const VertexMap&, const Structure& a, const Structure& b);

bool hom_equivalent(const Structure& a, const Structure& b);

}  // namespace hompres
