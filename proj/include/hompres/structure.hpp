#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <hompres/graph.hpp>

namespace hompres {

struct Relation {
    std::string name;
    int arity = 1;
    bool operator==(const Relation&) const = default;
};

// Ordered list of relation symbols. The order is canonical: tuple indexing
// and bit encodings depend on it.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<Relation> relations);
    static Signature single_binary(const std::string& name = "R");

    size_t relation_count() const { return relations_.size(); }
    const Relation& relation(size_t i) const { return relations_[i]; }
    const std::vector<Relation>& relations() const { return relations_; }
    std::optional<size_t> index_of(std::string_view name) const;

    // universe^arity, and the sum over all relations
    uint64_t relation_bits(size_t i, int universe) const;
    uint64_t encoding_bits(int universe) const;

    bool operator==(const Signature&) const = default;

private:
    std::vector<Relation> relations_;
};

using Tuple = std::vector<int>;

// Finite relational structure with universe {0..size-1}. Tuple sets are kept
// as bitsets indexed lexicographically, so membership is O(1) and the bit
// encoding is a direct copy.
class Structure {
public:
    Structure(Signature sig, int size);

    const Signature& signature() const { return sig_; }
    int size() const { return n_; }

    void add_tuple(size_t rel, const Tuple& t);       // idempotent
    bool has_tuple(size_t rel, const Tuple& t) const;
    uint64_t tuple_count(size_t rel) const;
    uint64_t total_tuple_count() const;
    std::vector<Tuple> tuples(size_t rel) const;      // lexicographic order
    uint64_t tuple_index(size_t rel, const Tuple& t) const;
    const std::vector<bool>& relation_bits(size_t rel) const { return bits_[rel]; }

    bool operator==(const Structure&) const = default;

private:
    Signature sig_;
    int n_;
    std::vector<std::vector<bool>> bits_;  // per relation, length size^arity
};

struct BitEncoding {
    Signature signature;
    int universe = 1;
    std::vector<bool> bits;  // length signature.encoding_bits(universe)
    bool operator==(const BitEncoding&) const = default;
};

BitEncoding encode(const Structure&);
Structure decode(const BitEncoding&);  // rejects length mismatches

// position of one tuple's bit within the whole encoding
uint64_t encoding_bit_index(const Signature& sig, int universe, size_t rel, const Tuple& t);

// vertices co-occurring in some tuple (loops dropped)
Graph gaifman(const Structure&);

// text format: `signature <name>/<arity> ...`, `universe <n>`, one tuple per
// line as `<name> <i1> ... <ik>`; '#' comments
Structure parse_structure(const std::string& text);
std::string serialize_structure(const Structure&);

// relabels kept vertices by their position in `kept` (which must be
// non-empty, ascending, without duplicates)
Structure induced_substructure(const Structure&, const std::vector<int>& kept);

// all structures over `sig` with exactly the given universe size, in
// encoding order (2^encoding_bits of them — keep it small)
std::vector<Structure> enumerate_structures(const Signature& sig, int size, int max_bits = 20);

// structure at a given encoding index without materializing the whole list
Structure structure_from_index(const Signature& sig, int size, uint64_t index);

}  // namespace hompres
