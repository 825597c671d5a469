#include <hompres/hom.hpp>

#include <algorithm>
#include <bit>
#include <stdexcept>

#include <hompres/errors.hpp>

namespace hompres {

VertexMap identity_map(int n) {
    VertexMap f{n, n, std::vector<int>(static_cast<size_t>(n))};
    for (int i = 0; i < n; ++i) f.image[static_cast<size_t>(i)] = i;
    return f;
}

VertexMap compose(const VertexMap& outer, const VertexMap& inner) {
    if (inner.target_size != outer.source_size)
        throw std::invalid_argument("composition size mismatch");
    VertexMap f{inner.source_size, outer.target_size, {}};
    f.image.reserve(inner.image.size());
    for (int x : inner.image) f.image.push_back(outer.image[static_cast<size_t>(x)]);
    return f;
}

static void require_compatible(const VertexMap& f, const Structure& a, const Structure& b) {
    if (!(a.signature() == b.signature())) throw std::invalid_argument("signature mismatch");
    if (f.source_size != a.size() || f.target_size != b.size() ||
        static_cast<int>(f.image.size()) != a.size())
        throw std::invalid_argument("vertex map size mismatch");
    for (int x : f.image)
        if (x < 0 || x >= b.size()) throw std::invalid_argument("vertex map image out of range");
}

bool check_homomorphism(const VertexMap& f, const Structure& a, const Structure& b) {
    require_compatible(f, a, b);
    Tuple img;
    for (size_t rel = 0; rel < a.signature().relation_count(); ++rel)
        for (const auto& t : a.tuples(rel)) {
            img.resize(t.size());
            for (size_t i = 0; i < t.size(); ++i) img[i] = f.image[static_cast<size_t>(t[i])];
            if (!b.has_tuple(rel, img)) return false;
        }
    return true;
}

namespace {

// backtracking with per-tuple generalized arc consistency; target size <= 64
// so candidate domains are single words
struct HomSearch {
    const Structure& a;
    const Structure& b;
    std::vector<std::vector<Tuple>> a_tuples;  // per relation
    std::vector<std::vector<Tuple>> b_tuples;
    std::vector<uint64_t> domain;
    std::vector<int> assignment;
    bool collect_all = false;
    std::vector<VertexMap> found;

    HomSearch(const Structure& a_, const Structure& b_) : a(a_), b(b_) {
        if (!(a.signature() == b.signature())) throw std::invalid_argument("signature mismatch");
        if (b.size() > 64) throw bound_error("homomorphism search targets are capped at 64");
        for (size_t rel = 0; rel < a.signature().relation_count(); ++rel) {
            a_tuples.push_back(a.tuples(rel));
            b_tuples.push_back(b.tuples(rel));
        }
        domain.assign(static_cast<size_t>(a.size()), full_mask(b.size()));
        assignment.assign(static_cast<size_t>(a.size()), -1);
    }

    // prune every tuple constraint to a fixpoint; false on a wiped domain
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t rel = 0; rel < a_tuples.size(); ++rel) {
                for (const auto& t : a_tuples[rel]) {
                    size_t r = t.size();
                    static thread_local std::vector<uint64_t> support;
                    support.assign(r, 0);
                    for (const auto& s : b_tuples[rel]) {
                        int bad = -1;
                        bool ok = true;
                        for (size_t p = 0; p < r; ++p) {
                            if (!((domain[static_cast<size_t>(t[p])] >> s[p]) & 1ull)) {
                                if (bad >= 0) {
                                    ok = false;
                                    break;
                                }
                                bad = static_cast<int>(p);
                            }
                        }
                        if (!ok) continue;
                        if (bad < 0) {
                            for (size_t p = 0; p < r; ++p) support[p] |= 1ull << s[p];
                        } else {
                            support[static_cast<size_t>(bad)] |= 1ull << s[static_cast<size_t>(bad)];
                        }
                    }
                    for (size_t p = 0; p < r; ++p) {
                        uint64_t pruned = domain[static_cast<size_t>(t[p])] & support[p];
                        if (pruned != domain[static_cast<size_t>(t[p])]) {
                            if (!pruned) return false;
                            domain[static_cast<size_t>(t[p])] = pruned;
                            changed = true;
                        }
                    }
                }
            }
        }
        return true;
    }

    bool run(int v) {
        if (v == a.size()) {
            VertexMap f{a.size(), b.size(), assignment};
            found.push_back(std::move(f));
            return !collect_all;
        }
        uint64_t candidates = domain[static_cast<size_t>(v)];
        while (candidates) {
            int c = std::countr_zero(candidates);
            candidates &= candidates - 1;
            auto saved = domain;
            domain[static_cast<size_t>(v)] = 1ull << c;
            assignment[static_cast<size_t>(v)] = c;
            if (propagate() && run(v + 1)) return true;
            domain = saved;
            assignment[static_cast<size_t>(v)] = -1;
        }
        return false;
    }
};

}  // namespace

std::optional<VertexMap> find_homomorphism(const Structure& a, const Structure& b) {
    return find_homomorphism_pinned(a, b, std::vector<int>(static_cast<size_t>(a.size()), -1));
}

std::optional<VertexMap> find_homomorphism_pinned(const Structure& a, const Structure& b,
                                                  const std::vector<int>& pins) {
    if (static_cast<int>(pins.size()) != a.size())
        throw std::invalid_argument("pin vector size mismatch");
    HomSearch search(a, b);
    for (size_t v = 0; v < pins.size(); ++v) {
        if (pins[v] < 0) continue;
        if (pins[v] >= b.size()) throw std::invalid_argument("pin out of range");
        search.domain[v] = 1ull << pins[v];
    }
    if (!search.propagate()) return std::nullopt;
    if (!search.run(0)) return std::nullopt;
    return search.found.front();
}

std::vector<VertexMap> enumerate_homomorphisms(const Structure& a, const Structure& b,
                                               uint64_t max_maps) {
    double space = 1;
    for (int i = 0; i < a.size(); ++i) space *= b.size();
    if (space > static_cast<double>(max_maps))
        throw bound_error("search-space bound exceeded: " + std::to_string(b.size()) + "^" +
                          std::to_string(a.size()) + " maps");
    HomSearch search(a, b);
    search.collect_all = true;
    if (search.propagate()) search.run(0);
    return std::move(search.found);
}

bool is_embedding(const VertexMap& f, const Structure& a, const Structure& b) {
    require_compatible(f, a, b);
    std::vector<int> preimage(static_cast<size_t>(b.size()), -1);
    for (int v = 0; v < a.size(); ++v) {
        int w = f.image[static_cast<size_t>(v)];
        if (preimage[static_cast<size_t>(w)] >= 0) return false;  // not injective
        preimage[static_cast<size_t>(w)] = v;
    }
    if (!check_homomorphism(f, a, b)) return false;
    // reflection: image tuples over f's range must come from tuples of a
    Tuple src;
    for (size_t rel = 0; rel < b.signature().relation_count(); ++rel)
        for (const auto& s : b.tuples(rel)) {
            bool in_range = true;
            src.resize(s.size());
            for (size_t i = 0; i < s.size(); ++i) {
                if (preimage[static_cast<size_t>(s[i])] < 0) {
                    in_range = false;
                    break;
                }
                src[i] = preimage[static_cast<size_t>(s[i])];
            }
            if (in_range && !a.has_tuple(rel, src)) return false;
        }
    return true;
}

bool hom_equivalent(const Structure& a, const Structure& b) {
    return find_homomorphism(a, b).has_value() && find_homomorphism(b, a).has_value();
}

}  // namespace hompres
