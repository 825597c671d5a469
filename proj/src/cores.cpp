#include <hompres/cores.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

#include <hompres/errors.hpp>

namespace hompres {

std::optional<VertexMap> find_retraction(const Structure& a, const std::vector<int>& kept) {
    if (kept.empty()) throw std::invalid_argument("kept set must be non-empty");
    std::vector<int> pos(static_cast<size_t>(a.size()), -1);
    for (size_t i = 0; i < kept.size(); ++i) {
        if (kept[i] < 0 || kept[i] >= a.size())
            throw std::invalid_argument("kept vertex out of range");
        if (i > 0 && kept[i] <= kept[i - 1])
            throw std::invalid_argument("kept set must be ascending without duplicates");
        pos[static_cast<size_t>(kept[i])] = static_cast<int>(i);
    }
    Structure target = induced_substructure(a, kept);
    std::vector<int> pins(static_cast<size_t>(a.size()), -1);
    for (int v = 0; v < a.size(); ++v)
        if (pos[static_cast<size_t>(v)] >= 0) pins[static_cast<size_t>(v)] = pos[static_cast<size_t>(v)];
    auto f = find_homomorphism_pinned(a, target, pins);
    if (!f) return std::nullopt;
    // express as an endomorphism of `a` in the original labels
    VertexMap endo{a.size(), a.size(), {}};
    endo.image.reserve(f->image.size());
    for (int x : f->image) endo.image.push_back(kept[static_cast<size_t>(x)]);
    return endo;
}

namespace {

// image of an endomorphism, ascending
std::vector<int> endo_image(const VertexMap& f) {
    std::vector<bool> hit(static_cast<size_t>(f.target_size), false);
    for (int x : f.image) hit[static_cast<size_t>(x)] = true;
    std::vector<int> img;
    for (int v = 0; v < f.target_size; ++v)
        if (hit[static_cast<size_t>(v)]) img.push_back(v);
    return img;
}

// smallest idempotent power of an endomorphism: compose until the image is
// stable, then raise to the order of the permutation induced on it
VertexMap idempotent_power(const VertexMap& f) {
    VertexMap g = f;
    while (true) {
        auto img = endo_image(g);
        bool stable = true;
        for (int v : img)
            if (g.image[static_cast<size_t>(v)] != v) {
                stable = false;
                break;
            }
        if (stable) return g;
        g = compose(f, g);
    }
}

}  // namespace

CoreResult compute_core(const Structure& a) {
    Structure current = a;
    std::vector<int> labels(static_cast<size_t>(a.size()));  // current index -> original label
    for (int v = 0; v < a.size(); ++v) labels[static_cast<size_t>(v)] = v;
    // maps each original vertex to its image in the current retract (original labels)
    VertexMap composite = identity_map(a.size());
    std::vector<VertexMap> chain;

    bool shrunk = true;
    while (shrunk && current.size() > 1) {
        shrunk = false;
        for (int v = 0; v < current.size() && !shrunk; ++v) {
            std::vector<int> rest;
            for (int u = 0; u < current.size(); ++u)
                if (u != v) rest.push_back(u);
            auto h = find_homomorphism(current, induced_substructure(current, rest));
            if (!h) continue;
            // lift back to an endomorphism of `current` and make it idempotent
            VertexMap endo{current.size(), current.size(), {}};
            for (int x : h->image) endo.image.push_back(rest[static_cast<size_t>(x)]);
            VertexMap idem = idempotent_power(endo);
            auto img = endo_image(idem);

            // composite image lies in the current retract, so push it through idem
            std::vector<int> where(static_cast<size_t>(a.size()), -1);
            for (size_t i = 0; i < labels.size(); ++i)
                where[static_cast<size_t>(labels[i])] = static_cast<int>(i);
            for (int orig = 0; orig < a.size(); ++orig) {
                int through = composite.image[static_cast<size_t>(orig)];
                int moved = idem.image[static_cast<size_t>(where[static_cast<size_t>(through)])];
                composite.image[static_cast<size_t>(orig)] = labels[static_cast<size_t>(moved)];
            }
            chain.push_back(idem);

            std::vector<int> new_labels;
            for (int u : img) new_labels.push_back(labels[static_cast<size_t>(u)]);
            current = induced_substructure(current, img);
            labels = std::move(new_labels);
            shrunk = true;
        }
    }
    return {current, labels, composite, std::move(chain)};
}

bool is_core(const Structure& a) {
    if (a.size() == 1) return true;
    for (int v = 0; v < a.size(); ++v) {
        std::vector<int> rest;
        for (int u = 0; u < a.size(); ++u)
            if (u != v) rest.push_back(u);
        if (find_homomorphism(a, induced_substructure(a, rest))) return false;
    }
    return true;
}

namespace {

// per-vertex invariant used to prune isomorphism search: tuple occurrence
// counts per (relation, position) plus gaifman degree
std::vector<std::vector<int>> vertex_profiles(const Structure& a) {
    std::vector<std::vector<int>> prof(static_cast<size_t>(a.size()));
    size_t width = 1;
    for (size_t rel = 0; rel < a.signature().relation_count(); ++rel)
        width += static_cast<size_t>(a.signature().relation(rel).arity);
    for (auto& p : prof) p.assign(width, 0);
    size_t off = 0;
    for (size_t rel = 0; rel < a.signature().relation_count(); ++rel) {
        for (const auto& t : a.tuples(rel))
            for (size_t i = 0; i < t.size(); ++i)
                prof[static_cast<size_t>(t[i])][off + i] += 1;
        off += static_cast<size_t>(a.signature().relation(rel).arity);
    }
    Graph g = gaifman(a);
    for (int v = 0; v < a.size(); ++v) prof[static_cast<size_t>(v)][width - 1] = g.degree(v);
    return prof;
}

bool iso_extend(const Structure& a, const Structure& b,
                const std::vector<std::vector<int>>& pa,
                const std::vector<std::vector<int>>& pb, std::vector<int>& image,
                std::vector<bool>& used, int v) {
    if (v == a.size()) {
        VertexMap f{a.size(), b.size(), image};
        return is_embedding(f, a, b);
    }
    for (int w = 0; w < b.size(); ++w) {
        if (used[static_cast<size_t>(w)]) continue;
        if (pa[static_cast<size_t>(v)] != pb[static_cast<size_t>(w)]) continue;
        image[static_cast<size_t>(v)] = w;
        used[static_cast<size_t>(w)] = true;
        if (iso_extend(a, b, pa, pb, image, used, v + 1)) return true;
        used[static_cast<size_t>(w)] = false;
    }
    return false;
}

}  // namespace

bool isomorphic(const Structure& a, const Structure& b) {
    if (!(a.signature() == b.signature()) || a.size() != b.size()) return false;
    for (size_t rel = 0; rel < a.signature().relation_count(); ++rel)
        if (a.tuple_count(rel) != b.tuple_count(rel)) return false;
    auto pa = vertex_profiles(a), pb = vertex_profiles(b);
    auto sorted = [](std::vector<std::vector<int>> p) {
        std::sort(p.begin(), p.end());
        return p;
    };
    if (sorted(pa) != sorted(pb)) return false;
    std::vector<int> image(static_cast<size_t>(a.size()), -1);
    std::vector<bool> used(static_cast<size_t>(b.size()), false);
    return iso_extend(a, b, pa, pb, image, used, 0);
}

std::vector<Structure> min_cores(const GeneratedClass& cls) {
    if (cls.generators.empty()) throw std::invalid_argument("generated class must be non-empty");
    for (const auto& g : cls.generators)
        if (!(g.signature() == cls.generators.front().signature()))
            throw std::invalid_argument("generators must share a signature");

    std::vector<Structure> cores;
    for (const auto& g : cls.generators) {
        Structure c = compute_core(g).core;
        bool dup = false;
        for (const auto& seen : cores)
            if (isomorphic(seen, c)) {
                dup = true;
                break;
            }
        if (!dup) cores.push_back(std::move(c));
    }
    // minimal in the homomorphism preorder: nothing else maps into them
    std::vector<Structure> minimal;
    for (size_t i = 0; i < cores.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < cores.size() && !dominated; ++j)
            if (j != i && find_homomorphism(cores[j], cores[i])) dominated = true;
        if (!dominated) minimal.push_back(cores[i]);
    }
    std::sort(minimal.begin(), minimal.end(), [](const Structure& x, const Structure& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return encode(x).bits < encode(y).bits;
    });
    return minimal;
}

PreservationReport is_hom_preserved(const Formula& phi, const Signature& sig, int max_size,
                                    int max_bits) {
    if (max_size < 1) throw std::invalid_argument("max_size must be >= 1");
    // models and non-models per size
    std::vector<std::vector<Structure>> models(static_cast<size_t>(max_size) + 1);
    std::vector<std::vector<Structure>> non_models(static_cast<size_t>(max_size) + 1);
    for (int s = 1; s <= max_size; ++s)
        for (auto& a : enumerate_structures(sig, s, max_bits)) {
            (evaluate(phi, a) ? models : non_models)[static_cast<size_t>(s)].push_back(
                std::move(a));
        }
    PreservationReport report;
    for (int sa = 1; sa <= max_size; ++sa)
        for (const auto& a : models[static_cast<size_t>(sa)])
            for (int sb = 1; sb <= max_size; ++sb)
                for (const auto& b : non_models[static_cast<size_t>(sb)]) {
                    auto f = find_homomorphism(a, b);
                    if (f) {
                        report.preserved = false;
                        report.counterexample = {a, b};
                        report.counterexample_hom = *f;
                        return report;
                    }
                }
    report.preserved = true;
    return report;
}

}  // namespace hompres
