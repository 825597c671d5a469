#include <hompres/structure.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include <hompres/errors.hpp>

namespace hompres {

Signature::Signature(std::vector<Relation> relations) : relations_(std::move(relations)) {
    std::set<std::string> seen;
    for (const auto& r : relations_) {
        if (r.name.empty()) throw std::invalid_argument("relation name must be non-empty");
        if (r.arity < 1) throw std::invalid_argument("relation arity must be >= 1");
        if (!seen.insert(r.name).second)
            throw std::invalid_argument("duplicate relation name '" + r.name + "'");
    }
}

Signature Signature::single_binary(const std::string& name) {
    return Signature({{name, 2}});
}

std::optional<size_t> Signature::index_of(std::string_view name) const {
    for (size_t i = 0; i < relations_.size(); ++i)
        if (relations_[i].name == name) return i;
    return std::nullopt;
}

uint64_t Signature::relation_bits(size_t i, int universe) const {
    uint64_t bits = 1;
    for (int k = 0; k < relations_[i].arity; ++k) bits *= static_cast<uint64_t>(universe);
    return bits;
}

uint64_t Signature::encoding_bits(int universe) const {
    uint64_t total = 0;
    for (size_t i = 0; i < relations_.size(); ++i) total += relation_bits(i, universe);
    return total;
}

Structure::Structure(Signature sig, int size) : sig_(std::move(sig)), n_(size) {
    if (size < 1) throw std::invalid_argument("universe size must be >= 1");
    bits_.resize(sig_.relation_count());
    for (size_t i = 0; i < bits_.size(); ++i)
        bits_[i].assign(sig_.relation_bits(i, n_), false);
}

uint64_t Structure::tuple_index(size_t rel, const Tuple& t) const {
    if (rel >= sig_.relation_count()) throw std::invalid_argument("relation index out of range");
    if (static_cast<int>(t.size()) != sig_.relation(rel).arity)
        throw std::invalid_argument("tuple arity mismatch");
    uint64_t idx = 0;
    for (int x : t) {
        if (x < 0 || x >= n_) throw std::invalid_argument("tuple entry out of range");
        idx = idx * static_cast<uint64_t>(n_) + static_cast<uint64_t>(x);
    }
    return idx;
}

void Structure::add_tuple(size_t rel, const Tuple& t) { bits_[rel][tuple_index(rel, t)] = true; }

bool Structure::has_tuple(size_t rel, const Tuple& t) const {
    return bits_[rel][tuple_index(rel, t)];
}

uint64_t Structure::tuple_count(size_t rel) const {
    uint64_t c = 0;
    for (bool b : bits_[rel]) c += b;
    return c;
}

uint64_t Structure::total_tuple_count() const {
    uint64_t c = 0;
    for (size_t i = 0; i < bits_.size(); ++i) c += tuple_count(i);
    return c;
}

std::vector<Tuple> Structure::tuples(size_t rel) const {
    int arity = sig_.relation(rel).arity;
    std::vector<Tuple> out;
    Tuple t(static_cast<size_t>(arity), 0);
    for (uint64_t idx = 0; idx < bits_[rel].size(); ++idx) {
        if (bits_[rel][idx]) {
            uint64_t rest = idx;
            for (int p = arity - 1; p >= 0; --p) {
                t[static_cast<size_t>(p)] = static_cast<int>(rest % static_cast<uint64_t>(n_));
                rest /= static_cast<uint64_t>(n_);
            }
            out.push_back(t);
        }
    }
    return out;
}

BitEncoding encode(const Structure& a) {
    BitEncoding e;
    e.signature = a.signature();
    e.universe = a.size();
    e.bits.reserve(a.signature().encoding_bits(a.size()));
    for (size_t rel = 0; rel < a.signature().relation_count(); ++rel)
        e.bits.insert(e.bits.end(), a.relation_bits(rel).begin(), a.relation_bits(rel).end());
    return e;
}

Structure decode(const BitEncoding& e) {
    if (e.bits.size() != e.signature.encoding_bits(e.universe))
        throw std::invalid_argument("encoding length mismatch");
    Structure a(e.signature, e.universe);
    size_t off = 0;
    for (size_t rel = 0; rel < e.signature.relation_count(); ++rel) {
        uint64_t width = e.signature.relation_bits(rel, e.universe);
        int arity = e.signature.relation(rel).arity;
        for (uint64_t idx = 0; idx < width; ++idx) {
            if (!e.bits[off + idx]) continue;
            Tuple t(static_cast<size_t>(arity));
            uint64_t rest = idx;
            for (int p = arity - 1; p >= 0; --p) {
                t[static_cast<size_t>(p)] = static_cast<int>(rest % static_cast<uint64_t>(e.universe));
                rest /= static_cast<uint64_t>(e.universe);
            }
            a.add_tuple(rel, t);
        }
        off += width;
    }
    return a;
}

uint64_t encoding_bit_index(const Signature& sig, int universe, size_t rel, const Tuple& t) {
    if (rel >= sig.relation_count()) throw std::invalid_argument("relation index out of range");
    if (static_cast<int>(t.size()) != sig.relation(rel).arity)
        throw std::invalid_argument("tuple arity mismatch");
    uint64_t idx = 0;
    for (int x : t) {
        if (x < 0 || x >= universe) throw std::invalid_argument("tuple entry out of range");
        idx = idx * static_cast<uint64_t>(universe) + static_cast<uint64_t>(x);
    }
    for (size_t r = 0; r < rel; ++r) idx += sig.relation_bits(r, universe);
    return idx;
}

Graph gaifman(const Structure& a) {
    Graph g(a.size());
    for (size_t rel = 0; rel < a.signature().relation_count(); ++rel)
        for (const auto& t : a.tuples(rel))
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = i + 1; j < t.size(); ++j)
                    if (t[i] != t[j]) g.add_edge(t[i], t[j]);
    return g;
}

Structure parse_structure(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::optional<Signature> sig;
    int universe = -1;
    std::optional<Structure> a;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "signature") {
            if (sig) throw parse_error("duplicate 'signature' line", line_no);
            std::vector<Relation> rels;
            std::string item;
            while (ls >> item) {
                if (item[0] == '#') break;
                auto slash = item.find('/');
                if (slash == std::string::npos || slash == 0 || slash + 1 >= item.size())
                    throw parse_error("expected <name>/<arity>, got '" + item + "'", line_no);
                int arity;
                try {
                    size_t used = 0;
                    arity = std::stoi(item.substr(slash + 1), &used);
                    if (used != item.size() - slash - 1) throw std::invalid_argument("");
                } catch (...) {
                    throw parse_error("bad arity in '" + item + "'", line_no);
                }
                if (arity < 1) throw parse_error("arity must be >= 1", line_no);
                rels.push_back({item.substr(0, slash), arity});
            }
            if (rels.empty()) throw parse_error("empty signature", line_no);
            try {
                sig = Signature(std::move(rels));
            } catch (const std::invalid_argument& e) {
                throw parse_error(e.what(), line_no);
            }
        } else if (head == "universe") {
            if (universe != -1) throw parse_error("duplicate 'universe' line", line_no);
            if (!(ls >> universe) || universe < 1) throw parse_error("bad universe size", line_no);
        } else {
            if (!sig) throw parse_error("tuple before 'signature'", line_no);
            if (universe == -1) throw parse_error("tuple before 'universe'", line_no);
            if (!a) a.emplace(*sig, universe);
            auto rel = sig->index_of(head);
            if (!rel) throw parse_error("unknown relation '" + head + "'", line_no);
            Tuple t;
            int x;
            while (ls >> x) t.push_back(x);
            if (static_cast<int>(t.size()) != sig->relation(*rel).arity)
                throw parse_error("arity mismatch for '" + head + "'", line_no);
            for (int e : t)
                if (e < 0 || e >= universe) throw parse_error("tuple entry out of range", line_no);
            a->add_tuple(*rel, t);
        }
    }
    if (!sig) throw parse_error("missing 'signature' line");
    if (universe == -1) throw parse_error("missing 'universe' line");
    if (!a) a.emplace(*sig, universe);
    return *a;
}

std::string serialize_structure(const Structure& a) {
    std::ostringstream out;
    out << "signature";
    for (const auto& r : a.signature().relations()) out << " " << r.name << "/" << r.arity;
    out << "\nuniverse " << a.size() << "\n";
    for (size_t rel = 0; rel < a.signature().relation_count(); ++rel)
        for (const auto& t : a.tuples(rel)) {
            out << a.signature().relation(rel).name;
            for (int x : t) out << " " << x;
            out << "\n";
        }
    return out.str();
}

Structure induced_substructure(const Structure& a, const std::vector<int>& kept) {
    if (kept.empty()) throw std::invalid_argument("kept set must be non-empty");
    std::vector<int> pos(static_cast<size_t>(a.size()), -1);
    for (size_t i = 0; i < kept.size(); ++i) {
        int v = kept[i];
        if (v < 0 || v >= a.size()) throw std::invalid_argument("kept vertex out of range");
        if (i > 0 && kept[i] <= kept[i - 1])
            throw std::invalid_argument("kept set must be ascending without duplicates");
        pos[static_cast<size_t>(v)] = static_cast<int>(i);
    }
    Structure b(a.signature(), static_cast<int>(kept.size()));
    for (size_t rel = 0; rel < a.signature().relation_count(); ++rel)
        for (auto t : a.tuples(rel)) {
            bool inside = true;
            for (int& x : t) {
                if (pos[static_cast<size_t>(x)] < 0) {
                    inside = false;
                    break;
                }
                x = pos[static_cast<size_t>(x)];
            }
            if (inside) b.add_tuple(rel, t);
        }
    return b;
}

std::vector<Structure> enumerate_structures(const Signature& sig, int size, int max_bits) {
    uint64_t bits = sig.encoding_bits(size);
    if (bits > static_cast<uint64_t>(max_bits))
        throw bound_error("enumeration needs " + std::to_string(bits) + " bits, budget is " +
                          std::to_string(max_bits));
    std::vector<Structure> out;
    out.reserve(1ull << bits);
    for (uint64_t idx = 0; idx < (1ull << bits); ++idx)
        out.push_back(structure_from_index(sig, size, idx));
    return out;
}

Structure structure_from_index(const Signature& sig, int size, uint64_t index) {
    BitEncoding e;
    e.signature = sig;
    e.universe = size;
    uint64_t bits = sig.encoding_bits(size);
    if (bits > 63) throw bound_error("encoding too wide for indexed access");
    if (index >= (1ull << bits)) throw std::invalid_argument("encoding index out of range");
    e.bits.resize(bits);
    for (uint64_t i = 0; i < bits; ++i) e.bits[i] = (index >> i) & 1ull;
    return decode(e);
}

}  // namespace hompres
