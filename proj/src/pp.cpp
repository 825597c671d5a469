#include <hompres/pp.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

namespace hompres {

namespace {

std::string var_name(int v) { return "x" + std::to_string(v); }

}  // namespace

bool PPSentence::valid() const {
    const int k = var_count();
    if (k == 0) return false;
    for (int v = 0; v < k; ++v) {
        int p = forest.parent[static_cast<size_t>(v)];
        if (p == v || p < -1 || p >= k) return false;
        if (forest.depth_of(v) < 0) return false;  // cycle
    }
    for (const auto& atom : atoms) {
        auto idx = signature.index_of(atom.relation);
        if (!idx) return false;
        if (signature.relation(*idx).arity != static_cast<int>(atom.vars.size())) return false;
        for (int v : atom.vars)
            if (v < 0 || v >= k) return false;
        // all variables of the atom must sit on one root-to-leaf chain
        for (size_t i = 0; i < atom.vars.size(); ++i)
            for (size_t j = i + 1; j < atom.vars.size(); ++j) {
                int a = atom.vars[i];
                int b = atom.vars[j];
                if (a == b) continue;
                auto anc_a = forest.ancestors(a);
                auto anc_b = forest.ancestors(b);
                bool comparable = std::find(anc_a.begin(), anc_a.end(), b) != anc_a.end() ||
                                  std::find(anc_b.begin(), anc_b.end(), a) != anc_b.end();
                if (!comparable) return false;
            }
    }
    return true;
}

Formula PPSentence::to_formula() const {
    if (!valid()) throw std::invalid_argument("PPSentence::to_formula: malformed sentence");
    const int k = var_count();
    std::vector<std::vector<int>> children(static_cast<size_t>(k));
    std::vector<int> roots;
    for (int v = 0; v < k; ++v) {
        int p = forest.parent[static_cast<size_t>(v)];
        if (p == -1)
            roots.push_back(v);
        else
            children[static_cast<size_t>(p)].push_back(v);
    }
    // each atom nests at its deepest variable, where all its variables are in scope
    std::vector<std::vector<size_t>> atoms_at(static_cast<size_t>(k));
    for (size_t i = 0; i < atoms.size(); ++i) {
        int deepest = atoms[i].vars.front();
        for (int v : atoms[i].vars)
            if (forest.depth_of(v) > forest.depth_of(deepest)) deepest = v;
        atoms_at[static_cast<size_t>(deepest)].push_back(i);
    }

    std::function<Formula(int)> build = [&](int v) -> Formula {
        std::vector<Formula> parts;
        for (size_t i : atoms_at[static_cast<size_t>(v)]) {
            std::vector<std::string> args;
            for (int u : atoms[i].vars) args.push_back(var_name(u));
            parts.push_back(Formula::relation(atoms[i].relation, std::move(args)));
        }
        for (int c : children[static_cast<size_t>(v)]) parts.push_back(build(c));
        Formula body = parts.empty() ? Formula::equality(var_name(v), var_name(v))
                                     : Formula::conjunction(std::move(parts));
        return Formula::exists(var_name(v), std::move(body));
    };

    std::vector<Formula> top;
    for (int r : roots) top.push_back(build(r));
    return Formula::conjunction(std::move(top));
}

namespace {

// intermediate disjunct while distributing: quantifiers renamed apart
struct Piece {
    std::vector<std::string> vars;              // discovery order, outer first
    std::map<std::string, std::string> parent;  // enclosing quantifier, "" at roots
    std::vector<std::pair<std::string, std::vector<std::string>>> rel_atoms;
    std::vector<std::pair<std::string, std::string>> eq_atoms;
};

Piece merge_pieces(const Piece& a, const Piece& b) {
    Piece out = a;
    out.vars.insert(out.vars.end(), b.vars.begin(), b.vars.end());
    out.parent.insert(b.parent.begin(), b.parent.end());
    out.rel_atoms.insert(out.rel_atoms.end(), b.rel_atoms.begin(), b.rel_atoms.end());
    out.eq_atoms.insert(out.eq_atoms.end(), b.eq_atoms.begin(), b.eq_atoms.end());
    return out;
}

std::vector<Piece> distribute(const Formula& f, std::map<std::string, std::string>& env,
                              const std::string& enclosing, int& counter) {
    switch (f.kind()) {
        case Formula::Kind::relation: {
            Piece p;
            std::vector<std::string> args;
            for (const auto& a : f.args()) args.push_back(env.at(a));
            p.rel_atoms.emplace_back(f.name(), std::move(args));
            return {std::move(p)};
        }
        case Formula::Kind::equality: {
            Piece p;
            p.eq_atoms.emplace_back(env.at(f.args()[0]), env.at(f.args()[1]));
            return {std::move(p)};
        }
        case Formula::Kind::conjunction: {
            std::vector<Piece> acc{Piece{}};
            for (const auto& part : f.parts()) {
                auto sub = distribute(part, env, enclosing, counter);
                std::vector<Piece> next;
                for (const auto& a : acc)
                    for (const auto& b : sub) next.push_back(merge_pieces(a, b));
                acc = std::move(next);
            }
            return acc;
        }
        case Formula::Kind::disjunction: {
            std::vector<Piece> acc;
            for (const auto& part : f.parts()) {
                auto sub = distribute(part, env, enclosing, counter);
                acc.insert(acc.end(), std::make_move_iterator(sub.begin()),
                           std::make_move_iterator(sub.end()));
            }
            return acc;
        }
        case Formula::Kind::exists: {
            std::string fresh = "q" + std::to_string(counter++);
            auto it = env.find(f.name());
            std::optional<std::string> saved;
            if (it != env.end()) saved = it->second;
            env[f.name()] = fresh;
            auto sub = distribute(f.body(), env, fresh, counter);
            if (saved)
                env[f.name()] = *saved;
            else
                env.erase(f.name());
            for (auto& p : sub) {
                p.vars.insert(p.vars.begin(), fresh);
                p.parent[fresh] = enclosing;
            }
            return sub;
        }
        default:
            throw std::invalid_argument("to_pp_disjunction: input is not existential-positive");
    }
}

int piece_depth(const Piece& p, const std::string& v) {
    int d = 0;
    for (std::string cur = v; !cur.empty(); cur = p.parent.at(cur)) ++d;
    return d;
}

// identify equated variables, folding the deeper one into its ancestor
void eliminate_equalities(Piece& p) {
    while (!p.eq_atoms.empty()) {
        auto [a, b] = p.eq_atoms.back();
        p.eq_atoms.pop_back();
        if (a == b) continue;
        std::string deep = a;
        std::string kept = b;
        if (piece_depth(p, deep) < piece_depth(p, kept)) std::swap(deep, kept);
        // reparent the removed variable's children one level up
        std::string up = p.parent.at(deep);
        for (auto& [v, par] : p.parent)
            if (par == deep) par = up;
        p.parent.erase(deep);
        p.vars.erase(std::find(p.vars.begin(), p.vars.end(), deep));
        for (auto& [rel, args] : p.rel_atoms)
            for (auto& v : args)
                if (v == deep) v = kept;
        for (auto& [x, y] : p.eq_atoms) {
            if (x == deep) x = kept;
            if (y == deep) y = kept;
        }
    }
}

PPSentence piece_to_sentence(const Piece& p, const Signature& sig) {
    PPSentence psi;
    psi.signature = sig;
    std::map<std::string, int> index;
    for (size_t i = 0; i < p.vars.size(); ++i) index[p.vars[i]] = static_cast<int>(i);
    psi.forest.parent.resize(p.vars.size());
    for (size_t i = 0; i < p.vars.size(); ++i) {
        const std::string& par = p.parent.at(p.vars[i]);
        psi.forest.parent[i] = par.empty() ? -1 : index.at(par);
    }
    for (const auto& [rel, args] : p.rel_atoms) {
        PPAtom atom;
        atom.relation = rel;
        for (const auto& v : args) atom.vars.push_back(index.at(v));
        psi.atoms.push_back(std::move(atom));
    }
    return psi;
}

}  // namespace

std::vector<PPSentence> to_pp_disjunction(const Formula& phi, const Signature& sig) {
    if (!free_variables(phi).empty())
        throw std::invalid_argument("to_pp_disjunction: formula has free variables");
    if (!classify(phi).existential_positive)
        throw std::invalid_argument("to_pp_disjunction: input is not existential-positive");
    const Signature used = infer_signature(phi);
    for (const auto& rel : used.relations()) {
        auto idx = sig.index_of(rel.name);
        if (!idx || sig.relation(*idx).arity != rel.arity)
            throw std::invalid_argument("to_pp_disjunction: formula does not match signature");
    }
    std::map<std::string, std::string> env;
    int counter = 0;
    auto pieces = distribute(phi, env, "", counter);
    std::vector<PPSentence> out;
    for (auto& p : pieces) {
        eliminate_equalities(p);
        out.push_back(piece_to_sentence(p, sig));
    }
    return out;
}

Structure canonical_structure(const PPSentence& psi) {
    if (!psi.valid()) throw std::invalid_argument("canonical_structure: malformed sentence");
    Structure s(psi.signature, psi.var_count());
    for (const auto& atom : psi.atoms)
        s.add_tuple(*psi.signature.index_of(atom.relation), atom.vars);
    return s;
}

PPSentence pp_sentence_of(const Structure& m, const EliminationForest& f) {
    if (!f.valid_for(gaifman(m)))
        throw std::invalid_argument("pp_sentence_of: forest does not fit the structure");
    PPSentence psi;
    psi.signature = m.signature();
    psi.forest = f;
    for (size_t r = 0; r < m.signature().relation_count(); ++r)
        for (const auto& t : m.tuples(r))
            psi.atoms.push_back(PPAtom{m.signature().relation(r).name, t});
    return psi;
}

Formula ep_sentence_of_class(const std::vector<Structure>& mincores) {
    if (mincores.empty())
        throw std::invalid_argument("ep_sentence_of_class: need at least one structure");
    for (const auto& m : mincores)
        if (!(m.signature() == mincores.front().signature()))
            throw std::invalid_argument("ep_sentence_of_class: mixed signatures");
    std::vector<Formula> parts;
    for (const auto& m : mincores) {
        auto td = tree_depth(gaifman(m));
        parts.push_back(pp_sentence_of(m, td.forest).to_formula());
    }
    return Formula::disjunction(std::move(parts));
}

}  // namespace hompres
