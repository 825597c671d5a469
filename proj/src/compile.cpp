#include <hompres/compile.hpp>

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

namespace hompres {

namespace {

void collect_free(const Formula& f, std::map<const Formula*, std::vector<std::string>>& out) {
    std::set<std::string> fv;
    switch (f.kind()) {
        case Formula::Kind::relation:
            fv.insert(f.args().begin(), f.args().end());
            break;
        case Formula::Kind::equality:
            fv.insert(f.args()[0]);
            fv.insert(f.args()[1]);
            break;
        case Formula::Kind::exists:
        case Formula::Kind::forall:
            collect_free(f.body(), out);
            fv.insert(out.at(&f.body()).begin(), out.at(&f.body()).end());
            fv.erase(f.name());
            break;
        default:
            for (const auto& part : f.parts()) {
                collect_free(part, out);
                fv.insert(out.at(&part).begin(), out.at(&part).end());
            }
            break;
    }
    out.emplace(&f, std::vector<std::string>(fv.begin(), fv.end()));
}

}  // namespace

Circuit compile_fo(const Formula& sentence, const Signature& sig, int n) {
    if (n < 1) throw std::invalid_argument("compile_fo: universe size must be >= 1");
    if (!free_variables(sentence).empty())
        throw std::invalid_argument("compile_fo: formula has free variables");
    const Signature used = infer_signature(sentence);
    for (const auto& rel : used.relations()) {
        auto idx = sig.index_of(rel.name);
        if (!idx || sig.relation(*idx).arity != rel.arity)
            throw std::invalid_argument("compile_fo: formula does not match signature");
    }

    const Formula nnf = flatten_connectives(to_nnf(sentence));
    Circuit c(static_cast<int>(sig.encoding_bits(n)));

    std::map<const Formula*, std::vector<std::string>> free_of;
    collect_free(nnf, free_of);

    std::map<std::string, int> env;
    std::map<std::pair<const Formula*, std::vector<int>>, int> memo;

    auto atom_bit = [&](const Formula& atom) {
        Tuple t;
        t.reserve(atom.args().size());
        for (const auto& a : atom.args()) t.push_back(env.at(a));
        return static_cast<int>(encoding_bit_index(sig, n, *sig.index_of(atom.name()), t));
    };

    std::function<int(const Formula&)> build = [&](const Formula& f) -> int {
        std::vector<int> key_env;
        for (const auto& name : free_of.at(&f)) key_env.push_back(env.at(name));
        auto key = std::make_pair(&f, std::move(key_env));
        if (auto it = memo.find(key); it != memo.end()) return it->second;

        int id = -1;
        switch (f.kind()) {
            case Formula::Kind::relation:
                id = c.literal(atom_bit(f));
                break;
            case Formula::Kind::equality:
                id = c.constant(env.at(f.args()[0]) == env.at(f.args()[1]));
                break;
            case Formula::Kind::negation: {
                const Formula& atom = f.body();
                if (atom.kind() == Formula::Kind::relation)
                    id = c.literal(atom_bit(atom), true);
                else if (atom.kind() == Formula::Kind::equality)
                    id = c.constant(env.at(atom.args()[0]) != env.at(atom.args()[1]));
                else
                    throw std::logic_error("compile_fo: negation not at an atom after NNF");
                break;
            }
            case Formula::Kind::conjunction:
            case Formula::Kind::disjunction: {
                std::vector<int> children;
                children.reserve(f.parts().size());
                for (const auto& part : f.parts()) children.push_back(build(part));
                id = c.gate(f.kind() == Formula::Kind::conjunction ? NodeKind::and_gate
                                                                   : NodeKind::or_gate,
                            std::move(children));
                break;
            }
            case Formula::Kind::exists:
            case Formula::Kind::forall: {
                std::optional<int> saved;
                if (auto it = env.find(f.name()); it != env.end()) saved = it->second;
                std::vector<int> options;
                options.reserve(static_cast<size_t>(n));
                for (int v = 0; v < n; ++v) {
                    env[f.name()] = v;
                    options.push_back(build(f.body()));
                }
                if (saved)
                    env[f.name()] = *saved;
                else
                    env.erase(f.name());
                id = c.gate(f.kind() == Formula::Kind::exists ? NodeKind::or_gate
                                                              : NodeKind::and_gate,
                            std::move(options));
                break;
            }
        }
        memo.emplace(std::move(key), id);
        return id;
    };

    c.set_output(build(nnf));
    return c;
}

}  // namespace hompres
