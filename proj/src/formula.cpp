#include <hompres/formula.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include <hompres/errors.hpp>

namespace hompres {

Formula Formula::relation(std::string name, std::vector<std::string> args) {
    if (name.empty() || args.empty()) throw std::invalid_argument("bad relational atom");
    Formula f;
    f.kind_ = Kind::relation;
    f.name_ = std::move(name);
    f.args_ = std::move(args);
    return f;
}

Formula Formula::equality(std::string lhs, std::string rhs) {
    Formula f;
    f.kind_ = Kind::equality;
    f.args_ = {std::move(lhs), std::move(rhs)};
    return f;
}

Formula Formula::conjunction(std::vector<Formula> parts) {
    if (parts.empty()) throw std::invalid_argument("empty conjunction");
    if (parts.size() == 1) return std::move(parts.front());
    Formula f;
    f.kind_ = Kind::conjunction;
    f.parts_ = std::move(parts);
    return f;
}

Formula Formula::disjunction(std::vector<Formula> parts) {
    if (parts.empty()) throw std::invalid_argument("empty disjunction");
    if (parts.size() == 1) return std::move(parts.front());
    Formula f;
    f.kind_ = Kind::disjunction;
    f.parts_ = std::move(parts);
    return f;
}

Formula Formula::negation(Formula body) {
    Formula f;
    f.kind_ = Kind::negation;
    f.parts_.push_back(std::move(body));
    return f;
}

Formula Formula::exists(std::string var, Formula body) {
    if (var.empty()) throw std::invalid_argument("empty variable name");
    Formula f;
    f.kind_ = Kind::exists;
    f.name_ = std::move(var);
    f.parts_.push_back(std::move(body));
    return f;
}

Formula Formula::forall(std::string var, Formula body) {
    Formula f = exists(std::move(var), std::move(body));
    f.kind_ = Kind::forall;
    return f;
}

bool Formula::operator==(const Formula& o) const {
    return kind_ == o.kind_ && name_ == o.name_ && args_ == o.args_ && parts_ == o.parts_;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
    enum class Type { ident, kw_ex, kw_all, lparen, rparen, dot, comma, eq, tilde, amp, pipe, end };
    Type type;
    std::string text;
    int pos;
};

struct Lexer {
    const std::string& src;
    size_t i = 0;
    Token peeked{Token::Type::end, "", -1};
    bool has_peeked = false;

    explicit Lexer(const std::string& s) : src(s) {}

    Token next() {
        if (has_peeked) {
            has_peeked = false;
            return peeked;
        }
        while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
        int pos = static_cast<int>(i);
        if (i >= src.size()) return {Token::Type::end, "", pos};
        char c = src[i];
        auto simple = [&](Token::Type t) {
            ++i;
            return Token{t, std::string(1, c), pos};
        };
        switch (c) {
            case '(': return simple(Token::Type::lparen);
            case ')': return simple(Token::Type::rparen);
            case '.': return simple(Token::Type::dot);
            case ',': return simple(Token::Type::comma);
            case '=': return simple(Token::Type::eq);
            case '~': return simple(Token::Type::tilde);
            case '&': return simple(Token::Type::amp);
            case '|': return simple(Token::Type::pipe);
            default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = i;
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                                      src[i] == '_' || src[i] == '\''))
                ++i;
            std::string word = src.substr(start, i - start);
            if (word == "EX") return {Token::Type::kw_ex, word, pos};
            if (word == "ALL") return {Token::Type::kw_all, word, pos};
            return {Token::Type::ident, word, pos};
        }
        throw parse_error("unexpected character '" + std::string(1, c) + "' at offset " +
                          std::to_string(pos));
    }

    const Token& peek() {
        if (!has_peeked) {
            peeked = next();
            has_peeked = true;
        }
        return peeked;
    }

    Token expect(Token::Type t, const char* what) {
        Token tok = next();
        if (tok.type != t)
            throw parse_error(std::string("expected ") + what + " at offset " +
                              std::to_string(tok.pos));
        return tok;
    }
};

struct Parser {
    Lexer lex;
    explicit Parser(const std::string& s) : lex(s) {}

    Formula parse() {
        Formula f = disjunction();
        Token t = lex.next();
        if (t.type != Token::Type::end)
            throw parse_error("trailing input at offset " + std::to_string(t.pos));
        return f;
    }

    Formula disjunction() {
        std::vector<Formula> parts;
        parts.push_back(conjunction());
        while (lex.peek().type == Token::Type::pipe) {
            lex.next();
            parts.push_back(conjunction());
        }
        return Formula::disjunction(std::move(parts));
    }

    Formula conjunction() {
        std::vector<Formula> parts;
        parts.push_back(unary());
        while (lex.peek().type == Token::Type::amp) {
            lex.next();
            parts.push_back(unary());
        }
        return Formula::conjunction(std::move(parts));
    }

    Formula unary() {
        const Token& t = lex.peek();
        switch (t.type) {
            case Token::Type::tilde:
                lex.next();
                return Formula::negation(unary());
            case Token::Type::kw_ex:
            case Token::Type::kw_all: {
                bool ex = t.type == Token::Type::kw_ex;
                lex.next();
                Token var = lex.expect(Token::Type::ident, "variable");
                lex.expect(Token::Type::dot, "'.'");
                Formula body = disjunction();  // body extends maximally right
                return ex ? Formula::exists(var.text, std::move(body))
                          : Formula::forall(var.text, std::move(body));
            }
            case Token::Type::lparen: {
                lex.next();
                Formula f = disjunction();
                lex.expect(Token::Type::rparen, "')'");
                return f;
            }
            case Token::Type::ident: return atom();
            default:
                throw parse_error("expected a formula at offset " + std::to_string(t.pos));
        }
    }

    Formula atom() {
        Token name = lex.expect(Token::Type::ident, "identifier");
        if (lex.peek().type == Token::Type::lparen) {
            lex.next();
            std::vector<std::string> args;
            args.push_back(lex.expect(Token::Type::ident, "variable").text);
            while (lex.peek().type == Token::Type::comma) {
                lex.next();
                args.push_back(lex.expect(Token::Type::ident, "variable").text);
            }
            lex.expect(Token::Type::rparen, "')'");
            return Formula::relation(name.text, std::move(args));
        }
        lex.expect(Token::Type::eq, "'=' or '('");
        Token rhs = lex.expect(Token::Type::ident, "variable");
        return Formula::equality(name.text, rhs.text);
    }
};

}  // namespace

Formula parse_formula(const std::string& text) { return Parser(text).parse(); }

std::string render(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::relation: {
            std::string out = f.name() + "(";
            for (size_t i = 0; i < f.args().size(); ++i)
                out += (i ? ", " : "") + f.args()[i];
            return out + ")";
        }
        case Formula::Kind::equality: return f.args()[0] + " = " + f.args()[1];
        case Formula::Kind::negation: return "~(" + render(f.body()) + ")";
        case Formula::Kind::exists: return "EX " + f.name() + ". (" + render(f.body()) + ")";
        case Formula::Kind::forall: return "ALL " + f.name() + ". (" + render(f.body()) + ")";
        case Formula::Kind::conjunction:
        case Formula::Kind::disjunction: {
            const char* op = f.kind() == Formula::Kind::conjunction ? " & " : " | ";
            std::string out;
            for (size_t i = 0; i < f.parts().size(); ++i) {
                if (i) out += op;
                out += "(" + render(f.parts()[i]) + ")";
            }
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- metrics

std::set<std::string> free_variables(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::relation:
        case Formula::Kind::equality:
            return {f.args().begin(), f.args().end()};
        case Formula::Kind::negation: return free_variables(f.body());
        case Formula::Kind::exists:
        case Formula::Kind::forall: {
            auto vars = free_variables(f.body());
            vars.erase(f.name());
            return vars;
        }
        case Formula::Kind::conjunction:
        case Formula::Kind::disjunction: {
            std::set<std::string> vars;
            for (const auto& p : f.parts()) {
                auto sub = free_variables(p);
                vars.insert(sub.begin(), sub.end());
            }
            return vars;
        }
    }
    throw std::logic_error("unreachable");
}

int quantifier_rank(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::relation:
        case Formula::Kind::equality: return 0;
        case Formula::Kind::negation: return quantifier_rank(f.body());
        case Formula::Kind::exists:
        case Formula::Kind::forall: return 1 + quantifier_rank(f.body());
        case Formula::Kind::conjunction:
        case Formula::Kind::disjunction: {
            int best = 0;
            for (const auto& p : f.parts()) best = std::max(best, quantifier_rank(p));
            return best;
        }
    }
    throw std::logic_error("unreachable");
}

int variable_width(const Formula& f) {
    int width = static_cast<int>(free_variables(f).size());
    switch (f.kind()) {
        case Formula::Kind::relation:
        case Formula::Kind::equality: break;
        case Formula::Kind::negation:
        case Formula::Kind::exists:
        case Formula::Kind::forall:
            width = std::max(width, variable_width(f.body()));
            break;
        case Formula::Kind::conjunction:
        case Formula::Kind::disjunction:
            for (const auto& p : f.parts()) width = std::max(width, variable_width(p));
            break;
    }
    return width;
}

namespace {

bool negation_free(const Formula& f) {
    if (f.kind() == Formula::Kind::negation) return false;
    for (const auto& p : f.parts())
        if (!negation_free(p)) return false;
    return true;
}

// no foralls anywhere; negations only strictly below some quantifier
bool existential_shape(const Formula& f, bool under_quantifier) {
    switch (f.kind()) {
        case Formula::Kind::forall: return false;
        case Formula::Kind::negation:
            return under_quantifier && existential_shape(f.body(), under_quantifier);
        case Formula::Kind::exists: return existential_shape(f.body(), true);
        default:
            for (const auto& p : f.parts())
                if (!existential_shape(p, under_quantifier)) return false;
            return true;
    }
}

}  // namespace

SyntacticClass classify(const Formula& f) {
    SyntacticClass c;
    c.positive = negation_free(f);
    c.existential = existential_shape(f, false);
    c.existential_positive = c.positive && c.existential;
    return c;
}

Signature infer_signature(const Formula& f) {
    std::vector<Relation> rels;
    auto walk = [&](auto&& self, const Formula& g) -> void {
        if (g.kind() == Formula::Kind::relation) {
            for (const auto& r : rels)
                if (r.name == g.name()) {
                    if (r.arity != static_cast<int>(g.args().size()))
                        throw std::invalid_argument("relation '" + g.name() +
                                                    "' used with conflicting arities");
                    return;
                }
            rels.push_back({g.name(), static_cast<int>(g.args().size())});
            return;
        }
        for (const auto& p : g.parts()) self(self, p);
    };
    walk(walk, f);
    return Signature(std::move(rels));
}

// ---------------------------------------------------------------- semantics

namespace {

bool eval_rec(const Formula& f, const Structure& a, std::map<std::string, int>& env) {
    switch (f.kind()) {
        case Formula::Kind::relation: {
            auto rel = a.signature().index_of(f.name());
            if (!rel) throw std::invalid_argument("unknown relation '" + f.name() + "'");
            if (a.signature().relation(*rel).arity != static_cast<int>(f.args().size()))
                throw std::invalid_argument("arity mismatch for '" + f.name() + "'");
            Tuple t;
            t.reserve(f.args().size());
            for (const auto& v : f.args()) {
                auto it = env.find(v);
                if (it == env.end())
                    throw std::invalid_argument("unassigned variable '" + v + "'");
                t.push_back(it->second);
            }
            return a.has_tuple(*rel, t);
        }
        case Formula::Kind::equality: {
            auto l = env.find(f.args()[0]), r = env.find(f.args()[1]);
            if (l == env.end() || r == env.end())
                throw std::invalid_argument("unassigned variable in equality");
            return l->second == r->second;
        }
        case Formula::Kind::negation: return !eval_rec(f.body(), a, env);
        case Formula::Kind::conjunction:
            for (const auto& p : f.parts())
                if (!eval_rec(p, a, env)) return false;
            return true;
        case Formula::Kind::disjunction:
            for (const auto& p : f.parts())
                if (eval_rec(p, a, env)) return true;
            return false;
        case Formula::Kind::exists:
        case Formula::Kind::forall: {
            bool want = f.kind() == Formula::Kind::exists;
            auto it = env.find(f.name());
            std::optional<int> saved;
            if (it != env.end()) saved = it->second;
            bool result = !want;
            for (int x = 0; x < a.size(); ++x) {
                env[f.name()] = x;
                if (eval_rec(f.body(), a, env) == want) {
                    result = want;
                    break;
                }
            }
            if (saved)
                env[f.name()] = *saved;
            else
                env.erase(f.name());
            return result;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

bool evaluate(const Formula& f, const Structure& a, const std::map<std::string, int>& env) {
    for (const auto& [name, value] : env)
        if (value < 0 || value >= a.size())
            throw std::invalid_argument("environment value out of range for '" + name + "'");
    auto vars = free_variables(f);
    for (const auto& v : vars)
        if (!env.count(v)) throw std::invalid_argument("free variable '" + v + "' unassigned");
    std::map<std::string, int> scratch = env;
    return eval_rec(f, a, scratch);
}

std::vector<bool> model_table(const Formula& sentence, const Signature& sig, int size,
                              int max_bits) {
    if (!free_variables(sentence).empty())
        throw std::invalid_argument("model tables require a sentence");
    uint64_t bits = sig.encoding_bits(size);
    if (bits > static_cast<uint64_t>(max_bits))
        throw bound_error("model table needs " + std::to_string(bits) + " bits, budget is " +
                          std::to_string(max_bits));
    std::vector<bool> table(1ull << bits);
    for (uint64_t idx = 0; idx < table.size(); ++idx)
        table[idx] = evaluate(sentence, structure_from_index(sig, size, idx));
    return table;
}

// ---------------------------------------------------------------- normal forms

namespace {

Formula nnf_rec(const Formula& f, bool negate) {
    switch (f.kind()) {
        case Formula::Kind::relation:
        case Formula::Kind::equality:
            return negate ? Formula::negation(f) : f;
        case Formula::Kind::negation: return nnf_rec(f.body(), !negate);
        case Formula::Kind::conjunction:
        case Formula::Kind::disjunction: {
            bool conj = (f.kind() == Formula::Kind::conjunction) != negate;
            std::vector<Formula> parts;
            parts.reserve(f.parts().size());
            for (const auto& p : f.parts()) parts.push_back(nnf_rec(p, negate));
            return conj ? Formula::conjunction(std::move(parts))
                        : Formula::disjunction(std::move(parts));
        }
        case Formula::Kind::exists:
        case Formula::Kind::forall: {
            bool ex = (f.kind() == Formula::Kind::exists) != negate;
            Formula body = nnf_rec(f.body(), negate);
            return ex ? Formula::exists(f.name(), std::move(body))
                      : Formula::forall(f.name(), std::move(body));
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf_rec(f, false); }

Formula flatten_connectives(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::relation:
        case Formula::Kind::equality: return f;
        case Formula::Kind::negation: return Formula::negation(flatten_connectives(f.body()));
        case Formula::Kind::exists:
            return Formula::exists(f.name(), flatten_connectives(f.body()));
        case Formula::Kind::forall:
            return Formula::forall(f.name(), flatten_connectives(f.body()));
        case Formula::Kind::conjunction:
        case Formula::Kind::disjunction: {
            std::vector<Formula> parts;
            for (const auto& p : f.parts()) {
                Formula q = flatten_connectives(p);
                if (q.kind() == f.kind()) {
                    for (const auto& inner : q.parts()) parts.push_back(inner);
                } else {
                    parts.push_back(std::move(q));
                }
            }
            return f.kind() == Formula::Kind::conjunction
                       ? Formula::conjunction(std::move(parts))
                       : Formula::disjunction(std::move(parts));
        }
    }
    throw std::logic_error("unreachable");
}

int max_connective_block(const Formula& f) {
    Formula g = flatten_connectives(to_nnf(f));
    int best = 1;
    auto walk = [&](auto&& self, const Formula& h) -> void {
        if (h.kind() == Formula::Kind::conjunction || h.kind() == Formula::Kind::disjunction)
            best = std::max(best, static_cast<int>(h.parts().size()));
        for (const auto& p : h.parts()) self(self, p);
    };
    walk(walk, g);
    return best;
}

// ---------------------------------------------------------------- files

Signature FormulaFile::signature() const {
    return declared_signature ? *declared_signature : infer_signature(formula);
}

FormulaFile parse_formula_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::optional<Signature> declared;
    std::string body;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "signature" && body.empty()) {
            if (declared) throw parse_error("duplicate 'signature' line", line_no);
            // reuse the structure-file syntax for the directive
            std::string rest, item;
            while (ls >> item) rest += " " + item;
            declared = parse_structure("signature" + rest + "\nuniverse 1\n").signature();
        } else {
            body += line + "\n";
        }
    }
    if (body.empty()) throw parse_error("missing formula");
    FormulaFile out{parse_formula(body), declared};
    const Signature used = infer_signature(out.formula);
    if (declared)
        for (const auto& r : used.relations()) {
            auto idx = declared->index_of(r.name);
            if (!idx)
                throw parse_error("formula uses undeclared relation '" + r.name + "'");
            if (declared->relation(*idx).arity != r.arity)
                throw parse_error("declared arity mismatch for '" + r.name + "'");
        }
    return out;
}

}  // namespace hompres
