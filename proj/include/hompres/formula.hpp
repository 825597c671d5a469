#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <hompres/structure.hpp>

namespace hompres {

// First-order formula over relational atoms and variable equalities.
// Connective nodes are n-ary; builders normalize single-child connectives
// away. Value semantics throughout.
class Formula {
public:
    enum class Kind { relation, equality, conjunction, disjunction, negation, exists, forall };

    static Formula relation(std::string name, std::vector<std::string> args);
    static Formula equality(std::string lhs, std::string rhs);
    static Formula conjunction(std::vector<Formula> parts);
    static Formula disjunction(std::vector<Formula> parts);
    static Formula negation(Formula f);
    static Formula exists(std::string var, Formula body);
    static Formula forall(std::string var, Formula body);

    Kind kind() const { return kind_; }
    // relation name, or the bound variable of a quantifier
    const std::string& name() const { return name_; }
    // relation arguments; equality stores {lhs, rhs}
    const std::vector<std::string>& args() const { return args_; }
    const std::vector<Formula>& parts() const { return parts_; }
    const Formula& body() const { return parts_.front(); }  // negation/quantifier

    bool operator==(const Formula&) const;

private:
    Formula() = default;
    Kind kind_ = Kind::equality;
    std::string name_;
    std::vector<std::string> args_;
    std::vector<Formula> parts_;
};

struct SyntacticClass {
    bool positive = false;              // negation-free
    bool existential = false;           // no foralls; negations only under a quantifier
    bool existential_positive = false;  // both
};

// grammar: EX x. f | ALL x. f | f & f | f | f | ~f | (f) | R(x,..) | x = y
// '~' binds tightest, '&' over '|', both left-assoc, quantifier bodies
// extend maximally right. render() parenthesizes fully.
Formula parse_formula(const std::string& text);
std::string render(const Formula&);

std::set<std::string> free_variables(const Formula&);
int quantifier_rank(const Formula&);
int variable_width(const Formula&);  // max free-variable count over subformulas
SyntacticClass classify(const Formula&);

// relations in first-occurrence order, arities from use; errors on
// conflicting arities
Signature infer_signature(const Formula&);

// environment must cover the free variables; names/arities are checked
// against the structure's signature
bool evaluate(const Formula&, const Structure&, const std::map<std::string, int>& env = {});

// truth table over all structures with the given signature and universe
// size, indexed by encoding (bit i of the index = encoding bit i)
std::vector<bool> model_table(const Formula& sentence, const Signature& sig, int size,
                              int max_bits = 20);

// negation normal form: negations pushed to atoms
Formula to_nnf(const Formula&);
// collapse nested same-kind connectives into one n-ary node
Formula flatten_connectives(const Formula&);
// largest connective block after NNF + flattening (1 when connective-free)
int max_connective_block(const Formula&);

// formula file: optional leading `signature <name>/<arity> ...` line,
// remaining non-comment lines joined into one formula
struct FormulaFile {
    Formula formula;
    std::optional<Signature> declared_signature;
    Signature signature() const;  // declared, else inferred
};
FormulaFile parse_formula_file(const std::string& text);

}  // namespace hompres
