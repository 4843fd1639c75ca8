#ifndef DELP_KB_HPP
#define DELP_KB_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace delp {

// Ground literal with strong negation ("~").
struct Literal {
    std::string atom;
    bool negated = false;

    Literal() = default;
    Literal(std::string a, bool n) : atom(std::move(a)), negated(n) {}

    Literal complement() const { return Literal(atom, !negated); }
    std::string text() const { return negated ? "~" + atom : atom; }

    auto operator<=>(const Literal&) const = default;
};

enum class RuleKind { Fact, Strict, Defeasible };

// A fact, strict rule or defeasible rule. The body is kept sorted and
// deduplicated; two rules with the same head, body set and kind are equal.
struct Rule {
    Literal head;
    std::vector<Literal> body;  // sorted, unique
    RuleKind kind = RuleKind::Fact;

    Rule() = default;
    Rule(Literal h, std::vector<Literal> b, RuleKind k);

    bool is_fact() const { return kind == RuleKind::Fact; }
    bool is_strict_part() const { return kind != RuleKind::Defeasible; }
    bool is_presumption() const { return kind == RuleKind::Defeasible && body.empty(); }

    // Text form, also used for canonical ordering: "h.", "h <- a, b." or "h -< a, b."
    std::string text() const;

    auto operator<=>(const Rule&) const = default;
};

using RuleSet = std::vector<Rule>;  // sorted, unique

RuleSet make_rule_set(std::vector<Rule> rules);
RuleSet set_union(const RuleSet& a, const RuleSet& b);
RuleSet set_difference(const RuleSet& a, const RuleSet& b);
RuleSet set_intersection(const RuleSet& a, const RuleSet& b);
bool is_subset(const RuleSet& a, const RuleSet& b);
bool contains_rule(const RuleSet& s, const Rule& r);
std::string rule_set_text(const RuleSet& s);

struct SyntaxError : std::runtime_error {
    int line;
    int column;
    SyntaxError(int l, int c, const std::string& msg);
};

struct PiInconsistent : std::runtime_error {
    Literal literal;
    explicit PiInconsistent(Literal lit);
};

// A program split into the strict part (facts + strict rules) and the
// defeasible part. The strict part must be non-contradictory.
struct Program {
    RuleSet pi;     // facts and strict rules
    RuleSet delta;  // defeasible rules

    Program() = default;
    Program(RuleSet pi_rules, RuleSet delta_rules);  // throws PiInconsistent

    RuleSet all_rules() const { return set_union(pi, delta); }
    std::string text() const;  // parse_program round-trips on this
};

Program parse_program(const std::string& text);

// Literals derivable by forward chaining over the given rules.
std::set<Literal> closure(const RuleSet& rules);

bool derives(const RuleSet& rules, const Literal& goal);
bool is_contradictory(const RuleSet& rules);

// True iff the strict closure of pi + {a, b} contains a complementary pair.
bool disagree(const Literal& a, const Literal& b, const RuleSet& pi);

std::uint64_t fnv1a64(const std::string& s);
std::string short_hash(const std::string& s);  // 16 hex chars

}  // namespace delp

#endif
