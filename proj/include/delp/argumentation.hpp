#ifndef DELP_ARGUMENTATION_HPP
#define DELP_ARGUMENTATION_HPP

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "delp/kb.hpp"

namespace delp {

// Minimal, consistent set of defeasible rules supporting a claim.
struct ArgumentStructure {
    RuleSet rules;  // sorted, unique
    Literal claim;
    std::string id;  // short hash of canonical()

    ArgumentStructure() = default;
    ArgumentStructure(RuleSet r, Literal c);

    bool empty() const { return rules.empty(); }
    // Canonical form "claim | rule; rule; ..."; total order for all containers.
    std::string canonical() const;

    bool operator==(const ArgumentStructure& o) const { return canonical() == o.canonical(); }
    bool operator<(const ArgumentStructure& o) const { return canonical() < o.canonical(); }
};

enum class DefeatKind { Proper, Blocking };

struct MissingPreference : std::runtime_error {
    std::string defeater_id;
    std::string target_id;
    MissingPreference(std::string d, std::string t);
};

struct InvalidExternal : std::runtime_error {
    explicit InvalidExternal(const std::string& msg);
};

// Decides conflicts between a candidate defeater and the disagreement
// sub-argument of its target. ExplicitTable lists defeats as "prefer" pairs:
// an entry one way is a proper defeat, entries both ways mean equal strength
// (blocking), no entry means the conflict yields no defeat (or an error in
// strict mode). RuleCountHeuristic: fewer defeasible rules wins, ties block.
struct ComparisonCriterion {
    enum class Mode { ExplicitTable, RuleCountHeuristic };

    Mode mode = Mode::RuleCountHeuristic;
    bool strict_mode = false;
    std::set<std::pair<std::string, std::string>> table;  // (winner id, loser id)

    static ComparisonCriterion rule_count();
    static ComparisonCriterion explicit_table(
        std::set<std::pair<std::string, std::string>> entries, bool strict = false);

    bool prefers(const std::string& winner, const std::string& loser) const;
    // nullopt: no defeat. May throw MissingPreference in strict mode.
    std::optional<DefeatKind> decide(const ArgumentStructure& defeater,
                                     const ArgumentStructure& disagreement_subarg) const;
};

// Preference file: lines "prefer <id> over <id>." with '%' comments.
ComparisonCriterion parse_preferences(const std::string& text, bool strict = false);

struct Defeat {
    ArgumentStructure defeater;
    ArgumentStructure target;
    Literal point;                       // counter-argument point
    ArgumentStructure disagreement_sub;  // sub-argument of target at `point`
    DefeatKind kind = DefeatKind::Proper;
};

// All argument structures for `goal`; empty-rule-set argument iff pi derives
// goal on its own.
std::vector<ArgumentStructure> build_arguments(const Program& program, const Literal& goal);

// Every argument of the program, over all derivable claims.
std::vector<ArgumentStructure> all_arguments(const Program& program);

// Arguments whose rule set is contained in arg's rules (includes empty-set
// arguments for strictly derivable claims).
std::vector<ArgumentStructure> subarguments(const ArgumentStructure& arg, const Program& program);

std::vector<Defeat> defeaters(const Program& program, const ArgumentStructure& target,
                              const ComparisonCriterion& crit);

// True iff arg is not contained in delta and is a valid argument of
// (pi, delta + arg.rules). Throws InvalidExternal when it is no argument of
// the extended program at all.
bool is_external(const Program& program, const ArgumentStructure& arg);

bool is_valid_argument(const Program& program, const ArgumentStructure& arg);

}  // namespace delp

#endif
