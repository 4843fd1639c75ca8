#ifndef DELP_ATC_HPP
#define DELP_ATC_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "delp/dialectics.hpp"

namespace delp {

struct NotAnArgument : std::runtime_error {
    explicit NotAnArgument(const std::string& id);
};

struct StrictUnsatisfiable : std::runtime_error {
    explicit StrictUnsatisfiable(const std::string& line_sig);
};

enum class SelectionCriterionKind {
    Initial,                 // deeper con arguments first
    RulesPreserving,         // con arguments closer to the root first
    TreeAndRulesPreserving,  // deepest con argument in the shared segment of
                             // adjacent attacking-set lines
    SemanticsPreserving,     // deeper first, avoiding warranted arguments
};

std::string to_string(SelectionCriterionKind k);

// Strict partial order over the con arguments of one line.
struct SelectionOrder {
    SelectionCriterionKind criterion = SelectionCriterionKind::Initial;
    std::vector<std::pair<std::string, std::string>> pairs;  // (better id, worse id)

    bool has_pair(const std::string& a, const std::string& b) const;
};

SelectionOrder make_order(SelectionCriterionKind criterion, const ArgumentationLine& line,
                          const DialecticalTree& tree, const Marking& marking,
                          const Program& program, const ComparisonCriterion& crit);

// Nullopt is the escape selection for lines without con arguments.
std::optional<ArgumentStructure> select(const ArgumentationLine& line,
                                        const SelectionOrder& order);

// Total order over sets of defeasible rules: optional injected ranking first,
// then cardinality, then canonical text. Sets intersecting `avoid` always rank
// after sets that do not.
struct RuleCriterion {
    std::vector<RuleSet> ranked;
    RuleSet avoid;

    static RuleCriterion basic() { return RuleCriterion{}; }
    static RuleCriterion with_ranking(std::vector<RuleSet> ranking);
    RuleCriterion biased_against(const RuleSet& root_rules) const;

    bool less(const RuleSet& a, const RuleSet& b) const;
};

// Least non-empty subset of the selected argument's rules; empty for the
// escape selection. minimally_warranting restricts candidates to singletons.
RuleSet incise(const std::optional<ArgumentStructure>& selected, const RuleCriterion& criterion,
               bool minimally_warranting);

// Highest argument of the line sharing rules with the incision, paired with
// the shared rules.
std::optional<std::pair<ArgumentStructure, RuleSet>> uppermost_collateral(
    const RuleSet& incision, const ArgumentationLine& line);

// Per-line selections; index follows tree.lines.
struct Selection {
    std::vector<std::optional<ArgumentStructure>> chosen;
};

struct CollateralRecord {
    std::size_t source_line;  // line whose incision caused the hit
    std::size_t hit_line;
    ArgumentStructure hit_arg;  // uppermost hit in hit_line
    RuleSet shared;
};

struct IncisionPlan {
    std::vector<RuleSet> incisions;  // by line index; empty for escape lines
    std::vector<CollateralRecord> collaterals;
};

std::vector<CollateralRecord> collect_collaterals(const DialecticalTree& tree,
                                                  const Selection& selection,
                                                  const std::vector<RuleSet>& incisions);

enum class Principle {
    Cautiousness,
    Preservation,
    RootPreservation,
    StrictPreservation,
    Profitability,
    WeakProfitability,
};

struct PrincipleCheck {
    bool holds = true;
    // violating (source line, hit line, hit argument), when holds is false
    std::optional<std::tuple<std::size_t, std::size_t, ArgumentStructure>> witness;
};

PrincipleCheck check_principle(Principle principle, const DialecticalTree& tree,
                               const Selection& selection, const IncisionPlan& plan,
                               const std::vector<ArgumentationLine>& attacking);

// Restricts the line's order to the closed upper segment of `hit`.
void apply_update_rule(SelectionOrder& order, const ArgumentationLine& line,
                       const ArgumentStructure& hit);

struct Trace {
    std::vector<std::string> records;
    void emit(std::string record) { records.push_back(std::move(record)); }
    std::string text() const;
};

enum class LoopVariant { Preservation, StrictPreservation, Profitability };

struct IncisionOptions {
    LoopVariant variant = LoopVariant::Preservation;
    bool minimal_incisions = true;
    Trace* trace = nullptr;
};

struct IncisionResult {
    Selection selection;
    IncisionPlan plan;
    std::vector<SelectionOrder> orders;
    bool profit_fallback = false;  // profitability loop gave up
};

// The selection/incision loop: select and incise every line, test the loop
// variant's principle, update orders on violations, repeat to a fixpoint.
IncisionResult get_incisions(const DialecticalTree& tree, const Marking& marking,
                             SelectionCriterionKind criterion, const RuleCriterion& rule_criterion,
                             const Program& program, const ComparisonCriterion& crit,
                             const IncisionOptions& options = {});

// Tree that remains after removing `psi`: untouched lines plus the proper
// upper segments above each line's uppermost hit argument.
DialecticalTree hypothetical_tree(const DialecticalTree& tree, const RuleSet& psi);
DialecticalTree hypothetical_tree(const Program& program, const ArgumentStructure& root,
                                  const ComparisonCriterion& crit, const RuleSet& psi);

struct Collaterality {
    std::vector<ArgumentationLine> open;
    std::vector<ArgumentationLine> closed;
};

// open: lines some proper upper segment of which is attacking in the
// hypothetical tree for this line's incision; closed: lines whose selection
// meets this line's incision.
Collaterality collaterality(const ArgumentationLine& line, const DialecticalTree& tree,
                            const Selection& selection, const IncisionPlan& plan);

// Least fixed point: attacking set plus lines opened by members.
struct AlterationFixpoint {
    std::vector<ArgumentationLine> lines;
    std::vector<std::vector<ArgumentationLine>> stages;  // stages[k] = l^k
};

AlterationFixpoint alteration_set(const DialecticalTree& tree, const Marking& marking,
                                  const Selection& selection, const IncisionPlan& plan);

Collaterality context_collaterality(const std::vector<ArgumentationLine>& context,
                                    const DialecticalTree& tree, const Marking& marking,
                                    const Selection& selection, const IncisionPlan& plan);

struct IncisionAwareResult {
    std::vector<ArgumentationLine> lines;
    RuleSet psi;
    bool budget_exceeded = false;  // fell back to the full alteration set
    bool shortcut_used = false;
};

IncisionAwareResult incision_aware_alteration_set(const DialecticalTree& tree,
                                                  const Marking& marking,
                                                  const Selection& selection,
                                                  const IncisionPlan& plan,
                                                  const RuleCriterion& rule_criterion);

RuleSet sigma_total(const DialecticalTree& tree, const Selection& selection,
                    const IncisionPlan& plan, const std::vector<ArgumentationLine>& lines);

Program expand(const Program& program, const ArgumentStructure& arg);

struct ChangeOptions {
    SelectionCriterionKind criterion = SelectionCriterionKind::RulesPreserving;
    LoopVariant variant = LoopVariant::Preservation;
    bool minimal_incisions = true;
    Trace* trace = nullptr;
};

struct ChangeResult {
    Program program;
    RuleSet removed;
    std::vector<ArgumentationLine> altered;
    bool profit_fallback = false;
    bool budget_exceeded = false;
};

ChangeResult contract(const Program& program, const ArgumentStructure& arg,
                      const ComparisonCriterion& crit, const RuleCriterion& rule_criterion,
                      const ChangeOptions& options = {});

ChangeResult revise(const Program& program, const ArgumentStructure& arg,
                    const ComparisonCriterion& crit, const RuleCriterion& rule_criterion,
                    const ChangeOptions& options = {});

struct PostulateReport {
    bool inclusion = false;
    bool success = false;
    bool core_retainment = false;
};

PostulateReport check_postulates(const Program& before, const Program& after,
                                 const ArgumentStructure& arg, const ComparisonCriterion& crit);

}  // namespace delp

#endif
