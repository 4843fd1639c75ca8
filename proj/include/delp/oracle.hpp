#ifndef DELP_ORACLE_HPP
#define DELP_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "delp/argumentation.hpp"

namespace delp {
namespace oracle {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what);
};

// Exhaustive warrant recomputation: subset-enumerated arguments, recursive
// line extension with acceptability checks, minimax evaluation. Shares only
// the data types with the engine, none of its derivation or tree code.
bool brute_warrant(const Program& program, const Literal& goal, const ComparisonCriterion& crit);

// Warrant status of one specific argument (the tree rooted at it).
bool brute_warrant_argument(const Program& program, const ArgumentStructure& arg,
                            const ComparisonCriterion& crit);

// All inclusion-minimal rule sets whose removal warrants arg, restricted to
// rules of con arguments of the tree rooted at arg.
std::vector<RuleSet> brute_min_removals(const Program& program, const ArgumentStructure& arg,
                                        const ComparisonCriterion& crit);

struct SizeParams {
    int atoms = 4;
    int facts = 2;
    int strict_rules = 1;
    int defeasible_rules = 8;
    int max_body = 2;
};

struct GeneratedInstance {
    Program program;
    std::uint32_t seed = 0;
    std::optional<ArgumentStructure> external;
    ComparisonCriterion prefs;
};

GeneratedInstance generate(std::uint32_t seed, const SizeParams& params = {});

}  // namespace oracle
}  // namespace delp

#endif
