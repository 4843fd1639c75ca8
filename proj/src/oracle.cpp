#include "delp/oracle.hpp"

#include <functional>

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>

namespace delp {
namespace oracle {

BudgetExceeded::BudgetExceeded(const std::string& what)
    : std::runtime_error("oracle budget exceeded: " + what) {}

namespace {

// Derivation re-done from scratch: repeatedly scan for a rule whose body is
// already derived, collecting head texts in a flat map.
std::set<std::string> consequences(const std::vector<Rule>& rules) {
    std::set<std::string> out;
    for (bool grew = true; grew;) {
        grew = false;
        for (const Rule& r : rules) {
            if (out.count(r.head.text())) continue;
            std::size_t have = 0;
            for (const Literal& b : r.body) have += out.count(b.text());
            if (have == r.body.size()) {
                out.insert(r.head.text());
                grew = true;
            }
        }
    }
    return out;
}

bool inconsistent(const std::set<std::string>& derived) {
    for (const std::string& lit : derived)
        if (lit[0] != '~' && derived.count("~" + lit)) return true;
    return false;
}

std::vector<Rule> concat(const RuleSet& a, const RuleSet& b) {
    std::vector<Rule> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

struct BruteContext {
    const Program& program;
    const ComparisonCriterion& crit;
    std::vector<ArgumentStructure> args;
    // defeat edges: defeater index -> (target index, kind)
    std::map<std::size_t, std::vector<std::pair<std::size_t, DefeatKind>>> defeated_by;

    explicit BruteContext(const Program& p, const ComparisonCriterion& c)
        : program(p), crit(c) {
        enumerate_arguments();
        enumerate_defeats();
    }

    void enumerate_arguments() {
        if (program.delta.size() > 22) throw BudgetExceeded("argument enumeration");
        std::set<std::string> goals;
        for (const Rule& r : program.all_rules()) {
            goals.insert(r.head.text());
            goals.insert(r.head.complement().text());
            for (const Literal& b : r.body) {
                goals.insert(b.text());
                goals.insert(b.complement().text());
            }
        }
        const std::size_t n = program.delta.size();
        std::vector<std::set<std::string>> derived_cache(1u << n);
        for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
            RuleSet subset;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1ull << i)) subset.push_back(program.delta[i]);
            derived_cache[mask] = consequences(concat(program.pi, subset));
        }
        for (const std::string& text : goals) {
            Literal goal = text[0] == '~' ? Literal(text.substr(1), true) : Literal(text, false);
            for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
                if (!derived_cache[mask].count(text)) continue;
                if (inconsistent(derived_cache[mask])) continue;
                bool minimal = true;
                for (std::size_t i = 0; i < n && minimal; ++i)
                    if ((mask & (1ull << i)) && derived_cache[mask ^ (1ull << i)].count(text))
                        minimal = false;
                if (!minimal) continue;
                RuleSet subset;
                for (std::size_t i = 0; i < n; ++i)
                    if (mask & (1ull << i)) subset.push_back(program.delta[i]);
                args.emplace_back(subset, goal);
            }
        }
        std::sort(args.begin(), args.end());
        args.erase(std::unique(args.begin(), args.end()), args.end());
    }

    bool subargument_of(std::size_t small, std::size_t big) const {
        return is_subset(args[small].rules, args[big].rules);
    }

    void enumerate_defeats() {
        auto strict_pair_conflicts = [&](const Literal& x, const Literal& y) {
            std::vector<Rule> rules(program.pi.begin(), program.pi.end());
            rules.push_back(Rule(x, {}, RuleKind::Fact));
            rules.push_back(Rule(y, {}, RuleKind::Fact));
            return inconsistent(consequences(rules));
        };
        for (std::size_t d = 0; d < args.size(); ++d) {
            if (args[d].rules.empty()) continue;
            for (std::size_t t = 0; t < args.size(); ++t) {
                if (args[t].rules.empty()) continue;
                for (std::size_t sub = 0; sub < args.size(); ++sub) {
                    if (!subargument_of(sub, t)) continue;
                    if (!strict_pair_conflicts(args[sub].claim, args[d].claim)) continue;
                    std::optional<DefeatKind> kind;
                    if (crit.mode == ComparisonCriterion::Mode::RuleCountHeuristic) {
                        if (args[d].rules.size() < args[sub].rules.size())
                            kind = DefeatKind::Proper;
                        else if (args[d].rules.size() == args[sub].rules.size())
                            kind = DefeatKind::Blocking;
                    } else {
                        bool dw = crit.table.count({args[d].id, args[sub].id}) > 0;
                        bool sw = crit.table.count({args[sub].id, args[d].id}) > 0;
                        if (dw && !sw) kind = DefeatKind::Proper;
                        if (dw && sw) kind = DefeatKind::Blocking;
                    }
                    if (!kind) continue;
                    defeated_by[t].push_back({d, *kind});
                }
            }
        }
        for (auto& [t, ds] : defeated_by) {
            std::sort(ds.begin(), ds.end());
            ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
        }
    }

    bool line_ok(const std::vector<std::size_t>& idxs, const std::vector<DefeatKind>& kinds) {
        std::set<std::size_t> seen(idxs.begin(), idxs.end());
        if (seen.size() != idxs.size()) return false;
        for (std::size_t i = 1; i < kinds.size(); ++i)
            if (kinds[i] == DefeatKind::Blocking && kinds[i - 1] == DefeatKind::Blocking)
                return false;
        std::vector<Rule> pro(program.pi.begin(), program.pi.end());
        std::vector<Rule> con(program.pi.begin(), program.pi.end());
        for (std::size_t i = 0; i < idxs.size(); ++i) {
            auto& side = (i % 2 == 0) ? pro : con;
            side.insert(side.end(), args[idxs[i]].rules.begin(), args[idxs[i]].rules.end());
        }
        return !inconsistent(consequences(pro)) && !inconsistent(consequences(con));
    }

    // Minimax over acceptable continuations: true iff the last argument of the
    // path stays undefeated in the tree rooted at path[0].
    bool undefeated(std::vector<std::size_t>& path, std::vector<DefeatKind>& kinds) {
        std::set<std::size_t> tried;
        for (auto [d, kind] : defeated_by[path.back()]) {
            if (!tried.insert(d).second) continue;
            path.push_back(d);
            kinds.push_back(kind);
            bool extendable = line_ok(path, kinds);
            bool child_undefeated = extendable && undefeated(path, kinds);
            path.pop_back();
            kinds.pop_back();
            if (child_undefeated) return false;
        }
        return true;
    }

    bool warranted(const ArgumentStructure& root) {
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (!(args[i] == root)) continue;
            std::vector<std::size_t> path{i};
            std::vector<DefeatKind> kinds;
            return undefeated(path, kinds);
        }
        return false;
    }
};

}  // namespace

bool brute_warrant(const Program& program, const Literal& goal, const ComparisonCriterion& crit) {
    BruteContext ctx(program, crit);
    for (std::size_t i = 0; i < ctx.args.size(); ++i) {
        if (!(ctx.args[i].claim == goal)) continue;
        std::vector<std::size_t> path{i};
        std::vector<DefeatKind> kinds;
        if (ctx.undefeated(path, kinds)) return true;
    }
    return false;
}

bool brute_warrant_argument(const Program& program, const ArgumentStructure& arg,
                            const ComparisonCriterion& crit) {
    BruteContext ctx(program, crit);
    return ctx.warranted(arg);
}

std::vector<RuleSet> brute_min_removals(const Program& program, const ArgumentStructure& arg,
                                        const ComparisonCriterion& crit) {
    // rules of the con arguments in the tree rooted at arg
    BruteContext ctx(program, crit);
    RuleSet universe;
    {
        std::set<std::size_t> con_args;
        std::vector<std::size_t> path;
        std::vector<DefeatKind> kinds;
        std::size_t root_idx = ctx.args.size();
        for (std::size_t i = 0; i < ctx.args.size(); ++i)
            if (ctx.args[i] == arg) root_idx = i;
        if (root_idx == ctx.args.size()) throw BudgetExceeded("argument not in program");
        std::function<void()> walk = [&]() {
            std::set<std::size_t> tried;
            for (auto [d, kind] : ctx.defeated_by[path.back()]) {
                if (!tried.insert(d).second) continue;
                path.push_back(d);
                kinds.push_back(kind);
                if (ctx.line_ok(path, kinds)) {
                    if (path.size() % 2 == 0) con_args.insert(d);
                    walk();
                }
                path.pop_back();
                kinds.pop_back();
            }
        };
        path.push_back(root_idx);
        walk();
        for (std::size_t c : con_args) universe = set_union(universe, ctx.args[c].rules);
        universe = set_difference(universe, arg.rules);
    }
    if (universe.size() > 16) throw BudgetExceeded("removal enumeration");

    std::vector<RuleSet> minimal;
    const std::size_t n = universe.size();
    std::vector<std::uint64_t> found_masks;
    std::vector<std::uint64_t> by_card;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) by_card.push_back(mask);
    std::sort(by_card.begin(), by_card.end(), [](std::uint64_t a, std::uint64_t b) {
        int ca = std::popcount(a), cb = std::popcount(b);
        return ca != cb ? ca < cb : a < b;
    });
    for (std::uint64_t mask : by_card) {
        bool superset = false;
        for (std::uint64_t f : found_masks)
            if ((f & mask) == f) {
                superset = true;
                break;
            }
        if (superset) continue;
        RuleSet psi;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ull << i)) psi.push_back(universe[i]);
        Program reduced(program.pi, set_difference(program.delta, psi));
        if (brute_warrant_argument(reduced, arg, crit)) {
            found_masks.push_back(mask);
            minimal.push_back(psi);
        }
    }
    return minimal;
}

GeneratedInstance generate(std::uint32_t seed, const SizeParams& params) {
    std::mt19937 rng(seed);
    auto pick_atom = [&](int n) { return std::string(1, static_cast<char>('a' + rng() % n)); };
    auto pick_literal = [&] { return Literal(pick_atom(params.atoms), rng() % 2 == 0); };

    GeneratedInstance out;
    out.seed = seed;
    out.prefs = ComparisonCriterion::rule_count();
    for (int attempt = 0; attempt < 200; ++attempt) {
        RuleSet pi, delta;
        for (int i = 0; i < params.facts; ++i)
            pi.push_back(Rule(pick_literal(), {}, RuleKind::Fact));
        for (int i = 0; i < params.strict_rules; ++i) {
            std::vector<Literal> body{pick_literal()};
            pi.push_back(Rule(pick_literal(), body, RuleKind::Strict));
        }
        for (int i = 0; i < params.defeasible_rules; ++i) {
            std::vector<Literal> body;
            int len = static_cast<int>(rng() % (params.max_body + 1));
            for (int j = 0; j < len; ++j) body.push_back(pick_literal());
            delta.push_back(Rule(pick_literal(), body, RuleKind::Defeasible));
        }
        try {
            out.program = Program(std::move(pi), std::move(delta));
        } catch (const PiInconsistent&) {
            continue;  // rejection sampling keeps the strict part coherent
        }
        // optional external argument: a fresh rule chain for a fresh claim
        Literal claim = pick_literal();
        Rule fresh(claim, {pick_literal()}, RuleKind::Defeasible);
        if (!contains_rule(out.program.delta, fresh)) {
            try {
                Program extended(out.program.pi, set_union(out.program.delta, {fresh}));
                for (const auto& cand : build_arguments(extended, claim))
                    if (contains_rule(cand.rules, fresh)) {
                        out.external = cand;
                        break;
                    }
            } catch (const std::exception&) {
                // leave the external argument unset
            }
        }
        return out;
    }
    throw BudgetExceeded("consistent strict part not found");
}

}  // namespace oracle
}  // namespace delp
