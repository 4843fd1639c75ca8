#include "delp/argumentation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace delp {

ArgumentStructure::ArgumentStructure(RuleSet r, Literal c)
    : rules(make_rule_set(std::move(r))), claim(std::move(c)) {
    id = short_hash(canonical());
}

std::string ArgumentStructure::canonical() const {
    std::ostringstream out;
    out << claim.text() << " |";
    for (const Rule& r : rules) out << " " << r.text();
    return out.str();
}

MissingPreference::MissingPreference(std::string d, std::string t)
    : std::runtime_error("no preference entry for conflicting pair (" + d + ", " + t + ")"),
      defeater_id(std::move(d)),
      target_id(std::move(t)) {}

InvalidExternal::InvalidExternal(const std::string& msg)
    : std::runtime_error("invalid external argument: " + msg) {}

ComparisonCriterion ComparisonCriterion::rule_count() {
    ComparisonCriterion c;
    c.mode = Mode::RuleCountHeuristic;
    return c;
}

ComparisonCriterion ComparisonCriterion::explicit_table(
    std::set<std::pair<std::string, std::string>> entries, bool strict) {
    ComparisonCriterion c;
    c.mode = Mode::ExplicitTable;
    c.table = std::move(entries);
    c.strict_mode = strict;
    for (const auto& [w, l] : c.table)
        if (w == l) throw std::invalid_argument("reflexive preference entry: " + w);
    return c;
}

bool ComparisonCriterion::prefers(const std::string& winner, const std::string& loser) const {
    return table.count({winner, loser}) > 0;
}

std::optional<DefeatKind> ComparisonCriterion::decide(
    const ArgumentStructure& defeater, const ArgumentStructure& disagreement_subarg) const {
    if (mode == Mode::RuleCountHeuristic) {
        if (defeater.rules.size() < disagreement_subarg.rules.size()) return DefeatKind::Proper;
        if (defeater.rules.size() == disagreement_subarg.rules.size()) return DefeatKind::Blocking;
        return std::nullopt;
    }
    bool d = prefers(defeater.id, disagreement_subarg.id);
    bool s = prefers(disagreement_subarg.id, defeater.id);
    if (d && !s) return DefeatKind::Proper;
    if (d && s) return DefeatKind::Blocking;
    if (!d && s) return std::nullopt;
    if (strict_mode) throw MissingPreference(defeater.id, disagreement_subarg.id);
    return std::nullopt;
}

ComparisonCriterion parse_preferences(const std::string& text, bool strict) {
    std::set<std::pair<std::string, std::string>> entries;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto cut = line.find('%');
        if (cut != std::string::npos) line.erase(cut);
        std::istringstream ls(line);
        std::string kw, winner, over, loser;
        if (!(ls >> kw)) continue;
        if (kw != "prefer" || !(ls >> winner >> over >> loser) || over != "over")
            throw SyntaxError(lineno, 1, "expected 'prefer <id> over <id>.'");
        if (!loser.empty() && loser.back() == '.') loser.pop_back();
        if (loser.empty()) throw SyntaxError(lineno, 1, "missing argument id");
        entries.insert({winner, loser});
    }
    return ComparisonCriterion::explicit_table(std::move(entries), strict);
}

namespace {

// Rules that can possibly take part in a derivation of `goal`: backward
// closure over heads, so the subset enumeration stays small.
RuleSet relevant_rules(const Program& program, const Literal& goal) {
    std::set<Literal> wanted{goal};
    RuleSet all = program.all_rules();
    bool changed = true;
    std::vector<bool> used(all.size(), false);
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (used[i] || !wanted.count(all[i].head)) continue;
            used[i] = true;
            changed = true;
            for (const Literal& b : all[i].body) wanted.insert(b);
        }
    }
    RuleSet out;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (used[i] && all[i].kind == RuleKind::Defeasible) out.push_back(all[i]);
    return make_rule_set(std::move(out));
}

}  // namespace

std::vector<ArgumentStructure> build_arguments(const Program& program, const Literal& goal) {
    RuleSet pool = relevant_rules(program, goal);
    if (pool.size() > 22) throw std::runtime_error("argument enumeration budget exceeded");
    std::vector<ArgumentStructure> found;
    const std::size_t n = pool.size();
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        RuleSet subset;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ull << i)) subset.push_back(pool[i]);
        RuleSet joined = set_union(program.pi, subset);
        if (!derives(joined, goal)) continue;
        if (is_contradictory(joined)) continue;
        bool minimal = true;
        for (std::size_t i = 0; i < subset.size() && minimal; ++i) {
            RuleSet smaller = subset;
            smaller.erase(smaller.begin() + static_cast<long>(i));
            if (derives(set_union(program.pi, smaller), goal)) minimal = false;
        }
        if (minimal) found.emplace_back(subset, goal);
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

std::vector<ArgumentStructure> all_arguments(const Program& program) {
    std::set<Literal> candidates;
    for (const Rule& r : program.all_rules()) {
        candidates.insert(r.head);
        candidates.insert(r.head.complement());
        for (const Literal& b : r.body) {
            candidates.insert(b);
            candidates.insert(b.complement());
        }
    }
    std::vector<ArgumentStructure> out;
    for (const Literal& goal : candidates) {
        auto args = build_arguments(program, goal);
        out.insert(out.end(), args.begin(), args.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<ArgumentStructure> subarguments(const ArgumentStructure& arg, const Program& program) {
    std::set<Literal> claims;
    auto strict_derived = closure(program.pi);
    for (const Literal& lit : strict_derived) claims.insert(lit);
    for (const Rule& r : arg.rules) {
        claims.insert(r.head);
        for (const Literal& b : r.body) claims.insert(b);
    }
    std::vector<ArgumentStructure> out;
    for (const Literal& c : claims) {
        for (const ArgumentStructure& cand : build_arguments(program, c))
            if (is_subset(cand.rules, arg.rules)) out.push_back(cand);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Defeat> defeaters(const Program& program, const ArgumentStructure& target,
                              const ComparisonCriterion& crit) {
    std::vector<Defeat> out;
    if (target.rules.empty()) return out;  // empty arguments have no defeaters
    auto subs = subarguments(target, program);
    auto pool = all_arguments(program);
    for (const ArgumentStructure& sub : subs) {
        for (const ArgumentStructure& cand : pool) {
            if (cand.rules.empty()) continue;
            if (!disagree(sub.claim, cand.claim, program.pi)) continue;
            auto kind = crit.decide(cand, sub);
            if (!kind) continue;
            Defeat d;
            d.defeater = cand;
            d.target = target;
            d.point = sub.claim;
            d.disagreement_sub = sub;
            d.kind = *kind;
            out.push_back(std::move(d));
        }
    }
    std::sort(out.begin(), out.end(), [](const Defeat& a, const Defeat& b) {
        if (a.defeater.canonical() != b.defeater.canonical())
            return a.defeater.canonical() < b.defeater.canonical();
        return a.point < b.point;
    });
    return out;
}

bool is_valid_argument(const Program& program, const ArgumentStructure& arg) {
    if (!is_subset(arg.rules, program.delta)) return false;
    RuleSet joined = set_union(program.pi, arg.rules);
    if (!derives(joined, arg.claim)) return false;
    if (is_contradictory(joined)) return false;
    for (std::size_t i = 0; i < arg.rules.size(); ++i) {
        RuleSet smaller = arg.rules;
        smaller.erase(smaller.begin() + static_cast<long>(i));
        if (derives(set_union(program.pi, smaller), arg.claim)) return false;
    }
    return true;
}

bool is_external(const Program& program, const ArgumentStructure& arg) {
    for (const Rule& r : arg.rules)
        if (r.kind != RuleKind::Defeasible)
            throw InvalidExternal("argument carries a non-defeasible rule");
    Program extended(program.pi, set_union(program.delta, arg.rules));
    if (!is_valid_argument(extended, arg)) {
        RuleSet joined = set_union(program.pi, arg.rules);
        if (is_contradictory(joined))
            throw InvalidExternal("rules contradict the strict part");
        if (!derives(joined, arg.claim))
            throw InvalidExternal("claim " + arg.claim.text() + " is not derivable");
        throw InvalidExternal("rule set is not minimal for " + arg.claim.text());
    }
    return !is_subset(arg.rules, program.delta);
}

}  // namespace delp
