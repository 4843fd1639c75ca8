#include "delp/atc.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

namespace delp {

NotAnArgument::NotAnArgument(const std::string& id)
    : std::runtime_error("argument " + id + " cannot be built from the program") {}

StrictUnsatisfiable::StrictUnsatisfiable(const std::string& line_sig)
    : std::runtime_error("strict preservation unsatisfiable for line " + line_sig) {}

std::string to_string(SelectionCriterionKind k) {
    switch (k) {
        case SelectionCriterionKind::Initial: return "initial";
        case SelectionCriterionKind::RulesPreserving: return "rules-preserving";
        case SelectionCriterionKind::TreeAndRulesPreserving: return "tree-and-rules-preserving";
        case SelectionCriterionKind::SemanticsPreserving: return "semantics-preserving";
    }
    return "?";
}

bool SelectionOrder::has_pair(const std::string& a, const std::string& b) const {
    for (const auto& p : pairs)
        if (p.first == a && p.second == b) return true;
    return false;
}

namespace {

std::vector<std::pair<std::string, std::string>> deeper_first(
    const std::vector<ArgumentStructure>& cons) {
    // cons come in line order, shallow to deep
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < cons.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) pairs.push_back({cons[i].id, cons[j].id});
    return pairs;
}

std::vector<std::pair<std::string, std::string>> shallower_first(
    const std::vector<ArgumentStructure>& cons) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < cons.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) pairs.push_back({cons[j].id, cons[i].id});
    return pairs;
}

}  // namespace

SelectionOrder make_order(SelectionCriterionKind criterion, const ArgumentationLine& line,
                          const DialecticalTree& tree, const Marking& marking,
                          const Program& program, const ComparisonCriterion& crit) {
    SelectionOrder order;
    order.criterion = criterion;
    auto cons = line.con_args();
    switch (criterion) {
        case SelectionCriterionKind::Initial:
            order.pairs = deeper_first(cons);
            break;
        case SelectionCriterionKind::RulesPreserving:
            order.pairs = shallower_first(cons);
            break;
        case SelectionCriterionKind::TreeAndRulesPreserving: {
            auto att = attacking_set(tree, marking);
            bool in_att = false;
            for (const auto& l : att)
                if (l == line) in_att = true;
            std::optional<std::size_t> shared_end;  // shallowest adjacency with the set
            if (in_att) {
                for (const auto& other : att) {
                    if (other == line) continue;
                    auto point = adjacency_point(line, other);
                    if (!point) continue;
                    auto idx = line.index_of(*point);
                    if (!shared_end || *idx < *shared_end) shared_end = *idx;
                }
            }
            if (!shared_end) {
                order.pairs = deeper_first(cons);
                break;
            }
            // deepest con argument within the shared upper segment first
            std::vector<ArgumentStructure> segment_cons;
            for (std::size_t i = 1; i <= *shared_end; i += 2)
                segment_cons.push_back(line.nodes[i]);
            order.pairs = deeper_first(segment_cons);
            break;
        }
        case SelectionCriterionKind::SemanticsPreserving: {
            std::vector<bool> warranted(cons.size(), false);
            for (std::size_t i = 0; i < cons.size(); ++i) {
                DialecticalTree t = build_tree(program, cons[i], crit);
                warranted[i] = is_warranting(t, mark(t));
            }
            for (std::size_t i = 0; i < cons.size(); ++i)
                for (std::size_t j = 0; j < cons.size(); ++j) {
                    if (i == j) continue;
                    if (warranted[i]) continue;
                    if (warranted[j] || j < i)  // deeper non-warranted beats both
                        order.pairs.push_back({cons[i].id, cons[j].id});
                }
            break;
        }
    }
    return order;
}

std::optional<ArgumentStructure> select(const ArgumentationLine& line,
                                        const SelectionOrder& order) {
    auto cons = line.con_args();
    if (cons.empty()) return std::nullopt;  // escape selection
    std::vector<ArgumentStructure> best;
    if (order.pairs.empty()) {
        best = cons;
    } else {
        for (const auto& b : cons) {
            bool beats_someone = false, unbeaten = true;
            for (const auto& c : cons) {
                if (c.id == b.id) continue;
                if (order.has_pair(b.id, c.id)) beats_someone = true;
                if (order.has_pair(c.id, b.id) && !order.has_pair(b.id, c.id)) unbeaten = false;
            }
            if (beats_someone && unbeaten) best.push_back(b);
        }
        if (best.empty()) best = cons;
    }
    // ties: lowest position in the line, then argument id
    const ArgumentStructure* chosen = nullptr;
    std::size_t chosen_pos = line.size();
    for (const auto& b : best) {
        std::size_t pos = *line.index_of(b);
        if (!chosen || pos < chosen_pos || (pos == chosen_pos && b.id < chosen->id)) {
            chosen = &b;
            chosen_pos = pos;
        }
    }
    return *chosen;
}

RuleCriterion RuleCriterion::with_ranking(std::vector<RuleSet> ranking) {
    RuleCriterion c;
    c.ranked = std::move(ranking);
    return c;
}

RuleCriterion RuleCriterion::biased_against(const RuleSet& root_rules) const {
    RuleCriterion c = *this;
    c.avoid = root_rules;
    return c;
}

bool RuleCriterion::less(const RuleSet& a, const RuleSet& b) const {
    auto key = [this](const RuleSet& s) {
        int hits_avoid = set_intersection(s, avoid).empty() ? 0 : 1;
        std::size_t rank = ranked.size();
        for (std::size_t i = 0; i < ranked.size(); ++i)
            if (ranked[i] == s) {
                rank = i;
                break;
            }
        return std::tuple<int, std::size_t, std::size_t, std::string>(hits_avoid, rank, s.size(),
                                                                      rule_set_text(s));
    };
    return key(a) < key(b);
}

namespace {

std::vector<RuleSet> incision_candidates(const ArgumentStructure& arg, bool singletons_only) {
    std::vector<RuleSet> out;
    if (singletons_only) {
        for (const Rule& r : arg.rules) out.push_back({r});
        return out;
    }
    const std::size_t n = arg.rules.size();
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
        RuleSet s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ull << i)) s.push_back(arg.rules[i]);
        out.push_back(make_rule_set(std::move(s)));
    }
    return out;
}

}  // namespace

RuleSet incise(const std::optional<ArgumentStructure>& selected, const RuleCriterion& criterion,
               bool minimally_warranting) {
    if (!selected) return {};
    auto candidates = incision_candidates(*selected, minimally_warranting);
    if (candidates.empty()) throw std::invalid_argument("cannot incise the empty argument");
    RuleSet best = candidates.front();
    for (const RuleSet& c : candidates)
        if (criterion.less(c, best)) best = c;
    return best;
}

std::optional<std::pair<ArgumentStructure, RuleSet>> uppermost_collateral(
    const RuleSet& incision, const ArgumentationLine& line) {
    if (incision.empty()) return std::nullopt;
    for (const ArgumentStructure& arg : line.nodes) {
        RuleSet shared = set_intersection(incision, arg.rules);
        if (!shared.empty()) return std::make_pair(arg, shared);
    }
    return std::nullopt;
}

std::vector<CollateralRecord> collect_collaterals(const DialecticalTree& tree,
                                                  const Selection& selection,
                                                  const std::vector<RuleSet>& incisions) {
    std::vector<CollateralRecord> out;
    for (std::size_t src = 0; src < tree.lines.size(); ++src) {
        if (!selection.chosen[src] || incisions[src].empty()) continue;
        for (std::size_t tgt = 0; tgt < tree.lines.size(); ++tgt) {
            auto hit = uppermost_collateral(incisions[src], tree.lines[tgt]);
            if (hit) out.push_back({src, tgt, hit->first, hit->second});
        }
    }
    return out;
}

namespace {

bool position_at_or_above(const ArgumentationLine& line, const ArgumentStructure& a,
                          const ArgumentStructure& b) {
    // true iff a occurs at or above b in the line
    auto ia = line.index_of(a), ib = line.index_of(b);
    return ia && ib && *ia <= *ib;
}

}  // namespace

PrincipleCheck check_principle(Principle principle, const DialecticalTree& tree,
                               const Selection& selection, const IncisionPlan& plan,
                               const std::vector<ArgumentationLine>& attacking) {
    PrincipleCheck result;
    auto fail = [&](std::size_t src, std::size_t tgt, const ArgumentStructure& arg) {
        result.holds = false;
        result.witness = {src, tgt, arg};
    };
    std::set<std::string> attacking_sigs;
    for (const auto& l : attacking) attacking_sigs.insert(l.signature());

    if (principle == Principle::Cautiousness) {
        std::map<std::string, RuleSet> args_by_id;
        for (const auto& node : tree.nodes) args_by_id[node.arg.id] = node.arg.rules;
        for (std::size_t i = 0; i < tree.lines.size(); ++i) {
            if (!selection.chosen[i]) continue;
            const auto& sel = *selection.chosen[i];
            RuleSet rest = sel.rules;
            for (const auto& [id, rules] : args_by_id)
                if (id != sel.id) rest = set_difference(rest, rules);
            if (rest.empty()) {
                fail(i, i, sel);
                return result;
            }
        }
        return result;
    }

    for (const CollateralRecord& rec : plan.collaterals) {
        const auto& hit_line = tree.lines[rec.hit_line];
        const auto& source_sel = *selection.chosen[rec.source_line];
        switch (principle) {
            case Principle::RootPreservation:
                if (rec.hit_arg.id == tree.root.id) {
                    fail(rec.source_line, rec.hit_line, rec.hit_arg);
                    return result;
                }
                break;
            case Principle::Preservation: {
                bool ok = rec.hit_arg.id != tree.root.id && selection.chosen[rec.hit_line] &&
                          position_at_or_above(hit_line, *selection.chosen[rec.hit_line],
                                               rec.hit_arg);
                if (!ok) {
                    fail(rec.source_line, rec.hit_line, rec.hit_arg);
                    return result;
                }
                break;
            }
            case Principle::StrictPreservation:
                if (!(rec.hit_line == rec.source_line && rec.hit_arg.id == source_sel.id)) {
                    fail(rec.source_line, rec.hit_line, rec.hit_arg);
                    return result;
                }
                break;
            case Principle::Profitability:
            case Principle::WeakProfitability: {
                if (rec.hit_arg.id == source_sel.id) break;  // the incised argument itself
                bool on_selection = selection.chosen[rec.hit_line] &&
                                    selection.chosen[rec.hit_line]->id == rec.hit_arg.id;
                bool in_att = attacking_sigs.count(hit_line.signature()) > 0;
                bool ok = on_selection &&
                          (principle == Principle::WeakProfitability || in_att);
                if (!ok) {
                    fail(rec.source_line, rec.hit_line, rec.hit_arg);
                    return result;
                }
                break;
            }
            case Principle::Cautiousness:
                break;
        }
    }
    return result;
}

void apply_update_rule(SelectionOrder& order, const ArgumentationLine& line,
                       const ArgumentStructure& hit) {
    auto hit_idx = line.index_of(hit);
    if (!hit_idx) throw NotInLine(hit.id);
    std::set<std::string> segment;
    for (std::size_t i = 0; i <= *hit_idx; ++i) segment.insert(line.nodes[i].id);
    std::erase_if(order.pairs, [&](const auto& p) {
        return !segment.count(p.first) || !segment.count(p.second);
    });
}

std::string Trace::text() const {
    std::ostringstream out;
    for (const auto& r : records) out << r << "\n";
    return out.str();
}

namespace {

enum class IncisionStyle { Plain, PreferClean, PreferProfitable };

IncisionStyle style_for(SelectionCriterionKind criterion, LoopVariant variant) {
    if (variant == LoopVariant::StrictPreservation) return IncisionStyle::PreferClean;
    if (variant == LoopVariant::Profitability) return IncisionStyle::PreferProfitable;
    if (criterion == SelectionCriterionKind::RulesPreserving)
        return IncisionStyle::PreferProfitable;
    if (criterion == SelectionCriterionKind::Initial) return IncisionStyle::PreferClean;
    return IncisionStyle::Plain;
}

struct HitStats {
    int profitable = 0;  // other lines whose selection is hit
    int foreign = 0;     // hits on arguments other than the incised one
};

HitStats hit_stats(const RuleSet& incision, std::size_t source_line, const DialecticalTree& tree,
                   const Selection& selection) {
    HitStats st;
    const std::string& self_id = selection.chosen[source_line]->id;
    for (std::size_t i = 0; i < tree.lines.size(); ++i) {
        auto hit = uppermost_collateral(incision, tree.lines[i]);
        if (!hit) continue;
        if (hit->first.id == self_id) continue;
        if (i != source_line && selection.chosen[i] && selection.chosen[i]->id == hit->first.id)
            ++st.profitable;
        else
            ++st.foreign;
    }
    return st;
}

RuleSet choose_incision(const ArgumentStructure& selected, std::size_t source_line,
                        const DialecticalTree& tree, const Selection& selection,
                        const RuleCriterion& criterion, bool minimal, IncisionStyle style) {
    auto candidates = incision_candidates(selected, minimal);
    const RuleSet* best = nullptr;
    HitStats best_stats;
    for (const RuleSet& c : candidates) {
        HitStats st = hit_stats(c, source_line, tree, selection);
        bool better;
        if (!best) {
            better = true;
        } else if (style == IncisionStyle::PreferClean) {
            better = std::tuple(st.foreign + st.profitable, 0) <
                             std::tuple(best_stats.foreign + best_stats.profitable, 0) ||
                     (st.foreign + st.profitable ==
                          best_stats.foreign + best_stats.profitable &&
                      criterion.less(c, *best));
        } else if (style == IncisionStyle::PreferProfitable) {
            auto key = [](const HitStats& h) { return std::tuple(-h.profitable, h.foreign); };
            better = key(st) < key(best_stats) ||
                     (key(st) == key(best_stats) && criterion.less(c, *best));
        } else {
            better = criterion.less(c, *best);
        }
        if (better) {
            best = &c;
            best_stats = st;
        }
    }
    return *best;
}

std::string line_id(std::size_t idx) { return "l" + std::to_string(idx + 1); }

}  // namespace

IncisionResult get_incisions(const DialecticalTree& tree, const Marking& marking,
                             SelectionCriterionKind criterion, const RuleCriterion& rule_criterion,
                             const Program& program, const ComparisonCriterion& crit,
                             const IncisionOptions& options) {
    IncisionResult result;
    RuleCriterion effective = rule_criterion.biased_against(tree.root.rules);
    auto attacking = attacking_set(tree, marking);
    LoopVariant variant = options.variant;
    IncisionStyle style = style_for(criterion, variant);

    result.orders.clear();
    for (const auto& line : tree.lines)
        result.orders.push_back(make_order(criterion, line, tree, marking, program, crit));

    std::map<std::size_t, std::set<std::string>> banned;  // strict loop: per line
    std::size_t bound = 4;
    for (const auto& line : tree.lines) bound += 2 * line.size() + 2;

    for (std::size_t round = 0;; ++round) {
        if (round > bound) {
            if (variant == LoopVariant::Profitability) {
                if (options.trace) options.trace->emit("profitability_unsatisfiable(fallback)");
                IncisionOptions fallback = options;
                fallback.variant = LoopVariant::Preservation;
                auto r = get_incisions(tree, marking, criterion, rule_criterion, program, crit,
                                       fallback);
                r.profit_fallback = true;
                return r;
            }
            throw std::logic_error("selection update loop did not converge");
        }

        result.selection.chosen.clear();
        for (std::size_t i = 0; i < tree.lines.size(); ++i) {
            auto sel = select(tree.lines[i], result.orders[i]);
            if (variant == LoopVariant::StrictPreservation && sel) {
                // skip banned candidates, keeping the order's preference
                auto cons = tree.lines[i].con_args();
                std::erase_if(cons, [&](const ArgumentStructure& c) {
                    return banned[i].count(c.id) > 0;
                });
                if (cons.empty()) throw StrictUnsatisfiable(tree.lines[i].signature());
                if (banned[i].count(sel->id)) {
                    ArgumentationLine pruned = tree.lines[i];
                    // re-select among remaining candidates via a pruned order
                    SelectionOrder order = result.orders[i];
                    std::erase_if(order.pairs, [&](const auto& p) {
                        return banned[i].count(p.first) || banned[i].count(p.second);
                    });
                    const ArgumentStructure* pick = nullptr;
                    std::size_t pick_pos = pruned.size();
                    for (const auto& c : cons) {
                        bool unbeaten = true;
                        for (const auto& d : cons)
                            if (d.id != c.id && order.has_pair(d.id, c.id) &&
                                !order.has_pair(c.id, d.id))
                                unbeaten = false;
                        if (!unbeaten) continue;
                        std::size_t pos = *pruned.index_of(c);
                        if (!pick || pos < pick_pos || (pos == pick_pos && c.id < pick->id)) {
                            pick = &c;
                            pick_pos = pos;
                        }
                    }
                    sel = *pick;
                }
            }
            result.selection.chosen.push_back(sel);
        }

        result.plan.incisions.assign(tree.lines.size(), {});
        for (std::size_t i = 0; i < tree.lines.size(); ++i)
            if (result.selection.chosen[i])
                result.plan.incisions[i] =
                    choose_incision(*result.selection.chosen[i], i, tree, result.selection,
                                    effective, options.minimal_incisions, style);
        result.plan.collaterals =
            collect_collaterals(tree, result.selection, result.plan.incisions);

        if (variant == LoopVariant::StrictPreservation) {
            auto check = check_principle(Principle::StrictPreservation, tree, result.selection,
                                         result.plan, attacking);
            if (!check.holds) {
                auto [src, tgt, arg] = *check.witness;
                banned[src].insert(result.selection.chosen[src]->id);
                if (options.trace)
                    options.trace->emit("update_order(" + line_id(src) + ", " +
                                        result.selection.chosen[src]->id + ")");
                continue;
            }
        } else if (variant == LoopVariant::Profitability) {
            auto check = check_principle(Principle::Profitability, tree, result.selection,
                                         result.plan, attacking);
            if (!check.holds) {
                auto [src, tgt, arg] = *check.witness;
                const auto& victim = tree.lines[tgt];
                bool fixable = false;
                if (auto idx = victim.index_of(arg); idx && victim.is_con_position(*idx)) {
                    // force the victim's selection onto the collateral target
                    SelectionOrder forced;
                    forced.criterion = result.orders[tgt].criterion;
                    for (const auto& c : victim.con_args())
                        if (c.id != arg.id) forced.pairs.push_back({arg.id, c.id});
                    if (!(result.selection.chosen[tgt] &&
                          result.selection.chosen[tgt]->id == arg.id)) {
                        result.orders[tgt] = forced;
                        fixable = true;
                    }
                }
                if (fixable) {
                    if (options.trace)
                        options.trace->emit("update_order(" + line_id(tgt) + ", " + arg.id + ")");
                    continue;
                }
                if (options.trace) options.trace->emit("profitability_unsatisfiable(fallback)");
                IncisionOptions fallback = options;
                fallback.variant = LoopVariant::Preservation;
                auto r = get_incisions(tree, marking, criterion, rule_criterion, program, crit,
                                       fallback);
                r.profit_fallback = true;
                return r;
            }
        }

        auto preservation = check_principle(Principle::Preservation, tree, result.selection,
                                            result.plan, attacking);
        if (preservation.holds) break;
        auto [src, tgt, arg] = *preservation.witness;
        apply_update_rule(result.orders[tgt], tree.lines[tgt], arg);
        if (options.trace)
            options.trace->emit("update_order(" + line_id(tgt) + ", " + arg.id + ")");
    }

    if (options.trace) {
        for (std::size_t i = 0; i < tree.lines.size(); ++i) {
            if (!result.selection.chosen[i]) continue;
            options.trace->emit("select(" + line_id(i) + ", " + result.selection.chosen[i]->id +
                                ")");
            options.trace->emit("incise(" + result.selection.chosen[i]->id + ", " +
                                rule_set_text(result.plan.incisions[i]) + ")");
        }
        for (const auto& rec : result.plan.collaterals) {
            if (rec.hit_line == rec.source_line &&
                rec.hit_arg.id == result.selection.chosen[rec.source_line]->id)
                continue;
            options.trace->emit("collateral(" + line_id(rec.hit_line) + ", " + rec.hit_arg.id +
                                ")");
        }
    }
    return result;
}

DialecticalTree hypothetical_tree(const DialecticalTree& tree, const RuleSet& psi) {
    if (!set_intersection(psi, tree.root.rules).empty())
        throw std::invalid_argument("removal set hits the root argument");
    std::vector<ArgumentationLine> kept;
    for (const ArgumentationLine& line : tree.lines) {
        std::optional<std::size_t> cut;
        for (std::size_t i = 0; i < line.nodes.size(); ++i)
            if (!set_intersection(psi, line.nodes[i].rules).empty()) {
                cut = i;
                break;
            }
        if (!cut) {
            kept.push_back(line);
        } else if (*cut > 0) {
            ArgumentationLine prefix;
            prefix.nodes.assign(line.nodes.begin(), line.nodes.begin() + static_cast<long>(*cut));
            prefix.kinds.assign(line.kinds.begin(),
                                line.kinds.begin() + static_cast<long>(*cut - 1));
            kept.push_back(prefix);
        }
    }
    return DialecticalTree::from_lines(tree.root, std::move(kept));
}

DialecticalTree hypothetical_tree(const Program& program, const ArgumentStructure& root,
                                  const ComparisonCriterion& crit, const RuleSet& psi) {
    return hypothetical_tree(build_tree(program, root, crit), psi);
}

Collaterality collaterality(const ArgumentationLine& line, const DialecticalTree& tree,
                            const Selection& selection, const IncisionPlan& plan) {
    Collaterality out;
    auto idx = tree.line_index(line);
    if (!idx) return out;
    const RuleSet& incision = plan.incisions[*idx];
    if (incision.empty()) return out;
    for (std::size_t i = 0; i < tree.lines.size(); ++i) {
        if (!selection.chosen[i]) continue;
        if (!set_intersection(incision, selection.chosen[i]->rules).empty())
            out.closed.push_back(tree.lines[i]);
    }
    DialecticalTree hyp = hypothetical_tree(tree, incision);
    Marking hyp_marking = mark(hyp);
    std::set<std::string> attacking_sigs;
    for (const auto& hl : hyp.lines)
        if (classify(hl, hyp, hyp_marking) == LineClass::Attacking)
            attacking_sigs.insert(hl.signature());
    for (const auto& candidate : tree.lines) {
        bool open = false;
        for (std::size_t cut = 1; cut < candidate.size() && !open; ++cut) {
            ArgumentationLine prefix;
            prefix.nodes.assign(candidate.nodes.begin(),
                                candidate.nodes.begin() + static_cast<long>(cut));
            prefix.kinds.assign(candidate.kinds.begin(),
                                candidate.kinds.begin() + static_cast<long>(cut - 1));
            if (attacking_sigs.count(prefix.signature())) open = true;
        }
        if (open) out.open.push_back(candidate);
    }
    std::sort(out.open.begin(), out.open.end());
    std::sort(out.closed.begin(), out.closed.end());
    return out;
}

AlterationFixpoint alteration_set(const DialecticalTree& tree, const Marking& marking,
                                  const Selection& selection, const IncisionPlan& plan) {
    AlterationFixpoint result;
    std::vector<ArgumentationLine> current = attacking_set(tree, marking);
    result.stages.push_back(current);
    for (std::size_t step = 0; step <= tree.lines.size(); ++step) {
        std::vector<ArgumentationLine> next = current;
        for (const auto& line : current) {
            auto coll = collaterality(line, tree, selection, plan);
            next.insert(next.end(), coll.open.begin(), coll.open.end());
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next == current) break;
        current = std::move(next);
        result.stages.push_back(current);
    }
    result.lines = current;
    return result;
}

Collaterality context_collaterality(const std::vector<ArgumentationLine>& context,
                                    const DialecticalTree& tree, const Marking& marking,
                                    const Selection& selection, const IncisionPlan& plan) {
    Collaterality out;
    std::vector<std::size_t> ctx_idx;
    for (const auto& line : context) {
        auto idx = tree.line_index(line);
        if (!idx) return out;  // context must live inside the bundle set
        ctx_idx.push_back(*idx);
    }

    out.open = attacking_set(tree, marking);
    for (const auto& line : context) {
        auto coll = collaterality(line, tree, selection, plan);
        out.open.insert(out.open.end(), coll.open.begin(), coll.open.end());
    }
    std::sort(out.open.begin(), out.open.end());
    out.open.erase(std::unique(out.open.begin(), out.open.end()), out.open.end());

    for (const auto& candidate : tree.lines) {
        // uppermost argument of the candidate hit by any context incision
        std::optional<std::size_t> uppermost;
        bool hit_at_uppermost = false;
        for (std::size_t pos = 0; pos < candidate.size() && !uppermost; ++pos) {
            for (std::size_t ci : ctx_idx) {
                if (plan.incisions[ci].empty()) continue;
                if (!set_intersection(plan.incisions[ci], candidate.nodes[pos].rules).empty()) {
                    uppermost = pos;
                    hit_at_uppermost = true;
                    break;
                }
            }
        }
        if (!uppermost || !hit_at_uppermost) continue;
        if (candidate.is_con_position(*uppermost)) out.closed.push_back(candidate);
    }
    std::sort(out.closed.begin(), out.closed.end());
    return out;
}

RuleSet sigma_total(const DialecticalTree& tree, const Selection& selection,
                    const IncisionPlan& plan, const std::vector<ArgumentationLine>& lines) {
    (void)selection;
    RuleSet total;
    for (const auto& line : lines) {
        auto idx = tree.line_index(line);
        if (!idx) continue;
        total = set_union(total, plan.incisions[*idx]);
    }
    return total;
}

IncisionAwareResult incision_aware_alteration_set(const DialecticalTree& tree,
                                                  const Marking& marking,
                                                  const Selection& selection,
                                                  const IncisionPlan& plan,
                                                  const RuleCriterion& rule_criterion) {
    IncisionAwareResult result;
    auto fix = alteration_set(tree, marking, selection, plan);
    const auto& alteration = fix.lines;
    if (alteration.empty()) return result;

    // shortcut: no member is closed by the rest, so the sets coincide
    bool self_closure = false;
    for (const auto& line : alteration) {
        std::vector<ArgumentationLine> rest;
        for (const auto& other : alteration)
            if (!(other == line)) rest.push_back(other);
        auto cc = context_collaterality(rest, tree, marking, selection, plan);
        if (std::find(cc.closed.begin(), cc.closed.end(), line) != cc.closed.end()) {
            self_closure = true;
            break;
        }
    }
    if (!self_closure) {
        result.lines = alteration;
        result.psi = sigma_total(tree, selection, plan, alteration);
        result.shortcut_used = true;
        return result;
    }

    if (alteration.size() > 20) {
        result.lines = alteration;
        result.psi = sigma_total(tree, selection, plan, alteration);
        result.budget_exceeded = true;
        return result;
    }

    const std::size_t n = alteration.size();
    std::vector<std::uint32_t> accepted;
    std::vector<std::uint32_t> by_cardinality;
    for (std::uint32_t set = 0; set < (1u << n); ++set) by_cardinality.push_back(set);
    std::sort(by_cardinality.begin(), by_cardinality.end(), [](std::uint32_t a, std::uint32_t b) {
        int ca = std::popcount(a), cb = std::popcount(b);
        return ca != cb ? ca < cb : a < b;
    });
    for (std::uint32_t set : by_cardinality) {
        bool pruned = false;
        for (std::uint32_t acc : accepted)
            if ((acc & set) == acc) {
                pruned = true;
                break;
            }
        if (pruned) continue;
        std::vector<ArgumentationLine> candidate;
        for (std::size_t i = 0; i < n; ++i)
            if (set & (1u << i)) candidate.push_back(alteration[i]);
        auto cc = context_collaterality(candidate, tree, marking, selection, plan);
        bool covered = std::includes(cc.closed.begin(), cc.closed.end(), cc.open.begin(),
                                     cc.open.end());
        if (covered) accepted.push_back(set);
    }

    auto lines_of = [&](std::uint32_t set) {
        std::vector<ArgumentationLine> out;
        for (std::size_t i = 0; i < n; ++i)
            if (set & (1u << i)) out.push_back(alteration[i]);
        return out;
    };
    std::optional<std::uint32_t> best;
    RuleSet best_psi;
    for (std::uint32_t set : accepted) {
        RuleSet psi = sigma_total(tree, selection, plan, lines_of(set));
        if (!best || rule_criterion.less(psi, best_psi) ||
            (!rule_criterion.less(best_psi, psi) && [&] {
                auto sig = [&](std::uint32_t s) {
                    std::vector<std::string> sigs;
                    for (const auto& l : lines_of(s)) sigs.push_back(l.signature());
                    std::sort(sigs.begin(), sigs.end());
                    return sigs;
                };
                return sig(set) < sig(*best);
            }())) {
            best = set;
            best_psi = psi;
        }
    }
    result.lines = lines_of(*best);
    result.psi = best_psi;
    return result;
}

Program expand(const Program& program, const ArgumentStructure& arg) {
    return Program(program.pi, set_union(program.delta, arg.rules));
}

namespace {

ChangeResult run_contraction(const Program& program, const ArgumentStructure& arg,
                             const ComparisonCriterion& crit, const RuleCriterion& rule_criterion,
                             const ChangeOptions& options) {
    ChangeResult result;
    DialecticalTree tree = build_tree(program, arg, crit);
    Marking marking = mark(tree);
    if (is_warranting(tree, marking)) {
        result.program = program;
        if (options.trace) options.trace->emit("result({})");
        return result;
    }
    IncisionOptions inc_options;
    inc_options.variant = options.variant;
    inc_options.minimal_incisions = options.minimal_incisions;
    inc_options.trace = options.trace;
    auto incisions = get_incisions(tree, marking, options.criterion, rule_criterion, program,
                                   crit, inc_options);
    result.profit_fallback = incisions.profit_fallback;

    if (options.trace) {
        auto fix = alteration_set(tree, marking, incisions.selection, incisions.plan);
        for (std::size_t k = 0; k < fix.stages.size(); ++k) {
            std::ostringstream row;
            row << "fixpoint(" << k << ", {";
            bool first = true;
            for (const auto& line : fix.stages[k]) {
                auto idx = tree.line_index(line);
                if (!first) row << ", ";
                row << line_id(*idx);
                first = false;
            }
            row << "})";
            options.trace->emit(row.str());
        }
    }

    auto aware = incision_aware_alteration_set(tree, marking, incisions.selection, incisions.plan,
                                               rule_criterion);
    result.budget_exceeded = aware.budget_exceeded;
    result.altered = aware.lines;
    result.removed = aware.psi;
    result.program = Program(program.pi, set_difference(program.delta, aware.psi));
    if (options.trace) options.trace->emit("result(" + rule_set_text(aware.psi) + ")");
    return result;
}

}  // namespace

ChangeResult contract(const Program& program, const ArgumentStructure& arg,
                      const ComparisonCriterion& crit, const RuleCriterion& rule_criterion,
                      const ChangeOptions& options) {
    if (!is_valid_argument(program, arg)) throw NotAnArgument(arg.id);
    return run_contraction(program, arg, crit, rule_criterion, options);
}

ChangeResult revise(const Program& program, const ArgumentStructure& arg,
                    const ComparisonCriterion& crit, const RuleCriterion& rule_criterion,
                    const ChangeOptions& options) {
    if (!is_valid_argument(program, arg))
        is_external(program, arg);  // throws InvalidExternal when arg is bogus
    Program expanded = expand(program, arg);
    return contract(expanded, arg, crit, rule_criterion, options);
}

namespace {

bool warranted_argument(const Program& program, const ArgumentStructure& arg,
                        const ComparisonCriterion& crit) {
    if (!is_valid_argument(program, arg)) return false;
    DialecticalTree tree = build_tree(program, arg, crit);
    return is_warranting(tree, mark(tree));
}

}  // namespace

PostulateReport check_postulates(const Program& before, const Program& after,
                                 const ArgumentStructure& arg, const ComparisonCriterion& crit) {
    PostulateReport report;
    report.inclusion =
        before.pi == after.pi && is_subset(after.delta, set_union(before.delta, arg.rules));
    report.success = warranted_argument(after, arg, crit);

    RuleSet removed = set_difference(before.delta, after.delta);
    report.core_retainment = true;
    for (const Rule& phi : removed) {
        auto try_witness = [&](const RuleSet& base) {
            Program with_arg(before.pi, set_union(base, arg.rules));
            if (!warranted_argument(with_arg, arg, crit)) return false;
            RuleSet phi_back = base;
            phi_back.push_back(phi);
            Program with_phi(before.pi, set_union(make_rule_set(phi_back), arg.rules));
            return !warranted_argument(with_phi, arg, crit);
        };
        bool found = try_witness(set_difference(after.delta, arg.rules)) ||
                     try_witness(set_difference(before.delta, removed));
        if (!found && before.delta.size() <= 18) {
            const std::size_t n = before.delta.size();
            for (std::uint64_t mask = 0; mask < (1ull << n) && !found; ++mask) {
                RuleSet base;
                for (std::size_t i = 0; i < n; ++i)
                    if (mask & (1ull << i)) base.push_back(before.delta[i]);
                if (contains_rule(base, phi)) continue;
                found = try_witness(base);
            }
        }
        if (!found) {
            report.core_retainment = false;
            break;
        }
    }
    return report;
}

}  // namespace delp
