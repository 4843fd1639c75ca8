#ifndef DELP_TEST_FIXTURES_HPP
#define DELP_TEST_FIXTURES_HPP

// Shared test programs: the running example used across the suites plus
// small synthetic trees that pin down line/marking/alteration behavior.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "delp/argumentation.hpp"
#include "delp/atc.hpp"
#include "delp/dialectics.hpp"

namespace fixtures {

inline delp::Literal lit(const std::string& text) {
    if (!text.empty() && text[0] == '~') return delp::Literal(text.substr(1), true);
    return delp::Literal(text, false);
}

inline delp::Rule fact(const std::string& head) {
    return delp::Rule(lit(head), {}, delp::RuleKind::Fact);
}

inline delp::Rule srule(const std::string& head, const std::vector<std::string>& body) {
    std::vector<delp::Literal> b;
    for (const auto& s : body) b.push_back(lit(s));
    return delp::Rule(lit(head), b, delp::RuleKind::Strict);
}

inline delp::Rule drule(const std::string& head, const std::vector<std::string>& body = {}) {
    std::vector<delp::Literal> b;
    for (const auto& s : body) b.push_back(lit(s));
    return delp::Rule(lit(head), b, delp::RuleKind::Defeasible);
}

inline delp::ArgumentStructure arg(const std::string& claim, std::vector<delp::Rule> rules) {
    return delp::ArgumentStructure(delp::make_rule_set(std::move(rules)), lit(claim));
}

inline delp::ArgumentationLine line(const std::vector<delp::ArgumentStructure>& args,
                                    const std::vector<delp::DefeatKind>& kinds = {}) {
    delp::ArgumentationLine l;
    l.nodes = args;
    if (kinds.empty())
        l.kinds.assign(args.size() > 0 ? args.size() - 1 : 0, delp::DefeatKind::Proper);
    else
        l.kinds = kinds;
    return l;
}

// ---------------------------------------------------------------------------
// Running example: base program, its argument zoo and the defeat table that
// yields the three-line tree for the externally supplied argument for `a`.
struct RunningExample {
    delp::Program p1;        // base program
    delp::Program p3;        // p1 plus the rule "a -< x."
    delp::ArgumentStructure A, A2, B1, B2, B3, B4, B5, B6, B7, X1, W1, W2, W3;
    delp::ComparisonCriterion crit;

    RunningExample() {
        p1 = delp::parse_program(
            "t. z. p <- t.\n"
            "~a -< y.  y -< x.  x -< z.\n"
            "y -< p.   a -< w.  w -< y.\n"
            "~w -< t.  ~x -< t. x -< p.\n");
        p3 = delp::Program(p1.pi, delp::set_union(p1.delta, {drule("a", {"x"})}));

        A = arg("a", {drule("a", {"x"}), drule("x", {"z"})});
        A2 = arg("a", {drule("a", {"x"}), drule("x", {"p"})});
        B1 = arg("~a", {drule("~a", {"y"}), drule("y", {"x"}), drule("x", {"z"})});
        B2 = arg("~a", {drule("~a", {"y"}), drule("y", {"p"})});
        B3 = arg("a", {drule("a", {"w"}), drule("w", {"y"}), drule("y", {"p"})});
        B4 = arg("~w", {drule("~w", {"t"})});
        B5 = arg("~x", {drule("~x", {"t"})});
        B6 = arg("x", {drule("x", {"p"})});
        B7 = arg("~a", {drule("~a", {"y"}), drule("y", {"x"}), drule("x", {"p"})});
        X1 = arg("x", {drule("x", {"z"})});
        W1 = arg("w", {drule("w", {"y"}), drule("y", {"p"})});
        W2 = arg("w", {drule("w", {"y"}), drule("y", {"x"}), drule("x", {"z"})});
        W3 = arg("w", {drule("w", {"y"}), drule("y", {"x"}), drule("x", {"p"})});

        crit = delp::ComparisonCriterion::explicit_table({
            {B1.id, A.id},
            {B2.id, A.id},
            {B5.id, X1.id},
            {B3.id, B2.id},
            {B4.id, W1.id},
            {B6.id, B5.id},
            // keep the remaining candidate roots for `a` non-warranting
            {B1.id, A2.id},
            {B4.id, W2.id},
            {B4.id, W3.id},
        });
    }

    std::string prefs_text() const {
        std::string out;
        for (const auto& [w, l] : crit.table) out += "prefer " + w + " over " + l + ".\n";
        return out;
    }
};

// ---------------------------------------------------------------------------
// Second revision example: the enlarged program whose temporary tree for the
// new argument for ~b has two attacking lines through a shared con argument.
struct SecondRevisionExample {
    delp::Program program;
    delp::ArgumentStructure A;  // external: {~b -< p} for ~b
    delp::ArgumentStructure B1, B2, B3, B4, B5, B6, B10, SubNA;
    delp::ComparisonCriterion crit;

    SecondRevisionExample() {
        RunningExample base;
        program = delp::Program(
            base.p1.pi,
            delp::set_union(base.p1.delta,
                            delp::make_rule_set({drule("a", {"x"}), drule("x", {"z"}),
                                                 drule("b", {"~a"}), drule("~a", {"p"}),
                                                 drule("~b", {"t"}), drule("b", {"z"})})));
        A = arg("~b", {drule("~b", {"p"})});
        B1 = arg("b", {drule("b", {"z"})});
        B2 = arg("~b", {drule("~b", {"t"})});
        B3 = arg("b", {drule("b", {"~a"}), drule("~a", {"p"})});
        SubNA = arg("~a", {drule("~a", {"p"})});
        B4 = arg("a", {drule("a", {"x"}), drule("x", {"z"})});
        B5 = arg("~a", {drule("~a", {"y"}), drule("y", {"x"}), drule("x", {"z"})});
        B6 = arg("a", {drule("a", {"w"}), drule("w", {"y"}), drule("y", {"p"})});
        B10 = arg("~w", {drule("~w", {"t"})});
        delp::ArgumentStructure W = arg("w", {drule("w", {"y"}), drule("y", {"p"})});
        crit = delp::ComparisonCriterion::explicit_table({
            {B1.id, A.id},
            {B2.id, B1.id},
            {B3.id, B2.id},
            {B4.id, SubNA.id},
            {B6.id, SubNA.id},
            {B5.id, B4.id},
            {B10.id, W.id},
        });
    }

    std::string prefs_text() const {
        std::string out;
        for (const auto& [w, l] : crit.table) out += "prefer " + w + " over " + l + ".\n";
        return out;
    }
};

// ---------------------------------------------------------------------------
// Abstract tree realizations. Arguments alternate between claims `a` and
// `~a`, each supported by its own presumptions, so every defeat is gated by
// one explicit table entry per tree edge.

// Warranting four-line tree with two blocking pairs; line [A,B4,B5,B1,B2]
// is rejected for consecutive blocking defeats.
struct BundleExample {
    delp::Program program;
    delp::ArgumentStructure A, B1, B2, B3, B4, B5;
    delp::ComparisonCriterion crit;

    BundleExample() {
        program = delp::parse_program(
            "t0.\n"
            "a -< t0. ~a -< u1. a -< u2. a -< u3. ~a -< u4. a -< u5.\n"
            "u1 -< . u2 -< . u3 -< . u4 -< . u5 -< .\n");
        A = arg("a", {drule("a", {"t0"})});
        B1 = arg("~a", {drule("~a", {"u1"}), drule("u1")});
        B2 = arg("a", {drule("a", {"u2"}), drule("u2")});
        B3 = arg("a", {drule("a", {"u3"}), drule("u3")});
        B4 = arg("~a", {drule("~a", {"u4"}), drule("u4")});
        B5 = arg("a", {drule("a", {"u5"}), drule("u5")});
        crit = delp::ComparisonCriterion::explicit_table({
            {B1.id, A.id},
            {B4.id, A.id},
            {B3.id, B1.id},
            {B5.id, B4.id},
            {B5.id, B1.id},
            {B1.id, B5.id},  // blocking pair
            {B2.id, B1.id},
            {B1.id, B2.id},  // blocking pair
        });
    }
};

// Three attacking lines; two of them adjacent to the first at a U-marked
// argument, so the attacking set is the singleton {[A,B1,B2,B7]}.
struct AdjacencyExample {
    delp::Program program;
    delp::ArgumentStructure A, B1, B2, B4, B5, B6, B7;
    delp::ComparisonCriterion crit;

    AdjacencyExample() {
        program = delp::parse_program(
            "t0.\n"
            "a -< t0. ~a -< u1. a -< u2. a -< u4. ~a -< u5. ~a -< u6. ~a -< u7.\n"
            "u1 -< . u2 -< . u4 -< . u5 -< . u6 -< . u7 -< .\n");
        A = arg("a", {drule("a", {"t0"})});
        B1 = arg("~a", {drule("~a", {"u1"}), drule("u1")});
        B2 = arg("a", {drule("a", {"u2"}), drule("u2")});
        B4 = arg("a", {drule("a", {"u4"}), drule("u4")});
        B5 = arg("~a", {drule("~a", {"u5"}), drule("u5")});
        B6 = arg("~a", {drule("~a", {"u6"}), drule("u6")});
        B7 = arg("~a", {drule("~a", {"u7"}), drule("u7")});
        crit = delp::ComparisonCriterion::explicit_table({
            {B1.id, A.id},
            {B2.id, B1.id},
            {B4.id, B1.id},
            {B7.id, B2.id},
            {B5.id, B4.id},
            {B6.id, B4.id},
        });
    }
};

// Seven-line tree with shared presumptions f1..f6 across branches; drives the
// collaterality tables, the alteration fixpoint and the incision-aware set.
struct AlterationExample {
    delp::Program program;
    delp::ArgumentStructure A;
    delp::ArgumentStructure B1, B2, B3, B4, B5, B6, B7;
    delp::ArgumentStructure C4, C5, C6, C7;
    delp::Rule phi1, phi2, phi3, phi4, phi5, phi6;
    delp::ComparisonCriterion crit;
    delp::RuleCriterion rules;

    AlterationExample() {
        phi1 = drule("f1");
        phi2 = drule("f2");
        phi3 = drule("f3");
        phi4 = drule("f4");
        phi5 = drule("f5");
        phi6 = drule("f6");
        program = delp::parse_program(
            "ta.\n"
            "a -< ta.\n"
            "~a -< f1. ~a -< f1, f2. ~a -< f2, f3.\n"
            "~a -< f4. ~a -< f3. ~a -< f4, f6. ~a -< f5.\n"
            "a -< f2. a -< f4. a -< f2, g6. a -< f6.\n"
            "~a -< n4. ~a -< n5. ~a -< n6. ~a -< n7.\n"
            "a -< m4. a -< m5. a -< m6. a -< m7.\n"
            "f1 -< . f2 -< . f3 -< . f4 -< . f5 -< . f6 -< . g6 -< .\n"
            "n4 -< . n5 -< . n6 -< . n7 -< .\n"
            "m4 -< . m5 -< . m6 -< . m7 -< .\n");
        A = arg("a", {drule("a", {"ta"})});
        B1 = arg("~a", {drule("~a", {"f1"}), phi1});
        B2 = arg("~a", {drule("~a", {"f1", "f2"}), phi1, phi2});
        B3 = arg("~a", {drule("~a", {"f2", "f3"}), phi2, phi3});
        B4 = arg("~a", {drule("~a", {"f4"}), phi4});
        B5 = arg("~a", {drule("~a", {"f3"}), phi3});
        B6 = arg("~a", {drule("~a", {"f4", "f6"}), phi4, phi6});
        B7 = arg("~a", {drule("~a", {"f5"}), phi5});
        C4 = arg("a", {drule("a", {"f2"}), phi2});
        C5 = arg("a", {drule("a", {"f4"}), phi4});
        C6 = arg("a", {drule("a", {"f2", "g6"}), phi2, drule("g6")});
        C7 = arg("a", {drule("a", {"f6"}), phi6});
        auto N = [&](const std::string& t) { return arg("~a", {drule("~a", {t}), drule(t)}); };
        auto M = [&](const std::string& t) { return arg("a", {drule("a", {t}), drule(t)}); };
        delp::ArgumentStructure N4 = N("n4"), N5 = N("n5"), N6 = N("n6"), N7 = N("n7");
        delp::ArgumentStructure M4 = M("m4"), M5 = M("m5"), M6 = M("m6"), M7 = M("m7");
        std::set<std::pair<std::string, std::string>> entries;
        for (const auto* b : {&B1, &B2, &B3, &B4, &B5, &B6, &B7}) entries.insert({b->id, A.id});
        entries.insert({C4.id, B4.id});
        entries.insert({C5.id, B5.id});
        entries.insert({C6.id, B6.id});
        entries.insert({C7.id, B7.id});
        entries.insert({N4.id, C4.id});
        entries.insert({N5.id, C5.id});
        entries.insert({N6.id, C6.id});
        entries.insert({N7.id, C7.id});
        entries.insert({M4.id, N4.id});
        entries.insert({M5.id, N5.id});
        entries.insert({M6.id, N6.id});
        entries.insert({M7.id, N7.id});
        crit = delp::ComparisonCriterion::explicit_table(entries);
        rules = delp::RuleCriterion::with_ranking(
            {{phi6}, {phi5}, {phi4}, {phi3}, {phi2}, {phi1}});
    }

    delp::ArgumentationLine lambda(int i, const delp::DialecticalTree& tree) const {
        const delp::ArgumentStructure* heads[] = {&B1, &B2, &B3, &B4, &B5, &B6, &B7};
        for (const auto& l : tree.lines)
            if (l.size() > 1 && l.nodes[1].id == heads[i - 1]->id) return l;
        throw std::runtime_error("fixture line not found");
    }
};

// Three lines, one of them long, where altering the two attacking lines also
// closes the third through a collateral hit below its selection.
struct ContextExample {
    delp::Program program;
    delp::ArgumentStructure A, B1, B2, B3, P, B4, C4, Q, R;
    delp::Rule phi1, phi2, phi3;
    delp::ComparisonCriterion crit;
    delp::RuleCriterion rules;

    ContextExample() {
        phi1 = drule("f1");
        phi2 = drule("f2");
        phi3 = drule("f3");
        program = delp::parse_program(
            "ta.\n"
            "a -< ta.\n"
            "~a -< f1. ~a -< f2. ~a -< f3.\n"
            "a -< p0. ~a -< f1, g4. a -< f2. ~a -< q0. a -< r0.\n"
            "f1 -< . f2 -< . f3 -< . g4 -< . p0 -< . q0 -< . r0 -< .\n");
        A = arg("a", {drule("a", {"ta"})});
        B1 = arg("~a", {drule("~a", {"f1"}), phi1});
        B2 = arg("~a", {drule("~a", {"f2"}), phi2});
        B3 = arg("~a", {drule("~a", {"f3"}), phi3});
        P = arg("a", {drule("a", {"p0"}), drule("p0")});
        B4 = arg("~a", {drule("~a", {"f1", "g4"}), phi1, drule("g4")});
        C4 = arg("a", {drule("a", {"f2"}), phi2});
        Q = arg("~a", {drule("~a", {"q0"}), drule("q0")});
        R = arg("a", {drule("a", {"r0"}), drule("r0")});
        crit = delp::ComparisonCriterion::explicit_table({
            {B1.id, A.id},
            {B2.id, A.id},
            {B3.id, A.id},
            {P.id, B3.id},
            {B4.id, P.id},
            {C4.id, B4.id},
            {Q.id, C4.id},
            {R.id, Q.id},
        });
        rules = delp::RuleCriterion::with_ranking({{phi3}, {phi2}, {phi1}});
    }
};

// Two attacking lines whose leaf selections share a presumption with an
// argument higher up in the other line; exercises the order update rule.
struct PreservationExample {
    delp::Program program;
    delp::ArgumentStructure A, B1, B2, B3, B4, B5, B6;
    delp::Rule shared;
    delp::ComparisonCriterion crit;
    delp::RuleCriterion rules;

    PreservationExample() {
        shared = drule("s0");
        program = delp::parse_program(
            "ta.\n"
            "a -< ta.\n"
            "~a -< k1. a -< k3. ~a -< k5, s0.\n"
            "~a -< k2. a -< k4, s0. ~a -< k6.\n"
            "k1 -< . k2 -< . k3 -< . k4 -< . k5 -< . k6 -< . s0 -< .\n");
        A = arg("a", {drule("a", {"ta"})});
        B1 = arg("~a", {drule("~a", {"k1"}), drule("k1")});
        B3 = arg("a", {drule("a", {"k3"}), drule("k3")});
        B5 = arg("~a", {drule("~a", {"k5", "s0"}), drule("k5"), shared});
        B2 = arg("~a", {drule("~a", {"k2"}), drule("k2")});
        B4 = arg("a", {drule("a", {"k4", "s0"}), drule("k4"), shared});
        B6 = arg("~a", {drule("~a", {"k6"}), drule("k6")});
        crit = delp::ComparisonCriterion::explicit_table({
            {B1.id, A.id},
            {B2.id, A.id},
            {B3.id, B1.id},
            {B4.id, B2.id},
            {B5.id, B3.id},
            {B6.id, B4.id},
        });
        rules = delp::RuleCriterion::with_ranking({{shared}});
    }
};

// Attacking lines 1 and 3; the selection in line 1 owns three presumptions
// hitting, respectively, a pro argument, a non-attacking selection and an
// attacking selection.
struct ProfitabilityExample {
    delp::Program program;
    delp::ArgumentStructure A, B1, B2, B3, B4, B5, B6;
    delp::Rule u, v, w;
    delp::ComparisonCriterion crit;

    ProfitabilityExample() {
        u = drule("u0");
        v = drule("v0");
        w = drule("w0");
        program = delp::parse_program(
            "ta.\n"
            "a -< ta.\n"
            "~a -< k1. a -< k3. ~a -< u0, v0, w0.\n"
            "~a -< k2, v0. a -< k4, u0. ~a -< k6, w0.\n"
            "k1 -< . k2 -< . k3 -< . k4 -< . k6 -< . u0 -< . v0 -< . w0 -< .\n");
        A = arg("a", {drule("a", {"ta"})});
        B1 = arg("~a", {drule("~a", {"k1"}), drule("k1")});
        B3 = arg("a", {drule("a", {"k3"}), drule("k3")});
        B5 = arg("~a", {drule("~a", {"u0", "v0", "w0"}), u, v, w});
        B2 = arg("~a", {drule("~a", {"k2", "v0"}), drule("k2"), v});
        B4 = arg("a", {drule("a", {"k4", "u0"}), drule("k4"), u});
        B6 = arg("~a", {drule("~a", {"k6", "w0"}), drule("k6"), w});
        crit = delp::ComparisonCriterion::explicit_table({
            {B1.id, A.id},
            {B2.id, A.id},
            {B6.id, A.id},
            {B3.id, B1.id},
            {B5.id, B3.id},
            {B4.id, B2.id},
        });
    }
};

// Three lines through one shared direct defeater of the root.
struct MinimalityExample {
    delp::Program program;
    delp::ArgumentStructure A, B1, C1, C2, C3, B3, B4, B5;
    delp::Rule phi1, phi3, phi4, phi5;
    delp::ComparisonCriterion crit;

    MinimalityExample() {
        phi1 = drule("f1");
        phi3 = drule("f3");
        phi4 = drule("f4");
        phi5 = drule("f5");
        program = delp::parse_program(
            "ta.\n"
            "a -< ta.\n"
            "~a -< f1. a -< c1. a -< c2. a -< c3.\n"
            "~a -< f3. ~a -< f4. ~a -< f5.\n"
            "f1 -< . f3 -< . f4 -< . f5 -< . c1 -< . c2 -< . c3 -< .\n");
        A = arg("a", {drule("a", {"ta"})});
        B1 = arg("~a", {drule("~a", {"f1"}), phi1});
        C1 = arg("a", {drule("a", {"c1"}), drule("c1")});
        C2 = arg("a", {drule("a", {"c2"}), drule("c2")});
        C3 = arg("a", {drule("a", {"c3"}), drule("c3")});
        B3 = arg("~a", {drule("~a", {"f3"}), phi3});
        B4 = arg("~a", {drule("~a", {"f4"}), phi4});
        B5 = arg("~a", {drule("~a", {"f5"}), phi5});
        crit = delp::ComparisonCriterion::explicit_table({
            {B1.id, A.id},
            {C1.id, B1.id},
            {C2.id, B1.id},
            {C3.id, B1.id},
            {B3.id, C1.id},
            {B4.id, C2.id},
            {B5.id, C3.id},
        });
    }
};

// Two lines sharing a prefix; used for pruning behavior of removals.
struct LineAlterationExample {
    delp::Program program;
    delp::ArgumentStructure A, B1, B2, B3, B4;
    delp::ComparisonCriterion crit;

    LineAlterationExample() {
        program = delp::parse_program(
            "ta.\n"
            "a -< ta. ~a -< k1. a -< k2. ~a -< k3. a -< k4.\n"
            "k1 -< . k2 -< . k3 -< . k4 -< .\n");
        A = arg("a", {drule("a", {"ta"})});
        B1 = arg("~a", {drule("~a", {"k1"}), drule("k1")});
        B2 = arg("a", {drule("a", {"k2"}), drule("k2")});
        B3 = arg("~a", {drule("~a", {"k3"}), drule("k3")});
        B4 = arg("a", {drule("a", {"k4"}), drule("k4")});
        crit = delp::ComparisonCriterion::explicit_table({
            {B1.id, A.id},
            {B2.id, B1.id},
            {B4.id, B1.id},
            {B3.id, B2.id},
        });
    }
};

}  // namespace fixtures

#endif
