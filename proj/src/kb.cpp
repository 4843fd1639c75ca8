#include "delp/kb.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace delp {

Rule::Rule(Literal h, std::vector<Literal> b, RuleKind k)
    : head(std::move(h)), body(std::move(b)), kind(k) {
    std::sort(body.begin(), body.end());
    body.erase(std::unique(body.begin(), body.end()), body.end());
    if (kind == RuleKind::Fact && !body.empty())
        throw std::invalid_argument("fact with non-empty body");
    if (kind == RuleKind::Strict && body.empty())
        throw std::invalid_argument("strict rule with empty body");
}

std::string Rule::text() const {
    std::ostringstream out;
    out << head.text();
    if (kind != RuleKind::Fact) {
        out << (kind == RuleKind::Strict ? " <- " : " -< ");
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (i) out << ", ";
            out << body[i].text();
        }
    }
    out << ".";
    return out.str();
}

RuleSet make_rule_set(std::vector<Rule> rules) {
    std::sort(rules.begin(), rules.end());
    rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
    return rules;
}

RuleSet set_union(const RuleSet& a, const RuleSet& b) {
    RuleSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

RuleSet set_difference(const RuleSet& a, const RuleSet& b) {
    RuleSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

RuleSet set_intersection(const RuleSet& a, const RuleSet& b) {
    RuleSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(const RuleSet& a, const RuleSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool contains_rule(const RuleSet& s, const Rule& r) {
    return std::binary_search(s.begin(), s.end(), r);
}

std::string rule_set_text(const RuleSet& s) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out << " ";
        out << s[i].text();
    }
    out << "}";
    return out.str();
}

SyntaxError::SyntaxError(int l, int c, const std::string& msg)
    : std::runtime_error("syntax error at " + std::to_string(l) + ":" + std::to_string(c) +
                         ": " + msg),
      line(l),
      column(c) {}

PiInconsistent::PiInconsistent(Literal lit)
    : std::runtime_error("strict part derives both " + lit.text() + " and " +
                         lit.complement().text()),
      literal(std::move(lit)) {}

Program::Program(RuleSet pi_rules, RuleSet delta_rules)
    : pi(make_rule_set(std::move(pi_rules))), delta(make_rule_set(std::move(delta_rules))) {
    for (const Rule& r : pi)
        if (r.kind == RuleKind::Defeasible)
            throw std::invalid_argument("defeasible rule in strict part");
    for (const Rule& r : delta)
        if (r.kind != RuleKind::Defeasible)
            throw std::invalid_argument("non-defeasible rule in delta");
    auto derived = closure(pi);
    for (const Literal& lit : derived)
        if (derived.count(lit.complement())) throw PiInconsistent(lit);
}

std::string Program::text() const {
    std::ostringstream out;
    for (const Rule& r : pi) out << r.text() << "\n";
    for (const Rule& r : delta) out << r.text() << "\n";
    return out.str();
}

namespace {

struct Parser {
    const std::string& src;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit Parser(const std::string& s) : src(s) {}

    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(line, col, msg); }

    char peek() const { return pos < src.size() ? src[pos] : '\0'; }

    void advance() {
        if (pos >= src.size()) return;
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws() {
        for (;;) {
            char c = peek();
            if (c == '%') {
                while (peek() != '\n' && peek() != '\0') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    bool eof() {
        skip_ws();
        return pos >= src.size();
    }

    Literal literal() {
        skip_ws();
        bool neg = false;
        if (peek() == '~') {
            neg = true;
            advance();
            skip_ws();
        }
        char c = peek();
        if (!(c >= 'a' && c <= 'z')) fail("expected identifier");
        std::string atom;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
            atom.push_back(peek());
            advance();
        }
        return Literal(atom, neg);
    }

    // One statement: "h.", "h <- b1, b2." or "h -< b1, b2." ("h -< ." is a presumption).
    Rule statement() {
        Literal head = literal();
        skip_ws();
        RuleKind kind = RuleKind::Fact;
        std::vector<Literal> body;
        if (peek() == '<' || peek() == '-') {
            char first = peek();
            advance();
            char second = peek();
            if (first == '<' && second == '-') {
                kind = RuleKind::Strict;
            } else if (first == '-' && second == '<') {
                kind = RuleKind::Defeasible;
            } else {
                fail("expected '<-' or '-<'");
            }
            advance();
            skip_ws();
            if (peek() != '.') {
                body.push_back(literal());
                skip_ws();
                while (peek() == ',') {
                    advance();
                    body.push_back(literal());
                    skip_ws();
                }
            }
        }
        skip_ws();
        if (peek() != '.') fail("expected '.'");
        advance();
        if (kind == RuleKind::Strict && body.empty()) fail("strict rule needs a body");
        if (kind == RuleKind::Defeasible) return Rule(head, std::move(body), kind);
        if (body.empty()) return Rule(head, {}, RuleKind::Fact);
        return Rule(head, std::move(body), RuleKind::Strict);
    }
};

}  // namespace

Program parse_program(const std::string& text) {
    Parser p(text);
    RuleSet pi, delta;
    while (!p.eof()) {
        Rule r = p.statement();
        (r.kind == RuleKind::Defeasible ? delta : pi).push_back(r);
    }
    return Program(std::move(pi), std::move(delta));
}

std::set<Literal> closure(const RuleSet& rules) {
    std::set<Literal> derived;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Rule& r : rules) {
            if (derived.count(r.head)) continue;
            bool fires = true;
            for (const Literal& b : r.body)
                if (!derived.count(b)) {
                    fires = false;
                    break;
                }
            if (fires) {
                derived.insert(r.head);
                changed = true;
            }
        }
    }
    return derived;
}

bool derives(const RuleSet& rules, const Literal& goal) { return closure(rules).count(goal) > 0; }

bool is_contradictory(const RuleSet& rules) {
    auto derived = closure(rules);
    for (const Literal& lit : derived)
        if (!lit.negated && derived.count(lit.complement())) return true;
    return false;
}

bool disagree(const Literal& a, const Literal& b, const RuleSet& pi) {
    RuleSet rules = pi;
    rules.push_back(Rule(a, {}, RuleKind::Fact));
    rules.push_back(Rule(b, {}, RuleKind::Fact));
    return is_contradictory(make_rule_set(std::move(rules)));
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string short_hash(const std::string& s) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(s);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace delp
