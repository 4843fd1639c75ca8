#ifndef DELP_DIALECTICS_HPP
#define DELP_DIALECTICS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "delp/argumentation.hpp"

namespace delp {

struct NotInLine : std::runtime_error {
    explicit NotInLine(const std::string& id);
};

struct SearchBudgetExceeded : std::runtime_error {
    explicit SearchBudgetExceeded(const std::string& what);
};

// Defeat sequence rooted at nodes[0]; kinds[i] is the kind of the defeat of
// nodes[i] by nodes[i+1].
struct ArgumentationLine {
    std::vector<ArgumentStructure> nodes;
    std::vector<DefeatKind> kinds;

    std::size_t size() const { return nodes.size(); }
    bool contains(const ArgumentStructure& arg) const;
    std::optional<std::size_t> index_of(const ArgumentStructure& arg) const;
    // Even positions (1-based) interfere with the root.
    std::vector<ArgumentStructure> con_args() const;
    std::vector<ArgumentStructure> pro_args() const;
    bool is_con_position(std::size_t idx) const { return idx % 2 == 1; }  // 0-based
    std::string signature() const;

    bool operator==(const ArgumentationLine& o) const;
    bool operator<(const ArgumentationLine& o) const;
};

// Prefix up to arg; proper=true excludes arg itself and is undefined (nullopt)
// for the root. Throws NotInLine.
std::optional<ArgumentationLine> upper_segment(const ArgumentationLine& line,
                                               const ArgumentStructure& arg, bool proper);

bool is_acceptable(const ArgumentationLine& line, const Program& program);

std::vector<ArgumentationLine> bundle_set(const Program& program, const ArgumentStructure& root,
                                          const ComparisonCriterion& crit);

enum class Mark { U, D };

struct DialecticalTree {
    struct Node {
        ArgumentStructure arg;
        int parent = -1;
        std::vector<int> children;
        int depth = 0;  // root = 0
    };

    ArgumentStructure root;
    std::vector<ArgumentationLine> lines;  // sorted by signature
    std::vector<Node> nodes;               // trie over the lines; node 0 = root
    std::vector<std::vector<int>> line_nodes;  // per line, trie node ids

    static DialecticalTree from_lines(ArgumentStructure root,
                                      std::vector<ArgumentationLine> lines);
    std::optional<std::size_t> line_index(const ArgumentationLine& line) const;
};

DialecticalTree build_tree(const Program& program, const ArgumentStructure& root,
                           const ComparisonCriterion& crit);

using Marking = std::vector<Mark>;  // by trie node id

Marking mark(const DialecticalTree& tree);
bool is_warranting(const DialecticalTree& tree, const Marking& marking);

std::vector<Mark> marking_sequence(const ArgumentationLine& line, const DialecticalTree& tree,
                                   const Marking& marking);

enum class LineClass { Warranting, Attacking, DRep };

LineClass classify_sequence(const std::vector<Mark>& seq);
LineClass classify(const ArgumentationLine& line, const DialecticalTree& tree,
                   const Marking& marking);

bool is_warranted(const Program& program, const Literal& goal, const ComparisonCriterion& crit);

// Last argument of the longest common prefix when both lines continue past it
// differently; nullopt when one is a prefix of the other or the roots differ.
std::optional<ArgumentStructure> adjacency_point(const ArgumentationLine& a,
                                                 const ArgumentationLine& b);

// Attacking set under the cardinality alteration criterion: a maximal set of
// attacking lines with no two members adjacent at a U-marked argument, of
// least cardinality, ties broken on sorted line signatures.
std::vector<ArgumentationLine> attacking_set(const DialecticalTree& tree, const Marking& marking);

// DOT rendering of a marked tree; attacking-set lines are highlighted.
void write_dot(std::ostream& out, const DialecticalTree& tree, const Marking& marking,
               const std::string& graph_name);

}  // namespace delp

#endif
