#include "delp/dialectics.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <ostream>
#include <sstream>

namespace delp {

NotInLine::NotInLine(const std::string& id)
    : std::runtime_error("argument " + id + " does not occur in the line") {}

SearchBudgetExceeded::SearchBudgetExceeded(const std::string& what)
    : std::runtime_error("search budget exceeded: " + what) {}

bool ArgumentationLine::contains(const ArgumentStructure& arg) const {
    return index_of(arg).has_value();
}

std::optional<std::size_t> ArgumentationLine::index_of(const ArgumentStructure& arg) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == arg.id) return i;
    return std::nullopt;
}

std::vector<ArgumentStructure> ArgumentationLine::con_args() const {
    std::vector<ArgumentStructure> out;
    for (std::size_t i = 1; i < nodes.size(); i += 2) out.push_back(nodes[i]);
    return out;
}

std::vector<ArgumentStructure> ArgumentationLine::pro_args() const {
    std::vector<ArgumentStructure> out;
    for (std::size_t i = 0; i < nodes.size(); i += 2) out.push_back(nodes[i]);
    return out;
}

std::string ArgumentationLine::signature() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) out << " / ";
        out << nodes[i].canonical();
    }
    return out.str();
}

bool ArgumentationLine::operator==(const ArgumentationLine& o) const {
    return signature() == o.signature();
}

bool ArgumentationLine::operator<(const ArgumentationLine& o) const {
    return signature() < o.signature();
}

std::optional<ArgumentationLine> upper_segment(const ArgumentationLine& line,
                                               const ArgumentStructure& arg, bool proper) {
    auto idx = line.index_of(arg);
    if (!idx) throw NotInLine(arg.id);
    if (proper && *idx == 0) return std::nullopt;
    std::size_t len = proper ? *idx : *idx + 1;
    ArgumentationLine out;
    out.nodes.assign(line.nodes.begin(), line.nodes.begin() + static_cast<long>(len));
    out.kinds.assign(line.kinds.begin(), line.kinds.begin() + static_cast<long>(len ? len - 1 : 0));
    return out;
}

bool is_acceptable(const ArgumentationLine& line, const Program& program) {
    if (line.nodes.empty()) return false;
    std::set<std::string> seen;
    for (const auto& n : line.nodes)
        if (!seen.insert(n.id).second) return false;
    for (std::size_t i = 1; i < line.kinds.size(); ++i)
        if (line.kinds[i] == DefeatKind::Blocking && line.kinds[i - 1] == DefeatKind::Blocking)
            return false;
    RuleSet pro = program.pi, con = program.pi;
    for (std::size_t i = 0; i < line.nodes.size(); ++i)
        (i % 2 == 0 ? pro : con) = set_union(i % 2 == 0 ? pro : con, line.nodes[i].rules);
    return !is_contradictory(pro) && !is_contradictory(con);
}

namespace {

constexpr std::size_t kMaxLines = 200000;

struct BundleBuilder {
    const Program& program;
    const ComparisonCriterion& crit;
    std::map<std::string, std::vector<Defeat>> defeat_cache;
    std::vector<ArgumentationLine> out;

    const std::vector<Defeat>& defeats_of(const ArgumentStructure& arg) {
        auto it = defeat_cache.find(arg.id);
        if (it == defeat_cache.end())
            it = defeat_cache.emplace(arg.id, defeaters(program, arg, crit)).first;
        return it->second;
    }

    void extend(ArgumentationLine& line) {
        if (out.size() > kMaxLines) throw SearchBudgetExceeded("bundle set enumeration");
        bool extended = false;
        std::set<std::string> tried;  // one edge per defeater argument
        for (const Defeat& d : defeats_of(line.nodes.back())) {
            if (!tried.insert(d.defeater.id).second) continue;
            line.nodes.push_back(d.defeater);
            line.kinds.push_back(d.kind);
            if (is_acceptable(line, program)) {
                extended = true;
                extend(line);
            }
            line.nodes.pop_back();
            line.kinds.pop_back();
        }
        if (!extended) out.push_back(line);
    }
};

}  // namespace

std::vector<ArgumentationLine> bundle_set(const Program& program, const ArgumentStructure& root,
                                          const ComparisonCriterion& crit) {
    BundleBuilder builder{program, crit, {}, {}};
    ArgumentationLine seed;
    seed.nodes.push_back(root);
    if (!is_acceptable(seed, program)) return {};
    builder.extend(seed);
    std::sort(builder.out.begin(), builder.out.end());
    builder.out.erase(std::unique(builder.out.begin(), builder.out.end()), builder.out.end());
    return builder.out;
}

DialecticalTree DialecticalTree::from_lines(ArgumentStructure root,
                                            std::vector<ArgumentationLine> ls) {
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    DialecticalTree tree;
    tree.root = root;
    tree.lines = std::move(ls);
    Node root_node;
    root_node.arg = root;
    tree.nodes.push_back(root_node);
    for (const ArgumentationLine& line : tree.lines) {
        if (line.nodes.empty() || line.nodes[0].id != root.id)
            throw std::invalid_argument("line not rooted at the tree root");
        std::vector<int> path{0};
        int cur = 0;
        for (std::size_t i = 1; i < line.nodes.size(); ++i) {
            int next = -1;
            for (int child : tree.nodes[cur].children)
                if (tree.nodes[child].arg.id == line.nodes[i].id) {
                    next = child;
                    break;
                }
            if (next < 0) {
                Node n;
                n.arg = line.nodes[i];
                n.parent = cur;
                n.depth = tree.nodes[cur].depth + 1;
                next = static_cast<int>(tree.nodes.size());
                tree.nodes.push_back(n);
                tree.nodes[cur].children.push_back(next);
            }
            path.push_back(next);
            cur = next;
        }
        tree.line_nodes.push_back(std::move(path));
    }
    return tree;
}

std::optional<std::size_t> DialecticalTree::line_index(const ArgumentationLine& line) const {
    for (std::size_t i = 0; i < lines.size(); ++i)
        if (lines[i] == line) return i;
    return std::nullopt;
}

DialecticalTree build_tree(const Program& program, const ArgumentStructure& root,
                           const ComparisonCriterion& crit) {
    return DialecticalTree::from_lines(root, bundle_set(program, root, crit));
}

Marking mark(const DialecticalTree& tree) {
    Marking marking(tree.nodes.size(), Mark::U);
    // nodes are created parents-first, so a reverse scan is bottom-up
    for (std::size_t i = tree.nodes.size(); i-- > 0;) {
        const auto& node = tree.nodes[i];
        if (node.children.empty()) {
            marking[i] = Mark::U;
            continue;
        }
        marking[i] = Mark::U;
        for (int child : node.children)
            if (marking[static_cast<std::size_t>(child)] == Mark::U) {
                marking[i] = Mark::D;
                break;
            }
    }
    return marking;
}

bool is_warranting(const DialecticalTree& tree, const Marking& marking) {
    (void)tree;
    return !marking.empty() && marking[0] == Mark::U;
}

std::vector<Mark> marking_sequence(const ArgumentationLine& line, const DialecticalTree& tree,
                                   const Marking& marking) {
    // walk the trie along the line's path
    std::vector<Mark> seq;
    int cur = 0;
    if (line.nodes.empty() || line.nodes[0].id != tree.root.id)
        throw std::invalid_argument("line does not belong to the tree");
    seq.push_back(marking[0]);
    for (std::size_t i = 1; i < line.nodes.size(); ++i) {
        int next = -1;
        for (int child : tree.nodes[static_cast<std::size_t>(cur)].children)
            if (tree.nodes[static_cast<std::size_t>(child)].arg.id == line.nodes[i].id) {
                next = child;
                break;
            }
        if (next < 0) throw std::invalid_argument("line does not belong to the tree");
        seq.push_back(marking[static_cast<std::size_t>(next)]);
        cur = next;
    }
    return seq;
}

LineClass classify_sequence(const std::vector<Mark>& seq) {
    auto matches_warranting = [&] {  // U(D+U)*
        std::size_t i = 0;
        if (i >= seq.size() || seq[i] != Mark::U) return false;
        ++i;
        while (i < seq.size()) {
            std::size_t ds = 0;
            while (i < seq.size() && seq[i] == Mark::D) ++i, ++ds;
            if (ds == 0 || i >= seq.size() || seq[i] != Mark::U) return false;
            ++i;
        }
        return true;
    };
    auto matches_attacking = [&] {  // (DU)+
        if (seq.empty() || seq.size() % 2 != 0) return false;
        for (std::size_t i = 0; i < seq.size(); i += 2)
            if (seq[i] != Mark::D || seq[i + 1] != Mark::U) return false;
        return true;
    };
    if (matches_warranting()) return LineClass::Warranting;
    if (matches_attacking()) return LineClass::Attacking;
    // (DU)*(D+(DU)+)+ is the remaining shape of non-warranting sequences
    return LineClass::DRep;
}

LineClass classify(const ArgumentationLine& line, const DialecticalTree& tree,
                   const Marking& marking) {
    return classify_sequence(marking_sequence(line, tree, marking));
}

bool is_warranted(const Program& program, const Literal& goal, const ComparisonCriterion& crit) {
    for (const ArgumentStructure& arg : build_arguments(program, goal)) {
        DialecticalTree tree = build_tree(program, arg, crit);
        if (is_warranting(tree, mark(tree))) return true;
    }
    return false;
}

std::optional<ArgumentStructure> adjacency_point(const ArgumentationLine& a,
                                                 const ArgumentationLine& b) {
    if (a.nodes.empty() || b.nodes.empty() || a.nodes[0].id != b.nodes[0].id)
        return std::nullopt;
    std::size_t i = 0;
    while (i < a.nodes.size() && i < b.nodes.size() && a.nodes[i].id == b.nodes[i].id) ++i;
    if (i == a.nodes.size() || i == b.nodes.size()) return std::nullopt;  // prefix case
    return a.nodes[i - 1];
}

std::vector<ArgumentationLine> attacking_set(const DialecticalTree& tree, const Marking& marking) {
    std::vector<std::size_t> attacking;
    for (std::size_t i = 0; i < tree.lines.size(); ++i)
        if (classify(tree.lines[i], tree, marking) == LineClass::Attacking) attacking.push_back(i);
    if (attacking.empty()) return {};
    if (attacking.size() > 20) throw SearchBudgetExceeded("attacking set enumeration");

    // adjacency-at-U conflicts between attacking lines
    const std::size_t n = attacking.size();
    std::vector<std::uint32_t> conflict(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& li = tree.lines[attacking[i]];
            const auto& lj = tree.lines[attacking[j]];
            auto point = adjacency_point(li, lj);
            if (!point) continue;
            auto idx = li.index_of(*point);
            int node = tree.line_nodes[attacking[i]][*idx];
            if (marking[static_cast<std::size_t>(node)] == Mark::U) {
                conflict[i] |= 1u << j;
                conflict[j] |= 1u << i;
            }
        }

    // maximal independent sets over the conflict graph, then least cardinality
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t set = 0; set < (1u << n); ++set) {
        bool independent = true;
        for (std::size_t i = 0; i < n && independent; ++i)
            if ((set & (1u << i)) && (conflict[i] & set)) independent = false;
        if (!independent) continue;
        bool maximal = true;
        for (std::size_t i = 0; i < n && maximal; ++i)
            if (!(set & (1u << i)) && !(conflict[i] & set)) maximal = false;
        if (maximal) candidates.push_back(set);
    }
    auto signature_list = [&](std::uint32_t set) {
        std::vector<std::string> sigs;
        for (std::size_t i = 0; i < n; ++i)
            if (set & (1u << i)) sigs.push_back(tree.lines[attacking[i]].signature());
        std::sort(sigs.begin(), sigs.end());
        return sigs;
    };
    std::uint32_t best = candidates.front();
    for (std::uint32_t cand : candidates) {
        int cb = std::popcount(best), cc = std::popcount(cand);
        if (cc < cb || (cc == cb && signature_list(cand) < signature_list(best))) best = cand;
    }
    std::vector<ArgumentationLine> out;
    for (std::size_t i = 0; i < n; ++i)
        if (best & (1u << i)) out.push_back(tree.lines[attacking[i]]);
    std::sort(out.begin(), out.end());
    return out;
}

void write_dot(std::ostream& out, const DialecticalTree& tree, const Marking& marking,
               const std::string& graph_name) {
    auto att = attacking_set(tree, marking);
    std::set<std::pair<int, int>> highlighted;
    for (const auto& line : att) {
        auto idx = tree.line_index(line);
        if (!idx) continue;
        const auto& path = tree.line_nodes[*idx];
        for (std::size_t i = 1; i < path.size(); ++i) highlighted.insert({path[i - 1], path[i]});
    }
    out << "digraph " << graph_name << " {\n";
    out << "  node [shape=box];\n";
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& n = tree.nodes[i];
        out << "  n" << i << " [label=\"" << n.arg.id << "\\n" << n.arg.claim.text() << " ["
            << (marking[i] == Mark::U ? "U" : "D") << "]\"";
        if (marking[i] == Mark::D) out << ", style=filled, fillcolor=gray80";
        out << "];\n";
    }
    // edge kind: recover from any line traversing the edge
    std::map<std::pair<int, int>, DefeatKind> edge_kind;
    for (std::size_t li = 0; li < tree.lines.size(); ++li) {
        const auto& path = tree.line_nodes[li];
        for (std::size_t i = 1; i < path.size(); ++i)
            edge_kind[{path[i - 1], path[i]}] = tree.lines[li].kinds[i - 1];
    }
    for (const auto& [edge, kind] : edge_kind) {
        out << "  n" << edge.second << " -> n" << edge.first << " [";
        out << (kind == DefeatKind::Proper ? "style=solid" : "style=dashed");
        if (highlighted.count(edge)) out << ", color=red, penwidth=2.0";
        out << "];\n";
    }
    out << "}\n";
}

}  // namespace delp
