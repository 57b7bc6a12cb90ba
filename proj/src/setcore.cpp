#include "nesto/setcore.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace nesto {

int ElementSet::min_element() const {
    if (empty()) throw OutOfRange("min_element of empty set");
    return std::countr_zero(bits_) + 1;
}

int ElementSet::max_element() const {
    if (empty()) throw OutOfRange("max_element of empty set");
    return 64 - std::countl_zero(bits_);
}

std::vector<int> ElementSet::elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    std::uint64_t m = bits_;
    while (m) {
        int e = std::countr_zero(m) + 1;
        out.push_back(e);
        m &= m - 1;
    }
    return out;
}

std::string ElementSet::to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
        if (!first) s += ',';
        s += std::to_string(e);
        first = false;
    }
    s += '}';
    return s;
}

bool canonical_less(ElementSet a, ElementSet b) {
    const int sa = a.size(), sb = b.size();
    if (sa != sb) return sa < sb;
    return a.mask() < b.mask();
}

std::vector<ElementSet> canonical_family(std::vector<ElementSet> family) {
    std::sort(family.begin(), family.end(), canonical_less);
    family.erase(std::unique(family.begin(), family.end()), family.end());
    return family;
}

BuildingSet::BuildingSet(ElementSet ground, std::vector<ElementSet> family)
    : ground_(ground), family_(canonical_family(std::move(family))) {
    if (ground_.empty()) throw OutOfRange("building set needs a nonempty ground set");
    for (const ElementSet& s : family_) {
        if (s.empty()) throw EmptySetMember("building set member is empty");
        if (!s.subset_of(ground_))
            throw OutOfRange("member " + s.to_string() + " not inside ground set " +
                             ground_.to_string());
        members_.insert(s.mask());
    }
    for (int e : ground_.elements()) {
        if (!members_.count(ElementSet::single(e).mask()))
            throw EmptySetMember("missing singleton {" + std::to_string(e) + "}");
    }
    for (std::size_t i = 0; i < family_.size(); ++i) {
        for (std::size_t j = i + 1; j < family_.size(); ++j) {
            const ElementSet a = family_[i], b = family_[j];
            if (!a.intersects(b)) continue;
            if (!members_.count((a | b).mask()))
                throw UnionAxiomViolation("union axiom violated: " + a.to_string() + " and " +
                                              b.to_string() + " intersect but " +
                                              (a | b).to_string() + " is missing",
                                          a.mask(), b.mask());
        }
    }
}

BuildingSet make_building_set(int n, const std::vector<ElementSet>& family) {
    if (n < 1) throw OutOfRange("n must be >= 1");
    const ElementSet ground = ElementSet::full(n);
    std::vector<ElementSet> fam = family;
    for (int e = 1; e <= n; ++e) fam.push_back(ElementSet::single(e));
    return BuildingSet(ground, std::move(fam));
}

BuildingSet closure(int n, const std::vector<ElementSet>& family) {
    if (n < 1) throw OutOfRange("n must be >= 1");
    const ElementSet ground = ElementSet::full(n);
    std::vector<ElementSet> fam;
    std::unordered_set<std::uint64_t> seen;
    auto push = [&](ElementSet s) {
        if (s.empty()) throw EmptySetMember("closure input contains the empty set");
        if (!s.subset_of(ground)) throw OutOfRange("closure input escapes the ground set");
        if (seen.insert(s.mask()).second) fam.push_back(s);
    };
    for (const ElementSet& s : family) push(s);
    for (int e = 1; e <= n; ++e) push(ElementSet::single(e));
    // fixpoint: union every intersecting pair until stable
    for (std::size_t i = 0; i < fam.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (fam[i].intersects(fam[j])) {
                const ElementSet u = fam[i] | fam[j];
                if (seen.insert(u.mask()).second) fam.push_back(u);
            }
        }
    }
    return BuildingSet(ground, std::move(fam));
}

Graph::Graph(int n_) : n(n_) {
    if (n < 1 || n > 64) throw OutOfRange("graph order must be in [1, 64]");
    adj.assign(static_cast<std::size_t>(n), 0);
}

void Graph::add_edge(int u, int v) {
    if (u < 1 || u > n || v < 1 || v > n) throw OutOfRange("edge endpoint outside [1, n]");
    if (u == v) throw OutOfRange("loops are not allowed");
    adj[static_cast<std::size_t>(u - 1)] |= std::uint64_t{1} << (v - 1);
    adj[static_cast<std::size_t>(v - 1)] |= std::uint64_t{1} << (u - 1);
}

bool Graph::has_edge(int u, int v) const {
    if (u < 1 || u > n || v < 1 || v > n) return false;
    return (adj[static_cast<std::size_t>(u - 1)] >> (v - 1)) & 1;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (has_edge(u, v)) out.emplace_back(u, v);
    return out;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph cycle_graph(int n) {
    Graph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(v, v + 1);
    if (n >= 3) g.add_edge(n, 1);
    return g;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) g.add_edge(u, v);
    return g;
}

Graph star_graph(int n) {
    Graph g(n);
    for (int v = 2; v <= n; ++v) g.add_edge(1, v);
    return g;
}

namespace {

constexpr int kEnumerationLimit = 22;  // 2^n subset scans beyond this are not desk scale

bool mask_connected(const Graph& g, std::uint64_t mask) {
    if (mask == 0) return false;
    std::uint64_t comp = mask & (~mask + 1);  // lowest bit
    for (;;) {
        std::uint64_t grown = comp;
        std::uint64_t scan = comp;
        while (scan) {
            const int v = std::countr_zero(scan);
            scan &= scan - 1;
            grown |= g.adj[static_cast<std::size_t>(v)] & mask;
        }
        if (grown == comp) break;
        comp = grown;
    }
    return comp == mask;
}

}  // namespace

BuildingSet graphical_building_set(const Graph& g) {
    if (g.n > kEnumerationLimit)
        throw OutOfRange("graphical building set enumeration supports n <= " +
                         std::to_string(kEnumerationLimit));
    std::vector<ElementSet> fam;
    const std::uint64_t top = (std::uint64_t{1} << g.n);
    for (std::uint64_t m = 1; m < top; ++m)
        if (mask_connected(g, m)) fam.push_back(ElementSet::from_mask(m));
    return BuildingSet(ElementSet::full(g.n), std::move(fam));
}

BuildingSet building_set_complete(int n) {
    if (n < 1) throw OutOfRange("n must be >= 1");
    if (n > kEnumerationLimit)
        throw OutOfRange("B(K_n) enumeration supports n <= " + std::to_string(kEnumerationLimit));
    std::vector<ElementSet> fam;
    const std::uint64_t top = (std::uint64_t{1} << n);
    for (std::uint64_t m = 1; m < top; ++m) fam.push_back(ElementSet::from_mask(m));
    return BuildingSet(ElementSet::full(n), std::move(fam));
}

BuildingSet building_set_path(int n) {
    if (n < 1) throw OutOfRange("n must be >= 1");
    std::vector<ElementSet> fam;
    for (int i = 1; i <= n; ++i) {
        ElementSet run;
        for (int j = i; j <= n; ++j) {
            run = run | ElementSet::single(j);
            fam.push_back(run);
        }
    }
    return BuildingSet(ElementSet::full(n), std::move(fam));
}

BuildingSet building_set_cycle(int n) {
    if (n < 1) throw OutOfRange("n must be >= 1");
    std::vector<ElementSet> fam;
    fam.push_back(ElementSet::full(n));
    for (int start = 1; start <= n; ++start) {
        ElementSet run;
        for (int len = 1; len <= n - 1; ++len) {
            const int v = (start + len - 2) % n + 1;
            run = run | ElementSet::single(v);
            fam.push_back(run);
        }
    }
    return BuildingSet(ElementSet::full(n), std::move(fam));
}

BuildingSet building_set_star(int n) {
    if (n < 1) throw OutOfRange("n must be >= 1");
    if (n > kEnumerationLimit)
        throw OutOfRange("B(K_{1,n-1}) enumeration supports n <= " +
                         std::to_string(kEnumerationLimit));
    std::vector<ElementSet> fam;
    const std::uint64_t top = (std::uint64_t{1} << n);
    for (std::uint64_t m = 1; m < top; ++m)
        if (m & 1) fam.push_back(ElementSet::from_mask(m));  // contains the hub
    for (int e = 2; e <= n; ++e) fam.push_back(ElementSet::single(e));
    return BuildingSet(ElementSet::full(n), std::move(fam));
}

BuildingSet restriction(const BuildingSet& b, ElementSet i) {
    if (i.empty()) throw OutOfRange("restriction to the empty set");
    if (!i.subset_of(b.ground())) throw OutOfRange("restriction set escapes the ground set");
    std::vector<ElementSet> fam;
    for (const ElementSet& s : b.family())
        if (s.subset_of(i)) fam.push_back(s);
    return BuildingSet(i, std::move(fam));
}

BuildingSet contraction(const BuildingSet& b, ElementSet i) {
    if (i.empty()) throw OutOfRange("contraction by the empty set");
    if (!i.subset_of(b.ground())) throw OutOfRange("contraction set escapes the ground set");
    if (i == b.ground()) throw FullContraction("contraction by the full ground set");
    std::vector<ElementSet> fam;
    for (const ElementSet& s : b.family())
        if (!s.subset_of(i)) fam.push_back(s.minus(i));
    return BuildingSet(b.ground().minus(i), std::move(fam));
}

std::vector<ElementSet> maximal_elements(const BuildingSet& b) {
    std::vector<ElementSet> out;
    for (const ElementSet& s : b.family()) {
        bool maximal = true;
        for (const ElementSet& t : b.family()) {
            if (s.proper_subset_of(t)) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(s);
    }
    return out;
}

namespace {

bool has_disjoint_cover(const BuildingSet& b, ElementSet target) {
    for (const ElementSet& d : b.family()) {
        if (!d.proper_subset_of(target)) continue;
        if (b.contains(target.minus(d))) return true;
    }
    return false;
}

}  // namespace

bool is_flag(const BuildingSet& b) {
    for (const ElementSet& s : b.family()) {
        if (s.size() <= 1) continue;
        if (!has_disjoint_cover(b, s)) return false;
    }
    return true;
}

namespace {

// Plain deterministic decomposition: split off the canonically smallest part
// containing min(target), recurse on both halves.
void decompose_plain(const BuildingSet& b, ElementSet target, std::vector<ElementSet>& out) {
    out.push_back(target);
    if (target.size() <= 1) return;
    const ElementSet low = ElementSet::single(target.min_element());
    for (const ElementSet& d : b.family()) {
        if (!d.proper_subset_of(target) || !low.subset_of(d)) continue;
        const ElementSet rest = target.minus(d);
        if (!b.contains(rest)) continue;
        decompose_plain(b, d, out);
        decompose_plain(b, rest, out);
        return;
    }
    throw NotFlag("no disjoint covering pair for " + target.to_string());
}

}  // namespace

Decomposition find_binary_decomposition(const BuildingSet& b, ElementSet target,
                                        std::optional<ElementSet> must_contain) {
    if (!b.contains(target)) throw OutOfRange("decomposition target not a member");
    std::vector<ElementSet> members;
    if (!must_contain) {
        decompose_plain(b, target, members);
    } else {
        const ElementSet seed = *must_contain;
        if (!b.contains(seed)) throw OutOfRange("must_contain not a member");
        if (!seed.proper_subset_of(target))
            throw OutOfRange("must_contain must be a proper subset of the target");
        // Grow a chain seed = c_0 < c_1 < ... < target, each step a disjoint
        // union with a member; decompose the seed and each attached piece.
        decompose_plain(b, seed, members);
        ElementSet chain = seed;
        while (chain != target) {
            const ElementSet* best = nullptr;
            for (const ElementSet& d : b.family()) {
                if (!d.subset_of(target) || d.intersects(chain)) continue;
                if (!b.contains(chain | d)) continue;
                if (!best || canonical_less(d, *best)) best = &d;
            }
            if (!best) throw NotFlag("cannot extend chain above " + chain.to_string());
            decompose_plain(b, *best, members);
            chain = chain | *best;
            members.push_back(chain);
        }
    }
    Decomposition d{target, canonical_family(std::move(members))};
    if (auto err = validate_decomposition(d))
        throw NotFlag("constructed decomposition invalid: " + *err);
    return d;
}

std::optional<std::string> validate_decomposition(const Decomposition& d) {
    if (d.base.empty()) return "empty base";
    const std::size_t expected = 2 * static_cast<std::size_t>(d.base.size()) - 1;
    const std::vector<ElementSet> fam = canonical_family(d.members);
    if (fam.size() != d.members.size()) return "duplicate members";
    if (fam != d.members) return "members not in canonical order";
    if (fam.size() != expected)
        return "expected " + std::to_string(expected) + " members, got " +
               std::to_string(fam.size());
    std::unordered_set<std::uint64_t> present;
    for (const ElementSet& s : fam) {
        if (s.empty()) return "empty member";
        if (!s.subset_of(d.base)) return "member " + s.to_string() + " escapes the base";
        present.insert(s.mask());
    }
    if (!present.count(d.base.mask())) return "base missing from members";
    for (int e : d.base.elements())
        if (!present.count(ElementSet::single(e).mask()))
            return "missing singleton {" + std::to_string(e) + "}";
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j) {
            const ElementSet a = fam[i], b = fam[j];
            const ElementSet meet = a & b;
            if (!meet.empty() && meet != a && meet != b)
                return "members " + a.to_string() + " and " + b.to_string() + " are not laminar";
        }
    for (const ElementSet& s : fam) {
        if (s.size() <= 1) continue;
        bool split = false;
        for (const ElementSet& a : fam) {
            if (!a.proper_subset_of(s)) continue;
            if (present.count(s.minus(a).mask())) {
                split = true;
                break;
            }
        }
        if (!split) return "member " + s.to_string() + " has no binary split";
    }
    return std::nullopt;
}

BinaryTree BinaryTree::leaf(int element) {
    if (element < 1 || element > 64) throw MalformedTree("leaf element outside [1, 64]");
    BinaryTree t;
    t.element_ = element;
    return t;
}

BinaryTree BinaryTree::node(BinaryTree left, BinaryTree right) {
    BinaryTree t;
    t.left_ = std::make_shared<const BinaryTree>(std::move(left));
    t.right_ = std::make_shared<const BinaryTree>(std::move(right));
    return t;
}

namespace {

ElementSet collect_tree(const BinaryTree& t, std::vector<ElementSet>& out) {
    ElementSet here;
    if (t.is_leaf()) {
        here = ElementSet::single(t.element());
    } else {
        const ElementSet l = collect_tree(t.left(), out);
        const ElementSet r = collect_tree(t.right(), out);
        if (l.intersects(r)) throw MalformedTree("duplicate leaf elements");
        here = l | r;
    }
    out.push_back(here);
    return here;
}

}  // namespace

BuildingSet minimal_flag_from_tree(const BinaryTree& tree) {
    std::vector<ElementSet> fam;
    const ElementSet ground = collect_tree(tree, fam);
    return BuildingSet(ground, std::move(fam));
}

std::string building_set_to_text(const BuildingSet& b) {
    if (b.ground() != ElementSet::full(b.n()))
        throw OutOfRange("text format requires ground set {1..n}");
    std::string out = "n " + std::to_string(b.n()) + "\n";
    for (const ElementSet& s : b.family()) {
        bool first = true;
        for (int e : s.elements()) {
            if (!first) out += ' ';
            out += std::to_string(e);
            first = false;
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::vector<std::string>> tokenized_lines(std::string_view text) {
    std::vector<std::vector<std::string>> lines;
    std::string cur;
    std::istringstream in{std::string(text)};
    while (std::getline(in, cur)) {
        if (!cur.empty() && cur.back() == '\r') cur.pop_back();
        std::istringstream ls(cur);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) {
            if (t[0] == '#') break;
            toks.push_back(t);
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

int parse_int(const std::string& t) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(t, &used);
        if (used != t.size()) throw ParseError("trailing characters in integer '" + t + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + t + "'");
    }
}

}  // namespace

ElementSet parse_set_tokens(const std::vector<int>& elems) {
    ElementSet s;
    for (int e : elems) s = s | ElementSet::single(e);
    return s;
}

BuildingSet building_set_from_text(std::string_view text) {
    const auto lines = tokenized_lines(text);
    if (lines.empty() || lines[0].size() != 2 || lines[0][0] != "n")
        throw ParseError("building set file must start with 'n <int>'");
    const int n = parse_int(lines[0][1]);
    std::vector<ElementSet> fam;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<int> elems;
        for (const std::string& t : lines[i]) elems.push_back(parse_int(t));
        fam.push_back(parse_set_tokens(elems));
    }
    try {
        return make_building_set(n, fam);
    } catch (const Error& e) {
        throw ParseError(std::string("invalid building set: ") + e.what());
    }
}

std::string graph_to_text(const Graph& g) {
    std::string out = "n " + std::to_string(g.n) + "\n";
    for (const auto& [u, v] : g.edges())
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

Graph graph_from_text(std::string_view text) {
    const auto lines = tokenized_lines(text);
    if (lines.empty() || lines[0].size() != 2 || lines[0][0] != "n")
        throw ParseError("graph file must start with 'n <int>'");
    const int n = parse_int(lines[0][1]);
    if (n < 1 || n > 64) throw ParseError("graph order must be in [1, 64]");
    Graph g(n);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].size() != 2) throw ParseError("expected 'u v' edge line");
        try {
            g.add_edge(parse_int(lines[i][0]), parse_int(lines[i][1]));
        } catch (const Error& e) {
            throw ParseError(std::string("invalid edge: ") + e.what());
        }
    }
    return g;
}

}  // namespace nesto
