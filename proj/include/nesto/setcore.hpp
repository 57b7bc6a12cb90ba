#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "nesto/errors.hpp"

namespace nesto {

// Subset of {1..64} stored as one machine word; element i lives at bit i-1.
class ElementSet {
public:
    constexpr ElementSet() = default;

    static constexpr ElementSet from_mask(std::uint64_t m) {
        ElementSet s;
        s.bits_ = m;
        return s;
    }

    static ElementSet single(int e) {
        check_element(e);
        return from_mask(std::uint64_t{1} << (e - 1));
    }

    // {1, 2, ..., n}
    static ElementSet full(int n) {
        if (n < 0 || n > 64) throw OutOfRange("ground-set size must be in [0, 64]");
        if (n == 0) return {};
        return from_mask(~std::uint64_t{0} >> (64 - n));
    }

    static ElementSet of(std::initializer_list<int> elems) {
        ElementSet s;
        for (int e : elems) s = s | single(e);
        return s;
    }

    constexpr std::uint64_t mask() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    int size() const { return std::popcount(bits_); }

    bool contains(int e) const { return e >= 1 && e <= 64 && (bits_ >> (e - 1)) & 1; }
    constexpr bool subset_of(ElementSet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool proper_subset_of(ElementSet o) const { return subset_of(o) && bits_ != o.bits_; }
    constexpr bool intersects(ElementSet o) const { return (bits_ & o.bits_) != 0; }
    constexpr bool disjoint_from(ElementSet o) const { return (bits_ & o.bits_) == 0; }

    constexpr ElementSet operator|(ElementSet o) const { return from_mask(bits_ | o.bits_); }
    constexpr ElementSet operator&(ElementSet o) const { return from_mask(bits_ & o.bits_); }
    constexpr ElementSet minus(ElementSet o) const { return from_mask(bits_ & ~o.bits_); }
    constexpr ElementSet sym_diff(ElementSet o) const { return from_mask(bits_ ^ o.bits_); }

    int min_element() const;  // requires nonempty
    int max_element() const;  // requires nonempty

    std::vector<int> elements() const;
    std::string to_string() const;  // "{1,3,4}"

    constexpr bool operator==(const ElementSet&) const = default;

private:
    static void check_element(int e) {
        if (e < 1 || e > 64) throw OutOfRange("element " + std::to_string(e) + " outside [1, 64]");
    }
    std::uint64_t bits_ = 0;
};

// Canonical family order: ascending by (|b|, bitmask value).
bool canonical_less(ElementSet a, ElementSet b);

// Sort + dedupe into canonical order.
std::vector<ElementSet> canonical_family(std::vector<ElementSet> family);

// Family of nonempty subsets of a ground set, closed under union of
// intersecting members, containing every singleton of the ground set.
// Immutable after construction; the constructor validates all axioms.
class BuildingSet {
public:
    BuildingSet(ElementSet ground, std::vector<ElementSet> family);

    const ElementSet& ground() const { return ground_; }
    int n() const { return ground_.size(); }
    const std::vector<ElementSet>& family() const { return family_; }
    std::size_t size() const { return family_.size(); }
    bool contains(ElementSet s) const { return members_.count(s.mask()) != 0; }
    bool connected() const { return contains(ground_); }

    bool operator==(const BuildingSet& o) const {
        return ground_ == o.ground_ && family_ == o.family_;
    }

private:
    ElementSet ground_;
    std::vector<ElementSet> family_;
    std::unordered_set<std::uint64_t> members_;
};

// Sub-family of a building set forming a minimal flag building set on `base`:
// a laminar family of 2|base|-1 members in which every non-singleton is the
// disjoint union of exactly two other members.
struct Decomposition {
    ElementSet base;
    std::vector<ElementSet> members;  // canonical order
};

// Empty result means valid; otherwise a description of the first failure.
std::optional<std::string> validate_decomposition(const Decomposition& d);

// Validating constructor on ground {1..n}; singletons are added automatically,
// but a family violating the union axiom is rejected, never silently closed.
BuildingSet make_building_set(int n, const std::vector<ElementSet>& family);

// Smallest building set on {1..n} containing `family`. Idempotent.
BuildingSet closure(int n, const std::vector<ElementSet>& family);

// Simple undirected graph on vertices {1..n}, adjacency as bitmasks.
struct Graph {
    explicit Graph(int n);
    int n = 0;
    std::vector<std::uint64_t> adj;  // adj[v-1] = neighbor mask

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    std::vector<std::pair<int, int>> edges() const;
};

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int n);  // hub vertex 1

// All nonempty vertex subsets inducing a connected subgraph.
BuildingSet graphical_building_set(const Graph& g);

BuildingSet building_set_complete(int n);  // B(K_n)
BuildingSet building_set_path(int n);      // B(Path_n), the intervals
BuildingSet building_set_cycle(int n);     // B(Cyc_n), the cyclic intervals
BuildingSet building_set_star(int n);      // B(K_{1,n-1}), hub 1

// {b in B | b subset of I}, ground set recorded as I (labels kept).
BuildingSet restriction(const BuildingSet& b, ElementSet i);

// {b \ I | b in B, b not subset of I} on ground() - I.
BuildingSet contraction(const BuildingSet& b, ElementSet i);

// Inclusion-maximal members; they partition the ground set.
std::vector<ElementSet> maximal_elements(const BuildingSet& b);

// True iff every non-singleton member is the union of two disjoint members.
bool is_flag(const BuildingSet& b);

// Deterministic decomposition of b within B; contains must_contain when
// supplied. Splits choose the canonically smallest part holding min(b); with
// must_contain, a chain is grown from it by unioning the canonically smallest
// disjoint mergeable member at each step.
Decomposition find_binary_decomposition(const BuildingSet& b, ElementSet target,
                                        std::optional<ElementSet> must_contain = std::nullopt);

// Proper rooted binary tree; leaves carry distinct elements of {1..64}.
class BinaryTree {
public:
    static BinaryTree leaf(int element);
    static BinaryTree node(BinaryTree left, BinaryTree right);

    bool is_leaf() const { return element_ != 0; }
    int element() const { return element_; }
    const BinaryTree& left() const { return *left_; }
    const BinaryTree& right() const { return *right_; }

private:
    BinaryTree() = default;
    int element_ = 0;
    std::shared_ptr<const BinaryTree> left_;
    std::shared_ptr<const BinaryTree> right_;
};

// The family of leaf-descendant sets of the tree, a minimal flag building set
// on the tree's leaf set.
BuildingSet minimal_flag_from_tree(const BinaryTree& tree);

// Text formats. Building set: first line "n <int>", then one set per line as
// space-separated 1-indexed elements, canonical order, LF endings; lines
// beginning '#' ignored. Graph: "n <int>" then "u v" per line.
std::string building_set_to_text(const BuildingSet& b);
BuildingSet building_set_from_text(std::string_view text);
std::string graph_to_text(const Graph& g);
Graph graph_from_text(std::string_view text);

ElementSet parse_set_tokens(const std::vector<int>& elems);

}  // namespace nesto
