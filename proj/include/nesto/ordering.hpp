#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nesto/setcore.hpp"

namespace nesto {

// A decomposition D of the ground set plus an ordering b_1..b_k of B - D such
// that every prefix D u {b_1..b_j} is a flag building set.
struct FlagOrdering {
    BuildingSet building;
    Decomposition root;
    std::vector<ElementSet> order;

    int k() const { return static_cast<int>(order.size()); }

    // D u {b_1..b_j} as a validated building set on the same ground.
    BuildingSet prefix(int j) const;

    // Same decomposition, order cut to the first j elements, building = prefix(j).
    FlagOrdering truncated(int j) const;
};

struct OrderingCheck {
    bool ok = true;
    int prefix_index = 0;  // first failing prefix, 0 for structural failures
    std::string message;
};

// Full validation of the FlagOrdering invariants; never throws on bad input.
OrderingCheck verify_flag_ordering(const FlagOrdering& o);

struct OrderingStrategy {
    enum class Kind { Lex, Random, Comparator };
    Kind kind = Kind::Lex;
    std::uint64_t seed = 0;
    std::function<bool(const ElementSet&, const ElementSet&)> less;

    static OrderingStrategy lex() { return {}; }
    static OrderingStrategy random(std::uint64_t seed) {
        OrderingStrategy s;
        s.kind = Kind::Random;
        s.seed = seed;
        return s;
    }
    static OrderingStrategy comparator(std::function<bool(const ElementSet&, const ElementSet&)> less) {
        OrderingStrategy s;
        s.kind = Kind::Comparator;
        s.less = std::move(less);
        return s;
    }
};

struct OrderingSearchStats {
    int dead_ends = 0;  // greedy never dead-ends; nonzero would expose a bug
};

// Greedy construction: scan candidates in strategy order, take the first whose
// addition keeps the prefix a flag building set. The backtracking fallback is
// a self-check only.
FlagOrdering find_flag_ordering(const BuildingSet& b, const OrderingStrategy& strategy,
                                std::optional<Decomposition> decomposition = std::nullopt,
                                bool backtrack_fallback = false,
                                OrderingSearchStats* stats = nullptr);

// Named orderings. All use D = {singletons} u {{1..2}, {1..3}, ..., {1..n}}.
FlagOrdering ordering_kn(int n);     // B(K_n):  max asc, then size desc, then min sym-diff side
FlagOrdering ordering_pathn(int n);  // B(Path_n): max asc, then size desc
FlagOrdering ordering_star(int n);   // B(K_{1,n-1}), hub 1: same comparator as B(K_n)

// The comparators themselves, exposed for reuse.
bool max_size_symdiff_less(const ElementSet& a, const ElementSet& b);
bool max_size_less(const ElementSet& a, const ElementSet& b);

Decomposition prefix_decomposition(int n);  // caterpillar {1},{2},..,{1,2},{1,2,3},..

// Ordering text format: "n <int>", a "D:" block, an "order:" block, one set
// per line. Emitted canonically, parsed leniently.
std::string ordering_to_text(const FlagOrdering& o);
FlagOrdering ordering_from_text(std::string_view text);

}  // namespace nesto
