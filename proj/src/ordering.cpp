#include "nesto/ordering.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_set>

namespace nesto {

namespace {

// Incremental view of a growing building set: membership hash + member list.
struct PrefixFamily {
    std::vector<ElementSet> members;
    std::unordered_set<std::uint64_t> present;

    void add(ElementSet s) {
        members.push_back(s);
        present.insert(s.mask());
    }
    bool contains(ElementSet s) const { return present.count(s.mask()) != 0; }
};

// Does adding `b` keep the union axiom, with all unions landing in cur + {b}?
bool addition_keeps_union_axiom(const PrefixFamily& cur, ElementSet b, const ElementSet** bad) {
    for (const ElementSet& x : cur.members) {
        if (!x.intersects(b)) continue;
        const ElementSet u = x | b;
        if (u == b || cur.contains(u)) continue;
        if (bad) *bad = &x;
        return false;
    }
    return true;
}

bool has_cover_pair(const PrefixFamily& cur, ElementSet b) {
    if (b.size() == 1) return true;
    for (const ElementSet& d : cur.members) {
        if (!d.proper_subset_of(b)) continue;
        if (cur.contains(b.minus(d))) return true;
    }
    return false;
}

bool addable(const PrefixFamily& cur, ElementSet b) {
    return has_cover_pair(cur, b) && addition_keeps_union_axiom(cur, b, nullptr);
}

}  // namespace

BuildingSet FlagOrdering::prefix(int j) const {
    if (j < 0 || j > k()) throw IndexOutOfRange("prefix index outside [0, k]");
    std::vector<ElementSet> fam = root.members;
    fam.insert(fam.end(), order.begin(), order.begin() + j);
    return BuildingSet(building.ground(), std::move(fam));
}

FlagOrdering FlagOrdering::truncated(int j) const {
    if (j < 0 || j > k()) throw IndexOutOfRange("truncation index outside [0, k]");
    return FlagOrdering{prefix(j), root, {order.begin(), order.begin() + j}};
}

OrderingCheck verify_flag_ordering(const FlagOrdering& o) {
    auto fail = [](int idx, std::string msg) { return OrderingCheck{false, idx, std::move(msg)}; };

    if (auto err = validate_decomposition(o.root))
        return fail(0, "decomposition invalid: " + *err);
    if (o.root.base != o.building.ground())
        return fail(0, "decomposition base differs from the ground set");
    for (const ElementSet& d : o.root.members)
        if (!o.building.contains(d))
            return fail(0, "decomposition member " + d.to_string() + " not in the building set");

    // D and the order must partition B exactly.
    std::unordered_set<std::uint64_t> seen;
    for (const ElementSet& d : o.root.members) seen.insert(d.mask());
    for (const ElementSet& b : o.order) {
        if (!o.building.contains(b))
            return fail(0, "ordered element " + b.to_string() + " not in the building set");
        if (!seen.insert(b.mask()).second)
            return fail(0, "element " + b.to_string() + " repeated");
    }
    if (seen.size() != o.building.size())
        return fail(0, "D plus order covers " + std::to_string(seen.size()) + " of " +
                           std::to_string(o.building.size()) + " members");

    PrefixFamily cur;
    for (const ElementSet& d : o.root.members) cur.add(d);
    for (int j = 1; j <= o.k(); ++j) {
        const ElementSet b = o.order[static_cast<std::size_t>(j - 1)];
        if (!has_cover_pair(cur, b))
            return fail(j, "prefix " + std::to_string(j) + ": no disjoint covering pair for " +
                               b.to_string());
        const ElementSet* bad = nullptr;
        if (!addition_keeps_union_axiom(cur, b, &bad))
            return fail(j, "prefix " + std::to_string(j) + ": union axiom needs " +
                               (*bad | b).to_string() + " = " + bad->to_string() + " u " +
                               b.to_string());
        cur.add(b);
    }
    return {};
}

namespace {

// Exhaustive fallback used only as a self-check: greedy cannot dead-end on a
// flag building set, so this search should never run.
bool backtrack_order(PrefixFamily& cur, std::vector<ElementSet>& remaining,
                     std::vector<ElementSet>& out) {
    if (remaining.empty()) return true;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
        if (!addable(cur, remaining[i])) continue;
        const ElementSet b = remaining[i];
        std::vector<ElementSet> rest;
        rest.reserve(remaining.size() - 1);
        for (std::size_t t = 0; t < remaining.size(); ++t)
            if (t != i) rest.push_back(remaining[t]);
        cur.add(b);
        out.push_back(b);
        if (backtrack_order(cur, rest, out)) return true;
        out.pop_back();
        cur.members.pop_back();
        cur.present.erase(b.mask());
    }
    return false;
}

}  // namespace

FlagOrdering find_flag_ordering(const BuildingSet& b, const OrderingStrategy& strategy,
                                std::optional<Decomposition> decomposition,
                                bool backtrack_fallback, OrderingSearchStats* stats) {
    if (!b.connected()) throw NotConnected("flag orderings need a connected building set");
    if (!is_flag(b)) throw NotFlag("building set is not flag");

    Decomposition d = decomposition ? std::move(*decomposition)
                                    : find_binary_decomposition(b, b.ground());
    if (auto err = validate_decomposition(d))
        throw NotFlag("supplied decomposition invalid: " + *err);

    std::unordered_set<std::uint64_t> in_d;
    for (const ElementSet& m : d.members) {
        if (!b.contains(m)) throw OutOfRange("decomposition member not in the building set");
        in_d.insert(m.mask());
    }
    std::vector<ElementSet> remaining;
    for (const ElementSet& m : b.family())
        if (!in_d.count(m.mask())) remaining.push_back(m);

    switch (strategy.kind) {
        case OrderingStrategy::Kind::Lex:
            std::sort(remaining.begin(), remaining.end(), canonical_less);
            break;
        case OrderingStrategy::Kind::Random: {
            std::mt19937_64 rng(strategy.seed);
            std::shuffle(remaining.begin(), remaining.end(), rng);
            break;
        }
        case OrderingStrategy::Kind::Comparator:
            if (!strategy.less) throw OutOfRange("comparator strategy without a comparator");
            std::stable_sort(remaining.begin(), remaining.end(), strategy.less);
            break;
    }

    PrefixFamily cur;
    for (const ElementSet& m : d.members) cur.add(m);
    std::vector<ElementSet> order;
    order.reserve(remaining.size());
    std::vector<char> used(remaining.size(), 0);
    while (order.size() < remaining.size()) {
        bool took = false;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            if (used[i] || !addable(cur, remaining[i])) continue;
            cur.add(remaining[i]);
            order.push_back(remaining[i]);
            used[i] = 1;
            took = true;
            break;
        }
        if (took) continue;
        if (stats) stats->dead_ends += 1;
        if (backtrack_fallback) {
            PrefixFamily fresh;
            for (const ElementSet& m : d.members) fresh.add(m);
            std::vector<ElementSet> pool = remaining;
            std::vector<ElementSet> found;
            if (backtrack_order(fresh, pool, found))
                return FlagOrdering{b, std::move(d), std::move(found)};
        }
        throw NotFlag("ordering construction dead-ended on " + b.ground().to_string());
    }
    return FlagOrdering{b, std::move(d), std::move(order)};
}

bool max_size_symdiff_less(const ElementSet& a, const ElementSet& b) {
    if (a == b) return false;
    const int ma = a.max_element(), mb = b.max_element();
    if (ma != mb) return ma < mb;
    if (a.size() != b.size()) return a.size() > b.size();
    const ElementSet diff = a.sym_diff(b);
    return a.contains(diff.min_element());
}

bool max_size_less(const ElementSet& a, const ElementSet& b) {
    if (a == b) return false;
    const int ma = a.max_element(), mb = b.max_element();
    if (ma != mb) return ma < mb;
    return a.size() > b.size();
}

Decomposition prefix_decomposition(int n) {
    if (n < 1) throw OutOfRange("n must be >= 1");
    std::vector<ElementSet> members;
    for (int e = 1; e <= n; ++e) members.push_back(ElementSet::single(e));
    for (int e = 2; e <= n; ++e) members.push_back(ElementSet::full(e));
    Decomposition d{ElementSet::full(n), canonical_family(std::move(members))};
    if (auto err = validate_decomposition(d)) throw OutOfRange("prefix decomposition: " + *err);
    return d;
}

namespace {

FlagOrdering named_ordering(BuildingSet b, int n,
                            bool (*less)(const ElementSet&, const ElementSet&)) {
    Decomposition d = prefix_decomposition(n);
    std::unordered_set<std::uint64_t> in_d;
    for (const ElementSet& m : d.members) in_d.insert(m.mask());
    std::vector<ElementSet> order;
    for (const ElementSet& m : b.family())
        if (!in_d.count(m.mask())) order.push_back(m);
    std::sort(order.begin(), order.end(), less);
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        if (!less(order[i], order[i + 1]) && !less(order[i + 1], order[i]))
            throw OutOfRange("comparator tie between " + order[i].to_string() + " and " +
                             order[i + 1].to_string());
    FlagOrdering o{std::move(b), std::move(d), std::move(order)};
    if (o.building.size() <= 5000) {
        const OrderingCheck check = verify_flag_ordering(o);
        if (!check.ok) throw NotFlag("named ordering invalid: " + check.message);
    }
    return o;
}

}  // namespace

FlagOrdering ordering_kn(int n) {
    if (n < 2) throw OutOfRange("ordering_kn needs n >= 2");
    return named_ordering(building_set_complete(n), n, max_size_symdiff_less);
}

FlagOrdering ordering_pathn(int n) {
    if (n < 2) throw OutOfRange("ordering_pathn needs n >= 2");
    return named_ordering(building_set_path(n), n, max_size_less);
}

FlagOrdering ordering_star(int n) {
    if (n < 2) throw OutOfRange("ordering_star needs n >= 2");
    return named_ordering(building_set_star(n), n, max_size_symdiff_less);
}

std::string ordering_to_text(const FlagOrdering& o) {
    std::string out = "n " + std::to_string(o.building.n()) + "\n";
    auto emit = [&out](const ElementSet& s) {
        bool first = true;
        for (int e : s.elements()) {
            if (!first) out += ' ';
            out += std::to_string(e);
            first = false;
        }
        out += '\n';
    };
    out += "D:\n";
    for (const ElementSet& s : o.root.members) emit(s);
    out += "order:\n";
    for (const ElementSet& s : o.order) emit(s);
    return out;
}

FlagOrdering ordering_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int n = -1;
    int section = 0;  // 0 = head, 1 = D, 2 = order
    std::vector<ElementSet> dmembers, order;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) {
            if (t[0] == '#') break;
            toks.push_back(t);
        }
        if (toks.empty()) continue;
        if (toks[0] == "n" && toks.size() == 2 && section == 0) {
            n = std::stoi(toks[1]);
            continue;
        }
        if (toks[0] == "D:" && toks.size() == 1) {
            section = 1;
            continue;
        }
        if (toks[0] == "order:" && toks.size() == 1) {
            section = 2;
            continue;
        }
        std::vector<int> elems;
        for (const std::string& tok : toks) {
            try {
                elems.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw ParseError("expected an integer, got '" + tok + "'");
            }
        }
        ElementSet s;
        try {
            s = parse_set_tokens(elems);
        } catch (const Error& e) {
            throw ParseError(std::string("invalid set: ") + e.what());
        }
        if (section == 1)
            dmembers.push_back(s);
        else if (section == 2)
            order.push_back(s);
        else
            throw ParseError("set listed before the 'D:' marker");
    }
    if (n < 1) throw ParseError("ordering file must start with 'n <int>'");
    if (dmembers.empty()) throw ParseError("ordering file missing the 'D:' block");
    std::vector<ElementSet> fam = dmembers;
    fam.insert(fam.end(), order.begin(), order.end());
    try {
        BuildingSet b(ElementSet::full(n), fam);
        Decomposition d{ElementSet::full(n), canonical_family(dmembers)};
        return FlagOrdering{std::move(b), std::move(d), std::move(order)};
    } catch (const Error& e) {
        throw ParseError(std::string("invalid ordering: ") + e.what());
    }
}

}  // namespace nesto
