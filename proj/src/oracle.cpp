#include "nesto/oracle.hpp"

#include <algorithm>

namespace nesto {

namespace {

struct NestedDfs {
    const BuildingSet* b = nullptr;
    std::vector<ElementSet> universe;  // B - B_max, canonical order
    std::vector<ElementSet> chosen;
    std::vector<std::int64_t> count;

    // Pairwise nested-or-disjoint against the current members, and no union of
    // disjoint members with the candidate may land in B. Testing unions
    // against the maximal members among those disjoint from the candidate
    // suffices: the union axiom lifts any violating union to one of maximal
    // members.
    bool compatible(ElementSet cand) const {
        std::vector<ElementSet> disjoint;
        for (const ElementSet& m : chosen) {
            const ElementSet meet = m & cand;
            if (meet.empty()) {
                disjoint.push_back(m);
                continue;
            }
            if (meet != m && meet != cand) return false;
        }
        std::vector<ElementSet> roots;
        for (const ElementSet& m : disjoint) {
            bool maximal = true;
            for (const ElementSet& t : disjoint)
                if (m.proper_subset_of(t)) {
                    maximal = false;
                    break;
                }
            if (maximal) roots.push_back(m);
        }
        const std::size_t top = std::size_t{1} << roots.size();
        for (std::size_t pick = 1; pick < top; ++pick) {
            ElementSet u = cand;
            for (std::size_t r = 0; r < roots.size(); ++r)
                if ((pick >> r) & 1) u = u | roots[r];
            if (b->contains(u)) return false;
        }
        return true;
    }

    void run(std::size_t start) {
        for (std::size_t i = start; i < universe.size(); ++i) {
            if (!compatible(universe[i])) continue;
            chosen.push_back(universe[i]);
            if (chosen.size() >= count.size()) count.resize(chosen.size() + 1, 0);
            ++count[chosen.size()];
            run(i + 1);
            chosen.pop_back();
        }
    }
};

}  // namespace

CoeffVector nested_f_vector(const BuildingSet& b) {
    NestedDfs dfs;
    dfs.b = &b;
    std::unordered_set<std::uint64_t> maximal;
    for (const ElementSet& m : maximal_elements(b)) maximal.insert(m.mask());
    for (const ElementSet& s : b.family())
        if (!maximal.count(s.mask())) dfs.universe.push_back(s);
    dfs.count.assign(1, 1);
    dfs.run(0);
    return CoeffVector(std::move(dfs.count));
}

CoeffVector gamma_oracle(const BuildingSet& b) {
    const int d = b.n() - static_cast<int>(maximal_elements(b).size());
    const CoeffVector f = nested_f_vector(b);
    return h_to_gamma(f_to_h(f, d), d);
}

}  // namespace nesto
