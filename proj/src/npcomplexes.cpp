#include "nesto/npcomplexes.hpp"

#include <algorithm>

#include "nesto/ordering.hpp"

namespace nesto {

ElementSet PeakPermutation::tail_set() const {
    ElementSet s;
    for (std::size_t i = static_cast<std::size_t>(peak_position); i < word.size(); ++i)
        s = s | ElementSet::single(word[i]);
    return s;
}

PeakPermutation PeakPermutation::from_tail_set(int n, ElementSet tail) {
    if (!tail.subset_of(ElementSet::full(n))) throw OutOfRange("tail escapes [n]");
    const ElementSet head = ElementSet::full(n).minus(tail);
    if (head.empty() || tail.size() < 2 || head.max_element() < tail.min_element())
        throw OutOfRange("tail set " + tail.to_string() + " does not give a one-peak word");
    PeakPermutation p;
    for (int e : head.elements()) p.word.push_back(e);
    p.peak_position = head.size();
    for (int e : tail.elements()) p.word.push_back(e);
    return p;
}

std::vector<PeakPermutation> peak_permutations(int n) {
    std::vector<PeakPermutation> out;
    if (n < 3) return out;
    const std::uint64_t top = std::uint64_t{1} << n;
    for (std::uint64_t m = 1; m < top - 1; ++m) {
        const ElementSet tail = ElementSet::from_mask(m);
        const ElementSet head = ElementSet::full(n).minus(tail);
        if (tail.size() < 2 || head.empty()) continue;
        if (head.max_element() < tail.min_element()) continue;  // no drop at the bar
        out.push_back(PeakPermutation::from_tail_set(n, tail));
    }
    return out;
}

bool sn_hat_adjacent_closed_form(int n, ElementSet u2, ElementSet v2) {
    if (u2.size() <= v2.size()) return false;
    if (!v2.subset_of(u2)) return false;
    const ElementSet mid = u2.minus(v2);
    if (mid.size() < 2) return false;
    const ElementSet u1 = ElementSet::full(n).minus(u2);
    if (u1.empty()) return false;
    return mid.min_element() < u1.max_element() && mid.max_element() > v2.min_element();
}

bool sn_hat_adjacent_bruteforce(int n, ElementSet u2, ElementSet v2) {
    if (u2.size() <= v2.size()) return false;
    const ElementSet u1 = ElementSet::full(n).minus(u2);
    if (u1.intersects(v2)) return false;  // u1 . a . v2 cannot be a permutation
    std::vector<int> head = u1.elements();
    std::vector<int> tail = v2.elements();
    std::vector<int> mid = ElementSet::full(n).minus(u1).minus(v2).elements();
    std::sort(mid.begin(), mid.end());
    do {
        std::vector<int> w = head;
        w.insert(w.end(), mid.begin(), mid.end());
        w.insert(w.end(), tail.begin(), tail.end());
        auto peak_at = [&w](std::size_t i) {  // 1-based position
            const int prev = i >= 2 ? w[i - 2] : 0;
            return i >= 1 && i < w.size() && prev < w[i - 1] && w[i - 1] > w[i];
        };
        if (peak_at(head.size()) && peak_at(head.size() + mid.size())) return true;
    } while (std::next_permutation(mid.begin(), mid.end()));
    return false;
}

namespace {

std::string tail_label(const PeakPermutation& p) { return p.tail_set().to_string(); }

}  // namespace

FlagComplex gamma_complex_sn_hat(int n) {
    if (n < 2) throw OutOfRange("n must be >= 2");
    const std::vector<PeakPermutation> verts = peak_permutations(n);
    FlagComplex g;
    for (const PeakPermutation& p : verts) g.add_vertex(tail_label(p));
    for (std::size_t a = 0; a < verts.size(); ++a)
        for (std::size_t b = a + 1; b < verts.size(); ++b) {
            const ElementSet sa = verts[a].tail_set(), sb = verts[b].tail_set();
            if (sn_hat_adjacent_closed_form(n, sa, sb) || sn_hat_adjacent_closed_form(n, sb, sa))
                g.add_edge(static_cast<int>(a), static_cast<int>(b));
        }
    return g;
}

namespace {

std::string pair_label(int a, int b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

// Distinct a<b, c<d, all four values distinct, nested or separated.
bool non_crossing(int a, int b, int c, int d) {
    if (a == c || a == d || b == c || b == d) return false;
    return (a < c && d < b) || (c < a && b < d) || (b < c) || (d < a);
}

}  // namespace

FlagComplex gamma_complex_s312(int n) {
    if (n < 2) throw OutOfRange("n must be >= 2");
    FlagComplex g;
    std::vector<std::pair<int, int>> verts;
    for (int a = 1; a < n - 1; ++a)
        for (int b = a + 1; b <= n - 1; ++b) {
            verts.emplace_back(a, b);
            g.add_vertex(pair_label(a, b));
        }
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (non_crossing(verts[i].first, verts[i].second, verts[j].first, verts[j].second))
                g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
}

FlagComplex gamma_complex_pn(int n) {
    if (n < 2) throw OutOfRange("n must be >= 2");
    FlagComplex g;
    std::vector<std::pair<int, int>> verts;
    for (int l = 1; l <= n - 1; ++l)
        for (int r = 1; r <= n - 1; ++r) {
            if (l == r) continue;
            verts.emplace_back(l, r);
            g.add_vertex(pair_label(l, r));
        }
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            const auto [l1, r1] = verts[i];
            const auto [l2, r2] = verts[j];
            if (l1 == l2 || l1 == r2 || r1 == l2 || r1 == r2) continue;
            if ((l1 < l2 && r1 < r2) || (l2 < l1 && r2 < r1))
                g.add_edge(static_cast<int>(i), static_cast<int>(j));
        }
    return g;
}

bool np_rule_adjacent(ElementSet a, ElementSet b) {
    if (a.subset_of(b)) return b.minus(a).min_element() < a.max_element();
    if (!b.contains(a.max_element()) && a.minus(b).size() >= 2) {
        const ElementSet gain = b.minus(a);
        if (!gain.empty() && gain.min_element() > a.max_element()) return true;
    }
    return false;
}

namespace {

// The two adjacency rules apply with `a` the element that the comparator
// places earlier; applying them to both role assignments over-generates
// (nested same-max pairs would wrongly connect). The identity with the
// ordering complex pins this down.
FlagComplex combinatorial_complex(const BuildingSet& b, int n) {
    const Decomposition d = prefix_decomposition(n);
    std::unordered_set<std::uint64_t> in_d;
    for (const ElementSet& m : d.members) in_d.insert(m.mask());
    std::vector<ElementSet> verts;
    for (const ElementSet& m : b.family())
        if (!in_d.count(m.mask())) verts.push_back(m);
    std::sort(verts.begin(), verts.end(), max_size_symdiff_less);
    FlagComplex g;
    for (const ElementSet& v : verts) g.add_vertex(v.to_string());
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (np_rule_adjacent(verts[i], verts[j]))
                g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
}

}  // namespace

FlagComplex combinatorial_kn_complex(int n) {
    if (n < 2) throw OutOfRange("n must be >= 2");
    return combinatorial_complex(building_set_complete(n), n);
}

FlagComplex combinatorial_star_complex(int n) {
    if (n < 2) throw OutOfRange("n must be >= 2");
    return combinatorial_complex(building_set_star(n), n);
}

}  // namespace nesto
