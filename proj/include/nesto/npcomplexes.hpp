#pragma once

#include <vector>

#include "nesto/gammacomplex.hpp"
#include "nesto/setcore.hpp"

namespace nesto {

// Permutation of [n] with exactly one peak and no double or final descent:
// an increasing prefix, a drop, then an increasing suffix.
struct PeakPermutation {
    std::vector<int> word;
    int peak_position = 0;  // 1-based index i with w_{i-1} < w_i > w_{i+1}, w_0 = 0

    ElementSet tail_set() const;  // the values after the peak
    static PeakPermutation from_tail_set(int n, ElementSet tail);
};

// Vertices of the one-peak complex, one per admissible tail set.
std::vector<PeakPermutation> peak_permutations(int n);

// Closed-form adjacency for tail sets u2, v2 with |u2| > |v2|.
bool sn_hat_adjacent_closed_form(int n, ElementSet u2, ElementSet v2);

// Brute-force evaluator: is there a permutation u1 | a | v2 with peaks at both
// bars? Must agree with the closed form.
bool sn_hat_adjacent_bruteforce(int n, ElementSet u2, ElementSet v2);

// One-peak permutation complex; vertices labeled by their tail sets.
FlagComplex gamma_complex_sn_hat(int n);

// Non-crossing pair complex on {(a,b) | 1 <= a < b <= n-1}; pairs sharing an
// endpoint cross.
FlagComplex gamma_complex_s312(int n);

// Ordered-pair complex on {(l,r) in [n-1]^2 | l != r}.
FlagComplex gamma_complex_pn(int n);

// Direct combinatorial adjacency for B(K_n) minus the prefix decomposition;
// must be graph-identical to build_gamma_complex(ordering_kn(n)).
FlagComplex combinatorial_kn_complex(int n);

// Same for B(K_{1,n-1}); matches build_gamma_complex(ordering_star(n)).
FlagComplex combinatorial_star_complex(int n);

// The shared two-rule adjacency of the K_n and star complexes, tried under
// both role assignments by the callers above.
bool np_rule_adjacent(ElementSet a, ElementSet b);

}  // namespace nesto
