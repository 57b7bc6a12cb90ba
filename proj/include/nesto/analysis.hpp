#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nesto/gammacomplex.hpp"
#include "nesto/oracle.hpp"
#include "nesto/polyvec.hpp"

namespace nesto {

// Exact isomorphism witness (index map a -> b), or definitive absence.
// Backtracking with degree / neighbor-degree pruning; SizeLimit past 40
// vertices. A returned witness has been re-verified edge-exactly.
std::optional<std::vector<int>> graphs_isomorphic(const FlagComplex& a, const FlagComplex& b);

// True iff f (with f_0 = 1) is the face vector of a balanced simplicial
// complex: on each consecutive level, the faces are compared against the
// minimum shadow achieved by a compressed colored family.
bool ffk_check(const CoeffVector& f);

// Minimum possible number of (q-1)-subsets spanned by m rainbow q-sets under
// a balanced coloring with the given number of colors. Exposed for tests.
std::int64_t ffk_min_shadow(std::int64_t m, int q, int colors);

struct VerifyReport {
    std::string identifier;
    int n = 0;
    std::size_t family_size = 0;
    CoeffVector gamma_nested;
    CoeffVector gamma_volodin;
    std::vector<std::uint64_t> ordering_seeds;
    std::vector<CoeffVector> gamma_complexes;
    bool agreement = false;
    bool ffk = false;
    double nested_ms = 0;
    double volodin_ms = 0;
    double complexes_ms = 0;
    // Cyclic building sets also carry the multinomial formula value printed in
    // the literature, which disagrees with the enumerated gamma; the report
    // surfaces both rather than patching either.
    std::optional<CoeffVector> cyclic_formula;
    bool cyclic_diverges = false;
};

// Compute gamma three independent ways: nested-set enumeration, the
// restriction/contraction recursion, and clique f-vectors over
// `num_orderings` distinct random flag orderings (joined per component when
// disconnected). Exact integer agreement is recorded, along with ffk_check.
VerifyReport verify_triple(const BuildingSet& b, int num_orderings, std::uint64_t seed,
                           const std::string& identifier = "");

// One gamma complex for b: Gamma(O) of a random ordering, joined across the
// maximal elements when disconnected.
FlagComplex gamma_complex_of(const BuildingSet& b, const OrderingStrategy& strategy);

std::string report_to_text(const VerifyReport& r);
std::string report_to_json(const VerifyReport& r);

// (n; r, r, n-2r) multinomials for r = 0..floor(n/2).
CoeffVector cyclic_formula_vector(int n);

}  // namespace nesto
