#pragma once

#include "nesto/polyvec.hpp"
#include "nesto/setcore.hpp"

namespace nesto {

// Face counts of the nested set complex on B - B_max: a nested set is a
// subfamily whose members are pairwise nested or disjoint and in which no
// union of two or more pairwise-disjoint members lies in B. This is the dual
// simplicial complex of the nestohedron, enumerated directly; nothing here
// touches orderings or gamma complexes.
CoeffVector nested_f_vector(const BuildingSet& b);

// h_to_gamma(f_to_h(nested_f_vector(b), d)) with d = n - |B_max|. Propagates
// NotSymmetric when the nested complex is not a sphere (an internal bug).
CoeffVector gamma_oracle(const BuildingSet& b);

}  // namespace nesto
