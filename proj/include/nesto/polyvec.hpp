#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nesto/ordering.hpp"
#include "nesto/setcore.hpp"

namespace nesto {

// Integer polynomial; c[i] is the coefficient of t^i. Equality ignores
// trailing zeros. All arithmetic is exact and overflow-checked.
struct CoeffVector {
    std::vector<std::int64_t> c;

    CoeffVector() = default;
    CoeffVector(std::initializer_list<std::int64_t> init) : c(init) {}
    explicit CoeffVector(std::vector<std::int64_t> coeffs) : c(std::move(coeffs)) {}

    static CoeffVector one() { return CoeffVector{1}; }

    std::int64_t at(std::size_t i) const { return i < c.size() ? c[i] : 0; }
    int degree() const;  // -1 for the zero polynomial
    CoeffVector trimmed() const;

    bool operator==(const CoeffVector& o) const;

    // "(1, 22, 16)"
    std::string to_string() const;
    static CoeffVector parse(std::string_view text);  // lenient
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t binomial(int n, int k);  // exact, throws OverflowError past int64

CoeffVector poly_add(const CoeffVector& a, const CoeffVector& b);
CoeffVector poly_mul(const CoeffVector& a, const CoeffVector& b);
CoeffVector poly_shift_mul_t(const CoeffVector& a);

// h_j = sum_i f_i * C(d-i, j-i) * (-1)^(j-i); requires deg(f) <= d.
CoeffVector f_to_h(const CoeffVector& f, int d);

// Inverse substitution; round-trips with f_to_h.
CoeffVector h_to_f(const CoeffVector& h, int d);

// sum_i g_i t^i (1+t)^(d-2i); requires deg(g) <= floor(d/2).
CoeffVector gamma_expand(const CoeffVector& g, int d);

// The unique gamma with h = sum gamma_i t^i (1+t)^(d-2i); h must satisfy the
// palindrome condition h_i = h_{d-i}, otherwise NotSymmetric.
CoeffVector h_to_gamma(const CoeffVector& h, int d);

// gamma via the restriction/contraction recursion, memoized on the canonical
// (dense-relabeled) form of each building set. Disconnected building sets
// multiply over their maximal elements. Requires a flag input.
class VolodinEngine {
public:
    CoeffVector gamma(const BuildingSet& b);

    // Same fold along a caller-chosen flag ordering; the result must not
    // depend on the choice.
    CoeffVector gamma_with_ordering(const FlagOrdering& o);

private:
    CoeffVector gamma_impl(const BuildingSet& b);
    CoeffVector fold(const BuildingSet& b, const Decomposition& d,
                     const std::vector<ElementSet>& order);
    std::unordered_map<std::string, CoeffVector> memo_;
};

CoeffVector gamma_via_volodin(const BuildingSet& b);

// Dense relabeling of the family to ground {1..m}, serialized for memo keys.
std::string canonical_building_key(const BuildingSet& b);

}  // namespace nesto
