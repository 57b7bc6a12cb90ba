#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nesto/ordering.hpp"
#include "nesto/polyvec.hpp"
#include "nesto/setcore.hpp"

namespace nesto {

// A finite simple graph with uniquely labeled vertices. Its faces are the
// cliques; they are never materialized.
class FlagComplex {
public:
    FlagComplex() = default;

    int add_vertex(const std::string& label);  // UnknownLabel on duplicates
    void add_edge(int u, int v);

    int vertex_count() const { return static_cast<int>(labels_.size()); }
    int edge_count() const { return edge_count_; }
    bool adjacent(int u, int v) const;
    const std::string& label(int v) const;
    int index_of(const std::string& label) const;  // UnknownLabel if missing
    bool has_label(const std::string& label) const;

    std::vector<std::pair<int, int>> edges() const;  // (i, j) with i < j
    std::vector<int> degrees() const;
    std::vector<int> degree_multiset() const;  // sorted ascending

private:
    void check_vertex(int v) const;
    std::vector<std::string> labels_;
    std::vector<std::vector<char>> adj_;
    std::unordered_map<std::string, int> index_;
    int edge_count_ = 0;
};

// Indices i < j of ordered elements that are non-degenerate with respect to
// b_j: U holds the earlier elements not inside b_j whose image in the
// contraction by b_j is new, V holds earlier subsets of b_j with a strictly
// intermediate earlier element.
struct UVSets {
    int j = 0;
    std::vector<int> U;  // ascending, 1-based ordering indices
    std::vector<int> V;
};

UVSets compute_uv(const FlagOrdering& o, int j);

// Vertices v(b_1)..v(b_k), labeled by their sets; v(b_i) ~ v(b_j) iff
// i in U_j u V_j.
FlagComplex build_gamma_complex(const FlagOrdering& o);

// Coefficient of t^i = number of i-cliques (t^0 coefficient 1).
CoeffVector f_vector_cliques(const FlagComplex& g);

FlagComplex induced_subcomplex(const FlagComplex& g, const std::vector<std::string>& labels);
FlagComplex induced_by_indices(const FlagComplex& g, const std::vector<int>& vertices);

// Disjoint union plus all cross edges; f multiplies. Colliding labels on the
// right side are renamed with a ' suffix.
FlagComplex join(const FlagComplex& a, const FlagComplex& b);

// The induced ordering on B_k / b_k: decomposition D/b_k, order = images of
// the U_k elements in index order. k_index may point at any prefix end; the
// ordering is truncated there first.
FlagOrdering contracted_ordering(const FlagOrdering& o, int k_index);

// The induced ordering on B_k|_{b_k}: decomposition D_k = D|_{b_k} plus the
// degenerate subsets of b_k (and b_k itself), order = V_k elements.
FlagOrdering restricted_ordering(const FlagOrdering& o, int k_index);

bool same_labeled_complex(const FlagComplex& a, const FlagComplex& b);

// Equal vertex counts and identical adjacency under the identity map on
// positions; labels are ignored.
bool same_complex_by_position(const FlagComplex& a, const FlagComplex& b);

FlagComplex relabel(const FlagComplex& g,
                    const std::function<std::string(const std::string&)>& rename);

// Plain-text vertex/edge listing and DOT export. Labels must not contain
// whitespace.
std::string complex_to_text(const FlagComplex& g);
FlagComplex complex_from_text(std::string_view text);
std::string complex_to_dot(const FlagComplex& g);

}  // namespace nesto
