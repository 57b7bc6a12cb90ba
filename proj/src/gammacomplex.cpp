#include "nesto/gammacomplex.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

namespace nesto {

int FlagComplex::add_vertex(const std::string& label) {
    if (index_.count(label)) throw UnknownLabel("duplicate vertex label " + label);
    const int v = vertex_count();
    labels_.push_back(label);
    index_.emplace(label, v);
    for (auto& row : adj_) row.push_back(0);
    adj_.emplace_back(labels_.size(), 0);
    return v;
}

void FlagComplex::check_vertex(int v) const {
    if (v < 0 || v >= vertex_count())
        throw IndexOutOfRange("vertex index " + std::to_string(v) + " outside [0, " +
                              std::to_string(vertex_count()) + ")");
}

void FlagComplex::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw IndexOutOfRange("loops are not allowed");
    if (adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) return;
    adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
    adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
    ++edge_count_;
}

bool FlagComplex::adjacent(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] != 0;
}

const std::string& FlagComplex::label(int v) const {
    check_vertex(v);
    return labels_[static_cast<std::size_t>(v)];
}

int FlagComplex::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw UnknownLabel("unknown vertex label " + label);
    return it->second;
}

bool FlagComplex::has_label(const std::string& label) const { return index_.count(label) != 0; }

std::vector<std::pair<int, int>> FlagComplex::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < vertex_count(); ++u)
        for (int v = u + 1; v < vertex_count(); ++v)
            if (adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)])
                out.emplace_back(u, v);
    return out;
}

std::vector<int> FlagComplex::degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(vertex_count()), 0);
    for (const auto& [u, v] : edges()) {
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
    }
    return deg;
}

std::vector<int> FlagComplex::degree_multiset() const {
    std::vector<int> deg = degrees();
    std::sort(deg.begin(), deg.end());
    return deg;
}

namespace {

// Prefix families B_0 = D, B_i = D u {b_1..b_i} of an ordering, flattened
// into one list: entries [0, |D|) are D, entry |D|+i-1 is b_i.
struct OrderingScan {
    explicit OrderingScan(const FlagOrdering& o) : dsize(o.root.members.size()) {
        all.reserve(dsize + o.order.size());
        for (const ElementSet& m : o.root.members) all.push_back(m);
        for (const ElementSet& b : o.order) all.push_back(b);
    }
    // elements of B_{i-1}: all[0 .. dsize+i-1)
    std::size_t prefix_end(int i) const { return dsize + static_cast<std::size_t>(i) - 1; }
    std::size_t dsize;
    std::vector<ElementSet> all;
};

bool uv_membership(const OrderingScan& scan, const FlagOrdering& o, int i, int j) {
    const ElementSet bi = o.order[static_cast<std::size_t>(i - 1)];
    const ElementSet bj = o.order[static_cast<std::size_t>(j - 1)];
    const std::size_t end = scan.prefix_end(i);
    if (bi.subset_of(bj)) {
        for (std::size_t t = 0; t < end; ++t) {
            const ElementSet b = scan.all[t];
            if (bi.proper_subset_of(b) && b.proper_subset_of(bj)) return true;
        }
        return false;
    }
    const ElementSet image = bi.minus(bj);
    for (std::size_t t = 0; t < end; ++t)
        if (scan.all[t].minus(bj) == image) return false;
    return true;
}

}  // namespace

UVSets compute_uv(const FlagOrdering& o, int j) {
    if (j < 1 || j > o.k()) throw IndexOutOfRange("ordering index " + std::to_string(j) +
                                                  " outside [1, " + std::to_string(o.k()) + "]");
    const OrderingScan scan(o);
    UVSets uv;
    uv.j = j;
    const ElementSet bj = o.order[static_cast<std::size_t>(j - 1)];
    for (int i = 1; i < j; ++i) {
        if (!uv_membership(scan, o, i, j)) continue;
        const ElementSet bi = o.order[static_cast<std::size_t>(i - 1)];
        (bi.subset_of(bj) ? uv.V : uv.U).push_back(i);
    }
    return uv;
}

FlagComplex build_gamma_complex(const FlagOrdering& o) {
    FlagComplex g;
    for (const ElementSet& b : o.order) g.add_vertex(b.to_string());
    const OrderingScan scan(o);
    for (int j = 2; j <= o.k(); ++j)
        for (int i = 1; i < j; ++i)
            if (uv_membership(scan, o, i, j)) g.add_edge(i - 1, j - 1);
    return g;
}

namespace {

// Clique counting over a bitset adjacency restricted to later vertices in a
// degeneracy order; each clique is visited once, in sorted vertex order.
struct CliqueCounter {
    int words = 0;
    std::vector<std::vector<std::uint64_t>> later;
    std::vector<std::int64_t> count;

    void run(const FlagComplex& g) {
        const int m = g.vertex_count();
        words = (m + 63) / 64;
        count.assign(static_cast<std::size_t>(m) + 1, 0);
        count[0] = 1;
        if (m == 0) return;

        std::vector<int> deg = g.degrees();
        std::vector<char> removed(static_cast<std::size_t>(m), 0);
        std::vector<int> order;
        order.reserve(static_cast<std::size_t>(m));
        for (int step = 0; step < m; ++step) {
            int best = -1;
            for (int v = 0; v < m; ++v)
                if (!removed[static_cast<std::size_t>(v)] &&
                    (best < 0 || deg[static_cast<std::size_t>(v)] < deg[static_cast<std::size_t>(best)]))
                    best = v;
            removed[static_cast<std::size_t>(best)] = 1;
            order.push_back(best);
            for (int v = 0; v < m; ++v)
                if (!removed[static_cast<std::size_t>(v)] && g.adjacent(best, v))
                    --deg[static_cast<std::size_t>(v)];
        }
        std::vector<int> rank(static_cast<std::size_t>(m), 0);
        for (int i = 0; i < m; ++i) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

        later.assign(static_cast<std::size_t>(m), std::vector<std::uint64_t>(static_cast<std::size_t>(words), 0));
        for (const auto& [u, v] : g.edges()) {
            const int ru = rank[static_cast<std::size_t>(u)], rv = rank[static_cast<std::size_t>(v)];
            const int lo = std::min(ru, rv), hi = std::max(ru, rv);
            later[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi / 64)] |=
                std::uint64_t{1} << (hi % 64);
        }

        std::vector<std::uint64_t> base(static_cast<std::size_t>(words), 0);
        for (int i = 0; i < m; ++i) base[static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64);
        recurse(base, 0);
    }

    void recurse(const std::vector<std::uint64_t>& candidates, int depth) {
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = candidates[static_cast<std::size_t>(w)];
            while (bits) {
                const int v = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                ++count[static_cast<std::size_t>(depth) + 1];
                std::vector<std::uint64_t> next(static_cast<std::size_t>(words));
                bool any = false;
                for (int t = 0; t < words; ++t) {
                    next[static_cast<std::size_t>(t)] =
                        candidates[static_cast<std::size_t>(t)] &
                        later[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)];
                    any = any || next[static_cast<std::size_t>(t)];
                }
                if (any) recurse(next, depth + 1);
            }
        }
    }
};

}  // namespace

CoeffVector f_vector_cliques(const FlagComplex& g) {
    CliqueCounter counter;
    counter.run(g);
    return CoeffVector(std::move(counter.count)).trimmed();
}

FlagComplex induced_by_indices(const FlagComplex& g, const std::vector<int>& vertices) {
    FlagComplex out;
    for (int v : vertices) out.add_vertex(g.label(v));
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            if (g.adjacent(vertices[a], vertices[b]))
                out.add_edge(static_cast<int>(a), static_cast<int>(b));
    return out;
}

FlagComplex induced_subcomplex(const FlagComplex& g, const std::vector<std::string>& labels) {
    std::vector<int> idx;
    idx.reserve(labels.size());
    for (const std::string& l : labels) idx.push_back(g.index_of(l));
    return induced_by_indices(g, idx);
}

FlagComplex join(const FlagComplex& a, const FlagComplex& b) {
    FlagComplex out;
    for (int v = 0; v < a.vertex_count(); ++v) out.add_vertex(a.label(v));
    for (int v = 0; v < b.vertex_count(); ++v) {
        std::string label = b.label(v);
        while (out.has_label(label)) label += '\'';
        out.add_vertex(label);
    }
    for (const auto& [u, v] : a.edges()) out.add_edge(u, v);
    const int off = a.vertex_count();
    for (const auto& [u, v] : b.edges()) out.add_edge(off + u, off + v);
    for (int u = 0; u < a.vertex_count(); ++u)
        for (int v = 0; v < b.vertex_count(); ++v) out.add_edge(u, off + v);
    return out;
}

FlagOrdering contracted_ordering(const FlagOrdering& o, int k_index) {
    if (k_index < 1 || k_index > o.k())
        throw IndexOutOfRange("contraction index outside [1, k]");
    const FlagOrdering t = o.truncated(k_index);
    const ElementSet bk = t.order.back();
    const UVSets uv = compute_uv(t, k_index);

    std::vector<ElementSet> dmembers;
    for (const ElementSet& d : t.root.members)
        if (!d.subset_of(bk)) dmembers.push_back(d.minus(bk));
    Decomposition d{t.root.base.minus(bk), canonical_family(std::move(dmembers))};
    if (auto err = validate_decomposition(d))
        throw NotFlag("contracted decomposition invalid: " + *err);

    std::vector<ElementSet> order;
    order.reserve(uv.U.size());
    for (int u : uv.U) order.push_back(t.order[static_cast<std::size_t>(u - 1)].minus(bk));

    FlagOrdering out{contraction(t.building, bk), std::move(d), std::move(order)};
    const OrderingCheck check = verify_flag_ordering(out);
    if (!check.ok) throw NotFlag("contracted ordering invalid: " + check.message);
    return out;
}

FlagOrdering restricted_ordering(const FlagOrdering& o, int k_index) {
    if (k_index < 1 || k_index > o.k())
        throw IndexOutOfRange("restriction index outside [1, k]");
    const FlagOrdering t = o.truncated(k_index);
    const ElementSet bk = t.order.back();
    const UVSets uv = compute_uv(t, k_index);
    std::unordered_set<int> in_v(uv.V.begin(), uv.V.end());

    std::vector<ElementSet> dmembers;
    for (const ElementSet& d : t.root.members)
        if (d.subset_of(bk)) dmembers.push_back(d);
    for (int j = 1; j <= k_index; ++j) {
        const ElementSet bj = t.order[static_cast<std::size_t>(j - 1)];
        if (bj.subset_of(bk) && !in_v.count(j)) dmembers.push_back(bj);
    }
    Decomposition d{bk, canonical_family(std::move(dmembers))};
    if (auto err = validate_decomposition(d))
        throw NotFlag("restricted decomposition invalid: " + *err);

    std::vector<ElementSet> order;
    order.reserve(uv.V.size());
    for (int v : uv.V) order.push_back(t.order[static_cast<std::size_t>(v - 1)]);

    FlagOrdering out{restriction(t.building, bk), std::move(d), std::move(order)};
    const OrderingCheck check = verify_flag_ordering(out);
    if (!check.ok) throw NotFlag("restricted ordering invalid: " + check.message);
    return out;
}

bool same_labeled_complex(const FlagComplex& a, const FlagComplex& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    for (int v = 0; v < a.vertex_count(); ++v)
        if (!b.has_label(a.label(v))) return false;
    for (const auto& [u, v] : a.edges())
        if (!b.adjacent(b.index_of(a.label(u)), b.index_of(a.label(v)))) return false;
    return true;
}

bool same_complex_by_position(const FlagComplex& a, const FlagComplex& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    for (int u = 0; u < a.vertex_count(); ++u)
        for (int v = u + 1; v < a.vertex_count(); ++v)
            if (a.adjacent(u, v) != b.adjacent(u, v)) return false;
    return true;
}

FlagComplex relabel(const FlagComplex& g,
                    const std::function<std::string(const std::string&)>& rename) {
    FlagComplex out;
    for (int v = 0; v < g.vertex_count(); ++v) out.add_vertex(rename(g.label(v)));
    for (const auto& [u, v] : g.edges()) out.add_edge(u, v);
    return out;
}

std::string complex_to_text(const FlagComplex& g) {
    std::string out = "vertices " + std::to_string(g.vertex_count()) + "\n";
    for (int v = 0; v < g.vertex_count(); ++v) out += g.label(v) + "\n";
    out += "edges " + std::to_string(g.edge_count()) + "\n";
    for (const auto& [u, v] : g.edges()) out += g.label(u) + " " + g.label(v) + "\n";
    return out;
}

FlagComplex complex_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string tok;
    if (!(in >> tok) || tok != "vertices") throw ParseError("expected 'vertices <count>'");
    int nv = 0;
    if (!(in >> nv) || nv < 0) throw ParseError("bad vertex count");
    FlagComplex g;
    for (int i = 0; i < nv; ++i) {
        if (!(in >> tok)) throw ParseError("missing vertex label");
        g.add_vertex(tok);
    }
    if (!(in >> tok) || tok != "edges") throw ParseError("expected 'edges <count>'");
    int ne = 0;
    if (!(in >> ne) || ne < 0) throw ParseError("bad edge count");
    for (int i = 0; i < ne; ++i) {
        std::string a, b;
        if (!(in >> a >> b)) throw ParseError("missing edge endpoints");
        try {
            g.add_edge(g.index_of(a), g.index_of(b));
        } catch (const Error& e) {
            throw ParseError(std::string("bad edge: ") + e.what());
        }
    }
    return g;
}

std::string complex_to_dot(const FlagComplex& g) {
    std::string out = "graph G {\n";
    for (int v = 0; v < g.vertex_count(); ++v) out += "  \"" + g.label(v) + "\";\n";
    for (const auto& [u, v] : g.edges())
        out += "  \"" + g.label(u) + "\" -- \"" + g.label(v) + "\";\n";
    out += "}\n";
    return out;
}

}  // namespace nesto
