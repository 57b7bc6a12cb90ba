#include <doctest.h>

#include <random>

#include "testutil.hpp"

using namespace nesto;
using testutil::es;

namespace {

FlagComplex path3_labeled(const char* a, const char* b, const char* c) {
    FlagComplex g;
    g.add_vertex(a);
    g.add_vertex(b);
    g.add_vertex(c);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    return g;
}

}  // namespace

TEST_CASE("isomorphism finds and verifies witnesses") {
    const FlagComplex a = path3_labeled("x", "y", "z");
    const FlagComplex b = path3_labeled("m", "k", "p");
    const auto witness = graphs_isomorphic(a, b);
    REQUIRE(witness.has_value());
    for (int u = 0; u < 3; ++u)
        for (int v = u + 1; v < 3; ++v)
            CHECK(a.adjacent(u, v) ==
                  b.adjacent((*witness)[static_cast<std::size_t>(u)],
                             (*witness)[static_cast<std::size_t>(v)]));

    FlagComplex triangle;
    triangle.add_vertex("a");
    triangle.add_vertex("b");
    triangle.add_vertex("c");
    triangle.add_edge(0, 1);
    triangle.add_edge(1, 2);
    triangle.add_edge(0, 2);
    CHECK_FALSE(graphs_isomorphic(a, triangle).has_value());
    CHECK_FALSE(graphs_isomorphic(triangle, a).has_value());  // symmetric

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 6);
        const FlagComplex g = testutil::random_graph_complex(n, rng);
        // relabel via a random permutation
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        FlagComplex h;
        for (int v = 0; v < n; ++v) h.add_vertex("w" + std::to_string(v));
        for (const auto& [u, v] : g.edges())
            h.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
        CHECK(graphs_isomorphic(g, h).has_value());
    }

    FlagComplex big;
    for (int v = 0; v < 41; ++v) big.add_vertex("v" + std::to_string(v));
    CHECK_THROWS_AS(graphs_isomorphic(big, big), SizeLimit);
}

TEST_CASE("the two cyclic complexes are not isomorphic") {
    const FlagComplex g1 = build_gamma_complex(testutil::cyc5_ordering_one());
    const FlagComplex g2 = build_gamma_complex(testutil::cyc5_ordering_two());
    CHECK_FALSE(graphs_isomorphic(g1, g2).has_value());
}

TEST_CASE("ffk basics") {
    CHECK_FALSE(ffk_check(CoeffVector{1, 1, 1}));
    CHECK(ffk_check(CoeffVector{1, 2}));
    CHECK(ffk_check(CoeffVector{1, 22, 16}));
    CHECK(ffk_check(CoeffVector{1}));
    CHECK(ffk_check(CoeffVector{1, 3, 3, 1}));   // a full triangle, three colors
    CHECK_FALSE(ffk_check(CoeffVector{1, 3, 3})); // no bipartite triangle
    CHECK_THROWS_AS(ffk_check(CoeffVector{2, 1}), MalformedVector);
    CHECK_THROWS_AS(ffk_check(CoeffVector{1, -1}), MalformedVector);
}

TEST_CASE("ffk agrees with exhaustive balanced-complex search up to four vertices") {
    const auto table = testutil::balanced_achievable(4);
    std::int64_t caps[5] = {1, 4, 6, 4, 1};
    for (std::int64_t f1 = 0; f1 <= 4; ++f1)
        for (std::int64_t f2 = 0; f2 <= caps[2]; ++f2)
            for (std::int64_t f3 = 0; f3 <= caps[3]; ++f3)
                for (std::int64_t f4 = 0; f4 <= caps[4]; ++f4) {
                    const CoeffVector f{1, f1, f2, f3, f4};
                    CHECK(ffk_check(f) == testutil::balanced_feasible(f, table));
                }
}

TEST_CASE("explicitly constructed balanced complexes always pass ffk") {
    // Random coloring of up to 8 vertices into `blocks` classes and a random
    // downward-closed rainbow family containing at least one face of size
    // `blocks`, so the complex is balanced and its f-vector must be accepted.
    std::mt19937_64 rng(31);
    int tested = 0;
    for (int trial = 0; trial < 400 && tested < 150; ++trial) {
        const int v = 2 + static_cast<int>(rng() % 7);
        const int blocks = 2 + static_cast<int>(rng() % (v - 1));
        std::vector<int> color(static_cast<std::size_t>(v));
        for (int i = 0; i < v; ++i)
            color[static_cast<std::size_t>(i)] = i < blocks ? i : static_cast<int>(rng() % blocks);

        std::vector<ElementSet> candidates;
        std::vector<ElementSet> full_size;
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << v); ++m) {
            const ElementSet s = ElementSet::from_mask(m);
            if (s.size() < 2 || s.size() > blocks) continue;
            unsigned used = 0;
            bool rainbow = true;
            for (int e : s.elements()) {
                const unsigned bit = 1u << color[static_cast<std::size_t>(e - 1)];
                if (used & bit) {
                    rainbow = false;
                    break;
                }
                used |= bit;
            }
            if (!rainbow) continue;
            candidates.push_back(s);
            if (s.size() == blocks) full_size.push_back(s);
        }
        if (full_size.empty()) continue;
        ++tested;
        std::sort(candidates.begin(), candidates.end(), canonical_less);

        const ElementSet anchor = full_size[rng() % full_size.size()];
        std::vector<char> in(candidates.size(), 0);
        std::vector<std::int64_t> counts(static_cast<std::size_t>(blocks) + 1, 0);
        counts[0] = 1;
        counts[1] = v;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const bool forced = candidates[i].subset_of(anchor);
            if (!forced && rng() % 3 == 0) continue;
            int facets = 0;
            for (std::size_t j = 0; j < i; ++j)
                if (in[j] && candidates[j].proper_subset_of(candidates[i]) &&
                    candidates[j].size() == candidates[i].size() - 1)
                    ++facets;
            if (candidates[i].size() > 2 && facets != candidates[i].size()) continue;
            in[i] = 1;
            ++counts[static_cast<std::size_t>(candidates[i].size())];
        }
        REQUIRE(counts[static_cast<std::size_t>(blocks)] > 0);
        CHECK(ffk_check(CoeffVector(counts)));
    }
    CHECK(tested == 150);
}

TEST_CASE("clique complexes of random graphs pass ffk") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        CHECK(ffk_check(f_vector_cliques(testutil::random_graph_complex(n, rng))));
    }
}

TEST_CASE("verify_triple agreement on known families") {
    const VerifyReport p5 = verify_triple(building_set_path(5), 3, 1, "path:5");
    CHECK(p5.agreement);
    CHECK(p5.gamma_nested == CoeffVector{1, 6, 2});
    CHECK(p5.ffk);
    CHECK(!p5.gamma_complexes.empty());
    CHECK(p5.nested_ms >= 0.0);

    std::mt19937_64 rng(11);
    const VerifyReport min = verify_triple(testutil::random_minimal_flag(5, rng), 2, 9);
    CHECK(min.agreement);
    CHECK(min.gamma_nested == CoeffVector{1});

    const VerifyReport k5 = verify_triple(building_set_complete(5), 3, 5, "kn:5");
    CHECK(k5.agreement);
    CHECK(k5.gamma_nested == CoeffVector{1, 22, 16});
    CHECK_FALSE(k5.cyclic_formula.has_value());

    CHECK_THROWS_AS(verify_triple(make_building_set(3, testutil::sets({{1, 2, 3}})), 1, 0),
                    NotFlag);
}

TEST_CASE("verify_triple surfaces the cyclic formula divergence") {
    const VerifyReport r = verify_triple(building_set_cycle(5), 3, 3, "cyc:5");
    CHECK(r.agreement);
    REQUIRE(r.cyclic_formula.has_value());
    CHECK(*r.cyclic_formula == CoeffVector{1, 20, 30});
    CHECK(r.gamma_nested == CoeffVector{1, 12, 6});
    CHECK(r.cyclic_diverges);

    const std::string text = report_to_text(r);
    CHECK(text.find("(1, 20, 30)") != std::string::npos);
    CHECK(text.find("(1, 12, 6)") != std::string::npos);
    CHECK(text.find("diverges") != std::string::npos);

    const std::string json = report_to_json(r);
    CHECK(json.find("cyclic_formula") != std::string::npos);
}

TEST_CASE("verify_triple joins components of disconnected building sets") {
    const BuildingSet b = closure(5, testutil::sets({{1, 2}, {2, 3}, {4, 5}}));
    REQUIRE_FALSE(b.connected());
    const VerifyReport r = verify_triple(b, 2, 1);
    CHECK(r.agreement);
    CHECK(r.gamma_nested == CoeffVector{1, 1});  // pentagon x segment
}
