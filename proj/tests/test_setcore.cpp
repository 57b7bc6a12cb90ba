#include <doctest.h>

#include <random>

#include "testutil.hpp"

using namespace nesto;
using testutil::es;
using testutil::sets;

TEST_CASE("element set basics") {
    const ElementSet s = es({1, 3, 4});
    CHECK(s.size() == 3);
    CHECK(s.min_element() == 1);
    CHECK(s.max_element() == 4);
    CHECK(s.contains(3));
    CHECK(!s.contains(2));
    CHECK(s.to_string() == "{1,3,4}");
    CHECK(es({}).empty());
    CHECK(ElementSet::full(5) == es({1, 2, 3, 4, 5}));
    CHECK(es({2, 3}).subset_of(es({1, 2, 3})));
    CHECK(es({2, 3}).minus(es({3, 4})) == es({2}));
    CHECK(es({2, 3}).sym_diff(es({3, 4})) == es({2, 4}));
    CHECK_THROWS_AS(ElementSet::single(0), OutOfRange);
    CHECK_THROWS_AS(ElementSet::single(65), OutOfRange);
}

TEST_CASE("canonical order is size then mask") {
    auto fam = testutil::sets({{2, 3}, {1}, {1, 2, 3}, {1, 3}, {1}});
    fam = canonical_family(fam);
    REQUIRE(fam.size() == 4);
    CHECK(fam[0] == es({1}));
    CHECK(fam[1] == es({1, 3}));
    CHECK(fam[2] == es({2, 3}));
    CHECK(fam[3] == es({1, 2, 3}));
}

TEST_CASE("make_building_set adds singletons and validates") {
    const BuildingSet b = make_building_set(2, {});
    CHECK(b.size() == 2);
    CHECK(b.contains(es({1})));
    CHECK(b.contains(es({2})));

    CHECK_THROWS_AS(make_building_set(3, sets({{1, 2}, {2, 3}})), UnionAxiomViolation);
    try {
        make_building_set(3, sets({{1, 2}, {2, 3}}));
    } catch (const UnionAxiomViolation& e) {
        CHECK(e.lhs_mask == es({1, 2}).mask());
        CHECK(e.rhs_mask == es({2, 3}).mask());
    }

    const BuildingSet ok = make_building_set(3, sets({{1, 2}, {2, 3}, {1, 2, 3}}));
    CHECK(ok.size() == 6);
    // independent re-check of the union axiom over all pairs
    for (const ElementSet& x : ok.family())
        for (const ElementSet& y : ok.family())
            if (x.intersects(y)) CHECK(ok.contains(x | y));

    CHECK_THROWS_AS(make_building_set(3, sets({{1, 4}})), OutOfRange);
    CHECK_THROWS_AS(make_building_set(3, {ElementSet{}}), EmptySetMember);
}

TEST_CASE("closure reaches the smallest building set and is idempotent") {
    const BuildingSet p3 = closure(3, sets({{1, 2}, {2, 3}}));
    CHECK(p3 == building_set_path(3));
    CHECK(closure(3, {}).size() == 3);

    const BuildingSet p4 = closure(4, sets({{1, 2}, {2, 3}, {3, 4}}));
    CHECK(p4.size() == 10);
    CHECK(p4 == building_set_path(4));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        std::vector<ElementSet> fam;
        const int count = static_cast<int>(rng() % 5);
        for (int i = 0; i < count; ++i) {
            const std::uint64_t m = rng() % ElementSet::full(n).mask() + 1;
            fam.push_back(ElementSet::from_mask(m));
        }
        const BuildingSet c = closure(n, fam);
        const BuildingSet cc = closure(n, c.family());
        CHECK(c == cc);  // idempotent
        for (const ElementSet& s : fam) CHECK(c.contains(s));  // extensive
        CHECK_NOTHROW(make_building_set(n, c.family()));
    }
}

TEST_CASE("graphical building sets") {
    CHECK(graphical_building_set(path_graph(3)) == building_set_path(3));
    CHECK(graphical_building_set(complete_graph(3)).size() == 7);
    const BuildingSet c4 = graphical_building_set(cycle_graph(4));
    CHECK(c4.size() == 13);
    CHECK(c4 == building_set_cycle(4));

    // independent connectivity count for Cyc_4: all 15 nonempty subsets checked by hand-rolled BFS
    const Graph g = cycle_graph(4);
    int connected = 0;
    for (std::uint64_t m = 1; m < 16; ++m) {
        std::vector<int> verts;
        for (int v = 1; v <= 4; ++v)
            if ((m >> (v - 1)) & 1) verts.push_back(v);
        std::vector<int> stack{verts[0]};
        std::uint64_t seen = std::uint64_t{1} << (verts[0] - 1);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int u : verts)
                if (g.has_edge(u, v) && !((seen >> (u - 1)) & 1)) {
                    seen |= std::uint64_t{1} << (u - 1);
                    stack.push_back(u);
                }
        }
        if (seen == m) ++connected;
    }
    CHECK(connected == 13);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        Graph g2(n);
        for (int u = 1; u <= n; ++u)
            for (int v = u + 1; v <= n; ++v)
                if (rng() & 1) g2.add_edge(u, v);
        CHECK(is_flag(graphical_building_set(g2)));
    }
}

TEST_CASE("restriction keeps labels") {
    const BuildingSet k3 = building_set_complete(3);
    const BuildingSet r = restriction(k3, es({1, 2}));
    CHECK(r.ground() == es({1, 2}));
    CHECK(r.family() == sets({{1}, {2}, {1, 2}}));

    const BuildingSet p5 = building_set_path(5);
    const BuildingSet mid = restriction(p5, es({2, 3, 4}));
    CHECK(mid.family() == sets({{2}, {3}, {4}, {2, 3}, {3, 4}, {2, 3, 4}}));

    const BuildingSet single = restriction(p5, es({3}));
    CHECK(single.family() == sets({{3}}));
    CHECK_THROWS_AS(restriction(p5, ElementSet{}), OutOfRange);
}

TEST_CASE("contraction drops and dedupes") {
    const BuildingSet p3 = building_set_path(3);
    const BuildingSet c = contraction(p3, es({2}));
    CHECK(c.ground() == es({1, 3}));
    CHECK(c.family() == sets({{1}, {3}, {1, 3}}));

    const BuildingSet k3c = contraction(building_set_complete(3), es({1}));
    CHECK(k3c.family() == sets({{2}, {3}, {2, 3}}));

    CHECK(contraction(p3, es({1})).family() == sets({{2}, {3}, {2, 3}}));
    CHECK_THROWS_AS(contraction(p3, es({1, 2, 3})), FullContraction);
    CHECK_THROWS_AS(contraction(p3, ElementSet{}), OutOfRange);
}

TEST_CASE("maximal elements partition the ground set") {
    CHECK(maximal_elements(building_set_path(3)) == sets({{1, 2, 3}}));
    CHECK(maximal_elements(make_building_set(3, {})) == sets({{1}, {2}, {3}}));
    CHECK(maximal_elements(closure(4, sets({{1, 2}}))) == sets({{3}, {4}, {1, 2}}));

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const BuildingSet b = testutil::random_flag_building_set(n, rng);
        ElementSet acc;
        for (const ElementSet& m : maximal_elements(b)) {
            CHECK(acc.disjoint_from(m));
            acc = acc | m;
        }
        CHECK(acc == b.ground());
    }
}

TEST_CASE("flag detection") {
    CHECK(is_flag(building_set_path(3)));
    CHECK_FALSE(is_flag(make_building_set(3, sets({{1, 2, 3}}))));
    std::mt19937_64 rng(23);
    CHECK(is_flag(testutil::random_minimal_flag(6, rng)));
}

TEST_CASE("restriction and contraction preserve the axioms and flagness") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const BuildingSet b = testutil::random_flag_building_set(n, rng);
        REQUIRE(is_flag(b));
        const std::uint64_t full = b.ground().mask();
        const ElementSet i = ElementSet::from_mask(1 + rng() % full);
        CHECK_NOTHROW(restriction(b, i));
        CHECK(is_flag(restriction(b, i)));
        if (i != b.ground()) {
            CHECK_NOTHROW(contraction(b, i));
            CHECK(is_flag(contraction(b, i)));
        }
    }
}

TEST_CASE("binary decomposition") {
    const BuildingSet k3 = building_set_complete(3);
    const Decomposition d = find_binary_decomposition(k3, es({1, 2, 3}), es({1, 2}));
    CHECK(d.members == sets({{1}, {2}, {3}, {1, 2}, {1, 2, 3}}));

    const Decomposition single = find_binary_decomposition(k3, es({2}));
    CHECK(single.members == sets({{2}}));

    const BuildingSet notflag = make_building_set(3, sets({{1, 2, 3}}));
    CHECK_THROWS_AS(find_binary_decomposition(notflag, es({1, 2, 3})), NotFlag);

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const BuildingSet b = testutil::random_flag_building_set(n, rng);
        const auto& fam = b.family();
        const ElementSet target = fam[rng() % fam.size()];
        const Decomposition plain = find_binary_decomposition(b, target);
        CHECK(!validate_decomposition(plain).has_value());
        for (const ElementSet& m : plain.members) CHECK(b.contains(m));
        // determinism
        CHECK(find_binary_decomposition(b, target).members == plain.members);

        std::vector<ElementSet> inside;
        for (const ElementSet& s : fam)
            if (s.proper_subset_of(target)) inside.push_back(s);
        if (!inside.empty()) {
            const ElementSet anchor = inside[rng() % inside.size()];
            const Decomposition with = find_binary_decomposition(b, target, anchor);
            CHECK(!validate_decomposition(with).has_value());
            CHECK(std::find(with.members.begin(), with.members.end(), anchor) !=
                  with.members.end());
            for (const ElementSet& m : with.members) CHECK(b.contains(m));
        }
    }
}

TEST_CASE("minimal flag building sets from trees") {
    const BuildingSet cat =
        minimal_flag_from_tree(BinaryTree::node(
            BinaryTree::node(BinaryTree::leaf(1), BinaryTree::leaf(2)), BinaryTree::leaf(3)));
    CHECK(cat.family() == sets({{1}, {2}, {3}, {1, 2}, {1, 2, 3}}));

    const BuildingSet leaf = minimal_flag_from_tree(BinaryTree::leaf(5));
    CHECK(leaf.family() == sets({{5}}));
    CHECK(leaf.ground() == es({5}));

    const BuildingSet bal = minimal_flag_from_tree(
        BinaryTree::node(BinaryTree::node(BinaryTree::leaf(1), BinaryTree::leaf(2)),
                         BinaryTree::node(BinaryTree::leaf(3), BinaryTree::leaf(4))));
    CHECK(bal.family() == sets({{1}, {2}, {3}, {4}, {1, 2}, {3, 4}, {1, 2, 3, 4}}));
    CHECK(is_flag(bal));
    CHECK(bal.size() == 7);

    CHECK_THROWS_AS(
        minimal_flag_from_tree(BinaryTree::node(BinaryTree::leaf(1), BinaryTree::leaf(1))),
        MalformedTree);
}
