#include <doctest.h>

#include <random>

#include "testutil.hpp"

using namespace nesto;
using testutil::es;
using testutil::sets;

TEST_CASE("verify accepts the worked path-5 ordering") {
    const FlagOrdering o = testutil::path5_fixture_ordering();
    const OrderingCheck check = verify_flag_ordering(o);
    CHECK(check.ok);
    CHECK(check.message.empty());
}

TEST_CASE("verify rejects a reshuffled prefix with a diagnostic") {
    FlagOrdering o = testutil::path5_fixture_ordering();
    std::swap(o.order[1], o.order[3]);  // {2,3,4,5} now precedes {2,3,4}
    const OrderingCheck check = verify_flag_ordering(o);
    CHECK_FALSE(check.ok);
    CHECK(check.prefix_index == 2);
    CHECK(check.message.find("covering pair") != std::string::npos);
}

TEST_CASE("verify rejects structural problems") {
    FlagOrdering o = testutil::path5_fixture_ordering();
    o.order.pop_back();
    CHECK_FALSE(verify_flag_ordering(o).ok);  // no longer covers B

    FlagOrdering dup = testutil::path5_fixture_ordering();
    dup.order[0] = dup.order[1];
    CHECK_FALSE(verify_flag_ordering(dup).ok);
}

TEST_CASE("find_flag_ordering on B(K_3) with the prefix decomposition") {
    const BuildingSet k3 = building_set_complete(3);
    const FlagOrdering o =
        find_flag_ordering(k3, OrderingStrategy::lex(), prefix_decomposition(3));
    CHECK(verify_flag_ordering(o).ok);
    CHECK(o.order == sets({{1, 3}, {2, 3}}));

    // both orders of the two remaining doubletons are valid
    FlagOrdering swapped = o;
    std::swap(swapped.order[0], swapped.order[1]);
    CHECK(verify_flag_ordering(swapped).ok);
}

TEST_CASE("minimal flag building sets have the empty ordering") {
    std::mt19937_64 rng(3);
    const BuildingSet d = testutil::random_minimal_flag(5, rng);
    const FlagOrdering o = find_flag_ordering(d, OrderingStrategy::lex());
    CHECK(o.k() == 0);
    CHECK(verify_flag_ordering(o).ok);
}

TEST_CASE("comparator strategy reproduces a given listing greedily") {
    const FlagOrdering fixture = testutil::path5_fixture_ordering();
    std::vector<ElementSet> priority = fixture.order;
    auto rank = [priority](const ElementSet& s) {
        for (std::size_t i = 0; i < priority.size(); ++i)
            if (priority[i] == s) return i;
        return priority.size();
    };
    const FlagOrdering o = find_flag_ordering(
        fixture.building,
        OrderingStrategy::comparator(
            [rank](const ElementSet& a, const ElementSet& b) { return rank(a) < rank(b); }),
        fixture.root);
    CHECK(o.order == fixture.order);
}

TEST_CASE("errors for unusable inputs") {
    CHECK_THROWS_AS(find_flag_ordering(make_building_set(3, {}), OrderingStrategy::lex()),
                    NotConnected);
    CHECK_THROWS_AS(
        find_flag_ordering(make_building_set(3, sets({{1, 2, 3}})), OrderingStrategy::lex()),
        NotFlag);
}

TEST_CASE("named ordering for B(K_n)") {
    const FlagOrdering o3 = ordering_kn(3);
    CHECK(o3.order == sets({{1, 3}, {2, 3}}));
    CHECK(ordering_kn(2).k() == 0);
    const FlagOrdering o5 = ordering_kn(5);
    CHECK(o5.order[0] == es({1, 3}));
    CHECK(o5.order[1] == es({2, 3}));
    for (int n = 2; n <= 8; ++n) CHECK(verify_flag_ordering(ordering_kn(n)).ok);
}

TEST_CASE("named ordering for B(Path_n)") {
    const FlagOrdering o5 = ordering_pathn(5);
    CHECK(o5.order == sets({{2, 3}, {2, 3, 4}, {3, 4}, {2, 3, 4, 5}, {3, 4, 5}, {4, 5}}));
    CHECK(ordering_pathn(3).order == sets({{2, 3}}));
    CHECK(ordering_pathn(2).k() == 0);
    for (int n = 2; n <= 8; ++n) CHECK(verify_flag_ordering(ordering_pathn(n)).ok);
}

TEST_CASE("named ordering for the star") {
    const FlagOrdering o5 = ordering_star(5);
    CHECK(o5.order.front() == es({1, 3}));
    CHECK(ordering_star(2).k() == 0);
    CHECK(ordering_star(4).k() == 4);
    for (int n = 2; n <= 8; ++n) CHECK(verify_flag_ordering(ordering_star(n)).ok);
}

TEST_CASE("greedy never dead-ends on random flag building sets") {
    std::mt19937_64 rng(41);
    int backtracks = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const BuildingSet b = testutil::random_flag_building_set(n, rng);
        OrderingSearchStats stats;
        const std::uint64_t seed = rng();
        const FlagOrdering o =
            find_flag_ordering(b, OrderingStrategy::random(seed), std::nullopt, true, &stats);
        backtracks += stats.dead_ends;
        CHECK(o.order.size() == b.size() - (2 * static_cast<std::size_t>(n) - 1));
        CHECK(verify_flag_ordering(o).ok);
    }
    CHECK(backtracks == 0);
}

TEST_CASE("all three strategies validate on fuzzed inputs") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const BuildingSet b = testutil::random_flag_building_set(n, rng);
        CHECK(verify_flag_ordering(find_flag_ordering(b, OrderingStrategy::lex())).ok);
        CHECK(verify_flag_ordering(find_flag_ordering(b, OrderingStrategy::random(rng()))).ok);
        CHECK(verify_flag_ordering(
                  find_flag_ordering(b, OrderingStrategy::comparator(canonical_less)))
                  .ok);
    }
}

TEST_CASE("ordering text round trip") {
    const FlagOrdering o = testutil::path5_fixture_ordering();
    const std::string text = ordering_to_text(o);
    const FlagOrdering back = ordering_from_text(text);
    CHECK(back.building == o.building);
    CHECK(back.root.members == o.root.members);
    CHECK(back.order == o.order);
    CHECK(ordering_to_text(back) == text);

    // lenient parse: extra blanks and comments
    const FlagOrdering lenient = ordering_from_text("# comment\n n 2 \nD:\n 1 \n2\n1 2\norder:\n");
    CHECK(lenient.building == building_set_path(2));
    CHECK_THROWS_AS(ordering_from_text("D:\n1\n"), ParseError);
}
