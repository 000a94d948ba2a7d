#include <doctest.h>

#include <random>
#include <set>

#include "af.hpp"
#include "oracles.hpp"

using namespace aacbr;

TEST_CASE("make_framework validates and normalises") {
    auto fw = af::make_framework(3, {{2, 0}, {0, 1}, {0, 1}, {2, 0}});
    CHECK(fw.n == 3);
    CHECK(fw.attacks == std::vector<std::pair<int, int>>{{0, 1}, {2, 0}});
    CHECK(fw.attackers[0] == std::vector<int>{2});
    CHECK(fw.attackers[1] == std::vector<int>{0});
    CHECK(fw.attackers[2].empty());
    CHECK(fw.targets[0] == std::vector<int>{1});

    CHECK_THROWS(af::make_framework(2, {{0, 2}}));
    CHECK_THROWS(af::make_framework(2, {{-1, 0}}));
    CHECK_THROWS(af::make_framework(-1, {}));
}

TEST_CASE("grounded on hand-worked frameworks") {
    SUBCASE("no attacks: everything is in at rank 0") {
        auto g = af::grounded(af::make_framework(3, {}));
        CHECK(g.extension == std::vector<int>{0, 1, 2});
        CHECK(g.rank == std::vector<int>{0, 0, 0});
    }
    SUBCASE("chain 2->1->0: alternating membership") {
        auto g = af::grounded(af::make_framework(3, {{2, 1}, {1, 0}}));
        CHECK(g.extension == std::vector<int>{0, 2});
        CHECK(g.rank[2] == 0);
        CHECK(g.rank[1] == -1);
        CHECK(g.rank[0] == 1);
    }
    SUBCASE("2-cycle leaves both out, bystander in") {
        auto g = af::grounded(af::make_framework(3, {{0, 1}, {1, 0}}));
        CHECK(g.extension == std::vector<int>{2});
        CHECK_FALSE(g.contains(0));
        CHECK_FALSE(g.contains(1));
    }
    SUBCASE("self-attacker is out") {
        auto g = af::grounded(af::make_framework(2, {{0, 0}}));
        CHECK(g.extension == std::vector<int>{1});
    }
    SUBCASE("defence through two layers") {
        // 3 unattacked, 3->2, 2->1, 1->0: 0 defended at rank 2.
        auto g = af::grounded(af::make_framework(4, {{3, 2}, {2, 1}, {1, 0}}));
        CHECK(g.extension == std::vector<int>{1, 3});
        CHECK(g.rank[3] == 0);
        CHECK(g.rank[1] == 1);
    }
    SUBCASE("odd cycle: empty grounded extension") {
        auto g = af::grounded(af::make_framework(3, {{0, 1}, {1, 2}, {2, 0}}));
        CHECK(g.extension.empty());
        CHECK(g.rank == std::vector<int>{-1, -1, -1});
    }
}

TEST_CASE("defends and attackers_of") {
    auto fw = af::make_framework(4, {{3, 2}, {2, 1}, {1, 0}});
    CHECK(af::defends(fw, {3}, 1));
    CHECK_FALSE(af::defends(fw, {}, 1));
    CHECK(af::defends(fw, {}, 3));        // unattacked
    CHECK_FALSE(af::defends(fw, {3}, 0)); // 0's attacker 1 not attacked by 3
    CHECK(af::defends(fw, {2}, 0));
    CHECK(af::attackers_of(fw, 2) == std::vector<int>{3});
    CHECK_THROWS(af::defends(fw, {}, 4));
    CHECK_THROWS(af::attackers_of(fw, -1));
}

TEST_CASE("grounded matches complete-extension enumeration on random AFs") {
    std::mt19937_64 rng(12345);
    for (int iter = 0; iter < 400; ++iter) {
        auto fw = oracle::random_af(rng, 10, 0.5);
        auto g = af::grounded(fw);
        CHECK(g.extension == oracle::grounded_by_enumeration(fw));
    }
}

TEST_CASE("grounded structural invariants on random AFs") {
    std::mt19937_64 rng(777);
    for (int iter = 0; iter < 200; ++iter) {
        auto fw = oracle::random_af(rng, 14, 0.4);
        auto g = af::grounded(fw);
        // conflict-free
        for (auto [a, b] : fw.attacks)
            CHECK_FALSE((g.contains(a) && g.contains(b)));
        // every member is defended by the extension
        for (int a : g.extension) CHECK(af::defends(fw, g.extension, a));
        // rank soundness: rank 0 iff unattacked member; attackers of a rank-k
        // member are all attacked by members of strictly lower rank
        for (int a = 0; a < fw.n; ++a) {
            CHECK((g.rank[a] >= 0) == g.contains(a));
            if (!g.contains(a)) continue;
            if (g.rank[a] == 0) CHECK(fw.attackers[(size_t)a].empty());
            for (int b : fw.attackers[(size_t)a]) {
                bool countered_below = false;
                for (int c : fw.attackers[(size_t)b])
                    if (g.contains(c) && g.rank[c] < g.rank[a]) countered_below = true;
                CHECK(countered_below);
            }
        }
        // in/extension agreement
        std::set<int> ext(g.extension.begin(), g.extension.end());
        for (int a = 0; a < fw.n; ++a) CHECK(g.contains(a) == (ext.count(a) > 0));
    }
}

TEST_CASE("grounded is deterministic") {
    std::mt19937_64 rng(9);
    auto fw = oracle::random_af(rng, 12, 0.3);
    auto g1 = af::grounded(fw);
    auto g2 = af::grounded(fw);
    CHECK(g1.extension == g2.extension);
    CHECK(g1.rank == g2.rank);
}

TEST_CASE("to_dot is deterministic and well-formed") {
    auto fw = af::make_framework(3, {{1, 0}, {2, 1}});
    std::vector<std::string> labels{"default", "a \"quoted\"", "b"};
    std::string dot = af::to_dot(fw, labels, "g");
    CHECK(dot == af::to_dot(fw, labels, "g"));
    CHECK(dot.find("digraph g") != std::string::npos);
    CHECK(dot.find("\\\"quoted\\\"") != std::string::npos);
    CHECK(dot.find("n1 -> n0") != std::string::npos);
    CHECK(dot.find("n2 -> n1") != std::string::npos);
    // missing labels fall back to the argument index
    CHECK(af::to_dot(fw, {"only-one"}).find("label=\"2\"") != std::string::npos);
}
