#include <doctest.h>

#include <random>
#include <set>

#include "explain.hpp"
#include "oracles.hpp"

using namespace aacbr;

namespace {

// Every structural requirement on a dispute tree, checked recursively.
void check_valid(const AdtNode& node, const af::Framework& fw, const af::Grounded& g) {
    if (node.winner) {
        CHECK(g.contains(node.arg));
        // children are exactly the attackers, each losing
        std::multiset<int> child_args, attacker_args;
        for (const AdtNode& c : node.children) {
            CHECK_FALSE(c.winner);
            child_args.insert(c.arg);
        }
        for (int b : fw.attackers[(size_t)node.arg]) attacker_args.insert(b);
        CHECK(child_args == attacker_args);
    } else {
        REQUIRE(node.children.size() == 1);
        const AdtNode& child = node.children.front();
        CHECK(child.winner);
        bool attacks = false;
        for (int t : fw.targets[(size_t)child.arg])
            if (t == node.arg) attacks = true;
        CHECK(attacks);
    }
    for (const AdtNode& c : node.children) check_valid(c, fw, g);
}

// The Figure-style welfare framework: default(0) ← c1(1) ← c2(2) ← {c3a(3),
// c3b(4)}, each of c3a/c3b ← new case (5).
af::Framework figure_framework() {
    return af::make_framework(6, {{1, 0}, {2, 1}, {3, 2}, {4, 2}, {5, 3}, {5, 4}});
}

}  // namespace

TEST_CASE("single unattacked default: one-node tree") {
    af::Framework fw = af::make_framework(1, {});
    af::Grounded g = af::grounded(fw);
    auto adt = minimal_adt(fw, g, 0);
    REQUIRE(adt);
    CHECK(adt->winner);
    CHECK(adt->arg == 0);
    CHECK(adt->children.empty());
    auto m = adt_metrics(*adt);
    CHECK(m.depth == 1);
    CHECK(m.nodes == 1);
    CHECK(m.unique_arguments == 1);
}

TEST_CASE("defeated default: losing root with one winning child") {
    af::Framework fw = af::make_framework(2, {{1, 0}});
    af::Grounded g = af::grounded(fw);
    auto adt = minimal_adt(fw, g, 0);
    REQUIRE(adt);
    CHECK_FALSE(adt->winner);
    REQUIRE(adt->children.size() == 1);
    CHECK(adt->children[0].arg == 1);
    CHECK(adt->children[0].winner);
    CHECK(adt_metrics(*adt).nodes == 2);
}

TEST_CASE("chain default<-b<-c gives the 3-node alternating tree") {
    af::Framework fw = af::make_framework(3, {{1, 0}, {2, 1}});
    af::Grounded g = af::grounded(fw);
    auto adt = minimal_adt(fw, g, 0);
    REQUIRE(adt);
    CHECK(adt->winner);
    auto m = adt_metrics(*adt);
    CHECK(m.depth == 3);
    CHECK(m.nodes == 3);
    CHECK(m.unique_arguments == 3);
    check_valid(*adt, fw, g);
}

TEST_CASE("the figure-style welfare ADT: depth 5, 7 nodes, 6 unique") {
    af::Framework fw = figure_framework();
    af::Grounded g = af::grounded(fw);
    REQUIRE(g.contains(0));
    auto adt = minimal_adt(fw, g, 0);
    REQUIRE(adt);
    check_valid(*adt, fw, g);
    auto m = adt_metrics(*adt);
    CHECK(m.depth == 5);
    CHECK(m.nodes == 7);  // the new case appears under both c3a and c3b
    CHECK(m.unique_arguments == 6);
}

TEST_CASE("losing nodes pick the cheapest winning defeater") {
    // default attacked by 1; 1 attacked by 2 (cheap: unattacked) and by 3
    // (expensive: needs its own defence chain 3 ← 4 ← 5).
    af::Framework fw = af::make_framework(6, {{1, 0}, {2, 1}, {3, 1}, {4, 3}, {5, 4}});
    af::Grounded g = af::grounded(fw);
    REQUIRE(g.contains(2));
    REQUIRE(g.contains(3));
    auto adt = minimal_adt(fw, g, 0);
    REQUIRE(adt);
    // W(default) - L(1) - W(2): anything through 3 would cost two more nodes
    REQUIRE(adt->children.size() == 1);
    REQUIRE(adt->children[0].children.size() == 1);
    CHECK(adt->children[0].children[0].arg == 2);
    CHECK(adt_metrics(*adt).nodes == 3);
}

TEST_CASE("undecided default has no dispute tree") {
    // 1 <-> 2 cycle feeding the default: nothing is decided
    af::Framework fw = af::make_framework(3, {{1, 2}, {2, 1}, {1, 0}});
    af::Grounded g = af::grounded(fw);
    REQUIRE_FALSE(g.contains(0));
    CHECK_FALSE(minimal_adt(fw, g, 0).has_value());
}

TEST_CASE("minimal_adt input validation") {
    af::Framework fw = af::make_framework(2, {{1, 0}});
    af::Grounded g = af::grounded(fw);
    CHECK_THROWS(minimal_adt(fw, g, 2));
    CHECK_THROWS(minimal_adt(fw, g, -1));
    af::Grounded other = af::grounded(af::make_framework(3, {}));
    CHECK_THROWS(minimal_adt(fw, other, 0));
}

TEST_CASE("minimal_adt is minimal: exhaustive oracle on random mined AFs") {
    std::mt19937_64 rng(2024);
    int nontrivial = 0;
    for (int iter = 0; iter < 150; ++iter) {
        Casebase cb = apply_strategy(oracle::random_casebase(rng, 5, 9), Strategy::Majority);
        MinedAf mined = mine_af(cb);
        af::Framework fw = mined.framework;
        if (fw.n > 10) continue;
        af::Grounded g = af::grounded(fw);
        auto adt = minimal_adt(fw, g, 0);
        const int oracle_min = oracle::adt_min_by_enumeration(fw, g, 0);
        if (!adt) {
            CHECK(oracle_min >= oracle::kAdtInf);
            continue;
        }
        check_valid(*adt, fw, g);
        CHECK(adt_metrics(*adt).nodes == oracle_min);
        if (adt_metrics(*adt).nodes > 1) ++nontrivial;
    }
    CHECK(nontrivial > 20);  // the sample must actually exercise disputes
}

TEST_CASE("ADT renderings are deterministic and carry labels") {
    af::Framework fw = figure_framework();
    af::Grounded g = af::grounded(fw);
    auto adt = minimal_adt(fw, g, 0);
    REQUIRE(adt);
    std::vector<std::string> labels{"default {}: +", "c1", "c2", "c3a", "c3b", "new"};
    std::string dot = adt_to_dot(*adt, labels);
    CHECK(dot == adt_to_dot(*adt, labels));
    CHECK(dot.find("W, default {}: +") != std::string::npos);
    CHECK(dot.find("L, c1") != std::string::npos);
    // dispute-tree edges point from the answering child to its parent
    CHECK(dot.find("n1 -> n0") != std::string::npos);

    std::string text = adt_to_text(*adt, labels);
    CHECK(text.find("[W, default {}: +]\n") == 0);
    CHECK(text.find("  [L, c1]") != std::string::npos);
    CHECK(text.find("[W, new]") != std::string::npos);
}

TEST_CASE("decision_path_to_text walks splits to the leaf") {
    Tree t;
    t.n_features = 2;
    t.nodes.resize(3);
    t.nodes[0] = TreeNode{1, 1.5, 1, 2, {2, 3}, 1};
    t.nodes[1] = TreeNode{-1, 0.0, -1, -1, {2, 0}, 0};
    t.nodes[2] = TreeNode{-1, 0.0, -1, -1, {0, 3}, 1};
    std::string low = decision_path_to_text(t, {30, 1}, {"age", "prior_count"}, {"-", "+"});
    CHECK(low == "prior_count <= 1.5 : yes\nleaf: - (2,0)\n");
    std::string high = decision_path_to_text(t, {30, 9}, {"age", "prior_count"}, {"-", "+"});
    CHECK(high == "prior_count <= 1.5 : no\nleaf: + (0,3)\n");
}
