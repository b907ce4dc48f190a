#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "multinet/taxonomy.hpp"
#include "oracles.hpp"

using namespace multinet;
using testutil::cophenetic_from_newick;
using testutil::naive_complete_linkage;
using testutil::random_dyadic_dist;

namespace {

LayerDistanceMatrix make_dist(const std::vector<std::string>& codes,
                              const Eigen::MatrixXd& d) {
    LayerDistanceMatrix m;
    m.codes = codes;
    m.d = d;
    m.year = 2003;
    return m;
}

}  // namespace

TEST_CASE("two-scale three-layer agglomeration") {
    Eigen::MatrixXd d(3, 3);
    d << 0.0, 0.1, 0.9, 0.1, 0.0, 0.9, 0.9, 0.9, 0.0;
    const auto dendro = complete_linkage(make_dist({"A", "B", "C"}, d));
    REQUIRE(dendro.merges.size() == 2);
    CHECK(dendro.merges[0].a == 0);
    CHECK(dendro.merges[0].b == 1);
    CHECK(dendro.merges[0].height == 0.1);
    CHECK(dendro.merges[0].size == 2);
    CHECK(dendro.merges[1].a == 3);  // the {A,B} cluster, rep A
    CHECK(dendro.merges[1].b == 2);
    CHECK(dendro.merges[1].height == 0.9);
    CHECK(dendro.merges[1].size == 3);
}

TEST_CASE("equal distances merge in tie-break order at one height") {
    const int C = 4;
    Eigen::MatrixXd d = Eigen::MatrixXd::Constant(C, C, 0.5);
    d.diagonal().setZero();
    const auto dendro = complete_linkage(make_dist({"A", "B", "C", "D"}, d));
    REQUIRE(dendro.merges.size() == 3);
    for (const auto& m : dendro.merges) CHECK(m.height == 0.5);
    CHECK(dendro.merges[0].a == 0);  // (A,B)
    CHECK(dendro.merges[0].b == 1);
    CHECK(dendro.merges[1].a == 4);  // ({A,B},C)
    CHECK(dendro.merges[1].b == 2);
    CHECK(dendro.merges[2].a == 5);  // ({A,B,C},D)
    CHECK(dendro.merges[2].b == 3);
}

TEST_CASE("complete_linkage rejects undefined entries naming the pairs") {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
    d(0, 1) = d(1, 0) = 0.5;
    d(0, 2) = d(2, 0) = std::numeric_limits<double>::quiet_NaN();
    d(1, 2) = d(2, 1) = 0.5;
    try {
        complete_linkage(make_dist({"A", "B", "C"}, d));
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("A/C") != std::string::npos);
    }
}

TEST_CASE("merge sequence equals the naive recompute-all oracle") {
    auto gen = testutil::rng(901);
    for (int rep = 0; rep < 10; ++rep) {
        const auto dist = random_dyadic_dist(gen, 12);
        const auto dendro = complete_linkage(dist);
        const auto oracle = naive_complete_linkage(dist);
        REQUIRE(dendro.merges.size() == oracle.size());
        for (std::size_t s = 0; s < oracle.size(); ++s) {
            CHECK(dendro.merges[s].a == oracle[s].a);
            CHECK(dendro.merges[s].b == oracle[s].b);
            CHECK(dendro.merges[s].height == oracle[s].height);
            CHECK(dendro.merges[s].size == oracle[s].size);
        }
        // Merge heights never decrease.
        for (std::size_t s = 1; s < dendro.merges.size(); ++s)
            CHECK(dendro.merges[s].height >= dendro.merges[s - 1].height);
    }
}

TEST_CASE("cophenetic distances of the worked examples") {
    Eigen::MatrixXd d(3, 3);
    d << 0.0, 0.1, 0.9, 0.1, 0.0, 0.9, 0.9, 0.9, 0.0;
    const auto dendro = complete_linkage(make_dist({"A", "B", "C"}, d));
    const auto coph = cophenetic(dendro);
    CHECK(coph(0, 1) == 0.1);
    CHECK(coph(0, 2) == 0.9);
    CHECK(coph(1, 2) == 0.9);

    Eigen::MatrixXd pair(2, 2);
    pair << 0.0, 0.3, 0.3, 0.0;
    const auto two = complete_linkage(make_dist({"X", "Y"}, pair));
    const auto coph2 = cophenetic(two);
    CHECK(coph2(0, 0) == 0.0);
    CHECK(coph2(0, 1) == 0.3);
    CHECK(coph2(1, 0) == 0.3);
}

TEST_CASE("cophenetic dominates the input metric and is ultrametric") {
    auto gen = testutil::rng(902);
    const auto dist = random_dyadic_dist(gen, 14);
    const auto coph = cophenetic(complete_linkage(dist));
    for (int i = 0; i < 14; ++i)
        for (int j = 0; j < 14; ++j) {
            if (i == j) continue;
            CHECK(coph(i, j) >= dist.d(i, j));
            for (int k = 0; k < 14; ++k) {
                if (k == i || k == j) continue;
                CHECK(coph(i, j) <= std::max(coph(i, k), coph(k, j)) + 0.0);
            }
        }
}

TEST_CASE("cophenetic matches a first-containing-merge oracle") {
    auto gen = testutil::rng(903);
    const auto dist = random_dyadic_dist(gen, 10);
    const auto dendro = complete_linkage(dist);
    const auto coph = cophenetic(dendro);

    // Oracle: walk merges in order, track leaf sets, record the first merge
    // that contains both leaves.
    const int C = 10;
    std::vector<std::vector<int>> members(static_cast<std::size_t>(C) + dendro.merges.size());
    for (int i = 0; i < C; ++i) members[static_cast<std::size_t>(i)] = {i};
    Eigen::MatrixXd oracle = Eigen::MatrixXd::Constant(C, C, -1.0);
    oracle.diagonal().setZero();
    for (std::size_t s = 0; s < dendro.merges.size(); ++s) {
        const auto& m = dendro.merges[s];
        auto& dst = members[static_cast<std::size_t>(C) + s];
        dst = members[static_cast<std::size_t>(m.a)];
        for (int v : members[static_cast<std::size_t>(m.b)]) dst.push_back(v);
        for (int x : dst)
            for (int y : dst)
                if (x != y && oracle(x, y) < 0) oracle(x, y) = m.height;
    }
    CHECK((coph - oracle).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cut_tree at the extremes") {
    auto gen = testutil::rng(904);
    const auto dist = random_dyadic_dist(gen, 9);
    const auto dendro = complete_linkage(dist);

    double min_h = dendro.merges.front().height;
    const auto singletons = cut_tree(dendro, min_h * 0.5);
    std::set<int> distinct(singletons.begin(), singletons.end());
    CHECK(distinct.size() == 9);

    const auto one = cut_tree(dendro, dendro.merges.back().height);
    for (int c : one) CHECK(c == 0);
}

TEST_CASE("cut_tree equals cophenetic thresholding") {
    auto gen = testutil::rng(905);
    std::uniform_real_distribution<double> u(0, 1);
    for (int rep = 0; rep < 10; ++rep) {
        const auto dist = random_dyadic_dist(gen, 11);
        const auto dendro = complete_linkage(dist);
        const auto coph = cophenetic(dendro);
        const double cut = u(gen);
        const auto clusters = cut_tree(dendro, cut);
        for (int i = 0; i < 11; ++i)
            for (int j = 0; j < 11; ++j) {
                if (i == j) continue;
                const bool together = clusters[static_cast<std::size_t>(i)] ==
                                      clusters[static_cast<std::size_t>(j)];
                CHECK(together == (coph(i, j) <= cut));
            }
    }
}

TEST_CASE("newick strings of the worked examples") {
    Eigen::MatrixXd pair(2, 2);
    pair << 0.0, 0.4, 0.4, 0.0;
    CHECK(to_newick(complete_linkage(make_dist({"A", "B"}, pair))) == "(A:0.4,B:0.4);");

    Eigen::MatrixXd d(3, 3);
    d << 0.0, 0.1, 0.9, 0.1, 0.0, 0.9, 0.9, 0.9, 0.0;
    CHECK(to_newick(complete_linkage(make_dist({"A", "B", "C"}, d))) ==
          "((A:0.1,B:0.1):0.8,C:0.9);");
}

TEST_CASE("newick children are ordered by smallest contained label") {
    Eigen::MatrixXd d(3, 3);
    d << 0.0, 0.9, 0.9, 0.9, 0.0, 0.1, 0.9, 0.1, 0.0;
    // B and C merge first; the root lists the A leaf after the {B,C} branch?
    // No: ordering is by smallest contained label, so A comes first.
    CHECK(to_newick(complete_linkage(make_dist({"A", "B", "C"}, d))) ==
          "(A:0.9,(B:0.1,C:0.1):0.8);");
}

TEST_CASE("newick round-trip recovers the cophenetic matrix exactly") {
    auto gen = testutil::rng(906);
    for (int rep = 0; rep < 10; ++rep) {
        const auto dist = random_dyadic_dist(gen, 13);
        const auto dendro = complete_linkage(dist);
        const auto direct = cophenetic(dendro);
        const auto recovered = cophenetic_from_newick(to_newick(dendro), dendro.leaves);
        CHECK((direct - recovered).cwiseAbs().maxCoeff() == 0.0);
    }
}
