#include <doctest.h>

#include <random>

#include "dbscan_oracle.hpp"
#include "msd/cluster.hpp"
#include "msd/errors.hpp"
#include "test_support.hpp"

using namespace msd;
using msd::testing::dbscan_oracle;
using msd::testing::random_distances;

namespace {

DistanceMatrix from_rows(std::vector<std::vector<double>> rows) {
    DistanceMatrix d;
    d.n = static_cast<int>(rows.size());
    for (const auto& row : rows)
        d.values.insert(d.values.end(), row.begin(), row.end());
    return d;
}

// Three blocks of three classes: intra distance 0.2, inter 0.9.
DistanceMatrix planted_blocks() {
    DistanceMatrix d;
    d.n = 9;
    d.values.assign(81, 0.9);
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j)
            if (i / 3 == j / 3)
                d.values[static_cast<size_t>(i) * 9 + j] = i == j ? 0.0 : 0.2;
    return d;
}

} // namespace

TEST_CASE("identical points cluster at epsilon 0") {
    const DistanceMatrix d = from_rows({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    const Decomposition out = dbscan(d, 0.0, 2);
    CHECK(out.assignment == std::vector<int>{0, 0, 0});
    CHECK(out.outlier_count() == 0);
}

TEST_CASE("an isolated point becomes an outlier") {
    const DistanceMatrix d = from_rows({{0, 0.1, 1}, {0.1, 0, 1}, {1, 1, 0}});
    const Decomposition out = dbscan(d, 0.5, 2);
    CHECK(out.assignment[0] == 0);
    CHECK(out.assignment[1] == 0);
    CHECK(out.assignment[2] == kOutlier);
    CHECK_FALSE(out.core[2]);
}

TEST_CASE("min_samples 1 leaves no outliers") {
    std::mt19937 rng(17);
    for (int round = 0; round < 50; ++round) {
        const DistanceMatrix d = random_distances(rng, 2 + static_cast<int>(rng() % 8));
        const Decomposition out = dbscan(d, (rng() % 11) / 10.0, 1);
        CHECK(out.outlier_count() == 0);
    }
}

TEST_CASE("invalid hyper-parameters are rejected") {
    const DistanceMatrix d = from_rows({{0, 1}, {1, 0}});
    CHECK_THROWS_AS(dbscan(d, -0.1, 2), ValidationError);
    CHECK_THROWS_AS(dbscan(d, 1.1, 2), ValidationError);
    CHECK_THROWS_AS(dbscan(d, 0.5, 0), ValidationError);
    CHECK_THROWS_AS(epsilon_dbscan(d, 0.0, 0.5, 2), ValidationError);
    CHECK_THROWS_AS(epsilon_dbscan(d, 0.1, 1.5, 2), ValidationError);
}

TEST_CASE("labels are canonical: cluster 0 holds the lowest clustered id") {
    // Class 0 is an outlier; the first clustered id is 1.
    const DistanceMatrix d = from_rows({
        {0.0, 1.0, 1.0, 1.0, 1.0},
        {1.0, 0.0, 0.1, 1.0, 1.0},
        {1.0, 0.1, 0.0, 1.0, 1.0},
        {1.0, 1.0, 1.0, 0.0, 0.1},
        {1.0, 1.0, 1.0, 0.1, 0.0},
    });
    const Decomposition out = dbscan(d, 0.2, 2);
    CHECK(out.assignment == std::vector<int>{kOutlier, 0, 0, 1, 1});
}

TEST_CASE("border ties go to the lowest core id") {
    // Point 0 is a border of both clusters; cores 1 and 2 are equally close.
    // min_samples 4 keeps 0 below core strength.
    DistanceMatrix d;
    d.n = 7;
    d.values.assign(49, 1.0);
    auto set = [&d](int i, int j, double v) {
        d.values[static_cast<size_t>(i) * 7 + j] = v;
        d.values[static_cast<size_t>(j) * 7 + i] = v;
    };
    for (int i = 0; i < 7; ++i) set(i, i, 0.0);
    // cluster A cores: 1, 3, 5; cluster B cores: 2, 4, 6
    set(1, 3, 0.0); set(1, 5, 0.0); set(3, 5, 0.0);
    set(2, 4, 0.0); set(2, 6, 0.0); set(4, 6, 0.0);
    set(0, 1, 0.5); set(0, 2, 0.5);

    const Decomposition out = dbscan(d, 0.5, 4);
    CHECK_FALSE(out.core[0]);
    CHECK(out.core[1]);
    CHECK(out.core[2]);
    // 0 joins the cluster of core 1, and canonicalization makes it cluster 0.
    CHECK(out.assignment[0] == out.assignment[1]);
    CHECK(out.assignment == std::vector<int>{0, 0, 1, 0, 1, 0, 1});
}

TEST_CASE("dbscan matches the brute-force oracle on random instances") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> eps_dist(0.0, 1.0);
    for (int round = 0; round < 300; ++round) {
        const int n = 2 + static_cast<int>(rng() % 7);  // N <= 8
        const DistanceMatrix d = random_distances(rng, n);
        const double eps = rng() % 2 ? eps_dist(rng) : (rng() % 11) / 10.0;
        const int min_samples = 1 + static_cast<int>(rng() % 4);

        const Decomposition got = dbscan(d, eps, min_samples);
        const auto want = dbscan_oracle(d, eps, min_samples);
        REQUIRE(std::vector<bool>(got.core.begin(), got.core.end()) == want.core);
        REQUIRE(got.assignment == want.labels);
    }
}

TEST_CASE("epsilon grid construction") {
    const DistanceMatrix d = planted_blocks();
    SUBCASE("max epsilon 0 gives a single layer") {
        const Hierarchy h = epsilon_dbscan(d, 0.1, 0.0, 2);
        CHECK(h.layers.size() == 1);
        CHECK(h.layers[0].epsilon == 0.0);
        CHECK(h.final_layer().outlier_count() == 9);  // nothing is identical
    }
    SUBCASE("grid hits the maximum exactly") {
        const Hierarchy h = epsilon_dbscan(d, 0.1, 0.3, 2);
        REQUIRE(h.layers.size() == 4);
        CHECK(h.layers[3].epsilon == doctest::Approx(0.3));
    }
    SUBCASE("a clamp layer is appended when the grid overshoots") {
        const Hierarchy h = epsilon_dbscan(d, 0.2, 0.5, 2);
        REQUIRE(h.layers.size() == 4);  // 0, 0.2, 0.4, clamp 0.5
        CHECK(h.layers[3].epsilon == doctest::Approx(0.5));
    }
}

TEST_CASE("planted blocks are recovered") {
    const Hierarchy h = epsilon_dbscan(planted_blocks(), 0.1, 0.3, 2);
    const Decomposition& final_layer = h.final_layer();
    CHECK(final_layer.cluster_count() == 3);
    CHECK(final_layer.outlier_count() == 0);
    CHECK(final_layer.assignment == std::vector<int>{0, 0, 0, 1, 1, 1, 2, 2, 2});
}

TEST_CASE("hierarchy invariants on random instances") {
    std::mt19937 rng(29);
    for (int round = 0; round < 60; ++round) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const DistanceMatrix d = random_distances(rng, n);
        const int min_samples = 1 + static_cast<int>(rng() % 4);
        const Hierarchy h = epsilon_dbscan(d, 0.25, 1.0, min_samples);

        for (size_t t = 0; t + 1 < h.layers.size(); ++t) {
            const Decomposition& fine = h.layers[t];
            const Decomposition& coarse = h.layers[t + 1];
            // outliers only shrink
            CHECK(coarse.outlier_count() <= fine.outlier_count());
            // cores stay cores
            for (int i = 0; i < n; ++i)
                if (fine.core[i]) CHECK(coarse.core[i]);
            // cores of one cluster land in one coarse cluster
            for (int c = 0; c < fine.cluster_count(); ++c) {
                int parent = -2;
                for (int i = 0; i < n; ++i) {
                    if (fine.core[i] && fine.assignment[i] == c) {
                        if (parent == -2) parent = coarse.assignment[i];
                        CHECK(coarse.assignment[i] == parent);
                    }
                }
                CHECK(parent != -2);  // every cluster has a core
            }
        }
        if (min_samples == 1)
            for (const Decomposition& layer : h.layers)
                CHECK(layer.outlier_count() == 0);
    }
}

TEST_CASE("hierarchy edges") {
    SUBCASE("single layer has no edges") {
        const Hierarchy h = epsilon_dbscan(planted_blocks(), 0.1, 0.0, 2);
        CHECK(hierarchy_edges(h).empty());
    }
    SUBCASE("blocks merge into one parent") {
        // 0.2 -> blocks form; 0.9 -> everything merges
        const Hierarchy h = epsilon_dbscan(planted_blocks(), 0.45, 0.9, 2);
        REQUIRE(h.layers.size() == 3);
        CHECK(h.layers[1].cluster_count() == 3);
        CHECK(h.layers[2].cluster_count() == 1);
        const auto edges = hierarchy_edges(h);
        int merged = 0;
        for (const HierarchyEdge& e : edges)
            if (e.layer == 1) {
                CHECK(e.parent_cluster == 0);
                ++merged;
            }
        CHECK(merged == 3);
    }
    SUBCASE("every cluster has exactly one parent edge") {
        std::mt19937 rng(31);
        for (int round = 0; round < 20; ++round) {
            const DistanceMatrix d = random_distances(rng, 6);
            const Hierarchy h = epsilon_dbscan(d, 0.2, 1.0, 2);
            const auto edges = hierarchy_edges(h);
            for (size_t t = 0; t + 1 < h.layers.size(); ++t) {
                const int k = h.layers[t].cluster_count();
                std::vector<int> seen(k, 0);
                for (const HierarchyEdge& e : edges)
                    if (e.layer == static_cast<int>(t))
                        ++seen[e.child_cluster];
                for (int c = 0; c < k; ++c)
                    CHECK(seen[c] == 1);
            }
        }
    }
}

TEST_CASE("core monotonicity across epsilon") {
    std::mt19937 rng(37);
    for (int round = 0; round < 40; ++round) {
        const DistanceMatrix d = random_distances(rng, 7);
        const double e1 = (rng() % 6) / 10.0;
        const double e2 = e1 + (rng() % 4) / 10.0;
        const Decomposition fine = dbscan(d, e1, 2);
        const Decomposition coarse = dbscan(d, std::min(e2, 1.0), 2);
        for (int i = 0; i < 7; ++i)
            if (fine.core[i]) CHECK(coarse.core[i]);
    }
}
