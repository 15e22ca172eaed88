#include <doctest.h>

#include <cmath>
#include <random>

#include "msd/errors.hpp"
#include "msd/similarity.hpp"

using namespace msd;

namespace {

// calls: A->B 2, B->A 1, C->A 1. calls_in: A 2, B 2, C 0.
CallGraph abc_graph() {
    CallGraph g(3);
    g.set(0, 1, 2);
    g.set(1, 0, 1);
    g.set(2, 0, 1);
    return g;
}

CallGraph random_graph(std::mt19937& rng, int n) {
    CallGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && rng() % 3 == 0)
                g.set(i, j, 1 + static_cast<int>(rng() % 5));
    return g;
}

TfIdfMatrix manual_tfidf(int docs, int terms, std::vector<double> weights) {
    TfIdfMatrix m;
    m.doc_count = docs;
    for (int t = 0; t < terms; ++t)
        m.vocabulary.emplace("t" + std::to_string(t), t);
    m.df.assign(terms, 1);
    m.weights = std::move(weights);
    return m;
}

} // namespace

TEST_CASE("structural similarity branches") {
    const SimilarityMatrix m = structural_similarity(abc_graph());
    // both calls_in nonzero: (2/2 + 1/2) / 2
    CHECK(m.at(0, 1) == doctest::Approx(0.75).epsilon(1e-12));
    // calls_in(C) = 0: calls(C,A)/calls_in(A) = 1/2
    CHECK(m.at(0, 2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.at(2, 0) == doctest::Approx(0.5).epsilon(1e-12));
    // calls(C,B) = 0 with calls_in(C) = 0
    CHECK(m.at(1, 2) == doctest::Approx(0.0));
    CHECK(m.at(0, 0) == 1.0);
}

TEST_CASE("no calls at all gives the zero branch") {
    const SimilarityMatrix m = structural_similarity(CallGraph(2));
    CHECK(m.at(0, 1) == 0.0);
    CHECK(m.at(0, 0) == 1.0);
}

TEST_CASE("self-calls do not leak into structural similarity") {
    CallGraph g = abc_graph();
    g.set(0, 0, 99);
    const SimilarityMatrix with_self = structural_similarity(g);
    const SimilarityMatrix without = structural_similarity(abc_graph());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(with_self.at(i, j) == without.at(i, j));
}

TEST_CASE("structural similarity stays in [0,1] on random graphs") {
    std::mt19937 rng(11);
    for (int round = 0; round < 200; ++round) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const CallGraph g = random_graph(rng, n);
        const SimilarityMatrix m = structural_similarity(g);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                CHECK(m.at(i, j) >= 0.0);
                CHECK(m.at(i, j) <= 1.0);
                CHECK(m.at(i, j) == m.at(j, i));
            }
            CHECK(m.at(i, i) == 1.0);
        }
    }
}

TEST_CASE("structural similarity commutes with class permutation") {
    std::mt19937 rng(13);
    const int n = 6;
    const CallGraph g = random_graph(rng, n);
    std::vector<int> perm = {3, 1, 5, 0, 4, 2};
    CallGraph permuted(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            permuted.set(perm[i], perm[j], g.at(i, j));
    const SimilarityMatrix a = structural_similarity(g);
    const SimilarityMatrix b = structural_similarity(permuted);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            CHECK(a.at(i, j) == doctest::Approx(b.at(perm[i], perm[j])).epsilon(1e-12));
}

TEST_CASE("semantic similarity") {
    SUBCASE("identical rows give 1") {
        const TfIdfMatrix t = manual_tfidf(2, 2, {1.0, 2.0, 1.0, 2.0});
        const SimilarityMatrix m = semantic_similarity(t);
        CHECK(m.at(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("disjoint vocabularies give 0") {
        const TfIdfMatrix t = manual_tfidf(2, 2, {1.5, 0.0, 0.0, 2.5});
        CHECK(semantic_similarity(t).at(0, 1) == 0.0);
    }
    SUBCASE("hand cosine: (1,1,0) vs (1,0,0) is 1/sqrt(2)") {
        const TfIdfMatrix t = manual_tfidf(2, 3, {1, 1, 0, 1, 0, 0});
        CHECK(semantic_similarity(t).at(0, 1) ==
              doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("zero rows score 0 off-diagonal, 1 on the diagonal") {
        const TfIdfMatrix t = manual_tfidf(2, 2, {1.0, 1.0, 0.0, 0.0});
        const SimilarityMatrix m = semantic_similarity(t);
        CHECK(m.at(0, 1) == 0.0);
        CHECK(m.at(1, 1) == 1.0);
    }
}

TEST_CASE("class similarity fuses the two matrices") {
    SimilarityMatrix str;
    str.n = 2;
    str.kind = SimKind::structural;
    str.values = {1.0, 0.75, 0.75, 1.0};
    SimilarityMatrix sem;
    sem.n = 2;
    sem.kind = SimKind::semantic;
    sem.values = {1.0, 0.25, 0.25, 1.0};

    CHECK(class_similarity(str, sem, 1.0).at(0, 1) == doctest::Approx(0.75));
    CHECK(class_similarity(str, sem, 0.0).at(0, 1) == doctest::Approx(0.25));
    CHECK(class_similarity(str, sem, 0.5).at(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(class_similarity(str, sem, 0.5).kind == SimKind::fused);

    SimilarityMatrix wrong;
    wrong.n = 3;
    wrong.values.assign(9, 0.0);
    CHECK_THROWS_AS(class_similarity(str, wrong, 0.5), ValidationError);
    CHECK_THROWS_AS(class_similarity(str, sem, 1.5), ValidationError);
}

TEST_CASE("class similarity is monotone in both inputs") {
    SimilarityMatrix str;
    str.n = 2;
    str.kind = SimKind::structural;
    str.values = {1.0, 0.3, 0.3, 1.0};
    SimilarityMatrix sem = str;
    sem.kind = SimKind::semantic;

    const double base = class_similarity(str, sem, 0.4).at(0, 1);
    str.values[1] = str.values[2] = 0.5;
    const double after_str = class_similarity(str, sem, 0.4).at(0, 1);
    CHECK(after_str >= base);
    sem.values[1] = sem.values[2] = 0.9;
    CHECK(class_similarity(str, sem, 0.4).at(0, 1) >= after_str);
}

TEST_CASE("distance is the order-reversing complement") {
    SimilarityMatrix str;
    str.n = 3;
    str.kind = SimKind::structural;
    str.values = {1, 0.3, 1, 0.3, 1, 0, 1, 0, 1};
    SimilarityMatrix sem = str;
    sem.kind = SimKind::semantic;
    const SimilarityMatrix cs = class_similarity(str, sem, 0.5);
    const DistanceMatrix d = to_distance(cs);

    CHECK(d.at(0, 0) == 0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j)
                CHECK(d.at(i, j) == doctest::Approx(1.0 - cs.at(i, j)).epsilon(1e-12));

    // argmin of distance == argmax of similarity over pairs
    int best_sim_i = -1, best_sim_j = -1, best_d_i = -1, best_d_j = -1;
    double best_sim = -1.0, best_d = 2.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (cs.at(i, j) > best_sim) { best_sim = cs.at(i, j); best_sim_i = i; best_sim_j = j; }
            if (d.at(i, j) < best_d) { best_d = d.at(i, j); best_d_i = i; best_d_j = j; }
        }
    }
    CHECK(best_sim_i == best_d_i);
    CHECK(best_sim_j == best_d_j);

    CHECK_THROWS_AS(to_distance(str), ValidationError);  // fused input required
}

TEST_CASE("to_distance endpoint values") {
    SimilarityMatrix cs;
    cs.n = 2;
    cs.kind = SimKind::fused;
    cs.values = {1.0, 0.3, 0.3, 1.0};
    const DistanceMatrix d = to_distance(cs);
    CHECK(d.at(0, 1) == doctest::Approx(0.7).epsilon(1e-12));
    cs.values[1] = cs.values[2] = 1.0;
    CHECK(to_distance(cs).at(0, 1) == 0.0);
    cs.values[1] = cs.values[2] = 0.0;
    CHECK(to_distance(cs).at(0, 1) == 1.0);
}

TEST_CASE("matrix csv export is rectangular") {
    SimilarityMatrix cs;
    cs.n = 2;
    cs.kind = SimKind::fused;
    cs.values = {1.0, 0.25, 0.25, 1.0};
    CHECK(matrix_to_csv(cs) == "1,0.25\n0.25,1\n");
}
