#include "msd/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "msd/errors.hpp"

namespace msd {

namespace {

SimilarityMatrix make_unit_diagonal(int n, SimKind kind) {
    SimilarityMatrix m;
    m.n = n;
    m.kind = kind;
    m.values.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        m.set(i, i, 1.0);
    return m;
}

} // namespace

SimilarityMatrix structural_similarity(const CallGraph& graph) {
    const int n = graph.size();
    SimilarityMatrix m = make_unit_diagonal(n, SimKind::structural);

    std::vector<std::int64_t> in(n);
    for (int i = 0; i < n; ++i)
        in[i] = graph.calls_in(i);

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double sim = 0.0;
            if (in[i] != 0 && in[j] != 0)
                sim = 0.5 * (static_cast<double>(graph.at(i, j)) / in[j] +
                             static_cast<double>(graph.at(j, i)) / in[i]);
            else if (in[i] == 0 && in[j] != 0)
                sim = static_cast<double>(graph.at(i, j)) / in[j];
            else if (in[i] != 0 && in[j] == 0)
                sim = static_cast<double>(graph.at(j, i)) / in[i];
            m.set(i, j, sim);
            m.set(j, i, sim);
        }
    }
    return m;
}

SimilarityMatrix semantic_similarity(const TfIdfMatrix& tfidf) {
    const int n = tfidf.doc_count;
    const int t = tfidf.term_count();
    SimilarityMatrix m = make_unit_diagonal(n, SimKind::semantic);

    std::vector<double> norms(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int c = 0; c < t; ++c) {
            const double w = tfidf.at(i, c);
            sum += w * w;
        }
        norms[i] = std::sqrt(sum);
    }

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double sim = 0.0;
            if (norms[i] > 0.0 && norms[j] > 0.0) {
                double dot = 0.0;
                for (int c = 0; c < t; ++c)
                    dot += tfidf.at(i, c) * tfidf.at(j, c);
                sim = std::clamp(dot / (norms[i] * norms[j]), 0.0, 1.0);
            }
            m.set(i, j, sim);
            m.set(j, i, sim);
        }
    }
    return m;
}

SimilarityMatrix class_similarity(const SimilarityMatrix& structural,
                                  const SimilarityMatrix& semantic,
                                  double alpha) {
    if (structural.n != semantic.n)
        throw ValidationError("similarity matrix dimensions differ: " +
                              std::to_string(structural.n) + " vs " +
                              std::to_string(semantic.n));
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ValidationError("alpha must be in [0,1]");

    SimilarityMatrix m = make_unit_diagonal(structural.n, SimKind::fused);
    m.alpha = alpha;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (i != j)
                m.set(i, j, alpha * structural.at(i, j) + (1.0 - alpha) * semantic.at(i, j));
    return m;
}

DistanceMatrix to_distance(const SimilarityMatrix& cs) {
    if (cs.kind != SimKind::fused)
        throw ValidationError("to_distance expects the fused class-similarity matrix");
    DistanceMatrix d;
    d.n = cs.n;
    d.values.assign(static_cast<size_t>(cs.n) * cs.n, 0.0);
    for (int i = 0; i < cs.n; ++i)
        for (int j = 0; j < cs.n; ++j)
            d.values[static_cast<size_t>(i) * cs.n + j] = i == j ? 0.0 : 1.0 - cs.at(i, j);
    return d;
}

namespace {

std::string values_to_csv(int n, const std::vector<double>& values) {
    std::string out;
    char buf[64];
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof buf, "%.12g", values[static_cast<size_t>(i) * n + j]);
            out += buf;
            out += (j + 1 < n) ? ',' : '\n';
        }
    }
    return out;
}

} // namespace

std::string matrix_to_csv(const SimilarityMatrix& m) { return values_to_csv(m.n, m.values); }
std::string matrix_to_csv(const DistanceMatrix& m) { return values_to_csv(m.n, m.values); }

} // namespace msd
