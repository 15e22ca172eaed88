#ifndef MSD_SIMILARITY_HPP
#define MSD_SIMILARITY_HPP

#include <vector>

#include "msd/facts.hpp"
#include "msd/lexicon.hpp"

namespace msd {

enum class SimKind { structural, semantic, fused };

/// Symmetric class-similarity matrix with unit diagonal, entries in [0,1].
struct SimilarityMatrix {
    int n = 0;
    std::vector<double> values;  // n x n, row-major
    SimKind kind = SimKind::structural;
    double alpha = 0.0;          // meaningful for fused matrices only

    double at(int i, int j) const { return values[static_cast<size_t>(i) * n + j]; }
    void set(int i, int j, double v) { values[static_cast<size_t>(i) * n + j] = v; }
};

/// Clustering-side view: d = 1 - CS, zero diagonal.
struct DistanceMatrix {
    int n = 0;
    std::vector<double> values;

    double at(int i, int j) const { return values[static_cast<size_t>(i) * n + j]; }
};

/// Mutual call-ratio similarity. For i != j, with in(i) the incoming calls to
/// class i from other classes:
///   both in(i), in(j) nonzero:  (calls(i,j)/in(j) + calls(j,i)/in(i)) / 2
///   in(i) == 0, in(j) != 0:     calls(i,j)/in(j)
///   in(i) != 0, in(j) == 0:     calls(j,i)/in(i)
///   otherwise:                  0
SimilarityMatrix structural_similarity(const CallGraph& graph);

/// Cosine similarity between TF-IDF rows. Zero-vector rows score 0 against
/// everything; the diagonal is 1 by convention.
SimilarityMatrix semantic_similarity(const TfIdfMatrix& tfidf);

/// CS = alpha * structural + (1 - alpha) * semantic, elementwise.
SimilarityMatrix class_similarity(const SimilarityMatrix& structural,
                                  const SimilarityMatrix& semantic,
                                  double alpha);

/// d = 1 - CS. Requires a fused matrix.
DistanceMatrix to_distance(const SimilarityMatrix& cs);

/// CSV dump (row/column order = class ids), for inspection.
std::string matrix_to_csv(const SimilarityMatrix& m);
std::string matrix_to_csv(const DistanceMatrix& m);

} // namespace msd

#endif
