#ifndef MSD_CLUSTER_HPP
#define MSD_CLUSTER_HPP

#include <vector>

#include "msd/similarity.hpp"

namespace msd {

constexpr int kOutlier = -1;

/// One clustering layer. assignment[i] is the cluster of class i, or -1 for
/// outliers. Labels are dense and canonical: cluster 0 holds the lowest
/// clustered class id, cluster 1 the lowest remaining one, and so on.
struct Decomposition {
    std::vector<int> assignment;
    std::vector<bool> core;      // per-class core-point flag
    double epsilon = 0.0;
    int min_samples = 1;

    int size() const { return static_cast<int>(assignment.size()); }
    int cluster_count() const;
    int outlier_count() const;
    /// Member ids per cluster, ascending.
    std::vector<std::vector<int>> clusters() const;
};

/// Ordered clustering layers, epsilon ascending. The final layer is the
/// recommended decomposition.
struct Hierarchy {
    std::vector<Decomposition> layers;
    double step = 0.0;
    double max_epsilon = 0.0;
    int min_samples = 1;

    const Decomposition& final_layer() const { return layers.back(); }
};

/// child->parent containment between adjacent layers: the parent of a cluster
/// is the next layer's cluster holding its core points.
struct HierarchyEdge {
    int layer;           // child layer index
    int child_cluster;
    int parent_cluster;  // cluster id at layer+1

    bool operator==(const HierarchyEdge&) const = default;
};

/// Density-based clustering over a precomputed distance matrix.
/// A point is core when at least min_samples points (itself included) lie
/// within distance epsilon. Clusters are the maximal sets of cores chained by
/// the epsilon-neighbor relation; a non-core point within epsilon of a core
/// joins the cluster of the lowest-id such core, everything else is an
/// outlier. The <= comparison makes epsilon 0 group exact duplicates.
Decomposition dbscan(const DistanceMatrix& d, double epsilon, int min_samples);

/// Runs dbscan at epsilon = 0, step, 2*step, ... up to max_epsilon. When the
/// grid does not land on max_epsilon exactly, a final layer at max_epsilon is
/// appended. Cores only gain neighbors as epsilon grows, so the core points
/// of any cluster stay together in exactly one cluster of the next layer.
Hierarchy epsilon_dbscan(const DistanceMatrix& d, double step, double max_epsilon,
                         int min_samples);

/// Parent edges for every cluster of every non-final layer. Outliers carry no
/// edges.
std::vector<HierarchyEdge> hierarchy_edges(const Hierarchy& h);

} // namespace msd

#endif
