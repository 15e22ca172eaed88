#include "msd/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "msd/errors.hpp"

namespace msd {

int Decomposition::cluster_count() const {
    int max_label = -1;
    for (int a : assignment)
        max_label = std::max(max_label, a);
    return max_label + 1;
}

int Decomposition::outlier_count() const {
    return static_cast<int>(std::count(assignment.begin(), assignment.end(), kOutlier));
}

std::vector<std::vector<int>> Decomposition::clusters() const {
    std::vector<std::vector<int>> out(cluster_count());
    for (int i = 0; i < size(); ++i)
        if (assignment[i] != kOutlier)
            out[assignment[i]].push_back(i);
    return out;
}

Decomposition dbscan(const DistanceMatrix& d, double epsilon, int min_samples) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw ValidationError("epsilon must be in [0,1]");
    if (min_samples < 1)
        throw ValidationError("min_samples must be >= 1");

    const int n = d.n;
    Decomposition out;
    out.epsilon = epsilon;
    out.min_samples = min_samples;
    out.assignment.assign(n, kOutlier);
    out.core.assign(n, false);

    // Core points: at least min_samples points (the point itself included)
    // within epsilon.
    for (int i = 0; i < n; ++i) {
        int neighbors = 0;
        for (int j = 0; j < n; ++j)
            if (d.at(i, j) <= epsilon) ++neighbors;
        out.core[i] = neighbors >= min_samples;
    }

    // Clusters: connected components of the core-core neighbor relation,
    // flooded in ascending id order.
    std::vector<int> component(n, -1);
    int next = 0;
    std::vector<int> stack;
    for (int i = 0; i < n; ++i) {
        if (!out.core[i] || component[i] != -1)
            continue;
        const int comp = next++;
        component[i] = comp;
        stack.push_back(i);
        while (!stack.empty()) {
            const int p = stack.back();
            stack.pop_back();
            for (int q = 0; q < n; ++q) {
                if (out.core[q] && component[q] == -1 && d.at(p, q) <= epsilon) {
                    component[q] = comp;
                    stack.push_back(q);
                }
            }
        }
    }

    for (int i = 0; i < n; ++i) {
        if (out.core[i]) {
            out.assignment[i] = component[i];
        } else {
            // Border points join the cluster of the lowest-id core in reach.
            for (int q = 0; q < n; ++q) {
                if (out.core[q] && d.at(i, q) <= epsilon) {
                    out.assignment[i] = component[q];
                    break;
                }
            }
        }
    }

    // Canonical labels: cluster 0 holds the lowest clustered class id.
    std::vector<int> relabel(next, -1);
    int dense = 0;
    for (int i = 0; i < n; ++i) {
        const int a = out.assignment[i];
        if (a != kOutlier && relabel[a] == -1)
            relabel[a] = dense++;
    }
    for (int i = 0; i < n; ++i)
        if (out.assignment[i] != kOutlier)
            out.assignment[i] = relabel[out.assignment[i]];

    return out;
}

namespace {

constexpr double kGridTolerance = 1e-9;

std::vector<double> epsilon_grid(double step, double max_epsilon) {
    if (!(step > 0.0))
        throw ValidationError("step must be > 0");
    if (!(max_epsilon >= 0.0 && max_epsilon <= 1.0))
        throw ValidationError("max_epsilon must be in [0,1]");
    std::vector<double> grid;
    for (int t = 0;; ++t) {
        const double eps = t * step;
        if (eps > max_epsilon + kGridTolerance)
            break;
        grid.push_back(eps);
    }
    // Land on max_epsilon exactly, appending a clamp layer if the grid
    // overshoots it.
    if (std::abs(grid.back() - max_epsilon) <= kGridTolerance)
        grid.back() = max_epsilon;
    else
        grid.push_back(max_epsilon);
    return grid;
}

} // namespace

Hierarchy epsilon_dbscan(const DistanceMatrix& d, double step, double max_epsilon,
                         int min_samples) {
    const std::vector<double> grid = epsilon_grid(step, max_epsilon);
    Hierarchy h;
    h.step = step;
    h.max_epsilon = max_epsilon;
    h.min_samples = min_samples;
    h.layers.reserve(grid.size());
    for (double eps : grid)
        h.layers.push_back(dbscan(d, eps, min_samples));
    return h;
}

std::vector<HierarchyEdge> hierarchy_edges(const Hierarchy& h) {
    std::vector<HierarchyEdge> edges;
    for (size_t t = 0; t + 1 < h.layers.size(); ++t) {
        const Decomposition& child = h.layers[t];
        const Decomposition& parent = h.layers[t + 1];
        const int k = child.cluster_count();
        std::vector<int> parent_of(k, -1);
        for (int i = 0; i < child.size(); ++i) {
            if (!child.core[i])
                continue;
            const int c = child.assignment[i];
            const int p = parent.assignment[i];
            if (parent_of[c] == -1)
                parent_of[c] = p;
            else if (parent_of[c] != p)
                throw DegenerateError("core-nesting violated at layer " + std::to_string(t));
        }
        for (int c = 0; c < k; ++c)
            edges.push_back({static_cast<int>(t), c, parent_of[c]});
    }
    return edges;
}

} // namespace msd
