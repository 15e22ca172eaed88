#ifndef MSD_TESTS_DBSCAN_ORACLE_HPP
#define MSD_TESTS_DBSCAN_ORACLE_HPP

// Brute-force density-reachability oracle, independent of the production
// clusterer: core flags by neighborhood counting, clusters as the transitive
// closure of the core-core neighbor relation, border points attached by the
// lowest-core-id rule. Kept deliberately naive (boolean closure over an
// explicit relation matrix) so it shares no code path with msd::dbscan.

#include <vector>

#include "msd/similarity.hpp"

namespace msd::testing {

struct OracleResult {
    std::vector<bool> core;
    std::vector<int> labels;  // canonical: cluster 0 holds the lowest clustered id
};

inline OracleResult dbscan_oracle(const DistanceMatrix& d, double epsilon, int min_samples) {
    const int n = d.n;
    OracleResult r;
    r.core.assign(n, false);
    r.labels.assign(n, -1);

    for (int i = 0; i < n; ++i) {
        int count = 0;
        for (int j = 0; j < n; ++j)
            if (d.at(i, j) <= epsilon) ++count;
        r.core[i] = count >= min_samples;
    }

    // reach[i][j]: core j is density-reachable from core i.
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            reach[i][j] = r.core[i] && r.core[j] && (i == j || d.at(i, j) <= epsilon);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;

    // Group cores by reachability classes, then attach borders.
    std::vector<int> group(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (!r.core[i] || group[i] != -1)
            continue;
        group[i] = next;
        for (int j = i + 1; j < n; ++j)
            if (reach[i][j]) group[j] = next;
        ++next;
    }
    for (int i = 0; i < n; ++i) {
        if (r.core[i]) {
            r.labels[i] = group[i];
        } else {
            for (int q = 0; q < n; ++q) {
                if (r.core[q] && d.at(i, q) <= epsilon) {
                    r.labels[i] = group[q];
                    break;
                }
            }
        }
    }

    std::vector<int> relabel(next, -1);
    int dense = 0;
    for (int i = 0; i < n; ++i)
        if (r.labels[i] != -1 && relabel[r.labels[i]] == -1)
            relabel[r.labels[i]] = dense++;
    for (int i = 0; i < n; ++i)
        if (r.labels[i] != -1)
            r.labels[i] = relabel[r.labels[i]];
    return r;
}

} // namespace msd::testing

#endif
