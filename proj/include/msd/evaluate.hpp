#ifndef MSD_EVALUATE_HPP
#define MSD_EVALUATE_HPP

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "msd/cluster.hpp"
#include "msd/facts.hpp"

namespace msd {

/// Reference decomposition covering every class (no outliers). Cluster ids
/// follow the lexicographic order of service names.
struct GroundTruth {
    std::vector<int> assignment;
    std::vector<std::string> service_names;  // index == truth cluster id

    int cluster_count() const { return static_cast<int>(service_names.size()); }
};

/// Parses the ground-truth JSON ({"services": {name: [class, ...]}}) against
/// the facts' class universe. Missing or unknown classes raise a
/// ValidationError listing the offending names.
GroundTruth load_ground_truth(const std::filesystem::path& path, const ProjectFacts& facts);
GroundTruth parse_ground_truth_json(const std::string& text, const ProjectFacts& facts);

/// Intrinsic quality of one decomposition. Outlier classes are excluded from
/// every term.
struct QualityReport {
    double sm = 0.0;
    double ifn = 0.0;
    double ned = 0.0;
    double icp = 0.0;
    bool icp_defined = false;  // false when no calls exist among clustered classes
    int k = 0;
    int outlier_count = 0;
};

/// Cohesion minus coupling:
///   SM = (1/K) sum_i mu_i/m_i^2  -  (2/(K(K-1))) sum_{i<j} sigma_ij/(2 m_i m_j)
/// mu_i counts unique directed call edges inside cluster i, sigma_ij the
/// unique directed edges between i and j in either direction. The coupling
/// term is 0 for K = 1. Throws DegenerateError when every class is an outlier.
double structural_modularity(const Decomposition& decomp, const CallGraph& graph);

/// Mean number of interface classes per cluster; a class is an interface when
/// some class of another cluster calls it.
double interface_number(const Decomposition& decomp, const CallGraph& graph);

/// Share of clusters with extreme sizes: NED = 1 - |{i : 5 < m_i < 20}| / K.
double non_extreme_distribution(const Decomposition& decomp);

/// Log-damped share of inter-cluster call weight:
///   icp(M_i,M_j) = sum over ordered class pairs with calls > 0 of ln(calls)+1
///   ICP = inter-cluster icp / (inter + intra).
/// Throws DegenerateError when the denominator is zero.
double inter_call_percentage(const Decomposition& decomp, const CallGraph& graph);

/// All four intrinsic metrics at once. icp_defined is false instead of a
/// throw when only the ICP denominator degenerates.
QualityReport quality_report(const Decomposition& decomp, const CallGraph& graph);

/// Ground-truth cluster with the largest overlap fraction |c ∩ t|/|c|; ties
/// break toward the lowest truth cluster id.
int correspond(const std::vector<int>& cluster, const GroundTruth& truth);

struct ClusterMatch {
    int cluster;        // extracted cluster id
    int truth_cluster;  // corresponding ground-truth cluster
    double overlap;     // |cluster ∩ truth| / |cluster|
};

/// Ground-truth agreement. sr maps k in 1..10 to the fraction of clusters
/// whose overlap with their corresponding truth cluster is >= k/10.
struct MatchReport {
    double precision = 0.0;
    std::map<int, double> sr;
    std::vector<ClusterMatch> per_cluster;
};

double precision(const Decomposition& decomp, const GroundTruth& truth);
double success_rate(const Decomposition& decomp, const GroundTruth& truth, int k);
MatchReport match_report(const Decomposition& decomp, const GroundTruth& truth);

} // namespace msd

#endif
