#ifndef MSD_EXPORTS_HPP
#define MSD_EXPORTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "msd/cluster.hpp"
#include "msd/evaluate.hpp"
#include "msd/facts.hpp"

namespace msd {

/// Hierarchy JSON: class roster, grid parameters, one entry per layer
/// (epsilon, assignment, core flags) plus the parent edges.
std::string hierarchy_to_json(const Hierarchy& h, const ProjectFacts& facts);

/// Single-layer decomposition JSON (same shape as one hierarchy layer, with
/// the class roster repeated so the file stands alone).
std::string decomposition_to_json(const Decomposition& d, const ProjectFacts& facts);

/// Reads either file shape back; a hierarchy collapses to its final layer.
/// Validates the class roster against the facts and reports missing/extra
/// names in the error message.
Decomposition load_decomposition(const std::filesystem::path& path, const ProjectFacts& facts);
Decomposition parse_decomposition_json(const std::string& text, const ProjectFacts& facts);

/// DOT rendering: one node per cluster per layer, parent edges between
/// layers, one dashed node per layer collecting that layer's outliers.
std::string hierarchy_to_dot(const Hierarchy& h, const ProjectFacts& facts);

/// Metric report, JSON or CSV. Undefined metrics (all-outlier layers) are
/// null in JSON and NA in CSV, never zero.
struct ReportValues {
    std::optional<QualityReport> quality;   // nullopt when K = 0
    std::optional<MatchReport> match;       // present when ground truth given
    std::vector<std::string> truth_names;   // truth cluster id -> service name
    double epsilon = 0.0;
    int n = 0;
};

std::string report_to_json(const ReportValues& r);
std::string report_to_csv(const ReportValues& r);

/// One sweep row: hyper-parameter value plus the metrics of the decomposition
/// it produced.
struct SweepRow {
    double value = 0.0;
    std::optional<QualityReport> quality;
    std::optional<MatchReport> match;
};

std::string sweep_to_csv(const std::string& parameter, const std::vector<SweepRow>& rows,
                         bool with_truth);
std::string sweep_to_json(const std::string& parameter, const std::vector<SweepRow>& rows);

} // namespace msd

#endif
