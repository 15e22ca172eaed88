#include "msd/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "msd/errors.hpp"

namespace msd {

using nlohmann::json;

GroundTruth parse_ground_truth_json(const std::string& text, const ProjectFacts& facts) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("ground truth: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("services") || !doc["services"].is_object())
        throw ValidationError("ground truth: expected {\"services\": {name: [class, ...]}}");

    GroundTruth truth;
    truth.assignment.assign(facts.classes.size(), -1);

    // json objects iterate in key order, so service ids are deterministic.
    std::vector<std::string> unknown;
    int service_id = 0;
    for (const auto& [name, members] : doc["services"].items()) {
        if (!members.is_array())
            throw ValidationError("ground truth: services[\"" + name + "\"] must be an array");
        truth.service_names.push_back(name);
        for (const auto& member : members) {
            if (!member.is_string())
                throw ValidationError("ground truth: services[\"" + name +
                                      "\"] must contain class names");
            const std::string cls = member.get<std::string>();
            const int id = facts.index_of(cls);
            if (id < 0) {
                unknown.push_back(cls);
                continue;
            }
            if (truth.assignment[id] != -1)
                throw ValidationError("ground truth: class \"" + cls +
                                      "\" appears in more than one service");
            truth.assignment[id] = service_id;
        }
        ++service_id;
    }

    std::vector<std::string> missing;
    for (size_t i = 0; i < truth.assignment.size(); ++i)
        if (truth.assignment[i] == -1)
            missing.push_back(facts.classes[i].qualified_name);

    if (!unknown.empty() || !missing.empty()) {
        std::ostringstream msg;
        msg << "ground truth does not match the class universe.";
        if (!unknown.empty()) {
            msg << " Unknown classes:";
            for (const auto& s : unknown) msg << " " << s;
            msg << ".";
        }
        if (!missing.empty()) {
            msg << " Missing classes:";
            for (const auto& s : missing) msg << " " << s;
            msg << ".";
        }
        throw ValidationError(msg.str());
    }
    return truth;
}

GroundTruth load_ground_truth(const std::filesystem::path& path, const ProjectFacts& facts) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read ground-truth file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ground_truth_json(buf.str(), facts);
}

namespace {

void require_clusters(const Decomposition& decomp, const char* metric) {
    if (decomp.cluster_count() == 0)
        throw DegenerateError(std::string(metric) +
                              " is undefined: the decomposition has no clusters");
}

} // namespace

double structural_modularity(const Decomposition& decomp, const CallGraph& graph) {
    require_clusters(decomp, "SM");
    const auto clusters = decomp.clusters();
    const int k = static_cast<int>(clusters.size());
    const int n = decomp.size();

    std::vector<std::int64_t> intra(k, 0);
    std::vector<std::int64_t> cross(static_cast<size_t>(k) * k, 0);
    for (int i = 0; i < n; ++i) {
        const int ci = decomp.assignment[i];
        if (ci == kOutlier)
            continue;
        for (int j = 0; j < n; ++j) {
            if (i == j || graph.at(i, j) == 0)
                continue;
            const int cj = decomp.assignment[j];
            if (cj == kOutlier)
                continue;
            if (ci == cj)
                ++intra[ci];
            else
                ++cross[static_cast<size_t>(std::min(ci, cj)) * k + std::max(ci, cj)];
        }
    }

    double cohesion = 0.0;
    for (int c = 0; c < k; ++c) {
        const double m = static_cast<double>(clusters[c].size());
        cohesion += static_cast<double>(intra[c]) / (m * m);
    }
    cohesion /= k;

    double coupling = 0.0;
    if (k > 1) {
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                coupling += static_cast<double>(cross[static_cast<size_t>(a) * k + b]) /
                            (2.0 * clusters[a].size() * clusters[b].size());
        coupling /= static_cast<double>(k) * (k - 1) / 2.0;
    }
    return cohesion - coupling;
}

double interface_number(const Decomposition& decomp, const CallGraph& graph) {
    require_clusters(decomp, "IFN");
    const int n = decomp.size();
    const int k = decomp.cluster_count();

    int interfaces = 0;
    for (int j = 0; j < n; ++j) {
        const int cj = decomp.assignment[j];
        if (cj == kOutlier)
            continue;
        for (int i = 0; i < n; ++i) {
            const int ci = decomp.assignment[i];
            if (ci == kOutlier || ci == cj)
                continue;
            if (graph.at(i, j) > 0) {
                ++interfaces;
                break;
            }
        }
    }
    return static_cast<double>(interfaces) / k;
}

double non_extreme_distribution(const Decomposition& decomp) {
    require_clusters(decomp, "NED");
    const auto clusters = decomp.clusters();
    int non_extreme = 0;
    for (const auto& members : clusters) {
        const size_t m = members.size();
        if (m > 5 && m < 20) ++non_extreme;
    }
    return 1.0 - static_cast<double>(non_extreme) / clusters.size();
}

double inter_call_percentage(const Decomposition& decomp, const CallGraph& graph) {
    require_clusters(decomp, "ICP");
    const int n = decomp.size();
    double inter = 0.0;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const int ci = decomp.assignment[i];
        if (ci == kOutlier)
            continue;
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            const int cj = decomp.assignment[j];
            if (cj == kOutlier)
                continue;
            const std::int64_t calls = graph.at(i, j);
            if (calls <= 0)
                continue;
            const double w = std::log(static_cast<double>(calls)) + 1.0;
            total += w;
            if (ci != cj)
                inter += w;
        }
    }
    if (total == 0.0)
        throw DegenerateError("ICP is undefined: no calls among clustered classes");
    return inter / total;
}

QualityReport quality_report(const Decomposition& decomp, const CallGraph& graph) {
    QualityReport r;
    r.k = decomp.cluster_count();
    r.outlier_count = decomp.outlier_count();
    r.sm = structural_modularity(decomp, graph);
    r.ifn = interface_number(decomp, graph);
    r.ned = non_extreme_distribution(decomp);
    try {
        r.icp = inter_call_percentage(decomp, graph);
        r.icp_defined = true;
    } catch (const DegenerateError&) {
        r.icp = 0.0;
        r.icp_defined = false;
    }
    return r;
}

int correspond(const std::vector<int>& cluster, const GroundTruth& truth) {
    const int kt = truth.cluster_count();
    std::vector<int> common(kt, 0);
    for (int id : cluster)
        ++common[truth.assignment[id]];
    int best = 0;
    for (int j = 1; j < kt; ++j)
        if (common[j] > common[best])
            best = j;  // strict >: ties keep the lowest truth id
    return best;
}

MatchReport match_report(const Decomposition& decomp, const GroundTruth& truth) {
    require_clusters(decomp, "precision");
    MatchReport report;
    const auto clusters = decomp.clusters();

    double sum = 0.0;
    for (size_t c = 0; c < clusters.size(); ++c) {
        const int t = correspond(clusters[c], truth);
        int common = 0;
        for (int id : clusters[c])
            if (truth.assignment[id] == t)
                ++common;
        const double overlap = static_cast<double>(common) / clusters[c].size();
        report.per_cluster.push_back({static_cast<int>(c), t, overlap});
        sum += overlap;
    }
    report.precision = sum / clusters.size();

    for (int k = 1; k <= 10; ++k) {
        const double threshold = k / 10.0;
        int matched = 0;
        for (const ClusterMatch& m : report.per_cluster)
            if (m.overlap >= threshold - 1e-12)
                ++matched;
        report.sr[k] = static_cast<double>(matched) / clusters.size();
    }
    return report;
}

double precision(const Decomposition& decomp, const GroundTruth& truth) {
    return match_report(decomp, truth).precision;
}

double success_rate(const Decomposition& decomp, const GroundTruth& truth, int k) {
    if (k < 1 || k > 10)
        throw ValidationError("SR@k: k must be in 1..10");
    return match_report(decomp, truth).sr.at(k);
}

} // namespace msd
