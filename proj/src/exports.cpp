#include "msd/exports.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "msd/errors.hpp"

namespace msd {

using nlohmann::json;

namespace {

json layer_to_json(const Decomposition& d) {
    json layer;
    layer["epsilon"] = d.epsilon;
    layer["assignment"] = d.assignment;
    json core = json::array();
    for (bool b : d.core)
        core.push_back(b);
    layer["core"] = std::move(core);
    layer["cluster_count"] = d.cluster_count();
    layer["outlier_count"] = d.outlier_count();
    return layer;
}

json class_names(const ProjectFacts& facts) {
    json names = json::array();
    for (const ClassRecord& c : facts.classes)
        names.push_back(c.qualified_name);
    return names;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

std::string hierarchy_to_json(const Hierarchy& h, const ProjectFacts& facts) {
    json doc;
    doc["classes"] = class_names(facts);
    doc["step"] = h.step;
    doc["max_epsilon"] = h.max_epsilon;
    doc["min_samples"] = h.min_samples;
    json layers = json::array();
    for (const Decomposition& d : h.layers)
        layers.push_back(layer_to_json(d));
    doc["layers"] = std::move(layers);
    json edges = json::array();
    for (const HierarchyEdge& e : hierarchy_edges(h))
        edges.push_back({e.layer, e.child_cluster, e.parent_cluster});
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

std::string decomposition_to_json(const Decomposition& d, const ProjectFacts& facts) {
    json doc = layer_to_json(d);
    doc["classes"] = class_names(facts);
    doc["min_samples"] = d.min_samples;
    return doc.dump(2) + "\n";
}

namespace {

Decomposition layer_from_json(const json& layer, size_t n, const std::string& where) {
    Decomposition d;
    if (!layer.contains("assignment") || !layer["assignment"].is_array())
        throw ValidationError(where + ": missing \"assignment\" array");
    if (layer["assignment"].size() != n)
        throw ValidationError(where + ": assignment length " +
                              std::to_string(layer["assignment"].size()) +
                              " does not match class count " + std::to_string(n));
    for (const auto& v : layer["assignment"]) {
        if (!v.is_number_integer())
            throw ValidationError(where + ": assignment entries must be integers");
        d.assignment.push_back(v.get<int>());
    }
    if (layer.contains("core")) {
        for (const auto& v : layer["core"])
            d.core.push_back(v.get<bool>());
        if (d.core.size() != n)
            throw ValidationError(where + ": core flag length mismatch");
    } else {
        d.core.assign(n, false);
    }
    if (layer.contains("epsilon"))
        d.epsilon = layer["epsilon"].get<double>();
    if (layer.contains("min_samples"))
        d.min_samples = layer["min_samples"].get<int>();
    return d;
}

void check_universe(const json& doc, const ProjectFacts& facts, const std::string& where) {
    if (!doc.contains("classes") || !doc["classes"].is_array())
        throw ValidationError(where + ": missing \"classes\" array");
    std::vector<std::string> missing;
    std::vector<std::string> extra;
    std::set<std::string> listed;
    for (const auto& v : doc["classes"]) {
        const std::string name = v.get<std::string>();
        listed.insert(name);
        if (facts.index_of(name) < 0)
            extra.push_back(name);
    }
    for (const ClassRecord& c : facts.classes)
        if (!listed.count(c.qualified_name))
            missing.push_back(c.qualified_name);
    if (!missing.empty() || !extra.empty()) {
        std::ostringstream msg;
        msg << where << ": class universe mismatch.";
        if (!missing.empty()) {
            msg << " Missing:";
            for (const auto& s : missing) msg << " " << s;
            msg << ".";
        }
        if (!extra.empty()) {
            msg << " Unknown:";
            for (const auto& s : extra) msg << " " << s;
            msg << ".";
        }
        throw ValidationError(msg.str());
    }
    // Same set and same cardinality: the file's id order is the facts' order.
    if (doc["classes"].size() != facts.classes.size())
        throw ValidationError(where + ": duplicate class names in \"classes\"");
}

} // namespace

Decomposition parse_decomposition_json(const std::string& text, const ProjectFacts& facts) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("decomposition: ") + e.what());
    }
    const std::string where = "decomposition";
    if (!doc.is_object())
        throw ValidationError(where + ": top level must be an object");
    check_universe(doc, facts, where);
    const size_t n = facts.classes.size();
    Decomposition d;
    if (doc.contains("layers")) {
        if (!doc["layers"].is_array() || doc["layers"].empty())
            throw ValidationError(where + ": \"layers\" must be a non-empty array");
        d = layer_from_json(doc["layers"].back(), n, where + ".layers[last]");
        if (doc.contains("min_samples"))
            d.min_samples = doc["min_samples"].get<int>();
    } else {
        d = layer_from_json(doc, n, where);
    }
    // Positions in the file follow its own class list; remap to facts ids in
    // case an external tool wrote the roster in another order.
    Decomposition remapped = d;
    for (size_t pos = 0; pos < n; ++pos) {
        const int id = facts.index_of(doc["classes"][pos].get<std::string>());
        remapped.assignment[id] = d.assignment[pos];
        remapped.core[id] = d.core[pos];
    }
    return remapped;
}

Decomposition load_decomposition(const std::filesystem::path& path, const ProjectFacts& facts) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read decomposition file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_decomposition_json(buf.str(), facts);
}

namespace {

std::string simple_name(const std::string& qualified) {
    const auto dot = qualified.rfind('.');
    return dot == std::string::npos ? qualified : qualified.substr(dot + 1);
}

} // namespace

std::string hierarchy_to_dot(const Hierarchy& h, const ProjectFacts& facts) {
    std::ostringstream out;
    out << "digraph hierarchy {\n";
    out << "  rankdir=BT;\n";
    out << "  node [shape=box, fontname=\"Helvetica\"];\n";
    for (size_t t = 0; t < h.layers.size(); ++t) {
        const Decomposition& d = h.layers[t];
        out << "  subgraph layer_" << t << " {\n";
        out << "    rank=same;\n";
        const auto clusters = d.clusters();
        for (size_t c = 0; c < clusters.size(); ++c) {
            out << "    L" << t << "_C" << c << " [label=\"eps=" << fmt(d.epsilon)
                << "\\nc" << c << " (" << clusters[c].size() << ")";
            if (clusters[c].size() <= 8) {
                out << "\\n";
                for (size_t m = 0; m < clusters[c].size(); ++m) {
                    if (m) out << ", ";
                    out << simple_name(facts.classes[clusters[c][m]].qualified_name);
                }
            }
            out << "\"];\n";
        }
        if (d.outlier_count() > 0) {
            out << "    L" << t << "_outliers [label=\"outliers (" << d.outlier_count()
                << ")\", style=dashed, color=gray50];\n";
        }
        out << "  }\n";
    }
    for (const HierarchyEdge& e : hierarchy_edges(h)) {
        out << "  L" << e.layer << "_C" << e.child_cluster << " -> L" << e.layer + 1
            << "_C" << e.parent_cluster << ";\n";
    }
    out << "}\n";
    return out.str();
}

namespace {

json quality_to_json(const std::optional<QualityReport>& q) {
    json out;
    if (!q.has_value()) {
        out["k"] = 0;
        out["sm"] = nullptr;
        out["ifn"] = nullptr;
        out["ned"] = nullptr;
        out["icp"] = nullptr;
        return out;
    }
    out["k"] = q->k;
    out["outlier_count"] = q->outlier_count;
    out["sm"] = q->sm;
    out["ifn"] = q->ifn;
    out["ned"] = q->ned;
    if (q->icp_defined)
        out["icp"] = q->icp;
    else
        out["icp"] = nullptr;
    return out;
}

std::string cell(const std::optional<QualityReport>& q, double QualityReport::* field) {
    if (!q.has_value())
        return "NA";
    return fmt((*q).*field);
}

} // namespace

std::string report_to_json(const ReportValues& r) {
    json doc = quality_to_json(r.quality);
    doc["epsilon"] = r.epsilon;
    doc["class_count"] = r.n;
    if (!r.quality.has_value())
        doc["outlier_count"] = r.n;
    if (r.match.has_value()) {
        doc["precision"] = r.match->precision;
        json sr;
        sr["5"] = r.match->sr.at(5);
        sr["7"] = r.match->sr.at(7);
        sr["9"] = r.match->sr.at(9);
        doc["sr"] = std::move(sr);
        json per = json::array();
        for (const ClusterMatch& m : r.match->per_cluster) {
            json entry;
            entry["cluster"] = m.cluster;
            entry["truth_cluster"] = m.truth_cluster;
            if (m.truth_cluster >= 0 &&
                m.truth_cluster < static_cast<int>(r.truth_names.size()))
                entry["truth_service"] = r.truth_names[m.truth_cluster];
            entry["overlap"] = m.overlap;
            per.push_back(std::move(entry));
        }
        doc["per_cluster"] = std::move(per);
    }
    return doc.dump(2) + "\n";
}

std::string report_to_csv(const ReportValues& r) {
    std::ostringstream out;
    out << "epsilon,k,outlier_count,sm,ifn,ned,icp";
    if (r.match.has_value())
        out << ",precision,sr@5,sr@7,sr@9";
    out << "\n";
    out << fmt(r.epsilon) << ",";
    if (r.quality.has_value()) {
        out << r.quality->k << "," << r.quality->outlier_count << ","
            << fmt(r.quality->sm) << "," << fmt(r.quality->ifn) << ","
            << fmt(r.quality->ned) << ","
            << (r.quality->icp_defined ? fmt(r.quality->icp) : "NA");
    } else {
        out << "0," << r.n << ",NA,NA,NA,NA";
    }
    if (r.match.has_value()) {
        out << "," << fmt(r.match->precision) << "," << fmt(r.match->sr.at(5)) << ","
            << fmt(r.match->sr.at(7)) << "," << fmt(r.match->sr.at(9));
    }
    out << "\n";
    return out.str();
}

std::string sweep_to_csv(const std::string& parameter, const std::vector<SweepRow>& rows,
                         bool with_truth) {
    std::ostringstream out;
    out << "parameter,value,k,outlier_count,sm,ifn,ned,icp";
    if (with_truth)
        out << ",precision,sr@5,sr@7,sr@9";
    out << "\n";
    for (const SweepRow& row : rows) {
        out << parameter << "," << fmt(row.value) << ",";
        if (row.quality.has_value())
            out << row.quality->k << "," << row.quality->outlier_count;
        else
            out << "0,NA";
        out << "," << cell(row.quality, &QualityReport::sm) << ","
            << cell(row.quality, &QualityReport::ifn) << ","
            << cell(row.quality, &QualityReport::ned) << ",";
        if (row.quality.has_value() && row.quality->icp_defined)
            out << fmt(row.quality->icp);
        else
            out << "NA";
        if (with_truth) {
            if (row.match.has_value())
                out << "," << fmt(row.match->precision) << "," << fmt(row.match->sr.at(5))
                    << "," << fmt(row.match->sr.at(7)) << "," << fmt(row.match->sr.at(9));
            else
                out << ",NA,NA,NA,NA";
        }
        out << "\n";
    }
    return out.str();
}

std::string sweep_to_json(const std::string& parameter, const std::vector<SweepRow>& rows) {
    json doc;
    doc["parameter"] = parameter;
    json jrows = json::array();
    for (const SweepRow& row : rows) {
        json r = quality_to_json(row.quality);
        r["value"] = row.value;
        if (row.match.has_value()) {
            r["precision"] = row.match->precision;
            r["sr5"] = row.match->sr.at(5);
            r["sr7"] = row.match->sr.at(7);
            r["sr9"] = row.match->sr.at(9);
        }
        jrows.push_back(std::move(r));
    }
    doc["rows"] = std::move(jrows);
    return doc.dump(2) + "\n";
}

} // namespace msd
