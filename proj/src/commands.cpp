#include "msd/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "msd/errors.hpp"
#include "msd/evaluate.hpp"
#include "msd/exports.hpp"
#include "msd/facts.hpp"
#include "msd/lexicon.hpp"
#include "msd/scanner.hpp"
#include "msd/similarity.hpp"

namespace msd {

void RunConfig::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ValidationError("--alpha must be in [0,1]");
    if (!(max_epsilon >= 0.0 && max_epsilon <= 1.0))
        throw ValidationError("--max-epsilon must be in [0,1]");
    if (!(step > 0.0 && step <= 1.0))
        throw ValidationError("--step must be in (0,1]");
    if (min_samples < 1)
        throw ValidationError("--min-samples must be >= 1");
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << content;
    if (!out)
        throw IoError("write failed: " + path.string());
}

int exit_code_for(const std::exception& e, std::ostream& err) {
    err << "error: " << e.what() << "\n";
    if (dynamic_cast<const DegenerateError*>(&e))
        return exit_code::degenerate;
    return exit_code::invalid_input;
}

struct PipelineMatrices {
    SimilarityMatrix structural;
    SimilarityMatrix semantic;
};

PipelineMatrices pipeline_similarities(const ProjectFacts& facts, const RunConfig& config,
                                       std::ostream& err) {
    const std::set<std::string> stoplist =
        config.stopwords ? load_stoplist(*config.stopwords) : default_stoplist();

    bool any_call = false;
    for (int i = 0; i < facts.class_count() && !any_call; ++i)
        for (int j = 0; j < facts.class_count() && !any_call; ++j)
            if (i != j && facts.call_graph.at(i, j) > 0)
                any_call = true;
    if (!any_call)
        err << "warning: the call graph has no inter-class calls; structural"
               " similarity is all zero\n";

    PipelineMatrices m;
    m.structural = structural_similarity(facts.call_graph);
    m.semantic = semantic_similarity(build_tfidf(build_documents(facts, stoplist)));
    return m;
}

DistanceMatrix distances_at(const PipelineMatrices& m, double alpha) {
    return to_distance(class_similarity(m.structural, m.semantic, alpha));
}

std::optional<QualityReport> quality_or_na(const Decomposition& d, const CallGraph& graph) {
    if (d.cluster_count() == 0)
        return std::nullopt;
    return quality_report(d, graph);
}

} // namespace

int cmd_extract(const ExtractOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        ScanResult result = scan_sources(opt.root, opt.profile);
        for (const ScanWarning& w : result.warnings)
            err << "warning: " << w.path << ": " << w.message << "\n";
        save_facts(result.facts, opt.out_facts);
        out << "extracted " << result.facts.class_count() << " classes -> "
            << opt.out_facts.string() << "\n";
        return exit_code::ok;
    } catch (const std::exception& e) {
        return exit_code_for(e, err);
    }
}

int cmd_decompose(const DecomposeOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        opt.config.validate();
        if (opt.format != "json" && opt.format != "csv")
            throw ValidationError("--format must be json or csv for decompose reports");
        const ProjectFacts facts = load_facts(opt.facts);
        const PipelineMatrices matrices = pipeline_similarities(facts, opt.config, err);
        const DistanceMatrix distances = distances_at(matrices, opt.config.alpha);

        std::filesystem::create_directories(opt.out_dir);
        if (opt.dump_matrices) {
            write_file(opt.out_dir / "structural.csv", matrix_to_csv(matrices.structural));
            write_file(opt.out_dir / "semantic.csv", matrix_to_csv(matrices.semantic));
            write_file(opt.out_dir / "fused.csv",
                       matrix_to_csv(class_similarity(matrices.structural,
                                                      matrices.semantic, opt.config.alpha)));
            write_file(opt.out_dir / "distance.csv", matrix_to_csv(distances));
        }

        const Hierarchy hierarchy = epsilon_dbscan(
            distances, opt.config.step, opt.config.max_epsilon, opt.config.min_samples);
        const Decomposition& final_layer = hierarchy.final_layer();

        write_file(opt.out_dir / "hierarchy.json", hierarchy_to_json(hierarchy, facts));
        write_file(opt.out_dir / "hierarchy.dot", hierarchy_to_dot(hierarchy, facts));
        write_file(opt.out_dir / "decomposition.json",
                   decomposition_to_json(final_layer, facts));

        ReportValues report;
        report.epsilon = final_layer.epsilon;
        report.n = final_layer.size();
        report.quality = quality_or_na(final_layer, facts.call_graph);
        const std::filesystem::path report_path =
            opt.out_dir / (opt.format == "csv" ? "report.csv" : "report.json");
        write_file(report_path,
                   opt.format == "csv" ? report_to_csv(report) : report_to_json(report));

        out << "wrote " << (opt.out_dir / "hierarchy.json").string() << ", "
            << (opt.out_dir / "hierarchy.dot").string() << ", "
            << (opt.out_dir / "decomposition.json").string() << ", "
            << report_path.string() << "\n";

        if (final_layer.cluster_count() == 0) {
            err << "warning: every class is an outlier at max epsilon "
                << opt.config.max_epsilon << "; consider raising --max-epsilon\n";
            return exit_code::degenerate;
        }
        return exit_code::ok;
    } catch (const std::exception& e) {
        return exit_code_for(e, err);
    }
}

int cmd_evaluate(const EvaluateOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        if (opt.format != "json" && opt.format != "csv")
            throw ValidationError("--format must be json or csv for evaluate");
        const ProjectFacts facts = load_facts(opt.facts);
        const Decomposition decomp = load_decomposition(opt.decomposition, facts);

        ReportValues report;
        report.epsilon = decomp.epsilon;
        report.n = decomp.size();
        report.quality = quality_or_na(decomp, facts.call_graph);
        if (opt.truth) {
            const GroundTruth truth = load_ground_truth(*opt.truth, facts);
            if (report.quality.has_value())
                report.match = match_report(decomp, truth);
            report.truth_names = truth.service_names;
        }

        const std::string text =
            opt.format == "csv" ? report_to_csv(report) : report_to_json(report);
        if (opt.out)
            write_file(*opt.out, text);
        else
            out << text;

        if (!report.quality.has_value()) {
            err << "warning: every class is an outlier; quality metrics are undefined\n";
            return exit_code::degenerate;
        }
        return exit_code::ok;
    } catch (const std::exception& e) {
        return exit_code_for(e, err);
    }
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        if (opt.format != "json" && opt.format != "csv")
            throw ValidationError("--format must be json or csv for sweep");
        if (opt.parameter != "max_epsilon" && opt.parameter != "alpha" &&
            opt.parameter != "min_samples")
            throw ValidationError(
                "--param must be one of max_epsilon, alpha, min_samples");
        opt.config.validate();

        const bool integer_grid = opt.parameter == "min_samples";
        const double lo = opt.from.value_or(integer_grid ? 1.0 : 0.0);
        const double hi = opt.to.value_or(integer_grid ? 4.0 : 1.0);
        const double by = opt.by.value_or(integer_grid ? 1.0 : 0.05);
        if (!(by > 0.0) || hi < lo)
            throw ValidationError("invalid sweep range: need from <= to and by > 0");
        if (integer_grid) {
            if (lo < 1.0 || std::floor(lo) != lo || std::floor(by) != by)
                throw ValidationError("min_samples sweeps use integers >= 1");
        } else if (lo < 0.0 || hi > 1.0) {
            throw ValidationError("--from/--to must stay in [0,1] for " + opt.parameter);
        }

        const ProjectFacts facts = load_facts(opt.facts);
        std::optional<GroundTruth> truth;
        if (opt.truth)
            truth = load_ground_truth(*opt.truth, facts);

        const PipelineMatrices matrices = pipeline_similarities(facts, opt.config, err);
        std::optional<DistanceMatrix> fixed;
        if (opt.parameter != "alpha")
            fixed = distances_at(matrices, opt.config.alpha);

        std::vector<SweepRow> rows;
        for (int t = 0;; ++t) {
            const double value = lo + t * by;
            if (value > hi + 1e-9)
                break;
            RunConfig config = opt.config;
            if (opt.parameter == "max_epsilon")
                config.max_epsilon = std::min(value, 1.0);
            else if (opt.parameter == "alpha")
                config.alpha = std::min(value, 1.0);
            else
                config.min_samples = static_cast<int>(value);

            const DistanceMatrix distances =
                fixed ? *fixed : distances_at(matrices, config.alpha);
            // Only the final layer feeds the metrics, and it equals a single
            // run at epsilon = max_epsilon.
            const Decomposition decomp =
                dbscan(distances, config.max_epsilon, config.min_samples);

            SweepRow row;
            row.value = value;
            row.quality = quality_or_na(decomp, facts.call_graph);
            if (truth && row.quality.has_value())
                row.match = match_report(decomp, *truth);
            rows.push_back(std::move(row));
        }

        const std::string text = opt.format == "json"
                                     ? sweep_to_json(opt.parameter, rows)
                                     : sweep_to_csv(opt.parameter, rows, truth.has_value());
        if (opt.out)
            write_file(*opt.out, text);
        else
            out << text;
        return exit_code::ok;
    } catch (const std::exception& e) {
        return exit_code_for(e, err);
    }
}

} // namespace msd
