#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "msd/commands.hpp"

namespace {

void add_config_flags(CLI::App* cmd, msd::RunConfig& config) {
    cmd->add_option("--alpha", config.alpha,
                    "Weight of structural similarity in the fused score [0,1]")
        ->capture_default_str();
    cmd->add_option("--max-epsilon", config.max_epsilon,
                    "Largest neighborhood distance of the layered clustering [0,1]")
        ->capture_default_str();
    cmd->add_option("--step", config.step, "Epsilon increment between layers")
        ->capture_default_str();
    cmd->add_option("--min-samples", config.min_samples,
                    "Minimum neighborhood size (the point itself counts)")
        ->capture_default_str();
    cmd->add_option_function<std::string>(
        "--stopwords",
        [&config](const std::string& path) { config.stopwords = path; },
        "Extra stopword file, one term per line");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "msdecomp - propose a microservice decomposition of a monolithic codebase\n"
        "by fusing call-graph and identifier-vocabulary similarity and clustering\n"
        "classes with a layered density scan."};
    app.require_subcommand(1);

    // extract
    msd::ExtractOptions extract;
    CLI::App* cmd_extract = app.add_subcommand("extract", "Scan sources into a facts file");
    cmd_extract->add_option("root", extract.root, "Source tree root")->required();
    cmd_extract->add_option("--out", extract.out_facts, "Output facts JSON")
        ->default_val("facts.json");
    cmd_extract->add_option("--profile", extract.profile, "Language profile")
        ->default_val("java-like");

    // decompose
    msd::DecomposeOptions decompose;
    CLI::App* cmd_decompose =
        app.add_subcommand("decompose", "Cluster a facts file into candidate services");
    cmd_decompose->add_option("facts", decompose.facts, "Facts JSON file")->required();
    add_config_flags(cmd_decompose, decompose.config);
    cmd_decompose->add_option("--out-dir", decompose.out_dir, "Output directory")
        ->default_val(".");
    cmd_decompose->add_option("--format", decompose.format, "Report format")
        ->check(CLI::IsMember({"json", "csv", "dot"}))
        ->default_val("json");
    cmd_decompose->add_flag("--dump-matrices", decompose.dump_matrices,
                            "Also write similarity/distance matrices as CSV");

    // evaluate
    msd::EvaluateOptions evaluate;
    CLI::App* cmd_evaluate = app.add_subcommand(
        "evaluate", "Score a decomposition (or a hierarchy's final layer)");
    cmd_evaluate->add_option("facts", evaluate.facts, "Facts JSON file")->required();
    cmd_evaluate
        ->add_option("decomposition", evaluate.decomposition,
                     "Decomposition or hierarchy JSON")
        ->required();
    cmd_evaluate->add_option_function<std::string>(
        "--truth", [&evaluate](const std::string& path) { evaluate.truth = path; },
        "Ground-truth services JSON");
    cmd_evaluate->add_option_function<std::string>(
        "--out", [&evaluate](const std::string& path) { evaluate.out = path; },
        "Write the report here instead of stdout");
    cmd_evaluate->add_option("--format", evaluate.format, "Report format")
        ->check(CLI::IsMember({"json", "csv", "dot"}))
        ->default_val("json");

    // sweep
    msd::SweepOptions sweep;
    CLI::App* cmd_sweep = app.add_subcommand(
        "sweep", "Metrics across a hyper-parameter range, one row per value");
    cmd_sweep->add_option("facts", sweep.facts, "Facts JSON file")->required();
    cmd_sweep
        ->add_option("--param", sweep.parameter,
                     "Swept hyper-parameter: max_epsilon, alpha or min_samples")
        ->required();
    cmd_sweep->add_option_function<double>(
        "--from", [&sweep](double v) { sweep.from = v; }, "Range start");
    cmd_sweep->add_option_function<double>(
        "--to", [&sweep](double v) { sweep.to = v; }, "Range end (inclusive)");
    cmd_sweep->add_option_function<double>(
        "--by", [&sweep](double v) { sweep.by = v; }, "Range increment");
    add_config_flags(cmd_sweep, sweep.config);
    cmd_sweep->add_option_function<std::string>(
        "--truth", [&sweep](const std::string& path) { sweep.truth = path; },
        "Ground-truth services JSON (adds matching columns)");
    cmd_sweep->add_option_function<std::string>(
        "--out", [&sweep](const std::string& path) { sweep.out = path; },
        "Write the table here instead of stdout");
    cmd_sweep->add_option("--format", sweep.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "dot"}))
        ->default_val("csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return msd::exit_code::usage;
    }

    if (cmd_extract->parsed())
        return msd::cmd_extract(extract, std::cout, std::cerr);
    if (cmd_decompose->parsed())
        return msd::cmd_decompose(decompose, std::cout, std::cerr);
    if (cmd_evaluate->parsed())
        return msd::cmd_evaluate(evaluate, std::cout, std::cerr);
    if (cmd_sweep->parsed())
        return msd::cmd_sweep(sweep, std::cout, std::cerr);
    return msd::exit_code::usage;
}
