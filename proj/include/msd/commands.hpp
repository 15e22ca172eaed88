#ifndef MSD_COMMANDS_HPP
#define MSD_COMMANDS_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace msd {

/// Pipeline hyper-parameters. The defaults are the recommended operating
/// point: alpha 0.5, max epsilon 0.7, step 0.05, min samples 2.
struct RunConfig {
    double alpha = 0.5;
    double max_epsilon = 0.7;
    double step = 0.05;
    int min_samples = 2;
    std::optional<std::filesystem::path> stopwords;

    void validate() const;  // throws ValidationError on out-of-domain values
};

namespace exit_code {
constexpr int ok = 0;
constexpr int usage = 1;
constexpr int invalid_input = 2;
constexpr int degenerate = 3;
}

struct ExtractOptions {
    std::filesystem::path root;
    std::filesystem::path out_facts;
    std::string profile = "java-like";
};

struct DecomposeOptions {
    std::filesystem::path facts;
    RunConfig config;
    std::filesystem::path out_dir = ".";
    std::string format = "json";  // report format: json|csv
    bool dump_matrices = false;
};

struct EvaluateOptions {
    std::filesystem::path facts;
    std::filesystem::path decomposition;  // decomposition or hierarchy JSON
    std::optional<std::filesystem::path> truth;
    std::optional<std::filesystem::path> out;  // default: stdout
    std::string format = "json";
};

struct SweepOptions {
    std::filesystem::path facts;
    std::string parameter;  // max_epsilon | alpha | min_samples
    std::optional<double> from;
    std::optional<double> to;
    std::optional<double> by;
    RunConfig config;
    std::optional<std::filesystem::path> truth;
    std::optional<std::filesystem::path> out;  // default: stdout
    std::string format = "csv";
};

/// Command bodies behind the CLI, returning process exit codes. Diagnostics
/// go to err; file-less results go to out.
int cmd_extract(const ExtractOptions& opt, std::ostream& out, std::ostream& err);
int cmd_decompose(const DecomposeOptions& opt, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err);

} // namespace msd

#endif
