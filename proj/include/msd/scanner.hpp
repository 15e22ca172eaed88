#ifndef MSD_SCANNER_HPP
#define MSD_SCANNER_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "msd/facts.hpp"

namespace msd {

/// Non-fatal scan diagnostics (skipped files, duplicate class names).
struct ScanWarning {
    std::string path;
    std::string message;
};

struct ScanResult {
    ProjectFacts facts;
    std::vector<ScanWarning> warnings;
};

/// Scans a source tree under a Java-style language profile and builds the
/// class roster plus the call graph.
///
/// Call sites are resolved best-effort, without type inference:
///   * constructor sites resolve through the constructed type name;
///   * a receiver that is a field, parameter, local, `this`, `super`, or a
///     class name resolves through its declared type — calls on receivers
///     whose declared type is not a project class are external and ignored;
///   * any remaining site resolves only if exactly one project class declares
///     a method of that name; otherwise the site is dropped.
///
/// Unparseable files are skipped with a warning; the scan itself never aborts
/// on them. Throws IoError if root is unreadable and DegenerateError when no
/// classes are found.
ScanResult scan_sources(const std::filesystem::path& root,
                        const std::string& profile = "java-like");

/// Parses a single in-memory source file; exposed for tests. `path` is used
/// for ClassRecord::source_path only.
ScanResult scan_source_strings(
    const std::vector<std::pair<std::string, std::string>>& path_and_text,
    const std::string& profile = "java-like");

} // namespace msd

#endif
