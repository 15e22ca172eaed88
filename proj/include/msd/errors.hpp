#ifndef MSD_ERRORS_HPP
#define MSD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace msd {

// Bad or inconsistent input: malformed files, schema violations, out-of-domain
// parameters. Maps to exit code 2 at the CLI.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem-level failure: unreadable root, unwritable output path.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// The computation is well-formed but its result is undefined: empty project,
// degenerate vocabulary, metrics over zero clusters. Maps to exit code 3.
class DegenerateError : public std::runtime_error {
public:
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace msd

#endif
