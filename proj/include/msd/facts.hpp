#ifndef MSD_FACTS_HPP
#define MSD_FACTS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace msd {

/// One top-level class of the monolith. Nested and anonymous types are folded
/// into their enclosing top-level class by the scanner.
struct ClassRecord {
    int id = -1;                    // dense index, 0..N-1, ordered by qualified_name
    std::string qualified_name;     // unique across the project
    std::string source_path;
    std::vector<std::string> identifiers;  // class/method/parameter/field/local names
    std::vector<std::string> comments;     // raw comment text, delimiters stripped

    bool operator==(const ClassRecord&) const = default;
};

/// Class-level call-count matrix. counts(i,j) is the number of invocation
/// sites in class i resolved to a method of class j. The diagonal (self-calls)
/// is stored but excluded from calls_in().
class CallGraph {
public:
    CallGraph() = default;
    explicit CallGraph(int n) : n_(n), counts_(static_cast<size_t>(n) * n, 0) {}

    int size() const { return n_; }

    std::int64_t at(int i, int j) const { return counts_[idx(i, j)]; }
    void set(int i, int j, std::int64_t c) { counts_[idx(i, j)] = c; }
    void add(int i, int j, std::int64_t c = 1) { counts_[idx(i, j)] += c; }

    /// Incoming calls to class i from all other classes (diagonal excluded).
    std::int64_t calls_in(int i) const {
        std::int64_t sum = 0;
        for (int j = 0; j < n_; ++j)
            if (j != i) sum += at(j, i);
        return sum;
    }

    bool operator==(const CallGraph&) const = default;

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }

    int n_ = 0;
    std::vector<std::int64_t> counts_;
};

/// The extracted monolith: class roster plus call graph. Immutable once built;
/// safe for concurrent reads.
struct ProjectFacts {
    std::vector<ClassRecord> classes;   // index == ClassRecord::id
    CallGraph call_graph;

    int class_count() const { return static_cast<int>(classes.size()); }

    /// Index of a qualified name, or -1.
    int index_of(std::string_view qualified_name) const;

    /// Enforces the invariants: ids dense and sorted by name, names unique,
    /// graph dimension matches, counts non-negative. Throws ValidationError.
    void validate() const;

    bool operator==(const ProjectFacts&) const = default;
};

/// Reads a facts JSON file. Ids are assigned by sorting qualified names, so
/// the on-disk class order does not matter. Throws ValidationError naming the
/// offending field, or IoError.
ProjectFacts load_facts(const std::filesystem::path& path);

/// Parses facts from a JSON string (the file-level loader is a thin wrapper).
ProjectFacts parse_facts_json(const std::string& text, const std::string& origin = "<string>");

/// Writes the facts JSON schema. Deterministic: identical facts give
/// byte-identical files. Throws IoError on an unwritable path.
void save_facts(const ProjectFacts& facts, const std::filesystem::path& path);

/// Serialization used by save_facts, exposed for tests and tooling.
std::string facts_to_json(const ProjectFacts& facts);

} // namespace msd

#endif
