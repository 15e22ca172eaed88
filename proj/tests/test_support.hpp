#ifndef MSD_TESTS_TEST_SUPPORT_HPP
#define MSD_TESTS_TEST_SUPPORT_HPP

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "msd/facts.hpp"
#include "msd/similarity.hpp"

namespace msd::testing {

// Symmetric random distance matrix with zero diagonal. Half the time the
// entries come from a coarse grid so that ties and exact-epsilon hits are
// common.
inline DistanceMatrix random_distances(std::mt19937& rng, int n) {
    DistanceMatrix d;
    d.n = n;
    d.values.assign(static_cast<size_t>(n) * n, 0.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::uniform_int_distribution<int> grid(0, 10);
    const bool coarse = rng() % 2 == 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = coarse ? grid(rng) / 10.0 : uniform(rng);
            d.values[static_cast<size_t>(i) * n + j] = v;
            d.values[static_cast<size_t>(j) * n + i] = v;
        }
    }
    return d;
}

// A monolith with `services` planted groups of `size` classes each: a ring of
// intra-service calls, one weak call bridging consecutive services, and a
// service-private vocabulary.
inline ProjectFacts planted_facts(int services, int size) {
    static const char* const kVocabulary[3][4] = {
        {"order", "invoice", "billing", "payment"},
        {"animal", "clinic", "veterinary", "medicine"},
        {"engine", "turbine", "piston", "valve"},
    };
    ProjectFacts facts;
    const int n = services * size;
    facts.call_graph = CallGraph(n);
    for (int s = 0; s < services; ++s) {
        for (int c = 0; c < size; ++c) {
            const int id = s * size + c;
            ClassRecord rec;
            rec.id = id;
            std::ostringstream name;
            name << "planted.s" << s << ".C" << c;
            rec.qualified_name = name.str();
            rec.source_path = "planted/s" + std::to_string(s);
            for (const char* word : kVocabulary[s % 3])
                rec.identifiers.push_back(word);
            facts.classes.push_back(std::move(rec));
        }
    }
    for (int s = 0; s < services; ++s) {
        for (int c = 0; c < size; ++c) {
            const int from = s * size + c;
            const int to = s * size + (c + 1) % size;
            facts.call_graph.set(from, to, 2);
        }
        if (s + 1 < services)
            facts.call_graph.set(s * size + size - 1, (s + 1) * size, 1);
    }
    return facts;
}

// Ground-truth JSON matching planted_facts.
inline std::string planted_truth_json(int services, int size) {
    std::ostringstream out;
    out << "{\n  \"services\": {\n";
    for (int s = 0; s < services; ++s) {
        out << "    \"service" << s << "\": [";
        for (int c = 0; c < size; ++c) {
            if (c) out << ", ";
            out << "\"planted.s" << s << ".C" << c << "\"";
        }
        out << "]" << (s + 1 < services ? "," : "") << "\n";
    }
    out << "  }\n}\n";
    return out.str();
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("msdecomp_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

    void write(const std::string& name, const std::string& content) const {
        std::filesystem::path p = path_ / name;
        std::filesystem::create_directories(p.parent_path());
        std::ofstream out(p, std::ios::binary);
        out << content;
    }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace msd::testing

#endif
