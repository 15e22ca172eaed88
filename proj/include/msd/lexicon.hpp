#ifndef MSD_LEXICON_HPP
#define MSD_LEXICON_HPP

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "msd/facts.hpp"

namespace msd {

/// Preprocessed term multiset of one class.
struct TokenDocument {
    int class_id = -1;
    std::map<std::string, int> tokens;  // term -> occurrence count

    bool empty() const { return tokens.empty(); }
};

/// Built-in English stopwords plus the language profile's keywords.
const std::set<std::string>& default_stoplist();

/// default_stoplist() extended with one term per line from `path` (UTF-8,
/// blank lines and leading/trailing whitespace ignored).
std::set<std::string> load_stoplist(const std::filesystem::path& path);

/// Splits raw lexical items into terms and normalizes them. Items are first
/// broken on non-alphanumeric characters (covers comment prose and snake_case
/// alike), then on camelCase and letter/digit boundaries; pieces are
/// lowercased, dropped if a stopword, a pure number, or a single character,
/// and finally stemmed.
std::map<std::string, int> preprocess(const std::vector<std::string>& raw_items,
                                      const std::set<std::string>& stoplist);

/// One TokenDocument per class, from its identifiers and comments.
std::vector<TokenDocument> build_documents(const ProjectFacts& facts,
                                           const std::set<std::string>& stoplist);

/// Term-weight matrix over the project vocabulary.
/// weights(i,t) = tf(i,t) * idf(t) with raw term counts and
/// idf(t) = ln((1+N)/(1+df(t))) + 1. No row normalization; the cosine in the
/// semantic similarity takes care of scale.
struct TfIdfMatrix {
    std::map<std::string, int> vocabulary;  // term -> column (lexicographic order)
    int doc_count = 0;
    std::vector<int> df;                    // per-column document frequency
    std::vector<double> weights;            // doc_count x vocabulary.size(), row-major

    int term_count() const { return static_cast<int>(vocabulary.size()); }
    double at(int doc, int term) const {
        return weights[static_cast<size_t>(doc) * vocabulary.size() + term];
    }
};

/// Builds the TF-IDF matrix. Documents must be indexed 0..N-1 in order.
/// Throws DegenerateError when every document is empty.
TfIdfMatrix build_tfidf(const std::vector<TokenDocument>& documents);

} // namespace msd

#endif
