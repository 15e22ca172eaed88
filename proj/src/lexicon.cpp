#include "msd/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "msd/errors.hpp"
#include "msd/stemmer.hpp"

namespace msd {

namespace {

bool is_alpha(unsigned char c) { return std::isalpha(c) != 0; }
bool is_digit(unsigned char c) { return std::isdigit(c) != 0; }
bool is_alnum(unsigned char c) { return std::isalnum(c) != 0; }
bool is_upper(unsigned char c) { return std::isupper(c) != 0; }
bool is_lower(unsigned char c) { return std::islower(c) != 0; }

// camelCase and letter/digit boundaries within one alphanumeric chunk.
// "XMLParser" gives [XML, Parser], "utf8String" gives [utf, 8, String].
void split_word(std::string_view chunk, std::vector<std::string>& out) {
    size_t start = 0;
    for (size_t i = 1; i < chunk.size(); ++i) {
        const unsigned char prev = chunk[i - 1];
        const unsigned char cur = chunk[i];
        bool boundary = false;
        if (is_lower(prev) && is_upper(cur))
            boundary = true;
        else if (is_upper(prev) && is_upper(cur) && i + 1 < chunk.size() &&
                 is_lower(static_cast<unsigned char>(chunk[i + 1])))
            boundary = true;
        else if (is_alpha(prev) && is_digit(cur))
            boundary = true;
        else if (is_digit(prev) && is_alpha(cur))
            boundary = true;
        if (boundary) {
            out.emplace_back(chunk.substr(start, i - start));
            start = i;
        }
    }
    out.emplace_back(chunk.substr(start));
}

void lowercase(std::string& s) {
    for (char& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

// See https://github.com/apache/lucene ENGLISH_STOP_WORDS_SET plus the
// `java-like` profile keywords and literals.
const char* const kEnglishStop[] = {
    "a", "an", "and", "are", "as", "at", "be", "but", "by", "for", "if", "in",
    "into", "is", "it", "no", "not", "of", "on", "or", "such", "that", "the",
    "their", "then", "there", "these", "they", "this", "to", "was", "will", "with",
};

const char* const kJavaKeywords[] = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char",
    "class", "const", "continue", "default", "do", "double", "else", "enum",
    "extends", "false", "final", "finally", "float", "for", "goto", "if",
    "implements", "import", "instanceof", "int", "interface", "long", "native",
    "new", "null", "package", "private", "protected", "public", "record",
    "return", "sealed", "short", "static", "strictfp", "super", "switch",
    "synchronized", "this", "throw", "throws", "transient", "true", "try",
    "var", "void", "volatile", "while", "yield",
};

} // namespace

const std::set<std::string>& default_stoplist() {
    static const std::set<std::string> stoplist = [] {
        std::set<std::string> s;
        for (const char* w : kEnglishStop) s.insert(w);
        for (const char* w : kJavaKeywords) s.insert(w);
        return s;
    }();
    return stoplist;
}

std::set<std::string> load_stoplist(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read stopword file: " + path.string());
    std::set<std::string> stoplist = default_stoplist();
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos)
            continue;
        const auto last = line.find_last_not_of(" \t\r\n");
        std::string term = line.substr(first, last - first + 1);
        lowercase(term);
        stoplist.insert(std::move(term));
    }
    return stoplist;
}

std::map<std::string, int> preprocess(const std::vector<std::string>& raw_items,
                                      const std::set<std::string>& stoplist) {
    std::map<std::string, int> terms;
    std::vector<std::string> pieces;
    for (const std::string& item : raw_items) {
        // Break on everything non-alphanumeric first; this covers comment
        // prose, snake_case and '$' in one pass.
        size_t i = 0;
        while (i < item.size()) {
            while (i < item.size() && !is_alnum(static_cast<unsigned char>(item[i])))
                ++i;
            size_t start = i;
            while (i < item.size() && is_alnum(static_cast<unsigned char>(item[i])))
                ++i;
            if (i == start)
                continue;
            pieces.clear();
            split_word(std::string_view(item).substr(start, i - start), pieces);
            for (std::string& piece : pieces) {
                if (piece.size() < 2)
                    continue;
                if (std::all_of(piece.begin(), piece.end(),
                                [](char c) { return is_digit(static_cast<unsigned char>(c)); }))
                    continue;
                lowercase(piece);
                if (stoplist.count(piece))
                    continue;
                std::string stem = porter_stem(piece);
                if (stem.empty() || stoplist.count(stem))
                    continue;
                ++terms[stem];
            }
        }
    }
    return terms;
}

std::vector<TokenDocument> build_documents(const ProjectFacts& facts,
                                           const std::set<std::string>& stoplist) {
    std::vector<TokenDocument> docs;
    docs.reserve(facts.classes.size());
    for (const ClassRecord& c : facts.classes) {
        std::vector<std::string> raw = c.identifiers;
        raw.insert(raw.end(), c.comments.begin(), c.comments.end());
        TokenDocument doc;
        doc.class_id = c.id;
        doc.tokens = preprocess(raw, stoplist);
        docs.push_back(std::move(doc));
    }
    return docs;
}

TfIdfMatrix build_tfidf(const std::vector<TokenDocument>& documents) {
    TfIdfMatrix m;
    m.doc_count = static_cast<int>(documents.size());

    for (const TokenDocument& doc : documents)
        for (const auto& [term, count] : doc.tokens)
            m.vocabulary.emplace(term, 0);
    if (m.vocabulary.empty())
        throw DegenerateError(
            "degenerate vocabulary: every document is empty after preprocessing");

    int col = 0;
    for (auto& [term, index] : m.vocabulary)
        index = col++;

    const size_t n_terms = m.vocabulary.size();
    m.df.assign(n_terms, 0);
    for (const TokenDocument& doc : documents)
        for (const auto& [term, count] : doc.tokens)
            ++m.df[m.vocabulary.at(term)];

    m.weights.assign(static_cast<size_t>(m.doc_count) * n_terms, 0.0);
    for (size_t d = 0; d < documents.size(); ++d) {
        for (const auto& [term, count] : documents[d].tokens) {
            const int t = m.vocabulary.at(term);
            const double idf = std::log((1.0 + m.doc_count) / (1.0 + m.df[t])) + 1.0;
            m.weights[d * n_terms + t] = static_cast<double>(count) * idf;
        }
    }
    return m;
}

} // namespace msd
