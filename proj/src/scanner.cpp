#include "msd/scanner.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "msd/errors.hpp"

namespace msd {

namespace {

// ---------------------------------------------------------------------------
// Lexing
// ---------------------------------------------------------------------------

struct Token {
    enum Kind { Ident, Punct, Number, String, Arrow, ColonColon };
    Kind kind;
    std::string text;
    size_t pos;
};

struct RawComment {
    std::string text;
    size_t pos;
};

struct ParseAbort {
    std::string message;
};

bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' ||
           static_cast<unsigned char>(c) >= 0x80;
}
bool ident_char(char c) {
    return ident_start(c) || (c >= '0' && c <= '9');
}

void tokenize(const std::string& text, std::vector<Token>& tokens,
              std::vector<RawComment>& comments) {
    const size_t n = text.size();
    size_t i = 0;
    while (i < n) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && text[i + 1] == '/') {
            size_t end = text.find('\n', i + 2);
            if (end == std::string::npos) end = n;
            comments.push_back({text.substr(i + 2, end - i - 2), i});
            i = end;
            continue;
        }
        if (c == '/' && i + 1 < n && text[i + 1] == '*') {
            const size_t end = text.find("*/", i + 2);
            if (end == std::string::npos)
                throw ParseAbort{"unterminated block comment"};
            comments.push_back({text.substr(i + 2, end - i - 2), i});
            i = end + 2;
            continue;
        }
        if (c == '"') {
            if (i + 2 < n && text[i + 1] == '"' && text[i + 2] == '"') {
                const size_t end = text.find("\"\"\"", i + 3);
                if (end == std::string::npos)
                    throw ParseAbort{"unterminated text block"};
                tokens.push_back({Token::String, "", i});
                i = end + 3;
                continue;
            }
            size_t j = i + 1;
            while (j < n && text[j] != '"') {
                if (text[j] == '\\' && j + 1 < n) ++j;
                if (text[j] == '\n')
                    throw ParseAbort{"unterminated string literal"};
                ++j;
            }
            if (j >= n)
                throw ParseAbort{"unterminated string literal"};
            tokens.push_back({Token::String, "", i});
            i = j + 1;
            continue;
        }
        if (c == '\'') {
            size_t j = i + 1;
            while (j < n && text[j] != '\'') {
                if (text[j] == '\\' && j + 1 < n) ++j;
                ++j;
            }
            if (j >= n)
                throw ParseAbort{"unterminated character literal"};
            tokens.push_back({Token::String, "", i});
            i = j + 1;
            continue;
        }
        if (ident_start(c)) {
            size_t j = i + 1;
            while (j < n && ident_char(text[j])) ++j;
            tokens.push_back({Token::Ident, text.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (c >= '0' && c <= '9') {
            size_t j = i + 1;
            while (j < n && (ident_char(text[j]) ||
                             (text[j] == '.' && j + 1 < n && text[j + 1] >= '0' &&
                              text[j + 1] <= '9')))
                ++j;
            tokens.push_back({Token::Number, text.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (c == '-' && i + 1 < n && text[i + 1] == '>') {
            tokens.push_back({Token::Arrow, "->", i});
            i += 2;
            continue;
        }
        if (c == ':' && i + 1 < n && text[i + 1] == ':') {
            tokens.push_back({Token::ColonColon, "::", i});
            i += 2;
            continue;
        }
        tokens.push_back({Token::Punct, std::string(1, c), i});
        ++i;
    }
}

// ---------------------------------------------------------------------------
// Per-file parsing
// ---------------------------------------------------------------------------

const std::set<std::string>& modifier_words() {
    static const std::set<std::string> s = {
        "public", "private", "protected", "static",   "final",      "abstract",
        "native", "transient", "volatile", "strictfp", "synchronized", "default",
        "sealed",
    };
    return s;
}

const std::set<std::string>& control_words() {
    static const std::set<std::string> s = {
        "if",    "for",   "while",   "switch", "catch",      "return", "throw",
        "assert", "else",  "do",      "try",    "finally",    "break",  "continue",
        "case",  "yield", "instanceof", "new",  "synchronized", "goto",
    };
    return s;
}

const std::set<std::string>& primitive_words() {
    static const std::set<std::string> s = {
        "int", "long", "short", "byte", "char", "boolean", "float", "double", "void",
    };
    return s;
}

bool is_type_keyword(const std::string& t) {
    return t == "class" || t == "interface" || t == "enum" || t == "record";
}

struct CallSite {
    enum Kind { Ctor, This, Super, Typed, Bare, Unique };
    Kind kind;
    std::string name;  // Ctor/Typed: type name; Bare: receiver identifier
    std::string method;
};

struct RawClass {
    std::string simple_name;
    std::string qualified_name;
    std::string path;
    std::string extends_name;
    size_t span_begin = 0;  // byte offsets, for comment attribution
    size_t span_end = 0;
    std::vector<std::string> identifiers;
    std::vector<std::string> comments;
    std::vector<std::string> method_names;
    std::vector<std::string> nested_names;
    std::map<std::string, std::string> fields;  // name -> declared type ("" if unknown)
    std::vector<CallSite> sites;
};

struct BodyRange {
    size_t begin;  // token indices, exclusive of the enclosing braces
    size_t end;
    std::vector<std::pair<std::string, std::string>> params;  // name -> type
};

class FileParser {
public:
    FileParser(const std::string& path, const std::string& text) : path_(path) {
        tokenize(text, tokens_, comments_);
    }

    std::vector<RawClass> parse() {
        parse_package();
        size_t i = 0;
        while (i < tokens_.size()) {
            const Token& t = tokens_[i];
            if (t.kind == Token::Punct && t.text == "@") {
                i = skip_annotation(i);
            } else if (t.kind == Token::Ident &&
                       (t.text == "import" || t.text == "package")) {
                i = skip_to_semicolon(i);
            } else if (t.kind == Token::Ident && is_type_keyword(t.text)) {
                parse_top_level_type(i);
            } else {
                ++i;
            }
        }
        if (classes_.empty())
            return {};
        attach_comments();
        return std::move(classes_);
    }

private:
    std::string path_;
    std::string package_;
    std::vector<Token> tokens_;
    std::vector<RawComment> comments_;
    std::vector<RawClass> classes_;
    std::vector<BodyRange> bodies_;  // per current top-level class

    [[noreturn]] void abort_parse(const std::string& msg) { throw ParseAbort{msg}; }

    void parse_package() {
        for (size_t i = 0; i + 1 < tokens_.size(); ++i) {
            if (tokens_[i].kind == Token::Ident && tokens_[i].text == "package") {
                std::string name;
                size_t j = i + 1;
                while (j < tokens_.size() && !(tokens_[j].kind == Token::Punct &&
                                               tokens_[j].text == ";")) {
                    name += tokens_[j].text;
                    ++j;
                }
                package_ = name;
                return;
            }
            if (tokens_[i].kind == Token::Ident && is_type_keyword(tokens_[i].text))
                return;
        }
    }

    size_t skip_annotation(size_t i) {
        ++i;  // '@'
        while (i < tokens_.size() && tokens_[i].kind == Token::Ident) {
            ++i;
            if (i + 1 < tokens_.size() && tokens_[i].kind == Token::Punct &&
                tokens_[i].text == "." && tokens_[i + 1].kind == Token::Ident)
                ++i;
            else
                break;
        }
        if (i < tokens_.size() && tokens_[i].kind == Token::Punct && tokens_[i].text == "(")
            i = find_matching(i, "(", ")") + 1;
        return i;
    }

    size_t skip_to_semicolon(size_t i) {
        while (i < tokens_.size() &&
               !(tokens_[i].kind == Token::Punct && tokens_[i].text == ";"))
            ++i;
        return i < tokens_.size() ? i + 1 : i;
    }

    bool is_punct(size_t i, const char* text) const {
        return i < tokens_.size() && tokens_[i].kind == Token::Punct && tokens_[i].text == text;
    }

    bool is_ident(size_t i) const {
        return i < tokens_.size() && tokens_[i].kind == Token::Ident;
    }

    size_t find_matching(size_t open, const char* opener, const char* closer) const {
        int depth = 0;
        for (size_t i = open; i < tokens_.size(); ++i) {
            if (tokens_[i].kind != Token::Punct)
                continue;
            if (tokens_[i].text == opener)
                ++depth;
            else if (tokens_[i].text == closer && --depth == 0)
                return i;
        }
        throw ParseAbort{std::string("unbalanced '") + opener + "'"};
    }

    // Balanced generic argument skip; fails fast on statement punctuation so
    // comparison chains do not read as type arguments.
    std::optional<size_t> skip_generics(size_t i) const {
        int depth = 0;
        for (size_t j = i; j < tokens_.size(); ++j) {
            const Token& t = tokens_[j];
            if (t.kind == Token::Punct) {
                if (t.text == "<") ++depth;
                else if (t.text == ">") {
                    if (--depth == 0) return j + 1;
                } else if (t.text == ";" || t.text == "{" || t.text == "}" ||
                           t.text == ")" || t.text == "=") {
                    return std::nullopt;
                }
            } else if (t.kind == Token::String || t.kind == Token::Arrow) {
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

    // Dotted type name with optional generics and array suffix. Returns the
    // name without either decoration.
    std::optional<std::pair<std::string, size_t>> try_type_ref(size_t i) const {
        if (!is_ident(i))
            return std::nullopt;
        const std::string& first = tokens_[i].text;
        const bool primitive = primitive_words().count(first) > 0 || first == "var";
        if (!primitive && (modifier_words().count(first) || control_words().count(first) ||
                           is_type_keyword(first) || first == "this" || first == "super" ||
                           first == "true" || first == "false" || first == "null" ||
                           first == "throws" || first == "extends" || first == "implements" ||
                           first == "import" || first == "package" || first == "permits"))
            return std::nullopt;
        std::string name = first;
        size_t j = i + 1;
        if (!primitive) {
            while (is_punct(j, ".") && is_ident(j + 1)) {
                name += ".";
                name += tokens_[j + 1].text;
                j += 2;
            }
            if (is_punct(j, "<")) {
                auto after = skip_generics(j);
                if (!after)
                    return std::nullopt;
                j = *after;
            }
        }
        while (is_punct(j, "[") && is_punct(j + 1, "]"))
            j += 2;
        return std::make_pair(name, j);
    }

    // --- type declarations ---------------------------------------------

    void parse_top_level_type(size_t& i) {
        RawClass cls;
        cls.path = path_;
        cls.span_begin = tokens_[i].pos;
        bodies_.clear();
        const size_t next = parse_type_decl(i, cls, /*top_level=*/true);
        cls.qualified_name =
            package_.empty() ? cls.simple_name : package_ + "." + cls.simple_name;
        // Resolve call sites only after the whole class (fields included) is
        // known; field declarations may follow their first use.
        for (const BodyRange& body : bodies_)
            scan_body(cls, body);
        classes_.push_back(std::move(cls));
        i = next;
    }

    // Parses one class/interface/enum/record declaration starting at its
    // keyword. Nested declarations fold into `cls`. Returns the index after
    // the closing brace.
    size_t parse_type_decl(size_t i, RawClass& cls, bool top_level) {
        const std::string kind = tokens_[i].text;
        ++i;
        if (!is_ident(i))
            abort_parse("type declaration without a name");
        const std::string name = tokens_[i].text;
        if (top_level)
            cls.simple_name = name;
        else {
            cls.nested_names.push_back(name);
        }
        cls.identifiers.push_back(name);
        ++i;

        if (is_punct(i, "<"))
            i = find_matching(i, "<", ">") + 1;

        if (kind == "record" && is_punct(i, "(")) {
            const size_t close = find_matching(i, "(", ")");
            parse_params(i, close, [&](const std::string& pname, const std::string& ptype) {
                cls.identifiers.push_back(pname);
                cls.fields.emplace(pname, ptype);
            });
            i = close + 1;
        }

        while (i < tokens_.size() && !is_punct(i, "{")) {
            if (is_ident(i) && tokens_[i].text == "extends" && kind == "class") {
                auto type = try_type_ref(i + 1);
                if (type && cls.extends_name.empty() && top_level)
                    cls.extends_name = type->first;
                if (type) {
                    i = type->second;
                    continue;
                }
            }
            ++i;
        }
        if (!is_punct(i, "{"))
            abort_parse("type declaration without a body");
        const size_t close = find_matching(i, "{", "}");
        if (kind == "enum")
            parse_enum_body(i + 1, close, cls, name);
        else
            parse_members(i + 1, close, cls, name);
        cls.span_end = tokens_[close].pos;
        return close + 1;
    }

    void parse_enum_body(size_t begin, size_t end, RawClass& cls, const std::string& simple) {
        size_t i = begin;
        // Constant list runs to the first ';' at this level.
        while (i < end) {
            if (is_punct(i, ";")) {
                ++i;
                break;
            }
            if (is_ident(i)) {
                cls.identifiers.push_back(tokens_[i].text);
                cls.fields.emplace(tokens_[i].text, simple);
                ++i;
                if (is_punct(i, "(")) {
                    const size_t close = find_matching(i, "(", ")");
                    if (close > i + 1)
                        bodies_.push_back({i + 1, close, {}});
                    i = close + 1;
                }
                if (is_punct(i, "{")) {
                    const size_t close = find_matching(i, "{", "}");
                    parse_members(i + 1, close, cls, simple);
                    i = close + 1;
                }
            } else {
                ++i;  // commas and stray tokens
            }
        }
        parse_members(i, end, cls, simple);
    }

    void parse_members(size_t begin, size_t end, RawClass& cls, const std::string& simple) {
        size_t i = begin;
        while (i < end) {
            const Token& t = tokens_[i];
            if (t.kind == Token::Punct) {
                if (t.text == "@") {
                    i = skip_annotation(i);
                } else if (t.text == "{") {
                    const size_t close = find_matching(i, "{", "}");
                    bodies_.push_back({i + 1, close, {}});
                    i = close + 1;
                } else if (t.text == "<") {
                    i = find_matching(i, "<", ">") + 1;
                } else {
                    ++i;
                }
                continue;
            }
            if (t.kind != Token::Ident) {
                ++i;
                continue;
            }
            if (modifier_words().count(t.text)) {
                ++i;
                continue;
            }
            if (is_type_keyword(t.text)) {
                i = parse_type_decl(i, cls, /*top_level=*/false);
                continue;
            }
            // Constructor: the enclosing type's name directly before '('.
            if (t.text == simple && is_punct(i + 1, "(")) {
                cls.method_names.push_back(t.text);
                i = parse_executable(i + 1, cls);
                continue;
            }
            auto type = try_type_ref(i);
            if (type && is_ident(type->second)) {
                const size_t name_at = type->second;
                const std::string& name = tokens_[name_at].text;
                if (is_punct(name_at + 1, "(")) {
                    cls.method_names.push_back(name);
                    cls.identifiers.push_back(name);
                    i = parse_executable(name_at + 1, cls);
                    continue;
                }
                if (is_punct(name_at + 1, "=") || is_punct(name_at + 1, ";") ||
                    is_punct(name_at + 1, ",") || is_punct(name_at + 1, "[")) {
                    i = parse_field_declarators(name_at, end, cls, type->first);
                    continue;
                }
            }
            ++i;  // recovery: not a member we understand
        }
    }

    // Parameter list between parens; reports each (name, type).
    template <typename Fn>
    void parse_params(size_t open, size_t close, Fn&& report) {
        size_t i = open + 1;
        while (i < close) {
            if (is_punct(i, "@")) {
                i = skip_annotation(i);
                continue;
            }
            if (is_ident(i) && tokens_[i].text == "final") {
                ++i;
                continue;
            }
            auto type = try_type_ref(i);
            if (!type) {
                ++i;
                continue;
            }
            i = type->second;
            while (is_punct(i, "."))  // varargs dots
                ++i;
            if (is_ident(i)) {
                report(tokens_[i].text, type->first == "var" ? std::string() : type->first);
                ++i;
            }
            while (i < close && !is_punct(i, ","))
                ++i;
            if (i < close)
                ++i;  // ','
        }
    }

    // From '(' of a method or constructor: params, throws clause, then body
    // or ';'. Returns the index after the declaration.
    size_t parse_executable(size_t open, RawClass& cls) {
        const size_t close = find_matching(open, "(", ")");
        std::vector<std::pair<std::string, std::string>> params;
        parse_params(open, close, [&](const std::string& pname, const std::string& ptype) {
            cls.identifiers.push_back(pname);
            params.emplace_back(pname, ptype);
        });
        size_t i = close + 1;
        while (i < tokens_.size() && !is_punct(i, "{") && !is_punct(i, ";")) {
            if (is_punct(i, "(") || is_punct(i, "@")) {
                // default annotation values or malformed header; bail out
                break;
            }
            ++i;
        }
        if (is_punct(i, "{")) {
            const size_t body_close = find_matching(i, "{", "}");
            bodies_.push_back({i + 1, body_close, std::move(params)});
            return body_close + 1;
        }
        return i < tokens_.size() ? i + 1 : i;
    }

    // Field declarator chain: name [= init] {, name [= init]} ';'
    // Initializer expressions are scanned for call sites later.
    size_t parse_field_declarators(size_t name_at, size_t end, RawClass& cls,
                                   const std::string& type) {
        size_t i = name_at;
        while (i < end) {
            if (!is_ident(i))
                break;
            cls.identifiers.push_back(tokens_[i].text);
            cls.fields.emplace(tokens_[i].text, type);
            ++i;
            while (is_punct(i, "[") && is_punct(i + 1, "]"))
                i += 2;
            if (is_punct(i, "=")) {
                const size_t init_begin = i + 1;
                int depth = 0;
                ++i;
                while (i < end) {
                    const Token& t = tokens_[i];
                    if (t.kind == Token::Punct) {
                        if (t.text == "(" || t.text == "[" || t.text == "{")
                            ++depth;
                        else if (t.text == ")" || t.text == "]" || t.text == "}")
                            --depth;
                        else if (depth == 0 && (t.text == "," || t.text == ";"))
                            break;
                    }
                    ++i;
                }
                if (i > init_begin)
                    bodies_.push_back({init_begin, i, {}});
            }
            if (is_punct(i, ",")) {
                ++i;
                continue;
            }
            if (is_punct(i, ";"))
                return i + 1;
            break;
        }
        return i < end ? i + 1 : i;
    }

    // --- statement/expression scanning ----------------------------------

    struct Scope {
        std::vector<std::map<std::string, std::string>> blocks;

        const std::string* lookup(const std::string& name) const {
            for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
                auto hit = it->find(name);
                if (hit != it->end())
                    return &hit->second;
            }
            return nullptr;
        }
    };

    void scan_body(RawClass& cls, const BodyRange& body) {
        Scope scope;
        scope.blocks.emplace_back();
        for (const auto& [name, type] : body.params)
            scope.blocks.back()[name] = type;

        std::vector<std::pair<std::string, std::string>> pending_params;
        std::string decl_type;     // active multi-declarator statement type
        int decl_depth = 0;
        bool stmt_start = true;
        size_t i = body.begin;

        while (i < body.end) {
            const Token& t = tokens_[i];

            if (t.kind == Token::Punct) {
                const std::string& p = t.text;
                if (p == "@") {
                    i = skip_annotation(i);
                    continue;
                }
                if (p == "{") {
                    scope.blocks.emplace_back();
                    for (const auto& [name, type] : pending_params)
                        scope.blocks.back()[name] = type;
                    pending_params.clear();
                    stmt_start = true;
                    ++i;
                    continue;
                }
                if (p == "}") {
                    if (scope.blocks.size() > 1)
                        scope.blocks.pop_back();
                    stmt_start = true;
                    ++i;
                    continue;
                }
                if (p == ";") {
                    decl_type.clear();
                    stmt_start = true;
                    ++i;
                    continue;
                }
                if (!decl_type.empty()) {
                    if (p == "(" || p == "[")
                        ++decl_depth;
                    else if (p == ")" || p == "]")
                        --decl_depth;
                    else if (p == "," && decl_depth == 0 && is_ident(i + 1) &&
                             (is_punct(i + 2, "=") || is_punct(i + 2, ",") ||
                              is_punct(i + 2, ";"))) {
                        register_local(cls, scope, tokens_[i + 1].text, decl_type);
                        i += 2;
                        continue;
                    }
                }
                stmt_start = false;
                ++i;
                continue;
            }

            if (t.kind != Token::Ident) {
                stmt_start = false;
                ++i;
                continue;
            }

            const std::string& word = t.text;

            if (word == "new") {
                auto type = try_type_ref(i + 1);
                if (type && is_punct(type->second, "(")) {
                    cls.sites.push_back({CallSite::Ctor, type->first, ""});
                    i = type->second;  // argument list scanned normally
                    stmt_start = false;
                    continue;
                }
                i = type ? type->second : i + 1;
                stmt_start = false;
                continue;
            }

            if ((word == "this" || word == "super") && is_punct(i + 1, "(")) {
                cls.sites.push_back(
                    {word == "this" ? CallSite::This : CallSite::Super, "", "<init>"});
                i += 2;
                stmt_start = true;  // '(' consumed; treat args as fresh context
                continue;
            }

            if (control_words().count(word)) {
                ++i;
                if ((word == "for" || word == "catch" || word == "try" ||
                     word == "switch" || word == "if" || word == "while" ||
                     word == "synchronized") &&
                    is_punct(i, "(")) {
                    ++i;
                    stmt_start = (word == "for" || word == "catch" || word == "try");
                } else {
                    stmt_start = (word == "else" || word == "do" || word == "try" ||
                                  word == "return" || word == "case" || word == "yield");
                }
                continue;
            }

            // Local variable declaration (also covers for-each and catch).
            if (stmt_start || (is_ident(i) && word == "final")) {
                if (word == "final") {
                    ++i;
                    continue;
                }
                auto type = try_type_ref(i);
                if (type && is_ident(type->second)) {
                    const size_t name_at = type->second;
                    if (is_punct(name_at + 1, "=") || is_punct(name_at + 1, ";") ||
                        is_punct(name_at + 1, ",") || is_punct(name_at + 1, ":") ||
                        is_punct(name_at + 1, ")")) {
                        const std::string ltype =
                            type->first == "var" ? std::string() : type->first;
                        register_local(cls, scope, tokens_[name_at].text, ltype);
                        decl_type = ltype;
                        decl_depth = 0;
                        i = name_at + 1;
                        stmt_start = false;
                        continue;
                    }
                }
            }

            if (is_punct(i + 1, "(")) {
                handle_invocation(cls, scope, body, i);
                if (maybe_declaration_header(body, i)) {
                    // Method of an anonymous or local class: capture its
                    // parameters for the body that follows.
                    const size_t close = find_matching(i + 1, "(", ")");
                    pending_params.clear();
                    parse_params(i + 1, close, [&](const std::string& pname,
                                                   const std::string& ptype) {
                        cls.identifiers.push_back(pname);
                        pending_params.emplace_back(pname, ptype);
                    });
                    cls.method_names.push_back(word);
                    i = close + 1;
                    stmt_start = false;
                    continue;
                }
                ++i;  // stop before '('; arguments scanned normally
                stmt_start = false;
                continue;
            }

            stmt_start = false;
            ++i;
        }
    }

    void register_local(RawClass& cls, Scope& scope, const std::string& name,
                        const std::string& type) {
        cls.identifiers.push_back(name);
        scope.blocks.back()[name] = type;
    }

    bool maybe_declaration_header(const BodyRange& body, size_t i) const {
        if (i == body.begin)
            return false;
        const Token& prev = tokens_[i - 1];
        if (prev.kind == Token::Ident)
            return !control_words().count(prev.text) && prev.text != "this" &&
                   prev.text != "super" && prev.text != "true" && prev.text != "false" &&
                   prev.text != "null";
        if (prev.kind == Token::Punct)
            return prev.text == "]" || prev.text == ">";
        return false;
    }

    void handle_invocation(RawClass& cls, const Scope& scope, const BodyRange& body,
                           size_t i) {
        if (maybe_declaration_header(body, i))
            return;
        const std::string& method = tokens_[i].text;

        if (i == body.begin || !(tokens_[i - 1].kind == Token::Punct &&
                                 tokens_[i - 1].text == ".")) {
            cls.sites.push_back({CallSite::Unique, "", method});
            return;
        }

        // Qualified call: look one step left of the dot.
        if (i < body.begin + 2) {
            cls.sites.push_back({CallSite::Unique, "", method});
            return;
        }
        const Token& recv = tokens_[i - 2];
        const bool chain_start =
            i < body.begin + 3 ||
            !((tokens_[i - 3].kind == Token::Punct &&
               (tokens_[i - 3].text == "." || tokens_[i - 3].text == ")" ||
                tokens_[i - 3].text == "]")));

        if (recv.kind == Token::Ident && chain_start) {
            if (recv.text == "this") {
                cls.sites.push_back({CallSite::This, "", method});
                return;
            }
            if (recv.text == "super") {
                cls.sites.push_back({CallSite::Super, "", method});
                return;
            }
            if (const std::string* type = scope.lookup(recv.text)) {
                if (type->empty())  // 'var' local: declared type unknown
                    cls.sites.push_back({CallSite::Unique, "", method});
                else
                    cls.sites.push_back({CallSite::Typed, *type, method});
                return;
            }
            if (auto field = cls.fields.find(recv.text); field != cls.fields.end()) {
                if (field->second.empty())
                    cls.sites.push_back({CallSite::Unique, "", method});
                else
                    cls.sites.push_back({CallSite::Typed, field->second, method});
                return;
            }
            // Unknown identifier: a class name (static call) or something we
            // do not track; the linker decides.
            cls.sites.push_back({CallSite::Bare, recv.text, method});
            return;
        }
        cls.sites.push_back({CallSite::Unique, "", method});
    }

    // --- comments --------------------------------------------------------

    void attach_comments() {
        std::vector<RawClass*> by_pos;
        for (RawClass& c : classes_)
            by_pos.push_back(&c);
        std::sort(by_pos.begin(), by_pos.end(), [](const RawClass* a, const RawClass* b) {
            return a->span_begin < b->span_begin;
        });
        for (const RawComment& comment : comments_) {
            RawClass* target = nullptr;
            for (RawClass* c : by_pos) {
                if (comment.pos >= c->span_begin && comment.pos <= c->span_end) {
                    target = c;
                    break;
                }
                if (comment.pos < c->span_begin) {  // header comment: next class
                    target = c;
                    break;
                }
            }
            if (target)
                target->comments.push_back(comment.text);
        }
    }
};

// ---------------------------------------------------------------------------
// Project-level linking
// ---------------------------------------------------------------------------

class Linker {
public:
    explicit Linker(std::vector<RawClass> classes) : classes_(std::move(classes)) {
        for (size_t i = 0; i < classes_.size(); ++i) {
            by_qualified_[classes_[i].qualified_name] = static_cast<int>(i);
            by_simple_[classes_[i].simple_name].push_back(static_cast<int>(i));
        }
        for (size_t i = 0; i < classes_.size(); ++i)
            for (const std::string& nested : classes_[i].nested_names)
                if (!by_simple_.count(nested))
                    nested_alias_[nested].push_back(static_cast<int>(i));
        for (size_t i = 0; i < classes_.size(); ++i)
            for (const std::string& m : classes_[i].method_names)
                declared_by_[m].insert(static_cast<int>(i));
    }

    ProjectFacts link() {
        const int n = static_cast<int>(classes_.size());
        ProjectFacts facts;
        facts.call_graph = CallGraph(n);
        for (int i = 0; i < n; ++i) {
            RawClass& rc = classes_[i];
            ClassRecord rec;
            rec.id = i;
            rec.qualified_name = rc.qualified_name;
            rec.source_path = rc.path;
            rec.identifiers = std::move(rc.identifiers);
            rec.comments = std::move(rc.comments);
            facts.classes.push_back(std::move(rec));
        }
        for (int i = 0; i < n; ++i)
            for (const CallSite& site : classes_[i].sites)
                resolve(i, site, facts.call_graph);
        return facts;
    }

    static std::vector<RawClass> sort_by_name(std::vector<RawClass> classes,
                                              std::vector<ScanWarning>& warnings) {
        std::stable_sort(classes.begin(), classes.end(),
                         [](const RawClass& a, const RawClass& b) {
                             return a.qualified_name < b.qualified_name;
                         });
        std::vector<RawClass> unique;
        for (RawClass& c : classes) {
            if (!unique.empty() && unique.back().qualified_name == c.qualified_name) {
                warnings.push_back({c.path, "duplicate class " + c.qualified_name +
                                                 " ignored (first definition kept)"});
                continue;
            }
            unique.push_back(std::move(c));
        }
        return unique;
    }

private:
    static constexpr int kExternal = -1;
    static constexpr int kAmbiguous = -2;

    std::vector<RawClass> classes_;
    std::map<std::string, int> by_qualified_;
    std::map<std::string, std::vector<int>> by_simple_;
    std::map<std::string, std::vector<int>> nested_alias_;
    std::map<std::string, std::set<int>> declared_by_;

    int resolve_type(const std::string& name) const {
        auto qualified = by_qualified_.find(name);
        if (qualified != by_qualified_.end())
            return qualified->second;
        std::string simple = name;
        if (auto dot = name.rfind('.'); dot != std::string::npos)
            simple = name.substr(dot + 1);
        if (auto it = by_simple_.find(simple); it != by_simple_.end())
            return it->second.size() == 1 ? it->second.front() : kAmbiguous;
        if (auto it = nested_alias_.find(simple); it != nested_alias_.end())
            return it->second.size() == 1 ? it->second.front() : kAmbiguous;
        return kExternal;
    }

    void resolve_unique_name(int from, const std::string& method, CallGraph& graph) const {
        auto it = declared_by_.find(method);
        if (it != declared_by_.end() && it->second.size() == 1)
            graph.add(from, *it->second.begin());
        // otherwise dropped: no resolvable target
    }

    void resolve(int from, const CallSite& site, CallGraph& graph) const {
        switch (site.kind) {
            case CallSite::Ctor: {
                const int target = resolve_type(site.name);
                if (target >= 0)
                    graph.add(from, target);
                break;  // external or ambiguous constructors are ignored
            }
            case CallSite::This:
                graph.add(from, from);
                break;
            case CallSite::Super: {
                if (classes_[from].extends_name.empty())
                    break;
                const int target = resolve_type(classes_[from].extends_name);
                if (target >= 0)
                    graph.add(from, target);
                break;
            }
            case CallSite::Typed: {
                const int target = resolve_type(site.name);
                if (target >= 0)
                    graph.add(from, target);
                else if (target == kAmbiguous)
                    resolve_unique_name(from, site.method, graph);
                // kExternal: declared type outside the project, ignored
                break;
            }
            case CallSite::Bare: {
                const int target = resolve_type(site.name);
                if (target >= 0)
                    graph.add(from, target);  // static call through the class name
                else
                    resolve_unique_name(from, site.method, graph);
                break;
            }
            case CallSite::Unique:
                resolve_unique_name(from, site.method, graph);
                break;
        }
    }
};

struct Profile {
    std::vector<std::string> extensions;
};

const Profile& profile_for(const std::string& name) {
    static const Profile java_like{{".java"}};
    if (name == "java-like")
        return java_like;
    throw ValidationError("unsupported language profile: " + name);
}

} // namespace

ScanResult scan_source_strings(
    const std::vector<std::pair<std::string, std::string>>& path_and_text,
    const std::string& profile) {
    profile_for(profile);

    ScanResult result;
    std::vector<RawClass> all;
    for (const auto& [path, text] : path_and_text) {
        try {
            FileParser parser(path, text);
            for (RawClass& c : parser.parse())
                all.push_back(std::move(c));
        } catch (const ParseAbort& abort) {
            result.warnings.push_back({path, "skipped: " + abort.message});
        }
    }
    all = Linker::sort_by_name(std::move(all), result.warnings);
    if (all.empty())
        throw DegenerateError("no classes found");
    result.facts = Linker(std::move(all)).link();
    return result;
}

ScanResult scan_sources(const std::filesystem::path& root, const std::string& profile) {
    const Profile& prof = profile_for(profile);

    std::error_code ec;
    if (!std::filesystem::is_directory(root, ec) || ec)
        throw IoError("cannot read source root: " + root.string());

    std::vector<std::filesystem::path> files;
    for (auto it = std::filesystem::recursive_directory_iterator(
             root, std::filesystem::directory_options::skip_permission_denied, ec);
         it != std::filesystem::recursive_directory_iterator(); ++it) {
        if (!it->is_regular_file())
            continue;
        const std::string ext = it->path().extension().string();
        if (std::find(prof.extensions.begin(), prof.extensions.end(), ext) !=
            prof.extensions.end())
            files.push_back(it->path());
    }
    if (ec)
        throw IoError("error while walking " + root.string() + ": " + ec.message());
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.generic_string() < b.generic_string(); });

    std::vector<std::pair<std::string, std::string>> sources;
    std::vector<ScanWarning> read_warnings;
    for (const auto& path : files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            read_warnings.push_back({path.string(), "skipped: unreadable"});
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        sources.emplace_back(path.generic_string(), buf.str());
    }

    ScanResult result = scan_source_strings(sources, profile);
    result.warnings.insert(result.warnings.begin(), read_warnings.begin(),
                           read_warnings.end());
    return result;
}

} // namespace msd
