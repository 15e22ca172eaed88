#include "msd/facts.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "msd/errors.hpp"

namespace msd {

using nlohmann::json;

int ProjectFacts::index_of(std::string_view qualified_name) const {
    auto it = std::lower_bound(classes.begin(), classes.end(), qualified_name,
                               [](const ClassRecord& c, std::string_view name) {
                                   return c.qualified_name < name;
                               });
    if (it != classes.end() && it->qualified_name == qualified_name)
        return it->id;
    return -1;
}

void ProjectFacts::validate() const {
    const int n = class_count();
    if (call_graph.size() != n)
        throw ValidationError("call graph dimension " + std::to_string(call_graph.size()) +
                              " does not match class count " + std::to_string(n));
    for (int i = 0; i < n; ++i) {
        const ClassRecord& c = classes[i];
        if (c.id != i)
            throw ValidationError("class ids are not dense: expected " + std::to_string(i) +
                                  ", found " + std::to_string(c.id));
        if (c.qualified_name.empty())
            throw ValidationError("classes[" + std::to_string(i) + "].name is empty");
        if (i > 0 && !(classes[i - 1].qualified_name < c.qualified_name))
            throw ValidationError("class names not sorted/unique at \"" + c.qualified_name + "\"");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (call_graph.at(i, j) < 0)
                throw ValidationError("negative call count at (" + classes[i].qualified_name +
                                      ", " + classes[j].qualified_name + ")");
}

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ValidationError(where + ": missing field \"" + key + "\"");
    return *it;
}

std::vector<std::string> string_array(const json& arr, const std::string& where) {
    if (!arr.is_array())
        throw ValidationError(where + ": expected an array of strings");
    std::vector<std::string> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_string())
            throw ValidationError(where + ": expected an array of strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

} // namespace

ProjectFacts parse_facts_json(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(origin + ": " + e.what());
    }
    if (!doc.is_object())
        throw ValidationError(origin + ": top level must be an object");

    const json& jclasses = require(doc, "classes", origin);
    if (!jclasses.is_array())
        throw ValidationError(origin + ": \"classes\" must be an array");

    ProjectFacts facts;
    for (size_t i = 0; i < jclasses.size(); ++i) {
        const std::string where = origin + ": classes[" + std::to_string(i) + "]";
        const json& jc = jclasses[i];
        if (!jc.is_object())
            throw ValidationError(where + " must be an object");
        ClassRecord rec;
        const json& jname = require(jc, "name", where);
        if (!jname.is_string() || jname.get<std::string>().empty())
            throw ValidationError(where + ".name must be a non-empty string");
        rec.qualified_name = jname.get<std::string>();
        const json& jpath = require(jc, "path", where);
        if (!jpath.is_string())
            throw ValidationError(where + ".path must be a string");
        rec.source_path = jpath.get<std::string>();
        rec.identifiers = string_array(require(jc, "identifiers", where), where + ".identifiers");
        rec.comments = string_array(require(jc, "comments", where), where + ".comments");
        facts.classes.push_back(std::move(rec));
    }

    std::sort(facts.classes.begin(), facts.classes.end(),
              [](const ClassRecord& a, const ClassRecord& b) {
                  return a.qualified_name < b.qualified_name;
              });
    for (size_t i = 0; i < facts.classes.size(); ++i) {
        if (i > 0 && facts.classes[i - 1].qualified_name == facts.classes[i].qualified_name)
            throw ValidationError(origin + ": duplicate class name \"" +
                                  facts.classes[i].qualified_name + "\"");
        facts.classes[i].id = static_cast<int>(i);
    }

    const int n = facts.class_count();
    facts.call_graph = CallGraph(n);

    const json& jcalls = require(doc, "calls", origin);
    if (!jcalls.is_array())
        throw ValidationError(origin + ": \"calls\" must be an array");
    std::set<std::pair<int, int>> seen;
    for (size_t i = 0; i < jcalls.size(); ++i) {
        const std::string where = origin + ": calls[" + std::to_string(i) + "]";
        const json& jc = jcalls[i];
        if (!jc.is_object())
            throw ValidationError(where + " must be an object");
        const json& jfrom = require(jc, "from", where);
        const json& jto = require(jc, "to", where);
        const json& jcount = require(jc, "count", where);
        if (!jfrom.is_string() || !jto.is_string())
            throw ValidationError(where + ".from/.to must be strings");
        const int from = facts.index_of(jfrom.get<std::string>());
        const int to = facts.index_of(jto.get<std::string>());
        if (from < 0)
            throw ValidationError(where + ".from: unknown class \"" +
                                  jfrom.get<std::string>() + "\"");
        if (to < 0)
            throw ValidationError(where + ".to: unknown class \"" + jto.get<std::string>() + "\"");
        if (!jcount.is_number_integer())
            throw ValidationError(where + ".count must be an integer");
        const std::int64_t count = jcount.get<std::int64_t>();
        if (count < 0)
            throw ValidationError(where + ".count must be non-negative");
        if (!seen.insert({from, to}).second)
            throw ValidationError(where + ": duplicate pair " + jfrom.get<std::string>() +
                                  " -> " + jto.get<std::string>());
        facts.call_graph.set(from, to, count);
    }

    facts.validate();
    return facts;
}

ProjectFacts load_facts(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read facts file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_facts_json(buf.str(), path.string());
}

std::string facts_to_json(const ProjectFacts& facts) {
    json jclasses = json::array();
    for (const ClassRecord& c : facts.classes) {
        json jc;
        jc["name"] = c.qualified_name;
        jc["path"] = c.source_path;
        jc["identifiers"] = c.identifiers;
        jc["comments"] = c.comments;
        jclasses.push_back(std::move(jc));
    }
    json jcalls = json::array();
    const int n = facts.class_count();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::int64_t count = facts.call_graph.at(i, j);
            if (count == 0)
                continue;
            json jc;
            jc["from"] = facts.classes[i].qualified_name;
            jc["to"] = facts.classes[j].qualified_name;
            jc["count"] = count;
            jcalls.push_back(std::move(jc));
        }
    }
    json doc;
    doc["classes"] = std::move(jclasses);
    doc["calls"] = std::move(jcalls);
    return doc.dump(2) + "\n";
}

void save_facts(const ProjectFacts& facts, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write facts file: " + path.string());
    out << facts_to_json(facts);
    if (!out)
        throw IoError("write failed: " + path.string());
}

} // namespace msd
