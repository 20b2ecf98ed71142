#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sous/errors.hpp"
#include "sous/knowledge.hpp"
#include "sous/process.hpp"
#include "sous/strings.hpp"

namespace sous {

inline constexpr int kFileFormatVersion = 1;

/// Declarative knowledge-base file: actions, foods, synonyms and
/// hand-specified processes, prior to compilation.
struct KnowledgeBaseFile {
    std::vector<CookingActionSpec> actions;
    std::vector<FoodClass> foods;
    std::vector<Synonym> synonyms;
    std::vector<Process> processes; // ids assigned on compilation
    StateMode state_mode = StateMode::replace;
};

namespace io_detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::size_t line_of_offset(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

inline nlohmann::json parse_json(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ":" + std::to_string(line_of_offset(text, e.byte)) +
                         ": " + e.what());
    }
}

inline void expect_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                        const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw ParseError(where + ": unknown key '" + key + "'");
}

inline StringSet string_set(const nlohmann::json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + ": expected an array of strings");
    StringSet out;
    for (const auto& item : arr) {
        if (!item.is_string()) throw ParseError(where + ": expected an array of strings");
        out.insert(DescriptiveString(item.get<std::string>()));
    }
    return out;
}

inline Seconds seconds_field(const nlohmann::json& obj, const char* key,
                             const std::string& where) {
    if (!obj.contains(key)) throw ParseError(where + ": missing '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw ParseError(where + ": '" + key + "' must be a non-negative integer");
    return v.get<Seconds>();
}

inline Process parse_process(const nlohmann::json& obj, const std::string& where,
                             bool with_id) {
    std::set<std::string> allowed{"input", "output", "time", "f_time", "direction"};
    if (with_id) allowed.insert("id");
    expect_keys(obj, allowed, where);
    Process p;
    if (with_id) {
        if (!obj.contains("id") || !obj.at("id").is_number_unsigned())
            throw ParseError(where + ": missing or invalid 'id'");
        p.id = obj.at("id").get<ProcessId>();
    }
    if (!obj.contains("input") || !obj.contains("output"))
        throw ParseError(where + ": a process needs 'input' and 'output'");
    p.input = string_set(obj.at("input"), where + ".input");
    p.output = string_set(obj.at("output"), where + ".output");
    p.time = seconds_field(obj, "time", where);
    p.f_time = seconds_field(obj, "f_time", where);
    if (obj.contains("direction")) {
        if (!obj.at("direction").is_string())
            throw ParseError(where + ": 'direction' must be a string");
        p.direction = normalize_text(obj.at("direction").get<std::string>());
    }
    try {
        validate_process(p);
    } catch (const ValidationError& e) {
        throw ParseError(where + ": " + e.what());
    }
    return p;
}

inline nlohmann::json process_to_json(const Process& p, bool with_id) {
    nlohmann::json obj;
    if (with_id) obj["id"] = p.id;
    obj["input"] = nlohmann::json::array();
    for (const auto& s : p.input) obj["input"].push_back(s.text());
    obj["output"] = nlohmann::json::array();
    for (const auto& s : p.output) obj["output"].push_back(s.text());
    obj["time"] = p.time;
    obj["f_time"] = p.f_time;
    obj["direction"] = p.direction;
    return obj;
}

inline void check_format(const nlohmann::json& root, const std::string& where) {
    if (!root.is_object()) throw ParseError(where + ": top level must be an object");
    if (!root.contains("format") || !root.at("format").is_number_integer() ||
        root.at("format").get<int>() != kFileFormatVersion)
        throw ParseError(where + ": missing or unsupported 'format' (expected " +
                         std::to_string(kFileFormatVersion) + ")");
}

} // namespace io_detail

/// Strict loader for the declarative KB format; unknown keys are errors.
inline KnowledgeBaseFile load_kb_file(const std::filesystem::path& path) {
    using nlohmann::json;
    const json root = io_detail::parse_json(path);
    const std::string where = path.string();
    io_detail::check_format(root, where);
    io_detail::expect_keys(
        root, {"format", "state_mode", "actions", "foods", "synonyms", "processes"}, where);

    KnowledgeBaseFile file;
    if (root.contains("state_mode")) {
        const std::string mode = root.at("state_mode").get<std::string>();
        if (mode == "replace")
            file.state_mode = StateMode::replace;
        else if (mode == "prepend")
            file.state_mode = StateMode::prepend;
        else
            throw ParseError(where + ": state_mode must be 'replace' or 'prepend'");
    }

    for (const auto& obj : root.value("actions", json::array())) {
        const std::string at = where + ": action";
        io_detail::expect_keys(
            obj, {"name", "state", "direction", "extra_inputs", "active_seconds", "disables"},
            at);
        CookingActionSpec a;
        if (!obj.contains("name") || !obj.at("name").is_string())
            throw ParseError(at + ": missing 'name'");
        a.name = normalize_text(obj.at("name").get<std::string>());
        if (!obj.contains("state") || !obj.at("state").is_string())
            throw ParseError(at + " '" + a.name + "': missing 'state'");
        a.state_word = normalize_text(obj.at("state").get<std::string>());
        if (!obj.contains("direction") || !obj.at("direction").is_string())
            throw ParseError(at + " '" + a.name + "': missing 'direction'");
        a.direction_template = obj.at("direction").get<std::string>();
        if (obj.contains("extra_inputs"))
            a.extra_inputs = io_detail::string_set(obj.at("extra_inputs"), at + ".extra_inputs");
        if (obj.contains("active_seconds"))
            a.active_seconds = io_detail::seconds_field(obj, "active_seconds", at);
        a.disables.insert(a.name);
        if (obj.contains("disables"))
            for (const auto& d : obj.at("disables")) {
                if (!d.is_string()) throw ParseError(at + ": 'disables' must hold strings");
                a.disables.insert(normalize_text(d.get<std::string>()));
            }
        try {
            validate_action(a);
        } catch (const ValidationError& e) {
            throw ParseError(at + ": " + e.what());
        }
        file.actions.push_back(std::move(a));
    }

    std::set<std::pair<std::string, std::string>> seen_foods;
    for (const auto& obj : root.value("foods", json::array())) {
        const std::string at = where + ": food";
        io_detail::expect_keys(obj, {"root", "state", "indicators"}, at);
        FoodClass fc;
        if (!obj.contains("root") || !obj.at("root").is_string())
            throw ParseError(at + ": missing 'root'");
        fc.root = normalize_text(obj.at("root").get<std::string>());
        if (fc.root.empty()) throw ParseError(at + ": 'root' is empty");
        if (obj.contains("state")) fc.state = normalize_text(obj.at("state").get<std::string>());
        if (!seen_foods.insert({fc.root, fc.state}).second)
            throw ParseError(at + ": duplicate food '" + description(fc).text() + "'");
        if (obj.contains("indicators")) {
            if (!obj.at("indicators").is_object())
                throw ParseError(at + " '" + fc.root + "': 'indicators' must be an object");
            for (const auto& [key, value] : obj.at("indicators").items()) {
                const std::string name = normalize_text(key);
                if (value.is_boolean() && !value.get<bool>()) {
                    fc.indicators[name] = Indicator::disabled();
                } else if (value.is_number_integer() && value.get<std::int64_t>() > 0) {
                    fc.indicators[name] = Indicator::duration(value.get<Seconds>());
                } else {
                    throw ParseError(at + " '" + fc.root + "': indicator '" + name +
                                     "' must be false or a positive integer");
                }
            }
        }
        file.foods.push_back(std::move(fc));
    }

    for (const auto& obj : root.value("synonyms", json::array())) {
        const std::string at = where + ": synonym";
        io_detail::expect_keys(obj, {"name", "definition"}, at);
        if (!obj.contains("name") || !obj.at("name").is_string())
            throw ParseError(at + ": missing 'name'");
        Synonym syn{DescriptiveString(obj.at("name").get<std::string>()), {}};
        if (!obj.contains("definition"))
            throw ParseError(at + " '" + syn.name.text() + "': missing 'definition'");
        syn.definition = io_detail::string_set(obj.at("definition"), at + ".definition");
        try {
            validate_synonym(syn);
        } catch (const ValidationError& e) {
            throw ParseError(at + ": " + e.what());
        }
        file.synonyms.push_back(std::move(syn));
    }

    std::size_t index = 0;
    for (const auto& obj : root.value("processes", json::array())) {
        const std::string at = where + ": process[" + std::to_string(index++) + "]";
        file.processes.push_back(io_detail::parse_process(obj, at, /*with_id=*/false));
    }
    return file;
}

/// Run content production over a loaded file.
inline KnowledgeBase compile_kb(const KnowledgeBaseFile& file) {
    return produce_content(file.foods, file.actions, file.synonyms, file.processes,
                           file.state_mode);
}

inline void save_database(const std::filesystem::path& path, const KnowledgeBase& kb) {
    nlohmann::json root;
    root["format"] = kFileFormatVersion;
    root["can_make"] = nlohmann::json::array();
    for (const auto& s : kb.can_make) root["can_make"].push_back(s.text());
    root["skills"] = nlohmann::json::array();
    for (const auto& p : kb.skills)
        root["skills"].push_back(io_detail::process_to_json(p, /*with_id=*/true));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path.string() + "'");
    out << root.dump(2) << "\n";
}

inline KnowledgeBase load_database(const std::filesystem::path& path) {
    using nlohmann::json;
    const json root = io_detail::parse_json(path);
    const std::string where = path.string();
    io_detail::check_format(root, where);
    io_detail::expect_keys(root, {"format", "can_make", "skills"}, where);
    KnowledgeBase kb;
    for (const auto& s : root.value("can_make", json::array())) {
        if (!s.is_string()) throw ParseError(where + ": can_make must hold strings");
        kb.can_make.insert(DescriptiveString(s.get<std::string>()));
    }
    std::set<ProcessId> ids;
    std::size_t index = 0;
    for (const auto& obj : root.value("skills", json::array())) {
        const std::string at = where + ": skill[" + std::to_string(index++) + "]";
        Process p = io_detail::parse_process(obj, at, /*with_id=*/true);
        if (!ids.insert(p.id).second)
            throw DuplicateProcessId(at + ": duplicate process id " + std::to_string(p.id));
        for (const auto& s : p.input)
            if (!kb.can_make.contains(s))
                throw ValidationError(at + ": input '" + s.text() + "' is not in can_make");
        for (const auto& s : p.output)
            if (!kb.can_make.contains(s))
                throw ValidationError(at + ": output '" + s.text() + "' is not in can_make");
        kb.skills.push_back(std::move(p));
    }
    return kb;
}

/// One descriptive string per line; '#' starts a comment; duplicates collapse.
inline StringSet load_supplies(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    StringSet out;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (normalize_text(line).empty()) continue;
        out.insert(DescriptiveString(line));
    }
    return out;
}

} // namespace sous
