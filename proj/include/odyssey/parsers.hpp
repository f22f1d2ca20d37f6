#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace odyssey {

using json = nlohmann::json;

// Malformed input (not JSON after cleanup).
struct ParseFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Valid JSON, wrong shape for the expected contract.
struct FormatViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Removes markdown code fences, then extracts the first balanced {...} or
// [...] span (string-aware) so prose around the JSON payload is tolerated.
// The JSON itself is parsed strictly afterwards: trailing commas and single
// quotes are rejected, matching Python json.loads.
inline std::string extract_json_span(const std::string& raw) {
    std::string text;
    text.reserve(raw.size());
    // Drop fence lines (``` or ```lang) wholesale.
    std::size_t pos = 0;
    while (pos <= raw.size()) {
        std::size_t eol = raw.find('\n', pos);
        std::string line = raw.substr(pos, eol == std::string::npos ? std::string::npos
                                                                    : eol - pos);
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line.compare(first, 3, "```") != 0) {
            text += line;
            text += '\n';
        }
        if (eol == std::string::npos) break;
        pos = eol + 1;
    }

    std::size_t start = text.find_first_of("[{");
    if (start == std::string::npos) return text;
    char open = text[start];
    char close = open == '[' ? ']' : '}';
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = start; i < text.size(); ++i) {
        char c = text[i];
        if (in_string) {
            if (c == '\\')
                ++i;
            else if (c == '"')
                in_string = false;
            continue;
        }
        if (c == '"') in_string = true;
        else if (c == open) ++depth;
        else if (c == close && --depth == 0) return text.substr(start, i - start + 1);
    }
    return text;  // unbalanced; let the strict parser report it
}

inline json strict_parse(const std::string& raw) {
    try {
        return json::parse(extract_json_span(raw));
    } catch (const json::exception& e) {
        throw ParseFailed(std::string("invalid JSON: ") + e.what());
    }
}

enum class PlannerMode { lpt, dpt, aet };

struct PlannerOutput {
    PlannerMode mode = PlannerMode::lpt;
    std::vector<std::string> subgoals;  // LPT
    std::string reasoning;              // DPT/AET
    std::string task;                   // DPT/AET
};

// LPT subgoals must read "craft [material] [equipment]".
inline void validate_lpt_subgoal(const std::string& s) {
    std::vector<std::string> words;
    std::string w;
    for (char c : s) {
        if (c == ' ') {
            if (!w.empty()) words.push_back(w);
            w.clear();
        } else {
            w += c;
        }
    }
    if (!w.empty()) words.push_back(w);
    if (words.size() != 3 || words[0] != "craft")
        throw FormatViolation("subgoal must read \"craft [material type] [equipment type]\": " +
                              s);
}

inline PlannerOutput parse_planner(PlannerMode mode, const std::string& raw) {
    json j = strict_parse(raw);
    PlannerOutput out;
    out.mode = mode;
    if (mode == PlannerMode::lpt) {
        if (!j.is_array() || j.empty())
            throw FormatViolation("LPT planner output must be a non-empty list of subgoals");
        for (const auto& e : j) {
            if (!e.is_string()) throw FormatViolation("subgoal entries must be strings");
            std::string s = e.get<std::string>();
            validate_lpt_subgoal(s);
            out.subgoals.push_back(s);
        }
        return out;
    }
    if (!j.is_object() || !j.contains("reasoning") || !j.contains("task") ||
        !j["reasoning"].is_string() || !j["task"].is_string())
        throw FormatViolation("planner output must be {\"reasoning\": ..., \"task\": ...}");
    out.reasoning = j["reasoning"].get<std::string>();
    out.task = j["task"].get<std::string>();
    if (out.task.empty()) throw FormatViolation("planner task must be non-empty");
    return out;
}

struct ActorChoice {
    std::string program;
    std::string reason;
};

inline ActorChoice parse_actor(const std::string& raw) {
    json j = strict_parse(raw);
    if (!j.is_object() || !j.contains("program") || !j["program"].is_string())
        throw FormatViolation("actor output must be {\"program\": ..., \"reason\": ...}");
    ActorChoice c;
    c.program = j["program"].get<std::string>();
    if (c.program.empty()) throw FormatViolation("actor program must be non-empty");
    if (j.contains("reason") && j["reason"].is_string()) c.reason = j["reason"].get<std::string>();
    return c;
}

struct CriticVerdict {
    std::string reasoning;
    bool success = false;
    std::string critique;
};

inline CriticVerdict parse_critic(const std::string& raw) {
    json j = strict_parse(raw);
    if (!j.is_object() || !j.contains("success") || !j["success"].is_boolean())
        throw FormatViolation("critic output must carry a boolean \"success\"");
    CriticVerdict v;
    v.success = j["success"].get<bool>();
    if (j.contains("reasoning") && j["reasoning"].is_string())
        v.reasoning = j["reasoning"].get<std::string>();
    if (j.contains("critique") && j["critique"].is_string())
        v.critique = j["critique"].get<std::string>();
    if (!v.success && v.critique.empty())
        throw FormatViolation("failed verdicts must carry a non-empty critique");
    return v;
}

// "quantity monster" list from the combat-order prompt.
inline std::vector<std::string> parse_monster_list(const std::string& raw) {
    json j = strict_parse(raw);
    if (!j.is_array() || j.empty())
        throw FormatViolation("combat order output must be a non-empty list");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw FormatViolation("combat order entries must be strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

}  // namespace odyssey
