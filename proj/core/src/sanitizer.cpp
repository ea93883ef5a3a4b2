#include "skillforge/sanitizer.hpp"

#include <functional>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace skillforge::synth {

namespace {

bool is_placeholder(const std::string& value) {
    static const std::regex kPlaceholder(R"(^\{\{[A-Z_]+\}\}$)");
    return std::regex_match(value, kPlaceholder);
}

std::string line_of(const std::string& text, std::size_t offset) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return "line " + std::to_string(line);
}

struct RulePass {
    std::string id;
    std::regex re;
    // Returns the replacement for the whole match, or empty optional to skip.
    std::function<std::optional<std::string>(const std::smatch&, std::size_t pos,
                                             const std::string& text)>
        rewrite;
};

const std::vector<RulePass>& rule_passes() {
    static const std::vector<RulePass> kRules = [] {
        std::vector<RulePass> rules;

        rules.push_back({"credential-literal",
                         std::regex(R"((["'])((?:sk-|ghp_|AKIA|bearer )[^"'\n]*)\1)"),
                         [](const std::smatch& m, std::size_t, const std::string&)
                             -> std::optional<std::string> {
                             return m[1].str() + "{{API_KEY}}" + m[1].str();
                         }});

        rules.push_back(
            {"credential-assignment",
             std::regex(
                 R"(([A-Za-z0-9_]*(?:key|token|secret|password)[A-Za-z0-9_]*\s*[:=]\s*)(["'])([^"'\n]*)\2)",
                 std::regex::icase),
             [](const std::smatch& m, std::size_t, const std::string&)
                 -> std::optional<std::string> {
                 if (is_placeholder(m[3].str())) return std::nullopt;
                 return m[1].str() + m[2].str() + "{{API_KEY}}" + m[2].str();
             }});

        rules.push_back({"credential-url",
                         std::regex(R"((://)([^/\s:@'"]+):([^/\s@'"]+)@)"),
                         [](const std::smatch& m, std::size_t, const std::string&)
                             -> std::optional<std::string> {
                             if (is_placeholder(m[2].str())) return std::nullopt;
                             return "://{{URL_CREDENTIAL}}@";
                         }});

        rules.push_back({"credential-flag",
                         std::regex(R"((-u|--user)([= ]+)([A-Za-z0-9._%+-]+:[A-Za-z0-9._%+-]+))"),
                         [](const std::smatch& m, std::size_t, const std::string&)
                             -> std::optional<std::string> {
                             return m[1].str() + m[2].str() + "{{URL_CREDENTIAL}}";
                         }});

        // Multi-segment absolute paths; the final segment is kept so the
        // reference stays readable: /home/u/data/in.csv -> {{ABS_PATH}}/in.csv
        rules.push_back(
            {"absolute-path", std::regex(R"((?:/[A-Za-z0-9._+\-]+){2,})"),
             [](const std::smatch& m, std::size_t pos,
                const std::string& text) -> std::optional<std::string> {
                 if (pos > 0) {
                     char prev = text[pos - 1];
                     if (std::isalnum(static_cast<unsigned char>(prev)) || prev == '.' ||
                         prev == '_' || prev == '-' || prev == ':' || prev == '/' ||
                         prev == '}') {
                         return std::nullopt;
                     }
                 }
                 std::string path = m[0].str();
                 auto last = path.find_last_of('/');
                 return "{{ABS_PATH}}" + path.substr(last);
             }});

        rules.push_back({"absolute-path",
                         std::regex(R"([A-Za-z]:\\[A-Za-z0-9._+\\\-]+)"),
                         [](const std::smatch& m, std::size_t pos,
                            const std::string& text) -> std::optional<std::string> {
                             if (pos > 0 &&
                                 std::isalnum(static_cast<unsigned char>(text[pos - 1]))) {
                                 return std::nullopt;
                             }
                             (void)m;
                             return "{{ABS_PATH}}";
                         }});

        return rules;
    }();
    return kRules;
}

// One rule over the whole text; appends redactions to the log when given.
std::string apply_rule(const RulePass& rule, const std::string& text, SanitizationLog* log,
                       std::size_t* match_count) {
    std::string out;
    out.reserve(text.size());
    std::size_t cursor = 0;

    auto begin = std::sregex_iterator(text.begin(), text.end(), rule.re);
    auto end = std::sregex_iterator();
    for (auto it = begin; it != end; ++it) {
        const std::smatch& m = *it;
        std::size_t pos = static_cast<std::size_t>(m.position(0));
        auto replacement = rule.rewrite(m, pos, text);
        if (!replacement) continue;

        out.append(text, cursor, pos - cursor);
        out.append(*replacement);
        cursor = pos + static_cast<std::size_t>(m.length(0));
        if (match_count) ++(*match_count);
        if (log) {
            log->redactions.push_back({rule.id, line_of(text, pos), *replacement});
        }
    }
    out.append(text, cursor, text.size() - cursor);
    return out;
}

} // namespace

std::pair<std::string, SanitizationLog> sanitize_content(std::string_view input) {
    std::string text(input);
    SanitizationLog log;
    for (const auto& rule : rule_passes()) {
        text = apply_rule(rule, text, &log, nullptr);
    }
    return {std::move(text), std::move(log)};
}

std::size_t count_sanitizer_matches(std::string_view input) {
    std::string text(input);
    std::size_t count = 0;
    for (const auto& rule : rule_passes()) {
        text = apply_rule(rule, text, nullptr, &count);
    }
    return count;
}

std::string SanitizationLog::to_json_string(int indent) const {
    nlohmann::ordered_json j;
    j["count"] = count();
    j["redactions"] = nlohmann::ordered_json::array();
    for (const auto& r : redactions) {
        j["redactions"].push_back({{"pattern_id", r.pattern_id},
                                   {"location", r.location},
                                   {"replacement", r.replacement}});
    }
    return j.dump(indent);
}

} // namespace skillforge::synth
