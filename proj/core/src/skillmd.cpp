#include "skillforge/skillmd.hpp"

#include "skillforge/error.hpp"
#include "skillforge/text_util.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace skillforge::skillmd {

namespace {

// ---------------------------------------------------------------- YAML subset

struct YamlValue {
    enum class Type { Scalar, List } type = Type::Scalar;
    std::string scalar;
    std::vector<std::string> list;
    std::size_t line = 0; // 1-based document line of the key
};

using YamlMap = std::vector<std::pair<std::string, YamlValue>>;

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
    throw Error(Errc::MalformedYaml, what + " (line " + std::to_string(line) + ")",
                {std::to_string(line)});
}

std::string strip_plain_comment(const std::string& value) {
    // A '#' preceded by whitespace starts a comment in plain scalars.
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (value[i] == '#' && (i == 0 || value[i - 1] == ' ' || value[i - 1] == '\t')) {
            return text::trim(value.substr(0, i));
        }
    }
    return text::trim(value);
}

std::string unescape_double_quoted(const std::string& body, std::size_t line) {
    std::string out;
    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c != '\\') {
            out.push_back(c);
            continue;
        }
        if (++i >= body.size()) malformed(line, "dangling escape");
        switch (body[i]) {
            case '\\': out.push_back('\\'); break;
            case '"': out.push_back('"'); break;
            case 'n': out.push_back('\n'); break;
            case 't': out.push_back('\t'); break;
            case 'r': out.push_back('\r'); break;
            default: malformed(line, std::string("unsupported escape \\") + body[i]);
        }
    }
    return out;
}

// Parses one scalar token; `raw` has already been trimmed.
std::string parse_scalar(const std::string& raw, std::size_t line) {
    if (raw.empty()) return raw;
    char first = raw.front();
    if (first == '&' || first == '*') malformed(line, "anchors and aliases are not supported");
    if (first == '!') malformed(line, "tags are not supported");
    if (first == '{') malformed(line, "nested maps are not supported");
    if (first == '"') {
        if (raw.size() < 2 || raw.back() != '"') malformed(line, "unterminated double quote");
        return unescape_double_quoted(raw.substr(1, raw.size() - 2), line);
    }
    if (first == '\'') {
        if (raw.size() < 2 || raw.back() != '\'') malformed(line, "unterminated single quote");
        std::string body = raw.substr(1, raw.size() - 2);
        std::string out;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '\'' ) {
                if (i + 1 < body.size() && body[i + 1] == '\'') { out.push_back('\''); ++i; }
                else malformed(line, "stray single quote");
            } else {
                out.push_back(body[i]);
            }
        }
        return out;
    }
    return strip_plain_comment(raw);
}

// Position of the top-level closing ']' in a flow-sequence buffer, or npos.
std::size_t find_flow_close(const std::string& buffer) {
    char quote = 0;
    for (std::size_t i = 0; i < buffer.size(); ++i) {
        char c = buffer[i];
        if (quote) {
            if (c == quote) quote = 0;
            continue;
        }
        if (c == '"' || c == '\'') quote = c;
        else if (c == ']') return i;
    }
    return std::string::npos;
}

// Splits "[a, "b", c]" into scalar items; `flow` ends at the closing bracket.
std::vector<std::string> parse_flow_items(const std::string& flow, std::size_t line) {
    std::vector<std::string> items;
    std::string current;
    char quote = 0;
    for (std::size_t i = 1; i + 1 < flow.size(); ++i) {
        char c = flow[i];
        if (quote) {
            current.push_back(c);
            if (c == quote) quote = 0;
            continue;
        }
        if (c == '"' || c == '\'') {
            quote = c;
            current.push_back(c);
            continue;
        }
        if (c == ',') {
            std::string item = text::trim(current);
            if (item.empty()) malformed(line, "empty item in flow sequence");
            items.push_back(parse_scalar(item, line));
            current.clear();
            continue;
        }
        if (c == '[') malformed(line, "nested sequences are not supported");
        current.push_back(c);
    }
    std::string last = text::trim(current);
    if (!last.empty()) {
        items.push_back(parse_scalar(last, line));
    } else if (!items.empty()) {
        malformed(line, "trailing comma in flow sequence");
    }
    return items;
}

// `lines` is the frontmatter block, `first_line` its 1-based document line.
YamlMap parse_yaml_block(const std::vector<std::string>& lines, std::size_t first_line) {
    YamlMap map;
    static const std::regex kKeyLine(R"(^([A-Za-z0-9_-]+):(.*)$)");

    auto doc_line = [&](std::size_t i) { return first_line + i; };
    std::size_t i = 0;
    while (i < lines.size()) {
        const std::string& line = lines[i];
        std::string trimmed = text::trim(line);
        if (trimmed.empty() || trimmed[0] == '#') { ++i; continue; }
        if (line[0] == ' ' || line[0] == '\t') {
            malformed(doc_line(i), "unexpected indentation");
        }
        std::smatch m;
        if (!std::regex_match(line, m, kKeyLine)) {
            malformed(doc_line(i), "expected `key: value`");
        }
        std::string key = m[1].str();
        for (const auto& [k, v] : map) {
            if (k == key) malformed(doc_line(i), "duplicate key `" + key + "`");
        }
        std::string rest = text::trim(m[2].str());
        std::size_t key_line = doc_line(i);

        YamlValue value;
        value.line = key_line;

        if (rest.empty()) {
            // Block sequence (or an empty list when nothing follows).
            value.type = YamlValue::Type::List;
            ++i;
            while (i < lines.size()) {
                const std::string& item_line = lines[i];
                std::string item_trimmed = text::trim(item_line);
                if (item_trimmed.empty()) { ++i; continue; }
                if (item_line[0] != ' ' && item_line[0] != '\t') break;
                if (item_trimmed.rfind("- ", 0) != 0 && item_trimmed != "-") {
                    malformed(doc_line(i), "nested maps are not supported");
                }
                std::string item = text::trim(item_trimmed.substr(1));
                if (item.empty()) malformed(doc_line(i), "empty sequence item");
                value.list.push_back(parse_scalar(item, doc_line(i)));
                ++i;
            }
            map.emplace_back(std::move(key), std::move(value));
            continue;
        }

        if (rest[0] == '[') {
            std::string buffer = rest;
            while (find_flow_close(buffer) == std::string::npos && i + 1 < lines.size()) {
                ++i;
                buffer += " " + text::trim(lines[i]);
            }
            std::size_t close_pos = find_flow_close(buffer);
            if (close_pos == std::string::npos) {
                malformed(key_line, "unterminated flow sequence");
            }
            std::string tail = text::trim(buffer.substr(close_pos + 1));
            if (!tail.empty() && tail[0] != '#') {
                malformed(key_line, "trailing content after flow sequence");
            }
            value.type = YamlValue::Type::List;
            value.list = parse_flow_items(buffer.substr(0, close_pos + 1), key_line);
            map.emplace_back(std::move(key), std::move(value));
            ++i;
            continue;
        }

        if (rest[0] == '|' || rest[0] == '>') {
            malformed(key_line, "block scalars are not supported");
        }

        // Scalar; plain scalars fold more-indented continuation lines.
        bool plain = rest[0] != '"' && rest[0] != '\'';
        std::string buffer = rest;
        ++i;
        if (plain) {
            while (i < lines.size() && !lines[i].empty() &&
                   (lines[i][0] == ' ' || lines[i][0] == '\t')) {
                std::string cont = text::trim(lines[i]);
                if (cont.rfind("- ", 0) == 0) break;
                buffer += " " + cont;
                ++i;
            }
        }
        value.type = YamlValue::Type::Scalar;
        value.scalar = parse_scalar(text::trim(buffer), key_line);
        map.emplace_back(std::move(key), std::move(value));
    }
    return map;
}

const YamlValue* find_key(const YamlMap& map, const std::string& key) {
    for (const auto& [k, v] : map) {
        if (k == key) return &v;
    }
    return nullptr;
}

std::string require_scalar(const YamlMap& map, const std::string& key) {
    const YamlValue* v = find_key(map, key);
    if (!v) throw Error(Errc::MissingRequiredField, key, {key});
    if (v->type != YamlValue::Type::Scalar) {
        throw Error(Errc::InvalidFieldType, key + " must be a scalar", {key});
    }
    return v->scalar;
}

std::vector<std::string> require_list(const YamlMap& map, const std::string& key) {
    const YamlValue* v = find_key(map, key);
    if (!v) throw Error(Errc::MissingRequiredField, key, {key});
    if (v->type != YamlValue::Type::List) {
        throw Error(Errc::InvalidFieldType, key + " must be a list", {key});
    }
    return v->list;
}

std::optional<std::vector<std::string>> optional_list(const YamlMap& map,
                                                      const std::string& key) {
    const YamlValue* v = find_key(map, key);
    if (!v) return std::nullopt;
    if (v->type != YamlValue::Type::List) {
        throw Error(Errc::InvalidFieldType, key + " must be a list", {key});
    }
    return v->list;
}

// ------------------------------------------------------------- serialization

bool plain_scalar_safe(const std::string& value) {
    if (value.empty()) return false;
    static const std::string kForbidden = ":#\"'[]{}&*|>,`@\n\t\r\\";
    if (value.front() == ' ' || value.back() == ' ') return false;
    if (value.front() == '-' || value.front() == '?' || value.front() == '!') return false;
    for (char c : value) {
        if (kForbidden.find(c) != std::string::npos) return false;
        if (static_cast<unsigned char>(c) < 0x20) return false;
    }
    return true;
}

std::string quote_scalar(const std::string& value) {
    std::string out = "\"";
    for (char c : value) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

std::string emit_scalar(const std::string& value) {
    return plain_scalar_safe(value) ? value : quote_scalar(value);
}

std::string emit_list(const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += quote_scalar(items[i]);
    }
    out += "]";
    return out;
}

// --------------------------------------------------------------- path checks

bool resource_path_escapes(const std::string& path) {
    if (path.empty()) return true;
    if (path.front() == '/' || path.find('\\') != std::string::npos) return true;
    if (path.size() >= 2 && path[1] == ':') return true; // drive letter
    std::size_t start = 0;
    while (start <= path.size()) {
        auto slash = path.find('/', start);
        std::string seg = path.substr(start, slash - start);
        if (seg == ".." || seg == "." || seg.empty()) return true;
        if (slash == std::string::npos) break;
        start = slash + 1;
    }
    return false;
}

std::optional<ResourceKind> kind_for_root(const std::string& path) {
    if (path.rfind("scripts/", 0) == 0) return ResourceKind::Script;
    if (path.rfind("references/", 0) == 0) return ResourceKind::Reference;
    if (path.rfind("templates/", 0) == 0) return ResourceKind::Template;
    return std::nullopt;
}

std::string normalize_body(std::string_view body) {
    std::string out(body);
    while (!out.empty() && out.back() == '\n') out.pop_back();
    if (!out.empty()) out.push_back('\n');
    return out;
}

} // namespace

const char* resource_kind_name(ResourceKind kind) {
    switch (kind) {
        case ResourceKind::Script: return "Script";
        case ResourceKind::Reference: return "Reference";
        case ResourceKind::Template: return "Template";
    }
    return "Script";
}

const char* band_name(Band band) {
    switch (band) {
        case Band::Below: return "Below";
        case Band::Within: return "Within";
        case Band::Above: return "Above";
    }
    return "Below";
}

bool is_kebab_case(std::string_view name) {
    static const std::regex kKebab(R"(^[a-z0-9]+(-[a-z0-9]+)*$)");
    return std::regex_match(name.begin(), name.end(), kKebab);
}

bool is_semver(std::string_view version) {
    static const std::regex kSemver(R"(^(0|[1-9]\d*)\.(0|[1-9]\d*)\.(0|[1-9]\d*)$)");
    return std::regex_match(version.begin(), version.end(), kSemver);
}

SkillArtifact parse_skill(std::string_view document) {
    auto lines = text::split_lines(document);
    if (lines.empty() || lines[0] != "---") {
        throw Error(Errc::MissingFrontmatter, "document must open with a `---` line");
    }
    std::size_t close = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i] == "---") { close = i; break; }
    }
    if (close == 0) {
        malformed(lines.size(), "missing closing `---` delimiter");
    }

    std::vector<std::string> yaml_lines(lines.begin() + 1, lines.begin() + close);
    YamlMap map = parse_yaml_block(yaml_lines, 2);

    SkillArtifact artifact;
    artifact.frontmatter.name = require_scalar(map, "name");
    artifact.frontmatter.description = require_scalar(map, "description");
    artifact.frontmatter.version = require_scalar(map, "version");
    artifact.frontmatter.trigger = require_list(map, "trigger");
    if (find_key(map, "dependencies")) {
        artifact.frontmatter.dependencies = require_list(map, "dependencies");
    }
    artifact.frontmatter.allowed_tools = optional_list(map, "allowed-tools");
    artifact.frontmatter.success_criteria = optional_list(map, "success-criteria");

    // Body: everything after the closing delimiter, minus the one blank
    // separator line the serializer emits.
    std::string body;
    std::size_t body_start = close + 1;
    if (body_start < lines.size() && lines[body_start].empty()) ++body_start;
    for (std::size_t i = body_start; i < lines.size(); ++i) {
        body += lines[i];
        if (i + 1 < lines.size()) body += "\n";
    }
    artifact.instructions = normalize_body(body);
    return artifact;
}

std::string serialize_skill(const SkillArtifact& artifact) {
    ValidationReport report = validate_skill(artifact);
    if (!report.valid()) {
        std::string detail;
        for (const auto& f : report.errors) {
            if (!detail.empty()) detail += "; ";
            detail += f.code + " at " + f.location;
        }
        throw Error(Errc::InvariantViolation, detail);
    }

    const Frontmatter& fm = artifact.frontmatter;
    std::ostringstream os;
    os << "---\n";
    os << "name: " << emit_scalar(fm.name) << "\n";
    os << "description: " << emit_scalar(fm.description) << "\n";
    os << "version: " << emit_scalar(fm.version) << "\n";
    os << "trigger: " << emit_list(fm.trigger) << "\n";
    os << "dependencies: " << emit_list(fm.dependencies) << "\n";
    if (fm.allowed_tools) os << "allowed-tools: " << emit_list(*fm.allowed_tools) << "\n";
    if (fm.success_criteria) {
        os << "success-criteria: " << emit_list(*fm.success_criteria) << "\n";
    }
    os << "---\n\n";
    os << normalize_body(artifact.instructions);
    return os.str();
}

std::size_t estimate_tokens(std::string_view content) {
    return (content.size() + 3) / 4;
}

std::string level1_text(const Frontmatter& fm) {
    std::string out = fm.name + " " + fm.description;
    for (const auto& t : fm.trigger) out += " " + t;
    return out;
}

Band classify_band(std::size_t tokens, std::size_t lo, std::size_t hi) {
    if (tokens < lo) return Band::Below;
    if (tokens > hi) return Band::Above;
    return Band::Within;
}

DisclosureReport disclosure_report(const SkillArtifact& artifact) {
    DisclosureReport report;
    report.level1_tokens = estimate_tokens(level1_text(artifact.frontmatter));
    report.level2_tokens = estimate_tokens(artifact.instructions);
    report.level1_band = classify_band(report.level1_tokens, kLevel1Min, kLevel1Max);
    report.level2_band = classify_band(report.level2_tokens, kLevel2Min, kLevel2Max);
    return report;
}

ValidationReport validate_skill(const SkillArtifact& artifact) {
    ValidationReport report;
    const Frontmatter& fm = artifact.frontmatter;

    if (!is_kebab_case(fm.name)) {
        report.errors.push_back({"name-not-kebab-case", "`" + fm.name + "` is not kebab-case",
                                 "frontmatter.name"});
    }
    if (text::trim(fm.description).empty()) {
        report.errors.push_back({"empty-description", "description must be non-empty",
                                 "frontmatter.description"});
    }
    if (!is_semver(fm.version)) {
        report.errors.push_back(
            {"bad-semver", "`" + fm.version + "` is not MAJOR.MINOR.PATCH", "frontmatter.version"});
    }
    if (fm.trigger.empty()) {
        report.errors.push_back(
            {"empty-trigger", "trigger list must be non-empty", "frontmatter.trigger"});
    } else {
        for (std::size_t i = 0; i < fm.trigger.size(); ++i) {
            if (text::trim(fm.trigger[i]).empty()) {
                report.errors.push_back({"blank-trigger-entry",
                                         "trigger entries must be non-empty after trimming",
                                         "frontmatter.trigger[" + std::to_string(i) + "]"});
            }
        }
    }

    for (const auto& res : artifact.resources) {
        if (resource_path_escapes(res.path)) {
            report.errors.push_back({"resource-path-escape",
                                     "`" + res.path + "` is absolute or contains `..`",
                                     "resources"});
            continue;
        }
        auto expected = kind_for_root(res.path);
        if (!expected) {
            report.errors.push_back(
                {"resource-bad-root",
                 "`" + res.path + "` must live under scripts/, references/ or templates/",
                 "resources"});
        } else if (*expected != res.kind) {
            report.errors.push_back(
                {"resource-kind-mismatch",
                 "`" + res.path + "` declared " + resource_kind_name(res.kind) + " but lives in " +
                     resource_kind_name(*expected) + " territory",
                 "resources"});
        }
    }

    DisclosureReport tokens = disclosure_report(artifact);
    if (tokens.level1_band != Band::Within) {
        report.warnings.push_back({"level1-band",
                                   "level 1 estimates " + std::to_string(tokens.level1_tokens) +
                                       " tokens (" + band_name(tokens.level1_band) + " [30,100])",
                                   "frontmatter"});
    }
    if (tokens.level2_band != Band::Within) {
        report.warnings.push_back({"level2-band",
                                   "level 2 estimates " + std::to_string(tokens.level2_tokens) +
                                       " tokens (" + band_name(tokens.level2_band) +
                                       " [200,5000])",
                                   "instructions"});
    }
    if (fm.dependencies.empty()) {
        report.warnings.push_back(
            {"empty-dependencies", "no dependencies declared", "frontmatter.dependencies"});
    }
    if (fm.description.size() > 500) {
        report.warnings.push_back({"long-description",
                                   "description exceeds 500 characters",
                                   "frontmatter.description"});
    }
    return report;
}

SkillArtifact load_skill_dir(const fs::path& dir) {
    fs::path skill_md = dir / "SKILL.md";
    std::ifstream in(skill_md, std::ios::binary);
    if (!in) throw Error(Errc::IoFailure, "cannot open " + skill_md.string());
    std::ostringstream os;
    os << in.rdbuf();
    SkillArtifact artifact = parse_skill(os.str());

    static const std::vector<std::pair<std::string, ResourceKind>> kRoots = {
        {"scripts", ResourceKind::Script},
        {"references", ResourceKind::Reference},
        {"templates", ResourceKind::Template},
    };
    for (const auto& [root, kind] : kRoots) {
        fs::path sub = dir / root;
        if (!fs::is_directory(sub)) continue;
        std::vector<fs::path> paths;
        for (const auto& entry : fs::recursive_directory_iterator(sub)) {
            if (entry.is_regular_file()) paths.push_back(entry.path());
        }
        std::sort(paths.begin(), paths.end());
        for (const auto& p : paths) {
            std::ifstream rin(p, std::ios::binary);
            if (!rin) throw Error(Errc::IoFailure, "cannot open " + p.string());
            std::ostringstream ros;
            ros << rin.rdbuf();
            ResourceRef ref;
            ref.path = fs::relative(p, dir).generic_string();
            ref.kind = kind;
            ref.bytes = ros.str();
            artifact.resources.push_back(std::move(ref));
        }
    }
    return artifact;
}

fs::path write_skill_dir(const SkillArtifact& artifact, const fs::path& parent) {
    std::string document = serialize_skill(artifact); // validates invariants
    fs::path dir = parent / artifact.frontmatter.name;
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "SKILL.md", std::ios::binary);
        if (!out) throw Error(Errc::IoFailure, "cannot write " + (dir / "SKILL.md").string());
        out << document;
    }
    for (const auto& res : artifact.resources) {
        fs::path target = dir / res.path;
        fs::create_directories(target.parent_path());
        std::ofstream out(target, std::ios::binary);
        if (!out) throw Error(Errc::IoFailure, "cannot write " + target.string());
        out.write(res.bytes.data(), static_cast<std::streamsize>(res.bytes.size()));
    }
    return dir;
}

std::string DisclosureReport::to_json_string(int indent) const {
    nlohmann::ordered_json j;
    j["level1_tokens"] = level1_tokens;
    j["level1_band"] = band_name(level1_band);
    j["level2_tokens"] = level2_tokens;
    j["level2_band"] = band_name(level2_band);
    return j.dump(indent);
}

std::string ValidationReport::to_json_string(int indent) const {
    nlohmann::ordered_json j;
    j["valid"] = valid();
    auto encode = [](const std::vector<Finding>& findings) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& f : findings) {
            arr.push_back({{"code", f.code}, {"message", f.message}, {"location", f.location}});
        }
        return arr;
    };
    j["errors"] = encode(errors);
    j["warnings"] = encode(warnings);
    return j.dump(indent);
}

std::string artifact_to_json_string(const SkillArtifact& artifact, int indent) {
    nlohmann::ordered_json j;
    const Frontmatter& fm = artifact.frontmatter;
    j["name"] = fm.name;
    j["description"] = fm.description;
    j["version"] = fm.version;
    j["trigger"] = fm.trigger;
    j["dependencies"] = fm.dependencies;
    if (fm.allowed_tools) j["allowed_tools"] = *fm.allowed_tools;
    if (fm.success_criteria) j["success_criteria"] = *fm.success_criteria;
    j["instructions_chars"] = artifact.instructions.size();
    nlohmann::ordered_json resources = nlohmann::ordered_json::array();
    for (const auto& r : artifact.resources) {
        resources.push_back({{"path", r.path},
                             {"kind", resource_kind_name(r.kind)},
                             {"bytes", r.bytes.size()}});
    }
    j["resources"] = resources;
    return j.dump(indent);
}

} // namespace skillforge::skillmd
