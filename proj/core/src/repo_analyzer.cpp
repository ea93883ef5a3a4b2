#include "skillforge/repo_analyzer.hpp"

#include "skillforge/error.hpp"
#include "skillforge/text_util.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace skillforge::repo {

namespace {

const std::map<std::string, std::string>& extension_languages() {
    static const std::map<std::string, std::string> kMap = {
        {"py", "python"},     {"sh", "shell"},      {"bash", "shell"},
        {"zsh", "shell"},     {"rb", "ruby"},       {"pl", "perl"},
        {"js", "javascript"}, {"mjs", "javascript"},{"ts", "typescript"},
        {"tsx", "typescript"},{"jsx", "javascript"},{"c", "c"},
        {"h", "c"},           {"cc", "cpp"},        {"cpp", "cpp"},
        {"cxx", "cpp"},       {"hpp", "cpp"},       {"hh", "cpp"},
        {"hxx", "cpp"},       {"rs", "rust"},       {"go", "go"},
        {"java", "java"},     {"kt", "kotlin"},     {"swift", "swift"},
        {"cs", "csharp"},     {"php", "php"},       {"scala", "scala"},
        {"lua", "lua"},       {"r", "r"},           {"jl", "julia"},
        {"md", "markdown"},   {"rst", "rst"},       {"yaml", "yaml"},
        {"yml", "yaml"},      {"toml", "toml"},     {"json", "json"},
        {"ini", "ini"},       {"txt", "text"},      {"sql", "sql"},
        {"ps1", "powershell"},{"bat", "batch"},     {"cmd", "batch"},
    };
    return kMap;
}

const std::set<std::string> kScriptExtensions = {
    "py", "sh", "bash", "zsh", "rb", "pl", "js", "mjs", "ts", "ps1", "bat", "cmd",
};

const std::set<std::string> kSourceExtensions = {
    "py",  "sh",  "bash", "zsh",  "rb",   "pl",  "js", "mjs", "ts",  "tsx", "jsx",
    "c",   "h",   "cc",   "cpp",  "cxx",  "hpp", "hh", "hxx", "rs",  "go",  "java",
    "kt",  "swift", "cs", "php",  "scala","lua", "r",  "jl",  "sql", "ps1", "bat", "cmd",
};

const std::set<std::string> kAssetExtensions = {
    "png", "jpg", "jpeg", "gif", "svg", "bmp", "ico",  "webp", "mp4",  "avi",
    "mov", "mkv", "webm", "mp3", "wav", "ogg", "ttf",  "otf",  "woff", "woff2",
    "eot", "pdf",
};

const std::set<std::string> kConfigExtensions = {"yaml", "yml", "toml", "json", "ini"};

std::string extension_of(const std::string& path) {
    auto slash = path.find_last_of('/');
    auto base = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = base.find_last_of('.');
    if (dot == std::string::npos || dot + 1 >= base.size()) return "";
    return text::to_lower(base.substr(dot + 1));
}

std::string basename_of(const std::string& path) {
    auto slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

bool has_entry_point_marker(const std::string& preview) {
    static const std::vector<std::string> kMarkers = {
        "if __name__", "int main(", "fn main(", "func main(",
        "def main(", "public static void main",
    };
    if (preview.rfind("#!", 0) == 0) return true;
    for (const auto& marker : kMarkers) {
        if (preview.find(marker) != std::string::npos) return true;
    }
    return false;
}

std::string iso8601_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct ProbeResult {
    bool binary = false;
    std::string preview;
};

ProbeResult probe_file(const fs::path& abs, const std::string& rel, const ScanConfig& config) {
    std::ifstream in(abs, std::ios::binary);
    if (!in) throw Error(Errc::IoFailure, "cannot open " + rel, {rel});

    std::string head(config.binary_probe_bytes, '\0');
    in.read(head.data(), static_cast<std::streamsize>(head.size()));
    head.resize(static_cast<std::size_t>(in.gcount()));

    ProbeResult result;
    result.binary = head.find('\0') != std::string::npos;
    if (result.binary) return result;

    if (head.size() >= config.preview_chars) {
        result.preview = head.substr(0, config.preview_chars);
    } else if (in.eof()) {
        result.preview = head;
    } else {
        std::string rest(config.preview_chars - head.size(), '\0');
        in.clear();
        in.read(rest.data(), static_cast<std::streamsize>(rest.size()));
        rest.resize(static_cast<std::size_t>(in.gcount()));
        result.preview = head + rest;
    }
    return result;
}

// Directory tree line rendering: root first, children indented two spaces
// per level, directories suffixed with '/'.
struct TreeNode {
    std::map<std::string, TreeNode> children;
    const FileEntry* file = nullptr;
};

void render_tree(const TreeNode& node, int depth, std::vector<std::string>& lines) {
    for (const auto& [name, child] : node.children) {
        std::string line(static_cast<std::size_t>(depth) * 2, ' ');
        if (child.file) {
            std::ostringstream os;
            os << line << name << "  [" << role_name(child.file->role) << ", "
               << child.file->size_bytes << " B]";
            lines.push_back(os.str());
        } else {
            lines.push_back(line + name + "/");
            render_tree(child, depth + 1, lines);
        }
    }
}

bool glob_match_impl(std::string_view pat, std::string_view str) {
    if (pat.empty()) return str.empty();
    if (pat.substr(0, 2) == "**") {
        std::string_view rest = pat.substr(2);
        if (!rest.empty() && rest.front() == '/') {
            // "**/" may consume zero segments
            if (glob_match_impl(rest.substr(1), str)) return true;
        }
        for (std::size_t i = 0; i <= str.size(); ++i) {
            if (glob_match_impl(rest, str.substr(i))) return true;
        }
        return false;
    }
    char p = pat.front();
    if (p == '*') {
        for (std::size_t i = 0; i <= str.size(); ++i) {
            if (i > 0 && str[i - 1] == '/') break;
            if (glob_match_impl(pat.substr(1), str.substr(i))) return true;
        }
        return false;
    }
    if (str.empty()) return false;
    if (p == '?') return str.front() != '/' && glob_match_impl(pat.substr(1), str.substr(1));
    return p == str.front() && glob_match_impl(pat.substr(1), str.substr(1));
}

bool is_ignored(const std::string& rel, const ScanConfig& config) {
    for (const auto& glob : config.ignore_globs) {
        if (glob_match(glob, rel)) return true;
        // "dir/**" also ignores the bare directory path
        if (glob.size() > 3 && glob.substr(glob.size() - 3) == "/**" &&
            rel == glob.substr(0, glob.size() - 3)) {
            return true;
        }
    }
    return false;
}

} // namespace

const char* role_name(FileRole role) {
    switch (role) {
        case FileRole::ExecutionScript: return "ExecutionScript";
        case FileRole::Configuration: return "Configuration";
        case FileRole::DomainModule: return "DomainModule";
        case FileRole::Documentation: return "Documentation";
        case FileRole::Asset: return "Asset";
        case FileRole::Other: return "Other";
    }
    return "Other";
}

std::optional<FileRole> role_from_name(std::string_view name) {
    static const std::map<std::string, FileRole, std::less<>> kRoles = {
        {"ExecutionScript", FileRole::ExecutionScript},
        {"Configuration", FileRole::Configuration},
        {"DomainModule", FileRole::DomainModule},
        {"Documentation", FileRole::Documentation},
        {"Asset", FileRole::Asset},
        {"Other", FileRole::Other},
    };
    auto it = kRoles.find(name);
    if (it == kRoles.end()) return std::nullopt;
    return it->second;
}

bool glob_match(std::string_view pattern, std::string_view path) {
    return glob_match_impl(pattern, path);
}

std::optional<std::string> language_hint_for(const std::string& path) {
    auto ext = extension_of(path);
    auto it = extension_languages().find(ext);
    if (it == extension_languages().end()) return std::nullopt;
    return it->second;
}

FileRole classify_file(const std::string& path, const std::string& content_preview) {
    const std::string lower = text::to_lower(path);
    const std::string ext = extension_of(path);
    const std::string base = text::to_lower(basename_of(path));

    if (ext == "md" || ext == "rst" || lower.rfind("docs/", 0) == 0 ||
        lower.find("/docs/") != std::string::npos) {
        return FileRole::Documentation;
    }
    if (kConfigExtensions.count(ext) || lower.find("prompt") != std::string::npos ||
        lower.find("config") != std::string::npos) {
        return FileRole::Configuration;
    }
    if (kScriptExtensions.count(ext)) {
        auto stem = base.substr(0, base.find_last_of('.'));
        bool named_like_entry = stem == "main" || base.rfind("run", 0) == 0 ||
                                base.rfind("generate", 0) == 0;
        if (named_like_entry || has_entry_point_marker(content_preview)) {
            return FileRole::ExecutionScript;
        }
    }
    if (kAssetExtensions.count(ext)) return FileRole::Asset;
    if (kSourceExtensions.count(ext)) return FileRole::DomainModule;
    return FileRole::Other;
}

RepoMap scan_repository(const fs::path& root, const ScanConfig& config) {
    std::error_code ec;
    auto status = fs::status(root, ec);
    if (ec || !fs::exists(status)) {
        throw Error(Errc::RootNotFound, root.string());
    }
    if (!fs::is_directory(status)) {
        throw Error(Errc::NotADirectory, root.string());
    }

    RepoMap map;
    map.root = root.string();
    map.generated_at = iso8601_now();

    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) throw Error(Errc::IoFailure, root.string() + ": " + ec.message());
    fs::recursive_directory_iterator end;

    for (; it != end; it.increment(ec)) {
        if (ec) throw Error(Errc::IoFailure, ec.message());
        const fs::directory_entry& entry = *it;
        std::string rel = fs::relative(entry.path(), root, ec).generic_string();
        if (ec) throw Error(Errc::IoFailure, entry.path().string());

        if (entry.is_directory()) {
            if (is_ignored(rel, config) || is_ignored(rel + "/", config)) {
                it.disable_recursion_pending();
            }
            continue;
        }
        if (!entry.is_regular_file()) continue;
        if (is_ignored(rel, config)) continue;

        std::uint64_t size = entry.file_size(ec);
        if (ec) throw Error(Errc::IoFailure, rel);

        ProbeResult probe = probe_file(entry.path(), rel, config);
        if (probe.binary && size > config.binary_size_cap) continue;

        FileEntry file;
        file.path = rel;
        file.size_bytes = size;
        file.preview = probe.binary ? std::string() : probe.preview;
        file.role = classify_file(rel, file.preview);
        file.language_hint = language_hint_for(rel);
        map.files.push_back(std::move(file));
    }

    std::sort(map.files.begin(), map.files.end(),
              [](const FileEntry& a, const FileEntry& b) { return a.path < b.path; });
    map.total_bytes = 0;
    for (const auto& f : map.files) map.total_bytes += f.size_bytes;
    return map;
}

ContextDocument render_context_markdown(const RepoMap& map, std::size_t char_budget) {
    if (char_budget < 1024) {
        throw Error(Errc::BudgetTooSmall, "char budget must be >= 1024, got " +
                                              std::to_string(char_budget));
    }

    std::string root_name = fs::path(map.root).filename().generic_string();
    if (root_name.empty()) root_name = map.root.empty() ? "repository" : map.root;

    TreeNode tree_root;
    for (const auto& file : map.files) {
        TreeNode* node = &tree_root;
        std::size_t start = 0;
        while (true) {
            auto slash = file.path.find('/', start);
            std::string part = file.path.substr(start, slash - start);
            node = &node->children[part];
            if (slash == std::string::npos) {
                node->file = &file;
                break;
            }
            start = slash + 1;
        }
    }

    std::vector<std::string> tree_lines;
    render_tree(tree_root, 1, tree_lines);

    auto build_tree_section = [&](std::size_t keep_lines) {
        std::ostringstream os;
        os << "# Repository tree\n\n```\n" << root_name << "/\n";
        for (std::size_t i = 0; i < keep_lines && i < tree_lines.size(); ++i) {
            os << tree_lines[i] << "\n";
        }
        if (keep_lines < tree_lines.size()) os << "  ...\n";
        os << "```\n";
        return os.str();
    };

    struct PreviewBlock {
        const FileEntry* file;
        std::string rendered;
    };
    std::vector<PreviewBlock> previews;
    for (const auto& file : map.files) {
        if (file.preview.empty()) continue;
        std::ostringstream os;
        os << "\n## " << file.path << "\n\n````"
           << file.language_hint.value_or("") << "\n"
           << file.preview;
        if (file.preview.back() != '\n') os << "\n";
        os << "````\n";
        previews.push_back({&file, os.str()});
    }

    ContextDocument doc;
    std::string tree_section = build_tree_section(tree_lines.size());

    auto total_len = [&]() {
        std::size_t len = tree_section.size();
        if (!previews.empty()) len += std::string("\n# File previews\n").size();
        for (const auto& p : previews) len += p.rendered.size();
        return len;
    };

    // Drop previews largest-first until the document fits.
    while (total_len() > char_budget && !previews.empty()) {
        auto largest = std::max_element(previews.begin(), previews.end(),
                                        [](const PreviewBlock& a, const PreviewBlock& b) {
                                            return a.rendered.size() < b.rendered.size();
                                        });
        previews.erase(largest);
        doc.truncated = true;
    }

    // Then elide tree leaves from the bottom, never the root line.
    std::size_t keep = tree_lines.size();
    while (total_len() > char_budget && keep > 0) {
        --keep;
        tree_section = build_tree_section(keep);
        doc.truncated = true;
    }

    std::ostringstream os;
    os << tree_section;
    if (!previews.empty()) {
        os << "\n# File previews\n";
        for (const auto& p : previews) os << p.rendered;
    }
    doc.markdown = os.str();

    if (doc.markdown.size() > char_budget) {
        doc.markdown.resize(char_budget);
        doc.truncated = true;
    }

    for (const auto& p : previews) doc.included_files.push_back(p.file->path);
    std::sort(doc.included_files.begin(), doc.included_files.end());
    return doc;
}

std::string RepoMap::to_json_string(int indent) const {
    nlohmann::ordered_json j;
    j["root"] = root;
    j["generated_at"] = generated_at;
    j["total_bytes"] = total_bytes;
    j["files"] = nlohmann::ordered_json::array();
    for (const auto& f : files) {
        nlohmann::ordered_json jf;
        jf["path"] = f.path;
        jf["size_bytes"] = f.size_bytes;
        jf["role"] = role_name(f.role);
        if (f.language_hint) jf["language_hint"] = *f.language_hint;
        jf["preview"] = f.preview;
        j["files"].push_back(std::move(jf));
    }
    return j.dump(indent);
}

} // namespace skillforge::repo
