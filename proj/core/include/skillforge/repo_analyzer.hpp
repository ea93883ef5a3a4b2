#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace skillforge::repo {

enum class FileRole {
    ExecutionScript,
    Configuration,
    DomainModule,
    Documentation,
    Asset,
    Other,
};

const char* role_name(FileRole role);
std::optional<FileRole> role_from_name(std::string_view name);

struct FileEntry {
    std::string path; // relative to root, forward slashes, no "." / ".." segments
    std::uint64_t size_bytes = 0;
    FileRole role = FileRole::Other;
    std::optional<std::string> language_hint;
    std::string preview; // first N chars of text content, empty for binary

    bool operator==(const FileEntry&) const = default;
};

struct RepoMap {
    std::string root;
    std::vector<FileEntry> files; // path-sorted
    std::string generated_at;     // ISO-8601 UTC
    std::uint64_t total_bytes = 0;

    std::string to_json_string(int indent = 2) const;
};

struct ContextDocument {
    std::string markdown;
    std::vector<std::string> included_files;
    bool truncated = false;
};

struct ScanConfig {
    std::vector<std::string> ignore_globs = {".git/**", ".hg/**", ".svn/**"};
    std::size_t preview_chars = 2000;
    std::size_t binary_probe_bytes = 8192;   // NUL byte within this prefix => binary
    std::uint64_t binary_size_cap = 1 << 20; // binaries above this are skipped entirely
};

// Walks `root` and produces a path-sorted structural map. Throws
// RootNotFound / NotADirectory / IoFailure(path).
RepoMap scan_repository(const std::filesystem::path& root, const ScanConfig& config = {});

// Deterministic role from the rule table, never throws. Rules are applied
// in order: Documentation, Configuration, ExecutionScript, Asset,
// DomainModule, Other.
FileRole classify_file(const std::string& path, const std::string& content_preview);

// Renders the map as Markdown: a directory tree first, then one fenced
// preview block per file. Output never exceeds char_budget; when trimming
// is needed, previews are dropped largest-first, then tree leaves are
// elided (never the root). Throws BudgetTooSmall for budgets < 1024.
ContextDocument render_context_markdown(const RepoMap& map, std::size_t char_budget);

// Shell-style matcher used for ignore rules: '*' and '?' stay within one
// path segment, "**" crosses segments.
bool glob_match(std::string_view pattern, std::string_view path);

std::optional<std::string> language_hint_for(const std::string& path);

} // namespace skillforge::repo
