#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skillforge::skillmd {

// YAML frontmatter of a SKILL.md document. The on-disk key `allowed-tools`
// maps to allowed_tools here; key order on disk is fixed by serialize_skill.
struct Frontmatter {
    std::string name;        // kebab-case
    std::string description;
    std::string version;     // MAJOR.MINOR.PATCH
    std::vector<std::string> trigger;
    std::vector<std::string> dependencies;
    std::optional<std::vector<std::string>> allowed_tools;
    std::optional<std::vector<std::string>> success_criteria;

    bool operator==(const Frontmatter&) const = default;
};

enum class ResourceKind { Script, Reference, Template };

const char* resource_kind_name(ResourceKind kind);

struct ResourceRef {
    std::string path; // relative, under scripts/ | references/ | templates/
    ResourceKind kind = ResourceKind::Script;
    std::string bytes;

    bool operator==(const ResourceRef&) const = default;
};

struct SkillArtifact {
    Frontmatter frontmatter;
    std::string instructions; // Level-2 Markdown body
    std::vector<ResourceRef> resources;

    bool operator==(const SkillArtifact&) const = default;
};

enum class Band { Below, Within, Above };

const char* band_name(Band band);

// Token bands for the two context-loaded levels. Level 3 is unbounded by
// design and deliberately unreported.
inline constexpr std::size_t kLevel1Min = 30;
inline constexpr std::size_t kLevel1Max = 100;
inline constexpr std::size_t kLevel2Min = 200;
inline constexpr std::size_t kLevel2Max = 5000;

struct DisclosureReport {
    std::size_t level1_tokens = 0;
    std::size_t level2_tokens = 0;
    Band level1_band = Band::Below;
    Band level2_band = Band::Below;

    std::string to_json_string(int indent = 2) const;
};

struct Finding {
    std::string code;
    std::string message;
    std::string location;

    bool operator==(const Finding&) const = default;
};

struct ValidationReport {
    std::vector<Finding> errors;
    std::vector<Finding> warnings;

    bool valid() const { return errors.empty(); }
    std::string to_json_string(int indent = 2) const;
};

// Parses a SKILL.md document: a YAML frontmatter block delimited by lines
// that are exactly "---" (the first at byte offset 0), then the instruction
// body. One leading blank line after the closing delimiter is consumed as
// the separator; trailing newlines are normalized to exactly one. Resources
// are resolved separately (see load_skill_dir).
//
// The YAML subset accepted on purpose: scalar values (plain, single- or
// double-quoted), flat string lists (flow or block form), comments, and
// plain-scalar / flow-sequence line continuations. Anchors, aliases, tags,
// block scalars, and nested maps are rejected with MalformedYaml.
SkillArtifact parse_skill(std::string_view document);

// Fixed key order: name, description, version, trigger, dependencies,
// allowed-tools, success-criteria; optional keys omitted when absent.
// parse_skill(serialize_skill(a)) == a for every valid artifact. Throws
// InvariantViolation when the artifact fails its own invariants.
std::string serialize_skill(const SkillArtifact& artifact);

// ceil(chars / 4); the fixed model-agnostic proxy used everywhere tokens
// are accounted.
std::size_t estimate_tokens(std::string_view content);

// Level-1 text is name + description + triggers joined with single spaces.
std::string level1_text(const Frontmatter& fm);

DisclosureReport disclosure_report(const SkillArtifact& artifact);

Band classify_band(std::size_t tokens, std::size_t lo, std::size_t hi);

// Structural validation; findings are data, never exceptions.
// Errors: name-not-kebab-case, empty-description, bad-semver, empty-trigger,
//         blank-trigger-entry, resource-path-escape, resource-bad-root,
//         resource-kind-mismatch.
// Warnings: level1-band, level2-band, empty-dependencies, long-description.
ValidationReport validate_skill(const SkillArtifact& artifact);

bool is_kebab_case(std::string_view name);
bool is_semver(std::string_view version);

// On-disk layout: <dir>/SKILL.md plus optional scripts/, references/,
// templates/ subdirectories. UTF-8, LF line endings.
SkillArtifact load_skill_dir(const std::filesystem::path& dir);
std::filesystem::path write_skill_dir(const SkillArtifact& artifact,
                                      const std::filesystem::path& parent);

std::string artifact_to_json_string(const SkillArtifact& artifact, int indent = 2);

} // namespace skillforge::skillmd
