#pragma once

#include "skillforge/identifier.hpp"
#include "skillforge/repo_analyzer.hpp"
#include "skillforge/sanitizer.hpp"
#include "skillforge/skillmd.hpp"

#include <string>
#include <vector>

namespace skillforge::synth {

struct DraftContext {
    identify::CandidateModule candidate;
    repo::RepoMap repo;
    std::string template_id = "default"; // must name a registered template
    identify::TaskDescription task;
};

// Level-2 drafting is pluggable so an LLM can take over; the built-in
// TemplateDrafter fills the registered template from candidate metadata.
class InstructionDrafter {
  public:
    virtual ~InstructionDrafter() = default;
    virtual std::string draft(const DraftContext& ctx) const = 0;
};

class TemplateDrafter : public InstructionDrafter {
  public:
    std::string draft(const DraftContext& ctx) const override;
};

bool template_registered(const std::string& template_id);
std::vector<std::string> registered_templates();

// Frontmatter synthesis:
//   name         task text lowercased, non-alphanumerics collapsed to single
//                hyphens, trimmed, capped at 64 chars
//   description  first sentence of the task text plus an activation hint
//   version      1.0.0
//   trigger      top 3 task-text bigrams by frequency plus the full phrase
//   dependencies imports detected in the candidate excerpt
// Throws UnnameableTask when the task has no alphanumeric content.
skillmd::Frontmatter synthesize_frontmatter(const DraftContext& ctx);

std::string derive_skill_name(const std::string& task_text);

// Import detection rule table (python / javascript / shell heuristics).
// Well-known standard-library modules are not reported; python module names
// are normalized to distribution style (underscores to hyphens).
std::vector<std::string> detect_imports(const std::string& source);

// Fills the four mandated instruction sections (workflow, error handling,
// best practices, integration patterns). Throws TemplateNotFound /
// DrafterFailure.
std::string draft_instructions(const DraftContext& ctx, const InstructionDrafter& drafter);

// Collects the candidate's source file plus same-directory documentation and
// configuration into scripts/ references/ templates/, flattened one level
// with -2/-3 collision suffixing. Every text payload runs through
// sanitize_content; the combined log is appended to *log when given.
std::vector<skillmd::ResourceRef> bundle_assets(const identify::CandidateModule& candidate,
                                                const repo::RepoMap& repo,
                                                SanitizationLog* log = nullptr);

// Frontmatter + instructions + resources, with the instruction body itself
// sanitized.
skillmd::SkillArtifact assemble_skill(const DraftContext& ctx,
                                      const InstructionDrafter& drafter,
                                      SanitizationLog* log = nullptr);

} // namespace skillforge::synth
