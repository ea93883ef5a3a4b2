#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace skillforge {

// Every recoverable failure in the library throws Error with one of these
// codes. Tests match on the code, messages are for humans.
enum class Errc {
    // repo-analyzer
    RootNotFound,
    NotADirectory,
    IoFailure,
    BudgetTooSmall,
    // skill-identifier
    DimensionMismatch,
    ZeroNormVector,
    EmptyCorpus,
    MissingRelevanceScore,
    CandidateNotInCorpus,
    ScorerFailure,
    // skillmd-core
    MissingFrontmatter,
    MalformedYaml,
    MissingRequiredField,
    InvalidFieldType,
    InvariantViolation,
    // skill-synthesizer
    UnnameableTask,
    TemplateNotFound,
    DrafterFailure,
    MissingSourceFile,
    // security-gates
    ClassifierFailure,
    SandboxUnavailable,
    SandboxTimeout,
    DuplicateGateReport,
    // registry-loader
    ValidationFailed,
    TierTooLow,
    DuplicateVersion,
    EmptyQuery,
    UnknownSkill,
    BudgetExceeded,
    UnknownResource,
    PathRejected,
    // skill-graph
    UnknownNode,
    SelfEdge,
    CycleDetected,
    DuplicateEdge,
    UnregisteredNode,
    UnknownGoal,
    // layout-critic
    OutOfFrame,
    EmptyCellSet,
    NoElements,
    // generic precondition violations
    InvalidArgument,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Error(Errc code, std::string message, std::vector<std::string> details)
        : Error(code, std::move(message)) {
        details_ = std::move(details);
    }

    Errc code() const { return code_; }

    // Structured payload, meaning depends on the code. CycleDetected stores
    // the witness path, BudgetExceeded stores {needed, available}.
    const std::vector<std::string>& details() const { return details_; }

  private:
    Errc code_;
    std::vector<std::string> details_;
};

} // namespace skillforge
