#include "skillforge/error.hpp"

namespace skillforge {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::RootNotFound: return "RootNotFound";
        case Errc::NotADirectory: return "NotADirectory";
        case Errc::IoFailure: return "IoFailure";
        case Errc::BudgetTooSmall: return "BudgetTooSmall";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::ZeroNormVector: return "ZeroNormVector";
        case Errc::EmptyCorpus: return "EmptyCorpus";
        case Errc::MissingRelevanceScore: return "MissingRelevanceScore";
        case Errc::CandidateNotInCorpus: return "CandidateNotInCorpus";
        case Errc::ScorerFailure: return "ScorerFailure";
        case Errc::MissingFrontmatter: return "MissingFrontmatter";
        case Errc::MalformedYaml: return "MalformedYaml";
        case Errc::MissingRequiredField: return "MissingRequiredField";
        case Errc::InvalidFieldType: return "InvalidFieldType";
        case Errc::InvariantViolation: return "InvariantViolation";
        case Errc::UnnameableTask: return "UnnameableTask";
        case Errc::TemplateNotFound: return "TemplateNotFound";
        case Errc::DrafterFailure: return "DrafterFailure";
        case Errc::MissingSourceFile: return "MissingSourceFile";
        case Errc::ClassifierFailure: return "ClassifierFailure";
        case Errc::SandboxUnavailable: return "SandboxUnavailable";
        case Errc::SandboxTimeout: return "SandboxTimeout";
        case Errc::DuplicateGateReport: return "DuplicateGateReport";
        case Errc::ValidationFailed: return "ValidationFailed";
        case Errc::TierTooLow: return "TierTooLow";
        case Errc::DuplicateVersion: return "DuplicateVersion";
        case Errc::EmptyQuery: return "EmptyQuery";
        case Errc::UnknownSkill: return "UnknownSkill";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::UnknownResource: return "UnknownResource";
        case Errc::PathRejected: return "PathRejected";
        case Errc::UnknownNode: return "UnknownNode";
        case Errc::SelfEdge: return "SelfEdge";
        case Errc::CycleDetected: return "CycleDetected";
        case Errc::DuplicateEdge: return "DuplicateEdge";
        case Errc::UnregisteredNode: return "UnregisteredNode";
        case Errc::UnknownGoal: return "UnknownGoal";
        case Errc::OutOfFrame: return "OutOfFrame";
        case Errc::EmptyCellSet: return "EmptyCellSet";
        case Errc::NoElements: return "NoElements";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

} // namespace skillforge
