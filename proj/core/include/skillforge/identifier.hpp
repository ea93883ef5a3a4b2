#pragma once

#include "skillforge/embedding.hpp"
#include "skillforge/repo_analyzer.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace skillforge::identify {

struct TaskDescription {
    std::string task_id;
    std::string text; // non-empty
};

struct CriteriaScores {
    double recurrence = 0.0;
    double verification = 0.0;
    double non_obviousness = 0.0;
    double generalizability = 0.0;
    double aggregate = 0.0; // arithmetic mean of the four

    bool operator==(const CriteriaScores&) const = default;
};

struct CandidateModule {
    std::string module_id; // path, or path::symbol for segmented functions
    std::string source_excerpt;
    EmbeddingVector embedding;
    double retrieval_score = 0.0; // cosine against the query task, set by stage one
    std::optional<double> relevance_score; // present once stage two ran
    std::optional<CriteriaScores> criteria;
};

struct IdentifierConfig {
    std::size_t top_k = 10;
    double relevance_threshold = 0.5; // promotion requires score strictly above
    std::size_t embedding_dims = 256;
};

// Stage-two scorer. The built-in JaccardScorer keeps the pipeline offline;
// a cross-encoder provider can be injected instead.
class RelevanceScorer {
  public:
    virtual ~RelevanceScorer() = default;
    virtual double score(const TaskDescription& task, const CandidateModule& module) const = 0;
};

class JaccardScorer : public RelevanceScorer {
  public:
    double score(const TaskDescription& task, const CandidateModule& module) const override;
};

// Knobs for assess_extraction_criteria. Each component formula is an
// explicit quantification and can be retuned without touching callers.
struct CriteriaConfig {
    double near_duplicate_cosine = 0.8;
    std::size_t recurrence_cap = 5;
    std::size_t non_obviousness_cap = 10;
};

// Builds the candidate corpus from a scanned repository: one candidate per
// source file (roles ExecutionScript / DomainModule) plus one per top-level
// function where the language hint supports regex segmentation (python,
// javascript, typescript). Excerpts are capped at max_excerpt_bytes.
std::vector<CandidateModule> build_corpus(const repo::RepoMap& map,
                                          const std::filesystem::path& root,
                                          std::size_t dims,
                                          std::size_t max_excerpt_bytes = 16384);

// Stage one: rank the corpus by cosine against the embedded task text and
// keep min(top_k, N). Ties break by ascending module_id. Candidates whose
// embedding (or the task's) has zero norm score 0. Throws EmptyCorpus.
std::vector<CandidateModule> retrieve_candidates(const TaskDescription& task,
                                                 const std::vector<CandidateModule>& modules,
                                                 const IdentifierConfig& config);

// Stage two for one pair; result clamped to [0,1]. Provider exceptions are
// rethrown as ScorerFailure.
double rank_pair(const TaskDescription& task, const CandidateModule& module,
                 const RelevanceScorer& scorer);

// Keeps candidates with relevance_score strictly above the threshold,
// preserving order. Throws MissingRelevanceScore.
std::vector<CandidateModule> filter_by_threshold(const std::vector<CandidateModule>& candidates,
                                                 const IdentifierConfig& config);

// Scores the four extraction criteria:
//   recurrence       min(#near-duplicates, cap) / cap
//   verification     comment lines / total lines, capped at 1
//   non_obviousness  min(#control-flow + error-handling markers, cap) / cap
//   generalizability 1 - hardcoded-literal density (sanitizer rule matches
//                    per line, capped at 1)
// Throws CandidateNotInCorpus when module_id is absent from the corpus.
CriteriaScores assess_extraction_criteria(const CandidateModule& candidate,
                                          const std::vector<CandidateModule>& corpus,
                                          const repo::RepoMap& map,
                                          const CriteriaConfig& config = {});

std::string candidates_to_json_string(const std::vector<CandidateModule>& candidates,
                                      int indent = 2);

} // namespace skillforge::identify
