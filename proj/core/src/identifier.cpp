#include "skillforge/identifier.hpp"

#include "skillforge/error.hpp"
#include "skillforge/sanitizer.hpp"
#include "skillforge/text_util.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>

#include "json.hpp"

namespace fs = std::filesystem;

namespace skillforge::identify {

namespace {

bool is_comment_line(const std::string& line) {
    static const std::vector<std::string> kMarkers = {"#", "//", "/*", "*", "\"\"\"", "'''"};
    std::string t = text::trim(line);
    if (t.empty()) return false;
    for (const auto& m : kMarkers) {
        if (t.rfind(m, 0) == 0) return true;
    }
    return false;
}

std::size_t count_control_flow_markers(const std::string& excerpt) {
    static const std::set<std::string> kMarkers = {
        "if",   "else",  "elif",    "for",   "while", "switch", "case",
        "try",  "except","catch",   "finally","raise", "throw",  "assert",
    };
    std::size_t count = 0;
    for (const auto& token : text::tokenize(excerpt)) {
        if (kMarkers.count(token)) ++count;
    }
    return count;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(Errc::IoFailure, "cannot open " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Top-level function segmentation for languages where a cheap regex is
// reliable enough. Returns (symbol, excerpt) pairs.
std::vector<std::pair<std::string, std::string>> segment_functions(
    const std::string& content, const std::string& language) {
    std::vector<std::pair<std::string, std::string>> out;
    std::regex head;
    if (language == "python") {
        head = std::regex(R"(^(?:async\s+)?(?:def|class)\s+([A-Za-z_]\w*))");
    } else if (language == "javascript" || language == "typescript") {
        head = std::regex(R"(^(?:export\s+)?(?:async\s+)?function\s+([A-Za-z_$][\w$]*))");
    } else {
        return out;
    }

    auto lines = text::split_lines(content);
    std::size_t i = 0;
    while (i < lines.size()) {
        std::smatch m;
        if (!std::regex_search(lines[i], m, head)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        ++i;
        // Body extends while lines are blank or indented.
        while (i < lines.size()) {
            const std::string& line = lines[i];
            if (!line.empty() && line[0] != ' ' && line[0] != '\t' && line[0] != '}') break;
            ++i;
        }
        std::string body;
        for (std::size_t k = start; k < i; ++k) body += lines[k] + "\n";
        out.emplace_back(m[1].str(), std::move(body));
    }
    return out;
}

double retrieval_cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.norm <= 0.0 || b.norm <= 0.0) return 0.0;
    return cosine_similarity(a, b);
}

} // namespace

double JaccardScorer::score(const TaskDescription& task, const CandidateModule& module) const {
    return text::jaccard(text::token_set(task.text), text::token_set(module.source_excerpt));
}

std::vector<CandidateModule> build_corpus(const repo::RepoMap& map, const fs::path& root,
                                          std::size_t dims, std::size_t max_excerpt_bytes) {
    std::vector<CandidateModule> corpus;
    for (const auto& file : map.files) {
        if (file.role != repo::FileRole::ExecutionScript &&
            file.role != repo::FileRole::DomainModule) {
            continue;
        }
        std::string content = read_file(root / file.path);
        if (content.find('\0') != std::string::npos) continue;

        auto make = [&](std::string id, std::string excerpt) {
            if (excerpt.size() > max_excerpt_bytes) excerpt.resize(max_excerpt_bytes);
            CandidateModule c;
            c.module_id = std::move(id);
            c.embedding = embed_text(excerpt, dims);
            c.source_excerpt = std::move(excerpt);
            corpus.push_back(std::move(c));
        };

        make(file.path, content);
        if (file.language_hint) {
            for (auto& [symbol, body] : segment_functions(content, *file.language_hint)) {
                make(file.path + "::" + symbol, std::move(body));
            }
        }
    }
    std::sort(corpus.begin(), corpus.end(),
              [](const CandidateModule& a, const CandidateModule& b) {
                  return a.module_id < b.module_id;
              });
    return corpus;
}

std::vector<CandidateModule> retrieve_candidates(const TaskDescription& task,
                                                 const std::vector<CandidateModule>& modules,
                                                 const IdentifierConfig& config) {
    if (modules.empty()) throw Error(Errc::EmptyCorpus, "no candidate modules");
    for (const auto& m : modules) {
        if (m.embedding.dims.size() != config.embedding_dims) {
            throw Error(Errc::DimensionMismatch,
                        m.module_id + " has " + std::to_string(m.embedding.dims.size()) +
                            " dims, expected " + std::to_string(config.embedding_dims));
        }
    }

    EmbeddingVector task_vec = embed_text(task.text, config.embedding_dims);
    std::vector<CandidateModule> ranked = modules;
    for (auto& m : ranked) {
        m.retrieval_score = retrieval_cosine(task_vec, m.embedding);
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const CandidateModule& a, const CandidateModule& b) {
                  if (a.retrieval_score != b.retrieval_score) {
                      return a.retrieval_score > b.retrieval_score;
                  }
                  return a.module_id < b.module_id;
              });
    if (ranked.size() > config.top_k) ranked.resize(config.top_k);
    return ranked;
}

double rank_pair(const TaskDescription& task, const CandidateModule& module,
                 const RelevanceScorer& scorer) {
    double raw;
    try {
        raw = scorer.score(task, module);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(Errc::ScorerFailure, e.what());
    }
    return std::clamp(raw, 0.0, 1.0);
}

std::vector<CandidateModule> filter_by_threshold(const std::vector<CandidateModule>& candidates,
                                                 const IdentifierConfig& config) {
    for (const auto& c : candidates) {
        if (!c.relevance_score) {
            throw Error(Errc::MissingRelevanceScore, c.module_id);
        }
    }
    std::vector<CandidateModule> promoted;
    for (const auto& c : candidates) {
        if (*c.relevance_score > config.relevance_threshold) promoted.push_back(c);
    }
    return promoted;
}

CriteriaScores assess_extraction_criteria(const CandidateModule& candidate,
                                          const std::vector<CandidateModule>& corpus,
                                          const repo::RepoMap& map,
                                          const CriteriaConfig& config) {
    (void)map; // reserved for richer corpus-level statistics
    auto in_corpus = std::any_of(corpus.begin(), corpus.end(), [&](const CandidateModule& m) {
        return m.module_id == candidate.module_id;
    });
    if (!in_corpus) throw Error(Errc::CandidateNotInCorpus, candidate.module_id);

    CriteriaScores scores;

    std::size_t near_duplicates = 0;
    for (const auto& other : corpus) {
        if (other.module_id == candidate.module_id) continue;
        if (retrieval_cosine(candidate.embedding, other.embedding) >=
            config.near_duplicate_cosine) {
            ++near_duplicates;
        }
    }
    scores.recurrence = static_cast<double>(std::min(near_duplicates, config.recurrence_cap)) /
                        static_cast<double>(config.recurrence_cap);

    auto lines = text::split_lines(candidate.source_excerpt);
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    scores.generalizability = 1.0;
    if (!lines.empty()) {
        std::size_t comment_lines = 0;
        for (const auto& line : lines) {
            if (is_comment_line(line)) ++comment_lines;
        }
        scores.verification =
            std::min(1.0, static_cast<double>(comment_lines) / static_cast<double>(lines.size()));

        std::size_t literal_matches = synth::count_sanitizer_matches(candidate.source_excerpt);
        double density =
            std::min(1.0, static_cast<double>(literal_matches) / static_cast<double>(lines.size()));
        scores.generalizability = 1.0 - density;
    }

    std::size_t markers = count_control_flow_markers(candidate.source_excerpt);
    scores.non_obviousness =
        static_cast<double>(std::min(markers, config.non_obviousness_cap)) /
        static_cast<double>(config.non_obviousness_cap);

    scores.aggregate = (scores.recurrence + scores.verification + scores.non_obviousness +
                        scores.generalizability) /
                       4.0;
    return scores;
}

std::string candidates_to_json_string(const std::vector<CandidateModule>& candidates,
                                      int indent) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& c : candidates) {
        nlohmann::ordered_json jc;
        jc["module_id"] = c.module_id;
        jc["retrieval_score"] = c.retrieval_score;
        if (c.relevance_score) jc["relevance_score"] = *c.relevance_score;
        if (c.criteria) {
            jc["criteria"] = {{"recurrence", c.criteria->recurrence},
                              {"verification", c.criteria->verification},
                              {"non_obviousness", c.criteria->non_obviousness},
                              {"generalizability", c.criteria->generalizability},
                              {"aggregate", c.criteria->aggregate}};
        }
        j.push_back(std::move(jc));
    }
    return j.dump(indent);
}

} // namespace skillforge::identify
