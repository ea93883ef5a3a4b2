#include "skillforge/synthesizer.hpp"

#include "skillforge/error.hpp"
#include "skillforge/text_util.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

namespace skillforge::synth {

namespace {

const std::set<std::string>& python_stdlib() {
    static const std::set<std::string> kModules = {
        "abc",        "argparse",  "array",    "ast",      "asyncio",   "base64",
        "bisect",     "collections","contextlib","copy",   "csv",       "ctypes",
        "dataclasses","datetime",  "decimal",  "enum",     "errno",     "fnmatch",
        "functools",  "glob",      "gzip",     "hashlib",  "heapq",     "hmac",
        "html",       "http",      "importlib","inspect",  "io",        "itertools",
        "json",       "logging",   "math",     "mimetypes","multiprocessing",
        "operator",   "os",        "pathlib",  "pickle",   "platform",  "pprint",
        "queue",      "random",    "re",       "secrets",  "select",    "shlex",
        "shutil",     "signal",    "socket",   "sqlite3",  "stat",      "statistics",
        "string",     "struct",    "subprocess","sys",     "tarfile",   "tempfile",
        "textwrap",   "threading", "time",     "traceback","types",     "typing",
        "unicodedata","unittest",  "urllib",   "uuid",     "warnings",  "weakref",
        "xml",        "zipfile",   "zlib",
    };
    return kModules;
}

const std::set<std::string>& node_builtins() {
    static const std::set<std::string> kModules = {
        "assert", "buffer", "child_process", "crypto", "events", "fs",   "http",
        "https",  "net",    "os",            "path",   "process", "readline",
        "stream", "url",    "util",          "zlib",
    };
    return kModules;
}

std::string normalize_package(const std::string& module) {
    std::string top = module.substr(0, module.find('.'));
    std::replace(top.begin(), top.end(), '_', '-');
    return top;
}

void push_unique(std::vector<std::string>& out, const std::string& value) {
    if (std::find(out.begin(), out.end(), value) == out.end()) out.push_back(value);
}

std::string first_sentence(const std::string& prose) {
    std::string trimmed = text::trim(prose);
    auto stop = trimmed.find_first_of(".!?");
    if (stop == std::string::npos) return trimmed;
    return text::trim(trimmed.substr(0, stop + 1));
}

std::vector<std::string> workflow_steps(const identify::CandidateModule& candidate) {
    static const std::regex kStepComment(
        R"(^\s*(?:#|//)\s*(?:[Ss]tep\s*)?\d+[.):]\s*(.+)$)");
    static const std::regex kDefinition(
        R"(^\s*(?:async\s+)?(?:def|function|class)\s+([A-Za-z_$][\w$]*))");

    std::vector<std::string> steps;
    for (const auto& line : text::split_lines(candidate.source_excerpt)) {
        std::smatch m;
        if (std::regex_match(line, m, kStepComment)) steps.push_back(text::trim(m[1].str()));
    }
    if (!steps.empty()) return steps;

    for (const auto& line : text::split_lines(candidate.source_excerpt)) {
        std::smatch m;
        if (std::regex_search(line, m, kDefinition)) {
            steps.push_back("Apply the `" + m[1].str() + "` routine to the working inputs.");
        }
    }
    return steps;
}

} // namespace

std::string derive_skill_name(const std::string& task_text) {
    std::string name;
    for (unsigned char c : task_text) {
        if (std::isalnum(c) && c < 0x80) {
            name.push_back(static_cast<char>(std::tolower(c)));
        } else if (!name.empty() && name.back() != '-') {
            name.push_back('-');
        }
    }
    while (!name.empty() && name.back() == '-') name.pop_back();
    if (name.size() > 64) {
        name.resize(64);
        while (!name.empty() && name.back() == '-') name.pop_back();
    }
    return name;
}

std::vector<std::string> detect_imports(const std::string& source) {
    std::vector<std::string> imports;

    static const std::regex kPyImport(R"(^\s*import\s+([A-Za-z_][\w.]*(?:\s*,\s*[A-Za-z_][\w.]*)*))");
    static const std::regex kPyFrom(R"(^\s*from\s+([A-Za-z_][\w.]*)\s+import\b)");
    static const std::regex kRequire(R"(require\(\s*['"]([^'"]+)['"]\s*\))");
    static const std::regex kEsImport(R"(^\s*import\s+(?:[\w${},*\s]+\s+from\s+)?['"]([^'"]+)['"])");

    auto add_python = [&](const std::string& module) {
        std::string top = module.substr(0, module.find('.'));
        if (python_stdlib().count(top)) return;
        push_unique(imports, normalize_package(top));
    };
    auto add_node = [&](const std::string& module) {
        if (module.rfind("./", 0) == 0 || module.rfind("../", 0) == 0) return;
        std::string name = module;
        if (name.front() == '@') {
            auto second = name.find('/', name.find('/') + 1);
            name = name.substr(0, second);
        } else {
            name = name.substr(0, name.find('/'));
        }
        if (node_builtins().count(name) || name.rfind("node:", 0) == 0) return;
        push_unique(imports, name);
    };

    for (const auto& line : text::split_lines(source)) {
        std::smatch m;
        if (std::regex_search(line, m, kEsImport)) {
            add_node(m[1].str());
            continue;
        }
        if (std::regex_search(line, m, kPyImport)) {
            std::string list = m[1].str();
            std::size_t start = 0;
            while (start <= list.size()) {
                auto comma = list.find(',', start);
                add_python(text::trim(list.substr(start, comma - start)));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
        }
        if (std::regex_search(line, m, kPyFrom)) add_python(m[1].str());
        auto begin = std::sregex_iterator(line.begin(), line.end(), kRequire);
        for (auto it = begin; it != std::sregex_iterator(); ++it) add_node((*it)[1].str());
    }
    return imports;
}

skillmd::Frontmatter synthesize_frontmatter(const DraftContext& ctx) {
    skillmd::Frontmatter fm;
    fm.name = derive_skill_name(ctx.task.text);
    if (fm.name.empty()) {
        throw Error(Errc::UnnameableTask, "task text has no alphanumeric content");
    }
    fm.version = "1.0.0";

    auto tokens = text::tokenize(ctx.task.text);
    std::string phrase;
    for (const auto& t : tokens) {
        if (!phrase.empty()) phrase += " ";
        phrase += t;
    }

    std::string sentence = first_sentence(ctx.task.text);
    if (sentence.empty()) sentence = ctx.task.text;
    if (sentence.back() != '.' && sentence.back() != '!' && sentence.back() != '?') {
        sentence += ".";
    }
    std::string hint_phrase = phrase.size() > 120 ? phrase.substr(0, 120) : phrase;
    fm.description = sentence + " Activates for requests like \"" + hint_phrase + "\".";

    // Top 3 bigrams by frequency (first occurrence breaks ties), then the
    // full phrase.
    std::map<std::string, std::pair<std::size_t, std::size_t>> bigrams; // text -> {count, first}
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        std::string bigram = tokens[i] + " " + tokens[i + 1];
        auto [it, inserted] = bigrams.try_emplace(bigram, std::make_pair(0u, i));
        it->second.first += 1;
    }
    std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> ranked(
        bigrams.begin(), bigrams.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second.first != b.second.first) return a.second.first > b.second.first;
        return a.second.second < b.second.second;
    });
    for (std::size_t i = 0; i < ranked.size() && i < 3; ++i) {
        push_unique(fm.trigger, ranked[i].first);
    }
    push_unique(fm.trigger, phrase);

    fm.dependencies = detect_imports(ctx.candidate.source_excerpt);
    return fm;
}

bool template_registered(const std::string& template_id) {
    auto ids = registered_templates();
    return std::find(ids.begin(), ids.end(), template_id) != ids.end();
}

std::vector<std::string> registered_templates() {
    return {"default", "workflow"};
}

std::string TemplateDrafter::draft(const DraftContext& ctx) const {
    std::ostringstream os;
    os << "Guidance for: " << text::trim(ctx.task.text) << "\n\n";

    os << "## Workflow\n\n";
    auto steps = workflow_steps(ctx.candidate);
    if (steps.empty()) {
        steps = {
            "TODO: describe how to prepare the inputs for this procedure.",
            "TODO: describe the core transformation the source performs.",
            "TODO: describe how to verify and hand off the result.",
        };
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
        os << (i + 1) << ". " << steps[i] << "\n";
    }
    os << "\nAt each decision point, prefer the branch that keeps intermediate "
          "artifacts reproducible; stop and reassess when an assumption about the "
          "input breaks.\n\n";

    os << "## Error Handling\n\n";
    auto excerpt_tokens = text::token_set(ctx.candidate.source_excerpt);
    if (excerpt_tokens.count("try") || excerpt_tokens.count("except") ||
        excerpt_tokens.count("catch")) {
        os << "- Keep the structured recovery paths from the source: retry transient "
              "failures once, then surface the original error with context.\n";
    } else {
        os << "- TODO: document the failure modes observed in practice and the "
              "recovery step for each.\n";
    }
    os << "- Validate inputs before the first side effect; fail fast on "
          "malformed arguments.\n\n";

    os << "## Best Practices\n\n";
    os << "- Keep runs deterministic: pin versions of the declared dependencies "
          "and avoid machine-specific paths.\n";
    os << "- Emit progress on standard error so standard output stays "
          "machine-readable.\n";
    os << "- Record enough context with each artifact to reproduce it later.\n\n";

    os << "## Integration Patterns\n\n";
    os << "- Upstream: accept the task parameters as explicit arguments rather "
          "than environment state.\n";
    os << "- Downstream: write results to the caller-provided output directory "
          "so composed skills can chain.\n";
    return os.str();
}

std::string draft_instructions(const DraftContext& ctx, const InstructionDrafter& drafter) {
    if (!template_registered(ctx.template_id)) {
        throw Error(Errc::TemplateNotFound, ctx.template_id);
    }
    try {
        return drafter.draft(ctx);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(Errc::DrafterFailure, e.what());
    }
}

std::vector<skillmd::ResourceRef> bundle_assets(const identify::CandidateModule& candidate,
                                                const repo::RepoMap& repo,
                                                SanitizationLog* log) {
    std::string file_path = candidate.module_id.substr(0, candidate.module_id.find("::"));
    const repo::FileEntry* primary = nullptr;
    for (const auto& f : repo.files) {
        if (f.path == file_path) { primary = &f; break; }
    }
    if (!primary) throw Error(Errc::MissingSourceFile, file_path);

    auto dirname = [](const std::string& p) {
        auto slash = p.find_last_of('/');
        return slash == std::string::npos ? std::string() : p.substr(0, slash);
    };
    auto basename = [](const std::string& p) {
        auto slash = p.find_last_of('/');
        return slash == std::string::npos ? p : p.substr(slash + 1);
    };

    std::vector<const repo::FileEntry*> members = {primary};
    std::string dir = dirname(file_path);
    for (const auto& f : repo.files) {
        if (f.path == file_path || dirname(f.path) != dir) continue;
        if (f.role == repo::FileRole::Documentation || f.role == repo::FileRole::Configuration) {
            members.push_back(&f);
        }
    }

    std::map<std::string, std::size_t> used; // subdir/name -> collision counter
    std::vector<skillmd::ResourceRef> refs;
    for (const repo::FileEntry* file : members) {
        std::string subdir;
        skillmd::ResourceKind kind;
        switch (file->role) {
            case repo::FileRole::Documentation:
                subdir = "references/";
                kind = skillmd::ResourceKind::Reference;
                break;
            case repo::FileRole::Configuration:
                subdir = "templates/";
                kind = skillmd::ResourceKind::Template;
                break;
            case repo::FileRole::Asset:
                continue; // binaries are not bundled
            default:
                subdir = "scripts/";
                kind = skillmd::ResourceKind::Script;
                break;
        }

        std::ifstream in(std::filesystem::path(repo.root) / file->path, std::ios::binary);
        if (!in) throw Error(Errc::MissingSourceFile, file->path);
        std::ostringstream content;
        content << in.rdbuf();

        auto [clean, file_log] = sanitize_content(content.str());
        if (log) {
            for (auto& r : file_log.redactions) {
                r.location = file->path + " " + r.location;
                log->redactions.push_back(std::move(r));
            }
        }

        std::string name = basename(file->path);
        std::string key = subdir + name;
        std::size_t n = ++used[key];
        if (n > 1) {
            auto dot = name.find_last_of('.');
            if (dot == std::string::npos) {
                name += "-" + std::to_string(n);
            } else {
                name = name.substr(0, dot) + "-" + std::to_string(n) + name.substr(dot);
            }
        }

        refs.push_back({subdir + name, kind, std::move(clean)});
    }
    return refs;
}

skillmd::SkillArtifact assemble_skill(const DraftContext& ctx, const InstructionDrafter& drafter,
                                      SanitizationLog* log) {
    skillmd::SkillArtifact artifact;
    artifact.frontmatter = synthesize_frontmatter(ctx);

    auto [body, body_log] = sanitize_content(draft_instructions(ctx, drafter));
    if (log) {
        for (auto& r : body_log.redactions) {
            r.location = "instructions " + r.location;
            log->redactions.push_back(std::move(r));
        }
    }
    artifact.instructions = body;
    artifact.resources = bundle_assets(ctx.candidate, ctx.repo, log);
    return artifact;
}

} // namespace skillforge::synth
