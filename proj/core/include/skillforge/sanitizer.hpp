#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace skillforge::synth {

struct Redaction {
    std::string pattern_id;
    std::string location; // "line N"
    std::string replacement;

    bool operator==(const Redaction&) const = default;
};

struct SanitizationLog {
    std::vector<Redaction> redactions;

    std::size_t count() const { return redactions.size(); }
    std::string to_json_string(int indent = 2) const;
};

// Applies the redaction rule set in order:
//   credential-literal    quoted strings with key-like prefixes
//                         (sk-, ghp_, AKIA, bearer )          -> {{API_KEY}}
//   credential-assignment quoted values assigned to names containing
//                         key/token/secret/password            -> {{API_KEY}}
//   credential-url        URLs with embedded user:pass         -> {{URL_CREDENTIAL}}
//   absolute-path         multi-segment absolute paths, keeping the final
//                         segment                              -> {{ABS_PATH}}/<last>
// Values that are already {{PLACEHOLDER}} tokens are left alone, which makes
// the pass idempotent: sanitizing its own output records zero redactions.
std::pair<std::string, SanitizationLog> sanitize_content(std::string_view input);

// Number of rule matches without rewriting; used for the generalizability
// criterion score.
std::size_t count_sanitizer_matches(std::string_view input);

} // namespace skillforge::synth
