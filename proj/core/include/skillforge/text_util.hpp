#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace skillforge::text {

// Maximal runs of [a-z0-9] after ASCII lowercasing. Everything else,
// including non-ASCII bytes, acts as a delimiter.
std::vector<std::string> tokenize(std::string_view input);

std::set<std::string> token_set(std::string_view input);

// |A ∩ B| / |A ∪ B|; 0.0 when either set is empty.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

std::string to_lower(std::string_view input);

std::string trim(std::string_view input);

std::vector<std::string> split_lines(std::string_view input);

bool is_stopword(const std::string& token);

// Tokens of `needle` appearing as a contiguous run inside the tokens of
// `haystack`. Empty needle never matches.
bool token_subsequence(std::string_view needle, std::string_view haystack);

uint64_t fnv1a64(std::string_view data);

} // namespace skillforge::text
