#include "skillforge/text_util.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace skillforge::text {

std::vector<std::string> tokenize(std::string_view input) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : input) {
        if (std::isalnum(c) && c < 0x80) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::set<std::string> token_set(std::string_view input) {
    auto tokens = tokenize(input);
    return {tokens.begin(), tokens.end()};
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() || b.empty()) return 0.0;
    std::size_t common = 0;
    for (const auto& t : a) {
        if (b.count(t)) ++common;
    }
    std::size_t total = a.size() + b.size() - common;
    return static_cast<double>(common) / static_cast<double>(total);
}

std::string to_lower(std::string_view input) {
    std::string out(input);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view input) {
    std::size_t begin = 0;
    std::size_t end = input.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(input[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(input[end - 1]))) --end;
    return std::string(input.substr(begin, end - begin));
}

std::vector<std::string> split_lines(std::string_view input) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= input.size()) {
        std::size_t nl = input.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.emplace_back(input.substr(start));
            break;
        }
        lines.emplace_back(input.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

bool is_stopword(const std::string& token) {
    static const std::set<std::string> kStopwords = {
        "a",   "an",  "and",  "are", "as",   "at",   "be",  "by",   "for", "from",
        "in",  "is",  "it",   "of",  "on",   "or",   "the", "this", "to",  "with",
        "you", "your", "when", "then", "that", "these", "its",
    };
    return kStopwords.count(token) > 0;
}

bool token_subsequence(std::string_view needle, std::string_view haystack) {
    auto n = tokenize(needle);
    auto h = tokenize(haystack);
    if (n.empty() || n.size() > h.size()) return false;
    for (std::size_t i = 0; i + n.size() <= h.size(); ++i) {
        if (std::equal(n.begin(), n.end(), h.begin() + i)) return true;
    }
    return false;
}

uint64_t fnv1a64(std::string_view data) {
    uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

} // namespace skillforge::text
