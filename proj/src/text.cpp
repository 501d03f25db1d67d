#include "threadsum/text.hpp"

#include <algorithm>
#include <cctype>

namespace threadsum::text {

std::vector<std::string> whitespace_tokens(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.emplace_back(s.substr(start, i - start));
    }
    return out;
}

std::size_t word_count(std::string_view s) {
    std::size_t count = 0;
    bool in_word = false;
    for (char c : s) {
        bool ws = std::isspace(static_cast<unsigned char>(c));
        if (!ws && !in_word) ++count;
        in_word = !ws;
    }
    return count;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(c);
        }
    }
    return out;
}

double jaccard_similarity(std::string_view a, std::string_view b) {
    std::unordered_set<std::string> sa;
    std::unordered_set<std::string> sb;
    for (auto& t : whitespace_tokens(a)) sa.insert(to_lower(t));
    for (auto& t : whitespace_tokens(b)) sb.insert(to_lower(t));
    if (sa.empty() && sb.empty()) return 1.0;
    std::size_t inter = 0;
    for (const auto& t : sa)
        if (sb.count(t)) ++inter;
    std::size_t uni = sa.size() + sb.size() - inter;
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

const std::unordered_set<std::string>& english_stopwords() {
    static const std::unordered_set<std::string> words = {
        "a",    "an",   "and",  "are",   "as",    "at",   "be",    "but",  "by",   "can",
        "do",   "for",  "from", "had",   "has",   "have", "he",    "her",  "his",  "i",
        "if",   "in",   "is",   "it",    "its",   "me",   "my",    "no",   "not",  "of",
        "on",   "or",   "our",  "she",   "so",    "that", "the",   "their", "them", "then",
        "there", "they", "this", "to",   "up",    "us",   "was",   "we",   "were", "what",
        "when", "which", "who",  "will", "with",  "would", "you",  "your", "all",  "about",
        "also", "am",   "been", "did",   "get",   "got",  "how",   "just", "like", "more",
        "out",  "over", "please", "than", "thanks", "could", "should", "any", "some", "one"};
    return words;
}

}  // namespace threadsum::text
