#pragma once
// Small text helpers shared by the thread builder, anonymizer and metrics.

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace threadsum::text {

// Maximal runs of non-whitespace characters.
std::vector<std::string> whitespace_tokens(std::string_view s);
std::size_t word_count(std::string_view s);

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

// Collapse internal whitespace runs to single spaces and trim the ends.
std::string collapse_whitespace(std::string_view s);

// Unigram Jaccard similarity over lowercased whitespace tokens.
double jaccard_similarity(std::string_view a, std::string_view b);

// Small built-in English stopword list (lowercase).
const std::unordered_set<std::string>& english_stopwords();

}  // namespace threadsum::text
