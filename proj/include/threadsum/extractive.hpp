#pragma once
// Non-neural extractive summarizers: Lead-1, Lead-1-Email, TextRank and
// the greedy ROUGE-1 oracle.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "threadsum/model.hpp"

namespace threadsum {

struct SentenceRef {
    int email_ordinal = 0;     // 0 = thread subject, 1..n = emails
    int sentence_ordinal = 0;  // position within the email
    std::string text;
};

// Sentence universe of a thread: subject first, then each email's
// sentences in order.
struct SentenceIndex {
    std::vector<SentenceRef> sentences;

    static SentenceIndex from_thread(const EmailThread& thread);
    bool empty() const { return sentences.empty(); }
    std::size_t size() const { return sentences.size(); }
};

struct ExtractiveSummary {
    std::vector<std::size_t> selected;  // strictly increasing positions
    std::string text;                   // selected sentences joined by spaces
};

// Splits on '.', '!', '?' followed by whitespace and an uppercase letter
// or digit, and on newlines. Never splits inside an anonymization
// placeholder.
std::vector<std::string> split_sentences(std::string_view textv);

ExtractiveSummary lead_1(const SentenceIndex& index);
ExtractiveSummary lead_1_email(const SentenceIndex& index);

// Lexical-overlap TextRank; keeps ceil(ratio * N) sentences.
ExtractiveSummary textrank(const SentenceIndex& index, double ratio);

// PageRank scores of the sentence graph (damping 0.85, tol 1e-6, max 100
// iterations). Exposed for tests; scores sum to 1.
std::vector<double> textrank_scores(const SentenceIndex& index);

// Greedy selection maximizing ROUGE-1 F1 against the reference; stops
// when no sentence improves the score. The exhaustive flag enumerates
// all subsets (only permitted for indices of at most 15 sentences).
ExtractiveSummary ext_oracle(const SentenceIndex& index, const std::string& reference,
                             bool exhaustive = false);

}  // namespace threadsum
