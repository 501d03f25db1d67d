#pragma once
// ROUGE-1/2/L/Lsum precision/recall/F1.

#include <string>
#include <string_view>
#include <vector>

namespace threadsum {

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Lowercased maximal runs of ASCII letters/digits; everything else is a
// separator. Porter stemming optional, off by default.
std::vector<std::string> tokenize(std::string_view textv, bool stem = false);

// Clipped n-gram overlap. Empty candidate or reference scores zero.
RougeScore rouge_n(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference, int n);

RougeScore rouge_l(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference);

// Summary-level ROUGE-L: per reference sentence, the union over
// candidate sentences of LCS-matched reference token positions.
RougeScore rouge_l_sum(std::string_view candidate_text, std::string_view reference_text,
                       bool stem = false);

// Convenience: R1 F1 over raw texts, used by the greedy oracle.
double rouge_1_f1(std::string_view candidate_text, std::string_view reference_text);

std::string porter_stem(std::string word);

}  // namespace threadsum
