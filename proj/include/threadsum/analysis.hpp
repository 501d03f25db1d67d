#pragma once
// Corpus statistics, paired bootstrap significance, agreement and
// correlation statistics, length-binned score reports.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "threadsum/model.hpp"

namespace threadsum {

struct CorpusStats {
    std::size_t num_docs = 0;
    double avg_doc_len = 0.0;      // words, subject + bodies
    double avg_turns = 0.0;        // emails per thread
    double avg_turn_len = 0.0;     // words per email body
    double avg_summary_len = 0.0;  // words, for the chosen target
    double ext_oracle_r1 = 0.0;    // mean oracle R1 F1, x100
};

enum class SummaryTarget { short_summary, long_summary };

CorpusStats corpus_stats(const std::vector<LabeledThread>& dataset, SummaryTarget target);

// One-sided paired bootstrap for "b improves over a":
// p = (#resamples with mean delta <= 0 + 1) / (resamples + 1).
double bootstrap_significance(const std::vector<double>& a, const std::vector<double>& b,
                              std::size_t resamples = 100000, std::uint64_t seed = 13);

// Product-moment correlation; requires nonzero variance on both sides.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Raters x items grid; missing cells are nullopt.
struct RatingsMatrix {
    std::vector<std::vector<std::optional<double>>> values;  // [rater][item]

    std::size_t raters() const { return values.size(); }
    std::size_t items() const { return values.empty() ? 0 : values.front().size(); }
};

enum class AgreementMetric { interval, ordinal, nominal };

double krippendorff_alpha(const RatingsMatrix& ratings,
                          AgreementMetric metric = AgreementMetric::interval);

// 5-point Likert to 3 classes: {1,2} -> 1 (low), {3} -> 2 (mid),
// {4,5} -> 3 (high).
int collapse_rating(int value);
std::vector<int> collapse_ratings(const std::vector<int>& values);

// -1 when the base system is better, 1 when worse, 0 within tie_eps.
int pairwise_rank(double score_base, double score_other, double tie_eps);

// Mean score per email-count bin; bins without threads are absent.
std::map<std::size_t, double> bin_by_thread_length(
    const std::map<std::string, double>& scores_by_thread_id,
    const std::vector<LabeledThread>& threads);

}  // namespace threadsum
