#pragma once
// Thread reconstruction: subject grouping, timestamp sort, dedup,
// participant-chain cut, repeated-content filter, quality constraints.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "threadsum/model.hpp"

namespace threadsum {

struct ThreadBuildConfig {
    std::vector<std::string> reply_tags = {"re", "fw", "fwd", "aw", "wg"};
    std::size_t min_emails = 3;
    std::size_t max_emails = 10;
    std::size_t min_email_words = 5;    // exclusive bound
    std::size_t max_email_words = 200;  // exclusive bound
    std::size_t min_total_words = 30;   // exclusive bound
    std::size_t max_total_words = 1000; // exclusive bound
    double dup_jaccard = 0.9;
    double non_ascii_ratio = 0.2;
    double stopword_min_rate = 0.02;
    std::size_t stopword_min_tokens = 50;
};

struct BuildReport {
    std::size_t input_emails = 0;
    std::size_t groups_formed = 0;
    std::size_t emails_deduped = 0;
    std::size_t threads_cut = 0;  // threads that lost a tail to the chain rule
    std::map<std::string, std::size_t> threads_dropped_by_constraint;
    std::size_t threads_out = 0;
};

// Strips leading reply/forward tags repeatedly, collapses whitespace,
// lowercases.
std::string normalize_subject(std::string_view subject,
                              const std::vector<std::string>& tags = ThreadBuildConfig{}.reply_tags);

// Steps 1-5: group, sort, dedup, chain-cut, repeated-content filter.
// Output threads are sorted by thread_id.
std::pair<std::vector<EmailThread>, BuildReport> build_threads(
    const std::vector<Email>& emails, const ThreadBuildConfig& config = {});

struct ConstraintResult {
    bool accepted = false;
    std::string failed_constraint;  // empty when accepted
};

// The five quality constraints, checked in fixed order: email-count,
// email-words, total-words, language, first-subject-tag.
ConstraintResult apply_constraints(const EmailThread& thread,
                                   const ThreadBuildConfig& config = {});

// build_threads followed by apply_constraints, with drops recorded in
// the report. This is what the build-threads CLI runs.
std::pair<std::vector<EmailThread>, BuildReport> build_dataset(
    const std::vector<Email>& emails, const ThreadBuildConfig& config = {});

}  // namespace threadsum
