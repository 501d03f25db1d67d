#pragma once
// Canonical data types and the JSONL interchange format.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace threadsum {

struct Email {
    std::string sender;                   // address, nonempty
    std::string sender_name;              // display name, may be empty
    std::vector<std::string> recipients;  // to + cc merged
    std::int64_t timestamp = 0;           // seconds since epoch, UTC
    std::string subject;
    std::string body;

    bool operator==(const Email&) const = default;
};

struct EmailThread {
    std::string thread_id;
    std::string normalized_subject;
    std::vector<Email> emails;  // sorted by timestamp, non-decreasing

    bool operator==(const EmailThread&) const = default;
};

struct SummaryPair {
    std::string short_text;  // target < 30 words
    std::string long_text;   // target < 100 words

    bool operator==(const SummaryPair&) const = default;
};

enum class Split { train, dev, test, unlabeled };

std::string to_string(Split s);
Split split_from_string(std::string_view s);

struct LabeledThread {
    EmailThread thread;
    std::optional<SummaryPair> reference;  // present iff split != unlabeled
    Split split = Split::unlabeled;

    bool operator==(const LabeledThread&) const = default;
};

enum class CorpusFormat { jsonl, mbox_lite };

struct ParseStats {
    std::size_t records = 0;
    std::size_t skipped = 0;        // records missing sender or timestamp
    std::size_t invalid_bytes = 0;  // bytes replaced during UTF-8 cleanup
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Reads a flat email corpus. Records missing sender or timestamp are
// skipped and counted in stats.
std::vector<Email> parse_corpus(const std::filesystem::path& path, CorpusFormat format,
                                ParseStats* stats = nullptr);

// One JSON object per line, lines ordered by thread_id. Returns the
// number of records written.
std::size_t write_threads(std::vector<LabeledThread> threads, const std::filesystem::path& path);

std::vector<LabeledThread> read_threads(const std::filesystem::path& path);

// Single-record JSONL codec, exposed for tests and the CLI.
std::string thread_to_json_line(const LabeledThread& t);
LabeledThread thread_from_json_line(const std::string& line);

// Replaces invalid UTF-8 bytes with U+FFFD; adds the replacement count
// to *replaced when given.
std::string sanitize_utf8(std::string_view s, std::size_t* replaced = nullptr);

}  // namespace threadsum
