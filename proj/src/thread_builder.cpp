#include "threadsum/thread_builder.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

#include "threadsum/text.hpp"

namespace threadsum {

namespace {

bool is_ws(char c) { return std::isspace(static_cast<unsigned char>(c)); }

// Strips leading reply/forward tags repeatedly. Tag must be followed by
// ':' or whitespace (or end of string) to match.
std::string strip_leading_tags(std::string_view subject, const std::vector<std::string>& tags) {
    std::string s = text::trim(subject);
    bool changed = true;
    while (changed) {
        changed = false;
        std::string lower = text::to_lower(s);
        for (const std::string& tag : tags) {
            if (lower.size() < tag.size() || lower.compare(0, tag.size(), tag) != 0) continue;
            std::size_t pos = tag.size();
            bool boundary = pos == s.size() || s[pos] == ':' || is_ws(s[pos]);
            if (!boundary) continue;
            if (pos < s.size() && s[pos] == ':') ++pos;
            while (pos < s.size() && is_ws(s[pos])) ++pos;
            s = s.substr(pos);
            changed = true;
            break;
        }
    }
    return s;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string make_thread_id(std::string_view normalized_subject) {
    static const char* hex = "0123456789abcdef";
    std::uint64_t h = fnv1a(normalized_subject);
    std::string id = "t";
    for (int shift = 60; shift >= 0; shift -= 4) id.push_back(hex[(h >> shift) & 0xF]);
    return id;
}

std::unordered_set<std::string> participants(const Email& e) {
    std::unordered_set<std::string> out;
    out.insert(text::to_lower(e.sender));
    for (const std::string& r : e.recipients) out.insert(text::to_lower(r));
    return out;
}

bool all_bodies_near_identical(const std::vector<Email>& emails, double threshold) {
    if (emails.size() < 2) return false;
    for (std::size_t i = 0; i < emails.size(); ++i)
        for (std::size_t j = i + 1; j < emails.size(); ++j)
            if (text::jaccard_similarity(emails[i].body, emails[j].body) < threshold)
                return false;
    return true;
}

bool token_has_letter(const std::string& t) {
    for (unsigned char c : t)
        if (std::isalpha(c) || c >= 0x80) return true;
    return false;
}

bool token_has_non_ascii(const std::string& t) {
    for (unsigned char c : t)
        if (c >= 0x80) return true;
    return false;
}

std::string alnum_lower(const std::string& t) {
    std::string out;
    for (unsigned char c : t)
        if (std::isalnum(c)) out.push_back(static_cast<char>(std::tolower(c)));
    return out;
}

bool looks_english(const EmailThread& thread, const ThreadBuildConfig& cfg) {
    std::vector<std::string> tokens;
    for (const Email& e : thread.emails)
        for (auto& t : text::whitespace_tokens(e.body)) tokens.push_back(t);

    std::size_t alpha = 0;
    std::size_t non_ascii = 0;
    for (const auto& t : tokens) {
        if (!token_has_letter(t)) continue;
        ++alpha;
        if (token_has_non_ascii(t)) ++non_ascii;
    }
    if (alpha > 0 &&
        static_cast<double>(non_ascii) / static_cast<double>(alpha) > cfg.non_ascii_ratio)
        return false;

    if (tokens.size() >= cfg.stopword_min_tokens) {
        const auto& stops = text::english_stopwords();
        std::size_t hits = 0;
        for (const auto& t : tokens)
            if (stops.count(alnum_lower(t))) ++hits;
        double rate = static_cast<double>(hits) / static_cast<double>(tokens.size());
        if (rate < cfg.stopword_min_rate) return false;
    }
    return true;
}

}  // namespace

std::string normalize_subject(std::string_view subject, const std::vector<std::string>& tags) {
    return text::to_lower(text::collapse_whitespace(strip_leading_tags(subject, tags)));
}

std::pair<std::vector<EmailThread>, BuildReport> build_threads(const std::vector<Email>& emails,
                                                               const ThreadBuildConfig& config) {
    BuildReport report;
    report.input_emails = emails.size();

    // Group by normalized subject, preserving first-seen order for the
    // stable timestamp tie-break.
    std::unordered_map<std::string, std::vector<Email>> groups;
    std::vector<std::string> group_order;
    for (const Email& e : emails) {
        std::string key = normalize_subject(e.subject, config.reply_tags);
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) group_order.push_back(key);
        it->second.push_back(e);
    }
    report.groups_formed = groups.size();

    std::vector<EmailThread> threads;
    for (const std::string& key : group_order) {
        std::vector<Email>& group = groups[key];
        std::stable_sort(group.begin(), group.end(),
                         [](const Email& a, const Email& b) { return a.timestamp < b.timestamp; });

        // Dedup on (sender address lowercased, timestamp), keeping the
        // first occurrence.
        std::vector<Email> deduped;
        std::unordered_set<std::string> seen;
        for (Email& e : group) {
            std::string k = text::to_lower(e.sender) + "\x1f" + std::to_string(e.timestamp);
            if (seen.insert(k).second)
                deduped.push_back(std::move(e));
            else
                ++report.emails_deduped;
        }

        // Participant-chain cut: keep the longest prefix in which every
        // email after the first shares a participant with the ones kept
        // so far; the remainder is discarded.
        std::vector<Email> kept;
        std::unordered_set<std::string> chain;
        for (Email& e : deduped) {
            auto parts = participants(e);
            if (!kept.empty()) {
                bool connected = std::any_of(parts.begin(), parts.end(),
                                             [&](const std::string& p) { return chain.count(p); });
                if (!connected) {
                    ++report.threads_cut;
                    break;
                }
            }
            chain.insert(parts.begin(), parts.end());
            kept.push_back(std::move(e));
        }
        if (kept.empty()) continue;

        if (all_bodies_near_identical(kept, config.dup_jaccard)) {
            ++report.threads_dropped_by_constraint["repeated-content"];
            continue;
        }

        EmailThread t;
        t.normalized_subject = key;
        t.thread_id = make_thread_id(key);
        t.emails = std::move(kept);
        threads.push_back(std::move(t));
    }

    std::sort(threads.begin(), threads.end(),
              [](const EmailThread& a, const EmailThread& b) { return a.thread_id < b.thread_id; });
    report.threads_out = threads.size();
    return {std::move(threads), std::move(report)};
}

ConstraintResult apply_constraints(const EmailThread& thread, const ThreadBuildConfig& config) {
    if (thread.emails.size() < config.min_emails || thread.emails.size() > config.max_emails)
        return {false, "email-count"};

    std::size_t total = 0;
    for (const Email& e : thread.emails) {
        std::size_t words = text::word_count(e.body);
        if (words <= config.min_email_words || words >= config.max_email_words)
            return {false, "email-words"};
        total += words;
    }
    if (total <= config.min_total_words || total >= config.max_total_words)
        return {false, "total-words"};

    if (!looks_english(thread, config)) return {false, "language"};

    const std::string& first_subject = thread.emails.front().subject;
    if (strip_leading_tags(first_subject, config.reply_tags) != text::trim(first_subject))
        return {false, "first-subject-tag"};

    return {true, ""};
}

std::pair<std::vector<EmailThread>, BuildReport> build_dataset(const std::vector<Email>& emails,
                                                               const ThreadBuildConfig& config) {
    auto [threads, report] = build_threads(emails, config);
    std::vector<EmailThread> accepted;
    for (EmailThread& t : threads) {
        ConstraintResult r = apply_constraints(t, config);
        if (r.accepted)
            accepted.push_back(std::move(t));
        else
            ++report.threads_dropped_by_constraint[r.failed_constraint];
    }
    report.threads_out = accepted.size();
    return {std::move(accepted), std::move(report)};
}

}  // namespace threadsum
