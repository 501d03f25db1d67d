#pragma once
// PII scrubbing with fixed placeholder tokens, plus sensitive-keyword
// thread dropping.

#include <optional>
#include <string>
#include <vector>

#include "threadsum/model.hpp"

namespace threadsum {

struct RedactionRule {
    std::string name;
    std::string pattern;      // ECMAScript regex source
    std::string placeholder;  // exact replacement token
};

// Rules in application order: email address, URL, IP address, local
// path, phone number, physical address, long digit runs.
const std::vector<RedactionRule>& default_redaction_rules();

std::vector<std::string> default_sensitive_keywords();

// Applies the rule set in order. Idempotent: the placeholders themselves
// redact to themselves.
std::string anonymize_text(const std::string& text,
                           const std::vector<RedactionRule>& rules = default_redaction_rules());

// Truncates sender names to their first token and anonymizes all
// subjects and bodies. Returns nullopt when any body or subject contains
// a sensitive keyword (case-insensitive word match).
std::optional<EmailThread> scrub_thread(
    const EmailThread& thread,
    const std::vector<std::string>& keywords = default_sensitive_keywords(),
    const std::vector<RedactionRule>& rules = default_redaction_rules());

// True when text contains any keyword as a whole word, case-insensitive.
bool contains_sensitive_keyword(const std::string& text, const std::vector<std::string>& keywords);

}  // namespace threadsum
