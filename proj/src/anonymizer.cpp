#include "threadsum/anonymizer.hpp"

#include <regex>

#include "threadsum/text.hpp"

namespace threadsum {

// Patterns whose source starts with "(^|" keep the matched prefix
// character: the replacement becomes "$1" + placeholder.
const std::vector<RedactionRule>& default_redaction_rules() {
    static const std::vector<RedactionRule> rules = {
        {"email-address", R"([A-Za-z0-9._%+\-]+@[A-Za-z0-9.\-]+\.[A-Za-z]{2,})",
         "USERNAME@DOMAIN.COM"},
        {"url", R"((?:[Hh][Tt][Tt][Pp][Ss]?|[Ff][Tt][Pp])://[^\s]*[^\s.,;:!?)\]"'])",
         "HTTP://LINK"},
        {"ip-address", R"(\b(?:\d{1,3}\.){3}\d{1,3}\b)", "IPADDRESS"},
        {"local-path",
         R"((^|[\s"'(=,])((?:[A-Za-z]:)?(?:[/\\][A-Za-z0-9_.~+\-]+){2,}[/\\]?))", "PATH"},
        {"phone-number", R"(\+?\d(?:[\s().\-]{0,2}\d){6,})", "PHONENUMBER"},
        {"physical-address",
         R"(\b\d+\s+(?:[A-Z][A-Za-z]*\.?\s+){1,4}(?:Street|St|Avenue|Ave|Road|Rd|Drive|Dr|Lane|Ln|Boulevard|Blvd|Court|Ct|Way|Place|Pl)\b\.?)",
         "ADDRESS"},
        {"sensitive-number", R"(\d{5,})", "NUMBER"},
    };
    return rules;
}

std::vector<std::string> default_sensitive_keywords() {
    return {"password", "pwd", "passcode", "confidential", "ssn"};
}

std::string anonymize_text(const std::string& textv, const std::vector<RedactionRule>& rules) {
    std::string out = textv;
    for (const RedactionRule& rule : rules) {
        std::regex re(rule.pattern);
        bool keep_prefix = rule.pattern.rfind("(^|", 0) == 0;
        std::string replacement = keep_prefix ? "$1" + rule.placeholder : rule.placeholder;
        out = std::regex_replace(out, re, replacement);
    }
    return out;
}

bool contains_sensitive_keyword(const std::string& textv,
                                const std::vector<std::string>& keywords) {
    if (keywords.empty()) return false;
    std::string pattern = "\\b(?:";
    for (std::size_t i = 0; i < keywords.size(); ++i) {
        if (i) pattern += "|";
        pattern += keywords[i];
    }
    pattern += ")\\b";
    std::regex re(pattern, std::regex::icase);
    return std::regex_search(textv, re);
}

namespace {

std::string first_token(const std::string& name) {
    auto tokens = text::whitespace_tokens(name);
    return tokens.empty() ? std::string{} : tokens.front();
}

}  // namespace

std::optional<EmailThread> scrub_thread(const EmailThread& thread,
                                        const std::vector<std::string>& keywords,
                                        const std::vector<RedactionRule>& rules) {
    for (const Email& e : thread.emails)
        if (contains_sensitive_keyword(e.subject, keywords) ||
            contains_sensitive_keyword(e.body, keywords))
            return std::nullopt;

    EmailThread out = thread;
    for (Email& e : out.emails) {
        e.sender_name = first_token(e.sender_name);
        e.subject = anonymize_text(e.subject, rules);
        e.body = anonymize_text(e.body, rules);
    }
    return out;
}

}  // namespace threadsum
