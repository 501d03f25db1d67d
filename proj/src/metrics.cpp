#include "threadsum/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "threadsum/extractive.hpp"

namespace threadsum {

namespace {

double f1_of(double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0.0; }

RougeScore make_score(double p, double r) { return {p, r, f1_of(p, r)}; }

// LCS table; lcs[i][j] = LCS length of a[0..i) and b[0..j).
std::vector<std::vector<int>> lcs_table(const std::vector<std::string>& a,
                                        const std::vector<std::string>& b) {
    std::vector<std::vector<int>> dp(a.size() + 1, std::vector<int>(b.size() + 1, 0));
    for (std::size_t i = 1; i <= a.size(); ++i)
        for (std::size_t j = 1; j <= b.size(); ++j)
            dp[i][j] = a[i - 1] == b[j - 1] ? dp[i - 1][j - 1] + 1
                                            : std::max(dp[i - 1][j], dp[i][j - 1]);
    return dp;
}

// Positions in `ref` matched by one LCS of (cand, ref).
std::vector<std::size_t> lcs_ref_positions(const std::vector<std::string>& cand,
                                           const std::vector<std::string>& ref) {
    auto dp = lcs_table(cand, ref);
    std::vector<std::size_t> positions;
    std::size_t i = cand.size();
    std::size_t j = ref.size();
    while (i > 0 && j > 0) {
        if (cand[i - 1] == ref[j - 1]) {
            positions.push_back(j - 1);
            --i;
            --j;
        } else if (dp[i - 1][j] >= dp[i][j - 1]) {
            --i;
        } else {
            --j;
        }
    }
    return positions;
}

}  // namespace

std::string porter_stem(std::string w) {
    // Porter (1980). Consonant/vowel classification treats 'y' after a
    // consonant as a vowel.
    if (w.size() <= 2) return w;

    auto is_vowel = [&](std::size_t i) {
        char c = w[i];
        if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return true;
        if (c == 'y') return i > 0 && !(w[i - 1] == 'a' || w[i - 1] == 'e' || w[i - 1] == 'i' ||
                                        w[i - 1] == 'o' || w[i - 1] == 'u' || w[i - 1] == 'y');
        return false;
    };
    auto measure = [&](std::size_t len) {
        int m = 0;
        bool prev_vowel = false;
        for (std::size_t i = 0; i < len; ++i) {
            bool v = is_vowel(i);
            if (!v && prev_vowel) ++m;
            prev_vowel = v;
        }
        return m;
    };
    auto has_vowel = [&](std::size_t len) {
        for (std::size_t i = 0; i < len; ++i)
            if (is_vowel(i)) return true;
        return false;
    };
    auto ends_with = [&](const char* suf) {
        std::size_t n = std::char_traits<char>::length(suf);
        return w.size() >= n && w.compare(w.size() - n, n, suf) == 0;
    };
    auto double_consonant = [&] {
        std::size_t n = w.size();
        return n >= 2 && w[n - 1] == w[n - 2] && !is_vowel(n - 1);
    };
    auto cvc = [&](std::size_t len) {
        if (len < 3) return false;
        if (is_vowel(len - 3) || !is_vowel(len - 2) || is_vowel(len - 1)) return false;
        char c = w[len - 1];
        return c != 'w' && c != 'x' && c != 'y';
    };
    auto replace_if = [&](const char* suf, const char* rep, int min_m) {
        std::size_t n = std::char_traits<char>::length(suf);
        if (!ends_with(suf)) return false;
        std::size_t stem = w.size() - n;
        if (measure(stem) > min_m - 1) w = w.substr(0, stem) + rep;
        return true;
    };

    // Step 1a
    if (ends_with("sses")) w = w.substr(0, w.size() - 2);
    else if (ends_with("ies")) w = w.substr(0, w.size() - 2);
    else if (!ends_with("ss") && ends_with("s")) w.pop_back();

    // Step 1b
    bool step1b_extra = false;
    if (ends_with("eed")) {
        if (measure(w.size() - 3) > 0) w.pop_back();
    } else if (ends_with("ed") && has_vowel(w.size() - 2)) {
        w = w.substr(0, w.size() - 2);
        step1b_extra = true;
    } else if (ends_with("ing") && has_vowel(w.size() - 3)) {
        w = w.substr(0, w.size() - 3);
        step1b_extra = true;
    }
    if (step1b_extra) {
        if (ends_with("at") || ends_with("bl") || ends_with("iz")) w.push_back('e');
        else if (double_consonant() && !ends_with("l") && !ends_with("s") && !ends_with("z"))
            w.pop_back();
        else if (measure(w.size()) == 1 && cvc(w.size())) w.push_back('e');
    }

    // Step 1c
    if (ends_with("y") && has_vowel(w.size() - 1)) w.back() = 'i';

    // Step 2
    static const std::pair<const char*, const char*> step2[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"}};
    for (auto& [suf, rep] : step2)
        if (replace_if(suf, rep, 1)) break;

    // Step 3
    static const std::pair<const char*, const char*> step3[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""}};
    for (auto& [suf, rep] : step3)
        if (replace_if(suf, rep, 1)) break;

    // Step 4
    static const char* step4[] = {"al",   "ance", "ence", "er",  "ic",  "able", "ible",
                                  "ant",  "ement", "ment", "ent", "ou",  "ism",  "ate",
                                  "iti",  "ous",  "ive",  "ize"};
    for (const char* suf : step4) {
        std::size_t n = std::char_traits<char>::length(suf);
        if (!ends_with(suf)) continue;
        std::size_t stem = w.size() - n;
        if (measure(stem) > 1) w = w.substr(0, stem);
        break;
    }
    if (ends_with("ion")) {
        std::size_t stem = w.size() - 3;
        if (measure(stem) > 1 && stem > 0 && (w[stem - 1] == 's' || w[stem - 1] == 't'))
            w = w.substr(0, stem);
    }

    // Step 5
    if (ends_with("e")) {
        std::size_t stem = w.size() - 1;
        int m = measure(stem);
        if (m > 1 || (m == 1 && !cvc(stem))) w.pop_back();
    }
    if (double_consonant() && w.back() == 'l' && measure(w.size()) > 1) w.pop_back();

    return w;
}

std::vector<std::string> tokenize(std::string_view textv, bool stem) {
    std::vector<std::string> out;
    std::string current;
    for (char c : textv) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!current.empty()) {
            out.push_back(stem ? porter_stem(current) : current);
            current.clear();
        }
    }
    if (!current.empty()) out.push_back(stem ? porter_stem(current) : current);
    return out;
}

RougeScore rouge_n(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference, int n) {
    if (n < 1) throw std::invalid_argument("rouge_n: n must be >= 1");
    auto ngrams = [n](const std::vector<std::string>& tokens) {
        std::unordered_map<std::string, int> counts;
        if (tokens.size() < static_cast<std::size_t>(n)) return counts;
        for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
            std::string key = tokens[i];
            for (int k = 1; k < n; ++k) key += "\x1f" + tokens[i + k];
            ++counts[key];
        }
        return counts;
    };
    auto cand = ngrams(candidate);
    auto ref = ngrams(reference);
    std::size_t cand_total = 0;
    std::size_t ref_total = 0;
    for (auto& [k, v] : cand) cand_total += v;
    for (auto& [k, v] : ref) ref_total += v;
    if (cand_total == 0 || ref_total == 0) return {};

    std::size_t overlap = 0;
    for (auto& [key, count] : cand) {
        auto it = ref.find(key);
        if (it != ref.end()) overlap += std::min(count, it->second);
    }
    double p = static_cast<double>(overlap) / static_cast<double>(cand_total);
    double r = static_cast<double>(overlap) / static_cast<double>(ref_total);
    return make_score(p, r);
}

RougeScore rouge_l(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference) {
    if (candidate.empty() || reference.empty()) return {};
    int l = lcs_table(candidate, reference)[candidate.size()][reference.size()];
    double p = static_cast<double>(l) / static_cast<double>(candidate.size());
    double r = static_cast<double>(l) / static_cast<double>(reference.size());
    return make_score(p, r);
}

RougeScore rouge_l_sum(std::string_view candidate_text, std::string_view reference_text,
                       bool stem) {
    std::vector<std::vector<std::string>> cand_sentences;
    std::vector<std::vector<std::string>> ref_sentences;
    std::size_t cand_total = 0;
    std::size_t ref_total = 0;
    for (auto& s : split_sentences(candidate_text)) {
        auto toks = tokenize(s, stem);
        cand_total += toks.size();
        if (!toks.empty()) cand_sentences.push_back(std::move(toks));
    }
    for (auto& s : split_sentences(reference_text)) {
        auto toks = tokenize(s, stem);
        ref_total += toks.size();
        if (!toks.empty()) ref_sentences.push_back(std::move(toks));
    }
    if (cand_total == 0 || ref_total == 0) return {};

    std::size_t matched = 0;
    for (const auto& ref : ref_sentences) {
        std::unordered_set<std::size_t> hit;
        for (const auto& cand : cand_sentences)
            for (std::size_t pos : lcs_ref_positions(cand, ref)) hit.insert(pos);
        matched += hit.size();
    }
    double p = static_cast<double>(matched) / static_cast<double>(cand_total);
    double r = static_cast<double>(matched) / static_cast<double>(ref_total);
    return make_score(p, r);
}

double rouge_1_f1(std::string_view candidate_text, std::string_view reference_text) {
    return rouge_n(tokenize(candidate_text), tokenize(reference_text), 1).f1;
}

}  // namespace threadsum
