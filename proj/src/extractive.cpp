#include "threadsum/extractive.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "threadsum/metrics.hpp"
#include "threadsum/text.hpp"

namespace threadsum {

namespace {

const char* kPlaceholders[] = {"USERNAME@DOMAIN.COM", "ADDRESS", "PHONENUMBER", "HTTP://LINK",
                               "IPADDRESS",           "PATH",    "NUMBER"};

std::vector<std::pair<std::size_t, std::size_t>> placeholder_spans(std::string_view s) {
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (const char* p : kPlaceholders) {
        std::size_t len = std::char_traits<char>::length(p);
        std::size_t pos = 0;
        while ((pos = s.find(p, pos)) != std::string_view::npos) {
            spans.emplace_back(pos, pos + len);
            pos += len;
        }
    }
    return spans;
}

std::string join_selected(const SentenceIndex& index, const std::vector<std::size_t>& selected) {
    std::string out;
    for (std::size_t pos : selected) {
        if (!out.empty()) out.push_back(' ');
        out += index.sentences[pos].text;
    }
    return out;
}

ExtractiveSummary make_summary(const SentenceIndex& index, std::vector<std::size_t> selected) {
    std::sort(selected.begin(), selected.end());
    ExtractiveSummary s;
    s.text = join_selected(index, selected);
    s.selected = std::move(selected);
    return s;
}

void require_nonempty(const SentenceIndex& index) {
    if (index.empty()) throw UsageError("empty sentence index");
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view textv) {
    auto spans = placeholder_spans(textv);
    auto inside_placeholder = [&](std::size_t i) {
        for (auto& [b, e] : spans)
            if (i >= b && i < e) return true;
        return false;
    };

    std::vector<std::string> out;
    std::size_t start = 0;
    auto emit = [&](std::size_t end) {
        std::string s = text::trim(textv.substr(start, end - start));
        if (!s.empty()) out.push_back(text::collapse_whitespace(s));
    };
    for (std::size_t i = 0; i < textv.size(); ++i) {
        char c = textv[i];
        if (c == '\n') {
            emit(i);
            start = i + 1;
            continue;
        }
        if ((c == '.' || c == '!' || c == '?') && !inside_placeholder(i)) {
            std::size_t j = i + 1;
            if (j >= textv.size() || !std::isspace(static_cast<unsigned char>(textv[j])))
                continue;
            while (j < textv.size() && std::isspace(static_cast<unsigned char>(textv[j]))) ++j;
            if (j < textv.size() && (std::isupper(static_cast<unsigned char>(textv[j])) ||
                                     std::isdigit(static_cast<unsigned char>(textv[j])))) {
                emit(i + 1);
                start = j;
                i = j - 1;
            }
        }
    }
    emit(textv.size());
    return out;
}

SentenceIndex SentenceIndex::from_thread(const EmailThread& thread) {
    SentenceIndex index;
    std::string subject = text::trim(thread.normalized_subject);
    if (!subject.empty()) index.sentences.push_back({0, 0, subject});
    int ordinal = 1;
    for (const Email& e : thread.emails) {
        int n = 0;
        for (auto& s : split_sentences(e.body)) index.sentences.push_back({ordinal, n++, s});
        ++ordinal;
    }
    return index;
}

ExtractiveSummary lead_1(const SentenceIndex& index) {
    require_nonempty(index);
    return make_summary(index, {0});
}

ExtractiveSummary lead_1_email(const SentenceIndex& index) {
    require_nonempty(index);
    std::vector<std::size_t> selected;
    for (std::size_t i = 0; i < index.size(); ++i) {
        const SentenceRef& s = index.sentences[i];
        if (s.email_ordinal == 0 || s.sentence_ordinal == 0) selected.push_back(i);
    }
    return make_summary(index, std::move(selected));
}

std::vector<double> textrank_scores(const SentenceIndex& index) {
    const std::size_t n = index.size();
    const double damping = 0.85;
    const double tolerance = 1e-6;
    const int max_iterations = 100;

    // Content tokens: metric tokens minus stopwords.
    const auto& stops = text::english_stopwords();
    std::vector<std::vector<std::string>> tokens(n);
    for (std::size_t i = 0; i < n; ++i)
        for (auto& t : tokenize(index.sentences[i].text))
            if (!stops.count(t)) tokens[i].push_back(t);

    auto log_len = [](std::size_t len) { return len <= 1 ? 1.0 : std::log(double(len)); };
    std::vector<double> weights(n * n, 0.0);
    std::vector<double> out_sum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::unordered_set<std::string> seti(tokens[i].begin(), tokens[i].end());
        for (std::size_t j = i + 1; j < n; ++j) {
            std::unordered_set<std::string> setj(tokens[j].begin(), tokens[j].end());
            std::size_t overlap = 0;
            for (const auto& t : seti)
                if (setj.count(t)) ++overlap;
            double w = overlap == 0
                           ? 0.0
                           : double(overlap) / (log_len(tokens[i].size()) + log_len(tokens[j].size()));
            weights[i * n + j] = w;
            weights[j * n + i] = w;
            out_sum[i] += w;
            out_sum[j] += w;
        }
    }

    std::vector<double> score(n, 1.0 / double(n));
    std::vector<double> next(n);
    for (int iter = 0; iter < max_iterations; ++iter) {
        double dangling = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (out_sum[j] == 0.0) dangling += score[j];
        for (std::size_t i = 0; i < n; ++i) {
            double incoming = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (out_sum[j] > 0.0 && weights[j * n + i] > 0.0)
                    incoming += weights[j * n + i] / out_sum[j] * score[j];
            next[i] = (1.0 - damping) / double(n) + damping * (incoming + dangling / double(n));
        }
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff += std::abs(next[i] - score[i]);
        score.swap(next);
        if (diff < tolerance) break;
    }
    return score;
}

ExtractiveSummary textrank(const SentenceIndex& index, double ratio) {
    require_nonempty(index);
    if (!(ratio > 0.0) || ratio > 1.0) throw UsageError("textrank: ratio must be in (0, 1]");

    std::vector<double> score = textrank_scores(index);
    const std::size_t n = index.size();
    std::size_t k = static_cast<std::size_t>(std::ceil(ratio * double(n)));
    k = std::clamp<std::size_t>(k, 1, n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return a < b;
    });
    order.resize(k);
    return make_summary(index, std::move(order));
}

ExtractiveSummary ext_oracle(const SentenceIndex& index, const std::string& reference,
                             bool exhaustive) {
    require_nonempty(index);
    if (reference.empty()) throw UsageError("ext_oracle: empty reference");
    const std::size_t n = index.size();

    if (exhaustive) {
        if (n > 15) throw UsageError("ext_oracle: exhaustive search limited to 15 sentences");
        double best = -1.0;
        std::uint32_t best_mask = 0;
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<std::size_t> selected;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) selected.push_back(i);
            double f1 = rouge_1_f1(join_selected(index, selected), reference);
            if (f1 > best) {
                best = f1;
                best_mask = mask;
            }
        }
        std::vector<std::size_t> selected;
        for (std::size_t i = 0; i < n; ++i)
            if (best_mask & (1u << i)) selected.push_back(i);
        return make_summary(index, std::move(selected));
    }

    std::vector<std::size_t> selected;
    std::vector<bool> used(n, false);
    double best = 0.0;
    while (selected.size() < n) {
        double round_best = best;
        std::size_t round_pick = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            auto candidate = selected;
            candidate.insert(std::upper_bound(candidate.begin(), candidate.end(), i), i);
            double f1 = rouge_1_f1(join_selected(index, candidate), reference);
            if (f1 > round_best + 1e-12) {
                round_best = f1;
                round_pick = i;
            }
        }
        if (round_pick == n) break;
        used[round_pick] = true;
        selected.insert(std::upper_bound(selected.begin(), selected.end(), round_pick),
                        round_pick);
        best = round_best;
        if (best >= 1.0) break;
    }
    if (selected.empty()) selected.push_back(0);  // nothing overlaps; fall back to lead
    return make_summary(index, std::move(selected));
}

}  // namespace threadsum
