#include "threadsum/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "threadsum/extractive.hpp"
#include "threadsum/metrics.hpp"
#include "threadsum/text.hpp"

namespace threadsum {

CorpusStats corpus_stats(const std::vector<LabeledThread>& dataset, SummaryTarget target) {
    if (dataset.empty()) throw UsageError("corpus_stats: empty dataset");

    CorpusStats stats;
    stats.num_docs = dataset.size();
    std::size_t total_doc_words = 0;
    std::size_t total_emails = 0;
    std::size_t total_body_words = 0;
    std::size_t total_summary_words = 0;
    std::size_t labeled = 0;
    double oracle_f1_sum = 0.0;

    for (const LabeledThread& t : dataset) {
        std::size_t body_words = 0;
        for (const Email& e : t.thread.emails) body_words += text::word_count(e.body);
        total_doc_words += text::word_count(t.thread.normalized_subject) + body_words;
        total_body_words += body_words;
        total_emails += t.thread.emails.size();

        if (t.reference) {
            const std::string& summary = target == SummaryTarget::short_summary
                                             ? t.reference->short_text
                                             : t.reference->long_text;
            total_summary_words += text::word_count(summary);
            ++labeled;
            SentenceIndex index = SentenceIndex::from_thread(t.thread);
            if (!index.empty() && !summary.empty())
                oracle_f1_sum += rouge_1_f1(ext_oracle(index, summary).text, summary);
        }
    }

    stats.avg_doc_len = double(total_doc_words) / double(dataset.size());
    stats.avg_turns = double(total_emails) / double(dataset.size());
    stats.avg_turn_len = total_emails ? double(total_body_words) / double(total_emails) : 0.0;
    stats.avg_summary_len = labeled ? double(total_summary_words) / double(labeled) : 0.0;
    stats.ext_oracle_r1 = labeled ? 100.0 * oracle_f1_sum / double(labeled) : 0.0;
    return stats;
}

double bootstrap_significance(const std::vector<double>& a, const std::vector<double>& b,
                              std::size_t resamples, std::uint64_t seed) {
    if (a.empty() || a.size() != b.size())
        throw UsageError("bootstrap_significance: inputs must be paired and nonempty");

    std::vector<double> deltas(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) deltas[i] = b[i] - a[i];

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, deltas.size() - 1);
    std::size_t not_better = 0;
    for (std::size_t r = 0; r < resamples; ++r) {
        double sum = 0.0;
        for (std::size_t i = 0; i < deltas.size(); ++i) sum += deltas[pick(rng)];
        if (sum <= 0.0) ++not_better;
    }
    return double(not_better + 1) / double(resamples + 1);
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw UsageError("pearson: need paired lists of length >= 2");
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(x.size());
    my /= double(y.size());
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw UsageError("pearson: zero variance");
    return sxy / std::sqrt(sxx * syy);
}

double krippendorff_alpha(const RatingsMatrix& ratings, AgreementMetric metric) {
    if (ratings.raters() < 2) throw UsageError("krippendorff_alpha: need >= 2 raters");

    // Units with at least two ratings, and the value domain.
    std::vector<std::vector<double>> units;
    for (std::size_t item = 0; item < ratings.items(); ++item) {
        std::vector<double> vals;
        for (std::size_t rater = 0; rater < ratings.raters(); ++rater)
            if (ratings.values[rater][item]) vals.push_back(*ratings.values[rater][item]);
        if (vals.size() >= 2) units.push_back(std::move(vals));
    }
    if (units.size() < 2) throw UsageError("krippendorff_alpha: need >= 2 items with >= 2 ratings");

    std::vector<double> domain;
    for (const auto& u : units)
        for (double v : u) domain.push_back(v);
    std::sort(domain.begin(), domain.end());
    domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
    auto value_index = [&](double v) {
        return std::size_t(std::lower_bound(domain.begin(), domain.end(), v) - domain.begin());
    };

    const std::size_t k = domain.size();
    std::vector<double> coincidence(k * k, 0.0);
    for (const auto& u : units) {
        double denom = double(u.size() - 1);
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = 0; j < u.size(); ++j)
                if (i != j) coincidence[value_index(u[i]) * k + value_index(u[j])] += 1.0 / denom;
    }
    std::vector<double> margin(k, 0.0);
    double n = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t d = 0; d < k; ++d) margin[c] += coincidence[c * k + d];
        n += margin[c];
    }

    auto difference = [&](std::size_t c, std::size_t d) -> double {
        if (c == d) return 0.0;
        switch (metric) {
            case AgreementMetric::nominal:
                return 1.0;
            case AgreementMetric::interval: {
                double diff = domain[c] - domain[d];
                return diff * diff;
            }
            case AgreementMetric::ordinal: {
                std::size_t lo = std::min(c, d);
                std::size_t hi = std::max(c, d);
                double span = 0.0;
                for (std::size_t g = lo; g <= hi; ++g) span += margin[g];
                span -= (margin[lo] + margin[hi]) / 2.0;
                return span * span;
            }
        }
        return 0.0;
    };

    double d_observed = 0.0;
    double d_expected = 0.0;
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t d = 0; d < k; ++d) {
            double delta = difference(c, d);
            d_observed += coincidence[c * k + d] * delta;
            d_expected += margin[c] * margin[d] * delta;
        }
    d_expected /= (n - 1.0);
    if (d_expected == 0.0) return 1.0;  // degenerate: a single value in the domain
    return 1.0 - d_observed / d_expected;
}

int collapse_rating(int value) {
    if (value < 1 || value > 5) throw UsageError("collapse_rating: value out of 1..5");
    if (value <= 2) return 1;
    if (value == 3) return 2;
    return 3;
}

std::vector<int> collapse_ratings(const std::vector<int>& values) {
    std::vector<int> out;
    out.reserve(values.size());
    for (int v : values) out.push_back(collapse_rating(v));
    return out;
}

int pairwise_rank(double score_base, double score_other, double tie_eps) {
    if (score_base > score_other + tie_eps) return -1;
    if (score_other > score_base + tie_eps) return 1;
    return 0;
}

std::map<std::size_t, double> bin_by_thread_length(
    const std::map<std::string, double>& scores_by_thread_id,
    const std::vector<LabeledThread>& threads) {
    std::map<std::size_t, std::pair<double, std::size_t>> bins;  // sum, count
    std::map<std::string, std::size_t> length_by_id;
    for (const LabeledThread& t : threads)
        length_by_id[t.thread.thread_id] = t.thread.emails.size();

    for (const auto& [id, score] : scores_by_thread_id) {
        auto it = length_by_id.find(id);
        if (it == length_by_id.end())
            throw UsageError("bin_by_thread_length: unknown thread id " + id);
        auto& [sum, count] = bins[it->second];
        sum += score;
        ++count;
    }
    std::map<std::size_t, double> means;
    for (const auto& [len, acc] : bins) means[len] = acc.first / double(acc.second);
    return means;
}

}  // namespace threadsum
