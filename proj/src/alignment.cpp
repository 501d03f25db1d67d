#include "threadsum/alignment.hpp"

#include <algorithm>

#include "threadsum/metrics.hpp"
#include "threadsum/model.hpp"

namespace threadsum {

SimMatrix similarity_matrix(const std::vector<std::string>& emails,
                            const std::vector<std::string>& sentences) {
    if (emails.empty() || sentences.empty())
        throw UsageError("similarity_matrix: emails and sentences must be nonempty");
    SimMatrix m;
    m.n_emails = emails.size();
    m.n_sentences = sentences.size();
    m.values.assign(m.n_emails * m.n_sentences, 0.0);

    std::vector<std::vector<std::string>> email_tokens;
    email_tokens.reserve(emails.size());
    for (const auto& e : emails) email_tokens.push_back(tokenize(e));
    for (std::size_t j = 0; j < sentences.size(); ++j) {
        auto sentence_tokens = tokenize(sentences[j]);
        for (std::size_t i = 0; i < emails.size(); ++i)
            m.at(i, j) = rouge_l(email_tokens[i], sentence_tokens).recall;
    }
    return m;
}

AlignmentResult align(const SimMatrix& m) {
    const std::size_t ne = m.n_emails;
    const std::size_t ns = m.n_sentences;
    std::vector<std::vector<double>> h(ne + 1, std::vector<double>(ns + 1, 0.0));
    for (std::size_t x = 1; x <= ne; ++x) {
        for (std::size_t y = 1; y <= ns; ++y) {
            double sim = m.at(x - 1, y - 1);
            double open_block = h[x - 1][y - 1] + sim;
            double extend_block = h[x][y - 1] + sim;
            double skip_email = h[x - 1][y];
            h[x][y] = std::max({open_block, extend_block, skip_email});
        }
    }

    AlignmentResult result;
    result.score = h[ne][ns];

    // Traceback preference: extend current block, open new block, skip.
    // Exact comparisons: each branch value is recomputed with the same
    // arithmetic the forward pass used.
    std::size_t x = ne;
    std::size_t y = ns;
    while (y > 0) {
        if (x == 0) break;  // unreachable: extend is always available at x >= 1
        double sim = m.at(x - 1, y - 1);
        if (h[x][y] == h[x][y - 1] + sim) {
            result.pairs.emplace_back(static_cast<int>(x), static_cast<int>(y));
            --y;
        } else if (h[x][y] == h[x - 1][y - 1] + sim) {
            result.pairs.emplace_back(static_cast<int>(x), static_cast<int>(y));
            --x;
            --y;
        } else {
            --x;
        }
    }
    std::reverse(result.pairs.begin(), result.pairs.end());
    return result;
}

}  // namespace threadsum
