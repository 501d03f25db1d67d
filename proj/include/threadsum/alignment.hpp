#pragma once
// Order-constrained alignment of summary sentences to emails. One email
// may take several consecutive sentences; every sentence is assigned to
// exactly one email; email indices never decrease.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace threadsum {

struct SimMatrix {
    std::size_t n_emails = 0;
    std::size_t n_sentences = 0;
    std::vector<double> values;  // row-major, n_emails x n_sentences

    double at(std::size_t email, std::size_t sentence) const {
        return values[email * n_sentences + sentence];
    }
    double& at(std::size_t email, std::size_t sentence) {
        return values[email * n_sentences + sentence];
    }
};

struct AlignmentResult {
    // (email index, sentence index), both 1-based, sorted by sentence.
    std::vector<std::pair<int, int>> pairs;
    double score = 0.0;
};

// M[i][j] = ROUGE-L recall of email i against summary sentence j
// (LCS length / sentence token count).
SimMatrix similarity_matrix(const std::vector<std::string>& emails,
                            const std::vector<std::string>& sentences);

// Dynamic program over the (n_e+1) x (n_s+1) score matrix with traceback.
// Tie-break preference: extend the current email's block, then open a
// new block, then skip an email.
AlignmentResult align(const SimMatrix& m);

}  // namespace threadsum
