#include <doctest.h>

#include <random>

#include "threadsum/metrics.hpp"

using namespace threadsum;

namespace {

// Independent clipped-unigram counter used by the property checks.
std::size_t clipped_unigram_overlap(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
    std::size_t overlap = 0;
    std::vector<bool> used(b.size(), false);
    for (const auto& t : a)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!used[j] && b[j] == t) {
                used[j] = true;
                ++overlap;
                break;
            }
    return overlap;
}

std::vector<std::string> random_tokens(std::mt19937& rng, std::size_t max_len) {
    static const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g", "h"};
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    std::vector<std::string> out(len(rng));
    for (auto& t : out) t = vocab[pick(rng)];
    return out;
}

}  // namespace

TEST_CASE("tokenize lowercases and splits on non-alphanumerics") {
    CHECK(tokenize("The cat's hat!") == std::vector<std::string>{"the", "cat", "s", "hat"});
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("USERNAME@DOMAIN.COM") ==
          std::vector<std::string>{"username", "domain", "com"});
}

TEST_CASE("porter stemming behind a flag, default off") {
    CHECK(tokenize("running caresses ponies", true) ==
          std::vector<std::string>{"run", "caress", "poni"});
    CHECK(tokenize("running", false) == std::vector<std::string>{"running"});
    CHECK(porter_stem("relational") == "relat");
    CHECK(porter_stem("conflated") == "conflat");
    CHECK(porter_stem("sky") == "sky");
}

TEST_CASE("hand-computed fixture table matches to 1e-6") {
    struct Row {
        std::string cand, ref;
        int n;  // 1/2 for rouge_n, 0 for rouge_l, -1 for rouge_l_sum
        double p, r, f1;
    };
    // Values computed by hand from the overlap/LCS definitions.
    const Row rows[] = {
        {"the cat sat", "the cat ran", 1, 2.0 / 3, 2.0 / 3, 2.0 / 3},
        {"a b c", "a b c", 1, 1.0, 1.0, 1.0},
        {"a b", "c d", 1, 0.0, 0.0, 0.0},
        {"a b c", "a b d", 2, 0.5, 0.5, 0.5},
        {"a a b", "a b b", 1, 2.0 / 3, 2.0 / 3, 2.0 / 3},
        {"a b c d", "a c b d", 0, 0.75, 0.75, 0.75},
        {"x a y b z", "a b", 0, 0.4, 1.0, 4.0 / 7},
        {"a b", "c d", 0, 0.0, 0.0, 0.0},
        {"a b. x y.", "a b. c d.", -1, 0.5, 0.5, 0.5},
        {"a b. c d.", "a b. c d.", -1, 1.0, 1.0, 1.0},
    };
    for (const Row& row : rows) {
        CAPTURE(row.cand);
        CAPTURE(row.ref);
        RougeScore s;
        if (row.n > 0) s = rouge_n(tokenize(row.cand), tokenize(row.ref), row.n);
        else if (row.n == 0) s = rouge_l(tokenize(row.cand), tokenize(row.ref));
        else s = rouge_l_sum(row.cand, row.ref);
        CHECK(s.precision == doctest::Approx(row.p).epsilon(1e-6));
        CHECK(s.recall == doctest::Approx(row.r).epsilon(1e-6));
        CHECK(s.f1 == doctest::Approx(row.f1).epsilon(1e-6));
    }
}

TEST_CASE("degenerate inputs score zero without failing") {
    CHECK(rouge_n({"a"}, {"a"}, 2).f1 == 0.0);
    CHECK(rouge_n({}, {"a"}, 1).f1 == 0.0);
    CHECK(rouge_l({}, {}).f1 == 0.0);
    CHECK(rouge_l_sum("", "a b").f1 == 0.0);
}

TEST_CASE("single-sentence RLsum equals RL") {
    RougeScore sum = rouge_l_sum("the cat sat on the mat", "the dog sat on a mat");
    RougeScore l = rouge_l(tokenize("the cat sat on the mat"), tokenize("the dog sat on a mat"));
    CHECK(sum.f1 == doctest::Approx(l.f1).epsilon(1e-12));
}

TEST_CASE("F1 symmetry and LCS <= clipped-unigram bound on fuzzed pairs") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 2000; ++trial) {
        auto a = random_tokens(rng, 12);
        auto b = random_tokens(rng, 12);

        RougeScore r1ab = rouge_n(a, b, 1);
        RougeScore r1ba = rouge_n(b, a, 1);
        CHECK(r1ab.f1 == doctest::Approx(r1ba.f1).epsilon(1e-12));
        CHECK(r1ab.precision == doctest::Approx(r1ba.recall).epsilon(1e-12));

        RougeScore rlab = rouge_l(a, b);
        CHECK(rlab.f1 == doctest::Approx(rouge_l(b, a).f1).epsilon(1e-12));

        // LCS length <= clipped unigram overlap, hence RL F1 <= R1 F1.
        if (!a.empty() && !b.empty()) {
            std::size_t clipped = clipped_unigram_overlap(a, b);
            std::size_t lcs = static_cast<std::size_t>(rlab.precision * double(a.size()) + 0.5);
            CHECK(lcs <= clipped);
            CHECK(rlab.f1 <= r1ab.f1 + 1e-12);
        }

        for (const RougeScore& s : {r1ab, rlab}) {
            CHECK(s.precision >= 0.0);
            CHECK(s.precision <= 1.0);
            CHECK(s.recall >= 0.0);
            CHECK(s.recall <= 1.0);
            CHECK(s.f1 >= 0.0);
            CHECK(s.f1 <= 1.0);
        }
    }
}
