#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "threadsum/model.hpp"

using namespace threadsum;
namespace fs = std::filesystem;

namespace {

fs::path fixture(const char* name) { return fs::path(FIXTURE_DIR) / name; }

fs::path temp_file(const char* name) {
    return fs::temp_directory_path() / (std::string("threadsum_test_") + name);
}

LabeledThread sample_thread(const std::string& id) {
    Email e1{"alice@example.com", "Alice", {"bob@example.com"}, 100, "Lunch", "Lunch at noon?"};
    Email e2{"bob@example.com", "Bob", {"alice@example.com"}, 200, "Re: Lunch", "Sure, see you."};
    LabeledThread t;
    t.thread = {id, "lunch", {e1, e2}};
    t.reference = SummaryPair{"They plan lunch.", "Alice and Bob plan lunch at noon."};
    t.split = Split::train;
    return t;
}

}  // namespace

TEST_CASE("parse_corpus reads well-formed JSONL records") {
    auto path = temp_file("one.jsonl");
    {
        std::ofstream out(path);
        out << R"({"sender":"a@x.com","sender_name":"A","recipients":["b@x.com"],)"
            << R"("timestamp":5,"subject":"hi","body":"hello there"})" << "\n";
    }
    ParseStats stats;
    auto emails = parse_corpus(path, CorpusFormat::jsonl, &stats);
    REQUIRE(emails.size() == 1);
    CHECK(stats.skipped == 0);
    CHECK(emails[0].sender == "a@x.com");
    CHECK(emails[0].recipients == std::vector<std::string>{"b@x.com"});
    CHECK(emails[0].timestamp == 5);
    fs::remove(path);
}

TEST_CASE("records missing timestamp are skipped and counted") {
    auto path = temp_file("skip.jsonl");
    {
        std::ofstream out(path);
        out << R"({"sender":"a@x.com","subject":"hi","body":"no timestamp"})" << "\n";
    }
    ParseStats stats;
    auto emails = parse_corpus(path, CorpusFormat::jsonl, &stats);
    CHECK(emails.empty());
    CHECK(stats.skipped == 1);
    fs::remove(path);
}

TEST_CASE("fixture corpus of 6 records with 1 malformed yields 5 emails") {
    ParseStats stats;
    auto emails = parse_corpus(fixture("corpus_small.jsonl"), CorpusFormat::jsonl, &stats);
    CHECK(emails.size() == 5);
    CHECK(stats.records == 6);
    CHECK(stats.skipped == 1);
}

TEST_CASE("mbox-lite reader merges To and Cc and normalizes dates to UTC") {
    ParseStats stats;
    auto emails = parse_corpus(fixture("corpus.mbox"), CorpusFormat::mbox_lite, &stats);
    REQUIRE(emails.size() == 2);
    CHECK(emails[0].sender == "alice@example.com");
    CHECK(emails[0].sender_name == "Alice Smith");
    CHECK(emails[0].recipients ==
          std::vector<std::string>{"bob@example.com", "carol@example.com"});
    CHECK(emails[0].timestamp == 1609754400);  // 2021-01-04 10:00:00 UTC
    CHECK(emails[1].timestamp == 1609758000);  // 12:00 +0100 == 11:00 UTC
    CHECK(emails[1].body == "Monday works for me, I will book a room.");
}

TEST_CASE("unreadable file raises IoError") {
    CHECK_THROWS_AS(parse_corpus("/nonexistent/file.jsonl", CorpusFormat::jsonl), IoError);
}

TEST_CASE("write_threads: empty list writes 0 lines") {
    auto path = temp_file("empty.jsonl");
    CHECK(write_threads({}, path) == 0);
    std::ifstream in(path);
    std::string line;
    CHECK_FALSE(static_cast<bool>(std::getline(in, line)));
    fs::remove(path);
}

TEST_CASE("write_threads orders lines by thread_id and round-trips") {
    auto path = temp_file("rt.jsonl");
    std::vector<LabeledThread> threads = {sample_thread("b"), sample_thread("a"),
                                          sample_thread("c")};
    CHECK(write_threads(threads, path) == 3);
    auto back = read_threads(path);
    REQUIRE(back.size() == 3);
    CHECK(back[0].thread.thread_id == "a");
    CHECK(back[1].thread.thread_id == "b");
    CHECK(back[2].thread.thread_id == "c");
    CHECK(back[1] == sample_thread("b"));
    fs::remove(path);
}

TEST_CASE("unlabeled threads serialize null summaries") {
    LabeledThread t = sample_thread("x");
    t.reference.reset();
    t.split = Split::unlabeled;
    std::string line = thread_to_json_line(t);
    CHECK(line.find("\"summary_short\":null") != std::string::npos);
    CHECK(thread_from_json_line(line) == t);
}

TEST_CASE("writing twice produces byte-identical files") {
    auto p1 = temp_file("d1.jsonl");
    auto p2 = temp_file("d2.jsonl");
    std::vector<LabeledThread> threads = {sample_thread("b"), sample_thread("a")};
    write_threads(threads, p1);
    write_threads(threads, p2);
    std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
    std::string s1((std::istreambuf_iterator<char>(f1)), {});
    std::string s2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(s1 == s2);
    fs::remove(p1);
    fs::remove(p2);
}

TEST_CASE("sanitize_utf8 replaces invalid bytes and counts them") {
    std::size_t replaced = 0;
    std::string out = sanitize_utf8("ok\xFFhere\xC0", &replaced);
    CHECK(replaced == 2);
    CHECK(out == "ok\xEF\xBF\xBDhere\xEF\xBF\xBD");
    replaced = 0;
    CHECK(sanitize_utf8("caf\xC3\xA9", &replaced) == "caf\xC3\xA9");
    CHECK(replaced == 0);
}
