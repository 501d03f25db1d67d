#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("threadsum_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args) {
    std::string cmd = std::string(CLI_BIN) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t count_lines(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++n;
    return n;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), {});
}

fs::path fixture(const char* name) { return fs::path(FIXTURE_DIR) / name; }

}  // namespace

TEST_CASE("build-threads on the fixture corpus emits 2 threads and a report") {
    TempDir tmp;
    fs::path out = tmp.path / "threads.jsonl";
    fs::path report = tmp.path / "report.json";
    int rc = run_cli("build-threads --in " + fixture("corpus_build.jsonl").string() + " --out " +
                     out.string() + " --report " + report.string());
    CHECK(rc == 0);
    CHECK(count_lines(out) == 2);
    json jr = json::parse(read_file(report));
    CHECK(jr["input_emails"] == 9);
    CHECK(jr["groups_formed"] == 3);
    CHECK(jr["emails_deduped"] == 1);
    CHECK(jr["threads_out"] == 2);
    CHECK(fs::exists(tmp.path / "run.json"));
}

TEST_CASE("unknown subcommand exits 2") {
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("build-threads") == 2);  // missing required options
}

TEST_CASE("evaluate with system == references gives corpus-mean F1 = 1") {
    TempDir tmp;
    fs::path system = tmp.path / "system.jsonl";
    {
        // Copy each reference short summary as the system output.
        std::ifstream in(fixture("labeled.jsonl"));
        std::ofstream out(system);
        std::string line;
        while (std::getline(in, line)) {
            json j = json::parse(line);
            out << json{{"thread_id", j["thread_id"]}, {"summary", j["summary_short"]}}.dump()
                << "\n";
        }
    }
    fs::path scores = tmp.path / "scores.jsonl";
    int rc = run_cli("evaluate --system " + system.string() + " --refs " +
                     fixture("labeled.jsonl").string() + " --target short --out " +
                     scores.string());
    CHECK(rc == 0);

    std::ifstream in(scores);
    std::string line, footer;
    while (std::getline(in, line))
        if (line.find("__mean__") != std::string::npos) footer = line;
    REQUIRE(!footer.empty());
    json jm = json::parse(footer);
    for (const char* m : {"r1", "r2", "rl", "rlsum"})
        CHECK(jm[m]["f1"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("full pipeline: anonymize, summarize, evaluate, report") {
    TempDir tmp;
    fs::path clean = tmp.path / "clean.jsonl";
    fs::path dropped = tmp.path / "dropped.txt";
    CHECK(run_cli("anonymize --in " + fixture("labeled.jsonl").string() + " --out " +
                  clean.string() + " --dropped " + dropped.string()) == 0);
    CHECK(count_lines(clean) == 2);

    fs::path system = tmp.path / "lead.jsonl";
    CHECK(run_cli("summarize --in " + clean.string() +
                  " --method lead1email --target short --out " + system.string()) == 0);
    CHECK(count_lines(system) == 2);

    fs::path scores = tmp.path / "scores.jsonl";
    CHECK(run_cli("evaluate --system " + system.string() + " --refs " + clean.string() +
                  " --target short --out " + scores.string()) == 0);
    CHECK(count_lines(scores) == 3);  // 2 threads + mean footer

    CHECK(run_cli("report --scores " + scores.string() + " --format tsv") == 0);

    fs::path aligns = tmp.path / "alignments.jsonl";
    CHECK(run_cli("align --threads " + clean.string() + " --summaries " + clean.string() +
                  " --target long --out " + aligns.string()) == 0);
    CHECK(count_lines(aligns) == 2);

    CHECK(run_cli("stats --in " + clean.string() + " --target short") == 0);
}

TEST_CASE("summarize oracle is deterministic byte-for-byte") {
    TempDir tmp;
    fs::path s1 = tmp.path / "o1.jsonl";
    fs::path s2 = tmp.path / "o2.jsonl";
    std::string base = "summarize --in " + fixture("labeled.jsonl").string() +
                       " --method oracle --target long --out ";
    CHECK(run_cli(base + s1.string()) == 0);
    CHECK(run_cli(base + s2.string()) == 0);
    CHECK(read_file(s1) == read_file(s2));
}

TEST_CASE("agreement and significance subcommands run on generated inputs") {
    TempDir tmp;
    fs::path csv = tmp.path / "ratings.csv";
    {
        std::ofstream out(csv);
        out << "item_id,rater_id,value\n";
        for (int item = 1; item <= 4; ++item)
            for (int rater = 1; rater <= 2; ++rater)
                out << "i" << item << ",r" << rater << "," << item << "\n";
    }
    CHECK(run_cli("agreement --ratings " + csv.string() + " --metric interval") == 0);
    CHECK(run_cli("agreement --ratings " + csv.string() + " --metric ordinal --collapse") == 0);
    CHECK(run_cli("agreement --ratings " + csv.string() + " --metric bogus") == 2);
}
