// threadsum: email thread reconstruction, anonymization, extractive
// summarization and evaluation toolkit.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "threadsum/alignment.hpp"
#include "threadsum/analysis.hpp"
#include "threadsum/anonymizer.hpp"
#include "threadsum/extractive.hpp"
#include "threadsum/metrics.hpp"
#include "threadsum/model.hpp"
#include "threadsum/text.hpp"
#include "threadsum/thread_builder.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace threadsum;

namespace {

// Outputs are written to a temp file and renamed on success, so a failed
// run never leaves a partial file behind.
void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_run_sidecar(const std::string& subcommand, const json& config,
                       const fs::path& near_output) {
    fs::path dir = near_output.empty() ? fs::path(".") : near_output.parent_path();
    if (dir.empty()) dir = ".";
    json j;
    j["subcommand"] = subcommand;
    j["config"] = config;
    write_file_atomic(dir / "run.json", j.dump(2) + "\n");
}

std::uint64_t resolve_seed(std::int64_t flag_seed, bool seed_given) {
    if (seed_given) return static_cast<std::uint64_t>(flag_seed);
    if (const char* env = std::getenv("THREADSUM_SEED")) return std::strtoull(env, nullptr, 10);
    return 13;
}

SummaryTarget parse_target(const std::string& target) {
    if (target == "short") return SummaryTarget::short_summary;
    if (target == "long") return SummaryTarget::long_summary;
    throw UsageError("unknown target: " + target);
}

const std::string& reference_text(const LabeledThread& t, SummaryTarget target) {
    if (!t.reference) throw UsageError("thread " + t.thread.thread_id + " has no reference");
    return target == SummaryTarget::short_summary ? t.reference->short_text
                                                  : t.reference->long_text;
}

json rouge_to_json(const RougeScore& s) {
    return json{{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

struct ScoreRecord {
    std::string thread_id;
    std::map<std::string, RougeScore> metrics;  // r1, r2, rl, rlsum
};

constexpr const char* kMeanId = "__mean__";

std::vector<ScoreRecord> read_scores(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::vector<ScoreRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (text::trim(line).empty()) continue;
        json j = json::parse(line);
        ScoreRecord rec;
        rec.thread_id = j.at("thread_id").get<std::string>();
        if (rec.thread_id == kMeanId) continue;
        for (const char* m : {"r1", "r2", "rl", "rlsum"}) {
            if (!j.contains(m)) continue;
            RougeScore s;
            s.precision = j[m].value("precision", 0.0);
            s.recall = j[m].value("recall", 0.0);
            s.f1 = j[m].value("f1", 0.0);
            rec.metrics[m] = s;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

// CSV with a header row; returns rows of cells.
std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (text::trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(text::trim(cell));
        rows.push_back(std::move(cells));
    }
    return rows;
}

int run_build_threads(const fs::path& in, const fs::path& out, const fs::path& report_path,
                      const std::string& format, const ThreadBuildConfig& config) {
    CorpusFormat fmt;
    if (format == "jsonl") fmt = CorpusFormat::jsonl;
    else if (format == "mbox-lite") fmt = CorpusFormat::mbox_lite;
    else throw UsageError("unknown corpus format: " + format);

    ParseStats stats;
    std::vector<Email> emails = parse_corpus(in, fmt, &stats);
    if (stats.invalid_bytes > 0)
        std::cerr << "warning: replaced " << stats.invalid_bytes << " invalid UTF-8 bytes\n";
    if (stats.skipped > 0)
        std::cerr << "warning: skipped " << stats.skipped << " records\n";

    auto [threads, report] = build_dataset(emails, config);
    std::string body;
    for (const EmailThread& t : threads)
        body += thread_to_json_line({t, std::nullopt, Split::unlabeled}) + "\n";
    write_file_atomic(out, body);

    if (!report_path.empty()) {
        json jr;
        jr["input_emails"] = report.input_emails;
        jr["parse_skipped"] = stats.skipped;
        jr["groups_formed"] = report.groups_formed;
        jr["emails_deduped"] = report.emails_deduped;
        jr["threads_cut"] = report.threads_cut;
        jr["threads_dropped_by_constraint"] = report.threads_dropped_by_constraint;
        jr["threads_out"] = report.threads_out;
        write_file_atomic(report_path, jr.dump(2) + "\n");
    }
    std::cout << "threads: " << threads.size() << "\n";
    return 0;
}

int run_anonymize(const fs::path& in, const fs::path& out, const fs::path& dropped_path,
                  const fs::path& keywords_path) {
    std::vector<std::string> keywords = default_sensitive_keywords();
    if (!keywords_path.empty()) {
        std::ifstream kf(keywords_path);
        if (!kf) throw IoError("cannot read " + keywords_path.string());
        keywords.clear();
        std::string word;
        while (std::getline(kf, word)) {
            word = text::trim(word);
            if (!word.empty()) keywords.push_back(word);
        }
    }

    std::vector<LabeledThread> threads = read_threads(in);
    std::string body;
    std::string dropped;
    std::size_t kept = 0;
    for (LabeledThread& t : threads) {
        auto scrubbed = scrub_thread(t.thread, keywords);
        if (!scrubbed) {
            dropped += t.thread.thread_id + "\n";
            continue;
        }
        t.thread = std::move(*scrubbed);
        body += thread_to_json_line(t) + "\n";
        ++kept;
    }
    write_file_atomic(out, body);
    if (!dropped_path.empty()) write_file_atomic(dropped_path, dropped);
    std::cout << "kept: " << kept << " dropped: " << threads.size() - kept << "\n";
    return 0;
}

int run_summarize(const fs::path& in, const fs::path& out, const std::string& method,
                  const std::string& target_name, std::optional<double> ratio) {
    SummaryTarget target = parse_target(target_name);
    std::vector<LabeledThread> threads = read_threads(in);
    double r = ratio.value_or(target == SummaryTarget::short_summary ? 0.22 : 0.38);

    std::string body;
    for (const LabeledThread& t : threads) {
        SentenceIndex index = SentenceIndex::from_thread(t.thread);
        ExtractiveSummary summary;
        if (method == "lead1") summary = lead_1(index);
        else if (method == "lead1email") summary = lead_1_email(index);
        else if (method == "textrank") summary = textrank(index, r);
        else if (method == "oracle") summary = ext_oracle(index, reference_text(t, target));
        else throw UsageError("unknown method: " + method);
        body += json{{"thread_id", t.thread.thread_id}, {"summary", summary.text}}.dump() + "\n";
    }
    write_file_atomic(out, body);
    std::cout << "summaries: " << threads.size() << "\n";
    return 0;
}

int run_evaluate(const fs::path& system_path, const fs::path& refs_path,
                 const std::string& target_name, const fs::path& out,
                 const fs::path& extra_scores) {
    SummaryTarget target = parse_target(target_name);
    std::map<std::string, std::string> systems;
    {
        std::ifstream in(system_path, std::ios::binary);
        if (!in) throw IoError("cannot read " + system_path.string());
        std::string line;
        while (std::getline(in, line)) {
            if (text::trim(line).empty()) continue;
            json j = json::parse(line);
            systems[j.at("thread_id").get<std::string>()] = j.at("summary").get<std::string>();
        }
    }
    std::map<std::string, json> extras;
    if (!extra_scores.empty()) {
        std::ifstream in(extra_scores, std::ios::binary);
        if (!in) throw IoError("cannot read " + extra_scores.string());
        std::string line;
        while (std::getline(in, line)) {
            if (text::trim(line).empty()) continue;
            json j = json::parse(line);
            extras[j.at("thread_id").get<std::string>()] = j;
        }
    }

    std::vector<LabeledThread> refs = read_threads(refs_path);
    std::string body;
    std::map<std::string, RougeScore> sums;
    std::size_t count = 0;
    for (const LabeledThread& t : refs) {
        auto it = systems.find(t.thread.thread_id);
        if (it == systems.end()) continue;
        const std::string& candidate = it->second;
        const std::string& reference = reference_text(t, target);
        auto ctoks = tokenize(candidate);
        auto rtoks = tokenize(reference);
        std::map<std::string, RougeScore> m;
        m["r1"] = rouge_n(ctoks, rtoks, 1);
        m["r2"] = rouge_n(ctoks, rtoks, 2);
        m["rl"] = rouge_l(ctoks, rtoks);
        m["rlsum"] = rouge_l_sum(candidate, reference);

        json j;
        j["thread_id"] = t.thread.thread_id;
        for (auto& [name, score] : m) {
            j[name] = rouge_to_json(score);
            sums[name].precision += score.precision;
            sums[name].recall += score.recall;
            sums[name].f1 += score.f1;
        }
        auto ex = extras.find(t.thread.thread_id);
        if (ex != extras.end())
            for (auto& [k, v] : ex->second.items())
                if (k != "thread_id") j[k] = v;
        body += j.dump() + "\n";
        ++count;
    }
    if (count > 0) {
        json footer;
        footer["thread_id"] = kMeanId;
        for (auto& [name, score] : sums)
            footer[name] = rouge_to_json({score.precision / count, score.recall / count,
                                          score.f1 / count});
        body += footer.dump() + "\n";
    }
    write_file_atomic(out, body);
    std::cout << "scored: " << count << "\n";
    return 0;
}

int run_align(const fs::path& threads_path, const fs::path& summaries_path,
              const std::string& target_name, const fs::path& out) {
    std::vector<LabeledThread> threads = read_threads(threads_path);

    // The summaries file is either system output ({"thread_id","summary"})
    // or a labeled thread file, in which case the target reference is used.
    std::map<std::string, std::string> summaries;
    {
        std::ifstream in(summaries_path, std::ios::binary);
        if (!in) throw IoError("cannot read " + summaries_path.string());
        SummaryTarget target = parse_target(target_name);
        std::string line;
        while (std::getline(in, line)) {
            if (text::trim(line).empty()) continue;
            json j = json::parse(line);
            std::string id = j.at("thread_id").get<std::string>();
            if (j.contains("summary")) {
                summaries[id] = j.at("summary").get<std::string>();
            } else {
                LabeledThread t = thread_from_json_line(line);
                if (t.reference) summaries[id] = reference_text(t, target);
            }
        }
    }

    std::string body;
    std::size_t aligned = 0;
    for (const LabeledThread& t : threads) {
        auto it = summaries.find(t.thread.thread_id);
        if (it == summaries.end()) continue;
        std::vector<std::string> email_texts;
        for (const Email& e : t.thread.emails) email_texts.push_back(e.body);
        std::vector<std::string> sentences = split_sentences(it->second);
        if (email_texts.empty() || sentences.empty()) continue;
        AlignmentResult result = align(similarity_matrix(email_texts, sentences));
        json jp = json::array();
        for (auto& [x, y] : result.pairs) jp.push_back(json::array({x, y}));
        body += json{{"thread_id", t.thread.thread_id}, {"pairs", jp}, {"score", result.score}}
                    .dump() +
                "\n";
        ++aligned;
    }
    write_file_atomic(out, body);
    std::cout << "aligned: " << aligned << "\n";
    return 0;
}

int run_stats(const fs::path& in, const std::string& target_name) {
    std::vector<LabeledThread> threads = read_threads(in);
    CorpusStats s = corpus_stats(threads, parse_target(target_name));
    json j{{"num_docs", s.num_docs},
           {"avg_doc_len", s.avg_doc_len},
           {"avg_turns", s.avg_turns},
           {"avg_turn_len", s.avg_turn_len},
           {"avg_summary_len", s.avg_summary_len},
           {"ext_oracle_r1", s.ext_oracle_r1}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_significance(const fs::path& a_path, const fs::path& b_path, const std::string& metric,
                     std::size_t resamples, std::uint64_t seed) {
    auto a_scores = read_scores(a_path);
    auto b_scores = read_scores(b_path);
    std::map<std::string, double> a_by_id;
    for (auto& rec : a_scores) {
        auto it = rec.metrics.find(metric);
        if (it == rec.metrics.end()) throw UsageError("metric not in scores: " + metric);
        a_by_id[rec.thread_id] = it->second.f1;
    }
    std::vector<double> a;
    std::vector<double> b;
    for (auto& rec : b_scores) {
        auto ita = a_by_id.find(rec.thread_id);
        if (ita == a_by_id.end()) continue;
        auto itb = rec.metrics.find(metric);
        if (itb == rec.metrics.end()) throw UsageError("metric not in scores: " + metric);
        a.push_back(ita->second);
        b.push_back(itb->second.f1);
    }
    double p = bootstrap_significance(a, b, resamples, seed);
    std::cout << json{{"metric", metric}, {"n", a.size()}, {"resamples", resamples},
                      {"seed", seed},     {"p_value", p}}
                     .dump(2)
              << "\n";
    return 0;
}

int run_agreement(const fs::path& ratings_path, const std::string& metric_name, bool collapse) {
    auto rows = read_csv(ratings_path);
    if (rows.empty() || rows.front().size() < 3 || rows.front()[0] != "item_id")
        throw UsageError("ratings CSV must have header item_id,rater_id,value");

    std::map<std::string, std::size_t> item_index;
    std::map<std::string, std::size_t> rater_index;
    std::vector<std::tuple<std::size_t, std::size_t, double>> cells;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() < 3) throw UsageError("bad ratings row " + std::to_string(r));
        std::size_t item = item_index.try_emplace(row[0], item_index.size()).first->second;
        std::size_t rater = rater_index.try_emplace(row[1], rater_index.size()).first->second;
        double value = std::stod(row[2]);
        if (collapse) value = collapse_rating(static_cast<int>(value));
        cells.emplace_back(rater, item, value);
    }
    RatingsMatrix m;
    m.values.assign(rater_index.size(),
                    std::vector<std::optional<double>>(item_index.size(), std::nullopt));
    for (auto& [rater, item, value] : cells) m.values[rater][item] = value;

    AgreementMetric metric;
    if (metric_name == "interval") metric = AgreementMetric::interval;
    else if (metric_name == "ordinal") metric = AgreementMetric::ordinal;
    else if (metric_name == "nominal") metric = AgreementMetric::nominal;
    else throw UsageError("unknown agreement metric: " + metric_name);

    double alpha = krippendorff_alpha(m, metric);
    std::cout << json{{"alpha", alpha},
                      {"metric", metric_name},
                      {"collapsed", collapse},
                      {"raters", m.raters()},
                      {"items", m.items()}}
                     .dump(2)
              << "\n";
    return 0;
}

int run_correlate(const fs::path& x_path, const fs::path& y_path, const std::string& field) {
    auto rows = read_csv(x_path);
    if (rows.empty() || rows.front().size() < 2 || rows.front()[0] != "item_id")
        throw UsageError("x CSV must have header item_id,value");
    std::map<std::string, double> human;
    for (std::size_t r = 1; r < rows.size(); ++r) human[rows[r][0]] = std::stod(rows[r][1]);

    std::vector<double> x;
    std::vector<double> y;
    for (auto& rec : read_scores(y_path)) {
        auto ith = human.find(rec.thread_id);
        if (ith == human.end()) continue;
        auto itm = rec.metrics.find(field);
        if (itm == rec.metrics.end()) throw UsageError("metric not in scores: " + field);
        x.push_back(ith->second);
        y.push_back(itm->second.f1);
    }
    double r = pearson(x, y);
    std::cout << json{{"pearson", r}, {"n", x.size()}, {"field", field}}.dump(2) << "\n";
    return 0;
}

int run_report(const fs::path& scores_path, const std::string& format) {
    std::vector<ScoreRecord> records = read_scores(scores_path);
    if (records.empty()) {
        std::cerr << "warning: no scores in " << scores_path << "\n";
        return 0;
    }
    std::map<std::string, double> means;
    for (const char* m : {"r1", "r2", "rl", "rlsum"}) {
        double sum = 0.0;
        for (auto& rec : records) {
            auto it = rec.metrics.find(m);
            sum += it == rec.metrics.end() ? 0.0 : it->second.f1;
        }
        means[m] = 100.0 * sum / double(records.size());
    }
    std::string system = scores_path.stem().string();
    char buf[64];
    if (format == "tsv") {
        std::cout << "system\tR1\tR2\tRL\tRLsum\n" << system;
        for (const char* m : {"r1", "r2", "rl", "rlsum"}) {
            std::snprintf(buf, sizeof buf, "\t%.2f", means[m]);
            std::cout << buf;
        }
        std::cout << "\n";
    } else if (format == "json") {
        json j{{"system", system}};
        for (auto& [m, v] : means) {
            std::snprintf(buf, sizeof buf, "%.2f", v);
            j[m] = std::stod(buf);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        throw UsageError("unknown report format: " + format);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Email thread summarization toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key=value config file; flags override");

    std::string in_path, out_path, report_path, format = "jsonl";
    std::string dropped_path, keywords_path;
    std::string method, target = "short";
    std::string system_path, refs_path, extra_scores;
    std::string threads_path, summaries_path;
    std::string a_path, b_path, metric = "r1";
    std::string ratings_path, agreement_metric = "interval";
    std::string x_path, y_path, field = "r1";
    std::string scores_path, report_format = "tsv";
    bool collapse = false;
    std::optional<double> ratio;
    std::int64_t seed_flag = 13;
    std::size_t resamples = 100000;
    int jobs = 1;
    ThreadBuildConfig build_cfg;

    app.add_option("--jobs", jobs, "Worker cap for parallel stages");

    auto* build = app.add_subcommand("build-threads", "Reconstruct threads from a flat corpus");
    build->add_option("--in", in_path)->required();
    build->add_option("--out", out_path)->required();
    build->add_option("--report", report_path);
    build->add_option("--format", format)->check(CLI::IsMember({"jsonl", "mbox-lite"}));
    build->add_option("--min-emails", build_cfg.min_emails);
    build->add_option("--max-emails", build_cfg.max_emails);
    build->add_option("--min-email-words", build_cfg.min_email_words);
    build->add_option("--max-email-words", build_cfg.max_email_words);
    build->add_option("--min-total", build_cfg.min_total_words);
    build->add_option("--max-total", build_cfg.max_total_words);
    build->add_option("--dup-jaccard", build_cfg.dup_jaccard);

    auto* anon = app.add_subcommand("anonymize", "Scrub PII and drop sensitive threads");
    anon->add_option("--in", in_path)->required();
    anon->add_option("--out", out_path)->required();
    anon->add_option("--dropped", dropped_path);
    anon->add_option("--keywords", keywords_path);

    auto* summ = app.add_subcommand("summarize", "Run an extractive summarizer");
    summ->add_option("--in", in_path)->required();
    summ->add_option("--method", method)
        ->required()
        ->check(CLI::IsMember({"lead1", "lead1email", "textrank", "oracle"}));
    summ->add_option("--target", target)->check(CLI::IsMember({"short", "long"}));
    summ->add_option("--ratio", ratio);
    summ->add_option("--out", out_path)->required();

    auto* eval = app.add_subcommand("evaluate", "Score system summaries with ROUGE");
    eval->add_option("--system", system_path)->required();
    eval->add_option("--refs", refs_path)->required();
    eval->add_option("--target", target)->check(CLI::IsMember({"short", "long"}));
    eval->add_option("--out", out_path)->required();
    eval->add_option("--extra-scores", extra_scores);

    auto* al = app.add_subcommand("align", "Order-constrained summary-to-email alignment");
    al->add_option("--threads", threads_path)->required();
    al->add_option("--summaries", summaries_path)->required();
    al->add_option("--target", target)->check(CLI::IsMember({"short", "long"}));
    al->add_option("--out", out_path)->required();

    auto* st = app.add_subcommand("stats", "Corpus statistics");
    st->add_option("--in", in_path)->required();
    st->add_option("--target", target)->check(CLI::IsMember({"short", "long"}));

    auto* sig = app.add_subcommand("significance", "Paired bootstrap significance test");
    sig->add_option("--a", a_path)->required();
    sig->add_option("--b", b_path)->required();
    sig->add_option("--metric", metric);
    sig->add_option("--resamples", resamples);
    auto* seed_opt = sig->add_option("--seed", seed_flag);

    auto* agr = app.add_subcommand("agreement", "Krippendorff's alpha over a ratings CSV");
    agr->add_option("--ratings", ratings_path)->required();
    agr->add_option("--metric", agreement_metric)
        ->check(CLI::IsMember({"interval", "ordinal", "nominal"}));
    agr->add_flag("--collapse", collapse, "Collapse 5-point ratings to 3 classes");

    auto* cor = app.add_subcommand("correlate", "Pearson correlation of ratings vs. scores");
    cor->add_option("--x", x_path)->required();
    cor->add_option("--y", y_path)->required();
    cor->add_option("--field", field);

    auto* rep = app.add_subcommand("report", "Render a scores file as a results table");
    rep->add_option("--scores", scores_path)->required();
    rep->add_option("--format", report_format)->check(CLI::IsMember({"tsv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        json cfg;
        for (const CLI::Option* opt : app.get_subcommands().front()->get_options())
            if (opt->count() > 0 || !opt->get_default_str().empty())
                cfg[opt->get_name()] = opt->count() ? opt->results().front()
                                                    : opt->get_default_str();

        if (build->parsed()) {
            write_run_sidecar("build-threads", cfg, out_path);
            return run_build_threads(in_path, out_path, report_path, format, build_cfg);
        }
        if (anon->parsed()) {
            write_run_sidecar("anonymize", cfg, out_path);
            return run_anonymize(in_path, out_path, dropped_path, keywords_path);
        }
        if (summ->parsed()) {
            write_run_sidecar("summarize", cfg, out_path);
            return run_summarize(in_path, out_path, method, target, ratio);
        }
        if (eval->parsed()) {
            write_run_sidecar("evaluate", cfg, out_path);
            return run_evaluate(system_path, refs_path, target, out_path, extra_scores);
        }
        if (al->parsed()) {
            write_run_sidecar("align", cfg, out_path);
            return run_align(threads_path, summaries_path, target, out_path);
        }
        if (st->parsed()) {
            write_run_sidecar("stats", cfg, "");
            return run_stats(in_path, target);
        }
        if (sig->parsed()) {
            write_run_sidecar("significance", cfg, "");
            return run_significance(a_path, b_path, metric, resamples,
                                    resolve_seed(seed_flag, seed_opt->count() > 0));
        }
        if (agr->parsed()) {
            write_run_sidecar("agreement", cfg, "");
            return run_agreement(ratings_path, agreement_metric, collapse);
        }
        if (cor->parsed()) {
            write_run_sidecar("correlate", cfg, "");
            return run_correlate(x_path, y_path, field);
        }
        if (rep->parsed()) {
            write_run_sidecar("report", cfg, "");
            return run_report(scores_path, report_format);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
