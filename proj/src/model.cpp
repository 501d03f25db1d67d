#include "threadsum/model.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "threadsum/text.hpp"

namespace threadsum {

using nlohmann::json;

std::string to_string(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::dev: return "dev";
        case Split::test: return "test";
        case Split::unlabeled: return "unlabeled";
    }
    return "unlabeled";
}

Split split_from_string(std::string_view s) {
    if (s == "train") return Split::train;
    if (s == "dev") return Split::dev;
    if (s == "test") return Split::test;
    if (s == "unlabeled") return Split::unlabeled;
    throw UsageError("unknown split: " + std::string(s));
}

std::string sanitize_utf8(std::string_view s, std::size_t* replaced) {
    static const char kReplacement[] = "\xEF\xBF\xBD";  // U+FFFD
    std::string out;
    out.reserve(s.size());
    std::size_t bad = 0;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t len = 0;
        if (c < 0x80) len = 1;
        else if ((c & 0xE0) == 0xC0 && c >= 0xC2) len = 2;
        else if ((c & 0xF0) == 0xE0) len = 3;
        else if ((c & 0xF8) == 0xF0 && c <= 0xF4) len = 4;
        bool ok = len > 0 && i + len <= s.size();
        for (std::size_t k = 1; ok && k < len; ++k)
            ok = (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
        if (ok) {
            out.append(s.substr(i, len));
            i += len;
        } else {
            out.append(kReplacement);
            ++bad;
            ++i;
        }
    }
    if (replaced) *replaced += bad;
    return out;
}

namespace {

json email_to_json(const Email& e) {
    return json{{"sender", e.sender},
                {"sender_name", e.sender_name},
                {"recipients", e.recipients},
                {"timestamp", e.timestamp},
                {"subject", e.subject},
                {"body", e.body}};
}

Email email_from_json(const json& j) {
    Email e;
    e.sender = j.at("sender").get<std::string>();
    e.sender_name = j.value("sender_name", std::string{});
    e.recipients = j.value("recipients", std::vector<std::string>{});
    e.timestamp = j.at("timestamp").get<std::int64_t>();
    e.subject = j.value("subject", std::string{});
    e.body = j.value("body", std::string{});
    return e;
}

std::vector<Email> parse_jsonl_corpus(std::istream& in, ParseStats& stats) {
    std::vector<Email> out;
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = sanitize_utf8(raw, &stats.invalid_bytes);
        if (text::trim(line).empty()) continue;
        ++stats.records;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("sender") ||
            !j["sender"].is_string() || j["sender"].get<std::string>().empty() ||
            !j.contains("timestamp") || !j["timestamp"].is_number()) {
            ++stats.skipped;
            continue;
        }
        out.push_back(email_from_json(j));
    }
    return out;
}

// "Name <addr>" or bare address; lists are comma-separated.
void parse_address(const std::string& field, std::string* address, std::string* display) {
    auto lt = field.find('<');
    auto gt = field.find('>', lt == std::string::npos ? 0 : lt);
    if (lt != std::string::npos && gt != std::string::npos) {
        *address = text::trim(field.substr(lt + 1, gt - lt - 1));
        if (display) {
            std::string name = text::trim(field.substr(0, lt));
            if (name.size() >= 2 && name.front() == '"' && name.back() == '"')
                name = name.substr(1, name.size() - 2);
            *display = name;
        }
    } else {
        *address = text::trim(field);
        if (display) *display = "";
    }
}

std::vector<std::string> parse_address_list(const std::string& field) {
    std::vector<std::string> out;
    std::stringstream ss(field);
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::string addr;
        parse_address(part, &addr, nullptr);
        if (!addr.empty()) out.push_back(addr);
    }
    return out;
}

bool parse_date(const std::string& field, std::int64_t* ts) {
    static const char* kFormats[] = {"%a, %d %b %Y %H:%M:%S %z", "%d %b %Y %H:%M:%S %z",
                                     "%a, %d %b %Y %H:%M:%S", "%d %b %Y %H:%M:%S",
                                     "%Y-%m-%d %H:%M:%S"};
    for (const char* fmt : kFormats) {
        std::tm tm{};
        const char* rest = strptime(field.c_str(), fmt, &tm);
        if (rest == nullptr) continue;
        long gmtoff = tm.tm_gmtoff;  // timegm() normalizes tm and zeroes the offset
        std::time_t t = timegm(&tm);
        if (t == static_cast<std::time_t>(-1)) continue;
        *ts = static_cast<std::int64_t>(t) - gmtoff;
        return true;
    }
    return false;
}

std::vector<Email> parse_mbox_lite(std::istream& in, ParseStats& stats) {
    std::vector<Email> out;
    std::vector<std::string> messages;
    std::string raw;
    std::string current;
    bool started = false;
    while (std::getline(in, raw)) {
        std::string line = sanitize_utf8(raw, &stats.invalid_bytes);
        if (line.rfind("From ", 0) == 0) {
            if (started) messages.push_back(current);
            current.clear();
            started = true;
            continue;
        }
        if (started) current += line + "\n";
    }
    if (started) messages.push_back(current);

    for (const std::string& msg : messages) {
        ++stats.records;
        Email e;
        bool have_sender = false;
        bool have_date = false;
        std::istringstream ms(msg);
        std::string line;
        while (std::getline(ms, line) && !text::trim(line).empty()) {
            auto colon = line.find(':');
            if (colon == std::string::npos) continue;
            std::string key = text::to_lower(text::trim(line.substr(0, colon)));
            std::string value = text::trim(line.substr(colon + 1));
            if (key == "from") {
                parse_address(value, &e.sender, &e.sender_name);
                have_sender = !e.sender.empty();
            } else if (key == "to" || key == "cc") {
                for (auto& a : parse_address_list(value)) e.recipients.push_back(a);
            } else if (key == "date") {
                have_date = parse_date(value, &e.timestamp);
            } else if (key == "subject") {
                e.subject = value;
            }
        }
        std::string body;
        while (std::getline(ms, line)) body += line + "\n";
        e.body = text::trim(body);
        if (!have_sender || !have_date || e.timestamp < 0) {
            ++stats.skipped;
            continue;
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

std::vector<Email> parse_corpus(const std::filesystem::path& path, CorpusFormat format,
                                ParseStats* stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    ParseStats local;
    std::vector<Email> out = format == CorpusFormat::jsonl ? parse_jsonl_corpus(in, local)
                                                           : parse_mbox_lite(in, local);
    if (stats) *stats = local;
    return out;
}

std::string thread_to_json_line(const LabeledThread& t) {
    json j;
    j["thread_id"] = t.thread.thread_id;
    j["normalized_subject"] = t.thread.normalized_subject;
    j["emails"] = json::array();
    for (const Email& e : t.thread.emails) j["emails"].push_back(email_to_json(e));
    j["summary_short"] = t.reference ? json(t.reference->short_text) : json(nullptr);
    j["summary_long"] = t.reference ? json(t.reference->long_text) : json(nullptr);
    j["split"] = to_string(t.split);
    return j.dump();
}

LabeledThread thread_from_json_line(const std::string& line) {
    json j = json::parse(line);
    LabeledThread t;
    t.thread.thread_id = j.at("thread_id").get<std::string>();
    t.thread.normalized_subject = j.value("normalized_subject", std::string{});
    for (const json& je : j.at("emails")) t.thread.emails.push_back(email_from_json(je));
    t.split = split_from_string(j.value("split", std::string{"unlabeled"}));
    if (j.contains("summary_short") && !j["summary_short"].is_null()) {
        SummaryPair p;
        p.short_text = j["summary_short"].get<std::string>();
        if (j.contains("summary_long") && !j["summary_long"].is_null())
            p.long_text = j["summary_long"].get<std::string>();
        t.reference = std::move(p);
    }
    return t;
}

std::size_t write_threads(std::vector<LabeledThread> threads, const std::filesystem::path& path) {
    std::stable_sort(threads.begin(), threads.end(),
                     [](const LabeledThread& a, const LabeledThread& b) {
                         return a.thread.thread_id < b.thread.thread_id;
                     });
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    for (const LabeledThread& t : threads) out << thread_to_json_line(t) << "\n";
    if (!out) throw IoError("write failed: " + path.string());
    return threads.size();
}

std::vector<LabeledThread> read_threads(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::vector<LabeledThread> out;
    std::string line;
    while (std::getline(in, line)) {
        if (text::trim(line).empty()) continue;
        out.push_back(thread_from_json_line(line));
    }
    return out;
}

}  // namespace threadsum
