#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "threadsum/alignment.hpp"
#include "threadsum/analysis.hpp"
#include "threadsum/anonymizer.hpp"
#include "threadsum/extractive.hpp"
#include "threadsum/metrics.hpp"
#include "threadsum/model.hpp"
#include "threadsum/thread_builder.hpp"

namespace py = pybind11;
using namespace threadsum;

namespace {

SentenceIndex index_from_sentences(const std::vector<std::string>& sentences) {
    SentenceIndex index;
    int n = 0;
    for (const auto& s : sentences) index.sentences.push_back({0, n++, s});
    return index;
}

}  // namespace

PYBIND11_MODULE(_threadsum, m) {
    m.doc() = "Email thread summarization toolkit";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_IOError);

    py::class_<Email>(m, "Email")
        .def(py::init<>())
        .def_readwrite("sender", &Email::sender)
        .def_readwrite("sender_name", &Email::sender_name)
        .def_readwrite("recipients", &Email::recipients)
        .def_readwrite("timestamp", &Email::timestamp)
        .def_readwrite("subject", &Email::subject)
        .def_readwrite("body", &Email::body);

    py::class_<EmailThread>(m, "EmailThread")
        .def(py::init<>())
        .def_readwrite("thread_id", &EmailThread::thread_id)
        .def_readwrite("normalized_subject", &EmailThread::normalized_subject)
        .def_readwrite("emails", &EmailThread::emails);

    py::class_<RougeScore>(m, "RougeScore")
        .def_readonly("precision", &RougeScore::precision)
        .def_readonly("recall", &RougeScore::recall)
        .def_readonly("f1", &RougeScore::f1)
        .def("__repr__", [](const RougeScore& s) {
            return "RougeScore(precision=" + std::to_string(s.precision) +
                   ", recall=" + std::to_string(s.recall) + ", f1=" + std::to_string(s.f1) + ")";
        });

    m.def("normalize_subject", [](const std::string& s) { return normalize_subject(s); });
    m.def(
        "build_threads",
        [](const std::vector<Email>& emails) { return build_threads(emails).first; },
        "Reconstruct threads (grouping, sort, dedup, chain cut, repeated-content filter)");
    m.def("apply_constraints", [](const EmailThread& t) {
        auto r = apply_constraints(t);
        return py::make_tuple(r.accepted, r.failed_constraint);
    });

    m.def("anonymize_text", [](const std::string& s) { return anonymize_text(s); });
    m.def("scrub_thread", [](const EmailThread& t) -> py::object {
        auto r = scrub_thread(t);
        return r ? py::cast(*r) : py::none();
    });

    m.def("split_sentences",
          [](const std::string& s) { return split_sentences(s); });
    m.def(
        "lead_1",
        [](const std::vector<std::string>& sentences) {
            return lead_1(index_from_sentences(sentences)).text;
        },
        py::arg("sentences"));
    m.def(
        "textrank",
        [](const std::vector<std::string>& sentences, double ratio) {
            return textrank(index_from_sentences(sentences), ratio).text;
        },
        py::arg("sentences"), py::arg("ratio"));
    m.def(
        "ext_oracle",
        [](const std::vector<std::string>& sentences, const std::string& reference) {
            return ext_oracle(index_from_sentences(sentences), reference).text;
        },
        py::arg("sentences"), py::arg("reference"));
    m.def("summarize_thread", [](const EmailThread& t, const std::string& method,
                                 const std::string& reference, double ratio) {
        SentenceIndex index = SentenceIndex::from_thread(t);
        if (method == "lead1") return lead_1(index).text;
        if (method == "lead1email") return lead_1_email(index).text;
        if (method == "textrank") return textrank(index, ratio).text;
        if (method == "oracle") return ext_oracle(index, reference).text;
        throw UsageError("unknown method: " + method);
    }, py::arg("thread"), py::arg("method"), py::arg("reference") = "",
       py::arg("ratio") = 0.22);

    m.def("tokenize", [](const std::string& s, bool stem) { return tokenize(s, stem); },
          py::arg("text"), py::arg("stem") = false);
    m.def("rouge_n", [](const std::string& cand, const std::string& ref, int n) {
        return rouge_n(tokenize(cand), tokenize(ref), n);
    });
    m.def("rouge_l", [](const std::string& cand, const std::string& ref) {
        return rouge_l(tokenize(cand), tokenize(ref));
    });
    m.def("rouge_l_sum", [](const std::string& cand, const std::string& ref) {
        return rouge_l_sum(cand, ref);
    });

    m.def("align",
          [](const std::vector<std::string>& emails, const std::vector<std::string>& sentences) {
              AlignmentResult r = align(similarity_matrix(emails, sentences));
              return py::make_tuple(r.pairs, r.score);
          },
          "Order-constrained alignment of summary sentences to emails");

    m.def("bootstrap_significance", &bootstrap_significance, py::arg("a"), py::arg("b"),
          py::arg("resamples") = 100000, py::arg("seed") = 13);
    m.def("pearson", &pearson);
    m.def("collapse_rating", &collapse_rating);
    m.def("pairwise_rank", &pairwise_rank);
    m.def("krippendorff_alpha", [](const std::vector<std::vector<double>>& rows,
                                   const std::string& metric) {
        RatingsMatrix rm;
        for (const auto& row : rows) {
            std::vector<std::optional<double>> cells;
            for (double v : row)
                cells.push_back(std::isnan(v) ? std::nullopt : std::optional<double>(v));
            rm.values.push_back(std::move(cells));
        }
        AgreementMetric am = metric == "ordinal"   ? AgreementMetric::ordinal
                             : metric == "nominal" ? AgreementMetric::nominal
                                                   : AgreementMetric::interval;
        return krippendorff_alpha(rm, am);
    }, py::arg("ratings"), py::arg("metric") = "interval",
       "Ratings as a raters x items grid; NaN marks a missing cell");
}
