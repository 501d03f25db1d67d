import math

import pytest

import _threadsum as ts


def make_email(sender, recipients, timestamp, subject, body):
    e = ts.Email()
    e.sender = sender
    e.sender_name = sender.split("@")[0]
    e.recipients = recipients
    e.timestamp = timestamp
    e.subject = subject
    e.body = body
    return e


def make_thread(n=3):
    emails = [
        make_email(
            f"p{i}@x.com",
            [f"p{(i + 1) % n}@x.com"],
            100 + i,
            "Re: Lunch plan" if i else "Lunch plan",
            f"Sentence number {i} is about the lunch plan. Another thought here.",
        )
        for i in range(n)
    ]
    t = ts.EmailThread()
    t.normalized_subject = "lunch plan"
    t.emails = emails
    return t


def thread_sentences(t):
    out = [t.normalized_subject]
    for e in t.emails:
        out.extend(ts.split_sentences(e.body))
    return out


def test_normalize_subject():
    assert ts.normalize_subject("Re: RE: Fwd:  Budget  Review ") == "budget review"


def test_build_threads():
    threads = ts.build_threads(make_thread(4).emails)
    assert len(threads) == 1
    assert threads[0].normalized_subject == "lunch plan"
    assert len(threads[0].emails) == 4


def test_apply_constraints():
    accepted, failed = ts.apply_constraints(make_thread(3))
    assert accepted and failed == ""
    accepted, failed = ts.apply_constraints(make_thread(2))
    assert not accepted and failed == "email-count"


def test_anonymize_text():
    out = ts.anonymize_text("mail bob@corp.com or visit https://x.example/q?a=1")
    assert "USERNAME@DOMAIN.COM" in out and "HTTP://LINK" in out
    assert ts.anonymize_text(out) == out


def test_scrub_thread_sensitive():
    t = make_thread(3)
    emails = list(t.emails)
    emails[1].body = "the password is hunter2"
    t.emails = emails
    assert ts.scrub_thread(t) is None
    assert ts.scrub_thread(make_thread(3)) is not None


def test_split_sentences():
    parts = ts.split_sentences("First one. Second one! Third?")
    assert parts == ["First one.", "Second one!", "Third?"]


def test_extractive_methods():
    sentences = thread_sentences(make_thread(3))
    lead = ts.lead_1(sentences)
    assert lead == "lunch plan"
    assert ts.textrank(sentences, 0.22)
    ref = "sentence about the lunch plan"
    oracle = ts.ext_oracle(sentences, ref)
    assert ts.rouge_n(oracle, ref, 1).f1 >= ts.rouge_n(lead, ref, 1).f1


def test_summarize_dispatch():
    t = make_thread(3)
    assert ts.summarize_thread(t, "lead1") == ts.lead_1(thread_sentences(t))


def test_tokenize():
    assert ts.tokenize("The CAT, sat!") == ["the", "cat", "sat"]
    assert ts.tokenize("running quickly", stem=True) == ["run", "quickli"]


def test_rouge():
    assert ts.rouge_n("the cat sat", "the cat ran", 1).f1 == pytest.approx(2 / 3)
    assert ts.rouge_l("a b c d", "a c b d").f1 == pytest.approx(0.75)
    assert ts.rouge_l_sum("a b. x y.", "a b. c d.").f1 == pytest.approx(0.5)


def test_align():
    emails = ["The lunch plan is on.", "Another thought here about timing."]
    summary = ["The lunch plan.", "Another thought here."]
    pairs, score = ts.align(emails, summary)
    assert [y for _, y in pairs] == [1, 2]
    xs = [x for x, _ in pairs]
    assert xs == sorted(xs)
    assert score > 0.0


def test_statistics():
    assert ts.bootstrap_significance([0.1, 0.2], [0.1, 0.2], 1000, 13) == 1.0
    assert ts.pearson([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0)
    assert ts.collapse_rating(5) == 3
    assert ts.pairwise_rank(1.0, 2.0, 0.02) == 1
    assert ts.pairwise_rank(2.0, 1.0, 0.02) == -1
    assert ts.pairwise_rank(1.0, 1.0, 0.02) == 0
    alpha = ts.krippendorff_alpha(
        [[1.0, 2.0, 3.0, 4.0], [2.0, 1.0, 3.0, 4.0]], "interval"
    )
    assert alpha == pytest.approx(0.825)
    with_missing = ts.krippendorff_alpha(
        [[1.0, 2.0, math.nan], [1.0, 2.0, 3.0]], "interval"
    )
    assert -1.0 <= with_missing <= 1.0


def test_usage_error_maps_to_python():
    with pytest.raises(ValueError):
        ts.summarize_thread(make_thread(3), "nonsense-method")
