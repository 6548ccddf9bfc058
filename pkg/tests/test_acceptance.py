"""Acceptance gate: one test per pinned criterion, checked at fixed tolerances.

Each test prints a single pass/fail line under ``pytest -v``. Heavy attack and
extraction runs are shared through module-scoped fixtures; the wall-clock
budget of a criterion is measured around the work it pins and asserted inside
the corresponding test.
"""

from __future__ import annotations

import http.server
import json
import threading
import time
from contextlib import contextmanager

import numpy as np
import pytest

from spanbreak.addany import AttackConfig, Mode, perturbed_example, run_attack
from spanbreak.addsent import content_tokens, gen_candidates
from spanbreak.campaign import (
    Method,
    TransferRecord,
    aggregate_records,
    coverage,
    f1_before_map,
    run_transfer,
)
from spanbreak.cli import build_config, cmd_pipeline, validate_config
from spanbreak.corpus import tokenize
from spanbreak.extraction import ExtractionScheme, agreement_em, build_dataset, train_extracted
from spanbreak.gateway import (
    HttpModel,
    ModelEndpoint,
    SpanDistribution,
    SpanPrediction,
    WireSchemaError,
    http_predict,
    predict_batch,
)
from spanbreak.metrics import kbest_zero, score
from spanbreak.models import loss_and_gradient, zero_surrogate
from spanbreak.seeding import rng_for
from spanbreak.serving import start_server

# --- criterion 1: instance metrics against a hand-scored table ---------------

# (prediction, golds, num_same, pred_len, gold_len, exact_match) where the
# three counts are hand-counted normalized-token statistics for the best gold.
_HAND_TABLE = [
    ("The Eiffel Tower", ["eiffel tower."], 2, 2, 2, True),
    ("tower", ["eiffel tower"], 1, 1, 2, False),
    ("42%", ["42 %"], 1, 1, 1, True),
    ("...", [","], 0, 0, 0, True),
    ("4 July 1776", ["July 4, 1776"], 3, 3, 3, False),
    ("half-empty", ["half empty"], 0, 1, 2, False),
    ("dog dog", ["dog"], 1, 2, 1, False),
    ("a", ["the"], 0, 0, 0, True),
    ("An Apple A Day", ["apple day"], 2, 2, 2, True),
    ("Paris", ["Paris", "London"], 1, 1, 1, True),
    ("London", ["Paris", "London"], 1, 1, 1, True),
    ("north london", ["Paris", "London"], 1, 2, 1, False),
    ("", ["anything"], 0, 0, 1, False),
    ("anything", [""], 0, 1, 0, False),
    ("", [""], 0, 0, 0, True),
    ("over 9000", ["9000"], 1, 2, 1, False),
    ("the quick brown fox", ["quick fox"], 2, 3, 2, False),
    ("U.S.A.", ["usa"], 1, 1, 1, True),
    ("1,000", ["1000"], 1, 1, 1, True),
    ("won't", ["wont"], 1, 1, 1, True),
    ("three four five", ["one two three"], 1, 3, 3, False),
    ("alpha beta beta", ["beta beta gamma"], 2, 3, 3, False),
    ("Mount St. Helens", ["mount st helens"], 3, 3, 3, True),
    ("blue", ["red"], 0, 1, 1, False),
    ("July 4 1776", ["July 4, 1776"], 3, 3, 3, True),
]


def _hand_f1(num_same: int, pred_len: int, gold_len: int) -> float:
    if pred_len == 0 and gold_len == 0:
        return 1.0
    if num_same == 0:
        return 0.0
    precision = num_same / pred_len
    recall = num_same / gold_len
    return 2 * precision * recall / (precision + recall)


def test_c01_token_metrics_hand_table():
    assert len(_HAND_TABLE) == 25
    start = time.monotonic()
    for prediction, golds, num_same, pred_len, gold_len, em in _HAND_TABLE:
        result = score(prediction, golds)
        assert result.em == em, (prediction, golds)
        assert result.f1 == _hand_f1(num_same, pred_len, gold_len), (prediction, golds)
    assert time.monotonic() - start < 1.0


# --- criterion 2: kBest-zero termination vs brute force ----------------------


def test_c02_kbest_zero_matches_brute_force():
    golds = ["silver mine"]
    hit_texts = ("silver", "mine", "silver mine", "old mine")
    miss_texts = ("quartz", "basalt", "granite shelf", "feldspar")
    rng = np.random.default_rng(20260815)
    start = time.monotonic()
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        hits = rng.random(n) < 0.5
        # Distinct one-decimal weights keep ordering collision-free after
        # renormalization, so the brute-force ranking is unambiguous.
        raws = (rng.permutation(n) + 1) / 10.0
        preds = [
            SpanPrediction(
                start_token=i,
                end_token=i,
                text=(hit_texts if hits[i] else miss_texts)[i % 4],
                probability=float(raws[i]),
            )
            for i in range(n)
        ]
        dist = SpanDistribution.from_unnormalized(preds, k=n)
        order = sorted(range(n), key=lambda i: -raws[i])
        for k in (1, 3, 5):
            expected = all(not hits[i] for i in order[:k])
            assert kbest_zero(dist, golds, k) == expected
    assert time.monotonic() - start < 5.0


# --- criteria 3, 4, 6, 7: greedy attacks, direct and transferred -------------


@pytest.fixture(scope="module")
def before_map(victim, small_examples):
    return f1_before_map(victim, small_examples)


@pytest.fixture(scope="module")
def kbest_direct(victim, small_examples, wordlist):
    config = AttackConfig()
    start = time.monotonic()
    outcomes = [run_attack(ex, victim, config, wordlist) for ex in small_examples]
    return config, outcomes, time.monotonic() - start


@pytest.fixture(scope="module")
def argmax_direct(victim, small_examples, wordlist):
    config = AttackConfig(mode=Mode.ARGMAX)
    start = time.monotonic()
    outcomes = [run_attack(ex, victim, config, wordlist) for ex in small_examples]
    return config, outcomes, time.monotonic() - start


def test_c03_greedy_objective_never_increases(kbest_direct):
    _, outcomes, elapsed = kbest_direct
    for outcome in outcomes:
        trace = outcome.objective_trace
        assert trace, "empty objective trace"
        assert all(b <= a for a, b in zip(trace, trace[1:])), trace
    assert elapsed < 300.0


def test_c04_argmax_direct_halves_fixture_f1(
    argmax_direct, victim, small_examples, before_map
):
    _, outcomes, elapsed = argmax_direct
    records = run_transfer(
        outcomes, victim, small_examples, Method.W_A_ARGMAX, before=before_map
    )
    assert len(records) == len(small_examples)
    after_pct = aggregate_records(records)["f1_after_pct"]
    before_pct = 100.0 * sum(before_map.values()) / len(before_map)
    assert after_pct <= 0.5 * before_pct, (after_pct, before_pct)
    assert elapsed < 300.0


# --- criterion 5: extraction agreement thresholds ----------------------------


def test_c05_extraction_agreement_thresholds(victim, corpus_store):
    start = time.monotonic()
    agreement = {}
    for scheme in (ExtractionScheme.WIKI, ExtractionScheme.RANDOM):
        rng = rng_for(0, scheme.value, "extraction")
        dataset = build_dataset(scheme, victim, corpus_store, 2000, rng, seed=0)
        train, holdout = dataset.split_holdout(0.1)
        surrogate = train_extracted(train)
        agreement[scheme] = agreement_em(surrogate, holdout.examples)
        if scheme is ExtractionScheme.WIKI:
            baseline = agreement_em(zero_surrogate(), holdout.examples)
    assert agreement[ExtractionScheme.WIKI] > 0.0
    assert agreement[ExtractionScheme.WIKI] >= 3.0 * baseline, (agreement, baseline)
    assert agreement[ExtractionScheme.RANDOM] <= agreement[ExtractionScheme.WIKI] + 0.10
    assert time.monotonic() - start < 600.0


# --- criterion 6: kBest transfers at least as well as argmax -----------------


def test_c06_kbest_transfer_beats_argmax(victim, corpus_store, small_examples, wordlist, before_map):
    start = time.monotonic()
    strict_wins = 0
    for seed in (1, 2, 3):
        rng = rng_for(seed, ExtractionScheme.WIKI.value, "extraction")
        dataset = build_dataset(ExtractionScheme.WIKI, victim, corpus_store, 400, rng, seed=seed)
        surrogate = train_extracted(dataset)
        after = {}
        for mode, method in ((Mode.KBEST, Method.W_A_KBEST), (Mode.ARGMAX, Method.W_A_ARGMAX)):
            config = AttackConfig(mode=mode, seed=seed)
            outcomes = [run_attack(ex, surrogate, config, wordlist) for ex in small_examples]
            records = run_transfer(outcomes, victim, small_examples, method, before=before_map)
            after[mode] = aggregate_records(records)["f1_after_pct"]
        assert after[Mode.KBEST] <= after[Mode.ARGMAX] + 2.0, (seed, after)
        if after[Mode.KBEST] < after[Mode.ARGMAX]:
            strict_wins += 1
    assert strict_wins >= 2, strict_wins
    assert time.monotonic() - start < 1800.0


# --- criterion 7: gold answers survive every perturbation --------------------


def test_c07_gold_preservation_and_distractor_safety(
    kbest_direct, argmax_direct, small_examples, addsent_resources
):
    for config, outcomes, _ in (kbest_direct, argmax_direct):
        for example, outcome in zip(small_examples, outcomes):
            pert = perturbed_example(example, outcome.adversary_tokens, config.placement)
            for gold in pert.gold_answers:
                end = gold.char_start + len(gold.text)
                assert pert.context.raw[gold.char_start : end] == gold.text

    for example in small_examples:
        rng = rng_for(0, example.id, "addsent")
        gold_words = set().union(*(content_tokens(g) for g in example.gold_texts))
        for candidate in gen_candidates(example, addsent_resources, rng, n=5):
            assert not content_tokens(candidate.sentence.raw) & gold_words, (
                example.id,
                candidate.sentence.raw,
            )


# --- criterion 8: coverage accounting against hand counts --------------------


def test_c08_coverage_hand_fixture_and_bound():
    after_a = [0.0, 0.0, 0.5, 1.0, 0.0, 0.25, 0.0, 1.0, 0.75, 0.5]
    after_b = [0.0, 0.5, 0.0, 1.0, 0.25, 0.0, 0.0, 0.5, 1.0, 0.25]

    def records(method: Method, values: list[float]) -> list[TransferRecord]:
        return [
            TransferRecord(
                example_id=f"e{i:02d}",
                method=method,
                f1_before=1.0,
                f1_after=v,
                em_after=False,
                adversary="x",
            )
            for i, v in enumerate(values)
        ]

    recs_a = records(Method.W_A_KBEST, after_a)
    recs_b = records(Method.ADDSENT, after_b)
    report = coverage(recs_a, recs_b)
    # Hand counts: zero-F1 ids are {0,1,4,6} for A and {0,2,5,6} for B.
    assert (report.both, report.only_a, report.only_b, report.neither) == (2, 2, 2, 4)
    assert report.total == 10
    # Per-id minima sum to 2.5 exactly.
    assert report.combined_f1 == 25.0
    agg_a = aggregate_records(recs_a)["f1_after_pct"]
    agg_b = aggregate_records(recs_b)["f1_after_pct"]
    assert report.combined_f1 <= min(agg_a, agg_b)

    rng = np.random.default_rng(11)
    pool = np.array([0.0, 0.0, 0.2, 0.25, 0.5, 0.75, 1.0])
    for _ in range(300):
        n = int(rng.integers(1, 13))
        vals_a = [float(v) for v in rng.choice(pool, size=n)]
        vals_b = [float(v) for v in rng.choice(pool, size=n)]
        ra = records(Method.W_A_KBEST, vals_a)
        rb = records(Method.ADDSENT, vals_b)
        rep = coverage(ra, rb)
        assert rep.total == n
        bound = min(
            aggregate_records(ra)["f1_after_pct"], aggregate_records(rb)["f1_after_pct"]
        )
        assert rep.combined_f1 <= bound + 1e-9


# --- criterion 9: byte-reproducible pipeline reports -------------------------


def test_c09_pipeline_reports_byte_reproducible(tmp_path):
    def run(tag: str, workers: int):
        config = build_config(
            {
                "eval_dataset": "builtin:squad_mini",
                "budget": "60",
                "seed": "0",
                "workers": str(workers),
                "out_dir": str(tmp_path / tag),
                "attack.num_tokens": "6",
                "attack.candidates_per_step": "8",
                "attack.epochs": "2",
                "attack.extra_particles": "2",
                "attack.extra_epochs": "1",
            }
        )
        validate_config(config)
        cmd_pipeline(config)
        return tmp_path / tag

    dirs = [run(f"run{i}", workers) for i, workers in enumerate((1, 1, 4, 4))]
    names = (
        "config.resolved",
        "transfer_records.csv",
        "aggregate.csv",
        "categories.csv",
        "coverage.csv",
    )
    reference = {name: (dirs[0] / name).read_bytes() for name in names}
    assert reference["transfer_records.csv"].count(b"\n") > 2
    for out_dir in dirs[1:]:
        for name in names:
            assert (out_dir / name).read_bytes() == reference[name], (out_dir, name)


# --- criterion 10: analytic gradient vs central finite differences -----------


def test_c10_gradient_matches_finite_differences():
    rng = np.random.default_rng(7)
    start = time.monotonic()
    for _ in range(10):
        n = int(rng.integers(2, 30))
        feats = rng.normal(size=(n, 7))
        target = int(rng.integers(0, n))
        weights = rng.normal(size=7)
        bias = float(rng.normal())
        l2 = float(rng.uniform(0.0, 0.5))
        _, grad_w, grad_b = loss_and_gradient(feats, target, weights, bias, l2)
        assert grad_b == 0.0
        h = 1e-6
        numeric = np.empty(7)
        for i in range(7):
            wp, wm = weights.copy(), weights.copy()
            wp[i] += h
            wm[i] -= h
            lp = loss_and_gradient(feats, target, wp, bias, l2)[0]
            lm = loss_and_gradient(feats, target, wm, bias, l2)[0]
            numeric[i] = (lp - lm) / (2 * h)
        rel = np.linalg.norm(numeric - grad_w) / max(
            1e-12, np.linalg.norm(numeric) + np.linalg.norm(grad_w)
        )
        assert rel <= 1e-4, rel
    assert time.monotonic() - start < 10.0


# --- criterion 11: wire-protocol conformance ----------------------------------


class _ScriptedHandler(http.server.BaseHTTPRequestHandler):
    payload: bytes = b"{}"

    def do_POST(self):  # noqa: N802 - http.server API
        self.rfile.read(int(self.headers.get("Content-Length", 0)))
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(self.payload)))
        self.end_headers()
        self.wfile.write(self.payload)

    def log_message(self, *args):
        pass


@contextmanager
def _scripted(payload: bytes):
    handler = type("Handler", (_ScriptedHandler,), {"payload": payload})
    server = http.server.ThreadingHTTPServer(("127.0.0.1", 0), handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield ModelEndpoint(base_url=f"http://127.0.0.1:{server.server_port}", max_batch=8)
    finally:
        server.shutdown()
        thread.join()


def _span(text: str, start: int, end: int, prob: float) -> dict:
    return {"text": text, "char_start": start, "char_end": end, "probability": prob}


def test_c11_wire_protocol_conformance(victim, small_examples):
    start = time.monotonic()

    # Round trip through a live server: identical spans, probabilities to 1e-12.
    handle = start_server(victim)
    try:
        model = HttpModel(ModelEndpoint(base_url=handle.base_url, max_batch=4))
        items = [(ex.question, ex.context) for ex in small_examples[:8]]
        local = predict_batch(victim, items, k=5)
        remote = model.predict_batch(items, k=5)
    finally:
        handle.stop()
    for ld, rd in zip(local, remote):
        assert [(s.start_token, s.end_token, s.text) for s in ld.spans] == [
            (s.start_token, s.end_token, s.text) for s in rd.spans
        ]
        for ls, rs in zip(ld.spans, rd.spans):
            assert abs(ls.probability - rs.probability) <= 1e-12

    question = tokenize("what is this ?")
    context = tokenize("alpha beta gamma")

    # Unnormalized probabilities are renormalized client-side: 0.2/0.2 -> 0.5/0.5.
    body = {"results": [{"spans": [_span("alpha", 0, 5, 0.2), _span("beta", 6, 10, 0.2)]}]}
    with _scripted(json.dumps(body).encode()) as endpoint:
        dist = http_predict(endpoint, [(question, context)], k=2)[0]
    assert [s.probability for s in dist.spans] == [0.5, 0.5]
    assert [s.text for s in dist.spans] == ["alpha", "beta"]

    # Every schema violation is rejected with the dedicated error kind.
    violations = [
        {"results": [{"spans": [_span("alpha", 0, 5, 1.5)]}]},
        {"results": [{"answers": []}]},
        {"results": []},
        {"results": [{"spans": []}]},
        {"results": [{"spans": [_span("x", 50, 60, 0.5)]}]},
    ]
    for body in violations:
        with _scripted(json.dumps(body).encode()) as endpoint:
            with pytest.raises(WireSchemaError):
                http_predict(endpoint, [(question, context)], k=1)
    with _scripted(b"this is not json") as endpoint:
        with pytest.raises(WireSchemaError):
            http_predict(endpoint, [(question, context)], k=1)

    assert time.monotonic() - start < 10.0
