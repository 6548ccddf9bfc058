"""Greedy token-swap attack: perturbation mechanics, search state, outcomes."""

from __future__ import annotations

import dataclasses

import pytest

from spanbreak.addany import (
    ARGMAX_EVAL_SPANS,
    AttackConfig,
    AttackOutcome,
    Mode,
    Placement,
    Termination,
    apply_perturbation,
    build_pools,
    init_attack,
    load_outcome_records,
    objective,
    perturbed_example,
    run_attack,
    save_outcomes,
)
from spanbreak.corpus import AnswerSpan, QAExample, TokenizedText, tokenize
from spanbreak.gateway import SpanDistribution, SpanPrediction
from spanbreak.seeding import rng_for

SMALL = AttackConfig(
    num_tokens=4,
    candidates_per_step=6,
    epochs=1,
    extra_particles=1,
    extra_epochs=1,
    k=3,
    seed=0,
)


class TestAttackConfig:
    def test_defaults_match_documented_search(self):
        config = AttackConfig()
        assert (config.num_tokens, config.candidates_per_step, config.epochs) == (10, 20, 3)
        assert (config.extra_particles, config.extra_epochs) == (4, 3)
        assert config.mode is Mode.KBEST and config.k == 5

    def test_eval_spans_by_mode(self):
        assert AttackConfig(mode=Mode.KBEST, k=5).eval_spans == 5
        assert AttackConfig(mode=Mode.ARGMAX).eval_spans == ARGMAX_EVAL_SPANS

    def test_validation(self):
        with pytest.raises(ValueError):
            AttackConfig(num_tokens=0)
        with pytest.raises(ValueError):
            AttackConfig(k=0)
        with pytest.raises(ValueError):
            AttackConfig(extra_particles=-1)


class TestAttackOutcome:
    def test_increasing_trace_rejected(self):
        with pytest.raises(ValueError):
            AttackOutcome(
                perturbed_context=tokenize("a b"),
                adversary_tokens=("a",),
                success_on_search_model=False,
                objective_trace=(0.2, 0.5),
                model_calls=3,
                terminated_by=Termination.ITERATION_LIMIT,
            )

    def test_non_increasing_trace_accepted(self):
        outcome = AttackOutcome(
            perturbed_context=tokenize("a b"),
            adversary_tokens=("a",),
            success_on_search_model=True,
            objective_trace=(0.5, 0.5, 0.2),
            model_calls=3,
            terminated_by=Termination.CRITERION_MET,
        )
        assert outcome.objective_trace == (0.5, 0.5, 0.2)


class TestPools:
    def test_pool_adds_question_tokens_not_question_mark(self, small_examples, wordlist):
        ex = small_examples[0]
        pools = build_pools(ex, wordlist, d=3)
        assert len(pools) == 3
        assert pools[0] is pools[1]  # one shared pool
        pool = set(pools[0])
        assert set(wordlist.words) <= pool
        for tok in ex.question.tokens:
            if tok != "?":
                assert tok in pool
        assert "?" not in pool

    def test_init_samples_from_wordlist_only(self, small_examples, wordlist):
        state = init_attack(small_examples[0], SMALL, wordlist, rng_for(0, "init"))
        assert len(state.sequences) == 1
        assert all(tok in set(wordlist.words) for tok in state.sequences[0].tokens)


class TestApplyPerturbation:
    def test_suffix_layout(self):
        context = tokenize("The barn burned.")
        out = apply_perturbation(context, ["red", "fox"], Placement.SUFFIX)
        assert out.raw == "The barn burned. red fox"
        assert out.tokens == context.tokens + ("red", "fox")
        # TokenizedText construction re-validates every offset slice.
        assert isinstance(out, TokenizedText)

    def test_prefix_layout(self):
        context = tokenize("The barn burned.")
        out = apply_perturbation(context, ["red", "fox"], Placement.PREFIX)
        assert out.raw == "red fox The barn burned."
        assert out.tokens == ("red", "fox") + context.tokens

    def test_empty_adversary_is_identity(self):
        context = tokenize("The barn burned.")
        assert apply_perturbation(context, [], Placement.SUFFIX) is context

    def test_perturbed_example_remaps_golds(self, small_examples):
        ex = small_examples[0]
        for placement in (Placement.SUFFIX, Placement.PREFIX):
            pert = perturbed_example(ex, ["one", "two"], placement)
            for gold in pert.gold_answers:
                start = gold.char_start
                assert pert.context.raw[start : start + len(gold.text)] == gold.text


def _dist(entries):
    spans = [SpanPrediction(s, e, t, p) for s, e, t, p in entries]
    return SpanDistribution.from_unnormalized(spans, k=len(spans))


class TestObjective:
    def test_argmax_uses_all_returned_spans(self):
        dist = _dist([(0, 0, "gold", 0.5), (1, 1, "junk", 0.3), (2, 2, "gold", 0.2)])
        value = objective(dist, ["gold"], AttackConfig(mode=Mode.ARGMAX))
        assert value == pytest.approx(0.5 + 0.2)

    def test_kbest_renormalizes_top_k(self):
        dist = _dist([(0, 0, "gold", 0.5), (1, 1, "junk", 0.3), (2, 2, "gold", 0.2)])
        value = objective(dist, ["gold"], AttackConfig(mode=Mode.KBEST, k=2))
        assert value == pytest.approx(0.5 / 0.8)


class TestRunAttack:
    def test_deterministic_for_fixed_seed(self, victim, small_examples, wordlist):
        ex = small_examples[0]
        a = run_attack(ex, victim, SMALL, wordlist)
        b = run_attack(ex, victim, SMALL, wordlist)
        assert a.adversary_tokens == b.adversary_tokens
        assert a.objective_trace == b.objective_trace
        assert a.model_calls == b.model_calls

    def test_seed_changes_search(self, victim, small_examples, wordlist):
        ex = small_examples[0]
        a = run_attack(ex, victim, SMALL, wordlist)
        b = run_attack(ex, victim, dataclasses.replace(SMALL, seed=1), wordlist)
        assert (
            a.adversary_tokens != b.adversary_tokens or a.objective_trace != b.objective_trace
        )

    def test_immediate_success_short_circuits(self, victim, wordlist):
        # The victim's answer ("alpha beta") shares no token with the gold.
        context = tokenize("alpha beta gamma delta epsilon")
        ex = QAExample(
            id="already-broken",
            question=tokenize("What alpha beta ?"),
            context=context,
            gold_answers=(AnswerSpan(text="epsilon", char_start=context.raw.index("epsilon")),),
        )
        outcome = run_attack(ex, victim, AttackConfig(mode=Mode.ARGMAX, num_tokens=3), wordlist)
        assert outcome.success_on_search_model
        assert outcome.terminated_by is Termination.CRITERION_MET
        assert len(outcome.objective_trace) == 1
        assert outcome.model_calls == 1

    def test_trace_never_increases(self, victim, small_examples, wordlist):
        for ex in small_examples[:3]:
            outcome = run_attack(ex, victim, SMALL, wordlist)
            trace = outcome.objective_trace
            assert all(b <= a for a, b in zip(trace, trace[1:]))

    def test_gold_survives_in_perturbed_context(self, victim, small_examples, wordlist):
        ex = small_examples[1]
        outcome = run_attack(ex, victim, SMALL, wordlist)
        for gold in ex.gold_answers:
            assert gold.text in outcome.perturbed_context.raw


class TestOutcomeIO:
    def test_round_trip(self, victim, small_examples, wordlist, tmp_path):
        outcomes = [
            (ex.id, run_attack(ex, victim, SMALL, wordlist)) for ex in small_examples[:2]
        ]
        path = tmp_path / "outcomes.jsonl"
        save_outcomes(outcomes, SMALL, str(path), header={"note": "t"})
        header, records = load_outcome_records(str(path))
        assert header["mode"] == "KBEST"
        assert header["placement"] == "SUFFIX"
        assert header["num_tokens"] == SMALL.num_tokens
        assert header["attack_seed"] == SMALL.seed
        assert [r["example_id"] for r in records] == [i for i, _ in outcomes]
        for (_, outcome), rec in zip(outcomes, records):
            assert tuple(rec["adversary_tokens"]) == outcome.adversary_tokens
            assert tuple(rec["objective_trace"]) == outcome.objective_trace
            assert rec["terminated_by"] == outcome.terminated_by.value
