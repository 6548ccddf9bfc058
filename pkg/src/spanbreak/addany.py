"""Greedy distractor-token attack: append d tokens, swap them to minimize
expected F1 on the search model, terminate per the argMax or kBest criterion."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .corpus import AnswerSpan, QAExample, TokenizedText, WordList
from .gateway import SpanDistribution, SpanModel, predict, predict_batch
from .metrics import expected_f1, kbest_zero, token_f1
from .seeding import rng_for

# Spans requested per evaluation in ARGMAX mode, where config.k is ignored.
ARGMAX_EVAL_SPANS = 10


class Mode(Enum):
    ARGMAX = "ARGMAX"
    KBEST = "KBEST"


class Placement(Enum):
    SUFFIX = "SUFFIX"
    PREFIX = "PREFIX"


class Termination(Enum):
    CRITERION_MET = "CRITERION_MET"
    ITERATION_LIMIT = "ITERATION_LIMIT"


@dataclass(frozen=True)
class AttackConfig:
    num_tokens: int = 10
    candidates_per_step: int = 20
    epochs: int = 3
    extra_particles: int = 4
    extra_epochs: int = 3
    mode: Mode = Mode.KBEST
    k: int = 5
    placement: Placement = Placement.SUFFIX
    seed: int = 0

    def __post_init__(self) -> None:
        if self.num_tokens < 1 or self.candidates_per_step < 1 or self.epochs < 1:
            raise ValueError("num_tokens, candidates_per_step and epochs must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.extra_particles < 0 or self.extra_epochs < 0:
            raise ValueError("extra_particles and extra_epochs must be >= 0")

    @property
    def eval_spans(self) -> int:
        return self.k if self.mode is Mode.KBEST else ARGMAX_EVAL_SPANS


@dataclass
class AdversarialSequence:
    """The current distractor tokens and per-position candidate pools."""

    tokens: list[str]
    pools: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if len(self.tokens) != len(self.pools):
            raise ValueError("one candidate pool required per token position")
        if any(not pool for pool in self.pools):
            raise ValueError("candidate pools must be nonempty")


@dataclass
class AttackState:
    """Evolving search state for one example."""

    example: QAExample
    sequences: list[AdversarialSequence]
    rng: np.random.Generator
    iteration: int = 0
    model_calls: int = 0
    seq_objectives: list[float] = field(default_factory=list)
    best_objective: float = float("inf")
    best_sequence_index: int = 0
    active_index: int = 0
    criterion_met: bool = False
    objective_trace: list[float] = field(default_factory=list)


@dataclass(frozen=True)
class AttackOutcome:
    perturbed_context: TokenizedText
    adversary_tokens: tuple[str, ...]
    success_on_search_model: bool
    objective_trace: tuple[float, ...]
    model_calls: int
    terminated_by: Termination

    def __post_init__(self) -> None:
        trace = self.objective_trace
        if any(b > a + 1e-12 for a, b in zip(trace, trace[1:])):
            raise ValueError("objective trace must be non-increasing")


def build_pools(example: QAExample, wordlist: WordList, d: int) -> tuple[tuple[str, ...], ...]:
    """Per-position pools: common words plus the example's question tokens (minus '?')."""
    pool: dict[str, None] = dict.fromkeys(wordlist.words)
    for tok in example.question.tokens:
        if tok != "?":
            pool.setdefault(tok, None)
    shared = tuple(pool)
    return tuple(shared for _ in range(d))


def init_attack(
    example: QAExample,
    config: AttackConfig,
    wordlist: WordList,
    rng: np.random.Generator,
) -> AttackState:
    """Fresh state with one uniformly sampled distractor sequence."""
    pools = build_pools(example, wordlist, config.num_tokens)
    picks = rng.integers(0, len(wordlist.words), size=config.num_tokens)
    tokens = [wordlist.words[int(i)] for i in picks]
    return AttackState(
        example=example,
        sequences=[AdversarialSequence(tokens=tokens, pools=pools)],
        rng=rng,
    )


def _fresh_sequence(
    example: QAExample, config: AttackConfig, wordlist: WordList, rng: np.random.Generator
) -> AdversarialSequence:
    pools = build_pools(example, wordlist, config.num_tokens)
    picks = rng.integers(0, len(wordlist.words), size=config.num_tokens)
    return AdversarialSequence(tokens=[wordlist.words[int(i)] for i in picks], pools=pools)


def apply_perturbation(
    context: TokenizedText, adversary_tokens: Sequence[str], placement: Placement
) -> TokenizedText:
    """Splice adversary tokens onto the context with single spaces at the seam."""
    if not adversary_tokens:
        return context
    adv_raw = " ".join(adversary_tokens)
    adv_offsets: list[tuple[int, int]] = []
    pos = 0
    for tok in adversary_tokens:
        adv_offsets.append((pos, pos + len(tok)))
        pos += len(tok) + 1
    if placement is Placement.SUFFIX:
        if not context.tokens:
            return TokenizedText(adv_raw, tuple(adversary_tokens), tuple(adv_offsets))
        shift = len(context.raw) + 1
        return TokenizedText(
            raw=context.raw + " " + adv_raw,
            tokens=context.tokens + tuple(adversary_tokens),
            offsets=context.offsets + tuple((s + shift, e + shift) for s, e in adv_offsets),
        )
    shift = len(adv_raw) + 1
    if not context.tokens:
        return TokenizedText(adv_raw, tuple(adversary_tokens), tuple(adv_offsets))
    return TokenizedText(
        raw=adv_raw + " " + context.raw,
        tokens=tuple(adversary_tokens) + context.tokens,
        offsets=tuple(adv_offsets) + tuple((s + shift, e + shift) for s, e in context.offsets),
    )


def perturbed_example(
    example: QAExample, adversary_tokens: Sequence[str], placement: Placement
) -> QAExample:
    """Perturbed context with gold answer offsets remapped; construction revalidates."""
    context = apply_perturbation(example.context, adversary_tokens, placement)
    if placement is Placement.PREFIX and adversary_tokens:
        shift = len(" ".join(adversary_tokens)) + 1
        golds = tuple(AnswerSpan(a.text, a.char_start + shift) for a in example.gold_answers)
    else:
        golds = example.gold_answers
    return QAExample(id=example.id, question=example.question, context=context, gold_answers=golds)


def objective(dist: SpanDistribution, golds: Sequence[str], config: AttackConfig) -> float:
    """ARGMAX: expected F1 over the returned spans. KBEST: over the k best, renormalized."""
    if config.mode is Mode.ARGMAX:
        return expected_f1(dist, golds)
    sub = SpanDistribution.from_unnormalized(dist.spans[: config.k], config.k)
    return expected_f1(sub, golds)


def _criterion(dist: SpanDistribution, golds: Sequence[str], config: AttackConfig) -> bool:
    if config.mode is Mode.ARGMAX:
        return token_f1(dist.top.text, golds) == 0.0
    return kbest_zero(dist, golds, config.k)


def _evaluate_sequences(
    state: AttackState, model: SpanModel, config: AttackConfig, indices: Sequence[int]
) -> list[SpanDistribution]:
    example = state.example
    golds = example.gold_texts
    items = [
        (
            example.question,
            apply_perturbation(example.context, state.sequences[i].tokens, config.placement),
        )
        for i in indices
    ]
    dists = predict_batch(model, items, config.eval_spans)
    state.model_calls += len(items)
    for i, dist in zip(indices, dists):
        obj = objective(dist, golds, config)
        while len(state.seq_objectives) <= i:
            state.seq_objectives.append(float("inf"))
        state.seq_objectives[i] = obj
    _refresh_best(state)
    return dists


def _refresh_best(state: AttackState) -> None:
    best = int(np.argmin(state.seq_objectives))
    state.best_sequence_index = best
    state.best_objective = state.seq_objectives[best]


def attack_step(state: AttackState, model: SpanModel, config: AttackConfig) -> AttackState:
    """One greedy pass over every position of the active sequence.

    Each position batch-evaluates sampled pool candidates plus the incumbent
    token and commits the swap with the smallest objective (ties to the
    earliest candidate; the incumbent is listed first). The pass stops as
    soon as a committed swap meets the termination criterion.
    """
    if state.criterion_met:
        raise RuntimeError("attack already terminated")
    seq = state.sequences[state.active_index]
    example = state.example
    golds = example.gold_texts
    tokens = list(seq.tokens)
    committed_obj = state.seq_objectives[state.active_index]
    met = False

    for j in range(len(tokens)):
        pool = seq.pools[j]
        n_sample = min(config.candidates_per_step, len(pool))
        picks = state.rng.choice(len(pool), size=n_sample, replace=False)
        candidates = [tokens[j]]
        for i in picks:
            word = pool[int(i)]
            if word != tokens[j] and word not in candidates[1:]:
                candidates.append(word)

        contexts = []
        for word in candidates:
            trial = tokens.copy()
            trial[j] = word
            contexts.append(apply_perturbation(example.context, trial, config.placement))
        dists = predict_batch(
            model, [(example.question, ctx) for ctx in contexts], config.eval_spans
        )
        state.model_calls += len(candidates)

        objs = [objective(d, golds, config) for d in dists]
        best_i = int(np.argmin(objs))
        tokens[j] = candidates[best_i]
        committed_obj = objs[best_i]
        if _criterion(dists[best_i], golds, config):
            met = True
            break

    seq.tokens = tokens
    state.seq_objectives[state.active_index] = committed_obj
    state.iteration += 1
    _refresh_best(state)
    state.objective_trace.append(state.best_objective)
    if met:
        state.criterion_met = True
        state.best_sequence_index = state.active_index
        state.best_objective = committed_obj
    return state


def check_termination(state: AttackState, model: SpanModel, config: AttackConfig) -> bool:
    """Evaluate the best sequence's perturbed context against the criterion."""
    example = state.example
    ctx = apply_perturbation(
        example.context, state.sequences[state.best_sequence_index].tokens, config.placement
    )
    k = 1 if config.mode is Mode.ARGMAX else config.k
    dist = predict(model, example.question, ctx, k)
    state.model_calls += 1
    if _criterion(dist, example.gold_texts, config):
        state.criterion_met = True
    return state.criterion_met


def _outcome(state: AttackState, config: AttackConfig) -> AttackOutcome:
    best = state.sequences[state.best_sequence_index]
    return AttackOutcome(
        perturbed_context=apply_perturbation(
            state.example.context, best.tokens, config.placement
        ),
        adversary_tokens=tuple(best.tokens),
        success_on_search_model=state.criterion_met,
        objective_trace=tuple(state.objective_trace),
        model_calls=state.model_calls,
        terminated_by=(
            Termination.CRITERION_MET if state.criterion_met else Termination.ITERATION_LIMIT
        ),
    )


def run_attack(
    example: QAExample,
    model: SpanModel,
    config: AttackConfig,
    wordlist: WordList,
) -> AttackOutcome:
    """Full search: initial epochs, then extra particles and epochs if needed.

    Deterministic for a fixed (example, config.seed, model); every stochastic
    draw comes from a generator seeded by (config.seed, example.id).
    """
    rng = rng_for(config.seed, example.id, "addany")
    state = init_attack(example, config, wordlist, rng)
    dists = _evaluate_sequences(state, model, config, [0])
    state.objective_trace.append(state.best_objective)
    if _criterion(dists[0], example.gold_texts, config):
        state.criterion_met = True
        return _outcome(state, config)

    for _ in range(config.epochs):
        attack_step(state, model, config)
        if state.criterion_met:
            return _outcome(state, config)

    if config.extra_epochs:
        base = len(state.sequences)
        for _ in range(config.extra_particles):
            state.sequences.append(_fresh_sequence(example, config, wordlist, state.rng))
        fresh = list(range(base, len(state.sequences)))
        if fresh:
            dists = _evaluate_sequences(state, model, config, fresh)
            for i, dist in zip(fresh, dists):
                if _criterion(dist, example.gold_texts, config):
                    state.criterion_met = True
                    state.best_sequence_index = i
                    state.best_objective = state.seq_objectives[i]
                    return _outcome(state, config)

        for _ in range(config.extra_epochs):
            for idx in range(len(state.sequences)):
                state.active_index = idx
                attack_step(state, model, config)
                if state.criterion_met:
                    return _outcome(state, config)
    return _outcome(state, config)


def save_outcomes(
    outcomes: Sequence[tuple[str, AttackOutcome]],
    config: AttackConfig,
    path: str,
    header: dict | None = None,
) -> None:
    """Line-delimited outcome records with a leading header line."""
    head = dict(header or {})
    head.update(
        {
            "mode": config.mode.value,
            "placement": config.placement.value,
            "num_tokens": config.num_tokens,
            "k": config.k,
            "attack_seed": config.seed,
        }
    )
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(head) + "\n")
        for example_id, outcome in outcomes:
            f.write(
                json.dumps(
                    {
                        "example_id": example_id,
                        "mode": config.mode.value,
                        "adversary_tokens": list(outcome.adversary_tokens),
                        "placement": config.placement.value,
                        "success_on_search_model": outcome.success_on_search_model,
                        "objective_trace": list(outcome.objective_trace),
                        "terminated_by": outcome.terminated_by.value,
                        "model_calls": outcome.model_calls,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def load_outcome_records(path: str) -> tuple[dict, list[dict]]:
    with open(path, encoding="utf-8") as f:
        header = json.loads(f.readline())
        records = [json.loads(line) for line in f if line.strip()]
    return header, records
