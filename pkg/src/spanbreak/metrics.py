"""Scoring primitives: token-overlap F1, exact match, expected F1, kBest termination."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .corpus import normalize_answer

if TYPE_CHECKING:
    from .gateway import SpanDistribution


@dataclass(frozen=True)
class MetricResult:
    """Instance-level score: token F1 in [0, 1] and exact match."""

    f1: float
    em: bool

    def __post_init__(self) -> None:
        if not 0.0 <= self.f1 <= 1.0:
            raise ValueError(f"f1 out of range: {self.f1}")
        if self.em and self.f1 != 1.0:
            raise ValueError("exact match implies f1 == 1.0")


def _f1_single(prediction: str, gold: str) -> float:
    pred_tokens = normalize_answer(prediction).split()
    gold_tokens = normalize_answer(gold).split()
    if not pred_tokens and not gold_tokens:
        return 1.0
    common = Counter(pred_tokens) & Counter(gold_tokens)
    num_same = sum(common.values())
    if num_same == 0:
        return 0.0
    precision = num_same / len(pred_tokens)
    recall = num_same / len(gold_tokens)
    return 2 * precision * recall / (precision + recall)


def token_f1(prediction: str, golds: Sequence[str]) -> float:
    """Bag-of-tokens F1 after normalization, maxed over gold answers."""
    if not golds:
        raise ValueError("golds must be nonempty")
    return max(_f1_single(prediction, gold) for gold in golds)


def exact_match(prediction: str, golds: Sequence[str]) -> bool:
    """True iff the normalized prediction equals any normalized gold."""
    norm_pred = normalize_answer(prediction)
    return any(norm_pred == normalize_answer(gold) for gold in golds)


def score(prediction: str, golds: Sequence[str]) -> MetricResult:
    em = exact_match(prediction, golds)
    return MetricResult(f1=1.0 if em else token_f1(prediction, golds), em=em)


def expected_f1(dist: "SpanDistribution", golds: Sequence[str]) -> float:
    """Probability-weighted F1 over the distribution's retained spans."""
    if not dist.spans:
        raise ValueError("expected_f1 over an empty distribution")
    return sum(s.probability * token_f1(s.text, golds) for s in dist.spans)


def kbest_zero(dist: "SpanDistribution", golds: Sequence[str], k: int) -> bool:
    """True iff every one of the k highest-probability spans has F1 exactly 0.

    When the distribution holds fewer than k spans, all of them are checked.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    top = dist.spans[:k]
    return all(token_f1(s.text, golds) == 0.0 for s in top)


def aggregate(records: Sequence[MetricResult]) -> tuple[float, float]:
    """Macro-average (F1 %, EM %) over instance results."""
    if not records:
        raise ValueError("aggregate over an empty record list")
    n = len(records)
    f1 = 100.0 * sum(r.f1 for r in records) / n
    em = 100.0 * sum(1.0 for r in records if r.em) / n
    return f1, em
