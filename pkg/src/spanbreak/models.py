"""In-process span scorers: a lexical-overlap victim and a trainable linear surrogate.

Both models are pure functions of their parameters and the (question, context)
pair, so prediction is concurrency-safe. Candidate spans are all contiguous
token runs of the context up to a maximum length.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from .corpus import TokenizedText
from .gateway import SpanDistribution, SpanPrediction, token_span_text

if TYPE_CHECKING:
    from .extraction import ExtractionDataset

WINDOW = 6  # tokens of context considered on each side of a span
LENGTH_PENALTY = 0.1  # per extra span token in the overlap score denominator
WH_WORDS = frozenset({"who", "what", "when", "where", "why", "how"})
FEATURE_SPEC_VERSION = 1
FEATURE_DIM = 7
SERIAL_FORMAT = "spanbreak-surrogate/1"


class TrainingDivergence(RuntimeError):
    """Training produced a non-finite loss."""


class FeatureVersionError(ValueError):
    """A surrogate model was paired with an incompatible feature extractor."""


@dataclass(frozen=True)
class OverlapModelConfig:
    """Settings for the deterministic lexical-overlap scorer.

    The scoring rule, fixed so an independent oracle can replicate it: for a
    span covering token indices [s, e] of a context with match weights
    m[t] = idf(token_t) if lower(token_t) is among the question's
    alphanumeric-bearing tokens else 0 (tokens missing from idf_weights get
    idf_default; with idf_weights None every match weighs 1),

        score(s, e) = (sum(m[s..e]) + sum(m[s-6..s-1]) + sum(m[e+1..e+6]))
                      / (1 + 0.1 * (e - s))

    with window sums clipped to the context bounds. Probabilities are
    exp(score / temperature) normalized over all spans of length at most
    max_span_tokens; the top k are retained and renormalized.
    """

    max_span_tokens: int = 8
    temperature: float = 1.0
    idf_weights: dict[str, float] | None = None
    idf_default: float = 1.0

    def __post_init__(self) -> None:
        if self.max_span_tokens < 1:
            raise ValueError("max_span_tokens must be >= 1")
        if self.temperature <= 0:
            raise ValueError("temperature must be positive")
        if self.idf_default <= 0:
            raise ValueError("idf_default must be positive")


@lru_cache(maxsize=4096)
def _span_grid(n_tokens: int, max_len: int) -> tuple[np.ndarray, np.ndarray]:
    """Arrays of (start, end) inclusive indices for all spans, start asc then end asc."""
    starts = []
    ends = []
    for s in range(n_tokens):
        for e in range(s, min(n_tokens, s + max_len)):
            starts.append(s)
            ends.append(e)
    return np.asarray(starts, dtype=np.int64), np.asarray(ends, dtype=np.int64)


def _question_token_set(question: TokenizedText) -> frozenset[str]:
    """Lowercased question tokens that carry at least one alphanumeric character."""
    return frozenset(
        t.lower() for t in question.tokens if any(ch.isalnum() for ch in t)
    )


def _match_weights(
    context: TokenizedText,
    qset: frozenset[str],
    idf_weights: dict[str, float] | None,
    idf_default: float = 1.0,
) -> np.ndarray:
    lower = [t.lower() for t in context.tokens]
    if idf_weights is None:
        return np.asarray([1.0 if t in qset else 0.0 for t in lower])
    return np.asarray(
        [idf_weights.get(t, idf_default) if t in qset else 0.0 for t in lower]
    )


def _window_sums(
    weights: np.ndarray, starts: np.ndarray, ends: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(in-span, left-window, right-window) weight sums for every span."""
    n = len(weights)
    prefix = np.concatenate(([0.0], np.cumsum(weights)))
    in_span = prefix[ends + 1] - prefix[starts]
    left = prefix[starts] - prefix[np.maximum(starts - WINDOW, 0)]
    right = prefix[np.minimum(ends + 1 + WINDOW, n)] - prefix[ends + 1]
    return in_span, left, right


def _top_k_distribution(
    context: TokenizedText,
    starts: np.ndarray,
    ends: np.ndarray,
    scores: np.ndarray,
    temperature: float,
    k: int,
) -> SpanDistribution:
    logits = scores / temperature
    logits = logits - logits.max()
    weights = np.exp(logits)
    probs = weights / weights.sum()
    # lexsort: last key is primary.
    order = np.lexsort((ends, starts, -probs))
    top = order[: min(k, len(order))]
    mass = probs[top].sum()
    spans = tuple(
        SpanPrediction(
            start_token=int(starts[i]),
            end_token=int(ends[i]),
            text=token_span_text(context, int(starts[i]), int(ends[i])),
            probability=float(probs[i] / mass),
        )
        for i in top
    )
    return SpanDistribution(spans=spans, k_requested=k)


class OverlapModel:
    """Deterministic victim: idf-weighted question overlap around each span."""

    def __init__(self, config: OverlapModelConfig | None = None) -> None:
        self.config = config or OverlapModelConfig()

    def span_scores(
        self, question: TokenizedText, context: TokenizedText
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        cfg = self.config
        starts, ends = _span_grid(len(context), cfg.max_span_tokens)
        qset = _question_token_set(question)
        weights = _match_weights(context, qset, cfg.idf_weights, cfg.idf_default)
        in_span, left, right = _window_sums(weights, starts, ends)
        scores = (in_span + left + right) / (1.0 + LENGTH_PENALTY * (ends - starts))
        return starts, ends, scores

    def predict_batch(
        self, items: Sequence[tuple[TokenizedText, TokenizedText]], k: int
    ) -> list[SpanDistribution]:
        out = []
        for question, context in items:
            starts, ends, scores = self.span_scores(question, context)
            out.append(
                _top_k_distribution(context, starts, ends, scores, self.config.temperature, k)
            )
        return out


def feature_matrix(
    question: TokenizedText,
    context: TokenizedText,
    starts: np.ndarray,
    ends: np.ndarray,
    idf_weights: dict[str, float] | None = None,
) -> np.ndarray:
    """Feature rows for candidate spans; see FEATURE_SPEC_VERSION 1 layout.

    Columns: 0 in-span question overlap, 1 left-window overlap, 2 right-window
    overlap, 3 span length, 4 normalized start position, 5 wh-word count in
    span plus windows, 6 idf-weighted overlap in span plus windows.
    """
    n = len(context)
    qset = _question_token_set(question)
    plain = _match_weights(context, qset, None)
    idf = _match_weights(context, qset, idf_weights)
    wh = np.asarray([1.0 if t.lower() in WH_WORDS else 0.0 for t in context.tokens])

    in_span, left, right = _window_sums(plain, starts, ends)
    idf_in, idf_left, idf_right = _window_sums(idf, starts, ends)
    wh_in, wh_left, wh_right = _window_sums(wh, starts, ends)

    features = np.empty((len(starts), FEATURE_DIM))
    features[:, 0] = in_span
    features[:, 1] = left
    features[:, 2] = right
    features[:, 3] = ends - starts + 1
    features[:, 4] = starts / max(1, n - 1)
    features[:, 5] = wh_in + wh_left + wh_right
    features[:, 6] = idf_in + idf_left + idf_right
    return features


def extract_features(
    question: TokenizedText,
    context: TokenizedText,
    span: tuple[int, int],
    idf_weights: dict[str, float] | None = None,
) -> np.ndarray:
    """Feature vector for a single (start, end) token span."""
    s, e = span
    if not (0 <= s <= e < len(context)):
        raise ValueError(f"span {span} invalid for a {len(context)}-token context")
    starts = np.asarray([s], dtype=np.int64)
    ends = np.asarray([e], dtype=np.int64)
    return feature_matrix(question, context, starts, ends, idf_weights)[0]


@dataclass(frozen=True)
class SurrogateHyper:
    epochs: int = 3
    learning_rate: float = 0.1
    l2: float = 1e-4
    seed: int = 0


@dataclass
class SurrogateModel:
    """Linear span scorer trained to mimic a victim's top-1 answers."""

    weights: np.ndarray
    bias: float
    feature_spec_version: int = FEATURE_SPEC_VERSION
    max_span_tokens: int = 8
    training_meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if self.weights.shape != (FEATURE_DIM,):
            raise ValueError(f"weights must have shape ({FEATURE_DIM},)")
        if not np.all(np.isfinite(self.weights)) or not math.isfinite(self.bias):
            raise ValueError("weights and bias must be finite")

    def predict_batch(
        self, items: Sequence[tuple[TokenizedText, TokenizedText]], k: int
    ) -> list[SpanDistribution]:
        if self.feature_spec_version != FEATURE_SPEC_VERSION:
            raise FeatureVersionError(
                f"model has feature spec {self.feature_spec_version}, "
                f"extractor provides {FEATURE_SPEC_VERSION}"
            )
        out = []
        for question, context in items:
            starts, ends = _span_grid(len(context), self.max_span_tokens)
            feats = feature_matrix(question, context, starts, ends)
            scores = feats @ self.weights + self.bias
            out.append(_top_k_distribution(context, starts, ends, scores, 1.0, k))
        return out

    def save(self, path: str, header: dict | None = None) -> None:
        """Write a versioned key-value file; floats as hex for bit-exact round-trips."""
        doc = dict(header or {})
        doc.update(
            {
                "format": SERIAL_FORMAT,
                "feature_spec_version": self.feature_spec_version,
                "max_span_tokens": self.max_span_tokens,
                "weights": [float(w).hex() for w in self.weights],
                "bias": float(self.bias).hex(),
                "training_meta": self.training_meta,
            }
        )
        with open(path, "w", encoding="utf-8") as f:
            json.dump(doc, f, indent=1)

    @staticmethod
    def load(path: str) -> "SurrogateModel":
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
        if doc.get("format") != SERIAL_FORMAT:
            raise ValueError(f"{path}: unrecognized model format {doc.get('format')!r}")
        return SurrogateModel(
            weights=np.asarray([float.fromhex(w) for w in doc["weights"]]),
            bias=float.fromhex(doc["bias"]),
            feature_spec_version=int(doc["feature_spec_version"]),
            max_span_tokens=int(doc.get("max_span_tokens", 8)),
            training_meta=doc.get("training_meta", {}),
        )


def _softmax(z: np.ndarray) -> np.ndarray:
    shifted = z - z.max()
    w = np.exp(shifted)
    return w / w.sum()


def loss_and_gradient(
    feats: np.ndarray,
    target: int,
    weights: np.ndarray,
    bias: float,
    l2: float,
) -> tuple[float, np.ndarray, float]:
    """Cross-entropy of the target span under the linear softmax, with l2 on weights.

    Returns (loss, d_loss/d_weights, d_loss/d_bias). The bias shifts every
    candidate logit equally, so its gradient is identically zero; it is kept
    for the serialization contract.
    """
    z = feats @ weights + bias
    p = _softmax(z)
    loss = -math.log(max(p[target], 1e-300)) + 0.5 * l2 * float(weights @ weights)
    grad_w = feats.T @ p - feats[target] + l2 * weights
    return loss, grad_w, 0.0


@dataclass(frozen=True)
class _TrainingInstance:
    feats: np.ndarray
    target: int


def _candidate_target(
    context: TokenizedText,
    answer_start: int,
    answer_text: str,
    starts: np.ndarray,
    ends: np.ndarray,
) -> int | None:
    """Index of the candidate span matching a character-level answer, if any."""
    from .gateway import char_span_to_tokens

    try:
        s, e = char_span_to_tokens(context, answer_start, answer_start + len(answer_text))
    except ValueError:
        return None
    hits = np.nonzero((starts == s) & (ends == e))[0]
    return int(hits[0]) if len(hits) else None


def _build_instances(
    dataset: "ExtractionDataset", max_span_tokens: int
) -> list[_TrainingInstance]:
    instances = []
    for ex in dataset.examples:
        starts, ends = _span_grid(len(ex.context), max_span_tokens)
        target = _candidate_target(
            ex.context, ex.victim_answer.char_start, ex.victim_answer.text, starts, ends
        )
        if target is None:
            continue  # label longer than any candidate span; skip
        feats = feature_matrix(ex.query, ex.context, starts, ends)
        instances.append(_TrainingInstance(feats=feats, target=target))
    return instances


def surrogate_train(
    dataset: "ExtractionDataset",
    hyper: SurrogateHyper | None = None,
    max_span_tokens: int = 8,
) -> SurrogateModel:
    """SGD on the span cross-entropy; deterministic for a fixed seed."""
    hyper = hyper or SurrogateHyper()
    if not dataset.examples:
        raise ValueError("training dataset is empty")
    instances = _build_instances(dataset, max_span_tokens)
    if not instances:
        raise ValueError("no training example has a victim label within candidate spans")

    rng = np.random.Generator(np.random.PCG64(hyper.seed))
    weights = np.zeros(FEATURE_DIM)
    bias = 0.0
    final_loss = float("nan")
    for epoch in range(hyper.epochs):
        order = rng.permutation(len(instances))
        total = 0.0
        for idx in order:
            inst = instances[idx]
            loss, grad_w, grad_b = loss_and_gradient(
                inst.feats, inst.target, weights, bias, hyper.l2
            )
            if not math.isfinite(loss):
                raise TrainingDivergence(f"non-finite loss at epoch {epoch}")
            weights = weights - hyper.learning_rate * grad_w
            bias = bias - hyper.learning_rate * grad_b
            total += loss
        final_loss = total / len(instances)
        if not np.all(np.isfinite(weights)):
            raise TrainingDivergence(f"non-finite weights at epoch {epoch}")

    return SurrogateModel(
        weights=weights,
        bias=bias,
        max_span_tokens=max_span_tokens,
        training_meta={
            "epochs": hyper.epochs,
            "learning_rate": hyper.learning_rate,
            "l2": hyper.l2,
            "seed": hyper.seed,
            "final_loss": final_loss,
            "instances": len(instances),
        },
    )


def training_accuracy(model: SurrogateModel, dataset: "ExtractionDataset") -> float:
    """Fraction of training examples whose argmax candidate is the victim label."""
    instances = _build_instances(dataset, model.max_span_tokens)
    if not instances:
        return 0.0
    hits = 0
    for inst in instances:
        z = inst.feats @ model.weights + model.bias
        if int(np.argmax(z)) == inst.target:
            hits += 1
    return hits / len(instances)


def zero_surrogate(max_span_tokens: int = 8) -> SurrogateModel:
    """Untrained baseline: uniform scores, top-1 falls to the first span in order."""
    return SurrogateModel(weights=np.zeros(FEATURE_DIM), bias=0.0, max_span_tokens=max_span_tokens)


def idf_from_corpus(paragraphs: Iterable[TokenizedText]) -> tuple[dict[str, float], float]:
    """Smoothed paragraph-level inverse document frequency.

    Returns (weights, default) where default is the weight for unseen tokens
    (document frequency zero under the same smoothing).
    """
    doc_count = 0
    seen: dict[str, int] = {}
    for p in paragraphs:
        doc_count += 1
        for tok in set(t.lower() for t in p.tokens):
            seen[tok] = seen.get(tok, 0) + 1
    weights = {
        tok: math.log((1 + doc_count) / (1 + cnt)) + 1.0 for tok, cnt in seen.items()
    }
    return weights, math.log(1 + doc_count) + 1.0


def builtin_victim() -> OverlapModel:
    """The bundled victim: overlap scoring with idf from the bundled corpus.

    Deterministic — it depends only on packaged data files.
    """
    from .corpus import load_corpus
    from .resources import PARAGRAPHS, resource_path

    corpus = load_corpus(str(resource_path(PARAGRAPHS)))
    weights, default = idf_from_corpus(corpus.paragraphs)
    return OverlapModel(
        OverlapModelConfig(idf_weights=weights, idf_default=default)
    )
