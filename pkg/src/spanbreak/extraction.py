"""Synthesizes extraction queries and contexts, labels them via the victim,
and assembles the surrogate's training set."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .corpus import AnswerSpan, CorpusStore, TokenizedText, detokenize, tokenize
from .gateway import ModelError, SpanModel, predict_batch
from .metrics import exact_match
from .models import SurrogateHyper, SurrogateModel, surrogate_train

QUESTION_WORDS = ("where", "who", "what", "why")
_LABEL_BATCH = 64


class ExtractionScheme(Enum):
    WIKI = "WIKI"
    RANDOM = "RANDOM"


class ExtractionAborted(RuntimeError):
    """Victim became unreachable mid-run; carries the partial dataset."""

    def __init__(self, message: str, partial: "ExtractionDataset") -> None:
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class SynthesizedExample:
    query: TokenizedText
    context: TokenizedText
    victim_answer: AnswerSpan
    victim_probability: float

    def __post_init__(self) -> None:
        start = self.victim_answer.char_start
        text = self.victim_answer.text
        if self.context.raw[start : start + len(text)] != text:
            raise ValueError("victim answer does not occur in context at its offset")


@dataclass(frozen=True)
class ExtractionDataset:
    scheme: ExtractionScheme
    examples: tuple[SynthesizedExample, ...]
    queries_spent: int
    seed: int

    def __post_init__(self) -> None:
        if self.queries_spent < len(self.examples):
            raise ValueError("queries_spent cannot be below the example count")

    def split_holdout(self, fraction: float = 0.1) -> tuple["ExtractionDataset", "ExtractionDataset"]:
        """(train, holdout) split; holdout is the last fraction by generation order."""
        cut = len(self.examples) - max(1, int(len(self.examples) * fraction))
        train = ExtractionDataset(self.scheme, self.examples[:cut], cut, self.seed)
        held = ExtractionDataset(
            self.scheme, self.examples[cut:], len(self.examples) - cut, self.seed
        )
        return train, held


def gen_context(
    scheme: ExtractionScheme,
    corpus: CorpusStore,
    rng: np.random.Generator,
    length_range: tuple[int, int] = (80, 120),
) -> TokenizedText:
    """WIKI: a uniformly sampled paragraph. RANDOM: uniform tokens from the pool."""
    if not corpus.paragraphs:
        raise ValueError("corpus is empty")
    if scheme is ExtractionScheme.WIKI:
        return corpus.paragraphs[int(rng.integers(len(corpus.paragraphs)))]
    lo, hi = length_range
    n = int(rng.integers(lo, hi + 1))
    picks = rng.integers(0, len(corpus.token_pool), size=n)
    tokens = [corpus.token_pool[int(i)] for i in picks]
    return tokenize(detokenize(tokens))


def gen_query(
    context: TokenizedText,
    rng: np.random.Generator,
    query_len_range: tuple[int, int] = (5, 12),
) -> TokenizedText:
    """Random context words, prefixed with a question word and suffixed with '?'."""
    lo, hi = query_len_range
    if len(context) < lo:
        raise ValueError(f"context has {len(context)} tokens, need at least {lo}")
    n = int(rng.integers(lo, hi + 1))
    n = min(n, len(context))
    picks = rng.choice(len(context), size=n, replace=False)
    words = [context.tokens[int(i)] for i in picks]
    prefix = QUESTION_WORDS[int(rng.integers(len(QUESTION_WORDS)))].capitalize()
    return tokenize(detokenize([prefix, *words, "?"]))


def build_dataset(
    scheme: ExtractionScheme,
    victim: SpanModel,
    corpus: CorpusStore,
    budget: int,
    rng: np.random.Generator,
    seed: int,
    context_length_range: tuple[int, int] = (80, 120),
    query_len_range: tuple[int, int] = (5, 12),
) -> ExtractionDataset:
    """Issue exactly `budget` top-1 victim queries over synthesized inputs.

    Pairs whose victim answer is empty are dropped but still count against
    queries_spent. Labeling runs in batches; example order follows generation
    order regardless of batching.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    pairs: list[tuple[TokenizedText, TokenizedText]] = []
    for _ in range(budget):
        context = gen_context(scheme, corpus, rng, context_length_range)
        query = gen_query(context, rng, query_len_range)
        pairs.append((query, context))

    examples: list[SynthesizedExample] = []
    spent = 0
    for lo in range(0, len(pairs), _LABEL_BATCH):
        chunk = pairs[lo : lo + _LABEL_BATCH]
        try:
            dists = predict_batch(victim, chunk, k=1)
        except ModelError as exc:
            partial = ExtractionDataset(scheme, tuple(examples), spent, seed)
            raise ExtractionAborted(f"victim failed after {spent} queries: {exc}", partial)
        spent += len(chunk)
        for (query, context), dist in zip(chunk, dists):
            top = dist.top
            if not top.text.strip():
                continue
            char_start = context.offsets[top.start_token][0]
            examples.append(
                SynthesizedExample(
                    query=query,
                    context=context,
                    victim_answer=AnswerSpan(text=top.text, char_start=char_start),
                    victim_probability=top.probability,
                )
            )
    return ExtractionDataset(scheme, tuple(examples), spent, seed)


def train_extracted(
    dataset: ExtractionDataset,
    hyper: SurrogateHyper | None = None,
    max_span_tokens: int = 8,
) -> SurrogateModel:
    """Train the surrogate and record scheme and seed in its metadata."""
    model = surrogate_train(dataset, hyper, max_span_tokens)
    model.training_meta["scheme"] = dataset.scheme.value
    model.training_meta["extraction_seed"] = dataset.seed
    return model


def agreement_em(model: SpanModel, examples: Sequence[SynthesizedExample]) -> float:
    """EM rate between the model's top-1 answers and stored victim answers."""
    if not examples:
        raise ValueError("no examples to measure agreement on")
    items = [(ex.query, ex.context) for ex in examples]
    dists = predict_batch(model, items, k=1)
    hits = sum(
        1
        for ex, dist in zip(examples, dists)
        if exact_match(dist.top.text, [ex.victim_answer.text])
    )
    return hits / len(examples)


def save_dataset(dataset: ExtractionDataset, path: str, header: dict | None = None) -> None:
    """Line-delimited records with a leading header line."""
    head = dict(header or {})
    head.update(
        {
            "scheme": dataset.scheme.value,
            "seed": dataset.seed,
            "queries_spent": dataset.queries_spent,
            "examples": len(dataset.examples),
        }
    )
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(head) + "\n")
        for ex in dataset.examples:
            f.write(
                json.dumps(
                    {
                        "query": ex.query.raw,
                        "context": ex.context.raw,
                        "answer": ex.victim_answer.text,
                        "char_start": ex.victim_answer.char_start,
                        "probability": ex.victim_probability,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def load_dataset(path: str) -> ExtractionDataset:
    with open(path, encoding="utf-8") as f:
        header = json.loads(f.readline())
        examples = []
        for line in f:
            if not line.strip():
                continue
            rec = json.loads(line)
            examples.append(
                SynthesizedExample(
                    query=tokenize(rec["query"]),
                    context=tokenize(rec["context"]),
                    victim_answer=AnswerSpan(rec["answer"], int(rec["char_start"])),
                    victim_probability=float(rec["probability"]),
                )
            )
    return ExtractionDataset(
        scheme=ExtractionScheme(header["scheme"]),
        examples=tuple(examples),
        queries_spent=int(header["queries_spent"]),
        seed=int(header["seed"]),
    )
