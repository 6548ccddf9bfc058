"""Data ingestion and text processing: tokenization, answer normalization, loaders."""

from __future__ import annotations

import json
import re
import string
from dataclasses import dataclass, field

_PUNCT = re.escape(string.punctuation)
_TOKEN_RE = re.compile(rf"[^\s{_PUNCT}]+|[{_PUNCT}]")
_ARTICLE_RE = re.compile(r"\b(a|an|the)\b")
_PUNCT_SET = set(string.punctuation)

# Punctuation that attaches to the preceding token when rebuilding raw text.
_CLOSE_PUNCT = {",", ".", ";", ":", "!", "?", "%", ")", "]", "}"}
_OPEN_PUNCT = {"(", "[", "{"}


class CorpusError(ValueError):
    """Raised for malformed or unusable input files."""


@dataclass(frozen=True)
class TokenizedText:
    """Raw text plus its tokens and per-token (start, end) character offsets.

    `end` is exclusive; `raw[start:end]` equals the token. Instances are
    immutable and safe to share across threads.
    """

    raw: str
    tokens: tuple[str, ...]
    offsets: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if len(self.tokens) != len(self.offsets):
            raise ValueError("tokens and offsets must have equal length")
        prev_end = -1
        for tok, (start, end) in zip(self.tokens, self.offsets):
            if start < prev_end or start >= end:
                raise ValueError("offsets must be strictly increasing and non-overlapping")
            if self.raw[start:end] != tok:
                raise ValueError(f"offset slice {(start, end)} does not match token {tok!r}")
            prev_end = end

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class AnswerSpan:
    """A gold answer string and its character start offset into the context."""

    text: str
    char_start: int


@dataclass(frozen=True)
class QAExample:
    """One question/context/gold-answers record in SQuAD v1.1 form."""

    id: str
    question: TokenizedText
    context: TokenizedText
    gold_answers: tuple[AnswerSpan, ...]

    def __post_init__(self) -> None:
        if not self.gold_answers:
            raise ValueError(f"example {self.id}: gold_answers must be nonempty")
        for ans in self.gold_answers:
            start = ans.char_start
            if self.context.raw[start : start + len(ans.text)] != ans.text:
                raise ValueError(
                    f"example {self.id}: answer {ans.text!r} not found at offset {start}"
                )

    @property
    def gold_texts(self) -> list[str]:
        return [a.text for a in self.gold_answers]


@dataclass(frozen=True)
class WordList:
    """Ordered list of distinct lowercase tokens used as a common-word pool."""

    words: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.words:
            raise ValueError("word list must be nonempty")
        if len(set(self.words)) != len(self.words):
            raise ValueError("word list must not contain duplicates")


@dataclass(frozen=True)
class CorpusStore:
    """Paragraph corpus plus the flattened pool of all paragraph tokens."""

    paragraphs: tuple[TokenizedText, ...]
    token_pool: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        expected = sum(len(p) for p in self.paragraphs)
        if len(self.token_pool) != expected:
            raise ValueError("token_pool length must equal total paragraph token count")

    @staticmethod
    def from_paragraphs(paragraphs: list[TokenizedText]) -> "CorpusStore":
        pool = tuple(tok for p in paragraphs for tok in p.tokens)
        return CorpusStore(paragraphs=tuple(paragraphs), token_pool=pool)


def tokenize(raw: str) -> TokenizedText:
    """Split on whitespace, with punctuation characters as their own tokens."""
    tokens: list[str] = []
    offsets: list[tuple[int, int]] = []
    for m in _TOKEN_RE.finditer(raw):
        tokens.append(m.group())
        offsets.append(m.span())
    return TokenizedText(raw=raw, tokens=tuple(tokens), offsets=tuple(offsets))


def detokenize(tokens: list[str] | tuple[str, ...]) -> str:
    """Rebuild readable text from tokens, attaching punctuation to its neighbor."""
    parts: list[str] = []
    for tok in tokens:
        if parts and (tok in _CLOSE_PUNCT or parts[-1] in _OPEN_PUNCT):
            parts[-1] += tok
        else:
            parts.append(tok)
    return " ".join(parts)


def normalize_answer(text: str) -> str:
    """Lower text and remove punctuation, articles and extra whitespace."""
    text = text.lower()
    text = "".join(ch for ch in text if ch not in _PUNCT_SET)
    text = _ARTICLE_RE.sub(" ", text)
    return " ".join(text.split())


def load_squad(path: str) -> list[QAExample]:
    """Read a SQuAD v1.1 JSON file into QAExamples, one per (question, paragraph) pair.

    Rejects v2.0-style records (empty answer lists) since unanswerable
    questions are unsupported.
    """
    try:
        with open(path, encoding="utf-8") as f:
            payload = json.load(f)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"{path}: not valid JSON: {exc}") from exc

    examples: list[QAExample] = []
    try:
        articles = payload["data"]
    except (TypeError, KeyError):
        raise CorpusError(f"{path}: missing top-level 'data' list")
    for article in articles:
        for paragraph in article.get("paragraphs", []):
            try:
                context = tokenize(paragraph["context"])
                for qa in paragraph["qas"]:
                    qa_id = str(qa["id"])
                    answers = qa["answers"]
                    if not answers:
                        raise CorpusError(
                            f"{path}: record {qa_id}: empty answers (SQuAD v2.0 unsupported)"
                        )
                    golds = tuple(
                        AnswerSpan(text=a["text"], char_start=int(a["answer_start"]))
                        for a in answers
                    )
                    examples.append(
                        QAExample(
                            id=qa_id,
                            question=tokenize(qa["question"]),
                            context=context,
                            gold_answers=golds,
                        )
                    )
            except CorpusError:
                raise
            except (KeyError, TypeError, ValueError) as exc:
                ident = paragraph.get("context", "")[:40] if isinstance(paragraph, dict) else ""
                raise CorpusError(f"{path}: malformed record near {ident!r}: {exc}") from exc
    return examples


def dump_squad(examples: list[QAExample], path: str, title: str = "fixture") -> None:
    """Serialize QAExamples back to SQuAD v1.1 JSON (one paragraph per context)."""
    by_context: dict[str, dict] = {}
    for ex in examples:
        para = by_context.setdefault(ex.context.raw, {"context": ex.context.raw, "qas": []})
        para["qas"].append(
            {
                "id": ex.id,
                "question": ex.question.raw,
                "answers": [
                    {"text": a.text, "answer_start": a.char_start} for a in ex.gold_answers
                ],
            }
        )
    payload = {
        "version": "1.1",
        "data": [{"title": title, "paragraphs": list(by_context.values())}],
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, ensure_ascii=False, indent=1)


def load_corpus(path: str, min_tokens: int = 40) -> CorpusStore:
    """Read blank-line-separated paragraphs, dropping those under min_tokens."""
    with open(path, encoding="utf-8") as f:
        text = f.read()
    paragraphs = []
    for block in re.split(r"\n\s*\n", text):
        block = " ".join(block.split())
        if not block:
            continue
        tt = tokenize(block)
        if len(tt) >= min_tokens:
            paragraphs.append(tt)
    if not paragraphs:
        raise CorpusError(f"{path}: no paragraphs with at least {min_tokens} tokens")
    return CorpusStore.from_paragraphs(paragraphs)


def load_wordlist(path: str) -> WordList:
    """Read one token per line; lowercase and deduplicate preserving order."""
    seen: dict[str, None] = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            word = line.strip().lower()
            if word:
                seen.setdefault(word, None)
    if not seen:
        raise CorpusError(f"{path}: empty word list")
    return WordList(words=tuple(seen))
