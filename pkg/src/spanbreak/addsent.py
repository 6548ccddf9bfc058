"""Rule-based distractor sentences: mutate the query, fake the answer, append.

The pipeline has three steps: (1) mutate the question by swapping antonyms,
perturbing numbers, and substituting gazetteer entities; (2) draw a fake
answer of the same category as the gold; (3) render the mutated question and
fake answer as a declarative sentence appended to the context. Best-of-n
selection queries the victim per candidate; one-of-n selection is random and
needs no model access.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .campaign import AnswerCategory, Method, TransferRecord, categorize
from .corpus import AnswerSpan, QAExample, TokenizedText, detokenize, normalize_answer, tokenize
from .gateway import SpanModel, predict_batch
from .metrics import exact_match, token_f1
from .addany import Placement

_QUESTION_LEADS = frozenset(["who", "what", "when", "where", "why", "how"])
_COPULAS = frozenset(["is", "are", "was", "were"])
_AUXILIARIES = frozenset(["did", "do", "does"])
_STOPWORDS = frozenset(
    """a an the is are was were be been being and or but of in on at to for
    with by from as that this these those it its his her their there then
    than did do does not no because who whom whose what when where why how
    which while if so such after before during since until between among
    through over under above below near behind beyond onto into out up off
    down about across along around against beside beneath upon within
    without toward towards per via""".split()
)
_NUMBER_RE = re.compile(r"(\d+)(st|nd|rd|th)?$")


@dataclass(frozen=True)
class AntonymLexicon:
    """Token-to-replacement map; construction rejects identity entries."""

    entries: dict[str, str]

    def __post_init__(self) -> None:
        for word, repl in self.entries.items():
            if word.lower() == repl.lower():
                raise ValueError(f"lexicon maps {word!r} to itself")

    def get(self, token: str) -> str | None:
        return self.entries.get(token.lower())


@dataclass(frozen=True)
class FakeAnswerTable:
    """Fake answers per answer category; every category must be covered."""

    rows: dict[AnswerCategory, tuple[str, ...]]

    def __post_init__(self) -> None:
        for cat in AnswerCategory:
            if not self.rows.get(cat):
                raise ValueError(f"fake-answer table missing category {cat.value}")

    @classmethod
    def from_mapping(cls, raw: dict[str, list[str]]) -> "FakeAnswerTable":
        rows = {AnswerCategory(name): tuple(answers) for name, answers in raw.items()}
        return cls(rows=rows)


def content_tokens(text: str) -> set[str]:
    """Lowercased word tokens minus function words."""
    out = set()
    for tok in tokenize(text).tokens:
        low = tok.lower()
        if any(ch.isalnum() for ch in low) and low not in _STOPWORDS:
            out.add(low)
    return out


@dataclass(frozen=True)
class AddSentCandidate:
    """A distractor sentence that must not echo any gold-answer content token."""

    sentence: TokenizedText
    mutated_query: TokenizedText
    fake_answer: str
    gold_texts: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.fake_answer.lower() not in self.sentence.raw.lower():
            raise ValueError("fake answer does not occur in the sentence")
        sentence_words = content_tokens(self.sentence.raw)
        for gold in self.gold_texts:
            clash = sentence_words & content_tokens(gold)
            if clash:
                raise ValueError(
                    f"sentence shares content tokens {sorted(clash)} with gold {gold!r}"
                )


@dataclass(frozen=True)
class AddSentResources:
    lexicon: AntonymLexicon
    fake_answers: FakeAnswerTable
    places: tuple[str, ...]
    names: tuple[str, ...]


def _match_case(template: str, replacement: str) -> str:
    if template[:1].isupper():
        return replacement[:1].upper() + replacement[1:]
    return replacement


def _perturb_number(token: str, rng: np.random.Generator) -> str:
    """Change the last digit to a different one; length and suffix survive."""
    m = _NUMBER_RE.match(token)
    assert m is not None
    digits, suffix = m.group(1), m.group(2) or ""
    last = digits[-1]
    choices = [d for d in "0123456789" if d != last]
    if len(digits) > 1 and digits[:-1] == "0" * (len(digits) - 1):
        choices = [d for d in choices if d != "0"]
    new_last = choices[int(rng.integers(len(choices)))]
    return digits[:-1] + new_last + suffix


def _swap_entity(
    token: str, pool: Sequence[str], rng: np.random.Generator
) -> str | None:
    others = [p for p in pool if p.lower() != token.lower()]
    if not others:
        return None
    pick = others[int(rng.integers(len(others)))]
    return _match_case(token, pick)


def mutate_query(
    question: TokenizedText,
    lexicon: AntonymLexicon,
    resources: AddSentResources,
    rng: np.random.Generator,
) -> TokenizedText | None:
    """Swap antonyms, perturb numbers, substitute entities; None if untouched.

    Original capitalization is carried onto each replacement. Returning None
    signals the attack cannot proceed for this question.
    """
    place_set = {p.lower() for p in resources.places}
    name_set = {n.lower() for n in resources.names}
    out: list[str] = []
    changed = 0
    for tok in question.tokens:
        low = tok.lower()
        replacement: str | None = None
        if _NUMBER_RE.match(tok) and any(ch.isdigit() for ch in tok):
            replacement = _perturb_number(tok, rng)
        elif low in place_set:
            replacement = _swap_entity(tok, resources.places, rng)
        elif low in name_set:
            replacement = _swap_entity(tok, resources.names, rng)
        else:
            antonym = lexicon.get(tok)
            if antonym is not None:
                replacement = _match_case(tok, antonym)
        if replacement is not None and replacement != tok:
            out.append(replacement)
            changed += 1
        else:
            out.append(tok)
    if changed == 0:
        return None
    return tokenize(detokenize(out))


def fake_answer(
    gold: AnswerSpan,
    table: FakeAnswerTable,
    context: TokenizedText,
    rng: np.random.Generator,
    avoid: Sequence[str] = (),
) -> str:
    """Sample a same-category answer that normalizes differently from every gold."""
    category = categorize(gold, context)
    pool = table.rows[category]
    banned = {normalize_answer(gold.text)} | {normalize_answer(a) for a in avoid}
    usable = [a for a in pool if normalize_answer(a) not in banned]
    if not usable:
        usable = [a for a in table.rows[AnswerCategory.OTHERS] if normalize_answer(a) not in banned]
    if not usable:
        raise ValueError(f"no usable fake answers for category {category.value}")
    return usable[int(rng.integers(len(usable)))]


def _capitalize_first(tokens: list[str]) -> list[str]:
    if tokens and tokens[0][:1].islower():
        return [tokens[0][:1].upper() + tokens[0][1:], *tokens[1:]]
    return tokens


def to_declarative(mutated_query: TokenizedText, fake: str) -> TokenizedText:
    """Render a question plus fake answer as a statement ending in a period.

    who/what put the fake answer in subject position (object position after a
    leading did/do/does); when/where attach "in <fake>", why "because of
    <fake>", how "by <fake>". Anything else falls back to
    "<query-without-?> is <fake>.".
    """
    body = [t for t in mutated_query.tokens if t != "?"]
    fake_tokens = list(tokenize(fake).tokens)
    if not body:
        return tokenize(f"{fake} is the answer.")
    lead = body[0].lower()
    rest = body[1:]

    if lead not in _QUESTION_LEADS or not rest:
        out = _capitalize_first(body) + ["is", *fake_tokens]
    elif lead in ("who", "what"):
        if rest[0].lower() in _AUXILIARIES and len(rest) > 1:
            out = _capitalize_first(rest[1:]) + fake_tokens
        else:
            out = _capitalize_first(fake_tokens) + rest
    else:
        joiner = {"when": ["in"], "where": ["in"], "why": ["because", "of"], "how": ["by"]}[lead]
        if rest[0].lower() in _COPULAS and len(rest) > 1:
            out = _capitalize_first(rest[1:]) + [rest[0].lower()] + joiner + fake_tokens
        elif rest[0].lower() in _AUXILIARIES and len(rest) > 1:
            out = _capitalize_first(rest[1:]) + joiner + fake_tokens
        else:
            out = _capitalize_first(rest) + joiner + fake_tokens
    return tokenize(detokenize([*out, "."]))


def gen_candidates(
    example: QAExample,
    resources: AddSentResources,
    rng: np.random.Generator,
    n: int,
) -> list[AddSentCandidate]:
    """Up to n distinct candidates; empty when the query admits no mutation."""
    if n <= 0:
        raise ValueError("n must be positive")
    golds = example.gold_texts
    candidates: list[AddSentCandidate] = []
    seen: set[str] = set()
    for _ in range(n):
        mutated = mutate_query(example.question, resources.lexicon, resources, rng)
        if mutated is None:
            return []
        fake = fake_answer(
            example.gold_answers[0], resources.fake_answers, example.context, rng, avoid=golds
        )
        sentence = to_declarative(mutated, fake)
        if sentence.raw in seen:
            continue
        try:
            candidate = AddSentCandidate(
                sentence=sentence,
                mutated_query=mutated,
                fake_answer=fake,
                gold_texts=golds,
            )
        except ValueError:
            continue
        seen.add(sentence.raw)
        candidates.append(candidate)
    return candidates


def apply_sentence(
    example: QAExample, sentence: TokenizedText, placement: Placement
) -> QAExample:
    """Splice the distractor sentence into the context, keeping golds valid."""
    if placement is Placement.SUFFIX:
        raw = example.context.raw + " " + sentence.raw
        shift = 0
    else:
        raw = sentence.raw + " " + example.context.raw
        shift = len(sentence.raw) + 1
    golds = tuple(
        AnswerSpan(text=g.text, char_start=g.char_start + shift)
        for g in example.gold_answers
    )
    return QAExample(
        id=example.id,
        question=example.question,
        context=tokenize(raw),
        gold_answers=golds,
    )


def select_best(
    candidates: Sequence[AddSentCandidate],
    victim: SpanModel,
    example: QAExample,
    placement: Placement = Placement.SUFFIX,
    f1_before: float | None = None,
    method: Method = Method.ADDSENT,
) -> TransferRecord:
    """Query the victim per candidate and keep the lowest post-attack F1.

    Ties go to the earliest candidate. With no candidates the record carries
    the unperturbed answer's scores and an empty adversary string.
    """
    if f1_before is None or not candidates:
        dist = predict_batch(victim, [(example.question, example.context)], k=1)[0]
        plain_answer = dist.top.text
        if f1_before is None:
            f1_before = token_f1(plain_answer, example.gold_texts)
    if not candidates:
        return TransferRecord(
            example_id=example.id,
            method=method,
            f1_before=f1_before,
            f1_after=token_f1(plain_answer, example.gold_texts),
            em_after=exact_match(plain_answer, example.gold_texts),
            adversary="",
        )
    perturbed = [apply_sentence(example, c.sentence, placement) for c in candidates]
    dists = predict_batch(victim, [(p.question, p.context) for p in perturbed], k=1)
    best_idx, best_f1, best_em = 0, float("inf"), False
    for idx, (pert, dist) in enumerate(zip(perturbed, dists)):
        answer = dist.top.text
        f1 = token_f1(answer, pert.gold_texts)
        if f1 < best_f1:
            best_idx, best_f1 = idx, f1
            best_em = exact_match(answer, pert.gold_texts)
    return TransferRecord(
        example_id=example.id,
        method=method,
        f1_before=f1_before,
        f1_after=best_f1,
        em_after=best_em,
        adversary=candidates[best_idx].sentence.raw,
    )


def select_one(
    candidates: Sequence[AddSentCandidate], rng: np.random.Generator
) -> AddSentCandidate | None:
    """Uniform choice among candidates; None when there are none."""
    if not candidates:
        return None
    return candidates[int(rng.integers(len(candidates)))]
