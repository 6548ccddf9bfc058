"""Transfer evaluation, answer-category analysis, joint coverage, and report emission."""

from __future__ import annotations

import csv
import json
import logging
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence

from .addany import AttackOutcome, Placement, perturbed_example
from .corpus import AnswerSpan, QAExample, TokenizedText, tokenize
from .gateway import ModelError, SpanModel, predict_batch
from .metrics import exact_match, token_f1
from .resources import NAMES, PLACES, load_lines

log = logging.getLogger(__name__)


class Method(Enum):
    W_A_KBEST = "W-A-KBEST"
    W_A_ARGMAX = "W-A-ARGMAX"
    R_A_KBEST = "R-A-KBEST"
    R_A_ARGMAX = "R-A-ARGMAX"
    ADDSENT = "ADDSENT"
    ADDONESENT = "ADDONESENT"


class AnswerCategory(Enum):
    NAMES = "Names"
    NUMBERS = "Numbers"
    PLACES = "Places"
    DATES = "Dates"
    OTHER_ENTS = "OtherEnts"
    NOUN_PHRASES = "NounPhrases"
    VERB_PHRASES = "VerbPhrases"
    ADJ_PHRASES = "AdjPhrases"
    CLAUSES = "Clauses"
    OTHERS = "Others"


@dataclass(frozen=True)
class TransferRecord:
    example_id: str
    method: Method
    f1_before: float
    f1_after: float
    em_after: bool
    adversary: str

    def __post_init__(self) -> None:
        for value in (self.f1_before, self.f1_after):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"F1 out of range: {value}")


@dataclass(frozen=True)
class CoverageReport:
    """Joint success counts; success means post-attack F1 of exactly 0."""

    only_a: int
    only_b: int
    both: int
    neither: int
    combined_f1: float  # percentage, min-of-methods per example

    @property
    def total(self) -> int:
        return self.only_a + self.only_b + self.both + self.neither


@dataclass(frozen=True)
class CategoryRow:
    category: str
    frequency_pct: float
    f1_before_pct: float
    f1_after_pct: float
    avg_answer_tokens: float
    count: int


@dataclass(frozen=True)
class CategoryReport:
    rows: tuple[CategoryRow, ...]
    total: CategoryRow


_MONTHS = frozenset(
    "january february march april may june july august september october november december".split()
)
_MONTH_ABBREV = frozenset("jan feb mar apr jun jul aug sep sept oct nov dec".split())
_NUMBER_WORDS = frozenset(
    """zero one two three four five six seven eight nine ten eleven twelve thirteen
    fourteen fifteen sixteen seventeen eighteen nineteen twenty thirty forty fifty
    sixty seventy eighty ninety hundred thousand million billion trillion half
    quarter dozen""".split()
)
_NUMERIC_EXTRA = frozenset("percent per cent to of about around nearly over under".split())
_HONORIFICS = frozenset("mr mrs ms dr prof sir president king queen general captain".split())
_COPULAS = frozenset("is are was were be been being".split())
_COMMON_VERBS = frozenset(
    """is are was were be been being has have had do does did can could will would
    shall should may might must won lost became become began begin led lead said
    say made make took take gave give went go saw see knew know found find wrote
    write built build brought bring fought fight held hold kept keep left ran run
    grew grow rose rise fell fall met meet paid pay sent send sold sell told tell
    thought think caused cause created create released release allowed allow
    launched discovered invented founded signed ended started opened closed
    produced developed published refined added introduced established defeated
    crossed reached carried remained appeared served helped moved played studied
    visited traveled returned arrived announced""".split()
)
_COMMON_ADJECTIVES = frozenset(
    """popular unpopular large small old new young ancient modern rare common
    famous quiet loud bright dark rapid slow early late major minor extreme
    severe gentle notable remarkable successful strong weak vast tiny deep
    shallow dense sparse brilliant vivid durable fragile distinctive unusual
    important scarce abundant exceptional brittle hollow faint crisp sturdy""".split()
)
_ADJ_SUFFIXES = ("ous", "ful", "ive", "ial", "ical", "able", "ible", "less", "ish", "ant", "ent")

_places_cache: frozenset[str] | None = None
_names_cache: frozenset[str] | None = None


def _places() -> frozenset[str]:
    global _places_cache
    if _places_cache is None:
        _places_cache = frozenset(w.lower() for w in load_lines(PLACES))
    return _places_cache


def _names() -> frozenset[str]:
    global _names_cache
    if _names_cache is None:
        _names_cache = frozenset(w.lower() for w in load_lines(NAMES))
    return _names_cache


def _is_numeric_token(tok: str) -> bool:
    low = tok.lower()
    if re.fullmatch(r"\d+(st|nd|rd|th)?", low):
        return True
    return low in _NUMBER_WORDS


def _looks_like_verb(tok: str) -> bool:
    low = tok.lower()
    if low in _COMMON_VERBS:
        return True
    return len(low) > 3 and low.endswith("ed") and low.isalpha()


def _looks_like_adjective(tok: str) -> bool:
    low = tok.lower()
    if low in _COMMON_ADJECTIVES:
        return True
    return low.isalpha() and len(low) > 4 and low.endswith(_ADJ_SUFFIXES)


def categorize(gold: AnswerSpan, context: TokenizedText) -> AnswerCategory:
    """First-match heuristic classification of a gold answer span.

    Priority: Dates, Numbers, Places, Names, OtherEnts, Clauses, VerbPhrases,
    AdjPhrases, NounPhrases, Others. Total over any input.
    """
    tokens = tokenize(gold.text).tokens
    if not tokens:
        return AnswerCategory.OTHERS
    lowers = [t.lower() for t in tokens]
    word_tokens = [t for t in tokens if any(ch.isalnum() for ch in t)]

    has_month = any(t in _MONTHS or t.rstrip(".") in _MONTH_ABBREV for t in lowers)
    has_number = any(re.fullmatch(r"\d+", t) for t in tokens)
    if has_month and (has_number or len(word_tokens) == 1):
        return AnswerCategory.DATES
    if re.search(r"\b\d{1,2}[/-]\d{1,2}[/-]\d{2,4}\b", gold.text):
        return AnswerCategory.DATES

    numericish = [t for t in lowers if any(ch.isalnum() for ch in t)]
    if numericish and all(
        _is_numeric_token(t) or t in _NUMERIC_EXTRA for t in numericish
    ) and any(_is_numeric_token(t) for t in numericish):
        return AnswerCategory.NUMBERS

    if any(t in _places() for t in lowers):
        return AnswerCategory.PLACES

    capitalized = [t for t in word_tokens if t[:1].isupper()]
    if capitalized and (
        any(t.lower() in _names() for t in tokens)
        or lowers[0].rstrip(".") in _HONORIFICS
    ):
        return AnswerCategory.NAMES

    if len(word_tokens) >= 2 and len(capitalized) == len(word_tokens):
        return AnswerCategory.OTHER_ENTS

    if len(tokens) >= 6 and any(_looks_like_verb(t) for t in lowers):
        return AnswerCategory.CLAUSES

    if _looks_like_verb(tokens[0]) or (
        lowers[0].endswith("ing") and lowers[0].isalpha() and len(lowers[0]) > 4
    ):
        return AnswerCategory.VERB_PHRASES

    if len(word_tokens) <= 2 and word_tokens and _looks_like_adjective(word_tokens[-1]):
        return AnswerCategory.ADJ_PHRASES

    if word_tokens and len(tokens) <= 5 and word_tokens[-1].isalpha():
        return AnswerCategory.NOUN_PHRASES
    return AnswerCategory.OTHERS


def f1_before_map(
    victim: SpanModel, examples: Sequence[QAExample]
) -> dict[str, float]:
    """Victim top-1 F1 on each unperturbed context."""
    items = [(ex.question, ex.context) for ex in examples]
    dists = predict_batch(victim, items, k=1)
    return {
        ex.id: token_f1(dist.top.text, ex.gold_texts)
        for ex, dist in zip(examples, dists)
    }


def run_transfer(
    outcomes: Sequence[AttackOutcome],
    victim: SpanModel,
    examples: Sequence[QAExample],
    method: Method,
    placement: Placement = Placement.SUFFIX,
    before: dict[str, float] | None = None,
) -> list[TransferRecord]:
    """Apply each outcome's adversary to the victim and score before/after.

    Per-example victim failures are logged and skipped; the run continues.
    Records are ordered by example id.
    """
    if len(outcomes) != len(examples):
        raise ValueError("outcomes must align with examples")
    if before is None:
        before = f1_before_map(victim, examples)
    records: list[TransferRecord] = []
    for example, outcome in zip(examples, outcomes):
        try:
            pert = perturbed_example(example, outcome.adversary_tokens, placement)
            dist = predict_batch(victim, [(pert.question, pert.context)], k=1)[0]
        except ModelError as exc:
            log.warning("victim failed on example %s: %s", example.id, exc)
            continue
        answer = dist.top.text
        records.append(
            TransferRecord(
                example_id=example.id,
                method=method,
                f1_before=before[example.id],
                f1_after=token_f1(answer, pert.gold_texts),
                em_after=exact_match(answer, pert.gold_texts),
                adversary=" ".join(outcome.adversary_tokens),
            )
        )
    records.sort(key=lambda r: r.example_id)
    return records


def aggregate_records(records: Sequence[TransferRecord]) -> dict:
    if not records:
        raise ValueError("no records to aggregate")
    n = len(records)
    return {
        "n": n,
        "f1_before_pct": 100.0 * sum(r.f1_before for r in records) / n,
        "f1_after_pct": 100.0 * sum(r.f1_after for r in records) / n,
        "em_after_pct": 100.0 * sum(1.0 for r in records if r.em_after) / n,
    }


def category_report(
    records: Sequence[TransferRecord], examples: Sequence[QAExample]
) -> CategoryReport:
    """Per-category frequency, before/after F1, and mean gold length in tokens.

    Category and length use each example's first gold answer.
    """
    if not records:
        raise ValueError("no records to report on")
    by_id = {ex.id: ex for ex in examples}
    buckets: dict[AnswerCategory, list[TransferRecord]] = {c: [] for c in AnswerCategory}
    lengths: dict[AnswerCategory, list[int]] = {c: [] for c in AnswerCategory}
    for rec in records:
        ex = by_id[rec.example_id]
        gold = ex.gold_answers[0]
        cat = categorize(gold, ex.context)
        buckets[cat].append(rec)
        lengths[cat].append(len(tokenize(gold.text).tokens))

    total_n = len(records)
    rows = []
    for cat in AnswerCategory:
        recs = buckets[cat]
        if recs:
            rows.append(
                CategoryRow(
                    category=cat.value,
                    frequency_pct=100.0 * len(recs) / total_n,
                    f1_before_pct=100.0 * sum(r.f1_before for r in recs) / len(recs),
                    f1_after_pct=100.0 * sum(r.f1_after for r in recs) / len(recs),
                    avg_answer_tokens=sum(lengths[cat]) / len(recs),
                    count=len(recs),
                )
            )
        else:
            rows.append(CategoryRow(cat.value, 0.0, 0.0, 0.0, 0.0, 0))
    agg = aggregate_records(records)
    all_lengths = [n for ls in lengths.values() for n in ls]
    total = CategoryRow(
        category="Total",
        frequency_pct=100.0,
        f1_before_pct=agg["f1_before_pct"],
        f1_after_pct=agg["f1_after_pct"],
        avg_answer_tokens=sum(all_lengths) / len(all_lengths),
        count=total_n,
    )
    return CategoryReport(rows=tuple(rows), total=total)


def coverage(
    records_a: Sequence[TransferRecord], records_b: Sequence[TransferRecord]
) -> CoverageReport:
    """Joint coverage of two methods over the same example set."""
    a_by_id = {r.example_id: r for r in records_a}
    b_by_id = {r.example_id: r for r in records_b}
    if set(a_by_id) != set(b_by_id):
        raise ValueError("coverage requires identical example-id sets")
    only_a = only_b = both = neither = 0
    combined = 0.0
    for ex_id, rec_a in a_by_id.items():
        rec_b = b_by_id[ex_id]
        a_hit = rec_a.f1_after == 0.0
        b_hit = rec_b.f1_after == 0.0
        if a_hit and b_hit:
            both += 1
        elif a_hit:
            only_a += 1
        elif b_hit:
            only_b += 1
        else:
            neither += 1
        combined += min(rec_a.f1_after, rec_b.f1_after)
    return CoverageReport(
        only_a=only_a,
        only_b=only_b,
        both=both,
        neither=neither,
        combined_f1=100.0 * combined / len(a_by_id),
    )


@dataclass(frozen=True)
class ReportHeader:
    config_hash: str
    seed: int

    def as_comment(self) -> str:
        return f"# config_hash={self.config_hash} seed={self.seed}"

    def as_dict(self) -> dict:
        return {"config_hash": self.config_hash, "seed": self.seed}


@dataclass(frozen=True)
class ReportBundle:
    aggregate: dict[str, dict]  # method value -> aggregate_records output
    categories: dict[str, CategoryReport]  # method value -> report
    coverage: dict[str, CoverageReport]  # "A|B" -> report


def build_bundle(
    records: Sequence[TransferRecord], examples: Sequence[QAExample]
) -> ReportBundle:
    """Aggregate and categorize per method; coverage for every comparable pair.

    A pair of methods is comparable when both produced records for exactly the
    same example ids.
    """
    by_method: dict[str, list[TransferRecord]] = {}
    for rec in records:
        by_method.setdefault(rec.method.value, []).append(rec)
    aggregate = {m: aggregate_records(recs) for m, recs in by_method.items()}
    categories = {m: category_report(recs, examples) for m, recs in by_method.items()}
    cov: dict[str, CoverageReport] = {}
    methods = sorted(by_method)
    for i, method_a in enumerate(methods):
        for method_b in methods[i + 1 :]:
            ids_a = {r.example_id for r in by_method[method_a]}
            ids_b = {r.example_id for r in by_method[method_b]}
            if ids_a == ids_b:
                cov[f"{method_a}|{method_b}"] = coverage(
                    by_method[method_a], by_method[method_b]
                )
    return ReportBundle(aggregate=aggregate, categories=categories, coverage=cov)


_RECORD_COLUMNS = ["example_id", "method", "f1_before", "f1_after", "em_after", "adversary"]
_AGG_COLUMNS = ["method", "n", "f1_before_pct", "f1_after_pct", "em_after_pct"]
_CAT_COLUMNS = [
    "method",
    "category",
    "frequency_pct",
    "f1_before_pct",
    "f1_after_pct",
    "avg_answer_tokens",
    "count",
]
_COV_COLUMNS = ["pair", "only_a", "only_b", "both", "neither", "combined_f1_pct"]


def _fmt(value: object) -> object:
    if isinstance(value, float):
        return f"{value:.6f}"
    return value


def _write_csv(path: Path, header: ReportHeader, columns: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(header.as_comment() + "\n")
        writer = csv.writer(f)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _write_json(path: Path, header: ReportHeader, payload: object) -> None:
    doc = {"header": header.as_dict(), "body": payload}
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=1, ensure_ascii=False, sort_keys=True)
        f.write("\n")


def emit_report(
    records: Sequence[TransferRecord],
    bundle: ReportBundle,
    fmt: str,
    out_dir: str,
    header: ReportHeader,
) -> list[Path]:
    """Write transfer_records, aggregate, categories, coverage files.

    Output is deterministic for fixed inputs: stable row order, stable column
    order, fixed float formatting.
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"unsupported format {fmt!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ordered = sorted(records, key=lambda r: (r.method.value, r.example_id))
    written: list[Path] = []

    record_rows = [
        [r.example_id, r.method.value, r.f1_before, r.f1_after, r.em_after, r.adversary]
        for r in ordered
    ]
    agg_rows = [
        [m, a["n"], a["f1_before_pct"], a["f1_after_pct"], a["em_after_pct"]]
        for m, a in sorted(bundle.aggregate.items())
    ]
    cat_rows = []
    for method, report in sorted(bundle.categories.items()):
        for row in (*report.rows, report.total):
            cat_rows.append(
                [
                    method,
                    row.category,
                    row.frequency_pct,
                    row.f1_before_pct,
                    row.f1_after_pct,
                    row.avg_answer_tokens,
                    row.count,
                ]
            )
    cov_rows = [
        [pair, c.only_a, c.only_b, c.both, c.neither, c.combined_f1]
        for pair, c in sorted(bundle.coverage.items())
    ]

    if fmt == "csv":
        for name, columns, rows in (
            ("transfer_records", _RECORD_COLUMNS, record_rows),
            ("aggregate", _AGG_COLUMNS, agg_rows),
            ("categories", _CAT_COLUMNS, cat_rows),
            ("coverage", _COV_COLUMNS, cov_rows),
        ):
            path = out / f"{name}.csv"
            _write_csv(path, header, columns, rows)
            written.append(path)
    else:
        for name, columns, rows in (
            ("transfer_records", _RECORD_COLUMNS, record_rows),
            ("aggregate", _AGG_COLUMNS, agg_rows),
            ("categories", _CAT_COLUMNS, cat_rows),
            ("coverage", _COV_COLUMNS, cov_rows),
        ):
            path = out / f"{name}.json"
            body = [dict(zip(columns, [_fmt(v) for v in row])) for row in rows]
            _write_json(path, header, body)
            written.append(path)
    return written


def read_transfer_records(path: str) -> list[TransferRecord]:
    """Read back an emitted transfer_records file (csv or json)."""
    p = Path(path)
    records = []
    if p.suffix == ".json":
        doc = json.loads(p.read_text(encoding="utf-8"))
        rows = doc["body"]
        for row in rows:
            records.append(
                TransferRecord(
                    example_id=row["example_id"],
                    method=Method(row["method"]),
                    f1_before=float(row["f1_before"]),
                    f1_after=float(row["f1_after"]),
                    em_after=str(row["em_after"]) == "True",
                    adversary=row["adversary"],
                )
            )
        return records
    with open(p, encoding="utf-8") as f:
        lines = [line for line in f if not line.startswith("#")]
    for row in csv.DictReader(lines):
        records.append(
            TransferRecord(
                example_id=row["example_id"],
                method=Method(row["method"]),
                f1_before=float(row["f1_before"]),
                f1_after=float(row["f1_after"]),
                em_after=row["em_after"] == "True",
                adversary=row["adversary"],
            )
        )
    return records
