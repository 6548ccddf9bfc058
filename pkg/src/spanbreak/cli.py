"""Command-line front end: extract, attack, transfer, report, and pipeline.

Configuration is a key=value file; the --seed/--workers/--victim/--out-dir/
--format flags override file values. Every output file starts with the hash of
the resolved semantic configuration plus the seed, and results are
bit-reproducible for a fixed config and seed regardless of worker count.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import multiprocessing
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from .addany import (
    AttackConfig,
    AttackOutcome,
    Mode,
    Placement,
    Termination,
    apply_perturbation,
    load_outcome_records,
    run_attack,
    save_outcomes,
)
from .addsent import (
    AddSentResources,
    AntonymLexicon,
    FakeAnswerTable,
    gen_candidates,
    select_best,
    select_one,
)
from .campaign import (
    Method,
    ReportHeader,
    TransferRecord,
    build_bundle,
    emit_report,
    f1_before_map,
    read_transfer_records,
    run_transfer,
)
from .corpus import QAExample, load_corpus, load_squad, load_wordlist
from .extraction import (
    ExtractionAborted,
    ExtractionScheme,
    agreement_em,
    build_dataset,
    save_dataset,
    train_extracted,
)
from .gateway import (
    EndpointStatusError,
    EndpointTimeout,
    HttpModel,
    ModelEndpoint,
    SpanModel,
    TransportError,
    WireSchemaError,
)
from .models import SurrogateHyper, SurrogateModel, builtin_victim, training_accuracy
from .resources import load_tsv_pairs, resolve_path
from .seeding import rng_for

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2
EXIT_REMOTE = 3

AUTH_TOKEN_VAR = "SPANBREAK_AUTH_TOKEN"
BUILTIN_VICTIM = "builtin-overlap"

_REMOTE_ERRORS = (TransportError, EndpointTimeout, EndpointStatusError, WireSchemaError)


class ConfigError(ValueError):
    """Invalid configuration file, flag, or referenced path."""


class StageFailure(RuntimeError):
    """A pipeline stage failed; partial artifacts stay under out_dir."""

    def __init__(self, stage: str, cause: BaseException) -> None:
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass(frozen=True)
class PipelineConfig:
    victim: str = BUILTIN_VICTIM
    scheme: ExtractionScheme = ExtractionScheme.WIKI
    budget: int = 400
    eval_dataset: str = "builtin:squad_small"
    corpus: str = "builtin:paragraphs"
    wordlist: str = "builtin:common_words"
    antonyms: str = "builtin:antonyms"
    fake_answers: str = "builtin:fake_answers"
    places: str = "builtin:places"
    names: str = "builtin:names"
    out_dir: str = "out"
    seed: int = 0
    fmt: str = "csv"
    workers: int = 0
    holdout_fraction: float = 0.1
    addsent_candidates: int = 5
    attack: AttackConfig = field(default_factory=AttackConfig)
    surrogate: SurrogateHyper = field(default_factory=SurrogateHyper)

    def resource_keys(self) -> dict[str, str]:
        return {
            "eval_dataset": self.eval_dataset,
            "corpus": self.corpus,
            "wordlist": self.wordlist,
            "antonyms": self.antonyms,
            "fake_answers": self.fake_answers,
            "places": self.places,
            "names": self.names,
        }


_PATH_KEYS = (
    "eval_dataset",
    "corpus",
    "wordlist",
    "antonyms",
    "fake_answers",
    "places",
    "names",
)
_KNOWN_KEYS = frozenset(
    [
        "victim",
        "scheme",
        "budget",
        *_PATH_KEYS,
        "out_dir",
        "seed",
        "format",
        "workers",
        "holdout_fraction",
        "addsent_candidates",
        "attack.num_tokens",
        "attack.candidates_per_step",
        "attack.epochs",
        "attack.extra_particles",
        "attack.extra_epochs",
        "attack.mode",
        "attack.k",
        "attack.placement",
        "surrogate.epochs",
        "surrogate.learning_rate",
        "surrogate.l2",
    ]
)


def parse_config_file(path: str) -> dict[str, str]:
    """key=value lines; blank lines and '#' comments ignored; last key wins."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    values: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {stripped!r}")
        values[key.strip()] = value.strip()
    return values


def _as_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {raw!r}") from None


def _as_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key} must be a number, got {raw!r}") from None


def _as_enum(key: str, raw: str, enum_cls) -> object:
    try:
        return enum_cls(raw.upper())
    except ValueError:
        options = [e.value for e in enum_cls]
        raise ConfigError(f"{key} must be one of {options}, got {raw!r}") from None


def build_config(values: dict[str, str]) -> PipelineConfig:
    unknown = sorted(set(values) - _KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    base = PipelineConfig()

    def get(key: str, fallback: str) -> str:
        return values.get(key, fallback)

    seed = _as_int("seed", get("seed", str(base.seed)))
    try:
        attack = AttackConfig(
            num_tokens=_as_int("attack.num_tokens", get("attack.num_tokens", "10")),
            candidates_per_step=_as_int(
                "attack.candidates_per_step", get("attack.candidates_per_step", "20")
            ),
            epochs=_as_int("attack.epochs", get("attack.epochs", "3")),
            extra_particles=_as_int(
                "attack.extra_particles", get("attack.extra_particles", "4")
            ),
            extra_epochs=_as_int("attack.extra_epochs", get("attack.extra_epochs", "3")),
            mode=_as_enum("attack.mode", get("attack.mode", "KBEST"), Mode),
            k=_as_int("attack.k", get("attack.k", "5")),
            placement=_as_enum(
                "attack.placement", get("attack.placement", "SUFFIX"), Placement
            ),
            seed=seed,
        )
        surrogate = SurrogateHyper(
            epochs=_as_int("surrogate.epochs", get("surrogate.epochs", "3")),
            learning_rate=_as_float(
                "surrogate.learning_rate", get("surrogate.learning_rate", "0.1")
            ),
            l2=_as_float("surrogate.l2", get("surrogate.l2", "0.0001")),
            seed=seed,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    return PipelineConfig(
        victim=get("victim", base.victim),
        scheme=_as_enum("scheme", get("scheme", base.scheme.value), ExtractionScheme),
        budget=_as_int("budget", get("budget", str(base.budget))),
        eval_dataset=get("eval_dataset", base.eval_dataset),
        corpus=get("corpus", base.corpus),
        wordlist=get("wordlist", base.wordlist),
        antonyms=get("antonyms", base.antonyms),
        fake_answers=get("fake_answers", base.fake_answers),
        places=get("places", base.places),
        names=get("names", base.names),
        out_dir=get("out_dir", base.out_dir),
        seed=seed,
        fmt=get("format", base.fmt).lower(),
        workers=_as_int("workers", get("workers", str(base.workers))),
        holdout_fraction=_as_float(
            "holdout_fraction", get("holdout_fraction", str(base.holdout_fraction))
        ),
        addsent_candidates=_as_int(
            "addsent_candidates", get("addsent_candidates", str(base.addsent_candidates))
        ),
        attack=attack,
        surrogate=surrogate,
    )


def validate_config(config: PipelineConfig) -> None:
    """Check values and referenced paths before any work starts."""
    if config.victim != BUILTIN_VICTIM and not config.victim.startswith(
        ("http://", "https://")
    ):
        raise ConfigError(
            f"victim must be {BUILTIN_VICTIM!r} or an http(s) URL, got {config.victim!r}"
        )
    if config.budget < 1:
        raise ConfigError("budget must be >= 1")
    if config.workers < 0:
        raise ConfigError("workers must be >= 0 (0 means all processors)")
    if config.fmt not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {config.fmt!r}")
    if not 0.0 < config.holdout_fraction < 1.0:
        raise ConfigError("holdout_fraction must be in (0, 1)")
    if config.addsent_candidates < 1:
        raise ConfigError("addsent_candidates must be >= 1")
    for key, value in config.resource_keys().items():
        try:
            path = resolve_path(value)
        except ValueError as exc:
            raise ConfigError(f"{key}: {exc}") from exc
        if not Path(path).is_file():
            raise ConfigError(f"{key}: no such file: {path}")


def canonical_text(config: PipelineConfig) -> str:
    """Semantic configuration, one sorted key=value per line.

    out_dir and workers are execution plumbing, not inputs to any result, so
    they are excluded; this is what makes report bytes identical across worker
    counts and output locations.
    """
    entries = {
        "victim": config.victim,
        "scheme": config.scheme.value,
        "budget": config.budget,
        **config.resource_keys(),
        "seed": config.seed,
        "format": config.fmt,
        "holdout_fraction": repr(config.holdout_fraction),
        "addsent_candidates": config.addsent_candidates,
        "attack.num_tokens": config.attack.num_tokens,
        "attack.candidates_per_step": config.attack.candidates_per_step,
        "attack.epochs": config.attack.epochs,
        "attack.extra_particles": config.attack.extra_particles,
        "attack.extra_epochs": config.attack.extra_epochs,
        "attack.mode": config.attack.mode.value,
        "attack.k": config.attack.k,
        "attack.placement": config.attack.placement.value,
        "surrogate.epochs": config.surrogate.epochs,
        "surrogate.learning_rate": repr(config.surrogate.learning_rate),
        "surrogate.l2": repr(config.surrogate.l2),
    }
    return "".join(f"{k}={entries[k]}\n" for k in sorted(entries))


def config_hash(config: PipelineConfig) -> str:
    return hashlib.sha256(canonical_text(config).encode("utf-8")).hexdigest()


def _prepare_out_dir(config: PipelineConfig) -> Path:
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "config.resolved").write_text(canonical_text(config), encoding="utf-8")
    return out


def _file_header(config: PipelineConfig) -> dict:
    return {"config_hash": config_hash(config), "seed": config.seed}


def build_victim(config: PipelineConfig) -> SpanModel:
    if config.victim == BUILTIN_VICTIM:
        return builtin_victim()
    endpoint = ModelEndpoint(
        base_url=config.victim, auth_token=os.environ.get(AUTH_TOKEN_VAR)
    )
    return HttpModel(endpoint)


# ---------------------------------------------------------------- commands


def cmd_extract(config: PipelineConfig) -> Path:
    """Synthesize queries, label them on the victim, train the surrogate."""
    out = _prepare_out_dir(config)
    header = _file_header(config)
    corpus = load_corpus(resolve_path(config.corpus))
    victim = build_victim(config)
    rng = rng_for(config.seed, config.scheme.value, "extraction")
    try:
        dataset = build_dataset(
            config.scheme, victim, corpus, config.budget, rng, seed=config.seed
        )
    except ExtractionAborted as exc:
        save_dataset(exc.partial, str(out / "extraction.partial.jsonl"), header)
        raise
    if not dataset.examples:
        raise RuntimeError("extraction produced no labeled examples")
    train, holdout = dataset.split_holdout(config.holdout_fraction)
    surrogate = train_extracted(train, config.surrogate)
    save_dataset(dataset, str(out / "extraction.jsonl"), header)
    surrogate_path = out / "surrogate.json"
    surrogate.save(str(surrogate_path), header)
    agreement = agreement_em(surrogate, holdout.examples)
    accuracy = training_accuracy(surrogate, train)
    print(
        f"extract: scheme={config.scheme.value} queries_spent={dataset.queries_spent} "
        f"examples={len(dataset.examples)} train_argmax_acc={accuracy:.4f} "
        f"holdout_agreement_em={agreement:.4f}"
    )
    return surrogate_path


_WORKER_STATE: dict = {}


def _init_attack_worker(
    surrogate: SurrogateModel, wordlist, attack_config: AttackConfig
) -> None:
    _WORKER_STATE["model"] = surrogate
    _WORKER_STATE["wordlist"] = wordlist
    _WORKER_STATE["config"] = attack_config


def _attack_one(example: QAExample) -> AttackOutcome:
    return run_attack(
        example, _WORKER_STATE["model"], _WORKER_STATE["config"], _WORKER_STATE["wordlist"]
    )


def cmd_attack(config: PipelineConfig, surrogate_path: str | None = None) -> Path:
    """Run the greedy token-swap attack on the surrogate, one job per example."""
    out = _prepare_out_dir(config)
    header = _file_header(config)
    path = surrogate_path or str(out / "surrogate.json")
    surrogate = SurrogateModel.load(path)
    examples = load_squad(resolve_path(config.eval_dataset))
    wordlist = load_wordlist(resolve_path(config.wordlist))
    workers = config.workers or os.cpu_count() or 1

    outcomes: list[AttackOutcome] = []
    try:
        if workers == 1:
            for example in examples:
                outcomes.append(run_attack(example, surrogate, config.attack, wordlist))
        else:
            with multiprocessing.Pool(
                workers,
                initializer=_init_attack_worker,
                initargs=(surrogate, wordlist, config.attack),
            ) as pool:
                for outcome in pool.imap(_attack_one, examples):
                    outcomes.append(outcome)
    except Exception:
        if outcomes:
            done = [(ex.id, o) for ex, o in zip(examples, outcomes)]
            save_outcomes(done, config.attack, str(out / "outcomes.partial.jsonl"), header)
        raise

    outcomes_path = out / "outcomes.jsonl"
    save_outcomes(
        [(ex.id, o) for ex, o in zip(examples, outcomes)],
        config.attack,
        str(outcomes_path),
        header,
    )
    hits = sum(1 for o in outcomes if o.success_on_search_model)
    calls = sum(o.model_calls for o in outcomes)
    print(
        f"attack: mode={config.attack.mode.value} examples={len(examples)} "
        f"search_success={hits}/{len(examples)} surrogate_calls={calls}"
    )
    return outcomes_path


def _load_outcomes(
    path: str, examples: Sequence[QAExample]
) -> tuple[list[AttackOutcome], Mode, Placement]:
    header, records = load_outcome_records(path)
    mode = Mode(header["mode"])
    placement = Placement(header["placement"])
    by_id = {r["example_id"]: r for r in records}
    missing = [ex.id for ex in examples if ex.id not in by_id]
    if missing:
        raise RuntimeError(f"outcomes file lacks examples: {missing[:5]} ...")
    outcomes = []
    for ex in examples:
        rec = by_id[ex.id]
        tokens = tuple(rec["adversary_tokens"])
        outcomes.append(
            AttackOutcome(
                perturbed_context=apply_perturbation(ex.context, tokens, placement),
                adversary_tokens=tokens,
                success_on_search_model=bool(rec["success_on_search_model"]),
                objective_trace=tuple(rec["objective_trace"]),
                model_calls=int(rec["model_calls"]),
                terminated_by=Termination(rec["terminated_by"]),
            )
        )
    return outcomes, mode, placement


def _addany_method(scheme: ExtractionScheme, mode: Mode) -> Method:
    prefix = "W" if scheme is ExtractionScheme.WIKI else "R"
    suffix = "KBEST" if mode is Mode.KBEST else "ARGMAX"
    return Method(f"{prefix}-A-{suffix}")


def _read_lines(path: str) -> tuple[str, ...]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return tuple(line.strip() for line in lines if line.strip())


def load_addsent_resources(config: PipelineConfig) -> AddSentResources:
    lexicon = AntonymLexicon(load_tsv_pairs(resolve_path(config.antonyms)))
    raw = json.loads(Path(resolve_path(config.fake_answers)).read_text(encoding="utf-8"))
    table = FakeAnswerTable.from_mapping(raw)
    return AddSentResources(
        lexicon=lexicon,
        fake_answers=table,
        places=_read_lines(resolve_path(config.places)),
        names=_read_lines(resolve_path(config.names)),
    )


def _addsent_records(
    config: PipelineConfig,
    examples: Sequence[QAExample],
    victim: SpanModel,
    before: dict[str, float],
) -> list[TransferRecord]:
    res = load_addsent_resources(config)
    placement = config.attack.placement
    records: list[TransferRecord] = []
    for ex in examples:
        rng = rng_for(config.seed, ex.id, "addsent")
        candidates = gen_candidates(ex, res, rng, config.addsent_candidates)
        records.append(
            select_best(candidates, victim, ex, placement, before[ex.id], Method.ADDSENT)
        )
        chosen = select_one(candidates, rng_for(config.seed, ex.id, "addonesent"))
        records.append(
            select_best(
                [chosen] if chosen else [],
                victim,
                ex,
                placement,
                before[ex.id],
                Method.ADDONESENT,
            )
        )
    records.sort(key=lambda r: (r.method.value, r.example_id))
    return records


def cmd_transfer(config: PipelineConfig, outcomes_path: str | None = None) -> list[Path]:
    """Apply saved adversaries plus the sentence baselines to the victim."""
    out = _prepare_out_dir(config)
    examples = load_squad(resolve_path(config.eval_dataset))
    victim = build_victim(config)
    outcomes, mode, placement = _load_outcomes(
        outcomes_path or str(out / "outcomes.jsonl"), examples
    )
    before = f1_before_map(victim, examples)
    method = _addany_method(config.scheme, mode)
    records = run_transfer(outcomes, victim, examples, method, placement, before)
    records += _addsent_records(config, examples, victim, before)
    bundle = build_bundle(records, examples)
    header = ReportHeader(config_hash=config_hash(config), seed=config.seed)
    files = emit_report(records, bundle, config.fmt, str(out), header)
    for name, agg in sorted(bundle.aggregate.items()):
        print(
            f"transfer: method={name} n={agg['n']} "
            f"f1_before={agg['f1_before_pct']:.1f} f1_after={agg['f1_after_pct']:.1f} "
            f"em_after={agg['em_after_pct']:.1f}"
        )
    for pair, cov in sorted(bundle.coverage.items()):
        print(
            f"coverage: pair={pair} only_a={cov.only_a} only_b={cov.only_b} "
            f"both={cov.both} neither={cov.neither} combined_f1={cov.combined_f1:.1f}"
        )
    return files


def cmd_report(config: PipelineConfig, records_path: str | None = None) -> list[Path]:
    """Recompute aggregate, category, and coverage tables from saved records."""
    out = _prepare_out_dir(config)
    path = records_path or str(out / f"transfer_records.{config.fmt}")
    records = read_transfer_records(path)
    if not records:
        raise RuntimeError(f"no transfer records in {path}")
    examples = load_squad(resolve_path(config.eval_dataset))
    bundle = build_bundle(records, examples)
    header = ReportHeader(config_hash=config_hash(config), seed=config.seed)
    files = emit_report(records, bundle, config.fmt, str(out), header)
    print(f"report: rewrote {len(files)} files under {out}")
    return files


def cmd_pipeline(config: PipelineConfig) -> None:
    """extract, then attack, then transfer with reports."""
    _run_stage("extract", cmd_extract, config)
    _run_stage("attack", cmd_attack, config)
    _run_stage("transfer", cmd_transfer, config)
    print("pipeline: complete")


# ---------------------------------------------------------------- plumbing


def _run_stage(name: str, fn: Callable, *args):
    try:
        return fn(*args)
    except StageFailure:
        raise
    except Exception as exc:
        raise StageFailure(name, exc) from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit(2); we map to 1
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="spanbreak",
        description="Model extraction and adversarial attacks on span-based QA.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "extract": "synthesize queries, label on the victim, train a surrogate",
        "attack": "run the greedy token-swap attack against a saved surrogate",
        "transfer": "apply saved adversaries (plus sentence baselines) to the victim",
        "report": "recompute report tables from saved transfer records",
        "pipeline": "extract, attack, and transfer in one run",
    }
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="key=value configuration file")
        p.add_argument("--seed", type=int, help="master random seed")
        p.add_argument("--workers", type=int, help="parallel workers (0 = all cores)")
        p.add_argument("--victim", help=f"{BUILTIN_VICTIM!r} or endpoint URL")
        p.add_argument("--out-dir", dest="out_dir", help="artifact directory")
        p.add_argument("--format", dest="fmt", choices=["csv", "json"])
        if name == "attack":
            p.add_argument("--surrogate", help="surrogate model file")
        if name == "transfer":
            p.add_argument("--outcomes", help="attack outcomes file")
        if name == "report":
            p.add_argument("--records", help="transfer records file")
    return parser


def load_config(args: argparse.Namespace) -> PipelineConfig:
    values = parse_config_file(args.config) if args.config else {}
    overrides = {
        "seed": args.seed,
        "workers": args.workers,
        "victim": args.victim,
        "out_dir": args.out_dir,
        "format": args.fmt,
    }
    for key, value in overrides.items():
        if value is not None:
            values[key] = str(value)
    config = build_config(values)
    validate_config(config)
    return config


def _is_remote_failure(exc: BaseException | None) -> bool:
    seen: set[int] = set()
    while exc is not None and id(exc) not in seen:
        if isinstance(exc, _REMOTE_ERRORS):
            return True
        seen.add(id(exc))
        exc = exc.__cause__ or exc.__context__
    return False


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        config = load_config(args)
        if args.command == "extract":
            _run_stage("extract", cmd_extract, config)
        elif args.command == "attack":
            _run_stage("attack", cmd_attack, config, args.surrogate)
        elif args.command == "transfer":
            _run_stage("transfer", cmd_transfer, config, args.outcomes)
        elif args.command == "report":
            _run_stage("report", cmd_report, config, args.records)
        else:
            cmd_pipeline(config)
        return EXIT_OK
    except ConfigError as exc:
        print(f"spanbreak: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except StageFailure as exc:
        print(f"spanbreak: {exc}", file=sys.stderr)
        return EXIT_REMOTE if _is_remote_failure(exc.cause) else EXIT_RUNTIME
    except Exception as exc:  # pragma: no cover - defensive catch-all
        print(f"spanbreak: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
