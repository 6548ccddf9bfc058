"""Black-box adversarial attacks on extractive question answering.

The package extracts a trainable surrogate of a victim span-prediction model
from synthetic queries, searches adversarial distractor tokens against the
surrogate, and transfers the perturbed contexts back to the victim, with
rule-based sentence baselines and full reporting alongside.
"""

from .addany import (
    AttackConfig,
    AttackOutcome,
    Mode,
    Placement,
    Termination,
    perturbed_example,
    run_attack,
)
from .addsent import (
    AddSentCandidate,
    AddSentResources,
    AntonymLexicon,
    FakeAnswerTable,
    gen_candidates,
    select_best,
    select_one,
)
from .campaign import (
    AnswerCategory,
    CoverageReport,
    Method,
    ReportBundle,
    TransferRecord,
    build_bundle,
    categorize,
    category_report,
    coverage,
    emit_report,
    run_transfer,
)
from .corpus import (
    AnswerSpan,
    CorpusError,
    QAExample,
    TokenizedText,
    WordList,
    detokenize,
    load_corpus,
    load_squad,
    load_wordlist,
    normalize_answer,
    tokenize,
)
from .extraction import (
    ExtractionDataset,
    ExtractionScheme,
    SynthesizedExample,
    agreement_em,
    build_dataset,
    train_extracted,
)
from .gateway import (
    HttpModel,
    ModelEndpoint,
    ModelError,
    SpanDistribution,
    SpanModel,
    SpanPrediction,
    predict,
    predict_batch,
)
from .metrics import exact_match, expected_f1, kbest_zero, token_f1
from .models import (
    OverlapModel,
    OverlapModelConfig,
    SurrogateHyper,
    SurrogateModel,
    builtin_victim,
    surrogate_train,
)

__version__ = "0.1.0"

__all__ = [
    "AddSentCandidate",
    "AddSentResources",
    "AnswerCategory",
    "AnswerSpan",
    "AntonymLexicon",
    "AttackConfig",
    "AttackOutcome",
    "CorpusError",
    "CoverageReport",
    "ExtractionDataset",
    "ExtractionScheme",
    "FakeAnswerTable",
    "HttpModel",
    "Method",
    "Mode",
    "ModelEndpoint",
    "ModelError",
    "OverlapModel",
    "OverlapModelConfig",
    "Placement",
    "QAExample",
    "ReportBundle",
    "SpanDistribution",
    "SpanModel",
    "SpanPrediction",
    "SurrogateHyper",
    "SurrogateModel",
    "SynthesizedExample",
    "Termination",
    "TokenizedText",
    "TransferRecord",
    "WordList",
    "agreement_em",
    "build_bundle",
    "build_dataset",
    "builtin_victim",
    "categorize",
    "category_report",
    "coverage",
    "detokenize",
    "emit_report",
    "exact_match",
    "expected_f1",
    "gen_candidates",
    "kbest_zero",
    "load_corpus",
    "load_squad",
    "load_wordlist",
    "normalize_answer",
    "perturbed_example",
    "predict",
    "predict_batch",
    "run_attack",
    "run_transfer",
    "select_best",
    "select_one",
    "surrogate_train",
    "token_f1",
    "tokenize",
    "train_extracted",
]
