"""Uniform span-prediction interface plus the batched wire-protocol client.

Every attack component consumes models through :func:`predict` /
:func:`predict_batch`. A model is anything with a
``predict_batch(items, k) -> list[SpanDistribution]`` method where items are
(question, context) pairs of :class:`~spanbreak.corpus.TokenizedText`.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import Protocol, Sequence

import requests

from .corpus import TokenizedText

_RETRIES = 3
_BACKOFF_BASE = 0.5  # seconds; doubles per attempt


class ModelError(Exception):
    """Base class for model-gateway failures."""


class BatchPredictError(ModelError):
    """A batch prediction failed; carries the index of the failing item."""

    def __init__(self, index: int, message: str) -> None:
        super().__init__(f"item {index}: {message}")
        self.index = index


class TransportError(ModelError):
    """Connection-level failure talking to an endpoint."""


class EndpointTimeout(ModelError):
    """The endpoint did not answer within the configured timeout."""


class EndpointStatusError(ModelError):
    """The endpoint answered with a non-2xx status."""

    def __init__(self, status: int, message: str) -> None:
        super().__init__(f"status {status}: {message}")
        self.status = status


class WireSchemaError(ModelError):
    """The endpoint's response violates the wire schema."""


@dataclass(frozen=True)
class SpanPrediction:
    """One candidate answer span with token bounds, text, and probability."""

    start_token: int
    end_token: int
    text: str
    probability: float

    def __post_init__(self) -> None:
        if self.end_token < self.start_token or self.start_token < 0:
            raise ValueError(f"invalid token bounds ({self.start_token}, {self.end_token})")
        if not (0.0 <= self.probability <= 1.0):
            raise ValueError(f"probability out of range: {self.probability}")


@dataclass(frozen=True)
class SpanDistribution:
    """Top-k answer spans, sorted by (probability desc, start asc, end asc).

    Probabilities are renormalized to sum to 1 over the retained spans.
    """

    spans: tuple[SpanPrediction, ...]
    k_requested: int

    def __post_init__(self) -> None:
        if not self.spans:
            raise ValueError("a span distribution must hold at least one span")
        if len(self.spans) > self.k_requested:
            raise ValueError("distribution holds more spans than requested")
        total = sum(s.probability for s in self.spans)
        if abs(total - 1.0) > 1e-6:
            raise ValueError(f"probabilities sum to {total}, expected 1")
        order = [(-s.probability, s.start_token, s.end_token) for s in self.spans]
        if order != sorted(order):
            raise ValueError("spans are not sorted by the canonical total order")

    @property
    def top(self) -> SpanPrediction:
        return self.spans[0]

    @staticmethod
    def from_unnormalized(spans: Sequence[SpanPrediction], k: int) -> "SpanDistribution":
        """Sort, truncate to k, and renormalize; uniform if all mass is zero."""
        if not spans:
            raise ValueError("cannot build a distribution from zero spans")
        ordered = sorted(spans, key=lambda s: (-s.probability, s.start_token, s.end_token))[:k]
        total = sum(s.probability for s in ordered)
        if total <= 0.0:
            probs = [1.0 / len(ordered)] * len(ordered)
        else:
            probs = [s.probability / total for s in ordered]
        renorm = tuple(
            SpanPrediction(s.start_token, s.end_token, s.text, p)
            for s, p in zip(ordered, probs)
        )
        return SpanDistribution(spans=renorm, k_requested=k)


class SpanModel(Protocol):
    def predict_batch(
        self, items: Sequence[tuple[TokenizedText, TokenizedText]], k: int
    ) -> list[SpanDistribution]: ...


def predict(
    model: SpanModel, question: TokenizedText, context: TokenizedText, k: int
) -> SpanDistribution:
    """Top-k span distribution for one (question, context) pair."""
    return predict_batch(model, [(question, context)], k)[0]


def predict_batch(
    model: SpanModel,
    items: Sequence[tuple[TokenizedText, TokenizedText]],
    k: int,
) -> list[SpanDistribution]:
    """Batched prediction; output i corresponds to input i.

    Equivalent to mapping :func:`predict` over items sequentially, whatever
    batching the model does internally.
    """
    if not items:
        raise ValueError("predict_batch requires at least one item")
    if k < 1:
        raise ValueError("k must be >= 1")
    for i, (question, context) in enumerate(items):
        if not question.tokens or not context.tokens:
            raise BatchPredictError(i, "question and context must be nonempty")
    results = model.predict_batch(items, k)
    if len(results) != len(items):
        raise ModelError(
            f"model returned {len(results)} results for {len(items)} items"
        )
    return results


def char_span_to_tokens(context: TokenizedText, char_start: int, char_end: int) -> tuple[int, int]:
    """Map a character range to the nearest enclosing token span (inclusive indices)."""
    if char_end <= char_start:
        raise ValueError(f"empty character range ({char_start}, {char_end})")
    start_token = None
    end_token = None
    for i, (s, e) in enumerate(context.offsets):
        if e > char_start and start_token is None:
            start_token = i
        if s < char_end:
            end_token = i
    if start_token is None or end_token is None or end_token < start_token:
        raise ValueError(f"character range ({char_start}, {char_end}) covers no tokens")
    return start_token, end_token


def token_span_text(context: TokenizedText, start_token: int, end_token: int) -> str:
    return context.raw[context.offsets[start_token][0] : context.offsets[end_token][1]]


@dataclass(frozen=True)
class ModelEndpoint:
    """Connection settings for an external span-prediction service."""

    base_url: str
    timeout: float = 10.0
    max_batch: int = 16
    auth_token: str | None = None

    def __post_init__(self) -> None:
        if self.max_batch < 1:
            raise ValueError("max_batch must be >= 1")


def _decode_result(
    result: dict, context: TokenizedText, k: int, index: int
) -> SpanDistribution:
    if not isinstance(result, dict) or "spans" not in result:
        raise WireSchemaError(f"item {index}: result missing 'spans'")
    decoded: list[SpanPrediction] = []
    for span in result["spans"]:
        try:
            text = span["text"]
            char_start = int(span["char_start"])
            char_end = int(span["char_end"])
            probability = float(span["probability"])
        except (TypeError, KeyError, ValueError) as exc:
            raise WireSchemaError(f"item {index}: malformed span object: {exc}") from exc
        if not (0.0 <= probability <= 1.0):
            raise WireSchemaError(
                f"item {index}: probability {probability} outside [0, 1]"
            )
        try:
            start_tok, end_tok = char_span_to_tokens(context, char_start, char_end)
        except ValueError as exc:
            raise WireSchemaError(f"item {index}: {exc}") from exc
        decoded.append(
            SpanPrediction(
                start_token=start_tok,
                end_token=end_tok,
                text=token_span_text(context, start_tok, end_tok),
                probability=probability,
            )
        )
    if not decoded:
        raise WireSchemaError(f"item {index}: empty span list")
    return SpanDistribution.from_unnormalized(decoded, k)


def _post_with_retries(endpoint: ModelEndpoint, body: dict, session: requests.Session) -> dict:
    url = endpoint.base_url.rstrip("/") + "/v1/predict"
    headers = {"Content-Type": "application/json"}
    if endpoint.auth_token:
        headers["Authorization"] = f"Bearer {endpoint.auth_token}"
    last_exc: Exception | None = None
    for attempt in range(_RETRIES + 1):
        if attempt:
            time.sleep(_BACKOFF_BASE * 2 ** (attempt - 1))
        try:
            resp = session.post(url, json=body, headers=headers, timeout=endpoint.timeout)
        except requests.Timeout as exc:
            last_exc = EndpointTimeout(f"{url}: timed out after {endpoint.timeout}s")
            last_exc.__cause__ = exc
            continue
        except requests.RequestException as exc:
            last_exc = TransportError(f"{url}: {exc}")
            last_exc.__cause__ = exc
            continue
        if resp.status_code != 200:
            try:
                message = resp.json().get("error", resp.text)
            except (ValueError, AttributeError):
                message = resp.text
            raise EndpointStatusError(resp.status_code, str(message))
        try:
            return resp.json()
        except ValueError as exc:
            raise WireSchemaError(f"{url}: response body is not JSON") from exc
    assert last_exc is not None
    raise last_exc


def http_predict(
    endpoint: ModelEndpoint,
    items: Sequence[tuple[TokenizedText, TokenizedText]],
    k: int,
    session: requests.Session | None = None,
) -> list[SpanDistribution]:
    """Run the wire protocol against an endpoint, splitting oversized batches.

    Transport failures are retried up to 3 times with exponential backoff
    (base 0.5 s). Status, timeout, and schema violations raise distinct
    error kinds.
    """
    if session is None:
        session = requests.Session()
    out: list[SpanDistribution] = []
    for lo in range(0, len(items), endpoint.max_batch):
        chunk = items[lo : lo + endpoint.max_batch]
        body = {
            "items": [{"question": q.raw, "context": c.raw} for q, c in chunk],
            "top_k": k,
        }
        payload = _post_with_retries(endpoint, body, session)
        results = payload.get("results") if isinstance(payload, dict) else None
        if not isinstance(results, list) or len(results) != len(chunk):
            got = len(results) if isinstance(results, list) else "none"
            raise WireSchemaError(
                f"response results misaligned: expected {len(chunk)} items, got {got}"
            )
        for offset, (result, (_q, context)) in enumerate(zip(results, chunk)):
            out.append(_decode_result(result, context, k, lo + offset))
    return out


class HttpModel:
    """SpanModel adapter over :func:`http_predict` for a remote endpoint."""

    def __init__(self, endpoint: ModelEndpoint) -> None:
        self.endpoint = endpoint
        self._session: requests.Session | None = None

    def predict_batch(
        self, items: Sequence[tuple[TokenizedText, TokenizedText]], k: int
    ) -> list[SpanDistribution]:
        if self._session is None:
            self._session = requests.Session()
        return http_predict(self.endpoint, items, k, session=self._session)

    # Sessions are not picklable; workers rebuild them lazily.
    def __getstate__(self) -> dict:
        return {"endpoint": self.endpoint}

    def __setstate__(self, state: dict) -> None:
        self.endpoint = state["endpoint"]
        self._session = None


class CountingModel:
    """Wrapper that counts individual (question, context) predictions."""

    def __init__(self, inner: SpanModel) -> None:
        self.inner = inner
        self.calls = 0

    def predict_batch(
        self, items: Sequence[tuple[TokenizedText, TokenizedText]], k: int
    ) -> list[SpanDistribution]:
        self.calls += len(items)
        return self.inner.predict_batch(items, k)


def encode_results(
    distributions: Sequence[SpanDistribution],
    contexts: Sequence[TokenizedText],
) -> dict:
    """Encode distributions into the wire response shape (char offsets, exclusive end)."""
    results = []
    for dist, context in zip(distributions, contexts):
        spans = []
        for s in dist.spans:
            char_start = context.offsets[s.start_token][0]
            char_end = context.offsets[s.end_token][1]
            spans.append(
                {
                    "text": s.text,
                    "char_start": char_start,
                    "char_end": char_end,
                    "probability": s.probability,
                }
            )
        results.append({"spans": spans})
    return {"results": results}


def dumps_request(items: Sequence[tuple[str, str]], k: int) -> str:
    body = {"items": [{"question": q, "context": c} for q, c in items], "top_k": k}
    return json.dumps(body)
