"""Access to bundled data files: word list, gazetteers, lexicons, fixtures."""

from __future__ import annotations

import json
from importlib import resources as _ires
from pathlib import Path

_DATA_DIR = "data"

COMMON_WORDS = "common_words.txt"
ANTONYMS = "antonyms.tsv"
PLACES = "places.txt"
NAMES = "names.txt"
FAKE_ANSWERS = "fake_answers.json"
SQUAD_MINI = "squad_mini.json"
SQUAD_SMALL = "squad_small.json"
PARAGRAPHS = "paragraphs.txt"

_BUILTIN = {
    "common_words": COMMON_WORDS,
    "antonyms": ANTONYMS,
    "places": PLACES,
    "names": NAMES,
    "fake_answers": FAKE_ANSWERS,
    "squad_mini": SQUAD_MINI,
    "squad_small": SQUAD_SMALL,
    "paragraphs": PARAGRAPHS,
}


def resource_path(name: str) -> Path:
    """Filesystem path of a bundled resource file."""
    path = _ires.files("spanbreak").joinpath(_DATA_DIR).joinpath(name)
    return Path(str(path))


def resolve_path(value: str) -> str:
    """Resolve 'builtin:<name>' values to bundled files; pass others through."""
    if value.startswith("builtin:"):
        key = value.split(":", 1)[1]
        if key not in _BUILTIN:
            raise ValueError(
                f"unknown builtin resource {key!r}; options: {sorted(_BUILTIN)}"
            )
        return str(resource_path(_BUILTIN[key]))
    return value


def load_lines(name: str) -> list[str]:
    text = resource_path(name).read_text(encoding="utf-8")
    return [line.strip() for line in text.splitlines() if line.strip()]


def load_tsv_pairs(path: str) -> dict[str, str]:
    pairs: dict[str, str] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        left, _, right = line.partition("\t")
        left, right = left.strip(), right.strip()
        if left and right and left != right:
            pairs[left] = right
    return pairs


def load_json(name: str) -> dict:
    return json.loads(resource_path(name).read_text(encoding="utf-8"))
