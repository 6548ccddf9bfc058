"""Shared fixtures: bundled victim, fixture datasets, attack resources."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from spanbreak.cli import PipelineConfig, load_addsent_resources
from spanbreak.corpus import CorpusStore, WordList, load_corpus, load_squad, load_wordlist
from spanbreak.models import OverlapModel, builtin_victim
from spanbreak.resources import resource_path


@pytest.fixture(scope="session")
def victim() -> OverlapModel:
    return builtin_victim()


@pytest.fixture(scope="session")
def small_examples() -> list:
    return load_squad(str(resource_path("squad_small.json")))


@pytest.fixture(scope="session")
def mini_examples() -> list:
    return load_squad(str(resource_path("squad_mini.json")))


@pytest.fixture(scope="session")
def wordlist() -> WordList:
    return load_wordlist(str(resource_path("common_words.txt")))


@pytest.fixture(scope="session")
def corpus_store() -> CorpusStore:
    return load_corpus(str(resource_path("paragraphs.txt")))


@pytest.fixture(scope="session")
def addsent_resources():
    return load_addsent_resources(PipelineConfig())


@pytest.fixture()
def tiny_squad(tmp_path: Path) -> str:
    """A two-example SQuAD v1.1 file on disk for loader tests."""
    context = "The old mill stood beside the river for two hundred years."
    payload = {
        "version": "1.1",
        "data": [
            {
                "title": "mill",
                "paragraphs": [
                    {
                        "context": context,
                        "qas": [
                            {
                                "id": "q1",
                                "question": "What stood beside the river?",
                                "answers": [
                                    {"text": "old mill", "answer_start": context.index("old mill")}
                                ],
                            },
                            {
                                "id": "q2",
                                "question": "How long did the mill stand?",
                                "answers": [
                                    {
                                        "text": "two hundred years",
                                        "answer_start": context.index("two hundred years"),
                                    },
                                    {"text": "two hundred", "answer_start": context.index("two hundred")},
                                ],
                            },
                        ],
                    }
                ],
            }
        ],
    }
    path = tmp_path / "tiny_squad.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)
