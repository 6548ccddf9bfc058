"""Rule-based distractors: query mutation, fake answers, declarative rendering."""

from __future__ import annotations

import numpy as np
import pytest

from spanbreak.addany import Placement
from spanbreak.addsent import (
    AddSentCandidate,
    AddSentResources,
    AntonymLexicon,
    FakeAnswerTable,
    apply_sentence,
    content_tokens,
    fake_answer,
    gen_candidates,
    mutate_query,
    select_best,
    select_one,
    to_declarative,
)
from spanbreak.campaign import AnswerCategory, Method
from spanbreak.corpus import AnswerSpan, QAExample, tokenize
from spanbreak.gateway import predict_batch
from spanbreak.metrics import token_f1
from spanbreak.seeding import rng_for


def _rng(*parts) -> np.random.Generator:
    return rng_for(*parts, "addsent-test")


@pytest.fixture()
def toy_resources(addsent_resources) -> AddSentResources:
    return AddSentResources(
        lexicon=AntonymLexicon({"open": "closed", "large": "tiny"}),
        fake_answers=addsent_resources.fake_answers,
        places=("Oslo", "Cairo", "Quito"),
        names=("Wren", "Holm", "Sato"),
    )


class TestLexiconAndTable:
    def test_identity_entry_rejected(self):
        with pytest.raises(ValueError):
            AntonymLexicon({"same": "Same"})

    def test_lookup_is_case_insensitive(self):
        lex = AntonymLexicon({"open": "closed"})
        assert lex.get("Open") == "closed"
        assert lex.get("missing") is None

    def test_table_requires_every_category(self):
        with pytest.raises(ValueError):
            FakeAnswerTable(rows={AnswerCategory.NAMES: ("Someone",)})

    def test_bundled_table_covers_every_category(self, addsent_resources):
        for cat in AnswerCategory:
            assert addsent_resources.fake_answers.rows[cat]


class TestContentTokens:
    def test_drops_stopwords_and_punctuation(self):
        assert content_tokens("The mill, because of it!") == {"mill"}

    def test_keeps_numbers(self):
        assert content_tokens("in 1854") == {"1854"}


class TestMutateQuery:
    def test_number_perturbation_keeps_shape(self, toy_resources):
        q = tokenize("What happened in 1854 ?")
        for trial in range(10):
            out = mutate_query(q, toy_resources.lexicon, toy_resources, _rng("num", trial))
            assert out is not None
            new = next(t for t in out.tokens if t.isdigit())
            assert len(new) == 4
            assert new.startswith("185")
            assert new != "1854"

    def test_ordinal_suffix_survives(self, toy_resources):
        q = tokenize("Who won the 3rd race ?")
        out = mutate_query(q, toy_resources.lexicon, toy_resources, _rng("ord"))
        assert out is not None
        mutated = [t for t in out.tokens if t.endswith("rd") or t.endswith("th")]
        assert any(t[:-2].isdigit() and t != "3rd" for t in mutated)

    def test_place_swap_carries_capitalization(self, toy_resources):
        q = tokenize("Where is Oslo ?")
        out = mutate_query(q, toy_resources.lexicon, toy_resources, _rng("place"))
        assert out is not None
        swapped = out.tokens[2]
        assert swapped in {"Cairo", "Quito"}

    def test_antonym_swap(self, toy_resources):
        q = tokenize("Why was the gate open ?")
        out = mutate_query(q, toy_resources.lexicon, toy_resources, _rng("ant"))
        assert out is not None
        assert "closed" in out.tokens
        assert "open" not in out.tokens

    def test_untouchable_question_returns_none(self, toy_resources):
        q = tokenize("What did they see ?")
        assert mutate_query(q, toy_resources.lexicon, toy_resources, _rng("none")) is None

    def test_bundled_resources_mutate_every_fixture_question(
        self, addsent_resources, small_examples
    ):
        for ex in small_examples:
            out = mutate_query(
                ex.question, addsent_resources.lexicon, addsent_resources, _rng("all", ex.id)
            )
            assert out is not None, f"no mutable token in {ex.question.raw!r}"


class TestToDeclarative:
    def test_what_with_auxiliary_moves_fake_to_object(self):
        out = to_declarative(tokenize("What did Tesla build ?"), "a coil")
        assert out.raw == "Tesla build a coil."

    def test_who_without_auxiliary_takes_subject(self):
        out = to_declarative(tokenize("Who released the sequel ?"), "Caleb Wren")
        assert out.raw == "Caleb Wren released the sequel."

    def test_where_with_copula(self):
        out = to_declarative(tokenize("Where was the treaty signed ?"), "Oslo")
        assert out.raw == "The treaty signed was in Oslo."

    def test_why_uses_because_of(self):
        out = to_declarative(tokenize("Why did the mill close ?"), "storms")
        assert out.raw == "The mill close because of storms."

    def test_how_uses_by(self):
        out = to_declarative(tokenize("How did they travel ?"), "canoe")
        assert out.raw == "They travel by canoe."

    def test_fallback_appends_is(self):
        out = to_declarative(tokenize("Name the largest lake ?"), "Willowmere")
        assert out.raw == "Name the largest lake is Willowmere."


class TestFakeAnswer:
    def test_same_category_and_never_gold(self, addsent_resources):
        gold = AnswerSpan(text="Oslo", char_start=0)
        context = tokenize("Oslo is a city.")
        pool = set(addsent_resources.fake_answers.rows[AnswerCategory.PLACES])
        for trial in range(5):
            fake = fake_answer(
                gold, addsent_resources.fake_answers, context, _rng("fa", trial), avoid=["Oslo"]
            )
            assert fake in pool
            assert fake != "Oslo"

    def test_falls_back_to_others_pool(self, addsent_resources):
        gold = AnswerSpan(text="Oslo", char_start=0)
        context = tokenize("Oslo is a city.")
        avoid = list(addsent_resources.fake_answers.rows[AnswerCategory.PLACES]) + ["Oslo"]
        fake = fake_answer(gold, addsent_resources.fake_answers, context, _rng("fb"), avoid=avoid)
        assert fake in set(addsent_resources.fake_answers.rows[AnswerCategory.OTHERS])

    def test_exhausted_pools_raise(self, addsent_resources):
        gold = AnswerSpan(text="Oslo", char_start=0)
        context = tokenize("Oslo is a city.")
        avoid = (
            list(addsent_resources.fake_answers.rows[AnswerCategory.PLACES])
            + list(addsent_resources.fake_answers.rows[AnswerCategory.OTHERS])
        )
        with pytest.raises(ValueError):
            fake_answer(gold, addsent_resources.fake_answers, context, _rng("ex"), avoid=avoid)


class TestCandidateInvariants:
    def test_fake_must_occur_in_sentence(self):
        with pytest.raises(ValueError):
            AddSentCandidate(
                sentence=tokenize("The gate was closed."),
                mutated_query=tokenize("Why closed ?"),
                fake_answer="storms",
                gold_texts=("mill",),
            )

    def test_gold_content_overlap_rejected(self):
        with pytest.raises(ValueError) as info:
            AddSentCandidate(
                sentence=tokenize("The mill closed because of storms."),
                mutated_query=tokenize("Why closed ?"),
                fake_answer="storms",
                gold_texts=("the mill",),
            )
        assert "mill" in str(info.value)


class TestGenCandidates:
    def test_requires_positive_n(self, addsent_resources, small_examples):
        with pytest.raises(ValueError):
            gen_candidates(small_examples[0], addsent_resources, _rng("n"), 0)

    def test_candidates_are_distinct_and_safe(self, addsent_resources, small_examples):
        for ex in small_examples[:8]:
            candidates = gen_candidates(ex, addsent_resources, _rng("gc", ex.id), 5)
            assert candidates, f"no candidates for {ex.id}"
            sentences = [c.sentence.raw for c in candidates]
            assert len(set(sentences)) == len(sentences)
            for cand in candidates:
                words = content_tokens(cand.sentence.raw)
                for gold in ex.gold_texts:
                    assert not (words & content_tokens(gold))

    def test_unmutable_question_yields_empty(self, toy_resources):
        context = tokenize("They saw a heron by the pond.")
        ex = QAExample(
            id="plain",
            question=tokenize("What did they see ?"),
            context=context,
            gold_answers=(AnswerSpan(text="heron", char_start=context.raw.index("heron")),),
        )
        assert gen_candidates(ex, toy_resources, _rng("empty"), 5) == []


class TestApplySentence:
    def test_suffix_remaps_golds(self, small_examples):
        ex = small_examples[0]
        sentence = tokenize("A harmless extra sentence.")
        pert = apply_sentence(ex, sentence, Placement.SUFFIX)
        assert pert.context.raw.endswith(sentence.raw)
        for gold in pert.gold_answers:
            assert pert.context.raw[gold.char_start : gold.char_start + len(gold.text)] == gold.text

    def test_prefix_remaps_golds(self, small_examples):
        ex = small_examples[0]
        sentence = tokenize("A harmless extra sentence.")
        pert = apply_sentence(ex, sentence, Placement.PREFIX)
        assert pert.context.raw.startswith(sentence.raw)
        for gold in pert.gold_answers:
            assert pert.context.raw[gold.char_start : gold.char_start + len(gold.text)] == gold.text


class TestSelection:
    def test_select_best_minimizes_f1(self, victim, addsent_resources, small_examples):
        ex = small_examples[0]
        candidates = gen_candidates(ex, addsent_resources, _rng("sb", ex.id), 5)
        record = select_best(candidates, victim, ex, Placement.SUFFIX, 1.0, Method.ADDSENT)
        perturbed = [apply_sentence(ex, c.sentence, Placement.SUFFIX) for c in candidates]
        dists = predict_batch(victim, [(p.question, p.context) for p in perturbed], k=1)
        scores = [token_f1(d.top.text, p.gold_texts) for d, p in zip(dists, perturbed)]
        assert record.f1_after == min(scores)
        assert record.adversary == candidates[scores.index(min(scores))].sentence.raw
        assert record.method is Method.ADDSENT
        assert record.f1_before == 1.0

    def test_no_candidates_keeps_unattacked_scores(self, victim, small_examples):
        ex = small_examples[0]
        record = select_best([], victim, ex, Placement.SUFFIX, None, Method.ADDONESENT)
        assert record.adversary == ""
        assert record.f1_before == record.f1_after == 1.0
        assert record.em_after

    def test_select_one(self, addsent_resources, small_examples):
        ex = small_examples[0]
        candidates = gen_candidates(ex, addsent_resources, _rng("so", ex.id), 5)
        assert select_one([], _rng("so2")) is None
        pick = select_one(candidates, _rng("so3"))
        assert pick in candidates
