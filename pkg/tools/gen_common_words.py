#!/usr/bin/env python3
"""Generate the bundled common-words pool for the distractor attack.

Sources: vocabulary of the bundled paragraphs (frequency-ordered) topped up
with a static high-frequency English list. Tokens that appear in any fixture
gold answer are excluded so appended distractor tokens can never overlap a
gold span after normalization (articles are kept: normalization strips them).
"""

from __future__ import annotations

import sys
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from spanbreak.corpus import load_squad, tokenize
from spanbreak.metrics import normalize_answer

DATA = Path(__file__).resolve().parents[1] / "src/spanbreak/data"
TARGET = 1000

EXTRA = """
time people way day man world life hand part child eye woman place work week
case point government company number group problem fact be have do say get
make know think take see come want look use find give tell ask seem feel try
leave call good new first last long great little own other right big high
different even back there down still around however too very just now then
also only well where when what who how why which while because if although
since until unless though whether about above across against along among
before behind below beneath beside between beyond during except inside into
near onto outside over past through throughout toward under underneath upon
within without again almost already always anywhere away else ever everywhere
far fast hard here late much near never nowhere often once quickly rarely
seldom slowly sometimes somewhere soon usually yes no not all any each few
many more most none several some such that this these those they them their
he she it its his her him we us our you your i me my one two ten was were is
are been being am has had does did doing would should could may might must
can will shall a an the and or but nor so yet both either neither whose whom
table chair window floor road street city town village field forest hill
valley coast shore island bridge tower wall gate yard garden market school
church house room door roof farm mill shop boat ship train wagon cart horse
dog cat bird fish tree leaf branch root flower fruit seed soil sand rock
cloud rain wind storm sun moon star sky sea lake river stream pond spring
summer winter autumn morning evening night noon north south east west left
right center middle edge corner side top bottom front end beginning history
story letter book page word name voice sound music color light shadow fire
smoke air earth metal wood glass paper cloth wool leather oil bread milk
meat fruit vegetable king queen lord lady farmer miller baker smith weaver
merchant sailor soldier teacher student doctor nurse judge priest clerk
guard driver hunter fisher singer dancer painter writer reader keeper owner
worker master servant guest friend enemy neighbor family mother father son
daughter brother sister uncle aunt cousin
""".split()


def main() -> None:
    golds: set[str] = set()
    for ex in load_squad(str(DATA / "squad_small.json")):
        for g in ex.gold_texts:
            golds.update(normalize_answer(g).split())

    counts: Counter[str] = Counter()
    for tok in tokenize((DATA / "paragraphs.txt").read_text(encoding="utf-8")).tokens:
        low = tok.lower()
        if low.isalpha() and len(low) >= 2:
            counts[low] += 1

    words: dict[str, None] = {}
    for w, _ in counts.most_common():
        if w not in golds:
            words.setdefault(w, None)
    for w in EXTRA:
        if w not in golds:
            words.setdefault(w, None)
        if len(words) >= TARGET:
            break
    out = list(words)[:TARGET]
    (DATA / "common_words.txt").write_text("\n".join(out) + "\n", encoding="utf-8")
    excluded = sorted(golds & set(counts) | golds & set(EXTRA))
    print(f"wrote {len(out)} words; excluded {len(excluded)} gold tokens, e.g. {excluded[:12]}")


if __name__ == "__main__":
    main()
