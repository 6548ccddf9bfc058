#!/usr/bin/env python3
"""Assemble and validate the bundled QA fixtures.

Each entry builds a context as  lead | QA QB | 4-token gap | gold | 4-token gap
| QC QD | tail  where QA..QD are content words shared with the question. With
the bundled overlap victim, that geometry makes the gold span the unique
argmax: its two windows each see a full bracket pair, while any competing span
sees at most three bracket words. The script checks, per entry, that

  * the victim's top-1 answer is an exact match for the gold,
  * the answer-category classifier returns the intended category,
  * no gold content token appears in the question,
  * question tokens occurring in the context outside the bracket slots are
    reported (with idf weight) so accidental heavy strays stand out.

Run:  python3 tools/author_fixtures.py [--write]
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from spanbreak.campaign import categorize
from spanbreak.corpus import AnswerSpan, QAExample, tokenize
from spanbreak.metrics import exact_match, token_f1
from spanbreak.models import builtin_victim


@dataclass
class Entry:
    id: str
    category: str
    question: str
    lead: str
    left: tuple[str, str]
    gap_left: str
    gold: str
    gap_right: str
    right: tuple[str, str]
    tail: str
    extra_golds: tuple[str, ...] = field(default=())

    def context(self) -> str:
        parts = [
            self.lead,
            self.left[0],
            self.left[1],
            self.gap_left,
            self.gold,
            self.gap_right,
            self.right[0],
            self.right[1],
            self.tail,
        ]
        return " ".join(p for p in parts if p)


ENTRIES = [
    # ------------------------------------------------------------- Places
    Entry(
        id="ex01",
        category="Places",
        question="Where did brave merchants go while seeking silver goods?",
        lead="Ledgers from that era show a busy route.",
        left=("brave", "merchants"),
        gap_left="once hauled furs toward",
        gold="Valdorra",
        gap_right="and bartered there for",
        right=("silver", "goods"),
        tail="Snow later closed every mountain pass behind them.",
    ),
    Entry(
        id="ex02",
        category="Places",
        question="Where did weary sailors anchor while expecting calmer tides?",
        lead="A chart pinned above my desk tells one voyage.",
        left=("weary", "sailors"),
        gap_left="finally anchored just off",
        gold="Porto Nivel",
        gap_right="then slept aboard awaiting",
        right=("calmer", "tides"),
        tail="Their logbook records nothing else about that week.",
    ),
    Entry(
        id="ex03",
        category="Places",
        question="Where did young shepherds go before heavy frosts?",
        lead="Village elders still recite this seasonal habit.",
        left=("young", "shepherds"),
        gap_left="drove their flocks past",
        gold="Eastmoor",
        gap_right="each autumn well before",
        right=("heavy", "frosts"),
        tail="No herd stayed on high ground past October.",
    ),
    Entry(
        id="ex04",
        category="Places",
        question="Where did proud engineers raise bridges despite constant landslides?",
        lead="One survey volume praises a stubborn crew.",
        left=("proud", "engineers"),
        gap_left="raised twin viaducts near",
        gold="Karuvai Gorge",
        gap_right="while crews battled almost",
        right=("constant", "landslides"),
        tail="Both spans still carry traffic today.",
        extra_golds=("Karuvai",),
    ),
    Entry(
        id="ex05",
        category="Places",
        question="Where did patient botanists wander before supplying formal gardens?",
        lead="Her field diary lists a single site.",
        left=("patient", "botanists"),
        gap_left="gathered rare mosses around",
        gold="Lake Ammen",
        gap_right="then shipped crates for",
        right=("formal", "gardens"),
        tail="Every crate survived its long journey south.",
    ),
    Entry(
        id="ex06",
        category="Places",
        question="Where did restless traders gather before spring auctions?",
        lead="Market records from 1830 describe this custom.",
        left=("restless", "traders"),
        gap_left="pitched their booths across",
        gold="Brindle Square",
        gap_right="three days ahead of",
        right=("spring", "auctions"),
        tail="Rent for a corner pitch doubled yearly.",
    ),
    # -------------------------------------------------------------- Names
    Entry(
        id="ex07",
        category="Names",
        question="Who repaired broken organs inside drafty chapels?",
        lead="Parish accounts name just one craftsman.",
        left=("broken", "organs"),
        gap_left="found new life under",
        gold="Ibrahim Sorel",
        gap_right="and labored through many",
        right=("drafty", "chapels"),
        tail="His bill covered pipes, bellows, and travel.",
    ),
    Entry(
        id="ex08",
        category="Names",
        question="Who tamed stubborn falcons for royal hunts?",
        lead="Court rolls credit a quiet northerner.",
        left=("stubborn", "falcons"),
        gap_left="grew gentle only near",
        gold="Mirela Voss",
        gap_right="whose patience framed several",
        right=("royal", "hunts"),
        tail="She refused every offered title afterward.",
    ),
    Entry(
        id="ex09",
        category="Names",
        question="Who sketched ruined towers during golden evenings?",
        lead="The album's flyleaf carries an inked note.",
        left=("ruined", "towers"),
        gap_left="appear in charcoal by",
        gold="Dr. Veyra",
        gap_right="drawn across twenty calm",
        right=("golden", "evenings"),
        tail="Each sketch bears a tiny numbered seal.",
    ),
    Entry(
        id="ex10",
        category="Names",
        question="Who baked honey loaves for tired harvesters?",
        lead="Kitchen ledgers settle the question plainly.",
        left=("honey", "loaves"),
        gap_left="came out daily from",
        gold="Tomas Quill",
        gap_right="and fed rows of",
        right=("tired", "harvesters"),
        tail="Nobody matched his crust before or since.",
    ),
    Entry(
        id="ex11",
        category="Names",
        question="Who guarded ancient seals beneath vaulted archives?",
        lead="A brass plate by the stair names the keeper.",
        left=("ancient", "seals"),
        gap_left="stayed locked away under",
        gold="Mr. Abena",
        gap_right="far below those cool",
        right=("vaulted", "archives"),
        tail="Two keys never left his belt.",
    ),
    Entry(
        id="ex12",
        category="Names",
        question="Who mapped hidden reefs aboard leaking sloops?",
        lead="Naval annals single out a fearless surveyor.",
        left=("hidden", "reefs"),
        gap_left="were first charted by",
        gold="Captain Rhodes",
        gap_right="while commanding two barely",
        right=("leaking", "sloops"),
        tail="His charts guided fleets for decades.",
    ),
    # ------------------------------------------------------------- Dates
    Entry(
        id="ex13",
        category="Dates",
        question="When did proud founders open copper mines after early surveys?",
        lead="A cornerstone inscription preserves the moment.",
        left=("copper", "mines"),
        gap_left="first opened wide on",
        gold="June 14, 1911",
        gap_right="once crews finished their",
        right=("early", "surveys"),
        tail="Production began within a single month.",
        extra_golds=("1911",),
    ),
    Entry(
        id="ex14",
        category="Dates",
        question="When did anxious clerks post famine notices across walled towns?",
        lead="The gazette archive answers precisely.",
        left=("famine", "notices"),
        gap_left="went up everywhere on",
        gold="3 March 1741",
        gap_right="startling people in several",
        right=("walled", "towns"),
        tail="Grain wagons rolled in nine days later.",
    ),
    Entry(
        id="ex15",
        category="Dates",
        question="When did rival printers settle bitter disputes over page layouts?",
        lead="A signed accord survives in two copies.",
        left=("rival", "printers"),
        gap_left="shook hands finally in",
        gold="October 1907",
        gap_right="ending decades of truly",
        right=("bitter", "disputes"),
        tail="Both firms merged the following year.",
    ),
    Entry(
        id="ex16",
        category="Dates",
        question="When did coastal wardens light warning fires against raiding ships?",
        lead="Tide tables in the annex fix the night.",
        left=("warning", "fires"),
        gap_left="blazed along cliffs on",
        gold="August 9, 1588",
        gap_right="alerting hamlets about fast",
        right=("raiding", "ships"),
        tail="Every beacon answered within the hour.",
    ),
    Entry(
        id="ex17",
        category="Dates",
        question="When did tired delegates sign brittle treaties inside frozen halls?",
        lead="The protocol's last page is dated clearly.",
        left=("brittle", "treaties"),
        gap_left="were finally signed on",
        gold="17 January 1649",
        gap_right="by candlelight within those",
        right=("frozen", "halls"),
        tail="Couriers rode out before dawn.",
    ),
    # ------------------------------------------------------------ Numbers
    Entry(
        id="ex18",
        category="Numbers",
        question="How many iron kettles survived rough crossings yearly?",
        lead="Customs tallies put the figure plainly.",
        left=("iron", "kettles"),
        gap_left="arrived intact numbering only",
        gold="forty seven",
        gap_right="per year despite such",
        right=("rough", "crossings"),
        tail="Breakage claims ruined two insurers.",
    ),
    Entry(
        id="ex19",
        category="Numbers",
        question="How many granite steps climb toward quiet cloisters?",
        lead="Pilgrim guides agree on the count.",
        left=("granite", "steps"),
        gap_left="rise in sequence totaling",
        gold="1250",
        gap_right="before reaching those famously",
        right=("quiet", "cloisters"),
        tail="Most visitors pause twice on the way.",
    ),
    Entry(
        id="ex20",
        category="Numbers",
        question="How many glass beads went into ritual jars during solemn festivals?",
        lead="Temple inventories record the custom.",
        left=("glass", "beads"),
        gap_left="filled each jar counting",
        gold="eighty",
        gap_right="exactly as required by",
        right=("solemn", "festivals"),
        tail="Odd counts were considered unlucky.",
    ),
    Entry(
        id="ex21",
        category="Numbers",
        question="How many oak barrels rested under cool cellars?",
        lead="The distiller's notebook is specific.",
        left=("oak", "barrels"),
        gap_left="held plum brandy numbering",
        gold="three hundred twelve",
        gap_right="stacked neatly beneath those",
        right=("cool", "cellars"),
        tail="Each barrel carried a stamped lid.",
    ),
    Entry(
        id="ex22",
        category="Numbers",
        question="What share of woven rugs cleared strict inspections there?",
        lead="Guild audits preserved the statistic.",
        left=("woven", "rugs"),
        gap_left="passed muster at roughly",
        gold="ninety percent",
        gap_right="under notoriously slow and",
        right=("strict", "inspections"),
        tail="Rejected lots were unpicked and rewoven.",
        extra_golds=("ninety",),
    ),
    Entry(
        id="ex23",
        category="Numbers",
        question="How many clay lamps burned through midwinter vigils annually?",
        lead="Sacristans kept careful oil accounts.",
        left=("clay", "lamps"),
        gap_left="stayed alight numbering some",
        gold="nineteen",
        gap_right="throughout each of those",
        right=("midwinter", "vigils"),
        tail="Oil deliveries came by sled.",
    ),
    # ---------------------------------------------------------- OtherEnts
    Entry(
        id="ex24",
        category="OtherEnts",
        question="Which club funded marble fountains for dusty plazas?",
        lead="A bronze dedication settles the donor.",
        left=("marble", "fountains"),
        gap_left="owe their water to",
        gold="Azure Compass League",
        gap_right="and transformed four once",
        right=("dusty", "plazas"),
        tail="Members paid dues in silver.",
    ),
    Entry(
        id="ex25",
        category="OtherEnts",
        question="Which society rescued drowned bells from silted rivers?",
        lead="Salvage permits carry one recurring stamp.",
        left=("drowned", "bells"),
        gap_left="were lifted out by",
        gold="Quiet Anchor Brotherhood",
        gap_right="whose divers searched three",
        right=("silted", "rivers"),
        tail="Each bell rang again within a year.",
    ),
    Entry(
        id="ex26",
        category="OtherEnts",
        question="Which company staged masked comedies beneath painted awnings?",
        lead="Playbills from that summer name the performers.",
        left=("masked", "comedies"),
        gap_left="ran nightly thanks to",
        gold="Gilded Lantern Troupe",
        gap_right="performing under newly bright",
        right=("painted", "awnings"),
        tail="Standing room sold out by noon.",
    ),
    Entry(
        id="ex27",
        category="OtherEnts",
        question="Which workshop printed smuggled pamphlets despite harsh censors?",
        lead="Type fragments identified the culprit.",
        left=("smuggled", "pamphlets"),
        gap_left="kept appearing thanks to",
        gold="Blackwheel Press",
        gap_right="operating boldly against those",
        right=("harsh", "censors"),
        tail="Its hidden cellar held two presses.",
    ),
    # --------------------------------------------------------- NounPhrases
    Entry(
        id="ex28",
        category="NounPhrases",
        question="What did careful weavers trade for imported indigo?",
        lead="Caravan manifests list the exchange.",
        left=("careful", "weavers"),
        gap_left="swapped bolts and even",
        gold="woven reed baskets",
        gap_right="whenever caravans brought genuinely",
        right=("imported", "indigo"),
        tail="Both sides considered the bargain fair.",
    ),
    Entry(
        id="ex29",
        category="NounPhrases",
        question="What filled locked chests aboard sinking galleons?",
        lead="Divers finally answered an old rumor.",
        left=("locked", "chests"),
        gap_left="turned out to hold",
        gold="copper kettles",
        gap_right="rather than coin inside",
        right=("sinking", "galleons"),
        tail="Collectors bought every dented piece.",
    ),
    Entry(
        id="ex30",
        category="NounPhrases",
        question="What did proud millers store near humming wheels?",
        lead="An inspector's sketch shows the scene.",
        left=("proud", "millers"),
        gap_left="kept bags full of",
        gold="stone ground rye flour",
        gap_right="in neat rows beside",
        right=("humming", "wheels"),
        tail="Dust hung golden in the light.",
    ),
    Entry(
        id="ex31",
        category="NounPhrases",
        question="What sheltered small finches through howling gales?",
        lead="Garden notebooks credit a simple refuge.",
        left=("small", "finches"),
        gap_left="survived chiefly inside dense",
        gold="hawthorn hedges",
        gap_right="that muffled even truly",
        right=("howling", "gales"),
        tail="Spring counts proved the point.",
    ),
    Entry(
        id="ex32",
        category="NounPhrases",
        question="What anchored floating docks against sudden swells?",
        lead="Harbor plans specify the fix.",
        left=("floating", "docks"),
        gap_left="stayed put owing to",
        gold="a lattice of chain",
        gap_right="that tamed even quite",
        right=("sudden", "swells"),
        tail="Storm damage fell sharply afterward.",
    ),
    Entry(
        id="ex33",
        category="NounPhrases",
        question="What did thrifty tailors save from discarded uniforms?",
        lead="Workshop inventories show steady habits.",
        left=("thrifty", "tailors"),
        gap_left="salvaged whole trays of",
        gold="brass buttons",
        gap_right="clipped briskly from old",
        right=("discarded", "uniforms"),
        tail="Nothing useful reached the rag bin.",
    ),
    Entry(
        id="ex34",
        category="NounPhrases",
        question="What cooled feverish patients inside crowded wards?",
        lead="Hospital journals praise one remedy.",
        left=("feverish", "patients"),
        gap_left="found relief mainly through",
        gold="willow bark tea",
        gap_right="served hourly across badly",
        right=("crowded", "wards"),
        tail="Orderlies brewed it by the gallon.",
    ),
    Entry(
        id="ex35",
        category="NounPhrases",
        question="What did wandering tinkers mend besides leaky pots?",
        lead="Toll registers describe their trade.",
        left=("wandering", "tinkers"),
        gap_left="also repaired plenty of",
        gold="brass door hinges",
        gap_right="not merely their usual",
        right=("leaky", "pots"),
        tail="Their carts rattled with spare rivets.",
    ),
    # --------------------------------------------------------- VerbPhrases
    Entry(
        id="ex36",
        category="VerbPhrases",
        question="What did devoted gardeners do before autumn plantings?",
        lead="Almanac margins preserve the routine.",
        left=("devoted", "gardeners"),
        gap_left="returned each year and",
        gold="collected rare seeds",
        gap_right="weeks ahead of their",
        right=("autumn", "plantings"),
        tail="Jars lined every pantry shelf.",
    ),
    Entry(
        id="ex37",
        category="VerbPhrases",
        question="What did nervous apprentices do during thunderous demonstrations?",
        lead="A foreman's memoir recalls the scene.",
        left=("nervous", "apprentices"),
        gap_left="usually just stood and",
        gold="covered both ears",
        gap_right="at the peak of",
        right=("thunderous", "demonstrations"),
        tail="Veterans merely grinned at the noise.",
    ),
    Entry(
        id="ex38",
        category="VerbPhrases",
        question="What did loyal stewards do with surplus grain?",
        lead="Estate books show the practice yearly.",
        left=("loyal", "stewards"),
        gap_left="quietly took stock then",
        gold="distributed sealed sacks",
        gap_right="whenever harvests yielded real",
        right=("surplus", "grain"),
        tail="No tenant went short that decade.",
    ),
    Entry(
        id="ex39",
        category="VerbPhrases",
        question="What did stranded climbers do awaiting mountain rescues?",
        lead="The patrol log tells it simply.",
        left=("stranded", "climbers"),
        gap_left="wisely roped together and",
        gold="melted snow for water",
        gap_right="while watching for timely",
        right=("mountain", "rescues"),
        tail="All four walked out unharmed.",
    ),
    Entry(
        id="ex40",
        category="VerbPhrases",
        question="What did shrewd brewers do after failed hop harvests?",
        lead="Brewery correspondence reveals the workaround.",
        left=("shrewd", "brewers"),
        gap_left="simply changed recipe and",
        gold="substituted dried heather",
        gap_right="to offset two utterly",
        right=("failed", "harvests"),
        tail="Drinkers barely noticed the switch.",
    ),
    # --------------------------------------------------------- AdjPhrases
    Entry(
        id="ex41",
        category="AdjPhrases",
        question="How did veteran masons rate imported sandstone?",
        lead="Survey interviews captured their verdict.",
        left=("veteran", "masons"),
        gap_left="rated the quarry stock",
        gold="remarkably durable",
        gap_right="compared with most locally",
        right=("imported", "sandstone"),
        tail="Quarry orders tripled that season.",
    ),
    Entry(
        id="ex42",
        category="AdjPhrases",
        question="How did blunt critics judge debut operas?",
        lead="Review columns spared nobody.",
        left=("blunt", "critics"),
        gap_left="called most new efforts",
        gold="painfully hollow",
        gap_right="and said so about",
        right=("debut", "operas"),
        tail="Composers dreaded Monday papers.",
    ),
    Entry(
        id="ex43",
        category="AdjPhrases",
        question="How did seasoned porters judge replacement gear?",
        lead="Depot complaints fill a whole folder.",
        left=("seasoned", "porters"),
        gap_left="judged the new straps",
        gold="quite fragile",
        gap_right="and petitioned for sturdier",
        right=("replacement", "gear"),
        tail="The supplier lost its contract.",
    ),
    Entry(
        id="ex44",
        category="AdjPhrases",
        question="How did patient teachers rate donated primers?",
        lead="Inspection margins carry one repeated phrase.",
        left=("patient", "teachers"),
        gap_left="marked the whole batch",
        gold="sadly brittle",
        gap_right="after one term of",
        right=("donated", "primers"),
        tail="Rebinding cost more than new stock.",
    ),
    # ------------------------------------------------------------ Clauses
    Entry(
        id="ex45",
        category="Clauses",
        question="Why did uneasy farmers abandon terraced plots?",
        lead="Petitions to the crown explain the exodus.",
        left=("uneasy", "farmers"),
        gap_left="left the uplands mainly",
        gold="because heavy rains flooded every lowland trail",
        gap_right="leaving behind rows of",
        right=("terraced", "plots"),
        tail="Few families ever returned.",
    ),
    Entry(
        id="ex46",
        category="Clauses",
        question="Why did cautious captains avoid northern straits?",
        lead="Pilot books repeat the same warning.",
        left=("cautious", "captains"),
        gap_left="steered wide of them",
        gold="because drifting ice crushed unlucky hulls yearly",
        gap_right="and charted detours around",
        right=("northern", "straits"),
        tail="Insurance rates told the same story.",
    ),
    Entry(
        id="ex47",
        category="Clauses",
        question="Why did frugal councils delay aqueduct repairs?",
        lead="Minute books record the stalemate.",
        left=("frugal", "councils"),
        gap_left="put off the work",
        gold="because quarried stone cost triple after the war",
        gap_right="and debated cheaper stopgap",
        right=("aqueduct", "repairs"),
        tail="Leaks worsened every spring.",
    ),
    Entry(
        id="ex48",
        category="Clauses",
        question="Why did watchful herders fence river bends?",
        lead="Grazing agreements spell out the reason.",
        left=("watchful", "herders"),
        gap_left="fenced those loops off",
        gold="because spring floods swallowed calves without warning",
        gap_right="and posted boys along",
        right=("river", "bends"),
        tail="Losses dropped to almost none.",
    ),
    # ------------------------------------------------------------- Others
    Entry(
        id="ex49",
        category="Others",
        question="What did meticulous stewards ration during besieged winters?",
        lead="Siege diaries list the dwindling stores.",
        left=("meticulous", "stewards"),
        gap_left="rationed out portions of",
        gold="grain from nine distant upland terraces",
        gap_right="to stretch supplies across",
        right=("besieged", "winters"),
        tail="Spring relief arrived barely in time.",
    ),
    Entry(
        id="ex50",
        category="Others",
        question="What did tireless archivists index beneath flickering lamps?",
        lead="Catalog prefaces honor the drudgery.",
        left=("tireless", "archivists"),
        gap_left="indexed whole shelves of",
        gold="deeds about seven upland mills near salt flats",
        gap_right="working long hours under",
        right=("flickering", "lamps"),
        tail="The finished catalog filled eleven volumes.",
    ),
]

# Stratified subset for the small smoke-test fixture.
MINI_IDS = [
    "ex01", "ex02", "ex07", "ex08", "ex13", "ex14", "ex18", "ex19",
    "ex24", "ex25", "ex28", "ex29", "ex36", "ex37", "ex41", "ex42",
    "ex45", "ex46", "ex49", "ex50",
]


def build_example(entry: Entry) -> QAExample:
    context = entry.context()
    start = context.find(entry.gold)
    if start < 0:
        raise ValueError(f"{entry.id}: gold not found in context")
    golds = [AnswerSpan(text=entry.gold, char_start=start)]
    for extra in entry.extra_golds:
        pos = context.find(extra)
        if pos < 0:
            raise ValueError(f"{entry.id}: extra gold {extra!r} not in context")
        golds.append(AnswerSpan(text=extra, char_start=pos))
    return QAExample(
        id=entry.id,
        question=tokenize(entry.question),
        context=tokenize(context),
        gold_answers=tuple(golds),
    )


def validate(victim, entries: list[Entry]) -> int:
    failures = 0
    examples = [build_example(e) for e in entries]
    dists = victim.predict_batch([(ex.question, ex.context) for ex in examples], 1)
    idf = victim.config.idf_weights or {}
    for entry, ex, dist in zip(entries, examples, dists):
        problems = []
        top = dist.top.text
        f1 = token_f1(top, ex.gold_texts)
        if not exact_match(top, ex.gold_texts):
            problems.append(f"victim top-1 {top!r} (F1 {f1:.2f})")
        cat = categorize(ex.gold_answers[0], ex.context).value
        if cat != entry.category:
            problems.append(f"category {cat} != {entry.category}")
        qset = {t.lower() for t in ex.question.tokens if any(c.isalnum() for c in t)}
        gold_tokens = {t.lower() for t in tokenize(entry.gold).tokens if any(c.isalnum() for c in t)}
        leak = qset & gold_tokens
        if leak:
            problems.append(f"gold tokens in question: {sorted(leak)}")
        bracket = {w.lower() for w in (*entry.left, *entry.right)}
        strays = [
            (t.lower(), round(idf.get(t.lower(), victim.config.idf_default), 2))
            for t in ex.context.tokens
            if t.lower() in qset and t.lower() not in bracket
        ]
        if problems:
            failures += 1
            print(f"FAIL {entry.id}: " + "; ".join(problems))
        if strays:
            print(f"  note {entry.id} strays: {strays}")
    return failures


def write_fixtures(entries: list[Entry], out_dir: Path) -> None:
    def payload(subset: list[Entry], title: str) -> dict:
        paragraphs = []
        for entry in subset:
            ex = build_example(entry)
            paragraphs.append(
                {
                    "context": ex.context.raw,
                    "qas": [
                        {
                            "id": ex.id,
                            "question": ex.question.raw,
                            "answers": [
                                {"text": a.text, "answer_start": a.char_start}
                                for a in ex.gold_answers
                            ],
                        }
                    ],
                }
            )
        return {"version": "1.1", "data": [{"title": title, "paragraphs": paragraphs}]}

    small = payload(entries, "fixture-small")
    mini = payload([e for e in entries if e.id in MINI_IDS], "fixture-mini")
    (out_dir / "squad_small.json").write_text(
        json.dumps(small, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
    )
    (out_dir / "squad_mini.json").write_text(
        json.dumps(mini, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
    )
    print(f"wrote {len(entries)} examples to squad_small.json, {len(MINI_IDS)} to squad_mini.json")


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--write", action="store_true", help="emit fixture files")
    args = parser.parse_args()
    victim = builtin_victim()
    failures = validate(victim, ENTRIES)
    by_cat: dict[str, int] = {}
    for e in ENTRIES:
        by_cat[e.category] = by_cat.get(e.category, 0) + 1
    print(f"{len(ENTRIES)} entries; failures: {failures}; categories: {by_cat}")
    if args.write:
        if failures:
            print("refusing to write fixtures with failures")
            return 1
        write_fixtures(ENTRIES, Path(__file__).resolve().parents[1] / "src/spanbreak/data")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
