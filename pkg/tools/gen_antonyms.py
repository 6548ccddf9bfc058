#!/usr/bin/env python3
"""Generate the bundled antonym lexicon.

Curated base pairs expanded with regular morphology: -er/-est/-ly for
whitelisted adjectives, -s/-ed/-ing for whitelisted verbs, plurals for nouns.
Every expansion family is whitelisted by hand so no irregular junk forms
appear; irregular inflections (thinner, shrank, fully, gently, ...) come from
override tables or explicit entries. Also verifies that every bundled fixture
question contains at least one mutable token.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from spanbreak.corpus import load_squad

DATA = Path(__file__).resolve().parents[1] / "src/spanbreak/data"

# Symmetric adjective pairs expanded to -er/-est/-ly on both sides (with the
# override tables below supplying irregular forms or suppressing bad ones).
ADJ_REGULAR = [
    ("calm", "rough"), ("warm", "cool"), ("bright", "dark"), ("quiet", "loud"),
    ("soft", "hard"), ("smooth", "coarse"), ("light", "heavy"), ("quick", "slow"),
    ("clean", "dirty"), ("sweet", "sour"), ("fresh", "stale"), ("tight", "loose"),
    ("bold", "timid"), ("kind", "cruel"), ("neat", "messy"), ("plain", "fancy"),
    ("rich", "poor"), ("strong", "weak"), ("thick", "thin"), ("deep", "shallow"),
    ("high", "low"), ("new", "old"), ("young", "old"), ("long", "short"),
    ("tall", "short"), ("wide", "narrow"), ("near", "far"), ("early", "late"),
    ("grand", "humble"), ("sharp", "blunt"), ("firm", "shaky"), ("stern", "mild"),
    ("proud", "meek"), ("brave", "fearful"), ("dull", "vivid"), ("dry", "damp"),
    ("full", "empty"), ("great", "small"), ("busy", "idle"), ("dense", "sparse"),
    ("steep", "gentle"), ("stiff", "limp"), ("crisp", "soggy"), ("pale", "ruddy"),
    ("faint", "clear"), ("grim", "merry"), ("glad", "gloomy"), ("swift", "slow"),
    ("harsh", "tender"), ("fine", "crude"), ("happy", "unhappy"),
    ("lucky", "unlucky"), ("tidy", "untidy"), ("steady", "unsteady"),
    ("wise", "unwise"), ("fair", "unfair"), ("pure", "impure"),
    ("mature", "immature"), ("stable", "unstable"), ("common", "uncommon"),
]

# Irregular comparative/superlative/adverb forms; None suppresses the form
# (and with it that form for the paired word).
ER_OVERRIDE = {
    "thin": "thinner", "grim": "grimmer", "glad": "gladder", "far": "farther",
    "timid": None, "fearful": None, "vivid": None, "unhappy": "unhappier",
    "unlucky": "unluckier", "untidy": "untidier", "unsteady": "unsteadier",
    "unfair": None, "impure": None, "immature": None, "unstable": None,
    "uncommon": None, "unwise": None, "crude": "cruder",
}
EST_OVERRIDE = {
    "thin": "thinnest", "grim": "grimmest", "glad": "gladdest",
    "far": "farthest", "timid": None, "fearful": None, "vivid": None,
    "unhappy": "unhappiest", "unlucky": "unluckiest", "untidy": "untidiest",
    "unsteady": "unsteadiest", "unfair": None, "impure": None,
    "immature": None, "unstable": None, "uncommon": None, "unwise": None,
    "crude": "crudest",
}
LY_OVERRIDE = {
    "old": None, "young": None, "long": None, "tall": None, "small": None,
    "far": None, "early": None, "crude": "crudely", "unwise": "unwisely",
}

# Adjective pairs expanded to base and -ly only (both directions).
ADJ_LY = [
    ("even", "uneven"), ("certain", "uncertain"), ("pleasant", "unpleasant"),
    ("willing", "unwilling"), ("grateful", "ungrateful"),
    ("helpful", "unhelpful"), ("harmful", "harmless"), ("hopeful", "hopeless"),
    ("useful", "useless"), ("painful", "painless"), ("fearless", "fearful"),
    ("equal", "unequal"), ("just", "unjust"), ("perfect", "imperfect"),
    ("active", "inactive"), ("direct", "indirect"), ("complete", "incomplete"),
    ("correct", "incorrect"), ("audible", "inaudible"), ("decent", "indecent"),
    ("discreet", "indiscreet"), ("secure", "insecure"),
    ("accurate", "inaccurate"), ("adequate", "inadequate"),
    ("capable", "incapable"), ("competent", "incompetent"),
    ("consistent", "inconsistent"), ("convenient", "inconvenient"),
    ("effective", "ineffective"), ("efficient", "inefficient"),
    ("flexible", "inflexible"), ("legal", "illegal"), ("logical", "illogical"),
    ("mortal", "immortal"), ("possible", "impossible"),
    ("practical", "impractical"), ("precise", "imprecise"),
    ("probable", "improbable"), ("proper", "improper"),
    ("rational", "irrational"), ("regular", "irregular"),
    ("relevant", "irrelevant"), ("responsible", "irresponsible"),
    ("reversible", "irreversible"), ("sane", "insane"),
    ("sensitive", "insensitive"), ("significant", "insignificant"),
    ("sincere", "insincere"), ("sufficient", "insufficient"),
    ("tolerant", "intolerant"), ("valid", "invalid"),
    ("voluntary", "involuntary"), ("honest", "dishonest"),
]

# One-directional adjective/participle entries (plus hand-picked inverses).
ADJ_EXPLICIT = [
    ("brave", "cowardly"), ("cowardly", "brave"), ("weary", "fresh"),
    ("tired", "rested"), ("rested", "tired"), ("restless", "calm"),
    ("anxious", "calm"), ("nervous", "calm"), ("uneasy", "confident"),
    ("confident", "uneasy"), ("patient", "impatient"), ("impatient", "patient"),
    ("careful", "careless"), ("careless", "careful"), ("cautious", "reckless"),
    ("reckless", "cautious"), ("watchful", "negligent"), ("meticulous", "sloppy"),
    ("sloppy", "meticulous"), ("thrifty", "wasteful"), ("wasteful", "thrifty"),
    ("frugal", "lavish"), ("lavish", "frugal"), ("loyal", "disloyal"),
    ("disloyal", "loyal"), ("devoted", "indifferent"), ("tireless", "weary"),
    ("stubborn", "docile"), ("docile", "stubborn"), ("shrewd", "foolish"),
    ("foolish", "shrewd"), ("blunt", "tactful"), ("seasoned", "untested"),
    ("veteran", "novice"), ("ancient", "modern"), ("modern", "ancient"),
    ("hidden", "visible"), ("visible", "hidden"), ("broken", "mended"),
    ("ruined", "pristine"), ("pristine", "ruined"), ("rival", "allied"),
    ("coastal", "inland"), ("inland", "coastal"), ("northern", "southern"),
    ("southern", "northern"), ("eastern", "western"), ("western", "eastern"),
    ("urban", "rural"), ("rural", "urban"), ("foreign", "native"),
    ("native", "foreign"), ("imported", "exported"), ("exported", "imported"),
    ("domestic", "imported"), ("solemn", "cheerful"), ("cheerful", "solemn"),
    ("strict", "lenient"), ("lenient", "strict"), ("severe", "mild"),
    ("formal", "informal"), ("informal", "formal"), ("royal", "common"),
    ("drafty", "snug"), ("snug", "drafty"), ("dusty", "spotless"),
    ("spotless", "dusty"), ("crowded", "empty"), ("frozen", "thawed"),
    ("thawed", "frozen"), ("molten", "solid"), ("brittle", "sturdy"),
    ("sturdy", "brittle"), ("fragile", "sturdy"), ("leaky", "watertight"),
    ("watertight", "leaky"), ("floating", "sunken"), ("sunken", "floating"),
    ("sudden", "gradual"), ("gradual", "sudden"), ("constant", "variable"),
    ("variable", "constant"), ("steady", "flickering"), ("flickering", "steady"),
    ("howling", "silent"), ("silent", "howling"), ("thunderous", "hushed"),
    ("feverish", "healthy"), ("healthy", "feverish"), ("golden", "leaden"),
    ("silver", "golden"), ("iron", "wooden"), ("wooden", "iron"),
    ("oak", "pine"), ("midwinter", "midsummer"), ("midsummer", "midwinter"),
    ("autumn", "spring"), ("walled", "open"), ("vaulted", "flat"),
    ("terraced", "flat"), ("surplus", "scarce"), ("scarce", "surplus"),
    ("failed", "successful"), ("successful", "failed"), ("famous", "obscure"),
    ("obscure", "famous"), ("popular", "unpopular"), ("unpopular", "popular"),
    ("masked", "unmasked"), ("wandering", "settled"), ("stranded", "safe"),
    ("besieged", "relieved"), ("donated", "purchased"), ("raiding", "trading"),
    ("debut", "farewell"), ("famine", "abundance"), ("warning", "reassuring"),
    ("leaking", "sealed"), ("sealed", "leaking"), ("locked", "unlocked"),
    ("unlocked", "locked"), ("sheltered", "exposed"), ("exposed", "sheltered"),
    ("anchored", "adrift"), ("bitter", "sweet"), ("ritual", "ordinary"),
    ("replacement", "original"), ("original", "replacement"),
    ("upper", "lower"), ("lower", "upper"), ("inner", "outer"),
    ("outer", "inner"), ("internal", "external"), ("external", "internal"),
    ("public", "private"), ("private", "public"), ("rare", "common"),
    ("common", "rare"), ("frequent", "scarce"), ("usual", "unusual"),
    ("unusual", "usual"), ("normal", "odd"), ("odd", "normal"),
    ("true", "false"), ("false", "true"), ("real", "fake"), ("fake", "real"),
    ("cheap", "costly"), ("costly", "cheap"), ("simple", "complex"),
    ("complex", "simple"), ("easy", "difficult"), ("difficult", "easy"),
    ("safe", "dangerous"), ("dangerous", "safe"), ("alive", "dead"),
    ("dead", "alive"), ("awake", "asleep"), ("asleep", "awake"),
    ("polite", "rude"), ("rude", "polite"), ("generous", "stingy"),
    ("stingy", "generous"), ("eager", "reluctant"), ("reluctant", "eager"),
    ("fierce", "tame"), ("wild", "tame"), ("tame", "wild"),
    ("gloomy", "sunny"), ("sunny", "gloomy"), ("noisy", "silent"),
    ("straight", "crooked"), ("crooked", "straight"), ("major", "minor"),
    ("minor", "major"), ("vast", "tiny"), ("tiny", "vast"),
    ("abundant", "scarce"), ("present", "absent"), ("absent", "present"),
    ("familiar", "strange"), ("strange", "familiar"), ("humming", "silent"),
    ("painted", "bare"), ("bare", "painted"), ("gilded", "plain"),
    ("likely", "unlikely"), ("unlikely", "likely"), ("wanted", "unwanted"),
    ("unwanted", "wanted"), ("armed", "unarmed"), ("unarmed", "armed"),
    ("nearer", "farther"), ("farther", "nearer"), ("nearest", "farthest"),
    ("farthest", "nearest"),
]

# Symmetric verb pairs with fully regular -s/-ed/-ing on both sides.
VERB_REGULAR = [
    ("open", "close"), ("raise", "lower"), ("gather", "scatter"),
    ("attach", "detach"), ("load", "unload"), ("fill", "empty"),
    ("lengthen", "shorten"), ("strengthen", "weaken"), ("brighten", "darken"),
    ("advance", "retreat"), ("increase", "decrease"), ("accept", "reject"),
    ("praise", "blame"), ("reward", "punish"), ("attack", "defend"),
    ("start", "finish"), ("enter", "exit"), ("appear", "vanish"),
    ("arrive", "depart"), ("repair", "damage"), ("guard", "neglect"),
    ("rescue", "abandon"), ("protect", "expose"), ("conceal", "reveal"),
    ("fasten", "loosen"), ("delay", "expedite"), ("hurry", "dawdle"),
    ("save", "discard"), ("trade", "hoard"), ("store", "discard"),
    ("tighten", "slacken"), ("assemble", "disperse"),
    ("encourage", "discourage"), ("approve", "oppose"), ("obey", "defy"),
    ("push", "pull"), ("ration", "squander"), ("tame", "release"),
    ("mask", "unmask"), ("smuggle", "declare"), ("print", "erase"),
    ("sketch", "erase"), ("chart", "ignore"), ("fence", "unfence"),
    ("anchor", "drift"), ("climb", "descend"), ("clear", "block"),
    ("settle", "unsettle"), ("stage", "cancel"), ("fund", "defund"),
    ("plant", "uproot"), ("burn", "douse"), ("cool", "heat"),
    ("shelter", "expose"), ("light", "extinguish"), ("sign", "void"),
    ("post", "remove"), ("wander", "settle"), ("judge", "excuse"),
    ("rate", "ignore"), ("abandon", "reclaim"), ("drown", "surface"),
    ("flood", "drain"), ("survive", "perish"), ("cross", "skirt"),
    ("inhale", "exhale"), ("ascend", "descend"), ("whisper", "shout"),
    ("sharpen", "blunt"), ("soften", "harden"), ("widen", "narrow"),
    ("hasten", "linger"), ("bless", "curse"), ("assist", "hinder"),
    ("employ", "dismiss"), ("extend", "curtail"), ("inflate", "deflate"),
    ("unite", "divide"), ("connect", "sever"), ("tolerate", "resist"),
    ("honor", "insult"), ("admire", "despise"), ("trust", "doubt"),
    ("polish", "tarnish"), ("flourish", "wither"), ("prosper", "struggle"),
    ("bloom", "wilt"), ("thrive", "languish"), ("soar", "plunge"),
    ("wax", "wane"), ("curl", "straighten"), ("applaud", "jeer"),
    ("invite", "banish"), ("lighten", "burden"), ("pardon", "convict"),
    ("recruit", "discharge"), ("sow", "reap"), ("mount", "dismount"),
    ("embark", "disembark"), ("accelerate", "brake"),
    ("simplify", "complicate"), ("magnify", "reduce"),
]

# Irregular or suffix-shifting verb forms, listed explicitly.
VERB_EXPLICIT = [
    ("win", "lose"), ("wins", "loses"), ("won", "lost"), ("winning", "losing"),
    ("buy", "sell"), ("buys", "sells"), ("bought", "sold"), ("buying", "selling"),
    ("give", "take"), ("gives", "takes"), ("gave", "took"), ("giving", "taking"),
    ("rise", "fall"), ("rises", "falls"), ("rose", "fell"), ("rising", "falling"),
    ("begin", "end"), ("begins", "ends"), ("began", "ended"), ("beginning", "ending"),
    ("build", "demolish"), ("builds", "demolishes"), ("built", "demolished"),
    ("building", "demolishing"), ("create", "destroy"), ("creates", "destroys"),
    ("created", "destroyed"), ("creating", "destroying"),
    ("succeed", "fail"), ("succeeds", "fails"), ("succeeded", "failed"),
    ("succeeding", "failing"), ("hide", "reveal"), ("hides", "reveals"),
    ("hid", "revealed"), ("hiding", "revealing"), ("keep", "discard"),
    ("keeps", "discards"), ("kept", "discarded"), ("keeping", "discarding"),
    ("lock", "unlock"), ("locks", "unlocks"), ("locking", "unlocking"),
    ("freeze", "thaw"), ("freezes", "thaws"), ("froze", "thawed"),
    ("freezing", "thawing"), ("lift", "drop"), ("lifts", "drops"),
    ("lifted", "dropped"), ("lifting", "dropping"),
    ("stretch", "compress"), ("stretches", "compresses"),
    ("stretched", "compressed"), ("stretching", "compressing"),
    ("go", "stay"), ("goes", "stays"), ("went", "stayed"), ("going", "staying"),
    ("come", "leave"), ("comes", "leaves"), ("came", "left"), ("coming", "leaving"),
    ("drive", "follow"), ("drove", "followed"), ("driving", "following"),
    ("expand", "shrink"), ("expands", "shrinks"), ("expanded", "shrank"),
    ("expanding", "shrinking"), ("shrink", "expand"), ("shrinks", "expands"),
    ("shrank", "expanded"), ("shrunk", "expanded"), ("shrinking", "expanding"),
    ("allow", "forbid"), ("allows", "forbids"), ("allowed", "forbade"),
    ("allowing", "forbidding"), ("forbid", "allow"), ("forbids", "allows"),
    ("forbade", "allowed"), ("forbidding", "allowing"),
    ("mend", "break"), ("mends", "breaks"), ("mended", "broke"),
    ("mending", "breaking"), ("break", "mend"), ("breaks", "mends"),
    ("broke", "mended"), ("breaking", "mending"),
    ("remember", "forget"), ("remembers", "forgets"), ("remembered", "forgot"),
    ("remembering", "forgetting"), ("forget", "remember"),
    ("forgets", "remembers"), ("forgot", "remembered"),
    ("forgetting", "remembering"), ("avoid", "seek"), ("avoids", "seeks"),
    ("avoided", "sought"), ("avoiding", "seeking"), ("seek", "avoid"),
    ("seeks", "avoids"), ("sought", "avoided"), ("seeking", "avoiding"),
    ("deliver", "withhold"), ("delivers", "withholds"),
    ("delivered", "withheld"), ("delivering", "withholding"),
    ("attract", "repel"), ("attracts", "repels"), ("attracted", "repelled"),
    ("attracting", "repelling"), ("borrow", "lend"), ("borrows", "lends"),
    ("borrowed", "lent"), ("borrowing", "lending"), ("lend", "borrow"),
    ("lends", "borrows"), ("lent", "borrowed"), ("lending", "borrowing"),
    ("float", "sink"), ("floats", "sinks"), ("floated", "sank"),
    ("sink", "float"), ("sinks", "floats"),
    ("sank", "floated"), ("sunk", "floated"), ("sinking", "floating"),
    ("map", "ignore"), ("maps", "ignores"), ("mapped", "ignored"),
    ("mapping", "ignoring"), ("shred", "index"), ("shreds", "indexes"),
    ("shredded", "indexed"), ("shredding", "indexing"), ("index", "shred"),
    ("indexes", "shreds"), ("indexed", "shredded"), ("indexing", "shredding"),
    ("strike", "pitch"), ("strikes", "pitches"), ("struck", "pitched"),
    ("striking", "pitching"),
    ("bake", "freeze"), ("bakes", "freezes"), ("baked", "froze"),
    ("baking", "freezing"), ("smuggled", "declared"), ("anchored", "drifted"),
    ("anchoring", "drifting"), ("fenced", "unfenced"), ("staged", "cancelled"),
    ("funded", "defunded"), ("planted", "uprooted"), ("burned", "doused"),
    ("cooled", "heated"), ("lit", "extinguished"), ("signed", "voided"),
    ("posted", "removed"), ("judged", "excused"), ("rated", "ignored"),
    ("wandered", "settled"), ("abandoned", "reclaimed"),
    ("drowned", "surfaced"), ("flooded", "drained"), ("survived", "perished"),
    ("crossed", "skirted"), ("rescued", "abandoned"), ("guarded", "neglected"),
    ("repaired", "damaged"), ("traded", "hoarded"), ("stored", "discarded"),
    ("saved", "discarded"), ("cleared", "blocked"), ("climbed", "descended"),
    ("sheltered", "exposed"), ("tamed", "released"), ("masked", "unmasked"),
    ("printed", "erased"), ("sketched", "erased"), ("rationed", "squandered"),
    ("delayed", "expedited"), ("charted", "ignored"),
]

# Noun pairs; both directions, singular and plural.
NOUN_PAIRS = [
    ("friend", "enemy"), ("ally", "rival"), ("victory", "defeat"),
    ("success", "failure"), ("profit", "loss"), ("strength", "weakness"),
    ("courage", "fear"), ("joy", "sorrow"), ("day", "night"),
    ("morning", "evening"), ("summer", "winter"), ("spring", "autumn"),
    ("north", "south"), ("east", "west"), ("top", "bottom"),
    ("front", "back"), ("start", "finish"), ("beginning", "end"),
    ("arrival", "departure"), ("entrance", "exit"), ("question", "answer"),
    ("problem", "solution"), ("war", "peace"), ("noise", "silence"),
    ("light", "shadow"), ("heat", "cold"), ("youth", "age"),
    ("wealth", "poverty"), ("surplus", "shortage"), ("flood", "drought"),
    ("ceiling", "floor"), ("sunrise", "sunset"), ("import", "export"),
    ("attack", "defense"), ("reward", "penalty"), ("praise", "criticism"),
    ("majority", "minority"), ("master", "apprentice"), ("buyer", "seller"),
    ("landlord", "tenant"), ("host", "guest"), ("teacher", "student"),
    ("parent", "child"), ("king", "subject"), ("gain", "loss"),
    ("hope", "despair"), ("truth", "falsehood"), ("order", "chaos"),
    ("comfort", "hardship"), ("abundance", "famine"), ("presence", "absence"),
    ("virtue", "vice"), ("optimist", "pessimist"), ("maximum", "minimum"),
    ("ascent", "descent"), ("inflow", "outflow"), ("income", "expense"),
    ("credit", "debit"), ("supply", "demand"), ("cause", "effect"),
    ("birth", "death"), ("dawn", "dusk"), ("noon", "midnight"),
    ("weekday", "weekend"), ("interior", "exterior"), ("insider", "outsider"),
    ("amateur", "professional"), ("novice", "expert"), ("leader", "follower"),
    ("employer", "employee"), ("producer", "consumer"), ("lender", "borrower"),
    ("predator", "prey"), ("hero", "villain"), ("angel", "demon"),
    ("land", "sea"), ("mountain", "valley"), ("attic", "cellar"),
    ("bow", "stern"), ("port", "starboard"), ("crest", "trough"),
    ("peak", "base"), ("past", "future"), ("knowledge", "ignorance"),
    ("wisdom", "folly"), ("honesty", "deceit"), ("loyalty", "treachery"),
    ("bravery", "cowardice"), ("generosity", "greed"), ("humility", "pride"),
    ("patience", "haste"), ("caution", "recklessness"),
    ("diligence", "laziness"), ("harmony", "discord"), ("unity", "division"),
    ("freedom", "captivity"), ("liberty", "bondage"), ("safety", "danger"),
    ("health", "illness"), ("feast", "famine"), ("plenty", "scarcity"),
    ("growth", "decay"), ("expansion", "contraction"),
    ("creation", "destruction"), ("construction", "demolition"),
    ("acceptance", "rejection"), ("approval", "denial"),
    ("agreement", "dispute"), ("kindness", "cruelty"), ("beauty", "ugliness"),
]


def adj_forms(base: str) -> dict[str, str | None]:
    er = base + ("r" if base.endswith("e") else "er")
    est = base + ("st" if base.endswith("e") else "est")
    if base.endswith("y") and len(base) > 3:
        er, est = base[:-1] + "ier", base[:-1] + "iest"
    if base.endswith("y"):
        ly = base[:-1] + "ily"
    elif base.endswith("ll"):
        ly = base + "y"
    elif base.endswith("le") and base[-3] not in "aeiou":
        ly = base[:-1] + "y"
    else:
        ly = base + "ly"
    return {
        "base": base,
        "er": ER_OVERRIDE.get(base, er),
        "est": EST_OVERRIDE.get(base, est),
        "ly": LY_OVERRIDE.get(base, ly),
    }


def verb_forms(base: str) -> dict[str, str]:
    if base.endswith("e"):
        s, ed, ing = base + "s", base + "d", base[:-1] + "ing"
    elif base.endswith("y") and base[-2] not in "aeiou":
        s, ed, ing = base[:-1] + "ies", base[:-1] + "ied", base + "ing"
    elif base.endswith(("ch", "sh", "ss", "x")):
        s, ed, ing = base + "es", base + "ed", base + "ing"
    else:
        s, ed, ing = base + "s", base + "ed", base + "ing"
    return {"base": base, "s": s, "ed": ed, "ing": ing}


def plural(noun: str) -> str:
    if noun.endswith("y") and noun[-2] not in "aeiou":
        return noun[:-1] + "ies"
    if noun.endswith(("ch", "sh", "ss", "x", "s")):
        return noun + "es"
    return noun + "s"


def main() -> None:
    entries: dict[str, str] = {}

    def put(a: str | None, b: str | None) -> None:
        if a and b and a != b:
            entries.setdefault(a, b)

    for x, y in ADJ_REGULAR:
        fx, fy = adj_forms(x), adj_forms(y)
        for form in ("base", "er", "est", "ly"):
            put(fx[form], fy[form])
            put(fy[form], fx[form])
    for x, y in ADJ_LY:
        fx, fy = adj_forms(x), adj_forms(y)
        for form in ("base", "ly"):
            put(fx[form], fy[form])
            put(fy[form], fx[form])
    for x, y in ADJ_EXPLICIT:
        put(x, y)
    for x, y in VERB_REGULAR:
        fx, fy = verb_forms(x), verb_forms(y)
        for form in ("base", "s", "ed", "ing"):
            put(fx[form], fy[form])
            put(fy[form], fx[form])
    for x, y in VERB_EXPLICIT:
        put(x, y)
    for x, y in NOUN_PAIRS:
        put(x, y)
        put(y, x)
        put(plural(x), plural(y))
        put(plural(y), plural(x))

    out = DATA / "antonyms.tsv"
    out.write_text(
        "".join(f"{a}\t{b}\n" for a, b in sorted(entries.items())), encoding="utf-8"
    )
    print(f"wrote {len(entries)} entries to {out.name}")

    uncovered = []
    for ex in load_squad(str(DATA / "squad_small.json")):
        toks = [t.lower() for t in ex.question.tokens]
        if not any(t in entries for t in toks):
            uncovered.append(ex.id)
    print("questions without a mutable token:", uncovered or "none")


if __name__ == "__main__":
    main()
