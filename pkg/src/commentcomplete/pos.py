"""Lexicon and suffix part-of-speech tagger over the 12-tag universal set.

Built for comment prose: closed-class words come from small lexicons, verbs
from a stem list of common documentation verbs, the rest from suffix rules.
Code identifiers (camelCase, snake pieces, mixed digits) and sentinels are X.
"""

import re
from typing import List, Sequence

from .tokens import is_sentinel, token_kind

TAGS = ("NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP", "NUM", "CONJ", "PRT", "PUNCT", "X")

_DET = set("""
the a an this that these those each every all any some no another both either neither
such whatever which what
""".split())

_PRON = set("""
it its itself i me my we us our you your he him his she her they them their theirs
themselves who whom whose something anything nothing everything someone anyone
""".split())

_ADP = set("""
of in on at by for with from into onto over under about after before between through
during without within via per as than like upon across against along among around
behind below beneath beside beyond despite except inside outside near since towards
toward until unto if whether because while although though unless whereas
""".split())

# coordinators only; subordinators are ADP, as in the Penn-to-universal mapping
_CONJ = set("and or but nor yet plus".split())

_PRT = set("to 's up out off".split())

_ADV = set("""
also only just now here there very always never already again still ever too else
instead currently often soon later first last well even almost rather quite perhaps
maybe usually simply thus hence therefore however anyway eventually immediately
then otherwise once so not n't when where how why
""".split())

_NUM_WORDS = set("""
zero one two three four five six seven eight nine ten hundred thousand million
""".split())

_ADJ = set("""
new old empty null true false valid invalid current given default main same other
different next previous full available possible specified specific single multiple
unique final public private static internal external whole entire own many much few
more most less least good bad large small big long short high low open closed
""".split())

_MODALS_AUX = set("""
is are was were be been being am has have had having do does did done can could
should would will shall may might must
""".split())

_VERB_STEMS = set("""
return get set create check compute add remove delete update find load save read write
build parse convert make use call handle process initialize init start stop run execute
open close send receive validate verify apply register throw contain copy clear reset
put insert append count compare sort filter map reduce store fetch generate format print
log render draw move merge split wrap unwrap encode decode resolve determine calculate
test ensure allow provide define specify indicate represent hold keep give take need
try fail skip ignore include exclude replace retrieve obtain invoke notify fire trigger
wait sleep lock release bind connect disconnect configure install enable disable show
hide display select evaluate match look iterate loop assign declare implement override
extend accept reject cache clone flush close scan emit walk visit mark track measure
""".split())

_IRREGULAR_VERBS = set("""
went gone made built found got gotten kept held given taken thrown sent read written
run begun done seen known shown said told left lost met paid put set sold stood
""".split())

# -ing words that are nouns in code prose
_ING_NOUNS = set("""
string strings thing things nothing something everything anything padding encoding mapping
mappings binding bindings setting settings warning warnings ceiling spring
""".split())

_ADJ_SUFFIXES = ("able", "ible", "ous", "ful", "ive", "less", "ical", "ish", "ary", "ic", "al")
_NOUN_SUFFIXES = ("tion", "sion", "ment", "ness", "ity", "ance", "ence", "ism", "ship", "age", "er", "or")

_CAMEL = re.compile(r"[a-z][A-Z]|[A-Z]{2,}[a-z]")
_MIXED_DIGIT = re.compile(r"[A-Za-z]\d|\d[A-Za-z]")


def _verb_form(w: str) -> bool:
    if w in _VERB_STEMS or w in _IRREGULAR_VERBS or w in _MODALS_AUX:
        return True
    for suffix, repl in (("ies", "y"), ("es", ""), ("s", ""), ("ed", ""), ("ed", "e"), ("ing", ""), ("ing", "e")):
        if w.endswith(suffix) and w[: len(w) - len(suffix)] + repl in _VERB_STEMS:
            return True
    # doubled consonant: stopped, setting
    for suffix in ("ed", "ing"):
        stem = w[: len(w) - len(suffix)]
        if w.endswith(suffix) and len(stem) > 2 and stem[-1] == stem[-2] and stem[:-1] in _VERB_STEMS:
            return True
    return False


def tag_token(token: str) -> str:
    if is_sentinel(token):
        return "X"
    kind = token_kind(token)
    if kind == "punctuation":
        return "PUNCT"
    if token.isdigit():
        return "NUM"
    if _CAMEL.search(token) or _MIXED_DIGIT.search(token):
        return "X"
    w = token.lower()
    if w in _DET:
        return "DET"
    if w in _PRON:
        return "PRON"
    if w in _PRT:
        return "PRT"
    if w in _ADP:
        return "ADP"
    if w in _CONJ:
        return "CONJ"
    if w in _NUM_WORDS:
        return "NUM"
    if w in _ADV:
        return "ADV"
    if w in _ADJ:
        return "ADJ"
    if w in _ING_NOUNS:
        return "NOUN"
    if _verb_form(w):
        return "VERB"
    if w.endswith("ly") and len(w) > 4:
        return "ADV"
    if w.endswith("ing") or (w.endswith("ed") and len(w) > 4):
        return "VERB"
    if w.endswith(_NOUN_SUFFIXES):
        return "NOUN"
    if w.endswith(_ADJ_SUFFIXES) and len(w) > 5:
        return "ADJ"
    return "NOUN"


def _nominal_stem(w: str) -> bool:
    w = w.lower()
    if w in _MODALS_AUX or w.endswith(("ed", "ing")):
        return False
    return w in _VERB_STEMS or (w.endswith("s") and w[:-1] in _VERB_STEMS)


def pos_tag(tokens: Sequence[str]) -> List[str]:
    tags = [tag_token(t) for t in tokens]
    for i in range(1, len(tags)):
        # "the map", "a new count": a verb stem after a determiner or adjective is a noun
        if tags[i] == "VERB" and tags[i - 1] in ("DET", "ADJ") and _nominal_stem(tokens[i]):
            tags[i] = "NOUN"
    return tags


REPORTED = ("ADJ", "ADV", "DET", "PRON", "NOUN", "VERB")
OTHER = "OTH"


def report_category(tag: str) -> str:
    """Fold tags into the reported groups; ADP, NUM, CONJ, PRT, PUNCT and X become OTH."""
    return tag if tag in REPORTED else OTHER
