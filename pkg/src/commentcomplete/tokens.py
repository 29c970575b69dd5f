"""Word/punctuation tokenizer shared by every stage of the pipeline."""

import re
from typing import Iterable, List, NamedTuple

SEP = "<sep>"
LINK = "_LINK_"
NUM = "_NUM_"
REF = "_REF_"
START = "<s>"
MASK_PREFIX = "<mask_"

SENTINELS = frozenset({SEP, LINK, NUM, REF, START})

TOKENIZER_VERSION = "wordpunct-1"
TOKENIZER_RULE = (
    "sentinels kept whole; runs of letters/digits are words; "
    "every other non-space character is one punctuation token"
)

_TOKEN_RE = re.compile(
    r"<sep>|<s>|<mask_\d+>|_LINK_|_NUM_|_REF_|[^\W_]+|\S",
)
_MASK_RE = re.compile(r"<mask_\d+>\Z")


class Token(NamedTuple):
    text: str
    kind: str  # word | punctuation | sentinel


def mask_token(i: int) -> str:
    return f"{MASK_PREFIX}{i}>"


def is_sentinel(text: str) -> bool:
    return text in SENTINELS or bool(_MASK_RE.match(text))


def token_kind(text: str) -> str:
    if is_sentinel(text):
        return "sentinel"
    if text[0].isalnum():
        return "word"
    return "punctuation"


def tokenize(text: str) -> List[str]:
    """Split ``text`` into token strings; whitespace-only input yields ``[]``."""
    return _TOKEN_RE.findall(text)


def tokenize_comment(text: str) -> List[Token]:
    return [Token(t, token_kind(t)) for t in tokenize(text)]


def count_words(tokens: Iterable[str]) -> int:
    return sum(1 for t in tokens if token_kind(t) == "word")


def detokenize(tokens: Iterable[str]) -> str:
    return " ".join(tokens)
