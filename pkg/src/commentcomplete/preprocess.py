"""Filtering and normalization of the raw method corpus.

The pipeline order is fixed: token budget, non-ASCII and short comments,
SATD markers, commented-out code, normalization, orphan removal, merging of
adjacent line comments, de-duplication. Every removal is tallied in a
:class:`FilterReport`.
"""

import re
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Callable, List, Optional, Tuple

from .corpus import MethodInstance, merge_adjacent_inline_comments, strip_comments
from .tokens import LINK, NUM, REF, count_words, tokenize

JAVADOC = "javadoc"
INNER = "inner"


@dataclass
class PreprocessConfig:
    token_budget: int = 256
    min_comment_words: int = 3
    token_budget_filter: bool = True
    ascii_filter: bool = True
    length_filter: bool = True
    satd_filter: bool = True
    commented_code_filter: bool = True
    normalize: bool = True
    orphan_filter: bool = True
    merge_inline: bool = True
    dedupe: bool = True


@dataclass
class FilterReport:
    input: int = 0
    removed_token_budget: int = 0
    removed_non_ascii: int = 0
    removed_short_comment: int = 0
    removed_satd: int = 0
    removed_commented_code: int = 0
    removed_uncommented: int = 0
    removed_duplicate: int = 0
    output: int = 0
    # comment-level tallies; not part of the reconciliation identity
    short_comments: int = 0
    satd_comments: int = 0
    code_comments: int = 0
    removed_orphan: int = 0
    merged_inline: int = 0

    INSTANCE_REMOVALS = (
        "removed_token_budget",
        "removed_non_ascii",
        "removed_short_comment",
        "removed_satd",
        "removed_commented_code",
        "removed_uncommented",
        "removed_duplicate",
    )

    def reconciles(self) -> bool:
        removed = sum(getattr(self, name) for name in self.INSTANCE_REMOVALS)
        counters_ok = all(getattr(self, f.name) >= 0 for f in fields(self))
        return counters_ok and self.input == self.output + removed

    def to_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# individual filters

def token_count(instance: MethodInstance) -> int:
    """Tokens of the method code (comments excised) plus tokens of every comment."""
    n = len(tokenize(strip_comments(instance.method_code)))
    return n + sum(len(tokenize(c)) for c in instance.comments())


def token_budget_filter(instance: MethodInstance, limit: int = 256) -> bool:
    """True when the instance is kept."""
    return token_count(instance) < limit


def is_ascii(instance: MethodInstance) -> bool:
    parts = [instance.method_code, *instance.comments()]
    return all(p.isascii() for p in parts)


def is_short(comment: str, min_words: int = 3) -> bool:
    return count_words(tokenize(comment)) < min_words


def ascii_and_length_filter(instance: MethodInstance, min_words: int = 3) -> Optional[MethodInstance]:
    """None when dropped; otherwise the instance without its short comments."""
    if not is_ascii(instance):
        return None
    pruned, _ = _prune(instance, lambda text, kind: is_short(text, min_words))
    return pruned if pruned.comments() else None


_SATD_MARKERS = {"TODO", "TOFIX", "FIXME"}


def is_satd(comment: str) -> bool:
    """True when the first word of the comment is a TODO/TOFIX/FIXME marker."""
    for tok in tokenize(comment):
        if tok[0].isalnum():
            return tok.upper() in _SATD_MARKERS
    return False


_CODE_KEYWORDS = (
    "if|for|while|switch|return|int|long|double|float|boolean|char|byte|short|void|"
    "new|try|catch|else|throw|final|static|public|private|protected|import|package|"
    "this|super|break|continue|do|case|String|var|assert"
)
_KEYWORD_START = re.compile(rf"(?:{_CODE_KEYWORDS})\b(?P<rest>.*)\Z", re.S)
_CODE_AFTER_KEYWORD = re.compile(r"\s*[(\[{;=.<]|\s+[A-Za-z_]\w*\s*(?:=|;|\[|,|\))")
_ASSIGNMENT = re.compile(r"\S=\S")
_CALL = re.compile(r"[\w.]+\([^()]*\)\Z")


def is_commented_code(comment: str) -> bool:
    """Heuristic check for a commented-out Java statement."""
    s = comment.strip()
    if not s:
        return False
    if s[-1] in ";{}":
        return True
    m = _KEYWORD_START.match(s)
    if m and _CODE_AFTER_KEYWORD.match(m.group("rest")):
        return True
    if _ASSIGNMENT.search(s) and s.endswith(";"):
        return True
    return bool(_CALL.match(s)) and "." in s


_LINK_TAG = re.compile(r"\{@link(?:plain)?\s+[^}]*\}")
_CODE_TAG = re.compile(r"\{@(?:code|literal)\s+([^}]*)\}")
_HTML_TAG = re.compile(r"</?[A-Za-z][A-Za-z0-9]*(?:\s[^<>]*)?/?>|<!--.*?-->", re.S)
_URL = re.compile(r"\b(?:(?:https?|ftp)://|www\.)[^\s<>\"']+", re.I)
_URL_TRAIL = ".,;:!?)]}'\""
_MONTH = (
    r"(?:jan(?:uary)?|feb(?:ruary)?|mar(?:ch)?|apr(?:il)?|may|june?|july?|aug(?:ust)?|"
    r"sep(?:t(?:ember)?)?|oct(?:ober)?|nov(?:ember)?|dec(?:ember)?)\.?"
)
_DATES = [
    re.compile(r"\b\d{4}-\d{1,2}-\d{1,2}\b"),
    re.compile(r"\b\d{4}/\d{1,2}/\d{1,2}\b"),
    re.compile(r"\b\d{1,2}/\d{1,2}/\d{2,4}\b"),
    re.compile(rf"\b{_MONTH}\s+\d{{1,2}}(?:st|nd|rd|th)?,?\s+\d{{4}}\b", re.I),
    re.compile(rf"\b\d{{1,2}}(?:st|nd|rd|th)?\s+{_MONTH}\s+\d{{4}}\b", re.I),
]


def _replace_url(m: "re.Match[str]") -> str:
    url = m.group(0)
    core = url.rstrip(_URL_TRAIL)
    return f"{LINK}{url[len(core):]}" if core else url


def normalize_comment(comment: str, kind: str = INNER) -> str:
    text = comment
    if kind == JAVADOC:
        text = _LINK_TAG.sub(f" {REF} ", text)
        text = _CODE_TAG.sub(r"\1", text)
        text = _HTML_TAG.sub(" ", text)
    text = _URL.sub(_replace_url, text)
    for pattern in _DATES:
        text = pattern.sub(NUM, text)
    return " ".join(text.split())


def orphan_filter(instance: MethodInstance) -> MethodInstance:
    """Drop inner comments with a blank line directly above and directly below."""
    lines = instance.lines

    def blank(lineno: int) -> bool:
        return 1 <= lineno <= len(lines) and not lines[lineno - 1].strip()

    kept = [c for c in instance.inner_comments if not (blank(c.start_line - 1) and blank(c.end_line + 1))]
    return replace(instance, inner_comments=kept)


def _dedupe_key(instance: MethodInstance) -> Tuple:
    return (
        " ".join(instance.method_code.split()),
        instance.javadoc,
        tuple(c.text for c in instance.inner_comments),
    )


def dedupe(corpus: List[MethodInstance]) -> List[MethodInstance]:
    seen = set()
    out = []
    for inst in corpus:
        key = _dedupe_key(inst)
        if key not in seen:
            seen.add(key)
            out.append(inst)
    return out


# ---------------------------------------------------------------------------
# pipeline

def _prune(instance: MethodInstance, drop: Callable[[str, str], bool]) -> Tuple[MethodInstance, int]:
    removed = 0
    javadoc = instance.javadoc
    if javadoc is not None and drop(javadoc, JAVADOC):
        javadoc = None
        removed += 1
    inner = []
    for c in instance.inner_comments:
        if drop(c.text, INNER):
            removed += 1
        else:
            inner.append(c)
    return replace(instance, javadoc=javadoc, inner_comments=inner), removed


def _normalize_instance(instance: MethodInstance) -> MethodInstance:
    javadoc = None if instance.javadoc is None else normalize_comment(instance.javadoc, JAVADOC)
    inner = [replace(c, text=normalize_comment(c.text, INNER)) for c in instance.inner_comments]
    return replace(instance, javadoc=javadoc, inner_comments=inner)


def _comment_filters(config: PreprocessConfig):
    """(report instance counter, report comment counter, predicate) triples in pipeline order."""
    out = []
    if config.length_filter:
        out.append(("removed_short_comment", "short_comments",
                    lambda text, kind: is_short(text, config.min_comment_words)))
    if config.satd_filter:
        out.append(("removed_satd", "satd_comments", lambda text, kind: is_satd(text)))
    if config.commented_code_filter:
        out.append(("removed_commented_code", "code_comments",
                    lambda text, kind: kind == INNER and is_commented_code(text)))
    return out


def _apply_comment_filters(inst, filters, report) -> Optional[MethodInstance]:
    for counter, comment_counter, pred in filters:
        inst, n = _prune(inst, pred)
        setattr(report, comment_counter, getattr(report, comment_counter) + n)
        if not inst.comments():
            setattr(report, counter, getattr(report, counter) + 1)
            return None
    return inst


def run_pipeline(
    corpus: List[MethodInstance], config: Optional[PreprocessConfig] = None
) -> Tuple[List[MethodInstance], FilterReport]:
    config = config or PreprocessConfig()
    report = FilterReport(input=len(corpus))
    filters = _comment_filters(config)
    kept = []
    for inst in corpus:
        if config.token_budget_filter and not token_budget_filter(inst, config.token_budget):
            report.removed_token_budget += 1
            continue
        if config.ascii_filter and not is_ascii(inst):
            report.removed_non_ascii += 1
            continue
        if not inst.comments():
            report.removed_uncommented += 1
            continue
        inst = _apply_comment_filters(inst, filters, report)
        if inst is None:
            continue
        if config.normalize:
            inst = _normalize_instance(inst)
            # normalization can shrink or unmask a comment; re-check the same predicates
            inst = _apply_comment_filters(inst, filters, report)
            if inst is None:
                continue
        if config.orphan_filter:
            before = len(inst.inner_comments)
            inst = orphan_filter(inst)
            report.removed_orphan += before - len(inst.inner_comments)
        if config.merge_inline:
            before = len(inst.inner_comments)
            merged = merge_adjacent_inline_comments(inst.inner_comments, inst.method_code)
            inst = replace(inst, inner_comments=merged)
            report.merged_inline += before - len(merged)
            if config.orphan_filter:
                # a merged run bounded by blank lines is itself an orphan
                before = len(inst.inner_comments)
                inst = orphan_filter(inst)
                report.removed_orphan += before - len(inst.inner_comments)
        if not inst.comments():
            report.removed_uncommented += 1
            continue
        kept.append(inst)
    if config.dedupe:
        out = dedupe(kept)
        report.removed_duplicate = len(kept) - len(out)
    else:
        out = kept
    report.output = len(out)
    return out, report
