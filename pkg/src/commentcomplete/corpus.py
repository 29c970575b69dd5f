"""Corpus ingestion: Java methods with their Javadoc and inner comments.

Two inputs are supported: CodeSearchNet-style record streams (JSON lines with
a ``function``/``code`` field and an optional ``docstring``) and directories
of raw ``.java`` files. Both produce :class:`MethodInstance` values, which are
written to and read from the corpus file format (one JSON object per line).
"""

import gzip
import json
import logging
import os
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple, Union

logger = logging.getLogger(__name__)

LINE = "line"
BLOCK = "block"


class CorpusError(Exception):
    """Unreadable or invalid corpus input."""


class CommentParseError(CorpusError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class InnerComment:
    text: str
    start_line: int
    end_line: int
    style: str = LINE

    def to_dict(self) -> Dict[str, Any]:
        return {
            "text": self.text,
            "start_line": self.start_line,
            "end_line": self.end_line,
            "style": self.style,
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "InnerComment":
        return cls(str(d["text"]), int(d["start_line"]), int(d["end_line"]), str(d.get("style", LINE)))


@dataclass
class MethodInstance:
    id: str
    source: str
    method_code: str
    javadoc: Optional[str] = None
    inner_comments: List[InnerComment] = field(default_factory=list)
    language: str = "java"

    @property
    def lines(self) -> List[str]:
        return self.method_code.split("\n")

    def comments(self) -> List[str]:
        out = [self.javadoc] if self.javadoc is not None else []
        out.extend(c.text for c in self.inner_comments)
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "source": self.source,
            "method_code": self.method_code,
            "javadoc": self.javadoc,
            "inner_comments": [c.to_dict() for c in self.inner_comments],
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "MethodInstance":
        return cls(
            id=str(d["id"]),
            source=str(d.get("source", "")),
            method_code=str(d["method_code"]),
            javadoc=d.get("javadoc"),
            inner_comments=[InnerComment.from_dict(c) for c in d.get("inner_comments", [])],
        )


# ---------------------------------------------------------------------------
# character-level scanner


@dataclass(frozen=True)
class _Region:
    kind: str  # line | block | string | char | textblock
    start: int
    end: int  # exclusive


def _scan(text: str) -> List[_Region]:
    """Locate comment and literal regions with a small state machine."""
    regions = []
    i, n = 0, len(text)
    line = 1
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
        elif text.startswith("//", i):
            j = text.find("\n", i)
            j = n if j < 0 else j
            regions.append(_Region(LINE, i, j))
            i = j
        elif text.startswith("/*", i):
            j = text.find("*/", i + 2)
            if j < 0:
                raise CommentParseError("unterminated block comment", line)
            regions.append(_Region(BLOCK, i, j + 2))
            line += text.count("\n", i, j + 2)
            i = j + 2
        elif text.startswith('"""', i):
            j = i + 3
            while True:
                j = text.find('"""', j)
                if j < 0:
                    j = n
                    break
                if text[j - 1] != "\\":
                    j += 3
                    break
                j += 1
            regions.append(_Region("textblock", i, j))
            line += text.count("\n", i, j)
            i = j
        elif ch == '"' or ch == "'":
            j = i + 1
            while j < n and text[j] != ch and text[j] != "\n":
                j += 2 if text[j] == "\\" else 1
            j = min(j + 1, n) if j < n and text[j] == ch else j
            regions.append(_Region("string" if ch == '"' else "char", i, j))
            i = j
        else:
            i += 1
    return regions


def _clean_block(body: str) -> str:
    lines = []
    for raw in body.split("\n"):
        s = raw.strip()
        if s.startswith("*"):
            s = s.lstrip("*").strip()
        lines.append(s)
    while lines and not lines[0]:
        lines.pop(0)
    while lines and not lines[-1]:
        lines.pop()
    return "\n".join(lines)


def _comment_text(text: str, region: _Region) -> str:
    raw = text[region.start:region.end]
    if region.kind == LINE:
        return raw[2:].lstrip("/").strip()
    return _clean_block(raw[2:-2].lstrip("*"))


def _line_of(text: str, offset: int) -> int:
    return text.count("\n", 0, offset) + 1


def extract_inner_comments(method_code: str) -> List[InnerComment]:
    """Every ``//`` and ``/* */`` comment outside literals, with 1-based line spans."""
    out = []
    for r in _scan(method_code):
        if r.kind not in (LINE, BLOCK):
            continue
        start = _line_of(method_code, r.start)
        end = _line_of(method_code, max(r.start, r.end - 1))
        out.append(InnerComment(_comment_text(method_code, r), start, end, r.kind))
    return out


def strip_comments(method_code: str) -> str:
    """Code with comment regions blanked out (newlines kept)."""
    return _mask(method_code, _scan(method_code), kinds=(LINE, BLOCK))


def _mask(text: str, regions: Iterable[_Region], kinds: Tuple[str, ...]) -> str:
    chars = list(text)
    for r in regions:
        if r.kind in kinds:
            for k in range(r.start, r.end):
                if chars[k] != "\n":
                    chars[k] = " "
    return "".join(chars)


def _is_comment_only_line(line: str) -> bool:
    s = line.lstrip()
    return s.startswith("//")


def merge_adjacent_inline_comments(comments: List[InnerComment], method_code: str) -> List[InnerComment]:
    """Merge runs of full-line ``//`` comments on consecutive lines into one comment."""
    lines = method_code.split("\n")

    def mergeable(c: InnerComment) -> bool:
        return c.style == LINE and _is_comment_only_line(lines[c.start_line - 1])

    out: List[InnerComment] = []
    for c in comments:
        prev = out[-1] if out else None
        if (
            prev is not None
            and mergeable(prev)
            and mergeable(c)
            and c.start_line == prev.end_line + 1
        ):
            out[-1] = InnerComment(f"{prev.text} {c.text}", prev.start_line, c.end_line, LINE)
        else:
            out.append(c)
    return out


# ---------------------------------------------------------------------------
# method splitting for raw Java files

_CONTROL = {
    "if", "for", "while", "switch", "catch", "try", "synchronized", "else",
    "do", "return", "new", "finally",
}
_TYPE_DECL = re.compile(r"\b(class|interface|enum|record)\b")
_SIGNATURE = re.compile(r"\)\s*(throws\s+[\w.,\s<>]+)?\Z")
_ANNOTATION = re.compile(r"\s*@(?!interface\b)[\w.]+(\s*\([^()]*(\([^()]*\)[^()]*)*\))?")


def _skip_annotations(masked: str, pos: int) -> int:
    while True:
        m = _ANNOTATION.match(masked, pos)
        if not m or m.end() == pos:
            break
        pos = m.end()
    while pos < len(masked) and masked[pos].isspace():
        pos += 1
    return pos


def _looks_like_method(header: str) -> bool:
    if "(" not in header or not _SIGNATURE.search(header):
        return False
    if "=" in header or "->" in header or _TYPE_DECL.search(header):
        return False
    first = re.match(r"[A-Za-z_]\w*", header)
    return bool(first) and first.group(0) not in _CONTROL


def _dedent_from(text: str, start: int, end: int) -> str:
    line_start = text.rfind("\n", 0, start) + 1
    lead = text[line_start:start]
    indent = len(lead) if not lead.strip() else 0
    lines = text[start:end].split("\n")
    out = [lines[0].rstrip()]
    for ln in lines[1:]:
        k = 0
        while k < indent and k < len(ln) and ln[k] in " \t":
            k += 1
        out.append(ln[k:].rstrip())
    return "\n".join(out)


def split_java_methods(text: str) -> List[Tuple[str, Optional[str], int]]:
    """Find method bodies in a Java compilation unit.

    Returns ``(method_code, raw_javadoc, first_line)`` triples in file order.
    Nested declarations inside a method body stay part of that method.
    """
    regions = _scan(text)
    masked = _mask(text, regions, kinds=(LINE, BLOCK, "string", "char", "textblock"))
    javadocs = [r for r in regions if r.kind == BLOCK and text.startswith("/**", r.start)
                and not text.startswith("/**/", r.start)]
    out = []
    i, n = 0, len(masked)
    stmt_start = 0
    while i < n:
        ch = masked[i]
        if ch == "{":
            sig_start = _skip_annotations(masked, stmt_start)
            header = " ".join(masked[sig_start:i].split())
            if _looks_like_method(header):
                depth, j = 0, i
                while j < n:
                    if masked[j] == "{":
                        depth += 1
                    elif masked[j] == "}":
                        depth -= 1
                        if depth == 0:
                            break
                    j += 1
                end = min(j + 1, n)
                doc = None
                for r in javadocs:
                    if stmt_start <= r.start < sig_start:
                        doc = _clean_block(text[r.start + 3:r.end - 2])
                out.append((_dedent_from(text, sig_start, end), doc, _line_of(text, sig_start)))
                i = end
                stmt_start = end
                continue
            stmt_start = i + 1
        elif ch in ";}":
            stmt_start = i + 1
        i += 1
    return out


def _split_leading_javadoc(code: str) -> Tuple[str, Optional[str]]:
    """Detach a leading ``/** */`` block and annotations from a function string."""
    stripped = code.lstrip()
    doc = None
    if stripped.startswith("/**"):
        end = stripped.find("*/", 3)
        if end < 0:
            raise CommentParseError("unterminated block comment", 1)
        doc = _clean_block(stripped[3:end])
        stripped = stripped[end + 2:].lstrip()
    regions = _scan(stripped)
    masked = _mask(stripped, regions, kinds=(LINE, BLOCK, "string", "char", "textblock"))
    pos = _skip_annotations(masked, 0)
    return _dedent_from(stripped, pos, len(stripped)).strip("\n"), doc


# ---------------------------------------------------------------------------
# loading

@dataclass
class LoadStats:
    loaded: int = 0
    skipped: int = 0
    reasons: Counter = field(default_factory=Counter)

    def skip(self, reason: str) -> None:
        self.skipped += 1
        self.reasons[reason] += 1


_METHOD_FIELDS = ("function", "code", "method_code", "original_string")
_DOC_FIELDS = ("docstring", "javadoc")


def instance_from_record(record: Dict[str, Any], locator: str) -> MethodInstance:
    """Map one CodeSearchNet-style record to a MethodInstance.

    Raises ``KeyError`` when no usable method field is present and
    :class:`CommentParseError` on an unterminated block comment.
    """
    code = next((record[f] for f in _METHOD_FIELDS if isinstance(record.get(f), str) and record[f].strip()), None)
    if code is None:
        raise KeyError("method field missing or empty")
    code, leading_doc = _split_leading_javadoc(code)
    if not code:
        raise KeyError("method field missing or empty")
    doc = next((record[f] for f in _DOC_FIELDS if isinstance(record.get(f), str)), None)
    if doc is not None and not doc.strip():
        doc = None
    if doc is None:
        doc = leading_doc
    rid = record.get("id") or record.get("url") or locator
    source = record.get("source") or record.get("path") or locator
    return MethodInstance(
        id=str(rid),
        source=str(source),
        method_code=code,
        javadoc=doc,
        inner_comments=extract_inner_comments(code),
    )


def _open_text(path: Path):
    if path.suffix == ".gz":
        return gzip.open(path, "rt", encoding="utf-8")
    return open(path, "r", encoding="utf-8")


def iter_records(path: Path, stats: LoadStats) -> Iterator[Tuple[Dict[str, Any], str]]:
    with _open_text(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                stats.skip("malformed-json")
                continue
            if not isinstance(rec, dict):
                stats.skip("malformed-json")
                continue
            yield rec, f"{path.name}:{lineno}"


def _load_records(records: Iterable[Tuple[Dict[str, Any], str]], stats: LoadStats) -> List[MethodInstance]:
    out = []
    for rec, locator in records:
        try:
            inst = instance_from_record(rec, locator)
        except KeyError:
            stats.skip("missing-method")
            continue
        except CommentParseError:
            stats.skip("comment-parse-error")
            continue
        out.append(inst)
    return out


def _load_java_file(path: Path, rel: str, stats: LoadStats) -> List[MethodInstance]:
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError):
        stats.skip("unreadable-file")
        return []
    text = text.replace("\r\n", "\n")
    try:
        methods = split_java_methods(text)
    except CommentParseError:
        stats.skip("comment-parse-error")
        return []
    out = []
    for code, doc, first_line in methods:
        name = re.search(r"(\w+)\s*\(", code)
        mid = f"{rel}:{first_line}:{name.group(1) if name else 'method'}"
        try:
            inner = extract_inner_comments(code)
        except CommentParseError:
            stats.skip("comment-parse-error")
            continue
        out.append(MethodInstance(id=mid, source=rel, method_code=code, javadoc=doc, inner_comments=inner))
    return out


_RECORD_SUFFIXES = (".jsonl", ".jsonl.gz", ".json", ".json.gz")


def _is_record_file(path: Path) -> bool:
    return path.name.endswith(_RECORD_SUFFIXES)


def load_corpus(source: Union[str, os.PathLike, Iterable[Dict[str, Any]]]) -> Tuple[List[MethodInstance], LoadStats]:
    """Load MethodInstances from a directory, a Java file, a record file or an iterable of records.

    Malformed records are skipped and counted in the returned stats.
    """
    stats = LoadStats()
    if not isinstance(source, (str, os.PathLike)):
        records = ((rec, f"record:{i}") for i, rec in enumerate(source, 1))
        out = _load_records(records, stats)
    else:
        root = Path(source)
        if not root.exists():
            raise CorpusError(f"no such file or directory: {root}")
        if root.is_dir():
            files = sorted(p for p in root.rglob("*") if p.is_file())
        else:
            files = [root]
        out = []
        for path in files:
            rel = path.relative_to(root).as_posix() if root.is_dir() else path.name
            if path.suffix == ".java":
                out.extend(_load_java_file(path, rel, stats))
            elif _is_record_file(path):
                try:
                    out.extend(_load_records(iter_records(path, stats), stats))
                except (OSError, UnicodeDecodeError) as exc:
                    if not root.is_dir():
                        raise CorpusError(f"cannot read {path}: {exc}") from exc
                    stats.skip("unreadable-file")
            elif not root.is_dir():
                raise CorpusError(f"unsupported input file: {path}")
    out = _uniquify_ids(out)
    stats.loaded = len(out)
    logger.info("loaded %d methods, skipped %d", stats.loaded, stats.skipped)
    return out, stats


def _uniquify_ids(instances: List[MethodInstance]) -> List[MethodInstance]:
    seen: Counter = Counter()
    for inst in instances:
        seen[inst.id] += 1
        if seen[inst.id] > 1:
            inst.id = f"{inst.id}~{seen[inst.id] - 1}"
    return instances


# ---------------------------------------------------------------------------
# corpus file format

def write_corpus(instances: Iterable[MethodInstance], path: Union[str, os.PathLike]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for inst in instances:
            fh.write(json.dumps(inst.to_dict(), ensure_ascii=False, sort_keys=True))
            fh.write("\n")


def read_corpus(path: Union[str, os.PathLike]) -> List[MethodInstance]:
    path = Path(path)
    if not path.is_file():
        raise CorpusError(f"no such corpus file: {path}")
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                out.append(MethodInstance.from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise CorpusError(f"{path}:{lineno}: invalid corpus record ({exc})") from exc
    return out
