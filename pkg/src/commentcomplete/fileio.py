import hashlib
import json
import os
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, Optional, Tuple, Union

PathLike = Union[str, os.PathLike]

META_SUFFIX = ".meta.json"


class SchemaError(Exception):
    """A structured input file violates its schema."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def write_json(obj: Any, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, ensure_ascii=False, sort_keys=True, indent=2)
        fh.write("\n")


def read_json(path: PathLike) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def write_jsonl(records: Iterable[Dict[str, Any]], path: PathLike) -> int:
    n = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(dumps(rec))
            fh.write("\n")
            n += 1
    return n


def iter_jsonl_numbered(path: PathLike) -> Iterator[Tuple[int, Any]]:
    """Yield ``(line number, record)``; a malformed line raises :class:`SchemaError` naming it."""
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"{path}:{lineno}: malformed JSON ({exc.msg})") from exc


def iter_jsonl(path: PathLike) -> Iterator[Any]:
    for _, rec in iter_jsonl_numbered(path):
        yield rec


def sha256_file(path: PathLike) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def fingerprint(obj: Any) -> str:
    return sha256_text(dumps(obj))[:16]


def meta_path(path: PathLike) -> Path:
    return Path(str(path) + META_SUFFIX)


def write_meta(path: PathLike, meta: Dict[str, Any]) -> None:
    write_json(meta, meta_path(path))


def read_meta(path: PathLike) -> Optional[Dict[str, Any]]:
    p = meta_path(path)
    return read_json(p) if p.is_file() else None
