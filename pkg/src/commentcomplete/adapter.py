"""Exchange files for externally produced predictions.

Export: one record per task, ``{"task_id", "input", "expected_length"}``, where
``input`` is ``context <sep> preceding prefix <sep>`` with the target left out.
Import: one record per line, ``{"task_id", "tokens", "confidence", "model"}``,
with ``tokens`` already split by this package's word/punctuation tokenizer.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .datasetgen import CompletionTask
from .fileio import PathLike, SchemaError, iter_jsonl_numbered, write_jsonl, write_meta
from .ngram import NO_PREDICTION, OK, Prediction
from .tokens import SEP, TOKENIZER_RULE, TOKENIZER_VERSION

logger = logging.getLogger(__name__)


class PairingError(SchemaError):
    """Predictions that cannot be paired with tasks unambiguously."""


def task_input(task: CompletionTask) -> str:
    return " ".join([*task.context, SEP, *task.preceding, *task.prefix, SEP])


def export_records(tasks: Sequence[CompletionTask]) -> List[Dict[str, Any]]:
    return [
        {"task_id": t.id, "input": task_input(t), "expected_length": len(t.target)}
        for t in sorted(tasks, key=lambda t: t.id)
    ]


def export_tasks(tasks: Sequence[CompletionTask], dest: PathLike, meta: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Write the export stream and its manifest (``<dest>.meta.json``)."""
    n = write_jsonl(export_records(tasks), dest)
    manifest = {
        "count": n,
        "tokenizer": TOKENIZER_VERSION,
        "tokenizer_rule": TOKENIZER_RULE,
        "record_fields": ["task_id", "input", "expected_length"],
        "prediction_fields": ["task_id", "tokens", "confidence", "model"],
    }
    manifest.update(meta or {})
    write_meta(dest, manifest)
    return manifest


@dataclass
class ImportStats:
    records: int = 0
    skipped: int = 0
    clamped: int = 0
    missing: int = 0
    reasons: Dict[str, int] = field(default_factory=dict)

    def skip(self, reason: str) -> None:
        self.skipped += 1
        self.reasons[reason] = self.reasons.get(reason, 0) + 1

    def to_dict(self) -> Dict[str, Any]:
        return {"records": self.records, "skipped": self.skipped, "clamped": self.clamped,
                "missing": self.missing, "reasons": dict(sorted(self.reasons.items()))}


def _parse(rec: Any, stats: ImportStats) -> Optional[Prediction]:
    if not isinstance(rec, dict):
        stats.skip("not-an-object")
        return None
    tid, tokens, conf = rec.get("task_id"), rec.get("tokens"), rec.get("confidence")
    if not isinstance(tid, str) or not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
        stats.skip("bad-fields")
        return None
    if isinstance(conf, bool) or not isinstance(conf, (int, float)) or not math.isfinite(conf):
        stats.skip("bad-confidence")
        return None
    if conf < 0.0 or conf > 1.0:
        stats.clamped += 1
        conf = min(1.0, max(0.0, float(conf)))
    model = str(rec.get("model", ""))
    if not tokens or rec.get("status") == NO_PREDICTION:
        return Prediction.none(tid, model)
    return Prediction(tid, list(tokens), float(conf), model, OK)


def import_records(records: Iterable[Any], tasks: Sequence[CompletionTask], model: str = "") -> Tuple[List[Prediction], ImportStats]:
    """Pair raw prediction records with ``tasks``; the result has exactly one prediction per task."""
    stats = ImportStats()
    known = {t.id for t in tasks}
    got: Dict[str, Prediction] = {}
    for rec in records:
        stats.records += 1
        pred = _parse(rec, stats)
        if pred is None:
            continue
        if pred.task_id not in known:
            raise PairingError(f"prediction for unknown task {pred.task_id!r}")
        if pred.task_id in got:
            raise PairingError(f"duplicate prediction for task {pred.task_id!r}")
        got[pred.task_id] = pred
    label = model or next((p.model for p in got.values() if p.model), "external")
    out = []
    for t in tasks:
        pred = got.get(t.id)
        if pred is None:
            stats.missing += 1
            pred = Prediction.none(t.id)
        pred.model = label
        out.append(pred)
    if stats.clamped:
        logger.warning("clamped %d confidence values into [0, 1]", stats.clamped)
    return out, stats


_MALFORMED = object()


def _lenient_lines(path: PathLike) -> Iterator[Any]:
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            try:
                yield json.loads(line)
            except json.JSONDecodeError:
                yield _MALFORMED


def import_predictions(source: PathLike, tasks: Sequence[CompletionTask], model: str = ""):
    """Read a prediction file; lines that are not JSON objects are counted as skipped."""
    return import_records(_lenient_lines(source), tasks, model)


def write_predictions(preds: Iterable[Prediction], path: PathLike, meta: Optional[Dict[str, Any]] = None) -> int:
    n = write_jsonl((p.to_dict() for p in preds), path)
    if meta is not None:
        write_meta(path, meta)
    return n


def read_predictions(path: PathLike) -> List[Prediction]:
    out = []
    for lineno, rec in iter_jsonl_numbered(path):
        if not isinstance(rec, dict):
            raise SchemaError(f"{path}:{lineno}: prediction record is not an object")
        try:
            out.append(Prediction.from_dict(rec))
        except SchemaError as exc:
            raise SchemaError(f"{path}:{lineno}: {exc}") from exc
    return out
