"""Count-based n-gram completion model with greedy chained decoding.

There is no smoothing or backoff: an unseen history yields no prediction,
and a multi-token completion aborts as soon as one step has no prediction.
Count ties are broken by the lexicographically smallest token.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from . import _kernels
from .fileio import PathLike, SchemaError, fingerprint
from .tokens import START

MODEL_FORMAT = "commentcomplete-ngram"
MODEL_VERSION = 1

OK = "ok"
NO_PREDICTION = "no-prediction"

History = Tuple[str, ...]


class NgramError(Exception):
    pass


@dataclass
class Prediction:
    task_id: str
    tokens: List[str] = field(default_factory=list)
    confidence: float = 0.0
    model: str = ""
    status: str = OK

    @classmethod
    def none(cls, task_id: str, model: str = "") -> "Prediction":
        return cls(task_id, [], 0.0, model, NO_PREDICTION)

    def to_dict(self) -> Dict:
        return {
            "task_id": self.task_id,
            "tokens": self.tokens,
            "confidence": self.confidence,
            "model": self.model,
            "status": self.status,
        }

    @classmethod
    def from_dict(cls, d: Dict) -> "Prediction":
        try:
            p = cls(str(d["task_id"]), [str(t) for t in d["tokens"]], float(d["confidence"]),
                    str(d.get("model", "")), str(d.get("status", OK)))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"invalid prediction record: {exc}") from exc
        if p.status not in (OK, NO_PREDICTION):
            raise SchemaError(f"invalid prediction status {p.status!r}")
        return p


def _best_of(dist: Dict[str, int]) -> Tuple[str, int]:
    top = max(dist.values())
    return min(t for t, c in dist.items() if c == top), top


class NgramModel:
    def __init__(self, order: int, counts: Dict[History, Dict[str, int]],
                 training_fingerprint: str = "", token_count: int = 0,
                 best: Optional[Dict[History, Tuple[str, int, int]]] = None):
        if order < 2:
            raise NgramError("order must be at least 2")
        self.order = order
        self.counts = counts
        self.training_fingerprint = training_fingerprint
        self.token_count = token_count
        if best is None:
            best = {}
            for h, dist in counts.items():
                tok, c = _best_of(dist)
                best[h] = (tok, c, sum(dist.values()))
        self._best = best

    @property
    def vocabulary(self) -> List[str]:
        vocab = set()
        for h, dist in self.counts.items():
            vocab.update(h)
            vocab.update(dist)
        return sorted(vocab)

    @property
    def history_count(self) -> int:
        return len(self.counts)

    # -- training -----------------------------------------------------------

    @classmethod
    def train(cls, sequences: Iterable[Sequence[str]], order: int, backend: Optional[str] = None) -> "NgramModel":
        """Count every n-gram of every sequence, each left-padded with ``order - 1`` start sentinels."""
        if order < 2:
            raise NgramError("order must be at least 2")
        seqs = [list(s) for s in sequences]
        n_tokens = sum(len(s) for s in seqs)
        if n_tokens == 0:
            raise NgramError("cannot train on an empty corpus")
        vocab = sorted({t for s in seqs for t in s} | {START})
        index = {t: i for i, t in enumerate(vocab)}
        pad = [index[START]] * (order - 1)
        blocks = []
        for s in seqs:
            if s:
                ids = np.asarray(pad + [index[t] for t in s], dtype=np.int64)
                blocks.append(sliding_window_view(ids, order))
        rows = np.concatenate(blocks)
        uniq, counts = _kernels.count_rows(rows, backend)
        gstarts, totals, best_ids, maxima = _kernels.group_best(uniq, counts, backend)
        ends = np.append(gstarts[1:], len(uniq))
        table: Dict[History, Dict[str, int]] = {}
        best: Dict[History, Tuple[str, int, int]] = {}
        for g in range(len(gstarts)):
            lo, hi = int(gstarts[g]), int(ends[g])
            h = tuple(vocab[i] for i in uniq[lo, :-1])
            table[h] = {vocab[int(uniq[r, -1])]: int(counts[r]) for r in range(lo, hi)}
            best[h] = (vocab[int(best_ids[g])], int(maxima[g]), int(totals[g]))
        return cls(order, table, fingerprint(seqs), n_tokens, best)

    # -- queries ------------------------------------------------------------

    def history_key(self, history: Sequence[str]) -> History:
        width = self.order - 1
        padded = [START] * width + list(history)
        return tuple(padded[len(padded) - width:])

    def predict_next(self, history: Sequence[str]) -> Optional[Tuple[str, float]]:
        """Most frequent next token and its relative frequency, or None for an unseen history."""
        hit = self._best.get(self.history_key(history))
        if hit is None:
            return None
        tok, c, total = hit
        return tok, c / total

    def complete(self, prefix: Sequence[str], k: int) -> Tuple[List[str], List[float]]:
        """Greedy chain of up to ``k`` tokens, stopping early at an unseen history."""
        history = list(prefix)
        tokens, probs = [], []
        for _ in range(k):
            step = self.predict_next(history)
            if step is None:
                break
            tokens.append(step[0])
            probs.append(step[1])
            history.append(step[0])
        return tokens, probs

    def predict_sequence(self, prefix: Sequence[str], k: int, task_id: str = "", model: str = "") -> Prediction:
        if k < 1:
            raise ValueError("k must be at least 1")
        tokens, probs = self.complete(prefix, k)
        if len(tokens) < k:
            return Prediction.none(task_id, model)
        return Prediction(task_id, tokens, geometric_mean(probs), model, OK)

    # -- persistence --------------------------------------------------------

    def header(self) -> Dict:
        return {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "order": self.order,
            "vocab_size": len(self.vocabulary),
            "history_count": self.history_count,
            "training_fingerprint": self.training_fingerprint,
            "token_count": self.token_count,
        }

    def save(self, path: PathLike) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(self.header(), sort_keys=True, ensure_ascii=False))
            fh.write("\n")
            for h in sorted(self.counts):
                dist = self.counts[h]
                row = [list(h), [[t, dist[t]] for t in sorted(dist)]]
                fh.write(json.dumps(row, ensure_ascii=False, separators=(",", ":")))
                fh.write("\n")

    @classmethod
    def load(cls, path: PathLike) -> "NgramModel":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                header = json.loads(fh.readline())
            except json.JSONDecodeError as exc:
                raise SchemaError(f"{path}: not a model file") from exc
            if not isinstance(header, dict) or header.get("format") != MODEL_FORMAT:
                raise SchemaError(f"{path}: not a model file")
            if header.get("version") != MODEL_VERSION:
                raise SchemaError(f"{path}: unsupported model version {header.get('version')}")
            counts: Dict[History, Dict[str, int]] = {}
            for lineno, line in enumerate(fh, 2):
                try:
                    h, dist = json.loads(line)
                    counts[tuple(h)] = {str(t): int(c) for t, c in dist}
                except (ValueError, TypeError) as exc:
                    raise SchemaError(f"{path}:{lineno}: malformed model row") from exc
        if len(counts) != header["history_count"]:
            raise SchemaError(f"{path}: history count mismatch")
        return cls(int(header["order"]), counts, header.get("training_fingerprint", ""),
                   int(header.get("token_count", 0)))


def geometric_mean(probs: Sequence[float]) -> float:
    if not probs:
        return 0.0
    if any(p <= 0.0 for p in probs):
        return 0.0
    return min(1.0, math.exp(math.fsum(math.log(p) for p in probs) / len(probs)))


def predict_tasks(model: NgramModel, tasks, k: Optional[int] = None, label: str = "") -> List[Prediction]:
    """One prediction per task from its comment history; length is the target length, capped by ``k``."""
    label = label or f"{model.order}-gram"
    out = []
    for t in tasks:
        length = len(t.target) if k is None else min(k, len(t.target))
        out.append(model.predict_sequence(t.history, length, t.id, label))
    return out


@dataclass
class SweepResult:
    rows: List[Dict]
    best_order: int


def sweep_orders(train_sequences: Sequence[Sequence[str]], eval_tasks, orders: Sequence[int] = (3, 5, 7),
                 backend: Optional[str] = None) -> SweepResult:
    """Train one model per order and rank them by full-target perfect predictions on ``eval_tasks``.

    Ties go to the smallest order.
    """
    rows = []
    for order in sorted(orders):
        model = NgramModel.train(train_sequences, order, backend)
        preds = predict_tasks(model, eval_tasks)
        row = {"order": order, "tasks": len(eval_tasks)}
        for kind in ("javadoc", "inner", "overall"):
            pairs = [(t, p) for t, p in zip(eval_tasks, preds) if kind == "overall" or t.task_kind == kind]
            hits = sum(p.status == OK and p.tokens == t.target for t, p in pairs)
            row[kind] = {"perfect": hits, "total": len(pairs), "rate": hits / len(pairs) if pairs else None}
        rows.append(row)
    best = max(rows, key=lambda r: (r["overall"]["perfect"], -r["order"]))["order"]
    return SweepResult(rows, best)
