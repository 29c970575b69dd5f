"""Numeric inner loops: n-gram run counting, per-history argmax, word-level edit distance.

Each kernel exists twice: a numba ``@njit`` version and a pure-numpy
version. The numba path is used when numba imports and the environment
variable ``COMMENTCOMPLETE_NO_NUMBA`` is unset (or ``0``). Both paths return
identical integers; tests run them side by side.
"""

import os
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def _env_disabled() -> bool:
    return os.environ.get("COMMENTCOMPLETE_NO_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")


USE_NUMBA = HAVE_NUMBA and not _env_disabled()
BACKEND = "numba" if USE_NUMBA else "numpy"


def _pick(backend: Optional[str]) -> str:
    backend = backend or BACKEND
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return backend


# ---------------------------------------------------------------------------
# run-length counting of lexicographically sorted rows

def _run_starts_numpy(rows: np.ndarray) -> np.ndarray:
    if len(rows) == 0:
        return np.zeros(0, dtype=np.int64)
    change = np.any(rows[1:] != rows[:-1], axis=1)
    return np.flatnonzero(np.concatenate(([True], change))).astype(np.int64)


@njit(cache=True)
def _run_starts_numba(rows):
    n, w = rows.shape
    out = np.empty(n, dtype=np.int64)
    k = 0
    for i in range(n):
        if i == 0:
            out[k] = 0
            k += 1
            continue
        for c in range(w):
            if rows[i, c] != rows[i - 1, c]:
                out[k] = i
                k += 1
                break
    return out[:k]


def count_rows(rows: np.ndarray, backend: Optional[str] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Distinct rows in lexicographic order and their multiplicities."""
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    if len(rows) == 0:
        return rows.reshape(0, rows.shape[1] if rows.ndim == 2 else 0), np.zeros(0, dtype=np.int64)
    order = np.lexsort(rows.T[::-1])
    srt = np.ascontiguousarray(rows[order])
    if _pick(backend) == "numba":
        starts = _run_starts_numba(srt)
    else:
        starts = _run_starts_numpy(srt)
    counts = np.diff(np.append(starts, len(srt)))
    return srt[starts], counts.astype(np.int64)


# ---------------------------------------------------------------------------
# per-history totals and argmax (first maximum = smallest token id)

def _group_best_numpy(hist: np.ndarray, tok: np.ndarray, counts: np.ndarray):
    gstarts = _run_starts_numpy(hist)
    totals = np.add.reduceat(counts, gstarts)
    maxima = np.maximum.reduceat(counts, gstarts)
    sizes = np.diff(np.append(gstarts, len(counts)))
    hits = np.flatnonzero(counts == np.repeat(maxima, sizes))
    group_of_hit = np.searchsorted(gstarts, hits, side="right") - 1
    _, first = np.unique(group_of_hit, return_index=True)
    best = tok[hits[first]]
    return gstarts, totals.astype(np.int64), best.astype(np.int64), maxima.astype(np.int64)


@njit(cache=True)
def _group_best_numba(hist, tok, counts):
    n, w = hist.shape
    gstarts = np.empty(n, dtype=np.int64)
    totals = np.empty(n, dtype=np.int64)
    best = np.empty(n, dtype=np.int64)
    maxima = np.empty(n, dtype=np.int64)
    g = -1
    for i in range(n):
        new = i == 0
        if not new:
            for c in range(w):
                if hist[i, c] != hist[i - 1, c]:
                    new = True
                    break
        if new:
            g += 1
            gstarts[g] = i
            totals[g] = 0
            maxima[g] = -1
        totals[g] += counts[i]
        if counts[i] > maxima[g]:
            maxima[g] = counts[i]
            best[g] = tok[i]
    g += 1
    return gstarts[:g], totals[:g], best[:g], maxima[:g]


def group_best(unique_rows: np.ndarray, counts: np.ndarray, backend: Optional[str] = None):
    """For sorted distinct n-gram rows: history start index, total count, best next id, best count."""
    hist = np.ascontiguousarray(unique_rows[:, :-1])
    tok = np.ascontiguousarray(unique_rows[:, -1])
    counts = np.ascontiguousarray(counts, dtype=np.int64)
    if len(counts) == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty, empty
    if _pick(backend) == "numba":
        return _group_best_numba(hist, tok, counts)
    return _group_best_numpy(hist, tok, counts)


# ---------------------------------------------------------------------------
# word-level Levenshtein distance over integer-encoded tokens

def _levenshtein_numpy(a: np.ndarray, b: np.ndarray) -> int:
    m = len(b)
    if len(a) == 0 or m == 0:
        return int(max(len(a), m))
    idx = np.arange(m + 1, dtype=np.int64)
    prev = idx.copy()
    t = np.empty(m + 1, dtype=np.int64)
    for i in range(1, len(a) + 1):
        cost = (b != a[i - 1]).astype(np.int64)
        t[0] = i
        np.minimum(prev[1:] + 1, prev[:-1] + cost, out=t[1:])
        # insertions chain left to right: cur[j] = min_{k<=j} t[k] + (j - k)
        prev = np.minimum.accumulate(t - idx) + idx
    return int(prev[m])


@njit(cache=True)
def _levenshtein_numba(a, b):
    n, m = len(a), len(b)
    if n == 0 or m == 0:
        return max(n, m)
    prev = np.arange(m + 1)
    cur = np.empty(m + 1, dtype=prev.dtype)
    for i in range(1, n + 1):
        cur[0] = i
        ai = a[i - 1]
        for j in range(1, m + 1):
            sub = prev[j - 1] + (0 if ai == b[j - 1] else 1)
            ins = cur[j - 1] + 1
            dele = prev[j] + 1
            best = sub if sub < ins else ins
            cur[j] = best if best < dele else dele
        prev, cur = cur, prev
    return prev[m]


@njit(cache=True)
def _levenshtein_batch_numba(a_flat, a_off, b_flat, b_off):
    k = len(a_off) - 1
    out = np.empty(k, dtype=np.int64)
    for p in range(k):
        out[p] = _levenshtein_numba(a_flat[a_off[p]:a_off[p + 1]], b_flat[b_off[p]:b_off[p + 1]])
    return out


def encode_pairs(pairs: Sequence[Tuple[Sequence[str], Sequence[str]]]):
    """Map token strings to ids and pack both sides as (flat, offsets) arrays."""
    vocab: Dict[str, int] = {}
    packed: List[Tuple[np.ndarray, np.ndarray]] = []
    for side in (0, 1):
        flat: List[int] = []
        off = [0]
        for pair in pairs:
            for tok in pair[side]:
                flat.append(vocab.setdefault(tok, len(vocab)))
            off.append(len(flat))
        packed.append((np.asarray(flat, dtype=np.int64), np.asarray(off, dtype=np.int64)))
    return packed[0], packed[1]


def levenshtein_batch(pairs: Sequence[Tuple[Sequence[str], Sequence[str]]], backend: Optional[str] = None) -> np.ndarray:
    if not pairs:
        return np.zeros(0, dtype=np.int64)
    (af, ao), (bf, bo) = encode_pairs(pairs)
    if _pick(backend) == "numba":
        return _levenshtein_batch_numba(af, ao, bf, bo)
    return np.array(
        [_levenshtein_numpy(af[ao[p]:ao[p + 1]], bf[bo[p]:bo[p + 1]]) for p in range(len(pairs))],
        dtype=np.int64,
    )
