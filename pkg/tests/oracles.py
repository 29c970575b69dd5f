"""Reference implementations used only as test oracles."""

from collections import Counter, defaultdict
from functools import lru_cache
from typing import Dict, Sequence, Tuple

START = "<s>"


def brute_ngram_counts(sequences, order) -> Dict[Tuple[str, ...], Counter]:
    table: Dict[Tuple[str, ...], Counter] = defaultdict(Counter)
    for seq in sequences:
        padded = [START] * (order - 1) + list(seq)
        for i in range(order - 1, len(padded)):
            table[tuple(padded[i - order + 1:i])][padded[i]] += 1
    return table


def brute_predict_next(table, order, history):
    padded = [START] * (order - 1) + list(history)
    h = tuple(padded[len(padded) - (order - 1):])
    dist = table.get(h)
    if not dist:
        return None
    top = max(dist.values())
    tok = min(t for t, c in dist.items() if c == top)
    return tok, top / sum(dist.values())


def edit_distance(a: Sequence, b: Sequence) -> int:
    """Plain recursive definition, memoized."""
    a, b = tuple(a), tuple(b)

    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        return min(d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + (a[i - 1] != b[j - 1]))

    return d(len(a), len(b))
