"""Per-task evaluation metrics and paired model statistics."""

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from . import _kernels
from .ngram import OK, Prediction


def predicted_tokens(pred: Optional[Prediction]) -> List[str]:
    if pred is None or pred.status != OK:
        return []
    return pred.tokens


def perfect_at_k(target: Sequence[str], pred: Optional[Prediction], k: int) -> Optional[bool]:
    """Whether the first ``k`` predicted tokens equal the first ``k`` target tokens.

    None when the target is shorter than ``k``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if len(target) < k:
        return None
    tokens = predicted_tokens(pred)
    return len(tokens) >= k and list(tokens[:k]) == list(target[:k])


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def bleu_n(candidate: Sequence[str], reference: Sequence[str], n: int) -> float:
    """Single-reference, unsmoothed BLEU-n: clipped n-gram precision times brevity penalty."""
    if n < 1:
        raise ValueError("n must be at least 1")
    c = len(candidate)
    if c < n:
        return 0.0
    cand = _ngrams(candidate, n)
    ref = _ngrams(reference, n)
    matched = sum(min(cnt, ref[g]) for g, cnt in cand.items())
    if matched == 0:
        return 0.0
    precision = matched / (c - n + 1)
    bp = math.exp(min(0.0, 1.0 - len(reference) / c))
    return precision * bp


def bleu_a(candidate: Sequence[str], reference: Sequence[str]) -> Optional[float]:
    """Geometric mean of BLEU-1..4; None when the reference has fewer than 4 tokens."""
    if len(reference) < 4:
        return None
    scores = [bleu_n(candidate, reference, n) for n in range(1, 5)]
    if min(scores) == 0.0:
        return 0.0
    return math.exp(math.fsum(math.log(s) for s in scores) / 4)


def levenshtein_words(candidate: Sequence[str], reference: Sequence[str]) -> int:
    return int(_kernels.levenshtein_batch([(candidate, reference)])[0])


def levenshtein_many(pairs: Sequence[Tuple[Sequence[str], Sequence[str]]]) -> List[int]:
    return [int(d) for d in _kernels.levenshtein_batch(pairs)]


@dataclass
class Overlap:
    shared: float
    only_a: float
    only_b: float
    union: int

    @property
    def empty(self) -> bool:
        return self.union == 0

    def to_dict(self) -> dict:
        return {"shared": self.shared, "only_a": self.only_a, "only_b": self.only_b,
                "union": self.union, "empty": self.empty}


def overlap_metrics(perfect_a: Iterable[str], perfect_b: Iterable[str]) -> Overlap:
    a: Set[str] = set(perfect_a)
    b: Set[str] = set(perfect_b)
    union = len(a | b)
    if union == 0:
        return Overlap(0.0, 0.0, 0.0, 0)
    return Overlap(len(a & b) / union, len(a - b) / union, len(b - a) / union, union)


@dataclass
class McNemarResult:
    b: int  # A correct, B wrong
    c: int  # A wrong, B correct
    chi_square: Optional[float]
    p_value: Optional[float]
    odds_ratio: Optional[float]

    def to_dict(self) -> dict:
        return {"b": self.b, "c": self.c, "chi_square": self.chi_square,
                "p_value": self.p_value, "odds_ratio": self.odds_ratio}


def mcnemar_from_counts(b: int, c: int) -> McNemarResult:
    """Continuity-corrected McNemar statistic and discordant odds ratio (Haldane +0.5 on a zero cell)."""
    if b < 0 or c < 0:
        raise ValueError("discordant counts must be non-negative")
    if b + c == 0:
        return McNemarResult(b, c, None, None, None)
    chi2 = (abs(b - c) - 1) ** 2 / (b + c)
    # survival function of chi-square with one degree of freedom
    p = math.erfc(math.sqrt(chi2 / 2))
    if b == 0 or c == 0:
        odds = (b + 0.5) / (c + 0.5)
    else:
        odds = b / c
    return McNemarResult(b, c, chi2, p, odds)


def mcnemar_and_or(paired: Sequence[Tuple[bool, bool]]) -> McNemarResult:
    if not paired:
        raise ValueError("paired outcomes must be non-empty")
    b = sum(1 for x, y in paired if x and not y)
    c = sum(1 for x, y in paired if y and not x)
    return mcnemar_from_counts(b, c)
