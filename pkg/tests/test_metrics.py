import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import edit_distance
from commentcomplete.metrics import (
    bleu_a, bleu_n, levenshtein_many, levenshtein_words, mcnemar_and_or, mcnemar_from_counts, overlap_metrics,
    perfect_at_k,
)
from commentcomplete.ngram import Prediction

E = math.exp

# (candidate, reference, n, value derived by hand from clipped precision and brevity penalty)
BLEU_FIXTURE = [
    ("the cat", "the cat sat", 1, E(1 - 3 / 2)),
    ("the cat", "the cat sat", 2, E(1 - 3 / 2)),
    ("the cat", "the cat sat", 3, 0.0),
    ("a b c d e", "a b c d e", 1, 1.0),
    ("a b c d e", "a b c d e", 2, 1.0),
    ("a b c d e", "a b c d e", 3, 1.0),
    ("a b c d e", "a b c d e", 4, 1.0),
    ("x y", "a b", 1, 0.0),
    ("the the the the", "the cat", 1, 1 / 4),
    ("a b c d", "a b c d e f", 1, E(1 - 6 / 4)),
    ("a b c d", "a b c d e f", 4, E(1 - 6 / 4)),
    ("a b x d", "a b c d", 1, 3 / 4),
    ("a b x d", "a b c d", 2, 1 / 3),
    ("a b x d", "a b c d", 3, 0.0),
    ("a b a b", "a b", 2, 1 / 3),
    ("a b c d e f", "a b c", 1, 3 / 6),
    ("a", "a b c d", 1, E(1 - 4)),
    ("b a", "a b", 2, 0.0),
    ("b a", "a b", 1, 1.0),
    ("a b c b c", "a b c b c d", 3, E(1 - 6 / 5)),
]


@pytest.mark.parametrize("cand,ref,n,want", BLEU_FIXTURE)
def test_bleu_fixture(cand, ref, n, want):
    assert abs(bleu_n(cand.split(), ref.split(), n) - want) <= 1e-9


def test_bleu_example_value():
    assert bleu_n(["the", "cat"], ["the", "cat", "sat"], 1) == pytest.approx(0.6065306597, abs=1e-9)


def test_bleu_a_short_reference():
    assert bleu_a(["a", "b", "c"], ["a", "b", "c"]) is None


def test_bleu_a_identity():
    assert bleu_a(list("abcdef"), list("abcdef")) == 1.0


def test_bleu_a_no_bigram_overlap():
    assert bleu_a(["d", "c", "b", "a"], ["a", "b", "c", "d"]) == 0.0


def test_bleu_a_is_geometric_mean():
    cand, ref = "a b c d x".split(), "a b c d e".split()
    parts = [bleu_n(cand, ref, n) for n in range(1, 5)]
    assert bleu_a(cand, ref) == pytest.approx(math.prod(parts) ** 0.25, rel=1e-12)


@given(st.lists(st.sampled_from("abc"), max_size=8), st.lists(st.sampled_from("abc"), max_size=8), st.integers(1, 4))
def test_bleu_bounds(cand, ref, n):
    v = bleu_n(cand, ref, n)
    assert 0.0 <= v <= 1.0
    if len(cand) >= n:
        assert bleu_n(cand, cand, n) == 1.0


# -- Levenshtein -------------------------------------------------------------------

def test_levenshtein_examples():
    assert levenshtein_words(["a", "b"], ["a", "b"]) == 0
    assert levenshtein_words("returns the sum".split(), "returns the max".split()) == 1
    assert levenshtein_words("returns the sum".split(), "computes sum".split()) == 2


def test_levenshtein_metric_axioms():
    seqs = [list(s) for n in range(4) for s in itertools.product("abc", repeat=n)]
    rnd = random.Random(0)
    trip = [tuple(rnd.choice(seqs) for _ in range(3)) for _ in range(2000)]
    d = {}
    pairs = list({(tuple(a), tuple(b)) for x, y, z in trip for a, b in ((x, y), (y, z), (x, z), (y, x))})
    for (a, b), v in zip(pairs, levenshtein_many(pairs)):
        d[a, b] = v
    for x, y, z in trip:
        x, y, z = tuple(x), tuple(y), tuple(z)
        assert (d[x, y] == 0) == (x == y)
        assert d[x, y] == d[y, x]
        assert d[x, z] <= d[x, y] + d[y, z]


# -- perfect at k -------------------------------------------------------------------

def pred(tokens, status="ok"):
    return Prediction("t", tokens, 0.5, "m", status) if status == "ok" else Prediction.none("t", "m")


def test_perfect_worked_example():
    p = pred(["t4", "wrong"])
    assert perfect_at_k(["t4", "t5"], p, 1) is True
    assert perfect_at_k(["t4", "t5"], p, 2) is False


def test_perfect_not_applicable():
    assert perfect_at_k(["a", "b", "c"], pred(["a", "b", "c"]), 4) is None


def test_perfect_no_prediction():
    for k in (1, 2):
        assert perfect_at_k(["a", "b"], pred([], "none"), k) is False
    assert perfect_at_k(["a"], None, 1) is False


@given(st.lists(st.sampled_from("ab"), min_size=1, max_size=6), st.lists(st.sampled_from("ab"), max_size=6))
def test_perfect_monotone_and_levenshtein_link(target, tokens):
    p = pred(tokens) if tokens else pred([], "none")
    results = [perfect_at_k(target, p, k) for k in range(1, len(target) + 1)]
    for k in range(1, len(results)):
        if results[k]:
            assert results[k - 1]
    if len(tokens) == len(target):
        assert results[-1] == (edit_distance(tokens, target) == 0)


# -- overlap and McNemar ---------------------------------------------------------------

def test_overlap_examples():
    assert overlap_metrics({1, 2}, {1, 2}).to_dict()["shared"] == 1
    o = overlap_metrics({1, 2, 3}, {2, 3, 4})
    assert (o.shared, o.only_a, o.only_b) == (0.5, 0.25, 0.25)
    o = overlap_metrics({1}, set())
    assert (o.shared, o.only_a, o.only_b) == (0, 1, 0)
    assert overlap_metrics([], []).empty


def test_mcnemar_fixture():
    r = mcnemar_from_counts(10, 2)
    assert r.chi_square == pytest.approx(49 / 12, abs=1e-12)
    assert r.odds_ratio == 5.0


def test_mcnemar_haldane():
    assert mcnemar_from_counts(3, 0).odds_ratio == 7.0


def test_mcnemar_no_discordant():
    r = mcnemar_and_or([(True, True), (False, False)])
    assert r.chi_square is None and r.odds_ratio is None and r.p_value is None


def test_mcnemar_p_value_matches_chi2_survival():
    r = mcnemar_from_counts(10, 2)
    # chi-square(1) survival: P(Z^2 > x) = 2 * (1 - Phi(sqrt(x)))
    phi = 0.5 * (1 + math.erf(math.sqrt(49 / 12) / math.sqrt(2)))
    assert r.p_value == pytest.approx(2 * (1 - phi), rel=1e-12)


def test_mcnemar_from_pairs():
    pairs = [(True, False)] * 10 + [(False, True)] * 2 + [(True, True)] * 5
    r = mcnemar_and_or(pairs)
    assert (r.b, r.c) == (10, 2)


def test_mcnemar_empty_rejected():
    with pytest.raises(ValueError):
        mcnemar_and_or([])
