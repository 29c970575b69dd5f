import itertools
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import edit_distance
from commentcomplete import _kernels


def _rows(seed, n=500, width=4, vocab=5):
    return np.random.default_rng(seed).integers(0, vocab, size=(n, width))


@pytest.mark.parametrize("seed", range(5))
def test_count_rows_parity(seed):
    rows = _rows(seed)
    u1, c1 = _kernels.count_rows(rows, "numba")
    u2, c2 = _kernels.count_rows(rows, "numpy")
    assert np.array_equal(u1, u2) and np.array_equal(c1, c2)
    assert c1.sum() == len(rows)
    distinct = sorted(set(map(tuple, rows.tolist())))
    assert [tuple(r) for r in u1.tolist()] == distinct


@pytest.mark.parametrize("seed", range(5))
def test_group_best_parity(seed):
    u, c = _kernels.count_rows(_rows(seed, width=3), "numpy")
    a = _kernels.group_best(u, c, "numba")
    b = _kernels.group_best(u, c, "numpy")
    for x, y in zip(a, b):
        assert np.array_equal(x, y)
    starts, totals, best, maxima = a
    ends = list(starts[1:]) + [len(u)]
    for g, (lo, hi) in enumerate(zip(starts, ends)):
        cnt = c[lo:hi]
        assert totals[g] == cnt.sum() and maxima[g] == cnt.max()
        assert best[g] == u[lo + int(np.argmax(cnt)), -1]


def test_empty_inputs():
    u, c = _kernels.count_rows(np.zeros((0, 3), dtype=np.int64))
    assert len(u) == 0 and len(c) == 0
    assert len(_kernels.levenshtein_batch([])) == 0


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from("abcd"), max_size=12), st.lists(st.sampled_from("abcd"), max_size=12))
def test_levenshtein_backends_match_reference(a, b):
    want = edit_distance(a, b)
    assert _kernels.levenshtein_batch([(a, b)], "numba")[0] == want
    assert _kernels.levenshtein_batch([(a, b)], "numpy")[0] == want


def test_levenshtein_exhaustive_small():
    seqs = [list(s) for n in range(4) for s in itertools.product("xy", repeat=n)]
    pairs = [(a, b) for a in seqs for b in seqs]
    want = [edit_distance(a, b) for a, b in pairs]
    assert _kernels.levenshtein_batch(pairs, "numba").tolist() == want
    assert _kernels.levenshtein_batch(pairs, "numpy").tolist() == want


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernels.count_rows(np.zeros((1, 2)), "cuda")


def test_env_flag_selects_numpy():
    env = dict(os.environ, COMMENTCOMPLETE_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from commentcomplete import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
