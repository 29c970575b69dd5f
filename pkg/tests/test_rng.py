from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from commentcomplete.rng import SeededStream, stream_for


def test_same_seed_and_key_repeat():
    a, b = stream_for(42, "k"), stream_for(42, "k")
    assert [a.raw() for _ in range(5)] == [b.raw() for _ in range(5)]


def test_key_changes_stream():
    assert stream_for(42, "a").raw() != stream_for(42, "b").raw()


def test_known_prefix_is_stable():
    # pinned so an accidental change of algorithm is noticed
    s = SeededStream(42, "variants|x")
    assert [s.randbelow(1000) for _ in range(6)] == [538, 617, 731, 944, 461, 704]
    assert SeededStream(42, "split|finetune").sample(1, 12, 5) == [1, 2, 9, 8, 5]


@given(st.integers(0, 2 ** 64 - 1), st.integers(1, 50), st.integers(0, 50))
def test_sample_distinct_and_in_range(seed, n, k):
    k = min(k, n)
    got = SeededStream(seed).sample(1, n + 1, k)
    assert len(got) == len(set(got)) == k
    assert all(1 <= v <= n for v in got)


def test_sample_too_large():
    with pytest.raises(ValueError):
        SeededStream(0).sample(0, 3, 4)


def test_randbelow_roughly_uniform():
    s = SeededStream(7)
    counts = Counter(s.randbelow(4) for _ in range(8000))
    assert set(counts) == {0, 1, 2, 3}
    assert all(1800 < c < 2200 for c in counts.values())


def test_shuffle_is_permutation():
    items = list(range(30))
    SeededStream(3).shuffle(items)
    assert sorted(items) == list(range(30))
    assert items != list(range(30))
