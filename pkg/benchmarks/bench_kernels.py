"""Compare the numba and numpy kernel backends on synthetic inputs.

    python3 benchmarks/bench_kernels.py [--tokens 200000] [--pairs 5000] [--repeat 5]

The first numba call compiles (or loads the on-disk cache); it is timed
separately and excluded from the steady-state numbers.
"""

import argparse
import time

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from commentcomplete import _kernels


def _best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def ngram_rows(n_tokens, vocab, order, rng):
    ids = rng.zipf(1.3, size=n_tokens) % vocab
    return sliding_window_view(ids.astype(np.int64), order).copy()


def token_pairs(n_pairs, max_len, vocab, rng):
    pairs = []
    for _ in range(n_pairs):
        a = [str(x) for x in rng.integers(0, vocab, rng.integers(0, max_len + 1))]
        b = [str(x) for x in rng.integers(0, vocab, rng.integers(0, max_len + 1))]
        pairs.append((a, b))
    return pairs


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tokens", type=int, default=200_000)
    ap.add_argument("--pairs", type=int, default=5_000)
    ap.add_argument("--max-len", type=int, default=40)
    ap.add_argument("--order", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    rng = np.random.default_rng(args.seed)
    rows = ngram_rows(args.tokens, 2_000, args.order, rng)
    pairs = token_pairs(args.pairs, args.max_len, 50, rng)

    def counting(backend):
        uniq, counts = _kernels.count_rows(rows, backend)
        return _kernels.group_best(uniq, counts, backend)

    def edits(backend):
        return _kernels.levenshtein_batch(pairs, backend)

    print(f"{'kernel':<22}{'numpy s':>10}{'numba s':>10}{'speedup':>9}{'first numba call s':>20}")
    for name, fn in (("ngram count+argmax", counting), ("levenshtein batch", edits)):
        t0 = time.perf_counter()
        fast = fn("numba")
        warm = time.perf_counter() - t0
        slow = fn("numpy")
        same = all(np.array_equal(x, y) for x, y in zip(np.atleast_1d(fast), np.atleast_1d(slow))) \
            if isinstance(fast, tuple) else np.array_equal(fast, slow)
        if not same:
            raise SystemExit(f"{name}: backends disagree")
        t_np = _best_of(lambda: fn("numpy"), args.repeat)
        t_nb = _best_of(lambda: fn("numba"), args.repeat)
        print(f"{name:<22}{t_np:>10.4f}{t_nb:>10.4f}{t_np / t_nb:>8.1f}x{warm:>20.3f}")


if __name__ == "__main__":
    main()
