#!/usr/bin/env python3
"""Benchmark the max-pooled cosine kernels: numba @njit vs pure numpy.

Simulates candidate ranking at KB scale: for each triple, every KB
relation's label tokens are max-pooled against the question tokens.

    python3 benchmarks/bench_similarity.py --relations 20000 --repeats 5

Set AMRLINK_NO_NUMBA=1 to confirm the dispatch honours the fallback flag.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from amrlink import kernels


def make_case(n_relations: int, q_tokens: int, dim: int, seed: int):
    rng = np.random.default_rng(seed)
    q = rng.normal(size=(q_tokens, dim))
    lengths = rng.integers(1, 4, size=n_relations)
    offsets = np.zeros(n_relations + 1, dtype=np.int64)
    np.cumsum(lengths, out=offsets[1:])
    flat = rng.normal(size=(int(offsets[-1]), dim))
    return q, flat, offsets


def bench(fn, q, flat, offsets, repeats: int) -> float:
    fn(q, flat, offsets)  # warm-up (and JIT compile for the numba path)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(q, flat, offsets)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--relations", type=int, default=20000)
    parser.add_argument("--q-tokens", type=int, default=12)
    parser.add_argument("--dim", type=int, default=300)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    q, flat, offsets = make_case(args.relations, args.q_tokens, args.dim, args.seed)
    print(
        f"segments={args.relations}  label rows={flat.shape[0]}  "
        f"question tokens={args.q_tokens}  dim={args.dim}"
    )

    t_numpy = bench(kernels.segmented_max_cosine_numpy, q, flat, offsets, args.repeats)
    print(f"numpy   : {t_numpy * 1e3:8.2f} ms")

    if kernels.HAS_NUMBA:
        t_numba = bench(kernels.segmented_max_cosine_numba, q, flat, offsets, args.repeats)
        print(f"numba   : {t_numba * 1e3:8.2f} ms   ({t_numpy / t_numba:.2f}x vs numpy)")
        a = kernels.segmented_max_cosine_numpy(q, flat, offsets)
        b = kernels.segmented_max_cosine_numba(q, flat, offsets)
        print(f"max |difference| between paths: {np.abs(a - b).max():.2e}")
    else:
        print("numba   : not installed (numpy fallback active)")

    active = "numba" if kernels.numba_enabled() else "numpy"
    print(f"dispatch: {active} (AMRLINK_NO_NUMBA toggles the fallback)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
