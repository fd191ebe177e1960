"""Compare the numba kernels with their pure-numpy fallbacks.

Run with ``python3 benchmarks/bench_kernels.py``. Each kernel pair is
checked for agreement before timing; the first jit call (compilation or
cache load) is excluded.
"""

from __future__ import annotations

import argparse
import timeit
from math import comb

import numpy as np

from fermereo import kernels
from fermereo.combinatorics import combination_table, mask_of


def _coeffs(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def cases(rng):
    """(name, size label, jit thunk, numpy thunk)."""
    out = []
    for d, r, s in [(8, 2, 2), (12, 3, 3), (16, 4, 3)]:
        _, ma, _ = combination_table(d, r)
        _, mb, _ = combination_table(d, s)
        _, _, rank_out = combination_table(d, r + s)
        ca, cb = _coeffs(rng, comb(d, r)), _coeffs(rng, comb(d, s))
        args = (ca, ma, cb, mb, rank_out, comb(d, r + s))
        out.append(("wedge", f"d={d} {r}^{s}", lambda a=args: kernels.wedge_jit(*a), lambda a=args: kernels.wedge_numpy(*a)))
    for d, r in [(8, 3), (12, 5), (16, 6)]:
        _, masks, _ = combination_table(d, r)
        _, _, rank_lower = combination_table(d, r - 1)
        args = (_coeffs(rng, comb(d, r)), masks, rank_lower, comb(d, r - 1), d)
        out.append(("contraction", f"d={d} r={r}", lambda a=args: kernels.contraction_jit(*a), lambda a=args: kernels.contraction_numpy(*a)))
    for d, s in [(6, 3), (8, 3), (10, 3)]:
        combos = combination_table(d, s)[0]
        m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        args = (m, combos, combos)
        out.append(("compound", f"d={d} s={s}", lambda a=args: kernels.compound_jit(*a), lambda a=args: kernels.compound_numpy(*a)))
    for d, s in [(12, 4), (16, 6), (20, 8)]:
        _, masks, _ = combination_table(d, s)
        pmask = mask_of(range(0, d, 2))
        args = (masks, pmask)
        out.append(("occupancy", f"d={d} s={s}", lambda a=args: kernels.occupancy_jit(*a), lambda a=args: kernels.occupancy_numpy(*a)))
    return out


def best_time(fn, repeat: int) -> float:
    number = max(1, int(0.05 / max(timeit.timeit(fn, number=1), 1e-7)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    if kernels.BACKEND != "numba":
        print("numba unavailable or disabled (FERMEREO_DISABLE_JIT); both columns time the numpy path")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<12} {'size':<14} {'numba':>12} {'numpy':>12} {'speedup':>8}")
    for name, label, jit_fn, np_fn in cases(rng):
        a, b = jit_fn(), np_fn()
        if not np.allclose(a, b, atol=1e-10):
            raise SystemExit(f"{name} {label}: paths disagree")
        t_jit, t_np = best_time(jit_fn, args.repeat), best_time(np_fn, args.repeat)
        print(f"{name:<12} {label:<14} {t_jit * 1e6:>10.1f}us {t_np * 1e6:>10.1f}us {t_np / t_jit:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
