"""Lexicographic combination basis for the degree-r exterior power."""

from __future__ import annotations

import functools
import itertools
from math import comb

import numpy as np

# rank lookup tables are indexed by bitmask, so 2**MAX_DIM entries
MAX_DIM = 20


class SizeCapError(ValueError):
    """A dense construction would exceed the configured size guard."""


@functools.lru_cache(maxsize=None)
def combination_table(dim: int, degree: int):
    """Return ``(combos, masks, rank_of_mask)`` for C(dim, degree).

    ``degree > dim`` is allowed and yields empty tables (the exterior power vanishes).

    ``combos`` is a read-only ``(C, degree)`` int array in lexicographic order,
    ``masks`` the matching bitmasks and ``rank_of_mask[mask]`` the row of a
    mask (``-1`` for masks of a different popcount).
    """
    if not 0 <= dim <= MAX_DIM:
        raise SizeCapError(f"dim={dim} outside supported range 0..{MAX_DIM}")
    if degree < 0:
        raise ValueError(f"negative degree {degree}")
    combos = np.array(list(itertools.combinations(range(dim), degree)), dtype=np.int64)
    combos = combos.reshape(comb(dim, degree), degree)
    masks = np.zeros(len(combos), dtype=np.int64)
    for j in range(degree):
        masks |= np.left_shift(1, combos[:, j])
    rank_of_mask = np.full(1 << dim, -1, dtype=np.int64)
    rank_of_mask[masks] = np.arange(len(combos))
    for arr in (combos, masks, rank_of_mask):
        arr.setflags(write=False)
    return combos, masks, rank_of_mask


def rank_combination(dim: int, indices) -> int:
    """Position of a strictly increasing index tuple in the lexicographic order."""
    indices = tuple(int(i) for i in indices)
    if any(b <= a for a, b in zip(indices, indices[1:])):
        raise ValueError(f"indices must be strictly increasing: {indices}")
    if indices and not (0 <= indices[0] and indices[-1] < dim):
        raise ValueError(f"indices {indices} out of range for dim {dim}")
    mask = 0
    for i in indices:
        mask |= 1 << i
    return int(combination_table(dim, len(indices))[2][mask])


def mask_of(indices) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


def permutation_parity(perm) -> int:
    """0 for even, 1 for odd."""
    perm = list(perm)
    seen = [False] * len(perm)
    parity = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity
