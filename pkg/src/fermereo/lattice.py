"""Lattice operations on subspaces and the mereological witnesses built from them."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from ._config import resolve_eps
from .subspace import Subspace


def _same_ambient(*spaces: Subspace) -> int:
    dims = {s.dim for s in spaces}
    if len(dims) != 1:
        raise ValueError(f"subspaces live in different ambient dimensions: {sorted(dims)}")
    return dims.pop()


def meet(x: Subspace, y: Subspace, eps: float | None = None) -> Subspace:
    """Intersection: eigenspace of Px + Py for eigenvalue 2 (within eps)."""
    eps = resolve_eps(eps)
    d = _same_ambient(x, y)
    if x.is_zero or y.is_zero:
        return Subspace.zero(d)
    if x.is_coordinate(eps) and y.is_coordinate(eps):
        return Subspace.coordinate(d, set(x.coordinate_indices()) & set(y.coordinate_indices()))
    s = x.projector + y.projector
    w, v = np.linalg.eigh(0.5 * (s + s.conj().T))
    return Subspace.from_orthonormal(v[:, w >= 2.0 - eps].T, d)


def join(x: Subspace, y: Subspace, eps: float | None = None) -> Subspace:
    """Span of both subspaces (the system-space of the fermionic fusion)."""
    d = _same_ambient(x, y)
    if x.is_zero:
        return y
    if y.is_zero:
        return x
    return Subspace.span(np.vstack([x.generators, y.generators]), d, eps)


def join_all(spaces: Iterable[Subspace], eps: float | None = None) -> Subspace:
    spaces = list(spaces)
    if not spaces:
        raise ValueError("join of an empty family")
    d = _same_ambient(*spaces)
    return Subspace.span(np.vstack([s.generators for s in spaces]), d, eps)


def contains(outer: Subspace, inner: Subspace, eps: float | None = None) -> bool:
    """True iff ``inner`` is a subspace of ``outer``."""
    eps = resolve_eps(eps)
    _same_ambient(outer, inner)
    if inner.is_zero:
        return True
    if inner.rank > outer.rank:
        return False
    diff = outer.projector @ inner.projector - inner.projector
    return bool(np.max(np.abs(diff)) <= eps)


def overlaps(x: Subspace, y: Subspace, eps: float | None = None) -> bool:
    """Mereological overlap: a common nonzero subspace."""
    return not meet(x, y, eps).is_zero


def ortho_complement_in(x: Subspace, ambient: Subspace, eps: float | None = None) -> Subspace:
    """Orthocomplement of ``x`` relative to ``ambient``."""
    if not contains(ambient, x, eps):
        raise ValueError("x is not contained in the ambient subspace")
    d = ambient.dim
    if x.is_coordinate(eps) and ambient.is_coordinate(eps):
        return Subspace.coordinate(d, set(ambient.coordinate_indices()) - set(x.coordinate_indices()))
    diff = ambient.projector - x.projector
    w, v = np.linalg.eigh(0.5 * (diff + diff.conj().T))
    return Subspace.from_orthonormal(v[:, w > 0.5].T, d)


def supplement_witness(x: Subspace, y: Subspace, eps: float | None = None) -> Subspace:
    """A nonzero part of ``x`` disjoint from ``y``, for ``x`` not inside ``y``."""
    if contains(y, x, eps):
        raise ValueError("x is contained in y; no supplement witness exists")
    return ortho_complement_in(meet(x, y, eps), x, eps)


def skew_atom_witness(x: Subspace, y: Subspace, eps: float | None = None) -> Subspace:
    """Span of the normalised sum of two distinct atoms' unit generators.

    The result lies in ``join(x, y)`` but in neither atom, which is what
    refutes the existence of their mereological fusion.
    """
    _same_ambient(x, y)
    if x.rank != 1 or y.rank != 1:
        raise ValueError("skew_atom_witness needs two rank-1 subspaces")
    if x.equals(y, eps):
        raise ValueError("the two atoms coincide")
    v = x.generators[0] + y.generators[0]
    return Subspace.span(v / np.linalg.norm(v), x.dim, eps)


def fusion_of_set(family: Sequence[Subspace], eps: float | None = None) -> Subspace | None:
    """Mereological fusion of a finite family of subspaces, if it exists.

    Every atom of a fusion must lie in some member while the fusion contains
    every member, so it exists exactly when one member contains all the
    others, and is that member.
    """
    family = list(family)
    if not family:
        raise ValueError("fusion of an empty family")
    _same_ambient(*family)
    for candidate in sorted(family, key=lambda s: -s.rank):
        if all(contains(candidate, t, eps) for t in family):
            return candidate
    return None


def fusion_violations(
    z: Subspace, family: Sequence[Subspace], probes: Iterable[Subspace], eps: float | None = None
) -> list[Subspace]:
    """Probes ``w`` for which ``w o z`` differs from ``exists t in family: t o w``."""
    bad = []
    for w in probes:
        if overlaps(w, z, eps) != any(overlaps(t, w, eps) for t in family):
            bad.append(w)
    return bad
