"""Tarskian models of fermionic assemblies and the mereology axiom checks.

Objects of the model are the non-GMW-entangled subsystems of a decomposable
total state; each is fixed by its system-space, a nonzero subspace of the
total system-space. ``E(x, Q)`` is the eigenstate-eigenvalue link: x's state
is an eigenvector of the occupancy projector Q with eigenvalue 1.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from math import pi
from typing import Iterable, Sequence

import numpy as np

from ._config import resolve_eps
from .exterior import AntiSymTensor, decomposable_state, is_decomposable, wedge_all
from .lattice import (
    contains,
    join,
    join_all,
    meet,
    ortho_complement_in,
    overlaps,
    skew_atom_witness,
    supplement_witness,
)
from .projectors import OccupancyProjector, is_eigenstate, sigma
from .subspace import Subspace, numerical_rank

AXIOMS = ("partial_order", "strong_supplementation", "atomicity", "unrestricted_fusion")


class GMWEntangledError(ValueError):
    """The total state is not decomposable, so it has no system-space."""


# -- objects ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SystemObject:
    space: Subspace

    def __post_init__(self):
        if self.space.is_zero:
            raise ValueError("systems have nonzero system-spaces")

    @property
    def degree(self) -> int:
        return self.space.rank

    @functools.cached_property
    def state(self) -> AntiSymTensor:
        return decomposable_state(self.space)

    def same(self, other: "SystemObject", eps: float | None = None) -> bool:
        return self.space.equals(other.space, eps)


@dataclass(frozen=True, eq=False)
class Assembly:
    omega_state: AntiSymTensor
    omega_space: Subspace

    @property
    def dim(self) -> int:
        return self.omega_space.dim

    @property
    def N(self) -> int:
        return self.omega_state.degree

    @classmethod
    def from_state(cls, state: AntiSymTensor, eps: float | None = None) -> "Assembly":
        eps = resolve_eps(eps)
        if not state.is_state(eps):
            raise ValueError(f"total state must be a unit tensor, got norm {state.norm()}")
        if state.degree < 1:
            raise ValueError("total state must have degree at least 1")
        verdict = is_decomposable(state, eps)
        if not verdict.decomposable:
            raise GMWEntangledError(
                f"total state is GMW-entangled (one-body support rank {verdict.support_rank} "
                f"!= degree {state.degree}); it has no system-space"
            )
        return cls(state, verdict.support)

    @property
    def omega(self) -> SystemObject:
        return SystemObject(self.omega_space)

    def system(self, space: Subspace, eps: float | None = None) -> SystemObject:
        if space.dim != self.dim:
            raise ValueError("subspace lives in a different ambient space")
        if not contains(self.omega_space, space, eps):
            raise ValueError("system-space must lie inside the total system-space")
        return SystemObject(space)


def build_assembly(vectors, eps: float | None = None) -> Assembly:
    """Total system whose state is the wedge of the given one-particle vectors."""
    eps = resolve_eps(eps)
    rows = np.atleast_2d(np.asarray(vectors, dtype=np.complex128))
    n = rows.shape[0]
    if n == 0:
        raise ValueError("need at least one vector")
    sv = np.linalg.svd(rows, compute_uv=False)
    if numerical_rank(sv, eps) < n:
        raise ValueError("vectors are linearly dependent; their wedge vanishes (Pauli exclusion)")
    q, _ = np.linalg.qr(rows.T)
    state = wedge_all(q.T[:n]).normalized()
    return Assembly(state, Subspace.span(rows))


def _state_of(x) -> AntiSymTensor:
    return x.omega_state if isinstance(x, Assembly) else x.state


def E(x, Q: OccupancyProjector, eps: float | None = None) -> bool:
    """Eigenstate-eigenvalue link for a system (or the assembly itself)."""
    state = _state_of(x)
    if Q.s != state.degree or Q.dim != state.dim:
        return False
    return is_eigenstate(Q.matrix, state, eps)


# -- projector sampling -----------------------------------------------------


class ProjectorSampler:
    """Finite stand-in for "every degree-1 projector".

    The base sample is every coordinate subspace of H, every subspace spanned
    by a subset of the total system-space's generators, and ``n`` random
    subspaces. For a pair of systems the sample is extended with projectors
    anchored on their system-spaces, the only ones for which the parthood
    antecedent can hold.
    """

    COORDINATE_LIMIT = 6

    def __init__(self, assembly: Assembly, n: int = 64, seed: int = 0, anchors: int = 8):
        if n < 0:
            raise ValueError("sample size must be non-negative")
        self.assembly = assembly
        self.n = n
        self.seed = seed
        self.anchors = anchors
        rng = np.random.default_rng(seed)
        d, N = assembly.dim, assembly.N
        base: list[Subspace] = []
        if d <= self.COORDINATE_LIMIT:
            for k in range(1, d + 1):
                base.extend(Subspace.coordinate(d, c) for c in itertools.combinations(range(d), k))
        if N <= self.COORDINATE_LIMIT:
            gens = assembly.omega_space.generators
            for k in range(1, N + 1):
                base.extend(Subspace.from_orthonormal(gens[list(c)], d) for c in itertools.combinations(range(N), k))
        self.random = [Subspace.random(d, int(rng.integers(1, d + 1)), rng) for _ in range(n)]
        self.base = base + self.random
        self._cache: dict[tuple[int, int, int], OccupancyProjector] = {}
        self._base_ids = {id(P) for P in self.base}

    def sigma(self, P: Subspace, s: int, r: int) -> OccupancyProjector:
        if id(P) not in self._base_ids:
            return sigma(P, s, r)
        key = (id(P), s, r)
        op = self._cache.get(key)
        if op is None:
            op = self._cache.setdefault(key, sigma(P, s, r))
        return op

    def for_pair(self, x: SystemObject, y: SystemObject) -> list[Subspace]:
        extra = [x.space, y.space, join(x.space, y.space)]
        extra += [join(y.space, w) for w in self.random[: self.anchors]]
        extra += [join(x.space, w) for w in self.random[: self.anchors]]
        return self.base + extra


def E_sigma(x, P: Subspace, s: int, r: int, sampler: ProjectorSampler | None = None) -> bool:
    """``E(x, sigma^s_r(P))``; false when the degree does not match."""
    state = _state_of(x)
    if s != state.degree or s > P.dim:
        return False
    op = sampler.sigma(P, s, r) if sampler is not None else sigma(P, s, r)
    return E(x, op)


def parthood_definitional(x: SystemObject, y: SystemObject, sampler: ProjectorSampler) -> bool:
    """Definitional parthood evaluated over the sampler's projectors."""
    N = sampler.assembly.N
    for P in sampler.for_pair(x, y):
        for s in range(1, N + 1):
            if not E_sigma(y, P, s, s, sampler):
                continue
            if not any(E_sigma(x, P, r, r, sampler) for r in range(1, s + 1)):
                return False
    return True


def discern(x: SystemObject, y: SystemObject, sampler: ProjectorSampler) -> tuple[Subspace, int] | None:
    """First sampled ``(P, r)`` whose monadic predicate E(., sigma^r_r(P)) tells x from y."""
    N = sampler.assembly.N
    for P in sampler.for_pair(x, y):
        for r in range(1, N + 1):
            if E_sigma(x, P, r, r, sampler) != E_sigma(y, P, r, r, sampler):
                return P, r
    return None


def criterion_of_identity(x: SystemObject, y: SystemObject, sampler: ProjectorSampler) -> bool:
    return discern(x, y, sampler) is None


# -- subsystem rules --------------------------------------------------------


@dataclass(frozen=True)
class SubsystemSides:
    existence_lhs: bool
    existence_rhs: bool
    uniqueness_lhs: bool
    uniqueness_rhs: bool
    system: SystemObject | None
    rival: SystemObject | None = None

    @property
    def holds(self) -> bool:
        return self.existence_lhs == self.existence_rhs and self.uniqueness_lhs == self.uniqueness_rhs


def subsystem_sides(assembly: Assembly, P: Subspace, r: int, eps: float | None = None) -> SubsystemSides:
    """Evaluate both sides of the existence and uniqueness rules for (P, r).

    Candidate subsystems are r-dimensional subspaces of P intersected with
    the total system-space; a second candidate, when the intersection is
    larger than r, is a concrete witness against uniqueness.
    """
    N = assembly.N
    if not 1 <= r <= N:
        raise ValueError(f"r={r} outside 1..{N}")
    family = [sigma(P, N, i) for i in range(N + 1)]
    existence_lhs = is_eigenstate(sum(op.matrix for op in family[r:]), assembly.omega_state, eps)
    uniqueness_lhs = E(assembly, family[r], eps)

    common = meet(P, assembly.omega_space, eps)
    system = rival = None
    if common.rank >= r:
        cand = SystemObject(Subspace.from_orthonormal(common.generators[:r], P.dim))
        if E_sigma(cand, P, r, r):
            system = cand
        if common.rank > r:
            other = SystemObject(Subspace.from_orthonormal(common.generators[1 : r + 1], P.dim))
            if E_sigma(other, P, r, r) and not other.same(cand, eps):
                rival = other
    existence_rhs = system is not None
    uniqueness_rhs = existence_rhs and rival is None
    return SubsystemSides(existence_lhs, existence_rhs, uniqueness_lhs, uniqueness_rhs, system, rival)


def subsystem_existence_check(assembly: Assembly, P: Subspace, r: int, eps: float | None = None) -> bool:
    """Whether both subsystem biconditionals hold for this (P, r)."""
    return subsystem_sides(assembly, P, r, eps).holds


def continuum_atoms_demo(assembly: Assembly, grid: int) -> list[SystemObject]:
    """``grid`` distinct degree-1 parts of the total system, spread over a half-turn."""
    if assembly.N < 2:
        raise ValueError("a one-particle assembly has a single atom")
    if grid < 1:
        raise ValueError("grid must be positive")
    g0, g1 = assembly.omega_space.generators[:2]
    atoms = []
    for k in range(grid):
        theta = pi * k / grid
        atoms.append(SystemObject(Subspace.span(np.cos(theta) * g0 + np.sin(theta) * g1)))
    return atoms


# -- reports ----------------------------------------------------------------


@dataclass
class AxiomVerdict:
    holds: bool
    checked: int
    witness: dict | None = None
    note: str = ""


@dataclass
class AxiomReport:
    model: str
    seed: int | None
    samples: int | None
    objects: int
    verdicts: dict[str, AxiomVerdict] = field(default_factory=dict)

    def holds(self, name: str) -> bool:
        return self.verdicts[name].holds

    def pattern(self) -> dict[str, bool]:
        return {name: v.holds for name, v in self.verdicts.items()}

    def to_dict(self) -> dict:
        from .serialize import subspace_to_json

        def encode(value):
            if isinstance(value, Subspace):
                return subspace_to_json(value)
            if isinstance(value, SystemObject):
                return subspace_to_json(value.space)
            if isinstance(value, UnionObject):
                return [subspace_to_json(p) for p in value.parts]
            if isinstance(value, dict):
                return {k: encode(v) for k, v in value.items()}
            if isinstance(value, (list, tuple)):
                return [encode(v) for v in value]
            if isinstance(value, np.bool_):
                return bool(value)
            return value

        return {
            "model": self.model,
            "seed": self.seed,
            "samples": self.samples,
            "objects": self.objects,
            "verdicts": {
                name: {"holds": v.holds, "checked": v.checked, "witness": encode(v.witness), "note": v.note}
                for name, v in self.verdicts.items()
            },
        }


# -- the subspace model -----------------------------------------------------


def _dedupe(spaces: Iterable[Subspace], eps: float | None = None) -> list[Subspace]:
    out: list[Subspace] = []
    for s in spaces:
        if not any(s.equals(t, eps) for t in out):
            out.append(s)
    return out


def sample_objects(assembly: Assembly, samples: int, rng: np.random.Generator) -> list[Subspace]:
    """Coordinate subspaces of the total system-space plus random ones and short chains."""
    d, N = assembly.dim, assembly.N
    omega = assembly.omega_space
    spaces = []
    gens = omega.generators
    if N <= ProjectorSampler.COORDINATE_LIMIT:
        for k in range(1, N + 1):
            spaces.extend(Subspace.from_orthonormal(gens[list(c)], d) for c in itertools.combinations(range(N), k))
    for _ in range(samples):
        x = Subspace.random(d, int(rng.integers(1, N + 1)), rng, within=omega)
        spaces.append(x)
        if x.rank < N:
            # grow a chain x < y inside omega so transitivity sees non-trivial antecedents
            y = join(x, Subspace.random(d, 1, rng, within=omega))
            spaces.append(y)
    return _dedupe(spaces)


def verify_supplement(x: Subspace, y: Subspace, z: Subspace, omega: Subspace, eps: float | None = None) -> bool:
    return (
        not z.is_zero
        and contains(omega, z, eps)
        and contains(x, z, eps)
        and meet(z, y, eps).is_zero
    )


def verify_fusion_refutation(x: Subspace, y: Subspace, candidate: Subspace, w: Subspace, eps: float | None = None) -> bool:
    """``w`` breaks the fusion condition for ``candidate`` against the family {x, y}."""
    return overlaps(w, candidate, eps) != (overlaps(w, x, eps) or overlaps(w, y, eps))


def refute_fusion_candidate(x: Subspace, y: Subspace, z: Subspace, eps: float | None = None) -> Subspace:
    """A probe violating the fusion condition of distinct atoms x, y for candidate z.

    A candidate missing x (or y) is refuted by x (or y) itself; a candidate
    containing both contains the skew atom of x and y, which overlaps
    neither atom.
    """
    if not contains(z, x, eps):
        return x
    if not contains(z, y, eps):
        return y
    return skew_atom_witness(x, y, eps)


def check_axioms(
    assembly: Assembly,
    sampler: ProjectorSampler | None = None,
    samples: int = 64,
    seed: int = 0,
    eps: float | None = None,
) -> AxiomReport:
    """Check the four axioms over sampled subsystems, with constructive witnesses."""
    eps = resolve_eps(eps)
    if sampler is None:
        sampler = ProjectorSampler(assembly, n=samples, seed=seed)
    rng = np.random.default_rng([seed, 1])
    omega = assembly.omega_space
    objs = sample_objects(assembly, samples, rng)
    n = len(objs)
    report = AxiomReport("subspace", seed, samples, n)

    leq = np.array([[contains(objs[j], objs[i], eps) for j in range(n)] for i in range(n)])
    report.verdicts["partial_order"] = _partial_order_verdict(leq, objs, eps)

    # strong supplementation, constructively
    checked, witness, failure = 0, None, None
    for i, j in itertools.product(range(n), repeat=2):
        if leq[i, j]:
            continue
        z = supplement_witness(objs[i], objs[j], eps)
        checked += 1
        if not verify_supplement(objs[i], objs[j], z, omega, eps):
            failure = {"x": objs[i], "y": objs[j], "z": z}
            break
        if witness is None:
            witness = {"x": objs[i], "y": objs[j], "z": z}
    report.verdicts["strong_supplementation"] = AxiomVerdict(
        failure is None, checked, failure or witness,
        "z is a nonzero part of x with zero meet with y" if failure is None else "witness failed re-verification",
    )

    # atomicity: a rank-1 part of every object; rank 1 leaves no room for proper parts
    failure = None
    for x in objs:
        atom = Subspace.span(x.generators[0])
        if not (atom.rank == 1 and contains(x, atom, eps)):
            failure = {"x": x, "atom": atom}
            break
    report.verdicts["atomicity"] = AxiomVerdict(
        failure is None, n, failure or {"x": objs[-1], "atom": Subspace.span(objs[-1].generators[0])}
    )

    report.verdicts["unrestricted_fusion"] = _fusion_verdict(assembly, objs, sampler, eps)
    return report


def _partial_order_verdict(leq: np.ndarray, objs: Sequence[Subspace], eps: float) -> AxiomVerdict:
    n = len(objs)
    for i in range(n):
        if not leq[i, i]:
            return AxiomVerdict(False, n, {"x": objs[i]}, "reflexivity fails")
    for i, j in itertools.combinations(range(n), 2):
        if leq[i, j] and leq[j, i] and not objs[i].equals(objs[j], eps):
            return AxiomVerdict(False, n * n, {"x": objs[i], "y": objs[j]}, "antisymmetry fails")
    through = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
    bad = np.argwhere(through & ~leq)
    if bad.size:
        i, k = bad[0]
        j = int(np.flatnonzero(leq[i] & leq[:, k])[0])
        return AxiomVerdict(False, n**3, {"x": objs[i], "y": objs[j], "z": objs[k]}, "transitivity fails")
    chains = int(np.count_nonzero(through & ~np.eye(n, dtype=bool)))
    return AxiomVerdict(True, n**3, None, f"reflexive, antisymmetric, transitive over {n}^3 triples ({chains} chained pairs)")


def _fusion_verdict(assembly: Assembly, objs: Sequence[Subspace], sampler: ProjectorSampler, eps: float) -> AxiomVerdict:
    omega = assembly.omega_space
    if assembly.N == 1:
        # the only system is the total one; the only non-empty phi picks it and it fuses itself
        violations = [w for w in objs if overlaps(w, omega, eps) != overlaps(omega, w, eps)]
        return AxiomVerdict(not violations, len(objs), {"fusion": omega}, "single-atom domain")

    gens = omega.generators
    x = SystemObject(Subspace.span(gens[0]))
    y = SystemObject(Subspace.span(gens[1]))
    P_op = sigma(x.space, 1, 1)
    Q_op = sigma(y.space, 1, 1)

    def phi(t: SystemObject) -> bool:
        return E(t, P_op, eps) or E(t, Q_op, eps)

    # phi is satisfied by x and y only (criterion of identity)
    stray = [t for t in objs if phi(SystemObject(t)) and not (t.equals(x.space, eps) or t.equals(y.space, eps))]
    if stray or not (phi(x) and phi(y)):
        return AxiomVerdict(True, len(objs), {"x": x, "y": y, "stray": stray}, "phi did not single out the two atoms")

    candidates = list(objs) + [join(x.space, y.space, eps)]
    for z in candidates:
        w = refute_fusion_candidate(x.space, y.space, z, eps)
        if not verify_fusion_refutation(x.space, y.space, z, w, eps):
            return AxiomVerdict(True, len(candidates), {"x": x, "y": y, "fusion": z}, "a candidate survived refutation")

    z = join(x.space, y.space, eps)
    w0 = skew_atom_witness(x.space, y.space, eps)
    witness = {
        "x": x,
        "y": y,
        "candidate": z,
        "w0": w0,
        "w0_overlaps_candidate": overlaps(w0, z, eps),
        "w0_overlaps_x": overlaps(w0, x.space, eps),
        "w0_overlaps_y": overlaps(w0, y.space, eps),
    }
    return AxiomVerdict(
        False,
        len(candidates),
        witness,
        "phi(t) := E(t,P) or E(t,Q) has no fusion: every candidate missing an atom is refuted by that atom, "
        "and any candidate containing both contains w0, which overlaps neither",
    )


# -- finite relational models -----------------------------------------------


class FiniteModel:
    """First-order mereology over a finite domain given by its parthood matrix.

    ``leq[i, j]`` means object i is part of object j; overlap is common
    parthood inside the domain, exactly as in the axioms' definitions.
    """

    FAMILY_LIMIT = 16

    def __init__(self, leq: np.ndarray):
        self.leq = np.asarray(leq, dtype=bool)
        self.n = self.leq.shape[0]
        li = self.leq.astype(np.int64)
        self.overlap = (li.T @ li) > 0

    def partial_order(self) -> AxiomVerdict:
        n, leq = self.n, self.leq
        if not np.all(np.diagonal(leq)):
            return AxiomVerdict(False, n, {"index": int(np.flatnonzero(~np.diagonal(leq))[0])}, "reflexivity fails")
        both = leq & leq.T & ~np.eye(n, dtype=bool)
        if both.any():
            i, j = np.argwhere(both)[0]
            return AxiomVerdict(False, n * n, {"indices": [int(i), int(j)]}, "antisymmetry fails")
        through = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
        bad = np.argwhere(through & ~leq)
        if bad.size:
            return AxiomVerdict(False, n**3, {"indices": [int(v) for v in bad[0]]}, "transitivity fails")
        return AxiomVerdict(True, n**3)

    def strong_supplementation(self) -> AxiomVerdict:
        checked = 0
        for i, j in itertools.product(range(self.n), repeat=2):
            if self.leq[i, j]:
                continue
            checked += 1
            if not np.any(self.leq[:, i] & ~self.overlap[:, j]):
                return AxiomVerdict(False, checked, {"indices": [i, j]}, "no part of x is disjoint from y")
        return AxiomVerdict(True, checked)

    def atoms(self) -> np.ndarray:
        proper = self.leq & ~np.eye(self.n, dtype=bool)
        return ~proper.any(axis=0)

    def atomicity(self) -> AxiomVerdict:
        atoms = self.atoms()
        has_atom = (self.leq & atoms[:, None]).any(axis=0)
        if not has_atom.all():
            return AxiomVerdict(False, self.n, {"index": int(np.flatnonzero(~has_atom)[0])}, "object without an atomic part")
        return AxiomVerdict(True, self.n, None, f"{int(atoms.sum())} atoms")

    def fusion_targets(self, families: np.ndarray | None = None):
        """For each family (bitmask over objects): bitmask of its overlappers and the fusion's index or -1."""
        if self.n > 62:
            raise ValueError("bitmask fusion check supports at most 62 objects")
        weights = np.left_shift(np.int64(1), np.arange(self.n, dtype=np.int64))
        rows = (self.overlap.astype(np.int64) * weights[None, :]).sum(axis=1)
        if families is None:
            if self.n > self.FAMILY_LIMIT:
                raise ValueError("too many objects for exhaustive family enumeration")
            targets = np.zeros(1 << self.n, dtype=np.int64)
            for b in range(self.n):
                lo = 1 << b
                targets[lo : 2 * lo] = targets[:lo] | rows[b]
            families = np.arange(1 << self.n, dtype=np.int64)[1:]
            targets = targets[1:]
        else:
            families = np.asarray(families, dtype=np.int64)
            member = ((families[:, None] >> np.arange(self.n)) & 1).astype(bool)
            targets = np.bitwise_or.reduce(np.where(member, rows[None, :], 0), axis=1)
        order = np.argsort(rows, kind="stable")
        pos = np.searchsorted(rows[order], targets)
        pos = np.minimum(pos, self.n - 1)
        found = rows[order][pos] == targets
        fusion = np.where(found, order[pos], -1)
        return families, targets, fusion

    def unrestricted_fusion(self, rng: np.random.Generator | None = None, sampled: int = 4096) -> AxiomVerdict:
        if self.n <= self.FAMILY_LIMIT:
            families, _, fusion = self.fusion_targets()
            note = "every non-empty family"
        else:
            rng = rng or np.random.default_rng(0)
            member = rng.random((sampled, self.n)) < 0.5
            member[np.arange(sampled), rng.integers(0, self.n, sampled)] = True
            families = (member * np.left_shift(np.int64(1), np.arange(self.n))).sum(axis=1)
            families, _, fusion = self.fusion_targets(families)
            note = f"{sampled} sampled families"
        missing = np.flatnonzero(fusion < 0)
        if missing.size:
            fam = int(families[missing[0]])
            return AxiomVerdict(False, len(families), {"family": [i for i in range(self.n) if fam >> i & 1]}, "family without a fusion")
        return AxiomVerdict(True, len(families), None, note)

    def check(self, rng: np.random.Generator | None = None) -> dict[str, AxiomVerdict]:
        return {
            "partial_order": self.partial_order(),
            "strong_supplementation": self.strong_supplementation(),
            "atomicity": self.atomicity(),
            "unrestricted_fusion": self.unrestricted_fusion(rng),
        }


def _index_of(space: Subspace, pool: Sequence[Subspace], eps: float) -> int:
    for k, t in enumerate(pool):
        if space.equals(t, eps):
            return k
    return -1


def boolean_restriction(assembly: Assembly, basis, eps: float | None = None) -> AxiomReport:
    """Restrict the domain to spans of subsets of an orthobasis of the total system-space.

    The restricted domain has 2^N - 1 objects. Besides the four axioms,
    meet/join/complement are computed with the subspace operations and
    checked to close over the domain and to satisfy the Boolean laws.
    """
    eps = resolve_eps(eps)
    basis = np.atleast_2d(np.asarray(basis, dtype=np.complex128))
    N = assembly.N
    if basis.shape != (N, assembly.dim):
        raise ValueError(f"basis must be {N} vectors of length {assembly.dim}")
    if np.max(np.abs(basis.conj() @ basis.T - np.eye(N))) > eps:
        raise ValueError("basis is not orthonormal")
    if not Subspace.from_orthonormal(basis).equals(assembly.omega_space, eps):
        raise ValueError("basis does not span the total system-space")

    masks = list(range(1, 1 << N))
    objs = [Subspace.from_orthonormal(basis[[i for i in range(N) if m >> i & 1]], assembly.dim) for m in masks]
    n = len(objs)
    leq = np.array([[contains(objs[j], objs[i], eps) for j in range(n)] for i in range(n)])
    model = FiniteModel(leq)
    report = AxiomReport("boolean", None, None, n, model.check())

    if n <= FiniteModel.FAMILY_LIMIT:
        families, _, fusion = model.fusion_targets()
        # object k has mask k + 1; the fusion of a family must be the span of the index union
        weights = np.array(masks, dtype=np.int64)
        member = ((families[:, None] >> np.arange(n)) & 1).astype(bool)
        unions = np.bitwise_or.reduce(np.where(member, weights[None, :], 0), axis=1)
        ok = bool(np.all(fusion + 1 == unions))
        report.verdicts["fusion_is_index_union"] = AxiomVerdict(ok, len(families))

    zero = Subspace.zero(assembly.dim)
    lattice = objs + [zero]
    L = len(lattice)
    meet_t = np.empty((L, L), dtype=np.int64)
    join_t = np.empty((L, L), dtype=np.int64)
    for i, j in itertools.product(range(L), repeat=2):
        meet_t[i, j] = _index_of(meet(lattice[i], lattice[j], eps), lattice, eps)
        join_t[i, j] = _index_of(join(lattice[i], lattice[j], eps), lattice, eps)
    closed = bool((meet_t >= 0).all() and (join_t >= 0).all())
    dist_ok = closed
    checked = 0
    if closed:
        for a, b, c in itertools.product(range(L), repeat=3):
            checked += 1
            if meet_t[a, join_t[b, c]] != join_t[meet_t[a, b], meet_t[a, c]]:
                dist_ok = False
                break
            if join_t[a, meet_t[b, c]] != meet_t[join_t[a, b], join_t[a, c]]:
                dist_ok = False
                break
    report.verdicts["boolean_distributivity"] = AxiomVerdict(dist_ok, checked, None, "both directions, closure over domain + zero")

    top = _index_of(assembly.omega_space, lattice, eps)
    comp_ok = top >= 0
    for i, x in enumerate(lattice):
        c = _index_of(ortho_complement_in(x, assembly.omega_space, eps), lattice, eps)
        if c < 0 or meet_t[i, c] != L - 1 or join_t[i, c] != top:
            comp_ok = False
            break
    report.verdicts["boolean_complement"] = AxiomVerdict(comp_ok, L)
    return report


# -- the finite-union model -------------------------------------------------


@dataclass(frozen=True, eq=False)
class UnionObject:
    """Finite irredundant union of nonzero subspaces (no part inside another)."""

    parts: tuple[Subspace, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("a union object needs at least one part")
        dims = {p.dim for p in self.parts}
        if len(dims) != 1:
            raise ValueError("parts live in different ambient spaces")
        for p in self.parts:
            if p.is_zero:
                raise ValueError("parts must be nonzero")
        for a, b in itertools.permutations(self.parts, 2):
            if contains(b, a):
                raise ValueError("parts must be pairwise incomparable")

    @classmethod
    def of(cls, parts: Iterable[Subspace], eps: float | None = None) -> "UnionObject":
        """Reduce to irredundant form, keeping the first of equal parts."""
        parts = [p for p in parts if not p.is_zero]
        keep: list[Subspace] = []
        for i, p in enumerate(parts):
            dominated = False
            for j, q in enumerate(parts):
                if i == j:
                    continue
                if contains(q, p, eps) and (not contains(p, q, eps) or j < i):
                    dominated = True
                    break
            if not dominated:
                keep.append(p)
        return cls(tuple(keep))

    @property
    def dim(self) -> int:
        return self.parts[0].dim


def union_parthood(U: UnionObject, V: UnionObject, eps: float | None = None) -> bool:
    """Every part of U lies inside some part of V.

    Over an infinite field a subspace inside a finite union of subspaces lies
    inside one of them, so this is inclusion of the point sets.
    """
    return all(any(contains(v, u, eps) for v in V.parts) for u in U.parts)


def union_overlaps(U: UnionObject, V: UnionObject, eps: float | None = None) -> bool:
    return any(overlaps(u, v, eps) for u in U.parts for v in V.parts)


def union_equal(U: UnionObject, V: UnionObject, eps: float | None = None) -> bool:
    return union_parthood(U, V, eps) and union_parthood(V, U, eps)


def union_fusion(family: Sequence[UnionObject], eps: float | None = None) -> UnionObject:
    family = list(family)
    if not family:
        raise ValueError("fusion of an empty family")
    if len({U.dim for U in family}) != 1:
        raise ValueError("union objects live in different ambient spaces")
    return UnionObject.of([p for U in family for p in U.parts], eps)


def union_atom(U: UnionObject) -> UnionObject:
    return UnionObject((Subspace.span(U.parts[0].generators[0]),))


def union_supplement_witness(U: UnionObject, V: UnionObject, eps: float | None = None) -> UnionObject:
    """An atom inside U overlapping no part of V, for U not part of V.

    Points on the moment curve ``sum_i t**i g_i`` of a part u of U are in
    general position, so at most ``dim(u) - 1`` of them fall in any proper
    subspace of u; trying enough of them avoids every ``u & v``.
    """
    for u in U.parts:
        if any(contains(v, u, eps) for v in V.parts):
            continue
        blockers = [meet(u, v, eps) for v in V.parts]
        m = u.rank
        for k in range(len(blockers) * max(m - 1, 0) + 1):
            t = 1.0 + k
            w = (t ** np.arange(m)) @ u.generators
            w = w / np.linalg.norm(w)
            if not any(b.contains_vector(w, eps) for b in blockers):
                return UnionObject((Subspace.span(w),))
    raise ValueError("U is part of V; no supplement witness exists")


def check_union_model(
    generators: Sequence[Subspace],
    seed: int = 0,
    probes: int = 16,
    eps: float | None = None,
) -> AxiomReport:
    """Axiom check on the finite-union sub-model generated by a few subspaces.

    The domain is the fusion closure of the generators together with an atom
    of each object and a supplement witness for every non-parthood pair.
    Parthood and overlap are the union-model relations, evaluated on
    subspaces; fusion existence is checked for every family of the
    fusion-closed core against every domain object and extra atom probes.
    """
    eps = resolve_eps(eps)
    gens = _dedupe([g for g in generators if not g.is_zero], eps)
    if not gens or len(gens) > 6:
        raise ValueError("need 1..6 nonzero generators")
    rng = np.random.default_rng(seed)
    d = gens[0].dim

    core: list[UnionObject] = []
    for k in range(1, len(gens) + 1):
        for combo in itertools.combinations(gens, k):
            U = UnionObject.of(combo, eps)
            if not any(union_equal(U, V, eps) for V in core):
                core.append(U)

    extra: list[UnionObject] = []

    def add(U: UnionObject):
        if not any(union_equal(U, V, eps) for V in core + extra):
            extra.append(U)

    for U in core:
        add(union_atom(U))
    for U, V in itertools.product(list(core), repeat=2):
        if not union_parthood(U, V, eps):
            add(union_supplement_witness(U, V, eps))
    domain = core + extra
    n = len(domain)
    report = AxiomReport("finite-union", seed, probes, n)

    leq = np.array([[union_parthood(domain[i], domain[j], eps) for j in range(n)] for i in range(n)])
    po = _partial_order_verdict_unions(leq, domain, eps)
    report.verdicts["partial_order"] = po

    checked, failure, example = 0, None, None
    for i, j in itertools.product(range(n), repeat=2):
        if leq[i, j]:
            continue
        Z = union_supplement_witness(domain[i], domain[j], eps)
        checked += 1
        if not union_parthood(Z, domain[i], eps) or union_overlaps(Z, domain[j], eps):
            failure = {"x": domain[i], "y": domain[j], "z": Z}
            break
        example = example or {"x": domain[i], "y": domain[j], "z": Z}
    report.verdicts["strong_supplementation"] = AxiomVerdict(failure is None, checked, failure or example)

    failure = None
    for U in domain:
        A = union_atom(U)
        if not union_parthood(A, U, eps) or A.parts[0].rank != 1:
            failure = {"x": U, "atom": A}
            break
    report.verdicts["atomicity"] = AxiomVerdict(failure is None, n, failure)

    # fusion existence: probes are the domain plus skew atoms and random atoms inside the generators' span
    probe_objs = list(domain)
    atoms = [p for U in domain for p in U.parts if p.rank == 1]
    for a, b in itertools.combinations(atoms, 2):
        if not a.equals(b, eps):
            probe_objs.append(UnionObject((skew_atom_witness(a, b, eps),)))
    span_all = join_all(gens, eps)
    for _ in range(probes):
        probe_objs.append(UnionObject((Subspace.random(d, 1, rng, within=span_all),)))

    # piece-level tables: every union object is a set of indices into `pieces`
    pieces: list[Subspace] = []

    def piece_index(p: Subspace) -> int:
        k = _index_of(p, pieces, eps)
        if k < 0:
            pieces.append(p)
            k = len(pieces) - 1
        return k

    dom_idx = [frozenset(piece_index(p) for p in U.parts) for U in domain]
    probe_idx = [frozenset(piece_index(p) for p in W.parts) for W in probe_objs]
    P = len(pieces)
    piece_leq = np.array([[contains(pieces[b], pieces[a], eps) for b in range(P)] for a in range(P)])
    piece_ov = np.array([[overlaps(pieces[a], pieces[b], eps) for b in range(P)] for a in range(P)])

    def signature(idx) -> np.ndarray:
        rows = piece_ov[sorted(idx)]
        return np.array([rows[:, sorted(w)].any() for w in probe_idx])

    def reduce(idx) -> frozenset:
        return frozenset(a for a in idx if not any(piece_leq[a, b] for b in idx if b != a))

    sig = np.array([signature(idx) for idx in dom_idx], dtype=bool)
    lookup = {idx: k for k, idx in enumerate(dom_idx)}
    checked, failure = 0, None
    m = len(core)
    for fam_mask in range(1, 1 << m):
        chosen = [i for i in range(m) if fam_mask >> i & 1]
        fused = reduce(frozenset().union(*(dom_idx[i] for i in chosen)))
        k = lookup.get(fused, -1)
        checked += 1
        if k < 0 or not np.array_equal(sig[k], sig[chosen].any(axis=0)):
            failure = {"family": [core[i] for i in chosen], "fusion": [pieces[a] for a in sorted(fused)]}
            break
    if failure is None:
        # families mixing atoms and witnesses, through the public operations
        pairs = list(itertools.combinations(range(n), 2))
        picks = rng.permutation(len(pairs))[:64] if len(pairs) > 64 else range(len(pairs))
        for t in picks:
            i, j = pairs[t]
            Z = union_fusion([domain[i], domain[j]], eps)
            got = np.array([union_overlaps(w, Z, eps) for w in probe_objs])
            checked += 1
            if not np.array_equal(got, sig[i] | sig[j]):
                failure = {"family": [domain[i], domain[j]], "fusion": Z}
                break
    report.verdicts["unrestricted_fusion"] = AxiomVerdict(
        failure is None, checked, failure, f"fusion condition tested against {len(probe_objs)} probes"
    )
    return report


def _partial_order_verdict_unions(leq: np.ndarray, domain: Sequence[UnionObject], eps: float) -> AxiomVerdict:
    n = len(domain)
    if not np.all(np.diagonal(leq)):
        return AxiomVerdict(False, n, None, "reflexivity fails")
    for i, j in itertools.combinations(range(n), 2):
        if leq[i, j] and leq[j, i]:
            same = len(domain[i].parts) == len(domain[j].parts) and all(
                any(p.equals(q, eps) for q in domain[j].parts) for p in domain[i].parts
            )
            if not same:
                return AxiomVerdict(False, n * n, {"x": domain[i], "y": domain[j]}, "antisymmetry fails")
    through = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
    if np.any(through & ~leq):
        i, k = np.argwhere(through & ~leq)[0]
        return AxiomVerdict(False, n**3, {"x": domain[i], "z": domain[k]}, "transitivity fails")
    return AxiomVerdict(True, n**3)
