import itertools
from math import sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermereo.exterior import AntiSymTensor, decomposable_state, phase_equal, wedge
from fermereo.lattice import (
    contains,
    fusion_of_set,
    fusion_violations,
    join,
    join_all,
    meet,
    ortho_complement_in,
    overlaps,
    skew_atom_witness,
    supplement_witness,
)
from fermereo.subspace import Subspace

from . import oracles

S2 = 1 / sqrt(2)


def coord(d, *idx):
    return Subspace.coordinate(d, idx)


def span(*vecs):
    return Subspace.span(np.array(vecs, dtype=float))


def random_space(rng, d):
    # mix coordinate, random and zero-rank-adjacent cases
    kind = rng.integers(0, 3)
    k = int(rng.integers(1, d + 1))
    if kind == 0:
        return Subspace.coordinate(d, rng.choice(d, size=k, replace=False))
    if kind == 1:
        return Subspace.random(d, k, rng)
    # a random subspace sharing a coordinate direction, so meets are nontrivial
    base = Subspace.coordinate(d, [int(rng.integers(d))])
    return join(base, Subspace.random(d, max(k - 1, 1), rng))


triples = st.tuples(st.integers(0, 2**32 - 1), st.integers(1, 5))


# -- examples -----------------------------------------------------------


def test_meet_examples():
    assert meet(coord(3, 0, 1), coord(3, 1, 2)).equals(coord(3, 1))
    assert meet(coord(4, 0, 1), coord(4, 2, 3)).is_zero
    got = meet(coord(3, 0, 1), span([S2, S2, 0], [0, 0, 1]))
    assert got.equals(span([1, 1, 0]))


def test_meet_skew_against_eigen_oracle():
    x, y = coord(3, 0, 1), span([S2, S2, 0], [0, 0, 1])
    w, v = np.linalg.eigh(x.projector + y.projector)
    oracle = Subspace.from_orthonormal(v[:, np.abs(w - 2) < 1e-9].T, 3)
    assert meet(x, y).equals(oracle)


def test_join_examples():
    assert join(coord(3, 0), coord(3, 1)).equals(coord(3, 0, 1))
    x = Subspace.random(4, 2, np.random.default_rng(1))
    assert join(x, x).equals(x)
    got = join(coord(3, 0), span([S2, S2, 0]))
    assert got.equals(coord(3, 0, 1)) and got.rank == 2


def test_ortho_complement_examples():
    assert ortho_complement_in(coord(3, 0), coord(3, 0, 1)).equals(coord(3, 1))
    amb = coord(3, 0, 1)
    assert ortho_complement_in(amb, amb).is_zero
    got = ortho_complement_in(span([S2, S2, 0]), amb)
    assert got.equals(span([1, -1, 0]))
    with pytest.raises(ValueError):
        ortho_complement_in(coord(3, 2), amb)


def test_contains_examples():
    assert contains(coord(3, 0, 1), coord(3, 0))
    assert not contains(coord(3, 0), coord(3, 0, 1))
    assert contains(coord(3, 0, 1), span([S2, S2, 0]))


def test_supplement_examples():
    assert supplement_witness(coord(3, 0, 1), coord(3, 1, 2)).equals(coord(3, 0))
    x = coord(3, 0)
    assert supplement_witness(x, coord(3, 1)).equals(x)
    assert supplement_witness(coord(3, 0, 1), coord(3, 0)).equals(coord(3, 1))
    with pytest.raises(ValueError):
        supplement_witness(coord(3, 0), coord(3, 0, 1))


def test_skew_atom_examples():
    x, y = coord(2, 0), coord(2, 1)
    w = skew_atom_witness(x, y)
    assert w.equals(span([1, 1]))
    assert not contains(x, w) and not contains(y, w)
    assert overlaps(w, join(x, y))

    y2 = span([S2, S2, 0])
    w2 = skew_atom_witness(coord(3, 0), y2)
    assert w2.rank == 1 and contains(join(coord(3, 0), y2), w2)
    assert not w2.equals(coord(3, 0)) and not w2.equals(y2)

    with pytest.raises(ValueError):
        skew_atom_witness(x, x)
    with pytest.raises(ValueError):
        skew_atom_witness(coord(3, 0, 1), coord(3, 2))


def test_fusion_examples():
    big = coord(3, 0, 1)
    assert fusion_of_set([coord(3, 0), big]).equals(big)
    assert fusion_of_set([coord(2, 0), coord(2, 1)]) is None
    x = coord(3, 2)
    assert fusion_of_set([x]).equals(x)
    with pytest.raises(ValueError):
        fusion_of_set([])


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        meet(coord(2, 0), coord(3, 0))


# -- lattice laws -------------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(triples)
def test_lattice_laws(args):
    seed, d = args
    rng = np.random.default_rng(seed)
    x, y, z = (random_space(rng, d) for _ in range(3))
    assert meet(x, y).equals(meet(y, x))
    assert join(x, y).equals(join(y, x))
    assert meet(meet(x, y), z).equals(meet(x, meet(y, z)))
    assert join(join(x, y), z).equals(join(x, join(y, z)))
    assert meet(x, join(x, y)).equals(x)
    assert join(x, meet(x, y)).equals(x)


@settings(max_examples=80, deadline=None)
@given(triples)
def test_containment_is_partial_order(args):
    seed, d = args
    rng = np.random.default_rng(seed)
    z = random_space(rng, d)
    y = Subspace.random(d, int(rng.integers(1, z.rank + 1)), rng, within=z)
    x = Subspace.random(d, int(rng.integers(1, y.rank + 1)), rng, within=y)
    assert contains(x, x)
    assert contains(y, x) and contains(z, y) and contains(z, x)
    if contains(x, y):
        assert x.equals(y)
    other = random_space(rng, d)
    if contains(other, z) and contains(z, other):
        assert other.equals(z)


def test_distributivity_fails_on_spin_triple():
    up, down = coord(2, 0), coord(2, 1)
    right = span([S2, S2])
    lhs = meet(right, join(up, down))
    rhs = join(meet(right, up), meet(right, down))
    assert lhs.equals(right)
    assert rhs.is_zero


@settings(max_examples=60, deadline=None)
@given(triples)
def test_orthomodularity(args):
    seed, d = args
    rng = np.random.default_rng(seed)
    y = random_space(rng, d)
    x = Subspace.random(d, int(rng.integers(1, y.rank + 1)), rng, within=y)
    xc = ortho_complement_in(x, Subspace.full(d))
    assert join(x, meet(xc, y)).equals(y)


def test_complement_laws(rng):
    for _ in range(50):
        d = int(rng.integers(1, 6))
        amb = random_space(rng, d)
        x = Subspace.random(d, int(rng.integers(1, amb.rank + 1)), rng, within=amb)
        c = ortho_complement_in(x, amb)
        assert join(x, c).equals(amb)
        assert meet(x, c).is_zero


# -- witnesses ----------------------------------------------------------


def test_supplement_witness_postconditions():
    rng = np.random.default_rng(500)
    done = 0
    while done < 500:
        d = int(rng.integers(2, 6))
        x, y = random_space(rng, d), random_space(rng, d)
        if contains(y, x):
            continue
        z = supplement_witness(x, y)
        assert contains(x, z)
        assert not z.is_zero
        assert meet(z, y).is_zero
        done += 1


def test_fusion_violations_detects_skew_atom():
    x, y = coord(2, 0), coord(2, 1)
    w = skew_atom_witness(x, y)
    for candidate in (x, y, join(x, y)):
        assert fusion_violations(candidate, [x, y], [x, y, w])


# -- fusion against the probing oracle ----------------------------------


@pytest.mark.parametrize("d", [1, 2, 3])
def test_fusion_matches_oracle_on_coordinate_families(d):
    rng = np.random.default_rng(d)
    spaces = [coord(d, *idx) for k in range(1, d + 1) for idx in itertools.combinations(range(d), k)]
    for size in range(1, len(spaces) + 1):
        for family in itertools.combinations(spaces, size):
            got = fusion_of_set(family)
            expect = oracles.fusion_oracle(family, rng)
            assert (got is None) == (expect is None)
            if got is not None:
                assert got.equals(expect)


def test_fusion_matches_oracle_on_random_families():
    rng = np.random.default_rng(404)
    for _ in range(100):
        size = int(rng.integers(1, 4))
        family = [random_space(rng, 4) for _ in range(size)]
        if rng.random() < 0.3:
            # plant a maximum element
            family.append(join_all(family))
        got = fusion_of_set(family)
        expect = oracles.fusion_oracle(family, rng)
        assert (got is None) == (expect is None)
        if got is not None:
            assert got.equals(expect)


# -- fermionic fusion and the wedge --------------------------------------


def test_join_state_is_wedge(rng):
    for _ in range(30):
        d = int(rng.integers(2, 6))
        pair = Subspace.random(d, 2, rng)
        x = Subspace.span(pair.generators[0], d)
        y = Subspace.span(pair.generators[1], d)
        a = AntiSymTensor.from_vector(x.generators[0])
        b = AntiSymTensor.from_vector(y.generators[0])
        assert phase_equal(decomposable_state(join(x, y)), wedge(a, b))
