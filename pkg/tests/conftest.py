"""Shared fixtures: frozen table data and corpus builders."""

import random

import pytest

from cuspsym import CycleWord, SymmetricStructure, canonicalize, find_reflections

# reference rows: multiplicity-12 cusps (left) whose duals (right) admit
# no equivariant pair
REFERENCE_FAILING_12 = [
    ((3, 10, 3, 4), (3, 3, 2, 2, 2, 2, 2, 2, 2, 3, 3, 2)),
    ((3, 8, 3, 6), (2, 3, 3, 2, 2, 2, 2, 2, 3, 3, 2, 2)),
    ((4, 8, 4, 4), (3, 2, 3, 2, 2, 2, 2, 2, 3, 2, 3, 2)),
    ((6, 4, 6, 4), (3, 2, 2, 2, 3, 2, 3, 2, 2, 2, 3, 2)),
    ((12, 3, 2, 3), (3, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 4)),
    ((10, 4, 2, 4), (2, 3, 2, 2, 2, 2, 2, 2, 2, 3, 2, 4)),
    ((6, 2, 6, 6), (2, 2, 2, 3, 2, 2, 2, 3, 2, 2, 2, 4)),
    ((4, 7, 2, 7), (2, 2, 2, 2, 3, 2, 3, 2, 2, 2, 2, 4)),
    ((3, 3, 8, 3, 3, 4), (3, 3, 3, 2, 2, 2, 2, 2, 3, 3, 3, 2)),
    ((3, 3, 6, 3, 3, 6), (2, 3, 3, 3, 2, 2, 2, 3, 3, 3, 2, 2)),
    ((3, 3, 2, 3, 3, 10), (3, 3, 2, 2, 2, 2, 2, 2, 2, 3, 3, 4)),
    ((6, 3, 2, 3, 6, 4), (3, 2, 2, 2, 3, 2, 3, 2, 2, 2, 3, 4)),
]

# minimal equivariant toric boundary cycles of length 12
MINIMAL_TORIC_12 = [
    (1, 2, 2, 2, 1, 2, 1, 2, 2, 2, 1, 6),
    (1, 2, 2, 2, 1, 4, 1, 2, 2, 2, 1, 4),
    (4, 1, 2, 2, 2, 0, 2, 2, 2, 1, 4, 2),
    (2, 2, 1, 4, 1, 2, 1, 4, 1, 2, 2, 2),
    (3, 2, 1, 3, 2, 0, 2, 3, 1, 2, 3, 2),
    (3, 1, 3, 1, 3, 0, 3, 1, 3, 1, 3, 2),
    (1, 3, 1, 3, 1, 2, 1, 3, 1, 3, 1, 4),
    (2, 1, 3, 2, 1, 2, 1, 2, 3, 1, 2, 4),
]

# short equivariant toric pair cycles, by length
SHORT_TORIC = {
    4: [(0, 0, 0, 0)],
    6: [(2, 1, 1, 0, 1, 1)],
    8: [(2, 1, 2, 1, 2, 1, 2, 1)],
    10: [
        (2, 3, 1, 2, 2, 0, 2, 2, 1, 3),
        (2, 1, 3, 1, 2, 2, 2, 1, 3, 1),
        (4, 1, 2, 2, 1, 2, 1, 2, 2, 1),
    ],
}

# the length-12 symmetric cycle absent from the reference table although it is
# smoothable and admits no equivariant pair (its dual is row (6,3,2,3,6,4)
# with the reflection arm reversed)
EXTRA_FAILING_CUSP = (2, 6, 3, 4, 3, 6)
EXTRA_FAILING_DUAL = (2, 2, 2, 3, 3, 2, 3, 3, 2, 2, 2, 4)


def dihedral_equal(a, b) -> bool:
    return canonicalize(CycleWord(tuple(a))) == canonicalize(CycleWord(tuple(b)))


def random_symmetric_cusp(rng: random.Random, max_n=12, max_entry=8) -> SymmetricStructure:
    """A random valid symmetric cusp, axis-normal labeling."""
    while True:
        n = 2 * rng.randint(1, max_n // 2)
        f1 = 2 * rng.randint(1, max_entry // 2)
        f2 = 2 * rng.randint(1, max_entry // 2)
        arm = [rng.randint(2, max_entry) for _ in range(n // 2 - 1)]
        word = (f1, *arm, f2, *reversed(arm))
        c = CycleWord(word)
        if all(v < 3 for v in word):
            continue
        axes = [a for a in find_reflections(c) if a.fixed[0] == 0]
        return SymmetricStructure(c, axes[0])


@pytest.fixture
def rng():
    return random.Random(20260810)
