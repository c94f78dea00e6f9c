"""Exact 2x2 integer matrices and lattice data for the quotient construction.

Everything is computed in the lattice basis (v_0, v_1) seeded by the boundary
recursion; only the mod-2 classes needed to pick an admissible translation are
moved to the eigenbasis (v_0, u_0) of the involution, where the "first
coordinate odd" requirement is visible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cycles import CycleWord, SymmetricStructure, require_valid_cusp

__all__ = [
    "Mat2Z",
    "InvolutionDatum",
    "companion",
    "matrix_of_cycle",
    "is_hyperbolic",
    "check_identity_mod2",
    "boundary_lattice_vectors",
    "symmetric_word",
    "build_involution_datum",
]

Vec = tuple[int, int]


@dataclass(frozen=True)
class Mat2Z:
    """Row-major 2x2 integer matrix."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def identity(cls) -> "Mat2Z":
        return cls(1, 0, 0, 1)

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, o: "Mat2Z") -> "Mat2Z":
        return Mat2Z(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def apply(self, v: Vec) -> Vec:
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def inverse(self) -> "Mat2Z":
        det = self.det()
        if det == 1:
            return Mat2Z(self.d, -self.b, -self.c, self.a)
        if det == -1:
            return Mat2Z(-self.d, self.b, self.c, -self.a)
        raise ValueError(f"matrix with det {det} is not invertible over Z")

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def companion(e: int) -> Mat2Z:
    return Mat2Z(0, -1, 1, e)


def matrix_of_cycle(c: CycleWord, start: int = 0) -> Mat2Z:
    """Product of the companion factors [[0,-1],[1,e_i]] in word order from start."""
    require_valid_cusp(c)
    m = Mat2Z.identity()
    for i in range(len(c)):
        m = m @ companion(c[start + i])
    return m


def is_hyperbolic(m: Mat2Z) -> bool:
    """True iff |trace| > 2.  Only meaningful on SL(2,Z); requires det = 1."""
    if m.det() != 1:
        raise ValueError(f"hyperbolicity needs det 1, got {m.det()}")
    return abs(m.trace()) > 2


def check_identity_mod2(m: Mat2Z) -> bool:
    return (m.a % 2, m.b % 2, m.c % 2, m.d % 2) == (1, 0, 0, 1)


def boundary_lattice_vectors(c: CycleWord, count: int) -> list[Vec]:
    """v_0 = (1,0), v_1 = (0,1), v_{i+1} = e_i * v_i - v_{i-1} with e_i = c[i-1].

    With A = matrix_of_cycle(c) the recursion satisfies A v_i = v_{i+n}.
    """
    require_valid_cusp(c)
    if count < 2:
        raise ValueError("need at least the two basis vectors")
    v: list[Vec] = [(1, 0), (0, 1)]
    for i in range(1, count - 1):
        e = c[i - 1]
        v.append((e * v[i][0] - v[i - 1][0], e * v[i][1] - v[i - 1][1]))
    return v


def symmetric_word(sym: SymmetricStructure) -> CycleWord:
    """Relabel so the word reads (e_1, ..., e_n) with e_n the first fixed entry.

    The word then satisfies e_i = e_{n-i} with e_{n/2} and e_n even, the
    labeling under which the companion product is congruent to the identity
    mod 2 and the involution matrix acts as v_i -> v_{-i}.
    """
    f1 = sym.axis.fixed[0]
    return sym.cycle.rotated(f1 + 1)


@dataclass(frozen=True)
class InvolutionDatum:
    """Matrices A, B and translation classes for the involution on the germ.

    Mod-2 classes are coordinates in the eigenbasis (v_0, u_0); admissible
    translations are the classes of 2t that avoid 0, u_0 and u_{n/2}.
    """

    A: Mat2Z
    B: Mat2Z
    u0_mod2: tuple[int, int]
    u_half_mod2: tuple[int, int]
    t_candidates: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.B @ self.B != Mat2Z.identity():
            raise ValueError("B is not an involution")
        if self.B @ self.A != self.A.inverse() @ self.B:
            raise ValueError("B A != A^-1 B")
        excluded = {(0, 0), self.u0_mod2, self.u_half_mod2}
        expected = tuple(sorted({(0, 0), (0, 1), (1, 0), (1, 1)} - excluded))
        if self.t_candidates != expected:
            raise ValueError("t_candidates is not the complement of the excluded classes")
        if not self.t_candidates or len(self.t_candidates) > 2:
            raise ValueError("t_candidates must have one or two elements")
        if any(t[0] != 1 for t in self.t_candidates):
            raise ValueError("every admissible translation must have odd first coordinate")


def build_involution_datum(sym: SymmetricStructure) -> InvolutionDatum:
    """Construct A, B = [[1, e_n],[0,-1]] and the admissible translation classes."""
    n = len(sym.cycle)
    require_valid_cusp(sym.cycle)
    w = symmetric_word(sym)
    e_n = w[n - 1]
    e_half = w[n // 2 - 1] if n >= 2 else e_n
    A = matrix_of_cycle(w)
    B = Mat2Z(1, e_n, 0, -1)
    v = boundary_lattice_vectors(w, n // 2 + 2)
    h = e_n // 2

    def eig_mod2(p: int, q: int) -> tuple[int, int]:
        # (v_0, v_1) coordinates (p, q) become (p + q*e_n/2, q) in (v_0, u_0)
        return ((p + q * h) % 2, q % 2)

    u0 = (-h, 1)
    vh, vh1 = v[n // 2], v[n // 2 + 1]
    u_half = ((e_half // 2) * vh[0] + vh1[0], (e_half // 2) * vh[1] + vh1[1])
    u0_mod2 = eig_mod2(*u0)
    u_half_mod2 = eig_mod2(*u_half)
    cands = tuple(sorted({(0, 0), (0, 1), (1, 0), (1, 1)} - {(0, 0), u0_mod2, u_half_mod2}))
    return InvolutionDatum(A, B, u0_mod2, u_half_mod2, cands)
