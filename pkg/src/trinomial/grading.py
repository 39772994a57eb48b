"""Complexity-one torus grading of a factorial trinomial hypersurface.

The integral 2 x n matrix

    L = ( -l0 | l1 | 0  )
        ( -l0 | 0  | l2 )

kills exactly the weight lattice N of the acting torus: N = ker L is a
saturated sublattice of Z^n of rank n-2.  For a factorial input L is
surjective, the dual sequence splits, and the character lattice M is
identified with Hom(N, Z) through the dual basis of a kernel basis B.
Under this identification the grading degree of the variable ``T_k`` is
row ``k`` of ``B``, and the three monomials of f share one degree mu.

The section S (an integral left inverse of B) fixes the splitting used
by the polyhedral construction downstream; two valid sections differ by
an integral multiple of L, which is how the section-independence tests
produce deliberately different splittings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .core import (
    LinearTermError,
    NotFactorialError,
    Trinomial,
    block_gcds,
    is_factorial,
    linear_term_block,
)
from .linalg import IntMatrix


def build_L(t: Trinomial) -> IntMatrix:
    """The 2 x n weight-relation matrix with rows (-l0|l1|0) and (-l0|0|l2)."""
    row0 = [-x for x in t.l0] + list(t.l1) + [0] * len(t.l2)
    row1 = [-x for x in t.l0] + [0] * len(t.l1) + list(t.l2)
    return IntMatrix.from_rows([row0, row1])


@dataclass(frozen=True)
class GradingData:
    """Grading of the coordinate ring by the rank n-2 character lattice.

    ``degrees[k]`` (row k of B) is the degree of variable ``T_k``; ``mu``
    is the common degree of the three monomials of f, i.e. the degree of
    f itself.
    """

    L: IntMatrix
    B: IntMatrix
    S: IntMatrix
    degrees: tuple[tuple[int, ...], ...]
    mu: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.B.nrows

    @property
    def rank(self) -> int:
        return self.B.ncols

    def to_json(self) -> dict:
        return {
            "L": self.L.to_rows(),
            "B": self.B.to_rows(),
            "S": self.S.to_rows(),
            "degrees": [list(d) for d in self.degrees],
            "mu": list(self.mu),
        }


def grading_data(
    t: Trinomial,
    basis: Sequence[Sequence[int]] | None = None,
    section: Sequence[Sequence[int]] | None = None,
) -> GradingData:
    """Build the grading for a factorial trinomial.

    ``basis`` optionally pins the kernel basis (a list of kernel vectors
    spanning the full kernel lattice); by default the canonical
    column-Hermite basis is used.  ``section`` optionally pins S; it must
    satisfy ``S @ B == identity``.  Raises NotFactorialError when L is
    not surjective (torsion grading, out of scope here).
    """
    bad = linear_term_block(t)
    if bad is not None:
        raise LinearTermError(bad)
    if not is_factorial(t):
        raise NotFactorialError(block_gcds(t))
    L = build_L(t)
    canonical = linalg.kernel_basis(L)
    if basis is None:
        B = canonical
    else:
        B = IntMatrix.from_rows(basis).transpose()
        if B.shape != canonical.shape:
            raise ValueError(f"basis must consist of {canonical.ncols} vectors of length {t.n}")
        if not (L @ B).is_zero():
            raise ValueError("provided basis vectors are not all in the kernel")
        if not linalg.same_lattice(B, canonical):
            raise ValueError("provided vectors do not span the full kernel lattice")
    if section is None:
        S = linalg.section(B)
    else:
        S = IntMatrix.from_rows(section)
        if S @ B != IntMatrix.identity(B.ncols):
            raise ValueError("provided section does not invert the basis")
    degrees = tuple(B.row(k) for k in range(t.n))
    mu = _block_degree(t.l0, degrees[: len(t.l0)], B.ncols)
    mu1 = _block_degree(t.l1, degrees[len(t.l0) : len(t.l0) + len(t.l1)], B.ncols)
    mu2 = _block_degree(t.l2, degrees[len(t.l0) + len(t.l1) :], B.ncols)
    assert mu == mu1 == mu2, "the three monomial degrees must agree"
    assert linalg.is_surjective(B.transpose()), "degree map must be onto (effective grading)"
    return GradingData(L=L, B=B, S=S, degrees=degrees, mu=mu)


def _block_degree(
    exponents: Sequence[int], degs: Sequence[tuple[int, ...]], rank: int
) -> tuple[int, ...]:
    return tuple(sum(l * d[i] for l, d in zip(exponents, degs)) for i in range(rank))


def degree_of(a: Sequence[int], g: GradingData) -> tuple[int, ...]:
    """Degree of the monomial with exponent vector ``a``: sum a_k deg(T_k)."""
    if len(a) != g.n:
        raise ValueError(f"exponent vector length {len(a)} != {g.n}")
    if any(x < 0 for x in a):
        raise ValueError("exponent vector must be nonnegative")
    return tuple(sum(a[k] * g.degrees[k][i] for k in range(g.n)) for i in range(g.rank))


def torus_weights(g: GradingData) -> tuple[tuple[int, ...], ...]:
    """Per-variable weight rows of the diagonal torus action.

    Same data as the degrees: coordinate ``i`` of the torus scales
    variable ``k`` by the power ``B[k][i]``.
    """
    return g.degrees


def with_section(g: GradingData, c: Sequence[Sequence[int]]) -> GradingData:
    """Replace the section by ``S + C @ L`` (any integral C gives a valid one)."""
    cm = IntMatrix.from_rows(c)
    if cm.shape != (g.rank, 2):
        raise ValueError(f"C must be {g.rank} x 2")
    s2 = IntMatrix.from_rows(
        [
            [a + b for a, b in zip(s_row, cl_row)]
            for s_row, cl_row in zip(g.S.to_rows(), (cm @ g.L).to_rows())
        ]
    )
    assert s2 @ g.B == IntMatrix.identity(g.rank)
    return GradingData(L=g.L, B=g.B, S=s2, degrees=g.degrees, mu=g.mu)
