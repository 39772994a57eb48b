"""Independent brute-force verifiers for the graded structure.

Two cross-checks live here, deliberately built on different machinery
than the constructions they verify:

* ``count_monomials`` / ``graded_dim_oracle`` count lattice points in
  the fibers of the degree map by exact depth-first enumeration, giving
  the dimension of each graded piece of the coordinate ring without any
  divisor or support-function computation.

* ``bounded_lnd_search`` enumerates grading-homogeneous derivations with
  bounded-degree images whose coefficient vectors solve the exact linear
  system "f divides d(f)", and reports a basis of every homogeneous
  slice of the solution space flagged by the bounded nilpotency checker.
  This is a consistency oracle, not a completeness proof: locally
  nilpotent elements of the solution space need not be basis elements.

Fibers of the degree map are finite because no nonzero nonnegative
vector pairs to zero with every variable degree; this is rechecked per
instance by exact feasibility before any enumeration runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm

from . import linalg
from .core import NotFactorialError, Trinomial, block_gcds, build_f, is_factorial
from .grading import GradingData
from .polynomials import (
    Derivation,
    NilpotencyResult,
    SparsePoly,
    is_locally_nilpotent,
    monomials_up_to_degree,
)


@dataclass(frozen=True)
class GridSpec:
    """Test grid: all degrees ``sum c_k deg(T_k)`` with ``0 <= c_k <= c_max``."""

    c_max: int

    def __post_init__(self) -> None:
        if self.c_max < 0:
            raise ValueError("c_max must be nonnegative")


def grid_points(g: GradingData, spec: GridSpec) -> list[tuple[int, ...]]:
    """The grid's distinct lattice points, sorted; all lie in the weight cone."""
    points = set()
    for combo in product(range(spec.c_max + 1), repeat=g.n):
        points.add(
            tuple(sum(c * d[i] for c, d in zip(combo, g.degrees)) for i in range(g.rank))
        )
    return sorted(points)


@lru_cache(maxsize=None)
def _interior_point(g: GradingData) -> tuple[int, ...]:
    """Integer point y0 with <deg(T_k), y0> > 0 for every k.

    Take a strictly positive integer kernel vector x of L (built from the
    block structure read off L itself) and pull it through the section:
    y0 = S(x) has B y0 = x, which is the wanted positivity.  Runs the
    fiber-finiteness feasibility check first.
    """
    assert not linalg.nonneg_dependence_exists(
        [list(d) for d in g.degrees]
    ), "degree map has unbounded fibers; inconsistent grading data"
    row0, row1 = g.L.row(0), g.L.row(1)
    l0 = [-x for x in row0 if x < 0]
    l1 = [x for x in row0 if x > 0]
    l2 = [x for x in row1 if x > 0]
    s0 = sum(l0)
    x = [Fraction(1)] * len(l0)
    x += [Fraction(s0, len(l1) * l) for l in l1]
    x += [Fraction(s0, len(l2) * l) for l in l2]
    scale = lcm(*(f.denominator for f in x))
    xi = [int(f * scale) for f in x]
    assert g.L.mul_vector(xi) == (0, 0)
    return g.S.mul_vector(xi)


@lru_cache(maxsize=None)
def _fiber_functional(g: GradingData) -> tuple[int, ...]:
    """Positive weights x_k = <deg(T_k), y0>; each bounds a_k <= <m, y0> / x_k."""
    y0 = _interior_point(g)
    weights = tuple(sum(d[i] * y0[i] for i in range(g.rank)) for d in g.degrees)
    assert all(w > 0 for w in weights)
    return weights


def count_monomials(g: GradingData, m: tuple[int, ...]) -> int:
    """Number of monomials of degree exactly ``m``: lattice points of the fiber."""
    if len(m) != g.rank:
        raise ValueError(f"degree vector length {len(m)} != {g.rank}")
    return _count(g, tuple(int(x) for x in m))


@lru_cache(maxsize=None)
def _count(g: GradingData, m: tuple[int, ...]) -> int:
    weights = _fiber_functional(g)
    budget = sum(mi * yi for mi, yi in zip(m, _interior_point(g)))
    if budget < 0:
        return 0
    degrees = g.degrees
    rank = g.rank
    n = g.n

    def rec(k: int, residual: tuple[int, ...], budget: int) -> int:
        if budget == 0:
            return 1 if all(x == 0 for x in residual) else 0
        if k == n:
            return 0
        d = degrees[k]
        total = 0
        for a in range(budget // weights[k] + 1):
            total += rec(
                k + 1,
                tuple(residual[i] - a * d[i] for i in range(rank)),
                budget - a * weights[k],
            )
        return total

    return rec(0, m, budget)


def graded_dim_oracle(g: GradingData, m: tuple[int, ...]) -> int:
    """Dimension of the degree-m piece of the quotient ring, by enumeration.

    The defining polynomial is irreducible, hence a nonzerodivisor, so
    the relations in degree m are exactly f times degree m - mu:
    dim = count(m) - count(m - mu); counts outside the weight monoid
    are zero.
    """
    m = tuple(int(x) for x in m)
    below = tuple(a - b for a, b in zip(m, g.mu))
    return count_monomials(g, m) - count_monomials(g, below)


@dataclass(frozen=True)
class LndCandidate:
    """One basis element of a homogeneous slice of the solution space."""

    shift: tuple[int, ...]
    derivation: Derivation
    nilpotency: NilpotencyResult


def bounded_lnd_search(
    t: Trinomial,
    g: GradingData,
    degree_bound: int,
    nilpotency_bound: int | None = None,
) -> list[LndCandidate]:
    """Solve "f divides d(f)" over derivations with small images, slice by slice.

    Images range over polynomials of total degree at most ``degree_bound``.
    The solution space splits along the homogeneity shift; for each shift
    a canonical integer basis is reported, each element flagged by the
    bounded nilpotency test (default bound: 2 + the largest exponent).
    The zero derivation is never reported.
    """
    if not is_factorial(t):
        raise NotFactorialError(block_gcds(t))
    if nilpotency_bound is None:
        nilpotency_bound = 2 + max(t.exponents())
    n = t.n
    f = build_f(t)
    partials = [f.partial_derivative(k) for k in range(n)]
    monomials = monomials_up_to_degree(n, degree_bound)

    slices: dict[tuple[int, ...], list[tuple[int, tuple[int, ...]]]] = {}
    for k in range(n):
        dk = g.degrees[k]
        for a in monomials:
            da = tuple(
                sum(a[v] * g.degrees[v][i] for v in range(n)) for i in range(g.rank)
            )
            shift = tuple(x - y for x, y in zip(da, dk))
            slices.setdefault(shift, []).append((k, a))

    out: list[LndCandidate] = []
    for shift in sorted(slices):
        unknowns = slices[shift]
        remainders = []
        for k, a in unknowns:
            contribution = partials[k] * SparsePoly.monomial(n, a)
            remainders.append(contribution.divmod_single(f)[1])
        monomial_index: dict[tuple[int, ...], int] = {}
        for r in remainders:
            for exps, _ in r.terms():
                monomial_index.setdefault(exps, len(monomial_index))
        if monomial_index:
            rows = [[0] * len(unknowns) for _ in range(len(monomial_index))]
            for col, r in enumerate(remainders):
                for exps, coeff in r.terms():
                    assert coeff.denominator == 1
                    rows[monomial_index[exps]][col] = coeff.numerator
            system = linalg.IntMatrix.from_rows(rows)
            basis = linalg.kernel_basis(system)
        else:
            # no constraints: every coefficient vector works
            basis = linalg.IntMatrix.identity(len(unknowns))
        for col in range(basis.ncols):
            coeffs = basis.col(col)
            images = [SparsePoly.zero(n) for _ in range(n)]
            for (k, a), c in zip(unknowns, coeffs):
                if c:
                    images[k] = images[k] + SparsePoly.monomial(n, a, c)
            d = Derivation(images)
            assert not d.is_zero()
            out.append(
                LndCandidate(
                    shift=shift,
                    derivation=d,
                    nilpotency=is_locally_nilpotent(d, nilpotency_bound),
                )
            )
    return out
