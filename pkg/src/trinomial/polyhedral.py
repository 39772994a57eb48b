"""Polyhedral-divisor presentation of a factorial trinomial hypersurface.

The hypersurface with its complexity-one torus action is encoded by a
proper polyhedral divisor on the projective line,

    D = Delta_1 . {0} + Delta_2 . {1} + Delta_0 . {inf},

where the coefficient attached to block ``i`` is a polyhedron with tail
cone ``sigma = {y : <deg(T_k), y> >= 0 for all k}`` and vertices
``S(e_k) / l_k`` over the variables of that block.  Evaluating the
divisor at a character ``m`` in the weight cone gives a rational divisor
on the line whose space of global sections has dimension

    max(0, 1 + floor(h_1(m)) + floor(h_2(m)) + floor(h_0(m))),

with each support function the minimum of ``<m, .>`` over the vertices.
Floors are taken toward minus infinity; the per-point coefficients do go
negative.

The weight cone membership test (is ``m`` in the dual of sigma) runs on
the generators ``deg(T_k)`` directly, which avoids ever materializing a
vertex description of sigma.

Marker rays on the base: blocks 0, 1, 2 carry the primitive vectors
(-1,-1), (1,0), (0,1); every column of L is the block's exponent times
its marker, which pins down where each polyhedron sits and how it moves
when the section changes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import floor
from typing import Sequence

from . import linalg
from .core import NotFactorialError, Trinomial, block_gcds, is_factorial
from .grading import GradingData
from .linalg import fraction_str

RAY_MARKERS: tuple[tuple[int, int], ...] = ((-1, -1), (1, 0), (0, 1))
POINT_LABELS: tuple[str, str, str] = ("0", "1", "inf")
# block i's polyhedron sits at this point of the line
POINT_OF_BLOCK: tuple[str, str, str] = ("inf", "0", "1")


class NotPointedError(Exception):
    """The tail cone contains a line; impossible for valid grading data."""


class OutsideDualConeError(Exception):
    """Support functions are only defined on the weight cone."""

    def __init__(self, m: Sequence):
        super().__init__(f"{tuple(m)} is not in the weight cone")


@dataclass(frozen=True)
class SigmaCone:
    """Tail cone in H-representation; the normals are the variable degrees."""

    normals: tuple[tuple[int, ...], ...]
    dim: int

    def contains(self, y: Sequence[Fraction | int]) -> bool:
        return all(sum(Fraction(a) * Fraction(b) for a, b in zip(nr, y)) >= 0 for nr in self.normals)

    def dual_contains(self, m: Sequence[Fraction | int]) -> bool:
        """Membership of ``m`` in the weight cone spanned by the degrees."""
        return linalg.cone_membership(self.normals, m)

    def to_json(self) -> dict:
        return {"normals": [list(nr) for nr in self.normals], "dim": self.dim}


@dataclass(frozen=True)
class VertexOrigin:
    block: int
    position: int  # 1-based within the block
    var_index: int
    exponent: int


@dataclass(frozen=True)
class SigmaPolyhedron:
    """Vertices plus the common tail cone; origins say which variable made each vertex."""

    vertices: tuple[tuple[Fraction, ...], ...]
    tail: SigmaCone
    origins: tuple[tuple[VertexOrigin, ...], ...]

    def translate(self, offset: Sequence[Fraction | int]) -> "SigmaPolyhedron":
        off = tuple(Fraction(x) for x in offset)
        return replace(
            self,
            vertices=tuple(tuple(a + b for a, b in zip(v, off)) for v in self.vertices),
        )

    def to_json(self) -> dict:
        return {
            "vertices": [[fraction_str(x) for x in v] for v in self.vertices],
            "origin_variables": [
                [[o.block, o.position, o.var_index] for o in origin] for origin in self.origins
            ],
        }


@dataclass(frozen=True)
class PolyhedralDivisor:
    """The three-coefficient divisor on the projective line."""

    base: str
    at_zero: SigmaPolyhedron      # block 1
    at_one: SigmaPolyhedron       # block 2
    at_infinity: SigmaPolyhedron  # block 0
    cone: SigmaCone

    def entries(self) -> tuple[tuple[str, SigmaPolyhedron], ...]:
        return (("0", self.at_zero), ("1", self.at_one), ("inf", self.at_infinity))

    def polyhedron_of_block(self, i: int) -> SigmaPolyhedron:
        return {0: self.at_infinity, 1: self.at_zero, 2: self.at_one}[i]

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "entries": {label: poly.to_json() for label, poly in self.entries()},
            "tail_cone": self.cone.to_json(),
        }


def sigma_cone(g: GradingData) -> SigmaCone:
    """Tail cone {y : <deg(T_k), y> >= 0 for every variable k}."""
    snf = linalg.smith_form(g.B)
    if snf.rank() != g.rank:
        raise NotPointedError("degree normals do not span; tail cone contains a line")
    return SigmaCone(normals=g.degrees, dim=g.rank)


def build_divisor(t: Trinomial, g: GradingData) -> PolyhedralDivisor:
    """Vertices ``S(e_k)/l_k`` grouped per block, deduplicated, tails attached."""
    if not is_factorial(t):
        raise NotFactorialError(block_gcds(t))
    cone = sigma_cone(g)
    per_block: list[dict[tuple[Fraction, ...], list[VertexOrigin]]] = [{}, {}, {}]
    for i, j, k in t.variables():
        l = t.blocks[i][j - 1]
        col = g.S.col(k)
        # column k of L is the exponent times the block marker, by construction
        assert g.L.col(k) == tuple(l * x for x in RAY_MARKERS[i])
        vertex = tuple(Fraction(x, l) for x in col)
        per_block[i].setdefault(vertex, []).append(VertexOrigin(i, j, k, l))
    polys = [
        SigmaPolyhedron(
            vertices=tuple(block.keys()),
            tail=cone,
            origins=tuple(tuple(v) for v in block.values()),
        )
        for block in per_block
    ]
    return PolyhedralDivisor(
        base="P1", at_zero=polys[1], at_one=polys[2], at_infinity=polys[0], cone=cone
    )


def support_value(p: SigmaPolyhedron, m: Sequence[Fraction | int]) -> Fraction:
    """min over the vertices of <m, v>; defined only on the weight cone."""
    if not p.tail.dual_contains(m):
        raise OutsideDualConeError(m)
    mf = tuple(Fraction(x) for x in m)
    return min(sum(a * b for a, b in zip(mf, v)) for v in p.vertices)


def evaluate_divisor(
    d: PolyhedralDivisor, m: Sequence[Fraction | int]
) -> tuple[Fraction, Fraction, Fraction]:
    """Divisor coefficients of D(m) at the points 0, 1, inf (in that order)."""
    if not d.cone.dual_contains(m):
        raise OutsideDualConeError(m)
    return (
        support_value(d.at_zero, m),
        support_value(d.at_one, m),
        support_value(d.at_infinity, m),
    )


def graded_dim_ah(d: PolyhedralDivisor, m: Sequence[int]) -> int:
    """Dimension of the degree-m piece via sections of D(m) on the line.

    ``max(0, 1 + sum of floors)``; floors go toward minus infinity.
    Requires an integral ``m`` in the weight cone.
    """
    if any(Fraction(x).denominator != 1 for x in m):
        raise ValueError(f"{tuple(m)} is not a lattice point")
    h = evaluate_divisor(d, m)
    return max(0, 1 + sum(floor(x) for x in h))


@dataclass(frozen=True)
class PropernessCheck:
    m: tuple[int, ...]
    total_degree: Fraction
    strict: bool
    ok: bool


@dataclass(frozen=True)
class PropernessReport:
    checks: tuple[PropernessCheck, ...]
    passed: bool

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {
                    "m": list(c.m),
                    "total_degree": fraction_str(c.total_degree),
                    "required": "> 0" if c.strict else ">= 0",
                    "ok": c.ok,
                }
                for c in self.checks
            ],
        }


def check_properness(d: PolyhedralDivisor) -> PropernessReport:
    """Finite certificate that every D(m) has the right degree sign.

    The total degree of D(m) is superadditive and positively homogeneous
    in m, so nonnegativity at each cone generator deg(T_k) gives
    nonnegativity (semiampleness on a curve) on the whole weight cone,
    and positivity at the sum of all generators gives positivity
    (bigness) on its relative interior.  A failed check flags internal
    inconsistency: genuine inputs always pass.
    """
    checks = []
    for deg in d.cone.normals:
        total = sum(evaluate_divisor(d, deg))
        checks.append(PropernessCheck(m=deg, total_degree=total, strict=False, ok=total >= 0))
    interior = tuple(sum(col) for col in zip(*d.cone.normals))
    total = sum(evaluate_divisor(d, interior))
    checks.append(PropernessCheck(m=interior, total_degree=total, strict=True, ok=total > 0))
    return PropernessReport(checks=tuple(checks), passed=all(c.ok for c in checks))


@dataclass(frozen=True)
class VertexIntegrality:
    point: str
    vertex: tuple[Fraction, ...]
    integral: bool
    exponents: tuple[int, ...]
    matches_exponent_rule: bool  # integral exactly when the generating exponent is 1


@dataclass(frozen=True)
class IntegralityReport:
    entries: tuple[VertexIntegrality, ...]
    any_integral: dict[str, bool]
    consistent: bool

    def to_json(self) -> dict:
        return {
            "vertices": [
                {
                    "point": e.point,
                    "vertex": [fraction_str(x) for x in e.vertex],
                    "integral": e.integral,
                    "exponents": list(e.exponents),
                    "matches_exponent_rule": e.matches_exponent_rule,
                }
                for e in self.entries
            ],
            "any_integral": dict(self.any_integral),
            "consistent": self.consistent,
        }


def vertex_integrality(d: PolyhedralDivisor) -> IntegralityReport:
    """Integrality of every vertex, with the exponent-1 equivalence check."""
    entries = []
    any_integral = {label: False for label in POINT_LABELS}
    for label, poly in d.entries():
        for vertex, origins in zip(poly.vertices, poly.origins):
            integral = all(x.denominator == 1 for x in vertex)
            exponents = tuple(o.exponent for o in origins)
            expected = any(l == 1 for l in exponents)
            entries.append(
                VertexIntegrality(
                    point=label,
                    vertex=vertex,
                    integral=integral,
                    exponents=exponents,
                    matches_exponent_rule=integral == expected,
                )
            )
            if integral:
                any_integral[label] = True
    return IntegralityReport(
        entries=tuple(entries),
        any_integral=any_integral,
        consistent=all(e.matches_exponent_rule for e in entries),
    )


@dataclass(frozen=True)
class ObstructionResult:
    obstructed: bool
    integral_points: tuple[str, ...]

    def to_json(self) -> dict:
        return {"obstructed": self.obstructed, "integral_points": list(self.integral_points)}


def horizontal_obstruction(d: PolyhedralDivisor) -> ObstructionResult:
    """Vertex-integrality obstruction to horizontal homogeneous derivations.

    Representing one needs a chosen vertex per point of the line with all
    but two of the choices integral.  Unmarked points carry the tail cone
    whose vertex 0 is integral, so the choice can only fail at 0, 1, inf:
    if none of the three coefficients has an integral vertex, no
    admissible choice exists and no horizontal homogeneous locally
    nilpotent derivation does either.
    """
    report = vertex_integrality(d)
    points = tuple(label for label in POINT_LABELS if report.any_integral[label])
    return ObstructionResult(obstructed=not points, integral_points=points)


def vertex_is_redundant(p: SigmaPolyhedron, index: int) -> bool:
    """Debug check: is vertex ``index`` a convex combination of the others plus tail?

    The vertices are taken straight from the section columns and are
    always genuine; this exists to verify that claim, not to prune.
    """
    others = [v for i, v in enumerate(p.vertices) if i != index]
    target = p.vertices[index]
    dim = p.tail.dim
    nl = len(others)
    nvars = nl + dim  # lambda weights, then the tail displacement s
    rows: list[list[Fraction | int]] = []
    for i in range(nl):
        rows.append([1 if j == i else 0 for j in range(nvars)] + [0])
    rows.append([1] * nl + [0] * dim + [-1])
    rows.append([-1] * nl + [0] * dim + [1])
    for c in range(dim):
        eq: list[Fraction | int] = [others[i][c] for i in range(nl)]
        eq += [1 if s == c else 0 for s in range(dim)]
        rows.append(eq + [-target[c]])
        rows.append([-x for x in eq] + [target[c]])
    for nr in p.tail.normals:
        rows.append([0] * nl + list(nr) + [0])
    return linalg.fm_feasible(rows, nvars)
