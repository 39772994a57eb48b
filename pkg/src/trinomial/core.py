"""Trinomial hypersurface input type and the top-level verdicts.

A trinomial hypersurface is the zero set of

    f = T0^l0 + T1^l1 + T2^l2

where each of the three blocks contributes one monomial ``Ti^li =
prod_j Tij^lij`` in its own variables.  The verdicts decided here:

* factoriality - the coordinate ring is a UFD iff the three block gcds
  are pairwise coprime (assuming no linear term);
* rigidity - a factorial trinomial hypersurface admits no nonzero
  locally nilpotent derivation iff every exponent is at least 2, and
  when some exponent is 1 an explicit derivation witnesses non-rigidity;
* cylinders - for a homogeneous factorial trinomial, the projective
  hypersurface contains no cylinder iff every exponent is at least 2.

Theorem-scope failures (linear term, non-factorial input) are reported
through verdict channels rather than exceptions so batch runs never
abort; the low-level accessors raise instead.

Variable convention used across the whole package: variables are named
``Tij`` with block ``i`` in {0,1,2} and 1-based position ``j``; the
global 0-based index ``k`` runs through the blocks in order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Iterator

from .polynomials import SparsePoly


class LinearTermError(Exception):
    """A block is a single variable with exponent 1 (the hypersurface is an affine space)."""

    def __init__(self, block: int):
        self.block = block
        super().__init__(f"block {block} is a linear term")


class NotFactorialError(Exception):
    """The block gcds are not pairwise coprime; the construction needs a factorial input."""

    def __init__(self, gcds: tuple[int, int, int]):
        self.gcds = gcds
        super().__init__(f"not factorial: block gcds {gcds} are not pairwise coprime")


@dataclass(frozen=True)
class Trinomial:
    """Exponent data of ``T0^l0 + T1^l1 + T2^l2``; the entire input."""

    l0: tuple[int, ...]
    l1: tuple[int, ...]
    l2: tuple[int, ...]

    def __post_init__(self) -> None:
        for name in ("l0", "l1", "l2"):
            block = tuple(int(x) for x in getattr(self, name))
            object.__setattr__(self, name, block)
            if not block:
                raise ValueError(f"{name} is empty; every block needs at least one variable")
            if any(x < 1 for x in block):
                raise ValueError(f"{name}={block} contains a non-positive exponent")

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        return (self.l0, self.l1, self.l2)

    @property
    def block_sizes(self) -> tuple[int, int, int]:
        return (len(self.l0), len(self.l1), len(self.l2))

    @property
    def n(self) -> int:
        return len(self.l0) + len(self.l1) + len(self.l2)

    def exponents(self) -> tuple[int, ...]:
        """All exponents in global variable order."""
        return self.l0 + self.l1 + self.l2

    def variables(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(block, position, global_index)`` with 1-based positions."""
        k = 0
        for i, block in enumerate(self.blocks):
            for j in range(1, len(block) + 1):
                yield (i, j, k)
                k += 1

    def block_of(self, k: int) -> tuple[int, int]:
        """Block and 1-based position of global variable ``k``."""
        for i, block in enumerate(self.blocks):
            if k < len(block):
                return (i, k + 1)
            k -= len(block)
        raise IndexError(k)

    def variable_names(self) -> list[str]:
        return [f"T{i}{j}" for i, j, _ in self.variables()]

    def to_json(self) -> dict:
        return {"l0": list(self.l0), "l1": list(self.l1), "l2": list(self.l2)}

    @classmethod
    def from_json(cls, obj: dict) -> "Trinomial":
        missing = {"l0", "l1", "l2"} - set(obj)
        if missing:
            raise ValueError(f"missing keys: {sorted(missing)}")
        return cls(tuple(obj["l0"]), tuple(obj["l1"]), tuple(obj["l2"]))


def linear_term_block(t: Trinomial) -> int | None:
    """Index of a linear-term block, or None when the input is admissible.

    A block is a linear term iff it is a single variable with exponent 1;
    then the hypersurface is isomorphic to an affine space and every
    theorem-level verdict refuses it.
    """
    for i, block in enumerate(t.blocks):
        if len(block) == 1 and block[0] == 1:
            return i
    return None


def block_gcds(t: Trinomial) -> tuple[int, int, int]:
    d = []
    for block in t.blocks:
        g = 0
        for x in block:
            g = gcd(g, x)
        d.append(g)
    return (d[0], d[1], d[2])


def is_factorial(t: Trinomial) -> bool:
    """Pairwise coprimality of the block gcds.

    Raises LinearTermError for a linear-term input, where the criterion
    does not apply.
    """
    bad = linear_term_block(t)
    if bad is not None:
        raise LinearTermError(bad)
    d0, d1, d2 = block_gcds(t)
    return gcd(d0, d1) == 1 and gcd(d0, d2) == 1 and gcd(d1, d2) == 1


def is_homogeneous(t: Trinomial) -> bool:
    """True iff the three block exponent sums agree (f is a projective form)."""
    s0, s1, s2 = (sum(b) for b in t.blocks)
    return s0 == s1 == s2


def min_exponent(t: Trinomial) -> int:
    return min(t.exponents())


def unit_positions(t: Trinomial) -> list[tuple[int, int]]:
    """All ``(block, position)`` pairs with exponent exactly 1."""
    return [(i, j) for i, j, k in t.variables() if t.blocks[i][j - 1] == 1]


class RigidityVerdict(Enum):
    RIGID = "Rigid"
    NOT_RIGID = "NotRigid"
    OUT_OF_THEOREM_SCOPE = "OutOfTheoremScope"


@dataclass(frozen=True)
class RigidityCertificate:
    """Rigidity verdict with its supporting facts.

    For NotRigid, ``unit_position`` is the handle for the explicit
    derivation witness (see ``derivations.lemma_derivation``).  For
    OutOfTheoremScope, ``scope_reason`` says which hypothesis failed.
    """

    verdict: RigidityVerdict
    reasons: tuple[str, ...]
    unit_position: tuple[int, int] | None = None
    scope_reason: str | None = None

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value, "reasons": list(self.reasons)}
        if self.unit_position is not None:
            out["unit_position"] = list(self.unit_position)
        if self.scope_reason is not None:
            out["scope_reason"] = self.scope_reason
        return out


_VERTICAL_FACT = (
    "vertical type: a grading-homogeneous locally nilpotent derivation that kills the "
    "torus-invariant rational functions must annihilate each of the three defining "
    "monomials, hence each variable, so it is zero"
)
_HORIZONTAL_FACT = (
    "horizontal type: every vertex of the three polyhedral-divisor coefficients on the "
    "projective line is non-integral (all exponents are at least 2), so no admissible "
    "vertex choice exists; see the vertex-integrality report"
)


def is_rigid(t: Trinomial) -> RigidityCertificate:
    """Decide rigidity of the hypersurface, with reasons.

    Rigid iff factorial with every exponent at least 2.  With some
    exponent 1 the certificate points at the explicit derivation
    witnessing a nontrivial additive-group action.  Linear-term and
    non-factorial inputs fall outside the decided class.
    """
    bad = linear_term_block(t)
    if bad is not None:
        return RigidityCertificate(
            verdict=RigidityVerdict.OUT_OF_THEOREM_SCOPE,
            reasons=(
                f"block {bad} is a linear term, so the hypersurface is an affine space;"
                " the factorial-trinomial criterion does not apply",
            ),
            scope_reason=f"HasLinearTerm({bad})",
        )
    if not is_factorial(t):
        return RigidityCertificate(
            verdict=RigidityVerdict.OUT_OF_THEOREM_SCOPE,
            reasons=(
                f"block gcds {block_gcds(t)} are not pairwise coprime, so the coordinate"
                " ring is not a UFD; rigidity of non-factorial trinomials is not decided"
                " here",
            ),
            scope_reason="NotFactorial",
        )
    if min_exponent(t) >= 2:
        return RigidityCertificate(
            verdict=RigidityVerdict.RIGID,
            reasons=(
                "factorial and every exponent is at least 2",
                _VERTICAL_FACT,
                _HORIZONTAL_FACT,
            ),
        )
    i, j = unit_positions(t)[0]
    return RigidityCertificate(
        verdict=RigidityVerdict.NOT_RIGID,
        reasons=(
            f"exponent 1 at block {i}, position {j}: an explicit locally nilpotent"
            " derivation moves the hypersurface (see the derivation report)",
        ),
        unit_position=(i, j),
    )


class CylinderKind(Enum):
    NO_CYLINDER = "NoCylinder"
    HAS_CYLINDER = "HasCylinder"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class CylinderVerdict:
    kind: CylinderKind
    reason: str | None = None

    def to_json(self) -> dict:
        out: dict = {"verdict": self.kind.value}
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def cylinder_verdict(t: Trinomial) -> CylinderVerdict:
    """Cylinder existence in the projective hypersurface cut out by f.

    Decided only for homogeneous factorial trinomials without linear
    term, where absence of cylinders is equivalent to rigidity of the
    affine cone, hence to all exponents being at least 2.
    """
    bad = linear_term_block(t)
    if bad is not None:
        return CylinderVerdict(CylinderKind.NOT_APPLICABLE, f"linear term in block {bad}")
    if not is_homogeneous(t):
        sums = tuple(sum(b) for b in t.blocks)
        return CylinderVerdict(
            CylinderKind.NOT_APPLICABLE, f"not homogeneous: block degrees {sums} differ"
        )
    if not is_factorial(t):
        return CylinderVerdict(
            CylinderKind.NOT_APPLICABLE, f"not factorial: block gcds {block_gcds(t)}"
        )
    if min_exponent(t) >= 2:
        return CylinderVerdict(CylinderKind.NO_CYLINDER)
    return CylinderVerdict(CylinderKind.HAS_CYLINDER)


def build_f(t: Trinomial) -> SparsePoly:
    """The defining polynomial: three coefficient-1 monomials, one per block."""
    n = t.n
    terms = {}
    offset = 0
    for block in t.blocks:
        exps = [0] * n
        for j, l in enumerate(block):
            exps[offset + j] = l
        terms[tuple(exps)] = 1
        offset += len(block)
    return SparsePoly(n, terms)
