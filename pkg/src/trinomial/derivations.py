"""The explicit derivation attached to a unit exponent.

When some exponent ``l_ij = 1``, the coordinate ring of the hypersurface
carries a nonzero locally nilpotent derivation and the variety is not
rigid.  The derivation moves exactly two variables: writing ``p`` for
the next block cyclically after the unit's block,

    d(T_ij)  =  l_p1 * T_p1^(l_p1 - 1) * T_p2^l_p2 * ... * T_pn^l_pn
    d(T_p1)  =  - prod over the unit block's other variables of T_ij'^l_ij'

and zero elsewhere.  The two-term cancellation d(f) = 0 is exact in the
ambient polynomial ring, so the derivation descends to the quotient.

The role assignment (unit variable first, partner block next cyclically,
remaining unit-block variables supply the second image) is fixed here
once; every caller and every test relies on this convention.
"""

from __future__ import annotations

from .core import LinearTermError, Trinomial, linear_term_block
from .grading import GradingData
from .polynomials import Derivation, SparsePoly, homogeneous_degree_with


class NotUnitExponentError(Exception):
    """The explicit derivation needs an exponent equal to 1."""


def lemma_derivation(t: Trinomial, position: tuple[int, int]) -> Derivation:
    """The explicit derivation for a unit exponent at ``position``.

    ``position`` is ``(block, j)`` with 1-based ``j``.  Requires the
    exponent there to be 1 and the trinomial to have no linear term.
    """
    i, j = position
    if not (0 <= i <= 2 and 1 <= j <= len(t.blocks[i])):
        raise IndexError(f"no variable at block {i} position {j}")
    if t.blocks[i][j - 1] != 1:
        raise NotUnitExponentError(position, t.blocks[i][j - 1])
    bad = linear_term_block(t)
    if bad is not None:
        raise LinearTermError(bad)
    n = t.n
    partner = (i + 1) % 3
    offsets = [0, len(t.l0), len(t.l0) + len(t.l1)]
    unit_k = offsets[i] + (j - 1)
    partner_k = offsets[partner]
    partner_block = t.blocks[partner]

    # image of the unit variable: derivative of the partner monomial in T_p1
    exps = [0] * n
    exps[partner_k] = partner_block[0] - 1
    for jj in range(1, len(partner_block)):
        exps[partner_k + jj] = partner_block[jj]
    unit_image = SparsePoly.monomial(n, exps, partner_block[0])

    # image of the partner's first variable: minus the unit block without the unit
    exps = [0] * n
    for jj, l in enumerate(t.blocks[i]):
        if jj != j - 1:
            exps[offsets[i] + jj] = l
    partner_image = SparsePoly.monomial(n, exps, -1)

    return Derivation.from_map(n, {unit_k: unit_image, partner_k: partner_image})


def homogeneous_degree(d: Derivation, g: GradingData) -> tuple[int, ...] | None:
    """Degree shift of a grading-homogeneous derivation, None otherwise.

    The zero derivation gets None by convention (any shift would fit).
    """
    return homogeneous_degree_with(d, g.degrees)
