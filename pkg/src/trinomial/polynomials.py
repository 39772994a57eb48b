"""Sparse multivariate polynomials over exact rationals, and derivations.

A polynomial lives in a ring with a fixed number of variables; terms map
exponent tuples to nonzero ``Fraction`` coefficients.  The term order is
graded lexicographic on the fixed variable order, which makes serialized
output and single-divisor division deterministic.

A derivation is given by its images on the generators and extended to
arbitrary polynomials through the Leibniz rule.  Coefficients stay in
characteristic zero throughout; there is no finite-field mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponents = tuple[int, ...]


def _grlex_key(exps: Exponents) -> tuple:
    return (sum(exps), exps)


class SparsePoly:
    """Polynomial with Fraction coefficients, stored term-sparse."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Exponents, Fraction | int] | None = None):
        self.nvars = nvars
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise ValueError(f"exponent vector {exps} has length != {nvars}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                coeff = Fraction(coeff)
                if coeff:
                    acc = clean.get(exps, Fraction(0)) + coeff
                    if acc:
                        clean[exps] = acc
                    else:
                        clean.pop(exps, None)
        self._terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "SparsePoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value: Fraction | int) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff: Fraction | int = 1) -> "SparsePoly":
        return cls(nvars, {tuple(exps): coeff})

    @classmethod
    def variable(cls, nvars: int, k: int) -> "SparsePoly":
        exps = [0] * nvars
        exps[k] = 1
        return cls(nvars, {tuple(exps): 1})

    # -- views ---------------------------------------------------------------

    def terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        """Degree of the highest term; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def leading_term(self) -> tuple[Exponents, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self._terms, key=_grlex_key)
        return exps, self._terms[exps]

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "SparsePoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("polynomials over different variable sets")

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            acc = out.get(exps, Fraction(0)) + coeff
            if acc:
                out[exps] = acc
            else:
                out.pop(exps, None)
        return self._wrap(out)

    def __neg__(self) -> "SparsePoly":
        return self._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc = out.get(e, Fraction(0)) + c1 * c2
                if acc:
                    out[e] = acc
                else:
                    out.pop(e, None)
        return self._wrap(out)

    def scale(self, c: Fraction | int) -> "SparsePoly":
        c = Fraction(c)
        if not c:
            return SparsePoly(self.nvars)
        return self._wrap({e: c * v for e, v in self._terms.items()})

    def _wrap(self, terms: dict[Exponents, Fraction]) -> "SparsePoly":
        p = SparsePoly.__new__(SparsePoly)
        p.nvars = self.nvars
        p._terms = terms
        return p

    def partial_derivative(self, k: int) -> "SparsePoly":
        """d/dT_k, with d(T_k^a)/dT_k = a T_k^(a-1)."""
        out: dict[Exponents, Fraction] = {}
        for exps, coeff in self._terms.items():
            a = exps[k]
            if a == 0:
                continue
            e = list(exps)
            e[k] = a - 1
            out[tuple(e)] = coeff * a
        return self._wrap(out)

    def divmod_single(self, divisor: "SparsePoly") -> tuple["SparsePoly", "SparsePoly"]:
        """Division by a single divisor: ``self = q*divisor + r``.

        No remainder term is divisible by the divisor's leading term.  For
        a principal ideal this settles membership: the remainder is zero
        iff the divisor divides ``self`` in the polynomial ring.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lt_e, lt_c = divisor.leading_term()
        q: dict[Exponents, Fraction] = {}
        r: dict[Exponents, Fraction] = {}
        p = dict(self._terms)
        while p:
            exps = max(p, key=_grlex_key)
            coeff = p.pop(exps)
            if all(a >= b for a, b in zip(exps, lt_e)):
                qe = tuple(a - b for a, b in zip(exps, lt_e))
                qc = coeff / lt_c
                q[qe] = q.get(qe, Fraction(0)) + qc
                for de, dc in divisor._terms.items():
                    if (de, dc) == (lt_e, lt_c):
                        continue
                    e = tuple(a + b for a, b in zip(qe, de))
                    acc = p.get(e, Fraction(0)) - qc * dc
                    if acc:
                        p[e] = acc
                    else:
                        p.pop(e, None)
            else:
                r[exps] = coeff
        return self._wrap(q), self._wrap(r)

    def divisible_by(self, divisor: "SparsePoly") -> bool:
        return self.divmod_single(divisor)[1].is_zero()

    # -- serialization ------------------------------------------------------

    def render(self, names: Sequence[str]) -> str:
        """Human-readable form, terms in canonical order: ``c * T01^a * ...``."""
        if not self._terms:
            return "0"
        parts = []
        for exps, coeff in self.terms():
            factors = [_fraction_text(coeff)]
            for k, a in enumerate(exps):
                if a == 1:
                    factors.append(names[k])
                elif a > 1:
                    factors.append(f"{names[k]}^{a}")
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        """Canonical JSON term list: ``[{"coeff": "p/q", "exps": [...]}, ...]``."""
        return [
            {"coeff": _fraction_text(coeff), "exps": list(exps)}
            for exps, coeff in self.terms()
        ]

    def __repr__(self) -> str:
        return f"SparsePoly(nvars={self.nvars}, terms={dict(self.terms())!r})"


def _fraction_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class NilpotencyResult:
    """Outcome of bounded nilpotency iteration on the ring generators."""

    nilpotent: bool
    chain_lengths: tuple[int, ...] | None  # per generator, when nilpotent
    failed_generator: int | None = None   # first generator still alive at the bound

    def __bool__(self) -> bool:
        return self.nilpotent


class Derivation:
    """Derivation of the polynomial ring, given by generator images."""

    __slots__ = ("nvars", "images")

    def __init__(self, images: Sequence[SparsePoly]):
        images = tuple(images)
        if not images:
            raise ValueError("a derivation needs at least one generator image")
        nvars = images[0].nvars
        if any(p.nvars != nvars for p in images):
            raise ValueError("generator images over different variable sets")
        if len(images) != nvars:
            raise ValueError("need exactly one image per variable")
        self.nvars = nvars
        self.images = images

    @classmethod
    def zero(cls, nvars: int) -> "Derivation":
        return cls([SparsePoly.zero(nvars)] * nvars)

    @classmethod
    def from_map(cls, nvars: int, images: Mapping[int, SparsePoly]) -> "Derivation":
        full = [SparsePoly.zero(nvars)] * nvars
        for k, p in images.items():
            full[k] = p
        return cls(full)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.images)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def scale(self, c: Fraction | int) -> "Derivation":
        return Derivation([p.scale(c) for p in self.images])

    def apply(self, p: SparsePoly) -> SparsePoly:
        """Leibniz extension: sum_k dp/dT_k * image_k."""
        if p.nvars != self.nvars:
            raise ValueError("polynomial over a different variable set")
        out = SparsePoly.zero(self.nvars)
        for k, image in enumerate(self.images):
            if image.is_zero():
                continue
            dk = p.partial_derivative(k)
            if not dk.is_zero():
                out = out + dk * image
        return out


def apply_derivation(d: Derivation, p: SparsePoly) -> SparsePoly:
    return d.apply(p)


def annihilates_modulo(d: Derivation, f: SparsePoly) -> bool:
    """True iff ``f`` divides ``d(f)``, i.e. the derivation preserves (f).

    Such a derivation descends to the quotient ring by the principal
    ideal (f).
    """
    return d.apply(f).divisible_by(f)


def is_locally_nilpotent(d: Derivation, max_iterations: int) -> NilpotencyResult:
    """Iterate the derivation on every generator, up to the given bound.

    Nilpotent iff each generator reaches 0 within ``max_iterations``
    applications; for a derivation of the ambient polynomial ring the
    generators suffice, because locally nilpotent elements form a
    subalgebra.  A generator still alive at the bound yields an honest
    "not within bound" result, not a rigidity claim.
    """
    if max_iterations < 1:
        raise ValueError("max_iterations must be positive")
    chains = []
    for k in range(d.nvars):
        p = SparsePoly.variable(d.nvars, k)
        steps = 0
        while steps < max_iterations:
            p = d.apply(p)
            steps += 1
            if p.is_zero():
                break
        if not p.is_zero():
            return NilpotencyResult(False, None, failed_generator=k)
        chains.append(steps)
    return NilpotencyResult(True, tuple(chains))


def homogeneous_degree_with(
    d: Derivation, degrees: Sequence[Sequence[int]]
) -> tuple[int, ...] | None:
    """Common degree shift of a grading-homogeneous derivation, if any.

    ``degrees[k]`` is the grading degree of variable ``k``.  Returns ``e``
    when every nonzero image is homogeneous of degree ``degrees[k] + e``;
    ``None`` otherwise, and also for the zero derivation (by convention).
    """
    rank = len(degrees[0]) if degrees else 0
    shift: tuple[int, ...] | None = None
    for k, image in enumerate(d.images):
        if image.is_zero():
            continue
        img_deg = _poly_degree(image, degrees, rank)
        if img_deg is None:
            return None
        e = tuple(a - b for a, b in zip(img_deg, degrees[k]))
        if shift is None:
            shift = e
        elif shift != e:
            return None
    return shift


def _poly_degree(
    p: SparsePoly, degrees: Sequence[Sequence[int]], rank: int
) -> tuple[int, ...] | None:
    """Grading degree of a homogeneous polynomial; None if inhomogeneous."""
    deg: tuple[int, ...] | None = None
    for exps, _ in p._terms.items():
        d = tuple(sum(a * degrees[k][i] for k, a in enumerate(exps)) for i in range(rank))
        if deg is None:
            deg = d
        elif deg != d:
            return None
    return deg


def monomials_up_to_degree(nvars: int, bound: int) -> list[Exponents]:
    """All exponent tuples with total degree <= bound, in graded-lex order."""
    out: list[Exponents] = []

    def rec(prefix: list[int], remaining: int, pos: int) -> None:
        if pos == nvars - 1:
            for a in range(remaining + 1):
                out.append(tuple(prefix + [a]))
            return
        for a in range(remaining + 1):
            rec(prefix + [a], remaining - a, pos + 1)

    if nvars == 0:
        return [()]
    rec([], bound, 0)
    return sorted(out, key=_grlex_key)
