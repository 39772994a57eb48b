"""Exact integer and rational linear algebra.

Everything here runs on arbitrary-precision Python ints and
``fractions.Fraction``; there is deliberately no floating point and no
machine-word fast path.  The module provides the normal forms (Hermite,
Smith), saturated kernel bases, integral sections and the exact cone
feasibility test (Fourier-Motzkin) that the rest of the package is built
on.

Conventions:

* ``hermite_form``  returns ``(H, U)`` with ``U @ A == H``, ``U``
  unimodular and ``H`` in row-style Hermite normal form (pivots positive,
  entries above a pivot reduced into ``[0, pivot)``, zero rows last).
* ``column_hermite_form`` is the transposed variant ``A @ V == H``; it is
  the canonical form used for lattice bases given by matrix columns, so
  two matrices generate the same column lattice iff their column Hermite
  forms are equal.
* ``smith_form`` returns ``(D, U, V)`` with ``U @ A @ V == D`` diagonal,
  nonnegative, each entry dividing the next.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class NoSectionError(Exception):
    """The given column lattice is not a direct summand.

    Cannot happen for saturated kernel bases; raised to surface internal
    inconsistencies instead of returning a wrong section.
    """


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries stored row-major."""

    nrows: int
    ncols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.nrows * self.ncols:
            raise ValueError(
                f"expected {self.nrows * self.ncols} entries, got {len(self.entries)}"
            )
        if not all(isinstance(e, int) for e in self.entries):
            raise TypeError("matrix entries must be ints")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ncols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in row) for row in rows]
        if rows:
            ncols = len(rows[0])
            if any(len(row) != ncols for row in rows):
                raise ValueError("ragged rows")
        elif ncols is None:
            ncols = 0
        flat = tuple(x for row in rows for x in row)
        return cls(len(rows), ncols, flat)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols, (0,) * (nrows * ncols))

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(key)
        return self.entries[i * self.ncols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.ncols : (i + 1) * self.ncols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.ncols + j] for i in range(self.nrows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.nrows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.ncols,
            self.nrows,
            tuple(self[i, j] for j in range(self.ncols) for i in range(self.nrows)),
        )

    def top_rows(self, k: int) -> "IntMatrix":
        return IntMatrix(k, self.ncols, self.entries[: k * self.ncols])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for i in range(self.nrows):
            ri = self.row(i)
            for j in range(other.ncols):
                out.append(sum(ri[k] * other[k, j] for k in range(self.ncols)))
        return IntMatrix(self.nrows, other.ncols, tuple(out))

    def mul_vector(self, v: Sequence) -> tuple:
        """Matrix times column vector; entries may be ints or Fractions."""
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.nrows))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self[i, i] for i in range(min(self.nrows, self.ncols)))

    def det(self) -> int:
        """Exact determinant (fraction-free Bareiss elimination)."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        m = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def __str__(self) -> str:
        return "\n".join("[" + " ".join(str(x) for x in self.row(i)) + "]" for i in range(self.nrows))


@dataclass(frozen=True)
class HermiteDecomposition:
    """Row Hermite form: ``u @ a == h`` with ``u`` unimodular."""

    h: IntMatrix
    u: IntMatrix


@dataclass(frozen=True)
class SmithDecomposition:
    """Smith form: ``u @ a @ v == d`` diagonal, nonnegative, divisibility chain."""

    d: IntMatrix
    u: IntMatrix
    v: IntMatrix

    def rank(self) -> int:
        return sum(1 for x in self.d.diagonal() if x != 0)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = a*x + b*y`` and ``g >= 0``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _row_combine(m: list[list[int]], i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # rows (i, j) <- (a*row_i + b*row_j, c*row_i + d*row_j); caller keeps ad - bc = +-1
    for k in range(len(m[i])):
        m[i][k], m[j][k] = a * m[i][k] + b * m[j][k], c * m[i][k] + d * m[j][k]


def hermite_form(a: IntMatrix) -> HermiteDecomposition:
    """Row Hermite normal form ``H = U A`` with ``U`` unimodular.

    Pivots are positive, entries above each pivot lie in ``[0, pivot)``,
    and zero rows are pushed to the bottom.
    """
    h = a.to_rows()
    u = IntMatrix.identity(a.nrows).to_rows()
    pivot_row = 0
    for col in range(a.ncols):
        if pivot_row == a.nrows:
            break
        pivot = None
        for r in range(pivot_row, a.nrows):
            if h[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != pivot_row:
            h[pivot_row], h[pivot] = h[pivot], h[pivot_row]
            u[pivot_row], u[pivot] = u[pivot], u[pivot_row]
        for r in range(pivot_row + 1, a.nrows):
            if h[r][col] == 0:
                continue
            p, q = h[pivot_row][col], h[r][col]
            g, x, y = _xgcd(p, q)
            _row_combine(h, pivot_row, r, x, y, -q // g, p // g)
            _row_combine(u, pivot_row, r, x, y, -q // g, p // g)
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
        piv = h[pivot_row][col]
        for r in range(pivot_row):
            q = h[r][col] // piv
            if q != 0:
                h[r] = [x - q * y for x, y in zip(h[r], h[pivot_row])]
                u[r] = [x - q * y for x, y in zip(u[r], u[pivot_row])]
        pivot_row += 1
    hm = IntMatrix.from_rows(h, ncols=a.ncols)
    um = IntMatrix.from_rows(u, ncols=a.nrows)
    assert um @ a == hm
    return HermiteDecomposition(hm, um)


def column_hermite_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column Hermite normal form: ``(H, V)`` with ``A @ V == H``.

    Canonical for the lattice spanned by the columns: two matrices span
    the same column lattice iff their column Hermite forms coincide.
    """
    dec = hermite_form(a.transpose())
    return dec.h.transpose(), dec.u.transpose()


def smith_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form ``D = U A V``.

    Diagonal entries are nonnegative and each divides the next; ``U`` and
    ``V`` are unimodular.
    """
    d = a.to_rows()
    u = IntMatrix.identity(a.nrows).to_rows()
    v = IntMatrix.identity(a.ncols).to_rows()
    nr, nc = a.nrows, a.ncols
    vt = v  # v maintained in transposed orientation: rows of vt are columns of V

    def col_combine(t: int, j: int, x: int, y: int, z: int, w: int) -> None:
        # columns (t, j) of d <- (x*col_t + y*col_j, z*col_t + w*col_j)
        for r in range(nr):
            d[r][t], d[r][j] = x * d[r][t] + y * d[r][j], z * d[r][t] + w * d[r][j]
        _row_combine(vt, t, j, x, y, z, w)

    t = 0
    while t < min(nr, nc):
        # move a nonzero entry of the trailing block to the pivot slot
        found = None
        for i in range(t, nr):
            for j in range(t, nc):
                if d[i][j] != 0:
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i, j = found
        if i != t:
            d[t], d[i] = d[i], d[t]
            u[t], u[i] = u[i], u[t]
        if j != t:
            col_combine(t, j, 0, 1, 1, 0)
        while True:
            for i in range(t + 1, nr):
                if d[i][t] != 0:
                    p, q = d[t][t], d[i][t]
                    g, x, y = _xgcd(p, q)
                    _row_combine(d, t, i, x, y, -q // g, p // g)
                    _row_combine(u, t, i, x, y, -q // g, p // g)
            for j in range(t + 1, nc):
                if d[t][j] != 0:
                    p, q = d[t][t], d[t][j]
                    g, x, y = _xgcd(p, q)
                    col_combine(t, j, x, -q // g, y, p // g)
            if all(d[i][t] == 0 for i in range(t + 1, nr)) and all(
                d[t][j] == 0 for j in range(t + 1, nc)
            ):
                piv = d[t][t]
                bad = None
                for i in range(t + 1, nr):
                    for j in range(t + 1, nc):
                        if d[i][j] % piv != 0:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                # pull the offending row up so the pivot absorbs its gcd
                d[t] = [x + y for x, y in zip(d[t], d[bad])]
                u[t] = [x + y for x, y in zip(u[t], u[bad])]
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    dm = IntMatrix.from_rows(d, ncols=nc)
    um = IntMatrix.from_rows(u, ncols=nr)
    vm = IntMatrix.from_rows(vt, ncols=nc).transpose()
    assert um @ a @ vm == dm
    return SmithDecomposition(dm, um, vm)


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Basis of the saturated kernel lattice ``{x in Z^n : A x = 0}``.

    Returned as the columns of an ``ncols x k`` matrix in canonical
    (column Hermite) form.
    """
    snf = smith_form(a)
    rank = snf.rank()
    n = a.ncols
    cols = [snf.v.col(j) for j in range(rank, n)]
    if not cols:
        return IntMatrix(n, 0, ())
    raw = IntMatrix.from_rows(cols).transpose()
    canonical, _ = column_hermite_form(raw)
    assert (a @ canonical).is_zero()
    return canonical


def is_surjective(a: IntMatrix) -> bool:
    """True iff ``A : Z^ncols -> Z^nrows`` is onto."""
    snf = smith_form(a)
    diag = snf.d.diagonal()
    return snf.rank() == a.nrows and all(x == 1 for x in diag if x != 0)


def section(b: IntMatrix) -> IntMatrix:
    """Integral left inverse ``S`` with ``S @ B == identity``.

    ``B``'s columns must be a basis of a saturated sublattice (a direct
    summand); otherwise ``NoSectionError`` is raised.
    """
    r = b.ncols
    snf = smith_form(b)
    diag = snf.d.diagonal()
    if snf.rank() != r or any(x != 1 for x in diag[:r]):
        raise NoSectionError(f"column lattice is not a direct summand (invariants {diag})")
    s = snf.v @ snf.u.top_rows(r)
    assert s @ b == IntMatrix.identity(r)
    return s


def lattice_contains(b: IntMatrix, x: Sequence[int]) -> bool:
    """True iff ``x`` lies in the lattice spanned by the columns of ``B``."""
    snf = smith_form(b)
    y = snf.u.mul_vector(list(x))
    for i in range(b.ncols):
        di = snf.d[i, i]
        if (di == 0 and y[i] != 0) or (di != 0 and y[i] % di != 0):
            return False
    return all(y[i] == 0 for i in range(b.ncols, b.nrows))


def same_lattice(b1: IntMatrix, b2: IntMatrix) -> bool:
    """True iff the column lattices of ``b1`` and ``b2`` coincide."""
    if b1.nrows != b2.nrows:
        return False
    return column_hermite_form(b1)[0] == column_hermite_form(b2)[0]


# ---------------------------------------------------------------------------
# Exact linear feasibility via Fourier-Motzkin elimination.
#
# A constraint row (c_1, ..., c_v, b) encodes  c_1 x_1 + ... + c_v x_v + b >= 0
# with integer coefficients.  Fine at this package's scales (at most ~a dozen
# variables); no attempt at double description or LP.


def _normalize_row(row: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in row:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in row)
    return tuple(row)


def _integer_rows(rows: Iterable[Sequence[Fraction | int]]) -> list[tuple[int, ...]]:
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        denom = 1
        for x in fr:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        out.append(_normalize_row([int(x * denom) for x in fr]))
    return out


def fm_feasible(rows: Iterable[Sequence[Fraction | int]], nvars: int) -> bool:
    """Decide whether the system ``{c . x + b >= 0}`` has a rational solution.

    Each row has ``nvars`` coefficients followed by the constant term.
    Eliminates variables one at a time (Fourier-Motzkin), exactly.
    """
    constraints = set(_integer_rows(rows))
    for var in range(nvars):
        pos, neg, rest = [], [], set()
        for row in constraints:
            c = row[var]
            if c > 0:
                pos.append(row)
            elif c < 0:
                neg.append(row)
            else:
                rest.add(row)
        for p in pos:
            cp = p[var]
            for q in neg:
                cq = q[var]
                combined = tuple(cp * qx - cq * px for px, qx in zip(p, q))
                combined = _normalize_row(combined)
                if all(x == 0 for x in combined[:-1]) and combined[-1] < 0:
                    return False
                rest.add(combined)
        constraints = rest
    return all(row[-1] >= 0 for row in constraints)


def cone_membership(generators: Sequence[Sequence[Fraction | int]], m: Sequence[Fraction | int]) -> bool:
    """True iff ``m`` is a nonnegative rational combination of the generators."""
    m = [Fraction(x) for x in m]
    if all(x == 0 for x in m):
        return True
    if not generators:
        return False
    dim = len(m)
    if any(len(g) != dim for g in generators):
        raise ValueError("generator/vector dimension mismatch")
    ng = len(generators)
    rows: list[list[Fraction | int]] = []
    for i in range(ng):
        rows.append([1 if j == i else 0 for j in range(ng)] + [0])
    for r in range(dim):
        eq = [Fraction(generators[i][r]) for i in range(ng)]
        rows.append(eq + [-m[r]])
        rows.append([-x for x in eq] + [m[r]])
    return fm_feasible(rows, ng)


def nonneg_dependence_exists(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff some nonzero nonnegative combination of the vectors is zero.

    Equivalently: the fibers of ``a -> sum a_k vectors[k]`` over the
    nonnegative orthant are unbounded.
    """
    if not vectors:
        return False
    dim = len(vectors[0])
    ng = len(vectors)
    rows: list[list[int]] = []
    for i in range(ng):
        rows.append([1 if j == i else 0 for j in range(ng)] + [0])
    for r in range(dim):
        eq = [vectors[i][r] for i in range(ng)]
        rows.append(eq + [0])
        rows.append([-x for x in eq] + [0])
    # scale-invariant, so "nonzero" can be normalized to "coordinates sum to 1"
    rows.append([1] * ng + [-1])
    rows.append([-1] * ng + [1])
    return fm_feasible(rows, ng)


def fraction_str(q: Fraction | int) -> str:
    """Canonical string for an exact rational: ``p`` or ``p/q`` with q > 0."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
