"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  Matrices are immutable and row-major;
vectors are plain tuples of Fractions.  A :class:`Subspace` always stores its
basis in reduced row-echelon form, so two subspaces are equal exactly when
their basis matrices are identical.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import AmbientMismatch, DimensionMismatch, NonSquare, ZeroPolynomial

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def Q(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_rational(x: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(x)


def vec(values: Iterable) -> tuple:
    return tuple(Q(v) for v in values)


def zero_vector(n: int) -> tuple:
    return (_ZERO,) * n


def unit_vector(n: int, i: int) -> tuple:
    v = [_ZERO] * n
    v[i] = _ONE
    return tuple(v)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v) if a and b), _ZERO)


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


class Matrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("_rows", "nrows", "ncols", "_hash", "_scaled")

    def __init__(self, rows: Iterable[Iterable] = (), ncols: int | None = None):
        data = tuple(tuple(Q(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        for row in data:
            if len(row) != ncols:
                raise DimensionMismatch("ragged matrix rows")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols
        self._hash = None
        self._scaled = None

    @classmethod
    def _raw(cls, rows, ncols: int) -> "Matrix":
        # Trusted constructor: rows must already be sequences of Fractions.
        m = object.__new__(cls)
        m._rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m._rows)
        m.ncols = ncols
        m._hash = None
        m._scaled = None
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "Matrix":
        if ncols is None:
            ncols = nrows
        return cls._raw([[_ZERO] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw([unit_vector(n, i) for i in range(n)], n)

    @classmethod
    def diag(cls, *values) -> "Matrix":
        n = len(values)
        rows = []
        for i, v in enumerate(values):
            row = [_ZERO] * n
            row[i] = Q(v)
            rows.append(row)
        return cls._raw(rows, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not columns:
            if nrows is None:
                raise ValueError("nrows is required for a matrix with no columns")
            return cls._raw([() for _ in range(nrows)], 0)
        return cls(zip(*columns), len(columns))

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Sequence) -> "Matrix":
        if len(entries) != nrows * ncols:
            raise DimensionMismatch("entries length must equal rows * cols")
        vals = [Q(x) for x in entries]
        return cls._raw([vals[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)

    # -- basic protocol ------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self._rows for x in row)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self._rows)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ncols == other.ncols and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ncols, self._rows))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"Matrix([{body}], ncols={self.ncols})"

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._raw(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._raw(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw([[-a for a in r] for r in self._rows], self.ncols)

    def scale(self, c) -> "Matrix":
        c = Q(c)
        return Matrix._raw([[c * a for a in r] for r in self._rows], self.ncols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self.matmul(other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return self.matmul(other)

    def integer_form(self) -> tuple[list[list[int]], int]:
        """``(N, den)`` with ``self == N / den`` and ``N`` an integer matrix."""
        if self._scaled is None:
            den = lcm(*(x.denominator for r in self._rows for x in r)) if self.nrows and self.ncols else 1
            ints = [[x.numerator * (den // x.denominator) for x in r] for r in self._rows]
            self._scaled = (ints, den)
        return self._scaled

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        a, da = self.integer_form()
        b, db = other.integer_form()
        cols = list(zip(*b)) if other.nrows else [()] * other.ncols
        den = da * db
        out = []
        for r in a:
            nz = [(k, x) for k, x in enumerate(r) if x]
            out.append([Fraction(sum(x * c[k] for k, x in nz), den) if nz else _ZERO for c in cols])
        return Matrix._raw(out, other.ncols)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product, ``v`` treated as a column."""
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        nz = [(k, a) for k, a in enumerate(v) if a]
        return tuple(sum((r[k] * a for k, a in nz), _ZERO) for r in self._rows)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square():
            raise NonSquare("power of a non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        result = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result.matmul(base)
            k >>= 1
            if k:
                base = base.matmul(base)
        return result

    @property
    def T(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix._raw([() for _ in range(self.ncols)], 0)
        return Matrix._raw(list(zip(*self._rows)), self.nrows)

    def trace(self) -> Fraction:
        if not self.is_square():
            raise NonSquare("trace of a non-square matrix")
        return sum((self._rows[i][i] for i in range(self.nrows)), _ZERO)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_upper_triangular(self) -> bool:
        return all(not any(r[:i]) for i, r in enumerate(self._rows))

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw([[self._rows[i][j] for j in cols] for i in rows], len(cols))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise DimensionMismatch("vstack with differing column counts")
        return Matrix._raw(self._rows + other._rows, self.ncols)

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a.matmul(b) - b.matmul(a)


# -- elimination ---------------------------------------------------------------


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place Gauss-Jordan elimination; returns (nonzero rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = prow[c]
        if inv != 1:
            prow = [x / inv for x in prow]
            rows[r] = prow
        support = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for k in support:
                        row[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form of ``m`` (same shape, zero rows last) and its rank."""
    rows, pivots = _rref_rows([list(r) for r in m.rows], m.ncols)
    rank = len(rows)
    full = rows + [[_ZERO] * m.ncols for _ in range(m.nrows - rank)]
    return Matrix._raw(full, m.ncols), rank


def rank(m: Matrix) -> int:
    return len(_rref_rows([list(r) for r in m.rows], m.ncols)[0])


def _kernel_basis(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    red, pivots = _rref_rows(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [_ZERO] * ncols
        v[f] = _ONE
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def kernel(m: Matrix) -> "Subspace":
    """Right null space ``{v : m v = 0}``."""
    return Subspace.span(_kernel_basis([list(r) for r in m.rows], m.ncols), m.ncols)


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """One solution ``x`` of ``m x = b``, or None when the system is inconsistent."""
    if len(b) != m.nrows:
        raise DimensionMismatch("right-hand side length")
    n = m.ncols
    aug = [list(r) + [Q(x)] for r, x in zip(m.rows, b)]
    red, pivots = _rref_rows(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [_ZERO] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise NonSquare("inverse of a non-square matrix")
    n = m.nrows
    aug = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(m.rows)]
    red, pivots = _rref_rows(aug, 2 * n)
    if len(pivots) < n or pivots[n - 1] >= n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix._raw([row[n:] for row in red], n)


def det(m: Matrix) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination on an integer-scaled copy."""
    if not m.is_square():
        raise NonSquare(f"determinant of a {m.shape} matrix")
    n = m.nrows
    if n == 0:
        return _ONE
    scale = 1
    a = []
    for r in m.rows:
        den = lcm(*(x.denominator for x in r))
        scale *= den
        a.append([x.numerator * (den // x.denominator) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return _ZERO
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale)


# -- polynomials ----------------------------------------------------------------


class Polynomial:
    """Univariate polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Q(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def __call__(self, x):
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_matrix(self, m: Matrix) -> Matrix:
        """Horner evaluation at a square matrix."""
        if not m.is_square():
            raise NonSquare("polynomial evaluated at a non-square matrix")
        n = m.nrows
        acc = Matrix.zeros(n)
        ident = Matrix.identity(n)
        for c in reversed(self.coeffs):
            acc = acc.matmul(m) + ident.scale(c)
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and c == 1:
                s = mono
            elif mono and c == -1:
                s = "-" + mono
            else:
                s = str(c) + ("*" + mono if mono else "")
            terms.append(s)
        return " + ".join(terms).replace("+ -", "- ")


def charpoly(m: Matrix) -> Polynomial:
    """Monic ``det(tI - m)`` via the Faddeev-LeVerrier recurrence."""
    if not m.is_square():
        raise NonSquare(f"characteristic polynomial of a {m.shape} matrix")
    n = m.nrows
    coeffs = [_ZERO] * (n + 1)
    coeffs[n] = _ONE
    if n == 0:
        return Polynomial(coeffs)
    mk = Matrix.zeros(n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        mk = m.matmul(mk) + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -m.matmul(mk).trace() / k
    return Polynomial(coeffs)


def _primitive_integer_coeffs(p: Polynomial) -> list[int]:
    den = lcm(*(c.denominator for c in p.coeffs))
    ints = [c.numerator * (den // c.denominator) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints]


def rational_roots(p: Polynomial) -> tuple[list[tuple[Fraction, int]], bool]:
    """All rational roots of ``p`` with multiplicities, sorted by value.

    The second element is True when ``p`` splits completely over the rationals,
    i.e. the multiplicities add up to the degree.
    """
    if p.is_zero():
        raise ZeroPolynomial("rational roots of the zero polynomial")
    from sympy import Poly, Rational as SymRational, symbols

    t = symbols("t")
    coeffs = _primitive_integer_coeffs(p)
    roots: list[tuple[Fraction, int]] = []
    if p.degree > 0:
        factors = Poly(list(reversed(coeffs)), t).factor_list()[1]
        for f, mult in factors:
            if f.degree() == 1:
                a, b = f.all_coeffs()
                r = SymRational(-b, a)
                roots.append((Fraction(int(r.p), int(r.q)), int(mult)))
    roots.sort()
    return roots, sum(m for _, m in roots) == p.degree


# -- subspaces -------------------------------------------------------------------


class Subspace:
    """Subspace of Q^n held by its canonical (reduced row-echelon) basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: Matrix | Iterable[Iterable] = ()):
        if not isinstance(basis, Matrix):
            basis = Matrix(basis, ambient_dim)
        if basis.ncols != ambient_dim:
            raise AmbientMismatch(f"basis vectors of length {basis.ncols} in dimension {ambient_dim}")
        rows, pivots = _rref_rows([list(r) for r in basis.rows], ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = Matrix._raw(rows, ambient_dim)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in dimension {ambient_dim}")
            rows.append([Q(x) for x in v])
        s = object.__new__(cls)
        red, pivots = _rref_rows(rows, ambient_dim)
        s.ambient_dim = ambient_dim
        s.basis = Matrix._raw(red, ambient_dim)
        s.pivots = tuple(pivots)
        return s

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls.span((), ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span([unit_vector(ambient_dim, i) for i in range(ambient_dim)], ambient_dim)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def vectors(self) -> tuple:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        vs = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.vectors())
        return f"Subspace(dim={self.dim}/{self.ambient_dim}, [{vs}])"

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"ambient dimensions {self.ambient_dim} and {other.ambient_dim}")

    def reduce(self, v: Sequence) -> list:
        """Residue of ``v`` after eliminating the pivot coordinates of this subspace."""
        w = list(v)
        for row, p in zip(self.basis.rows, self.pivots):
            f = w[p]
            if f:
                for k in range(p, self.ambient_dim):
                    if row[k]:
                        w[k] -= f * row[k]
        return w

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise AmbientMismatch(f"vector of length {len(v)} in dimension {self.ambient_dim}")
        return not any(self.reduce(v))

    __contains__ = contains

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(self.contains(v) for v in other.vectors())

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` in the canonical basis; ``v`` must lie in the subspace."""
        return tuple(v[p] for p in self.pivots)

    def combine(self, coords: Sequence) -> tuple:
        """The vector with the given coordinates in the canonical basis."""
        out = [_ZERO] * self.ambient_dim
        for c, row in zip(coords, self.basis.rows):
            if c:
                for k in range(self.ambient_dim):
                    if row[k]:
                        out[k] += c * row[k]
        return tuple(out)

    def annihilator(self) -> Matrix:
        """Matrix ``N`` with ``v`` in the subspace iff ``N v = 0``."""
        rows = _kernel_basis([list(r) for r in self.basis.rows], self.ambient_dim)
        return Matrix._raw(rows, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        if self.is_full():
            return other
        if other.is_full():
            return self
        stacked = self.annihilator().vstack(other.annihilator())
        return kernel(stacked)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersect(other)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.span(self.vectors() + other.vectors(), self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        return self.sum(other)

    def image(self, m: Matrix) -> "Subspace":
        """``m`` applied to this subspace."""
        return Subspace.span([m.apply(v) for v in self.vectors()], m.nrows)

    def is_invariant_under(self, m: Matrix) -> bool:
        return all(self.contains(m.apply(v)) for v in self.vectors())

    def complement_pivots(self) -> tuple[int, ...]:
        """Coordinates whose unit vectors span a complement of this subspace."""
        ps = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in ps)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a.sum(b)


def contains(a: Subspace, v: Sequence) -> bool:
    return a.contains(v)


def equals(a: Subspace, b: Subspace) -> bool:
    a._check_ambient(b)
    return a == b
