"""Lie algebras given by structure constants.

A :class:`LieAlgebra` of dimension ``d`` stores ``[e_i, e_j] = sum_k c[i][j][k] e_k``
sparsely.  Elements are coefficient tuples of length ``d``.  A
:class:`Subalgebra` is a bracket-closed :class:`~liekit.exactlin.Subspace` of its
parent; most functions below accept either a whole algebra or a subalgebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    AmbientMismatch,
    AxiomViolation,
    DescentFailure,
    DimensionMismatch,
    InternalInconsistency,
    NonSquare,
    NotClosed,
)
from .exactlin import Matrix, Q, Subspace, det, kernel, unit_vector

_ZERO = Fraction(0)


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q.

    ``brackets`` maps ordered pairs ``(i, j)`` to ``{k: c}`` meaning
    ``[e_i, e_j] = sum c e_k``.  The table is taken as given, including both
    orders of each pair, so that malformed input can be represented and
    rejected by :func:`validate`.  Use :meth:`from_brackets` to build an
    algebra from the ``i < j`` half only.
    """

    __slots__ = ("dim", "labels", "_table", "_killing", "_ad")

    def __init__(self, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]], labels=None):
        if dim < 0:
            raise DimensionMismatch("negative dimension")
        table = {}
        for (i, j), terms in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch(f"bracket index ({i}, {j}) out of range for dim {dim}")
            row = []
            for k, c in sorted(terms.items()):
                if not 0 <= k < dim:
                    raise DimensionMismatch(f"bracket term index {k} out of range for dim {dim}")
                c = Q(c)
                if c:
                    row.append((k, c))
            if row:
                table[(i, j)] = tuple(row)
        self.dim = dim
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(dim))
        if len(self.labels) != dim:
            raise DimensionMismatch("label count differs from dimension")
        self._table = table
        self._killing = None
        self._ad = None

    @classmethod
    def from_brackets(cls, dim: int, upper: Mapping[tuple[int, int], Mapping[int, object]], labels=None) -> "LieAlgebra":
        """Build from ``i < j`` entries, completing antisymmetrically."""
        full: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), terms in upper.items():
            if i == j:
                raise AxiomViolation("antisymmetry", (i, i, next(iter(terms), 0)), "[e_i, e_i] listed")
            if i > j:
                i, j = j, i
                terms = {k: -Q(c) for k, c in terms.items()}
            full[(i, j)] = {k: Q(c) for k, c in terms.items()}
            full[(j, i)] = {k: -Q(c) for k, c in terms.items()}
        return cls(dim, full, labels)

    @classmethod
    def from_dense(cls, c: Sequence[Sequence[Sequence]], labels=None) -> "LieAlgebra":
        dim = len(c)
        table = {}
        for i in range(dim):
            for j in range(dim):
                terms = {k: c[i][j][k] for k in range(dim) if c[i][j][k]}
                if terms:
                    table[(i, j)] = terms
        return cls(dim, table, labels)

    @classmethod
    def abelian(cls, dim: int) -> "LieAlgebra":
        return cls(dim, {})

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        for kk, c in self._table.get((i, j), ()):
            if kk == k:
                return c
        return _ZERO

    @property
    def structure_constants(self) -> list[list[list[Fraction]]]:
        c = [[[_ZERO] * self.dim for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j), terms in self._table.items():
            for k, v in terms:
                c[i][j][k] = v
        return c

    def bracket_terms(self, i: int, j: int) -> tuple:
        return self._table.get((i, j), ())

    def upper_brackets(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        """The ``i < j`` half of the table, as accepted by :meth:`from_brackets`."""
        return {(i, j): dict(terms) for (i, j), terms in sorted(self._table.items()) if i < j}

    def is_abelian(self) -> bool:
        return not self._table

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self._table == other._table

    def __hash__(self) -> int:
        return hash((self.dim, tuple(sorted(self._table.items()))))

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, nonzero_brackets={len(self._table) // 2})"


def validate(g: LieAlgebra) -> None:
    """Raise :class:`AxiomViolation` unless ``g`` is antisymmetric and satisfies Jacobi."""
    d = g.dim
    for i in range(d):
        for k, _ in g.bracket_terms(i, i):
            raise AxiomViolation("antisymmetry", (i, i, k))
        for j in range(i + 1, d):
            a = dict(g.bracket_terms(i, j))
            b = dict(g.bracket_terms(j, i))
            for k in sorted(set(a) | set(b)):
                if a.get(k, _ZERO) != -b.get(k, _ZERO):
                    raise AxiomViolation("antisymmetry", (i, j, k))
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(j + 1, d):
                acc: dict[int, Fraction] = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, cm in g.bracket_terms(a, b):
                        for l, cl in g.bracket_terms(m, c):
                            acc[l] = acc.get(l, _ZERO) + cm * cl
                for l in sorted(acc):
                    if acc[l]:
                        raise AxiomViolation("jacobi", (i, j, k, l))


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> tuple:
    if len(x) != g.dim or len(y) != g.dim:
        raise DimensionMismatch(f"bracket of vectors of length {len(x)}, {len(y)} in dim {g.dim}")
    out = [_ZERO] * g.dim
    ynz = [(j, b) for j, b in enumerate(y) if b]
    table = g._table
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in ynz:
            terms = table.get((i, j))
            if terms:
                ab = a * b
                for k, c in terms:
                    out[k] += ab * c
    return tuple(out)


def _basis_adjoints(g: LieAlgebra) -> tuple[Matrix, ...]:
    if g._ad is None:
        g._ad = tuple(adjoint(g, unit_vector(g.dim, i)) for i in range(g.dim))
    return g._ad


def adjoint(g: LieAlgebra, x: Sequence) -> Matrix:
    """Matrix of ``ad_x = [x, .]``; column ``j`` holds ``[x, e_j]``."""
    if len(x) != g.dim:
        raise DimensionMismatch(f"vector of length {len(x)} in dim {g.dim}")
    d = g.dim
    rows = [[_ZERO] * d for _ in range(d)]
    for i, a in enumerate(x):
        if not a:
            continue
        for j in range(d):
            for k, c in g._table.get((i, j), ()):
                rows[k][j] += a * c
    return Matrix._raw(rows, d)


def trace_form(A: Matrix, C: Matrix) -> Fraction:
    """``trace(A C)``, the trace form on gl(V)."""
    if not (A.is_square() and C.is_square()):
        raise NonSquare("trace form needs square matrices")
    if A.nrows != C.nrows:
        raise DimensionMismatch(f"trace form of {A.shape} and {C.shape}")
    n = A.nrows
    ar, cr = A.rows, C.rows
    return sum((ar[i][j] * cr[j][i] for i in range(n) for j in range(n) if ar[i][j] and cr[j][i]), _ZERO)


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric bilinear form on Q^n, stored as its gram matrix."""

    gram: Matrix

    def __post_init__(self):
        if not self.gram.is_square():
            raise NonSquare("gram matrix must be square")
        if not self.gram.is_symmetric():
            raise ValueError("gram matrix must be symmetric")

    @property
    def ambient_dim(self) -> int:
        return self.gram.nrows

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        gy = self.gram.apply(y)
        return sum((a * b for a, b in zip(x, gy) if a and b), _ZERO)

    def rank(self) -> int:
        from .exactlin import rank

        return rank(self.gram)


def killing_form(g: LieAlgebra) -> BilinearForm:
    """``B(e_i, e_j) = trace(ad_{e_i} ad_{e_j})``."""
    if g._killing is None:
        ads = _basis_adjoints(g)
        d = g.dim
        rows = [[_ZERO] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                v = trace_form(ads[i], ads[j])
                rows[i][j] = v
                rows[j][i] = v
        g._killing = BilinearForm(Matrix._raw(rows, d))
    return g._killing


def restrict_form(f: BilinearForm, s: Subspace) -> Matrix:
    """Gram matrix of ``f`` on the canonical basis of ``s``."""
    if s.ambient_dim != f.ambient_dim:
        raise AmbientMismatch(f"subspace of Q^{s.ambient_dim} for a form on Q^{f.ambient_dim}")
    S = s.basis
    return S.matmul(f.gram).matmul(S.T)


def is_nondegenerate(m: Matrix) -> bool:
    if not m.is_square():
        raise NonSquare(f"{m.shape} gram matrix")
    return det(m) != 0


def form_radical(m: Matrix) -> Subspace:
    """Vectors orthogonal to everything under the form with gram matrix ``m``."""
    if not m.is_square():
        raise NonSquare(f"{m.shape} gram matrix")
    return kernel(m)


def orthogonal_complement(f: BilinearForm, s: Subspace, within: Subspace) -> Subspace:
    """``{v in within : f(v, s) = 0}``."""
    if s.ambient_dim != f.ambient_dim or within.ambient_dim != f.ambient_dim:
        raise AmbientMismatch("subspaces and form live in different ambient spaces")
    if s.is_zero() or within.is_zero():
        return within
    W = within.basis
    constraints = s.basis.matmul(f.gram).matmul(W.T)
    coeffs = kernel(constraints)
    return Subspace.span([within.combine(c) for c in coeffs.vectors()], f.ambient_dim)


# -- subalgebras ----------------------------------------------------------------


def bracket_span(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """``[a, b]``: span of brackets of basis vectors."""
    vs = []
    av, bv = a.vectors(), b.vectors()
    same = a is b or a == b
    for p, u in enumerate(av):
        for q, v in enumerate(bv):
            if same and q <= p:
                continue
            w = bracket(g, u, v)
            if any(w):
                vs.append(w)
    return Subspace.span(vs, g.dim)


class Subalgebra:
    """Bracket-closed subspace of a parent algebra."""

    __slots__ = ("parent", "carrier", "_intrinsic")

    def __init__(self, parent: LieAlgebra, carrier: Subspace, check: bool = True):
        if carrier.ambient_dim != parent.dim:
            raise AmbientMismatch(f"carrier in Q^{carrier.ambient_dim} for an algebra of dim {parent.dim}")
        self.parent = parent
        self.carrier = carrier
        self._intrinsic = None
        if check and not is_closed(parent, carrier):
            raise NotClosed("subspace is not closed under the bracket")

    @classmethod
    def whole(cls, g: LieAlgebra) -> "Subalgebra":
        return cls(g, Subspace.full(g.dim), check=False)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def intrinsic(self) -> LieAlgebra:
        """This subalgebra as a standalone algebra in the carrier's canonical basis."""
        if self._intrinsic is None:
            if self.carrier.is_full():
                self._intrinsic = self.parent
            else:
                basis = self.carrier.vectors()
                m = len(basis)
                table = {}
                for a in range(m):
                    for b in range(a + 1, m):
                        w = bracket(self.parent, basis[a], basis[b])
                        if any(w):
                            coords = self.carrier.coordinates(w)
                            terms = {k: c for k, c in enumerate(coords) if c}
                            table[(a, b)] = terms
                self._intrinsic = LieAlgebra.from_brackets(m, table)
        return self._intrinsic

    def lift(self, s: Subspace) -> Subspace:
        """Map a subspace of intrinsic coordinates back into the parent."""
        if s.ambient_dim != self.dim:
            raise AmbientMismatch("intrinsic subspace of the wrong dimension")
        if self.carrier.is_full():
            return s
        return Subspace.span([self.carrier.combine(c) for c in s.vectors()], self.parent.dim)

    def __repr__(self) -> str:
        return f"Subalgebra(dim={self.dim} in {self.parent!r})"


def _as_sub(obj) -> Subalgebra:
    if isinstance(obj, Subalgebra):
        return obj
    if isinstance(obj, LieAlgebra):
        return Subalgebra.whole(obj)
    raise TypeError(f"expected LieAlgebra or Subalgebra, got {type(obj).__name__}")


def is_closed(g: LieAlgebra, s: Subspace) -> bool:
    vs = s.vectors()
    for p in range(len(vs)):
        for q in range(p + 1, len(vs)):
            if not s.contains(bracket(g, vs[p], vs[q])):
                return False
    return True


def subalgebra_closure(g: LieAlgebra, generators: Iterable[Sequence]) -> Subalgebra:
    """Smallest subalgebra containing ``generators``."""
    gens = [tuple(Q(x) for x in v) for v in generators]
    for v in gens:
        if len(v) != g.dim:
            raise DimensionMismatch(f"generator of length {len(v)} in dim {g.dim}")
    s = Subspace.span(gens, g.dim)
    while True:
        vs = s.vectors()
        new = [bracket(g, vs[p], vs[q]) for p in range(len(vs)) for q in range(p + 1, len(vs))]
        t = Subspace.span(list(vs) + [w for w in new if any(w)], g.dim)
        if t.dim == s.dim:
            return Subalgebra(g, s, check=False)
        s = t


def _center_of(g: LieAlgebra) -> Subspace:
    d = g.dim
    rows = []
    for j in range(d):
        block = [[_ZERO] * d for _ in range(d)]
        for i in range(d):
            for k, c in g.bracket_terms(i, j):
                block[k][i] = c
        rows.extend(r for r in block if any(r))
    if not rows:
        return Subspace.full(d)
    return kernel(Matrix._raw(rows, d))


def center(obj) -> Subspace:
    """``{x : [x, h] = 0}`` for ``h`` the algebra or subalgebra, in parent coordinates."""
    sub = _as_sub(obj)
    return sub.lift(_center_of(sub.intrinsic()))


def derived(obj) -> Subspace:
    sub = _as_sub(obj)
    return bracket_span(sub.parent, sub.carrier, sub.carrier)


def derived_series(obj) -> list[Subspace]:
    """``[h, h^(1), h^(2), ...]`` ending at the first repeated term."""
    sub = _as_sub(obj)
    series = [sub.carrier]
    while True:
        nxt = bracket_span(sub.parent, series[-1], series[-1])
        if nxt.dim == series[-1].dim:
            return series
        series.append(nxt)


def lower_central_series(obj) -> list[Subspace]:
    """``[h, [h,h], [h,[h,h]], ...]`` ending at the first repeated term."""
    sub = _as_sub(obj)
    series = [sub.carrier]
    while True:
        nxt = bracket_span(sub.parent, sub.carrier, series[-1])
        if nxt.dim == series[-1].dim:
            return series
        series.append(nxt)


def is_solvable(obj) -> bool:
    return derived_series(obj)[-1].is_zero()


def is_nilpotent(obj) -> bool:
    return lower_central_series(obj)[-1].is_zero()


def _intrinsic_radical(h: LieAlgebra) -> Subspace:
    whole = Subspace.full(h.dim)
    d = derived(h)
    return orthogonal_complement(killing_form(h), d, whole)


def radical(obj) -> Subspace:
    """Maximal solvable ideal, as the intrinsic-Killing complement of ``[h, h]``."""
    sub = _as_sub(obj)
    h = sub.intrinsic()
    r = _intrinsic_radical(h)
    if not is_solvable(Subalgebra(h, r, check=False)):
        raise InternalInconsistency("computed radical is not solvable")
    return sub.lift(r)


@dataclass(frozen=True)
class ReductivityCertificate:
    subalgebra: Subalgebra
    center: Subspace
    derived: Subspace
    radical: Subspace
    checks: dict = field(default_factory=dict)

    @property
    def reductive(self) -> bool:
        return all(self.checks.values())

    @property
    def verdict(self) -> str:
        return "reductive" if self.reductive else "not reductive"

    def summary(self) -> dict:
        return {
            "dim": self.subalgebra.dim,
            "center_dim": self.center.dim,
            "derived_dim": self.derived.dim,
            "radical_dim": self.radical.dim,
            "checks": dict(self.checks),
            "reductive": self.reductive,
            "verdict": self.verdict,
        }


def reductivity_certificate(obj) -> ReductivityCertificate:
    """Certify ``h`` reductive: rad = Z, h = Z + [h,h] directly, [h,h] semisimple, Z central."""
    sub = _as_sub(obj)
    h = sub.intrinsic()
    whole = Subspace.full(h.dim)
    z = _center_of(h)
    dd = derived(h)
    r = _intrinsic_radical(h)
    d_alg = Subalgebra(h, dd, check=False).intrinsic()
    checks = {
        "radical_equals_center": r == z,
        "direct_sum_center_derived": (z + dd) == whole and (z & dd).is_zero(),
        "derived_killing_nondegenerate": is_nondegenerate(killing_form(d_alg).gram),
        "center_acts_trivially": bracket_span(h, z, whole).is_zero(),
    }
    return ReductivityCertificate(sub, sub.lift(z), sub.lift(dd), sub.lift(r), checks)


# -- center quotient and complexification -----------------------------------------


def quotient_by_center(g: LieAlgebra) -> tuple[LieAlgebra, Matrix]:
    """``g / Z(g)`` on the pivot complement of the center, and the projection matrix.

    Raises :class:`DescentFailure` unless the Killing form of ``g`` equals the
    pullback of the quotient's Killing form, entry by entry.
    """
    z = center(g)
    d = g.dim
    if z.is_zero():
        return g, Matrix.identity(d)
    keep = z.complement_pivots()
    m = len(keep)

    def project(v) -> tuple:
        w = z.reduce(v)
        return tuple(w[i] for i in keep)

    proj = Matrix.from_columns([project(unit_vector(d, j)) for j in range(d)], nrows=m)
    table = {}
    for a in range(m):
        for b in range(a + 1, m):
            w = project(bracket(g, unit_vector(d, keep[a]), unit_vector(d, keep[b])))
            terms = {k: c for k, c in enumerate(w) if c}
            if terms:
                table[(a, b)] = terms
    labels = [g.labels[i] for i in keep]
    q = LieAlgebra.from_brackets(m, table, labels)
    pulled = proj.T.matmul(killing_form(q).gram).matmul(proj)
    if pulled != killing_form(g).gram:
        raise DescentFailure("Killing form of g differs from the pullback of g/Z(g)'s")
    return q, proj


def center_reduction_steps(g: LieAlgebra):
    """Yield successive quotients by the center until a centerless algebra is reached."""
    while not center(g).is_zero():
        g, _ = quotient_by_center(g)
        yield g


def iterated_center_reduction(g: LieAlgebra) -> LieAlgebra:
    for g in center_reduction_steps(g):
        pass
    if not center(g).is_zero():
        raise InternalInconsistency("iterated quotient still has a center")
    return g


def complexify_as_real(g: LieAlgebra) -> LieAlgebra:
    """Realification of ``g (x) C``: basis ``e_1..e_d, i e_1..i e_d``."""
    d = g.dim
    table = {}
    for (a, b), terms in g._table.items():
        t = dict(terms)
        table[(a, b)] = t
        table[(a + d, b)] = {k + d: c for k, c in t.items()}
        table[(a, b + d)] = {k + d: c for k, c in t.items()}
        table[(a + d, b + d)] = {k: -c for k, c in t.items()}
    labels = list(g.labels) + ["i" + s for s in g.labels]
    return LieAlgebra(2 * d, table, labels)
