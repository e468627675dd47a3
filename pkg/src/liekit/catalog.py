"""Classical and pathological Lie algebras with fixed, documented bases.

Basis conventions:

* ``gl(n)``: matrix units ``E_ij`` in row-major order.
* ``sl(n)``: off-diagonal ``E_ij`` in row-major order, then
  ``H_i = E_ii - E_{i+1,i+1}`` for ``i = 1..n-1``.  For ``sl(2)`` this is
  ``(e, f, h)``.
* ``so(n)``: ``E_ij - E_ji`` for ``i < j``, lexicographic.
* ``sp(2n)``: matrices ``X`` with ``X^T J + J X = 0``, ``J = [[0, I], [-I, 0]]``;
  basis ``[[E_ij, 0], [0, -E_ji]]`` (row-major), then ``[[0, S], [0, 0]]`` and
  ``[[0, 0], [S, 0]]`` for ``S = E_ij + E_ji`` (``i < j``) or ``E_ii``, ``i <= j``.
* ``upper_triangular(n)``: ``E_ij`` for ``i <= j``; ``strictly_upper(n)``: ``i < j``.
* ``heisenberg(2k+1)``: ``x_1..x_k, y_1..y_k, z`` with ``[x_i, y_i] = z``.
* ``semidirect(a, D)``: basis of ``a`` followed by ``t`` with ``[t, x] = D x``.

Selectors are strings such as ``"sl(3)"``, ``"direct_sum(sl(2), heisenberg(3))"``
or ``"semidirect(abelian(2), [[1, 0], [0, -1]])"``.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidParams, NotADerivation
from .exactlin import Matrix, Q, commutator, unit_vector
from .liealg import (
    LieAlgebra,
    bracket,
    center,
    is_nilpotent,
    is_solvable,
    killing_form,
    validate,
)


@dataclass(frozen=True)
class KnownFacts:
    killing_rank: int
    center_dim: int
    is_solvable: bool
    is_nilpotent: bool
    is_semisimple: bool


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameters: tuple
    algebra: LieAlgebra
    known_facts: KnownFacts
    # matrix realization of each basis element, when the algebra is a matrix algebra
    matrices: tuple | None = None

    @property
    def selector(self) -> str:
        return format_selector(self.name, self.parameters)


def format_selector(name: str, params: Sequence) -> str:
    parts = []
    for p in params:
        if isinstance(p, CatalogEntry):
            parts.append(p.selector)
        elif isinstance(p, Matrix):
            parts.append("[" + ", ".join("[" + ", ".join(f"'{x}'" if x.denominator != 1 else str(x) for x in r) + "]" for r in p.rows) + "]")
        else:
            parts.append(str(p))
    return f"{name}({', '.join(parts)})"


def compute_facts(g: LieAlgebra) -> KnownFacts:
    kr = killing_form(g).rank()
    return KnownFacts(
        killing_rank=kr,
        center_dim=center(g).dim,
        is_solvable=is_solvable(g),
        is_nilpotent=is_nilpotent(g),
        is_semisimple=kr == g.dim,
    )


def _from_matrices(mats: Sequence[Matrix], labels: Sequence[str]) -> LieAlgebra:
    """Structure constants of a matrix Lie algebra with the given basis."""
    d = len(mats)
    if d == 0:
        return LieAlgebra(0, {})
    n = mats[0].nrows
    # coordinates are read off pivot entries of an echelon basis
    from .exactlin import Subspace

    span = Subspace.span([m.entries for m in mats], n * n)
    if span.dim != d:
        raise InvalidParams("matrix basis is linearly dependent")
    # change of basis from echelon coordinates to the given basis
    to_given = _coordinate_solver(mats, span)
    table = {}
    for a in range(d):
        for b in range(a + 1, d):
            c = commutator(mats[a], mats[b]).entries
            if not span.contains(c):
                raise InvalidParams("matrix span is not closed under the commutator")
            coords = to_given(c)
            terms = {k: v for k, v in enumerate(coords) if v}
            if terms:
                table[(a, b)] = terms
    return LieAlgebra.from_brackets(d, table, labels)


def _coordinate_solver(mats, span):
    from .exactlin import inverse

    # rows: echelon coordinates of each given basis matrix
    M = Matrix([span.coordinates(m.entries) for m in mats])
    Minv = inverse(M)

    def coords(v):
        e = span.coordinates(v)
        return tuple(sum((e[i] * Minv[i, k] for i in range(len(e)) if e[i]), Fraction(0)) for k in range(len(e)))

    return coords


def _unit(n: int, i: int, j: int) -> Matrix:
    rows = [[0] * n for _ in range(n)]
    rows[i][j] = 1
    return Matrix(rows)


def _gl_basis(n):
    return [_unit(n, i, j) for i in range(n) for j in range(n)], [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]


def _sl_basis(n):
    mats, labels = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                mats.append(_unit(n, i, j))
                labels.append(f"E{i + 1}{j + 1}")
    for i in range(n - 1):
        mats.append(_unit(n, i, i) - _unit(n, i + 1, i + 1))
        labels.append(f"H{i + 1}")
    return mats, labels


def _so_basis(n):
    mats, labels = [], []
    for i in range(n):
        for j in range(i + 1, n):
            mats.append(_unit(n, i, j) - _unit(n, j, i))
            labels.append(f"A{i + 1}{j + 1}")
    return mats, labels


def _sp_basis(size):
    n = size // 2
    mats, labels = [], []

    def u(i, j):
        return _unit(size, i, j)

    for i in range(n):
        for j in range(n):
            mats.append(u(i, j) - u(n + j, n + i))
            labels.append(f"A{i + 1}{j + 1}")
    for i in range(n):
        for j in range(i, n):
            mats.append(u(i, n + j) + u(j, n + i) if i != j else u(i, n + i))
            labels.append(f"B{i + 1}{j + 1}")
    for i in range(n):
        for j in range(i, n):
            mats.append(u(n + i, j) + u(n + j, i) if i != j else u(n + i, i))
            labels.append(f"C{i + 1}{j + 1}")
    return mats, labels


def _upper_basis(n, strict):
    mats, labels = [], []
    for i in range(n):
        for j in range(i + 1 if strict else i, n):
            mats.append(_unit(n, i, j))
            labels.append(f"E{i + 1}{j + 1}")
    return mats, labels


def _heisenberg(dim: int) -> LieAlgebra:
    k = (dim - 1) // 2
    labels = [f"x{i + 1}" for i in range(k)] + [f"y{i + 1}" for i in range(k)] + ["z"]
    table = {(i, k + i): {dim - 1: 1} for i in range(k)}
    return LieAlgebra.from_brackets(dim, table, labels)


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    da = a.dim
    table = dict(a.upper_brackets())
    for (i, j), terms in b.upper_brackets().items():
        table[(i + da, j + da)] = {k + da: c for k, c in terms.items()}
    labels = [f"{s}" for s in a.labels] + [f"{s}'" for s in b.labels]
    return LieAlgebra.from_brackets(da + b.dim, table, labels)


def check_derivation(a: LieAlgebra, D: Matrix) -> None:
    """Raise :class:`NotADerivation` unless ``D[x, y] = [Dx, y] + [x, Dy]`` on basis pairs."""
    d = a.dim
    if D.shape != (d, d):
        raise NotADerivation(f"derivation must be {d}x{d}, got {D.shape}")
    cols = D.columns()
    for i in range(d):
        for j in range(i + 1, d):
            ei, ej = unit_vector(d, i), unit_vector(d, j)
            lhs = D.apply(bracket(a, ei, ej))
            r1 = bracket(a, cols[i], ej)
            r2 = bracket(a, ei, cols[j])
            if lhs != tuple(x + y for x, y in zip(r1, r2)):
                raise NotADerivation(f"Leibniz identity fails on basis pair ({i}, {j})")


def semidirect(a: LieAlgebra, D: Matrix) -> LieAlgebra:
    """``Q t + a`` with ``[t, x] = D x``; ``t`` is the last basis vector."""
    check_derivation(a, D)
    d = a.dim
    table = dict(a.upper_brackets())
    cols = D.columns()
    for j in range(d):
        terms = {k: c for k, c in enumerate(cols[j]) if c}
        if terms:
            # [x_j, t] = -D x_j
            table[(j, d)] = {k: -c for k, c in terms.items()}
    return LieAlgebra.from_brackets(d + 1, table, list(a.labels) + ["t"])


def _expected_facts(name: str, params: tuple, dim: int) -> KnownFacts | None:
    if name == "abelian":
        return KnownFacts(0, dim, True, True, dim == 0)
    if name == "heisenberg":
        return KnownFacts(0, 1, True, True, False)
    if name == "sl":
        n = params[0]
        return KnownFacts(dim, 0, n == 1, n == 1, True)
    if name == "gl":
        n = params[0]
        return KnownFacts(n * n - 1, 1, n == 1, n == 1, False)
    if name == "so":
        n = params[0]
        if n <= 2:
            return KnownFacts(0, dim, True, True, dim == 0)
        return KnownFacts(dim, 0, False, False, True)
    if name == "sp":
        return KnownFacts(dim, 0, False, False, True)
    if name == "upper_triangular":
        n = params[0]
        return KnownFacts(n - 1, 1, True, n == 1, False)
    if name == "strictly_upper":
        n = params[0]
        return KnownFacts(0, 1 if n >= 2 else 0, True, True, n <= 1)
    if name == "direct_sum":
        fa, fb = params[0].known_facts, params[1].known_facts
        return KnownFacts(
            fa.killing_rank + fb.killing_rank,
            fa.center_dim + fb.center_dim,
            fa.is_solvable and fb.is_solvable,
            fa.is_nilpotent and fb.is_nilpotent,
            fa.is_semisimple and fb.is_semisimple,
        )
    return None


def _positive_int(name, params, count=1):
    if len(params) != count or not all(isinstance(p, int) and not isinstance(p, bool) for p in params):
        raise InvalidParams(f"{name} takes {count} integer parameter(s), got {params!r}")
    if any(p < 1 for p in params):
        raise InvalidParams(f"{name} parameters must be >= 1, got {params!r}")


def make(name: str, *params) -> CatalogEntry:
    """Construct a catalog algebra and self-check its known facts."""
    mats = None
    if name == "abelian":
        _positive_int(name, params)
        g = LieAlgebra.abelian(params[0])
    elif name == "heisenberg":
        _positive_int(name, params)
        if params[0] % 2 == 0:
            raise InvalidParams("heisenberg dimension must be odd")
        g = _heisenberg(params[0])
    elif name in ("gl", "sl", "so", "upper_triangular", "strictly_upper"):
        _positive_int(name, params)
        n = params[0]
        if name == "gl":
            mats, labels = _gl_basis(n)
        elif name == "sl":
            mats, labels = _sl_basis(n)
        elif name == "so":
            mats, labels = _so_basis(n)
        else:
            mats, labels = _upper_basis(n, strict=name == "strictly_upper")
        g = _from_matrices(mats, labels)
    elif name == "sp":
        _positive_int(name, params)
        if params[0] % 2:
            raise InvalidParams("sp(m) needs an even matrix size m")
        mats, labels = _sp_basis(params[0])
        g = _from_matrices(mats, labels)
    elif name == "direct_sum":
        if len(params) != 2 or not all(isinstance(p, CatalogEntry) for p in params):
            raise InvalidParams("direct_sum takes two catalog entries")
        g = direct_sum(params[0].algebra, params[1].algebra)
    elif name == "semidirect":
        if len(params) != 2 or not isinstance(params[0], CatalogEntry):
            raise InvalidParams("semidirect takes a catalog entry and a derivation matrix")
        D = params[1] if isinstance(params[1], Matrix) else Matrix(params[1])
        params = (params[0], D)
        g = semidirect(params[0].algebra, D)
    else:
        raise InvalidParams(f"unknown catalog algebra {name!r}")
    validate(g)
    facts = compute_facts(g)
    expected = _expected_facts(name, tuple(params), g.dim)
    if expected is not None and expected != facts:
        raise AssertionError(f"{name}{params}: computed facts {facts} differ from known {expected}")
    return CatalogEntry(name, tuple(params), g, facts, tuple(mats) if mats is not None else None)


def _eval_node(node):
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        if node.keywords:
            raise InvalidParams("keyword arguments are not allowed in selectors")
        return make(node.func.id, *[_eval_node(a) for a in node.args])
    if isinstance(node, ast.List):
        return [_eval_node(e) for e in node.elts]
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, str)) and not isinstance(node.value, bool):
        return node.value if isinstance(node.value, int) else Q(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_eval_node(node.operand)
    raise InvalidParams(f"unsupported selector syntax: {ast.dump(node)}")


def from_selector(selector: str) -> CatalogEntry:
    """Parse a selector like ``"direct_sum(sl(2), heisenberg(3))"``."""
    try:
        tree = ast.parse(selector.strip(), mode="eval")
    except SyntaxError as exc:
        raise InvalidParams(f"bad selector {selector!r}: {exc.msg}") from None
    entry = _eval_node(tree.body)
    if not isinstance(entry, CatalogEntry):
        raise InvalidParams(f"selector {selector!r} does not name an algebra")
    return entry


# Ambients used by the theorem campaigns.
SEMIDIRECT_EXAMPLES = (
    "semidirect(abelian(2), [[1, 0], [0, -1]])",
    "semidirect(heisenberg(3), [[1, 0, 0], [0, -1, 0], [0, 0, 0]])",
    "semidirect(direct_sum(sl(2), abelian(1)), [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]])",
)

THEOREM_AMBIENTS = (
    "sl(2)",
    "sl(3)",
    "gl(2)",
    "gl(3)",
    "so(3)",
    "sp(4)",
    "direct_sum(sl(2), heisenberg(3))",
) + SEMIDIRECT_EXAMPLES

STANDARD_CATALOG = (
    "abelian(1)",
    "abelian(3)",
    "heisenberg(3)",
    "heisenberg(5)",
    "sl(2)",
    "sl(3)",
    "gl(1)",
    "gl(2)",
    "gl(3)",
    "so(3)",
    "so(4)",
    "so(5)",
    "sp(2)",
    "sp(4)",
    "upper_triangular(2)",
    "upper_triangular(3)",
    "strictly_upper(3)",
    "strictly_upper(4)",
    "direct_sum(sl(2), heisenberg(3))",
    "direct_sum(gl(2), abelian(1))",
) + SEMIDIRECT_EXAMPLES
