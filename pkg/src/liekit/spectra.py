"""Generalized eigenspaces and joint decompositions of commuting matrix families.

Everything is exact over Q.  Spectra that do not split over Q raise
:class:`~liekit.errors.IrrationalSpectrum` instead of being approximated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, IrrationalSpectrum, NonSquare, NotCommuting, NotSolvable, VerificationFailure
from .exactlin import Matrix, Subspace, charpoly, commutator, inverse, kernel, rational_roots, unit_vector

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[tuple[Fraction, int], ...]
    splits: bool

    @property
    def distinct(self) -> tuple[Fraction, ...]:
        return tuple(v for v, _ in self.eigenvalues)

    def __len__(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class AvoidanceSet:
    values: frozenset

    def __contains__(self, x) -> bool:
        return x in self.values

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class JointDecomposition:
    blocks: tuple[Subspace, ...]
    generic_element: Matrix
    # eigenvalue_table[g][b]: eigenvalue of generator g on block b
    eigenvalue_table: tuple[tuple[Fraction, ...], ...]

    def block_dims(self) -> list[int]:
        return [b.dim for b in self.blocks]


def _square(m: Matrix) -> None:
    if not m.is_square():
        raise NonSquare(f"{m.shape} matrix")


def _shifted(A: Matrix, lam) -> Matrix:
    return A - Matrix.identity(A.nrows).scale(lam)


def extended_eigenspace(A: Matrix, lam, k: int) -> Subspace:
    """``ker (A - lam I)^k``; the zero subspace for ``k = 0``."""
    _square(A)
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return Subspace.zero(A.nrows)
    return kernel(_shifted(A, lam) ** k)


def maximal_extended_eigenspace(A: Matrix, lam) -> Subspace:
    _square(A)
    return kernel(_shifted(A, lam) ** A.nrows) if A.nrows else Subspace.zero(0)


def eigenspace_chain(A: Matrix, lam) -> list[Subspace]:
    """``[A^0, A^1, ...]`` up to and including the first repeated term."""
    _square(A)
    chain = [Subspace.zero(A.nrows)]
    shifted = _shifted(A, lam)
    power = Matrix.identity(A.nrows)
    while True:
        power = power.matmul(shifted)
        nxt = kernel(power)
        chain.append(nxt)
        if nxt.dim == chain[-2].dim:
            return chain


def _check_commute(A: Matrix, C: Matrix) -> None:
    if A.shape != C.shape:
        raise DimensionMismatch(f"{A.shape} and {C.shape}")
    if not commutator(A, C).is_zero():
        raise NotCommuting("matrices do not commute")


def check_commutant_invariance(A: Matrix, C: Matrix, lam, k: int) -> bool:
    """Whether ``C`` maps ``ker (A - lam)^k`` into itself; ``A`` and ``C`` must commute."""
    _square(A)
    _check_commute(A, C)
    return extended_eigenspace(A, lam, k).is_invariant_under(C)


def spectrum(A: Matrix) -> Spectrum:
    _square(A)
    roots, splits = rational_roots(charpoly(A))
    return Spectrum(tuple(roots), splits)


def distinct_eigenvalue_count(A: Matrix) -> int:
    return len(_split_spectrum(A))


def _split_spectrum(A: Matrix) -> Spectrum:
    s = spectrum(A)
    if not s.splits:
        raise IrrationalSpectrum("characteristic polynomial does not split over Q")
    return s


def tau_set(A: Matrix, C: Matrix) -> AvoidanceSet:
    """Ratios of nonzero eigenvalue differences of ``A`` over those of ``C``."""
    a = _split_spectrum(A).distinct
    c = _split_spectrum(C).distinct
    num = {x - y for x in a for y in a if x != y}
    den = {x - y for x in c for y in c if x != y}
    return AvoidanceSet(frozenset(n / d for n in num for d in den))


def generic_combination(A: Matrix, C: Matrix) -> tuple[Fraction, Matrix]:
    """``(x, A + x C)`` with ``x`` the least positive integer outside ``tau_set(A, C)``."""
    _check_commute(A, C)
    tau = tau_set(A, C)
    x = 1
    while Fraction(x) in tau:
        x += 1
    x = Fraction(x)
    A2 = A + C.scale(x)
    if distinct_eigenvalue_count(A2) < distinct_eigenvalue_count(A):
        raise VerificationFailure("generic combination lost eigenvalues")
    return x, A2


def _check_family(family: Sequence[Matrix]) -> int:
    if not family:
        raise ValueError("empty matrix family")
    n = family[0].nrows
    for M in family:
        if M.shape != (n, n):
            raise DimensionMismatch("family members must be square of one size")
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            if not commutator(family[i], family[j]).is_zero():
                raise NotCommuting(f"family members {i} and {j} do not commute")
    return n


def _fold_generic(family: Sequence[Matrix]) -> Matrix:
    A = family[0]
    _split_spectrum(A)
    for C in family[1:]:
        _, A = generic_combination(A, C)
    return A


def _single_eigenvalue_on(M: Matrix, block: Subspace) -> Fraction | None:
    """The unique eigenvalue of ``M`` on an invariant ``block``, or None if there are several."""
    vs = block.vectors()
    m = len(vs)
    images = [block.coordinates(M.apply(v)) for v in vs]
    # images[b] is the b-th column of M restricted to the block
    restricted = Matrix.from_columns(images, nrows=m)
    mu = restricted.trace() / m
    if not (_shifted(restricted, mu) ** m).is_zero():
        return None
    return mu


def _blocks_of(A: Matrix) -> list[Subspace]:
    blocks = [maximal_extended_eigenspace(A, lam) for lam in _split_spectrum(A).distinct]
    return sorted(blocks, key=lambda b: (b.pivots, b.basis.rows))


def _verify_decomposition(family: Sequence[Matrix], blocks: Sequence[Subspace]) -> list[list[Fraction]]:
    n = family[0].nrows
    total = Subspace.zero(n)
    for b in blocks:
        total = total + b
    if sum(b.dim for b in blocks) != n or total.dim != n:
        raise VerificationFailure("blocks do not sum directly to the whole space")
    table = []
    for g, M in enumerate(family):
        row = []
        for j, b in enumerate(blocks):
            if not b.is_invariant_under(M):
                raise VerificationFailure(f"generator {g} does not preserve block {j}")
            mu = _single_eigenvalue_on(M, b)
            if mu is None:
                raise VerificationFailure(f"generator {g} has several eigenvalues on block {j}")
            row.append(mu)
        table.append(row)
    return table


def find_generic_element(family: Sequence[Matrix]) -> Matrix:
    """An element of the span with the maximal number of distinct eigenvalues."""
    _check_family(family)
    A = _fold_generic(family)
    _verify_decomposition(family, _blocks_of(A))
    return A


def joint_decomposition(family: Sequence[Matrix]) -> JointDecomposition:
    _check_family(family)
    A = _fold_generic(family)
    blocks = _blocks_of(A)
    table = _verify_decomposition(family, blocks)
    return JointDecomposition(tuple(blocks), A, tuple(tuple(r) for r in table))


def independence_trials(family: Sequence[Matrix], trials: int, seed: int, bound: int = 10) -> int:
    """Compare blocks from up to ``trials`` random generic combinations with the reference.

    Returns the number of generic combinations that agreed; raises
    :class:`VerificationFailure` on the first disagreement.
    """
    ref = joint_decomposition(family)
    target = len(ref.blocks)
    rng = random.Random(seed)
    agreed = 0
    attempts = 0
    while agreed < trials and attempts < 50 * trials:
        attempts += 1
        coeffs = [rng.randint(-bound, bound) for _ in family]
        if not any(coeffs):
            continue
        A = Matrix.zeros(ref.generic_element.nrows)
        for c, M in zip(coeffs, family):
            if c:
                A = A + M.scale(c)
        if distinct_eigenvalue_count(A) != target:
            continue
        if tuple(_blocks_of(A)) != ref.blocks:
            raise VerificationFailure(f"generic combination {coeffs} gives different blocks")
        agreed += 1
    return agreed


def decomposition_independence_check(family: Sequence[Matrix], trials: int = 10, seed: int = 0) -> bool:
    """True iff every sampled maximal-eigenvalue combination yields the same blocks."""
    try:
        independence_trials(family, trials, seed)
    except VerificationFailure:
        return False
    return True


# -- triangularization --------------------------------------------------------------


def _matrix_span_closure(family: Sequence[Matrix]) -> list[Matrix]:
    n = family[0].nrows
    flat = lambda M: M.entries
    unflat = lambda v: Matrix.from_entries(n, n, v)
    span = Subspace.span([flat(M) for M in family], n * n)
    while True:
        ms = [unflat(v) for v in span.vectors()]
        extra = [commutator(ms[i], ms[j]).entries for i in range(len(ms)) for j in range(i + 1, len(ms))]
        nxt = Subspace.span(list(span.vectors()) + extra, n * n)
        if nxt.dim == span.dim:
            return ms
        span = nxt


def _derived_matrix_series(basis: list[Matrix]) -> list[list[Matrix]]:
    """Derived series of a matrix Lie algebra given by a basis, ending at a fixed point."""
    if not basis:
        return [basis]
    n = basis[0].nrows
    series = [basis]
    while series[-1]:
        cur = series[-1]
        sp = Subspace.span(
            [commutator(cur[i], cur[j]).entries for i in range(len(cur)) for j in range(i + 1, len(cur))], n * n
        )
        if sp.dim == len(cur):
            break
        series.append([Matrix.from_entries(n, n, v) for v in sp.vectors()])
    return series


def _restrict(M: Matrix, W: Subspace) -> Matrix:
    cols = [W.coordinates(M.apply(v)) for v in W.vectors()]
    return Matrix.from_columns(cols, nrows=W.dim)


def _common_eigenvector(series: list[list[Matrix]], n: int) -> tuple:
    # Work from the innermost (abelian) term outwards; each weight space of an
    # ideal inside an invariant subspace is again invariant.
    W = Subspace.full(n)
    for level in reversed(series):
        for M in level:
            R = _restrict(M, W)
            spec = spectrum(R)
            if not spec.eigenvalues:
                raise IrrationalSpectrum("family has no rational common eigenvector")
            lam = spec.eigenvalues[0][0]
            K = kernel(_shifted(R, lam))
            W = Subspace.span([W.combine(c) for c in K.vectors()], n)
    return W.vectors()[0]


def triangularize_solvable(family: Sequence[Matrix]) -> Matrix:
    """Invertible ``P`` with ``P^-1 M P`` upper-triangular for every ``M`` in ``family``."""
    if not family:
        raise ValueError("empty matrix family")
    n = family[0].nrows
    for M in family:
        if M.shape != (n, n):
            raise DimensionMismatch("family members must be square of one size")
    closure = _matrix_span_closure(family)
    series = _derived_matrix_series(closure)
    if series[-1]:
        raise NotSolvable("the Lie algebra generated by the family is not solvable")
    return _triangularize(closure, series, n)


def _triangularize(basis: list[Matrix], series: list[list[Matrix]], n: int) -> Matrix:
    if n <= 1 or not basis:
        return Matrix.identity(n)
    v = _common_eigenvector(series, n)
    line = Subspace.span([v], n)
    rest = line.complement_pivots()
    P = Matrix.from_columns([v] + [unit_vector(n, i) for i in rest], nrows=n)
    Pinv = inverse(P)
    idx = list(range(1, n))
    sub_basis = [Pinv.matmul(M).matmul(P).block(idx, idx) for M in basis]
    sub_series = [[Pinv.matmul(M).matmul(P).block(idx, idx) for M in level] for level in series]
    Q = _triangularize(sub_basis, sub_series, n - 1)
    lift = Matrix._raw([unit_vector(n, 0)] + [(_ZERO,) + Q.row(i) for i in range(n - 1)], n)
    return P.matmul(lift)
