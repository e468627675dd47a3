"""JSON document formats.

Scalars are always strings ``"p/q"`` (or ``"p"`` when ``q = 1``).

Structure constants::

    {"dim": 3, "labels": ["e", "h", "f"],
     "brackets": [{"i": 0, "j": 1, "terms": [{"k": 0, "c": "-2"}]}, ...]}

Only pairs ``i < j`` are listed; unlisted pairs bracket to zero.

Matrix family::

    {"dim": 2, "matrices": [[["1", "0"], ["0", "2"]], ...]}
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import FormatError
from .exactlin import Matrix, Q, Subspace, format_rational
from .liealg import LieAlgebra, validate


def scalar_out(x: Fraction) -> str:
    return format_rational(x)


def scalar_in(s: Any) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise FormatError(f"scalar must be a 'p/q' string or an integer, got {s!r}")
    try:
        return Q(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad scalar {s!r}: {exc}") from None


def matrix_out(m: Matrix) -> list[list[str]]:
    return [[scalar_out(x) for x in r] for r in m.rows]


def matrix_in(rows: Any, ncols: int | None = None) -> Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise FormatError("matrix must be a list of rows")
    try:
        return Matrix([[scalar_in(x) for x in r] for r in rows], ncols)
    except FormatError:
        raise
    except Exception as exc:
        raise FormatError(f"bad matrix: {exc}") from None


def vector_out(v) -> list[str]:
    return [scalar_out(x) for x in v]


def subspace_out(s: Subspace) -> dict:
    return {"ambient_dim": s.ambient_dim, "basis": [vector_out(v) for v in s.vectors()]}


def subspace_in(doc: dict) -> Subspace:
    try:
        n = doc["ambient_dim"]
        return Subspace.span([[scalar_in(x) for x in v] for v in doc["basis"]], n)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad subspace document: {exc}") from None


def algebra_to_document(g: LieAlgebra) -> dict:
    brackets = []
    for (i, j), terms in g.upper_brackets().items():
        brackets.append({"i": i, "j": j, "terms": [{"k": k, "c": scalar_out(c)} for k, c in sorted(terms.items())]})
    return {"dim": g.dim, "labels": list(g.labels), "brackets": brackets}


def algebra_from_document(doc: Any, check: bool = True) -> LieAlgebra:
    """Parse a structure-constant document; validates the Lie axioms unless ``check`` is False."""
    if not isinstance(doc, dict):
        raise FormatError("algebra document must be an object")
    try:
        dim = doc["dim"]
        entries = doc.get("brackets", [])
        labels = doc.get("labels")
    except (KeyError, AttributeError) as exc:
        raise FormatError(f"missing field {exc}") from None
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise FormatError(f"dim must be a non-negative integer, got {dim!r}")
    if labels is not None and (not isinstance(labels, list) or len(labels) != dim):
        raise FormatError("labels must be a list of length dim")
    upper: dict[tuple[int, int], dict[int, Fraction]] = {}
    for e in entries:
        try:
            i, j, terms = e["i"], e["j"], e["terms"]
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad bracket entry {e!r}: missing {exc}") from None
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < j < dim):
            raise FormatError(f"bracket entry needs 0 <= i < j < dim, got i={i!r}, j={j!r}")
        if (i, j) in upper:
            raise FormatError(f"bracket ({i}, {j}) listed twice")
        row: dict[int, Fraction] = {}
        for t in terms:
            try:
                k, c = t["k"], t["c"]
            except (KeyError, TypeError) as exc:
                raise FormatError(f"bad term {t!r}: missing {exc}") from None
            if not (isinstance(k, int) and 0 <= k < dim):
                raise FormatError(f"term index {k!r} out of range")
            row[k] = row.get(k, Fraction(0)) + scalar_in(c)
        upper[(i, j)] = row
    g = LieAlgebra.from_brackets(dim, upper, labels)
    if check:
        validate(g)
    return g


def family_to_document(family: list[Matrix]) -> dict:
    n = family[0].nrows if family else 0
    return {"dim": n, "matrices": [matrix_out(m) for m in family]}


def family_from_document(doc: Any) -> list[Matrix]:
    if not isinstance(doc, dict) or "matrices" not in doc or "dim" not in doc:
        raise FormatError("matrix family document needs 'dim' and 'matrices'")
    n = doc["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FormatError(f"dim must be a positive integer, got {n!r}")
    mats = [matrix_in(m, n) for m in doc["matrices"]]
    if not mats:
        raise FormatError("matrix family is empty")
    for m in mats:
        if m.shape != (n, n):
            raise FormatError(f"matrix of shape {m.shape} in a family of dim {n}")
    return mats


def dumps(doc: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from None
