"""Seeded randomized campaigns and the curated counterexample table.

Every trial draws from its own ``random.Random`` stream keyed by
``(seed, trial index)``, so a campaign gives the same report however its
trials are scheduled.  Reports serialize to canonical JSON; ``wall_time`` is
the only field allowed to differ between reruns of one configuration.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from . import catalog
from .exactlin import Matrix, Subspace, inverse, unit_vector
from .formats import dumps, matrix_out, vector_out
from .liealg import (
    Subalgebra,
    bracket_span,
    is_closed,
    is_nondegenerate,
    killing_form,
    quotient_by_center,
    reductivity_certificate,
    restrict_form,
    subalgebra_closure,
)
from .spectra import (
    check_commutant_invariance,
    independence_trials,
    joint_decomposition,
    maximal_extended_eigenspace,
    spectrum,
)


def _stream(seed: int, index: int, tag: str = "") -> random.Random:
    return random.Random(f"{tag}{seed}:{index}")


def worker_count() -> int:
    """Process count for campaigns: CPU count, capped by ``LIE_KIT_THREADS``."""
    n = os.cpu_count() or 1
    cap = os.environ.get("LIE_KIT_THREADS")
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return n


# -- theorem campaign --------------------------------------------------------------


@dataclass(frozen=True)
class TrialConfig:
    algebra: str
    seed: int
    trials: int = 1000
    max_generators: int = 3
    coefficient_bound: int = 3

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.max_generators < 1:
            raise ValueError("max_generators must be >= 1")
        if self.coefficient_bound < 1:
            raise ValueError("coefficient_bound must be >= 1")


@dataclass
class TrialReport:
    algebra: str
    config: dict
    total: int = 0
    nondegenerate_hits: int = 0
    reductive_confirmed: int = 0
    degenerate_skipped: int = 0
    violations: list = field(default_factory=list)
    # dimension of non-degenerate subalgebras -> count
    hit_dims: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_document(self, include_wall_time: bool = True) -> dict:
        doc = asdict(self)
        doc["hit_dims"] = {str(k): v for k, v in sorted(self.hit_dims.items())}
        if not include_wall_time:
            del doc["wall_time"]
        return doc

    @classmethod
    def from_document(cls, doc: dict) -> "TrialReport":
        doc = dict(doc)
        doc["hit_dims"] = {int(k): v for k, v in doc.get("hit_dims", {}).items()}
        return cls(**doc)

    def to_json(self, include_wall_time: bool = True) -> str:
        return dumps(self.to_document(include_wall_time))


def random_generators(dim: int, rng: random.Random, max_generators: int, bound: int) -> list[tuple]:
    """1..max_generators integer vectors on random supports, coefficients in [-bound, bound]."""
    gens = []
    for _ in range(rng.randint(1, max_generators)):
        v = [0] * dim
        if dim:
            # sparse supports half the time, so proper subalgebras turn up often
            width = rng.randint(1, min(dim, 2)) if rng.random() < 0.5 else rng.randint(1, dim)
            for i in rng.sample(range(dim), width):
                v[i] = rng.randint(-bound, bound)
        gens.append(tuple(Fraction(x) for x in v))
    return gens


def random_subalgebra(g, rng: random.Random, max_generators: int = 3, bound: int = 3) -> Subalgebra:
    return subalgebra_closure(g, random_generators(g.dim, rng, max_generators, bound))


def _trial(g, K, config: TrialConfig, index: int):
    """Run one trial; returns (kind, subalgebra dim, violation or None)."""
    rng = _stream(config.seed, index)
    gens = random_generators(g.dim, rng, config.max_generators, config.coefficient_bound)
    h = subalgebra_closure(g, gens)
    if not is_closed(g, h.carrier):
        return "violation", h.dim, _violation(config, index, gens, None, ["closure"])
    if not is_nondegenerate(restrict_form(K, h.carrier)):
        return "degenerate", h.dim, None
    cert = reductivity_certificate(h)
    failed = [name for name, ok in cert.checks.items() if not ok]
    rad = cert.radical
    if not bracket_span(g, rad, rad).is_zero():
        failed.append("radical_abelian")
    if not is_nondegenerate(restrict_form(K, rad)):
        failed.append("killing_nondegenerate_on_radical")
    if failed:
        return "violation", h.dim, _violation(config, index, gens, cert, failed)
    return "reductive", h.dim, None


def _violation(config, index, gens, cert, failed) -> dict:
    return {
        "algebra": config.algebra,
        "seed": config.seed,
        "trial": index,
        "generators": [vector_out(v) for v in gens],
        "failed": failed,
        "certificate": cert.summary() if cert is not None else None,
    }


def _trial_range(config: TrialConfig, start: int, stop: int) -> list:
    g = catalog.from_selector(config.algebra).algebra
    K = killing_form(g)
    return [_trial(g, K, config, i) for i in range(start, stop)]


def run_theorem_campaign(config: TrialConfig, workers: int | None = None) -> TrialReport:
    """Random subalgebras; every one with non-degenerate restricted Killing form must certify reductive."""
    t0 = time.perf_counter()
    workers = worker_count() if workers is None else workers
    if workers <= 1 or config.trials < 50:
        outcomes = _trial_range(config, 0, config.trials)
    else:
        step = -(-config.trials // (4 * workers))
        bounds = [(s, min(s + step, config.trials)) for s in range(0, config.trials, step)]
        outcomes = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_trial_range, config, a, b) for a, b in bounds]
            for fut in futures:
                outcomes.extend(fut.result())
    report = TrialReport(algebra=config.algebra, config=asdict(config))
    for kind, dim, violation in outcomes:
        report.total += 1
        if kind == "degenerate":
            report.degenerate_skipped += 1
            continue
        report.nondegenerate_hits += 1
        report.hit_dims[dim] = report.hit_dims.get(dim, 0) + 1
        if kind == "reductive":
            report.reductive_confirmed += 1
        else:
            report.violations.append(violation)
    report.wall_time = round(time.perf_counter() - t0, 3)
    return report


# -- center quotient campaign --------------------------------------------------------


def _nondegenerate_subalgebra(g, K, seed: int, attempts: int) -> Subalgebra:
    """Largest non-degenerate subalgebra met by a seeded random search (zero if none)."""
    best = Subalgebra(g, Subspace.zero(g.dim), check=False)
    for i in range(attempts):
        h = random_subalgebra(g, _stream(seed, i, "lemma1:"), 3, 3)
        if h.dim > best.dim and is_nondegenerate(restrict_form(K, h.carrier)):
            best = h
    return best


def run_lemma1_campaign(algebras: Sequence, seed: int = 0, attempts: int = 200) -> dict:
    """Killing descent to ``g/Z(g)`` and injectivity of the projection on a non-degenerate subalgebra."""
    records = []
    for a in algebras:
        entry = catalog.from_selector(a) if isinstance(a, str) else a
        g = entry.algebra
        K = killing_form(g)
        q, proj = quotient_by_center(g)
        descent = proj.T.matmul(killing_form(q).gram).matmul(proj) == K.gram
        h = _nondegenerate_subalgebra(g, K, seed, attempts)
        image_dim = Subspace.span([proj.apply(v) for v in h.carrier.vectors()], q.dim).dim
        records.append(
            {
                "algebra": entry.selector,
                "dim": g.dim,
                "center_dim": g.dim - q.dim,
                "quotient_dim": q.dim,
                "descent_holds": descent,
                "subalgebra_dim": h.dim,
                "projection_injective": image_dim == h.dim,
                "passed": descent and image_dim == h.dim,
            }
        )
    return {"records": records, "ok": all(r["passed"] for r in records)}


# -- decomposition campaign -----------------------------------------------------------


@dataclass(frozen=True)
class DecompositionConfig:
    seed: int
    families: int = 200
    max_dim: int = 6
    independence_trials: int = 10

    def __post_init__(self):
        if self.families < 1 or self.max_dim < 1 or self.independence_trials < 1:
            raise ValueError("families, max_dim and independence_trials must be >= 1")


def random_unimodular(n: int, rng: random.Random) -> Matrix:
    """Integer matrix with determinant +-1 built from elementary row operations."""
    rows = [list(unit_vector(n, i)) for i in range(n)]
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rng.choice((-2, -1, 1, 2))
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    rng.shuffle(rows)
    return Matrix(rows)


def random_split_matrix(n: int, rng: random.Random) -> Matrix:
    """``P J P^-1`` with ``J`` a random integer Jordan matrix."""
    J = [[0] * n for _ in range(n)]
    i = 0
    while i < n:
        size = rng.randint(1, min(3, n - i))
        lam = rng.randint(-4, 4)
        for a in range(i, i + size):
            J[a][a] = lam
            if a + 1 < i + size:
                J[a][a + 1] = 1
        i += size
    P = random_unimodular(n, rng)
    return P.matmul(Matrix(J)).matmul(inverse(P))


def _poly_in(M: Matrix, coeffs: Sequence[int]) -> Matrix:
    n = M.nrows
    acc = Matrix.zeros(n)
    power = Matrix.identity(n)
    for c in coeffs:
        if c:
            acc = acc + power.scale(c)
        power = power.matmul(M)
    return acc


def random_commuting_family(n: int, rng: random.Random) -> list[Matrix]:
    """Either polynomials in one split matrix or conjugated block-scalar matrices."""
    return _commuting_family(n, rng)[1]


def _commuting_family(n: int, rng: random.Random) -> tuple[str, list[Matrix]]:
    size = rng.randint(1, 4)
    if rng.random() < 0.7:
        M = random_split_matrix(n, rng)
        return "polynomial", [_poly_in(M, [rng.randint(-2, 2) for _ in range(rng.randint(1, 3))]) for _ in range(size)]
    cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 1))) if n > 1 else []
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    P = random_unimodular(n, rng)
    Pinv = inverse(P)
    family = []
    for _ in range(size):
        diag = []
        for s in sizes:
            diag.extend([rng.randint(-3, 3)] * s)
        family.append(P.matmul(Matrix.diag(*diag)).matmul(Pinv))
    return "block_scalar", family


def _check_family(family: list[Matrix], config: DecompositionConfig, index: int) -> dict:
    n = family[0].nrows
    failures = []
    pairs = invariance_checks = 0
    jd = joint_decomposition(family)
    try:
        agreed = independence_trials(family, config.independence_trials, config.seed * 1_000_003 + index)
    except Exception as exc:
        agreed = 0
        failures.append(f"independence: {exc}")
    for a, A in enumerate(family):
        spec = spectrum(A)
        blocks = [maximal_extended_eigenspace(A, lam) for lam in spec.distinct]
        total = Subspace.zero(n)
        for b in blocks:
            total = total + b
        if not total.is_full():
            failures.append(f"primary decomposition of member {a} is incomplete")
        lams = list(spec.distinct) + [max(spec.distinct) + 1]
        for c, C in enumerate(family):
            if c == a:
                continue
            pairs += 1
            for lam in lams:
                for k in range(n + 1):
                    invariance_checks += 1
                    if not check_commutant_invariance(A, C, lam, k):
                        failures.append(f"member {c} does not preserve ker(A{a} - {lam})^{k}")
    return {
        "family": index,
        "dim": n,
        "members": len(family),
        "block_dims": jd.block_dims(),
        "generic_choices_agreed": agreed,
        "pairs": pairs,
        "invariance_checks": invariance_checks,
        "failures": failures,
        "reproducer": [matrix_out(m) for m in family] if failures else None,
    }


def run_decomposition_campaign(config: DecompositionConfig) -> dict:
    t0 = time.perf_counter()
    records = []
    for i in range(config.families):
        rng = _stream(config.seed, i, "decomp:")
        kind, family = _commuting_family(rng.randint(1, config.max_dim), rng)
        try:
            record = _check_family(family, config, i)
            record["kind"] = kind
            records.append(record)
        except Exception as exc:
            records.append(
                {
                    "family": i,
                    "kind": kind,
                    "failures": [f"{type(exc).__name__}: {exc}"],
                    "reproducer": [matrix_out(m) for m in family],
                }
            )
    failures = [r for r in records if r["failures"]]
    return {
        "config": asdict(config),
        "families": len(records),
        "commuting_pairs": sum(r.get("pairs", 0) for r in records),
        "polynomial_pairs": sum(r.get("pairs", 0) for r in records if r["kind"] == "polynomial"),
        "invariance_checks": sum(r.get("invariance_checks", 0) for r in records),
        "min_generic_choices": min((r.get("generic_choices_agreed", 0) for r in records), default=0),
        "failures": failures,
        "records": records,
        "ok": not failures,
        "wall_time": round(time.perf_counter() - t0, 3),
    }


# -- curated boundary cases ------------------------------------------------------------


def _sl3_cartan():
    e = catalog.make("sl", 3)
    labels = e.algebra.labels
    gens = [unit_vector(e.algebra.dim, labels.index(x)) for x in ("H1", "H2")]
    return e, gens


def _sl2_in_gl3():
    e = catalog.make("gl", 3)
    labels = e.algebra.labels
    gens = [unit_vector(e.algebra.dim, labels.index(x)) for x in ("E12", "E21")]
    return e, gens


def _sl2_gens(*names):
    e = catalog.make("sl", 2)
    idx = {"e": "E12", "f": "E21", "h": "H1"}
    return e, [unit_vector(3, e.algebra.labels.index(idx[n])) for n in names]


COUNTEREXAMPLE_CASES = (
    ("borel span{h, e} in sl(2)", lambda: _sl2_gens("h", "e"), False, False),
    ("line span{e} in sl(2)", lambda: _sl2_gens("e"), False, True),
    ("Cartan subalgebra of sl(3)", _sl3_cartan, True, True),
    ("sl(2) in the top-left block of gl(3)", _sl2_in_gl3, True, True),
)


def counterexample_suite() -> dict:
    """Evaluate the boundary cases against their hard-coded (nondegenerate, reductive) pairs."""
    records = []
    for name, build, exp_nondeg, exp_red in COUNTEREXAMPLE_CASES:
        entry, gens = build()
        h = subalgebra_closure(entry.algebra, gens)
        gram = restrict_form(killing_form(entry.algebra), h.carrier)
        nondeg = is_nondegenerate(gram)
        red = reductivity_certificate(h).reductive
        records.append(
            {
                "case": name,
                "ambient": entry.selector,
                "dim": h.dim,
                "restricted_gram": matrix_out(gram),
                "nondegenerate": nondeg,
                "reductive": red,
                "expected": {"nondegenerate": exp_nondeg, "reductive": exp_red},
                "passed": (nondeg, red) == (exp_nondeg, exp_red),
            }
        )
    return {"records": records, "ok": all(r["passed"] for r in records)}
