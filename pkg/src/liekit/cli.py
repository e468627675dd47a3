"""Command-line interface.

Exit codes: 0 success, 1 mathematical finding (theorem violation, unsupported
spectrum, non-commuting family), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys

from . import catalog
from .errors import (
    AxiomViolation,
    FormatError,
    InvalidParams,
    IrrationalSpectrum,
    LieKitError,
    NotADerivation,
    NotCommuting,
)
from .formats import (
    algebra_from_document,
    algebra_to_document,
    dumps,
    family_from_document,
    family_to_document,
    load_json,
    matrix_out,
    scalar_out,
    subspace_out,
)
from .harness import TrialConfig, run_theorem_campaign
from .liealg import (
    center,
    center_reduction_steps,
    is_nilpotent,
    is_solvable,
    killing_form,
    quotient_by_center,
    radical,
    reductivity_certificate,
)
from .spectra import joint_decomposition


class UsageError(Exception):
    pass


def _selector(tokens: list[str]) -> str:
    if len(tokens) == 1:
        return tokens[0]
    name, *params = tokens
    return f"{name}({', '.join(params)})"


def _load_algebra(args):
    if args.input:
        doc = load_json(args.input)
        if isinstance(doc, dict) and "algebra" in doc and "brackets" not in doc:
            doc = doc["algebra"]
        return algebra_from_document(doc), args.input
    entry = catalog.from_selector(_selector(args.catalog))
    return entry.algebra, entry.selector


def _emit(doc: dict, out: str | None) -> None:
    text = dumps(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)


def cmd_analyze(args) -> int:
    g, source = _load_algebra(args)
    K = killing_form(g)
    cert = reductivity_certificate(g)
    doc = {
        "source": source,
        "dim": g.dim,
        "algebra": algebra_to_document(g),
        "killing_gram": matrix_out(K.gram),
        "killing_rank": K.rank(),
        "center_dim": center(g).dim,
        "center": subspace_out(center(g)),
        "solvable": is_solvable(g),
        "nilpotent": is_nilpotent(g),
        "radical_dim": radical(g).dim,
        "certificate": cert.summary(),
    }
    _emit(doc, args.out)
    return 0


def cmd_check_theorem(args) -> int:
    for flag in ("trials", "max_gens", "bound"):
        if getattr(args, flag) < 1:
            raise UsageError(f"--{flag.replace('_', '-')} must be >= 1")
    selector = catalog.from_selector(_selector(args.catalog)).selector
    config = TrialConfig(selector, args.seed, args.trials, args.max_gens, args.bound)
    report = run_theorem_campaign(config)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    print(f"algebra: {report.algebra}")
    print(f"trials: {report.total}")
    print(f"nondegenerate hits: {report.nondegenerate_hits}")
    print(f"reductive confirmed: {report.reductive_confirmed}")
    print(f"degenerate skipped: {report.degenerate_skipped}")
    print(f"violations: {len(report.violations)}")
    for v in report.violations:
        print("  reproducer: " + dumps(v).replace("\n", " "))
    print(f"wall time: {report.wall_time}s", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_decompose(args) -> int:
    family = family_from_document(load_json(args.input))
    jd = joint_decomposition(family)
    doc = {
        "family": family_to_document(family),
        "generic_element": matrix_out(jd.generic_element),
        "blocks": [subspace_out(b) for b in jd.blocks],
        "eigenvalue_table": [[scalar_out(x) for x in row] for row in jd.eigenvalue_table],
    }
    _emit(doc, args.out)
    return 0


def cmd_quotient_center(args) -> int:
    g, source = _load_algebra(args)
    if args.iterate:
        steps = list(center_reduction_steps(g))
        q = steps[-1] if steps else g
        doc = {"source": source, "iterations": len(steps), "algebra": algebra_to_document(q),
               "dims": [g.dim] + [s.dim for s in steps], "descent_verified": True}
    else:
        q, proj = quotient_by_center(g)
        doc = {
            "source": source,
            "center": subspace_out(center(g)),
            "algebra": algebra_to_document(q),
            "projection": matrix_out(proj),
            "descent_verified": True,
            "iterations": 0 if center(g).is_zero() else 1,
        }
    _emit(doc, args.out)
    return 0


def cmd_catalog_export(args) -> int:
    entry = catalog.from_selector(_selector(args.catalog))
    doc = algebra_to_document(entry.algebra)
    _emit(doc, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liekit", description="Exact Lie algebra toolkit.")
    sub = p.add_subparsers(dest="verb", required=True)

    def source(sp, required=True):
        grp = sp.add_mutually_exclusive_group(required=required)
        grp.add_argument("--input", help="structure-constant JSON file")
        grp.add_argument("--catalog", nargs="+", metavar="TOKEN",
                         help="catalog algebra, e.g. 'sl 3' or 'direct_sum(sl(2), heisenberg(3))'")

    a = sub.add_parser("analyze", help="Killing form, center, series, radical, certificate")
    source(a)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("check-theorem", help="random subalgebra campaign")
    t.add_argument("--catalog", nargs="+", required=True, metavar="TOKEN")
    t.add_argument("--trials", type=int, default=1000)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--max-gens", type=int, default=3)
    t.add_argument("--bound", type=int, default=3)
    t.add_argument("--out")
    t.set_defaults(func=cmd_check_theorem)

    d = sub.add_parser("decompose", help="joint decomposition of a commuting family")
    d.add_argument("--input", required=True, help="matrix-family JSON file")
    d.add_argument("--out")
    d.set_defaults(func=cmd_decompose)

    q = sub.add_parser("quotient-center", help="quotient by the center")
    source(q)
    q.add_argument("--iterate", action="store_true", help="repeat until the center is zero")
    q.add_argument("--out")
    q.set_defaults(func=cmd_quotient_center)

    e = sub.add_parser("catalog-export", help="write a catalog algebra as structure constants")
    e.add_argument("--catalog", nargs="+", required=True, metavar="TOKEN")
    e.add_argument("--out")
    e.set_defaults(func=cmd_catalog_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (IrrationalSpectrum, NotCommuting) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except AxiomViolation as exc:
        print(f"error: invalid Lie algebra: {exc} (indices {list(exc.indices)})", file=sys.stderr)
        return 2
    except (UsageError, FormatError, InvalidParams, NotADerivation, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LieKitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
