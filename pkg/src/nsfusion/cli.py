"""Command-line front end.

Every subcommand prints deterministic output (sorted JSON keys, canonical
ordering of pairs and words). Exit codes: 0 success, 1 a verification
failed (a JSON diagnostic names the invariant), 2 usage error.

``NSFUSION_WORKERS`` sets the number of worker processes used for
independent (q, r) computations; results are merged in canonical order, so
the output does not depend on it.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Iterable, Sequence

from . import density, fusion, ns, osp, singvec, zhu
from .scalar import format_scalar, parse_scalar

WORKERS_ENV = "NSFUSION_WORKERS"


class VerificationFailure(Exception):
    def __init__(self, invariant: str, detail: object = None) -> None:
        super().__init__(invariant)
        self.invariant = invariant
        self.detail = detail


# argument types --------------------------------------------------------------

def _exact(text: str):
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational(text: str) -> Fraction:
    value = _exact(text)
    if not isinstance(value, Fraction):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}")
    return value


def _halfint(text: str) -> Fraction:
    value = _rational(text)
    if (2 * value).denominator != 1 or value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative half-integer, got {text!r}")
    return value


def _odd(text: str) -> int:
    value = _rational(text)
    if value.denominator != 1 or value < 1 or value.numerator % 2 == 0:
        raise argparse.ArgumentTypeError(f"expected an odd positive integer, got {text!r}")
    return int(value)


# output ----------------------------------------------------------------------

def _dump(obj: object) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit(args: argparse.Namespace, obj: object, text: Callable[[], str] | None = None) -> None:
    if args.format == "text" and text is not None:
        _write(args, text())
    else:
        _write(args, _dump(obj))


def workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise SystemExit(f"{WORKERS_ENV} must be an integer, got {raw!r}")
    return max(1, n)


def pmap(fn: Callable[[Any], Any], items: Iterable[Any]) -> list[Any]:
    """Order-preserving map, fanned out to processes when workers > 1."""
    items = list(items)
    n = workers()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _labels(bound: int) -> list[int]:
    return list(range(1, bound + 1, 2))


def _pairs(bound: int) -> list[tuple[int, int]]:
    return list(product(_labels(bound), repeat=2))


# subcommands -----------------------------------------------------------------

def cmd_osp_tensor(args: argparse.Namespace) -> None:
    found = osp.tensor_decompose(args.j1, args.j2)
    expected = osp.grothendieck_product(args.j1, args.j2)
    report = {
        "j1": format_scalar(args.j1),
        "j2": format_scalar(args.j2),
        "decomposition": osp.format_halfints(found),
        "closed_form": osp.format_halfints(expected),
        "dimension": osp.dimension(args.j1) * osp.dimension(args.j2),
    }
    if found != expected:
        raise VerificationFailure("clebsch_gordan", report)
    _emit(args, report)


def cmd_osp_verify(args: argparse.Namespace) -> None:
    violations = osp.verify_relations(args.j)
    report = {"j": format_scalar(args.j), "violations": violations}
    if violations:
        raise VerificationFailure("osp_relations", report)
    _emit(args, report)


def cmd_ns_gram(args: argparse.Namespace) -> None:
    words = ns.pbw_basis(args.level)
    matrix = ns.shapovalov_matrix(args.c, args.h, args.level)
    kernel = ns.gram_kernel(args.c, args.h, args.level)
    report = {
        "c": format_scalar(args.c),
        "h": format_scalar(args.h),
        "level": format_scalar(args.level),
        "basis": [str(w) for w in words],
        "matrix": [[format_scalar(a) for a in row] for row in matrix],
        "kernel": [{"terms": k.element.lines(), "singular": k.singular} for k in kernel],
    }
    _emit(args, report)


def cmd_ns_locus(args: argparse.Namespace) -> None:
    try:
        points = ns.reducibility_locus(args.c, args.max_level)
    except ns.UnrepresentableRoot as exc:
        raise _UsageError(f"argument --c: {exc}") from None
    report = {
        "c": format_scalar(args.c),
        "max_level": format_scalar(args.max_level),
        "points": [p.as_dict() for p in points],
    }
    _emit(args, report)


def _singvec_record(q: int) -> dict[str, object]:
    v = singvec.singular_vector(q)
    return {"q": q, "level": format_scalar(v.level), "weight": format_scalar(v.weight), "terms": v.lines()}


def cmd_singvec_compute(args: argparse.Namespace) -> None:
    record = _singvec_record(args.q)
    _emit(args, record, lambda: "".join(line + "\n" for line in record["terms"]))


def cmd_singvec_validate(args: argparse.Namespace) -> None:
    report = singvec.bsa_validate(args.q)
    if args.q == 1 and report["ratio"] != "1":
        raise VerificationFailure("bsa_q1_identity", report)
    _emit(args, report)


def _qpoly_record(pair: tuple[int, int]) -> dict[str, object]:
    q, r = pair
    q1, q2 = zhu.q_polynomials(q, r)
    return {
        "q": q,
        "r": r,
        "y": format_scalar(ns.h_1q(r)),
        "Q1": str(q1),
        "Q2": str(q2),
        "Q1_roots": [format_scalar(h) for h in sorted(zhu.root_labels(q1, q, r))] if q1.degree > 0 else [],
        "Q2_roots": [format_scalar(h) for h in sorted(zhu.root_labels(q2, q, r))] if q2.degree > 0 else [],
    }


def cmd_zhu_qpoly(args: argparse.Namespace) -> None:
    _emit(args, _qpoly_record((args.q, args.r)))


def cmd_fusion_table(args: argparse.Namespace) -> None:
    pairs = _pairs(args.max)
    entries = pmap(_fusion_entry, pairs)
    report = fusion.cayley_table(args.max)
    report["entries"] = entries
    _emit(args, report, lambda: fusion.cayley_text(args.max) + "\n")


def _fusion_entry(pair: tuple[int, int]) -> dict[str, object]:
    return zhu.fusion_table_entry(*pair)


def cmd_fusion_parity(args: argparse.Namespace) -> None:
    labels = fusion.parity_labels(args.q, args.r)
    _emit(args, {"q": args.q, "r": args.r, "parity": {str(s): p for s, p in sorted(labels.items())}})


def _density_record(pair: tuple[int, int]) -> dict[str, object]:
    return density.density_report(*pair)


def cmd_density_project(args: argparse.Namespace) -> None:
    report = _density_record((args.q, args.r))
    if not report["matches_zhu"]:
        raise VerificationFailure("zhu_density_proportionality", report)
    _emit(args, report)


# verify all ------------------------------------------------------------------

def _check_pair(pair: tuple[int, int]) -> dict[str, object]:
    """Per-pair checks: root audit, zhu/density proportionality, product shape."""
    q, r = pair
    out: dict[str, object] = {"q": q, "r": r}
    q1, q2 = zhu.q_polynomials(q, r)
    try:
        if q1.degree > 0:
            zhu.root_labels(q1, q, r)
        zhu.root_labels(q2, q, r)
        out["roots_audited"] = q1.degree + q2.degree == q
    except zhu.RootAuditFailure:
        out["roots_audited"] = False
    out["matches_zhu"] = density.matches_zhu(q, r)
    prod_ = fusion.generator_product(q, r)
    out["product"] = str(prod_)
    out["product_expected"] = prod_ == fusion.FusionElement({s: 1 for s in range(abs(q - r) + 1, q + r, 2)})
    if q >= r:
        par = [zhu.fusion_parity(q, r, s) for s in range(q + r - 1, q - r, -2)]
        out["parity_alternates"] = par == [("even", "odd")[i % 2] for i in range(len(par))]
    return out


def verify_all(bound: int) -> dict[str, object]:
    checks: list[dict[str, object]] = []

    def record(name: str, passed: bool, detail: object = None) -> None:
        entry: dict[str, object] = {"name": name, "passed": bool(passed)}
        if detail is not None:
            entry["detail"] = detail
        checks.append(entry)

    spins = [Fraction(k, 2) for k in range(6)]
    bad = {format_scalar(j): v for j in spins if (v := osp.verify_relations(j))}
    record("osp_relations", not bad, bad or None)

    cg_bad = []
    for j1, j2 in product(spins, repeat=2):
        try:
            if osp.tensor_decompose(j1, j2) != osp.grothendieck_product(j1, j2):
                cg_bad.append([format_scalar(j1), format_scalar(j2)])
        except osp.DecompositionMismatch:
            cg_bad.append([format_scalar(j1), format_scalar(j2)])
    record("clebsch_gordan", not cg_bad, cg_bad or None)

    kernel_bad = []
    for q in _labels(bound):
        try:
            v = singvec.singular_vector(q)
            if v.weight != ns.h_1q(q + 2) or not ns.singular_verify(v):
                kernel_bad.append(q)
        except singvec.KernelDimensionUnexpected:
            kernel_bad.append(q)
    record("singular_vector_kernel", not kernel_bad, kernel_bad or None)

    bsa = {str(q): singvec.bsa_validate(q)["proportional"] for q in _labels(bound)}
    record("bsa_report", bsa["1"], {"proportional": bsa})

    per_pair = pmap(_check_pair, _pairs(bound))
    for key, name in (
        ("roots_audited", "qpoly_root_audit"),
        ("matches_zhu", "zhu_density_proportionality"),
        ("product_expected", "fusion_products"),
        ("parity_alternates", "fusion_parity_alternation"),
    ):
        failing = [[p["q"], p["r"]] for p in per_pair if key in p and not p[key]]
        record(name, not failing, failing or None)

    record("grothendieck_isomorphism", fusion.verify_isomorphism(bound))
    record("ring_axioms", fusion.verify_ring_axioms(bound))
    return {"max": bound, "checks": checks, "passed": all(c["passed"] for c in checks)}


def cmd_verify_all(args: argparse.Namespace) -> None:
    report = verify_all(args.max)
    if not report["passed"]:
        failing = [c["name"] for c in report["checks"] if not c["passed"]]
        raise VerificationFailure(",".join(failing), report)
    _emit(args, report)


# parser ----------------------------------------------------------------------

class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", metavar="PATH")

    parser = argparse.ArgumentParser(prog="nsfusion", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(group, name: str, fn, *flags: tuple[str, Callable]) -> None:
        p = group.add_parser(name, parents=[common])
        for flag, typ in flags:
            p.add_argument(flag, type=typ, required=True)
        p.set_defaults(func=fn)

    g = groups.add_parser("osp").add_subparsers(dest="cmd", required=True)
    leaf(g, "tensor", cmd_osp_tensor, ("--j1", _halfint), ("--j2", _halfint))
    leaf(g, "verify", cmd_osp_verify, ("--j", _halfint))

    g = groups.add_parser("ns").add_subparsers(dest="cmd", required=True)
    leaf(g, "gram", cmd_ns_gram, ("--c", _exact), ("--h", _exact), ("--level", _halfint))
    leaf(g, "locus", cmd_ns_locus, ("--c", _exact), ("--max-level", _halfint))

    g = groups.add_parser("singvec").add_subparsers(dest="cmd", required=True)
    leaf(g, "compute", cmd_singvec_compute, ("--q", _odd))
    leaf(g, "validate", cmd_singvec_validate, ("--q", _odd))

    g = groups.add_parser("zhu").add_subparsers(dest="cmd", required=True)
    leaf(g, "qpoly", cmd_zhu_qpoly, ("--q", _odd), ("--r", _odd))

    g = groups.add_parser("fusion").add_subparsers(dest="cmd", required=True)
    leaf(g, "table", cmd_fusion_table, ("--max", _odd))
    leaf(g, "parity", cmd_fusion_parity, ("--q", _odd), ("--r", _odd))

    g = groups.add_parser("density").add_subparsers(dest="cmd", required=True)
    leaf(g, "project", cmd_density_project, ("--q", _odd), ("--r", _odd))

    g = groups.add_parser("verify").add_subparsers(dest="cmd", required=True)
    leaf(g, "all", cmd_verify_all, ("--max", _odd))
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"nsfusion: error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        sys.stdout.write(_dump({"status": "failed", "invariant": exc.invariant, "detail": exc.detail}))
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
