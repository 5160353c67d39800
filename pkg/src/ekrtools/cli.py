"""Command-line entry point: ``shadow``, ``verify``, ``sweep``, ``oracle``.

Exit codes: 0 when every check holds, 1 when a checked claim fails (the
report carries a witness), 2 on usage, parse, or scale errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

from . import algebra, oracle, pipeline, shadows as shadow_mod
from .errors import (
    BoundNotApplicableError,
    EkrError,
    NotBIntersectingError,
    NotIntersectingError,
    ScaleError,
)
from .setcore import Subset, UniformFamily, format_family, intersection_sizes, min_pairwise_intersection, parse_family

OK, VIOLATION, USAGE = 0, 1, 2
CHECKS = ("katona", "chain", "matrix", "polynomial", "oracle")


class UsageError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _pair(witness) -> list[list[int]]:
    return [list(s.members) for s in witness]


def _flatten(obj: dict, prefix: str = "") -> dict:
    out = {}
    for key, value in obj.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, name + "."))
        elif isinstance(value, list):
            out[name] = " ".join(_dumps(v) if isinstance(v, list) else str(v) for v in value)
        elif value is None:
            out[name] = ""
        elif isinstance(value, bool):
            out[name] = "true" if value else "false"
        else:
            out[name] = str(value)
    return out


def _csv(rows: Sequence[dict], header: Sequence[str] | None = None) -> str:
    flat = [_flatten(r) for r in rows]
    if header is None:
        header = sorted({k for r in flat for k in r})
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(header), lineterminator="\n", restval="")
    writer.writeheader()
    writer.writerows(flat)
    return buf.getvalue()


def _emit(report: dict, fmt: str, out) -> None:
    out.write(_csv([report]) if fmt == "csv" else _dumps(report) + "\n")


def _read_family(path: str) -> UniformFamily:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    return parse_family(text)


# -- shadow ----------------------------------------------------------------

def cmd_shadow(args, out) -> int:
    family = _read_family(args.input)
    if args.s is None:
        raise UsageError("shadow needs --s")
    out.write(format_family(shadow_mod.shadow(family, args.s)))
    return OK


# -- verify ----------------------------------------------------------------

def _verify_katona(family: UniformFamily, args) -> tuple[dict, int]:
    b = args.b
    if b is None:
        b = min_pairwise_intersection(family)
        b = family.k if b is None else b
    try:
        report = shadow_mod.katona_check(family, b)
    except NotBIntersectingError as exc:
        return {"check": "katona", "b": b, "error": "not_b_intersecting", "ok": False,
                "witness": _pair(exc.witness)}, VIOLATION
    body = {"check": "katona", "ok": report.holds, **report.to_dict()}
    return body, OK if report.holds else VIOLATION


def _verify_ekr(family: UniformFamily, args) -> tuple[dict, int]:
    try:
        d = pipeline.decompose(family, args.pivot)
    except NotIntersectingError as exc:
        return {"check": "ekr", "error": "not_intersecting", "ok": False, "witness": _pair(exc.witness)}, VIOLATION
    chain = pipeline.run_chain(d)
    identity, bad_pair = pipeline.check_intersection_identity(d)
    ok = chain.all_steps and identity
    body = {
        "chain": chain.to_dict(),
        "check": "ekr",
        "extremal": pipeline.classify_extremal(family).to_dict(),
        "intersection_identity": identity,
        "ok": ok,
    }
    if bad_pair is not None:
        body["identity_witness"] = _pair(bad_pair)
    return body, OK if ok else VIOLATION


def _verify_frw(family: UniformFamily, args) -> tuple[dict, int]:
    sizes = sorted(intersection_sizes(family))
    s = len(sizes) if args.s is None else args.s
    ok = algebra.frw_independence_check(family, s)
    body = {"L": sizes, "check": "frw", "ok": ok, "rows": len(family), "s": s,
            "cols": math.comb(family.ground_n, s)}
    return body, OK if ok else VIOLATION


def _verify_rank(family: UniformFamily, args) -> tuple[dict, int]:
    try:
        d = pipeline.decompose(family, args.pivot)
    except NotIntersectingError as exc:
        return {"check": "rank", "error": "not_intersecting", "ok": False, "witness": _pair(exc.witness)}, VIOLATION
    if d.n < 2 * d.k:
        raise BoundNotApplicableError(f"the EKR bound needs n >= 2k, got n={d.n}, k={d.k}")
    mat = algebra.ekr_inclusion_matrix(d)
    rank = algebra.exact_rank(mat)
    rows, cols = mat.shape
    ok = algebra.ekr_matrix_proof(d)
    body = {"check": "rank", "cols": cols, "ok": ok, "pivot": d.pivot, "rank": rank, "rows": rows}
    if args.dump:
        body["dump"] = algebra.format_matrix_dump(mat)
    return body, OK if ok else VIOLATION


def _verify_poly(family: UniformFamily, args) -> tuple[dict, int]:
    try:
        ok = algebra.polynomials_independent(family, args.pivot)
    except NotIntersectingError as exc:
        return {"check": "poly", "error": "not_intersecting", "ok": False, "witness": _pair(exc.witness)}, VIOLATION
    bit = 1 << (args.pivot - 1)
    ordered = [m for m in reversed(family.masks) if not m & bit] + [m for m in family.masks if m & bit]
    polys = [str(algebra.build_polynomial(Subset(family.ground_n, m), family.ground_n, family.k, args.pivot))
             for m in ordered]
    body = {"check": "poly", "ok": ok, "pivot": args.pivot, "polynomials": polys}
    return body, OK if ok else VIOLATION


_VERIFIERS = {
    "katona": _verify_katona,
    "ekr": _verify_ekr,
    "frw": _verify_frw,
    "rank": _verify_rank,
    "poly": _verify_poly,
}


def cmd_verify(args, out) -> int:
    family = _read_family(args.input)
    body, code = _VERIFIERS[args.kind](family, args)
    if args.kind == "rank" and args.dump and "dump" in body:
        out.write(body["dump"])
        return code
    _emit(body, args.format, out)
    return code


# -- sweep -----------------------------------------------------------------

@dataclass
class SweepSpec:
    n_range: tuple[int, int]
    k_range: tuple[int, int]
    pivots: str | list[int] = "ALL"
    samples_per_cell: int = 1
    seed: int = 0
    checks: tuple[str, ...] = ("chain",)
    max_binom: int = oracle.DEFAULT_MAX_BINOM

    def cells(self):
        for n in range(self.n_range[0], self.n_range[1] + 1):
            for k in range(self.k_range[0], self.k_range[1] + 1):
                yield n, k

    def pivots_for(self, n: int) -> list[int]:
        if self.pivots == "ALL":
            return list(range(1, n + 1))
        return [p for p in self.pivots if 1 <= p <= n]


SWEEP_HEADER = ("n", "k", "pivot", "sample", "status", "family_size", "bound",
                "katona", "chain", "matrix", "polynomial", "oracle_max", "witness")


def _sweep_row(family: UniformFamily, pivot: int, spec: SweepSpec, oracle_max: int | None) -> dict:
    n, k = family.ground_n, family.k
    d = pipeline.decompose(family, pivot)
    row = {"n": n, "k": k, "pivot": pivot, "family_size": len(family), "bound": math.comb(n - 1, k - 1)}
    ok = True
    witness = None
    if "katona" in spec.checks:
        try:
            row["katona"] = shadow_mod.katona_check(d.G0, n - 2 * k).holds
        except NotBIntersectingError as exc:
            row["katona"] = False
            witness = _pair(exc.witness)
        ok &= row["katona"]
    if "chain" in spec.checks:
        chain = pipeline.run_chain(d)
        row["chain"] = chain.all_steps
        ok &= chain.all_steps
        if chain.witness is not None and witness is None:
            witness = [list(chain.witness.members)]
    if "matrix" in spec.checks:
        row["matrix"] = algebra.ekr_matrix_proof(d)
        ok &= row["matrix"]
    if "polynomial" in spec.checks:
        row["polynomial"] = algebra.polynomials_independent(family, pivot)
        ok &= row["polynomial"]
    if "oracle" in spec.checks:
        row["oracle_max"] = oracle_max
        ok &= oracle_max == row["bound"]
    row["status"] = "ok" if ok else "violation"
    row["witness"] = witness
    return row


def run_sweep(spec: SweepSpec) -> tuple[list[dict], dict]:
    cells = list(spec.cells())
    if "oracle" in spec.checks:
        for n, k in cells:
            if n >= 2 * k and math.comb(n, k) > spec.max_binom:
                raise ScaleError(f"cell n={n}, k={k}: C({n},{k}) = {math.comb(n, k)} exceeds --max-binom {spec.max_binom}")
    rows = []
    for n, k in cells:
        if k < 1 or n < 2 * k:
            rows.append({"n": n, "k": k, "status": "skipped"})
            continue
        oracle_max = None
        if "oracle" in spec.checks:
            oracle_max = oracle.max_intersecting_bruteforce(n, k, spec.max_binom).max_size
        for sample in range(spec.samples_per_cell):
            family = oracle.random_maximal_intersecting(n, k, oracle.derive_seed(spec.seed, n, k, sample))
            for pivot in spec.pivots_for(n):
                row = _sweep_row(family, pivot, spec, oracle_max)
                row["sample"] = sample
                rows.append(row)
    summary = {
        "cells": len(cells),
        "ok": sum(r["status"] == "ok" for r in rows),
        "rows": len(rows),
        "skipped": sum(r["status"] == "skipped" for r in rows),
        "violations": sum(r["status"] == "violation" for r in rows),
    }
    return rows, summary


def _parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; use 'lo..hi' or a single integer") from None


def _parse_spec(args) -> SweepSpec:
    checks = tuple(c for c in args.checks.split(",") if c)
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise UsageError(f"unknown checks: {sorted(unknown)}")
    if args.pivots.upper() == "ALL":
        pivots: str | list[int] = "ALL"
    else:
        try:
            pivots = sorted({int(p) for p in args.pivots.split(",")})
        except ValueError:
            raise UsageError(f"bad --pivots {args.pivots!r}") from None
    if args.samples < 0:
        raise UsageError("--samples must be non-negative")
    return SweepSpec(
        n_range=_parse_range(args.n),
        k_range=_parse_range(args.k),
        pivots=pivots,
        samples_per_cell=args.samples,
        seed=args.seed,
        checks=checks,
        max_binom=args.max_binom,
    )


def cmd_sweep(args, out) -> int:
    spec = _parse_spec(args)
    rows, summary = run_sweep(spec)
    if args.format == "csv":
        out.write(_csv(rows, SWEEP_HEADER))
        out.write("# summary " + " ".join(f"{k}={v}" for k, v in sorted(summary.items())) + "\n")
    else:
        out.write(_dumps({"rows": rows, "summary": summary}) + "\n")
    return VIOLATION if summary["violations"] else OK


# -- oracle ----------------------------------------------------------------

def cmd_oracle(args, out) -> int:
    result = oracle.max_t_intersecting_bruteforce(args.n, args.k, args.t, args.max_binom)
    _emit(result.to_dict(), args.format, out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ekrtools", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-binom", type=int, default=oracle.DEFAULT_MAX_BINOM)

    p = sub.add_parser("shadow", help="print the s-shadow of a family file")
    p.add_argument("input")
    p.add_argument("--s", type=int)
    p.set_defaults(func=cmd_shadow)

    p = sub.add_parser("verify", help="run one verification on a family file")
    p.add_argument("kind", choices=sorted(_VERIFIERS))
    p.add_argument("input")
    p.add_argument("--b", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--pivot", type=int, default=1)
    p.add_argument("--dump", action="store_true", help="with 'rank': print the matrix dump")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run checks over seeded random maximal intersecting families")
    p.add_argument("--n", required=True, help="n range, e.g. 4..8")
    p.add_argument("--k", required=True, help="k range, e.g. 2..3")
    p.add_argument("--pivots", default="ALL", help="ALL or a comma list")
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--checks", default="chain", help="comma list from " + ",".join(CHECKS))
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="brute-force maximum (t-)intersecting family size")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("t", type=int, nargs="?", default=1)
    common(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if getattr(args, "pivot", 1) < 1:
        err.write("ekrtools: --pivot must be >= 1\n")
        return USAGE
    try:
        return args.func(args, out)
    except (UsageError, EkrError) as exc:
        err.write(f"ekrtools: {exc}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
