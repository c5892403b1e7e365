"""Command line interface: ``mubdesigns construct|verify|partition|bounds``.

Exit codes: 0 success, 1 the requested property fails, 2 bad usage or input.
The environment variable ``MUBDESIGNS_TOL`` overrides the default design-order
tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import io
from .constructions import (
    construction_gr,
    construction_mols,
    construction_pauli,
    construction_wf,
    maximal_mubs,
)
from .algebra import is_prime, prime_power
from .data import builtin_sic
from .designs import ANGLE_TOL, DESIGN_TOL, DesignReport, certify, mub_count_bounds
from .partition import PartitionError, StructureError, partition_into_mubs
from .vectors import VectorSet

METHODS = ("auto", "wf", "gr", "pauli", "mols", "sic")


class UsageError(Exception):
    pass


def _default_tol() -> float:
    raw = os.environ.get("MUBDESIGNS_TOL")
    if raw is None:
        return DESIGN_TOL
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"MUBDESIGNS_TOL={raw!r} is not a number") from None


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _build(args) -> tuple[VectorSet, dict]:
    d, method = args.dim, args.method
    if d < 2:
        raise UsageError(f"dimension must be >= 2, got {d}")
    pp = prime_power(d)
    if method == "sic":
        vs = builtin_sic(d) if d in (2, 3) else None
        if vs is None:
            raise UsageError(f"no built-in SIC for dimension {d} (available: 2, 3)")
        return vs, {"construction": "sic", "d": d}
    if method == "auto":
        if pp is None:
            raise UsageError(f"dimension {d} is not a prime power; no maximal MUB construction available")
        fam = maximal_mubs(d)
    elif method == "wf":
        if pp is None or pp[0] == 2:
            raise UsageError(f"method wf needs an odd prime power dimension, got {d}")
        fam = construction_wf(d)
    elif method == "gr":
        if pp is None or pp[0] != 2:
            raise UsageError(f"method gr needs a power of two, got {d}")
        fam = construction_gr(pp[1])
    elif method == "pauli":
        if not is_prime(d):
            raise UsageError(f"method pauli needs a prime dimension, got {d}")
        fam = construction_pauli(d, seed=args.seed)
    else:
        root = int(round(d**0.5))
        if root * root != d:
            raise UsageError(f"method mols needs a square dimension, got {d}")
        squares = _load_json(args.squares) if args.squares else None
        hadamard = None
        if args.hadamard:
            raw = np.array(_load_json(args.hadamard), dtype=float)
            if raw.ndim != 3 or raw.shape[-1] != 2:
                raise UsageError("Hadamard file must hold a matrix of [re, im] pairs")
            hadamard = raw[..., 0] + 1j * raw[..., 1]
        if squares is None and prime_power(root) is None:
            raise UsageError(f"order {root} is not a prime power; supply Latin squares with --squares")
        try:
            fam = construction_mols(root, hadamard=hadamard, squares=squares)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    prov = {k: v for k, v in fam.provenance.items() if k != "label_offset"}
    return fam.union(), prov


def cmd_construct(args) -> int:
    vs, prov = _build(args)
    text = io.dumps(vs, prov)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {len(vs)} vectors in C^{vs.dim} to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _read_input(path: str) -> VectorSet:
    try:
        vs, _ = io.read(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except io.FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return vs


def format_report(rep: DesignReport) -> str:
    lines = [f"vectors: {rep.size} in C^{rep.dim}"]
    if rep.angles is not None:
        vals = ", ".join(f"{a:.12g} (x{m})" for a, m in zip(rep.angles.values, rep.angles.multiplicities))
        lines.append(f"angle set: {{{vals}}}" + ("  [ambiguous clustering]" if rep.angles.ambiguous else ""))
    lines.append("  k  welch sum            bound                residual")
    for r in rep.welch.rows:
        lines.append(f"  {r.k:<2d} {r.sum:<20.15g} {float(r.bound):<20.15g} {r.residual:+.3e}")
    lines.append(f"design order: {rep.order} (tol {rep.welch.tol:g})")
    if rep.welch.anomalies:
        lines.append(f"WARNING: Welch inequality violated beyond tolerance at k = {list(rep.welch.anomalies)}")
    if rep.subdegrees is not None:
        table = rep.subdegrees.table()
        if table is None:
            lines.append("regular scheme: no")
        else:
            lines.append("regular scheme: yes, subdegrees " + ", ".join(f"d[{a:.6g}] = {c}" for a, c in table.items()))
    f = rep.frame
    lines.append(f"frame bounds: A = {f.lower:.15g}, B = {f.upper:.15g}, tight: {'yes' if f.tight else 'no'}")
    lines.append(f"SIC: {'yes' if rep.sic.is_sic else 'no'} (max overlap deviation {rep.sic.max_deviation:.3e})")
    lines.append(f"MUB union: {'yes' if rep.mub_union else 'no'}")
    if rep.probe_residuals:
        for k, v in rep.probe_residuals.items():
            lines.append(f"pointwise check k={k}: max residual {v:.3e}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    vs = _read_input(args.path)
    tol = args.tol if args.tol is not None else _default_tol()
    rep = certify(vs, k_max=args.kmax, tol=tol, cluster_tol=args.cluster_tol, probes=args.probes, seed=args.seed)
    print(format_report(rep))
    print("--- json ---")
    print(json.dumps(rep.as_dict(), indent=2))
    failures = []
    if args.sic and not rep.sic.is_sic:
        failures.append(f"not a SIC: max overlap deviation {rep.sic.max_deviation:.3e}, size {rep.size}")
    if args.mub and not rep.mub_union:
        failures.append("not a union of mutually unbiased bases")
    if args.expect_design is not None and rep.order < args.expect_design:
        k = rep.order + 1
        worst = rep.welch.residual(k) if k < len(rep.welch.rows) else float("nan")
        failures.append(f"design order {rep.order} < {args.expect_design}: Welch residual {worst:.3e} at k={k}")
    for msg in failures:
        print(f"FAIL: {msg}", file=sys.stderr)
    return 1 if failures else 0


def cmd_partition(args) -> int:
    vs = _read_input(args.path)
    try:
        fam = partition_into_mubs(vs, tol=args.tol)
    except PartitionError as exc:
        witness = f" (witness: {list(exc.witness)})" if isinstance(exc, StructureError) else ""
        print(f"FAIL: {exc}{witness}", file=sys.stderr)
        return 1
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    groups = fam.provenance["groups"]
    files = []
    for i, (basis, idx) in enumerate(zip(fam.bases, groups)):
        name = f"basis_{i:02d}.json"
        io.write(out / name, basis.relabel(f"B{i}"), {"construction": "partition", "source": str(args.path), "indices": idx})
        files.append(name)
    summary = {"dim": fam.dim, "bases": len(fam), "residual": fam.residual, "files": files, "groups": groups}
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    print(f"recovered {len(fam)} mutually unbiased bases in C^{fam.dim} (residual {fam.residual:.3e}) -> {out}")
    return 0


def cmd_bounds(args) -> int:
    if args.n < 2:
        raise UsageError(f"bounds need N >= 2, got {args.n}")
    b = mub_count_bounds(args.n)
    print(f"{b.lower} ≤ M({b.n}) ≤ {b.upper}")
    print(f"lower: {b.lower_rule}")
    print(f"upper: {b.upper_rule}")
    for note in b.notes:
        print(f"note: {note}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mubdesigns", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a MUB family (or built-in SIC) and write it as JSON")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--squares", help="JSON list of Latin squares (symbols 1..d) for --method mols")
    p.add_argument("--hadamard", help="JSON d x d matrix of [re, im] pairs for --method mols")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="certify a vector-set file")
    p.add_argument("path")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--tol", type=float)
    p.add_argument("--cluster-tol", type=float, default=ANGLE_TOL)
    p.add_argument("--sic", action="store_true", help="require a SIC")
    p.add_argument("--mub", action="store_true", help="require a union of MUBs")
    p.add_argument("--expect-design", type=int, metavar="T", help="require design order >= T")
    p.add_argument("--probes", type=int, default=0, help="random points for the pointwise Welch check")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("partition", help="split a 2-design with angles {0, 1/d} into MUBs")
    p.add_argument("path")
    p.add_argument("--out", default=".")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("bounds", help="bounds on the number of MUBs in dimension N")
    p.add_argument("n", type=int, metavar="N")
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
