"""Command-line front end: root-system data, certification, classification.

Exit codes: 0 certified / success, 1 residual failure, 2 usage or parse
error, 3 not admissible (wrong u(1) padding).

Space grammar: FACTORS ["/" QUOTIENT] where FACTORS is a list of
family-rank tokens and u(1) factors joined by "x" (e.g. "A2", "A3xU1^1",
"B3xU1^2"), and QUOTIENT is a comma-separated list of centralizer-summand
labels plus an optional "u1" marker for the Abelian part (e.g.
"B3xU1^2/A1:gamma", "A3xU1^1/A1:beta,u1").
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import spaces
from .rootsys import (
    UnsupportedAlgebraError,
    basic_root_chain,
    build_root_system,
    extended_dynkin_surgery,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_ADMISSIBLE = 3

MAX_RANK = {"A": 8, "B": 4, "C": 4, "D": 5}


class SpecParseError(ValueError):
    pass


@dataclass
class CliConfig:
    tolerance: float = 1e-9
    fd_step: float = 1e-4
    output_format: str = "text"
    jobs: int = 1

    def validate(self):
        if not (0 < self.tolerance <= 1e-3):
            raise SpecParseError(f"tolerance must lie in (0, 1e-3], got {self.tolerance:g}")
        if not (0 < self.fd_step <= 1e-2):
            raise SpecParseError(f"fd-step must lie in (0, 1e-2], got {self.fd_step:g}")


# ---------------------------------------------------------------------------
# canonical JSON: sorted keys, 17 significant digits, byte-stable round trips

def _fmt(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            return '"%s"' % value
        return "%.17g" % value
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        items = sorted(value.items())
        return "{" + ",".join(f"{json.dumps(str(k))}:{_fmt(v)}" for k, v in items) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_fmt(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value)!r}")


def canonical_json(obj) -> str:
    return _fmt(obj)


# ---------------------------------------------------------------------------
# spec-string parsing

_FACTOR_RE = re.compile(r"^([A-Da-d])(\d+)$")
_U1_RE = re.compile(r"^[Uu]1(?:\^(\d+))?$")


def parse_space_string(text: str) -> spaces.SpaceSpec:
    text = text.strip()
    if not text:
        raise SpecParseError("empty space string")
    if text.count("/") > 1:
        raise SpecParseError("at most one quotient part is allowed")
    head, slash, quot = text.partition("/")
    if slash and not quot.strip():
        raise SpecParseError("empty quotient after '/'")

    factors = []
    u1 = 0
    for token in head.split("x"):
        token = token.strip()
        if not token:
            raise SpecParseError(f"empty factor in {head!r}")
        m = _U1_RE.match(token)
        if m:
            u1 += int(m.group(1) or 1)
            continue
        m = _FACTOR_RE.match(token)
        if not m:
            raise SpecParseError(
                f"cannot parse factor {token!r}; expected e.g. A2, B3 or U1^2")
        factors.append((m.group(1).upper(), int(m.group(2))))
    if not factors:
        raise SpecParseError("need at least one simple factor")

    selections = ()
    if quot:
        if len(factors) != 1:
            raise SpecParseError("quotients are only supported for a single simple factor")
        family, rank = factors[0]
        try:
            levels = basic_root_chain(build_root_system(family, rank))
        except UnsupportedAlgebraError as exc:
            raise SpecParseError(str(exc))
        include_abelian = False
        refs = []
        for item in quot.split(","):
            item = item.strip()
            if not item:
                raise SpecParseError("empty quotient item")
            if _U1_RE.match(item):
                include_abelian = True
            else:
                refs.append(item)
        resolved = []
        for ref in refs:
            hits = [(lv, node.label) for lv in range(1, len(levels))
                    for node in levels[lv]
                    if node.label == ref or node.label.split(":")[0] == ref]
            if not hits:
                known = [n.label for lv in levels[1:] for n in lv]
                raise SpecParseError(f"unknown summand {ref!r}; available: {known}")
            if len(hits) > 1:
                raise SpecParseError(
                    f"summand {ref!r} is ambiguous; use one of "
                    f"{[lbl for _, lbl in hits]}")
            resolved.append(hits[0])
        lvls = {lv for lv, _ in resolved} or {1}
        if len(lvls) > 1:
            raise SpecParseError("all quotient summands must sit at the same level")
        level = lvls.pop()
        selections = (spaces.LevelSelection(
            level=level, summands=tuple(lbl for _, lbl in resolved),
            include_abelian=include_abelian),)
    return spaces.SpaceSpec(tuple(factors), u1, selections)


def _check_rank_range(family: str, rank: int) -> None:
    cap = MAX_RANK.get(family)
    if cap is None:
        raise SpecParseError(f"unknown family {family!r}")
    if rank > cap:
        raise SpecParseError(
            f"rank {rank} for family {family} is outside the supported range (<= {cap})")


# ---------------------------------------------------------------------------
# commands

def cmd_roots(args, cfg: CliConfig) -> int:
    m = _FACTOR_RE.match(args.system.strip())
    if not m:
        raise SpecParseError(f"cannot parse root system {args.system!r}; expected e.g. B3")
    family, rank = m.group(1).upper(), int(m.group(2))
    _check_rank_range(family, rank)
    rs = build_root_system(family, rank)
    surgery = extended_dynkin_surgery(rs)
    if cfg.output_format == "json":
        doc = rs.to_json_dict()
        doc["surgery"] = {
            "summands": [f"{f}{r}" for f, r in surgery.shapes],
            "abelian_rank": surgery.abelian_rank,
        }
        print(canonical_json(doc))
        return EXIT_OK
    print(f"root system {family}{rank}")
    print(f"  simple roots ({rank}):")
    for i, r in enumerate(rs.simple_roots):
        print(f"    {rs.root_label(r):<8} {r}")
    print(f"  positive roots ({len(rs.positive_roots)}):")
    for r in rs.positive_roots:
        print(f"    {r}   [{r.length_class}]")
    print("  cartan matrix:")
    for row in rs.cartan_matrix:
        print("    " + " ".join(f"{v:3d}" for v in row))
    print(f"  highest root: {rs.highest_root} = "
          + " + ".join(f"{c}*{rs.root_label(s)}" for c, s in zip(rs.dynkin_labels, rs.simple_roots) if c))
    summands = " + ".join(f"{f}{r}" for f, r in surgery.shapes) or "none"
    print(f"  surgery of the extended diagram: {summands}"
          f" (+ {surgery.abelian_rank} abelian direction(s))")
    return EXIT_OK


def _verdict_exit(report: spaces.VerificationReport) -> int:
    return {"certified": EXIT_OK, "failed": EXIT_FAILED,
            "not-admissible": EXIT_NOT_ADMISSIBLE}[report.verdict]


def _print_report(report: spaces.VerificationReport, cfg: CliConfig) -> None:
    if cfg.output_format == "json":
        print(canonical_json(report.to_json_dict()))
        return
    print(f"space: {report.name}")
    if report.verdict == "not-admissible":
        print(f"verdict: not-admissible ({report.message})")
        return
    def fmt(coords):
        return "(" + ",".join(coords) + ")"

    print(f"dimension: {report.dimension}")
    print(f"u(1) padding: {report.padding_required}")
    print("basic roots: " + "; ".join(f"{lbl} theta={fmt(c)} (level {lv})"
                                      for lbl, c, lv in report.basic_roots_used))
    print("automorphisms: " + "; ".join(f"{kind}-kind at {fmt(c)} (level {lv})"
                                        for c, kind, lv in report.automorphisms))
    for name in sorted(report.residuals):
        r = report.residuals[name]
        nij = "n/a" if r.nijenhuis is None else f"{r.nijenhuis:.3e}"
        print(f"residuals[{name}]: integrability={r.integrability:.3e} "
              f"square={r.square:.3e} bismut={r.bismut:.3e} "
              f"torsion_match={r.torsion_match:.3e} nijenhuis={nij}")
    print(f"quaternion residual: {report.quaternion:.3e}")
    print(f"K-route mismatch: {report.k_mismatch:.3e}")
    print(f"subspace leak: {report.invariance_leak:.3e}")
    print(f"coset closure (reported): {report.coset_closure:.3e}")
    print(f"verdict: {report.verdict}")


def cmd_verify(args, cfg: CliConfig) -> int:
    spec = parse_space_string(args.space)
    for family, rank in spec.factors:
        _check_rank_range(family, rank)
    report = spaces.build_coset_triple(spec, tol=cfg.tolerance, fd_step=cfg.fd_step)
    _print_report(report, cfg)
    return _verdict_exit(report)


def cmd_classify(args, cfg: CliConfig) -> int:
    family = args.family.upper()
    _check_rank_range(family, args.max_rank)
    rows = spaces.classify_family(family, args.max_rank)
    if cfg.output_format == "json":
        print(canonical_json([{
            "family": r.family, "rank": r.rank, "name": r.name,
            "group_dim": r.group_dim, "padding": r.padding, "total_dim": r.total_dim,
        } for r in rows]))
        return EXIT_OK
    print(f"{'group':<10} {'rank':>4} {'dim':>5} {'u(1) padding':>13} {'total dim':>10}")
    for r in rows:
        print(f"{r.name:<10} {r.rank:>4} {r.group_dim:>5} {r.padding:>13} {r.total_dim:>10}")
    return EXIT_OK


def _verify_one(payload):
    text, tol, fd_step = payload
    spec = parse_space_string(text)
    report = spaces.build_coset_triple(spec, tol=tol, fd_step=fd_step)
    return report


def _spec_to_string(spec: spaces.SpaceSpec) -> str:
    head = "x".join(f"{f}{r}" for f, r in spec.factors)
    if spec.u1_count:
        head += f"xU1^{spec.u1_count}"
    if spec.selections:
        sel = spec.selections[0]
        items = list(sel.summands) + (["u1"] if sel.include_abelian else [])
        head += "/" + ",".join(items)
    return head


def cmd_catalog(args, cfg: CliConfig) -> int:
    family = args.family.upper()
    _check_rank_range(family, args.rank)
    specs = spaces.enumerate_quotients((family, args.rank), max_level=args.max_level)
    rows = []
    reports = None
    if args.verify:
        payloads = [(_spec_to_string(sp), cfg.tolerance, None) for sp in specs]
        if cfg.jobs > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                reports = list(pool.map(_verify_one, payloads))
        else:
            reports = [_verify_one(p) for p in payloads]
        for sp, rep in zip(specs, reports):
            worst = max((r.worst() for r in rep.residuals.values()), default=float("inf"))
            rows.append({"space": rep.name, "string": _spec_to_string(sp),
                         "dimension": rep.dimension, "padding": sp.u1_count,
                         "verdict": rep.verdict, "max_residual": worst})
    else:
        for sp in specs:
            rows.append({"space": sp.name, "string": _spec_to_string(sp),
                         "padding": sp.u1_count})
    if cfg.output_format == "json":
        if reports is not None:
            print(canonical_json([r.to_json_dict() for r in reports]))
        else:
            print(canonical_json(rows))
    else:
        for row in rows:
            line = f"{row['space']:<44} [{row['string']}]"
            if "verdict" in row:
                line += f" dim={row['dimension']:<3} {row['verdict']}"
                line += f" (max residual {row['max_residual']:.2e})"
            print(line)
    if args.verify and any(r["verdict"] != "certified" for r in rows):
        return EXIT_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hkt",
        description="Construct quaternion triples of complex structures on compact "
                    "group manifolds and homogeneous spaces, and certify them numerically.")
    p.add_argument("--tol", type=float, default=None,
                   help="residual tolerance (default 1e-9; env HKT_TOL)")
    p.add_argument("--fd-step", type=float, default=1e-4,
                   help="finite-difference step for the integrability cross-check")
    p.add_argument("--json", action="store_true", help="canonical JSON output")
    p.add_argument("--jobs", default="1",
                   help="parallel verifications for catalog ('auto' or a number)")
    sub = p.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("roots", help="print a root system and its diagram surgery")
    pr.add_argument("system", help="family and rank, e.g. B3")
    pr.set_defaults(func=cmd_roots)

    pv = sub.add_parser("verify", help="certify one space, e.g. A2 or B3xU1^2/A1:gamma")
    pv.add_argument("space")
    pv.set_defaults(func=cmd_verify)

    pc = sub.add_parser("classify", help="padding table for one family")
    pc.add_argument("family", help="A, B, C or D")
    pc.add_argument("max_rank", type=int)
    pc.set_defaults(func=cmd_classify)

    pk = sub.add_parser("catalog", help="enumerate (and optionally verify) quotients")
    pk.add_argument("family")
    pk.add_argument("rank", type=int)
    pk.add_argument("max_level", type=int, nargs="?", default=8)
    pk.add_argument("--verify", action="store_true")
    pk.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = args.tol
        if tol is None:
            tol = float(os.environ.get("HKT_TOL", "1e-9"))
        jobs = os.cpu_count() if args.jobs == "auto" else int(args.jobs)
        cfg = CliConfig(tolerance=tol, fd_step=args.fd_step,
                        output_format="json" if args.json else "text",
                        jobs=max(1, jobs))
        cfg.validate()
        return args.func(args, cfg)
    except (SpecParseError, UnsupportedAlgebraError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
