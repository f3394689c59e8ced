"""Admissibility classification, quotient enumeration and certification.

A compact group manifold carries a quaternion triple of integrable complex
structures when its Cartan torus is exactly twice as large as the set of
basic roots of the iterated highest-root construction; u(1) factors are
appended to make up the difference.  Quotients by centralizer summands
(with or without their Abelian parts) inherit the construction: the
automorphisms attached to quotiented summands are dropped and the
structures are restricted to the coset directions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import autom, cstruct
from .cstruct import PairingError
from .liealg import build_matrix_rep
from .rootsys import (
    ChainNode,
    UnsupportedAlgebraError,
    basic_root_chain,
    basic_root_count,
    build_root_system,
    chain_nodes,
)

DEFAULT_TOL = 1e-9
LEAK_TOL = 1e-12

GROUP_NAMES = {"A": lambda r: f"SU({r + 1})", "B": lambda r: f"Spin({2 * r + 1})",
               "C": lambda r: f"Sp({r})", "D": lambda r: f"Spin({2 * r})"}

GROUP_DIMS = {"A": lambda r: (r + 1) ** 2 - 1, "B": lambda r: r * (2 * r + 1),
              "C": lambda r: r * (2 * r + 1), "D": lambda r: r * (2 * r - 1)}


def group_name(family: str, rank: int) -> str:
    return GROUP_NAMES[family](rank)


@dataclass(frozen=True)
class LevelSelection:
    """Quotient choice at one chain level: summands and the Abelian part."""

    level: int
    summands: tuple      # node labels, e.g. ("A1:gamma",)
    include_abelian: bool = False


@dataclass(frozen=True)
class SpaceSpec:
    """A (possibly quotiented) product of simple factors and u(1) circles."""

    factors: tuple       # ((family, rank), ...)
    u1_count: int
    selections: tuple = ()

    @property
    def name(self) -> str:
        base = " x ".join(group_name(f, r) for f, r in self.factors)
        quo = []
        for sel in self.selections:
            quo += list(sel.summands)
            if sel.include_abelian:
                quo.append(f"U(1)-part@L{sel.level}")
        if quo:
            base = f"{base} / ({' x '.join(quo)})"
        if self.u1_count == 1:
            base += " x U(1)"
        elif self.u1_count > 1:
            base += f" x [U(1)]^{self.u1_count}"
        return base


def required_padding(factors) -> int:
    """u(1) factors needed so the Cartan space pairs off: 2 n_b - rank, summed."""
    total = 0
    for family, rank in factors:
        total += 2 * basic_root_count(build_root_system(family, rank)) - rank
    return total


@dataclass(frozen=True)
class ClassRow:
    family: str
    rank: int
    name: str
    group_dim: int
    padding: int
    total_dim: int


def classify_family(family: str, max_rank: int) -> list:
    """Padding table for one classical family up to max_rank.

    Rank-1 B and C entries are the su(2) coincidences Spin(3) = Sp(1) = SU(2)
    and are classified through A1.
    """
    family = family.upper()
    if family not in GROUP_NAMES:
        raise UnsupportedAlgebraError(f"unknown family {family!r}")
    rows = []
    start = 3 if family == "D" else 1
    for rank in range(start, max_rank + 1):
        if family in ("B", "C") and rank == 1:
            p = required_padding([("A", 1)])
            dim = 3
        else:
            p = required_padding([(family, rank)])
            dim = GROUP_DIMS[family](rank)
        rows.append(ClassRow(family=family, rank=rank, name=group_name(family, rank),
                             group_dim=dim, padding=p, total_dim=dim + p))
    return rows


def _subtree(node: ChainNode):
    yield node
    for child in node.children:
        yield from _subtree(child)


def spec_required_padding(spec: "SpaceSpec") -> int:
    """u(1) factors the spec must carry: twice the remaining basic roots
    minus the remaining Cartan directions."""
    if not spec.selections:
        return required_padding(spec.factors)
    family, rank = spec.factors[0]
    rs = build_root_system(family, rank)
    levels = basic_root_chain(rs)
    nodes = chain_nodes(levels)
    tops, abelian_levels = _resolve_selections(levels, spec.selections)
    removed = [n for t in tops for n in _subtree(t)]
    removed_csa = sum(t.subsystem.rank for t in tops)
    removed_csa += sum(n.abelian_dim for lv in abelian_levels for n in levels[lv])
    return 2 * (len(nodes) - len(removed)) - (rank - removed_csa)


def enumerate_quotients(factor, max_level: int = 8) -> list:
    """All quotient specs of one simple factor up to the given chain level.

    Level 0 is the padded group manifold itself; at level k every subset of
    the level-k centralizer summands may be quotiented, with or without the
    centralizer's Abelian part, and the result is re-padded so the remaining
    Cartan directions pair off with the remaining basic roots.
    """
    family, rank = factor
    rs = build_root_system(family, rank)
    levels = basic_root_chain(rs)
    nodes = chain_nodes(levels)

    specs = [SpaceSpec(((family, rank),), required_padding([(family, rank)]))]
    for k in range(1, max_level + 1):
        summands = levels[k] if k < len(levels) else ()
        parents = levels[k - 1] if k - 1 < len(levels) else ()
        abelian_dim = sum(n.abelian_dim for n in parents)
        if not summands and abelian_dim == 0:
            break
        for count in range(len(summands) + 1):
            for subset in itertools.combinations(summands, count):
                for with_ab in ((False, True) if abelian_dim else (False,)):
                    if not subset and not with_ab:
                        continue
                    removed = [n for top in subset for n in _subtree(top)]
                    remaining = len(nodes) - len(removed)
                    removed_csa = sum(top.subsystem.rank for top in subset)
                    if with_ab:
                        removed_csa += abelian_dim
                    padding = 2 * remaining - (rank - removed_csa)
                    if padding < 0:
                        continue
                    sel = LevelSelection(level=k, summands=tuple(n.label for n in subset),
                                         include_abelian=with_ab)
                    spec = SpaceSpec(((family, rank),), padding, (sel,))
                    dim = (GROUP_DIMS[family](rank) + padding
                           - sum(top.subsystem.dimension for top in subset)
                           - (abelian_dim if with_ab else 0))
                    if dim % 4:
                        raise RuntimeError(f"tangent dimension {dim} of {spec.name} is not 4k")
                    specs.append(spec)
    return specs


# ---------------------------------------------------------------------------
# verification

@dataclass
class VerificationReport:
    spec: SpaceSpec
    name: str
    dimension: int
    padding_required: int
    basic_roots_used: tuple
    automorphisms: tuple
    residuals: dict
    quaternion: float
    k_mismatch: float
    invariance_leak: float
    coset_closure: float
    verdict: str
    tolerance: float
    message: str = ""

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "factors": [[f, r] for f, r in self.spec.factors],
            "u1_count": self.spec.u1_count,
            "quotient": [
                {"level": s.level, "summands": list(s.summands),
                 "include_abelian": s.include_abelian}
                for s in self.spec.selections],
            "dimension": self.dimension,
            "padding_required": self.padding_required,
            "basic_roots": [
                {"label": lbl, "coords": list(coords), "level": lvl}
                for lbl, coords, lvl in self.basic_roots_used],
            "automorphisms": [
                {"root": list(coords), "kind": kind, "level": lvl}
                for coords, kind, lvl in self.automorphisms],
            "residuals": {k: v.to_json_dict() for k, v in sorted(self.residuals.items())},
            "quaternion": self.quaternion,
            "k_mismatch": self.k_mismatch,
            "invariance_leak": self.invariance_leak,
            "coset_closure": self.coset_closure,
            "verdict": self.verdict,
            "tolerance": self.tolerance,
            "message": self.message,
        }


def _resolve_selections(levels, selections):
    """Map label selections to chain nodes; returns (removed tops, abelian levels)."""
    nodes_by_level = {k: list(lv) for k, lv in enumerate(levels)}
    tops = []
    abelian_levels = []
    for sel in selections:
        if sel.level < 1 or sel.level >= len(levels) + 1:
            raise ValueError(f"no centralizer at level {sel.level}")
        for label in sel.summands:
            candidates = [n for n in nodes_by_level.get(sel.level, [])
                          if n.label == label or n.label.split(":")[0] == label]
            if len(candidates) != 1:
                names = [n.label for n in nodes_by_level.get(sel.level, [])]
                raise ValueError(
                    f"summand {label!r} at level {sel.level} is "
                    f"{'ambiguous' if candidates else 'unknown'}; have {names}")
            tops.append(candidates[0])
        if sel.include_abelian:
            abelian_levels.append(sel.level - 1)
    seen = set()
    for t in tops:
        for n in _subtree(t):
            if id(n) in seen:
                raise ValueError("overlapping quotient selections")
            seen.add(id(n))
    return tops, abelian_levels


def _verify_factor(family, rank, padding, selections, tol, fd_step):
    """Build, quotient, restrict and measure one simple factor."""
    rep = build_matrix_rep(family, rank, padding)
    levels = rep.chain_levels
    chain = autom.basic_roots(rep)
    tops, abelian_levels = _resolve_selections(levels, selections)

    removed_nodes = [n for t in tops for n in _subtree(t)]
    removed_set = {id(n) for n in removed_nodes}
    remaining = [n for n in chain.nodes if id(n) not in removed_set]

    quotient_idx = set()
    for top in tops:
        for root in top.subsystem.positive_roots:
            ent = rep.root_entry(root)
            quotient_idx.update((ent.re_index, ent.im_index))
    for ax in rep.csa_axes:
        if ax.kind == "coroot" and any(ax.root.coords == n.theta.coords for n in removed_nodes):
            quotient_idx.add(ax.index)
        if ax.kind == "abelian" and (
                any(ax.node_label == n.label and ax.level == n.level for n in removed_nodes)
                or ax.level in abelian_levels):
            quotient_idx.add(ax.index)

    pairing = autom.make_csa_pairing(rep, remaining=remaining, removed_axes=sorted(quotient_idx))
    I = cstruct.canonical_I(rep, pairing, partial=bool(quotient_idx))

    autos = tuple(autom.automorphism_from_root(rep, n.theta, "J", n.level) for n in remaining)
    omega = autom.compose(autos, rep.dim)
    Jm = omega @ I.matrix @ omega.T
    Km = I.matrix @ Jm
    autos_k = tuple(autom.automorphism_from_root(rep, n.theta, "K", n.level) for n in remaining)
    omega_k = autom.compose(autos_k, rep.dim)
    k_mismatch = float(np.abs(Km - omega_k @ I.matrix @ omega_k.T).max())

    tangent = sorted(set(range(rep.dim)) - quotient_idx)
    qidx = sorted(quotient_idx)
    f = rep.structure_constants().f

    leak = 0.0
    leak_note = ""
    structures = {"I": I.matrix, "J": Jm, "K": Km}
    if qidx:
        for name, m in structures.items():
            sub = np.abs(m[np.ix_(qidx, tangent)])
            if sub.size and sub.max() > leak:
                leak = float(sub.max())
                qi, ti = np.unravel_index(np.argmax(sub), sub.shape)
                blk = next((b.description for b in I.blocks if tangent[ti] in b.indices),
                           f"index {tangent[ti]}")
                leak_note = f"{name} leaks out of {blk} into quotient index {qidx[qi]}"
            leak = max(leak, float(np.abs(m[np.ix_(tangent, qidx)]).max()))
        closure = float(np.abs(f[np.ix_(tangent, tangent, qidx)]).max())
    else:
        closure = 0.0

    ft = f[np.ix_(tangent, tangent, tangent)]
    restricted = {k: m[np.ix_(tangent, tangent)] for k, m in structures.items()}
    quat = cstruct.quaternion_residual(*restricted.values())

    reports = {}
    for name, m in restricted.items():
        integ = cstruct.integrability_residual(m, ft)
        sq = float(np.abs(m @ m + np.eye(len(tangent))).max())
        bis = cstruct.bismut_residual(m, ft)
        tors = (cstruct.torsion_match_residual(m, ft, tol)
                if integ <= tol else float("inf"))
        nij = (cstruct.nijenhuis_at_origin(rep, structures[name], fd_step)
               if fd_step and not qidx else None)
        reports[name] = cstruct.GeometryResidualReport(
            integrability=float(integ), square=sq, bismut=bis,
            torsion_match=float(tors), nijenhuis=nij)

    blocks = {name: cstruct.classify_blocks(m, I.blocks) for name, m in structures.items()}
    ok = (quat <= tol and leak <= LEAK_TOL and all(
        r.integrability <= tol and r.square <= tol and r.bismut <= 1e-12
        and r.torsion_match <= 10 * tol
        and (r.nijenhuis is None or r.nijenhuis <= 1e-5)
        for r in reports.values()))

    dim = len(tangent)
    basic = tuple((n.label, tuple(str(c) for c in n.theta.coords), n.level)
                  for n in remaining)
    autos_out = tuple((tuple(str(c) for c in a.root.coords), a.kind, a.level)
                      for a in autos)
    note = leak_note if leak > LEAK_TOL else ""
    return dim, basic, autos_out, reports, quat, k_mismatch, leak, closure, ok, note


def build_coset_triple(spec: SpaceSpec, tol: float = DEFAULT_TOL,
                       fd_step: float | None = None) -> VerificationReport:
    """Certify a (quotiented, padded) space; never raises on residual failure."""
    if spec.selections and len(spec.factors) != 1:
        raise ValueError("quotient selections are only supported for a single simple factor")

    def report_failure(verdict, message, padding_required):
        return VerificationReport(
            spec=spec, name=spec.name, dimension=0, padding_required=padding_required,
            basic_roots_used=(), automorphisms=(), residuals={},
            quaternion=float("inf"), k_mismatch=float("inf"),
            invariance_leak=float("inf"), coset_closure=float("inf"),
            verdict=verdict, tolerance=tol, message=message)

    # distribute the declared u(1) factors: each simple factor takes exactly
    # its own requirement (no cross-factor pairing)
    try:
        needed = spec_required_padding(spec)
        if needed != spec.u1_count or needed < 0:
            return report_failure(
                "not-admissible",
                f"{spec.name}: requires {max(needed, 0)} u(1) factor(s), got {spec.u1_count}",
                needed)
        if spec.selections:
            family, rank = spec.factors[0]
            per_factor = [(family, rank, spec.u1_count, spec.selections)]
        else:
            needs = [required_padding([f]) for f in spec.factors]
            per_factor = [(f, r, n, ()) for (f, r), n in zip(spec.factors, needs)]

        dims, basics, autos, quats, kmis, leaks, closures, oks = 0, [], [], [], [], [], [], []
        residuals = {}
        notes = []
        for family, rank, padding, sels in per_factor:
            (dim, basic, auto, reports, quat, km, leak, closure, ok, note) = _verify_factor(
                family, rank, padding, sels, tol, fd_step)
            dims += dim
            basics += list(basic)
            autos += list(auto)
            quats.append(quat)
            kmis.append(km)
            leaks.append(leak)
            closures.append(closure)
            oks.append(ok)
            if note:
                notes.append(note)
            for key, rep_ in reports.items():
                if key in residuals:
                    residuals[key] = cstruct.GeometryResidualReport(
                        integrability=max(residuals[key].integrability, rep_.integrability),
                        square=max(residuals[key].square, rep_.square),
                        bismut=max(residuals[key].bismut, rep_.bismut),
                        torsion_match=max(residuals[key].torsion_match, rep_.torsion_match),
                        nijenhuis=rep_.nijenhuis if residuals[key].nijenhuis is None
                        else max(residuals[key].nijenhuis, rep_.nijenhuis or 0.0))
                else:
                    residuals[key] = rep_
    except PairingError as exc:
        return report_failure("not-admissible", f"{spec.name}: {exc}",
                              spec_required_padding(spec))

    return VerificationReport(
        spec=spec, name=spec.name, dimension=dims,
        padding_required=needed,
        basic_roots_used=tuple(basics), automorphisms=tuple(autos),
        residuals=residuals, quaternion=max(quats), k_mismatch=max(kmis),
        invariance_leak=max(leaks), coset_closure=max(closures),
        verdict="certified" if all(oks) else "failed", tolerance=tol,
        message="; ".join(notes))


def verify_spec(spec: SpaceSpec, tol: float = DEFAULT_TOL,
                fd_step: float | None = None) -> VerificationReport:
    return build_coset_triple(spec, tol=tol, fd_step=fd_step)
