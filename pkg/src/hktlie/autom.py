"""Algebra automorphisms from group conjugation and the quaternion triple.

For a root theta with Chevalley vectors E_{+-theta}, conjugation by

    U = exp(i pi/4 (E_theta + E_-theta))        (J-kind)
    U = exp(  pi/4 (E_theta - E_-theta))        (K-kind)

induces an orthogonal matrix Omega on generator coefficients that preserves
the structure constants.  Composing the J-kind automorphisms of all basic
roots (outer level first) rotates the canonical complex structure I into an
anticommuting partner J; K = I J closes the quaternion algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

from . import cstruct
from .cstruct import CsaPairing, ComplexStructure, PairingError, canonical_I
from .liealg import AlgebraRep, DEFAULT_TOL
from .rootsys import (
    ChainNode,
    Root,
    chain_nodes,
    extended_dynkin_surgery,
    split_subsystems,
)


class DecompositionMismatchError(RuntimeError):
    """Commutator-based centralizer disagrees with the diagram surgery."""


@dataclass(eq=False)
class Automorphism:
    """Orthogonal action on generator coefficients, Omega t_A = sum_B Omega_BA t_B."""

    matrix: np.ndarray
    root: Root
    kind: str            # "J" | "K"
    level: int

    def orthogonality_residual(self) -> float:
        m = self.matrix
        return float(np.abs(m @ m.T - np.eye(m.shape[0])).max())

    def invariance_residual(self, f) -> float:
        ff = f.f if hasattr(f, "f") else np.asarray(f)
        m = self.matrix
        rotated = np.einsum("da,eb,fc,def->abc", m, m, m, ff, optimize=True)
        return float(np.abs(rotated - ff).max())


def adjoint_action(rep: AlgebraRep, u: np.ndarray) -> np.ndarray:
    """Omega_BA = Tr((U^dag t_A U) t_B) / C, the coefficient action of X -> U^dag X U."""
    g = rep.generators
    rotated = np.einsum("ij,ajk,kl->ail", u.conj().T, g, u, optimize=True)
    omega = np.einsum("aij,bji->ba", rotated, g, optimize=True) / rep.norm_const
    if np.abs(omega.imag).max() > 1e-10:
        raise RuntimeError("adjoint action is not real on the Hermitian basis")
    return np.ascontiguousarray(omega.real)


def hadamard_adjoint(r: np.ndarray, x: np.ndarray, tol: float = 1e-16,
                     max_terms: int = 80) -> np.ndarray:
    """e^R X e^-R summed term by term; the series oracle for adjoint_action."""
    out = x.copy()
    term = x.copy()
    scale = max(np.abs(x).max(), 1.0)
    for n in range(1, max_terms):
        term = (r @ term - term @ r) / n
        out = out + term
        if np.abs(term).max() < tol * scale:
            return out
    raise RuntimeError("commutator series did not converge")


def automorphism_from_root(rep: AlgebraRep, theta: Root, kind: str = "J",
                           level: int = 0, tol: float = 1e-10) -> Automorphism:
    """The orthogonal generator action induced by the theta rotation."""
    e = rep.root_vector(theta)
    edag = e.conj().T
    if kind == "J":
        u = scipy.linalg.expm(1j * np.pi / 4.0 * (e + edag))
    elif kind == "K":
        u = scipy.linalg.expm(np.pi / 4.0 * (e - edag))
    else:
        raise ValueError(f"kind must be 'J' or 'K', got {kind!r}")
    omega = adjoint_action(rep, u)
    auto = Automorphism(matrix=omega, root=theta, kind=kind, level=level)
    ortho = auto.orthogonality_residual()
    if ortho > tol:
        raise RuntimeError(
            f"automorphism for {theta} lost orthogonality: residual {ortho:.2e}")
    return auto


# ---------------------------------------------------------------------------
# centralizers and the basic-root chain

@dataclass(eq=False)
class CentralizerDecomposition:
    """Generators commuting with a set of root vectors, split into summands."""

    summands: tuple              # RootSubsystem, ...
    abelian_vectors: np.ndarray  # orthonormal commuting Cartan directions (D-dim rows)
    generator_indices: tuple     # all semisimple-part generator indices in the centralizer

    @property
    def dimension(self) -> int:
        return len(self.generator_indices) + self.abelian_vectors.shape[0]

    @property
    def shapes(self) -> tuple:
        return tuple((s.family, s.rank) for s in self.summands)


def centralizer(rep: AlgebraRep, thetas: Iterable[Root],
                tol: float = 1e-9) -> CentralizerDecomposition:
    """All semisimple-part generators X with [X, E_{+-theta}] = 0 for every theta.

    Cross-checked against the root combinatorics: the commuting root pairs
    must be exactly the roots orthogonal to every theta, and for a single
    highest root the summand shapes must match the extended-diagram surgery.
    """
    thetas = list(thetas)
    evs = [rep.root_vector(t) for t in thetas]
    evs += [e.conj().T for e in evs]
    scale = max(np.abs(e).max() for e in evs)

    def commutes(mat):
        return all(np.abs(mat @ e - e @ mat).max() <= 100 * tol * scale for e in evs)

    rs = rep.root_system
    commuting_roots = []
    indices = []
    for root in rs.positive_roots:
        ent = rep.root_entry(root)
        ok = commutes(rep.generators[ent.re_index]) and commutes(rep.generators[ent.im_index])
        expected = all(root.dot(t) == 0 for t in thetas)
        if ok != expected:
            raise DecompositionMismatchError(
                f"root {root}: commutator test says {ok}, orthogonality says {expected}")
        if ok:
            commuting_roots.append(root)
            indices += [ent.re_index, ent.im_index]

    summands = split_subsystems(rs, tuple(commuting_roots))
    if len(thetas) == 1 and thetas[0].coords == rs.highest_root.coords:
        surgery = extended_dynkin_surgery(rs)
        if sorted(surgery.shapes) != sorted((s.family, s.rank) for s in summands):
            raise DecompositionMismatchError(
                f"centralizer shapes {[(s.family, s.rank) for s in summands]} disagree "
                f"with diagram surgery {surgery.shapes}")

    # commuting Cartan directions: theta(h) = 0, i.e. orthogonal to the
    # coroot directions of all thetas; exclude the summand Cartan spans
    csa_idx = list(rep.csa_indices)
    rows = []
    for t in thetas:
        a = rep.eigen_coords(t)
        rows.append(a[:len(csa_idx)])
    for s in summands:
        for simple in s.simple_roots:
            rows.append(rep.eigen_coords(simple)[:len(csa_idx)])
    rows = np.array(rows) if rows else np.zeros((0, len(csa_idx)))
    basis = []
    for k in range(len(csa_idx)):
        v = np.eye(len(csa_idx))[k]
        for r in rows:
            rn = r / np.linalg.norm(r)
            v = v - (rn @ v) * rn
        for b in basis:
            v = v - (b @ v) * b
        n = np.linalg.norm(v)
        if n > 1e-9:
            basis.append(v / n)
    abelian = np.zeros((len(basis), rep.dim))
    for i, v in enumerate(basis):
        for c, idx in zip(v, csa_idx):
            abelian[i, idx] = c
    return CentralizerDecomposition(
        summands=summands, abelian_vectors=abelian, generator_indices=tuple(sorted(indices)))


@dataclass(eq=False)
class BasicRootChain:
    """Levels of iterated highest roots; each entry carries its subsystem."""

    levels: tuple        # tuple of tuples of ChainNode
    rep: AlgebraRep

    @property
    def nodes(self) -> tuple:
        return chain_nodes(self.levels)

    @property
    def thetas(self) -> tuple:
        return tuple(n.theta for n in self.nodes)

    def coroot_orthogonality_residual(self) -> float:
        vecs = [self.rep.eigen_coords(t) for t in self.thetas]
        worst = 0.0
        for i in range(len(vecs)):
            for j in range(i + 1, len(vecs)):
                worst = max(worst, abs(float(vecs[i] @ vecs[j])))
        return worst


def basic_roots(rep: AlgebraRep) -> BasicRootChain:
    """The iterated highest-root chain, numerically cross-checked level by level.

    For every node, the roots of its subsystem whose generators commute with
    E_{+-theta} (a numerical test) must decompose into exactly the child
    subsystems found combinatorially.
    """
    chain = BasicRootChain(levels=rep.chain_levels, rep=rep)
    rs = rep.root_system
    for node in chain.nodes:
        e = rep.root_vector(node.theta)
        edag = e.conj().T
        scale = np.abs(e).max()
        commuting = []
        for mu in node.subsystem.positive_roots:
            if mu.coords == node.theta.coords:
                continue
            ent = rep.root_entry(mu)
            ok = all(
                np.abs(rep.generators[idx] @ v - v @ rep.generators[idx]).max() <= 1e-7 * scale
                for idx in (ent.re_index, ent.im_index) for v in (e, edag))
            if ok != (mu.dot(node.theta) == 0):
                raise DecompositionMismatchError(
                    f"node {node.label}, root {mu}: commutator test and orthogonality disagree")
            if ok:
                commuting.append(mu)
        got = sorted(s.highest_root.coords for s in split_subsystems(rs, tuple(commuting)))
        want = sorted(c.theta.coords for c in node.children)
        if got != want:
            raise DecompositionMismatchError(
                f"chain node {node.label}: children {want} vs centralizer result {got}")
    resid = chain.coroot_orthogonality_residual()
    if resid > 1e-9:
        raise DecompositionMismatchError(f"basic coroots are not orthogonal: {resid:.2e}")
    return chain


def make_csa_pairing(rep: AlgebraRep, remaining: Sequence[ChainNode] | None = None,
                     removed_axes: Sequence[int] = ()) -> CsaPairing:
    """Pair unit basic-coroot axes with the leftover Cartan/u(1) axes.

    `remaining` restricts to a subset of chain nodes (for quotients);
    `removed_axes` drops Cartan axes that belong to a quotiented subalgebra.
    """
    nodes = list(remaining if remaining is not None else chain_nodes(rep.chain_levels))
    removed = set(removed_axes)
    t_idx = [rep.coroot_axis_index(n.theta) for n in nodes]
    e_idx = [ax.index for ax in rep.csa_axes
             if ax.kind in ("abelian", "u1")
             and ax.index not in removed and ax.index not in t_idx]
    if len(e_idx) != len(t_idx):
        raise PairingError(
            f"cannot pair {len(t_idx)} basic coroot(s) with {len(e_idx)} leftover "
            f"Cartan/u(1) direction(s); requires {len(t_idx) - len(e_idx)} more u(1) factor(s)")

    def unit(idx):
        v = np.zeros(rep.dim)
        v[idx] = 1.0
        return v

    pairing = CsaPairing(
        t_vectors=tuple(unit(i) for i in t_idx),
        e_vectors=tuple(unit(i) for i in e_idx),
        t_indices=tuple(t_idx), e_indices=tuple(e_idx))
    pairing.validate()
    return pairing


# ---------------------------------------------------------------------------
# the quaternion triple

@dataclass(eq=False)
class TripleResult:
    I: ComplexStructure
    J: ComplexStructure
    K: ComplexStructure
    automorphisms: tuple
    quaternion_residual: float
    k_mismatch: float
    reports: dict        # "I"/"J"/"K" -> GeometryResidualReport
    certified: bool


def compose(automorphisms: Sequence[Automorphism], dim: int) -> np.ndarray:
    """Ordered product, outermost level first (applied first)."""
    total = np.eye(dim)
    for a in sorted(automorphisms, key=lambda a: a.level):
        total = a.matrix @ total
    return total


def build_quaternion_triple(rep: AlgebraRep, chain: BasicRootChain | None = None,
                            pairing: CsaPairing | None = None,
                            tol: float = DEFAULT_TOL,
                            fd_step: float | None = None) -> TripleResult:
    """I, J = Omega I Omega^T, K = I J, with all residuals evaluated.

    Residuals beyond tolerance yield certified=False, not an exception.
    """
    chain = chain or basic_roots(rep)
    pairing = pairing or make_csa_pairing(rep)
    f = rep.structure_constants()

    I = canonical_I(rep, pairing)
    autos = tuple(automorphism_from_root(rep, n.theta, "J", n.level) for n in chain.nodes)
    omega = compose(autos, rep.dim)
    Jm = omega @ I.matrix @ omega.T
    Km = I.matrix @ Jm

    autos_k = tuple(automorphism_from_root(rep, n.theta, "K", n.level) for n in chain.nodes)
    omega_k = compose(autos_k, rep.dim)
    k_mismatch = float(np.abs(Km - omega_k @ I.matrix @ omega_k.T).max())

    J = ComplexStructure(Jm, I.blocks).tagged()
    K = ComplexStructure(Km, I.blocks).tagged()

    quat = cstruct.quaternion_residual(I, J, K)
    reports = {name: cstruct.geometry_report(rep, s, tol=tol, fd_step=fd_step)
               for name, s in (("I", I), ("J", J), ("K", K))}
    certified = quat <= tol and all(
        r.integrability <= tol and r.square <= tol and r.bismut <= 1e-12
        and r.torsion_match <= 10 * tol
        and (r.nijenhuis is None or r.nijenhuis <= 1e-5)
        for r in reports.values())
    return TripleResult(I=I, J=J, K=K, automorphisms=autos,
                        quaternion_residual=quat, k_mismatch=k_mismatch,
                        reports=reports, certified=certified)
