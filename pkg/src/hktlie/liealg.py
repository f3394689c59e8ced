"""Matrix representations of the compact classical algebras.

Builds an orthonormal Hermitian generator basis Tr(t_A t_B) = C delta_AB that
is adapted to the root structure: every positive root alpha owns a pair of
generators with E_alpha = nu_alpha (t_A + i t_A*), and the Cartan directions
are aligned with the iterated-highest-root construction (unit vectors along
the basic coroots first, the leftover commuting directions after them).

Representations used: defining for A_n (dim n+1) and C_n (dim 2n), vector for
B_n (dim 2n+1) and D_n (dim 2n).  For B_3 an 8-dimensional spinor
representation is available as well; it is the faithful choice for coroot
periodicity checks.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.linalg

from .rootsys import (
    Root,
    RootSystem,
    UnsupportedAlgebraError,
    basic_root_chain,
    build_root_system,
    chain_nodes,
    coroot,
)

DEFAULT_TOL = 1e-9

#: trace normalization Tr(t_A t_B) = C per family (defining/vector reps)
NORM_CONST = {"A": 0.5, "B": 2.0, "C": 2.0, "D": 2.0}


class ConstructionError(RuntimeError):
    """Numerical failure while assembling a generator basis."""


def _np_coords(coords: Sequence[Fraction]) -> np.ndarray:
    return np.array([float(c) for c in coords])


@dataclass(frozen=True)
class RootVectorEntry:
    """Indices and scale with E_alpha = scale * (t[re] + i t[im])."""

    re_index: int
    im_index: int
    scale: float


@dataclass(frozen=True, eq=False)
class CsaAxis:
    """One Cartan (or appended Abelian) generator with its functional data."""

    index: int
    kind: str                 # "coroot" | "abelian" | "u1"
    level: int
    node_label: str
    root: Root | None         # the basic root, for kind == "coroot"
    functional: np.ndarray    # w with alpha(h) = w . alpha_std; zeros for u1


@dataclass(eq=False)
class StructureConstants:
    """Totally antisymmetric f_ABC with [t_A, t_B] = i f_ABC t_C."""

    f: np.ndarray

    @property
    def dim(self) -> int:
        return self.f.shape[0]

    def antisymmetry_residual(self) -> float:
        f = self.f
        return max(np.abs(f + f.transpose(1, 0, 2)).max(),
                   np.abs(f + f.transpose(0, 2, 1)).max())

    def jacobi_residual(self) -> float:
        """max |f_ABE f_ECD + f_BCE f_EAD + f_CAE f_EBD| without a D^4 blow-up."""
        f = self.f
        ad = f.transpose(0, 2, 1)  # ad[a][c,b] = f_abc
        worst = 0.0
        for a in range(self.dim):
            lhs = ad[a] @ ad - ad @ ad[a]          # [ad_a, ad_b] stacked over b
            rhs = np.einsum("be,ecd->bcd", f[a], ad)
            worst = max(worst, np.abs(lhs - rhs).max())
        return worst

    def u1_residual(self, u1_indices: Sequence[int]) -> float:
        idx = list(u1_indices)
        if not idx:
            return 0.0
        return max(np.abs(self.f[idx, :, :]).max(),
                   np.abs(self.f[:, idx, :]).max(),
                   np.abs(self.f[:, :, idx]).max())


@dataclass(eq=False)
class AlgebraRep:
    """Concrete matrix representation with root-adapted orthonormal basis."""

    family: str
    rank: int
    u1_count: int
    rep_kind: str
    matrix_dim: int
    norm_const: float
    generators: np.ndarray           # (D, d, d) complex, Hermitian
    csa_indices: tuple[int, ...]
    u1_indices: tuple[int, ...]
    root_system: RootSystem
    chain_levels: tuple
    root_table: dict                 # positive-root coords -> RootVectorEntry
    root_matrices: dict              # positive-root coords -> (d, d) ndarray
    csa_axes: tuple[CsaAxis, ...]
    faithful_simply_connected: bool
    _structure: StructureConstants | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.generators.shape[0]

    @property
    def semisimple_dim(self) -> int:
        return self.dim - self.u1_count

    def generator(self, i: int) -> np.ndarray:
        return self.generators[i]

    def root_entry(self, root: Root) -> RootVectorEntry:
        key = root.coords if root.sign == "positive" else tuple(-c for c in root.coords)
        return self.root_table[key]

    def root_vector(self, root: Root) -> np.ndarray:
        """Chevalley root vector E_root in the representation."""
        key = root.coords if root.sign == "positive" else tuple(-c for c in root.coords)
        e = self.root_matrices[key]
        return e if root.sign == "positive" else e.conj().T

    def eigen_coords(self, root: Root) -> np.ndarray:
        """Root coordinates with respect to the orthonormal Cartan basis."""
        std = _np_coords(root.coords)
        w = np.stack([ax.functional for ax in self.csa_axes])
        return w @ std

    def coroot_matrix(self, root: Root) -> np.ndarray:
        """Coroot as a matrix in this representation."""
        a = self.eigen_coords(root)
        c = 2.0 * a / (a @ a)
        h = np.zeros((self.matrix_dim, self.matrix_dim), dtype=complex)
        for ck, ax in zip(c, self.csa_axes):
            h += ck * self.generators[ax.index]
        return h

    def coroot_axis_index(self, root: Root) -> int:
        for ax in self.csa_axes:
            if ax.kind == "coroot" and ax.root.coords == root.coords:
                return ax.index
        raise KeyError(f"{root} is not a basic root of this algebra")

    def structure_constants(self) -> StructureConstants:
        if self._structure is None:
            self._structure = structure_constants(self)
        return self._structure

    def to_json_dict(self) -> dict:
        """Debug/fixture export: matrices as row-major [re, im] pairs."""
        def cplx(m):
            return [[[float(v.real), float(v.imag)] for v in row] for row in m]

        return {
            "family": self.family,
            "rank": self.rank,
            "u1_count": self.u1_count,
            "rep_kind": self.rep_kind,
            "matrix_dim": self.matrix_dim,
            "norm_const": self.norm_const,
            "generators": [cplx(g) for g in self.generators],
            "csa_indices": list(self.csa_indices),
            "u1_indices": list(self.u1_indices),
            "root_table": [
                {"root": [str(c) for c in coords], "re_index": e.re_index,
                 "im_index": e.im_index, "scale": e.scale}
                for coords, e in sorted(self.root_table.items())],
        }


# ---------------------------------------------------------------------------
# family-specific raw material

def _pauli():
    s1 = np.array([[0, 1], [1, 0]], dtype=complex)
    s2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    s3 = np.array([[1, 0], [0, -1]], dtype=complex)
    return s1, s2, s3


def _eij(d, i, j):
    m = np.zeros((d, d), dtype=complex)
    m[i, j] = 1.0
    return m


@dataclass(eq=False)
class _Raw:
    """Initial spanning data for one family/representation."""

    d: int
    C: float
    noncsa: list            # orthonormal Hermitian generators outside the CSA
    embed: callable         # std functional vector -> Cartan matrix
    extract: callable       # Cartan matrix -> std functional vector
    std_candidates: list    # deterministic seeds for the leftover Cartan axes
    faithful: bool


def _raw_basis(family: str, rank: int, rep_kind: str) -> _Raw:
    if family == "A":
        d = rank + 1
        noncsa = []
        for i in range(d):
            for j in range(i + 1, d):
                noncsa.append((_eij(d, i, j) + _eij(d, j, i)) / 2.0)
                noncsa.append(-1j * (_eij(d, i, j) - _eij(d, j, i)) / 2.0)

        def embed(w):
            return np.diag(np.asarray(w, dtype=complex))

        def extract(h):
            return np.real(np.diag(h)).copy()

        cands = []
        for k in range(1, d):
            v = np.zeros(d)
            v[:k] = 1.0
            v[k] = -float(k)
            cands.append(v)
        return _Raw(d, NORM_CONST["A"], noncsa, embed, extract, cands, faithful=True)

    if family in ("B", "D") and rep_kind == "vector":
        # rotation generators T_jk = i(E_jk - E_kj); same bracket signs as the
        # spinor T_jk = i gamma_j gamma_k / 2, so both reps share conventions
        d = 2 * rank + 1 if family == "B" else 2 * rank
        csa_pairs = {(2 * k, 2 * k + 1) for k in range(rank)}
        noncsa = []
        for i in range(d):
            for j in range(i + 1, d):
                if (i, j) in csa_pairs:
                    continue
                noncsa.append(1j * (_eij(d, i, j) - _eij(d, j, i)))

        def embed(w):
            h = np.zeros((d, d), dtype=complex)
            for k, wk in enumerate(w):
                h += wk * 1j * (_eij(d, 2 * k, 2 * k + 1) - _eij(d, 2 * k + 1, 2 * k))
            return h

        def extract(h):
            return np.array([np.imag(h[2 * k, 2 * k + 1]) for k in range(rank)])

        cands = [np.eye(rank)[k] for k in range(rank)]
        return _Raw(d, NORM_CONST[family], noncsa, embed, extract, cands, faithful=False)

    if family == "B" and rep_kind == "spinor":
        if rank != 3:
            raise UnsupportedAlgebraError("spinor representation only provided for B3")
        cliff = build_clifford(7)
        t = {}
        for i in range(7):
            for j in range(i + 1, 7):
                t[(i, j)] = cliff.spin_generators[(i, j)]
        csa_pairs = {(0, 1), (2, 3), (4, 5)}
        noncsa = [t[p] for p in sorted(t) if p not in csa_pairs]

        def embed(w):
            return sum(wk * t[(2 * k, 2 * k + 1)] for k, wk in enumerate(w))

        def extract(h):
            return np.array([np.real(np.trace(h @ t[(2 * k, 2 * k + 1)])) / 2.0
                             for k in range(3)])

        cands = [np.eye(3)[k] for k in range(3)]
        return _Raw(8, 2.0, noncsa, embed, extract, cands, faithful=True)

    if family == "C":
        n = rank
        d = 2 * n
        noncsa = []
        for i in range(n):
            for j in range(i + 1, n):
                for a in ((_eij(n, i, j) + _eij(n, j, i)) / np.sqrt(2),
                          -1j * (_eij(n, i, j) - _eij(n, j, i)) / np.sqrt(2)):
                    x = np.zeros((d, d), dtype=complex)
                    x[:n, :n] = a
                    x[n:, n:] = -a.T
                    noncsa.append(x)
        for i in range(n):
            for j in range(i, n):
                b0 = _eij(n, i, j) + _eij(n, j, i) if i != j else _eij(n, i, i)
                if i != j:
                    b0 = b0 / np.sqrt(2)
                for b in (b0, 1j * b0):
                    x = np.zeros((d, d), dtype=complex)
                    x[:n, n:] = b
                    x[n:, :n] = b.conj().T
                    noncsa.append(x)

        def embed(w):
            h = np.zeros((d, d), dtype=complex)
            for k, wk in enumerate(w):
                h[k, k] = wk
                h[n + k, n + k] = -wk
            return h

        def extract(h):
            return np.real(np.diag(h)[:n]).copy()

        cands = [np.eye(n)[k] for k in range(n)]
        return _Raw(d, NORM_CONST["C"], noncsa, embed, extract, cands, faithful=True)

    raise UnsupportedAlgebraError(f"no representation {rep_kind!r} for family {family!r}")


# ---------------------------------------------------------------------------
# Clifford algebra / spinor generators

@dataclass(eq=False)
class CliffordRep:
    """Seven anticommuting Hermitian gamma matrices and the spin generators."""

    gammas: tuple
    spin_generators: dict   # (j, k), j < k -> i gamma_j gamma_k / 2


def build_clifford(dimension: int) -> CliffordRep:
    if dimension != 7:
        raise UnsupportedAlgebraError("only the 7-dimensional Clifford algebra is provided")
    s1, s2, s3 = _pauli()
    gam = [s1, s2, s3]
    while len(gam) < dimension:
        one = np.eye(gam[0].shape[0], dtype=complex)
        gam = [np.kron(g, s3) for g in gam[:-1]] + [np.kron(gam[-1], s3),
                                                    np.kron(one, s1), np.kron(one, s2)]
    gammas = tuple(gam)
    spin = {}
    for j in range(dimension):
        for k in range(j + 1, dimension):
            spin[(j, k)] = 1j * gammas[j] @ gammas[k] / 2.0
    return CliffordRep(gammas=gammas, spin_generators=spin)


# ---------------------------------------------------------------------------
# adapted Cartan basis

def _gram_schmidt_matrices(mats, inner, tol=1e-10):
    """Orthonormalize a list of matrices under `inner`, dropping null vectors."""
    basis = []
    for m in mats:
        v = m.copy()
        for b in basis:
            v = v - inner(b, v) * b
        n = np.sqrt(abs(inner(v, v)))
        if n > tol:
            basis.append(v / n)
    return basis


def _adapted_csa(rs: RootSystem, levels, raw: _Raw):
    """Cartan matrices: unit basic-coroot axes, then leftover axes per node."""
    C = raw.C

    def inner(x, y):
        return np.real(np.trace(x.conj().T @ y)) / C

    nodes = chain_nodes(levels)
    axes = []  # (kind, level, node_label, root_or_None, matrix)
    for node in nodes:
        h = raw.embed(_np_coords(coroot(node.theta)))
        h = h / np.sqrt(abs(inner(h, h)))
        axes.append(("coroot", node.level, node.label, node.theta, h))

    used = [a[4] for a in axes]
    for node in nodes:
        span = _gram_schmidt_matrices(
            [raw.embed(_np_coords(s.coords)) for s in node.subsystem.simple_roots], inner)
        forbidden = [raw.embed(_np_coords(coroot(node.theta)))]
        for child in node.children:
            forbidden += [raw.embed(_np_coords(s.coords)) for s in child.subsystem.simple_roots]
        forbidden = _gram_schmidt_matrices(forbidden, inner)
        found = 0
        for cand in raw.std_candidates:
            v = raw.embed(cand).astype(complex)
            w = sum((inner(b, v) * b for b in span), np.zeros_like(v))
            for b in forbidden + used:
                w = w - inner(b, w) * b
            n = np.sqrt(abs(inner(w, w)))
            if n > 1e-9:
                w = w / n
                axes.append(("abelian", node.level, node.label, None, w))
                used.append(w)
                found += 1
        if found != node.abelian_dim:
            raise ConstructionError(
                f"expected {node.abelian_dim} leftover Cartan directions at {node.label}, found {found}")
    return axes


# ---------------------------------------------------------------------------
# Chevalley root vectors

def _ad_matrices(csa_mats, noncsa, C):
    gens = np.stack(noncsa)
    out = []
    for h in csa_mats:
        comm = h @ gens - gens @ h
        out.append(np.einsum("qij,pji->pq", comm, gens) / C)
    return out


def _root_eigenvector(ad_mats, target, noncsa):
    m = ad_mats[0].shape[0]
    rows = [ad - t * np.eye(m) for ad, t in zip(ad_mats, target)]
    stack = np.vstack(rows)
    _, s, vh = np.linalg.svd(stack)
    if s[-1] > 1e-8:
        raise ConstructionError(f"no root vector found for eigenvalue {target}")
    if m > 1 and s[-2] < 1e-6:
        raise ConstructionError(f"degenerate root space for eigenvalue {target}")
    v = vh[-1].conj()
    return sum(vk * g for vk, g in zip(v, noncsa))


def _fix_phase(e, tol=1e-8):
    flat = e.ravel()
    scale = np.abs(flat).max()
    lead = flat[np.argmax(np.abs(flat) > tol * scale)]
    return e * (lead.conjugate() / abs(lead))


def _chevalley_table(rs: RootSystem, csa_axes_raw, raw: _Raw, tol=1e-10):
    """Chevalley root vectors: eigensolve the simple roots, commutate the rest."""
    C = raw.C
    csa_mats = [a[4] for a in csa_axes_raw]
    W = np.stack([raw.extract(h) for h in csa_mats])

    def eigen(root):
        return W @ _np_coords(root.coords)

    def coroot_mat(root):
        a = eigen(root)
        c = 2.0 * a / (a @ a)
        return sum(ck * h for ck, h in zip(c, csa_mats))

    ad_mats = _ad_matrices(csa_mats, raw.noncsa, C)
    ev = {}
    for root in rs.positive_roots:
        h = int(rs.height(root))
        if h == 1:
            e = _root_eigenvector(ad_mats, eigen(root), raw.noncsa)
            comm = e @ e.conj().T - e.conj().T @ e
            target = coroot_mat(root)
            c = np.real(np.trace(comm @ target)) / np.real(np.trace(target @ target))
            if c <= 0:
                raise ConstructionError(f"negative Chevalley normalization at root {root}")
            e = _fix_phase(e / np.sqrt(c))
        else:
            for i, a in enumerate(rs.simple_roots):
                rest = tuple(x - y for x, y in zip(root.coords, a.coords))
                if rest in ev:
                    break
            else:
                raise ConstructionError(f"no decomposition for root {root}")
            lower = rs.root(rest)
            q = rs.root_string_down(a, lower)
            e = (ev[a.coords] @ ev[rest] - ev[rest] @ ev[a.coords]) / (q + 1)
        target = coroot_mat(root)
        resid = np.abs(e @ e.conj().T - e.conj().T @ e - target).max()
        if resid > 1e-8:
            raise ConstructionError(
                f"Chevalley normalization failed at root {root}: residual {resid:.2e}")
        ev[root.coords] = e
    return ev


# ---------------------------------------------------------------------------
# public constructors

@functools.lru_cache(maxsize=64)
def _cached_rep(family, rank, u1_count, rep_kind):
    return _build_matrix_rep(family, rank, u1_count, rep_kind)


def build_matrix_rep(family: str, rank: int, u1_count: int = 0,
                     rep_kind: str = "auto") -> AlgebraRep:
    """Orthonormal root-adapted generator basis for family/rank, plus u(1)s."""
    family = family.upper()
    if u1_count < 0:
        raise ValueError("u1_count must be non-negative")
    if rep_kind == "auto":
        rep_kind = "defining" if family in ("A", "C") else "vector"
    return _cached_rep(family, rank, u1_count, rep_kind)


def _build_matrix_rep(family, rank, u1_count, rep_kind):
    rs = build_root_system(family, rank)
    levels = basic_root_chain(rs)
    raw = _raw_basis(family, rank, rep_kind)
    csa_axes_raw = _adapted_csa(rs, levels, raw)
    ev = _chevalley_table(rs, csa_axes_raw, raw)

    C = raw.C
    d0 = raw.d
    d = d0 + u1_count
    npos = len(rs.positive_roots)
    D = 2 * npos + rank + u1_count

    gens = np.zeros((D, d, d), dtype=complex)
    table = {}
    root_mats = {}
    W = np.stack([raw.extract(ax[4]) for ax in csa_axes_raw])

    for i, root in enumerate(rs.positive_roots):
        e0 = ev[root.coords]
        a = W @ _np_coords(root.coords)
        nu = 1.0 / np.sqrt(a @ a)
        gens[2 * i, :d0, :d0] = (e0 + e0.conj().T) / (2 * nu)
        gens[2 * i + 1, :d0, :d0] = -1j * (e0 - e0.conj().T) / (2 * nu)
        table[root.coords] = RootVectorEntry(2 * i, 2 * i + 1, nu)
        e_full = np.zeros((d, d), dtype=complex)
        e_full[:d0, :d0] = e0
        e_full.setflags(write=False)
        root_mats[root.coords] = e_full

    csa_axes = []
    for k, (kind, level, label, root, h) in enumerate(csa_axes_raw):
        idx = 2 * npos + k
        gens[idx, :d0, :d0] = h
        csa_axes.append(CsaAxis(index=idx, kind=kind, level=level, node_label=label,
                                root=root, functional=W[k]))
    for k in range(u1_count):
        idx = 2 * npos + rank + k
        gens[idx, d0 + k, d0 + k] = np.sqrt(C)
        csa_axes.append(CsaAxis(index=idx, kind="u1", level=-1, node_label="u1",
                                root=None, functional=np.zeros(W.shape[1])))

    gram = np.einsum("aij,bji->ab", gens, gens)
    dev = np.abs(gram - C * np.eye(D))
    if dev.max() > 1e-9:
        a, b = np.unravel_index(np.argmax(dev), dev.shape)
        raise ConstructionError(
            f"generator basis not orthonormal: Tr(t_{a} t_{b}) deviates by {dev[a, b]:.2e}")

    gens.setflags(write=False)
    rep = AlgebraRep(
        family=family, rank=rank, u1_count=u1_count, rep_kind=rep_kind,
        matrix_dim=d, norm_const=C, generators=gens,
        csa_indices=tuple(2 * npos + k for k in range(rank)),
        u1_indices=tuple(2 * npos + rank + k for k in range(u1_count)),
        root_system=rs, chain_levels=levels, root_table=table,
        root_matrices=root_mats, csa_axes=tuple(csa_axes),
        faithful_simply_connected=raw.faithful)

    f = structure_constants(rep)
    rep._structure = f
    comm = np.einsum("aij,bjk->abik", gens, gens)
    comm = comm - comm.transpose(1, 0, 2, 3)
    closure = np.abs(comm - 1j * np.einsum("abc,cij->abij", f.f, gens)).max()
    if closure > 1e-9:
        raise ConstructionError(f"algebra does not close on the basis: residual {closure:.2e}")
    return rep


def build_abelian_rep(u1_count: int) -> AlgebraRep:
    """A pure product of u(1) factors (useful as a degenerate test algebra)."""
    if u1_count < 1:
        raise ValueError("need at least one u(1) factor")
    d = u1_count
    gens = np.zeros((u1_count, d, d), dtype=complex)
    for k in range(u1_count):
        gens[k, k, k] = 1.0
    gens.setflags(write=False)
    return AlgebraRep(
        family="U1", rank=0, u1_count=u1_count, rep_kind="diagonal",
        matrix_dim=d, norm_const=1.0, generators=gens,
        csa_indices=(), u1_indices=tuple(range(u1_count)),
        root_system=None, chain_levels=(), root_table={}, root_matrices={},
        csa_axes=tuple(CsaAxis(index=k, kind="u1", level=-1, node_label="u1",
                               root=None, functional=np.zeros(0))
                       for k in range(u1_count)),
        faithful_simply_connected=True)


def structure_constants(rep: AlgebraRep) -> StructureConstants:
    """f_ABC = -(i/C) Tr([t_A, t_B] t_C), validated to be real and antisymmetric."""
    g = rep.generators
    comm = np.einsum("aij,bjk->abik", g, g)
    comm = comm - comm.transpose(1, 0, 2, 3)
    f = -1j / rep.norm_const * np.einsum("abij,cji->abc", comm, g)
    if np.abs(f.imag).max() > 1e-11:
        raise ConstructionError("structure constants are not real")
    out = StructureConstants(f=np.ascontiguousarray(f.real))
    out.f.setflags(write=False)
    return out


def chevalley_root_vectors(rep: AlgebraRep, rs: RootSystem | None = None) -> dict:
    """Validate and return the stored root-vector table.

    Re-checks, for every positive root, the eigenvalue property
    [h, E_alpha] = alpha(h) E_alpha and the normalization
    [E_alpha, E_-alpha] = coroot(alpha).
    """
    rs = rs or rep.root_system
    if rs is not rep.root_system and (rs.family, rs.rank) != (rep.family, rep.rank):
        raise ValueError("root system does not match the representation")
    for root in rs.positive_roots:
        e = rep.root_vector(root)
        a = rep.eigen_coords(root)
        for ax, ak in zip(rep.csa_axes, a):
            if ax.kind == "u1":
                continue
            h = rep.generators[ax.index]
            if np.abs(h @ e - e @ h - ak * e).max() > 1e-8:
                raise ConstructionError(f"E_{root} is not an eigenvector of the Cartan action")
        resid = np.abs(e @ e.conj().T - e.conj().T @ e - rep.coroot_matrix(root)).max()
        if resid > 1e-8:
            raise ConstructionError(f"E_{root} violates the Chevalley normalization")
    return dict(rep.root_table)


@dataclass(frozen=True)
class PeriodicityResult:
    period_ok: bool
    min_nontrivial: bool
    max_dev_at_period: float


def coroot_periodicity_check(rep: AlgebraRep, coroot_element: np.ndarray,
                             tol: float = 1e-9) -> PeriodicityResult:
    """exp(2 pi i h) = 1 and exp(i phi h) != 1 for phi in {pi/2, pi, 3pi/2}.

    Requires a representation that is faithful for the simply connected
    group; the vector representation of B/D would report a spurious period
    pi for the short coroots.
    """
    if not rep.faithful_simply_connected:
        raise ValueError(
            f"the {rep.rep_kind} representation of {rep.family}{rep.rank} is not faithful "
            "for the simply connected group; use the defining (A/C) or spinor (B3) one")
    d = coroot_element.shape[0]
    eye = np.eye(d)
    at_period = np.abs(scipy.linalg.expm(2j * np.pi * coroot_element) - eye).max()
    nontrivial = all(
        np.abs(scipy.linalg.expm(1j * phi * coroot_element) - eye).max() > 0.1
        for phi in (np.pi, np.pi / 2, 3 * np.pi / 2))
    return PeriodicityResult(period_ok=bool(at_period <= tol),
                             min_nontrivial=bool(nontrivial),
                             max_dev_at_period=float(at_period))
