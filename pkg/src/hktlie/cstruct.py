"""Complex structures on the tangent space and the geometric residual checks.

The tangent space of a group manifold at the identity is the algebra itself,
described by an orthonormal generator basis and the structure constants
f_ABC.  A complex structure here is a real antisymmetric D x D matrix acting
on generator coefficients, squaring to -1.  All checks reduce to finite
tensor contractions:

  * integrability:  f_ABC - (IIf)_ABC - (IIf)_BCA - (IIf)_CAB = 0,
  * Bismut constancy at the origin (an identity for any antisymmetric I),
  * the torsion of the Bismut connection equals f itself,
  * the Nijenhuis tensor, evaluated by finite differences of the
    coordinate field I_M^N(x) built from the second-order vielbein.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .liealg import AlgebraRep, StructureConstants
from .rootsys import chain_nodes

DEFAULT_TOL = 1e-9

#: 4x4 blocks in the basis (t_A, t_A*, t_B, t_B*) or (t_A, t_A*, t_k, e_k)
SCRIPT_I = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=float)
SCRIPT_J = np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=float)
SCRIPT_K = np.array([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=float)

_BLOCK_TAGS = (
    ("script-I", SCRIPT_I), ("script-J", SCRIPT_J), ("minus-script-J", -SCRIPT_J),
    ("script-K", SCRIPT_K), ("minus-script-K", -SCRIPT_K),
)


class IntegrabilityError(ValueError):
    """A torsion computation was requested for a non-integrable structure."""


class PairingError(ValueError):
    """The Cartan/u(1) directions cannot be paired off; padding is wrong."""


@dataclass(frozen=True, eq=False)
class CsaPairing:
    """Unit Cartan directions along basic coroots paired with leftover ones."""

    t_vectors: tuple     # unit coefficient vectors along the basic coroots
    e_vectors: tuple     # matching unit vectors in the leftover CSA + u(1) space
    t_indices: tuple     # generator indices when a vector is axis-aligned, else -1
    e_indices: tuple

    def __len__(self):
        return len(self.t_vectors)

    def validate(self, tol: float = 1e-9) -> None:
        vecs = list(self.t_vectors) + list(self.e_vectors)
        g = np.array([[u @ v for v in vecs] for u in vecs])
        if np.abs(g - np.eye(len(vecs))).max() > tol:
            raise PairingError("pairing vectors are not orthonormal")


@dataclass(frozen=True)
class Block:
    """One 4x4 block of a complex structure, with a shape tag."""

    indices: tuple         # four generator indices
    kind: str              # "theta" | "quartet"
    level: int
    description: str
    tag: str = "other"


@dataclass(eq=False)
class ComplexStructure:
    matrix: np.ndarray
    blocks: tuple = ()

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def square_residual(self) -> float:
        m = self.matrix
        return float(np.abs(m @ m + np.eye(self.dim)).max())

    def tagged(self) -> "ComplexStructure":
        return ComplexStructure(self.matrix, classify_blocks(self.matrix, self.blocks))


def classify_blocks(matrix: np.ndarray, blocks: Iterable[Block], tol: float = 1e-8) -> tuple:
    out = []
    for b in blocks:
        sub = matrix[np.ix_(b.indices, b.indices)]
        tag = "other"
        for name, ref in _BLOCK_TAGS:
            if np.abs(sub - ref).max() <= tol:
                tag = name
                break
        out.append(Block(b.indices, b.kind, b.level, b.description, tag))
    return tuple(out)


def _matrix_of(x) -> np.ndarray:
    return x.matrix if isinstance(x, ComplexStructure) else np.asarray(x, dtype=float)


def _f_of(x) -> np.ndarray:
    return x.f if isinstance(x, StructureConstants) else np.asarray(x, dtype=float)


def canonical_blocks(rep: AlgebraRep, pairing: CsaPairing) -> tuple:
    """Partition of generator indices into theta blocks and root quartets."""
    if rep.root_system is None:
        return ()
    blocks = []
    paired_roots = {}
    for k, ti in enumerate(pairing.t_indices):
        ax = next((a for a in rep.csa_axes if a.index == ti and a.root is not None), None)
        if ax is not None:
            paired_roots[ax.root.coords] = (k, ax)
    order = {r.coords: i for i, r in enumerate(rep.root_system.positive_roots)}
    for node in chain_nodes(rep.chain_levels):
        theta = node.theta
        ent = rep.root_entry(theta)
        node_pos = {r.coords for r in node.subsystem.positive_roots}
        if theta.coords in paired_roots:
            k, _ = paired_roots[theta.coords]
            blocks.append(Block(
                indices=(ent.re_index, ent.im_index,
                         pairing.t_indices[k], pairing.e_indices[k]),
                kind="theta", level=node.level,
                description=f"theta block {node.label}"))
        seen = set()
        for mu in node.subsystem.positive_roots:
            if mu.coords == theta.coords or mu.coords in seen:
                continue
            rest = tuple(a - b for a, b in zip(theta.coords, mu.coords))
            if rest not in node_pos or rest in seen or mu.dot(theta) == 0:
                continue
            nu = rep.root_system.root(rest)
            first, second = (mu, nu) if order[mu.coords] < order[nu.coords] else (nu, mu)
            e1, e2 = rep.root_entry(first), rep.root_entry(second)
            blocks.append(Block(
                indices=(e1.re_index, e1.im_index, e2.re_index, e2.im_index),
                kind="quartet", level=node.level,
                description=f"quartet ({first}, {second}) of {node.label}"))
            seen.add(mu.coords)
            seen.add(rest)
    return tuple(blocks)


def canonical_I(rep: AlgebraRep, pairing: CsaPairing, partial: bool = False) -> ComplexStructure:
    """The canonical complex structure: -i on every positive root vector,
    t_k -> e_k on the paired Cartan directions."""
    D = rep.dim
    m = np.zeros((D, D))
    for entry in rep.root_table.values():
        m[entry.im_index, entry.re_index] = 1.0
        m[entry.re_index, entry.im_index] = -1.0
    for t, e in zip(pairing.t_vectors, pairing.e_vectors):
        m += np.outer(e, t) - np.outer(t, e)
    if not partial:
        n_csa = len(rep.csa_indices) + len(rep.u1_indices)
        if 2 * len(pairing) != n_csa:
            raise PairingError(
                f"pairing must cover the Cartan/u(1) space: got {len(pairing)} pairs "
                f"for {n_csa} directions ({n_csa - len(pairing)} pairs required)")
    m.setflags(write=False)
    struct = ComplexStructure(m, canonical_blocks(rep, pairing))
    if not partial:
        sq = struct.square_residual()
        if sq > 1e-12:
            raise PairingError(f"canonical structure does not square to -1: residual {sq:.2e}")
    return struct.tagged()


# ---------------------------------------------------------------------------
# residuals

def integrability_residual(I, f) -> float:
    """max |f_ABC - I_AD I_BE f_DEC - I_BD I_CE f_DEA - I_CD I_AE f_DEB|."""
    i = _matrix_of(I)
    ff = _f_of(f)

    def two(mat, tensor):  # I_AD I_BE tensor_DE.
        return np.einsum("ad,be,dec->abc", mat, mat, tensor, optimize=True)

    t1 = two(i, ff)
    resid = ff - t1 - t1.transpose(2, 0, 1) - t1.transpose(1, 2, 0)
    return float(np.abs(resid).max())


def quaternion_residual(I, J, K) -> float:
    """max over p,q of ||I_p I_q + delta_pq - eps_pqs I_s||_F."""
    mats = [_matrix_of(x) for x in (I, J, K)]
    d = mats[0].shape[0]
    eye = np.eye(d)
    eps = np.zeros((3, 3, 3))
    for p, q, s, v in ((0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1),
                       (1, 0, 2, -1), (2, 1, 0, -1), (0, 2, 1, -1)):
        eps[p, q, s] = v
    worst = 0.0
    for p in range(3):
        for q in range(3):
            r = mats[p] @ mats[q] + (eye if p == q else 0.0)
            for s in range(3):
                if eps[p, q, s]:
                    r = r - eps[p, q, s] * mats[s]
            worst = max(worst, float(np.linalg.norm(r)))
    return worst


def _di_from_field(I: np.ndarray, f: np.ndarray) -> np.ndarray:
    """dI[P, M, N] = d_P I_MN of the group-covariant field at the origin."""
    t = np.einsum("mq,nqp->pmn", I, f, optimize=True)
    return 0.5 * (t - t.transpose(0, 2, 1))


def bismut_residual(I, f) -> float:
    """Residual of the covariant constancy under the torsionful connection.

    Vanishes identically for any antisymmetric I by cyclicity of f; a nonzero
    value signals an index-convention bug, not a geometric failure.
    """
    i = _matrix_of(I)
    ff = _f_of(f)
    di = _di_from_field(i, ff)
    conn = 0.5 * (np.einsum("qpm,qn->pmn", ff, i, optimize=True)
                  + np.einsum("qpn,mq->pmn", ff, i, optimize=True))
    return float(np.abs(di - conn).max())


def metric_at(rep: AlgebraRep, x: Sequence[float]) -> np.ndarray:
    """Bi-invariant metric near the identity, to second order in x."""
    f = rep.structure_constants().f
    x = np.asarray(x, dtype=float)
    quad = np.einsum("mpq,npr,q,r->mn", f, f, x, x, optimize=True)
    return np.eye(rep.dim) - quad / 12.0


def vielbein_at(rep: AlgebraRep, x: Sequence[float]) -> np.ndarray:
    """Frame e_MA with e e^T = metric_at, to second order in x."""
    f = rep.structure_constants().f
    x = np.asarray(x, dtype=float)
    lin = -0.5 * np.einsum("mpa,p->ma", f, x, optimize=True)
    quad = -np.einsum("mpq,arq,p,r->ma", f, f, x, x, optimize=True) / 6.0
    return np.eye(rep.dim) + lin + quad


def killing_metric_exact(rep: AlgebraRep, x: Sequence[float], step: float = 1e-5) -> np.ndarray:
    """Killing metric (1/C) Tr(d_M w d_N w^-1) by central differences of the
    exact exponential map; the independent oracle for metric_at."""
    import scipy.linalg
    g = rep.generators
    x = np.asarray(x, dtype=float)

    def omega(y):
        return scipy.linalg.expm(1j * np.einsum("a,aij->ij", y, g))

    D = rep.dim
    dw = np.empty((D, rep.matrix_dim, rep.matrix_dim), dtype=complex)
    dwinv = np.empty_like(dw)
    for m in range(D):
        e = np.zeros(D)
        e[m] = step
        dw[m] = (omega(x + e) - omega(x - e)) / (2 * step)
        dwinv[m] = (np.linalg.inv(omega(x + e)) - np.linalg.inv(omega(x - e))) / (2 * step)
    return np.real(np.einsum("mij,nji->mn", dw, dwinv)) / rep.norm_const


def torsion_via_hull(I, f, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Totally antisymmetric Bismut torsion from the complex structure,
    C_MNP = I_M^Q I_N^S I_P^R (d_Q I_SR + d_S I_RQ + d_R I_QS) at the origin.

    Requires an integrable structure; for the canonical ones the result must
    reproduce f itself.
    """
    i = _matrix_of(I)
    ff = _f_of(f)
    resid = integrability_residual(i, ff)
    if resid > tol:
        raise IntegrabilityError(
            f"torsion formula needs an integrable structure; integrability residual {resid:.3e}")
    di = _di_from_field(i, ff)
    g = (di.transpose(0, 1, 2) + di.transpose(1, 2, 0) + di.transpose(2, 0, 1))
    # indices: g[Q, S, R]; contract with I three times
    return np.einsum("mq,ns,pr,qsr->mnp", i, i, i, g, optimize=True)


def torsion_match_residual(I, f, tol: float = DEFAULT_TOL) -> float:
    return float(np.abs(torsion_via_hull(I, f, tol) - _f_of(f)).max())


def structure_field(rep: AlgebraRep, I, x: Sequence[float]) -> np.ndarray:
    """Mixed-index coordinate field I_M^N(x) = e_MA I_AB (e^-1)_B^N."""
    e = vielbein_at(rep, x)
    return e @ _matrix_of(I) @ np.linalg.inv(e)


def nijenhuis_at_origin(rep: AlgebraRep, I, step: float = 1e-4) -> float:
    """max |N_MN^K| at the identity from Richardson-extrapolated central
    differences of the coordinate field of I."""
    i0 = _matrix_of(I)
    D = rep.dim

    def fd(h):
        d = np.empty((D, D, D))
        for m in range(D):
            e = np.zeros(D)
            e[m] = h
            d[m] = (structure_field(rep, i0, e) - structure_field(rep, i0, -e)) / (2 * h)
        return d

    d1 = fd(step)
    d2 = fd(step / 2)
    di = (4.0 * d2 - d1) / 3.0

    def nijenhuis(d):
        t1 = d - d.transpose(1, 0, 2)
        return t1 - np.einsum("mp,nq,pqk->mnk", i0, i0, t1, optimize=True)

    n_extrap = float(np.abs(nijenhuis(di)).max())
    n_coarse = float(np.abs(nijenhuis(d1)).max())
    if n_extrap > 10.0 * max(n_coarse, 1e-12) and n_extrap > 1e-8:
        warnings.warn(
            f"Richardson extrapolation diverged (step {step:g}): {n_coarse:.2e} -> {n_extrap:.2e}; "
            "the step size is probably too small or too large", RuntimeWarning)
    return n_extrap


def random_complex_structure(dim: int, rng: np.random.Generator) -> np.ndarray:
    """A random antisymmetric orthogonal matrix squaring to -1 (not adapted
    to any root structure); the negative control for the residual checks."""
    if dim % 2:
        raise ValueError("complex structures need even dimension")
    rot = np.zeros((dim, dim))
    for k in range(dim // 2):
        rot[2 * k, 2 * k + 1] = -1.0
        rot[2 * k + 1, 2 * k] = 1.0
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    q = q * np.sign(np.diag(r))
    return q @ rot @ q.T


def self_duality_residual(X, eps_sign: float = 1.0) -> float:
    """||X_AB - 1/2 eps_ABCD X_CD|| for a 4x4 block, with eps_0123 = eps_sign."""
    x = _matrix_of(X)
    if x.shape != (4, 4):
        raise ValueError("self-duality is a 4x4 check")
    eps = np.zeros((4, 4, 4, 4))
    from itertools import permutations
    base = (0, 1, 2, 3)
    for perm in permutations(range(4)):
        sign = 1.0
        p = list(perm)
        for a in range(4):
            for b in range(a + 1, 4):
                if p[a] > p[b]:
                    sign = -sign
        eps[perm] = sign * eps_sign
    dual = 0.5 * np.einsum("abcd,cd->ab", eps, x)
    return float(np.abs(x - dual).max())


@dataclass
class GeometryResidualReport:
    """Residuals of one complex structure against all geometric conditions."""

    integrability: float
    square: float
    bismut: float
    torsion_match: float
    nijenhuis: float | None = None

    def to_json_dict(self) -> dict:
        return {
            "integrability": self.integrability,
            "square": self.square,
            "bismut": self.bismut,
            "torsion_match": self.torsion_match,
            "nijenhuis": self.nijenhuis,
        }

    def worst(self) -> float:
        vals = [self.integrability, self.square, self.bismut, self.torsion_match]
        if self.nijenhuis is not None:
            vals.append(self.nijenhuis)
        return max(vals)


def geometry_report(rep: AlgebraRep, I, tol: float = DEFAULT_TOL,
                    fd_step: float | None = None,
                    torsion: bool = True) -> GeometryResidualReport:
    """All residual checks for one structure on a group manifold."""
    f = rep.structure_constants()
    i = _matrix_of(I)
    integ = integrability_residual(i, f)
    sq = float(np.abs(i @ i + np.eye(i.shape[0])).max())
    bis = bismut_residual(i, f)
    tors = torsion_match_residual(i, f, tol) if (torsion and integ <= tol) else float("inf")
    nij = nijenhuis_at_origin(rep, i, fd_step) if fd_step else None
    return GeometryResidualReport(
        integrability=float(integ), square=sq, bismut=bis,
        torsion_match=float(tors), nijenhuis=nij)
