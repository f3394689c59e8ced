import numpy as np
import pytest
import scipy.linalg

from hktlie import autom as A
from hktlie import cstruct as C
from hktlie import liealg as L

from conftest import CATALOG


# ---------------------------------------------------------------------------
# single automorphisms

def test_su2_j_kind_rotation():
    """t_1 and the u(1) stay, t_2 -> t_3 -> -t_2."""
    rep = L.build_matrix_rep("A", 1, 1)
    auto = A.automorphism_from_root(rep, rep.root_system.highest_root, "J")
    expect = np.array([[1, 0, 0, 0],
                       [0, 0, -1, 0],
                       [0, 1, 0, 0],
                       [0, 0, 0, 1]], dtype=float)
    assert np.abs(auto.matrix - expect).max() < 1e-12


def test_su2_k_kind_rotation():
    """t_2 and the u(1) stay, t_1 -> -t_3, t_3 -> t_1."""
    rep = L.build_matrix_rep("A", 1, 1)
    auto = A.automorphism_from_root(rep, rep.root_system.highest_root, "K")
    expect = np.array([[0, 0, 1, 0],
                       [0, 1, 0, 0],
                       [-1, 0, 0, 0],
                       [0, 0, 0, 1]], dtype=float)
    assert np.abs(auto.matrix - expect).max() < 1e-12


def test_su3_root_vector_mixing():
    """Conjugation by the highest-root rotation sends
    E_alpha -> (E_alpha - i E_-beta)/sqrt(2) and cyclic variants."""
    rep = L.build_matrix_rep("A", 2)
    rs = rep.root_system
    al, be, th = rs.root((1, -1, 0)), rs.root((0, 1, -1)), rs.root((1, 0, -1))
    e_th = rep.root_vector(th)
    u = scipy.linalg.expm(1j * np.pi / 4 * (e_th + e_th.conj().T))
    ea, eb = rep.root_vector(al), rep.root_vector(be)
    s = 1 / np.sqrt(2)
    assert np.abs(u.conj().T @ ea @ u - s * (ea - 1j * eb.conj().T)).max() < 1e-12
    assert np.abs(u.conj().T @ eb @ u - s * (eb + 1j * ea.conj().T)).max() < 1e-12
    assert np.abs(u.conj().T @ ea.conj().T @ u - s * (ea.conj().T + 1j * eb)).max() < 1e-12
    assert np.abs(u.conj().T @ eb.conj().T @ u - s * (eb.conj().T - 1j * ea)).max() < 1e-12


def test_hadamard_series_oracle():
    """Trace-projected adjoint action agrees with the commutator series."""
    rep = L.build_matrix_rep("A", 2)
    theta = rep.root_system.highest_root
    e = rep.root_vector(theta)
    r = -1j * np.pi / 4 * (e + e.conj().T)   # U^dag X U = e^R X e^-R
    u = scipy.linalg.expm(1j * np.pi / 4 * (e + e.conj().T))
    auto = A.automorphism_from_root(rep, theta, "J")
    for a in range(rep.dim):
        x = rep.generators[a]
        series = A.hadamard_adjoint(r, x)
        direct = u.conj().T @ x @ u
        assert np.abs(series - direct).max() < 1e-12
        coeffs = np.einsum("ij,bji->b", series, rep.generators) / rep.norm_const
        assert np.abs(coeffs.real - auto.matrix[:, a]).max() < 1e-10


@pytest.mark.parametrize("family,rank", CATALOG)
def test_automorphism_orthogonality_and_invariance(family, rank):
    rep = L.build_matrix_rep(family, rank)
    f = rep.structure_constants()
    theta = rep.root_system.highest_root
    for kind in ("J", "K"):
        auto = A.automorphism_from_root(rep, theta, kind)
        assert auto.orthogonality_residual() < 1e-10
        assert auto.invariance_residual(f) < 1e-9


def test_invalid_kind_rejected():
    rep = L.build_matrix_rep("A", 1)
    with pytest.raises(ValueError):
        A.automorphism_from_root(rep, rep.root_system.highest_root, "L")


# ---------------------------------------------------------------------------
# centralizers

def test_su4_centralizer_of_highest_root():
    rep = L.build_matrix_rep("A", 3, 1)
    dec = A.centralizer(rep, [rep.root_system.highest_root])
    assert dec.shapes == (("A", 1),)
    [su2] = dec.summands
    assert su2.highest_root.coords == (0, 1, -1, 0)     # the beta su(2)
    assert dec.abelian_vectors.shape[0] == 1            # one leftover u(1)
    beta_entry = rep.root_entry(su2.highest_root)
    assert beta_entry.re_index in dec.generator_indices


def test_spin7_centralizer_no_abelian_part():
    rep = L.build_matrix_rep("B", 3)
    dec = A.centralizer(rep, [rep.root_system.highest_root])
    assert sorted(dec.shapes) == [("A", 1), ("A", 1)]
    assert dec.abelian_vectors.shape[0] == 0
    assert sorted(s.highest_root.coords for s in dec.summands) == [(0, 0, 1), (1, -1, 0)]


def test_su2_centralizer_empty():
    rep = L.build_matrix_rep("A", 1)
    dec = A.centralizer(rep, [rep.root_system.highest_root])
    assert dec.dimension == 0
    assert dec.summands == ()


def test_centralizer_of_two_roots():
    """Only the highest root of spin(7) commutes with both level-1 roots."""
    rep = L.build_matrix_rep("B", 3)
    rs = rep.root_system
    dec = A.centralizer(rep, [rs.root((1, -1, 0)), rs.root((0, 0, 1))])
    coords = {s.highest_root.coords for s in dec.summands}
    assert coords == {(1, 1, 0)}
    assert dec.abelian_vectors.shape[0] == 0


# ---------------------------------------------------------------------------
# chains

@pytest.mark.parametrize("family,rank,expected", [
    ("A", 6, [(1, 0, 0, 0, 0, 0, -1), (0, 1, 0, 0, 0, -1, 0), (0, 0, 1, 0, -1, 0, 0)]),
    ("B", 3, [(1, 1, 0), (1, -1, 0), (0, 0, 1)]),
    ("A", 1, [(1, -1)]),
])
def test_basic_roots(family, rank, expected):
    rep = L.build_matrix_rep(family, rank)
    chain = A.basic_roots(rep)
    assert [t.coords for t in chain.thetas] == expected
    assert chain.coroot_orthogonality_residual() < 1e-12


@pytest.mark.parametrize("family,rank", CATALOG)
def test_chain_cross_checks_numerically(family, rank):
    chain = A.basic_roots(L.build_matrix_rep(family, rank))
    assert len(chain.thetas) >= 1


# ---------------------------------------------------------------------------
# quaternion triples

def test_su2_u1_triple_exact():
    rep = L.build_matrix_rep("A", 1, 1)
    res = A.build_quaternion_triple(rep)
    assert np.abs(res.I.matrix - C.SCRIPT_I).max() < 1e-12
    assert np.abs(res.J.matrix - C.SCRIPT_J).max() < 1e-12
    assert np.abs(res.K.matrix - C.SCRIPT_K).max() < 1e-12
    assert res.certified


def test_su3_j_is_diag_scriptJ_minus_scriptJ():
    rep = L.build_matrix_rep("A", 2)
    res = A.build_quaternion_triple(rep)
    tags = [b.tag for b in res.J.blocks]
    assert tags == ["script-J", "minus-script-J"]
    ktags = [b.tag for b in res.K.blocks]
    assert ktags == ["script-K", "minus-script-K"]


def test_su4_u1_all_blocks_pm_scriptJ_and_unmixed():
    rep = L.build_matrix_rep("A", 3, 1)
    res = A.build_quaternion_triple(rep)
    assert len(res.J.blocks) == 4
    assert all(b.tag in ("script-J", "minus-script-J") for b in res.J.blocks)
    # J does not mix distinct blocks: zero outside the block-diagonal
    mask = np.zeros((rep.dim, rep.dim), dtype=bool)
    for b in res.J.blocks:
        mask[np.ix_(b.indices, b.indices)] = True
    assert np.abs(res.J.matrix[~mask]).max() < 1e-12


@pytest.mark.parametrize("family,rank", CATALOG)
def test_triples_certify(family, rank):
    from hktlie.spaces import required_padding
    rep = L.build_matrix_rep(family, rank, required_padding([(family, rank)]))
    res = A.build_quaternion_triple(rep)
    assert res.certified
    assert res.quaternion_residual < 1e-9
    m = res.I.matrix @ res.J.matrix + res.J.matrix @ res.I.matrix
    assert np.abs(m).max() < 1e-9            # J anticommutes with I
    assert res.k_mismatch < 1e-9             # K-kind route reproduces I J here
    assert all(b.tag in ("script-J", "minus-script-J") for b in res.J.blocks)


def test_inner_block_untouched_by_outer_automorphism():
    """Generators commuting with E_{+-theta} are fixed by its automorphism."""
    rep = L.build_matrix_rep("A", 3, 1)
    auto = A.automorphism_from_root(rep, rep.root_system.highest_root, "J")
    dec = A.centralizer(rep, [rep.root_system.highest_root])
    idx = list(dec.generator_indices)
    sub = auto.matrix[np.ix_(idx, idx)]
    assert np.abs(sub - np.eye(len(idx))).max() < 1e-12
    for v in dec.abelian_vectors:
        assert np.abs(auto.matrix @ v - v).max() < 1e-12


def test_within_level_automorphisms_commute():
    """spin(7): the two level-1 rotations have disjoint support."""
    rep = L.build_matrix_rep("B", 3, 3)
    rs = rep.root_system
    oa = A.automorphism_from_root(rep, rs.root((1, -1, 0)), "J", level=1)
    og = A.automorphism_from_root(rep, rs.root((0, 0, 1)), "J", level=1)
    assert np.abs(oa.matrix @ og.matrix - og.matrix @ oa.matrix).max() < 1e-12


def test_double_rotation_keeps_complex_structure():
    """Applying the automorphism twice (angle pi per plane) still maps the
    canonical structure to an integrable complex structure."""
    rep = L.build_matrix_rep("A", 2)
    res = A.build_quaternion_triple(rep)
    omega = A.compose(res.automorphisms, rep.dim)
    twice = omega @ omega
    m = twice @ res.I.matrix @ twice.T
    assert np.abs(m + m.T).max() < 1e-12
    assert np.abs(m @ m + np.eye(rep.dim)).max() < 1e-12
    assert C.integrability_residual(m, rep.structure_constants()) < 1e-9


def test_k_mismatch_recorded_not_asserted():
    rep = L.build_matrix_rep("B", 3, 3)
    res = A.build_quaternion_triple(rep)
    assert np.isfinite(res.k_mismatch)


def test_triple_reports_torsion_match():
    rep = L.build_matrix_rep("A", 2)
    res = A.build_quaternion_triple(rep)
    for r in res.reports.values():
        assert r.torsion_match < 1e-8
        assert r.bismut < 1e-12


def test_d4_three_level1_automorphisms_commute():
    rep = L.build_matrix_rep("D", 4, 4)
    chain = A.basic_roots(rep)
    level1 = [n for n in chain.nodes if n.level == 1]
    assert len(level1) == 3
    autos = [A.automorphism_from_root(rep, n.theta, "J", 1) for n in level1]
    for x in autos:
        for y in autos:
            assert np.abs(x.matrix @ y.matrix - y.matrix @ x.matrix).max() < 1e-12
