from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hktlie import rootsys as R

SUPPORTED = [("A", r) for r in range(1, 9)] + \
    [("B", r) for r in range(2, 5)] + \
    [("C", r) for r in range(2, 5)] + \
    [("D", r) for r in range(3, 6)]


def count_formula(family, rank):
    return {"A": rank * (rank + 1) // 2, "B": rank * rank,
            "C": rank * rank, "D": rank * (rank - 1)}[family]


@pytest.mark.parametrize("family,rank", SUPPORTED)
def test_positive_root_counts(family, rank):
    rs = R.build_root_system(family, rank)
    assert len(rs.positive_roots) == count_formula(family, rank)
    assert len(set(r.coords for r in rs.positive_roots)) == len(rs.positive_roots)


@pytest.mark.parametrize("family,rank", SUPPORTED)
def test_cartan_matrix_entries(family, rank):
    rs = R.build_root_system(family, rank)
    for i, row in enumerate(rs.cartan_matrix):
        for j, v in enumerate(row):
            if i == j:
                assert v == 2
            else:
                assert v in (0, -1, -2, -3)
    # definition check against the exact inner products
    for i, a in enumerate(rs.simple_roots):
        for j, b in enumerate(rs.simple_roots):
            assert rs.cartan_matrix[i][j] == 2 * a.dot(b) / b.norm2


@pytest.mark.parametrize("family,rank", SUPPORTED)
def test_highest_root_is_label_combination(family, rank):
    rs = R.build_root_system(family, rank)
    theta = R.highest_root(rs)
    combo = [sum(c * s.coords[k] for c, s in zip(rs.dynkin_labels, rs.simple_roots))
             for k in range(rs.dim)]
    assert tuple(combo) == theta.coords


def test_a2_positive_roots():
    rs = R.build_root_system("A", 2)
    assert {r.coords for r in rs.positive_roots} == {
        (1, -1, 0), (0, 1, -1), (1, 0, -1)}


def test_a1_smallest_case():
    rs = R.build_root_system("A", 1)
    assert [r.coords for r in rs.positive_roots] == [(1, -1)]
    assert rs.highest_root.coords == (1, -1)


def test_b3_paper_data():
    rs = R.build_root_system("B", 3)
    assert len(rs.positive_roots) == 9
    assert rs.is_root((0, 1, 0))            # beta + gamma
    assert rs.highest_root.coords == (1, 1, 0)
    assert rs.dynkin_labels == (1, 2, 2)    # theta = alpha + 2 beta + 2 gamma
    # two long, one short among the simple roots
    assert [s.length_class for s in rs.simple_roots] == ["long", "long", "short"]


def test_a3_highest_root():
    rs = R.build_root_system("A", 3)
    assert rs.highest_root.coords == (1, 0, 0, -1)
    assert rs.dynkin_labels == (1, 1, 1)


def test_coroot_values():
    rs = R.build_root_system("B", 3)
    gamma = rs.root((0, 0, 1))
    assert R.coroot(gamma) == (0, 0, 2)
    beta2gamma = rs.root((0, 1, 1))
    assert R.coroot(beta2gamma) == (0, 1, 1)
    # pairing <r, coroot(r)> = 2, always
    for r in rs.positive_roots:
        assert R.dot(r.coords, R.coroot(r)) == 2
    a1 = R.build_root_system("A", 1)
    alpha = a1.positive_roots[0]
    assert R.dot(alpha.coords, R.coroot(alpha)) == 2


@pytest.mark.parametrize("family", ["B", "C"])
def test_coroot_swaps_length_classes(family):
    rs = R.build_root_system(family, 3)
    longs = [r for r in rs.positive_roots if r.length_class == "long"]
    shorts = [r for r in rs.positive_roots if r.length_class == "short"]
    long_cor = {R.dot(R.coroot(r), R.coroot(r)) for r in longs}
    short_cor = {R.dot(R.coroot(r), R.coroot(r)) for r in shorts}
    assert max(long_cor) < min(short_cor)


def test_negation_closure():
    rs = R.build_root_system("C", 3)
    for r in rs.positive_roots:
        assert rs.is_root(tuple(-c for c in r.coords))
        assert r.negated().sign == "negative"


def test_root_nonzero_rejected():
    with pytest.raises(ValueError):
        R.Root((Fraction(0), Fraction(0)))


@pytest.mark.parametrize("family,rank", [("D", 2), ("B", 1), ("C", 1), ("A", 0), ("E", 6)])
def test_unsupported_family_rank(family, rank):
    with pytest.raises(R.UnsupportedAlgebraError):
        R.build_root_system(family, rank)


@pytest.mark.parametrize("family,rank", SUPPORTED)
def test_root_strings_match_cartan_pairing(family, rank):
    """q - p for the b-string through a equals the integer pairing <a, b^vee>."""
    rs = R.build_root_system(family, rank)
    roots = rs.positive_roots
    for a in roots:
        for b in roots:
            if a.coords == b.coords:
                continue
            down = rs.root_string_down(a, b)
            up = 0
            cur = tuple(x + y for x, y in zip(a.coords, b.coords))
            while rs.is_root(cur):
                up += 1
                cur = tuple(x + y for x, y in zip(cur, b.coords))
            pairing = 2 * a.dot(b) / b.norm2
            assert down - up == pairing


@pytest.mark.parametrize("family,rank,shapes,abelian", [
    ("A", 6, [("A", 4)], 1),
    ("B", 3, [("A", 1), ("A", 1)], 0),
    ("D", 4, [("A", 1), ("A", 1), ("A", 1)], 0),
    ("A", 2, [], 1),
    ("A", 1, [], 0),
    ("C", 2, [("A", 1)], 0),
    ("C", 4, [("C", 3)], 0),
    ("B", 4, [("A", 1), ("B", 2)], 0),
    ("D", 5, [("A", 1), ("A", 3)], 0),
])
def test_extended_dynkin_surgery(family, rank, shapes, abelian):
    res = R.extended_dynkin_surgery(R.build_root_system(family, rank))
    assert sorted(res.shapes) == sorted(shapes)
    assert res.abelian_rank == abelian
    for summand, (f, r) in zip(res.summands, res.shapes):
        assert (summand.family, summand.rank) == (f, r)
        assert len(summand.positive_roots) == count_formula(f, r)


@pytest.mark.parametrize("family,rank", SUPPORTED)
def test_extended_diagram_node_count(family, rank):
    diag = R.dynkin_diagram(R.build_root_system(family, rank), extended=True)
    assert len(diag.node_labels) == rank + 1
    assert diag.node_labels[-1] == "-theta"


def test_surgery_matches_deleted_subdiagram():
    """Surviving summand simple roots = simple roots not adjacent to -theta."""
    for family, rank in SUPPORTED:
        rs = R.build_root_system(family, rank)
        res = R.extended_dynkin_surgery(rs)
        survivors = {s.coords for s in rs.simple_roots if s.dot(rs.highest_root) == 0}
        got = {s.coords for sub in res.subsystems for s in sub.simple_roots}
        assert got == survivors


@pytest.mark.parametrize("family,rank,labels", [
    ("A", 6, [["A6"], ["A4:011110"], ["A2:001100"]]),
    ("B", 3, [["B3"], ["A1:alpha", "A1:gamma"]]),
    ("A", 1, [["A1"]]),
    ("A", 3, [["A3"], ["A1:beta"]]),
])
def test_basic_root_chain_labels(family, rank, labels):
    levels = R.basic_root_chain(R.build_root_system(family, rank))
    got = [[n.label for n in level] for level in levels]
    assert got == labels


def test_su7_chain_roots():
    levels = R.basic_root_chain(R.build_root_system("A", 6))
    thetas = [n.theta.coords for lv in levels for n in lv]
    assert thetas == [(1, 0, 0, 0, 0, 0, -1), (0, 1, 0, 0, 0, -1, 0), (0, 0, 1, 0, -1, 0, 0)]


def test_spin7_chain_roots():
    levels = R.basic_root_chain(R.build_root_system("B", 3))
    assert [n.theta.coords for n in levels[0]] == [(1, 1, 0)]
    assert sorted(n.theta.coords for n in levels[1]) == [(0, 0, 1), (1, -1, 0)]


@pytest.mark.parametrize("family,rank", SUPPORTED)
def test_chain_coroots_orthogonal(family, rank):
    levels = R.basic_root_chain(R.build_root_system(family, rank))
    thetas = [n.theta for n in R.chain_nodes(levels)]
    for i in range(len(thetas)):
        for j in range(i + 1, len(thetas)):
            assert R.dot(R.coroot(thetas[i]), R.coroot(thetas[j])) == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SUPPORTED))
def test_root_system_invariants_property(case):
    family, rank = case
    rs = R.build_root_system(family, rank)
    # heights positive, coefficient expansion integral
    for r in rs.positive_roots:
        coeffs = rs.coefficients(r)
        assert all(c.denominator == 1 and c >= 0 for c in coeffs)
        assert sum(coeffs) >= 1
    # highest root unique among maximal heights
    heights = sorted(rs.height(r) for r in rs.positive_roots)
    assert heights.count(heights[-1]) == 1
    # adding a simple root to theta never gives a root
    for s in rs.simple_roots:
        up = tuple(a + b for a, b in zip(rs.highest_root.coords, s.coords))
        assert not rs.is_root(up)


def test_json_serialization_roundtrip():
    rs = R.build_root_system("B", 3)
    doc = rs.to_json_dict()
    assert doc["family"] == "B" and doc["rank"] == 3
    assert doc["highest_root"] == ["1", "1", "0"]
    assert len(doc["positive_roots"]) == 9
    assert doc["dynkin_labels"] == [1, 2, 2]
    # rational coordinates survive the string round trip
    coords = tuple(Fraction(c) for c in doc["positive_roots"][0])
    assert rs.is_root(coords)
