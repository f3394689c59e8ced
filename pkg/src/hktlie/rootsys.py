"""Classical root systems over exact rational coordinates.

Families A/B/C/D in their standard orthogonal embeddings: A_n lives in the
zero-sum hyperplane of Q^(n+1); B_n, C_n and D_n live in Q^n.  Everything in
this module is exact (fractions.Fraction); floating point only enters in the
matrix layer built on top.

Conventions:
  * simple roots are ordered alpha_1 .. alpha_r in chain order, with the
    short (B) / long (C) / fork (D) root last;
  * positive roots are listed by increasing height, ties broken by
    descending lexicographic order on coordinates;
  * cartan[i][j] = <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

FAMILIES = ("A", "B", "C", "D")

MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}

#: greek aliases for simple roots, used in human-readable summand labels
GREEK = ("alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta")

Coords = tuple  # tuple[Fraction, ...]


class UnsupportedAlgebraError(ValueError):
    """Family/rank combination outside the classical tables."""


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _fr(seq) -> Coords:
    return tuple(Fraction(x) for x in seq)


@dataclass(frozen=True)
class Root:
    """A root as an exact coordinate vector with length/sign bookkeeping."""

    coords: Coords
    length_class: str = "long"   # "long" | "short"
    sign: str = "positive"       # "positive" | "negative"

    def __post_init__(self):
        if all(c == 0 for c in self.coords):
            raise ValueError("root coordinates must be nonzero")

    @property
    def norm2(self) -> Fraction:
        return dot(self.coords, self.coords)

    def negated(self) -> "Root":
        sign = "negative" if self.sign == "positive" else "positive"
        return Root(tuple(-c for c in self.coords), self.length_class, sign)

    def dot(self, other: "Root") -> Fraction:
        return dot(self.coords, other.coords)

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def coroot(root: Root | Sequence[Fraction]) -> Coords:
    """Coroot 2*alpha/(alpha, alpha) in the same coordinate system."""
    coords = root.coords if isinstance(root, Root) else _fr(root)
    n2 = dot(coords, coords)
    return tuple(2 * c / n2 for c in coords)


def _simple_root_coords(family: str, rank: int) -> list[Coords]:
    one = Fraction(1)
    if family == "A":
        dim = rank + 1
        return [
            tuple(one if j == i else -one if j == i + 1 else Fraction(0) for j in range(dim))
            for i in range(rank)
        ]
    chain = [
        tuple(one if j == i else -one if j == i + 1 else Fraction(0) for j in range(rank))
        for i in range(rank - 1)
    ]
    if family == "B":
        last = tuple(one if j == rank - 1 else Fraction(0) for j in range(rank))
    elif family == "C":
        last = tuple(2 * one if j == rank - 1 else Fraction(0) for j in range(rank))
    elif family == "D":
        last = tuple(one if j in (rank - 2, rank - 1) else Fraction(0) for j in range(rank))
    else:
        raise UnsupportedAlgebraError(f"unknown family {family!r}")
    return chain + [last]


def _unit(dim: int, i: int) -> Coords:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(dim))


def _positive_root_coords(family: str, rank: int) -> list[Coords]:
    out = []
    if family == "A":
        dim = rank + 1
        for i in range(dim):
            for j in range(i + 1, dim):
                out.append(tuple(
                    Fraction(1) if k == i else Fraction(-1) if k == j else Fraction(0)
                    for k in range(dim)))
        return out
    for i in range(rank):
        for j in range(i + 1, rank):
            for sj in (Fraction(-1), Fraction(1)):
                out.append(tuple(
                    Fraction(1) if k == i else sj if k == j else Fraction(0)
                    for k in range(rank)))
    if family == "B":
        out += [_unit(rank, i) for i in range(rank)]
    elif family == "C":
        out += [tuple(2 * c for c in _unit(rank, i)) for i in range(rank)]
    elif family != "D":
        raise UnsupportedAlgebraError(f"unknown family {family!r}")
    return out


def _length_class(family: str, norm2: Fraction) -> str:
    if family in ("A", "D"):
        return "long"
    if family == "B":
        return "long" if norm2 == 2 else "short"
    return "long" if norm2 == 4 else "short"


def _solve_exact(columns: Sequence[Coords], target: Coords) -> Coords | None:
    """Solve sum_i c_i columns[i] = target exactly; None if inconsistent."""
    dim, r = len(target), len(columns)
    aug = [[columns[j][i] for j in range(r)] + [target[i]] for i in range(dim)]
    pivots = []
    row = 0
    for col in range(r):
        piv = next((k for k in range(row, dim) if aug[k][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for k in range(dim):
            if k != row and aug[k][col] != 0:
                fac = aug[k][col]
                aug[k] = [a - fac * b for a, b in zip(aug[k], aug[row])]
        pivots.append(col)
        row += 1
        if row == dim:
            break
    sol = [Fraction(0)] * r
    for rr, col in enumerate(pivots):
        sol[col] = aug[rr][-1]
    for k in range(row, dim):
        if aug[k][-1] != 0:
            return None
    # verify (cheap, guards rank-deficient corner cases)
    for i in range(dim):
        if sum((sol[j] * columns[j][i] for j in range(r)), Fraction(0)) != target[i]:
            return None
    return tuple(sol)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """A classical simple root system with all derived combinatorial data."""

    family: str
    rank: int
    dim: int
    simple_roots: tuple[Root, ...]
    positive_roots: tuple[Root, ...]
    cartan_matrix: tuple[tuple[int, ...], ...]
    highest_root: Root
    dynkin_labels: tuple[int, ...]
    _root_set: frozenset
    _coeffs: dict

    def all_roots(self) -> tuple[Root, ...]:
        return self.positive_roots + tuple(r.negated() for r in self.positive_roots)

    def is_root(self, coords: Sequence[Fraction]) -> bool:
        return tuple(coords) in self._root_set

    def root(self, coords: Sequence[Fraction]) -> Root:
        coords = _fr(coords)
        if coords not in self._root_set:
            raise KeyError(f"{coords} is not a root of {self.family}{self.rank}")
        positive = coords in self._coeffs
        base = coords if positive else tuple(-c for c in coords)
        n2 = dot(base, base)
        r = Root(base, _length_class(self.family, n2), "positive")
        return r if positive else r.negated()

    def coefficients(self, root: Root) -> Coords:
        """Expansion of a root over the simple roots (exact)."""
        key = root.coords
        if key in self._coeffs:
            return self._coeffs[key]
        neg = tuple(-c for c in key)
        if neg in self._coeffs:
            return tuple(-c for c in self._coeffs[neg])
        raise KeyError(f"{key} is not a root of {self.family}{self.rank}")

    def height(self, root: Root) -> Fraction:
        return sum(self.coefficients(root))

    def root_string_down(self, a: Root, b: Root) -> int:
        """Largest q >= 0 such that a - q*b is still a root."""
        q = 0
        cur = tuple(x - y for x, y in zip(a.coords, b.coords))
        while cur in self._root_set:
            q += 1
            cur = tuple(x - y for x, y in zip(cur, b.coords))
        return q

    def root_label(self, root: Root) -> str:
        """Greek name for simple roots, Dynkin-coefficient digits otherwise."""
        coeffs = self.coefficients(root)
        nz = [(i, c) for i, c in enumerate(coeffs) if c != 0]
        if len(nz) == 1 and nz[0][1] == 1 and nz[0][0] < len(GREEK):
            return GREEK[nz[0][0]]
        return "".join(str(int(c)) for c in coeffs)

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "simple_roots": [[str(c) for c in r.coords] for r in self.simple_roots],
            "positive_roots": [[str(c) for c in r.coords] for r in self.positive_roots],
            "cartan_matrix": [list(row) for row in self.cartan_matrix],
            "highest_root": [str(c) for c in self.highest_root.coords],
            "dynkin_labels": list(self.dynkin_labels),
        }


def build_root_system(family: str, rank: int) -> RootSystem:
    family = family.upper()
    if family not in FAMILIES:
        raise UnsupportedAlgebraError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if rank < MIN_RANK[family]:
        raise UnsupportedAlgebraError(
            f"{family}{rank} is not supported (need rank >= {MIN_RANK[family]} for family {family})")

    simples_c = _simple_root_coords(family, rank)
    positives_c = _positive_root_coords(family, rank)
    root_set = frozenset(positives_c) | frozenset(tuple(-c for c in p) for p in positives_c)

    coeffs = {}
    for p in positives_c:
        sol = _solve_exact(simples_c, p)
        if sol is None or any(c.denominator != 1 or c < 0 for c in sol):
            raise RuntimeError(f"positive root {p} is not a nonneg integer combination of simples")
        coeffs[p] = sol

    def mkroot(c):
        return Root(c, _length_class(family, dot(c, c)), "positive")

    positives = sorted(
        (mkroot(c) for c in positives_c),
        key=lambda r: (sum(coeffs[r.coords]), tuple(-x for x in r.coords)))
    simples = tuple(mkroot(c) for c in simples_c)

    cartan = tuple(
        tuple(int(2 * dot(a.coords, b.coords) / b.norm2) for b in simples)
        for a in simples)

    heights = [sum(coeffs[r.coords]) for r in positives]
    hmax = max(heights)
    top = [r for r, h in zip(positives, heights) if h == hmax]
    if len(top) != 1:
        raise RuntimeError(f"highest root of {family}{rank} is not unique")
    highest = top[0]
    labels = tuple(int(c) for c in coeffs[highest.coords])

    return RootSystem(
        family=family, rank=rank, dim=len(simples_c[0]),
        simple_roots=simples, positive_roots=tuple(positives),
        cartan_matrix=cartan, highest_root=highest, dynkin_labels=labels,
        _root_set=root_set, _coeffs=coeffs)


def highest_root(rs: RootSystem) -> Root:
    """Recompute the highest root by height and check maximality."""
    theta = max(rs.positive_roots, key=rs.height)
    assert theta == rs.highest_root
    for a in rs.simple_roots:
        up = tuple(x + y for x, y in zip(theta.coords, a.coords))
        if rs.is_root(up):
            raise RuntimeError(f"{theta} is not maximal: {theta} + {a} is a root")
    return theta


# ---------------------------------------------------------------------------
# subsystems (used by the centralizer chain and the diagram surgery)

@dataclass(frozen=True, eq=False)
class RootSubsystem:
    """A closed subsystem of a parent root system, in parent coordinates."""

    parent: RootSystem
    positive_roots: tuple[Root, ...]
    simple_roots: tuple[Root, ...]
    highest_root: Root
    family: str
    rank: int
    label: str

    @property
    def dimension(self) -> int:
        """Dimension of the subalgebra this subsystem spans."""
        return 2 * len(self.positive_roots) + self.rank

    def coefficients(self, root: Root) -> Coords:
        sol = _solve_exact([s.coords for s in self.simple_roots], root.coords)
        if sol is None:
            raise KeyError(f"{root} is not in subsystem {self.label}")
        return sol


def whole_system_as_subsystem(rs: RootSystem) -> RootSubsystem:
    return RootSubsystem(
        parent=rs, positive_roots=rs.positive_roots, simple_roots=rs.simple_roots,
        highest_root=rs.highest_root, family=rs.family, rank=rs.rank,
        label=f"{rs.family}{rs.rank}")


def orthogonal_positive_roots(roots: Iterable[Root], theta: Root) -> tuple[Root, ...]:
    return tuple(r for r in roots if r.dot(theta) == 0)


def _classify_shape(positive: Sequence[Root], rank: int) -> tuple[str, int]:
    """Family/rank of an irreducible subsystem from absolute root norms."""
    norms = {r.norm2 for r in positive}
    count = len(positive)
    if len(norms) == 1:
        if count == rank * (rank + 1) // 2:
            return "A", rank
        if count == rank * (rank - 1):
            return "D", rank
        raise RuntimeError(f"cannot classify simply-laced subsystem: rank {rank}, {count} roots")
    if min(norms) == 1:
        fam = "B"
    elif max(norms) == 4:
        fam = "C"
    else:
        raise RuntimeError(f"cannot classify subsystem with norms {norms}")
    if count != rank * rank:
        raise RuntimeError(f"{fam}-type subsystem of rank {rank} should have {rank * rank} positive roots, got {count}")
    return fam, rank


def split_subsystems(parent: RootSystem, positive: Sequence[Root]) -> tuple[RootSubsystem, ...]:
    """Decompose a closed set of positive roots into irreducible summands."""
    roots = list(positive)
    if not roots:
        return ()
    # connected components of the non-orthogonality graph
    comp_of = list(range(len(roots)))

    def find(i):
        while comp_of[i] != i:
            comp_of[i] = comp_of[comp_of[i]]
            i = comp_of[i]
        return i

    for i, j in combinations(range(len(roots)), 2):
        if roots[i].dot(roots[j]) != 0:
            comp_of[find(i)] = find(j)

    groups = {}
    for i in range(len(roots)):
        groups.setdefault(find(i), []).append(roots[i])

    out = []
    coord_set_all = {r.coords for r in roots}
    for members in groups.values():
        coord_set = {r.coords for r in members}
        # simple roots: positive roots not expressible as a sum of two members
        simples = []
        for r in members:
            decomposable = any(
                tuple(a - b for a, b in zip(r.coords, s.coords)) in coord_set
                for s in members if s.coords != r.coords)
            if not decomposable:
                simples.append(r)
        simples.sort(key=lambda r: tuple(-c for c in r.coords))
        cols = [s.coords for s in simples]
        heights = {}
        for r in members:
            sol = _solve_exact(cols, r.coords)
            if sol is None:
                raise RuntimeError("subsystem member outside span of its simple roots")
            heights[r.coords] = sum(sol)
        members.sort(key=lambda r: (heights[r.coords], tuple(-c for c in r.coords)))
        top = members[-1]
        if sum(1 for r in members if heights[r.coords] == heights[top.coords]) != 1:
            raise RuntimeError("subsystem highest root is not unique")
        fam, rk = _classify_shape(members, len(simples))
        label = f"{fam}{rk}:{parent.root_label(top)}"
        out.append(RootSubsystem(
            parent=parent, positive_roots=tuple(members), simple_roots=tuple(simples),
            highest_root=top, family=fam, rank=rk, label=label))
    # sanity: the union really was closed
    assert sum(len(s.positive_roots) for s in out) == len(coord_set_all)
    out.sort(key=lambda s: tuple(-c for c in s.highest_root.coords))
    return tuple(out)


# ---------------------------------------------------------------------------
# Dynkin diagrams and the extended-diagram surgery

@dataclass(frozen=True)
class DynkinDiagram:
    """Multiplicity-labelled adjacency of simple roots, plus the lowest root."""

    node_labels: tuple[str, ...]
    node_coords: tuple[Coords, ...]
    edges: tuple[tuple[int, int, int], ...]
    extended: bool


def dynkin_diagram(rs: RootSystem, extended: bool = False) -> DynkinDiagram:
    nodes = [(GREEK[i] if i < len(GREEK) else f"a{i + 1}", r.coords)
             for i, r in enumerate(rs.simple_roots)]
    if extended:
        nodes.append(("-theta", tuple(-c for c in rs.highest_root.coords)))
    edges = []
    for i, j in combinations(range(len(nodes)), 2):
        u, v = nodes[i][1], nodes[j][1]
        if dot(u, v) != 0:
            m = int(4 * dot(u, v) ** 2 / (dot(u, u) * dot(v, v)))
            edges.append((i, j, m))
    return DynkinDiagram(
        node_labels=tuple(n[0] for n in nodes),
        node_coords=tuple(n[1] for n in nodes),
        edges=tuple(edges), extended=extended)


@dataclass(frozen=True)
class SurgeryResult:
    """Non-Abelian summands commuting with the highest root vectors."""

    summands: tuple[RootSystem, ...]
    shapes: tuple[tuple[str, int], ...]
    abelian_rank: int
    subsystems: tuple[RootSubsystem, ...]


def extended_dynkin_surgery(rs: RootSystem) -> SurgeryResult:
    """Cross out the lowest-root node and its neighbours; classify the rest.

    Returns the irreducible summands (as fresh canonical root systems) of the
    subalgebra commuting with E_{+-theta}, plus the number of leftover
    commuting Cartan directions.
    """
    theta = rs.highest_root
    subs = split_subsystems(rs, orthogonal_positive_roots(rs.positive_roots, theta))

    # cross-check against the diagram rule: delete -theta and its neighbours
    survivors = {r.coords for r in rs.simple_roots if r.dot(theta) == 0}
    from_subs = {s.coords for sub in subs for s in sub.simple_roots}
    if survivors != from_subs:
        raise RuntimeError(
            f"surgery mismatch for {rs.family}{rs.rank}: diagram gives {sorted(survivors)}, "
            f"root decomposition gives {sorted(from_subs)}")

    shapes = tuple((s.family, s.rank) for s in subs)
    return SurgeryResult(
        summands=tuple(build_root_system(f, r) for f, r in shapes),
        shapes=shapes,
        abelian_rank=rs.rank - 1 - sum(s.rank for s in subs),
        subsystems=subs)


# ---------------------------------------------------------------------------
# the iterated highest-root / centralizer chain

@dataclass(frozen=True, eq=False)
class ChainNode:
    """One step of the iterated construction: a subsystem and its highest root."""

    subsystem: RootSubsystem
    theta: Root
    level: int
    children: tuple["ChainNode", ...]

    @property
    def abelian_dim(self) -> int:
        """Commuting Cartan directions of this node not used by its children."""
        return self.subsystem.rank - 1 - sum(c.subsystem.rank for c in self.children)

    @property
    def label(self) -> str:
        return self.subsystem.label


def _grow_chain(sub: RootSubsystem, level: int, depth_limit: int) -> ChainNode:
    if level > depth_limit:
        raise RuntimeError("highest-root chain failed to terminate")
    theta = sub.highest_root
    rest = orthogonal_positive_roots(sub.positive_roots, theta)
    children = tuple(_grow_chain(c, level + 1, depth_limit)
                     for c in split_subsystems(sub.parent, rest))
    return ChainNode(subsystem=sub, theta=theta, level=level, children=children)


def basic_root_chain(rs: RootSystem) -> tuple[tuple[ChainNode, ...], ...]:
    """Levels of the iterated highest-root construction, outermost first.

    Level 0 holds the full system; level k+1 holds the irreducible summands
    of the roots orthogonal to each level-k highest root.  The chain stops
    when only commuting directions are left.
    """
    top = _grow_chain(whole_system_as_subsystem(rs), 0, rs.rank + 1)
    levels = []
    frontier = (top,)
    while frontier:
        levels.append(frontier)
        frontier = tuple(c for node in frontier for c in node.children)
    return tuple(levels)


def chain_nodes(levels) -> tuple[ChainNode, ...]:
    return tuple(node for level in levels for node in level)


def basic_root_count(rs: RootSystem) -> int:
    return len(chain_nodes(basic_root_chain(rs)))
