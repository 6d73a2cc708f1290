"""Directed multigraphs and the operator-algebra bookkeeping attached to them.

The convention throughout: a MultiGraph stores its adjacency with
a[v][w] = number of edges from w to v, matching the incidence matrices of the
correspondence layer (B[k][i] counts edges i -> k). Everything downstream
reads the matrix in that orientation; the K-theory and simplicity tests work
on the reversed graph, whose ordinary row-to-column adjacency is exactly the
stored matrix.

Also here: skew products of the one-vertex n-edge graph by a cocycle with
values in an abelian dual group (finite targets in full, free abelian targets
restricted to a finite window with boundary stubs), orbit analysis for circle
rotations given by rational or marked-irrational angles, and a conservative
three-valued test for when a frequency semigroup fills the real line.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .corrgraph import CorrGraph
from .errors import SpecError
from .intlinalg import IntMatrix, KGroups, coker_ker

__all__ = [
    "MultiGraph",
    "Stub",
    "from_corr",
    "sources_sinks",
    "ktheory_graph",
    "SimplicityReport",
    "simplicity_check",
    "SkewSpec",
    "skew_product",
    "Frequency",
    "parse_frequency",
    "CircleGraph",
    "CircleReport",
    "circle_analysis",
    "semigroup_r_check",
    "dot_export",
]


@dataclass(frozen=True)
class Stub:
    """An edge whose far end fell outside a finite window."""

    src: int
    target: str
    count: int


@dataclass(frozen=True)
class MultiGraph:
    n: int
    a: tuple[tuple[int, ...], ...]  # a[v][w] = number of edges w -> v
    names: tuple[str, ...]
    stubs: tuple[Stub, ...] = ()

    def __post_init__(self):
        if len(self.a) != self.n or any(len(row) != self.n for row in self.a):
            raise SpecError("adjacency matrix shape does not match vertex count")
        if len(self.names) != self.n:
            raise SpecError("vertex name count does not match vertex count")
        if any(x < 0 for row in self.a for x in row):
            raise SpecError("edge multiplicities must be nonnegative")

    def in_degree(self, v: int) -> int:
        return sum(self.a[v])

    def out_degree(self, v: int) -> int:
        return sum(row[v] for row in self.a)

    def edge_count(self) -> int:
        return sum(sum(row) for row in self.a)


def from_corr(corr: CorrGraph) -> MultiGraph:
    n = corr.vertex_count
    a = [[0] * n for _ in range(n)]
    for e in corr.edges:
        a[e.dst][e.src] += e.count
    names = tuple(f"pi{i}:M{d}" for i, d in enumerate(corr.dims))
    return MultiGraph(n=n, a=tuple(tuple(row) for row in a), names=names)


def sources_sinks(g: MultiGraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Vertices receiving no edges (zero rows), emitting none (zero columns)."""
    sources = tuple(v for v in range(g.n) if g.in_degree(v) == 0)
    sinks = tuple(v for v in range(g.n) if g.out_degree(v) == 0)
    return sources, sinks


def ktheory_graph(g: MultiGraph) -> KGroups:
    """K-groups of the algebra of the graph with all arrows reversed.

    The presentation matrix is (a^t - I) with the columns of the vertices
    that receive nothing (zero rows of a, the sinks after reversal) removed;
    K_0 is its cokernel and K_1 its kernel.
    """
    n = g.n
    t = IntMatrix.from_rows(
        [[g.a[j][i] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    )
    drop = {v for v in range(n) if g.in_degree(v) == 0}
    return coker_ker(t.delete_columns(drop))


@dataclass(frozen=True)
class SimplicityReport:
    every_cycle_has_exit: bool
    cofinal: bool
    simple: bool
    purely_infinite_simple: bool


def _reachability(adj: list[list[int]]) -> list[list[bool]]:
    n = len(adj)
    reach = [[bool(adj[i][j]) or i == j for j in range(n)] for i in range(n)]
    for k in range(n):
        rk = reach[k]
        for i in range(n):
            if reach[i][k]:
                ri = reach[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return reach


def simplicity_check(g: MultiGraph) -> SimplicityReport:
    """Simplicity of the reversed-graph algebra.

    Standard finite-graph criteria, applied to the reversed orientation used
    by ktheory_graph: simple needs every cycle to have an exit plus
    cofinality (every vertex reaches every cycle and every sink); purely
    infinite additionally needs every vertex to reach some cycle. In the
    reversed graph the row v of the stored matrix lists the edges leaving v.
    """
    n = g.n
    rev = [list(row) for row in g.a]
    reach = _reachability(rev)

    on_cycle = [
        any(rev[v][w] > 0 and reach[w][v] for w in range(n)) for v in range(n)
    ]
    sinks = [v for v in range(n) if sum(rev[v]) == 0]

    # a cycle with no exit lives inside the out-degree-one functional part
    every_cycle_has_exit = True
    next_of = {}
    for v in range(n):
        if sum(rev[v]) == 1:
            next_of[v] = next(w for w in range(n) if rev[v][w])
    state = {v: 0 for v in next_of}  # 0 unseen, 1 in progress, 2 done
    for v in next_of:
        if state[v]:
            continue
        path = []
        w = v
        while w in next_of and state[w] == 0:
            state[w] = 1
            path.append(w)
            w = next_of[w]
        if w in next_of and state[w] == 1:
            every_cycle_has_exit = False
        for u in path:
            state[u] = 2
        if not every_cycle_has_exit:
            break

    cofinal = True
    for v in range(n):
        for s in sinks:
            if not reach[v][s]:
                cofinal = False
        for w in range(n):
            if on_cycle[w] and not reach[v][w]:
                cofinal = False

    simple = every_cycle_has_exit and cofinal
    reaches_some_cycle = all(
        any(on_cycle[w] and reach[v][w] for w in range(n)) for v in range(n)
    )
    return SimplicityReport(
        every_cycle_has_exit=every_cycle_has_exit,
        cofinal=cofinal,
        simple=simple,
        purely_infinite_simple=simple and reaches_some_cycle,
    )


# ---------------------------------------------------------------------------
# skew products


@dataclass(frozen=True)
class SkewSpec:
    """A cocycle on the one-vertex graph with n edges, one character each.

    `orders` lists the cyclic factor orders of a finite dual group; for a
    free abelian dual set orders to None and give the rank plus a window
    radius. Characters are integer tuples: exact factor representatives in
    the finite case, arbitrary lattice points in the free case.
    """

    cocycle: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...] | None = None
    rank: int = 0
    window: int = 1


def _name_of(h: tuple[int, ...]) -> str:
    return "(" + ",".join(str(x) for x in h) + ")"


def skew_product(spec: SkewSpec) -> MultiGraph:
    """Skew product of the one-vertex n-edge graph by the given cocycle.

    Vertices are the dual group elements (or the window of lattice points
    with sup-norm at most the window radius); each element chi emits one edge
    chi -> chi + c per cocycle character c. Edges leaving a finite window are
    reported as boundary stubs, never dropped silently.
    """
    if not spec.cocycle:
        raise SpecError("cocycle must assign at least one character")
    if spec.orders is not None:
        if any(o < 1 for o in spec.orders):
            raise SpecError("finite dual group needs positive factor orders")
        width = len(spec.orders)
        elements = list(itertools.product(*[range(o) for o in spec.orders]))
        for c in spec.cocycle:
            if len(c) != width or any(
                not 0 <= x < o for x, o in zip(c, spec.orders)
            ):
                raise SpecError(
                    f"character {_name_of(tuple(c))} outside dual group "
                    f"{'x'.join(f'Z/{o}' for o in spec.orders)}"
                )
    else:
        if spec.rank < 1:
            raise SpecError("free dual group needs positive rank")
        if spec.window < 1:
            raise SpecError("window radius must be at least 1")
        width = spec.rank
        w = spec.window
        elements = list(itertools.product(range(-w, w + 1), repeat=spec.rank))
        for c in spec.cocycle:
            if len(c) != width:
                raise SpecError(
                    f"character {_name_of(tuple(c))} outside dual group "
                    f"Z^{spec.rank}"
                )

    index = {h: t for t, h in enumerate(elements)}
    nn = len(elements)
    names = tuple(_name_of(h) for h in elements)
    a = [[0] * nn for _ in range(nn)]
    stub_counts: dict[tuple[int, str], int] = {}
    for src, h in enumerate(elements):
        for c in spec.cocycle:
            if spec.orders is not None:
                h2 = tuple((x + y) % o for x, y, o in zip(h, c, spec.orders))
            else:
                h2 = tuple(x + y for x, y in zip(h, c))
            if h2 in index:
                a[index[h2]][src] += 1
            else:
                key = (src, _name_of(h2))
                stub_counts[key] = stub_counts.get(key, 0) + 1
    stubs = tuple(
        Stub(src=s, target=t, count=c)
        for (s, t), c in sorted(stub_counts.items())
    )
    return MultiGraph(n=nn, a=tuple(tuple(r) for r in a), names=names, stubs=stubs)


# ---------------------------------------------------------------------------
# circle rotations and frequency semigroups


@dataclass(frozen=True)
class Frequency:
    """A real number q * theta, with theta either 1 (irr None) or a named
    irrational. Distinct names are treated as rationally independent."""

    value: Fraction
    irr: str | None = None


_FREQ_NUM_RE = re.compile(r"([+-]?\d+(?:\s*/\s*\d+)?)(?:\s*\*\s*([A-Za-z_]\w*))?")
_FREQ_SYM_RE = re.compile(r"([+-]?)([A-Za-z_]\w*)")


def parse_frequency(text: str) -> Frequency:
    s = text.strip()
    m = _FREQ_NUM_RE.fullmatch(s)
    if m:
        return Frequency(Fraction(m.group(1).replace(" ", "")), m.group(2))
    m = _FREQ_SYM_RE.fullmatch(s)
    if m:
        return Frequency(Fraction(-1 if m.group(1) == "-" else 1), m.group(2))
    raise SpecError(f"bad frequency {text!r}")


@dataclass(frozen=True)
class CircleGraph:
    """A finite family of circle rotations: edge k sends z to angles[k] * z.

    Angles are fractions of a full turn, exact rationals or marked
    irrationals; Fraction keeps the rational ones in lowest terms.
    """

    angles: tuple[Frequency, ...]


@dataclass(frozen=True)
class CircleReport:
    orbit_group_order: int | str  # group order, or "infinite"
    dense: bool


def circle_analysis(c: CircleGraph) -> CircleReport:
    """Orbit of a point of the circle under the rotation family.

    All angles rational: the angles generate a finite cyclic rotation group
    whose order is the lcm of the reduced denominators, and orbits are
    finite. Any marked irrational angle with a nonzero coefficient makes
    every orbit dense.
    """
    live = [f for f in c.angles if f.value != 0]
    if any(f.irr is not None for f in live):
        return CircleReport(orbit_group_order="infinite", dense=True)
    order = lcm(1, *[f.value.denominator for f in live])
    return CircleReport(orbit_group_order=order, dense=False)


def semigroup_r_check(freqs) -> bool | None:
    """Does the additive semigroup of the given frequencies fill the line?

    True and False are sound answers; None means the simple criteria here do
    not decide the question.
    """
    freqs = list(freqs)
    if not freqs:
        raise SpecError("no frequencies given")
    live = [f for f in freqs if f.value != 0]
    if not live:
        return False
    if all(f.value > 0 for f in live) or all(f.value < 0 for f in live):
        return False
    if len({f.irr for f in live}) == 1:
        return False
    if len(live) == 2 and sum(1 for f in live if f.irr is not None) == 1:
        return True
    return None


# ---------------------------------------------------------------------------
# rendering


def dot_export(obj: CorrGraph | MultiGraph, graph_name: str = "g") -> str:
    """Graphviz source, deterministic line order, arrows in drawn orientation."""
    lines = [f"digraph {graph_name} {{", "  rankdir=LR;"]
    if isinstance(obj, CorrGraph):
        for i, d in enumerate(obj.dims):
            lines.append(f'  v{i} [label="pi{i}:M{d}"];')
        for e in sorted(obj.edges, key=lambda e: (e.src, e.dst)):
            for _ in range(e.count):
                lines.append(f'  v{e.src} -> v{e.dst} [label="M_{e.rows}x{e.cols}"];')
    else:
        for i, name in enumerate(obj.names):
            lines.append(f'  v{i} [label="{name}"];')
        for w in range(obj.n):
            for v in range(obj.n):
                for _ in range(obj.a[v][w]):
                    lines.append(f"  v{w} -> v{v};")
        for t, s in enumerate(obj.stubs):
            lines.append(f'  stub{t} [label="{s.target}", shape=plaintext];')
            lines.append(f'  v{s.src} -> stub{t} [style=dashed, label="{s.count}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
