"""Canonical embedded resolution of an irreducible branch.

The resolution is described combinatorially, stage by stage, from the
continued fraction of each pair ``k/n``. Stage ``nu`` contributes the white
vertices ``D[nu, i, j]`` with ``1 <= i <= h`` and ``1 <= j <= a_i``; rows with
``a_i = 0`` are empty. The proper transform of the curve is the single
black vertex.

For stages after the first, the last vertex of the previous stage plays the
role of an extra leading vertex of row 1 (the previous stage's divisor the
curve still meets). That is what makes the row recursions below uniform
across stages.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .checks import Check, check_equal
from .errors import InvariantError, ResourceLimitError
from .puiseux import PuiseuxPairs, _as_pairs, characteristic_data, continued_fraction

__all__ = [
    "Vertex",
    "BLACK",
    "EnriquesDiagram",
    "DualGraph",
    "Rupture",
    "DecoratedResolution",
    "DEFAULT_MAX_VERTICES",
    "DEFAULT_MAX_WEIGHT",
    "vertex_count",
    "check_limits",
    "build_enriques",
    "dual_graph",
    "multiplicities",
    "discrepancies",
    "decorate",
    "log_canonical_threshold",
    "verify_closed_forms",
    "export_dot",
]

DEFAULT_MAX_VERTICES = 10_000
DEFAULT_MAX_WEIGHT = 1_000_000
MAX_VERTICES_ENV = "CURVESPEC_MAX_VERTICES"


@dataclass(frozen=True, order=True)
class Vertex:
    """A white vertex ``D[stage, row, col]``, or the black vertex (stage 0)."""

    stage: int
    row: int
    col: int

    @property
    def is_black(self) -> bool:
        return self.stage == 0

    @property
    def label(self) -> str:
        if self.is_black:
            return "V'"
        return f"D[{self.stage},{self.row},{self.col}]"

    @property
    def node_id(self) -> str:
        if self.is_black:
            return "Vp"
        return f"D_{self.stage}_{self.row}_{self.col}"

    def __repr__(self):
        return self.label


BLACK = Vertex(0, 0, 0)


@dataclass(frozen=True)
class EnriquesDiagram:
    """Proximity structure of the blow-ups.

    ``vertices`` lists white vertices in blow-up order followed by
    :data:`BLACK`. ``proximity[v]`` holds the earlier vertices ``v`` is
    proximate to; for the black vertex it is the single vertex it meets.
    """

    pairs: PuiseuxPairs
    vertices: tuple[Vertex, ...]
    proximity: Mapping[Vertex, tuple[Vertex, ...]]
    center_mult: Mapping[Vertex, int]
    last_of_stage: tuple[Vertex, ...]
    order: Mapping[Vertex, int] = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.order is None:
            object.__setattr__(self, "order", {v: i for i, v in enumerate(self.vertices)})

    @property
    def white(self) -> tuple[Vertex, ...]:
        return self.vertices[:-1]

    def arrows(self) -> list[tuple[Vertex, Vertex]]:
        return [(v, t) for v in self.vertices for t in self.proximity[v]]

    def stage_vertices(self, nu: int) -> list[Vertex]:
        return [v for v in self.white if v.stage == nu]


@dataclass(frozen=True)
class DualGraph:
    """Intersection graph of the exceptional divisors and the proper transform."""

    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[Vertex, Vertex], ...]
    adjacency: Mapping[Vertex, tuple[Vertex, ...]] = field(repr=False, compare=False)

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        return self.adjacency[v]

    def degree(self, v: Vertex) -> int:
        return len(self.adjacency[v])

    def ruptures(self) -> list[Vertex]:
        return [v for v in self.vertices if not v.is_black and self.degree(v) >= 3]

    def is_tree(self) -> bool:
        if len(self.edges) != len(self.vertices) - 1:
            return False
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for u in self.adjacency[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self.vertices)


@dataclass(frozen=True)
class Rupture:
    vertex: Vertex
    m: int
    neighbors: tuple[Vertex, ...]
    neighbor_mults: tuple[int, ...]


@dataclass(frozen=True)
class DecoratedResolution:
    """Diagram, dual graph and per-divisor numerical data.

    ``m`` includes the black vertex (multiplicity 1); ``dtilde`` and ``e``
    cover white vertices only. ``dtilde`` is the discrepancy plus one and
    ``e = dtilde / m``.
    """

    diagram: EnriquesDiagram
    graph: DualGraph
    m: Mapping[Vertex, int]
    dtilde: Mapping[Vertex, int]
    e: Mapping[Vertex, Fraction]
    ruptures: tuple[Rupture, ...]

    @property
    def pairs(self) -> PuiseuxPairs:
        return self.diagram.pairs


def vertex_count(pairs) -> int:
    """Number of white vertices, i.e. the sum of all partial quotients."""
    pairs = _as_pairs(pairs)
    return sum(sum(continued_fraction(k, n).a) for k, n in pairs)


def _max_vertices(explicit):
    if explicit is not None:
        return explicit
    env = os.environ.get(MAX_VERTICES_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ResourceLimitError(f"{MAX_VERTICES_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_MAX_VERTICES


def check_limits(pairs, max_vertices=None, max_weight=None):
    """Raise :class:`ResourceLimitError` if ``pairs`` exceed the size guard.

    The vertex limit defaults to ``$CURVESPEC_MAX_VERTICES`` or 10^4, the
    last-weight limit to 10^6.
    """
    pairs = _as_pairs(pairs)
    limit_v = _max_vertices(max_vertices)
    limit_w = DEFAULT_MAX_WEIGHT if max_weight is None else max_weight
    # weights first: cheap, and bounds the continued fraction cost
    w = pairs[0][0]
    for i in range(1, len(pairs)):
        w = w * pairs[i - 1][1] * pairs[i][1] + pairs[i][0]
    if w > limit_w:
        raise ResourceLimitError(f"last weight {w} exceeds limit {limit_w}")
    count = vertex_count(pairs)
    if count > limit_v:
        raise ResourceLimitError(f"{count} exceptional divisors exceeds limit {limit_v}")


def build_enriques(pairs, *, max_vertices=None, max_weight=None) -> EnriquesDiagram:
    """Build the Enriques diagram stage by stage.

    Within a stage the arrows are: each vertex to its left neighbor in the
    same row; every row ``i+1`` vertex to the last vertex of row ``i``; and
    the first vertex of row ``i+2`` to the last vertex of row ``i``. An empty
    or missing "row 0" is replaced by the previous stage's last vertex.
    """
    pairs = _as_pairs(pairs)
    check_limits(pairs, max_vertices, max_weight)
    cd = characteristic_data(pairs)

    vertices: list[Vertex] = []
    proximity: dict[Vertex, tuple[Vertex, ...]] = {}
    center: dict[Vertex, int] = {}
    last_of_stage: list[Vertex] = []
    prev_last = None

    for nu, (k, n) in enumerate(pairs, start=1):
        cf = continued_fraction(k, n)
        nprime = cd.nprime[nu]

        def row_end(i, nu=nu, cf=cf, prev_last=prev_last):
            if cf.a[i - 1] == 0:
                return prev_last
            return Vertex(nu, i, cf.a[i - 1])

        for i in range(1, cf.h + 1):
            for j in range(1, cf.a[i - 1] + 1):
                v = Vertex(nu, i, j)
                targets = []
                if j > 1:
                    targets.append(Vertex(nu, i, j - 1))
                elif i == 1 and prev_last is not None:
                    targets.append(prev_last)
                if i >= 2:
                    targets.append(row_end(i - 1))
                if i >= 3 and j == 1:
                    targets.append(row_end(i - 2))
                if None in targets or len(set(targets)) != len(targets):
                    raise InvariantError(f"bad proximity targets for {v}: {targets}")
                vertices.append(v)
                proximity[v] = tuple(targets)
                center[v] = cf.r[i] * nprime
        prev_last = Vertex(nu, cf.h, cf.a[-1])
        last_of_stage.append(prev_last)

    vertices.append(BLACK)
    proximity[BLACK] = (prev_last,)
    return EnriquesDiagram(
        pairs=pairs,
        vertices=tuple(vertices),
        proximity=proximity,
        center_mult=center,
        last_of_stage=tuple(last_of_stage),
    )


def dual_graph(diagram: EnriquesDiagram) -> DualGraph:
    """Two divisors meet iff one is proximate to the other and no divisor is
    proximate to both. The black vertex meets only the last vertex."""
    proximate_to: dict[Vertex, set[Vertex]] = {v: set() for v in diagram.vertices}
    for v in diagram.white:
        for t in diagram.proximity[v]:
            proximate_to[t].add(v)

    edges = []
    for v in diagram.white:
        for t in diagram.proximity[v]:
            if not (proximate_to[v] & proximate_to[t]):
                edges.append((t, v))
    edges.append((diagram.proximity[BLACK][0], BLACK))

    order = diagram.order
    edges.sort(key=lambda e: (order[e[0]], order[e[1]]))
    adj: dict[Vertex, list[Vertex]] = {v: [] for v in diagram.vertices}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    adjacency = {v: tuple(sorted(ns, key=order.__getitem__)) for v, ns in adj.items()}
    return DualGraph(vertices=diagram.vertices, edges=tuple(edges), adjacency=adjacency)


def multiplicities(diagram: EnriquesDiagram) -> dict[Vertex, int]:
    """Multiplicity of the pulled-back function along every divisor.

    Each new divisor picks up the multiplicities of the divisors it is
    proximate to plus the multiplicity of the curve at the blown-up point.
    """
    m: dict[Vertex, int] = {}
    for v in diagram.white:
        m[v] = sum(m[t] for t in diagram.proximity[v]) + diagram.center_mult[v]
    m[BLACK] = 1
    return m


def discrepancies(diagram: EnriquesDiagram, m: Mapping[Vertex, int] | None = None):
    """Return ``(dtilde, e)`` for all white vertices.

    ``dtilde`` is computed row by row from the seeds ``dtilde_0 = 1`` and
    ``dtilde_{-1}`` (the previous stage's last value, or 1 at the first
    stage). ``e`` needs the multiplicities, computed here if not given.
    """
    if m is None:
        m = multiplicities(diagram)
    dtilde: dict[Vertex, int] = {}
    seed = 1
    for nu, (k, n) in enumerate(diagram.pairs, start=1):
        cf = continued_fraction(k, n)
        dt = {-1: seed, 0: 1}
        for i in range(1, cf.h + 1):
            for j in range(1, cf.a[i - 1] + 1):
                dtilde[Vertex(nu, i, j)] = j * dt[i - 1] + dt[i - 2]
            dt[i] = cf.a[i - 1] * dt[i - 1] + dt[i - 2]
        seed = dt[cf.h]
    e = {v: Fraction(dtilde[v], m[v]) for v in diagram.white}
    return dtilde, e


def _ruptures(graph: DualGraph, m: Mapping[Vertex, int]) -> tuple[Rupture, ...]:
    out = []
    for v in graph.ruptures():
        nbrs = graph.neighbors(v)
        out.append(Rupture(vertex=v, m=m[v], neighbors=nbrs, neighbor_mults=tuple(m[u] for u in nbrs)))
    return tuple(out)


def decorate(pairs, *, max_vertices=None, max_weight=None) -> DecoratedResolution:
    """Full pipeline: diagram, dual graph, multiplicities, discrepancies."""
    diagram = build_enriques(pairs, max_vertices=max_vertices, max_weight=max_weight)
    graph = dual_graph(diagram)
    m = multiplicities(diagram)
    dtilde, e = discrepancies(diagram, m)
    return DecoratedResolution(diagram=diagram, graph=graph, m=m, dtilde=dtilde, e=e, ruptures=_ruptures(graph, m))


def with_multiplicities(dec: DecoratedResolution, m: Mapping[Vertex, int]) -> DecoratedResolution:
    """Copy of ``dec`` carrying replacement multiplicities (used for fault injection)."""
    e = {v: Fraction(dec.dtilde[v], m[v]) for v in dec.diagram.white}
    return DecoratedResolution(dec.diagram, dec.graph, dict(m), dec.dtilde, e, _ruptures(dec.graph, m))


def log_canonical_threshold(dec: DecoratedResolution) -> Fraction:
    """Minimum of ``e`` over the exceptional divisors."""
    return min(dec.e.values())


def verify_closed_forms(dec: DecoratedResolution) -> list[Check]:
    """Check the recursively computed data against its closed forms.

    Per stage this covers the row-end multiplicities and discrepancies in
    terms of the convergents, divisibility by the cofactor, and at the stage's
    last vertex the three neighbor multiplicities, the two congruences they
    satisfy, and the relation with the weight.
    """
    diagram, graph, m, dtilde = dec.diagram, dec.graph, dec.m, dec.dtilde
    cd = characteristic_data(diagram.pairs)
    checks: list[Check] = []
    prev_last = None

    for nu, (k, n) in enumerate(diagram.pairs, start=1):
        cf = continued_fraction(k, n)
        h = cf.h
        npr = cd.nprime[nu]
        tag = f"stage {nu}"

        stage = diagram.stage_vertices(nu)
        bad = [v for v in stage if m[v] % npr]
        checks.append(Check(f"cofactor_divides_m[{nu}]", not bad, f"{tag}: {bad} not divisible by {npr}"))

        m_seed = m[prev_last] if prev_last is not None else 0
        if m_seed % npr:
            checks.append(Check(f"seed_divisible[{nu}]", False, f"{tag}: {m_seed} % {npr}"))
            prev_last = Vertex(nu, h, cf.a[-1])
            continue
        mbar_seed = m_seed // npr
        d_seed = dtilde[prev_last] if prev_last is not None else 1

        def row_end(i):
            return prev_last if cf.a[i - 1] == 0 else Vertex(nu, i, cf.a[i - 1])

        for i in range(1, h + 1):
            v = row_end(i)
            mbar = Fraction(m[v], npr) if v is not None else Fraction(0)
            if i % 2:
                expected = n * cf.P(i) + mbar_seed * cf.Q(i)
            else:
                expected = (mbar_seed + k) * cf.Q(i)
            checks.append(check_equal(f"row_end_multiplicity[{nu},{i}]", mbar, expected, tag))
            dt = dtilde[v] if v is not None else 1
            checks.append(check_equal(f"row_end_discrepancy[{nu},{i}]", dt, cf.P(i) + d_seed * cf.Q(i), tag))

        c0 = Vertex(nu, h, cf.a[-1])
        nbrs = graph.neighbors(c0)
        c1, c2 = row_end(h - 1), Vertex(nu, h, cf.a[-1] - 1)
        if len(nbrs) != 3 or c1 not in nbrs or c2 not in nbrs:
            checks.append(Check(f"rupture_neighbors[{nu}]", False, f"{c0} meets {nbrs}"))
            prev_last = c0
            continue
        checks.append(Check(f"rupture_neighbors[{nu}]", True))
        (c3,) = [u for u in nbrs if u not in (c1, c2)]
        mb0, mb1, mb2, mb3 = (Fraction(m[u], npr) for u in (c0, c1, c2, c3))
        even = h % 2 == 0
        Q = cf.Q(h - 1)
        checks.append(check_equal(f"rupture_m0[{nu}]", mb0, (mbar_seed + k) * n, tag))
        checks.append(check_equal(f"rupture_m1[{nu}]", mb1, (mbar_seed + k) * Q - int(even), tag))
        checks.append(check_equal(f"rupture_m2[{nu}]", mb2, (mbar_seed + k) * (n - Q) - int(not even), tag))
        checks.append(check_equal(f"rupture_m2_from_m1[{nu}]", mb2, mb0 - mb1 - 1, tag))
        total = mb1 + mb2 + mb3
        checks.append(Check(
            f"rupture_sum_congruence[{nu}]",
            total.denominator == 1 and total % mb0 == 0,
            f"{tag}: {total} mod {mb0}",
        ))
        checks.append(Check(
            f"rupture_c3_congruence[{nu}]",
            mb3.denominator == 1 and mb3 % mb0 == 1 % mb0,
            f"{tag}: {mb3} mod {mb0}",
        ))
        checks.append(check_equal(f"weight_from_seed[{nu}]", mbar_seed + k, cd.w[nu - 1], tag))
        checks.append(check_equal(f"rupture_m_weight[{nu}]", m[c0], cd.w[nu - 1] * n * npr, tag))
        if h >= 2 and cf.a[1] >= 1:
            first_even = Vertex(nu, 2, 1)
            checks.append(check_equal(f"first_even_multiplicity[{nu}]", m[first_even], cd.w[nu - 1] * npr, tag))
        prev_last = c0

    return checks


GraphLike = Union[EnriquesDiagram, DualGraph]
_BLACK_STYLE = 'shape=square, style=filled, fillcolor=black, fontcolor=white, label="V\'"'


def export_dot(graph: GraphLike, decoration: DecoratedResolution | None = None) -> str:
    """Render a diagram (directed) or dual graph (undirected) as DOT text.

    With ``decoration`` the white labels carry ``m`` and the discrepancy
    ``d``. Output depends only on the input, vertices are emitted in blow-up
    order.
    """
    directed = isinstance(graph, EnriquesDiagram)
    lines = ["digraph enriques {" if directed else "graph dual {"]
    for v in graph.vertices:
        if v.is_black:
            lines.append(f"  {v.node_id} [{_BLACK_STYLE}];")
            continue
        label = v.label
        if decoration is not None:
            label += f" m={decoration.m[v]} d={decoration.dtilde[v] - 1}"
        lines.append(f'  {v.node_id} [shape=circle, label="{label}"];')
    if directed:
        for src, dst in graph.arrows():
            lines.append(f"  {src.node_id} -> {dst.node_id};")
    else:
        for a, b in graph.edges:
            lines.append(f"  {a.node_id} -- {b.node_id};")
    lines.append("}")
    return "\n".join(lines) + "\n"
