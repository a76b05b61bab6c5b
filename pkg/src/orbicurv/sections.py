"""Angled-graph curvature, regular sections, and curvature certification.

The curvature of a finite angled graph under a finite action, in pi-units:

    W(K, Gamma) = 2/|K| - sum over vertex orbits of 1/|K_v|
                        + sum over edge orbits of (1 - angle(e))/|K_e|

A regular section of a link is a spurless, connected, not edgeless
invariant subgraph; the certifier demands every regular section of every
link have curvature at most alpha and every face have nonpositive
curvature.  Enumeration of sections is delegated to the compiled kernel
(with a pure fallback); the brute-force powerset filter is kept in the test
suite as the oracle.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional

from ._kernel import regular_edge_masks, subgraph_curvature_extrema
from .complex2 import AngledGraph, TwoComplex, link
from .errors import InvalidComplexError, OrbicurvError
from .groups import GraphAction, GroupAction, graph_subgroups

F = Fraction


# ---------------------------------------------------------------------------
# sections


@dataclass(frozen=True)
class Section:
    """A subgraph of an angled graph given by vertex and edge id subsets."""

    parent: AngledGraph
    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        vset = set(self.vertices)
        for e in self.edges:
            u, v = self.parent.edges[e]
            if u not in vset or v not in vset:
                raise InvalidComplexError("section edge has endpoint outside section")

    @property
    def edgeless(self) -> bool:
        return not self.edges

    def valences(self) -> dict[int, int]:
        val = {v: 0 for v in self.vertices}
        for e in self.edges:
            u, v = self.parent.edges[e]
            val[u] += 1
            val[v] += 1
        return val

    @property
    def spurless(self) -> bool:
        return all(v != 1 for v in self.valences().values())

    @property
    def connected(self) -> bool:
        if not self.vertices:
            return False
        adj = {v: [] for v in self.vertices}
        for e in self.edges:
            u, v = self.parent.edges[e]
            adj[u].append(v)
            adj[v].append(u)
        start = self.vertices[0]
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.vertices)

    @property
    def regular(self) -> bool:
        return self.spurless and self.connected and not self.edgeless

    def edge_mask(self) -> int:
        m = 0
        for e in self.edges:
            m |= 1 << e
        return m


def section_from_edge_mask(graph: AngledGraph, mask: int) -> Section:
    verts = set()
    edges = []
    for e in range(graph.num_edges):
        if (mask >> e) & 1:
            edges.append(e)
            u, v = graph.edges[e]
            verts.update((u, v))
    return Section(graph, tuple(sorted(verts)), tuple(edges))


# ---------------------------------------------------------------------------
# curvature


def _require_angles(graph: AngledGraph):
    for e, a in enumerate(graph.angles):
        if a is None:
            raise InvalidComplexError(f"edge {e} carries no angle")


def graph_curvature(graph: AngledGraph, action: Optional[GraphAction] = None) -> Fraction:
    """W(K, Gamma) in pi-units; trivial action when ``action`` is None."""
    _require_angles(graph)
    if action is None or action.is_trivial():
        total = F(2) - graph.num_vertices
        for a in graph.angles:
            total += 1 - a
        return total
    order = action.order
    total = F(2, order)
    for orbit in action.vertex_orbits():
        total -= F(1, order // len(orbit))
    for orbit in action.edge_orbits():
        e = orbit[0]
        total += (1 - graph.angles[e]) * F(1, order // len(orbit))
    return total


def section_curvature(
    section: Section, action: Optional[GraphAction] = None
) -> Fraction:
    """W(H, Delta) for an (invariant) subgraph, by the orbit formula."""
    graph = section.parent
    _require_angles(graph)
    if action is None or action.is_trivial():
        total = F(2) - len(section.vertices)
        for e in section.edges:
            total += 1 - graph.angles[e]
        return total
    elements = action.elements
    order = len(elements)
    vset = set(section.vertices)
    eset = set(section.edges)
    for vperm, eperm in elements:
        if any(vperm[v] not in vset for v in vset) or any(
            eperm[e] not in eset for e in eset
        ):
            raise OrbicurvError("section is not invariant under the action")
    total = F(2, order)
    seen = set()
    for v in section.vertices:
        if v in seen:
            continue
        orbit = {g[0][v] for g in elements}
        seen.update(orbit)
        total -= F(1, order // len(orbit))
    seen = set()
    for e in section.edges:
        if e in seen:
            continue
        orbit = {g[1][e] for g in elements}
        seen.update(orbit)
        total += (1 - graph.angles[e]) * F(1, order // len(orbit))
    return total


# ---------------------------------------------------------------------------
# enumeration


def _invariant_edge_orbit_sections(
    graph: AngledGraph, action: GraphAction
) -> list[Section]:
    """Invariant subgraphs that are unions of edge orbits, regular ones only."""
    orbits = action.edge_orbits()
    out = []
    n = len(orbits)
    for mask in range(1, 1 << n):
        edges = []
        for i in range(n):
            if (mask >> i) & 1:
                edges.extend(orbits[i])
        sec = section_from_edge_mask(
            graph, sum(1 << e for e in edges)
        )
        if sec.regular:
            out.append(sec)
    out.sort(key=Section.edge_mask)
    return out


def enumerate_regular_sections(
    graph: AngledGraph, action: Optional[GraphAction] = None
) -> list[Section]:
    """All regular sections in canonical (edge-mask) order.

    For the trivial action these are the connected spurless subgraphs with
    at least one edge; the vertex set of a regular section is forced to be
    the set of endpoints of its edges, so sections are enumerated as edge
    subsets.  For a nontrivial action only invariant subgraphs qualify.
    """
    if action is not None and not action.is_trivial():
        return _invariant_edge_orbit_sections(graph, action)
    tails = [u for u, _ in graph.edges]
    heads = [v for _, v in graph.edges]
    masks = regular_edge_masks(graph.num_vertices, tails, heads)
    return [section_from_edge_mask(graph, m) for m in masks]


def brute_force_regular_sections(graph: AngledGraph) -> list[Section]:
    """Powerset filter over (vertex subset, edge subset) pairs; test oracle."""
    out = {}
    nv, ne = graph.num_vertices, graph.num_edges
    for vmask in range(1 << nv):
        verts = tuple(v for v in range(nv) if (vmask >> v) & 1)
        vset = set(verts)
        usable = [
            e
            for e in range(ne)
            if graph.edges[e][0] in vset and graph.edges[e][1] in vset
        ]
        for k in range(1 << len(usable)):
            edges = tuple(usable[i] for i in range(len(usable)) if (k >> i) & 1)
            sec = Section(graph, verts, edges)
            if sec.regular:
                out[(verts, edges)] = sec
    return sorted(out.values(), key=Section.edge_mask)


# ---------------------------------------------------------------------------
# certification


@dataclass(frozen=True)
class Certificate:
    """Outcome of a sectional-curvature check at level ``alpha``."""

    outcome: str  # "certified" | "violated" | "vacuous"
    alpha: Fraction
    generalized: bool = False
    violation: Optional[tuple] = None  # (vertex, Section, curvature, subgroup gens)
    face_violation: Optional[tuple[int, Fraction]] = None
    max_section_curvature: dict = field(default_factory=dict)

    @property
    def is_certified(self) -> bool:
        return self.outcome in ("certified", "vacuous")


def face_curvature_plain(x: TwoComplex, f: int) -> Fraction:
    """Unweighted face curvature: angle sum minus (|boundary| - 2)."""
    word = x.faces[f]
    ang = x.angles[f]
    if ang is None:
        raise InvalidComplexError(f"face {f} carries no angles")
    return sum(ang, F(0)) - (len(word) - 2)


def _face_check(x: TwoComplex) -> Optional[tuple[int, Fraction]]:
    for f in range(x.num_faces):
        k = face_curvature_plain(x, f)
        if k > 0:
            return (f, k)
    return None


def certify_sectional(x: TwoComplex, alpha) -> Certificate:
    """Certify sectional curvature <= alpha (trivial group).

    Checks every regular section of every link, in canonical order, then
    every face.  The certificate records the per-vertex maximum section
    curvature on success and the first violation otherwise.
    """
    alpha = F(alpha)
    if not x.fully_angled():
        raise InvalidComplexError("complex is not fully angled")
    table = {}
    any_section = False
    for v in range(x.num_vertices):
        lk = link(x, v)
        best = None
        for sec in enumerate_regular_sections(lk):
            any_section = True
            w = section_curvature(sec)
            if w > alpha:
                return Certificate(
                    outcome="violated",
                    alpha=alpha,
                    violation=(v, sec, w, ()),
                )
            if best is None or w > best:
                best = w
        table[v] = best
    fv = _face_check(x)
    if fv is not None:
        return Certificate(outcome="violated", alpha=alpha, face_violation=fv)
    outcome = "certified" if any_section else "vacuous"
    return Certificate(outcome=outcome, alpha=alpha, max_section_curvature=table)


def certify_generalized(x: TwoComplex, action: GroupAction, alpha) -> Certificate:
    """Certify generalized sectional curvature <= alpha.

    For each vertex orbit representative x, each subgroup H of the
    stabilizer G_x acting on link(x), every regular H-section must have
    W(H, .) <= alpha; faces as in the plain certifier.
    """
    alpha = F(alpha)
    if not x.fully_angled():
        raise InvalidComplexError("complex is not fully angled")
    table = {}
    any_section = False
    for orbit in action.vertex_orbits():
        v = orbit[0]
        link_action = action.induced_link_action(v)
        lk = link_action.carrier
        best = None
        for sub in graph_subgroups(link_action):
            sub_action = link_action.restrict_elements(sub.elements)
            for sec in enumerate_regular_sections(lk, sub_action):
                any_section = True
                w = section_curvature(sec, sub_action)
                if w > alpha:
                    return Certificate(
                        outcome="violated",
                        alpha=alpha,
                        generalized=True,
                        violation=(v, sec, w, sub.generators),
                    )
                if best is None or w > best:
                    best = w
        table[v] = best
    fv = _face_check(x)
    if fv is not None:
        return Certificate(
            outcome="violated", alpha=alpha, generalized=True, face_violation=fv
        )
    outcome = "certified" if any_section else "vacuous"
    return Certificate(
        outcome=outcome, alpha=alpha, generalized=True, max_section_curvature=table
    )


# ---------------------------------------------------------------------------
# bounds (negativebound / positivebound)


@dataclass(frozen=True)
class BoundsReport:
    """Extremal section curvatures of a complex, in pi-units.

    ``a_neg`` is the maximum curvature among sections of negative curvature
    (default -1 when none exists); ``a_pos`` the maximum among sections of
    nonnegative curvature (default 0).  Sections here are arbitrary
    invariant nonempty subgraphs of links, spurless or not.
    """

    a_neg: Fraction
    a_pos: Fraction

    def __post_init__(self):
        if not self.a_neg < 0 <= self.a_pos:
            raise OrbicurvError("bounds must satisfy a_neg < 0 <= a_pos")


def _scaled_weights(graph: AngledGraph) -> tuple[list[int], int]:
    _require_angles(graph)
    scale = lcm(*[a.denominator for a in graph.angles]) if graph.angles else 1
    weights = [int((1 - a) * scale) for a in graph.angles]
    return weights, scale


def _link_extrema_trivial(lk: AngledGraph) -> tuple[Optional[F], Optional[F]]:
    weights, scale = _scaled_weights(lk)
    tails = [u for u, _ in lk.edges]
    heads = [v for _, v in lk.edges]
    neg, pos = subgraph_curvature_extrema(lk.num_vertices, tails, heads, weights, scale)
    return (
        None if neg is None else F(neg, scale),
        None if pos is None else F(pos, scale),
    )


def _link_extrema_subgroup(
    lk: AngledGraph, sub_action: GraphAction
) -> tuple[Optional[F], Optional[F]]:
    """Extrema of W(H, .) over H-invariant nonempty subgraphs of a link."""
    order = sub_action.order
    weights, scale = _scaled_weights(lk)
    eorbits = sub_action.edge_orbits()
    vorbits = sub_action.vertex_orbits()
    orbit_vmask = []
    orbit_wsum = []
    for orbit in eorbits:
        vm = 0
        ws = 0
        for e in orbit:
            u, v = lk.edges[e]
            vm |= (1 << u) | (1 << v)
            ws += weights[e]
        orbit_vmask.append(vm)
        orbit_wsum.append(ws)
    vorbit_masks = [sum(1 << v for v in o) for o in vorbits]
    max_neg = None
    max_pos = None
    n = len(eorbits)
    for mask in range(1 << n):
        covered = 0
        wsum = 0
        for i in range(n):
            if (mask >> i) & 1:
                covered |= orbit_vmask[i]
                wsum += orbit_wsum[i]
        base = (2 - bin(covered).count("1")) * scale + wsum
        # achievable extra isolated-vertex counts: subset sums of the sizes
        # of vertex orbits disjoint from the covered set
        sums = 1
        for vm, orbit in zip(vorbit_masks, vorbits):
            if vm & covered == 0:
                sums |= sums << len(orbit)
        kmin = 0 if mask else 1
        k = kmin
        found_nonneg = False
        while True:
            while k <= lk.num_vertices and not (sums >> k) & 1:
                k += 1
            if k > lk.num_vertices:
                break
            val = base - k * scale
            if val >= 0:
                if not found_nonneg:
                    cand = F(val, scale * order)
                    if max_pos is None or cand > max_pos:
                        max_pos = cand
                    found_nonneg = True
                k += 1
            else:
                cand = F(val, scale * order)
                if max_neg is None or cand > max_neg:
                    max_neg = cand
                break
    return max_neg, max_pos


def curvature_bounds(
    x: TwoComplex, action: Optional[GroupAction] = None
) -> BoundsReport:
    """negativebound and positivebound over all links, subgroups, sections."""
    max_neg = None
    max_pos = None

    def fold(neg, pos):
        nonlocal max_neg, max_pos
        if neg is not None and (max_neg is None or neg > max_neg):
            max_neg = neg
        if pos is not None and (max_pos is None or pos > max_pos):
            max_pos = pos

    if action is None or len(action.elements) == 1:
        for v in range(x.num_vertices):
            fold(*_link_extrema_trivial(link(x, v)))
    else:
        for orbit in action.vertex_orbits():
            v = orbit[0]
            link_action = action.induced_link_action(v)
            lk = link_action.carrier
            fold(*_link_extrema_trivial(lk))
            for sub in graph_subgroups(link_action):
                if sub.order == 1:
                    continue
                sub_action = link_action.restrict_elements(sub.elements)
                fold(*_link_extrema_subgroup(lk, sub_action))
    return BoundsReport(
        a_neg=max_neg if max_neg is not None else F(-1),
        a_pos=max_pos if max_pos is not None else F(0),
    )


def negative_orbit_bound(chi, a_pos, n_pos: int, a_neg) -> Fraction:
    """Upper bound for the number of negatively curved vertex orbits.

    In pi-units: (2 chi - a_pos * n_pos) / a_neg, valid when a_neg < 0.
    """
    chi, a_pos, a_neg = F(chi), F(a_pos), F(a_neg)
    if a_neg >= 0:
        raise OrbicurvError("negative_orbit_bound requires a_neg < 0")
    return (2 * chi - a_pos * n_pos) / a_neg


# ---------------------------------------------------------------------------
# edge augmentation (adding an edge to a certified graph)


def angle_distance(graph: AngledGraph, u: int, v: int) -> Optional[Fraction]:
    """Shortest-path distance with edge lengths = angles; None if unreachable."""
    _require_angles(graph)
    if u == v:
        return F(0)
    dist = {u: F(0)}
    heap = [(F(0), u)]
    inc = graph.incident_edges()
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        if x == v:
            return d
        for e in inc[x]:
            a, b = graph.edges[e]
            y = b if x == a else a
            nd = d + graph.angles[e]
            if y not in dist or nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist.get(v)


def check_edge_augmentation(
    graph: AngledGraph, endpoints: tuple[int, int], theta_e, alpha
) -> str:
    """Verdict of the edge-augmentation criterion for a certified graph.

    ``graph`` is assumed certified with all regular sections of curvature at
    most ``alpha <= 0`` and nonnegative angles.  Returns ``"nonpositive"``,
    ``"strictly_negative"``, or ``"inapplicable"``; the strict verdict is
    preferred whenever its hypotheses hold.
    """
    theta_e, alpha = F(theta_e), F(alpha)
    u, v = endpoints
    if not (0 <= u < graph.num_vertices and 0 <= v < graph.num_vertices):
        raise InvalidComplexError("augmentation endpoints missing from graph")
    _require_angles(graph)
    if any(a < 0 for a in graph.angles):
        raise InvalidComplexError("augmentation requires nonnegative angles")
    d = angle_distance(graph, u, v)
    far = d is None  # unreachable counts as distance >= pi (and > pi)
    # theta_e > 2 - d covers sections that reduce to a subdivided interval
    # between the endpoints; theta_e > 1 + alpha covers sections containing
    # a cycle away from the new edge.
    if (
        alpha < 0
        and (far or d > 1)
        and theta_e > 1 + alpha
        and (far or theta_e > 2 - d)
    ):
        return "strictly_negative"
    if (far or d >= 1) and theta_e == 1:
        return "nonpositive"
    return "inapplicable"


def augment_graph(graph: AngledGraph, endpoints: tuple[int, int], theta_e) -> AngledGraph:
    """The graph with one extra edge of angle ``theta_e`` appended."""
    return AngledGraph(
        graph.num_vertices,
        graph.edges + (tuple(endpoints),),
        graph.angles + (F(theta_e),),
    )


# ---------------------------------------------------------------------------
# structural sign classification


@dataclass(frozen=True)
class SectionSignReport:
    sign: str  # "positive" | "zero" | "negative"
    curvature: Fraction
    witness: Optional[str]
    consistent: bool


def classify_section_sign(
    section: Section,
    action: Optional[GraphAction] = None,
    alpha=None,
) -> SectionSignReport:
    """Sign of W(H, Delta) for a nonempty spurless section, with the
    structural witness predicted for ambient curvature <= alpha.

    positive requires a single vertex with finite stabilizing group; zero
    (under alpha < 0) requires an edgeless two-vertex section with trivial
    action.  ``consistent`` records whether the witness matched.
    """
    if not section.vertices:
        raise OrbicurvError("section is empty")
    if not section.spurless:
        raise OrbicurvError("section has a spur")
    w = section_curvature(section, action)
    trivial = action is None or action.is_trivial()
    if w > 0:
        match = len(section.vertices) == 1 and section.edgeless
        return SectionSignReport(
            sign="positive",
            curvature=w,
            witness="single vertex, finite group" if match else None,
            consistent=match,
        )
    if w == 0:
        if alpha is not None and F(alpha) < 0:
            two_trivial = (
                section.edgeless and len(section.vertices) == 2 and trivial
            )
            return SectionSignReport(
                sign="zero",
                curvature=w,
                witness="two vertices, trivial action" if two_trivial else None,
                consistent=two_trivial,
            )
        return SectionSignReport(sign="zero", curvature=w, witness=None, consistent=True)
    consistent = True
    if alpha is not None and not section.edgeless:
        consistent = w <= F(alpha)
    return SectionSignReport(
        sign="negative", curvature=w, witness=None, consistent=consistent
    )
