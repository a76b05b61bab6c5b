"""Disk diagrams: planar contractible 2-complexes with a boundary cycle.

Planarity is combinatorial: a rotation system (cyclic order of outgoing
darts at each vertex) whose face tracing closes up into the attaching words
of the 2-cells plus exactly one leftover orbit, the boundary.  Face tracing
uses ``next(d) = successor of reverse(d) in the rotation at the terminal
vertex of d``; the sphere condition ``V - E + (F + 1) = 2`` together with
connectivity makes the complex a disk.

``find_disk_diagram`` is a breadth-first bounded-area van Kampen search
over hole-boundary words; moves either cancel a backtrack or attach a face
of the target along 1..L-1 matched letters (or cap the hole with a full
face).  The found move sequence is replayed into an explicit diagram with
rotation system, and validated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .complex2 import (
    CellularMap,
    TwoComplex,
    dart,
    dart_edge,
    dart_of_letter,
    dart_reverse,
    dart_sign,
)
from .errors import InvalidDiagramError, OrbicurvError
from .transforms import Letter, Word, act, all_transforms

# ---------------------------------------------------------------------------
# the diagram structure


def _invert_darts(seq: Sequence[int]) -> tuple[int, ...]:
    return tuple(dart_reverse(d) for d in reversed(seq))


@dataclass(frozen=True)
class DiskDiagram:
    """A validated disk diagram.

    ``rotations[v]`` lists the darts with initial vertex ``v`` in cyclic
    order; ``boundary`` is the distinguished boundary cycle as a dart
    sequence (empty exactly for the single-point diagram).
    """

    complex: TwoComplex
    rotations: tuple[tuple[int, ...], ...]
    boundary: tuple[int, ...]

    @property
    def area(self) -> int:
        return self.complex.num_faces

    def boundary_vertices(self) -> set[int]:
        if not self.boundary:
            return {0}
        out = set()
        for d in self.boundary:
            out.add(self.complex.dart_init(d))
        return out

    def boundary_edges(self) -> set[int]:
        return {dart_edge(d) for d in self.boundary}

    def interior_vertices(self) -> set[int]:
        return set(range(self.complex.num_vertices)) - self.boundary_vertices()

    def valence(self, v: int) -> int:
        return len(self.rotations[v])


def area(d: DiskDiagram) -> int:
    return d.area


def _face_orbits(x: TwoComplex, rotations) -> list[tuple[int, ...]]:
    """Orbits of the face-tracing permutation over all darts."""
    succ = {}
    for v, rot in enumerate(rotations):
        n = len(rot)
        for i, dd in enumerate(rot):
            succ[dd] = rot[(i + 1) % n]
    nxt = {}
    for dd in range(2 * x.num_edges):
        nxt[dd] = succ[dart_reverse(dd)]
    seen = set()
    orbits = []
    for dd in sorted(nxt):
        if dd in seen:
            continue
        orbit = []
        cur = dd
        while cur not in seen:
            seen.add(cur)
            orbit.append(cur)
            cur = nxt[cur]
        orbits.append(tuple(orbit))
    return orbits


def _word_darts(word: Word) -> tuple[int, ...]:
    return tuple(dart_of_letter(letter) for letter in word)


def _canon_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Canonical form of a cyclic dart sequence up to rotation/inversion."""
    seq = tuple(seq)
    if not seq:
        return seq
    best = None
    for cand in (seq, _invert_darts(seq)):
        for i in range(len(cand)):
            rot = cand[i:] + cand[:i]
            if best is None or rot < best:
                best = rot
    return best


def validate_diagram(
    x: TwoComplex,
    rotations: Sequence[Sequence[int]],
    boundary: Sequence[int],
) -> DiskDiagram:
    """Check all disk-diagram invariants and build the value.

    Contractibility: connected and V - E + F = 1.  Planarity: the rotation
    system's face orbits match the attaching words bijectively (up to
    rotation and inversion) with exactly one leftover orbit, which must
    equal the stored boundary cycle; the sphere count V - E + (F+1) = 2
    then pins genus zero.
    """
    rotations = tuple(tuple(r) for r in rotations)
    boundary = tuple(boundary)
    if x.num_edges == 0:
        if x.num_vertices != 1 or x.num_faces != 0 or boundary:
            raise InvalidDiagramError(
                "an edgeless diagram must be a single point with empty boundary"
            )
        return DiskDiagram(x, ((),), ())
    if len(rotations) != x.num_vertices:
        raise InvalidDiagramError("rotation system has wrong vertex count")
    seen_darts = set()
    for v, rot in enumerate(rotations):
        for dd in rot:
            if x.dart_init(dd) != v:
                raise InvalidDiagramError(f"dart {dd} listed at a foreign vertex")
            if dd in seen_darts:
                raise InvalidDiagramError(f"dart {dd} appears twice")
            seen_darts.add(dd)
    if len(seen_darts) != 2 * x.num_edges:
        raise InvalidDiagramError("rotation system does not cover all darts")
    if not x.is_connected():
        raise InvalidDiagramError("diagram is not connected")
    if x.euler_characteristic() != 1:
        raise InvalidDiagramError(
            f"diagram is not contractible: V - E + F = {x.euler_characteristic()}"
        )
    orbits = _face_orbits(x, rotations)
    if len(orbits) != x.num_faces + 1:
        raise InvalidDiagramError(
            "rotation system is not planar: "
            f"{len(orbits)} face orbits for {x.num_faces} cells"
        )
    orbit_forms = {}
    for o in orbits:
        orbit_forms.setdefault(_canon_cycle(o), []).append(o)
    for f in range(x.num_faces):
        form = _canon_cycle(_word_darts(x.faces[f]))
        bucket = orbit_forms.get(form)
        if not bucket:
            raise InvalidDiagramError(
                f"attaching word of face {f} is not a face of the embedding"
            )
        bucket.pop()
        if not bucket:
            del orbit_forms[form]
    leftover = [o for bucket in orbit_forms.values() for o in bucket]
    if len(leftover) != 1:
        raise InvalidDiagramError("embedding does not have a unique outer face")
    outer = leftover[0]
    if _canon_cycle(boundary) != _canon_cycle(outer):
        raise InvalidDiagramError(
            "stored boundary cycle does not match the outer face traversal"
        )
    if len(boundary) != len(outer):
        raise InvalidDiagramError("boundary length mismatch")
    return DiskDiagram(x, rotations, boundary)


def boundary_cycle(d: DiskDiagram) -> tuple[int, ...]:
    """The boundary cycle, recomputed from the rotation system and verified."""
    if d.complex.num_edges == 0:
        return ()
    orbits = _face_orbits(d.complex, d.rotations)
    face_forms = [_canon_cycle(_word_darts(w)) for w in d.complex.faces]
    for o in orbits:
        form = _canon_cycle(o)
        if form in face_forms:
            face_forms.remove(form)
            continue
        if form != _canon_cycle(d.boundary):
            raise InvalidDiagramError("recomputed boundary differs from stored")
        return d.boundary
    raise InvalidDiagramError("no outer face found")


# ---------------------------------------------------------------------------
# cut vertices and cut components


def _incidence_components(x: TwoComplex, removed_vertex: Optional[int]) -> list[set]:
    """Components of the cell-incidence graph avoiding one vertex.

    Cells are ("v", i), ("e", i), ("f", i); edges join cells to the cells of
    their boundary.  Removing a 0-cell leaves open cells connected exactly
    when the space minus that point is connected.
    """
    nodes = []
    for v in range(x.num_vertices):
        if v != removed_vertex:
            nodes.append(("v", v))
    nodes += [("e", e) for e in range(x.num_edges)]
    nodes += [("f", f) for f in range(x.num_faces)]
    adj = {n: [] for n in nodes}

    def connect(a, b):
        if a in adj and b in adj:
            adj[a].append(b)
            adj[b].append(a)

    for e, (u, v) in enumerate(x.edges):
        connect(("e", e), ("v", u))
        connect(("e", e), ("v", v))
    for f, word in enumerate(x.faces):
        for e, _ in word:
            connect(("f", f), ("e", e))
    out = []
    seen = set()
    for n in nodes:
        if n in seen:
            continue
        comp = {n}
        stack = [n]
        seen.add(n)
        while stack:
            cur = stack.pop()
            for nb in adj[cur]:
                if nb not in seen:
                    seen.add(nb)
                    comp.add(nb)
                    stack.append(nb)
        out.append(comp)
    return out


def cut_vertices(d: DiskDiagram) -> set[int]:
    """Vertices whose removal disconnects the diagram."""
    x = d.complex
    base = len(_incidence_components(x, None))
    out = set()
    for v in range(x.num_vertices):
        comps = _incidence_components(x, v)
        nonempty = [c for c in comps if c]
        if len(nonempty) > base:
            out.add(v)
    return out


@dataclass(frozen=True)
class CutComponent:
    """Closure of a component of the diagram minus its cut vertices."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    faces: tuple[int, ...]

    @property
    def non_singular(self) -> bool:
        return bool(self.faces)


def cut_components(d: DiskDiagram) -> list[CutComponent]:
    x = d.complex
    cuts = cut_vertices(d)
    nodes = (
        [("v", v) for v in range(x.num_vertices) if v not in cuts]
        + [("e", e) for e in range(x.num_edges)]
        + [("f", f) for f in range(x.num_faces)]
    )
    adj = {n: [] for n in nodes}

    def connect(a, b):
        if a in adj and b in adj:
            adj[a].append(b)
            adj[b].append(a)

    for e, (u, v) in enumerate(x.edges):
        connect(("e", e), ("v", u))
        connect(("e", e), ("v", v))
    for f, word in enumerate(x.faces):
        for e, _ in word:
            connect(("f", f), ("e", e))
    comps = []
    seen = set()
    for n in nodes:
        if n in seen:
            continue
        comp = {n}
        seen.add(n)
        stack = [n]
        while stack:
            cur = stack.pop()
            for nb in adj[cur]:
                if nb not in seen:
                    seen.add(nb)
                    comp.add(nb)
                    stack.append(nb)
        comps.append(comp)
    out = []
    for comp in comps:
        verts = {i for kind, i in comp if kind == "v"}
        edges = sorted(i for kind, i in comp if kind == "e")
        faces = sorted(i for kind, i in comp if kind == "f")
        # closure: add incident cut vertices
        for e in edges:
            verts.update(x.edges[e])
        if not edges and not faces and not verts:
            continue
        out.append(
            CutComponent(tuple(sorted(verts)), tuple(edges), tuple(faces))
        )
    # isolated cut vertices joining nothing (degenerate) are not components
    out.sort(key=lambda c: (c.vertices, c.edges))
    return out


# ---------------------------------------------------------------------------
# arcs


@dataclass(frozen=True)
class Arc:
    """A maximal path through valence-2 vertices, as a dart sequence."""

    darts: tuple[int, ...]
    closed: bool
    kind: str  # "boundary" | "internal"

    def __len__(self):
        return len(self.darts)


def _chains(
    x: TwoComplex, edge_set: set[int], through: set[int], kind: str
) -> list[Arc]:
    """Maximal chains of ``edge_set`` edges joined at ``through`` vertices."""
    ends_at: dict[int, list[int]] = {}
    for e in edge_set:
        for dd in (dart(e, 1), dart(e, -1)):
            ends_at.setdefault(x.dart_init(dd), []).append(dd)
    arcs = []
    used = set()
    # open chains start at an edge end whose vertex is not a pass-through
    for e in sorted(edge_set):
        for d0 in (dart(e, 1), dart(e, -1)):
            v0 = x.dart_init(d0)
            if v0 in through and len(ends_at.get(v0, [])) == 2:
                continue
            if e in used:
                continue
            chain = [d0]
            used.add(e)
            cur = d0
            while True:
                v = x.dart_term(cur)
                if v not in through:
                    break
                slots = ends_at.get(v, [])
                if len(slots) != 2:
                    break
                nxt = slots[0] if slots[1] == dart_reverse(cur) else slots[1]
                if nxt == dart_reverse(cur) or dart_edge(nxt) in used:
                    break
                chain.append(nxt)
                used.add(dart_edge(nxt))
                cur = nxt
            arcs.append(Arc(tuple(chain), closed=False, kind=kind))
            break
    # remaining edges form closed chains (every vertex a pass-through)
    for e in sorted(edge_set):
        if e in used:
            continue
        d0 = dart(e, 1)
        chain = [d0]
        used.add(e)
        cur = d0
        while True:
            v = x.dart_term(cur)
            slots = ends_at[v]
            nxt = slots[0] if slots[1] == dart_reverse(cur) else slots[1]
            if dart_edge(nxt) in used:
                break
            chain.append(nxt)
            used.add(dart_edge(nxt))
            cur = nxt
        arcs.append(Arc(tuple(chain), closed=True, kind=kind))
    arcs.sort(key=lambda a: a.darts)
    return arcs


def boundary_arcs(d: DiskDiagram) -> list[Arc]:
    """Maximal boundary paths whose interior vertices have valence 2.

    A boundary consisting of a single closed valence-2 cycle is reported as
    one closed arc.
    """
    x = d.complex
    bedges = d.boundary_edges()
    bverts = d.boundary_vertices()
    through = {v for v in bverts if d.valence(v) == 2}
    return _chains(x, bedges, through, "boundary")


def internal_arcs(d: DiskDiagram) -> list[Arc]:
    """Maximal internal paths whose interior vertices are interior valence-2."""
    x = d.complex
    bedges = d.boundary_edges()
    iedges = set(range(x.num_edges)) - bedges
    through = {v for v in d.interior_vertices() if d.valence(v) == 2}
    return _chains(x, iedges, through, "internal")


# ---------------------------------------------------------------------------
# good paths


def is_good_path(
    d: DiskDiagram, path_darts: Sequence[int], marked: set[int]
) -> bool:
    """True iff every interior vertex of the path is an interior vertex of
    the diagram or is unmarked.  Endpoints are exempt."""
    path_darts = tuple(path_darts)
    x = d.complex
    for i, dd in enumerate(path_darts):
        if i > 0 and x.dart_init(dd) != x.dart_term(path_darts[i - 1]):
            raise OrbicurvError("not a path in the diagram")
    interior = d.interior_vertices()
    for i in range(1, len(path_darts)):
        v = x.dart_init(path_darts[i])
        if v not in interior and v in marked:
            return False
    return True


# ---------------------------------------------------------------------------
# bounded van Kampen search


@dataclass(frozen=True)
class DiagramMap:
    """A disk diagram together with its map to the target complex."""

    diagram: DiskDiagram
    to_target: CellularMap


def _reduce_and_rotate(word: tuple[int, ...]) -> tuple[tuple[int, ...], list]:
    """Cyclically free-reduce, then rotate to the lexicographic minimum.

    Returns the canonical word and a trace of operations, each either
    ("cancel", position) on the current word or ("rotate", r).
    """
    w = list(word)
    trace = []
    changed = True
    while changed and w:
        changed = False
        n = len(w)
        for i in range(n):
            j = (i + 1) % n
            if w[j] == dart_reverse(w[i]) and n >= 2:
                trace.append(("cancel", i))
                if i < j:
                    del w[j], w[i]
                else:  # wrap pair (last, first)
                    del w[i], w[j]
                changed = True
                break
    if w:
        best_r = min(range(len(w)), key=lambda r: tuple(w[r:] + w[:r]))
        if best_r:
            trace.append(("rotate", best_r))
            w = w[best_r:] + w[:best_r]
    return tuple(w), trace


def _attach_result(
    word: tuple[int, ...], u: tuple[int, ...], pos: int, k: int
) -> tuple[int, ...]:
    """Hole word after gluing a face with aligned word ``u`` along
    ``word[pos:pos+k]`` (cyclic); the complement enters reversed."""
    n = len(word)
    seg = _invert_darts(u[k:])
    linear = word[pos:] + word[:pos]  # matched block first
    return tuple(seg) + linear[k:]


def _word_matches(word, u, pos, k) -> bool:
    n = len(word)
    for j in range(k):
        if word[(pos + j) % n] != u[j]:
            return False
    return True


class _Replay:
    """Rebuilds the explicit diagram from the recorded move sequence."""

    def __init__(self, x: TwoComplex, p_darts: tuple[int, ...]):
        self.x = x
        n = len(p_darts)
        self.vert_img: list[int] = []
        self.edge_img: list[int] = []  # image dart of the forward dart
        self.edge_ends: list[tuple[int, int]] = []
        self.faces: list[tuple[list[int], int, tuple[int, int]]] = []
        # identifications collected as (dart, dart) pairs to merge
        self.dart_unions: list[tuple[int, int]] = []
        self.vert_unions: list[tuple[int, int]] = []
        self.hole: list[int] = []
        self.outer: list[int] = []
        for i in range(n):
            self.vert_img.append(x.dart_init(p_darts[i]))
        for i in range(n):
            e = self._new_edge(i, (i + 1) % n, p_darts[i])
            self.hole.append(dart(e, 1))
            self.outer.append(dart(e, 1))

    def _new_vertex(self, ximg: int) -> int:
        self.vert_img.append(ximg)
        return len(self.vert_img) - 1

    def _new_edge(self, init: int, term: int, ximg_dart: int) -> int:
        self.edge_img.append(ximg_dart)
        self.edge_ends.append((init, term))
        return len(self.edge_img) - 1

    def dart_init(self, dd: int) -> int:
        u, v = self.edge_ends[dart_edge(dd)]
        return u if not dd & 1 else v

    def dart_term(self, dd: int) -> int:
        return self.dart_init(dart_reverse(dd))

    def image_dart(self, dd: int) -> int:
        img = self.edge_img[dart_edge(dd)]
        return img if not dd & 1 else dart_reverse(img)

    def apply_trace(self, trace):
        for op, arg in trace:
            if op == "cancel":
                i = arg
                j = (i + 1) % len(self.hole)
                d1, d2 = self.hole[i], self.hole[j]
                self.dart_unions.append((d2, dart_reverse(d1)))
                self.vert_unions.append((self.dart_term(d2), self.dart_init(d1)))
                for idx in sorted((i, j), reverse=True):
                    del self.hole[idx]
            else:  # rotate
                r = arg
                self.hole = self.hole[r:] + self.hole[:r]

    def apply_attach(self, face: int, t, pos: int, k: int):
        u = _word_darts(act(t, self.x.faces[face]))
        L = len(u)
        n = len(self.hole)
        matched = [self.hole[(pos + j) % n] for j in range(k)]
        # chain of new edges along u[k:], from the matched end back to start
        start_v = self.dart_init(matched[0])
        end_v = self.dart_term(matched[-1])
        chain_verts = [end_v]
        for j in range(k, L - 1):
            chain_verts.append(self._new_vertex(self.x.dart_term(u[j])))
        if k < L:
            chain_verts.append(start_v)
        new_darts = []
        for j in range(k, L):
            e = self._new_edge(chain_verts[j - k], chain_verts[j - k + 1], u[j])
            new_darts.append(dart(e, 1))
        word = [*matched, *new_darts]
        self.faces.append((word, face, t))
        linear = [self.hole[(pos + j) % n] for j in range(n)]
        self.hole = [dart_reverse(dd) for dd in reversed(new_darts)] + linear[k:]

    def build(self) -> tuple[TwoComplex, "CellularMap", list[int]]:
        """Quotient by the collected identifications; returns the diagram
        complex, the map to the target, and the outer boundary darts."""
        nv = len(self.vert_img)
        ne = len(self.edge_img)
        vparent = list(range(nv))
        dparent = list(range(2 * ne))

        def vfind(a):
            while vparent[a] != a:
                vparent[a] = vparent[vparent[a]]
                a = vparent[a]
            return a

        def dfind(a):
            while dparent[a] != a:
                dparent[a] = dparent[dparent[a]]
                a = dparent[a]
            return a

        def vunion(a, b):
            ra, rb = vfind(a), vfind(b)
            if ra != rb:
                vparent[max(ra, rb)] = min(ra, rb)

        def dunion(a, b):
            queue = [(a, b)]
            while queue:
                p, q = queue.pop()
                rp, rq = dfind(p), dfind(q)
                if rp == rq:
                    continue
                if self.image_dart(rp) != self.image_dart(rq):
                    raise OrbicurvError("replay identified darts of unequal image")
                dparent[max(rp, rq)] = min(rp, rq)
                queue.append((dart_reverse(p), dart_reverse(q)))
                vunion(self.dart_init(p), self.dart_init(q))
                vunion(self.dart_term(p), self.dart_term(q))

        for a, b in self.vert_unions:
            vunion(a, b)
        for a, b in self.dart_unions:
            dunion(a, b)
        for dd in range(2 * ne):
            if dfind(dd) == dfind(dart_reverse(dd)):
                raise OrbicurvError("replay folded an edge onto its reverse")
        # dense ids
        vids = {}
        for v in range(nv):
            r = vfind(v)
            if r not in vids:
                vids[r] = len(vids)
        # edges: one per dart-class pair
        eids = {}
        new_edges = []
        new_eimg = []
        dart_to_letter = {}
        for e in range(ne):
            fwd = dfind(dart(e, 1))
            bwd = dfind(dart(e, -1))
            key = (min(fwd, bwd), max(fwd, bwd))
            if key not in eids:
                eids[key] = len(new_edges)
                rep = key[0]
                init = vids[vfind(self.dart_init(rep))]
                term = vids[vfind(self.dart_term(rep))]
                new_edges.append((init, term))
                new_eimg.append(self.image_dart(rep))
            eid = eids[key]
            rep = min(dfind(dart(e, 1)), dfind(dart(e, -1)))
            for dd in (dart(e, 1), dart(e, -1)):
                dart_to_letter[dd] = (eid, 1 if dfind(dd) == rep else -1)
        new_faces = []
        fmaps = []
        for word, xface, t in self.faces:
            letters = tuple(dart_to_letter[dd] for dd in word)
            new_faces.append(letters)
            fmaps.append((xface, t[0], t[1]))
        complex_ = TwoComplex(len(vids), new_edges, new_faces)
        vmap = [0] * len(vids)
        for v in range(nv):
            vmap[vids[vfind(v)]] = self.vert_img[v]
        emap = []
        for img_dart in new_eimg:
            emap.append((dart_edge(img_dart), dart_sign(img_dart)))
        to_target = CellularMap(
            source=complex_,
            target=self.x,
            vertex_map=tuple(vmap),
            edge_map=tuple(emap),
            face_map=tuple(fmaps),
        )
        outer = [
            dart(dart_to_letter[dd][0], dart_to_letter[dd][1]) for dd in self.outer
        ]
        return complex_, to_target, outer


def _assemble_rotations(
    x: TwoComplex, boundary: Sequence[int]
) -> tuple[tuple[int, ...], ...]:
    """Rotation system from face corners plus the outer boundary walk.

    Every dart gap at a vertex is filled by exactly one corner relation or
    one boundary-walk relation; the relations must close into a single
    cycle per vertex.
    """
    succ = {}

    def put(a, b):
        if a in succ and succ[a] != b:
            raise InvalidDiagramError("conflicting rotation relations")
        succ[a] = b

    for word in x.faces:
        darts = _word_darts(word)
        n = len(darts)
        for i in range(n):
            put(dart_reverse(darts[i - 1]), darts[i])
    bd = list(boundary)
    for i in range(len(bd)):
        put(dart_reverse(bd[i - 1]), bd[i])
    rotations = []
    for v in range(x.num_vertices):
        darts_at = [dd for dd in range(2 * x.num_edges) if x.dart_init(dd) == v]
        if not darts_at:
            rotations.append(())
            continue
        cycle = [min(darts_at)]
        while True:
            nxt = succ.get(cycle[-1])
            if nxt is None:
                raise InvalidDiagramError(f"incomplete rotation at vertex {v}")
            if nxt == cycle[0]:
                break
            if nxt in cycle:
                raise InvalidDiagramError(f"tangled rotation at vertex {v}")
            cycle.append(nxt)
        if len(cycle) != len(darts_at):
            raise InvalidDiagramError(
                f"rotation at vertex {v} does not close into one cycle"
            )
        rotations.append(tuple(cycle))
    return tuple(rotations)


def find_disk_diagram(
    x: TwoComplex,
    word: Word,
    max_area: int,
    base_vertex: Optional[int] = None,
    max_states: int = 500_000,
) -> Optional[DiagramMap]:
    """Search for a minimal-area disk diagram filling a closed path.

    Breadth-first over hole words by area; deterministic canonical order.
    Returns ``None`` when no filling of area <= ``max_area`` was found
    (which is not a proof that none exists).
    """
    word = tuple(word)
    if word:
        for i in range(len(word)):
            if x.letter_end(word[i - 1]) != x.letter_start(word[i]):
                raise OrbicurvError("path is not closed")
    elif base_vertex is None:
        raise OrbicurvError("empty path needs a base vertex")
    p_darts = _word_darts(word)
    # attachment vocabulary: aligned face words, deduplicated
    vocab = []
    seen_u = set()
    for f in range(x.num_faces):
        for t in all_transforms(len(x.faces[f])):
            u = _word_darts(act(t, x.faces[f]))
            if (f, u) not in seen_u:
                seen_u.add((f, u))
                vocab.append((f, t, u))

    start, start_trace = _reduce_and_rotate(p_darts)
    parents: dict = {start: None}
    if start != ():
        frontier = [start]
        done = False
        states = 1
        for _area in range(max_area):
            next_frontier = []
            for cur in frontier:
                n = len(cur)
                for pos in range(n):
                    for f, t, u in vocab:
                        L = len(u)
                        kmax = min(L - 1, n)
                        ks = list(range(1, kmax + 1))
                        if L == n:
                            ks.append(L)
                        for k in ks:
                            if not _word_matches(cur, u, pos, k):
                                continue
                            raw = _attach_result(cur, u, pos, k)
                            nxt, trace = _reduce_and_rotate(raw)
                            if nxt in parents:
                                continue
                            states += 1
                            if states > max_states:
                                raise OrbicurvError(
                                    "diagram search exceeded the state budget"
                                )
                            parents[nxt] = (cur, (f, t, pos, k), trace)
                            if nxt == ():
                                done = True
                                break
                            next_frontier.append(nxt)
                        if done:
                            break
                    if done:
                        break
                if done:
                    break
            if done:
                break
            frontier = next_frontier
        if not done:
            return None
    # reconstruct move list
    moves = []
    cur = ()
    while parents[cur] is not None:
        prev, mv, trace = parents[cur]
        moves.append((mv, trace))
        cur = prev
    moves.reverse()

    if not p_darts:
        point = TwoComplex(1, [], [], [])
        to_target = CellularMap(
            source=point,
            target=x,
            vertex_map=(base_vertex,),
            edge_map=(),
            face_map=(),
        )
        return DiagramMap(
            diagram=DiskDiagram(point, ((),), ()), to_target=to_target
        )

    replay = _Replay(x, p_darts)
    replay.apply_trace(start_trace)
    for (f, t, pos, k), trace in moves:
        replay.apply_attach(f, t, pos, k)
        replay.apply_trace(trace)
    complex_, to_target, outer = replay.build()
    # faces are traversed in the hole-walk direction, so the outer face is
    # traced opposite to the original path direction
    rotations = _assemble_rotations(complex_, _invert_darts(outer))
    diagram = validate_diagram(complex_, rotations, tuple(outer))
    return DiagramMap(diagram=diagram, to_target=to_target)
