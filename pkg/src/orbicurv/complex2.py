"""Combinatorial 2-complexes with rational corner angles, links, and maps.

Conventions used throughout the package:

* cells carry dense integer ids; all enumeration orders sort by id;
* angles are exact rationals in pi-units (the value 1 means an angle of pi);
* an edge ``e`` from ``init`` to ``term`` has two darts, ``2e`` (forward)
  and ``2e + 1`` (backward), and two ends ``(e, 0)`` at ``init`` and
  ``(e, 1)`` at ``term``;
* the link of a vertex has one vertex per incident edge-end (a loop
  contributes two) and one edge per corner of a 2-cell at the vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .errors import InvalidComplexError, InvalidMapError
from .transforms import (
    Letter,
    Transform,
    Word,
    act,
    all_transforms,
    compose,
    corner_image,
    flip,
    letter_image,
)

# ---------------------------------------------------------------------------
# darts


def dart(edge: int, sign: int) -> int:
    return 2 * edge if sign > 0 else 2 * edge + 1


def dart_of_letter(letter: Letter) -> int:
    return dart(letter[0], letter[1])


def dart_edge(d: int) -> int:
    return d >> 1


def dart_sign(d: int) -> int:
    return -1 if d & 1 else 1


def dart_reverse(d: int) -> int:
    return d ^ 1


# ---------------------------------------------------------------------------
# angled graphs (links live here)


@dataclass(frozen=True)
class AngledGraph:
    """Finite multigraph with optional rational angles on edges.

    Loops are allowed and count twice toward valence.  ``vertex_labels`` and
    ``edge_labels`` record provenance when the graph is a link: the label of
    a link vertex is ``("end", edge, side)`` and the label of a link edge is
    ``("corner", face, position)``.
    """

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    angles: tuple[Optional[Fraction], ...] = ()
    vertex_labels: tuple = ()
    edge_labels: tuple = ()

    def __post_init__(self):
        if not self.angles:
            object.__setattr__(self, "angles", (None,) * len(self.edges))
        if len(self.angles) != len(self.edges):
            raise InvalidComplexError("angle count does not match edge count")
        for u, v in self.edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise InvalidComplexError("edge endpoint out of range")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def valences(self) -> list[int]:
        val = [0] * self.num_vertices
        for u, v in self.edges:
            val[u] += 1
            val[v] += 1
        return val

    def fully_angled(self) -> bool:
        return all(a is not None for a in self.angles)

    def incident_edges(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            if v != u:
                inc[v].append(i)
        return inc


def girth(graph: AngledGraph) -> Optional[int]:
    """Length of the shortest embedded cycle; ``None`` when there is none.

    A loop has girth 1 and a pair of parallel edges girth 2.
    """
    best: Optional[int] = None
    seen_pairs = set()
    for u, v in graph.edges:
        if u == v:
            return 1
        pair = (min(u, v), max(u, v))
        if pair in seen_pairs:
            best = 2
        seen_pairs.add(pair)
    if best is not None:
        return best
    # Simple-graph girth by BFS from every vertex.
    adj: list[set[int]] = [set() for _ in range(graph.num_vertices)]
    for u, v in seen_pairs:
        adj[u].add(v)
        adj[v].add(u)
    for root in range(graph.num_vertices):
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        while queue:
            nxt = []
            for x in queue:
                for y in adj[x]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        parent[y] = x
                        nxt.append(y)
                    elif parent[x] != y:
                        cand = dist[x] + dist[y] + 1
                        if best is None or cand < best:
                            best = cand
            queue = nxt
    return best


# ---------------------------------------------------------------------------
# 2-complexes


class TwoComplex:
    """Immutable combinatorial 2-complex.

    ``faces[f]`` is a closed attaching word; ``angles[f]``, when present, is
    its per-corner angle tuple (corner ``i`` sits at the start vertex of
    letter ``i``).  Loops and multi-edges are permitted; faceless and
    edgeless complexes are valid.
    """

    def __init__(
        self,
        num_vertices: int,
        edges: Sequence[tuple[int, int]],
        faces: Sequence[Word] = (),
        angles: Optional[Sequence[Optional[Sequence[Fraction]]]] = None,
    ):
        self.num_vertices = int(num_vertices)
        self.edges: tuple[tuple[int, int], ...] = tuple(
            (int(a), int(b)) for a, b in edges
        )
        self.faces: tuple[Word, ...] = tuple(
            tuple((int(e), int(s)) for e, s in word) for word in faces
        )
        if angles is None:
            self.angles: tuple[Optional[tuple[Fraction, ...]], ...] = (None,) * len(
                self.faces
            )
        else:
            self.angles = tuple(
                None if a is None else tuple(Fraction(x) for x in a) for a in angles
            )
        self._validate()

    # -- validation ---------------------------------------------------------

    def _validate(self):
        if self.num_vertices < 0:
            raise InvalidComplexError("negative vertex count")
        for e, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise InvalidComplexError(f"edge {e} has dangling endpoint")
        if len(self.angles) != len(self.faces):
            raise InvalidComplexError("per-face angle list does not match faces")
        for f, word in enumerate(self.faces):
            if not word:
                raise InvalidComplexError(f"face {f} has an empty attaching word")
            for e, s in word:
                if not 0 <= e < len(self.edges):
                    raise InvalidComplexError(f"face {f} references unknown edge {e}")
                if s not in (1, -1):
                    raise InvalidComplexError(f"face {f} has an invalid orientation")
            for i in range(len(word)):
                if self.letter_end(word[i - 1]) != self.letter_start(word[i]):
                    raise InvalidComplexError(f"attaching word of face {f} not closed")
            ang = self.angles[f]
            if ang is not None and len(ang) != len(word):
                raise InvalidComplexError(
                    f"face {f}: angle count mismatch "
                    f"({len(ang)} angles for a {len(word)}-letter word)"
                )

    # -- basic structure ----------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def letter_start(self, letter: Letter) -> int:
        e, s = letter
        return self.edges[e][0] if s > 0 else self.edges[e][1]

    def letter_end(self, letter: Letter) -> int:
        e, s = letter
        return self.edges[e][1] if s > 0 else self.edges[e][0]

    def dart_init(self, d: int) -> int:
        u, v = self.edges[dart_edge(d)]
        return u if not d & 1 else v

    def dart_term(self, d: int) -> int:
        return self.dart_init(dart_reverse(d))

    def end_vertex(self, edge: int, side: int) -> int:
        return self.edges[edge][side]

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces

    def fully_angled(self) -> bool:
        return all(a is not None for a in self.angles)

    def corner_angle(self, face: int, i: int) -> Fraction:
        ang = self.angles[face]
        if ang is None:
            raise InvalidComplexError(f"face {face} carries no angles")
        return ang[i]

    def corners(self) -> Iterator[tuple[int, int]]:
        for f, word in enumerate(self.faces):
            for i in range(len(word)):
                yield (f, i)

    def corners_at(self, v: int) -> list[tuple[int, int]]:
        """Corners located at ``v``: positions whose letter starts at ``v``."""
        out = []
        for f, word in enumerate(self.faces):
            for i, letter in enumerate(word):
                if self.letter_start(letter) == v:
                    out.append((f, i))
        return out

    def ends_at(self, v: int) -> list[tuple[int, int]]:
        """Edge-ends incident to ``v``; a loop contributes both its ends."""
        out = []
        for e, (a, b) in enumerate(self.edges):
            if a == v:
                out.append((e, 0))
            if b == v:
                out.append((e, 1))
        return out

    def corner_ends(self, face: int, i: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """The (arriving, leaving) edge-ends joined by corner ``i`` of ``face``.

        The arriving end belongs to letter ``i-1`` and the leaving end to
        letter ``i``.
        """
        word = self.faces[face]
        prev = word[i - 1]
        cur = word[i]
        e_p, s_p = prev
        arrive = (e_p, 1) if s_p > 0 else (e_p, 0)
        e_c, s_c = cur
        leave = (e_c, 0) if s_c > 0 else (e_c, 1)
        return arrive, leave

    def is_connected(self) -> bool:
        if self.num_vertices <= 1:
            return True
        adj: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.num_vertices

    # -- equality and hashing -----------------------------------------------

    def _key(self):
        return (self.num_vertices, self.edges, self.faces, self.angles)

    def __eq__(self, other):
        return isinstance(other, TwoComplex) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (
            f"TwoComplex(V={self.num_vertices}, E={self.num_edges}, "
            f"F={self.num_faces})"
        )


# ---------------------------------------------------------------------------
# links


def link(x: TwoComplex, v: int) -> AngledGraph:
    """The link of ``v``: directions at ``v`` with one edge per corner."""
    if not 0 <= v < x.num_vertices:
        raise InvalidComplexError(f"unknown vertex id {v}")
    ends = sorted(x.ends_at(v))
    index = {end: i for i, end in enumerate(ends)}
    edges = []
    angles = []
    labels = []
    for f, i in sorted(x.corners_at(v)):
        arrive, leave = x.corner_ends(f, i)
        edges.append((index[arrive], index[leave]))
        ang = x.angles[f]
        angles.append(None if ang is None else ang[i])
        labels.append(("corner", f, i))
    return AngledGraph(
        num_vertices=len(ends),
        edges=tuple(edges),
        angles=tuple(angles),
        vertex_labels=tuple(("end",) + e for e in ends),
        edge_labels=tuple(labels),
    )


def is_internal_vertex(x: TwoComplex, v: int) -> bool:
    """True when the link of ``v`` contains an embedded cycle."""
    return girth(link(x, v)) is not None


# ---------------------------------------------------------------------------
# (p, q, r) classification


@dataclass(frozen=True)
class PqrReport:
    """Boundary-length/girth/multiplicity profile of a complex.

    ``None`` encodes an infinite value for ``p`` and ``q``.  The corollary
    case records which of the three hyperbolicity triples applies, checking
    the strongest girth requirement first so the reported case matches the
    sharpest applicable criterion.
    """

    p: Optional[int]
    q: Optional[int]
    r: int
    max_boundary: Optional[int]
    corollary_case: Optional[int]


def _at_least(value: Optional[int], bound: int) -> bool:
    return value is None or value >= bound


def classify_pqr(x: TwoComplex) -> PqrReport:
    if x.num_faces == 0:
        p = max_b = None
    else:
        lengths = [len(w) for w in x.faces]
        p, max_b = min(lengths), max(lengths)
    girths = [girth(link(x, v)) for v in range(x.num_vertices)]
    finite = [g for g in girths if g is not None]
    q = min(finite) if len(finite) == len(girths) and girths else None
    if any(g is None for g in girths) or not girths:
        q = None
    occurrences = [0] * x.num_edges
    for word in x.faces:
        for e, _ in word:
            occurrences[e] += 1
    r = max(occurrences, default=0)
    case = None
    if x.num_faces > 0:
        # Order (3, 2, 1): strongest girth bound wins when several apply.
        if _at_least(p, 4) and _at_least(q, 5) and (p is None or r <= p - 1):
            case = 3
        elif _at_least(p, 5) and _at_least(q, 4) and (p is None or r <= p - 2):
            case = 2
        elif _at_least(p, 7) and _at_least(q, 3) and (p is None or r <= p - 3):
            case = 1
    return PqrReport(p=p, q=q, r=r, max_boundary=max_b, corollary_case=case)


# ---------------------------------------------------------------------------
# cellular maps


@dataclass(frozen=True)
class CellularMap:
    """Combinatorial map of 2-complexes.

    ``edge_map[e] = (e', sign)`` sends edge ``e`` onto ``e'``, reversing it
    when ``sign`` is ``-1``; ``face_map[f] = (f', rot, refl)`` aligns the
    image of the attaching word of ``f`` with the word of ``f'`` via the
    transform ``(rot, refl)`` (see :mod:`orbicurv.transforms`).
    """

    source: TwoComplex
    target: TwoComplex
    vertex_map: tuple[int, ...]
    edge_map: tuple[tuple[int, int], ...]
    face_map: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        self._validate()

    def _validate(self):
        src, tgt = self.source, self.target
        if len(self.vertex_map) != src.num_vertices:
            raise InvalidMapError("vertex assignment has wrong length")
        if len(self.edge_map) != src.num_edges:
            raise InvalidMapError("edge assignment has wrong length")
        if len(self.face_map) != src.num_faces:
            raise InvalidMapError("face assignment has wrong length")
        for v in self.vertex_map:
            if not 0 <= v < tgt.num_vertices:
                raise InvalidMapError("vertex image out of range")
        for e, (img, sign) in enumerate(self.edge_map):
            if not 0 <= img < tgt.num_edges or sign not in (1, -1):
                raise InvalidMapError("edge image out of range")
            u, v = src.edges[e]
            iu, iv = tgt.edges[img]
            if sign < 0:
                iu, iv = iv, iu
            if (self.vertex_map[u], self.vertex_map[v]) != (iu, iv):
                raise InvalidMapError(f"edge {e}: endpoints incompatible with image")
        for f, (img, rot, refl) in enumerate(self.face_map):
            if not 0 <= img < tgt.num_faces or refl not in (0, 1):
                raise InvalidMapError("face image out of range")
            word = self.apply_word(src.faces[f])
            expected = act((rot % len(tgt.faces[img]), refl), tgt.faces[img])
            if word != expected:
                raise InvalidMapError(
                    f"face {f}: image word does not match face {img} "
                    f"under rotation {rot}, reflection {refl}"
                )

    # -- application --------------------------------------------------------

    def apply_letter(self, letter: Letter) -> Letter:
        img, sign = self.edge_map[letter[0]]
        return (img, sign * letter[1])

    def apply_word(self, word: Word) -> Word:
        return tuple(self.apply_letter(x) for x in word)

    def apply_dart(self, d: int) -> int:
        img, sign = self.edge_map[dart_edge(d)]
        return dart(img, sign * dart_sign(d))

    def apply_end(self, end: tuple[int, int]) -> tuple[int, int]:
        e, side = end
        img, sign = self.edge_map[e]
        return (img, side if sign > 0 else 1 - side)

    def apply_corner(self, face: int, i: int) -> tuple[int, int, int]:
        """Image corner of corner ``i`` of ``face`` plus an end-swap flag."""
        img, rot, refl = self.face_map[face]
        length = len(self.source.faces[face])
        return (img, corner_image((rot, refl), i, length), refl)

    def face_transform(self, face: int) -> Transform:
        _, rot, refl = self.face_map[face]
        return (rot, refl)

    def is_identity(self) -> bool:
        return (
            self.source == self.target
            and self.vertex_map == tuple(range(self.source.num_vertices))
            and self.edge_map == tuple((e, 1) for e in range(self.source.num_edges))
            and all(
                fm[0] == f and fm[1] % len(self.source.faces[f]) == 0 and fm[2] == 0
                for f, fm in enumerate(self.face_map)
            )
        )

    def is_bijective(self) -> bool:
        return (
            self.source.num_vertices == self.target.num_vertices
            and self.source.num_edges == self.target.num_edges
            and self.source.num_faces == self.target.num_faces
            and len(set(self.vertex_map)) == self.source.num_vertices
            and len(set(e for e, _ in self.edge_map)) == self.source.num_edges
            and len(set(f for f, _, _ in self.face_map)) == self.source.num_faces
        )


def identity_map(x: TwoComplex) -> CellularMap:
    return CellularMap(
        source=x,
        target=x,
        vertex_map=tuple(range(x.num_vertices)),
        edge_map=tuple((e, 1) for e in range(x.num_edges)),
        face_map=tuple((f, 0, 0) for f in range(x.num_faces)),
    )


def compose_maps(outer: CellularMap, inner: CellularMap) -> CellularMap:
    """The composition ``outer . inner``."""
    if inner.target is not outer.source and inner.target != outer.source:
        raise InvalidMapError("composition: target/source mismatch")
    vmap = tuple(outer.vertex_map[v] for v in inner.vertex_map)
    emap = tuple(
        (outer.edge_map[e][0], outer.edge_map[e][1] * s) for e, s in inner.edge_map
    )
    fmap = []
    for f, (g, r1, p1) in enumerate(inner.face_map):
        h, r2, p2 = outer.face_map[g]
        length = len(outer.target.faces[h])
        rot, refl = compose((r1, p1), (r2, p2), length)
        fmap.append((h, rot, refl))
    return CellularMap(
        source=inner.source,
        target=outer.target,
        vertex_map=vmap,
        edge_map=emap,
        face_map=tuple(fmap),
    )


def maps_equal(a: CellularMap, b: CellularMap) -> bool:
    if a.source != b.source or a.target != b.target:
        return False
    if a.vertex_map != b.vertex_map or a.edge_map != b.edge_map:
        return False
    for f in range(a.source.num_faces):
        fa, ra, pa = a.face_map[f]
        fb, rb, pb = b.face_map[f]
        length = len(a.target.faces[fa]) if fa < a.target.num_faces else 1
        if fa != fb or pa != pb or (ra - rb) % max(length, 1) != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# immersions and near-immersions


def is_immersion(m: CellularMap) -> tuple[bool, Optional[tuple]]:
    """Check that induced link maps are embeddings.

    Returns ``(True, None)`` or ``(False, witness)`` where the witness is
    ``(vertex, cell_a, cell_b)`` naming two link cells with equal image.
    """
    src = m.source
    for v in range(src.num_vertices):
        seen_ends: dict[tuple[int, int], tuple[int, int]] = {}
        for end in src.ends_at(v):
            img = m.apply_end(end)
            if img in seen_ends:
                return False, (v, ("end",) + seen_ends[img], ("end",) + end)
            seen_ends[img] = end
        seen_corners: dict[tuple[int, int], tuple[int, int]] = {}
        for f, i in src.corners_at(v):
            g, j, _ = m.apply_corner(f, i)
            if (g, j) in seen_corners:
                return False, (
                    v,
                    ("corner",) + seen_corners[(g, j)],
                    ("corner", f, i),
                )
            seen_corners[(g, j)] = (f, i)
    return True, None


def validate_complex(data: dict) -> TwoComplex:
    """Build a :class:`TwoComplex` from a plain description dict.

    Expected keys: ``vertices`` (count), ``edges`` (list of ``[init, term]``
    pairs) and ``faces`` (list of ``{"word": [[edge, sign], ...],
    "angles": ["p/q", ...] | null}``).  Raises
    :class:`~orbicurv.errors.InvalidComplexError` with a diagnostic on any
    structural defect.
    """
    from .rationals import parse_rational

    if not isinstance(data, dict):
        raise InvalidComplexError("complex description must be an object")
    try:
        num_vertices = int(data["vertices"])
        edges = [(int(u), int(v)) for u, v in data.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidComplexError(f"malformed complex description: {exc}") from None
    faces = []
    angles = []
    for f, entry in enumerate(data.get("faces", [])):
        try:
            word = tuple((int(e), int(s)) for e, s in entry["word"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidComplexError(f"face {f}: malformed word: {exc}") from None
        faces.append(word)
        raw = entry.get("angles")
        angles.append(None if raw is None else tuple(parse_rational(a) for a in raw))
    return TwoComplex(num_vertices, edges, faces, angles)


def is_near_immersion(m: CellularMap) -> tuple[bool, Optional[tuple]]:
    """Check that induced link maps are graph immersions.

    Locally injective at each link vertex: the corner-ends incident to one
    edge-end of the source must have pairwise distinct images.
    """
    src = m.source
    for v in range(src.num_vertices):
        # corner-end slots at each link vertex (edge-end) of v
        incident: dict[tuple[int, int], list[tuple[tuple[int, int], int]]] = {}
        for f, i in src.corners_at(v):
            arrive, leave = src.corner_ends(f, i)
            incident.setdefault(arrive, []).append(((f, i), 0))
            incident.setdefault(leave, []).append(((f, i), 1))
        for end, slots in incident.items():
            seen: dict[tuple[int, int, int], tuple] = {}
            for (f, i), which in slots:
                g, j, refl = m.apply_corner(f, i)
                img_slot = (g, j, which ^ refl)
                if img_slot in seen:
                    return False, (v, ("corner",) + seen[img_slot], ("corner", f, i))
                seen[img_slot] = (f, i)
    return True, None
