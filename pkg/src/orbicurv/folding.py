"""Equivariant folding, pushouts, essential paths, and cocompact cores.

Folding repeatedly identifies cells that witness a failure of local
injectivity (two darts at a vertex with the same image dart, or two corners
at a vertex with the same image corner) until the induced map is an
immersion; the quotient is assembled by a union-find over vertices, darts
(paired with their reverses), and faces (decorated with word alignments).
Pushouts reuse the same machinery on a disjoint union.

The cocompact-core loop alternates a bounded search for an essential path
with the collapse step: fill the path's image by a disk diagram, attach one
copy per group element by a pushout, and fold the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .complex2 import (
    CellularMap,
    TwoComplex,
    compose_maps,
    dart,
    dart_edge,
    dart_of_letter,
    dart_reverse,
    dart_sign,
    identity_map,
    is_immersion,
    link,
    maps_equal,
)
from .diagrams import DiagramMap, find_disk_diagram
from .errors import FoldError, InvalidActionError, InvalidMapError, OrbicurvError
from .exactla import RowSpace
from .groups import GroupAction, map_key
from .orbihedron import euler_characteristic, orbihedron_from_action, vertex_curvature
from .sections import BoundsReport, negative_orbit_bound
from .transforms import Transform, compose, corner_image, inverse, letter_image

F = Fraction


# ---------------------------------------------------------------------------
# quotient machinery


class QuotientBuilder:
    """Union-find over the cells of a complex, with orientation tracking.

    Dart classes stay paired with their reverses; face classes carry the
    word alignment of each member to its class root.  ``build`` produces
    the quotient complex and the quotient map.
    """

    def __init__(self, w: TwoComplex):
        self.w = w
        self.vparent = list(range(w.num_vertices))
        self.dparent = list(range(2 * w.num_edges))
        self.fparent = list(range(w.num_faces))
        self.ftrans: list[Transform] = [(0, 0)] * w.num_faces

    # -- find ---------------------------------------------------------------

    def vfind(self, a: int) -> int:
        while self.vparent[a] != a:
            self.vparent[a] = self.vparent[self.vparent[a]]
            a = self.vparent[a]
        return a

    def dfind(self, d: int) -> int:
        while self.dparent[d] != d:
            self.dparent[d] = self.dparent[self.dparent[d]]
            d = self.dparent[d]
        return d

    def ffind(self, f: int) -> tuple[int, Transform]:
        if self.fparent[f] == f:
            return f, (0, 0)
        root, t = self.ffind(self.fparent[f])
        length = len(self.w.faces[f])
        total = compose(self.ftrans[f], t, length)
        self.fparent[f] = root
        self.ftrans[f] = total
        return root, total

    # -- union ---------------------------------------------------------------

    def unite_vertices(self, a: int, b: int) -> bool:
        ra, rb = self.vfind(a), self.vfind(b)
        if ra == rb:
            return False
        self.vparent[max(ra, rb)] = min(ra, rb)
        return True

    def unite_darts(self, d1: int, d2: int) -> bool:
        changed = False
        queue = [(d1, d2)]
        while queue:
            p, q = queue.pop()
            rp, rq = self.dfind(p), self.dfind(q)
            if rp == rq:
                continue
            self.dparent[max(rp, rq)] = min(rp, rq)
            changed = True
            self.unite_vertices(self.w.dart_init(p), self.w.dart_init(q))
            self.unite_vertices(self.w.dart_term(p), self.w.dart_term(q))
            queue.append((dart_reverse(p), dart_reverse(q)))
        if changed and self.dfind(d1) == self.dfind(dart_reverse(d1)):
            raise FoldError("fold would identify an edge with its reverse")
        return changed

    def unite_faces(self, f1: int, f2: int, tau: Transform) -> bool:
        """Identify faces so letter i of f1 matches letter_image(tau, i) of f2."""
        w1 = self.w.faces[f1]
        w2 = self.w.faces[f2]
        if len(w1) != len(w2):
            raise FoldError("cannot identify faces of different lengths")
        length = len(w1)
        changed = False
        for i in range(length):
            j, s = letter_image(tau, i, length)
            da = dart_of_letter(w1[i])
            db = dart_of_letter(w2[j])
            if s < 0:
                db = dart_reverse(db)
            changed |= self.unite_darts(da, db)
        r1, t1 = self.ffind(f1)
        r2, t2 = self.ffind(f2)
        total = compose(compose(inverse(t1, length), tau, length), t2, length)
        if r1 == r2:
            if total[1] != 0 or total[0] % length != 0:
                raise FoldError("fold would wrap a face onto itself")
            return changed
        self.fparent[max(r1, r2)] = min(r1, r2)
        if r1 < r2:
            self.ftrans[r2] = inverse(total, length)
        else:
            self.ftrans[r1] = total
        return True

    # -- build ----------------------------------------------------------------

    def build(self) -> tuple[TwoComplex, CellularMap]:
        w = self.w
        vids = {}
        for v in range(w.num_vertices):
            r = self.vfind(v)
            if r not in vids:
                vids[r] = len(vids)
        eids = {}
        new_edges = []
        dart_letter = {}
        for e in range(w.num_edges):
            fwd, bwd = self.dfind(dart(e, 1)), self.dfind(dart(e, -1))
            key = (min(fwd, bwd), max(fwd, bwd))
            if key not in eids:
                eids[key] = len(new_edges)
                rep = key[0]
                new_edges.append(
                    (
                        vids[self.vfind(w.dart_init(rep))],
                        vids[self.vfind(w.dart_term(rep))],
                    )
                )
            eid = eids[key]
            rep = key[0] if False else min(fwd, bwd)
            for dd in (dart(e, 1), dart(e, -1)):
                dart_letter[dd] = (eid, 1 if self.dfind(dd) == rep else -1)
        froots = []
        fids = {}
        new_faces = []
        for f in range(w.num_faces):
            r, _ = self.ffind(f)
            if r not in fids:
                fids[r] = len(new_faces)
                froots.append(r)
                new_faces.append(
                    tuple(dart_letter[dart_of_letter(x)] for x in w.faces[r])
                )
        z = TwoComplex(len(vids), new_edges, new_faces)
        fmap = []
        for f in range(w.num_faces):
            r, t = self.ffind(f)
            fmap.append((fids[r], t[0], t[1]))
        q = CellularMap(
            source=w,
            target=z,
            vertex_map=tuple(vids[self.vfind(v)] for v in range(w.num_vertices)),
            edge_map=tuple(dart_letter[dart(e, 1)] for e in range(w.num_edges)),
            face_map=tuple(fmap),
        )
        return z, q


# ---------------------------------------------------------------------------
# folding


@dataclass(frozen=True)
class FoldResult:
    z: TwoComplex
    q: CellularMap  # W -> Z, surjective
    i: CellularMap  # Z -> X, an immersion
    action: Optional[GroupAction] = None


def _descend_action(
    q: CellularMap, generators: Sequence[CellularMap]
) -> list[CellularMap]:
    """Push automorphism generators through a surjective quotient map."""
    w = q.source
    z = q.target
    out = []
    for g in generators:
        vmap = [None] * z.num_vertices
        for v in range(w.num_vertices):
            zv = q.vertex_map[v]
            img = q.vertex_map[g.vertex_map[v]]
            if vmap[zv] is None:
                vmap[zv] = img
            elif vmap[zv] != img:
                raise FoldError("action does not descend to the quotient (vertices)")
        emap = [None] * z.num_edges
        for e in range(w.num_edges):
            ze, zs = q.edge_map[e]
            ge, gs = g.edge_map[e]
            img_e, img_s = q.edge_map[ge]
            cand = (img_e, img_s * gs * zs)
            if emap[ze] is None:
                emap[ze] = cand
            elif emap[ze] != cand:
                raise FoldError("action does not descend to the quotient (edges)")
        fmap = [None] * z.num_faces
        for f in range(w.num_faces):
            zf, zr, zp = q.face_map[f]
            length = len(w.faces[f])
            gf, gr, gp = g.face_map[f]
            qf, qr, qp = q.face_map[gf]
            # z-face zf's word aligns with f via (zr, zp); transport through g
            t_zf_f = inverse((zr, zp), length)
            t_total = compose(
                compose(t_zf_f, (gr, gp), length), (qr, qp), length
            )
            cand = (qf, t_total[0], t_total[1])
            if fmap[zf] is None:
                fmap[zf] = cand
            else:
                pf, pr, pp = fmap[zf]
                if pf != qf or pp != t_total[1] or (pr - t_total[0]) % length != 0:
                    raise FoldError(
                        "action does not descend to the quotient (faces)"
                    )
        if any(v is None for v in vmap) or any(e is None for e in emap) or any(
            f is None for f in fmap
        ):
            raise FoldError("quotient map is not surjective")
        out.append(
            CellularMap(
                source=z,
                target=z,
                vertex_map=tuple(vmap),
                edge_map=tuple(emap),
                face_map=tuple(fmap),
            )
        )
    return out


def fold(
    m: CellularMap,
    source_generators: Sequence[CellularMap] = (),
    cap: int = 10_000,
) -> FoldResult:
    """Factor ``m`` as a surjection followed by an immersion.

    Iteratively identifies darts at a common vertex with equal image darts
    and corners at a common vertex with equal image corners; terminates on
    finite complexes.  When ``source_generators`` are supplied (commuting
    with ``m``), the folded complex carries the induced action.
    """
    w = m.source
    qb = QuotientBuilder(w)
    changed = True
    while changed:
        changed = False
        # dart folds: group darts by (vertex class of init, image dart)
        groups: dict = {}
        for dd in range(2 * w.num_edges):
            key = (qb.vfind(w.dart_init(dd)), m.apply_dart(dd))
            prev = groups.get(key)
            if prev is None:
                groups[key] = dd
            elif qb.dfind(prev) != qb.dfind(dd):
                qb.unite_darts(prev, dd)
                changed = True
        if changed:
            continue
        # corner folds: group corners by (vertex class, image corner)
        cgroups: dict = {}
        for f in range(w.num_faces):
            word = w.faces[f]
            for i in range(len(word)):
                v = qb.vfind(w.letter_start(word[i]))
                g, j, _ = m.apply_corner(f, i)
                key = (v, g, j)
                prev = cgroups.get(key)
                if prev is None:
                    cgroups[key] = (f, i)
                    continue
                f1, _ = prev
                r1, _t = qb.ffind(f1)
                r2, _t2 = qb.ffind(f)
                if r1 != r2:
                    t1 = m.face_transform(f1)
                    t2 = m.face_transform(f)
                    length = len(w.faces[f1])
                    tau = compose(t1, inverse(t2, length), length)
                    qb.unite_faces(f1, f, tau)
                    changed = True
    z, q = qb.build()
    # the induced map z -> x
    i_vmap = [None] * z.num_vertices
    for v in range(w.num_vertices):
        i_vmap[q.vertex_map[v]] = m.vertex_map[v]
    i_emap = [None] * z.num_edges
    for e in range(w.num_edges):
        ze, zs = q.edge_map[e]
        me, ms = m.edge_map[e]
        i_emap[ze] = (me, ms * zs)
    i_fmap = [None] * z.num_faces
    for f in range(w.num_faces):
        zf, zr, zp = q.face_map[f]
        if i_fmap[zf] is not None:
            continue
        length = len(w.faces[f])
        t_zf_f = inverse((zr, zp), length)
        mf, mr, mp = m.face_map[f]
        t = compose(t_zf_f, (mr, mp), length)
        i_fmap[zf] = (mf, t[0], t[1])
    i = CellularMap(
        source=z,
        target=m.target,
        vertex_map=tuple(i_vmap),
        edge_map=tuple(i_emap),
        face_map=tuple(i_fmap),
    )
    ok, witness = is_immersion(i)
    if not ok:
        raise FoldError(f"fold did not produce an immersion: {witness}")
    if not maps_equal(compose_maps(i, q), m):
        raise FoldError("fold factorization does not compose to the input")
    action = None
    if source_generators:
        gens = _descend_action(q, list(source_generators))
        action = GroupAction(z, gens, cap=cap)
    return FoldResult(z=z, q=q, i=i, action=action)


# ---------------------------------------------------------------------------
# disjoint unions and pushouts


def disjoint_union(parts: Sequence[TwoComplex]) -> tuple[TwoComplex, list[CellularMap]]:
    nv = ne = nf = 0
    edges = []
    faces = []
    angles = []
    offsets = []
    for p in parts:
        offsets.append((nv, ne, nf))
        edges.extend((u + nv, v + nv) for u, v in p.edges)
        for word in p.faces:
            faces.append(tuple((e + ne, s) for e, s in word))
        angles.extend(p.angles)
        nv += p.num_vertices
        ne += p.num_edges
        nf += p.num_faces
    total = TwoComplex(nv, edges, faces, angles)
    inclusions = []
    for p, (ov, oe, of) in zip(parts, offsets):
        inclusions.append(
            CellularMap(
                source=p,
                target=total,
                vertex_map=tuple(range(ov, ov + p.num_vertices)),
                edge_map=tuple((oe + e, 1) for e in range(p.num_edges)),
                face_map=tuple((of + f, 0, 0) for f in range(p.num_faces)),
            )
        )
    return total, inclusions


@dataclass(frozen=True)
class PushoutResult:
    z: TwoComplex
    into_a: CellularMap  # A -> Z
    into_b: CellularMap  # B -> Z
    quotient: CellularMap  # (A | B) -> Z
    union: TwoComplex
    action: Optional[GroupAction] = None


def pushout(
    phi: CellularMap,
    psi: CellularMap,
    generators_c: Sequence[CellularMap] = (),
    generators_a: Sequence[CellularMap] = (),
    generators_b: Sequence[CellularMap] = (),
    cap: int = 10_000,
) -> PushoutResult:
    """Universal gluing of ``phi: C -> A`` and ``psi: C -> B``.

    Equivariant when generator lists are supplied (indexed consistently:
    the k-th generators of C, A, B must commute with phi and psi).
    """
    if phi.source != psi.source:
        raise InvalidMapError("pushout legs must share their source")
    c = phi.source
    a, b = phi.target, psi.target
    for g_c, g_a in zip(generators_c, generators_a):
        if not maps_equal(compose_maps(phi, g_c), compose_maps(g_a, phi)):
            raise InvalidActionError("phi is not equivariant")
    for g_c, g_b in zip(generators_c, generators_b):
        if not maps_equal(compose_maps(psi, g_c), compose_maps(g_b, psi)):
            raise InvalidActionError("psi is not equivariant")
    union, (incl_a, incl_b) = disjoint_union([a, b])
    qb = QuotientBuilder(union)
    for v in range(c.num_vertices):
        qb.unite_vertices(
            incl_a.vertex_map[phi.vertex_map[v]],
            incl_b.vertex_map[psi.vertex_map[v]],
        )
    for e in range(c.num_edges):
        da = incl_a.apply_dart(phi.apply_dart(dart(e, 1)))
        db = incl_b.apply_dart(psi.apply_dart(dart(e, 1)))
        qb.unite_darts(da, db)
    for f in range(c.num_faces):
        fa, ra, pa = phi.face_map[f]
        fb, rb, pb = psi.face_map[f]
        length = len(a.faces[fa])
        tau = compose(inverse((ra, pa), length), (rb, pb), length)
        qb.unite_faces(
            incl_a.face_map[fa][0], incl_b.face_map[fb][0], tau
        )
    z, q = qb.build()
    into_a = compose_maps(q, incl_a)
    into_b = compose_maps(q, incl_b)
    if not maps_equal(compose_maps(into_a, phi), compose_maps(into_b, psi)):
        raise FoldError("pushout square does not commute")
    action = None
    if generators_a or generators_b:
        union_gens = []
        for g_a, g_b in zip(generators_a, generators_b):
            vmap = tuple(
                list(g_a.vertex_map)
                + [a.num_vertices + v for v in g_b.vertex_map]
            )
            emap = tuple(
                list(g_a.edge_map)
                + [(a.num_edges + e, s) for e, s in g_b.edge_map]
            )
            fmap = tuple(
                list(g_a.face_map)
                + [(a.num_faces + f, r, p) for f, r, p in g_b.face_map]
            )
            union_gens.append(
                CellularMap(
                    source=union,
                    target=union,
                    vertex_map=vmap,
                    edge_map=emap,
                    face_map=fmap,
                )
            )
        gens = _descend_action(q, union_gens)
        action = GroupAction(z, gens, cap=cap)
    return PushoutResult(
        z=z, into_a=into_a, into_b=into_b, quotient=q, union=union, action=action
    )


def pushout_mediator(
    po: PushoutResult, alpha: CellularMap, beta: CellularMap
) -> CellularMap:
    """The unique map out of the pushout induced by a commuting cocone."""
    a_cells = alpha.source
    union, z = po.union, po.z
    vmap = [None] * z.num_vertices
    emap = [None] * z.num_edges
    fmap = [None] * z.num_faces
    na_v, na_e, na_f = a_cells.num_vertices, a_cells.num_edges, a_cells.num_faces

    def source_data(kind, idx):
        if kind == "v":
            return alpha.vertex_map[idx] if idx < na_v else beta.vertex_map[idx - na_v]
        if kind == "e":
            return alpha.edge_map[idx] if idx < na_e else beta.edge_map[idx - na_e]
        return alpha.face_map[idx] if idx < na_f else beta.face_map[idx - na_f]

    for v in range(union.num_vertices):
        zv = po.quotient.vertex_map[v]
        img = source_data("v", v)
        if vmap[zv] is None:
            vmap[zv] = img
        elif vmap[zv] != img:
            raise FoldError("cocone does not commute (vertices)")
    for e in range(union.num_edges):
        ze, zs = po.quotient.edge_map[e]
        me, ms = source_data("e", e)
        cand = (me, ms * zs)
        if emap[ze] is None:
            emap[ze] = cand
        elif emap[ze] != cand:
            raise FoldError("cocone does not commute (edges)")
    for f in range(union.num_faces):
        zf, zr, zp = po.quotient.face_map[f]
        length = len(union.faces[f])
        mf, mr, mp = source_data("f", f)
        t = compose(inverse((zr, zp), length), (mr, mp), length)
        cand = (mf, t[0], t[1])
        if fmap[zf] is None:
            fmap[zf] = cand
        else:
            pf, pr, pp = fmap[zf]
            if pf != mf or pp != t[1] or (pr - t[0]) % length != 0:
                raise FoldError("cocone does not commute (faces)")
    return CellularMap(
        source=z,
        target=alpha.target,
        vertex_map=tuple(vmap),
        edge_map=tuple(emap),
        face_map=tuple(fmap),
    )


# ---------------------------------------------------------------------------
# rational homology helpers


def _fundamental_cycle_words(x: TwoComplex) -> list[tuple[int, tuple]]:
    """Closed words generating the cycle space, from a spanning forest.

    One word per non-forest edge: the edge followed by the forest path back
    to its start (through the component root; backtracks are harmless).
    """
    parent = {}
    parent_dart = {}
    for root in range(x.num_vertices):
        if root in parent:
            continue
        parent[root] = root
        parent_dart[root] = None
        stack = [root]
        while stack:
            v = stack.pop()
            for dd in range(2 * x.num_edges):
                if x.dart_init(dd) == v:
                    u = x.dart_term(dd)
                    if u not in parent:
                        parent[u] = v
                        parent_dart[u] = dd
                        stack.append(u)
    tree_edges = {
        dart_edge(dd) for dd in parent_dart.values() if dd is not None
    }

    def up_letters(v) -> list:
        # letters walking from v up to its component root
        out = []
        while parent[v] != v:
            dd = parent_dart[v]  # parent -> v
            rev = dart_reverse(dd)
            out.append((dart_edge(rev), dart_sign(rev)))
            v = parent[v]
        return out

    words = []
    for e in range(x.num_edges):
        if e in tree_edges:
            continue
        u, v = x.edges[e]
        down = [(de, -ds) for de, ds in reversed(up_letters(u))]
        letters = tuple([(e, 1)] + up_letters(v) + down)
        words.append((u, letters))
    return words


def _word_vector(x: TwoComplex, letters) -> list[Fraction]:
    vec = [F(0)] * x.num_edges
    for e, s in letters:
        vec[e] += s
    return vec


def _fundamental_cycles(x: TwoComplex) -> list[list[Fraction]]:
    return [_word_vector(x, letters) for _, letters in _fundamental_cycle_words(x)]


def _boundary_rows(x: TwoComplex) -> list[list[Fraction]]:
    rows = []
    for word in x.faces:
        vec = [F(0)] * x.num_edges
        for e, s in word:
            vec[e] += s
        rows.append(vec)
    return rows


def h1_dimension(x: TwoComplex) -> int:
    """dim H_1(X; Q) = dim(cycle space) - rank(boundary map)."""
    cycles = RowSpace(x.num_edges)
    for vec in _fundamental_cycles(x):
        cycles.add(vec)
    boundaries = RowSpace(x.num_edges)
    for vec in _boundary_rows(x):
        boundaries.add(vec)
    return cycles.rank - boundaries.rank


def h1_class_is_nontrivial(x: TwoComplex, word) -> bool:
    """Whether a closed edge word has nonzero class in H_1(X; Q)."""
    vec = [F(0)] * x.num_edges
    for e, s in word:
        vec[e] += s
    boundaries = RowSpace(x.num_edges)
    for row in _boundary_rows(x):
        boundaries.add(row)
    return not boundaries.contains(vec)


def h1_map_is_surjective(m: CellularMap) -> bool:
    """Whether the induced map H_1(source; Q) -> H_1(target; Q) is onto."""
    z = m.target
    image = RowSpace(z.num_edges)
    for row in _boundary_rows(z):
        image.add(row)
    for vec in _fundamental_cycles(m.source):
        pushed = [F(0)] * z.num_edges
        for e, coef in enumerate(vec):
            if coef:
                img, s = m.edge_map[e]
                pushed[img] += coef * s
        image.add(pushed)
    target_rank = RowSpace(z.num_edges)
    for row in _boundary_rows(z):
        target_rank.add(row)
    for vec in _fundamental_cycles(z):
        target_rank.add(vec)
    return image.rank == target_rank.rank


# ---------------------------------------------------------------------------
# equivariant maps


@dataclass(frozen=True)
class EquivariantMap:
    """A cellular map commuting with actions over a shared generator list."""

    map: CellularMap
    source_action: GroupAction
    target_action: GroupAction

    def __post_init__(self):
        if len(self.source_action.generators) != len(self.target_action.generators):
            raise InvalidActionError("actions do not share a generator list")
        for g_s, g_t in zip(
            self.source_action.generators, self.target_action.generators
        ):
            if not maps_equal(
                compose_maps(self.map, g_s), compose_maps(g_t, self.map)
            ):
                raise InvalidActionError("map is not equivariant")


def trivial_equivariant(m: CellularMap) -> EquivariantMap:
    return EquivariantMap(
        map=m,
        source_action=GroupAction(m.source, []),
        target_action=GroupAction(m.target, []),
    )


# ---------------------------------------------------------------------------
# essential paths


@dataclass(frozen=True)
class EssentialPath:
    """An edge path witnessing non-injectivity or non-simple-connectivity.

    ``letters`` traverse the source complex from ``start``; kind
    "closed_not_nullhomotopic" carries a homology witness, kind
    "open_with_closed_image" has distinct endpoints with equal images.
    """

    start: int
    letters: tuple
    kind: str
    witness: str


def _reduced_paths(y: TwoComplex, length: int):
    """Reduced edge paths of exactly the given length, in lex dart order."""
    out_letters = [[] for _ in range(y.num_vertices)]
    for e in range(y.num_edges):
        u, v = y.edges[e]
        out_letters[u].append((e, 1))
        out_letters[v].append((e, -1))
    for v in range(y.num_vertices):
        out_letters[v].sort(key=dart_of_letter)

    def rec(v, path):
        if len(path) == length:
            yield tuple(path)
            return
        for letter in out_letters[v]:
            if path and letter == (path[-1][0], -path[-1][1]):
                continue
            path.append(letter)
            yield from rec(y.letter_end(letter), path)
            path.pop()

    for v0 in range(y.num_vertices):
        for p in rec(v0, []):
            yield (v0, p)


def _kind2_possible(y: TwoComplex, psi: CellularMap) -> bool:
    """Whether some component of the source has two vertices of equal image."""
    label = list(range(y.num_vertices))

    def find(a):
        while label[a] != a:
            label[a] = label[label[a]]
            a = label[a]
        return a

    for u, v in y.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            label[max(ru, rv)] = min(ru, rv)
    seen = {}
    for v in range(y.num_vertices):
        key = (find(v), psi.vertex_map[v])
        if key in seen:
            return True
        seen[key] = v
    return False


def find_essential_path(
    psi: CellularMap,
    max_length: int,
    max_area: int,
) -> Optional[object]:
    """Minimal essential path for an immersion into a simply connected complex.

    Enumerates reduced paths by (length, lexicographic dart order).  A
    non-closed path with closed image is essential outright; a closed path
    is certified essential by a nontrivial rational homology class, or
    certified inessential by a filling diagram of area at most ``max_area``.

    Returns the path; or ``None``, which certifies that no essential path
    exists at any length (no same-component equal-image vertex pair, H1
    zero, and every generating loop fills); or ``"unknown"`` when the
    bounds preclude a verdict.
    """
    ok, witness = is_immersion(psi)
    if not ok:
        raise InvalidMapError(f"not an immersion: {witness}")
    y = psi.source
    kind2 = _kind2_possible(y, psi)
    if not kind2:
        cert_ok, _why = _simply_connected_certificate(y, max_area)
        if cert_ok:
            return None
    boundaries = RowSpace(y.num_edges)
    for row in _boundary_rows(y):
        boundaries.add(row)
    from .diagrams import _canon_cycle

    fill_cache: dict = {}
    ambiguous = False
    for length in range(1, max_length + 1):
        for v0, letters in _reduced_paths(y, length):
            end = v0
            for letter in letters:
                end = y.letter_end(letter)
            closed_in_y = end == v0
            if not closed_in_y:
                if psi.vertex_map[end] == psi.vertex_map[v0]:
                    if ambiguous:
                        return "unknown"
                    return EssentialPath(
                        start=v0,
                        letters=letters,
                        kind="open_with_closed_image",
                        witness="endpoints distinct with equal image",
                    )
                continue
            vec = _word_vector(y, letters)
            if not boundaries.contains(vec):
                if ambiguous:
                    return "unknown"
                return EssentialPath(
                    start=v0,
                    letters=letters,
                    kind="closed_not_nullhomotopic",
                    witness="nontrivial class in H1(Y; Q)",
                )
            # rotations and reversals of one loop fill together: cache on
            # the canonical cyclic form
            canon = _canon_cycle(tuple(dart_of_letter(l) for l in letters))
            if canon in fill_cache:
                filled = fill_cache[canon]
            else:
                filled = (
                    find_disk_diagram(y, letters, max_area, base_vertex=v0)
                    is not None
                )
                fill_cache[canon] = filled
            if not filled:
                ambiguous = True
    return "unknown" if ambiguous else None


# ---------------------------------------------------------------------------
# collapsing essential paths


def _interval_complex(n: int) -> TwoComplex:
    return TwoComplex(n + 1, [(i, i + 1) for i in range(n)], [], [])


def _path_map(y: TwoComplex, start: int, letters, interval: TwoComplex) -> CellularMap:
    vmap = [start]
    v = start
    for letter in letters:
        v = y.letter_end(letter)
        vmap.append(v)
    return CellularMap(
        source=interval,
        target=y,
        vertex_map=tuple(vmap),
        edge_map=tuple(letters),
        face_map=(),
    )


def _pair_group(em: EquivariantMap) -> list[tuple[CellularMap, CellularMap]]:
    """Elements of the abstract group as (source, target) action pairs.

    The shared generator list generates pairs componentwise; the pair
    closure is the graph of the correspondence between the two actions.
    """
    from .groups import close_group

    gens = list(zip(em.source_action.generators, em.target_action.generators))
    ident = (identity_map(em.map.source), identity_map(em.map.target))

    def comp(a, b):
        return (compose_maps(a[0], b[0]), compose_maps(a[1], b[1]))

    def key(p):
        return (map_key(p[0]), map_key(p[1]))

    return close_group(gens, ident, comp, key)


def _pair_permutations(
    pairs, gens
) -> list[list[int]]:
    """Left-multiplication permutation of pair elements per generator pair."""
    index = {
        (map_key(a), map_key(b)): i for i, (a, b) in enumerate(pairs)
    }
    perms = []
    for g_s, g_t in gens:
        perm = []
        for a, b in pairs:
            prod = (compose_maps(g_s, a), compose_maps(g_t, b))
            perm.append(index[(map_key(prod[0]), map_key(prod[1]))])
        perms.append(perm)
    return perms


def _copy_permutation_map(
    total: TwoComplex,
    inclusions: Sequence[CellularMap],
    perm: Sequence[int],
) -> CellularMap:
    """Automorphism of a disjoint union permuting identical copies."""
    nv = [None] * total.num_vertices
    ne = [None] * total.num_edges
    nf = [None] * total.num_faces
    for i, incl in enumerate(inclusions):
        dst = inclusions[perm[i]]
        src = incl.source
        for v in range(src.num_vertices):
            nv[incl.vertex_map[v]] = dst.vertex_map[v]
        for e in range(src.num_edges):
            ne[incl.edge_map[e][0]] = dst.edge_map[e]
        for f in range(src.num_faces):
            nf[incl.face_map[f][0]] = dst.face_map[f]
    return CellularMap(
        source=total,
        target=total,
        vertex_map=tuple(nv),
        edge_map=tuple(ne),
        face_map=tuple(nf),
    )


@dataclass(frozen=True)
class CollapseResult:
    status: str  # "collapsed" | "no_diagram"
    z: Optional[TwoComplex] = None
    y_to_z: Optional[CellularMap] = None
    z_to_x: Optional[CellularMap] = None
    action: Optional[GroupAction] = None
    diagram_area: Optional[int] = None
    bnd_isolated_before: Optional[int] = None
    bnd_isolated_after: Optional[int] = None


def bnd_isolated_count(y: TwoComplex, action: Optional[GroupAction] = None) -> int:
    """Number of vertex orbits whose link is a single vertex, has a spur,
    or has an isolated vertex (bare vertices count as bnd)."""
    orbits = (
        action.vertex_orbits()
        if action is not None
        else [[v] for v in range(y.num_vertices)]
    )
    count = 0
    for orbit in orbits:
        lk = link(y, orbit[0])
        val = lk.valences()
        if lk.num_vertices <= 1 or 1 in val or 0 in val:
            count += 1
    return count


def collapse_essential_path(
    em: EquivariantMap,
    path: EssentialPath,
    max_area: int,
) -> CollapseResult:
    """One collapse step: fill the path image, attach copies, fold.

    The path's image must be a simple closed path in the target (embedded
    except at its endpoints).
    """
    psi = em.map
    y, x = psi.source, psi.target
    image_letters = tuple(psi.apply_letter(l) for l in path.letters)
    image_start = psi.vertex_map[path.start]
    seen = {image_start}
    v = image_start
    for letter in image_letters[:-1]:
        v = x.letter_end(letter)
        if v in seen:
            raise OrbicurvError("path image is not simple")
        seen.add(v)
    if image_letters and x.letter_end(image_letters[-1]) != image_start:
        raise OrbicurvError("path image is not closed")
    before = bnd_isolated_count(y, em.source_action)
    dm = find_disk_diagram(x, image_letters, max_area, base_vertex=image_start)
    if dm is None:
        return CollapseResult(status="no_diagram")
    pairs = _pair_group(em)
    elements = [a for a, _ in pairs]
    target_elements = [b for _, b in pairs]
    n_copies = len(pairs)
    interval = _interval_complex(len(path.letters))
    c_total, c_incls = disjoint_union([interval] * n_copies)
    d_total, d_incls = disjoint_union([dm.diagram.complex] * n_copies)
    # phi: each interval copy onto the boundary of its diagram copy
    bd = dm.diagram.boundary
    bmap_v = [dm.diagram.complex.dart_init(d) for d in bd]
    bmap_v.append(dm.diagram.complex.dart_init(bd[0]) if bd else 0)
    base_phi = CellularMap(
        source=interval,
        target=dm.diagram.complex,
        vertex_map=tuple(bmap_v),
        edge_map=tuple((dart_edge(d), dart_sign(d)) for d in bd),
        face_map=(),
    )
    phi_v = []
    phi_e = []
    for i in range(n_copies):
        incl = d_incls[i]
        dst = compose_maps(incl, base_phi)
        phi_v.extend(dst.vertex_map)
        phi_e.extend(dst.edge_map)
    phi = CellularMap(
        source=c_total,
        target=d_total,
        vertex_map=tuple(phi_v),
        edge_map=tuple(phi_e),
        face_map=(),
    )
    # psi_C: copy h goes into Y through the h-translate of the path
    base_path = _path_map(y, path.start, path.letters, interval)
    psi_v = []
    psi_e = []
    for h in elements:
        translated = compose_maps(h, base_path)
        psi_v.extend(translated.vertex_map)
        psi_e.extend(translated.edge_map)
    psi_c = CellularMap(
        source=c_total,
        target=y,
        vertex_map=tuple(psi_v),
        edge_map=tuple(psi_e),
        face_map=(),
    )
    # copy-permutation actions
    gen_pairs = list(
        zip(em.source_action.generators, em.target_action.generators)
    )
    perms = _pair_permutations(pairs, gen_pairs)
    gens_c = [_copy_permutation_map(c_total, c_incls, perm) for perm in perms]
    gens_a = [_copy_permutation_map(d_total, d_incls, perm) for perm in perms]
    gens_b = em.source_action.generators
    po = pushout(
        phi,
        psi_c,
        generators_c=gens_c,
        generators_a=gens_a,
        generators_b=gens_b,
    )
    # mediator to X: diagram copies map through the group translates
    alpha_v = []
    alpha_e = []
    alpha_f = []
    for h, h_x in zip(elements, target_elements):
        pushed = compose_maps(h_x, dm.to_target)
        alpha_v.extend(pushed.vertex_map)
        alpha_e.extend(pushed.edge_map)
        alpha_f.extend(pushed.face_map)
    alpha = CellularMap(
        source=d_total,
        target=x,
        vertex_map=tuple(alpha_v),
        edge_map=tuple(alpha_e),
        face_map=tuple(alpha_f),
    )
    mu = pushout_mediator(po, alpha, psi)
    folded = fold(mu, source_generators=po.action.generators if po.action else ())
    z_action = folded.action or GroupAction(folded.z, [])
    y_to_z = compose_maps(folded.q, po.into_b)
    after = bnd_isolated_count(folded.z, z_action)
    if after > before:
        raise OrbicurvError(
            f"collapse increased bnd+isolated orbits: {before} -> {after}"
        )
    if not h1_map_is_surjective(y_to_z):
        raise OrbicurvError("collapse is not surjective on H1")
    return CollapseResult(
        status="collapsed",
        z=folded.z,
        y_to_z=y_to_z,
        z_to_x=folded.i,
        action=z_action,
        diagram_area=dm.diagram.area,
        bnd_isolated_before=before,
        bnd_isolated_after=after,
    )


# ---------------------------------------------------------------------------
# subcomplexes and the core construction


def subcomplex(
    x: TwoComplex,
    vertices: Sequence[int],
    edges: Sequence[int],
    faces: Sequence[int] = (),
) -> tuple[TwoComplex, CellularMap]:
    """The subcomplex on the given cells, with its inclusion map."""
    vertices = sorted(set(vertices))
    edges = sorted(set(edges))
    faces = sorted(set(faces))
    vindex = {v: i for i, v in enumerate(vertices)}
    eindex = {e: i for i, e in enumerate(edges)}
    for e in edges:
        u, v = x.edges[e]
        if u not in vindex or v not in vindex:
            raise OrbicurvError(f"subcomplex misses an endpoint of edge {e}")
    for f in faces:
        for e, _ in x.faces[f]:
            if e not in eindex:
                raise OrbicurvError(f"subcomplex misses an edge of face {f}")
    sub = TwoComplex(
        len(vertices),
        [(vindex[x.edges[e][0]], vindex[x.edges[e][1]]) for e in edges],
        [tuple((eindex[e], s) for e, s in x.faces[f]) for f in faces],
        [x.angles[f] for f in faces],
    )
    incl = CellularMap(
        source=sub,
        target=x,
        vertex_map=tuple(vertices),
        edge_map=tuple((e, 1) for e in edges),
        face_map=tuple((f, 0, 0) for f in faces),
    )
    return sub, incl


def restrict_action(
    action: GroupAction, incl: CellularMap
) -> GroupAction:
    """Restriction of an ambient action to an invariant subcomplex."""
    sub = incl.source
    x = action.carrier
    vindex = {incl.vertex_map[v]: v for v in range(sub.num_vertices)}
    eindex = {incl.edge_map[e][0]: e for e in range(sub.num_edges)}
    findex = {incl.face_map[f][0]: f for f in range(sub.num_faces)}
    gens = []
    for g in action.generators:
        try:
            vmap = tuple(
                vindex[g.vertex_map[incl.vertex_map[v]]]
                for v in range(sub.num_vertices)
            )
            emap = tuple(
                (eindex[g.edge_map[incl.edge_map[e][0]][0]],
                 g.edge_map[incl.edge_map[e][0]][1])
                for e in range(sub.num_edges)
            )
            fmap = []
            for f in range(sub.num_faces):
                xf = incl.face_map[f][0]
                gf, gr, gp = g.face_map[xf]
                fmap.append((findex[gf], gr, gp))
        except KeyError:
            raise InvalidActionError("subcomplex is not invariant") from None
        gens.append(
            CellularMap(
                source=sub,
                target=sub,
                vertex_map=vmap,
                edge_map=emap,
                face_map=tuple(fmap),
            )
        )
    return GroupAction(sub, gens)


@dataclass(frozen=True)
class CoreResult:
    status: str  # "core" | "unknown"
    vertices: tuple[int, ...] = ()
    edges: tuple[int, ...] = ()
    faces: tuple[int, ...] = ()
    iterations: int = 0
    reason: str = ""


def _is_vertex_injective(m: CellularMap) -> bool:
    return len(set(m.vertex_map)) == m.source.num_vertices


def _simply_connected_certificate(
    y: TwoComplex, max_area: int
) -> tuple[bool, str]:
    if h1_dimension(y) != 0:
        return False, "H1 is nonzero"
    # rationally trivial loops must still fill; certify the generators
    for v0, letters in _fundamental_cycle_words(y):
        if find_disk_diagram(y, letters, max_area, base_vertex=v0) is None:
            return False, "a generating loop did not fill within the area bound"
    return True, ""


def build_core(
    x: TwoComplex,
    action: GroupAction,
    y_vertices: Sequence[int],
    y_edges: Sequence[int],
    y_faces: Sequence[int] = (),
    max_length: int = 8,
    max_area: int = 20,
    max_iterations: int = 10,
) -> CoreResult:
    """Bounded cocompact-core construction.

    Iterates essential-path collapse from the inclusion of the given
    invariant connected subcomplex until the immersion embeds and the image
    is certified simply connected, or a bound is exhausted.
    """
    sub, incl = subcomplex(x, y_vertices, y_edges, y_faces)
    if not sub.is_connected():
        raise OrbicurvError("initial subcomplex is not connected")
    sub_action = restrict_action(action, incl)
    em = EquivariantMap(map=incl, source_action=sub_action, target_action=action)
    for iteration in range(max_iterations + 1):
        found = find_essential_path(em.map, max_length, max_area)
        if found == "unknown":
            return CoreResult(
                status="unknown",
                iterations=iteration,
                reason="essential-path search inconclusive within bounds",
            )
        if found is None:
            if not _is_vertex_injective(em.map):
                return CoreResult(
                    status="unknown",
                    iterations=iteration,
                    reason="map is not injective but no short essential path",
                )
            ok, why = _simply_connected_certificate(em.map.source, max_area)
            if not ok:
                return CoreResult(
                    status="unknown", iterations=iteration, reason=why
                )
            verts = tuple(sorted(set(em.map.vertex_map)))
            edges = tuple(sorted({e for e, _ in em.map.edge_map}))
            faces = tuple(sorted({f for f, _, _ in em.map.face_map}))
            return CoreResult(
                status="core",
                vertices=verts,
                edges=edges,
                faces=faces,
                iterations=iteration,
            )
        if iteration == max_iterations:
            break
        step = collapse_essential_path(em, found, max_area)
        if step.status != "collapsed":
            return CoreResult(
                status="unknown",
                iterations=iteration,
                reason="no filling diagram within the area bound",
            )
        em = EquivariantMap(
            map=step.z_to_x,
            source_action=step.action,
            target_action=action,
        )
    return CoreResult(
        status="unknown",
        iterations=max_iterations,
        reason="iteration bound exhausted",
    )


# ---------------------------------------------------------------------------
# immersion invariants


def pullback_angles(m: CellularMap) -> TwoComplex:
    """The source complex with angles pulled back through the map."""
    x = m.target
    if not x.fully_angled():
        raise OrbicurvError("target is not fully angled")
    src = m.source
    angles = []
    for f in range(src.num_faces):
        length = len(src.faces[f])
        g, r, p = m.face_map[f]
        ang = tuple(
            x.corner_angle(g, corner_image((r, p), i, length))
            for i in range(length)
        )
        angles.append(ang)
    return TwoComplex(src.num_vertices, src.edges, src.faces, angles)


@dataclass(frozen=True)
class ImmersionInvariants:
    chi: Fraction
    bnd: tuple[int, ...]
    isolated: tuple[int, ...]
    zero: tuple[int, ...]
    nega: tuple[int, ...]
    positive: tuple[int, ...]
    nega_bound: Optional[Fraction] = None

    @property
    def counts(self) -> dict:
        return {
            "bnd": len(self.bnd),
            "isolated": len(self.isolated),
            "zero": len(self.zero),
            "nega": len(self.nega),
            "positive": len(self.positive),
        }


def immersion_invariants(
    em: EquivariantMap,
    ambient_bounds: Optional[BoundsReport] = None,
    check_partition: bool = False,
) -> ImmersionInvariants:
    """Orbit curvature census of an immersion, with the counting bound.

    When ``ambient_bounds`` is given, checks the negative-orbit bound; when
    ``check_partition`` is set (nonpositively curved ambient), asserts that
    every orbit is bnd, zero, or negative.
    """
    psi = em.map
    ok, witness = is_immersion(psi)
    if not ok:
        raise InvalidMapError(f"not an immersion: {witness}")
    angled = pullback_angles(psi)
    rebuilt = [
        CellularMap(
            source=angled,
            target=angled,
            vertex_map=g.vertex_map,
            edge_map=g.edge_map,
            face_map=g.face_map,
        )
        for g in em.source_action.generators
    ]
    action = GroupAction(angled, rebuilt)
    o = orbihedron_from_action(angled, action)
    chi = euler_characteristic(o)
    orbits = action.vertex_orbits()
    bnd = []
    isolated = []
    zero = []
    nega = []
    positive = []
    for idx, orbit in enumerate(orbits):
        lk = link(angled, orbit[0])
        val = lk.valences()
        if lk.num_vertices <= 1 or 1 in val:
            bnd.append(idx)
        if lk.num_vertices > 0 and 0 in val:
            isolated.append(idx)
        k = vertex_curvature(o, idx)
        if k == 0:
            zero.append(idx)
        elif k < 0:
            nega.append(idx)
        else:
            positive.append(idx)
    bound = None
    if ambient_bounds is not None:
        bound = negative_orbit_bound(
            chi, ambient_bounds.a_pos, len(positive), ambient_bounds.a_neg
        )
        if len(nega) > bound:
            raise OrbicurvError(
                f"negative-orbit count {len(nega)} exceeds the bound {bound}"
            )
    if check_partition:
        for idx in positive:
            if idx not in bnd:
                raise OrbicurvError(
                    "positively curved orbit outside bnd in a nonpositively "
                    "curved ambient complex"
                )
    return ImmersionInvariants(
        chi=chi,
        bnd=tuple(bnd),
        isolated=tuple(isolated),
        zero=tuple(zero),
        nega=tuple(nega),
        positive=tuple(positive),
        nega_bound=bound,
    )


# ---------------------------------------------------------------------------
# no self-immersions


def is_self_immersion_iso(em: EquivariantMap) -> tuple[bool, CellularMap]:
    """Check the no-self-immersions property and return the inverse.

    An equivariant immersion of a finite connected complex to itself must be
    an isomorphism; anything else means the hypotheses were violated, which
    is reported as an error.
    """
    m = em.map
    if m.source != m.target:
        raise InvalidMapError("not a self-map")
    if not m.source.is_connected():
        raise InvalidMapError("complex is not connected")
    ok, witness = is_immersion(m)
    if not ok:
        raise InvalidMapError(f"not an immersion: {witness}")
    if not m.is_bijective():
        raise OrbicurvError(
            "self-immersion is not bijective: hypotheses of the "
            "no-self-immersions property are violated"
        )
    inv_v = [0] * m.source.num_vertices
    for v, img in enumerate(m.vertex_map):
        inv_v[img] = v
    inv_e = [None] * m.source.num_edges
    for e, (img, s) in enumerate(m.edge_map):
        inv_e[img] = (e, s)
    inv_f = [None] * m.source.num_faces
    for f, (img, r, p) in enumerate(m.face_map):
        length = len(m.source.faces[f])
        t = inverse((r, p), length)
        inv_f[img] = (f, t[0], t[1])
    inverse_map = CellularMap(
        source=m.source,
        target=m.source,
        vertex_map=tuple(inv_v),
        edge_map=tuple(inv_e),
        face_map=tuple(inv_f),
    )
    if not compose_maps(inverse_map, m).is_identity():
        raise OrbicurvError("inverse construction failed")
    return True, inverse_map
