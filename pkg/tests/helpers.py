"""Shared builders for test complexes, graphs, and random instances."""

from __future__ import annotations

import random
from fractions import Fraction

from orbicurv.complex2 import AngledGraph, TwoComplex

F = Fraction


def torus_complex() -> TwoComplex:
    """One vertex, loops a, b, square relator a b a' b', right angles."""
    return TwoComplex(
        num_vertices=1,
        edges=[(0, 0), (0, 0)],
        faces=[((0, 1), (1, 1), (0, -1), (1, -1))],
        angles=[(F(1, 2),) * 4],
    )


def ngon_disk(n: int, euclidean: bool = True) -> TwoComplex:
    """Single n-gon with free boundary; Euclidean angles by default."""
    edges = [(i, (i + 1) % n) for i in range(n)]
    word = tuple((i, 1) for i in range(n))
    ang = (F(n - 2, n),) * n if euclidean else None
    return TwoComplex(n, edges, [word], [ang])


def tetrahedron_sphere() -> TwoComplex:
    """Boundary of the tetrahedron; all angles pi/3."""
    # vertices 0..3; edges: 01,02,03,12,13,23
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    idx = {(0, 1): 0, (0, 2): 1, (0, 3): 2, (1, 2): 3, (1, 3): 4, (2, 3): 5}

    def lt(a, b):
        if (a, b) in idx:
            return (idx[(a, b)], 1)
        return (idx[(b, a)], -1)

    faces = [
        (lt(0, 1), lt(1, 2), lt(2, 0)),
        (lt(0, 1), lt(1, 3), lt(3, 0)),
        (lt(0, 2), lt(2, 3), lt(3, 0)),
        (lt(1, 2), lt(2, 3), lt(3, 1)),
    ]
    angles = [(F(1, 3),) * 3] * 4
    return TwoComplex(4, edges, faces, angles)


def genus2_octagon() -> TwoComplex:
    """One vertex, four loops, word a b a' b' c d c' d', angles 3/4."""
    word = (
        (0, 1), (1, 1), (0, -1), (1, -1),
        (2, 1), (3, 1), (2, -1), (3, -1),
    )
    return TwoComplex(1, [(0, 0)] * 4, [word], [(F(3, 4),) * 8])


def one_vertex_surface(genus: int) -> TwoComplex:
    """Standard one-vertex genus-g surface with the flat angle sum."""
    n = 4 * genus
    word = []
    for g in range(genus):
        a, b = 2 * g, 2 * g + 1
        word += [(a, 1), (b, 1), (a, -1), (b, -1)]
    return TwoComplex(1, [(0, 0)] * (2 * genus), [tuple(word)], [(F(n - 2, n),) * n])


def wheel_complex(n: int, angles=None) -> TwoComplex:
    """Hexagonal-style wheel: center 0, rim 1..n, spokes then rim edges.

    Triangle i has word (spoke_i, rim_i, spoke_{i+1} reversed).
    """
    edges = [(0, 1 + i) for i in range(n)] + [
        (1 + i, 1 + (i + 1) % n) for i in range(n)
    ]
    faces = []
    for i in range(n):
        faces.append(((i, 1), (n + i, 1), ((i + 1) % n, -1)))
    if angles is None:
        ang = [(F(1, 3),) * 3] * n
    else:
        ang = angles
    return TwoComplex(1 + n, edges, faces, ang)


def wedge_of_loops(k: int) -> TwoComplex:
    return TwoComplex(1, [(0, 0)] * k, [], [])


def wheel_flat_angles(n: int):
    """Flat cone triangle angles: apex 2/n, bases (n-2)/(2n)."""
    apex = F(2, n)
    base = F(n - 2, 2 * n)
    return [(apex, base, base)] * n


def wheel_rotation_map(x: TwoComplex, n: int):
    """The Z/n rotation of wheel_complex(n) as a cellular map."""
    from orbicurv.complex2 import CellularMap

    vperm = [0] + [1 + (i + 1) % n for i in range(n)]
    emap = [((i + 1) % n, 1) for i in range(n)] + [
        (n + (i + 1) % n, 1) for i in range(n)
    ]
    fmap = [((i + 1) % n, 0, 0) for i in range(n)]
    return CellularMap(
        source=x,
        target=x,
        vertex_map=tuple(vperm),
        edge_map=tuple(emap),
        face_map=tuple(fmap),
    )


def wheel_reflection_map(x: TwoComplex, n: int):
    """Reflection of wheel_complex(n) through the axis at rim vertex 1."""
    from orbicurv.complex2 import CellularMap

    vperm = [0] + [1 + ((n - i) % n) for i in range(n)]
    emap = [((n - i) % n, 1) for i in range(n)] + [
        (n + (n - 1 - i), -1) for i in range(n)
    ]
    fmap = [((n - 1 - i), 0, 1) for i in range(n)]
    return CellularMap(
        source=x,
        target=x,
        vertex_map=tuple(vperm),
        edge_map=tuple(emap),
        face_map=tuple(fmap),
    )


def cone_orbihedron(n: int):
    """Directly weighted Z/n cone: one flat triangle, apex weight 1/n."""
    from orbicurv.orbihedron import Orbihedron

    apex = F(2, n)
    base = F(n - 2, 2 * n)
    quotient = TwoComplex(
        2,
        [(0, 1), (1, 1)],
        [((0, 1), (1, 1), (0, -1))],
        [(apex, base, base)],
    )
    return Orbihedron(
        quotient=quotient,
        vertex_weights=(F(1, n), F(1)),
        edge_weights=(F(1), F(1)),
        face_weights=(F(1),),
    )


def theta_graph() -> AngledGraph:
    return AngledGraph(2, ((0, 1), (0, 1), (0, 1)), (F(1, 2),) * 3)


def triangle_graph(angle=F(2, 3)) -> AngledGraph:
    return AngledGraph(3, ((0, 1), (1, 2), (2, 0)), (Fraction(angle),) * 3)


def cycle_graph(n: int, angle=F(1, 2)) -> AngledGraph:
    return AngledGraph(
        n, tuple((i, (i + 1) % n) for i in range(n)), (Fraction(angle),) * n
    )


def random_angle(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(0, 24), rng.choice([1, 2, 3, 4, 6, 8, 12]))


def random_multigraph(rng: random.Random, max_vertices=6, max_edges=12) -> AngledGraph:
    nv = rng.randint(1, max_vertices)
    ne = rng.randint(0, max_edges)
    edges = tuple(
        (rng.randrange(nv), rng.randrange(nv)) for _ in range(ne)
    )
    angles = tuple(random_angle(rng) for _ in range(ne))
    return AngledGraph(nv, edges, angles)


def random_closed_word(rng: random.Random, x: TwoComplex, max_len=8):
    """Random nonempty closed edge word in ``x`` found by random walk."""
    out_darts = [[] for _ in range(x.num_vertices)]
    for e, (u, v) in enumerate(x.edges):
        out_darts[u].append((e, 1))
        out_darts[v].append((e, -1))
    starts = [v for v in range(x.num_vertices) if out_darts[v]]
    if not starts:
        return None
    for _ in range(200):
        v0 = rng.choice(starts)
        word = []
        v = v0
        for _ in range(max_len):
            if not out_darts[v]:
                break
            letter = rng.choice(out_darts[v])
            word.append(letter)
            v = x.letter_end(letter)
            if v == v0 and rng.random() < 0.5:
                break
        if word and v == v0:
            return tuple(word)
    return None


def random_connected_subcomplex(rng: random.Random, x: TwoComplex):
    """Cell sets of a random nonempty connected subcomplex of x."""
    v0 = rng.randrange(x.num_vertices)
    verts = {v0}
    edges = set()
    for _ in range(rng.randint(0, x.num_edges)):
        candidates = [
            e
            for e, (u, v) in enumerate(x.edges)
            if e not in edges and (u in verts or v in verts)
        ]
        if not candidates:
            break
        e = rng.choice(candidates)
        edges.add(e)
        verts.update(x.edges[e])
    faces = set()
    for f, word in enumerate(x.faces):
        if all(e in edges for e, _ in word) and rng.random() < 0.7:
            faces.add(f)
    return sorted(verts), sorted(edges), sorted(faces)


def random_fold_instance(rng: random.Random):
    """A random cellular map W -> X built from subcomplex pieces with some
    same-image vertex identifications (rich fold work, trivial action)."""
    from orbicurv.folding import QuotientBuilder, disjoint_union, subcomplex

    x = random_two_complex(rng)
    parts = []
    part_maps = []
    for _ in range(rng.randint(1, 3)):
        vs, es, fs = random_connected_subcomplex(rng, x)
        sub, incl = subcomplex(x, vs, es, fs)
        parts.append(sub)
        part_maps.append(incl)
    union, incls = disjoint_union(parts)
    vmap = []
    emap = []
    fmap = []
    for sub, incl in zip(parts, part_maps):
        vmap.extend(incl.vertex_map)
        emap.extend(incl.edge_map)
        fmap.extend(incl.face_map)
    from orbicurv.complex2 import CellularMap

    m = CellularMap(
        source=union,
        target=x,
        vertex_map=tuple(vmap),
        edge_map=tuple(emap),
        face_map=tuple(fmap),
    )
    # merge a few vertex pairs with equal image
    qb = QuotientBuilder(union)
    by_image = {}
    for v in range(union.num_vertices):
        by_image.setdefault(m.vertex_map[v], []).append(v)
    for image, group in by_image.items():
        if len(group) > 1 and rng.random() < 0.6:
            a, b = rng.sample(group, 2)
            qb.unite_vertices(a, b)
    w, q = qb.build()
    m2 = CellularMap(
        source=w,
        target=x,
        vertex_map=tuple(
            m.vertex_map[next(v for v in range(union.num_vertices)
                              if q.vertex_map[v] == zv)]
            for zv in range(w.num_vertices)
        ),
        edge_map=tuple(
            m.edge_map[next(e for e in range(union.num_edges)
                            if q.edge_map[e][0] == ze)]
            for ze in range(w.num_edges)
        ),
        face_map=tuple(
            m.face_map[next(f for f in range(union.num_faces)
                            if q.face_map[f][0] == zf)]
            for zf in range(w.num_faces)
        ),
    )
    return m2


def random_two_complex(rng: random.Random, max_v=4, max_e=6, max_f=3) -> TwoComplex:
    """Random valid angled complex (faces from random closed walks)."""
    nv = rng.randint(1, max_v)
    ne = rng.randint(1, max_e)
    edges = [(rng.randrange(nv), rng.randrange(nv)) for _ in range(ne)]
    x0 = TwoComplex(nv, edges)
    faces = []
    angles = []
    for _ in range(rng.randint(0, max_f)):
        w = random_closed_word(rng, x0, max_len=rng.randint(1, 8))
        if w is None:
            continue
        faces.append(w)
        angles.append(tuple(random_angle(rng) for _ in w))
    return TwoComplex(nv, edges, faces, angles)
