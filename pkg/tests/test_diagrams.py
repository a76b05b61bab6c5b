"""Disk diagrams: validation, arcs, cut structure, bounded filling search."""

from fractions import Fraction

import pytest

from orbicurv.complex2 import TwoComplex, dart, is_near_immersion
from orbicurv.diagrams import (
    Arc,
    boundary_arcs,
    boundary_cycle,
    cut_components,
    cut_vertices,
    find_disk_diagram,
    internal_arcs,
    is_good_path,
    validate_diagram,
)
from orbicurv.errors import InvalidDiagramError, OrbicurvError

from helpers import ngon_disk, torus_complex, wheel_complex

F = Fraction


def square_diagram():
    x = ngon_disk(4, euclidean=False)
    rotations = [(2 * i, 2 * ((i - 1) % 4) + 1) for i in range(4)]
    boundary = (0, 2, 4, 6)
    return validate_diagram(x, rotations, boundary)


# -- validation ---------------------------------------------------------------


def test_square_diagram_valid():
    d = square_diagram()
    assert d.area == 1
    assert boundary_cycle(d) == (0, 2, 4, 6)
    assert d.boundary_vertices() == {0, 1, 2, 3}
    assert d.interior_vertices() == set()


def test_point_diagram():
    x = TwoComplex(1, [], [], [])
    d = validate_diagram(x, [()], ())
    assert d.area == 0
    assert boundary_cycle(d) == ()


def test_sphere_rejected():
    # two bigons glued along both edges: chi = 2
    x = TwoComplex(2, [(0, 1), (0, 1)], [((0, 1), (1, -1)), ((1, 1), (0, -1))])
    with pytest.raises(InvalidDiagramError, match="not contractible"):
        validate_diagram(x, [(0, 2), (1, 3)], (0, 3))


def test_nonplanar_rotation_rejected():
    # wedge of two squares with interleaved rotation at the wedge point
    dm = find_disk_diagram(
        wedge_two_squares_target(), wedge_word(), max_area=4
    )
    d = dm.diagram
    x = d.complex
    wedge_vertex = next(v for v in range(x.num_vertices) if d.valence(v) == 4)
    rot = list(d.rotations[wedge_vertex])
    bad = (rot[0], rot[2], rot[1], rot[3])
    rotations = list(d.rotations)
    rotations[wedge_vertex] = bad
    with pytest.raises(InvalidDiagramError):
        validate_diagram(x, rotations, d.boundary)


# -- search --------------------------------------------------------------------


def test_fill_square():
    x = ngon_disk(4, euclidean=False)
    word = x.faces[0]
    dm = find_disk_diagram(x, word, max_area=2)
    assert dm is not None
    assert dm.diagram.area == 1
    # boundary maps to the word letter for letter
    got = tuple(
        dm.to_target.apply_letter(
            (d // 2, 1 if d % 2 == 0 else -1)
        )
        for d in dm.diagram.boundary
    )
    assert got == word
    ok, _ = is_near_immersion(dm.to_target)
    assert ok


def test_fill_torus_relator():
    x = torus_complex()
    dm = find_disk_diagram(x, x.faces[0], max_area=3)
    assert dm is not None
    assert dm.diagram.area == 1


def test_fill_backtrack():
    x = torus_complex()
    word = ((0, 1), (0, -1))
    dm = find_disk_diagram(x, word, max_area=1)
    assert dm is not None
    assert dm.diagram.area == 0
    assert dm.diagram.complex.num_edges == 1
    assert dm.diagram.complex.num_vertices == 2
    assert len(dm.diagram.boundary) == 2


def test_fill_trivial_point():
    x = torus_complex()
    dm = find_disk_diagram(x, (), max_area=0, base_vertex=0)
    assert dm is not None
    assert dm.diagram.area == 0
    assert dm.diagram.complex.num_vertices == 1


def test_fill_wheel_boundary():
    n = 6
    x = wheel_complex(n)
    word = tuple((n + i, 1) for i in range(n))  # rim cycle
    dm = find_disk_diagram(x, word, max_area=n)
    assert dm is not None
    assert dm.diagram.area == n
    ok, _ = is_near_immersion(dm.to_target)
    assert ok
    # the diagram is the whole wheel
    assert dm.diagram.complex.num_vertices == n + 1
    assert dm.diagram.complex.num_edges == 2 * n


def test_fill_monotonicity():
    n = 6
    x = wheel_complex(n)
    word = tuple((n + i, 1) for i in range(n))
    assert find_disk_diagram(x, word, max_area=n - 1) is None
    small = find_disk_diagram(x, word, max_area=n)
    big = find_disk_diagram(x, word, max_area=n + 10)
    assert small.diagram.area == big.diagram.area == n


def two_squares_target():
    # plane complex: two squares sharing an edge
    return TwoComplex(
        6,
        [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 2)],
        [
            ((0, 1), (1, 1), (2, 1), (3, 1)),
            ((4, 1), (5, 1), (6, 1), (1, -1)),
        ],
    )


def test_fill_two_squares():
    x = two_squares_target()
    # boundary of the union: e0 e4 e5 e6 e2 e3
    word = ((0, 1), (4, 1), (5, 1), (6, 1), (2, 1), (3, 1))
    dm = find_disk_diagram(x, word, max_area=4)
    assert dm is not None
    assert dm.diagram.area == 2
    arcs = internal_arcs(dm.diagram)
    assert len(arcs) == 1
    assert len(arcs[0]) == 1  # the shared edge
    assert not arcs[0].closed


def wedge_two_squares_target():
    # two squares meeting at one vertex
    return TwoComplex(
        7,
        [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)],
        [
            ((0, 1), (1, 1), (2, 1), (3, 1)),
            ((4, 1), (5, 1), (6, 1), (7, 1)),
        ],
    )


def wedge_word():
    return tuple((i, 1) for i in range(8))


def test_fill_wedge_of_squares():
    x = wedge_two_squares_target()
    dm = find_disk_diagram(x, wedge_word(), max_area=4)
    assert dm is not None
    assert dm.diagram.area == 2
    d = dm.diagram
    assert len(d.boundary) == 8  # 8-cycle through the cut vertex twice
    cuts = cut_vertices(d)
    assert len(cuts) == 1
    comps = cut_components(d)
    assert len(comps) == 2
    assert all(c.non_singular for c in comps)


# -- cut structure ---------------------------------------------------------------


def test_square_has_no_cut_vertices():
    d = square_diagram()
    assert cut_vertices(d) == set()
    comps = cut_components(d)
    assert len(comps) == 1
    assert comps[0].non_singular


def test_pendant_edge_cut_vertex():
    # square with a pendant edge hanging off vertex 0
    x = TwoComplex(
        5,
        [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)],
        [((0, 1), (1, 1), (2, 1), (3, 1))],
    )
    rotations = [
        (0, 7, 8),
        (2, 1),
        (4, 3),
        (6, 5),
        (9,),
    ]
    boundary = (0, 2, 4, 6, 8, 9)
    d = validate_diagram(x, rotations, boundary)
    assert cut_vertices(d) == {0}
    comps = cut_components(d)
    assert len(comps) == 2
    flags = sorted(c.non_singular for c in comps)
    assert flags == [False, True]


# -- arcs -------------------------------------------------------------------------


def test_square_boundary_is_one_closed_arc():
    d = square_diagram()
    arcs = boundary_arcs(d)
    assert len(arcs) == 1
    assert arcs[0].closed
    assert len(arcs[0]) == 4
    assert internal_arcs(d) == []


def test_two_squares_boundary_arcs():
    x = two_squares_target()
    word = ((0, 1), (4, 1), (5, 1), (6, 1), (2, 1), (3, 1))
    dm = find_disk_diagram(x, word, max_area=4)
    arcs = boundary_arcs(dm.diagram)
    # boundary splits at the two valence-3 vertices into two length-3 arcs
    assert len(arcs) == 2
    assert sorted(len(a) for a in arcs) == [3, 3]


def test_wheel_spokes_are_unit_internal_arcs():
    n = 6
    x = wheel_complex(n)
    word = tuple((n + i, 1) for i in range(n))
    dm = find_disk_diagram(x, word, max_area=n)
    arcs = internal_arcs(dm.diagram)
    # center has valence 6, so every spoke is a maximal internal arc
    assert len(arcs) == n
    assert all(len(a) == 1 for a in arcs)


# -- good paths -------------------------------------------------------------------


def test_good_paths():
    n = 6
    x = wheel_complex(n)
    word = tuple((n + i, 1) for i in range(n))
    dm = find_disk_diagram(x, word, max_area=n)
    d = dm.diagram
    center = next(iter(d.interior_vertices()))
    # a path through the center: spoke in, spoke out
    spokes = [
        dd
        for dd in range(2 * d.complex.num_edges)
        if d.complex.dart_term(dd) == center
    ]
    path = (spokes[0], dart(spokes[1] // 2, 1 if spokes[1] % 2 else -1))
    marked = d.boundary_vertices()
    assert is_good_path(d, path, marked)
    # a boundary path with a marked middle vertex is not good
    b = d.boundary
    assert not is_good_path(d, b[:2], marked)
    # but is good when nothing is marked
    assert is_good_path(d, b[:2], set())
    # endpoints are exempt
    assert is_good_path(d, b[:1], marked)


def test_good_path_rejects_nonpath():
    d = square_diagram()
    with pytest.raises(OrbicurvError):
        is_good_path(d, (0, 0), set())
