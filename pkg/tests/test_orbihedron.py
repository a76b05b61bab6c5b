"""Orbihedra: Euler characteristic, curvature, Gauss-Bonnet, quotients."""

import random
from fractions import Fraction

import pytest

from orbicurv.complex2 import TwoComplex, link
from orbicurv.errors import InvalidActionError, InvalidComplexError
from orbicurv.groups import GroupAction, trivial_action
from orbicurv.orbihedron import (
    Orbihedron,
    euler_characteristic,
    face_curvature,
    gauss_bonnet,
    orbihedron_from_action,
    trivial_orbihedron,
    vertex_curvature,
)
from orbicurv.sections import graph_curvature

from helpers import (
    cone_orbihedron,
    genus2_octagon,
    ngon_disk,
    random_two_complex,
    tetrahedron_sphere,
    torus_complex,
    wheel_complex,
    wheel_flat_angles,
    wheel_reflection_map,
    wheel_rotation_map,
)

F = Fraction


def test_torus_euler_and_gauss_bonnet():
    o = trivial_orbihedron(torus_complex())
    assert euler_characteristic(o) == 0
    assert vertex_curvature(o, 0) == 0
    assert face_curvature(o, 0) == 0
    rep = gauss_bonnet(o)
    assert rep.lhs == 0 and rep.rhs == 0 and rep.holds


def test_tetrahedron_curvatures():
    o = trivial_orbihedron(tetrahedron_sphere())
    for v in range(4):
        assert vertex_curvature(o, v) == 1  # pi at each vertex
    for f in range(4):
        assert face_curvature(o, f) == 0
    rep = gauss_bonnet(o)
    assert rep.lhs == 4 and rep.rhs == 4 and rep.holds


def test_octagon_gauss_bonnet():
    o = trivial_orbihedron(genus2_octagon())
    rep = gauss_bonnet(o)
    assert rep.chi == -2
    assert rep.lhs == -4
    assert rep.vertex_curvatures == (-4,)  # the 8-cycle link at angles 3/4
    assert rep.face_curvatures == (0,)  # flat: angle sum 6 = |boundary| - 2
    assert rep.holds


def test_isolated_vertex_curvature():
    o = trivial_orbihedron(TwoComplex(1, [], [], []))
    assert vertex_curvature(o, 0) == 2  # 2 pi, empty sums
    assert euler_characteristic(o) == 1


def test_cone_orbihedra():
    for n in range(2, 7):
        o = cone_orbihedron(n)
        rep = gauss_bonnet(o)
        assert rep.chi == F(1, n)
        assert rep.lhs == F(2, n)
        assert rep.holds


def test_cone_quotient_from_action_matches_direct():
    for n in (2, 3, 4, 5, 6):
        x = wheel_complex(n, angles=wheel_flat_angles(n))
        act = GroupAction(x, [wheel_rotation_map(x, n)])
        assert act.order == n
        o = orbihedron_from_action(x, act)
        direct = cone_orbihedron(n)
        assert o.quotient == direct.quotient
        assert o.vertex_weights == direct.vertex_weights
        assert o.edge_weights == direct.edge_weights
        assert o.face_weights == direct.face_weights
        assert euler_characteristic(o) == F(1, n)


def test_trivial_action_quotient_is_identity():
    x = tetrahedron_sphere()
    o = orbihedron_from_action(x, trivial_action(x))
    assert o.quotient == x
    assert set(o.vertex_weights) == {F(1)}


def test_free_action_euler_division():
    # Z/2 swapping two disjoint copies of the torus complex
    t = torus_complex()
    x = TwoComplex(
        2,
        [(0, 0), (0, 0), (1, 1), (1, 1)],
        [t.faces[0], tuple((e + 2, s) for e, s in t.faces[0])],
        [t.angles[0], t.angles[0]],
    )
    from orbicurv.complex2 import CellularMap

    swap = CellularMap(
        source=x,
        target=x,
        vertex_map=(1, 0),
        edge_map=((2, 1), (3, 1), (0, 1), (1, 1)),
        face_map=((1, 0, 0), (0, 0, 0)),
    )
    act = GroupAction(x, [swap])
    o = orbihedron_from_action(x, act)
    assert euler_characteristic(o) == F(x.euler_characteristic(), 2)
    assert set(o.vertex_weights) == {F(1)}  # free action
    assert gauss_bonnet(o).holds


def test_reflection_action_weights():
    n = 6
    x = wheel_complex(n, angles=wheel_flat_angles(n))
    act = GroupAction(x, [wheel_reflection_map(x, n)])
    assert act.order == 2
    o = orbihedron_from_action(x, act)
    # axis vertices (rim 1 and rim 4) and the center are fixed
    assert o.vertex_weights.count(F(1, 2)) == 3
    assert gauss_bonnet(o).holds


def test_inversion_rejected():
    # reflection through an edge axis of a square flips two edges
    sq = ngon_disk(4, euclidean=False)
    from orbicurv.complex2 import CellularMap

    with pytest.raises(InvalidActionError):
        GroupAction(
            sq,
            [
                CellularMap(
                    source=sq,
                    target=sq,
                    vertex_map=(1, 0, 3, 2),
                    edge_map=((0, -1), (3, -1), (2, -1), (1, -1)),
                    face_map=((0, 1, 1),),
                )
            ],
        )


def test_vertex_curvature_matches_link_curvature():
    for x in (torus_complex(), tetrahedron_sphere(), wheel_complex(5)):
        o = trivial_orbihedron(x)
        for v in range(x.num_vertices):
            assert vertex_curvature(o, v) == graph_curvature(link(x, v))


def test_gauss_bonnet_random_weighted():
    rng = random.Random(2024)
    done = 0
    while done < 60:
        x = random_two_complex(rng)
        if not x.fully_angled():
            continue
        o = Orbihedron(
            quotient=x,
            vertex_weights=tuple(
                F(1, rng.randint(1, 6)) for _ in range(x.num_vertices)
            ),
            edge_weights=tuple(F(1, rng.randint(1, 6)) for _ in range(x.num_edges)),
            face_weights=tuple(F(1, rng.randint(1, 6)) for _ in range(x.num_faces)),
        )
        rep = gauss_bonnet(o)
        assert rep.residual == 0
        done += 1


def test_weight_validation():
    x = TwoComplex(1, [], [], [])
    with pytest.raises(InvalidComplexError):
        Orbihedron(x, (F(2, 3),), (), ())


def test_chi_invariant_under_generating_set():
    n = 4
    x = wheel_complex(n, angles=wheel_flat_angles(n))
    rot = wheel_rotation_map(x, n)
    from orbicurv.complex2 import compose_maps

    rot2 = compose_maps(rot, rot)
    rot3 = compose_maps(rot2, rot)
    a1 = GroupAction(x, [rot])
    a2 = GroupAction(x, [rot2, rot3])
    assert a1.order == a2.order == 4
    o1 = orbihedron_from_action(x, a1)
    o2 = orbihedron_from_action(x, a2)
    assert euler_characteristic(o1) == euler_characteristic(o2)
