"""Section enumeration, curvature, certification, bounds, edge augmentation."""

import random
from fractions import Fraction

import pytest

from orbicurv.complex2 import AngledGraph, link
from orbicurv.errors import OrbicurvError
from orbicurv.groups import GraphAction, graph_subgroups, trivial_graph_action
from orbicurv.sections import (
    BoundsReport,
    Section,
    angle_distance,
    augment_graph,
    brute_force_regular_sections,
    certify_generalized,
    certify_sectional,
    check_edge_augmentation,
    classify_section_sign,
    curvature_bounds,
    enumerate_regular_sections,
    graph_curvature,
    negative_orbit_bound,
    section_curvature,
    section_from_edge_mask,
)

from helpers import (
    cycle_graph,
    ngon_disk,
    random_multigraph,
    theta_graph,
    torus_complex,
    triangle_graph,
    wedge_of_loops,
)

F = Fraction


# -- curvature ----------------------------------------------------------------


def test_triangle_curvature_zero():
    assert graph_curvature(triangle_graph(F(2, 3))) == 0


def test_single_vertex_positive():
    g = AngledGraph(1, ())
    assert graph_curvature(g) == 1  # pi: the positive case


def test_two_swapped_vertices():
    g = AngledGraph(2, ())
    act = GraphAction(g, [((1, 0), ())])
    assert graph_curvature(g, act) == 0  # 2*(1/2) - 1


def test_intro_formula_agreement():
    rng = random.Random(7)
    for _ in range(60):
        g = random_multigraph(rng)
        w = graph_curvature(g)
        chi = g.num_vertices - g.num_edges
        assert w == 2 - chi - sum(g.angles, F(0))


# -- enumeration ---------------------------------------------------------------


def test_triangle_has_one_section():
    secs = enumerate_regular_sections(triangle_graph())
    assert len(secs) == 1
    assert secs[0].edges == (0, 1, 2)


def test_theta_has_four_sections():
    secs = enumerate_regular_sections(theta_graph())
    assert len(secs) == 4


def test_edgeless_graph_has_no_sections():
    assert enumerate_regular_sections(AngledGraph(3, ())) == []


def test_enumeration_matches_brute_force():
    rng = random.Random(21)
    for _ in range(40):
        g = random_multigraph(rng, max_vertices=5, max_edges=8)
        fast = enumerate_regular_sections(g)
        slow = brute_force_regular_sections(g)
        assert [(s.vertices, s.edges) for s in fast] == [
            (s.vertices, s.edges) for s in slow
        ]


def test_regular_sections_contain_cycles():
    # spurless + connected + an edge forces minimum valence 2, hence a cycle
    rng = random.Random(3)
    for _ in range(20):
        g = random_multigraph(rng, max_vertices=5, max_edges=9)
        for sec in enumerate_regular_sections(g):
            assert all(v >= 2 for v in sec.valences().values())


# -- orbit identity -------------------------------------------------------------


def rotation_blowup(rng, k: int):
    """Random graph with a free-ish Z/k rotation action."""
    n_vorbits = rng.randint(1, 3)
    nv = n_vorbits * k
    # vertex i of orbit o has id o*k + i; rotation adds 1 mod k
    vperm = tuple(o * k + (i + 1) % k for o in range(n_vorbits) for i in range(k))
    edges = []
    angles = []
    n_eorbits = rng.randint(1, 3)
    for _ in range(n_eorbits):
        o1, o2 = rng.randrange(n_vorbits), rng.randrange(n_vorbits)
        shift = rng.randrange(k)
        a = F(rng.randint(0, 8), rng.choice([1, 2, 4]))
        for i in range(k):
            edges.append((o1 * k + i, o2 * k + (i + shift) % k))
            angles.append(a)
    # edge orbit o occupies indices o*k .. o*k + k - 1; rotation shifts by one
    eperm = tuple(
        (i // k) * k + (i % k + 1) % k for i in range(len(edges))
    )
    g = AngledGraph(nv, tuple(edges), tuple(angles))
    return g, GraphAction(g, [(vperm, eperm)])


def test_orbit_identity():
    rng = random.Random(11)
    for _ in range(30):
        k = rng.choice([2, 3, 4])
        g, act = rotation_blowup(rng, k)
        full = Section(g, tuple(range(g.num_vertices)), tuple(range(g.num_edges)))
        w_triv = section_curvature(full)
        w_act = section_curvature(full, act)
        assert act.order * w_act == w_triv


# -- certification ---------------------------------------------------------------


def test_torus_certified_at_zero():
    cert = certify_sectional(torus_complex(), 0)
    assert cert.outcome == "certified"
    assert cert.max_section_curvature[0] == 0


def test_torus_violated_below_zero():
    cert = certify_sectional(torus_complex(), F(-1, 10))
    assert cert.outcome == "violated"
    v, sec, w, _ = cert.violation
    assert v == 0
    assert w == 0
    assert len(sec.edges) == 4


def test_seven_gon_vacuous():
    cert = certify_sectional(ngon_disk(7), F(-100))
    assert cert.outcome == "vacuous"
    assert cert.is_certified


def test_positive_face_violates():
    x = ngon_disk(4, euclidean=False)
    from orbicurv.complex2 import TwoComplex

    bad = TwoComplex(
        x.num_vertices, x.edges, x.faces, [(F(3, 4),) * 4]
    )  # angle sum 3 > 2
    cert = certify_sectional(bad, 0)
    assert cert.outcome == "violated"
    assert cert.face_violation == (0, F(1))


def test_generalized_trivial_matches_plain():
    from orbicurv.groups import trivial_action

    for x in (torus_complex(), ngon_disk(5)):
        plain = certify_sectional(x, 0)
        gen = certify_generalized(x, trivial_action(x), 0)
        assert plain.outcome == gen.outcome
        assert plain.max_section_curvature == gen.max_section_curvature


# -- bounds ----------------------------------------------------------------------


def test_torus_bounds():
    rep = curvature_bounds(torus_complex())
    assert rep.a_pos == 1
    assert rep.a_neg == F(-1, 2)


def test_wedge_bounds():
    rep = curvature_bounds(wedge_of_loops(2))
    assert rep.a_pos == 1
    assert rep.a_neg == -1


def test_single_edge_bounds():
    # links are single vertices: the only section has curvature pi
    from orbicurv.complex2 import TwoComplex

    x = TwoComplex(2, [(0, 1)], [], [])
    rep = curvature_bounds(x)
    assert rep.a_pos == 1
    assert rep.a_neg == -1  # default: no negative sections


def test_isolated_vertex_bounds_defaults():
    # a truly empty link admits no nonempty section at all
    from orbicurv.complex2 import TwoComplex

    x = TwoComplex(1, [], [], [])
    rep = curvature_bounds(x)
    assert rep.a_pos == 0
    assert rep.a_neg == -1


def test_negative_orbit_bound():
    assert negative_orbit_bound(F(-2), F(1), 0, F(-1, 6)) == 24
    assert negative_orbit_bound(F(0), F(1), 3, F(-1)) == 3
    with pytest.raises(OrbicurvError):
        negative_orbit_bound(F(-2), F(1), 0, F(0))


# -- edge augmentation -------------------------------------------------------------


def test_augmentation_nonpositive():
    # two-edge path, angles 1/2 each, new edge joins the endpoints at angle pi
    g = AngledGraph(3, ((0, 1), (1, 2)), (F(1, 2), F(1, 2)))
    assert angle_distance(g, 0, 2) == 1
    assert check_edge_augmentation(g, (0, 2), 1, 0) == "nonpositive"


def test_augmentation_strict():
    g = AngledGraph(3, ((0, 1), (1, 2)), (F(2, 3), F(2, 3)))
    assert angle_distance(g, 0, 2) == F(4, 3)
    assert check_edge_augmentation(g, (0, 2), F(5, 6), F(-1, 3)) == "strictly_negative"
    assert check_edge_augmentation(g, (0, 2), F(3, 4), F(-1, 3)) == "strictly_negative"
    # theta = 1 + alpha exactly fails the strict branch and theta != pi
    assert check_edge_augmentation(g, (0, 2), F(2, 3), F(-1, 3)) == "inapplicable"


def test_augmentation_short_distance_inapplicable():
    g = AngledGraph(2, ((0, 1),), (F(1, 2),))
    assert check_edge_augmentation(g, (0, 1), 1, 0) == "inapplicable"


def test_augmentation_matches_recertification():
    rng = random.Random(5)
    checked = 0
    while checked < 25:
        g = random_multigraph(rng, max_vertices=5, max_edges=7)
        secs = enumerate_regular_sections(g)
        if not secs:
            continue
        alpha = max(section_curvature(s) for s in secs)
        if alpha > 0:
            # push all angles up to reach nonpositive curvature
            bump = alpha
            g = AngledGraph(
                g.num_vertices, g.edges, tuple(a + bump for a in g.angles)
            )
            alpha = max(
                section_curvature(s) for s in enumerate_regular_sections(g)
            )
        assert alpha <= 0
        u = rng.randrange(g.num_vertices)
        v = rng.randrange(g.num_vertices)
        d = angle_distance(g, u, v)
        theta = rng.choice([F(1), F(1) + F(1, 8), F(7, 8), 1 + alpha / 2 if alpha else F(1)])
        verdict = check_edge_augmentation(g, (u, v), theta, alpha)
        aug = augment_graph(g, (u, v), theta)
        new_secs = enumerate_regular_sections(aug)
        new_max = max((section_curvature(s) for s in new_secs), default=None)
        if verdict == "nonpositive":
            assert new_max is None or new_max <= 0
        elif verdict == "strictly_negative":
            assert new_max is None or new_max < 0
        checked += 1


# -- sign classification -------------------------------------------------------------


def test_classify_single_vertex_positive():
    g = AngledGraph(3, ((0, 1),), (F(1, 2),))
    sec = Section(g, (2,), ())
    rep = classify_section_sign(sec)
    assert rep.sign == "positive"
    assert rep.witness == "single vertex, finite group"
    assert rep.consistent


def test_classify_two_vertices_zero():
    g = AngledGraph(4, ((0, 1),), (F(1, 2),))
    sec = Section(g, (2, 3), ())
    rep = classify_section_sign(sec, alpha=F(-1, 4))
    assert rep.sign == "zero"
    assert rep.witness == "two vertices, trivial action"
    assert rep.consistent


def test_classify_edge_sections_negative_under_alpha():
    g = cycle_graph(4, angle=F(9, 8))
    sec = section_from_edge_mask(g, 0b1111)
    rep = classify_section_sign(sec, alpha=F(-1, 4))
    assert rep.sign == "negative"
    assert rep.curvature == 2 - 4 + 4 * (1 - F(9, 8))
    assert rep.consistent


def test_classify_rejects_spur():
    g = AngledGraph(2, ((0, 1),), (F(1, 2),))
    sec = Section(g, (0, 1), (0,))
    with pytest.raises(OrbicurvError):
        classify_section_sign(sec)
