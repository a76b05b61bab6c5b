"""Finite group actions on complexes and graphs.

Groups are always handled as explicit element lists obtained by closing a
generating set under composition, with a configurable element cap.  Orbits
and stabilizer orders come from orbit-stabilizer counting; subgroup
enumeration is a breadth-first closure over generated subgroups.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .complex2 import CellularMap, TwoComplex, compose_maps, identity_map, link
from .errors import GroupCapError, InvalidActionError
from .transforms import corner_image

DEFAULT_GROUP_CAP = 10_000


def close_group(generators, identity, compose, key, cap=DEFAULT_GROUP_CAP):
    """Deterministic closure of ``generators`` under ``compose``.

    ``key`` must produce a hashable canonical form.  Raises
    :class:`GroupCapError` when the closure exceeds ``cap`` elements.
    """
    elements = {key(identity): identity}
    frontier = [identity]
    gens = list(generators)
    while frontier:
        next_frontier = []
        for g in frontier:
            for h in gens:
                prod = compose(h, g)
                k = key(prod)
                if k not in elements:
                    if len(elements) >= cap:
                        raise GroupCapError(
                            f"group closure exceeded cap of {cap} elements"
                        )
                    elements[k] = prod
                    next_frontier.append(prod)
        frontier = next_frontier
    return [elements[k] for k in sorted(elements)]


def orbits_of(indices: range, images: Callable[[object, int], int], elements) -> list[list[int]]:
    """Orbits of ``indices`` under the element list, sorted by min element."""
    seen = set()
    out = []
    for i in indices:
        if i in seen:
            continue
        orbit = sorted({images(g, i) for g in elements})
        seen.update(orbit)
        out.append(orbit)
    out.sort(key=lambda o: o[0])
    return out


# ---------------------------------------------------------------------------
# actions on 2-complexes


def map_key(m: CellularMap):
    fm = tuple(
        (f, r % len(m.target.faces[f]), p) for (f, r, p) in m.face_map
    )
    return (m.vertex_map, m.edge_map, fm)


class GroupAction:
    """Finite cellular action without inversions on a :class:`TwoComplex`.

    Generators are cellular automorphisms; the generated group is enumerated
    eagerly (respecting ``cap``).  "Without inversions" is enforced on every
    element: no edge maps to itself reversed, and an element fixing a face
    setwise fixes its boundary pointwise.
    """

    def __init__(
        self,
        carrier: TwoComplex,
        generators: Sequence[CellularMap] = (),
        cap: int = DEFAULT_GROUP_CAP,
    ):
        self.carrier = carrier
        self.generators = list(generators)
        for g in self.generators:
            if g.source != carrier or g.target != carrier:
                raise InvalidActionError("generator is not a self-map of the carrier")
            if not g.is_bijective():
                raise InvalidActionError("generator is not an automorphism")
            if carrier.fully_angled():
                for f, (img, rot, refl) in enumerate(g.face_map):
                    length = len(carrier.faces[f])
                    for i in range(length):
                        j = corner_image((rot, refl), i, length)
                        if carrier.corner_angle(f, i) != carrier.corner_angle(img, j):
                            raise InvalidActionError(
                                "generator does not preserve angles"
                            )
        self.elements: list[CellularMap] = close_group(
            self.generators,
            identity_map(carrier),
            compose_maps,
            map_key,
            cap=cap,
        )
        self._check_no_inversions()

    def _check_no_inversions(self):
        for g in self.elements:
            for e, (img, sign) in enumerate(g.edge_map):
                if img == e and sign < 0:
                    raise InvalidActionError(
                        f"action has an inversion: an element reverses edge {e}"
                    )
            for f, (img, rot, refl) in enumerate(g.face_map):
                length = len(self.carrier.faces[f])
                if img == f and (rot % length, refl) != (0, 0):
                    raise InvalidActionError(
                        f"action has an inversion: an element rotates face {f}"
                    )

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1

    def vertex_orbits(self) -> list[list[int]]:
        return orbits_of(
            range(self.carrier.num_vertices),
            lambda g, v: g.vertex_map[v],
            self.elements,
        )

    def edge_orbits(self) -> list[list[int]]:
        return orbits_of(
            range(self.carrier.num_edges),
            lambda g, e: g.edge_map[e][0],
            self.elements,
        )

    def face_orbits(self) -> list[list[int]]:
        return orbits_of(
            range(self.carrier.num_faces),
            lambda g, f: g.face_map[f][0],
            self.elements,
        )

    def vertex_stabilizer(self, v: int) -> list[CellularMap]:
        return [g for g in self.elements if g.vertex_map[v] == v]

    def edge_sign_to_representative(self, e: int) -> tuple[int, int]:
        """Orbit representative of ``e`` and the orientation sign carrying it.

        Well-defined for actions without inversions.
        """
        rep = min(g.edge_map[e][0] for g in self.elements)
        for g in self.elements:
            img, sign = g.edge_map[e]
            if img == rep:
                return rep, sign
        raise AssertionError("unreachable")

    def induced_link_action(self, v: int) -> "GraphAction":
        """Action of the stabilizer of ``v`` on ``link(v)``."""
        lk = link(self.carrier, v)
        end_index = {lab[1:]: i for i, lab in enumerate(lk.vertex_labels)}
        corner_index = {lab[1:]: i for i, lab in enumerate(lk.edge_labels)}
        perms = []
        for g in self.vertex_stabilizer(v):
            vperm = []
            for lab in lk.vertex_labels:
                end = g.apply_end(lab[1:])
                vperm.append(end_index[end])
            eperm = []
            for lab in lk.edge_labels:
                f, i = lab[1:]
                gf, gi, _ = g.apply_corner(f, i)
                eperm.append(corner_index[(gf, gi)])
            perms.append((tuple(vperm), tuple(eperm)))
        gens = sorted(set(perms))
        return GraphAction(lk, generators=gens, already_closed=True, elements=perms)


def trivial_action(x: TwoComplex) -> GroupAction:
    return GroupAction(x, [])


# ---------------------------------------------------------------------------
# actions on angled graphs

Perm = tuple[tuple[int, ...], tuple[int, ...]]


def perm_compose(a: Perm, b: Perm) -> Perm:
    """(a . b): apply b first, then a."""
    av, ae = a
    bv, be = b
    return (tuple(av[x] for x in bv), tuple(ae[x] for x in be))


def perm_identity(nv: int, ne: int) -> Perm:
    return (tuple(range(nv)), tuple(range(ne)))


class GraphAction:
    """Finite action on an :class:`~orbicurv.complex2.AngledGraph`.

    Elements are pairs ``(vertex_perm, edge_perm)``; incidence and angles
    must be preserved.
    """

    def __init__(
        self,
        carrier,
        generators: Sequence[Perm] = (),
        cap: int = DEFAULT_GROUP_CAP,
        already_closed: bool = False,
        elements: Optional[Sequence[Perm]] = None,
    ):
        self.carrier = carrier
        self.generators = [
            (tuple(v), tuple(e)) for v, e in generators
        ]
        for vperm, eperm in self.generators:
            self._validate_perm(vperm, eperm)
        if already_closed and elements is not None:
            self.elements = sorted(set(elements))
        else:
            ident = perm_identity(carrier.num_vertices, carrier.num_edges)
            self.elements = close_group(
                self.generators, ident, perm_compose, lambda p: p, cap=cap
            )
        for vperm, eperm in self.elements:
            self._validate_perm(vperm, eperm)

    def _validate_perm(self, vperm, eperm):
        g = self.carrier
        if sorted(vperm) != list(range(g.num_vertices)) or sorted(eperm) != list(
            range(g.num_edges)
        ):
            raise InvalidActionError("graph action element is not a permutation")
        for e, (u, v) in enumerate(g.edges):
            iu, iv = g.edges[eperm[e]]
            if {vperm[u], vperm[v]} != {iu, iv}:
                raise InvalidActionError("graph action does not preserve incidence")
            if g.angles[e] != g.angles[eperm[e]]:
                raise InvalidActionError("graph action does not preserve angles")

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1

    def vertex_orbits(self) -> list[list[int]]:
        return orbits_of(
            range(self.carrier.num_vertices), lambda g, v: g[0][v], self.elements
        )

    def edge_orbits(self) -> list[list[int]]:
        return orbits_of(
            range(self.carrier.num_edges), lambda g, e: g[1][e], self.elements
        )

    def stabilizer_order_vertex(self, v: int) -> int:
        return sum(1 for g in self.elements if g[0][v] == v)

    def stabilizer_order_edge(self, e: int) -> int:
        return sum(1 for g in self.elements if g[1][e] == e)

    def restrict_elements(self, elements: Sequence[Perm]) -> "GraphAction":
        return GraphAction(
            self.carrier,
            generators=sorted(set(elements)),
            already_closed=True,
            elements=list(elements),
        )


def trivial_graph_action(graph) -> GraphAction:
    return GraphAction(graph, [])


# ---------------------------------------------------------------------------
# subgroup lattice


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as explicit elements plus the generators that found it."""

    elements: tuple
    generators: tuple

    @property
    def order(self) -> int:
        return len(self.elements)


def subgroup_lattice(
    elements: Sequence, compose, identity, cap: int = DEFAULT_GROUP_CAP
) -> list[Subgroup]:
    """All subgroups of the finite group given by ``elements``.

    Breadth-first closure: extend each known subgroup by each element not in
    it and close under composition; deduplicate on element sets.  Sorted by
    (order, canonical element tuple).
    """
    if len(elements) > cap:
        raise GroupCapError(f"group exceeds cap ({len(elements)} elements)")
    all_sorted = sorted(elements)
    trivial = (identity,)
    found: dict[tuple, tuple] = {trivial: ()}
    frontier = [trivial]
    while frontier:
        next_frontier = []
        for sub in frontier:
            sub_set = set(sub)
            gens = found[sub]
            for g in all_sorted:
                if g in sub_set:
                    continue
                new_gens = gens + (g,)
                closure = close_group(
                    list(new_gens), identity, compose, lambda p: p, cap=cap
                )
                key = tuple(sorted(closure))
                if key not in found:
                    found[key] = new_gens
                    next_frontier.append(key)
        frontier = next_frontier
    subs = [
        Subgroup(elements=key, generators=found[key]) for key in found
    ]
    subs.sort(key=lambda s: (s.order, s.elements))
    return subs


def graph_subgroups(action: GraphAction, cap: int = DEFAULT_GROUP_CAP) -> list[Subgroup]:
    ident = perm_identity(action.carrier.num_vertices, action.carrier.num_edges)
    return subgroup_lattice(action.elements, perm_compose, ident, cap=cap)
