"""Weighted quotient complexes and the combinatorial Gauss-Bonnet audit.

An orbihedron is a 2-complex together with one rational weight per cell,
the reciprocal of the stabilizer order of a cell in that orbit (weight 0
encodes an infinite stabilizer).  Corner weights equal the weight of the
corner's face; arista weights equal the weight of the arista's 1-cell.

The Gauss-Bonnet report computes both sides of

    2 pi chi(G, X)  =  sum of vertex curvatures + sum of face curvatures

independently (chi from the weights, curvatures from links) and records the
exact residual.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complex2 import TwoComplex
from .errors import InvalidActionError, InvalidComplexError
from .groups import GroupAction
from .sections import face_curvature_plain

F = Fraction


def _check_weight(w: Fraction) -> Fraction:
    w = F(w)
    if w == 0:
        return w  # infinite stabilizer
    if w.numerator != 1:
        raise InvalidComplexError(f"weight {w} is not 0 or 1/n")
    return w


@dataclass(frozen=True)
class Orbihedron:
    """A quotient 2-complex with stabilizer-reciprocal weights per cell."""

    quotient: TwoComplex
    vertex_weights: tuple[Fraction, ...]
    edge_weights: tuple[Fraction, ...]
    face_weights: tuple[Fraction, ...]

    def __post_init__(self):
        x = self.quotient
        if (
            len(self.vertex_weights) != x.num_vertices
            or len(self.edge_weights) != x.num_edges
            or len(self.face_weights) != x.num_faces
        ):
            raise InvalidComplexError("weight lists do not match cell counts")
        object.__setattr__(
            self, "vertex_weights", tuple(_check_weight(w) for w in self.vertex_weights)
        )
        object.__setattr__(
            self, "edge_weights", tuple(_check_weight(w) for w in self.edge_weights)
        )
        object.__setattr__(
            self, "face_weights", tuple(_check_weight(w) for w in self.face_weights)
        )

    def coherence_warnings(self) -> list[str]:
        """Advisory checks that weights respect stabilizer containment.

        The stabilizer of a cell fixes its boundary cells, so the boundary
        weight must be at least the cell weight.  Violations warn rather
        than fail: the paper asserts only the corner/face identification.
        """
        x = self.quotient
        out = []
        for e, (u, v) in enumerate(x.edges):
            we = self.edge_weights[e]
            for endpoint in {u, v}:
                wv = self.vertex_weights[endpoint]
                if wv > we:
                    out.append(
                        f"vertex {endpoint} weight {wv} exceeds weight {we} "
                        f"of incident edge {e}"
                    )
        for f, word in enumerate(x.faces):
            wf = self.face_weights[f]
            for e, _ in word:
                if self.edge_weights[e] > wf:
                    out.append(
                        f"edge {e} weight {self.edge_weights[e]} exceeds weight "
                        f"{wf} of incident face {f}"
                    )
        return out


def trivial_orbihedron(x: TwoComplex) -> Orbihedron:
    return Orbihedron(
        quotient=x,
        vertex_weights=(F(1),) * x.num_vertices,
        edge_weights=(F(1),) * x.num_edges,
        face_weights=(F(1),) * x.num_faces,
    )


# ---------------------------------------------------------------------------
# curvature and Euler characteristic


def euler_characteristic(o: Orbihedron) -> Fraction:
    return (
        sum(o.vertex_weights, F(0))
        - sum(o.edge_weights, F(0))
        + sum(o.face_weights, F(0))
    )


def vertex_curvature(o: Orbihedron, v: int) -> Fraction:
    """Curvature of a vertex orbit, in pi-units.

    2 w(v) minus the weights of the aristae at v (one per edge-end; a loop
    contributes twice) plus (1 - angle) times the face weight over the
    corners at v.
    """
    x = o.quotient
    if not 0 <= v < x.num_vertices:
        raise InvalidComplexError(f"unknown vertex orbit {v}")
    total = 2 * o.vertex_weights[v]
    for e, _side in x.ends_at(v):
        total -= o.edge_weights[e]
    for f, i in x.corners_at(v):
        total += (1 - x.corner_angle(f, i)) * o.face_weights[f]
    return total


def face_curvature(o: Orbihedron, f: int) -> Fraction:
    """Curvature of a face orbit: (angle sum - (|boundary| - 2)) w(f)."""
    x = o.quotient
    if not 0 <= f < x.num_faces:
        raise InvalidComplexError(f"unknown face orbit {f}")
    return face_curvature_plain(x, f) * o.face_weights[f]


@dataclass(frozen=True)
class CurvatureReport:
    """Both sides of the Gauss-Bonnet identity, exactly."""

    vertex_curvatures: tuple[Fraction, ...]
    face_curvatures: tuple[Fraction, ...]
    chi: Fraction
    lhs: Fraction  # 2 chi, pi-units
    rhs: Fraction  # sum of all curvatures, pi-units
    residual: Fraction

    @property
    def holds(self) -> bool:
        return self.residual == 0


def gauss_bonnet(o: Orbihedron) -> CurvatureReport:
    if not o.quotient.fully_angled():
        raise InvalidComplexError("Gauss-Bonnet requires a fully angled complex")
    vcurv = tuple(vertex_curvature(o, v) for v in range(o.quotient.num_vertices))
    fcurv = tuple(face_curvature(o, f) for f in range(o.quotient.num_faces))
    chi = euler_characteristic(o)
    lhs = 2 * chi
    rhs = sum(vcurv, F(0)) + sum(fcurv, F(0))
    return CurvatureReport(
        vertex_curvatures=vcurv,
        face_curvatures=fcurv,
        chi=chi,
        lhs=lhs,
        rhs=rhs,
        residual=lhs - rhs,
    )


# ---------------------------------------------------------------------------
# quotients of explicit actions


def orbihedron_from_action(x: TwoComplex, action: GroupAction) -> Orbihedron:
    """Quotient complex with one cell per orbit and orbit-stabilizer weights.

    Attaching words are transported through orbit representatives; the sign
    carrying an edge onto its representative is well defined because the
    action has no inversions.
    """
    if action.carrier != x:
        raise InvalidActionError("action does not act on the given complex")
    elements = action.elements
    order = len(elements)

    vorbits = action.vertex_orbits()
    eorbits = action.edge_orbits()
    forbits = action.face_orbits()
    vrep = {}
    for i, orbit in enumerate(vorbits):
        for v in orbit:
            vrep[v] = i
    # edge representative and transport sign
    erep_index = {}
    esign = {}
    for i, orbit in enumerate(eorbits):
        rep = orbit[0]
        for e in orbit:
            erep_index[e] = i
            for g in elements:
                img, sign = g.edge_map[e]
                if img == rep:
                    esign[e] = sign
                    break
    new_edges = []
    for orbit in eorbits:
        u, v = x.edges[orbit[0]]
        new_edges.append((vrep[u], vrep[v]))
    new_faces = []
    new_angles = []
    for orbit in forbits:
        rep = orbit[0]
        word = tuple(
            (erep_index[e], s * esign[e]) for e, s in x.faces[rep]
        )
        new_faces.append(word)
        ang = x.angles[rep]
        new_angles.append(None if ang is None else tuple(ang))
    quotient = TwoComplex(len(vorbits), new_edges, new_faces, new_angles)
    return Orbihedron(
        quotient=quotient,
        vertex_weights=tuple(F(1, order // len(o)) for o in vorbits),
        edge_weights=tuple(F(1, order // len(o)) for o in eorbits),
        face_weights=tuple(F(1, order // len(o)) for o in forbits),
    )
