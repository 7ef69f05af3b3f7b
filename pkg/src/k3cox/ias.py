"""Integral-affine spheres from chamber vectors.

The sphere is presented concretely: the moment polygon of the 18-gon
surface, three surgery triangles cut from the sides 0, 6 and 12 and
reglued by shears, and the double across the equator.  All coordinates
are exact rationals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .chamber import Chamber, NotInCone
from .diagrams import ShapeLabel, classify, components_of, shape
from .lattice import AVector, LEAF_CORNER, RAY_SIDE, RootSystem
from .sl2 import SingularityProfile, profile, table_profile

SELF_INTERSECTIONS = (3, 1, 4, 1, 4, 1) * 3
CUT_SIDE_OF_LEAF = LEAF_CORNER              # 18 -> side 0, 19 -> 6, 20 -> 12
OPPOSITE_SIDE_OF_RAY = RAY_SIDE             # 21 -> side 9, 22 -> 15, 23 -> 3
LEAF_OF_SIDE = {0: 18, 6: 19, 12: 20}
RAY_OF_SIDE = {0: 21, 6: 22, 12: 23}        # ray paired with the cut on that side

# null-vector evaluation weights for the circumference directions
_CIRCUMFERENCE_WEIGHTS = {
    "3-12": {20: 1, 23: 1},
    "8-16": {9: 1, 10: 2, 11: 3, 12: 4, 13: 3, 14: 2, 15: 1, 20: 2},
    "2-4": {3: 1, 23: 1},
    "equator": {i: 1 for i in range(18)},
}


class ClosureFailure(Exception):
    """The ray recurrence does not close up (wrong self-intersection data)."""


class NotClosed(Exception):
    """Side lengths do not satisfy the closing condition."""


class TrianglesOverlap(Exception):
    """Surgery triangles do not fit disjointly inside the polygon."""


class ZeroVolume(Exception):
    """The vector has norm <= 0, so there is no sphere."""


class Degenerate(Exception):
    """The construction degenerates (interval, or no lattice placement)."""


def _rot(v):
    """Inward normal -> counterclockwise edge direction."""
    return (v[1], -v[0])


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _add(p, q):
    return (p[0] + q[0], p[1] + q[1])


def _mul(k, v):
    return (k * v[0], k * v[1])


@dataclass(frozen=True)
class ToricFan18:
    rays: tuple
    d: tuple = SELF_INTERSECTIONS

    def to_json(self):
        return {"rays": [list(r) for r in self.rays], "d": list(self.d)}


def build_fan() -> ToricFan18:
    """Rays of the 18-gon fan from the self-intersection recurrence."""
    v = [(1, 0), (0, 1)]
    for i in range(1, 19):
        d = SELF_INTERSECTIONS[i % 18]
        v.append((d * v[i][0] - v[i - 1][0], d * v[i][1] - v[i - 1][1]))
    if v[18] != v[0] or v[19] != v[1]:
        raise ClosureFailure(f"recurrence closes badly: {v[18:]}")
    rays = tuple(v[:18])
    for i in range(18):
        if _cross(rays[i], rays[(i + 1) % 18]) != 1:
            raise ClosureFailure(f"rays {i}, {i+1} are not a unimodular basis")
    if sum(SELF_INTERSECTIONS) != 3 * 18 - 12:
        raise ClosureFailure("self-intersection sum violates the closed-fan identity")
    return ToricFan18(rays)


FAN = build_fan()
EDGE_DIRS = tuple(_rot(r) for r in FAN.rays)


@dataclass(frozen=True)
class Polygon:
    """Moment polygon: corner i sits between sides i-1 and i."""

    corners: tuple                 # 18 points; corners[i] starts side i
    side_lengths: tuple            # 18 rationals

    def side_points(self, i):
        return self.corners[i], self.corners[(i + 1) % 18]

    def support_distance(self, i, p):
        """Lattice distance of p from the support line of side i (inward > 0)."""
        return _cross(EDGE_DIRS[i], _sub(p, self.corners[i]))

    def contains(self, p) -> bool:
        return all(
            self.support_distance(i, p) >= 0
            for i in range(18)
            if self.side_lengths[i] > 0
        )

    def lattice_volume(self):
        total = Fraction(0)
        for i in range(18):
            a, b = self.corners[i], self.corners[(i + 1) % 18]
            total += _cross(a, b)
        return total

    def to_json(self):
        def num(x):
            f = Fraction(x)
            return int(f) if f.denominator == 1 else str(f)

        return {
            "corners": [[num(p[0]), num(p[1])] for p in self.corners],
            "side_lengths": [num(x) for x in self.side_lengths],
        }


def moment_polytope(bbar) -> Polygon:
    """Polygon with side i of lattice length bbar[i] and inward normal ray i."""
    lengths = [Fraction(x) for x in bbar]
    if len(lengths) != 18 or any(x < 0 for x in lengths):
        raise NotClosed("need 18 nonnegative side lengths")
    total = (Fraction(0), Fraction(0))
    for i in range(18):
        total = _add(total, _mul(lengths[i], EDGE_DIRS[i]))
    if total != (0, 0):
        raise NotClosed(f"side vectors sum to {total}, not zero")
    pts = [(Fraction(0), Fraction(0))]
    for i in range(17):
        pts.append(_add(pts[-1], _mul(lengths[i], EDGE_DIRS[i])))
    return Polygon(tuple(pts), tuple(lengths))


def _inward_step(side, window):
    """Lattice vector one level above side, with along-side part in window.

    window is "centered" (component in [-1/2, 1/2)) or "vertex"
    (component in [0, 1)).
    """
    w = EDGE_DIRS[side]
    # solve cross(w, u) = 1
    a, b = w
    # extended gcd for a*y - b*x = 1
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    assert old_r in (1, -1)
    y, x = old_s, -old_t
    if old_r == -1:
        x, y = -x, -y
    u = (x, y)
    assert _cross(w, u) == 1
    alpha = Fraction(u[0] * w[0] + u[1] * w[1], w[0] ** 2 + w[1] ** 2)
    if window == "centered":
        k = (alpha + Fraction(1, 2)).__floor__()
    else:
        k = alpha.__floor__()
    return _sub(u, _mul(k, w))


@dataclass(frozen=True)
class Cut:
    side: int
    size: Fraction
    base_start: tuple
    base_end: tuple
    apex: tuple

    @property
    def axis_direction(self):
        """Monodromy-invariant direction: parallel to the cut side."""
        return EDGE_DIRS[self.side]

    def to_json(self):
        def num(x):
            f = Fraction(x)
            return int(f) if f.denominator == 1 else str(f)

        return {
            "side": self.side,
            "size": num(self.size),
            "base": [[num(c) for c in self.base_start], [num(c) for c in self.base_end]],
            "apex": [num(c) for c in self.apex],
        }


@dataclass(frozen=True)
class SymingtonPolytope:
    a: AVector
    polygon: Polygon
    cuts: tuple                   # three Cut records (size possibly 0)
    placement: str

    def cut_of_side(self, side) -> Cut:
        return next(c for c in self.cuts if c.side == side)

    def lattice_volume(self):
        return self.polygon.lattice_volume() - sum(c.size ** 2 for c in self.cuts)

    def to_json(self):
        return {
            "polygon": self.polygon.to_json(),
            "cuts": [c.to_json() for c in self.cuts],
            "placement": self.placement,
        }


def _triangles_overlap(t1, t2) -> bool:
    """Exact separating-axis test: do two triangles share interior points?"""
    if not t1 or not t2:
        return False

    def axes(tri):
        n = len(tri)
        return [_rot(_sub(tri[(i + 1) % n], tri[i])) for i in range(n)]

    for axis in axes(t1) + axes(t2):
        p1 = [axis[0] * p[0] + axis[1] * p[1] for p in t1]
        p2 = [axis[0] * p[0] + axis[1] * p[1] for p in t2]
        if max(p1) <= min(p2) or max(p2) <= min(p1):
            return False
    return True


def symington(a: AVector, placement: str = "symmetric") -> SymingtonPolytope:
    """Moment polygon with three shear surgeries of sizes b18, b19, b20."""
    if any(x < 0 for x in a.a):
        raise NotInCone("a-vector has a negative coordinate")
    if a.norm() <= 0:
        raise ZeroVolume("norm must be positive")
    if placement not in ("symmetric", "vertex"):
        raise ValueError(f"unknown placement {placement!r}")
    b = a.b
    poly = moment_polytope(a.bbar)
    cuts = []
    for side, leaf in LEAF_OF_SIDE.items():
        size = b[leaf]
        length = poly.side_lengths[side]
        if size > length:
            raise TrianglesOverlap(f"cut of size {size} exceeds side {side}")
        start_corner = poly.corners[side]
        w = EDGE_DIRS[side]
        if placement == "symmetric":
            base_start = _add(start_corner, _mul((length - size) / 2, w))
            u = _inward_step(side, "centered")
            apex = _add(_add(start_corner, _mul(length / 2, w)), _mul(size, u))
        else:
            base_start = start_corner
            u = _inward_step(side, "vertex")
            apex = _add(start_corner, _mul(size, u))
        base_end = _add(base_start, _mul(size, w))
        cuts.append(Cut(side, size, base_start, base_end, apex))
    tris = [
        (c.base_start, c.base_end, c.apex) if c.size > 0 else None for c in cuts
    ]
    for c, tri in zip(cuts, tris):
        if tri is None:
            continue
        for p in tri:
            if not poly.contains(p):
                raise TrianglesOverlap(f"cut on side {c.side} leaves the polygon")
    for i in range(3):
        for j in range(i + 1, 3):
            if tris[i] and tris[j] and _triangles_overlap(tris[i], tris[j]):
                raise TrianglesOverlap(
                    f"cuts on sides {cuts[i].side} and {cuts[j].side} overlap"
                )
    return SymingtonPolytope(a, poly, tuple(cuts), placement)


# ---------------------------------------------------------------------------
# singular locus
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cluster:
    """One singular point of the sphere."""

    vertices: tuple               # component of the zero set; () for residual I1
    label: Optional[ShapeLabel]
    singularity: object           # SingularityData
    divisor_rays: tuple
    charge: int
    position: tuple
    plane: str                    # "equator", "north" or "south"
    location: str                 # human-readable anchor

    def to_json(self):
        def num(x):
            f = Fraction(x)
            return int(f) if f.denominator == 1 else str(f)

        return {
            "vertices": list(self.vertices),
            "label": self.label.ascii if self.label else "I1",
            "singularity": self.singularity.to_json(),
            "divisor_rays": list(self.divisor_rays),
            "charge": self.charge,
            "position": [num(self.position[0]), num(self.position[1])],
            "plane": self.plane,
            "location": self.location,
        }


@dataclass(frozen=True)
class SingularLocus:
    clusters: tuple
    coincidences: tuple           # ((kind, cluster_index, cluster_index), ...)

    @property
    def total_charge(self):
        return sum(c.charge for c in self.clusters)


def _descent_point(poly: Polygon, side: int, placement: str):
    """Equator landing point for an interior singularity with zero cut size."""
    length = poly.side_lengths[side]
    w = EDGE_DIRS[side]
    if placement == "symmetric":
        return _add(poly.corners[side], _mul(length / 2, w))
    if length < 2:
        raise Degenerate(
            f"side {side} is too short to host a descended singularity at a lattice point"
        )
    k = min(max(length.__floor__() // 2, 1), int(length) - 1)
    return _add(poly.corners[side], _mul(k, w))


def singular_locus(
    a: AVector, rs: RootSystem, placement: str = "symmetric"
) -> SingularLocus:
    """Singular points of the sphere, clustered by the zero set of a.

    Clusters correspond to the connected components of {i : a_i = 0};
    remaining corner and interior points stay isolated I1's.
    """
    sp = symington(a, placement)
    poly = sp.polygon
    zero = a.zero_set()
    sub = classify(rs, zero)
    if sub.cls != "elliptic":
        raise Degenerate("zero set is not elliptic; the sphere degenerates")

    clusters = []
    used_corners = set()
    used_sides = {}      # cut side -> consuming cluster ("leaf" or "ray")
    for comp in sorted(sub.components, key=min):
        comp_sorted = tuple(sorted(comp))
        label = shape(rs, comp)
        prof: SingularityProfile = table_profile(label)
        cyc = [v for v in comp if v < 18]
        interior = [v for v in comp if v >= 18]
        if cyc:
            chain_start = next(
                v for v in cyc if (v - 1) % 18 not in comp
            )
            position = poly.corners[chain_start]
            n_corners = len(cyc) + 1
            plane, location = "equator", f"corner {chain_start}"
            used_corners.update((v % 18) for v in cyc)
            used_corners.add((chain_start - 1) % 18)
            charge_count = n_corners + 2 * len(interior)
            for v in interior:
                side = CUT_SIDE_OF_LEAF.get(v, OPPOSITE_SIDE_OF_RAY.get(v))
                used_sides[side] = "component"
        else:
            (v,) = interior if len(interior) == 1 else (None,)
            if v is None:
                raise Degenerate(f"unexpected interior component {comp_sorted}")
            if v in CUT_SIDE_OF_LEAF:
                side = CUT_SIDE_OF_LEAF[v]
                position = _descent_point(poly, side, placement)
            else:
                side = OPPOSITE_SIDE_OF_RAY[v]
                cut = sp.cut_of_side({21: 0, 22: 6, 23: 12}[v])
                position = cut.apex
                if poly.support_distance(side, position) != 0:
                    raise Degenerate("section singularity failed to land on its side")
            plane, location = "equator", f"side {side}"
            used_sides[side] = "descent"
            charge_count = 2
        if charge_count != prof.singularity.charge:
            raise Degenerate(
                f"charge bookkeeping broke for {label.ascii}: "
                f"{charge_count} vs {prof.singularity.charge}"
            )
        clusters.append(
            Cluster(
                comp_sorted,
                label,
                prof.singularity,
                prof.divisor_rays,
                prof.singularity.charge,
                position,
                plane,
                location,
            )
        )

    i1 = profile(1, name="I1")
    for corner in range(18):
        # corner between sides corner-1 and corner: untouched iff neither
        # adjacent side collapsed
        if corner in used_corners:
            continue
        clusters.append(
            Cluster(
                (),
                None,
                i1,
                (),
                1,
                poly.corners[corner],
                "equator",
                f"corner {corner}",
            )
        )
    for side in (0, 6, 12):
        if side in used_sides:
            continue
        cut = sp.cut_of_side(side)
        for plane in ("north", "south"):
            clusters.append(
                Cluster((), None, i1, (), 1, cut.apex, plane, f"cut {side}")
            )

    coincidences = _detect_coincidences(a, clusters)
    locus = SingularLocus(tuple(clusters), tuple(coincidences))
    if locus.total_charge != 24:
        raise Degenerate(f"total charge {locus.total_charge} != 24")
    return locus


def _detect_coincidences(a: AVector, clusters):
    """Flag distinct clusters at equal positions; name the known patterns."""
    by_pos = {}
    for idx, c in enumerate(clusters):
        by_pos.setdefault((c.plane, c.position), []).append(idx)
    out = []
    for (_, _), idxs in sorted(by_pos.items(), key=lambda kv: kv[1]):
        if len(idxs) < 2:
            continue
        for i in range(len(idxs)):
            for j in range(i + 1, len(idxs)):
                kind = _classify_coincidence(a, clusters[idxs[i]], clusters[idxs[j]])
                out.append((kind, idxs[i], idxs[j]))
    return out


def _classify_coincidence(a: AVector, c1: Cluster, c2: Cluster):
    """Name a collision: the two listed interior exceptions, the removable
    double singularity, or unexpected."""
    zero = a.zero_set()
    both_interior = not c1.vertices and not c2.vertices and c1.plane != "equator"
    if both_interior:
        for s1, s2 in ((0, 6), (6, 12), (12, 0)):
            leaf1, leaf2 = LEAF_OF_SIDE[s1], LEAF_OF_SIDE[s2]
            short = {(s1 + k) % 18 for k in range((s2 - s1) % 18 + 1)}
            long_ = {(s2 + k) % 18 for k in range((s1 - s2) % 18 + 1)}
            if short <= zero and a.a[leaf1] == a.a[leaf2]:
                return "interior-collision-short-chain"
            ray1, ray2 = RAY_OF_SIDE[s1], RAY_OF_SIDE[s2]
            if long_ <= zero and a.a[ray1] == a.a[ray2]:
                return "interior-collision-long-chain"
        return "unexpected"
    # one interior point descending onto an equator cluster
    cluster, single = (c1, c2) if c1.vertices else (c2, c1)
    if cluster.vertices and not single.vertices:
        # an interior point lands on an equator cluster spanning the cut
        # side and the far leaf (removable by a nodal slide)
        for s1, s2 in ((0, 6), (6, 12), (12, 0), (6, 0), (12, 6), (0, 12)):
            arc = {(s1 + k) % 18 for k in range(8)}
            if arc | {LEAF_OF_SIDE[s2]} <= zero and a.a[LEAF_OF_SIDE[s1]] == a.a[(s1 + 8) % 18]:
                return "removable-double-singularity"
        return "unexpected"
    return "unexpected"


# ---------------------------------------------------------------------------
# the sphere
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EquatorDivisor:
    edges: tuple                  # (side, multiplicity, length)
    self_intersection: int = 18   # recorded constant from the ramification class

    def to_json(self):
        def num(x):
            f = Fraction(x)
            return int(f) if f.denominator == 1 else str(f)

        return {
            "edges": [
                {"side": s, "multiplicity": m, "length": num(l)}
                for s, m, l in self.edges
            ],
            "self_intersection": self.self_intersection,
        }


@dataclass(frozen=True)
class IASphere:
    a: AVector
    polytope: SymingtonPolytope
    locus: SingularLocus
    degenerate: bool = False

    @property
    def clusters(self):
        return self.locus.clusters

    @property
    def total_charge(self):
        return self.locus.total_charge

    def volume(self):
        return 2 * self.polytope.lattice_volume()

    def to_json(self):
        return {
            "a": self.a.to_json(),
            "polytope": self.polytope.to_json(),
            "clusters": [c.to_json() for c in self.clusters],
            "coincidences": [list(c) for c in self.locus.coincidences],
            "volume": int(self.volume()) if Fraction(self.volume()).denominator == 1
            else str(self.volume()),
            "equator": equator_divisor(self).to_json(),
        }


@dataclass(frozen=True)
class IntervalDegeneration:
    """Norm-zero limit: the sphere collapses to an interval."""

    a: AVector
    parabolic_class: str
    degenerate: bool = True

    def to_json(self):
        return {"a": self.a.to_json(), "interval": True,
                "parabolic_class": self.parabolic_class}


def build_sphere(a: AVector, rs: RootSystem, placement: str = "symmetric"):
    """B(a): the doubled Symington polytope, or an interval when norm is 0."""
    if all(x == 0 for x in a.a):
        raise ZeroVolume("zero vector")
    if a.norm() == 0:
        from .chamber import Chamber

        ch = Chamber(rs)
        cone = ch.cone_of(a)
        return IntervalDegeneration(a, cone.parabolic_class)
    sp = symington(a, placement)
    locus = singular_locus(a, rs, placement)
    return IASphere(a, sp, locus)


def double(sp: SymingtonPolytope, rs: RootSystem) -> IASphere:
    """Glue two copies of the Symington polytope along the equator."""
    locus = singular_locus(sp.a, rs, sp.placement)
    return IASphere(sp.a, sp, locus)


def volume(b) -> Fraction:
    """Lattice volume of the sphere: twice the surgered polygon volume."""
    if isinstance(b, IASphere):
        return b.volume()
    if isinstance(b, SymingtonPolytope):
        return 2 * b.lattice_volume()
    raise TypeError("volume expects a sphere or a Symington polytope")


def circumference(b, direction: str) -> Fraction:
    """Null-vector evaluation giving the circumference in a closed direction."""
    a = b.a if not isinstance(b, AVector) else b
    try:
        weights = _CIRCUMFERENCE_WEIGHTS[direction]
    except KeyError:
        raise ValueError(f"unknown direction {direction!r}") from None
    return sum(a.a[i] * w for i, w in weights.items())


def equator_divisor(b: IASphere) -> EquatorDivisor:
    a = b.a
    edges = []
    for i in range(18):
        length = a.b[i]
        if a.a[i] != 0:
            edges.append((i, 2 if i % 2 == 0 else 1, length))
    return EquatorDivisor(tuple(edges))


# ---------------------------------------------------------------------------
# dual (slice) decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Slice:
    gap_start: int                # cycle vertex opening the slice
    chain: tuple                  # consecutive zero cycle vertices inside
    component: tuple              # full component incl. interior vertices
    label: ShapeLabel

    def to_json(self):
        return {
            "gap_start": self.gap_start,
            "chain": list(self.chain),
            "component": list(self.component),
            "label": self.label.ascii,
        }


def cycle_slices(rs: RootSystem, zero):
    """Slices of the equator cut by the cycle vertices outside the zero set."""
    zero = frozenset(zero)
    nonzero = [i for i in range(18) if i not in zero]
    if not nonzero:
        return None
    sub = classify(rs, zero)
    comp_of = {}
    for comp in sub.components:
        for v in comp:
            comp_of[v] = comp
    slices = []
    for k, i in enumerate(nonzero):
        j = nonzero[(k + 1) % len(nonzero)]
        chain = []
        v = (i + 1) % 18
        while v != j:
            chain.append(v)
            v = (v + 1) % 18
        if chain:
            comp = comp_of[chain[0]]
            label = shape(rs, comp)
            slices.append(Slice(i, tuple(chain), tuple(sorted(comp)), label))
        else:
            pre = "v" if i % 2 else ""
            suf = "-" if j % 2 else ""
            slices.append(Slice(i, (), (), ShapeLabel(pre, "A", 0, suf)))
    # start the cyclic list at vertex 0: the slice whose chain holds vertex 0,
    # or the empty slice opened by vertex 0
    first = 0
    for idx, s in enumerate(slices):
        if (s.chain and 0 in s.chain) or (not s.chain and s.gap_start == 0):
            first = idx
            break
    return slices[first:] + slices[:first]


@dataclass(frozen=True)
class DualDecomposition:
    kind: str                     # "III" or "II"
    slices: tuple
    pole_points: int              # marked points at each pole
    meridian_points: tuple        # (interior vertex, side) pairs

    def to_json(self):
        return {
            "kind": self.kind,
            "slices": [s.to_json() for s in self.slices],
            "pole_points": self.pole_points,
            "meridian_points": [list(p) for p in self.meridian_points],
        }


def dual_decomposition(a: AVector, rs: RootSystem) -> DualDecomposition:
    """Delaunay-like slicing of the sphere dual to the singular structure."""
    zero = a.zero_set()
    interior_in = sorted(v for v in zero if v >= 18)
    meridian = tuple(
        (v, CUT_SIDE_OF_LEAF.get(v, OPPOSITE_SIDE_OF_RAY.get(v))) for v in interior_in
    )
    if a.norm() == 0:
        return DualDecomposition("II", tuple(), 3 - len(interior_in), meridian)
    slices = cycle_slices(rs, a.zero_set())
    return DualDecomposition("III", tuple(slices), 3 - len(interior_in), meridian)


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

def _fmt(x):
    return f"{float(x):.3f}"


def render_svg(b) -> str:
    """Deterministic SVG picture of the surgered polygon and its markings."""
    sp = b.polytope if isinstance(b, IASphere) else b
    poly = sp.polygon
    pts = list(poly.corners)
    for c in sp.cuts:
        pts.append(c.apex)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    pad = Fraction(2)
    x0, y0 = min(xs) - pad, min(ys) - pad
    w, h = max(xs) - x0 + pad, max(ys) - y0 + pad

    def pt(p):
        # flip y so the picture is drawn in the usual orientation
        return f"{_fmt(p[0] - x0)},{_fmt(h - (p[1] - y0))}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
    ]
    ring = " ".join(pt(p) for p in poly.corners if True)
    lines.append(
        f'<polygon points="{ring}" fill="#eef6ee" stroke="none"/>'
    )
    for i in range(18):
        if poly.side_lengths[i] == 0:
            continue
        p, q = poly.side_points(i)
        width = "2.5" if i % 2 == 0 else "1.0"
        lines.append(
            f'<line x1="{pt(p).split(",")[0]}" y1="{pt(p).split(",")[1]}" '
            f'x2="{pt(q).split(",")[0]}" y2="{pt(q).split(",")[1]}" '
            f'stroke="#1f4f9f" stroke-width="{width}"/>'
        )
    for c in sp.cuts:
        if c.size == 0:
            continue
        tri = " ".join(pt(p) for p in (c.base_start, c.base_end, c.apex))
        lines.append(
            f'<polygon points="{tri}" fill="#ffffff" stroke="#b03030" '
            f'stroke-width="0.6" stroke-dasharray="2,1.5"/>'
        )
        axis = c.axis_direction
        a1 = _add(c.apex, _mul(Fraction(-3, 2), axis))
        a2 = _add(c.apex, _mul(Fraction(3, 2), axis))
        lines.append(
            f'<line x1="{pt(a1).split(",")[0]}" y1="{pt(a1).split(",")[1]}" '
            f'x2="{pt(a2).split(",")[0]}" y2="{pt(a2).split(",")[1]}" '
            f'stroke="#b03030" stroke-width="0.5" stroke-dasharray="1,1"/>'
        )
    if isinstance(b, IASphere):
        for c in b.clusters:
            if c.plane == "south":
                continue
            x, y = c.position
            cx, cy = float(x - x0), float(h - (y - y0))
            star = []
            import math

            for k in range(10):
                r = 1.1 if k % 2 == 0 else 0.45
                ang = math.pi / 2 + k * math.pi / 5
                star.append(f"{cx + r * math.cos(ang):.3f},{cy - r * math.sin(ang):.3f}")
            lines.append(
                f'<polygon points="{" ".join(star)}" fill="#d4a017" '
                f'stroke="#7a5a00" stroke-width="0.3"/>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
