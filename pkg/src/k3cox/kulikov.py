"""Unit triangulations of the sphere and combinatorial degeneration data.

For a parity-valid positive-norm vector the surgered polygon is
triangulated on all of its lattice points (any such triangulation has only
lattice-volume-1 triangles), the cut edges are identified by their shears,
and the result is doubled across the equator.  The dual-complex statistics
(vertex/edge/face counts, equator and charge bookkeeping) feed the
deformation-dimension and eigenvalue-rank counts.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .chamber import Chamber
from .diagrams import ShapeLabel, classify, shape, relevant_content
from .ias import (
    EDGE_DIRS,
    Degenerate,
    cycle_slices,
    singular_locus,
    symington,
)
from .lattice import AVector, RootSystem


class ParityViolation(Exception):
    """Odd-indexed or interior pairing is odd, so no lattice model exists."""


class OddMultiple(Exception):
    """Null direction needs an even multiple for this construction."""


def parity_check(a: AVector) -> bool:
    """a_i even for odd i and for all i >= 18; equivalently every b_i is integral."""
    if not a.is_integral:
        return False
    return all(x.denominator == 1 for x in a.b)


# ---------------------------------------------------------------------------
# planar helpers (integer points)
# ---------------------------------------------------------------------------

def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _add(p, q):
    return (p[0] + q[0], p[1] + q[1])


def _on_segment(p, a, b):
    """Is p strictly inside the open segment (a, b)?"""
    if _cross(_sub(b, a), _sub(p, a)) != 0:
        return False
    d1 = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])
    d2 = (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2
    return 0 < d1 < d2


def _in_triangle_closed(p, a, b, c):
    s1 = _cross(_sub(b, a), _sub(p, a))
    s2 = _cross(_sub(c, b), _sub(p, b))
    s3 = _cross(_sub(a, c), _sub(p, c))
    return s1 >= 0 and s2 >= 0 and s3 >= 0


def _split_loops(walk):
    """Split a weakly simple closed walk at repeated vertices."""
    pending = [walk]
    out = []
    while pending:
        loop = pending.pop()
        seen = {}
        split = None
        for idx, p in enumerate(loop):
            if p in seen:
                split = (seen[p], idx)
                break
            seen[p] = idx
        if split is None:
            out.append(loop)
            continue
        i, j = split
        pending.append(loop[i:j])
        pending.append(loop[:i] + loop[j:])
    return [l for l in out if len(l) >= 3]


def _ear_clip(loop):
    """Triangulate a simple lattice polygon (counterclockwise) exactly."""
    pts = list(loop)
    tris = []
    guard = 0
    while len(pts) > 3:
        guard += 1
        if guard > 100000:
            raise Degenerate("ear clipping failed to converge")
        n = len(pts)
        clipped = False
        for k in range(n):
            a, b, c = pts[k - 1], pts[k], pts[(k + 1) % n]
            cr = _cross(_sub(b, a), _sub(c, b))
            if cr < 0:
                continue
            if cr == 0:
                dot = (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1])
                if dot > 0:
                    # straight-through vertex: the edge a-c covers it
                    pts.pop(k)
                    clipped = True
                    break
                continue
            ok = True
            for p in pts:
                if p in (a, b, c):
                    continue
                if _in_triangle_closed(p, a, b, c):
                    ok = False
                    break
            if ok:
                tris.append((a, b, c))
                pts.pop(k)
                clipped = True
                break
        if not clipped:
            raise Degenerate("no ear found; boundary walk is not simple")
    if len(pts) == 3 and _cross(_sub(pts[1], pts[0]), _sub(pts[2], pts[0])) > 0:
        tris.append(tuple(pts))
    return tris


def _lattice_point_inside(a, b, c):
    """Some lattice point of the triangle other than a vertex, or None."""
    for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
        d = _sub(q, p)
        g = gcd(abs(d[0]), abs(d[1]))
        if g > 1:
            return _add(p, (d[0] // g, d[1] // g))
    ymin = min(a[1], b[1], c[1])
    ymax = max(a[1], b[1], c[1])
    edges = ((a, b), (b, c), (c, a))
    for y in range(ymin, ymax + 1):
        xs = []
        for p, q in edges:
            if p[1] == q[1]:
                if p[1] == y:
                    xs.extend((p[0], q[0]))
                continue
            t = Fraction(y - p[1], q[1] - p[1])
            if 0 <= t <= 1:
                xs.append(p[0] + t * (q[0] - p[0]))
        if not xs:
            continue
        lo, hi = min(xs), max(xs)
        x = lo.__ceil__() if isinstance(lo, Fraction) else lo
        while x <= hi:
            cand = (x, y)
            if cand not in (a, b, c) and _in_triangle_closed(cand, a, b, c):
                return cand
            x += 1
    return None


def _refine_unit(tri):
    """Split a lattice triangle into triangles of lattice volume 1."""
    stack = [tri]
    out = []
    while stack:
        a, b, c = stack.pop()
        vol = abs(_cross(_sub(b, a), _sub(c, a)))
        if vol == 0:
            raise Degenerate("degenerate triangle in refinement")
        if vol == 1:
            out.append((a, b, c))
            continue
        p = _lattice_point_inside(a, b, c)
        if p is None:
            raise Degenerate(f"volume {vol} triangle with no interior lattice point")
        if _on_segment(p, a, b):
            stack.extend(((a, p, c), (p, b, c)))
        elif _on_segment(p, b, c):
            stack.extend(((b, p, a), (p, c, a)))
        elif _on_segment(p, c, a):
            stack.extend(((c, p, b), (p, a, b)))
        else:
            stack.extend(((a, b, p), (b, c, p), (c, a, p)))
    return out


class _UnionFind(dict):
    def find(self, x):
        while self.get(x, x) != x:
            self[x] = self.get(self[x], self[x])
            x = self[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self[ry] = rx


# ---------------------------------------------------------------------------
# the triangulation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Triangulation:
    a: AVector
    v: int
    e: int
    f: int
    v_e: int
    e_e: int
    q_e: int
    q_n: int
    equator_vertices: tuple       # quotient representatives on the equator
    charges: tuple                # ((vertex-id, charge), ...) on the double
    cluster_vertices: tuple       # ((cluster label, vertex-id), ...)

    @property
    def euler(self):
        return self.v - self.e + self.f

    def dimension(self):
        return self.e - 3 * self.v + 25

    def eigenranks(self):
        half = (self.e - 3 * self.v) // 2
        half_eq = (self.e_e - self.v_e) // 2
        n_plus = half + half_eq + self.q_n + 1
        n_minus = half - half_eq + self.q_e + self.q_n
        return (n_plus, n_minus)

    def to_json(self):
        n_plus, n_minus = self.eigenranks()
        return {
            "v": self.v,
            "e": self.e,
            "f": self.f,
            "e_E": self.e_e,
            "v_E": self.v_e,
            "q_E": self.q_e,
            "q_N": self.q_n,
            "n_plus": n_plus,
            "n_minus": n_minus,
        }


def dsemistable_dimension(t) -> int:
    """e - 3v + 25; equals 19 for every sphere triangulation."""
    if isinstance(t, Triangulation):
        return t.dimension()
    v, e = t[0], t[1]
    return e - 3 * v + 25


def eigenranks(t: Triangulation):
    return t.eigenranks()


def triangulate(a: AVector, rs: RootSystem) -> Triangulation:
    """Involution-invariant unit triangulation of the doubled polygon."""
    if not parity_check(a):
        raise ParityViolation("need integral a with even odd-indexed and interior entries")
    if a.norm() <= 0:
        raise Degenerate("norm must be positive")
    sp = symington(a, "vertex")
    locus = singular_locus(a, rs, "vertex")
    poly = sp.polygon

    def ipt(p):
        x, y = Fraction(p[0]), Fraction(p[1])
        assert x.denominator == 1 and y.denominator == 1, p
        return (int(x), int(y))

    corners = [ipt(p) for p in poly.corners]
    cuts = {c.side: c for c in sp.cuts}

    walk = []
    for i in range(18):
        if poly.side_lengths[i] == 0:
            continue
        walk.append(corners[i])
        cut = cuts.get(i)
        if cut is not None and cut.size > 0:
            walk.append(ipt(cut.apex))
            walk.append(ipt(cut.base_end))
    dedup = []
    for p in walk:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    walk = dedup

    # pinch points: apexes (or walk corners) lying inside another segment
    specials = set(walk) | {ipt(c.apex) for c in sp.cuts if c.size > 0}
    changed = True
    while changed:
        changed = False
        for k in range(len(walk)):
            seg_a, seg_b = walk[k], walk[(k + 1) % len(walk)]
            inside = [p for p in specials if _on_segment(p, seg_a, seg_b)]
            if inside:
                inside.sort(
                    key=lambda p: (p[0] - seg_a[0]) ** 2 + (p[1] - seg_a[1]) ** 2
                )
                walk[k + 1:k + 1] = inside
                changed = True
                break

    triangles = []
    for loop in _split_loops(walk):
        for big in _ear_clip(loop):
            triangles.extend(_refine_unit(big))

    expected = sp.lattice_volume()
    if len(triangles) != expected:
        raise Degenerate(
            f"triangulated volume {len(triangles)} != region volume {expected}"
        )

    uf = _UnionFind()
    for c in sp.cuts:
        s = int(c.size)
        if s == 0:
            continue
        start = ipt(c.base_start)
        end = ipt(c.base_end)
        apex = ipt(c.apex)
        u = ((apex[0] - start[0]) // s, (apex[1] - start[1]) // s)
        u2 = ((apex[0] - end[0]) // s, (apex[1] - end[1]) // s)
        for t in range(s + 1):
            pL = (start[0] + t * u[0], start[1] + t * u[1])
            pR = (end[0] + t * u2[0], end[1] + t * u2[1])
            uf.union(pL, pR)

    faces = set()
    for tri in triangles:
        face = frozenset(uf.find(p) for p in tri)
        if len(face) != 3:
            raise Degenerate("cut identification collapsed a triangle")
        faces.add(face)
    if len(faces) != len(triangles):
        raise Degenerate("cut identification merged distinct triangles")
    edges = set()
    verts = set()
    for face in faces:
        pts = sorted(face)
        verts.update(pts)
        edges.update(
            frozenset(x) for x in ((pts[0], pts[1]), (pts[0], pts[2]), (pts[1], pts[2]))
        )

    # the equator: surviving parts of the 18 sides
    eq_verts = set()
    eq_edges = set()
    for i in range(18):
        b_i = a.b[i]
        if b_i == 0:
            continue
        b_i = int(b_i)
        cut = cuts.get(i)
        start = ipt(cut.base_end) if (cut is not None and cut.size > 0) else corners[i]
        w = EDGE_DIRS[i]
        pts = [
            uf.find((start[0] + k * w[0], start[1] + k * w[1])) for k in range(b_i + 1)
        ]
        eq_verts.update(pts)
        eq_edges.update(frozenset((pts[k], pts[k + 1])) for k in range(b_i))
    if len(eq_verts) != len(eq_edges):
        raise Degenerate("equator is not a single cycle")

    n_v, n_e, n_f = len(verts), len(edges), len(faces)
    v_e, e_e = len(eq_verts), len(eq_edges)
    v = 2 * n_v - v_e
    e = 2 * n_e - e_e
    f = 2 * n_f

    charges = {}
    cluster_vertices = []
    q_e = q_n = 0
    for cl in locus.clusters:
        pos = uf.find(ipt(cl.position))
        if cl.plane == "equator":
            if pos not in eq_verts:
                raise Degenerate(f"cluster at {cl.position} missed the equator lattice")
            vid = ("E", pos)
            q_e += cl.charge
        else:
            if pos not in verts:
                raise Degenerate(f"interior singular point {cl.position} is not a vertex")
            vid = (cl.plane[0].upper(), pos)
            if cl.plane == "north":
                q_n += cl.charge
        charges[vid] = charges.get(vid, 0) + cl.charge
        cluster_vertices.append((cl.label.ascii if cl.label else "I1", vid))

    if q_e + 2 * q_n != 24:
        raise Degenerate(f"charge split {q_e} + 2*{q_n} != 24")

    return Triangulation(
        a,
        v,
        e,
        f,
        v_e,
        e_e,
        q_e,
        q_n,
        tuple(sorted(eq_verts)),
        tuple(sorted(charges.items())),
        tuple(cluster_vertices),
    )


# ---------------------------------------------------------------------------
# degeneration labels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DegenerationLabel:
    kind: str                 # "III" or "II"
    components: tuple         # slice labels in canonical cyclic order
    group: str                # "S3" or "D9"

    @property
    def text(self) -> str:
        return " ".join(self.components)

    def to_json(self):
        return {"kind": self.kind, "label": self.text,
                "components": list(self.components), "group": self.group}


def stable_model_label(a: AVector, rs: RootSystem) -> DegenerationLabel:
    """Cyclic list of component shapes, canonical under the symmetry group.

    Diagrams inside the cycle are reduced by the dihedral cycle group,
    all others by the order-6 diagram symmetry.  Norm-zero vectors give
    the relevant halves of their maximal parabolic.
    """
    from .diagrams import automorphism_group

    if a.norm() == 0:
        sub = classify(rs, a.zero_set())
        halves = tuple(
            shape(rs, comp).ascii
            for comp in sorted(sub.components, key=min)
            if not comp <= set(range(18, 24))
        )
        return DegenerationLabel("II", halves, "S3")

    zero = a.zero_set()
    cycle_contained = all(v < 18 for v in zero)
    candidates = []
    if cycle_contained:
        for shift in range(0, 18, 2):
            for refl in (False, True):
                img = frozenset(
                    ((shift - v) % 18 if refl else (v + shift) % 18) for v in zero
                )
                candidates.append(img)
        group = "D9"
    else:
        sym = automorphism_group(rs)
        for perm in sym.s3:
            candidates.append(frozenset(perm[v] for v in zero))
        group = "S3"

    best = None
    for img in candidates:
        slices = cycle_slices(rs, img)
        comps = tuple(s.label.ascii for s in slices)
        if best is None or comps < best:
            best = comps
    return DegenerationLabel("III", best, group)


# ---------------------------------------------------------------------------
# contraction plan and type II models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ContractionPlan:
    entries: tuple            # ((vertex-id, fate, detail), ...)

    def counts(self):
        out = {"big": 0, "nef-not-big": 0, "trivial": 0}
        for _, fate, _ in self.entries:
            out[fate] += 1
        return out

    def to_json(self):
        return {
            "vertices": [
                {"vertex": [v[0], list(v[1])], "fate": fate, "detail": detail}
                for v, fate, detail in self.entries
            ],
            "counts": self.counts(),
        }


def contraction_plan(t: Triangulation, a: AVector, rs: RootSystem) -> ContractionPlan:
    """Fate of every dual-complex vertex under the stable-model contraction."""
    cluster_at = {}
    for label, vid in t.cluster_vertices:
        cluster_at.setdefault(vid, []).append(label)
    entries = []
    for pos in t.equator_vertices:
        vid = ("E", pos)
        labels = cluster_at.get(vid, [])
        relevant = [l for l in labels if l != "I1" and not l.startswith("irr:")]
        if relevant:
            entries.append((vid, "big", "+".join(relevant)))
        elif labels:
            entries.append((vid, "nef-not-big", "contracts to a boundary curve"))
        else:
            entries.append((vid, "nef-not-big", "ruling fibers; contracts to a curve"))
    hemisphere_count = (t.v - t.v_e) // 2
    for side in ("N", "S"):
        entries.append(
            ((side, ()), "trivial", f"{hemisphere_count} vertices contract to the pole")
        )
    return ContractionPlan(tuple(entries))


@dataclass(frozen=True)
class TypeIIModel:
    parabolic_class: str
    multiple: int
    components: tuple         # ((position, label), ...) along the interval

    def to_json(self):
        return {
            "parabolic_class": self.parabolic_class,
            "multiple": self.multiple,
            "dual_complex": f"[0,{self.multiple}]",
            "components": [
                {"position": pos, "label": label} for pos, label in self.components
            ],
        }


def typeii_model(a: AVector, rs: RootSystem) -> TypeIIModel:
    """Interval dual complex with end/middle component labels."""
    if a.norm() != 0 or all(x == 0 for x in a.a):
        raise Degenerate("type II needs a nonzero vector of norm zero")
    ch = Chamber(rs)
    cone = ch.cone_of(a)
    name = cone.parabolic_class
    nonzero = [i for i in range(24) if a.a[i] != 0]
    prim = _primitive_ray(a, rs)
    m = a.a[nonzero[0]] / prim.a[nonzero[0]]
    if m.denominator != 1:
        raise Degenerate("vector is not an integer multiple of the primitive generator")
    m = int(m)
    needs_even = name in ("~A17", "~E8~E8~A1")
    if needs_even and m % 2:
        raise OddMultiple(f"{name} construction needs an even multiple, got {m}")
    comps = []
    if name == "~A17":
        for k in range(m + 1):
            if k in (0, m):
                comps.append((k, "cap"))
            elif k == m // 2:
                comps.append((k, "~A17"))
            else:
                comps.append((k, "ruled:E"))
    elif name == "~E8~E8~A1":
        for k in range(m + 1):
            if k in (0, m):
                comps.append((k, "~E8"))
            elif k == m // 2:
                comps.append((k, "ruled:irr:~A1"))
            else:
                comps.append((k, "ruled:E"))
    else:
        ends = {"~D10~E7": ("~D10", "~E7"), "~D16~A1*": ("~D16", "~A1*")}[name]
        for k in range(m + 1):
            if k == 0:
                comps.append((k, ends[0]))
            elif k == m:
                comps.append((k, ends[1]))
            else:
                comps.append((k, "ruled:E"))
    return TypeIIModel(name, m, tuple(comps))


def _primitive_ray(a: AVector, rs: RootSystem) -> AVector:
    from ._linalg import clear_denominators

    return AVector(rs, clear_denominators(list(a.a)))
