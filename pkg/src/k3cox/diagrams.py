"""Subdiagram classification, shape labels, symmetry, and enumeration.

A subdiagram is any subset of the 24 vertices.  Classification follows the
definiteness of the restricted Gram form: elliptic (negative definite),
parabolic (negative semidefinite, degenerate) or indefinite.  Connected
elliptic and parabolic components carry decorated Dynkin names; decorations
record the parity of the cycle vertices flanking the component.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ._linalg import inertia
from .lattice import (
    CYCLE,
    INTERIOR,
    LEAF_CORNER,
    RAY_LEAF,
    RAY_SIDE,
    MAXIMAL_PARABOLIC_PARTS,
    RootSystem,
)

FULL_CYCLE_MASK = (1 << 18) - 1
ALL_MASK = (1 << 24) - 1
CORNER_OF_LEAF = LEAF_CORNER
LEAF_OF_CORNER = {c: leaf for leaf, c in LEAF_CORNER.items()}
SIDE_OF_RAY = RAY_SIDE
LEAF_OF_RAY = RAY_LEAF

ELLIPTIC = "elliptic"
PARABOLIC = "parabolic"
INDEFINITE = "indefinite"


class Unclassifiable(Exception):
    """Component does not match any known connected shape (classifier bug)."""


def mask_of(vertices) -> int:
    if isinstance(vertices, int):
        return vertices
    return sum(1 << v for v in set(vertices))


def vertices_of(mask: int):
    return tuple(i for i in range(24) if mask >> i & 1)


@dataclass(frozen=True)
class Subdiagram:
    mask: int
    cls: str
    components: tuple
    rank: int

    @property
    def vertices(self):
        return vertices_of(self.mask)

    def to_json(self, rs: Optional[RootSystem] = None):
        out = {
            "vertices": list(self.vertices),
            "class": self.cls,
            "rank": self.rank,
            "components": [sorted(c) for c in self.components],
        }
        if rs is not None and self.cls != INDEFINITE:
            out["component_labels"] = [
                shape(rs, c).ascii for c in self.components
            ]
        return out


@dataclass(frozen=True)
class ShapeLabel:
    """Decorated Dynkin name: prefix v=low/odd start, ^=interior start,
    ~=affine; suffix -=odd end, '=primed, *=the double-bond affine pair."""

    prefix: str
    base: str
    size: int
    suffix: str
    irrelevant: bool = False

    @property
    def ascii(self) -> str:
        tag = f"{self.prefix}{self.base}{self.size}{self.suffix}"
        return f"irr:{tag}" if self.irrelevant else tag

    @property
    def affine(self) -> bool:
        return self.prefix == "~"

    def __str__(self):
        return self.ascii


def _adjacency(rs: RootSystem):
    return [
        [j for j in range(24) if j != i and rs.gram[i][j] != 0] for i in range(24)
    ]


def components_of(rs: RootSystem, vertices):
    """Connected components (as frozensets) of the induced subdiagram."""
    vs = set(vertices)
    adj = _adjacency(rs)
    comps = []
    seen = set()
    for v in sorted(vs):
        if v in seen:
            continue
        comp = set()
        stack = [v]
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(y for y in adj[x] if y in vs and y not in comp)
        seen |= comp
        comps.append(frozenset(comp))
    return tuple(comps)


def classify(rs: RootSystem, vertices) -> Subdiagram:
    """Exact definiteness class, components, and rank of a vertex subset."""
    mask = mask_of(vertices)
    vs = vertices_of(mask)
    if not vs:
        return Subdiagram(0, ELLIPTIC, (), 0)
    sub = rs.restricted_gram(vs)
    plus, minus, zero = inertia(sub)
    if plus == 0 and zero == 0:
        cls = ELLIPTIC
    elif plus == 0:
        cls = PARABOLIC
    else:
        cls = INDEFINITE
    return Subdiagram(mask, cls, components_of(rs, vs), minus)


def relevant_content(rs: RootSystem, sub) -> Subdiagram:
    """Drop the connected components that lie entirely in vertices 18..23."""
    if not isinstance(sub, Subdiagram):
        sub = classify(rs, sub)
    interior = set(INTERIOR)
    keep = [c for c in sub.components if not c <= interior]
    mask = mask_of(v for c in keep for v in c)
    return classify(rs, mask)


# ---------------------------------------------------------------------------
# shape labels
# ---------------------------------------------------------------------------

def _cycle_chain(cyc_vertices):
    """Order a set of cycle vertices as a consecutive chain; None if not one."""
    vs = set(cyc_vertices)
    if len(vs) == 18:
        return None
    starts = [v for v in vs if (v - 1) % 18 not in vs]
    if len(starts) != 1:
        return None
    chain = [starts[0]]
    while (chain[-1] + 1) % 18 in vs:
        chain.append((chain[-1] + 1) % 18)
    return chain if len(chain) == len(vs) else None


def shape(rs: RootSystem, component) -> ShapeLabel:
    """Decorated name of a connected elliptic or parabolic subdiagram."""
    comp = frozenset(component)
    interior = comp & set(INTERIOR)
    cyc = comp - interior

    # purely interior components
    if not cyc:
        if len(comp) == 1:
            (v,) = comp
            if v in LEAF_CORNER:
                return ShapeLabel("", "A", 1, "", irrelevant=True)
            if v in RAY_SIDE:
                return ShapeLabel("v", "A", 1, "-", irrelevant=True)
        if len(comp) == 2:
            ray = next((v for v in comp if v in RAY_SIDE), None)
            if ray is not None and LEAF_OF_RAY[ray] in comp:
                return ShapeLabel("~", "A", 1, "", irrelevant=True)
        raise Unclassifiable(f"irrelevant component {sorted(comp)}")

    # section vertex with its cycle partner: the double-bond affine pair
    rays = [v for v in interior if v in RAY_SIDE]
    if rays:
        (ray,) = rays
        if comp == {ray, RAY_SIDE[ray]}:
            return ShapeLabel("~", "A", 1, "*")
        raise Unclassifiable(f"section vertex in {sorted(comp)}")

    if not interior:
        if len(cyc) == 18:
            return ShapeLabel("~", "A", 17, "")
        chain = _cycle_chain(cyc)
        if chain is None:
            raise Unclassifiable(f"cycle part of {sorted(comp)} is not a chain")
        pre = "v" if (chain[0] - 1) % 18 % 2 else ""
        suf = "-" if (chain[-1] + 1) % 18 % 2 else ""
        return ShapeLabel(pre, "A", len(chain), suf)

    # leaf vertices 18/19/20 on a cycle chain
    chain = _cycle_chain(cyc)
    if chain is None:
        raise Unclassifiable(f"cycle part of {sorted(comp)} is not a chain")
    L = len(chain)
    offsets = sorted(chain.index(CORNER_OF_LEAF[leaf]) for leaf in interior)
    end_leaves = [o for o in offsets if o in (0, L - 1)]
    branches = [o for o in offsets if 0 < o < L - 1]
    size = len(comp)

    if not branches:
        if len(end_leaves) == 2:
            return ShapeLabel("^", "A", size, "'")
        (o,) = end_leaves
        far = chain[-1] if o == 0 else chain[0]
        suf = "-" if (far + (1 if o == 0 else -1)) % 18 % 2 else ""
        if size == 18:
            # the full-length interior chain; named with a prime in the
            # stable-model nomenclature
            return ShapeLabel("^", "A", 18, "'")
        return ShapeLabel("^", "A", size, suf)

    if len(branches) == 1:
        b = branches[0]
        left = b + (1 if 0 in end_leaves else 0)
        right = (L - 1 - b) + (1 if L - 1 in end_leaves else 0)
        short, long_ = sorted((left, right))
        if short == 1:
            # D family; the far tip decides the decoration
            if b == L - 1 - b and end_leaves:
                long_end_is_leaf = True
            else:
                long_end_is_leaf = (
                    (L - 1 in end_leaves) if right >= left else (0 in end_leaves)
                )
            if long_end_is_leaf:
                return ShapeLabel("", "D", size, "'")
            far = chain[-1] if right >= left else chain[0]
            step = 1 if right >= left else -1
            suf = "-" if (far + step) % 18 % 2 else ""
            return ShapeLabel("", "D", size, suf)
        if short == 2:
            if long_ in (2, 3, 4):
                return ShapeLabel("", "E", size, {2: "-", 3: "", 4: "-"}[long_])
            if long_ == 5:
                return ShapeLabel("~", "E", 8, "")
        if (short, long_) == (3, 3):
            return ShapeLabel("~", "E", 7, "")
        raise Unclassifiable(f"branch arms {(1, short, long_)} in {sorted(comp)}")

    if len(branches) == 2 and not end_leaves:
        b1, b2 = branches
        if b1 == 1 and b2 == L - 2:
            if size - 1 in (10, 16):
                return ShapeLabel("~", "D", size - 1, "")
    raise Unclassifiable(f"unmatched component {sorted(comp)}")


def representative_vertices(label: ShapeLabel):
    """A standard vertex pattern realizing the label (for round-trip checks)."""
    n = label.size
    if label.irrelevant:
        if label.prefix == "~":
            return (20, 23)
        return (18,) if label.prefix == "" else (21,)
    key = (label.prefix, label.base, label.suffix)
    if key == ("", "A", ""):
        return tuple((1 + k) % 18 for k in range(n))
    if key == ("", "A", "-"):
        return tuple((1 + k) % 18 for k in range(n))
    if key == ("v", "A", "-"):
        return tuple((0 + k) % 18 for k in range(n))
    if key == ("v", "A", ""):
        return tuple((18 - n + k) % 18 for k in range(n))
    if key == ("^", "A", ""):
        return (18,) + tuple(range(n - 1))
    if key == ("^", "A", "-") or (key == ("^", "A", "'") and n == 18):
        return (18,) + tuple(range(n - 1))
    if key == ("^", "A", "'"):
        assert n in (9, 15)
        return (18,) + tuple(range(n - 2)) + (19 if n == 9 else 20,)
    if key == ("", "D", ""):
        return (18, 17) + tuple(range(n - 2))
    if key == ("", "D", "-"):
        return (18, 17) + tuple(range(n - 2))
    if key == ("", "D", "'"):
        assert n in (10, 16)
        return (18, 17) + tuple(range(n - 3)) + (19 if n == 10 else 20,)
    if key[1] == "E" and key[0] == "":
        return (18, 16, 17) + tuple(range(n - 3))
    if key == ("~", "A", "*"):
        return (3, 23)
    if key == ("~", "A", ""):
        return tuple(range(18))
    if key == ("~", "D", ""):
        assert n in (10, 16)
        from .lattice import AFFINE_D10, AFFINE_D16

        return AFFINE_D10 if n == 10 else AFFINE_D16
    if key == ("~", "E", ""):
        from .lattice import AFFINE_E7, AFFINE_E8_1

        return AFFINE_E7 if n == 7 else AFFINE_E8_1
    raise Unclassifiable(f"no pattern for {label.ascii}")


# ---------------------------------------------------------------------------
# symmetry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymmetryAction:
    """The order-6 diagram symmetry group and the order-18 cycle group."""

    s3: tuple          # 24-point permutations preserving the Gram matrix
    d9: tuple          # 18-point parity-preserving cycle symmetries

    @property
    def order(self):
        return len(self.s3)

    def apply(self, perm, mask):
        out = 0
        m = mask
        while m:
            b = m & -m
            out |= 1 << perm[b.bit_length() - 1]
            m ^= b
        return out

    def orbit_min(self, mask):
        return min(self.apply(p, mask) for p in self.s3)

    def orbit(self, mask):
        return sorted({self.apply(p, mask) for p in self.s3})


def d9_canonical_mask(mask: int) -> int:
    """Least image of a cycle-contained mask under the dihedral cycle group."""
    if mask & ~FULL_CYCLE_MASK:
        raise ValueError("mask is not contained in the cycle")
    best = mask
    for shift in range(0, 18, 2):
        for refl in (False, True):
            out = 0
            m = mask
            while m:
                b = m & -m
                i = b.bit_length() - 1
                j = (shift - i) % 18 if refl else (i + shift) % 18
                out |= 1 << j
                m ^= b
            if out < best:
                best = out
    return best


def automorphism_group(rs: RootSystem) -> SymmetryAction:
    """All Gram-preserving vertex permutations, plus the cycle group D9."""
    n = 24
    profile = [tuple(sorted(rs.gram[i])) for i in range(n)]
    perms = []

    def backtrack(perm, used):
        k = len(perm)
        if k == n:
            perms.append(tuple(perm))
            return
        for img in range(n):
            if img in used or profile[img] != profile[k]:
                continue
            if all(rs.gram[k][j] == rs.gram[img][perm[j]] for j in range(k)):
                perm.append(img)
                used.add(img)
                backtrack(perm, used)
                perm.pop()
                used.remove(img)

    backtrack([], set())
    if len(perms) != 6:
        raise Unclassifiable(f"automorphism group has order {len(perms)}")
    d9 = []
    for shift in range(0, 18, 2):
        d9.append(tuple((i + shift) % 18 for i in range(18)))
        d9.append(tuple((shift - i) % 18 for i in range(18)))
    return SymmetryAction(tuple(sorted(perms)), tuple(d9))


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _run_class(L, offsets):
    """Class of one decorated cycle run: 2 elliptic, 1 affine, 0 neither.

    offsets are positions of attached leaf vertices inside the run.
    """
    offsets = sorted(offsets)
    ends = [o for o in offsets if o in (0, L - 1)]
    branches = [o for o in offsets if 0 < o < L - 1]
    if not branches:
        return 2
    if len(branches) == 1:
        b = branches[0]
        left = b + (1 if 0 in ends else 0)
        right = (L - 1 - b) + (1 if L - 1 in ends else 0)
        a, c = sorted((left, right))
        if a == 1:
            return 2
        if a == 2:
            return 2 if c in (2, 3, 4) else (1 if c == 5 else 0)
        if (a, c) == (3, 3):
            return 1
        return 0
    if len(branches) == 2 and not ends:
        b1, b2 = branches
        if b1 == 1 and b2 == L - 2:
            return 1
    return 0


class DiagramEnumeration:
    """Full scan of the elliptic and parabolic subdiagrams.

    The cycle structure (runs of consecutive vertices, leaf decorations at
    the corners, isolated section vertices) makes the scan linear in the
    2^18 cycle subsets instead of 2^24 masks.
    """

    def __init__(self, rs: RootSystem, symmetry: Optional[SymmetryAction] = None):
        self.rs = rs
        self.symmetry = symmetry or automorphism_group(rs)
        self._scan()

    def _scan(self):
        corner_leaf = LEAF_OF_CORNER
        ray_items = tuple((r, RAY_SIDE[r], LEAF_OF_RAY[r]) for r in (21, 22, 23))
        elliptic_masks = []
        parabolic_masks = []

        for cyc in range(1 << 18):
            if cyc == FULL_CYCLE_MASK:
                parabolic_masks.append(cyc)
                continue
            runs = []
            m = cyc
            starts = [i for i in range(18) if cyc >> i & 1 and not cyc >> ((i - 1) % 18) & 1]
            for s in starts:
                run = [s]
                while cyc >> ((run[-1] + 1) % 18) & 1:
                    run.append((run[-1] + 1) % 18)
                runs.append(run)
            corner_pos = {}
            for ri, run in enumerate(runs):
                for off, v in enumerate(run):
                    if v in corner_leaf:
                        corner_pos[v] = (ri, off)
            for leafset in range(8):
                leaves = [18 + k for k in range(3) if leafset >> k & 1]
                per_run = {}
                for lv in leaves:
                    c = CORNER_OF_LEAF[lv]
                    if cyc >> c & 1:
                        ri, off = corner_pos[c]
                        per_run.setdefault(ri, []).append(off)
                classes = []
                bad = False
                for ri, run in enumerate(runs):
                    cl = _run_class(len(run), per_run.get(ri, ()))
                    if cl == 0:
                        bad = True
                        break
                    classes.append(cl)
                if bad:
                    continue
                base = cyc | sum(1 << lv for lv in leaves)
                n_aff = classes.count(1)
                outs = [(base, n_aff)]
                for ray, side, leafp in ray_items:
                    side_in = cyc >> side & 1
                    leaf_in = leafp in leaves
                    if not side_in and not leaf_in:
                        outs.append((base | 1 << ray, n_aff))
                    elif side_in and not leaf_in:
                        ri, off = next(
                            (i, r.index(side)) for i, r in enumerate(runs) if side in r
                        )
                        if len(runs[ri]) == 1 and ri not in per_run:
                            outs.append((base | 1 << ray, n_aff + 1))
                    elif leaf_in and not side_in:
                        if not cyc >> CORNER_OF_LEAF[leafp] & 1:
                            outs.append((base | 1 << ray, n_aff + 1))
                for mask, aff in outs:
                    if not mask:
                        continue
                    if aff:
                        parabolic_masks.append(mask)
                    else:
                        elliptic_masks.append(mask)

        counts_raw = {}
        reps = {}
        sym = self.symmetry
        perm_luts = []
        for p in sym.s3:
            luts = []
            for chunk in range(3):
                lut = [0] * 256
                for b in range(256):
                    out = 0
                    for k in range(8):
                        if b >> k & 1:
                            out |= 1 << p[chunk * 8 + k]
                    lut[b] = out
                luts.append(lut)
            perm_luts.append(luts)

        def orbit_min(mask):
            best = mask
            b0, b1, b2 = mask & 255, (mask >> 8) & 255, (mask >> 16) & 255
            for luts in perm_luts:
                m = luts[0][b0] | luts[1][b1] | luts[2][b2]
                if m < best:
                    best = m
            return best

        for mask in elliptic_masks:
            r = mask.bit_count()
            counts_raw[r] = counts_raw.get(r, 0) + 1
            reps.setdefault(r, set()).add(orbit_min(mask))

        self._orbit_min = orbit_min
        self.elliptic_counts_raw = {r: counts_raw.get(r, 0) for r in range(1, 19)}
        self._elliptic_reps = {r: sorted(s) for r, s in reps.items()}
        self.parabolic_masks = parabolic_masks
        self._parabolic_set = set(parabolic_masks)

    # -- public queries -------------------------------------------------

    def elliptic_count(self, rank: int, modulo: Optional[str] = "s3") -> int:
        if not 1 <= rank <= 18:
            raise ValueError("rank must be 1..18")
        if modulo == "s3":
            return len(self._elliptic_reps.get(rank, ()))
        return self.elliptic_counts_raw[rank]

    def elliptic_representatives(self, rank: int, modulo: Optional[str] = "s3"):
        """Canonical representatives: the lexicographically least mask per orbit."""
        reps = self._elliptic_reps.get(rank, [])
        if modulo == "s3":
            return list(reps)
        out = set()
        for m in reps:
            out.update(self.symmetry.orbit(m))
        return sorted(out)

    def is_parabolic_mask(self, mask: int) -> bool:
        return mask in self._parabolic_set

    def maximal_parabolics(self):
        """The four maximal parabolic classes, with the standard vertex lists."""
        maximal = [
            m
            for m in self.parabolic_masks
            if not any(
                (m | 1 << v) in self._parabolic_set
                for v in range(24)
                if not m >> v & 1
            )
        ]
        classes = sorted({self._orbit_min(m) for m in maximal})
        if len(classes) != 4:
            raise Unclassifiable(f"{len(classes)} maximal parabolic classes")
        standard = {}
        for name, parts in MAXIMAL_PARABOLIC_PARTS.items():
            mask = mask_of(v for p in parts for v in p)
            standard[self._orbit_min(mask)] = (name, parts)
        out = []
        for cls in classes:
            name, parts = standard[cls]
            out.append({"name": name, "parts": [list(p) for p in parts],
                        "mask": mask_of(v for p in parts for v in p)})
        return out
