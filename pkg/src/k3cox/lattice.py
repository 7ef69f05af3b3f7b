"""The rank-19 hyperbolic lattice generated by 24 norm -2 roots.

The lattice N = H + E8 + E8 + A1 is presented through its 24 generating
roots r_0..r_23 and their Gram matrix: vertices 0..17 form a cycle of
simple bonds, 18/19/20 attach to the corners 0/6/12, and 21/22/23 are the
section vertices with double bonds to 9/15/3 and to 18/19/20.  Vectors of
N (and of its dual M) are handled in "a-coordinates": the 24-tuple of
pairings with the roots.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._linalg import (
    Lattice,
    bareiss_rank,
    inertia,
    integer_kernel,
    rational_kernel,
    clear_denominators,
    smith_normal_form,
    solve_rational,
)

CYCLE = tuple(range(18))
INTERIOR = (18, 19, 20, 21, 22, 23)
CORNERS = (0, 6, 12)
LEAF_CORNER = {18: 0, 19: 6, 20: 12}          # solid attachment of the leaf vertices
RAY_SIDE = {21: 9, 22: 15, 23: 3}             # double bond of the section vertices
RAY_LEAF = {21: 18, 22: 19, 23: 20}           # double bond pairing sections with leaves

# affine diagrams used throughout; vertex order matches the null-vector labels
AFFINE_E8_1 = (13, 14, 15, 16, 17, 0, 1, 2, 18)
AFFINE_E8_2 = (4, 5, 6, 7, 8, 9, 10, 11, 19)
AFFINE_A1 = (20, 23)
AFFINE_A17 = CYCLE
AFFINE_D10 = (18, 17, 0, 1, 2, 3, 4, 5, 6, 7, 19)
AFFINE_E7 = (9, 10, 11, 12, 13, 14, 15, 20)
AFFINE_D16 = (19, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 0, 1, 18)
AFFINE_A1_STAR = (3, 23)

MAXIMAL_PARABOLIC_PARTS = {
    "~A17": (AFFINE_A17,),
    "~D10~E7": (AFFINE_D10, AFFINE_E7),
    "~E8~E8~A1": (AFFINE_E8_1, AFFINE_E8_2, AFFINE_A1),
    "~D16~A1*": (AFFINE_D16, AFFINE_A1_STAR),
}

# null-vector labels on the ordered vertex lists above (independent of the
# Gram unknowns: they are the standard affine Dynkin marks)
_NULL_LABELS = {
    AFFINE_E8_1: (1, 2, 3, 4, 5, 6, 4, 2, 3),
    AFFINE_E8_2: (2, 4, 6, 5, 4, 3, 2, 1, 3),
    AFFINE_A1: (1, 1),
    AFFINE_A17: (1,) * 18,
    AFFINE_D10: (1, 1, 2, 2, 2, 2, 2, 2, 2, 1, 1),
    AFFINE_E7: (1, 2, 3, 4, 3, 2, 1, 2),
    AFFINE_D16: (1, 1) + (2,) * 13 + (1, 1),
    AFFINE_A1_STAR: (1, 1),
}


class ConstructionError(Exception):
    """The Gram constraint system is inconsistent (transcription bug)."""


class NotAffine(Exception):
    """Subdiagram is not a connected affine (parabolic) diagram."""


class Underdetermined(Exception):
    """Partial a-vector does not determine a unique completion."""


class Inconsistent(Exception):
    """Partial a-vector contradicts the lattice relations."""


class NotInImage(Exception):
    """24-tuple does not satisfy the relations, so is no pairing vector."""


def _rotate6(v):
    """The order-3 diagram symmetry: cycle shift by 6, leaves and sections cycle."""
    if v < 18:
        return (v + 6) % 18
    if v < 21:
        return 18 + (v - 18 + 1) % 3
    return 21 + (v - 21 + 1) % 3


def _known_entries():
    known = {}
    for i in range(24):
        known[(i, i)] = -2
    for i in range(18):
        for j in range(i + 1, 18):
            adj = (j - i) % 18 in (1, 17)
            known[(i, j)] = 1 if adj else 0
    for leaf, c in LEAF_CORNER.items():
        for j in range(18):
            known[(j, leaf)] = 1 if j == c else 0
    for ray, side in RAY_SIDE.items():
        for j in range(18):
            known[(j, ray)] = 2 if j == side else 0
    for ray, leaf in RAY_LEAF.items():
        known[(leaf, ray)] = 2
    return known


def _null_identities():
    """Pairs of (vertex-order, labels) whose null vectors must agree in N.

    All diagram-symmetry images of the maximal-parabolic identities are
    included; the labels are fixed combinatorial data.
    """
    base = [
        (AFFINE_D10, AFFINE_E7),
        (AFFINE_E8_1, AFFINE_E8_2),
        (AFFINE_E8_2, AFFINE_A1),
        (AFFINE_D16, AFFINE_A1_STAR),
    ]
    out = []
    for A, B in base:
        la, lb = _NULL_LABELS[A], _NULL_LABELS[B]
        for power in range(3):
            ra, rb = list(A), list(B)
            for _ in range(power):
                ra = [_rotate6(v) for v in ra]
                rb = [_rotate6(v) for v in rb]
            out.append(((tuple(ra), la), (tuple(rb), lb)))
    return out


def build_gram():
    """Construct the 24x24 Gram matrix and wrap it as a RootSystem.

    Entries fixed by the diagram (cycle, corner attachments, double bonds)
    are seeded; the remaining pairings among vertices 18..23 are solved
    from the null-vector identities, then the result is validated.
    """
    known = _known_entries()
    unknown_pairs = sorted(
        (i, j)
        for i in INTERIOR
        for j in INTERIOR
        if i < j and (i, j) not in known
    )
    var = {p: k for k, p in enumerate(unknown_pairs)}

    def entry(i, j):
        """(constant, coefficient-row) decomposition of gram[i][j]."""
        key = (min(i, j), max(i, j))
        row = [0] * len(var)
        if key in known:
            return known[key], row
        row[var[key]] = 1
        return 0, row

    rows, rhs = [], []
    for (va, la), (vb, lb) in _null_identities():
        for k in range(24):
            const = 0
            coeff = [0] * len(var)
            for v, lab in zip(va, la):
                c, r = entry(v, k)
                const += lab * c
                coeff = [x + lab * y for x, y in zip(coeff, r)]
            for v, lab in zip(vb, lb):
                c, r = entry(v, k)
                const -= lab * c
                coeff = [x - lab * y for x, y in zip(coeff, r)]
            if any(coeff) or const:
                rows.append(coeff)
                rhs.append(-const)
    sol = solve_rational(rows, rhs)
    if sol is None or rational_kernel(rows):
        raise ConstructionError("null-vector constraint system is not uniquely solvable")
    if any(x.denominator != 1 for x in sol):
        raise ConstructionError("non-integral Gram entry from constraint solve")

    gram = [[0] * 24 for _ in range(24)]
    for i in range(24):
        for j in range(24):
            key = (min(i, j), max(i, j))
            gram[i][j] = known[key] if key in known else int(sol[var[key]])

    rs = RootSystem(tuple(tuple(row) for row in gram))
    rs._validate()
    return rs


class RootSystem:
    """The 24 roots with their Gram matrix, and exact lattice machinery."""

    def __init__(self, gram):
        self.gram = gram
        cols = [[gram[i][j] for i in range(24)] for j in range(24)]
        self._acols = cols
        self.relations = integer_kernel([list(row) for row in gram])
        self.n_lattice = Lattice(cols)
        half = [x // 2 for x in cols[21]]
        self.m_lattice = Lattice(cols + [half])
        self._aut = None

    def pairing(self, i, j):
        return self.gram[i][j]

    def a_of_root(self, i):
        """a-coordinates of the root r_i."""
        return list(self._acols[i])

    def _validate(self):
        offdiag = {self.gram[i][j] for i in range(24) for j in range(24) if i != j}
        if not offdiag <= {0, 1, 2, 6}:
            raise ConstructionError(f"unexpected pairings {sorted(offdiag)}")
        if bareiss_rank(self.gram) != 19:
            raise ConstructionError("Gram rank is not 19")
        factors = [f for f in smith_normal_form([list(r) for r in self.gram]) if f != 1]
        if factors != [2]:
            raise ConstructionError(f"discriminant factors {factors} != [2]")
        for parts in MAXIMAL_PARABOLIC_PARTS.values():
            verts = sorted(v for p in parts for v in p)
            sub = [[self.gram[i][j] for j in verts] for i in verts]
            plus, _, zero = inertia(sub)
            if plus or zero != len(parts):
                raise ConstructionError("maximal parabolic list fails semidefiniteness")
        if self.m_lattice.rank != 19 or self.n_lattice.index_in(self.m_lattice) != 2:
            raise ConstructionError("dual lattice index is not 2")

    # ---- subdiagram lattice invariants -------------------------------

    def restricted_gram(self, vertices):
        vs = sorted(vertices)
        return [[self.gram[i][j] for j in vs] for i in vs]

    def rank_and_discriminant(self, vertices):
        """Exact rank and Smith invariant factors of the restricted Gram."""
        sub = self.restricted_gram(vertices)
        if not sub:
            return 0, ()
        return bareiss_rank(sub), tuple(f for f in smith_normal_form(sub) if f != 1)

    def null_vector(self, vertices):
        """Primitive positive integer null combination of a connected affine diagram.

        Returned as {vertex: coefficient}.
        """
        vs = sorted(vertices)
        kern = rational_kernel(self.restricted_gram(vs))
        if len(kern) != 1:
            raise NotAffine(f"kernel dimension {len(kern)} != 1 for {vs}")
        w = clear_denominators(kern[0])
        if w[0] < 0:
            w = [-x for x in w]
        if not all(x > 0 for x in w):
            raise NotAffine(f"null coefficients not positive for {vs}")
        return dict(zip(vs, w))

    def null_a(self, vertices):
        """a-coordinates of the null vector of a connected affine diagram."""
        nv = self.null_vector(vertices)
        return [sum(c * self.gram[v][k] for v, c in nv.items()) for k in range(24)]

    def verify_relations(self):
        """Check the coincidence of null vectors and the rank-5 relation space."""
        try:
            checks = [
                (AFFINE_D10, AFFINE_E7),
                (AFFINE_E8_1, AFFINE_E8_2),
                (AFFINE_E8_2, AFFINE_A1),
                (AFFINE_D16, AFFINE_A1_STAR),
            ]
            for A, B in checks:
                if self.null_a(A) != self.null_a(B):
                    return False
        except NotAffine:
            return False
        # the three corner-pair differences n(E8^1) - n(E8^2) sum to zero
        diff_total = [0] * 24
        e1, e2 = list(AFFINE_E8_1), list(AFFINE_E8_2)
        for _ in range(3):
            d1 = self.null_vector(e1)
            d2 = self.null_vector(e2)
            coeff = [0] * 24
            for v, c in d1.items():
                coeff[v] += c
            for v, c in d2.items():
                coeff[v] -= c
            diff_total = [x + y for x, y in zip(diff_total, coeff)]
            e1 = [_rotate6(v) for v in e1]
            e2 = [_rotate6(v) for v in e2]
        image = [sum(diff_total[j] * self.gram[j][k] for j in range(24)) for k in range(24)]
        if any(image):
            return False
        return len(self.relations) == 5

    def saturation_quotient(self, vertices):
        """Invariant factors (>1) of M_G / R_G for a connected elliptic G.

        M_G is the saturation of the root span inside the dual lattice M.
        """
        vs = sorted(vertices)
        gens = [self._acols[v] for v in vs]
        functionals = rational_kernel(gens)
        conditions = []
        for f in functionals:
            fi = clear_denominators(f)
            conditions.append(
                [sum(fi[k] * b[k] for k in range(24)) for b in self.m_lattice.basis]
            )
        if conditions:
            coeffs = integer_kernel(conditions)
        else:
            coeffs = [[int(i == j) for j in range(self.m_lattice.rank)]
                      for i in range(self.m_lattice.rank)]
        mg_gens = [
            [sum(c[i] * self.m_lattice.basis[i][k] for i in range(len(c)))
             for k in range(24)]
            for c in coeffs
        ]
        mg = Lattice(mg_gens, ambient_dim=24)
        if mg.rank != len(vs):
            raise NotAffine(f"subdiagram {vs} is not elliptic")
        coords = [mg.coordinates(g) for g in gens]
        return tuple(f for f in smith_normal_form(coords) if f != 1)

    # ---- serialization ----------------------------------------------

    def to_json(self):
        return {"gram": [list(row) for row in self.gram]}


@dataclass(frozen=True)
class DualLattice:
    """M = N* = N + (1/2) r_21, generated over N by one half-root."""

    root_system: RootSystem

    @property
    def generators_root_coords(self):
        """Generators of M as rational coefficient vectors in the 24 roots."""
        gens = []
        for i in range(24):
            v = [Fraction(0)] * 24
            v[i] = Fraction(1)
            gens.append(v)
        half = [Fraction(0)] * 24
        half[21] = Fraction(1, 2)
        gens.append(half)
        return gens

    def index_over_n(self):
        return self.root_system.n_lattice.index_in(self.root_system.m_lattice)


class AVector:
    """A vector of N (or N_Q) in a-coordinates: a_i = pairing with r_i."""

    __slots__ = ("rs", "a", "_norm")

    def __init__(self, rs: RootSystem, values):
        vals = [Fraction(v) for v in values]
        if len(vals) != 24:
            raise NotInImage("a-vector needs 24 entries")
        for rel in rs.relations:
            if sum(r * v for r, v in zip(rel, vals)):
                raise NotInImage("entries violate the lattice relations")
        self.rs = rs
        self.a = tuple(vals)
        self._norm = None

    def __eq__(self, other):
        return isinstance(other, AVector) and self.a == other.a

    def __hash__(self):
        return hash(self.a)

    def __repr__(self):
        return f"AVector({[str(x) for x in self.a]})"

    @property
    def is_integral(self):
        return all(x.denominator == 1 for x in self.a)

    def in_n(self):
        """Whether the vector lies in N itself (not just in M or N_Q)."""
        if not self.is_integral:
            return False
        return [int(x) for x in self.a] in self.rs.n_lattice

    def scaled(self, k):
        return AVector(self.rs, [x * k for x in self.a])

    @property
    def b(self):
        """b_i with a_i = b_i for even i < 18 and a_i = 2 b_i otherwise."""
        return tuple(
            self.a[i] if i < 18 and i % 2 == 0 else self.a[i] / 2 for i in range(24)
        )

    @property
    def bbar(self):
        """Side lengths of the 18-gon before the three surgeries."""
        b = self.b
        out = list(b[:18])
        out[0] = b[0] + b[18]
        out[6] = b[6] + b[19]
        out[12] = b[12] + b[20]
        return tuple(out)

    def norm(self):
        """(v, v) of the unique rational preimage v of this a-vector."""
        if self._norm is None:
            c = solve_rational([list(r) for r in self.rs.gram], list(self.a))
            if c is None:
                raise NotInImage("no rational preimage")
            self._norm = sum(x * y for x, y in zip(c, self.a))
        return self._norm

    def pair(self, other):
        """Bilinear pairing of the preimages of two a-vectors."""
        c = solve_rational([list(r) for r in self.rs.gram], list(self.a))
        return sum(x * y for x, y in zip(c, other.a))

    def zero_set(self):
        return frozenset(i for i in range(24) if self.a[i] == 0)

    def to_json(self):
        def num(x):
            return int(x) if x.denominator == 1 else str(x)

        return {
            "a": [num(x) for x in self.a],
            "b": [num(x) for x in self.b],
            "bbar": [num(x) for x in self.bbar],
        }


def complete_a(rs: RootSystem, partial):
    """Extend a partial assignment {vertex: value} to a full a-vector.

    Raises Underdetermined or Inconsistent when the relations do not pin
    down exactly one completion.
    """
    idx = sorted(partial)
    rows = [rs.gram[i] for i in idx]
    vals = [partial[i] for i in idx]
    sol = solve_rational(rows, vals)
    if sol is None:
        raise Inconsistent(f"no a-vector matches {partial}")
    # completion is unique iff no kernel direction of the constraint rows
    # survives in the pairing image
    for k in rational_kernel(rows):
        image = [sum(Fraction(rs.gram[i][j]) * k[j] for j in range(24)) for i in range(24)]
        if any(image):
            raise Underdetermined(f"{sorted(partial)} leaves free directions")
    a = [sum(Fraction(rs.gram[i][j]) * sol[j] for j in range(24)) for i in range(24)]
    return AVector(rs, a)


def norm(a: AVector):
    return a.norm()


@lru_cache(maxsize=1)
def default_root_system():
    return build_gram()
