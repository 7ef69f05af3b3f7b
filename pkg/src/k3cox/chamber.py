"""Fundamental chamber, reflection reduction, and cone identification.

The chamber is {a_i >= 0 for all i} in a-coordinates.  Reduction into it
walks the reflection group: reflecting in the most negative wall strictly
decreases the pairing with a fixed interior vector, which certifies
termination.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .diagrams import (
    DiagramEnumeration,
    Subdiagram,
    classify,
    mask_of,
    relevant_content,
    vertices_of,
)
from .lattice import (
    AVector,
    Inconsistent,
    MAXIMAL_PARABOLIC_PARTS,
    RootSystem,
    complete_a,
    default_root_system,
)


class NotInCone(Exception):
    """Vector is outside the rational closure of the positive cone."""


@dataclass(frozen=True)
class ConeDescriptor:
    """Cone of the Coxeter fan containing a chamber point, with stratum data."""

    zero_set: Subdiagram
    relevant: Subdiagram
    type: str                 # "II" or "III"
    tor_stratum_dim: int
    slc_stratum_dim: int
    parabolic_class: Optional[str] = None

    def to_json(self):
        return {
            "zero_set": list(self.zero_set.vertices),
            "class": self.zero_set.cls,
            "relevant_zero_set": list(self.relevant.vertices),
            "type": self.type,
            "tor_dim": self.tor_stratum_dim,
            "slc_dim": self.slc_stratum_dim,
            **(
                {"parabolic_class": self.parabolic_class}
                if self.parabolic_class
                else {}
            ),
        }


@dataclass(frozen=True)
class SemifanCone:
    """A cone of the coarsened (semifan) decomposition: keyed by G^rel."""

    zero_set: Subdiagram
    relevant: Subdiagram

    def same_cone(self, other: "SemifanCone") -> bool:
        return self.relevant.mask == other.relevant.mask

    def to_json(self):
        return {
            "zero_set": list(self.zero_set.vertices),
            "relevant_zero_set": list(self.relevant.vertices),
        }


@dataclass(frozen=True)
class ReductionResult:
    vector: AVector
    word: tuple
    certificate: tuple      # strictly decreasing pairings with the interior vector


class Chamber:
    """The fundamental chamber with a fixed interior lattice vector."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        # deterministic interior point: the unique lattice vector pairing
        # to 2 with the first 21 roots (all-2 on every root is not a valid
        # pairing vector, so a completion is used instead)
        self.rho = complete_a(rs, {i: 2 for i in range(21)})
        if not (all(x > 0 for x in self.rho.a) and self.rho.in_n()):
            raise Inconsistent("interior vector construction failed")

    def contains(self, a: AVector) -> bool:
        return all(x >= 0 for x in a.a)

    def rho_pairing(self, a: AVector) -> Fraction:
        return self.rho.pair(a)

    def reduce(self, a: AVector) -> ReductionResult:
        """Reflect a into the chamber; most negative wall first, ties by index.

        Requires a in the rational closure of the positive cone.
        """
        if any(x != 0 for x in a.a):
            if a.norm() < 0 or self.rho_pairing(a) <= 0:
                raise NotInCone("vector is not in the closed positive cone")
        vals = list(a.a)
        gram = self.rs.gram
        word = []
        height = self.rho_pairing(a)
        cert = [height]
        while True:
            neg = [(vals[i], i) for i in range(24) if vals[i] < 0]
            if not neg:
                break
            _, i = min(neg)
            ai = vals[i]
            vals = [vals[j] + ai * gram[i][j] for j in range(24)]
            height += ai * self.rho.a[i]
            word.append(i)
            cert.append(height)
        return ReductionResult(AVector(self.rs, vals), tuple(word), tuple(cert))

    def reflect(self, a: AVector, i: int) -> AVector:
        """Image of a under the reflection in the i-th root."""
        ai = a.a[i]
        return AVector(
            self.rs, [a.a[j] + ai * self.rs.gram[i][j] for j in range(24)]
        )

    # ------------------------------------------------------------------

    def in_fundamental(self, a: AVector) -> bool:
        return self.contains(a)

    def cone_of(self, a: AVector) -> ConeDescriptor:
        """Cone of the Coxeter fan whose relative interior contains a."""
        if not self.contains(a):
            raise NotInCone("a-vector has a negative coordinate")
        if all(x == 0 for x in a.a):
            raise NotInCone("zero vector spans no cone")
        sub = classify(self.rs, a.zero_set())
        rel = relevant_content(self.rs, sub)
        n = a.norm()
        if n > 0:
            if sub.cls != "elliptic":
                raise Inconsistent(
                    "positive norm with non-elliptic zero set contradicts the face correspondence"
                )
            return ConeDescriptor(sub, rel, "III", sub.rank, rel.rank)
        if n < 0:
            raise NotInCone("negative norm inside the chamber")
        name = self._parabolic_class_of(sub)
        if name is None:
            raise Inconsistent("norm zero but zero set contains no maximal parabolic")
        slc = rel.rank + 1
        return ConeDescriptor(sub, rel, "II", 18, slc, parabolic_class=name)

    def _parabolic_class_of(self, sub: Subdiagram) -> Optional[str]:
        from .diagrams import automorphism_group

        sym = _symmetry(self.rs)
        for name, parts in MAXIMAL_PARABOLIC_PARTS.items():
            std = mask_of(v for p in parts for v in p)
            for perm in sym.s3:
                if sym.apply(perm, std) & sub.mask == sym.apply(perm, std):
                    return name
        return None

    def semifan_cone(self, a: AVector) -> SemifanCone:
        if not self.contains(a):
            raise NotInCone("a-vector has a negative coordinate")
        sub = classify(self.rs, a.zero_set())
        return SemifanCone(sub, relevant_content(self.rs, sub))


@lru_cache(maxsize=4)
def _symmetry(rs: RootSystem):
    from .diagrams import automorphism_group

    return automorphism_group(rs)


def count_boundary_divisors(enumeration: DiagramEnumeration):
    """(type II, type III) boundary divisor counts of the coarse models.

    Type III divisors: rank-18 elliptic subdiagrams without irrelevant
    components, one per symmetry class (cycle-contained classes would be
    reduced by the dihedral cycle group, but none exist in rank 18).
    Type II divisors: maximal parabolic classes whose relevant content
    still has rank 17.
    """
    rs = enumeration.rs
    sym = enumeration.symmetry
    cycle_mask = (1 << 18) - 1
    t3 = set()
    for mask in enumeration.elliptic_representatives(18, "s3"):
        sub = classify(rs, mask)
        rel = relevant_content(rs, sub)
        if rel.mask != mask:
            continue
        if mask & ~cycle_mask == 0:
            from .diagrams import d9_canonical_mask

            t3.add(d9_canonical_mask(mask))
        else:
            t3.add(sym.orbit_min(mask))
    t2 = 0
    for entry in enumeration.maximal_parabolics():
        rel = relevant_content(rs, entry["mask"])
        if rel.rank == 17:
            t2 += 1
    return t2, len(t3)


@lru_cache(maxsize=1)
def default_chamber() -> Chamber:
    return Chamber(default_root_system())
