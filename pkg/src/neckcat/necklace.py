"""Necklaces in their joint-set presentation.

A necklace is a finite string of standard simplices glued end to end at
shared vertices.  It is determined by its spine length ``p`` (the total
number of edges along the string) together with the set of gluing
vertices, the *joints*, which always contains both endpoints 0 and p.
We store exactly that: a strictly increasing tuple of naturals starting
at 0 whose last entry is the spine length.  The gaps between consecutive
joints are the bead sizes, so ``Necklace((0, 2, 3))`` has beads (2, 1):
a triangle followed by an edge.  ``Necklace((0,))`` is the point
necklace, the unit for the wedge product that glues two necklaces end to
end.

Every value is immutable and every operation is a pure function, so the
whole module is safe to use concurrently without coordination.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple


class NecklaceError(ValueError):
    """The given data does not describe a necklace."""


class EmptyJoints(NecklaceError):
    """The joint tuple is empty."""


class NotStartingAtZero(NecklaceError):
    """The first joint is not 0."""


class NotStrictlyIncreasing(NecklaceError):
    """The joints are not strictly increasing."""


class ZeroBead(NecklaceError):
    """A bead of size < 1 was supplied."""


class Degree(NamedTuple):
    """Degree of a necklace, compared lexicographically: dimension first,
    then number of beads.  ``(0, 0)`` is attained only by the point."""

    dim: int
    beads: int


class Measures(NamedTuple):
    """All numeric measures of a necklace at once.  ``beads`` is the
    number of beads, not their sizes."""

    spine: int
    beads: int
    dim: int
    degree: Degree


@dataclass(frozen=True, slots=True)
class Necklace:
    """A necklace, stored as its joint set inside ``[0, spine]``."""

    joints: tuple[int, ...]

    def __post_init__(self) -> None:
        joints = tuple(self.joints)
        object.__setattr__(self, "joints", joints)
        if not joints:
            raise EmptyJoints("a necklace needs at least the joint 0")
        if joints[0] != 0:
            raise NotStartingAtZero(f"first joint must be 0, got {joints[0]}")
        for a, b in itertools.pairwise(joints):
            if b <= a:
                raise NotStrictlyIncreasing(f"joints {joints} are not strictly increasing")

    @classmethod
    def from_beads(cls, beads: Iterable[int]) -> "Necklace":
        """Build a necklace from its bead sizes; the empty list gives the point."""
        joints = [0]
        for n in beads:
            if n < 1:
                raise ZeroBead(f"bead sizes must be >= 1, got {n}")
            joints.append(joints[-1] + n)
        return cls(tuple(joints))

    @property
    def spine(self) -> int:
        """Total number of edges along the necklace."""
        return self.joints[-1]

    @property
    def beads(self) -> tuple[int, ...]:
        """Bead sizes, i.e. the consecutive joint differences."""
        return tuple(b - a for a, b in itertools.pairwise(self.joints))

    @property
    def bead_count(self) -> int:
        return len(self.joints) - 1

    @property
    def dim(self) -> int:
        """Spine length minus number of beads; 0 exactly for wedges of
        edges and the point."""
        return self.spine - self.bead_count

    @property
    def degree(self) -> Degree:
        return Degree(self.dim, self.bead_count)

    def wedge(self, other: "Necklace") -> "Necklace":
        """Glue ``other`` onto the end of ``self``.  Associative, with the
        point as two-sided unit."""
        shift = self.spine
        return Necklace(self.joints + tuple(shift + j for j in other.joints[1:]))

    __matmul__ = wedge

    def key(self) -> tuple[int, tuple[int, ...]]:
        """Canonical sort key: spine first, then the joint tuple."""
        return (self.spine, self.joints)

    def __str__(self) -> str:
        if self.spine == 0:
            return "e"
        return "v".join(str(n) for n in self.beads)

    def to_json_dict(self) -> dict:
        return {"joints": list(self.joints)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Necklace":
        return cls(tuple(int(j) for j in data["joints"]))


DELTA0 = Necklace((0,))


def simplex(n: int) -> Necklace:
    """The necklace with a single bead of size ``n`` (the point for n=0)."""
    if n < 0:
        raise NecklaceError(f"simplex size must be >= 0, got {n}")
    return DELTA0 if n == 0 else Necklace((0, n))


def to_beads(necklace: Necklace) -> tuple[int, ...]:
    return necklace.beads


def wedge(a: Necklace, b: Necklace) -> Necklace:
    return a.wedge(b)


def measures(necklace: Necklace) -> Measures:
    return Measures(necklace.spine, necklace.bead_count, necklace.dim, necklace.degree)


def degree_less(a: Degree | tuple[int, ...], b: Degree | tuple[int, ...]) -> bool:
    """Strict lexicographic comparison of degrees."""
    return tuple(a) < tuple(b)


def degree_sum(a: Degree, b: Degree) -> Degree:
    return Degree(a.dim + b.dim, a.beads + b.beads)


def enumerate_necklaces(max_spine: int) -> list[Necklace]:
    """All necklaces with spine <= ``max_spine``, each exactly once.

    The order is canonical: ascending spine, then joint tuples
    lexicographically.  There are 2**(p-1) necklaces of spine p >= 1.
    """
    if max_spine < 0:
        raise NecklaceError(f"max_spine must be >= 0, got {max_spine}")
    out = [DELTA0]
    for p in range(1, max_spine + 1):
        joint_tuples = [
            (0, *mid, p)
            for r in range(p)
            for mid in itertools.combinations(range(1, p), r)
        ]
        out.extend(Necklace(joints) for joints in sorted(joint_tuples))
    return out


def parse_necklace(text: str) -> Necklace:
    """Parse the text syntax: joint form ``"0,2,3"``, bead form ``"2v1"``,
    or ``"e"`` for the point.  A bare ``"0"`` also denotes the point."""
    t = text.strip()
    if t == "e" or t == "0":
        return DELTA0
    if "," in t:
        return Necklace(tuple(int(x) for x in t.split(",")))
    return Necklace.from_beads(tuple(int(x) for x in t.split("v")))
