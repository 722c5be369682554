"""Necklace morphisms: validation, hom-sets, classification, factorizations.

A map of necklaces ``(T, p) -> (S, q)`` is a monotone vertex map
``[p] -> [q]`` fixing both endpoints whose image of the source joints
covers every target joint.  We store the vertex images as a tuple of
length ``p + 1``.

The module provides the four classification predicates (active / inert,
mono / epi plus the bead-reducing and spine-collapsing refinements of
epis), the three factorizations (active-inert, epi-mono, and the
bead-reducing / spine-collapsing splitting of an epi), images, the wedge
of maps and its inverse on monomorphisms (splitting a mono into a wedge
target into a wedge of monos).

Hom-sets are enumerated by brute force over monotone vertex maps; the
vertex-map pool is memoized per ``(p, q)``.  Everything is pure and
immutable; the memo tables are the functools caches, which are safe for
concurrent use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .necklace import DELTA0, Necklace


class MapError(ValueError):
    """The given data does not describe a necklace map."""


class LengthMismatch(MapError):
    """The image tuple does not have spine(src) + 1 entries."""


class NotMonotone(MapError):
    """The vertex images are not monotone non-decreasing."""


class EndpointViolation(MapError):
    """The vertex map does not fix the endpoints 0 and spine(tgt)."""


class JointConditionViolation(MapError):
    """Some target joint is not the image of a source joint."""


class NotComposable(MapError):
    """Source and target do not match up for composition."""


class NotEpi(MapError):
    """The operation needs an epimorphism."""


class NotMono(MapError):
    """The operation needs a monomorphism."""


class SplitNotAJoint(MapError):
    """The requested split point is not realized as a target joint."""


@dataclass(frozen=True, slots=True)
class NecMap:
    """A necklace map, stored by its vertex images."""

    src: Necklace
    tgt: Necklace
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        p, q = self.src.spine, self.tgt.spine
        if len(images) != p + 1:
            raise LengthMismatch(f"expected {p + 1} vertex images, got {len(images)}")
        for a, b in itertools.pairwise(images):
            if b < a:
                raise NotMonotone(f"vertex images {images} are not monotone")
        if images[0] != 0 or images[-1] != q:
            raise EndpointViolation(f"vertex map must send 0 to 0 and {p} to {q}")
        hit = {images[t] for t in self.src.joints}
        if not set(self.tgt.joints) <= hit:
            raise JointConditionViolation(
                f"target joints {self.tgt.joints} not covered by image of source joints {sorted(hit)}"
            )

    @classmethod
    def identity(cls, necklace: Necklace) -> "NecMap":
        return cls(necklace, necklace, tuple(range(necklace.spine + 1)))

    @property
    def is_identity(self) -> bool:
        return self.src == self.tgt and all(v == i for i, v in enumerate(self.images))

    def __call__(self, vertex: int) -> int:
        return self.images[vertex]

    def then(self, other: "NecMap") -> "NecMap":
        """Diagrammatic composition: ``f.then(g)`` is g after f."""
        return compose(other, self)

    def key(self) -> tuple:
        return (self.src.key(), self.tgt.key(), self.images)

    def __str__(self) -> str:
        return f"{self.src}>{self.tgt}:{','.join(str(v) for v in self.images)}"

    def to_json_dict(self) -> dict:
        return {
            "src": self.src.to_json_dict(),
            "tgt": self.tgt.to_json_dict(),
            "images": list(self.images),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "NecMap":
        return cls(
            Necklace.from_json_dict(data["src"]),
            Necklace.from_json_dict(data["tgt"]),
            tuple(int(v) for v in data["images"]),
        )


@dataclass(frozen=True, slots=True)
class MapClass:
    """Classification flags of a necklace map.

    ``inert`` implies ``mono``; ``epi`` implies ``active``; both
    ``bead_reducing`` and ``spine_collapsing`` imply ``epi``.  Identity
    maps carry every flag.
    """

    active: bool
    inert: bool
    mono: bool
    epi: bool
    bead_reducing: bool
    spine_collapsing: bool


def compose(g: NecMap, f: NecMap) -> NecMap:
    """The composite g after f.  Validity of the result is a theorem, so the
    re-validation performed by the constructor never fails on composable
    valid maps."""
    if f.tgt != g.src:
        raise NotComposable(f"cannot compose: target {f.tgt} differs from source {g.src}")
    return NecMap(f.src, g.tgt, tuple(g.images[v] for v in f.images))


@lru_cache(maxsize=None)
def vertex_maps(p: int, q: int) -> tuple[tuple[int, ...], ...]:
    """All monotone maps [p] -> [q] fixing both endpoints, in lexicographic
    order of their image tuples."""
    if p == 0:
        return ((0,),) if q == 0 else ()
    return tuple(
        (0, *mid, q)
        for mid in itertools.combinations_with_replacement(range(q + 1), p - 1)
    )


@lru_cache(maxsize=None)
def hom_set(x: Necklace, y: Necklace) -> tuple[NecMap, ...]:
    """All necklace maps x -> y, in lexicographic order of vertex images."""
    target_joints = set(y.joints)
    return tuple(
        NecMap(x, y, f)
        for f in vertex_maps(x.spine, y.spine)
        if target_joints <= {f[t] for t in x.joints}
    )


def classify(f: NecMap) -> MapClass:
    images = f.images
    src_joints = f.src.joints
    hit = {images[t] for t in src_joints}
    active = hit == set(f.tgt.joints)
    inert = f.src.spine == f.tgt.spine and all(v == i for i, v in enumerate(images))
    mono = all(b > a for a, b in itertools.pairwise(images)) if len(images) > 1 else True
    # a monotone endpoint-fixing map is surjective iff no step exceeds 1
    surjective = all(b - a <= 1 for a, b in itertools.pairwise(images))
    epi = active and surjective
    bead_reducing = epi
    spine_collapsing = epi
    if epi:
        for a, b in itertools.pairwise(src_joints):
            size, drop = b - a, images[b] - images[a]
            if drop == 0:
                bead_reducing = False
            if not (drop == size or (size == 1 and drop == 0)):
                spine_collapsing = False
    return MapClass(active, inert, mono, epi, bead_reducing, spine_collapsing)


def factor_active_inert(f: NecMap) -> tuple[NecMap, NecMap]:
    """The unique factorization of f as an active map followed by an inert
    one: squeeze the target joints down to the image of the source joints,
    then include."""
    hit = tuple(sorted({f.images[t] for t in f.src.joints}))
    middle = Necklace(hit)
    active = NecMap(f.src, middle, f.images)
    inert = NecMap.identity(f.tgt)
    inert = NecMap(middle, f.tgt, inert.images)
    return active, inert


def factor_epi_mono(f: NecMap) -> tuple[NecMap, NecMap]:
    """The unique factorization of f as an epimorphism followed by a
    monomorphism, through the image necklace."""
    values = sorted(set(f.images))
    rank = {v: i for i, v in enumerate(values)}
    middle = Necklace(tuple(sorted({rank[f.images[t]] for t in f.src.joints})))
    epi = NecMap(f.src, middle, tuple(rank[v] for v in f.images))
    mono = NecMap(middle, f.tgt, tuple(values))
    return epi, mono


def image(f: NecMap) -> Necklace:
    """The image of f, always itself a necklace."""
    return factor_epi_mono(f)[0].tgt


def factor_bead_spine(e: NecMap) -> tuple[NecMap, NecMap]:
    """Factor an epimorphism as a bead-reducing map followed by a
    spine-collapsing map.

    The factorization is not unique in general; we fix a canonical choice:
    a bead fully collapsed by ``e`` passes through an edge, with every
    vertex except the last sent to the edge's start ("last-vertex
    collapse").  Only the composite is contractual.
    """
    if not classify(e).epi:
        raise NotEpi(f"{e} is not an epimorphism")
    src_joints = e.src.joints
    mid_sizes = [max(e.images[b] - e.images[a], 1) for a, b in itertools.pairwise(src_joints)]
    middle = Necklace.from_beads(mid_sizes)
    reduce_images = [0] * (e.src.spine + 1)
    collapse_images = [0] * (middle.spine + 1)
    for i, (a, b) in enumerate(itertools.pairwise(src_joints)):
        offset = middle.joints[i]
        base = e.images[a]
        if e.images[b] > base:
            for x in range(a, b + 1):
                reduce_images[x] = offset + e.images[x] - base
            for j in range(mid_sizes[i] + 1):
                collapse_images[offset + j] = base + j
        else:
            for x in range(a, b):
                reduce_images[x] = offset
            reduce_images[b] = offset + 1
            collapse_images[offset] = base
            collapse_images[offset + 1] = base
    bead_reducing = NecMap(e.src, middle, tuple(reduce_images))
    spine_collapsing = NecMap(middle, e.tgt, tuple(collapse_images))
    return bead_reducing, spine_collapsing


def wedge_maps(f1: NecMap, f2: NecMap) -> NecMap:
    """The wedge of two maps, acting on the glued necklaces."""
    shift = f1.tgt.spine
    return NecMap(
        f1.src.wedge(f2.src),
        f1.tgt.wedge(f2.tgt),
        f1.images + tuple(v + shift for v in f2.images[1:]),
    )


def split_mono(f: NecMap, q1: int, q2: int) -> tuple[NecMap, NecMap]:
    """Split a monomorphism into a wedge target as the wedge of two monos.

    The target must decompose as Y1 wedge Y2 with spines ``q1`` and ``q2``;
    the split is through the unique source joint mapping to ``q1``.  The
    resulting pair is the unique one whose wedge is ``f``.
    """
    if not classify(f).mono:
        raise NotMono(f"{f} is not a monomorphism")
    target_joints = f.tgt.joints
    if q1 < 0 or q2 < 0 or q1 + q2 != f.tgt.spine:
        raise SplitNotAJoint(f"spines {q1}+{q2} do not add up to {f.tgt.spine}")
    if q1 not in target_joints:
        raise SplitNotAJoint(f"{q1} is not a joint of the target {f.tgt.joints}")
    hits = [t for t in f.src.joints if f.images[t] == q1]
    assert len(hits) == 1, "a mono hits a target joint through exactly one source joint"
    r = hits[0]
    x1 = Necklace(tuple(t for t in f.src.joints if t <= r))
    x2 = Necklace(tuple(t - r for t in f.src.joints if t >= r))
    y1 = Necklace(tuple(s for s in target_joints if s <= q1))
    y2 = Necklace(tuple(s - q1 for s in target_joints if s >= q1))
    f1 = NecMap(x1, y1, f.images[: r + 1])
    f2 = NecMap(x2, y2, tuple(v - q1 for v in f.images[r:]))
    return f1, f2


def terminal_map(x: Necklace) -> NecMap:
    """The unique map to the point necklace; always an epimorphism."""
    return NecMap(x, DELTA0, (0,) * (x.spine + 1))


def parse_map(text: str) -> NecMap:
    """Parse the text syntax ``"src>tgt:0,0,1"`` with necklaces in joint or
    bead form."""
    from .necklace import parse_necklace

    head, colon, imgs = text.partition(":")
    src_text, arrow, tgt_text = head.partition(">")
    if not colon or not arrow or not imgs:
        raise MapError(f"cannot parse map {text!r}; expected 'src>tgt:v0,v1,...'")
    return NecMap(
        parse_necklace(src_text),
        parse_necklace(tgt_text),
        tuple(int(v) for v in imgs.split(",")),
    )
