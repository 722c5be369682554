"""Finite-set presheaves on a spine-truncated necklace category, and their
Day convolution computed as a coend.

A presheaf assigns a finite set to every necklace in the window and a
restriction function to every map, contravariantly.  The convolution of
two presheaves F and G has, at a necklace N, the set of equivalence
classes of triples ``(h: N -> Y v Z, a in F(Y), b in G(Z))`` over
in-window pairs (Y, Z) with spine sum inside the window, where the
relation identifies, for u: Y -> Y', the triple ``(h, F(u)(a'), b)`` with
``((u v id) . h, a', b)`` and symmetrically in the second variable.

The classes are computed by union-find.  Generating moves use one
variable at a time, with u ranging over the elementary maps of the
window (single edge collapses, single vertex insertions, single joint
drops): an arbitrary map factors through such elementary steps with all
intermediates inside the window, so these moves generate the same
equivalence as moves along every map.

This computes the coend of the window-restricted diagram.  When both
factors are representables whose representing objects fit in the window,
every class has a representative over the representing pair and the
result agrees with the untruncated coend; for general presheaves it is
the truncated approximation.

Class representatives are canonical: the smallest triple under the
order (Y, Z, h, a, b), with necklaces ordered by spine then joints, h by
its vertex-image tuple, and a, b by their positions in the value sets.
All computations are per-object and independent, hence safe to run
concurrently; union-find state is local to each object.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from . import maps as nm
from .maps import NecMap, hom_set
from .necklace import DELTA0, Necklace, enumerate_necklaces
from .union_find import UnionFind


class PresheafError(ValueError):
    """The given data does not describe a presheaf on the window."""


class MissingSet(PresheafError):
    pass


class MissingRestriction(PresheafError):
    pass


class FunctorialityViolation(PresheafError):
    pass


class WindowMismatch(PresheafError):
    pass


class WindowTooSmall(PresheafError):
    pass


def _joint_text(n: Necklace) -> str:
    return ",".join(str(j) for j in n.joints)


@dataclass(frozen=True)
class Presheaf:
    """Finite-set presheaf on the necklaces of spine <= ``window``.

    ``sets`` maps each necklace to an ordered tuple of element ids;
    ``restrictions`` maps each necklace map ``f: X -> Y`` to a dict sending
    elements of the value at Y to elements of the value at X.
    """

    window: int
    sets: Mapping[Necklace, tuple]
    restrictions: Mapping[NecMap, Mapping]

    def at(self, n: Necklace) -> tuple:
        try:
            return self.sets[n]
        except KeyError:
            raise MissingSet(f"no value set at {n}") from None

    def restrict(self, f: NecMap, element):
        try:
            table = self.restrictions[f]
        except KeyError:
            raise MissingRestriction(f"no restriction along {f}") from None
        return table[element]

    def validate(self) -> None:
        """Exhaustively check presence and functoriality over the window."""
        objs = enumerate_necklaces(self.window)
        for n in objs:
            if n not in self.sets:
                raise MissingSet(f"no value set at {n}")
        window_maps = [f for x in objs for y in objs for f in hom_set(x, y)]
        for f in window_maps:
            if f not in self.restrictions:
                raise MissingRestriction(f"no restriction along {f}")
            table = self.restrictions[f]
            if set(table.keys()) != set(self.sets[f.tgt]):
                raise MissingRestriction(f"restriction along {f} is not total on the target value")
            src_elems = set(self.sets[f.src])
            if not set(table.values()) <= src_elems:
                raise MissingRestriction(f"restriction along {f} leaves the source value")
        for n in objs:
            ident = NecMap.identity(n)
            if any(self.restrictions[ident][e] != e for e in self.sets[n]):
                raise FunctorialityViolation(f"restriction along id_{n} is not the identity")
        by_src: dict[Necklace, list[NecMap]] = {}
        for f in window_maps:
            by_src.setdefault(f.src, []).append(f)
        for f in window_maps:
            for g in by_src.get(f.tgt, ()):
                gf = nm.compose(g, f)
                table_f = self.restrictions[f]
                table_g = self.restrictions[g]
                table_gf = self.restrictions[gf]
                for e in self.sets[g.tgt]:
                    if table_gf[e] != table_f[table_g[e]]:
                        raise FunctorialityViolation(
                            f"restriction along {g} after {f} disagrees with the composite"
                        )

    def to_json_dict(self) -> dict:
        return {
            "window": self.window,
            "sets": {_joint_text(n): [str(e) for e in elems] for n, elems in self.sets.items()},
            "restrictions": {
                str(f): {str(e): str(v) for e, v in table.items()}
                for f, table in self.restrictions.items()
            },
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Presheaf":
        from .necklace import parse_necklace

        sets = {
            parse_necklace(key): tuple(elems) for key, elems in data["sets"].items()
        }
        restrictions = {
            nm.parse_map(key): dict(table) for key, table in data["restrictions"].items()
        }
        presheaf = cls(int(data["window"]), sets, restrictions)
        presheaf.validate()
        return presheaf


def make_presheaf(window: int, sets: Mapping, restrictions: Mapping) -> Presheaf:
    """Build and validate a presheaf from explicit data."""
    presheaf = Presheaf(window, dict(sets), dict(restrictions))
    presheaf.validate()
    return presheaf


@lru_cache(maxsize=None)
def representable(x: Necklace, window: int) -> Presheaf:
    """The presheaf N -> hom(N, x), restriction by precomposition."""
    if x.spine > window:
        raise WindowTooSmall(f"{x} has spine {x.spine} > window {window}")
    objs = enumerate_necklaces(window)
    sets = {n: hom_set(n, x) for n in objs}
    restrictions = {}
    for n in objs:
        for m in objs:
            for f in hom_set(n, m):
                restrictions[f] = {a: nm.compose(a, f) for a in sets[m]}
    return Presheaf(window, sets, restrictions)


def day_unit(window: int) -> Presheaf:
    """The convolution unit: the representable at the point necklace,
    which is the constant singleton presheaf since the point is terminal."""
    return representable(DELTA0, window)


# -- the coend engine -----------------------------------------------------


@lru_cache(maxsize=None)
def _hom_images(x: Necklace, y: Necklace) -> tuple[tuple[int, ...], ...]:
    return tuple(f.images for f in hom_set(x, y))


@lru_cache(maxsize=None)
def _hom_pos(x: Necklace, y: Necklace) -> dict:
    return {images: i for i, images in enumerate(_hom_images(x, y))}


@lru_cache(maxsize=None)
def _generators(window: int) -> tuple[NecMap, ...]:
    """Elementary maps of the window: epis collapsing a single edge, active
    monos inserting a single vertex, and inert monos dropping a single
    joint.

    Every map factors as an epi followed by a mono through its image, the
    epi into edge collapses, and the mono into vertex insertions followed
    by joint drops; all intermediates stay inside the window because their
    spines never exceed the larger endpoint's.  Single-variable moves
    along these therefore generate the full coend relation (verified
    against all-map move generation in the tests).
    """
    objs = enumerate_necklaces(window)
    out = []
    for x in objs:
        for y in objs:
            for f in hom_set(x, y):
                if f.is_identity:
                    continue
                flags = nm.classify(f)
                if flags.epi and f.src.spine - f.tgt.spine == 1:
                    out.append(f)
                elif flags.mono and flags.active and f.tgt.spine - f.src.spine == 1:
                    out.append(f)
                elif flags.inert and len(f.src.joints) - len(f.tgt.joints) == 1:
                    out.append(f)
    return tuple(out)


@lru_cache(maxsize=None)
def _wedge_left(u_images: tuple[int, ...], u_tgt_spine: int, z_spine: int) -> tuple[int, ...]:
    """Vertex images of (u wedge id_Z)."""
    return u_images + tuple(range(u_tgt_spine + 1, u_tgt_spine + z_spine + 1))


@lru_cache(maxsize=None)
def _wedge_right(y_spine: int, v_images: tuple[int, ...]) -> tuple[int, ...]:
    """Vertex images of (id_Y wedge v)."""
    return tuple(range(y_spine)) + tuple(y_spine + x for x in v_images)


@dataclass
class _Block:
    y: Necklace
    z: Necklace
    base: int
    homs: tuple[tuple[int, ...], ...]
    nf: int
    ng: int


class _ObjectClasses:
    """Coend classes of one convolution at one necklace."""

    def __init__(self, blocks: list[_Block], uf: UnionFind, total: int):
        self.blocks = blocks
        self._uf = uf
        self.total = total
        self._root_to_class: dict[int, int] = {}
        self.reps: list[int] = []
        for i in range(total):
            r = uf.find(i)
            if r not in self._root_to_class:
                self._root_to_class[r] = len(self.reps)
                self.reps.append(i)
        self._bases = [b.base for b in blocks]

    @property
    def n_classes(self) -> int:
        return len(self.reps)

    def decode(self, index: int) -> tuple[Necklace, Necklace, tuple[int, ...], int, int]:
        b = self.blocks[bisect.bisect_right(self._bases, index) - 1]
        local = index - b.base
        ib = local % b.ng
        ia = (local // b.ng) % b.nf
        hpos = local // (b.ng * b.nf)
        return (b.y, b.z, b.homs[hpos], ia, ib)

    def element_id(self, index: int) -> tuple:
        y, z, h, ia, ib = self.decode(index)
        return (y.joints, z.joints, h, ia, ib)

    def class_of(self, block: _Block, h_images: tuple[int, ...], ia: int, ib: int, hpos: int) -> int:
        index = block.base + (hpos * block.nf + ia) * block.ng + ib
        return self._root_to_class[self._uf.find(index)]

    def class_of_index(self, index: int) -> int:
        return self._root_to_class[self._uf.find(index)]


def _convolution(f_presheaf: Presheaf, g_presheaf: Presheaf) -> dict[Necklace, _ObjectClasses]:
    """Coend classes of F convolved with G, at every window necklace."""
    if f_presheaf.window != g_presheaf.window:
        raise WindowMismatch(
            f"windows differ: {f_presheaf.window} vs {g_presheaf.window}"
        )
    window = f_presheaf.window
    objs = enumerate_necklaces(window)
    pairs = [(y, z) for y in objs for z in objs if y.spine + z.spine <= window]
    gens = _generators(window)

    f_index = {y: {e: i for i, e in enumerate(f_presheaf.at(y))} for y in objs}
    g_index = {z: {e: i for i, e in enumerate(g_presheaf.at(z))} for z in objs}
    f_pull = {
        u: [f_index[u.src][f_presheaf.restrict(u, e)] for e in f_presheaf.at(u.tgt)]
        for u in gens
    }
    g_pull = {
        u: [g_index[u.src][g_presheaf.restrict(u, e)] for e in g_presheaf.at(u.tgt)]
        for u in gens
    }
    f_sizes = {y: len(f_presheaf.at(y)) for y in objs}
    g_sizes = {z: len(g_presheaf.at(z)) for z in objs}

    result: dict[Necklace, _ObjectClasses] = {}
    for n in objs:
        blocks: list[_Block] = []
        block_at: dict[tuple[Necklace, Necklace], _Block] = {}
        base = 0
        for y, z in pairs:
            nf, ng = f_sizes[y], g_sizes[z]
            if nf == 0 or ng == 0:
                continue
            homs = _hom_images(n, y.wedge(z))
            if not homs:
                continue
            block = _Block(y, z, base, homs, nf, ng)
            blocks.append(block)
            block_at[(y, z)] = block
            base += len(homs) * nf * ng
        uf = UnionFind(base)
        parent, size = uf.parent, uf.size

        def unite(a: int, b: int) -> None:
            # inlined find with path halving; the loop below is the hot path
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            if a == b:
                return
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
            uf.components -= 1

        for u in gens:
            # first-variable move: (h, F(u)(a'), b) ~ ((u v id) . h, a', b)
            pull = f_pull[u]
            if pull:
                for z in objs:
                    b1 = block_at.get((u.src, z))
                    b2 = block_at.get((u.tgt, z))
                    if b1 is None or b2 is None:
                        continue
                    w = _wedge_left(u.images, u.tgt.spine, z.spine)
                    pos2 = _hom_pos(n, u.tgt.wedge(z))
                    ng = b1.ng
                    step1, step2 = b1.nf * ng, b2.nf * ng
                    for hpos, h in enumerate(b1.homs):
                        h2pos = pos2[tuple(w[v] for v in h)]
                        s_base = b1.base + hpos * step1
                        d_base = b2.base + h2pos * step2
                        if ng == 1:
                            for ia2, ia in enumerate(pull):
                                unite(s_base + ia, d_base + ia2)
                        else:
                            for ia2, ia in enumerate(pull):
                                s0 = s_base + ia * ng
                                d0 = d_base + ia2 * ng
                                for ib in range(ng):
                                    unite(s0 + ib, d0 + ib)
            # second-variable move: (h, a, G(u)(b')) ~ ((id v u) . h, a, b')
            pull = g_pull[u]
            if pull:
                for y in objs:
                    b1 = block_at.get((y, u.src))
                    b2 = block_at.get((y, u.tgt))
                    if b1 is None or b2 is None:
                        continue
                    w = _wedge_right(y.spine, u.images)
                    pos2 = _hom_pos(n, y.wedge(u.tgt))
                    nf = b1.nf
                    ng1, ng2 = b1.ng, b2.ng
                    for hpos, h in enumerate(b1.homs):
                        h2pos = pos2[tuple(w[v] for v in h)]
                        s_base = b1.base + hpos * nf * ng1
                        d_base = b2.base + h2pos * nf * ng2
                        for ia in range(nf):
                            s0 = s_base + ia * ng1
                            d0 = d_base + ia * ng2
                            for ib2, ib in enumerate(pull):
                                unite(s0 + ib, d0 + ib2)
        result[n] = _ObjectClasses(blocks, uf, base)
    return result


def day_convolve(f_presheaf: Presheaf, g_presheaf: Presheaf) -> Presheaf:
    """The Day convolution presheaf.  Elements are canonical class
    representatives ``(Y.joints, Z.joints, h images, a index, b index)``;
    restriction along g acts by precomposing the h component."""
    window = f_presheaf.window
    conv = _convolution(f_presheaf, g_presheaf)
    objs = enumerate_necklaces(window)
    sets = {n: tuple(conv[n].element_id(i) for i in conv[n].reps) for n in objs}
    block_index = {n: {(b.y, b.z): b for b in conv[n].blocks} for n in objs}
    restrictions: dict[NecMap, dict] = {}
    for x in objs:
        for y in objs:
            for g in hom_set(x, y):
                table = {}
                classes_src = conv[x]
                for rep_index, element in zip(conv[y].reps, sets[y]):
                    yj, zj, h, ia, ib = element
                    hg = tuple(h[v] for v in g.images)
                    block = block_index[x][(Necklace(yj), Necklace(zj))]
                    hpos = _hom_pos(x, Necklace(yj).wedge(Necklace(zj)))[hg]
                    cls = classes_src.class_of(block, hg, ia, ib, hpos)
                    table[element] = sets[x][cls]
                restrictions[g] = table
    return Presheaf(window, sets, restrictions)


# -- canonical comparisons -------------------------------------------------


@dataclass(frozen=True)
class ComparisonReport:
    """Per-object canonical comparison out of a convolution, with the
    bijectivity verdict; ``mapping`` holds the per-object function from
    class representatives to their canonical values."""

    check: str
    window: int
    passed: bool
    objects: tuple[dict, ...]
    failures: tuple[dict, ...]
    mapping: Mapping[Necklace, Mapping]

    def __bool__(self) -> bool:
        return self.passed

    def to_json_dict(self) -> dict:
        return {
            "check": self.check,
            "window": self.window,
            "pass": self.passed,
            "objects": [dict(o) for o in self.objects],
            "failures": [dict(f) for f in self.failures],
        }


def _comparison_sweep(
    check: str,
    window: int,
    conv: dict[Necklace, _ObjectClasses],
    value_of,
    target_of,
) -> ComparisonReport:
    """Shared driver: compute the canonical value of every triple, verify
    it is constant on classes, and compare the induced map on classes with
    the target set at every object."""
    objects = []
    failures = []
    mapping: dict[Necklace, dict] = {}
    for n, classes in conv.items():
        values: list = [None] * classes.n_classes
        constant = True
        for block in classes.blocks:
            for hpos, h in enumerate(block.homs):
                for ia in range(block.nf):
                    for ib in range(block.ng):
                        index = block.base + (hpos * block.nf + ia) * block.ng + ib
                        val = value_of(n, block, h, ia, ib)
                        cls = classes.class_of_index(index)
                        if values[cls] is None:
                            values[cls] = val
                        elif values[cls] != val:
                            constant = False
        target = target_of(n)
        distinct = len(set(values)) == len(values)
        onto = set(values) == set(target)
        bijective = constant and distinct and onto and len(values) == len(target)
        mapping[n] = {
            classes.element_id(rep): values[cls]
            for cls, rep in enumerate(classes.reps)
        }
        objects.append(
            {
                "necklace": str(n),
                "classes": classes.n_classes,
                "target": len(target),
                "bijective": bijective,
            }
        )
        if not bijective:
            reason = (
                "not constant on classes"
                if not constant
                else "not injective" if not distinct else "not onto the target"
            )
            failures.append({"necklace": str(n), "reason": reason})
    return ComparisonReport(check, window, not failures, tuple(objects), tuple(failures), mapping)


def rep_comparison(x1: Necklace, x2: Necklace, window: int) -> ComparisonReport:
    """Canonical map from the convolution of two representables to the
    representable of the wedge: the class of (h, a, b) goes to
    ``(a wedge b) . h``.  Bijective at every object when both representing
    objects fit in the window together."""
    if x1.spine + x2.spine > window:
        raise WindowTooSmall(
            f"spines {x1.spine}+{x2.spine} exceed window {window}"
        )
    f_presheaf = representable(x1, window)
    g_presheaf = representable(x2, window)
    conv = _convolution(f_presheaf, g_presheaf)
    target = x1.wedge(x2)
    shift = x1.spine

    def value_of(n, block, h, ia, ib):
        a = f_presheaf.at(block.y)[ia].images
        b = g_presheaf.at(block.z)[ib].images
        ab = a + tuple(v + shift for v in b[1:])
        return tuple(ab[v] for v in h)

    def target_of(n):
        return _hom_images(n, target)

    return _comparison_sweep("rep-comparison", window, conv, value_of, target_of)


def unit_comparison(f_presheaf: Presheaf, side: str = "right") -> ComparisonReport:
    """Canonical map from the convolution with the unit back to the
    presheaf: collapse the unit-side factor through the unique map to the
    point and restrict.  Bijective at every object, for either side."""
    window = f_presheaf.window
    unit = day_unit(window)
    if side == "right":
        conv = _convolution(f_presheaf, unit)

        def value_of(n, block, h, ia, ib):
            collapse = tuple(min(v, block.y.spine) for v in h)
            along = NecMap(n, block.y, collapse)
            return f_presheaf.restrict(along, f_presheaf.at(block.y)[ia])

    elif side == "left":
        conv = _convolution(unit, f_presheaf)

        def value_of(n, block, h, ia, ib):
            collapse = tuple(max(v - block.y.spine, 0) for v in h)
            along = NecMap(n, block.z, collapse)
            return f_presheaf.restrict(along, f_presheaf.at(block.z)[ib])

    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def target_of(n):
        return f_presheaf.at(n)

    return _comparison_sweep(f"unit-comparison-{side}", window, conv, value_of, target_of)


def assoc_comparison(a: Necklace, b: Necklace, c: Necklace, window: int, bracket: str = "left") -> ComparisonReport:
    """Canonical map from either bracketing of the convolution of three
    representables to the representable of the triple wedge."""
    if a.spine + b.spine + c.spine > window:
        raise WindowTooSmall("spine sum exceeds the window")
    target = a.wedge(b).wedge(c)

    if bracket == "left":
        inner = day_convolve(representable(a, window), representable(b, window))
        conv = _convolution(inner, representable(c, window))
        shift_ab = a.spine

        def value_of(n, block, h, ia, ib):
            yj, zj, h1, ia1, ib1 = inner.at(block.y)[ia]
            y1, z1 = Necklace(yj), Necklace(zj)
            amap = hom_set(y1, a)[ia1].images
            bmap = hom_set(z1, b)[ib1].images
            v1 = amap + tuple(v + shift_ab for v in bmap[1:])
            v1h = tuple(v1[v] for v in h1)  # block.y -> a v b
            cmap = hom_set(block.z, c)[ib].images
            full = v1h + tuple(v + a.spine + b.spine for v in cmap[1:])
            return tuple(full[v] for v in h)

    elif bracket == "right":
        inner = day_convolve(representable(b, window), representable(c, window))
        conv = _convolution(representable(a, window), inner)
        shift_bc = b.spine

        def value_of(n, block, h, ia, ib):
            amap = hom_set(block.y, a)[ia].images
            yj, zj, h1, ia1, ib1 = inner.at(block.z)[ib]
            y1, z1 = Necklace(yj), Necklace(zj)
            bmap = hom_set(y1, b)[ia1].images
            cmap = hom_set(z1, c)[ib1].images
            v1 = bmap + tuple(v + shift_bc for v in cmap[1:])
            v1h = tuple(v1[v] for v in h1)  # block.z -> b v c
            full = amap + tuple(v + a.spine for v in v1h[1:])
            return tuple(full[v] for v in h)

    else:
        raise ValueError(f"bracket must be 'left' or 'right', got {bracket!r}")

    def target_of(n):
        return _hom_images(n, target)

    return _comparison_sweep(f"assoc-comparison-{bracket}", window, conv, value_of, target_of)
