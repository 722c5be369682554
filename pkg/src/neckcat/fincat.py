"""Explicit finite categories and functors.

A :class:`FinCat` lists its objects and morphisms outright; morphisms are
opaque hashable ids and src/tgt/identities are explicit mappings.
Composition is either an explicit table (hand-built and JSON categories)
or a callable (generated categories, such as necklace truncations, whose
full composition table would be far too large to materialize).

Validation of the category laws is exhaustive and therefore quadratic to
cubic in hom-set sizes; it is meant for table-scale categories.  Builders
of generated categories construct composition from structures that make
the laws hold, and their tests validate small instances through the same
exhaustive checker.

All categories are immutable after construction and all queries are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, NamedTuple

from .union_find import UnionFind

Obj = Hashable
Mor = Hashable


class CategoryError(ValueError):
    """The given data does not satisfy the category laws."""


class MissingIdentity(CategoryError):
    pass


class CompositionUndefined(CategoryError):
    pass


class AssociativityViolation(CategoryError):
    pass


class IdentityLawViolation(CategoryError):
    pass


class UnknownObject(CategoryError):
    pass


class FinCat:
    """A finite category with explicit object and morphism lists."""

    def __init__(
        self,
        objects: Iterable[Obj],
        morphisms: Iterable[Mor],
        src: Mapping[Mor, Obj],
        tgt: Mapping[Mor, Obj],
        identities: Mapping[Obj, Mor],
        compose: Mapping[tuple[Mor, Mor], Mor] | Callable[[Mor, Mor], Mor],
    ):
        self.objects: tuple[Obj, ...] = tuple(objects)
        self.morphisms: tuple[Mor, ...] = tuple(morphisms)
        self._src = dict(src)
        self._tgt = dict(tgt)
        self._identity = dict(identities)
        if callable(compose):
            self._table: dict | None = None
            self._fn: Callable | None = compose
        else:
            self._table = dict(compose)
            self._fn = None
        self._hom: dict[tuple[Obj, Obj], list[Mor]] = {}
        self._into: dict[Obj, list[Mor]] = {o: [] for o in self.objects}
        self._out: dict[Obj, list[Mor]] = {o: [] for o in self.objects}
        for m in self.morphisms:
            s, t = self._src[m], self._tgt[m]
            self._hom.setdefault((s, t), []).append(m)
            self._into[t].append(m)
            self._out[s].append(m)

    def src(self, m: Mor) -> Obj:
        return self._src[m]

    def tgt(self, m: Mor) -> Obj:
        return self._tgt[m]

    def identity(self, obj: Obj) -> Mor:
        if obj not in self._identity:
            raise UnknownObject(f"{obj!r} is not an object of this category")
        return self._identity[obj]

    def is_identity(self, m: Mor) -> bool:
        return self._identity.get(self._src[m]) == m and self._src[m] == self._tgt[m]

    def hom(self, x: Obj, y: Obj) -> tuple[Mor, ...]:
        return tuple(self._hom.get((x, y), ()))

    def into(self, y: Obj) -> tuple[Mor, ...]:
        return tuple(self._into.get(y, ()))

    def out_of(self, x: Obj) -> tuple[Mor, ...]:
        return tuple(self._out.get(x, ()))

    def compose(self, g: Mor, f: Mor) -> Mor:
        """The composite g after f."""
        if self._tgt[f] != self._src[g]:
            raise CompositionUndefined(f"{g!r} after {f!r}: endpoints do not match")
        if self._table is not None:
            try:
                return self._table[(g, f)]
            except KeyError:
                raise CompositionUndefined(f"no table entry for {g!r} after {f!r}") from None
        return self._fn(g, f)

    # -- validation ---------------------------------------------------

    def validate(self) -> None:
        """Check every category law exhaustively, raising with a witness on
        the first violation.  Cost grows with the number of composable
        pairs and triples."""
        if len(set(self.objects)) != len(self.objects):
            raise CategoryError("duplicate object ids")
        if len(set(self.morphisms)) != len(self.morphisms):
            raise CategoryError("duplicate morphism ids")
        known = set(self.objects)
        mors = set(self.morphisms)
        for m in self.morphisms:
            if self._src[m] not in known or self._tgt[m] not in known:
                raise CategoryError(f"morphism {m!r} has unknown endpoints")
        for obj in self.objects:
            i = self._identity.get(obj)
            if i is None or i not in mors:
                raise MissingIdentity(f"no identity morphism for {obj!r}")
            if self._src[i] != obj or self._tgt[i] != obj:
                raise MissingIdentity(f"identity of {obj!r} has wrong endpoints")
        if self._table is not None:
            for (g, f), h in self._table.items():
                if g not in mors or f not in mors or h not in mors:
                    raise CompositionUndefined(f"table entry ({g!r}, {f!r}) uses unknown ids")
                if self._tgt[f] != self._src[g]:
                    raise CompositionUndefined(
                        f"table defines composition for non-composable pair ({g!r}, {f!r})"
                    )
        for f in self.morphisms:
            s, t = self._src[f], self._tgt[f]
            if self.compose(f, self._identity[s]) != f:
                raise IdentityLawViolation(f"{f!r} after id_{s!r} differs from {f!r}")
            if self.compose(self._identity[t], f) != f:
                raise IdentityLawViolation(f"id_{t!r} after {f!r} differs from {f!r}")
        for f in self.morphisms:
            for g in self._out[self._tgt[f]]:
                gf = self.compose(g, f)
                if gf not in mors:
                    raise CompositionUndefined(f"composite of ({g!r}, {f!r}) is not a morphism")
                if self._src[gf] != self._src[f] or self._tgt[gf] != self._tgt[g]:
                    raise CompositionUndefined(f"composite of ({g!r}, {f!r}) has wrong endpoints")
        for f in self.morphisms:
            for g in self._out[self._tgt[f]]:
                gf = self.compose(g, f)
                for h in self._out[self._tgt[g]]:
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f):
                        raise AssociativityViolation(f"witness triple ({h!r}, {g!r}, {f!r})")

    # -- constructions ------------------------------------------------

    def opposite(self) -> "FinCat":
        """Same objects and morphism ids, arrows reversed."""
        if self._table is not None:
            table = {(f, g): h for (g, f), h in self._table.items()}
            return FinCat(self.objects, self.morphisms, self._tgt, self._src, self._identity, table)
        fn = self._fn
        return FinCat(
            self.objects,
            self.morphisms,
            self._tgt,
            self._src,
            self._identity,
            lambda g, f: fn(f, g),
        )

    def full_subcat(self, keep: Callable[[Obj], bool]) -> "FinCat":
        """Full subcategory on the objects satisfying ``keep``."""
        objs = [o for o in self.objects if keep(o)]
        kept = set(objs)
        mors = [m for m in self.morphisms if self._src[m] in kept and self._tgt[m] in kept]
        idents = {o: self._identity[o] for o in objs}
        if self._table is not None:
            ms = set(mors)
            table = {pair: h for pair, h in self._table.items() if pair[0] in ms and pair[1] in ms}
            return FinCat(objs, mors, self._src, self._tgt, idents, table)
        return FinCat(objs, mors, self._src, self._tgt, idents, self._fn)

    def wide_subcat(self, morphisms: Iterable[Mor]) -> "FinCat":
        """Subcategory on all objects and the given morphisms, which must
        include every identity and be closed under composition."""
        mors = list(dict.fromkeys(morphisms))
        ms = set(mors)
        for obj in self.objects:
            if self._identity[obj] not in ms:
                raise MissingIdentity(f"wide subcategory must keep the identity of {obj!r}")
        if self._table is not None:
            table = {pair: h for pair, h in self._table.items() if pair[0] in ms and pair[1] in ms}
            return FinCat(self.objects, mors, self._src, self._tgt, self._identity, table)
        return FinCat(self.objects, mors, self._src, self._tgt, self._identity, self._fn)

    # -- connectivity -------------------------------------------------

    def connected_components(self) -> list[list[Obj]]:
        """Partition of the objects under morphism zig-zags, each class in
        canonical object order."""
        index = {o: i for i, o in enumerate(self.objects)}
        uf = UnionFind(len(self.objects))
        for m in self.morphisms:
            uf.union(index[self._src[m]], index[self._tgt[m]])
        classes: dict[int, list[Obj]] = {}
        for o in self.objects:
            classes.setdefault(uf.find(index[o]), []).append(o)
        return [classes[root] for root in sorted(classes, key=lambda r: r)]

    def is_empty_or_connected(self) -> bool:
        return len(self.objects) == 0 or len(self.connected_components()) == 1

    # -- export -------------------------------------------------------

    def to_dot(
        self,
        object_label: Callable[[Obj], str] = str,
        morphism_label: Callable[[Mor], str] = str,
    ) -> str:
        """DOT source of the morphism graph (identities omitted)."""
        lines = ["digraph fincat {"]
        for o in self.objects:
            lines.append(f'  "{object_label(o)}";')
        for m in self.morphisms:
            if self.is_identity(m):
                continue
            s, t = object_label(self._src[m]), object_label(self._tgt[m])
            lines.append(f'  "{s}" -> "{t}" [label="{morphism_label(m)}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_json_dict(
        self,
        object_key: Callable[[Obj], str] = str,
        morphism_key: Callable[[Mor], str] = str,
    ) -> dict:
        """JSON form with string ids and the full composition table.  The
        table is materialized, so this is for table-scale categories."""
        morphisms = [
            {"id": morphism_key(m), "src": object_key(self._src[m]), "tgt": object_key(self._tgt[m])}
            for m in self.morphisms
        ]
        compose = []
        for f in self.morphisms:
            for g in self._out[self._tgt[f]]:
                compose.append([morphism_key(g), morphism_key(f), morphism_key(self.compose(g, f))])
        return {
            "objects": [object_key(o) for o in self.objects],
            "morphisms": morphisms,
            "identities": {object_key(o): morphism_key(self._identity[o]) for o in self.objects},
            "compose": compose,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "FinCat":
        morphisms = [m["id"] for m in data["morphisms"]]
        src = {m["id"]: m["src"] for m in data["morphisms"]}
        tgt = {m["id"]: m["tgt"] for m in data["morphisms"]}
        table = {(g, f): h for g, f, h in data["compose"]}
        cat = cls(data["objects"], morphisms, src, tgt, data["identities"], table)
        cat.validate()
        return cat

    def __repr__(self) -> str:
        return f"FinCat({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def make_fincat(
    objects: Iterable[Obj],
    morphisms: Iterable[tuple[Mor, Obj, Obj]],
    identities: Mapping[Obj, Mor],
    compose: Mapping[tuple[Mor, Mor], Mor],
) -> FinCat:
    """Build and fully validate a finite category from explicit data."""
    ids = [m for m, _, _ in morphisms]
    src = {m: s for m, s, _ in morphisms}
    tgt = {m: t for m, _, t in morphisms}
    cat = FinCat(objects, ids, src, tgt, identities, compose)
    cat.validate()
    return cat


@dataclass(frozen=True)
class FinFunctor:
    """A functor between explicit finite categories, given by its object
    and morphism assignments."""

    dom: FinCat
    cod: FinCat
    object_map: Mapping[Obj, Obj]
    morphism_map: Mapping[Mor, Mor]

    def on_obj(self, x: Obj) -> Obj:
        return self.object_map[x]

    def on_mor(self, m: Mor) -> Mor:
        return self.morphism_map[m]

    def validate(self) -> None:
        """Exhaustively check functoriality: endpoints, identities, and
        composition over every composable pair of the domain."""
        for x in self.dom.objects:
            if self.object_map[x] not in set(self.cod.objects):
                raise CategoryError(f"object {x!r} maps outside the codomain")
        cod_mors = set(self.cod.morphisms)
        for m in self.dom.morphisms:
            fm = self.morphism_map[m]
            if fm not in cod_mors:
                raise CategoryError(f"morphism {m!r} maps outside the codomain")
            if self.cod.src(fm) != self.object_map[self.dom.src(m)]:
                raise CategoryError(f"source not preserved at {m!r}")
            if self.cod.tgt(fm) != self.object_map[self.dom.tgt(m)]:
                raise CategoryError(f"target not preserved at {m!r}")
        for x in self.dom.objects:
            if self.morphism_map[self.dom.identity(x)] != self.cod.identity(self.object_map[x]):
                raise CategoryError(f"identity of {x!r} not preserved")
        for f in self.dom.morphisms:
            for g in self.dom.out_of(self.dom.tgt(f)):
                if self.morphism_map[self.dom.compose(g, f)] != self.cod.compose(
                    self.morphism_map[g], self.morphism_map[f]
                ):
                    raise CategoryError(f"composition not preserved at ({g!r}, {f!r})")

    def opposite(self) -> "FinFunctor":
        return FinFunctor(self.dom.opposite(), self.cod.opposite(), self.object_map, self.morphism_map)


class DiscreteFibrationReport(NamedTuple):
    """Outcome of a discrete-fibration check; ``witness`` is ``(C, f, count)``
    for the first object C and arrow f into its image with lift count != 1."""

    ok: bool
    witness: tuple | None

    def __bool__(self) -> bool:
        return self.ok


def is_discrete_fibration(functor: FinFunctor) -> DiscreteFibrationReport:
    """Check that every arrow into the image of an object has exactly one
    lift with that object as target."""
    for c in functor.dom.objects:
        lifts: dict[Mor, int] = {}
        for g in functor.dom.into(c):
            fg = functor.on_mor(g)
            lifts[fg] = lifts.get(fg, 0) + 1
        for f in functor.cod.into(functor.on_obj(c)):
            count = lifts.get(f, 0)
            if count != 1:
                return DiscreteFibrationReport(False, (c, f, count))
    return DiscreteFibrationReport(True, None)


class CommaCategory(NamedTuple):
    cat: FinCat
    projection: FinFunctor


def comma_under(beta: Obj, functor: FinFunctor) -> CommaCategory:
    """The comma category of arrows from ``beta`` into the image of the
    functor.  Objects are pairs ``(alpha, f: beta -> F(alpha))``; morphisms
    are domain arrows making the triangle commute.  Comes with the
    projection back to the functor's domain."""
    dom, cod = functor.dom, functor.cod
    if beta not in set(cod.objects):
        raise UnknownObject(f"{beta!r} is not an object of the codomain")
    objects = [
        (alpha, f)
        for alpha in dom.objects
        for f in cod.hom(beta, functor.on_obj(alpha))
    ]
    obj_set = set(objects)
    morphisms = []
    src = {}
    tgt = {}
    for alpha, f in objects:
        for g in dom.out_of(alpha):
            f2 = cod.compose(functor.on_mor(g), f)
            other = (dom.tgt(g), f2)
            if other in obj_set:
                mid = (alpha, f, g)
                morphisms.append(mid)
                src[mid] = (alpha, f)
                tgt[mid] = other
    identities = {(alpha, f): (alpha, f, dom.identity(alpha)) for alpha, f in objects}
    table = {}
    by_src: dict[tuple, list] = {}
    for mid in morphisms:
        by_src.setdefault(src[mid], []).append(mid)
    for m1 in morphisms:
        for m2 in by_src.get(tgt[m1], ()):
            table[(m2, m1)] = (src[m1][0], src[m1][1], dom.compose(m2[2], m1[2]))
    cat = FinCat(objects, morphisms, src, tgt, identities, table)
    projection = FinFunctor(
        cat,
        dom,
        {obj: obj[0] for obj in objects},
        {mid: mid[2] for mid in morphisms},
    )
    return CommaCategory(cat, projection)


def are_isomorphic(c: FinCat, d: FinCat) -> bool:
    """Whether two finite categories are isomorphic: a bijection of objects
    and of morphisms preserving src, tgt, identities and composition.

    Backtracking with hom-size invariants; meant for small categories such
    as latching and matching categories.
    """
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return False

    def signature(cat: FinCat, o: Obj) -> tuple:
        outs = sorted(len(cat.hom(o, x)) for x in cat.objects)
        ins = sorted(len(cat.hom(x, o)) for x in cat.objects)
        return (len(cat.hom(o, o)), tuple(outs), tuple(ins))

    c_sig = {o: signature(c, o) for o in c.objects}
    d_sig = {o: signature(d, o) for o in d.objects}
    if sorted(c_sig.values()) != sorted(d_sig.values()):
        return False

    d_by_sig: dict[tuple, list[Obj]] = {}
    for o in d.objects:
        d_by_sig.setdefault(d_sig[o], []).append(o)
    order = sorted(c.objects, key=lambda o: len(d_by_sig[c_sig[o]]))

    def match_morphisms(obj_map: dict) -> bool:
        hom_pairs = []
        for x in c.objects:
            for y in c.objects:
                hc = c.hom(x, y)
                if hc:
                    hom_pairs.append((x, y, hc, d.hom(obj_map[x], obj_map[y])))

        mor_map: dict = {}

        def extend(i: int) -> bool:
            if i == len(hom_pairs):
                for f in c.morphisms:
                    for g in c.out_of(c.tgt(f)):
                        if mor_map[c.compose(g, f)] != d.compose(mor_map[g], mor_map[f]):
                            return False
                return True
            x, y, hc, hd = hom_pairs[i]
            c_id = c.identity(x) if x == y else None

            def assign(j: int, used: set) -> bool:
                if j == len(hc):
                    return extend(i + 1)
                f = hc[j]
                for g in hd:
                    if g in used:
                        continue
                    if f == c_id and g != d.identity(obj_map[x]):
                        continue
                    if f != c_id and x == y and g == d.identity(obj_map[x]):
                        continue
                    mor_map[f] = g
                    used.add(g)
                    if assign(j + 1, used):
                        return True
                    used.discard(g)
                    del mor_map[f]
                return False

            return assign(0, set())

        return extend(0)

    def place(i: int, obj_map: dict, used: set) -> bool:
        if i == len(order):
            return match_morphisms(obj_map)
        x = order[i]
        for y in d_by_sig[c_sig[x]]:
            if y in used:
                continue
            ok = all(
                len(c.hom(x, a)) == len(d.hom(y, obj_map[a]))
                and len(c.hom(a, x)) == len(d.hom(obj_map[a], y))
                for a in obj_map
            )
            if not ok:
                continue
            obj_map[x] = y
            used.add(y)
            if place(i + 1, obj_map, used):
                return True
            used.discard(y)
            del obj_map[x]
        return False

    return place(0, {}, set())
