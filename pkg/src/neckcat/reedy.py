"""Reedy structures on finite categories, and the necklace instances.

A Reedy structure is a pair of wide subcategories (inverse, direct) such
that every morphism factors uniquely as a direct morphism after an
inverse one, together with a degree per object (a fixed-length tuple of
naturals compared lexicographically) that non-identity inverse morphisms
strictly lower and non-identity direct morphisms strictly raise.

Validation is exhaustive: the factorization count of every morphism is
obtained by composing every (inverse, direct) pair through every middle
object, and every flagged non-identity morphism's degree step is checked.

Instances provided here: truncations of the simplex category (inverse =
surjections, direct = injections, degree = dimension), spine-truncated
necklace categories (inverse = epis, direct = monos, degree =
(dimension, bead count)), opposites, products, and the wedge functor
from the spine-windowed product of a necklace truncation to the
truncation itself, whose hypotheses (compatibility, terminal unit,
direct divisibility, degree additivity) make the windowed Day
convolution homotopically well behaved.

Checks are pure and independent per object/arrow pair; reports list
failures in canonical object order, so results are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Mapping, NamedTuple

from . import maps as nm
from .fincat import (
    CompositionUndefined,
    DiscreteFibrationReport,
    FinCat,
    FinFunctor,
    UnknownObject,
    is_discrete_fibration,
)
from .necklace import DELTA0, Necklace, enumerate_necklaces
from .union_find import UnionFind

Obj = Hashable
Mor = Hashable


class ReedyError(ValueError):
    """The given data does not form a Reedy structure."""


class NotWide(ReedyError):
    pass


class NotClosedUnderComposition(ReedyError):
    pass


class FactorizationMissing(ReedyError):
    pass


class FactorizationNotUnique(ReedyError):
    pass


class DegreeViolation(ReedyError):
    pass


class NotReedyMorphism(ReedyError):
    pass


@dataclass(frozen=True, eq=False)
class ReedyCat:
    """A finite category with inverse/direct classes and object degrees."""

    cat: FinCat
    inverse: frozenset
    direct: frozenset
    degree: Mapping[Obj, tuple[int, ...]]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a verification sweep; failures are JSON-ready dicts."""

    check: str
    window: int | None
    passed: bool
    failures: tuple[dict, ...] = ()

    def __bool__(self) -> bool:
        return self.passed

    def to_json_dict(self) -> dict:
        return {
            "check": self.check,
            "window": self.window,
            "pass": self.passed,
            "failures": [dict(f) for f in self.failures],
        }


def _reedy_failures(
    cat: FinCat,
    inverse: frozenset,
    direct: frozenset,
    degree: Mapping[Obj, tuple[int, ...]],
) -> list[tuple[type, str]]:
    """All Reedy-axiom violations, as (error class, witness message) pairs."""
    failures: list[tuple[type, str]] = []
    mors = set(cat.morphisms)
    for cls_name, cls in (("inverse", inverse), ("direct", direct)):
        if not cls <= mors:
            failures.append((NotWide, f"{cls_name} class contains unknown morphisms"))
    for obj in cat.objects:
        i = cat.identity(obj)
        if i not in inverse or i not in direct:
            failures.append((NotWide, f"identity of {obj} missing from a class"))
    for cls_name, cls in (("inverse", inverse), ("direct", direct)):
        out_by_src: dict[Obj, list] = {}
        for m in cls:
            out_by_src.setdefault(cat.src(m), []).append(m)
        for f in cls:
            for g in out_by_src.get(cat.tgt(f), ()):
                if cat.compose(g, f) not in cls:
                    failures.append(
                        (NotClosedUnderComposition, f"{cls_name} class: ({g}, {f})")
                    )
    inv_by_tgt: dict[Obj, list] = {}
    for e in inverse:
        inv_by_tgt.setdefault(cat.tgt(e), []).append(e)
    dir_by_src: dict[Obj, list] = {}
    for m in direct:
        dir_by_src.setdefault(cat.src(m), []).append(m)
    counts: dict[Mor, int] = {}
    for middle in cat.objects:
        for e in inv_by_tgt.get(middle, ()):
            for m in dir_by_src.get(middle, ()):
                composite = cat.compose(m, e)
                counts[composite] = counts.get(composite, 0) + 1
    for f in cat.morphisms:
        n = counts.get(f, 0)
        if n == 0:
            failures.append((FactorizationMissing, f"{f}"))
        elif n > 1:
            failures.append((FactorizationNotUnique, f"{f} has {n} factorizations"))
    missing_degree = [o for o in cat.objects if o not in degree]
    if missing_degree:
        failures.append((DegreeViolation, f"no degree for objects {missing_degree}"))
        return failures
    lengths = {len(tuple(degree[o])) for o in cat.objects}
    if len(lengths) > 1:
        failures.append((DegreeViolation, "degree tuples have mixed lengths"))
        return failures
    for m in cat.morphisms:
        if cat.is_identity(m):
            continue
        lo, hi = tuple(degree[cat.tgt(m)]), tuple(degree[cat.src(m)])
        if m in inverse and not lo < hi:
            failures.append((DegreeViolation, f"inverse {m} does not lower degree"))
        if m in direct and not lo > hi:
            failures.append((DegreeViolation, f"direct {m} does not raise degree"))
    return failures


def make_reedy(
    cat: FinCat,
    inverse,
    direct,
    degree: Mapping[Obj, tuple[int, ...]],
    validate: bool = True,
) -> ReedyCat:
    """Assemble a Reedy structure, exhaustively validating the axioms."""
    reedy = ReedyCat(cat, frozenset(inverse), frozenset(direct), dict(degree))
    if validate:
        failures = _reedy_failures(cat, reedy.inverse, reedy.direct, reedy.degree)
        if failures:
            err, message = failures[0]
            raise err(message)
    return reedy


def reedy_report(reedy: ReedyCat, check: str = "reedy", window: int | None = None) -> VerificationReport:
    """Non-raising variant of the Reedy validation, as a report."""
    failures = _reedy_failures(reedy.cat, reedy.inverse, reedy.direct, reedy.degree)
    details = tuple({"kind": err.__name__, "witness": msg} for err, msg in failures)
    return VerificationReport(check, window, not failures, details)


# -- latching and matching ---------------------------------------------


def latching_category(reedy: ReedyCat, alpha: Obj) -> FinCat:
    """Non-identity direct morphisms into ``alpha``, with the commuting
    direct triangles between them."""
    cat = reedy.cat
    if alpha not in set(cat.objects):
        raise UnknownObject(f"{alpha} is not an object")
    direct = reedy.direct
    objs = [m for m in cat.into(alpha) if m in direct and not cat.is_identity(m)]
    morphisms = []
    src = {}
    tgt = {}
    for m1 in objs:
        for m2 in objs:
            for g in cat.hom(cat.src(m1), cat.src(m2)):
                if g in direct and cat.compose(m2, g) == m1:
                    mid = (m1, m2, g)
                    morphisms.append(mid)
                    src[mid] = m1
                    tgt[mid] = m2
    identities = {m: (m, m, cat.identity(cat.src(m))) for m in objs}
    by_src: dict = {}
    for mid in morphisms:
        by_src.setdefault(src[mid], []).append(mid)
    table = {}
    for m1 in morphisms:
        for m2 in by_src.get(tgt[m1], ()):
            table[(m2, m1)] = (src[m1], tgt[m2], cat.compose(m2[2], m1[2]))
    return FinCat(objs, morphisms, src, tgt, identities, table)


def opposite_reedy(reedy: ReedyCat) -> ReedyCat:
    """Opposite category with inverse and direct classes swapped; degrees
    are unchanged."""
    return ReedyCat(reedy.cat.opposite(), reedy.direct, reedy.inverse, reedy.degree)


def matching_category(reedy: ReedyCat, alpha: Obj) -> FinCat:
    """Non-identity inverse morphisms out of ``alpha``.

    Built through the opposite category, as the latching category of the
    opposite at ``alpha`` (one code path for both constructions).  The
    arrow orientation therefore mirrors the literal under-category; this
    is immaterial for emptiness and connectivity, which is all the
    fibrancy checks consume.
    """
    return latching_category(opposite_reedy(reedy), alpha)


def is_left_fibrant(reedy: ReedyCat, window: int | None = None) -> VerificationReport:
    """Every matching category must be empty or connected."""
    op = opposite_reedy(reedy)
    failures = []
    for alpha in reedy.cat.objects:
        mc = latching_category(op, alpha)
        if not mc.is_empty_or_connected():
            failures.append(
                {"alpha": str(alpha), "f": None, "components": len(mc.connected_components())}
            )
    return VerificationReport("left-fibrant", window, not failures, tuple(failures))


# -- fibrations of Reedy categories -------------------------------------


def is_reedy_morphism(functor: FinFunctor, rdom: ReedyCat, rcod: ReedyCat) -> bool:
    """Whether the functor sends inverse to inverse and direct to direct."""
    for m in rdom.cat.morphisms:
        fm = functor.on_mor(m)
        if m in rdom.inverse and fm not in rcod.inverse:
            return False
        if m in rdom.direct and fm not in rcod.direct:
            return False
    return True


def _component_count(objs: list, edge) -> int:
    uf = UnionFind(len(objs))
    for i in range(len(objs)):
        for j in range(len(objs)):
            if i != j and edge(objs[i], objs[j]):
                uf.union(i, j)
    return uf.components


def is_right_fibration(
    functor: FinFunctor, rdom: ReedyCat, rcod: ReedyCat, window: int | None = None
) -> VerificationReport:
    """Direct check that, for every object ``alpha`` and every codomain
    arrow ``f`` into its image, the category of factorizations of ``f``
    through the image of a non-identity direct arrow into ``alpha`` is
    empty or connected.

    Objects of that category are triples ``(alpha', f', g)`` with ``g``
    non-identity direct and ``F(g) . f' = f``; its morphisms are direct
    ``h`` with ``F(h) . f' = f''`` and ``g'' . h = g'``.
    """
    if not is_reedy_morphism(functor, rdom, rcod):
        raise NotReedyMorphism("functor does not preserve the inverse/direct classes")
    dom, cod = rdom.cat, rcod.cat
    direct = rdom.direct
    failures = []
    for alpha in dom.objects:
        f_alpha = functor.on_obj(alpha)
        gs = [g for g in dom.into(alpha) if g in direct and not dom.is_identity(g)]
        if not gs:
            continue
        for beta in cod.objects:
            if not cod.hom(beta, f_alpha):
                continue
            # bucket candidate triples by the composite they factor
            buckets: dict[Mor, list] = {}
            for g in gs:
                fg = functor.on_mor(g)
                for f2 in cod.hom(beta, functor.on_obj(dom.src(g))):
                    buckets.setdefault(cod.compose(fg, f2), []).append((dom.src(g), f2, g))
            for f in cod.hom(beta, f_alpha):
                triples = buckets.get(f, [])
                if len(triples) <= 1:
                    continue

                def edge(a, b):
                    a1, f1, g1 = a
                    a2, f2, g2 = b
                    for h in dom.hom(a1, a2):
                        if (
                            h in direct
                            and dom.compose(g2, h) == g1
                            and cod.compose(functor.on_mor(h), f1) == f2
                        ):
                            return True
                    return False

                k = _component_count(triples, edge)
                if k > 1:
                    failures.append({"alpha": str(alpha), "f": str(f), "components": k})
    return VerificationReport("right-fibration", window, not failures, tuple(failures))


def is_left_fibration(
    functor: FinFunctor, rdom: ReedyCat, rcod: ReedyCat, window: int | None = None
) -> VerificationReport:
    """Dual of the right-fibration check, through opposite categories."""
    dom_op = opposite_reedy(rdom)
    cod_op = opposite_reedy(rcod)
    functor_op = FinFunctor(dom_op.cat, cod_op.cat, functor.object_map, functor.morphism_map)
    report = is_right_fibration(functor_op, dom_op, cod_op, window)
    return VerificationReport("left-fibration", window, report.passed, report.failures)


# -- instances -----------------------------------------------------------


def _pad_sum(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return tuple(x + y for x, y in zip(a, b))


def product_reedy(r: ReedyCat, s: ReedyCat, validate: bool = True) -> ReedyCat:
    """The full product: objects and morphisms are pairs, classes are
    componentwise, and degrees are componentwise sums (shorter tuples
    padded with trailing zeros)."""
    rcat, scat = r.cat, s.cat
    objects = [(a, b) for a in rcat.objects for b in scat.objects]
    morphisms = [(f, g) for f in rcat.morphisms for g in scat.morphisms]
    src = {(f, g): (rcat.src(f), scat.src(g)) for f, g in morphisms}
    tgt = {(f, g): (rcat.tgt(f), scat.tgt(g)) for f, g in morphisms}
    identities = {(a, b): (rcat.identity(a), scat.identity(b)) for a, b in objects}

    def compose(gg, ff):
        return (rcat.compose(gg[0], ff[0]), scat.compose(gg[1], ff[1]))

    cat = FinCat(objects, morphisms, src, tgt, identities, compose)
    inverse = frozenset(m for m in morphisms if m[0] in r.inverse and m[1] in s.inverse)
    direct = frozenset(m for m in morphisms if m[0] in r.direct and m[1] in s.direct)
    degree = {
        (a, b): _pad_sum(tuple(r.degree[a]), tuple(s.degree[b])) for a, b in objects
    }
    return make_reedy(cat, inverse, direct, degree, validate=validate)


def simplex_truncation(n: int, validate: bool = True) -> ReedyCat:
    """Monotone maps between the ordinals [0]..[n]; inverse = surjections,
    direct = injections, degree = dimension.  Morphism ids are
    ``(p, q, images)`` tuples."""
    if n < 0:
        raise ReedyError(f"truncation size must be >= 0, got {n}")
    objects = list(range(n + 1))
    morphisms = []
    for p in objects:
        for q in objects:
            for im in itertools.combinations_with_replacement(range(q + 1), p + 1):
                morphisms.append((p, q, im))
    src = {m: m[0] for m in morphisms}
    tgt = {m: m[1] for m in morphisms}
    identities = {k: (k, k, tuple(range(k + 1))) for k in objects}

    def compose(g, f):
        return (f[0], g[1], tuple(g[2][v] for v in f[2]))

    cat = FinCat(objects, morphisms, src, tgt, identities, compose)
    inverse = frozenset(m for m in morphisms if len(set(m[2])) == m[1] + 1)
    direct = frozenset(m for m in morphisms if len(set(m[2])) == m[0] + 1)
    degree = {k: (k,) for k in objects}
    return make_reedy(cat, inverse, direct, degree, validate=validate)


@lru_cache(maxsize=None)
def nec_truncation(max_spine: int) -> ReedyCat:
    """The necklace category on spine <= ``max_spine``: inverse = epis,
    direct = monos, degree = (dimension, bead count).  Validated
    exhaustively on construction."""
    objects = enumerate_necklaces(max_spine)
    morphisms: list[nm.NecMap] = []
    epis = []
    monos = []
    for x in objects:
        for y in objects:
            for f in nm.hom_set(x, y):
                morphisms.append(f)
                flags = nm.classify(f)
                # truncation closure: the epi-mono middle stays in-window
                assert len(set(f.images)) - 1 <= max_spine
                if flags.epi:
                    epis.append(f)
                if flags.mono:
                    monos.append(f)
    src = {f: f.src for f in morphisms}
    tgt = {f: f.tgt for f in morphisms}
    identities = {x: nm.NecMap.identity(x) for x in objects}
    cat = FinCat(objects, morphisms, src, tgt, identities, nm.compose)
    degree = {x: tuple(x.degree) for x in objects}
    return make_reedy(cat, frozenset(epis), frozenset(monos), degree)


def terminal_reedy() -> ReedyCat:
    """The one-object Reedy category."""
    cat = FinCat(("*",), ("id*",), {"id*": "*"}, {"id*": "*"}, {"*": "id*"}, {("id*", "id*"): "id*"})
    return ReedyCat(cat, frozenset({"id*"}), frozenset({"id*"}), {"*": ()})


class FunctorWithReedy(NamedTuple):
    functor: FinFunctor
    dom: ReedyCat
    cod: ReedyCat


def terminal_functor(reedy: ReedyCat) -> FunctorWithReedy:
    """The unique functor to the one-object Reedy category."""
    terminal = terminal_reedy()
    functor = FinFunctor(
        reedy.cat,
        terminal.cat,
        {o: "*" for o in reedy.cat.objects},
        {m: "id*" for m in reedy.cat.morphisms},
    )
    return FunctorWithReedy(functor, reedy, terminal)


@lru_cache(maxsize=None)
def wedge_functor(max_spine: int) -> FunctorWithReedy:
    """The wedge as a functor from the spine-windowed product (pairs with
    spine sum <= ``max_spine``) to the necklace truncation.

    The domain is the full Reedy subcategory of the product on in-window
    pairs: classes componentwise, degrees componentwise sums; it is
    validated on construction.
    """
    cod = nec_truncation(max_spine)
    necklaces = enumerate_necklaces(max_spine)
    objects = [
        (a, b) for a in necklaces for b in necklaces if a.spine + b.spine <= max_spine
    ]
    morphisms = []
    inverse = []
    direct = []
    for a, b in objects:
        for a2, b2 in objects:
            for f in nm.hom_set(a, a2):
                f_flags = nm.classify(f)
                for g in nm.hom_set(b, b2):
                    g_flags = nm.classify(g)
                    m = (f, g)
                    morphisms.append(m)
                    if f_flags.epi and g_flags.epi:
                        inverse.append(m)
                    if f_flags.mono and g_flags.mono:
                        direct.append(m)
    src = {(f, g): (f.src, g.src) for f, g in morphisms}
    tgt = {(f, g): (f.tgt, g.tgt) for f, g in morphisms}
    identities = {(a, b): (nm.NecMap.identity(a), nm.NecMap.identity(b)) for a, b in objects}

    def compose(gg, ff):
        return (nm.compose(gg[0], ff[0]), nm.compose(gg[1], ff[1]))

    cat = FinCat(objects, morphisms, src, tgt, identities, compose)
    degree = {
        (a, b): (a.dim + b.dim, a.bead_count + b.bead_count) for a, b in objects
    }
    dom = make_reedy(cat, frozenset(inverse), frozenset(direct), degree)
    functor = FinFunctor(
        dom.cat,
        cod.cat,
        {(a, b): a.wedge(b) for a, b in objects},
        {(f, g): nm.wedge_maps(f, g) for f, g in morphisms},
    )
    return FunctorWithReedy(functor, dom, cod)


# -- the monoidal hypothesis report --------------------------------------


@dataclass(frozen=True)
class MonoidalReport:
    """The four combinatorial hypotheses under which the wedge makes the
    truncated necklace category monoidally compatible with its Reedy
    structure: the wedge preserves both classes, the unit is terminal
    through an inverse map, monos into wedges split uniquely, and degree
    is additive."""

    window: int
    compatible: bool
    unit_terminal: bool
    direct_divisible: bool
    simple: bool
    failures: tuple[dict, ...] = ()

    @property
    def passed(self) -> bool:
        return self.compatible and self.unit_terminal and self.direct_divisible and self.simple

    def __bool__(self) -> bool:
        return self.passed

    def to_json_dict(self) -> dict:
        return {
            "check": "monoidal",
            "window": self.window,
            "pass": self.passed,
            "hypotheses": {
                "compatible": self.compatible,
                "unit_terminal": self.unit_terminal,
                "direct_divisible": self.direct_divisible,
                "simple": self.simple,
            },
            "failures": [dict(f) for f in self.failures],
        }


def check_monoidal_hypotheses(max_spine: int) -> MonoidalReport:
    if max_spine < 0:
        raise ReedyError(f"window must be >= 0, got {max_spine}")
    wf = wedge_functor(max_spine)
    failures: list[dict] = []

    compatible = is_reedy_morphism(wf.functor, wf.dom, wf.cod)
    if not compatible:
        failures.append({"hypothesis": "compatible", "witness": "a class is not preserved"})

    unit_terminal = True
    for x in wf.cod.cat.objects:
        into_unit = nm.hom_set(x, DELTA0)
        if len(into_unit) != 1 or not nm.classify(into_unit[0]).epi:
            unit_terminal = False
            failures.append({"hypothesis": "unit_terminal", "witness": str(x)})

    dom_direct = wf.dom.cat.wide_subcat([m for m in wf.dom.cat.morphisms if m in wf.dom.direct])
    cod_direct = wf.cod.cat.wide_subcat([m for m in wf.cod.cat.morphisms if m in wf.cod.direct])
    restricted = FinFunctor(
        dom_direct,
        cod_direct,
        wf.functor.object_map,
        {m: wf.functor.morphism_map[m] for m in dom_direct.morphisms},
    )
    fib = is_discrete_fibration(restricted)
    if not fib.ok:
        c, f, count = fib.witness
        failures.append(
            {"hypothesis": "direct_divisible", "witness": f"{f} into {c} has {count} lifts"}
        )

    simple = True
    for a, b in wf.dom.cat.objects:
        if tuple(a.wedge(b).degree) != (a.dim + b.dim, a.bead_count + b.bead_count):
            simple = False
            failures.append({"hypothesis": "simple", "witness": f"({a}, {b})"})

    return MonoidalReport(
        max_spine, compatible, unit_terminal, fib.ok, simple, tuple(failures)
    )
