"""Named verification sweeps over a spine window.

Both the CLI and the HTTP service dispatch through :func:`run_check`, so
their verdicts are by construction the same as direct library calls.
"""

from __future__ import annotations

from .day import rep_comparison
from .fincat import is_discrete_fibration, FinFunctor
from .necklace import Necklace, degree_sum
from .reedy import (
    MonoidalReport,
    VerificationReport,
    check_monoidal_hypotheses,
    is_left_fibrant,
    is_right_fibration,
    nec_truncation,
    reedy_report,
    wedge_functor,
)

CHECK_NAMES = (
    "reedy",
    "left-fibrant",
    "wedge-right-fibration",
    "divisible",
    "simple",
    "monoidal",
)


def _divisible_report(window: int) -> VerificationReport:
    wf = wedge_functor(window)
    dom_direct = wf.dom.cat.wide_subcat([m for m in wf.dom.cat.morphisms if m in wf.dom.direct])
    cod_direct = wf.cod.cat.wide_subcat([m for m in wf.cod.cat.morphisms if m in wf.cod.direct])
    restricted = FinFunctor(
        dom_direct,
        cod_direct,
        wf.functor.object_map,
        {m: wf.functor.morphism_map[m] for m in dom_direct.morphisms},
    )
    report = is_discrete_fibration(restricted)
    failures = ()
    if not report.ok:
        c, f, count = report.witness
        failures = ({"alpha": str(c), "f": str(f), "components": count},)
    return VerificationReport("divisible", window, report.ok, failures)


def _simple_report(window: int) -> VerificationReport:
    wf = wedge_functor(window)
    failures = []
    for a, b in wf.dom.cat.objects:
        if tuple(a.wedge(b).degree) != tuple(degree_sum(a.degree, b.degree)):
            failures.append({"alpha": f"({a}, {b})", "f": None, "components": None})
    return VerificationReport("simple", window, not failures, tuple(failures))


def run_check(name: str, window: int) -> VerificationReport | MonoidalReport:
    """Run one named verification sweep on the given spine window."""
    if name == "reedy":
        return reedy_report(nec_truncation(window), "reedy", window)
    if name == "left-fibrant":
        report = is_left_fibrant(nec_truncation(window), window)
        return report
    if name == "wedge-right-fibration":
        wf = wedge_functor(window)
        return is_right_fibration(wf.functor, wf.dom, wf.cod, window)
    if name == "divisible":
        return _divisible_report(window)
    if name == "simple":
        return _simple_report(window)
    if name == "monoidal":
        return check_monoidal_hypotheses(window)
    raise ValueError(f"unknown check {name!r}; expected one of {', '.join(CHECK_NAMES)}")


def run_day_rep(x1: Necklace, x2: Necklace, window: int):
    """The representable-comparison sweep exposed by the front ends."""
    return rep_comparison(x1, x2, window)
