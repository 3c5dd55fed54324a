"""Registry of ballot-matrix methods by their command-line names."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import approval, pointwise, score_geom, score_reweight
from .partylist import DivisorFamily
from .sequential import MethodError, run_with_tie_seed


@dataclass(frozen=True)
class MethodSpec:
    name: str
    run: Callable  # (matrix, divisors: DivisorFamily | None) -> (ordering, trace)
    scores: bool  # accepts non-binary ballots
    exact: bool = True
    uses_divisors: bool = False


def _phragmen_variant(divisors: DivisorFamily | None, default: str):
    if divisors is None:
        return approval.VARIANTS[default]
    if divisors.kind == "webster_sainte_lague":
        return approval.SAINTE_LAGUE
    if divisors.kind == "jefferson_dhondt":
        return approval.DHONDT
    raise MethodError(f"Phragmén methods support sainte-lague or dhondt divisors, not {divisors.label}")


def _thiele_family(divisors: DivisorFamily | None):
    return divisors if divisors is not None else "sainte-lague"


REGISTRY = {
    spec.name: spec
    for spec in (
        MethodSpec("phragmen-sl", lambda m, d: approval.run_phragmen(m, _phragmen_variant(d, "sainte-lague")),
                   False, uses_divisors=True),
        MethodSpec("phragmen-dhondt", lambda m, d: approval.run_phragmen(m, _phragmen_variant(d, "dhondt")),
                   False, uses_divisors=True),
        MethodSpec("thiele", lambda m, d: approval.run_thiele(m, _thiele_family(d)), False, uses_divisors=True),
        MethodSpec("pareto-phragmen",
                   lambda m, d: approval.run_pareto_phragmen(m, _phragmen_variant(d, "sainte-lague")),
                   False, uses_divisors=True),
        MethodSpec("pareto-thiele", lambda m, d: approval.run_pareto_thiele(m, _thiele_family(d)),
                   False, uses_divisors=True),
        MethodSpec("pointwise", lambda m, d: pointwise.run_pointwise(m), False),
        MethodSpec("pareto-pointwise", lambda m, d: pointwise.run_pareto_pointwise(m), False),
        MethodSpec("geom", lambda m, d: score_geom.run_geom(m), True, exact=False),
        MethodSpec("pareto-geom", lambda m, d: score_geom.run_pareto_geom(m), True, exact=False),
        MethodSpec("score-linear", lambda m, d: score_reweight.run_score_reweight(m, "linear"), True),
        MethodSpec("pareto-score-linear", lambda m, d: score_reweight.run_score_reweight(m, "linear", True), True),
        MethodSpec("score-cubic", lambda m, d: score_reweight.run_score_reweight(m, "cubic"), True),
        MethodSpec("pareto-score-cubic", lambda m, d: score_reweight.run_score_reweight(m, "cubic", True), True),
    )
}


class UnknownMethod(KeyError):
    def __str__(self):
        return f"unknown method {self.args[0]!r}; valid names: {', '.join(REGISTRY)}"


def get(name: str) -> MethodSpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownMethod(name) from None


def run_method(name: str, matrix, divisors: DivisorFamily | None = None, tie_seed: int | None = None):
    spec = get(name)
    if divisors is not None and not spec.uses_divisors:
        raise MethodError(f"method {name} takes no divisor family")
    if not spec.scores and not matrix.approval:
        raise MethodError(f"method {name} needs approval ballots; pass --convert N for score ballots")
    return run_with_tie_seed(spec.run, matrix, tie_seed, divisors)
