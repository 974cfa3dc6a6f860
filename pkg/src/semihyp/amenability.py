"""Means, left-invariant means, and the amenability equivalence suite.

On a finite space a mean is exactly a probability weight vector, so the
existence of a left-invariant mean (LIM) is an exact rational feasibility
question: find m in the probability simplex with

    sum_z m(z) * (p_x * p_z)({y}) = m(y)      for all points x, y,

the invariance condition evaluated on the indicator basis, which spans all
functions.  Two further formulations are decided by independently built
linear programs and must agree with the first:

  (2) a mean m that the Arens product by every point evaluation fixes,
      built through the dual-product machinery;
  (3) a probability measure m with p_x * m = m for every point, built
      through measure convolution (the exact finite form of the
      net-convergence condition, whose limit point a compactness argument
      would extract).

equivalence_suite runs all three and reports a counterexample bundle if
they ever disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Semihypergroup, convolve_measures
from .errors import SemihypError
from .functions import FnK, Functional, arens, evaluation, left_translate
from .lp import (
    EQ,
    LinearProgram,
    analyze_equality_polytope,
    constraint,
    solve_feasibility,
)
from .measures import Measure, dirac

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Mean:
    """A norm-one, unit-preserving functional: a probability weight vector."""

    functional: Functional

    def __post_init__(self):
        if not self.functional.is_mean:
            raise SemihypError("weights do not form a probability vector")

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return self.functional.weights

    def as_measure(self) -> Measure:
        return Measure(self.functional.space, self.weights)


@dataclass(frozen=True)
class LimResult:
    exists: bool
    mean: Mean | None
    dimension: int | None
    coordinate_ranges: tuple | None
    certificate: tuple | None

    @property
    def status(self) -> str:
        return "exists" if self.exists else "none"


def _probability_rows(n: int):
    return [constraint([ONE] * n, EQ, ONE)]


def _lim_program(S: Semihypergroup) -> LinearProgram:
    """Invariance on the indicator basis, built from left translates."""
    n = len(S.space)
    rows = _probability_rows(n)
    for x in S.points:
        for yi, y in enumerate(S.points):
            ind = FnK.indicator(S.space, y)
            lf = left_translate(S, x, ind)
            coeffs = list(lf.values)
            coeffs[yi] -= ONE
            rows.append(constraint(coeffs, EQ, ZERO))
    return LinearProgram(n, tuple(rows))


def _condition2_program(S: Semihypergroup) -> LinearProgram:
    """Fixed points of the dual products by point evaluations.

    The map m -> (evaluation at p_x) * m is linear; its matrix columns are
    the Arens products against the basis evaluations, computed by the dual
    machinery itself.
    """
    n = len(S.space)
    rows = _probability_rows(n)
    basis = [evaluation(dirac(S.space, z)) for z in S.points]
    for x in S.points:
        ex = evaluation(dirac(S.space, x))
        cols = [arens(S, ex, ez, "left").weights for ez in basis]
        for yi in range(n):
            coeffs = [cols[zi][yi] for zi in range(n)]
            coeffs[yi] -= ONE
            rows.append(constraint(coeffs, EQ, ZERO))
    return LinearProgram(n, tuple(rows))


def _condition3_program(S: Semihypergroup) -> LinearProgram:
    """Translation-fixed probability measures: p_x * m = m, via convolution."""
    n = len(S.space)
    rows = _probability_rows(n)
    for x in S.points:
        px = dirac(S.space, x)
        cols = [convolve_measures(S, px, dirac(S.space, z)).coeffs for z in S.points]
        for yi in range(n):
            coeffs = [cols[zi][yi] for zi in range(n)]
            coeffs[yi] -= ONE
            rows.append(constraint(coeffs, EQ, ZERO))
    return LinearProgram(n, tuple(rows))


def lim_solve(S: Semihypergroup) -> LimResult:
    """Decide LIM existence exactly; report a vertex witness and the exact
    affine dimension of the LIM polytope, or a Farkas certificate."""
    summary = analyze_equality_polytope(_lim_program(S))
    if not summary.feasible:
        return LimResult(False, None, None, None, summary.certificate)
    mean = Mean(Functional(S.space, summary.witness))
    return LimResult(True, mean, summary.dimension, summary.coordinate_ranges, None)


@dataclass(frozen=True)
class ConditionCheck:
    ok: bool
    witness: tuple | None = None


def check_condition2(S: Semihypergroup, m: Mean) -> ConditionCheck:
    """Verify that the dual product by every point evaluation fixes m.

    Point evaluations suffice: the product is bilinear in the measure
    argument, so fixing them fixes products by every probability measure.
    Failure reports (point, indicator index) of the first broken equation.
    """
    for x in S.points:
        ex = evaluation(dirac(S.space, x))
        prod = arens(S, ex, m.functional, "left")
        if prod != m.functional:
            for yi, y in enumerate(S.points):
                if prod.weights[yi] != m.weights[yi]:
                    return ConditionCheck(False, (x, y))
    return ConditionCheck(True)


def check_condition3(S: Semihypergroup, m: Mean) -> ConditionCheck:
    """Verify p_x * m = m for every point x, via measure convolution."""
    mu = m.as_measure()
    for x in S.points:
        if convolve_measures(S, dirac(S.space, x), mu) != mu:
            return ConditionCheck(False, (x,))
    return ConditionCheck(True)


@dataclass(frozen=True)
class EquivalenceReport:
    lim: bool
    condition2: bool
    condition3: bool
    witnesses: tuple
    certificates: tuple
    counterexample: dict | None

    @property
    def agree(self) -> bool:
        return self.lim == self.condition2 == self.condition3


def equivalence_suite(S: Semihypergroup) -> EquivalenceReport:
    """Decide all three formulations by independent LPs and compare.

    A disagreement would falsify the equivalence at finite scale; the
    bundle then carries all three programs' answers for inspection.
    """
    outcomes = [
        solve_feasibility(_lim_program(S)),
        solve_feasibility(_condition2_program(S)),
        solve_feasibility(_condition3_program(S)),
    ]
    flags = tuple(o.status == "feasible" for o in outcomes)
    witnesses = tuple(o.witness for o in outcomes)
    certificates = tuple(o.certificate for o in outcomes)
    counterexample = None
    if len(set(flags)) != 1:
        counterexample = {
            "structure": S.name or "unnamed",
            "lim": flags[0],
            "condition2": flags[1],
            "condition3": flags[2],
            "witnesses": witnesses,
            "certificates": certificates,
        }
    return EquivalenceReport(*flags, witnesses, certificates, counterexample)


def mean_decomposition(m: Mean) -> list[tuple[Fraction, str]]:
    """Exact convex decomposition of a mean over point evaluations.

    In finite dimension the weights themselves are the coefficients; the
    reconstruction sum_x lambda_x * (evaluation at x) equals m exactly.
    """
    space = m.functional.space
    return [(w, x) for w, x in zip(m.weights, space.points) if w != 0]


def balanced_decomposition(w: Functional) -> list[tuple[Fraction, str]]:
    """Balanced-convex decomposition of a functional of norm at most one:
    signed coefficients over point evaluations with sum |alpha| <= 1."""
    if w.l1_norm() > 1:
        raise SemihypError("functional norm exceeds 1; no balanced decomposition")
    return [(a, x) for a, x in zip(w.weights, w.space.points) if a != 0]
