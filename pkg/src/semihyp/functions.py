"""Functions on a finite semihypergroup, translations, and Arens products.

Translates are defined through the table:  (L_x f)(y) = (R_y f)(x) is the
integral of f against the product of the point masses at x and y.  Dual
objects (functionals, means) are concrete weight vectors; the introversion
operators

    (T_w f)(x) = w(L_x f)        (U_w f)(x) = w(R_x f)

then give the left and right Arens products on the dual, materialised as
weight vectors by evaluating on the indicator basis.  In finite dimension
both products agree exactly; check_arens_regularity re-derives that from
the two independent formulas on point pairs and seeded random functionals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import Semihypergroup
from .errors import SpaceMismatchError
from .measures import FiniteSpace, Measure, ZERO, ONE

_DENOMS = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)


@dataclass(frozen=True)
class FnK:
    """A rational-valued function on the points of K."""

    space: FiniteSpace
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != len(self.space):
            raise ValueError("value vector length does not match the space")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @classmethod
    def indicator(cls, space: FiniteSpace, x: str) -> FnK:
        i = space.index_of(x)
        return cls(space, tuple(ONE if j == i else ZERO for j in range(len(space))))

    @classmethod
    def constant(cls, space: FiniteSpace, c) -> FnK:
        return cls(space, (Fraction(c),) * len(space))

    def __call__(self, x: str) -> Fraction:
        return self.values[self.space.index_of(x)]

    def sup_norm(self) -> Fraction:
        return max(abs(v) for v in self.values)


@dataclass(frozen=True)
class Functional:
    """Element of the dual: acts by w(f) = sum_x weights[x] * f(x)."""

    space: FiniteSpace
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.space):
            raise ValueError("weight vector length does not match the space")
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))

    def apply(self, f: FnK) -> Fraction:
        if f.space != self.space:
            raise SpaceMismatchError("functional and function live on different spaces")
        return sum((w * v for w, v in zip(self.weights, f.values)), ZERO)

    def l1_norm(self) -> Fraction:
        return sum((abs(w) for w in self.weights), ZERO)

    @property
    def is_mean(self) -> bool:
        """Norm one and unit-preserving, i.e. a probability weight vector."""
        return all(w >= 0 for w in self.weights) and sum(self.weights) == 1


def evaluation(mu: Measure) -> Functional:
    """The functional integrating against mu; point masses give point evaluations."""
    return Functional(mu.space, mu.coeffs)


def as_measure(w: Functional) -> Measure:
    return Measure(w.space, w.weights)


def left_translate(S: Semihypergroup, x: str, f: FnK) -> FnK:
    """(L_x f)(y): integrate f against the product of p_x and p_y."""
    _check(S, f)
    tensor = S.conv.tensor
    xi = S.space.index_of(x)
    vals = tuple(
        sum((c * fv for c, fv in zip(tensor[xi][yi], f.values) if c), ZERO)
        for yi in range(len(S.space))
    )
    return FnK(S.space, vals)


def right_translate(S: Semihypergroup, y: str, f: FnK) -> FnK:
    """(R_y f)(x): same table entry as the left translate, other slot fixed."""
    _check(S, f)
    tensor = S.conv.tensor
    yi = S.space.index_of(y)
    vals = tuple(
        sum((c * fv for c, fv in zip(tensor[xi][yi], f.values) if c), ZERO)
        for xi in range(len(S.space))
    )
    return FnK(S.space, vals)


def orbit(S: Semihypergroup, f: FnK, side: str = "left") -> tuple[FnK, ...]:
    """The set of translates of f, deduplicated, in first-appearance order.

    On a finite space the orbit is always finite, so every function is
    almost periodic; left and right orbit sizes are generally different
    and both are reported by the callers that care.
    """
    translate = left_translate if side == "left" else right_translate
    seen: dict[tuple, FnK] = {}
    for x in S.points:
        g = translate(S, x, f)
        seen.setdefault(g.values, g)
    return tuple(seen.values())


def introversion_left(S: Semihypergroup, w: Functional, f: FnK) -> FnK:
    """(T_w f)(x) = w(L_x f)."""
    _check(S, f)
    return FnK(S.space, tuple(w.apply(left_translate(S, x, f)) for x in S.points))


def introversion_right(S: Semihypergroup, w: Functional, f: FnK) -> FnK:
    """(U_w f)(x) = w(R_x f)."""
    _check(S, f)
    return FnK(S.space, tuple(w.apply(right_translate(S, x, f)) for x in S.points))


def arens(S: Semihypergroup, m: Functional, n: Functional, side: str = "left") -> Functional:
    """Arens product of two functionals, materialised on the indicator basis.

    side='left'  : f -> m(T_n f)
    side='right' : f -> n(U_m f)
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    weights = []
    for z in S.points:
        ind = FnK.indicator(S.space, z)
        if side == "left":
            weights.append(m.apply(introversion_left(S, n, ind)))
        else:
            weights.append(n.apply(introversion_right(S, m, ind)))
    return Functional(S.space, tuple(weights))


@dataclass(frozen=True)
class RegularityCheck:
    ok: bool
    trials: int
    witness: tuple | None = None


def random_functional(space: FiniteSpace, rng: random.Random, signed: bool = True) -> Functional:
    """Seeded rational functional: entries p/q with q from a small denominator
    grid and p uniform in [-2q, 2q] (or [0, 2q] when signed=False)."""
    weights = []
    for _ in range(len(space)):
        q = rng.choice(_DENOMS)
        lo = -2 * q if signed else 0
        weights.append(Fraction(rng.randint(lo, 2 * q), q))
    return Functional(space, tuple(weights))


def random_probability_weights(space: FiniteSpace, rng: random.Random) -> tuple[Fraction, ...]:
    """Seeded probability vector with exact rational entries."""
    n = len(space)
    q = rng.choice(_DENOMS) * n
    cuts = [rng.randint(0, q) for _ in range(n)]
    total = sum(cuts)
    if total == 0:
        cuts[rng.randrange(n)] = 1
        total = 1
    return tuple(Fraction(c, total) for c in cuts)


def check_arens_regularity(S: Semihypergroup, trials: int = 100, seed: int = 0) -> RegularityCheck:
    """Left product equals right product: exhaustively on point-evaluation
    pairs and on `trials` seeded random signed functionals."""
    done = 0
    for x in S.points:
        for y in S.points:
            ex = evaluation(Measure(S.space, FnK.indicator(S.space, x).values))
            ey = evaluation(Measure(S.space, FnK.indicator(S.space, y).values))
            if arens(S, ex, ey, "left") != arens(S, ex, ey, "right"):
                return RegularityCheck(False, done, (x, y))
            done += 1
    rng = random.Random(seed)
    for t in range(trials):
        m = random_functional(S.space, rng)
        n = random_functional(S.space, rng)
        if arens(S, m, n, "left") != arens(S, m, n, "right"):
            return RegularityCheck(False, done, (m.weights, n.weights))
        done += 1
    return RegularityCheck(True, done)


def _check(S: Semihypergroup, f: FnK) -> None:
    if f.space != S.space:
        raise SpaceMismatchError("function lives on a different space")
