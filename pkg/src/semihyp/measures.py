"""Exact scalars, finite point spaces, and finitely supported signed measures.

Every coefficient in the package is a ``fractions.Fraction`` (arbitrary
precision, always in lowest terms with positive denominator); no floating
point enters any computation.  Measures are dense rational vectors indexed
by a fixed point order, so equality, support and mass are all exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import SpaceMismatchError, UnknownPointError

# Scalar type used throughout: exact rationals.
Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(token: str) -> Fraction:
    """Parse an exact rational token: an integer or ``p/q``."""
    token = token.strip()
    try:
        if "/" in token:
            num, den = token.split("/", 1)
            return Fraction(int(num.strip()), int(den.strip()))
        return Fraction(int(token))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {token!r}") from exc


def format_rational(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class FiniteSpace:
    """Ordered list of named points; the order fixes all coordinates."""

    points: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, points: Iterable[str]):
        pts = tuple(str(p) for p in points)
        if not pts:
            raise ValueError("a finite space needs at least one point")
        index = {}
        for i, p in enumerate(pts):
            if p in index:
                raise ValueError(f"duplicate point {p}")
            index[p] = i
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_index", index)

    def index_of(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownPointError(x) from None

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x) -> bool:
        return x in self._index


@dataclass(frozen=True)
class Measure:
    """Signed measure with exact rational coefficients, one per point."""

    space: FiniteSpace
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(self.space):
            raise ValueError("coefficient vector length does not match the space")
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) for c in self.coeffs)
        )

    def coeff(self, x: str) -> Fraction:
        return self.coeffs[self.space.index_of(x)]

    def support(self) -> tuple[str, ...]:
        return tuple(
            p for p, c in zip(self.space.points, self.coeffs) if c != 0
        )

    def total_mass(self) -> Fraction:
        return sum(self.coeffs, ZERO)

    @property
    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    @property
    def is_probability(self) -> bool:
        return self.is_nonnegative and self.total_mass() == 1

    def classify(self) -> str:
        """Most specific of: dirac, probability, nonnegative, signed."""
        if not self.is_nonnegative:
            return "signed"
        if self.total_mass() != 1:
            return "nonnegative"
        if sum(1 for c in self.coeffs if c != 0) == 1:
            return "dirac"
        return "probability"

    def permute(self, perm: Sequence[int]) -> Measure:
        """Pushforward under a point permutation: result[i] = coeffs[perm[i]]."""
        return Measure(self.space, tuple(self.coeffs[perm[i]] for i in range(len(perm))))

    def __add__(self, other: Measure) -> Measure:
        _same_space(self, other)
        return Measure(self.space, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Measure) -> Measure:
        _same_space(self, other)
        return Measure(self.space, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> Measure:
        return Measure(self.space, tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar) -> Measure:
        c = Fraction(scalar)
        return Measure(self.space, tuple(c * a for a in self.coeffs))


def dirac(space: FiniteSpace, x: str) -> Measure:
    """Unit point mass at x."""
    i = space.index_of(x)
    return Measure(space, tuple(ONE if j == i else ZERO for j in range(len(space))))


def zero_measure(space: FiniteSpace) -> Measure:
    return Measure(space, (ZERO,) * len(space))


def combine(terms: Sequence[tuple[Rational, Measure]]) -> Measure:
    """Exact linear combination sum(c_i * mu_i); all measures must share a space."""
    if not terms:
        raise ValueError("combine needs at least one term")
    space = terms[0][1].space
    acc = [ZERO] * len(space)
    for c, mu in terms:
        if mu.space != space:
            raise SpaceMismatchError("measures live on different spaces")
        c = Fraction(c)
        if c == 0:
            continue
        for i, v in enumerate(mu.coeffs):
            if v:
                acc[i] += c * v
    return Measure(space, tuple(acc))


def _same_space(a: Measure, b: Measure) -> None:
    if a.space != b.space:
        raise SpaceMismatchError("measures live on different spaces")


def format_measure(mu: Measure) -> str:
    """Render in the literal syntax ``1/2*a + 1/2*b`` (point order of the space)."""
    terms = [
        f"{format_rational(c)}*{p}"
        for p, c in zip(mu.space.points, mu.coeffs)
        if c != 0
    ]
    if not terms:
        return f"0*{mu.space.points[0]}"
    return " + ".join(terms)


def parse_measure(space: FiniteSpace, text: str) -> Measure:
    """Parse the measure literal syntax.

    Terms are separated by ``+``; each term is ``coeff*point`` with an exact
    rational coefficient, or a bare point name meaning coefficient 1.
    Repeated points accumulate.  Negative coefficients are written inside
    the coefficient token (``-1/2*a``).
    """
    acc = [ZERO] * len(space)
    body = text.strip()
    if not body:
        raise ValueError("empty measure literal")
    for raw in body.split("+"):
        term = raw.strip()
        if not term:
            raise ValueError(f"empty term in measure literal {text!r}")
        if "*" in term:
            coeff_tok, point = term.split("*", 1)
            coeff = parse_rational(coeff_tok)
            point = point.strip()
        else:
            coeff, point = ONE, term
        acc[space.index_of(point)] += coeff
    return Measure(space, tuple(acc))
