"""Convolution tables and the algebraic axioms of finite semihypergroups.

A finite semihypergroup is a table assigning to every ordered point pair
(x, y) a probability measure, the product of the point masses at x and y.
Products of arbitrary measures follow by bilinearity:

    mu * nu = sum_x sum_y mu(x) nu(y) (p_x * p_y)

so every axiom quantified over measures is decided exactly on point pairs
and triples.  This module provides those decision procedures: probability
of all entries, associativity, identity and involution scans, the centre,
and commutativity.  Failing checks return the lexicographically first
counterexample in the declared point order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Sequence

from . import kernels
from .errors import SpaceMismatchError, VerificationError
from .measures import FiniteSpace, Measure, dirac

Tensor = tuple[tuple[tuple[Fraction, ...], ...], ...]


@dataclass(frozen=True)
class ConvTable:
    """|K| x |K| array of measures; entry (x, y) is the product of p_x and p_y."""

    space: FiniteSpace
    entries: tuple[tuple[Measure, ...], ...]

    def __post_init__(self):
        n = len(self.space)
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError("table shape does not match the space")
        for row in self.entries:
            for m in row:
                if m.space != self.space:
                    raise SpaceMismatchError("table entry lives on a different space")

    @classmethod
    def from_function(cls, space: FiniteSpace, f: Callable[[str, str], Measure]) -> ConvTable:
        return cls(space, tuple(tuple(f(x, y) for y in space.points) for x in space.points))

    def entry(self, x: str, y: str) -> Measure:
        return self.entries[self.space.index_of(x)][self.space.index_of(y)]

    @cached_property
    def tensor(self) -> Tensor:
        """Raw coefficient tensor, the shape the kernels consume."""
        return tuple(tuple(m.coeffs for m in row) for row in self.entries)


@dataclass(frozen=True)
class Involution:
    """An involutive permutation of the points."""

    space: FiniteSpace
    perm: tuple[int, ...]

    def __post_init__(self):
        n = len(self.space)
        if sorted(self.perm) != list(range(n)):
            raise ValueError("not a permutation")
        if any(self.perm[self.perm[i]] != i for i in range(n)):
            raise ValueError("permutation is not involutive")

    def __call__(self, x: str) -> str:
        return self.space.points[self.perm[self.space.index_of(x)]]

    @property
    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.perm))

    def apply(self, mu: Measure) -> Measure:
        """Pushforward: result({z}) = mu({z^-})."""
        return mu.permute(self.perm)


@dataclass(frozen=True)
class ProbabilityCheck:
    ok: bool
    witness: tuple[str, str] | None = None
    reason: str = ""


@dataclass(frozen=True)
class AssociativityCheck:
    ok: bool
    witness: tuple[str, str, str] | None = None
    lhs: Measure | None = None
    rhs: Measure | None = None


@dataclass(frozen=True)
class IdentityScan:
    """Classification of identity elements.

    kind is one of 'two_sided', 'left_only', 'right_only', 'none';
    left/right list every one-sided identity found.
    """

    kind: str
    point: str | None
    left: tuple[str, ...]
    right: tuple[str, ...]


@dataclass(frozen=True)
class InvolutionScan:
    involutions: tuple[Involution, ...]
    unique: bool
    warning: str = ""


@dataclass(frozen=True)
class Semihypergroup:
    """A convolution table together with its verification record.

    Instances are only produced by verify(), so the probability and
    associativity axioms always hold; the remaining fields record what the
    optional-structure scans found.
    """

    conv: ConvTable
    identity_scan: IdentityScan
    involution_scan: InvolutionScan
    commutative: bool
    center: tuple[str, ...]
    name: str = ""

    @property
    def space(self) -> FiniteSpace:
        return self.conv.space

    @property
    def points(self) -> tuple[str, ...]:
        return self.conv.space.points

    @property
    def identity(self) -> str | None:
        return self.identity_scan.point

    @property
    def involution(self) -> Involution | None:
        invs = self.involution_scan.involutions
        return invs[0] if invs else None

    @property
    def is_hypergroup(self) -> bool:
        return self.identity is not None and bool(self.involution_scan.involutions)

    def convolve(self, x: str, y: str) -> Measure:
        return convolve_points(self, x, y)


def convolve_points(S: Semihypergroup | ConvTable, x: str, y: str) -> Measure:
    """Product of the point masses at x and y: the stored table entry."""
    table = S.conv if isinstance(S, Semihypergroup) else S
    return table.entry(x, y)


def convolve_measures(S: Semihypergroup | ConvTable, mu: Measure, nu: Measure) -> Measure:
    """Bilinear extension of the table to arbitrary measures."""
    table = S.conv if isinstance(S, Semihypergroup) else S
    if mu.space != table.space or nu.space != table.space:
        raise SpaceMismatchError("measures live on a different space than the table")
    out = kernels.convolve_coeffs(table.tensor, mu.coeffs, nu.coeffs)
    return Measure(table.space, tuple(out))


def check_probability_axiom(conv: ConvTable) -> ProbabilityCheck:
    """Every entry must be nonnegative with total mass exactly 1."""
    for x in conv.space.points:
        for y in conv.space.points:
            m = conv.entry(x, y)
            if not m.is_nonnegative:
                return ProbabilityCheck(False, (x, y), "negative coefficient")
            if m.total_mass() != 1:
                return ProbabilityCheck(False, (x, y), f"mass {m.total_mass()} != 1")
    return ProbabilityCheck(True)


def check_associativity(conv: ConvTable) -> AssociativityCheck:
    """Associativity on all point triples; bilinearity covers all measures.

    On failure reports the lexicographically first witness triple together
    with both association orders.
    """
    hit = kernels.assoc_witness(conv.tensor)
    if hit is None:
        return AssociativityCheck(True)
    i, j, k = hit
    pts = conv.space.points
    x, y, z = pts[i], pts[j], pts[k]
    lhs = convolve_measures(conv, conv.entry(x, y), dirac(conv.space, z))
    rhs = convolve_measures(conv, dirac(conv.space, x), conv.entry(y, z))
    return AssociativityCheck(False, (x, y, z), lhs, rhs)


def find_identity(S: Semihypergroup | ConvTable) -> IdentityScan:
    """Scan for left, right, and two-sided identities."""
    table = S.conv if isinstance(S, Semihypergroup) else S
    pts = table.space.points
    left = tuple(
        e for e in pts if all(table.entry(e, x) == dirac(table.space, x) for x in pts)
    )
    right = tuple(
        e for e in pts if all(table.entry(x, e) == dirac(table.space, x) for x in pts)
    )
    both = [e for e in left if e in right]
    if both:
        return IdentityScan("two_sided", both[0], left, right)
    if left:
        return IdentityScan("left_only", None, left, right)
    if right:
        return IdentityScan("right_only", None, left, right)
    return IdentityScan("none", None, (), ())


def _involutive_permutations(n: int) -> Iterable[tuple[int, ...]]:
    """All permutations p with p∘p = id, in lexicographic order."""
    for perm in itertools.permutations(range(n)):
        if all(perm[perm[i]] == i for i in range(n)):
            yield perm


def find_involutions(S: Semihypergroup | ConvTable, e: str) -> InvolutionScan:
    """All involutive permutations compatible with the identity e.

    A candidate qualifies when (i) e lies in the support of the product of
    p_x and p_y exactly for x = y^-, and (ii) reversing a product matches
    the product of the reversed factors on every point pair.
    """
    table = S.conv if isinstance(S, Semihypergroup) else S
    space = table.space
    ident = find_identity(table)
    if ident.point != e:
        raise VerificationError(
            "identity", e, f"{e} is not the two-sided identity of the table"
        )
    n = len(space)
    ei = space.index_of(e)
    pts = space.points
    found = []
    for perm in _involutive_permutations(n):
        ok = True
        for xi in range(n):
            for yi in range(n):
                in_supp = table.entries[xi][yi].coeffs[ei] != 0
                if in_supp != (xi == perm[yi]):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        inv = Involution(space, perm)
        # anti-homomorphism on point pairs: (p_x * p_y)^- = p_{y^-} * p_{x^-}
        for x in pts:
            for y in pts:
                lhs = inv.apply(table.entry(x, y))
                rhs = table.entry(inv(y), inv(x))
                if lhs != rhs:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(inv)
    warning = ""
    if len(found) > 1:
        warning = f"{len(found)} involutions satisfy the axioms; expected a unique one"
    return InvolutionScan(tuple(found), len(found) == 1, warning)


def is_commutative(S: Semihypergroup | ConvTable) -> bool:
    table = S.conv if isinstance(S, Semihypergroup) else S
    pts = table.space.points
    return all(
        table.entry(x, y) == table.entry(y, x)
        for x, y in itertools.combinations(pts, 2)
    )


def center(S: Semihypergroup | ConvTable) -> tuple[str, ...]:
    """Points whose products with every point (both sides) have singleton support."""
    table = S.conv if isinstance(S, Semihypergroup) else S
    pts = table.space.points
    out = []
    for x in pts:
        if all(
            len(table.entry(x, y).support()) == 1 and len(table.entry(y, x).support()) == 1
            for y in pts
        ):
            out.append(x)
    return tuple(out)


def center_semigroup_diagnostic(S: Semihypergroup) -> tuple[bool, tuple[str, str] | None]:
    """Is the centre closed under the (singleton-support) products?

    The support-singleton description of the centre is the implemented
    definition; closure into itself is reported separately as a diagnostic
    rather than assumed.  Returns (closed, offending pair or None).
    """
    z = set(center(S))
    for x in z:
        for y in z:
            supp = S.conv.entry(x, y).support()
            if len(supp) != 1 or supp[0] not in z:
                return False, (x, y)
    return True, None


def set_convolution(S: Semihypergroup | ConvTable, A: Iterable[str], B: Iterable[str]) -> set[str]:
    """Union of the supports of the products of point masses from A and B."""
    table = S.conv if isinstance(S, Semihypergroup) else S
    out: set[str] = set()
    for x in A:
        for y in B:
            out.update(table.entry(x, y).support())
    return out


def verify(conv: ConvTable, name: str = "") -> Semihypergroup:
    """Run all checks and return a verified Semihypergroup.

    Raises VerificationError carrying the first witness when the
    probability or associativity axiom fails; the identity, involution,
    commutativity and centre scans never fail, they only record results.
    """
    prob = check_probability_axiom(conv)
    if not prob.ok:
        x, y = prob.witness
        raise VerificationError(
            "probability",
            prob.witness,
            f"entry ({x}, {y}) is not a probability measure: {prob.reason}",
        )
    assoc = check_associativity(conv)
    if not assoc.ok:
        x, y, z = assoc.witness
        raise VerificationError(
            "associativity",
            assoc,
            f"associativity fails at ({x}, {y}, {z})",
        )
    ident = find_identity(conv)
    if ident.point is not None:
        invs = find_involutions(conv, ident.point)
    else:
        invs = InvolutionScan((), False)
    return Semihypergroup(
        conv=conv,
        identity_scan=ident,
        involution_scan=invs,
        commutative=is_commutative(conv),
        center=center(conv),
        name=name,
    )
