"""Builders for the standard semihypergroup families.

Every constructor returns a fully verified Semihypergroup or raises a
structured error (ConstraintError for bad parameters, VerificationError
with a witness when an axiom fails).  Unverified tables never escape.

Families: semigroup and group lifts, left and double coset spaces of a
finite group by a subgroup (uniform weights on the subgroup), orbit spaces
of a group acting by bijections, the three-point commutative family, and
the reflection hypergroup on the grid {0, 1/n, ..., 1} with

    p_s * p_t = (p_{|s-t|} + p_{1-|1-s-t|}) / 2 .
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .core import ConvTable, Semihypergroup, verify
from .errors import ConstraintError, VerificationError
from .measures import FiniteSpace, Measure, combine, dirac

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by element names and a Cayley table of indices."""

    space: FiniteSpace
    cayley: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]

    @classmethod
    def from_table(cls, names: Sequence[str], table: Sequence[Sequence[int]]) -> FiniteGroup:
        """Build and brute-force verify the group axioms."""
        space = FiniteSpace(names)
        n = len(space)
        cay = tuple(tuple(int(v) for v in row) for row in table)
        if len(cay) != n or any(len(r) != n for r in cay):
            raise ConstraintError("Cayley table shape does not match the element list")
        if any(v < 0 or v >= n for row in cay for v in row):
            raise ConstraintError("Cayley table entry out of range")
        for i, j, k in itertools.product(range(n), repeat=3):
            if cay[cay[i][j]][k] != cay[i][cay[j][k]]:
                raise ConstraintError(
                    f"group table not associative at "
                    f"({names[i]}, {names[j]}, {names[k]})"
                )
        ident = None
        for e in range(n):
            if all(cay[e][x] == x and cay[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise ConstraintError("group table has no identity")
        inverse = []
        for x in range(n):
            invs = [y for y in range(n) if cay[x][y] == ident and cay[y][x] == ident]
            if len(invs) != 1:
                raise ConstraintError(f"element {names[x]} has no unique inverse")
            inverse.append(invs[0])
        return cls(space, cay, ident, tuple(inverse))

    def mul(self, i: int, j: int) -> int:
        return self.cayley[i][j]

    def __len__(self) -> int:
        return len(self.space)

    @property
    def names(self) -> tuple[str, ...]:
        return self.space.points

    def is_subgroup(self, subset: Sequence[int]) -> bool:
        s = set(subset)
        if self.identity not in s:
            return False
        return all(self.cayley[a][b] in s for a in s for b in s) and all(
            self.inverse[a] in s for a in s
        )


def cyclic_group(n: int) -> FiniteGroup:
    """Integers mod n under addition, elements named '0'..'n-1'."""
    if n < 1:
        raise ConstraintError("cyclic group order must be positive")
    names = [str(i) for i in range(n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup.from_table(names, table)


def _perm_name(perm: tuple[int, ...]) -> str:
    """Cycle-notation name (1-based), 'e' for the identity."""
    n = len(perm)
    seen = [False] * n
    cycles = []
    for i in range(n):
        if seen[i] or perm[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = perm[j]
        cycles.append(cyc)
    if not cycles:
        return "e"
    return "".join("(" + "".join(str(v + 1) for v in cyc) + ")" for cyc in cycles)


def symmetric_group(n: int) -> FiniteGroup:
    """The symmetric group on n letters; composition applies the right factor first.

    Elements are listed identity first, then by number of moved points and
    cycle-notation name, so subgroup and coset specs read naturally.
    """
    if n < 1 or n > 5:
        raise ConstraintError("symmetric_group supports 1 <= n <= 5")
    perms = sorted(
        itertools.permutations(range(n)),
        key=lambda p: (sum(1 for i in range(n) if p[i] != i), _perm_name(p)),
    )
    index = {p: i for i, p in enumerate(perms)}
    names = [_perm_name(p) for p in perms]
    table = [
        [index[tuple(p[q[i]] for i in range(n))] for q in perms]
        for p in perms
    ]
    return FiniteGroup.from_table(names, table)


@dataclass(frozen=True)
class GroupAction:
    """An action of a finite group H on the elements of a finite group G.

    table[h][x] is the index of h acting on x; verified to respect the
    identity and composition and to act by bijections.
    """

    group: FiniteGroup
    target: FiniteGroup
    table: tuple[tuple[int, ...], ...]

    @classmethod
    def from_function(
        cls, group: FiniteGroup, target: FiniteGroup, f: Callable[[int, int], int]
    ) -> GroupAction:
        h_n, g_n = len(group), len(target)
        table = tuple(tuple(f(h, x) for x in range(g_n)) for h in range(h_n))
        for x in range(g_n):
            if table[group.identity][x] != x:
                raise ConstraintError("action: identity does not act trivially")
        for h1, h2 in itertools.product(range(h_n), repeat=2):
            for x in range(g_n):
                if table[h1][table[h2][x]] != table[group.mul(h1, h2)][x]:
                    raise ConstraintError("action: composition law fails")
        for h in range(h_n):
            if sorted(table[h]) != list(range(g_n)):
                raise ConstraintError("action: some group element does not act bijectively")
        return cls(group, target, table)


def negation_action(target: FiniteGroup) -> GroupAction:
    """The order-2 action x -> x^{-1}; an automorphism action iff target is abelian."""
    z2 = cyclic_group(2)
    return GroupAction.from_function(
        z2, target, lambda h, x: x if h == 0 else target.inverse[x]
    )


def trivial_action(target: FiniteGroup) -> GroupAction:
    z1 = cyclic_group(1)
    return GroupAction.from_function(z1, target, lambda h, x: x)


def from_semigroup(names: Sequence[str], table: Sequence[Sequence[str]]) -> Semihypergroup:
    """Lift a semigroup Cayley table: the product of point masses is a point mass.

    The operation table is checked for associativity first; the witness of
    a failure is reported in the error.
    """
    space = FiniteSpace(names)
    n = len(space)
    idx = [[space.index_of(v) for v in row] for row in table]
    if len(idx) != n or any(len(r) != n for r in idx):
        raise ConstraintError("semigroup table shape does not match the point list")
    for i, j, k in itertools.product(range(n), repeat=3):
        if idx[idx[i][j]][k] != idx[i][idx[j][k]]:
            raise VerificationError(
                "associativity",
                (names[i], names[j], names[k]),
                f"semigroup table not associative at "
                f"({names[i]}, {names[j]}, {names[k]})",
            )
    conv = ConvTable.from_function(
        space, lambda x, y: dirac(space, names[idx[space.index_of(x)][space.index_of(y)]])
    )
    return verify(conv, name="semigroup-lift")


def left_zero_semigroup(names: Sequence[str] = ("a", "b")) -> Semihypergroup:
    """The semigroup with x*y = x for all x, y."""
    table = [[x for _ in names] for x in names]
    return dataclasses.replace(from_semigroup(names, table), name="left-zero")


def from_group(G: FiniteGroup) -> Semihypergroup:
    """Group lift: a hypergroup with the group identity and inversion as involution."""
    space = G.space
    conv = ConvTable.from_function(
        space,
        lambda x, y: dirac(
            space, G.names[G.mul(space.index_of(x), space.index_of(y))]
        ),
    )
    return verify(conv, name="group-lift")


def _subgroup_indices(G: FiniteGroup, subgroup: Sequence[str]) -> tuple[int, ...]:
    idx = tuple(G.space.index_of(h) for h in subgroup)
    if len(set(idx)) != len(idx) or not G.is_subgroup(idx):
        raise ConstraintError("the given subset is not a subgroup")
    return idx


def left_coset_space(G: FiniteGroup, subgroup: Sequence[str]) -> Semihypergroup:
    """Left cosets xH with products averaged uniformly over the subgroup.

    Entry (xH, yH) places weight 1/|H| on (x t y)H for each t in H.  The
    result does not depend on the chosen representatives; this is verified
    by recomputing the entry from every representative pair.
    """
    H = _subgroup_indices(G, subgroup)
    cosets, coset_of = _partition(G, lambda x: frozenset(G.mul(x, h) for h in H))
    names = [f"{G.names[min(c)]}H" for c in cosets]
    space = FiniteSpace(names)

    def entry_from(x: int, y: int) -> Measure:
        terms = [
            (Fraction(1, len(H)), dirac(space, names[coset_of[G.mul(G.mul(x, t), y)]]))
            for t in H
        ]
        return combine(terms)

    entries = []
    for c1 in cosets:
        row = []
        for c2 in cosets:
            reps = [(x, y) for x in sorted(c1) for y in sorted(c2)]
            first = entry_from(*reps[0])
            for x, y in reps[1:]:
                if entry_from(x, y) != first:
                    raise VerificationError(
                        "representative-independence",
                        (G.names[x], G.names[y]),
                        "coset product depends on the representatives",
                    )
            row.append(first)
        entries.append(tuple(row))
    return verify(ConvTable(space, tuple(entries)), name="left-coset-space")


def double_coset_space(G: FiniteGroup, subgroup: Sequence[str]) -> Semihypergroup:
    """Double cosets HxH with the same uniform averaging over the subgroup."""
    H = _subgroup_indices(G, subgroup)
    cosets, coset_of = _partition(
        G, lambda x: frozenset(G.mul(G.mul(h1, x), h2) for h1 in H for h2 in H)
    )
    names = [f"H{G.names[min(c)]}H" for c in cosets]
    space = FiniteSpace(names)

    def entry_from(x: int, y: int) -> Measure:
        terms = [
            (Fraction(1, len(H)), dirac(space, names[coset_of[G.mul(G.mul(x, t), y)]]))
            for t in H
        ]
        return combine(terms)

    entries = []
    for c1 in cosets:
        row = []
        for c2 in cosets:
            reps = [(x, y) for x in sorted(c1) for y in sorted(c2)]
            first = entry_from(*reps[0])
            for x, y in reps[1:]:
                if entry_from(x, y) != first:
                    raise VerificationError(
                        "representative-independence",
                        (G.names[x], G.names[y]),
                        "double coset product depends on the representatives",
                    )
            row.append(first)
        entries.append(tuple(row))
    return verify(ConvTable(space, tuple(entries)), name="double-coset-space")


def orbit_space(G: FiniteGroup, action: GroupAction) -> Semihypergroup:
    """Orbit space of a bijective action of H on G.

    Entry (orb(x), orb(y)) averages the orbit of the product of every pair
    of translates with weight 1/|H|^2.  Associativity is checked, not
    assumed: for actions that are not by automorphisms it can fail, and
    then a VerificationError with the witness triple is raised.
    """
    if action.target != G:
        raise ConstraintError("action target is not the given group")
    Hn = len(action.group)
    orbits, orbit_of = _partition(
        G, lambda x: frozenset(action.table[h][x] for h in range(Hn))
    )
    names = [f"orb({G.names[min(c)]})" for c in orbits]
    space = FiniteSpace(names)
    w = Fraction(1, Hn * Hn)

    def entry(xn: str, yn: str) -> Measure:
        x = min(orbits[space.index_of(xn)])
        y = min(orbits[space.index_of(yn)])
        terms = []
        for s in range(Hn):
            for t in range(Hn):
                prod = G.mul(action.table[s][x], action.table[t][y])
                terms.append((w, dirac(space, names[orbit_of[prod]])))
        return combine(terms)

    return verify(ConvTable.from_function(space, entry), name="orbit-space")


def _partition(G: FiniteGroup, cls_of: Callable[[int], frozenset[int]]):
    """Partition the group elements into classes, ordered by minimal element."""
    classes: list[frozenset[int]] = []
    belongs: dict[int, int] = {}
    for x in range(len(G)):
        if x in belongs:
            continue
        c = cls_of(x)
        i = len(classes)
        classes.append(c)
        for y in c:
            belongs[y] = i
    order = sorted(range(len(classes)), key=lambda i: min(classes[i]))
    rank = {old: new for new, old in enumerate(order)}
    return [classes[i] for i in order], {x: rank[belongs[x]] for x in belongs}


def three_point_family(
    x: Sequence[Fraction], y: Sequence[Fraction], z: Sequence[Fraction]
) -> Semihypergroup:
    """The commutative family on {e, a, b} with e as identity.

    Products: a*a = x1 e + x2 a + x3 b, b*b = y1 e + y2 a + y3 b, and
    a*b = b*a = z1 a + z2 b.  Preconditions: all parameters nonnegative,
    the three rows sum to 1, and y1*x3 = z1*x1.  Full verification still
    runs; parameter sets satisfying the preconditions but not
    associativity raise a VerificationError with the witness triple.
    """
    x = tuple(Fraction(v) for v in x)
    y = tuple(Fraction(v) for v in y)
    z = tuple(Fraction(v) for v in z)
    if len(x) != 3 or len(y) != 3 or len(z) != 2:
        raise ConstraintError("expected 3 x-parameters, 3 y-parameters, 2 z-parameters")
    for label, vals in (("x", x), ("y", y), ("z", z)):
        for i, v in enumerate(vals, start=1):
            if v < 0:
                raise ConstraintError(f"{label}{i} < 0")
    if sum(x) != 1:
        raise ConstraintError("x1+x2+x3 != 1")
    if sum(y) != 1:
        raise ConstraintError("y1+y2+y3 != 1")
    if sum(z) != 1:
        raise ConstraintError("z1+z2 != 1")
    if y[0] * x[2] != z[0] * x[0]:
        raise ConstraintError("y1*x3 != z1*x1")
    space = FiniteSpace(("e", "a", "b"))
    pe, pa, pb = (dirac(space, p) for p in ("e", "a", "b"))
    prods = {
        ("e", "e"): pe, ("e", "a"): pa, ("e", "b"): pb,
        ("a", "e"): pa, ("b", "e"): pb,
        ("a", "a"): combine([(x[0], pe), (x[1], pa), (x[2], pb)]),
        ("b", "b"): combine([(y[0], pe), (y[1], pa), (y[2], pb)]),
        ("a", "b"): combine([(z[0], pa), (z[1], pb)]),
        ("b", "a"): combine([(z[0], pa), (z[1], pb)]),
    }
    conv = ConvTable.from_function(space, lambda s, t: prods[(s, t)])
    return verify(conv, name="three-point-family")


def zeuner_grid(n: int) -> Semihypergroup:
    """The reflection hypergroup restricted to the grid {0, 1/n, ..., 1}.

    Requires even n >= 2.  Both formula branches are checked to land on
    the grid rather than assumed, and the full axiom suite runs; the
    expected outcome at every even n is a commutative hypergroup with
    identity 0, the identity involution, and centre {0, 1}.
    """
    if n < 2:
        raise ConstraintError("n must be at least 2")
    if n % 2 != 0:
        raise ConstraintError("n must be even")
    values = [Fraction(k, n) for k in range(n + 1)]
    names = [str(v) for v in values]
    space = FiniteSpace(names)
    grid = {v: names[i] for i, v in enumerate(values)}

    def entry(xs: str, ys: str) -> Measure:
        s = values[space.index_of(xs)]
        t = values[space.index_of(ys)]
        u = abs(s - t)
        v = 1 - abs(1 - s - t)
        for branch in (u, v):
            if branch not in grid:
                raise VerificationError(
                    "closure", (xs, ys), f"branch value {branch} is off the grid"
                )
        return combine([(HALF, dirac(space, grid[u])), (HALF, dirac(space, grid[v]))])

    return verify(ConvTable.from_function(space, entry), name=f"zeuner-{n}")
