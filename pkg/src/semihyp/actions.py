"""Affine actions on probability simplices and their fixed points.

An affine action assigns to every point x a column-stochastic rational
matrix A_x on a simplex, subject to the mixing law

    A_x A_y = sum_z (p_x * p_y)({z}) A_z

and A_e = I when a two-sided identity e exists.  Extending by
mu -> sum_x mu(x) A_x turns the family into an algebra homomorphism on
measures.  Common fixed points of {A_x} form a polytope decided by exact
LP.  The canonical action realises translation on the simplex of means:
column z of A_x holds the coefficients of p_x * p_z, so its fixed-point
polytope coincides with the left-invariant-mean polytope; fp_property_harness
cross-checks that linkage and the fixed-point behaviour of random actions.

General (possibly nonlinear) actions keyed by nonnegative measures are
checked for consistency on finitely generated convolution products.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .amenability import LimResult, lim_solve
from .core import Semihypergroup, convolve_measures
from .errors import SemihypError, SpaceMismatchError
from .lp import EQ, LinearProgram, analyze_equality_polytope, constraint
from .measures import FiniteSpace, Measure

ZERO = Fraction(0)
ONE = Fraction(1)
Matrix = tuple[tuple[Fraction, ...], ...]


# ---------------------------------------------------------------------------
# small exact matrix helpers

def identity_matrix(n: int) -> Matrix:
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    m = len(b[0])
    k = len(b)
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(k)), ZERO) for j in range(m))
        for i in range(n)
    )


def mat_scale_add(terms: Sequence[tuple[Fraction, Matrix]]) -> Matrix:
    n = len(terms[0][1])
    m = len(terms[0][1][0])
    acc = [[ZERO] * m for _ in range(n)]
    for c, mat in terms:
        if c == 0:
            continue
        for i in range(n):
            row = mat[i]
            for j in range(m):
                if row[j]:
                    acc[i][j] += c * row[j]
    return tuple(tuple(row) for row in acc)


def mat_vec(a: Matrix, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum((a[i][j] * v[j] for j in range(len(v))), ZERO) for i in range(len(a)))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def is_column_stochastic(a: Matrix) -> bool:
    n = len(a)
    for j in range(len(a[0])):
        col = [a[i][j] for i in range(n)]
        if any(v < 0 for v in col) or sum(col) != 1:
            return False
    return True


def is_row_stochastic(a: Matrix) -> bool:
    return all(all(v >= 0 for v in row) and sum(row) == 1 for row in a)


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    n = len(perm)
    return tuple(
        tuple(ONE if perm[j] == i else ZERO for j in range(n)) for i in range(n)
    )


# ---------------------------------------------------------------------------
# affine actions

@dataclass(frozen=True)
class AffineAction:
    """Family of matrices acting on the probability simplex of dimension
    state_dim - 1 (kind='simplex', column-stochastic) or on affine
    functions in vertex-value coordinates (kind='dual', row-stochastic)."""

    semihypergroup: Semihypergroup
    state_dim: int
    matrices: Mapping[str, Matrix]
    kind: str = "simplex"
    label: str = ""

    def matrix(self, x: str) -> Matrix:
        try:
            return self.matrices[x]
        except KeyError:
            raise SemihypError(f"no matrix for point {x}") from None


@dataclass(frozen=True)
class ActionLawResult:
    ok: bool
    reason: str = ""
    witness: tuple | None = None
    lhs: Matrix | None = None
    rhs: Matrix | None = None


def check_action_law(a: AffineAction) -> ActionLawResult:
    """Exact verification of the full action contract.

    Checks stochasticity of every matrix (columns for simplex actions,
    rows for dual ones), the mixing law on all point pairs, and the
    identity condition when a two-sided identity exists.
    """
    S = a.semihypergroup
    for x in S.points:
        m = a.matrix(x)
        if len(m) != a.state_dim or any(len(r) != a.state_dim for r in m):
            return ActionLawResult(False, "matrix shape mismatch", (x,))
        stochastic = is_column_stochastic(m) if a.kind == "simplex" else is_row_stochastic(m)
        if not stochastic:
            return ActionLawResult(False, "matrix is not stochastic", (x,))
    e = S.identity
    if e is not None and a.matrix(e) != identity_matrix(a.state_dim):
        return ActionLawResult(False, "identity point does not act as the identity", (e,))
    for x in S.points:
        ax = a.matrix(x)
        for y in S.points:
            lhs = mat_mul(ax, a.matrix(y))
            mix = S.conv.entry(x, y)
            rhs = mat_scale_add(
                [(c, a.matrix(z)) for z, c in zip(S.points, mix.coeffs) if c]
            )
            if lhs != rhs:
                return ActionLawResult(False, "mixing law fails", (x, y), lhs, rhs)
    return ActionLawResult(True)


def verified_action(
    S: Semihypergroup,
    matrices: Mapping[str, Matrix],
    kind: str = "simplex",
    label: str = "",
) -> AffineAction:
    """Build an AffineAction and insist the full contract holds."""
    a = AffineAction(S, len(next(iter(matrices.values()))), dict(matrices), kind, label)
    res = check_action_law(a)
    if not res.ok:
        raise SemihypError(f"invalid action ({res.reason} at {res.witness})")
    return a


def extend_to_measures(a: AffineAction, mu: Measure) -> Matrix:
    """The matrix of mu: sum_x mu(x) A_x.  Turns convolution into matrix
    product for verified actions."""
    if mu.space != a.semihypergroup.space:
        raise SpaceMismatchError("measure lives on a different space")
    terms = [(c, a.matrix(x)) for x, c in zip(a.semihypergroup.points, mu.coeffs)]
    return mat_scale_add(terms)


@dataclass(frozen=True)
class FixedPointResult:
    exists: bool
    witness: tuple[Fraction, ...] | None
    dimension: int | None
    certificate: tuple | None


def _fixed_point_program(a: AffineAction) -> LinearProgram:
    d = a.state_dim
    rows = [constraint([ONE] * d, EQ, ONE)]
    for x in a.semihypergroup.points:
        m = a.matrix(x)
        for i in range(d):
            coeffs = list(m[i])
            coeffs[i] -= ONE
            rows.append(constraint(coeffs, EQ, ZERO))
    return LinearProgram(d, tuple(rows))


def fixed_points(a: AffineAction) -> FixedPointResult:
    """Common fixed vectors in the simplex: A_x v = v for every point.

    Returns an exact witness with the affine dimension of the fixed-point
    polytope, or a Farkas certificate of emptiness.
    """
    if a.kind != "simplex":
        raise SemihypError("fixed_points expects a simplex action")
    summary = analyze_equality_polytope(_fixed_point_program(a))
    if not summary.feasible:
        return FixedPointResult(False, None, None, summary.certificate)
    return FixedPointResult(True, summary.witness, summary.dimension, None)


def canonical_action(S: Semihypergroup) -> AffineAction:
    """Translation on the simplex of means: column z of A_x carries the
    coefficients of p_x * p_z.  The mixing law is re-verified even though
    associativity already guarantees it."""
    n = len(S.space)
    tensor = S.conv.tensor
    mats = {}
    for xi, x in enumerate(S.points):
        mats[x] = tuple(
            tuple(tensor[xi][zi][wi] for zi in range(n)) for wi in range(n)
        )
    return verified_action(S, mats, label="canonical")


def induced_action_on_affine(a: AffineAction) -> AffineAction:
    """Composition action on affine functions, in vertex-value coordinates.

    The matrix of f -> f(A_x .) is the transpose of A_x; the transposed
    family obeys the mixing law exactly when the base is commutative, so a
    non-commutative base is rejected.  The resulting matrices are
    row-stochastic: they fix constants and preserve the order interval of
    functions with values in [0, 1].
    """
    S = a.semihypergroup
    if not S.commutative:
        raise SemihypError("induced action on affine functions requires a commutative base")
    mats = {x: transpose(a.matrix(x)) for x in S.points}
    return verified_action(S, mats, kind="dual", label=f"dual({a.label or 'action'})")


# ---------------------------------------------------------------------------
# general (possibly nonlinear) actions on a finite state space

@dataclass(frozen=True)
class GeneralActionSpec:
    """Finitely generated general action: nonnegative generator measures
    paired with total self-maps of the state space (as index tuples)."""

    semihypergroup: Semihypergroup
    state_space: FiniteSpace
    generators: tuple[tuple[Measure, tuple[int, ...]], ...]
    closure_depth: int = 3


@dataclass(frozen=True)
class GeneralActionResult:
    ok: bool
    witness: tuple | None = None
    generated: int = 0


def check_general_action(g: GeneralActionSpec) -> GeneralActionResult:
    """Close the generators under convolution and check consistency.

    Whenever two generated measures convolve to an already-generated
    measure, the composite map must match the stored one; a product
    reached along two routes with different maps is a failure witnessing
    both maps.  Maps compose action-style: the map of mu * nu applies nu's
    map first.
    """
    for mu, mapping in g.generators:
        if not mu.is_nonnegative:
            raise SemihypError("generator measures must be nonnegative")
        if len(mapping) != len(g.state_space):
            raise SemihypError("generator map is not total on the state space")
    S = g.semihypergroup
    known: dict[tuple, tuple[int, ...]] = {}
    frontier: list[Measure] = []
    for mu, mapping in g.generators:
        key = mu.coeffs
        if key in known and known[key] != mapping:
            return GeneralActionResult(False, (mu, known[key], mapping), len(known))
        known[key] = mapping
        frontier.append(mu)
    measures = {mu.coeffs: mu for mu in frontier}
    for _ in range(g.closure_depth):
        new_items: dict[tuple, tuple[Measure, tuple[int, ...]]] = {}
        for ka, kb in itertools.product(list(known), repeat=2):
            mu, nu = measures[ka], measures[kb]
            prod = convolve_measures(S, mu, nu)
            composite = tuple(known[ka][known[kb][i]] for i in range(len(g.state_space)))
            key = prod.coeffs
            if key in known:
                if known[key] != composite:
                    return GeneralActionResult(False, (prod, known[key], composite), len(known))
            elif key in new_items:
                if new_items[key][1] != composite:
                    return GeneralActionResult(
                        False, (prod, new_items[key][1], composite), len(known)
                    )
            else:
                new_items[key] = (prod, composite)
        if not new_items:
            break
        for key, (prod, composite) in new_items.items():
            known[key] = composite
            measures[key] = prod
    return GeneralActionResult(True, None, len(known))


# ---------------------------------------------------------------------------
# seeded random actions

def _random_involution(rng: random.Random, n: int) -> tuple[int, ...]:
    perm = list(range(n))
    items = list(range(n))
    rng.shuffle(items)
    while len(items) >= 2 and rng.random() < 0.7:
        a = items.pop()
        b = items.pop()
        perm[a], perm[b] = b, a
    return tuple(perm)


def _random_stochastic(rng: random.Random, n: int) -> Matrix:
    cols = []
    for _ in range(n):
        den = rng.choice((2, 3, 4, 6))
        cuts = [rng.randint(0, den) for _ in range(n)]
        s = sum(cuts) or 1
        if sum(cuts) == 0:
            cuts[rng.randrange(n)] = 1
        cols.append([Fraction(c, s) for c in cuts])
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def _structured_draw(rng: random.Random, n: int) -> Matrix:
    """Draw from a pool biased toward matrices that satisfy polynomial
    identities: permutation involutions, idempotent averages, projections."""
    kind = rng.randrange(4)
    if kind == 0:
        return permutation_matrix(_random_involution(rng, n))
    if kind == 1:
        p = permutation_matrix(_random_involution(rng, n))
        return mat_scale_add([(Fraction(1, 2), identity_matrix(n)), (Fraction(1, 2), p)])
    if kind == 2:
        col = [ZERO] * n
        col[rng.randrange(n)] = ONE
        return tuple(tuple(col[i] for _ in range(n)) for i in range(n))
    return _random_stochastic(rng, n)


def _generating_set(S: Semihypergroup) -> list[str]:
    """Greedy small set whose convolution closure covers all points."""
    from .core import set_convolution

    pts = list(S.points)

    def closure(seed: set[str]) -> set[str]:
        cur = set(seed)
        while True:
            nxt = cur | set_convolution(S, cur, cur)
            if nxt == cur:
                return cur
            cur = nxt

    for x in pts:
        if closure({x}) == set(pts):
            return [x]
    for x, y in itertools.combinations(pts, 2):
        if closure({x, y}) == set(pts):
            return [x, y]
    return pts


def _propagate(S: Semihypergroup, dim: int, seeds: dict[str, Matrix]) -> dict[str, Matrix] | None:
    """Derive the remaining matrices from the mixing law.

    Whenever both factors of a pair are known and the mixture has exactly
    one unknown point with nonzero weight, that matrix is solved for;
    negative entries reject the draw immediately.  Returns None on any
    inconsistency, or the (possibly still partial) assignment.
    """
    known = dict(seeds)
    changed = True
    guard = 0
    while changed and guard < 4 * len(S.points) ** 2:
        changed = False
        guard += 1
        for x, y in itertools.product(S.points, repeat=2):
            if x not in known or y not in known:
                continue
            mix = S.conv.entry(x, y)
            unknown = [z for z in mix.support() if z not in known]
            if len(unknown) != 1:
                continue
            z0 = unknown[0]
            c0 = mix.coeff(z0)
            prod = mat_mul(known[x], known[y])
            rest = [(-mix.coeff(z), known[z]) for z in mix.support() if z != z0]
            resid = mat_scale_add([(ONE, prod)] + rest) if rest else prod
            cand = tuple(tuple(v / c0 for v in row) for row in resid)
            if any(v < 0 for row in cand for v in row):
                return None
            known[z0] = cand
            changed = True
    return known


def random_actions(
    S: Semihypergroup, dim: int, count: int, seed: int = 0
) -> list[AffineAction]:
    """Seeded verified actions on the (dim-1)-simplex.

    Draws structured matrices for a generating set, propagates the mixing
    law, and keeps only families that pass check_action_law; guaranteed
    constructions (the trivial action, permutation-conjugated canonical
    blocks when dim allows, constant families when no identity exists)
    fill the remainder so the requested count is always met.
    """
    rng = random.Random(seed)
    out: list[AffineAction] = []
    n = len(S.space)
    gens = _generating_set(S)
    e = S.identity

    def emit(mats: dict[str, Matrix], label: str) -> bool:
        a = AffineAction(S, dim, mats, "simplex", label)
        if check_action_law(a).ok:
            out.append(a)
            return True
        return False

    emit({x: identity_matrix(dim) for x in S.points}, "trivial")
    attempts = 0
    while len(out) < count and attempts < 40 * count:
        attempts += 1
        style = attempts % 3 + 1
        if style == 1 and dim >= n:
            perm = list(range(dim))
            rng.shuffle(perm)
            p = permutation_matrix(perm)
            pinv = transpose(p)
            can = canonical_action(S)
            blocks = {}
            for x in S.points:
                base = can.matrix(x)
                big = [
                    [
                        base[i][j] if i < n and j < n else (ONE if i == j else ZERO)
                        for j in range(dim)
                    ]
                    for i in range(dim)
                ]
                blocks[x] = mat_mul(mat_mul(p, tuple(tuple(r) for r in big)), pinv)
            emit(blocks, "canonical-block")
        elif style == 2 and e is None:
            cols = []
            for _ in range(len(S.points)):
                c = [ZERO] * dim
                c[rng.randrange(dim)] = ONE
                cols.append(c)
            mats = {
                x: tuple(tuple(cols[k][i] for _ in range(dim)) for i in range(dim))
                for k, x in enumerate(S.points)
            }
            emit(mats, "constant-family")
        else:
            seeds = {g: _structured_draw(rng, dim) for g in gens}
            if e is not None:
                seeds[e] = identity_matrix(dim)
            full = _propagate(S, dim, seeds)
            if full is None or len(full) < n:
                continue
            emit(full, "propagated")
    while len(out) < count:
        out.append(
            AffineAction(
                S, dim, {x: identity_matrix(dim) for x in S.points}, "simplex", "trivial"
            )
        )
    return out[:count]


# ---------------------------------------------------------------------------
# fixed-point harness

@dataclass(frozen=True)
class HarnessReport:
    lim: LimResult
    instances: int
    fixed: int
    misses: tuple[str, ...]
    canonical: FixedPointResult
    consistent: bool
    verdict: str


def fp_property_harness(
    S: Semihypergroup,
    instances: Sequence[AffineAction] | None = None,
    *,
    dims: Sequence[int] = (3, 4),
    count: int = 25,
    seed: int = 0,
) -> HarnessReport:
    """Cross-check invariant-mean existence against fixed-point behaviour.

    With a LIM: every verified action supplied or generated must have a
    common fixed point, and so must the canonical action; any miss is a
    hard failure.  Without a LIM: the canonical action must be certified
    fixed-point free.  The verdict is labelled 'consistent with' the
    expected equivalence: a finite sample cannot exhaust all actions.
    """
    lim = lim_solve(S)
    acts = list(instances) if instances is not None else []
    if instances is None:
        per = max(1, count // max(1, len(dims)))
        for k, d in enumerate(dims):
            acts.extend(random_actions(S, d, per, seed + k))
    for a in acts:
        if a.semihypergroup.conv != S.conv:
            raise SemihypError("harness received an action of a different structure")
        law = check_action_law(a)
        if not law.ok:
            raise SemihypError(f"harness received an unverified action ({law.reason})")
    canon = fixed_points(canonical_action(S))
    fixed = 0
    misses = []
    for i, a in enumerate(acts):
        res = fixed_points(a)
        if res.exists:
            fixed += 1
        else:
            misses.append(f"instance {i} ({a.label or 'unlabelled'}, dim {a.state_dim})")
    if lim.exists:
        consistent = not misses and canon.exists
        verdict = (
            "consistent with the mean-to-fixed-point direction"
            if consistent
            else "INCONSISTENT: a verified action missed a fixed point despite a LIM"
        )
    else:
        consistent = not canon.exists
        verdict = (
            "consistent with the fixed-point-to-mean direction"
            if consistent
            else "INCONSISTENT: canonical action has a fixed point but no LIM exists"
        )
    return HarnessReport(lim, len(acts), fixed, tuple(misses), canon, consistent, verdict)
