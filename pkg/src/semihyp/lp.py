"""Exact rational linear programming.

Two-phase primal simplex over Fractions with Bland's anti-cycling rule
always on.  Every answer ships with an exactly checkable artifact:

* feasible/optimal: a witness vector that re-substitutes into every
  constraint exactly;
* infeasible: a Farkas certificate, multipliers lambda with lambda_i >= 0
  on '>=' rows, lambda_i <= 0 on '<=' rows, whose combined row has
  nonpositive coefficients on the nonnegative variables, zero on free
  variables, and strictly positive combined right-hand side;
* unbounded: an improving feasible ray.

verify_witness / verify_farkas / verify_ray recheck those artifacts from
scratch; the solver itself asserts them before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import kernels

ZERO = Fraction(0)
ONE = Fraction(1)

LE, EQ, GE = "<=", "==", ">="
_MAX_PIVOTS = 200_000


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in (LE, EQ, GE):
            raise ValueError(f"unknown relation {self.rel!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))


@dataclass(frozen=True)
class LinearProgram:
    num_vars: int
    constraints: tuple[Constraint, ...]
    objective: tuple[Fraction, ...] | None = None
    maximize: bool = True
    nonneg: tuple[bool, ...] | None = None

    def __post_init__(self):
        if self.nonneg is None:
            object.__setattr__(self, "nonneg", (True,) * self.num_vars)
        if len(self.nonneg) != self.num_vars:
            raise ValueError("nonneg mask length does not match num_vars")
        for c in self.constraints:
            if len(c.coeffs) != self.num_vars:
                raise ValueError("constraint row length does not match num_vars")
        if self.objective is not None:
            if len(self.objective) != self.num_vars:
                raise ValueError("objective length does not match num_vars")
            object.__setattr__(
                self, "objective", tuple(Fraction(c) for c in self.objective)
            )


@dataclass(frozen=True)
class LPOutcome:
    status: str  # 'feasible' | 'optimal' | 'infeasible' | 'unbounded'
    witness: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    certificate: tuple[Fraction, ...] | None = None
    ray: tuple[Fraction, ...] | None = None


def constraint(coeffs, rel, rhs) -> Constraint:
    return Constraint(tuple(Fraction(c) for c in coeffs), rel, Fraction(rhs))


# ---------------------------------------------------------------------------
# standard form

class _Standard:
    """Equality standard form Ax = b, x >= 0, b >= 0, with bookkeeping to
    map witnesses, rays and duals back to the user's variables and rows."""

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        self.var_cols: list[tuple[int, int | None]] = []  # (plus, minus) per user var
        ncols = 0
        for j in range(lp.num_vars):
            if lp.nonneg[j]:
                self.var_cols.append((ncols, None))
                ncols += 1
            else:
                self.var_cols.append((ncols, ncols + 1))
                ncols += 2
        self.nstruct = ncols
        self.row_sign: list[int] = []
        self.row_rel: list[str] = []  # relation after sign flip
        rows: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        for c in lp.constraints:
            s = -1 if c.rhs < 0 else 1
            self.row_sign.append(s)
            if s == 1:
                self.row_rel.append(c.rel)
            else:
                self.row_rel.append({LE: GE, GE: LE, EQ: EQ}[c.rel])
            row = [ZERO] * self.nstruct
            for j, a in enumerate(c.coeffs):
                if a:
                    p, mncol = self.var_cols[j]
                    row[p] += s * a
                    if mncol is not None:
                        row[mncol] -= s * a
            rows.append(row)
            rhs.append(s * c.rhs)
        m = len(rows)
        # slack for <=, surplus for >=
        self.slack_col: list[int | None] = [None] * m
        self.origin_col: list[int] = [0] * m  # unit column used to read duals
        for i, rel in enumerate(self.row_rel):
            if rel == LE:
                col = ncols
                ncols += 1
                for r in range(m):
                    rows[r].append(ONE if r == i else ZERO)
                self.slack_col[i] = col
            elif rel == GE:
                col = ncols
                ncols += 1
                for r in range(m):
                    rows[r].append(-ONE if r == i else ZERO)
        # artificials for >= and == rows; slack rows start basic on the slack
        self.art_cols: list[int | None] = [None] * m
        basis: list[int] = [-1] * m
        for i, rel in enumerate(self.row_rel):
            if rel == LE:
                basis[i] = self.slack_col[i]
                self.origin_col[i] = self.slack_col[i]
            else:
                col = ncols
                ncols += 1
                for r in range(m):
                    rows[r].append(ONE if r == i else ZERO)
                self.art_cols[i] = col
                basis[i] = col
                self.origin_col[i] = col
        self.ncols = ncols
        self.rows = [row + [rhs[i]] for i, row in enumerate(rows)]
        self.basis = basis
        self.artificials = {c for c in self.art_cols if c is not None}

    def user_point(self, col_values: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = []
        for p, mn in self.var_cols:
            v = col_values[p]
            if mn is not None:
                v -= col_values[mn]
            out.append(v)
        return tuple(out)


def _column_values(std: _Standard, rows, basis) -> list[Fraction]:
    vals = [ZERO] * std.ncols
    for i, b in enumerate(basis):
        vals[b] = rows[i][-1]
    return vals


def _simplex(rows, basis, costs, allowed, *, pivot_cap=_MAX_PIVOTS):
    """Run primal simplex (maximization) on the m constraint rows.

    rows carry the rhs in the last cell; an objective row with reduced
    costs z_j - c_j is appended, pivoted along, and removed before
    returning.  Returns ('optimal', value) or ('unbounded', entering_col).
    Bland's rule: entering = smallest eligible column, leaving = smallest
    basic-variable index among minimum ratios.
    """
    m = len(rows)
    width = len(rows[0]) if rows else len(costs) + 1
    obj = [ZERO] * width
    for j in range(width - 1):
        obj[j] = -costs[j] if j < len(costs) else ZERO
    for i, b in enumerate(basis):
        cb = costs[b] if b < len(costs) else ZERO
        if cb:
            row = rows[i]
            for j in range(width):
                if row[j]:
                    obj[j] += cb * row[j]
    tab = rows + [obj]
    pivots = 0
    while True:
        enter = -1
        for j in range(width - 1):
            if j in allowed and obj[j] < 0:
                enter = j
                break
        if enter < 0:
            tab.pop()
            return "optimal", obj[-1]
        leave = -1
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            tab.pop()
            return "unbounded", enter
        kernels.pivot_step(tab, leave, enter)
        basis[leave] = enter
        pivots += 1
        if pivots > pivot_cap:
            raise RuntimeError("simplex exceeded the pivot budget")


def _phase1(std: _Standard):
    """Minimise the artificial mass; returns the residual infeasibility."""
    costs = [ZERO] * std.ncols
    for c in std.artificials:
        costs[c] = -ONE
    allowed = set(range(std.ncols))
    status, value = _simplex(std.rows, std.basis, costs, allowed)
    assert status == "optimal"  # phase 1 is always bounded
    return -value  # total residual artificial mass, >= 0


def _phase1_duals(std: _Standard) -> list[Fraction]:
    """Row multipliers y = c_B B^-1 of the phase-1 optimum.

    Each row started with a unit column (its slack or artificial), so the
    i-th multiplier is the plain cost-weighted combination of the current
    tableau in that column: z_col = y . e_i = y_i.
    """
    costs = {c: -ONE for c in std.artificials}
    m = len(std.rows)
    z = [ZERO] * std.ncols
    for i, b in enumerate(std.basis):
        cb = costs.get(b, ZERO)
        if cb:
            for j in range(std.ncols):
                if std.rows[i][j]:
                    z[j] += cb * std.rows[i][j]
    return [z[std.origin_col[i]] for i in range(m)]


def _farkas_from_phase1(std: _Standard) -> tuple[Fraction, ...]:
    y = _phase1_duals(std)
    # user multipliers: lambda_i = -sign_i * y_i
    return tuple(-std.row_sign[i] * y[i] for i in range(len(y)))


def _drive_out_artificials(std: _Standard) -> None:
    """After a feasible phase 1, pivot basic artificials out (they sit at
    level zero) or drop their rows when redundant."""
    removable_rows = []
    for i in range(len(std.rows)):
        b = std.basis[i]
        if b not in std.artificials:
            continue
        target = -1
        for j in range(std.ncols):
            if j not in std.artificials and std.rows[i][j] != 0:
                target = j
                break
        if target < 0:
            removable_rows.append(i)
        else:
            kernels.pivot_step(std.rows, i, target)
            std.basis[i] = target
    for i in reversed(removable_rows):
        del std.rows[i]
        del std.basis[i]


def solve_feasibility(lp: LinearProgram) -> LPOutcome:
    """Exact feasibility: a witness point or a verifying Farkas certificate."""
    std = _Standard(lp)
    residual = _phase1(std)
    if residual > 0:
        cert = _farkas_from_phase1(std)
        assert verify_farkas(lp, cert), "internal error: certificate failed to verify"
        return LPOutcome("infeasible", certificate=cert)
    witness = std.user_point(_column_values(std, std.rows, std.basis))
    assert verify_witness(lp, witness), "internal error: witness failed to verify"
    return LPOutcome("feasible", witness=witness)


def solve_lp(lp: LinearProgram) -> LPOutcome:
    """Exact optimisation via the two-phase simplex method."""
    if lp.objective is None:
        raise ValueError("solve_lp needs an objective; use solve_feasibility otherwise")
    std = _Standard(lp)
    residual = _phase1(std)
    if residual > 0:
        cert = _farkas_from_phase1(std)
        assert verify_farkas(lp, cert), "internal error: certificate failed to verify"
        return LPOutcome("infeasible", certificate=cert)
    _drive_out_artificials(std)
    sign = 1 if lp.maximize else -1
    costs = [ZERO] * std.ncols
    for j in range(lp.num_vars):
        c = lp.objective[j]
        if c:
            p, mn = std.var_cols[j]
            costs[p] = sign * c
            if mn is not None:
                costs[mn] = -sign * c
    allowed = set(range(std.ncols)) - std.artificials
    status, value = _simplex(std.rows, std.basis, costs, allowed)
    if status == "unbounded":
        enter = value
        ray_cols = [ZERO] * std.ncols
        ray_cols[enter] = ONE
        for i, b in enumerate(std.basis):
            ray_cols[b] = -std.rows[i][enter]
        ray = std.user_point(ray_cols)
        assert verify_ray(lp, ray), "internal error: ray failed to verify"
        return LPOutcome("unbounded", ray=ray)
    witness = std.user_point(_column_values(std, std.rows, std.basis))
    assert verify_witness(lp, witness), "internal error: witness failed to verify"
    return LPOutcome("optimal", witness=witness, value=sign * value)


# ---------------------------------------------------------------------------
# exact re-verification of answers

def verify_witness(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    if len(x) != lp.num_vars:
        return False
    for j in range(lp.num_vars):
        if lp.nonneg[j] and x[j] < 0:
            return False
    for c in lp.constraints:
        lhs = sum((a * v for a, v in zip(c.coeffs, x)), ZERO)
        if c.rel == LE and lhs > c.rhs:
            return False
        if c.rel == GE and lhs < c.rhs:
            return False
        if c.rel == EQ and lhs != c.rhs:
            return False
    return True


def verify_farkas(lp: LinearProgram, lam: Sequence[Fraction]) -> bool:
    """Check that lam certifies infeasibility (see module docstring)."""
    if len(lam) != len(lp.constraints):
        return False
    for y, c in zip(lam, lp.constraints):
        if c.rel == LE and y > 0:
            return False
        if c.rel == GE and y < 0:
            return False
    combo = [ZERO] * lp.num_vars
    for y, c in zip(lam, lp.constraints):
        if y:
            for j, a in enumerate(c.coeffs):
                if a:
                    combo[j] += y * a
    for j in range(lp.num_vars):
        if lp.nonneg[j]:
            if combo[j] > 0:
                return False
        elif combo[j] != 0:
            return False
    rhs = sum((y * c.rhs for y, c in zip(lam, lp.constraints)), ZERO)
    return rhs > 0


def verify_ray(lp: LinearProgram, d: Sequence[Fraction]) -> bool:
    """An unboundedness certificate: a feasible direction that improves the
    objective."""
    if len(d) != lp.num_vars or all(v == 0 for v in d):
        return False
    for j in range(lp.num_vars):
        if lp.nonneg[j] and d[j] < 0:
            return False
    for c in lp.constraints:
        drift = sum((a * v for a, v in zip(c.coeffs, d)), ZERO)
        if c.rel == LE and drift > 0:
            return False
        if c.rel == GE and drift < 0:
            return False
        if c.rel == EQ and drift != 0:
            return False
    if lp.objective is None:
        return True
    gain = sum((a * v for a, v in zip(lp.objective, d)), ZERO)
    return gain > 0 if lp.maximize else gain < 0


# ---------------------------------------------------------------------------
# polytopes of the shape {x >= 0 : Ex = e}

def rational_matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank by Gaussian elimination over the rationals."""
    work = [list(r) for r in rows if any(v != 0 for v in r)]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    col = 0
    while col < ncols and rank < len(work):
        piv = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][col]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                f = work[r][col] / pv
                for cidx in range(col, ncols):
                    work[r][cidx] -= f * work[rank][cidx]
        rank += 1
        col += 1
    return rank


@dataclass(frozen=True)
class PolytopeSummary:
    feasible: bool
    dimension: int | None
    witness: tuple[Fraction, ...] | None
    certificate: tuple[Fraction, ...] | None
    coordinate_ranges: tuple[tuple[Fraction, Fraction], ...] | None


def analyze_equality_polytope(lp: LinearProgram) -> PolytopeSummary:
    """Feasibility, a witness, coordinate ranges, and the exact affine
    dimension of {x >= 0 : equality rows}.

    The affine hull is the solution set of the equalities together with the
    coordinates that are identically zero on the polytope (found by
    maximising each coordinate); the dimension is num_vars minus the exact
    rank of that combined system.
    """
    if any(c.rel != EQ for c in lp.constraints) or not all(lp.nonneg):
        raise ValueError("expected an all-equality system with nonnegative variables")
    base = solve_feasibility(lp)
    if base.status == "infeasible":
        return PolytopeSummary(False, None, None, base.certificate, None)
    n = lp.num_vars
    ranges = []
    zero_rows: list[list[Fraction]] = []
    for j in range(n):
        e_j = tuple(ONE if k == j else ZERO for k in range(n))
        hi = solve_lp(LinearProgram(n, lp.constraints, e_j, True, lp.nonneg))
        lo = solve_lp(LinearProgram(n, lp.constraints, e_j, False, lp.nonneg))
        assert hi.status == "optimal" and lo.status == "optimal"
        ranges.append((lo.value, hi.value))
        if hi.value == 0:
            zero_rows.append([ONE if k == j else ZERO for k in range(n)])
    system = [list(c.coeffs) for c in lp.constraints] + zero_rows
    dim = n - rational_matrix_rank(system)
    return PolytopeSummary(True, dim, base.witness, None, tuple(ranges))
