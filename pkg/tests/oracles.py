"""Independent oracles used to freeze expected values.

Everything here is deliberately naive and shares no code path with the
package internals it checks: convolution by explicit double sums over the
Measure API, associativity by full triple enumeration, translates by direct
table expansion, and LP optima by exact vertex enumeration.
"""

from fractions import Fraction
from itertools import combinations, product

from semihyp.core import ConvTable, Semihypergroup
from semihyp.measures import Measure, combine, dirac

ZERO = Fraction(0)


def oracle_convolve(S, mu: Measure, nu: Measure) -> Measure:
    table = S.conv if isinstance(S, Semihypergroup) else S
    terms = []
    for x in table.space.points:
        cx = mu.coeff(x)
        if cx == 0:
            continue
        for y in table.space.points:
            cy = nu.coeff(y)
            if cy == 0:
                continue
            terms.append((cx * cy, table.entry(x, y)))
    if not terms:
        return Measure(table.space, (ZERO,) * len(table.space))
    return combine(terms)


def oracle_assoc_witnesses(table: ConvTable) -> list[tuple[str, str, str]]:
    """All failing triples, by explicit enumeration."""
    pts = table.space.points
    bad = []
    for x, y, z in product(pts, repeat=3):
        lhs = oracle_convolve(table, table.entry(x, y), dirac(table.space, z))
        rhs = oracle_convolve(table, dirac(table.space, x), table.entry(y, z))
        if lhs != rhs:
            bad.append((x, y, z))
    return bad


def oracle_left_translate(S: Semihypergroup, x: str, f_values) -> tuple[Fraction, ...]:
    """(L_x f)(y) by direct table expansion."""
    pts = S.points
    out = []
    for y in pts:
        m = S.conv.entry(x, y)
        out.append(sum((m.coeff(z) * fv for z, fv in zip(pts, f_values)), ZERO))
    return tuple(out)


def _solve_square(rows, rhs):
    """Exact solve of a square rational system; None when singular."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col] / pv
                for c in range(col, n + 1):
                    aug[r][c] -= f * aug[col][c]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def oracle_lp_optimum(lp):
    """Best objective over all vertices, by brute force.

    Treats every constraint boundary and every nonnegativity bound as a
    candidate tight hyperplane, solves each n-subset exactly, keeps the
    feasible solutions, and maximises (or minimises) the objective.  Only
    valid for LPs whose optimum is attained at a vertex; unbounded
    problems are out of scope here.
    """
    from semihyp.lp import verify_witness

    n = lp.num_vars
    planes = [(c.coeffs, c.rhs) for c in lp.constraints]
    for j in range(n):
        if lp.nonneg[j]:
            planes.append((tuple(Fraction(int(k == j)) for k in range(n)), ZERO))
    best = None
    best_x = None
    for subset in combinations(range(len(planes)), n):
        rows = [planes[i][0] for i in subset]
        rhs = [planes[i][1] for i in subset]
        x = _solve_square(rows, rhs)
        if x is None or not verify_witness(lp, x):
            continue
        val = sum((c * v for c, v in zip(lp.objective, x)), ZERO)
        if best is None or (val > best if lp.maximize else val < best):
            best = val
            best_x = tuple(x)
    return best, best_x
