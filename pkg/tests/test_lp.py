import random
from fractions import Fraction

import pytest

from oracles import oracle_lp_optimum
from semihyp.lp import (
    EQ,
    GE,
    LE,
    LinearProgram,
    analyze_equality_polytope,
    constraint,
    rational_matrix_rank,
    solve_feasibility,
    solve_lp,
    verify_farkas,
    verify_ray,
    verify_witness,
)

F = Fraction


def lp_of(n, rows, objective=None, maximize=True, nonneg=None):
    return LinearProgram(
        n,
        tuple(constraint(c, r, b) for c, r, b in rows),
        tuple(F(v) for v in objective) if objective is not None else None,
        maximize,
        nonneg,
    )


def test_feasible_simplex_point():
    lp = lp_of(2, [([1, 1], EQ, 1)])
    out = solve_feasibility(lp)
    assert out.status == "feasible"
    assert verify_witness(lp, out.witness)


def test_infeasible_interval():
    lp = lp_of(1, [([1], GE, 1), ([1], LE, 0)])
    out = solve_feasibility(lp)
    assert out.status == "infeasible"
    assert verify_farkas(lp, out.certificate)


def test_maximize_bounded():
    lp = lp_of(1, [([1], LE, 3)], objective=[1])
    out = solve_lp(lp)
    assert out.status == "optimal"
    assert out.value == 3 and out.witness == (F(3),)


def test_maximize_on_probability_simplex():
    lp = lp_of(2, [([1, 1], EQ, 1)], objective=[1, 1])
    out = solve_lp(lp)
    assert out.status == "optimal" and out.value == 1


def test_unbounded_with_ray():
    lp = lp_of(2, [([0, 1], LE, 5)], objective=[1, 0])
    out = solve_lp(lp)
    assert out.status == "unbounded"
    assert verify_ray(lp, out.ray)


def test_unbounded_no_constraints():
    lp = LinearProgram(1, (), (F(1),))
    out = solve_lp(lp)
    assert out.status == "unbounded"
    assert verify_ray(lp, out.ray)


def test_free_variable_minimization():
    lp = lp_of(1, [([1], GE, -5)], objective=[1], maximize=False, nonneg=(False,))
    out = solve_lp(lp)
    assert out.status == "optimal" and out.value == -5


def test_free_variables_in_farkas():
    # x free, x >= 1 and x <= 0 simultaneously
    lp = lp_of(1, [([1], GE, 1), ([1], LE, 0)], nonneg=(False,))
    out = solve_feasibility(lp)
    assert out.status == "infeasible"
    assert verify_farkas(lp, out.certificate)


def test_equalities_kept_exact():
    lp = lp_of(
        3,
        [([1, 1, 1], EQ, 1), ([1, -1, 0], EQ, F(1, 3))],
        objective=[0, 0, 1],
    )
    out = solve_lp(lp)
    assert out.status == "optimal"
    assert verify_witness(lp, out.witness)
    assert out.value == F(2, 3)


def test_beale_cycling_instance_terminates_at_known_optimum():
    """Classic degenerate instance that cycles under the largest-coefficient
    rule; Bland's rule must terminate at value 1/20."""
    lp = lp_of(
        4,
        [
            ([F(1, 4), -60, F(-1, 25), 9], LE, 0),
            ([F(1, 2), -90, F(-1, 50), 3], LE, 0),
            ([0, 0, 1, 0], LE, 1),
        ],
        objective=[F(3, 4), -150, F(1, 50), -6],
    )
    out = solve_lp(lp)
    assert out.status == "optimal"
    assert out.value == F(1, 20)
    assert verify_witness(lp, out.witness)
    oracle_value, _ = oracle_lp_optimum(lp)
    assert oracle_value == F(1, 20)


def test_optimum_matches_vertex_oracle_on_random_programs():
    rng = random.Random(61)
    solved = 0
    for _ in range(25):
        n = rng.randint(2, 3)
        rows = []
        for _ in range(rng.randint(1, 3)):
            coeffs = [F(rng.randint(-3, 3)) for _ in range(n)]
            rows.append((coeffs, LE, F(rng.randint(0, 6))))
        rows.append(([1] * n, LE, F(rng.randint(1, 5))))  # keep it bounded
        obj = [F(rng.randint(-3, 3)) for _ in range(n)]
        lp = lp_of(n, rows, objective=obj)
        out = solve_lp(lp)
        assert out.status == "optimal"
        assert verify_witness(lp, out.witness)
        oracle_value, _ = oracle_lp_optimum(lp)
        assert out.value == oracle_value
        solved += 1
    assert solved == 25


def test_random_infeasible_systems_certify():
    rng = random.Random(67)
    for _ in range(20):
        n = rng.randint(1, 3)
        coeffs = [F(rng.randint(-3, 3)) for _ in range(n)]
        if all(c == 0 for c in coeffs):
            coeffs[0] = F(1)
        lo = F(rng.randint(0, 5))
        rows = [(coeffs, GE, lo + rng.randint(1, 4)), (coeffs, LE, lo)]
        for _ in range(rng.randint(0, 2)):
            rows.append(([F(rng.randint(-2, 2)) for _ in range(n)], LE, F(rng.randint(0, 5))))
        lp = lp_of(n, rows)
        out = solve_feasibility(lp)
        assert out.status == "infeasible"
        assert verify_farkas(lp, out.certificate)


def test_witnesses_resubstitute_on_random_feasible_systems():
    rng = random.Random(71)
    for _ in range(20):
        n = rng.randint(2, 4)
        x0 = [F(rng.randint(0, 4), rng.choice((1, 2))) for _ in range(n)]
        rows = []
        for _ in range(rng.randint(1, 4)):
            coeffs = [F(rng.randint(-3, 3)) for _ in range(n)]
            val = sum(c * v for c, v in zip(coeffs, x0))
            rel = rng.choice((LE, GE, EQ))
            slack = F(rng.randint(0, 3))
            rhs = val + slack if rel == LE else val - slack if rel == GE else val
            rows.append((coeffs, rel, rhs))
        lp = lp_of(n, rows)
        out = solve_feasibility(lp)
        assert out.status == "feasible"
        assert verify_witness(lp, out.witness)


def test_rank_helper():
    assert rational_matrix_rank([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert rational_matrix_rank([[F(1), F(0)], [F(0), F(1)]]) == 2
    assert rational_matrix_rank([]) == 0
    assert rational_matrix_rank([[F(0), F(0)]]) == 0


def test_polytope_analysis_full_simplex():
    lp = lp_of(3, [([1, 1, 1], EQ, 1)])
    s = analyze_equality_polytope(lp)
    assert s.feasible and s.dimension == 2
    assert s.coordinate_ranges == ((F(0), F(1)),) * 3


def test_polytope_analysis_point():
    lp = lp_of(2, [([1, 1], EQ, 1), ([1, -1], EQ, 0)])
    s = analyze_equality_polytope(lp)
    assert s.feasible and s.dimension == 0
    assert s.witness == (F(1, 2), F(1, 2))


def test_polytope_analysis_infeasible():
    lp = lp_of(2, [([1, 1], EQ, 1), ([1, 1], EQ, 2)])
    s = analyze_equality_polytope(lp)
    assert not s.feasible
    assert verify_farkas(lp, s.certificate)


def test_polytope_analysis_with_implied_zero():
    # x3 forced to zero: dimension drops accordingly
    lp = lp_of(3, [([1, 1, 1], EQ, 1), ([0, 0, 1], EQ, 0)])
    s = analyze_equality_polytope(lp)
    assert s.feasible and s.dimension == 1
    assert s.coordinate_ranges[2] == (F(0), F(0))


def test_polytope_analysis_rejects_inequalities():
    with pytest.raises(ValueError):
        analyze_equality_polytope(lp_of(2, [([1, 1], LE, 1)]))


def test_solve_lp_requires_objective():
    with pytest.raises(ValueError):
        solve_lp(lp_of(1, [([1], LE, 1)]))


def test_malformed_rows_rejected():
    with pytest.raises(ValueError):
        LinearProgram(2, (constraint([1], LE, 0),))
