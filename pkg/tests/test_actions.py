import random
from fractions import Fraction

import pytest

from randgen import random_probability_measure
from semihyp.actions import (
    AffineAction,
    GeneralActionSpec,
    canonical_action,
    check_action_law,
    check_general_action,
    extend_to_measures,
    fixed_points,
    fp_property_harness,
    identity_matrix,
    induced_action_on_affine,
    mat_mul,
    random_actions,
    verified_action,
)
from semihyp.amenability import lim_solve
from semihyp.core import convolve_measures
from semihyp.errors import SemihypError
from semihyp.lp import verify_witness
from semihyp.measures import Measure, combine, dirac

F = Fraction

SWAP2 = ((F(0), F(1)), (F(1), F(0)))
I2 = identity_matrix(2)


def z2_swap_action(corpus):
    return verified_action(corpus["z2"], {"0": I2, "1": SWAP2}, label="swap")


def left_zero_constant_action(left_zero):
    a = ((F(1), F(1)), (F(0), F(0)))  # constant map onto the first vertex
    b = ((F(0), F(0)), (F(1), F(1)))  # constant map onto the second
    return verified_action(left_zero, {"a": a, "b": b}, label="constants")


def test_action_law_swap(corpus):
    act = z2_swap_action(corpus)
    assert check_action_law(act).ok


def test_action_law_trivial(corpus):
    act = verified_action(corpus["z2"], {"0": I2, "1": I2})
    assert check_action_law(act).ok


def test_action_law_canonical_zeuner(zeuner2):
    act = canonical_action(zeuner2)
    assert check_action_law(act).ok


def test_action_law_rejects_identity_violation(corpus):
    act = AffineAction(corpus["z2"], 2, {"0": SWAP2, "1": I2})
    res = check_action_law(act)
    assert not res.ok and "identity" in res.reason


def test_action_law_rejects_non_stochastic(corpus):
    bad = ((F(2), F(0)), (F(-1), F(1)))
    act = AffineAction(corpus["z2"], 2, {"0": I2, "1": bad})
    res = check_action_law(act)
    assert not res.ok and res.reason == "matrix is not stochastic"


def test_action_law_mixing_failure_witness(corpus):
    z3 = corpus["z3"]
    rot = ((F(0), F(0), F(1)), (F(1), F(0), F(0)), (F(0), F(1), F(0)))
    act = AffineAction(z3, 3, {"0": identity_matrix(3), "1": rot, "2": rot})
    res = check_action_law(act)
    assert not res.ok and res.reason == "mixing law fails"
    assert res.witness == ("1", "1")
    assert res.lhs is not None and res.rhs is not None


def test_extend_to_measures_dirac_and_mix(corpus):
    act = z2_swap_action(corpus)
    sp = corpus["z2"].space
    assert extend_to_measures(act, dirac(sp, "1")) == SWAP2
    mixed = extend_to_measures(
        act, combine([(F(1, 2), dirac(sp, "0")), (F(1, 2), dirac(sp, "1"))])
    )
    assert mixed == ((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2)))


def test_extension_is_homomorphism(corpus):
    rng = random.Random(3)
    z3 = corpus["z3"]
    act = canonical_action(z3)
    for _ in range(10):
        mu = random_probability_measure(z3.space, rng)
        nu = random_probability_measure(z3.space, rng)
        lhs = extend_to_measures(act, convolve_measures(z3, mu, nu))
        rhs = mat_mul(extend_to_measures(act, mu), extend_to_measures(act, nu))
        assert lhs == rhs


def test_fixed_points_swap(corpus):
    res = fixed_points(z2_swap_action(corpus))
    assert res.exists
    assert res.witness == (F(1, 2), F(1, 2))
    assert res.dimension == 0


def test_fixed_points_trivial_full_simplex(corpus):
    act = verified_action(corpus["z2"], {"0": I2, "1": I2})
    res = fixed_points(act)
    assert res.exists and res.dimension == 1


def test_fixed_points_left_zero_infeasible(left_zero):
    act = left_zero_constant_action(left_zero)
    assert check_action_law(act).ok
    res = fixed_points(act)
    assert not res.exists
    assert res.certificate is not None


def test_canonical_matches_lim_status(corpus):
    for S in corpus.values():
        lim = lim_solve(S)
        fp = fixed_points(canonical_action(S))
        assert lim.exists == fp.exists


def test_canonical_and_lim_witnesses_cross_satisfy(corpus):
    from semihyp.actions import _fixed_point_program
    from semihyp.amenability import _lim_program

    for key in ("z3", "zeuner2", "zeuner4", "three_point_0", "dcoset_s3"):
        S = corpus[key]
        lim = lim_solve(S)
        fp = fixed_points(canonical_action(S))
        assert lim.exists and fp.exists
        assert verify_witness(_fixed_point_program(canonical_action(S)), lim.mean.weights)
        assert verify_witness(_lim_program(S), fp.witness)
        assert lim.dimension == fp.dimension


def test_induced_action_swap_is_swap(corpus):
    act = z2_swap_action(corpus)
    ind = induced_action_on_affine(act)
    assert ind.kind == "dual"
    assert ind.matrix("1") == SWAP2


def test_induced_action_trivial(corpus):
    act = verified_action(corpus["z2"], {"0": I2, "1": I2})
    ind = induced_action_on_affine(act)
    assert ind.matrix("0") == I2 and ind.matrix("1") == I2


def test_induced_action_requires_commutative(left_zero):
    act = left_zero_constant_action(left_zero)
    with pytest.raises(SemihypError, match="commutative"):
        induced_action_on_affine(act)


def test_induced_action_transposes_canonical(zeuner2):
    act = canonical_action(zeuner2)
    ind = induced_action_on_affine(act)
    for x in zeuner2.points:
        assert ind.matrix(x) == tuple(zip(*act.matrix(x)))


def test_general_action_group_translation(z3):
    sp = z3.space
    gens = []
    for x in z3.points:
        xi = sp.index_of(x)
        mapping = tuple(
            sp.index_of(
                convolve_measures(z3, dirac(sp, y), dirac(sp, x)).support()[0]
            )
            for y in z3.points
        )
        gens.append((dirac(sp, x), mapping))
    spec = GeneralActionSpec(z3, sp, tuple(gens), closure_depth=3)
    assert check_general_action(spec).ok


def test_general_action_idempotent_conflict(left_zero):
    sp2 = left_zero.space
    swap = (1, 0)
    spec = GeneralActionSpec(
        left_zero, sp2, ((dirac(sp2, "a"), swap),), closure_depth=2
    )
    res = check_general_action(spec)
    assert not res.ok
    prod, first, second = res.witness
    assert prod == dirac(sp2, "a")
    assert {first, second} == {(1, 0), (0, 1)}


def test_general_action_z2_swap_passes(corpus):
    z2 = corpus["z2"]
    spec = GeneralActionSpec(
        z2,
        z2.space,
        ((dirac(z2.space, "0"), (0, 1)), (dirac(z2.space, "1"), (1, 0))),
        closure_depth=3,
    )
    assert check_general_action(spec).ok


def test_general_action_rejects_signed_generator(z3):
    bad = Measure(z3.space, (F(2), F(-1), F(0)))
    spec = GeneralActionSpec(z3, z3.space, ((bad, (0, 1, 2)),))
    with pytest.raises(SemihypError):
        check_general_action(spec)


def test_random_actions_soundness_and_determinism(corpus):
    for key in ("z3", "zeuner4", "left_zero", "dcoset_s3"):
        S = corpus[key]
        acts = random_actions(S, 3, 8, seed=99)
        assert len(acts) == 8
        for a in acts:
            assert check_action_law(a).ok
        again = random_actions(S, 3, 8, seed=99)
        assert [a.matrices for a in acts] == [a.matrices for a in again]


def test_random_actions_have_variety(zeuner2):
    acts = random_actions(zeuner2, 3, 12, seed=5)
    distinct = {tuple(sorted((k, v) for k, v in a.matrices.items())) for a in acts}
    assert len(distinct) >= 3


def test_harness_commutative_instances(corpus):
    for key in ("z3", "zeuner2", "three_point_0", "orbit_z3"):
        rep = fp_property_harness(corpus[key], count=10, seed=17)
        assert rep.consistent, rep.verdict
        assert rep.fixed == rep.instances
        assert rep.canonical.exists


def test_harness_left_zero_counterexample(left_zero):
    rep = fp_property_harness(left_zero, count=6, seed=17)
    assert rep.consistent
    assert not rep.canonical.exists
    assert not rep.lim.exists


def test_harness_accepts_explicit_instances(corpus):
    acts = [z2_swap_action(corpus)]
    rep = fp_property_harness(corpus["z2"], instances=acts)
    assert rep.instances == 1 and rep.fixed == 1


def test_harness_rejects_foreign_actions(corpus, left_zero):
    acts = [left_zero_constant_action(left_zero)]
    with pytest.raises(SemihypError):
        fp_property_harness(corpus["z2"], instances=acts)
