from fractions import Fraction

import pytest

from semihyp import constructors

F = Fraction

# parameter sets on the exact solution manifold of the three-point family
THREE_POINT_SETS = [
    ((F(1, 4), F(1, 4), F(1, 2)), (F(1, 4), F(1, 2), F(1, 4)), (F(1, 2), F(1, 2))),
    ((F(1, 3), F(1, 3), F(1, 3)), (F(1, 3), F(2, 3), F(0)), (F(1, 3), F(2, 3))),
    ((F(1, 5), F(1, 5), F(3, 5)), (F(1, 5), F(2, 5), F(2, 5)), (F(3, 5), F(2, 5))),
    ((F(1, 3), F(0), F(2, 3)), (F(1, 2), F(0), F(1, 2)), (F(1), F(0))),
    ((F(1, 2), F(0), F(1, 2)), (F(1), F(0), F(0)), (F(1), F(0))),
    ((F(1, 4), F(1, 4), F(1, 2)), (F(1, 2), F(0), F(1, 2)), (F(1), F(0))),
]


def build_corpus() -> dict:
    s3 = constructors.symmetric_group(3)
    corpus = {
        "z2": constructors.from_group(constructors.cyclic_group(2)),
        "z3": constructors.from_group(constructors.cyclic_group(3)),
        "z4": constructors.from_group(constructors.cyclic_group(4)),
        "s3": constructors.from_group(s3),
        "left_zero": constructors.left_zero_semigroup(),
        "coset_s3": constructors.left_coset_space(s3, ["e", "(12)"]),
        "dcoset_s3": constructors.double_coset_space(s3, ["e", "(12)"]),
        "orbit_z3": constructors.orbit_space(
            constructors.cyclic_group(3),
            constructors.negation_action(constructors.cyclic_group(3)),
        ),
        "zeuner2": constructors.zeuner_grid(2),
        "zeuner4": constructors.zeuner_grid(4),
        "zeuner8": constructors.zeuner_grid(8),
    }
    for i, (x, y, z) in enumerate(THREE_POINT_SETS):
        corpus[f"three_point_{i}"] = constructors.three_point_family(x, y, z)
    return corpus


@pytest.fixture(scope="session")
def corpus() -> dict:
    return build_corpus()


@pytest.fixture(scope="session")
def z3(corpus):
    return corpus["z3"]


@pytest.fixture(scope="session")
def left_zero(corpus):
    return corpus["left_zero"]


@pytest.fixture(scope="session")
def zeuner2(corpus):
    return corpus["zeuner2"]
