"""Both kernel backends must agree exactly; the compiled one is optional."""

import os
import subprocess
import sys
from fractions import Fraction

import pytest

from semihyp import _kernels_py
from semihyp import kernels
from semihyp.constructors import zeuner_grid
from semihyp.measures import Measure

F = Fraction

try:
    from semihyp import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None

BACKENDS = [_kernels_py] + ([_kernels_cy] if _kernels_cy else [])


@pytest.fixture(scope="module")
def tensor():
    return zeuner_grid(4).conv.tensor


@pytest.mark.parametrize("impl", BACKENDS)
def test_convolve_coeffs(impl, tensor):
    n = len(tensor)
    mu = [F(1, n)] * n
    nu = [F(0)] * n
    nu[1] = F(3, 4)
    nu[3] = F(1, 4)
    out = impl.convolve_coeffs(tensor, mu, nu)
    assert sum(out) == 1
    assert all(v >= 0 for v in out)


@pytest.mark.skipif(_kernels_cy is None, reason="compiled kernels not built")
def test_backends_agree_exactly(tensor):
    n = len(tensor)
    mu = [F(i + 1, 2 * n) for i in range(n)]
    mu[-1] = 1 - sum(mu[:-1])
    nu = list(reversed(mu))
    assert _kernels_py.convolve_coeffs(tensor, mu, nu) == _kernels_cy.convolve_coeffs(
        tensor, mu, nu
    )
    assert _kernels_py.assoc_witness(tensor) == _kernels_cy.assoc_witness(tensor)


@pytest.mark.parametrize("impl", BACKENDS)
def test_assoc_witness_finds_first_failure(impl):
    S = zeuner_grid(2)
    assert impl.assoc_witness(S.conv.tensor) is None
    # corrupt one entry: replace the (1/2,1/2) mixture by a point mass
    t = [list(row) for row in S.conv.tensor]
    t[1][1] = (F(1), F(0), F(0))
    broken = tuple(tuple(row) for row in t)
    assert impl.assoc_witness(broken) is not None


@pytest.mark.parametrize("impl", BACKENDS)
def test_pivot_step(impl):
    rows = [
        [F(2), F(1), F(4)],
        [F(1), F(3), F(5)],
    ]
    impl.pivot_step(rows, 0, 0)
    assert rows[0] == [F(1), F(1, 2), F(2)]
    assert rows[1] == [F(0), F(5, 2), F(3)]


@pytest.mark.skipif(_kernels_cy is None, reason="compiled kernels not built")
def test_pivot_backends_agree():
    import copy
    import random

    rng = random.Random(4)
    rows = [[F(rng.randint(-6, 6), rng.choice((1, 2, 3))) for _ in range(6)] for _ in range(4)]
    rows[2][3] = F(5, 7)
    a = copy.deepcopy(rows)
    b = copy.deepcopy(rows)
    _kernels_py.pivot_step(a, 2, 3)
    _kernels_cy.pivot_step(b, 2, 3)
    assert a == b


def test_selector_prefers_compiled_when_available():
    if _kernels_cy is not None and not os.environ.get("SEMIHYP_PURE"):
        assert kernels.BACKEND == "cython"


def test_env_forces_pure_backend():
    code = (
        "import semihyp.kernels as k; print(k.BACKEND)"
    )
    env = dict(os.environ, SEMIHYP_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env
    )
    assert out.stdout.strip() == "python"


def test_pure_backend_runs_full_stack():
    code = (
        "import semihyp as sh; S = sh.zeuner_grid(4); "
        "r = sh.lim_solve(S); print(sh.kernels.BACKEND, r.status)"
    )
    env = dict(os.environ, SEMIHYP_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env
    )
    assert out.stdout.split() == ["python", "exists"]
