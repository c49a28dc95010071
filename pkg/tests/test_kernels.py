"""The compiled kernels and their pure-Python fallback must agree exactly."""

import os

import numpy as np
import pytest

from tolalg import ext
from tolalg.relation import all_relations, cycle, path

BACKENDS = ext.available_backends()


def test_some_backend_is_selected():
    assert ext.BACKEND in ("cython", "python")
    assert "python" in BACKENDS


@pytest.mark.parametrize("impl", BACKENDS)
@pytest.mark.parametrize("R", [path(4), cycle(6), path(1)])
def test_support_matmul(impl, R):
    g = np.random.default_rng(R.n)
    a = (g.normal(size=(R.n, R.n)) + 1j * g.normal(size=(R.n, R.n))) * R.mask
    b = (g.normal(size=(R.n, R.n)) + 1j * g.normal(size=(R.n, R.n))) * R.mask
    got = ext.support_matmul(a, b, R.mask, impl=impl)
    np.testing.assert_allclose(got, np.where(R.mask, a @ b, 0), atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_basis_triple_backends_agree(n):
    for R in all_relations(n):
        results = {impl: ext.nonassociative_basis_triple(R.mask, impl=impl) for impl in BACKENDS}
        assert len(set(results.values())) == 1, (R, results)


def test_cython_is_built():
    """The compiled core should be importable in a normal install."""
    if "cython" not in BACKENDS:
        pytest.skip("compiled extension not built; running on the fallback")
    if os.environ.get("TOLALG_PURE_PYTHON") == "1":
        pytest.skip("fallback forced by TOLALG_PURE_PYTHON")
    assert ext.BACKEND == "cython"


def test_env_var_forces_fallback():
    import subprocess
    import sys

    env = {**os.environ, "TOLALG_PURE_PYTHON": "1"}
    out = subprocess.run([sys.executable, "-c", "from tolalg import ext; print(ext.BACKEND)"],
                         capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "python"


def test_unknown_backend_name():
    with pytest.raises(ValueError):
        ext.support_matmul(np.eye(2), np.eye(2), np.ones((2, 2)), impl="fortran")
