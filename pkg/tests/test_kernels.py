"""Backend parity: the compiled sweep kernel must match the numpy fallback."""

import numpy as np
import pytest
from conftest import random_correlations, random_density_matrix, random_hermitian

from belldyn import _kernels
from belldyn._kernels import _sweep_py
from belldyn.correlations import fibonacci_sphere
from belldyn.qstate import bell_diagonal_to_density

needs_compiled = pytest.mark.skipif(
    "cython" not in _kernels.BACKENDS, reason="compiled kernel not built"
)


def test_a_backend_is_always_selected():
    assert _kernels.BACKEND in _kernels.BACKENDS
    assert callable(_kernels.measurement_residual_norms)


def test_python_backend_matches_direct_construction():
    # one direction, evaluated the long way through explicit projectors
    rng = np.random.default_rng(51)
    rho = random_density_matrix(rng)
    n = np.array([0.0, 0.0, 1.0])
    plus = np.kron(np.diag([1.0, 0.0]), np.eye(2)).astype(complex)
    minus = np.kron(np.diag([0.0, 1.0]), np.eye(2)).astype(complex)
    measured = plus @ rho @ plus + minus @ rho @ minus
    expected = np.abs(np.linalg.eigvalsh(rho - measured)).sum()
    value = _sweep_py.measurement_residual_norms(rho, n[None, :])[0]
    assert value == pytest.approx(expected, abs=1e-13)


@needs_compiled
def test_backends_agree_on_random_states():
    compiled = _kernels.BACKENDS["cython"]
    rng = np.random.default_rng(52)
    dirs = fibonacci_sphere(500)
    for _ in range(10):
        rho = random_density_matrix(rng)
        via_python = _sweep_py.measurement_residual_norms(rho, dirs)
        via_cython = compiled.measurement_residual_norms(rho, dirs)
        np.testing.assert_allclose(via_cython, via_python, atol=1e-12)


@needs_compiled
def test_backends_agree_on_bell_diagonal_states():
    compiled = _kernels.BACKENDS["cython"]
    rng = np.random.default_rng(53)
    dirs = fibonacci_sphere(200)
    for _ in range(10):
        rho = bell_diagonal_to_density(random_correlations(rng))
        via_python = _sweep_py.measurement_residual_norms(rho, dirs)
        via_cython = compiled.measurement_residual_norms(rho, dirs)
        np.testing.assert_allclose(via_cython, via_python, atol=1e-12)


@needs_compiled
def test_jacobi_matches_lapack_eigenvalues():
    compiled = _kernels.BACKENDS["cython"]
    rng = np.random.default_rng(54)
    for _ in range(200):
        h = random_hermitian(rng)
        np.testing.assert_allclose(
            compiled.hermitian_eigenvalues_4(h), np.linalg.eigvalsh(h), atol=1e-12
        )
    # degenerate and diagonal corner cases
    np.testing.assert_allclose(
        compiled.hermitian_eigenvalues_4(np.eye(4)), np.ones(4), atol=1e-15
    )
    np.testing.assert_allclose(
        compiled.hermitian_eigenvalues_4(np.zeros((4, 4))), np.zeros(4), atol=1e-15
    )


@needs_compiled
def test_compiled_kernel_validates_shapes():
    compiled = _kernels.BACKENDS["cython"]
    with pytest.raises(ValueError):
        compiled.measurement_residual_norms(np.eye(3), np.zeros((4, 3)))
    with pytest.raises(ValueError):
        compiled.measurement_residual_norms(np.eye(4), np.zeros((4, 2)))
