import numpy as np
import pytest

from coshbar import (
    KernelValue,
    PhysicalParams,
    free_kernel,
    grid_propagator,
    spectral_kernel,
)


def params_for(v8, omega=1.0, m=1.0, hbar=1.0):
    return PhysicalParams(m=m, hbar=hbar, omega=omega, v0=v8 * (hbar * omega) ** 2 / (8 * m))


def test_free_case_matches_closed_form():
    p = params_for(0.0)
    for xf, xi, tau in ((0.3, -0.2, 1.0), (0.0, 0.0, 0.5), (1.5, 1.0, 2.0)):
        kv = spectral_kernel(p, xf, xi, tau)
        exact = free_kernel(p, xf, xi, tau)
        assert abs(kv.value - exact) < 1e-6 * exact
        assert kv.quad_error < 1e-6 * kv.value


def test_swap_symmetry():
    p = params_for(2.0)
    a = spectral_kernel(p, 0.5, -0.2, 0.7)
    b = spectral_kernel(p, -0.2, 0.5, 0.7)
    assert abs(a.value - b.value) <= 1e-12 * a.value


def test_matches_grid_oracle_reference_point():
    p = params_for(2.0)
    kv = spectral_kernel(p, 0.5, -0.5, 1.0)
    ref = grid_propagator(p, 6.0, 1200, 1.0, 0.5, -0.5)
    assert abs(kv.value - ref) < 1e-3 * ref


def test_short_time_approaches_free_kernel():
    p = params_for(0.5)
    kv = spectral_kernel(p, 0.0, 0.0, 0.01)
    exact = free_kernel(params_for(0.0), 0.0, 0.0, 0.01)
    assert abs(kv.value - exact) / exact < 0.01


def test_monotone_in_barrier_strength():
    values = [
        spectral_kernel(params_for(v8), 0.5, -0.5, 1.0).value for v8 in (0.0, 0.5, 2.0)
    ]
    assert values[0] > values[1] > values[2]


def test_semigroup_property():
    # int dz K(xf, z; t1) K(z, xi; t2) = K(xf, xi; t1 + t2), trapezoid over
    # [-8/omega, 8/omega].
    p = params_for(2.0)
    xf, xi, t1, t2 = 0.3, -0.2, 1.0, 1.0
    zs = np.linspace(-8.0, 8.0, 65)
    left = np.array([spectral_kernel(p, xf, float(z), t1).value for z in zs])
    right = np.array([spectral_kernel(p, float(z), xi, t2).value for z in zs])
    composed = np.trapezoid(left * right, zs)
    target = spectral_kernel(p, xf, xi, t1 + t2).value
    assert abs(composed - target) < 1e-3 * target


def test_positivity_across_parameters():
    for v8 in (0.0, 1.0, 5.0):
        p = params_for(v8)
        for xf, xi, tau in ((0.0, 0.0, 0.3), (1.0, -1.5, 1.0), (2.0, 2.0, 0.1)):
            kv = spectral_kernel(p, xf, xi, tau)
            assert kv.value > 0


def test_tau_too_small_is_rejected():
    p = params_for(1.0)
    with pytest.raises(ValueError):
        spectral_kernel(p, 0.0, 0.0, 1e-5)
    with pytest.raises(ValueError):
        spectral_kernel(p, 0.0, 0.0, 0.0)


def test_kernel_value_validation():
    with pytest.raises(ValueError):
        KernelValue(xf=0.0, xi=0.0, tau=1.0, value=-1.0, quad_error=0.0)
    with pytest.raises(ValueError):
        KernelValue(xf=0.0, xi=0.0, tau=1.0, value=1.0, quad_error=-1.0)


def test_quadrature_error_estimate_is_honest():
    # The reported quad_error bounds the deviation from a much finer
    # quadrature.
    from coshbar.propagator import _panel_sum
    from coshbar.params import reduce

    p = params_for(2.0)
    kv = spectral_kernel(p, 0.4, -0.3, 0.8)
    nu = complex(reduce(p, 0.0).nu)
    k_max = np.sqrt(2.0 * p.m * 16.0 * np.log(10.0) / (p.hbar * kv.tau))
    fine, _ = _panel_sum(p, nu, p.omega * kv.xf, p.omega * kv.xi, kv.tau, float(k_max), 512)
    assert abs(kv.value - fine.real) <= max(kv.quad_error, 1e-12 * kv.value)
