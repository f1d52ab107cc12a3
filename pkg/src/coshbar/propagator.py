"""Euclidean spectral propagator of the sech-squared barrier.

The kernel of exp(-H tau/hbar) is assembled as an integral over scattering
states,

    K(xf, xi; tau) = int_0^inf dE_k w(k)
                     [Psi1(yf) Psi1*(yi) + Psi2(yf) Psi2*(yi)] e^{-E_k tau/hbar},

    w(k) = (m / 2 hbar^2 omega) sinh(pi kappa) / |sin(pi (nu - i kappa))|^2,

with Psi1(y) = P_nu^{-mu}(y), Psi2(y) = Psi1(-y), y = tanh(omega x) and
mu = i kappa.  Quadrature runs in k (dE_k = hbar^2 k/m dk folded into the
weight, avoiding the 1/sqrt(E) endpoint), on adaptive Gauss-Legendre panels
over [0, k_max] with k_max fixed by e^{-hbar k^2 tau / 2m} < 1e-16.  Since
Gauss nodes are interior, the integrable k -> 0 endpoint needs no cut.

Only the Euclidean (Wick-rotated) kernel is evaluated numerically: the
real-time version of the same spectral sum is this expression continued
back by tau -> i*T, but its oscillatory k-integral is not quadratured here.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, NumericalError
from .params import PhysicalParams, reduce
from .special import _legendre_tanh_grid

__all__ = ["KernelValue", "spectral_kernel", "free_kernel"]

_KAPPA_CAP = 100.0  # sinh(2 pi kappa) overflows float64 past ~112
_LOG_TAIL = 16.0 * math.log(10.0)


@dataclass(frozen=True)
class KernelValue:
    """One Euclidean propagator value with its quadrature error estimate."""

    xf: float
    xi: float
    tau: float
    value: float
    quad_error: float

    def __post_init__(self):
        if not self.value > 0:
            raise ValueError(f"Euclidean kernel must be positive, got {self.value}")
        if not self.quad_error >= 0:
            raise ValueError(f"quad_error must be >= 0, got {self.quad_error}")


def free_kernel(p: PhysicalParams, xf: float, xi: float, tau: float) -> float:
    """Closed-form free-particle Euclidean kernel
    sqrt(m / 2 pi hbar tau) exp(-m (xf-xi)^2 / 2 hbar tau)."""
    return math.sqrt(p.m / (2.0 * math.pi * p.hbar * tau)) * math.exp(
        -p.m * (xf - xi) ** 2 / (2.0 * p.hbar * tau)
    )


@lru_cache(maxsize=4)
def _gauss_nodes(n: int):
    return np.polynomial.legendre.leggauss(n)


def _integrand(p: PhysicalParams, nu: complex, alpha_f: float, alpha_i: float, tau: float, k):
    """Spectral integrand on an array of wavenumbers k.

    The weight denominator sin^2(pi nu) + sinh^2(pi kappa) is the
    normalization combination sin(pi(nu-ik)) sin(pi(nu+ik)); see
    scattering._norm_denominator_sq for why the absolute-value form is only
    its real-nu special case."""
    k = np.asarray(k, dtype=float)
    kappa = k / p.omega
    mu = 1j * kappa
    pair = _legendre_tanh_grid(nu, -mu, alpha_f) * _legendre_tanh_grid(nu, mu, alpha_i)
    pair = pair + _legendre_tanh_grid(nu, -mu, -alpha_f) * _legendre_tanh_grid(nu, mu, -alpha_i)
    sin_sq = (cmath.sin(math.pi * nu) ** 2).real
    denom = sin_sq + np.sinh(math.pi * kappa) ** 2
    weight = k * np.sinh(math.pi * kappa) / (2.0 * p.omega * denom)
    boltzmann = np.exp(-p.hbar * k * k * tau / (2.0 * p.m))
    return weight * pair * boltzmann


def _panel_sum(p, nu, alpha_f, alpha_i, tau, k_max, n_panels, nodes_per_panel=20):
    """Composite Gauss-Legendre over [0, k_max] in a fixed, deterministic
    panel order.  Returns (integral, scale) where scale bounds the
    roundoff noise floor of the sum (max |integrand| times the range)."""
    xg, wg = _gauss_nodes(nodes_per_panel)
    edges = np.linspace(0.0, k_max, n_panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    # nodes laid out panel-major: shape (n_panels, nodes_per_panel)
    k_nodes = mid[:, None] + half[:, None] * xg[None, :]
    values = _integrand(p, nu, alpha_f, alpha_i, tau, k_nodes.ravel()).reshape(k_nodes.shape)
    per_panel = values @ wg
    scale = float(np.max(np.abs(values))) * k_max
    return complex(np.sum(per_panel * half)), scale


def spectral_kernel(
    p: PhysicalParams,
    xf: float,
    xi: float,
    tau: float,
    rel_tol: float = 1e-9,
    max_refinements: int = 8,
) -> KernelValue:
    """Euclidean propagator K(xf, xi; tau) by adaptive panel quadrature.

    Panels double until two successive refinements agree to rel_tol (or to
    the roundoff floor of the oscillatory sum, whichever is larger); the
    last change is reported as quad_error.  The integral of the assembled
    complex integrand must come out real to 1e-10 relative, up to that same
    floor (the imaginary residue measures how well the two degenerate
    scattering states close into a real projector).  Kernel values at
    separations far beyond sqrt(hbar tau/m) are suppressed purely by phase
    cancellation and cannot be resolved below the floor.
    """
    if tau <= 0:
        raise ValueError(f"tau must be > 0, got {tau}")
    k_max = math.sqrt(2.0 * p.m * _LOG_TAIL / (p.hbar * tau))
    if k_max / p.omega > _KAPPA_CAP:
        raise ValueError(
            f"tau = {tau} too small: spectral cutoff needs kappa = {k_max / p.omega:.1f} "
            f"> {_KAPPA_CAP:.0f}, past the float64 range of the spectral weight"
        )
    nu = complex(reduce(p, 0.0).nu)
    alpha_f = p.omega * xf
    alpha_i = p.omega * xi
    # Initial panel count resolves the e^{i k (|xf|+|xi|)} oscillation of the
    # Legendre pair with ~20 nodes per few periods.
    span = abs(xf) + abs(xi) + 1.0 / p.omega
    n_panels = max(4, math.ceil(k_max * span / (6.0 * math.pi)))
    total, scale = _panel_sum(p, nu, alpha_f, alpha_i, tau, k_max, n_panels)
    quad_error = math.inf
    for _ in range(max_refinements):
        n_panels *= 2
        refined, scale = _panel_sum(p, nu, alpha_f, alpha_i, tau, k_max, n_panels)
        quad_error = abs(refined - total)
        total = refined
        noise_floor = 8.0 * np.finfo(float).eps * scale
        if quad_error <= max(rel_tol * abs(total), noise_floor):
            break
    else:
        raise ConvergenceError(
            f"spectral quadrature still moving by {quad_error:.3e} after "
            f"{max_refinements} refinements (K ~ {abs(total):.3e})"
        )
    if abs(total.imag) > max(1e-10 * abs(total.real), noise_floor):
        raise NumericalError(
            f"spectral integrand failed to assemble a real kernel: "
            f"Im/Re = {total.imag / total.real:.3e}"
        )
    if total.real <= 0:
        raise NumericalError(
            f"Euclidean kernel not resolvable above the quadrature noise "
            f"floor (got {total.real:.3e}, floor {noise_floor:.3e})"
        )
    return KernelValue(xf=xf, xi=xi, tau=tau, value=total.real, quad_error=quad_error)
