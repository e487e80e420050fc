""" Floating-point quadrature of the Dirichlet integral.

This is a cross-check for the exact spectral energy, never a primary
result. For boundary data p the harmonic extension is

    u(re^{iθ}) = a0/2 + Σ r^n (a_n cos nθ + b_n sin nθ)

and (1/2π) ∬_D |∇u|² dA equals dirichlet_energy(p).

"""

from fractions import Fraction
import logging

from django.conf import settings
import numpy as np

from effd.lib.ball import Ball
from effd.lib.errors import DomainError

logger = logging.getLogger(__name__)


def _float_terms(p):
    if p.ball:
        raise DomainError("quadrature needs a polynomial with rational coefficients")
    return [(n, float(a), float(b)) for n, a, b in p.terms()]


def harmonic_extension_gradient_sq(p, r, theta):
    """ |∇u|² at polar points (r, θ); r and θ broadcast as numpy arrays.

    In polar form |∇u|² = u_r² + (u_θ / r)², and both terms are series in
    n r^{n-1}, so the origin needs no special case.

    """

    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    ur = np.zeros(np.broadcast(r, theta).shape)
    ut = np.zeros_like(ur)

    for n, a, b in _float_terms(p):
        c, s = np.cos(n * theta), np.sin(n * theta)
        w = n * r ** (n - 1)
        ur += w * (a * c + b * s)
        ut += w * (b * c - a * s)

    return ur**2 + ut**2


def _midpoint(p, radial, angular):
    h = 1.0 / radial
    r = (np.arange(radial) + 0.5) * h
    theta = 2 * np.pi * np.arange(angular) / angular

    g = harmonic_extension_gradient_sq(p, r[:, None], theta[None, :])
    # dA = r dr dθ, and the θ-average already divides by 2π
    return float(np.sum(g.mean(axis=1) * r) * h)


def dirichlet_integral_quadrature(p, resolution=None) -> Ball:
    """ (1/2π) ∬_D |∇u|² dA by a tensor-product rule.

    The angular direction uses an equispaced grid with more than twice the
    degree of |∇u|² points, which is exact for trigonometric polynomials.
    The radial direction uses the midpoint rule on `resolution` cells. The
    radius is the difference to the same rule on half as many cells, a
    heuristic error estimate and not a certified one.

    """

    if resolution is None:
        resolution = settings.QUADRATURE_RESOLUTION
    if resolution < 2:
        raise DomainError("quadrature resolution must be at least 2")

    angular = 4 * p.degree() + 8
    fine = _midpoint(p, resolution, angular)
    coarse = _midpoint(p, resolution // 2, angular)
    logger.debug("quadrature %d/%d cells: %r, %r", resolution, resolution // 2, fine, coarse)

    return Ball(Fraction(fine), Fraction(abs(fine - coarse)))
