"""High-precision Lobachevsky function and ideal tetrahedron volume.

lob(theta) = -integral_0^theta log|2 sin u| du.  The function is odd and
pi-periodic, so evaluation reduces to [0, pi/2], where the classical
zeta series

    lob(x) = x - x log(2x) + x * sum_{n>=1} zeta(2n)/(n(2n+1)) (x/pi)^{2n}

converges geometrically (ratio (x/pi)^2 <= 1/4).  Absolute accuracy is
around 1e-15; the defining integral, evaluated by adaptive quadrature,
is the normative reference and lives in the test suite.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import zeta

_N_TERMS = 64
_ZETA_COEFF = np.array([zeta(2 * n) / (n * (2 * n + 1)) for n in range(1, _N_TERMS + 1)])
_POWERS = np.arange(1, _N_TERMS + 1)


def _lob_principal(x: float) -> float:
    """lob on [0, pi/2] via the zeta series."""
    if x == 0.0:
        return 0.0
    q = (x / math.pi) ** 2
    series = float(np.sum(_ZETA_COEFF * q ** _POWERS))
    return x - x * math.log(2.0 * x) + x * series


def lob(theta: float) -> float:
    """Lobachevsky function, absolute error well below 1e-12."""
    if not math.isfinite(theta):
        raise ValueError("lob requires a finite angle")
    # pi-periodicity puts the argument in [-pi/2, pi/2]; oddness fixes sign.
    r = math.remainder(theta, math.pi)
    if r < 0:
        return -_lob_principal(-r)
    return _lob_principal(r)


def ideal_tetrahedron_volume(alpha: float, beta: float, gamma: float,
                             tol: float = 1e-12) -> float:
    """Volume lob(a)+lob(b)+lob(c) of the ideal tetrahedron with those
    dihedral angles; requires a+b+c = pi."""
    angles = (alpha, beta, gamma)
    if any(a < -tol for a in angles):
        raise ValueError(f"angles must be nonnegative, got {angles}")
    if abs(sum(angles) - math.pi) > tol:
        raise ValueError(
            f"angle sum {sum(angles)!r} differs from pi by more than {tol}")
    return lob(alpha) + lob(beta) + lob(gamma)
