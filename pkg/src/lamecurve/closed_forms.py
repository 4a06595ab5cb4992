"""Closed-form curve data for small spin, written in elliptic numbers.

Used as golden values for the general constructions.  Polynomials are
returned as ascending coefficient arrays.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .theta import EllipticContext


def covering_coeffs(ctx: EllipticContext) -> np.ndarray:
    """``C_0 .. C_N`` for ``ell = 1..4``."""
    n = ctx.num
    ell = ctx.ell
    if ell == 1:
        half = [1.0]
    elif ell == 2:
        half = [1.0, n(3) / n(1)]
    elif ell == 3:
        half = [1.0, n(3) * n(4) / (n(1) * n(2)), n(3) * n(5) / n(1) ** 2]
        middle = 2 * n(4) * n(5) / (n(1) * n(2))
        return np.array(half + [middle] + half[::-1], dtype=complex)
    elif ell == 4:
        half = [
            1.0,
            n(4) * n(5) / (n(1) * n(2)),
            n(3) * n(5) * n(6) / (n(1) ** 2 * n(2)),
            n(4) * n(5) * n(7) / (n(1) ** 2 * n(2))
            + n(4) * n(5) ** 2 * n(6) / (n(1) * n(2) ** 2 * n(3)),
            n(5) * n(6) * n(7) / (n(1) * n(2) * n(3)) + n(5) ** 2 * n(7) / n(1) ** 3,
        ]
        middle = 2 * n(3) * n(4) * n(6) * n(7) / (n(1) ** 2 * n(2) ** 2)
        return np.array(half + [middle] + half[::-1], dtype=complex)
    else:
        raise DomainError(f"closed forms are tabulated for ell <= 4, got {ell}")
    return np.array(half + half[::-1], dtype=complex)


def t_top(ctx: EllipticContext) -> np.ndarray:
    """``T_{2ell+1}(0, E)`` for ``ell = 1, 2``."""
    n = ctx.num
    if ctx.ell == 1:
        c1 = -(n(1) * n(4) / (n(2) * n(3)) + n(2) ** 4 / (n(1) ** 3 * n(3)))
        return -n(1) ** 2 * np.array([0, c1, 0, 1], dtype=complex)
    if ctx.ell == 2:
        c3 = 3 * n(4) / n(2) - n(2) ** 4 / n(1) ** 4
        c1 = n(4) ** 2 / n(2) ** 2 + n(3) ** 3 / n(1) ** 3 - n(1) * n(6) / (n(2) * n(3))
        return n(1) ** 2 * n(2) ** 2 * np.array([0, c1, 0, c3, 0, 1], dtype=complex)
    raise DomainError(f"closed form tabulated for ell = 1, 2, got {ctx.ell}")


def d_poly(ctx: EllipticContext) -> np.ndarray:
    """``D_{2ell}(E)`` for ``ell = 1, 2``."""
    n = ctx.num
    if ctx.ell == 1:
        return -n(1) / n(2) * np.array([-n(2) ** 3 / n(1) ** 3, 0, n(3) / n(2)], dtype=complex)
    if ctx.ell == 2:
        c4 = n(2) * n(5) / (n(3) * n(4))
        c2 = -(
            n(2) ** 2 * n(7) / (n(3) * n(4) ** 2)
            + n(4) ** 2 * n(5) / (n(1) * n(2) * n(6))
            + n(2) * n(8) / (n(4) * n(6))
        )
        c0 = n(4) * n(5) / (n(1) * n(6)) * (n(7) / n(5) + n(5) / n(1))
        return n(1) / n(3) * np.array([c0, 0, c2, 0, c4], dtype=complex)
    raise DomainError(f"closed form tabulated for ell = 1, 2, got {ctx.ell}")
