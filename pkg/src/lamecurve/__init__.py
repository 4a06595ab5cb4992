"""Spectral curve of the difference Lame operator for integer spin."""

__version__ = "0.1.0"

from .errors import (
    ConsistencyError,
    DegenerateFibreError,
    DomainError,
    LameCurveError,
    NumericalError,
    PoleError,
    ValidationError,
)
from .theta import EllipticContext, default_context, elliptic_binom, elliptic_num, phi, theta
from .polyalg import PolynomialC, TridiagBordered, det_tridiag_bordered, extract_poly, poly_roots
from .diffop import (
    DifferenceOperator,
    TestFunctionFamily,
    build_A,
    build_intertwiner,
    build_sklyanin,
    build_W,
    commutator,
    lame_operator,
    op_compose,
    op_residual,
    theta_basis,
)
from .transfer import a_poly, a_polys, baxter_residual, q_value, t_poly, t_top_zero
from .curve import (
    BlochPoint,
    BlochSolution,
    SpectralCurve,
    band_edges_bloch,
    band_edges_hyper,
    curve_coeffs,
    curve_eval,
    fibre_over_zeta,
    hyperelliptic,
    involution_residuals,
    match_multisets,
    spectral_curve,
)
from .lax import LaxPair, char_decompose, dual_build, lax_build, lax_residual
from .verify import Check, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
