"""Dense complex-matrix helpers shared by every other module.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``; :func:`as_cmatrix`
enforces the two invariants we rely on (2-D, finite entries).
"""

from dataclasses import dataclass
import sys

import numpy as np

from . import _kernels
from .errors import DimensionError, MalformedDataError, NonIntegralError, ShapeError

__all__ = ["LuReport", "as_cmatrix", "kron", "lu_determinant", "unitarity_defect",
           "symmetry_defect", "round_to_integer",
           "TOL_AXIOM", "TOL_INTEGER", "TOL_SINGULAR"]

#: default tolerances; every public entry point lets callers override them
TOL_AXIOM = 1e-9
TOL_INTEGER = 1e-6
TOL_SINGULAR = 1e-6


def as_cmatrix(m, name="matrix"):
    """Return `m` as a 2-D complex128 array, rejecting NaN/Inf entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ShapeError(f"{name} must be 2-dimensional, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise MalformedDataError(f"{name} has non-finite entries", field=name)
    return a


def _require_square(a, name="matrix"):
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {a.shape}")


def kron(a, b):
    """Kronecker product; row ``(i_a, i_b)`` of the result is ``i_a * b.rows + i_b``."""
    a = as_cmatrix(a, "a")
    b = as_cmatrix(b, "b")
    limit = np.iinfo(np.intp).max
    for da, db in zip(a.shape, b.shape):
        if da and db and da > limit // db:
            raise DimensionError(f"kron dimension {da}*{db} overflows the index type")
    if a.shape[0] * b.shape[0] * a.shape[1] * b.shape[1] > sys.maxsize // 16:
        raise DimensionError("kron result would not fit in memory on this platform")
    return _kernels.kron(a, b)


@dataclass(frozen=True)
class LuReport:
    """Outcome of an LU factorisation with partial pivoting.

    Singularity is not decided here; see :meth:`is_singular`.
    """
    determinant: complex
    min_abs_pivot: float
    max_abs_pivot: float
    dimension: int

    @property
    def pivot_ratio(self):
        return self.min_abs_pivot / max(self.max_abs_pivot, 1.0)

    def is_singular(self, tol=TOL_SINGULAR):
        """Scale-robust singularity test ``min|pivot| / max(max|pivot|, 1) < tol``."""
        if self.dimension == 0:
            return False
        return self.pivot_ratio < tol


def lu_determinant(m):
    """Determinant of a square matrix by LU with max-modulus partial pivoting."""
    a = as_cmatrix(m)
    _require_square(a)
    det, pmin, pmax = _kernels.lu_pivots(a)
    return LuReport(complex(det), float(pmin), float(pmax), a.shape[0])


def unitarity_defect(m):
    """``max |m^dagger m - I|`` over all entries."""
    a = as_cmatrix(m)
    _require_square(a)
    return float(np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0])), initial=0.0))


def symmetry_defect(m):
    """``max |m - m^T|`` over all entries."""
    a = as_cmatrix(m)
    _require_square(a)
    return float(np.max(np.abs(a - a.T), initial=0.0))


def round_to_integer(x, tol=TOL_INTEGER):
    """Round a complex number to the nearest integer, or raise if it is not near one."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    x = complex(x)
    n = round(x.real)
    residual = abs(x - n)
    if not residual <= tol:
        raise NonIntegralError(f"{x} is not within {tol} of an integer (residual {residual:.3g})",
                               value=x, residual=residual)
    return int(n)
