"""Fusion rules from the Verlinde formula, the balancing equation, and genus-g dimensions."""

from dataclasses import dataclass

import numpy as np

from .errors import NonIntegralError, VerlindeError
from .numerics import TOL_INTEGER, round_to_integer

__all__ = ["FusionTensor", "verlinde_raw", "fusion_tensor", "balancing_residuals",
           "balancing_residual", "genus_dimension", "hom_dimension_bruteforce",
           "fusion_closure", "fusion_matrices"]


@dataclass(frozen=True, eq=False)
class FusionTensor:
    """Fusion multiplicities ``coeffs[x, y, z] = N^z_{xy}``.

    ``dual`` is the duality permutation of the underlying theory, needed to lower the
    upper index (``N_{xyz} = N^{z̄}_{xy}``).
    """
    coeffs: np.ndarray
    dual: tuple
    max_rounding_residual: float = 0.0

    @property
    def rank(self):
        return self.coeffs.shape[0]

    def lowered(self):
        """``N_{xyz} = N^{z̄}_{xy}``, the multiplicity of the unit in ``x y z``."""
        return self.coeffs[:, :, list(self.dual)]

    def __eq__(self, other):
        if not isinstance(other, FusionTensor):
            return NotImplemented
        return self.dual == other.dual and np.array_equal(self.coeffs, other.coeffs)


def verlinde_raw(s_norm):
    """Unrounded ``sum_W s_XW s_YW conj(s_ZW) / s_1W`` as an ``(r, r, r)`` array."""
    s = np.asarray(s_norm, dtype=np.complex128)
    return np.einsum("xw,yw,zw->xyz", s, s, np.conj(s) / s[0])


def fusion_tensor(md, tol=TOL_INTEGER):
    """Verlinde fusion rules of `md`, rounded to non-negative integers.

    Raises
    ------
    VerlindeError
        If some coefficient is further than `tol` from an integer, or is negative.
    """
    raw = verlinde_raw(md.derived.s_norm)
    rounded = np.rint(raw.real)
    res = np.abs(raw - rounded)
    worst = np.unravel_index(np.argmax(res), res.shape)
    if res[worst] > tol:
        w = tuple(int(i) for i in worst)
        raise VerlindeError(f"N^{w[2]}_{{{w[0]},{w[1]}}} = {raw[worst]:.6g} is not integral",
                            w, raw[worst], float(res[worst]))
    if rounded.min() < 0:
        w = tuple(int(i) for i in np.unravel_index(np.argmin(rounded), rounded.shape))
        raise VerlindeError(f"N^{w[2]}_{{{w[0]},{w[1]}}} is negative", w, raw[w], 0.0)
    return FusionTensor(rounded.astype(np.int64), md.dual, float(res.max()))


def balancing_residuals(md, coeffs):
    """``|S'_XY - (theta_X theta_Y)^{-1} sum_Z N^Z_XY theta_Z d_Z|`` for every (X, Y)."""
    tw = md.twists
    d = md.derived.qdims
    rhs = np.einsum("xyz,z->xy", np.asarray(coeffs, dtype=float), tw * d)
    rhs = rhs / np.outer(tw, tw)
    return np.abs(md.s_unnorm - rhs)


def balancing_residual(md, n):
    return float(balancing_residuals(md, n.coeffs).max())


def genus_dimension(md, g):
    """Dimension of the genus-`g` state space, ``mu^{g-1} sum_X d_X^{2-2g}``."""
    g = int(g)
    if g < 0:
        raise ValueError("genus must be non-negative")
    if g == 0:
        return 1
    der = md.derived
    value = der.global_dim ** (g - 1) * float(np.sum(der.qdims ** (2 - 2 * g)))
    tol = 1e-6
    try:
        return round_to_integer(value, tol)
    except NonIntegralError as exc:
        raise NonIntegralError(f"genus-{g} dimension {value!r} is not integral",
                               value, exc.residual) from None


def fusion_matrices(n):
    """``M[x][z, y] = N^z_{xy}``: left multiplication by x, as Python-int object arrays."""
    c = n.coeffs
    return [np.array(c[x].T.tolist(), dtype=object) for x in range(n.rank)]


def hom_dimension_bruteforce(n, g):
    """``sum_{i in I^g} dim Hom(1, (x) V_i V̄_i)`` by exact fusion-matrix contraction.

    Builds ``A = sum_X M_X M_{X̄}`` and returns ``(A^g)[1, 1]``.
    """
    g = int(g)
    if g < 0:
        raise ValueError("genus must be non-negative")
    mats = fusion_matrices(n)
    r = n.rank
    a = np.zeros((r, r), dtype=object)
    for x in range(r):
        a = a + mats[x].dot(mats[n.dual[x]])
    acc = np.array([[int(i == j) for j in range(r)] for i in range(r)], dtype=object)
    for _ in range(g):
        acc = acc.dot(a)
    return int(acc[0, 0])


def fusion_closure(n, generators):
    """Smallest set of labels containing the unit and `generators`, closed under fusion
    and duality. Returns a sorted tuple of indices.
    """
    gens = {int(x) for x in generators}
    if not gens:
        raise ValueError("need at least one generator")
    if any(not 0 <= x < n.rank for x in gens):
        raise IndexError("generator index out of range")
    members = {0} | gens
    members |= {n.dual[x] for x in members}
    while True:
        idx = sorted(members)
        sub = n.coeffs[np.ix_(idx, idx)]
        new = set(np.nonzero(sub.sum(axis=(0, 1)))[0].tolist()) - members
        new |= {n.dual[x] for x in new}
        if not new:
            return tuple(idx)
        members |= new
