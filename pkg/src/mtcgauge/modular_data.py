"""Modular data of a modular tensor category and the quantities derived from it.

Conventions
-----------
Simple objects are indexed ``0 .. rank-1`` and index 0 is the unit. ``s_unnorm`` is the
unnormalized S-matrix ``S'`` whose first row holds the quantum dimensions, and the twists
obey the balancing equation in the form

    S'_{XY} = (theta_X theta_Y)^{-1} sum_Z N^Z_{XY} theta_Z d_Z .

In this orientation the modular group relations read ``(S T)^3 = eta`` and
``(T^{-1} S)^3 = eta^{-1} C`` with ``S = S'/delta``. Formulas written for the opposite
orientation (balancing with ``N^Z_{X̄ Y}``) are obtained by complex conjugating ``S'``;
see :func:`dual_index_s`.
"""

from dataclasses import dataclass, field
from functools import cached_property
import math

import numpy as np

from . import numerics
from .errors import InvalidChoiceError, MalformedDataError
from .numerics import TOL_AXIOM
from .report import CheckReport, worst_entries

__all__ = ["ModularData", "DerivedData", "derive", "validate", "choose_sqrt_twists",
           "deligne_product", "relabel", "dual_index_s", "dual_from_charge_conjugation"]


def _readonly(a):
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ModularData:
    """Numerical modular data ``(S', theta)`` of a modular category.

    Construction only enforces structure (shapes, finiteness, a unit at index 0, an
    involutive duality). Numerical axioms are the business of :func:`validate` and of
    :meth:`invariant_violations`.
    """
    name: str
    labels: tuple
    dual: tuple
    s_unnorm: np.ndarray
    twists: np.ndarray
    sqrt_twists: np.ndarray = None

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        r = len(labels)
        if r == 0:
            raise MalformedDataError("rank must be positive", field="labels")
        if len(set(labels)) != r:
            raise MalformedDataError("labels must be distinct", field="labels")
        s = numerics.as_cmatrix(self.s_unnorm, "s_unnorm")
        if s.shape != (r, r):
            raise MalformedDataError(f"s_unnorm must be {r}x{r}, got {s.shape}", field="s_unnorm")
        tw = np.asarray(self.twists, dtype=np.complex128).reshape(-1)
        if tw.shape != (r,) or not np.all(np.isfinite(tw)):
            raise MalformedDataError(f"twists must be {r} finite numbers", field="twists")
        dual = tuple(int(x) for x in self.dual)
        if len(dual) != r or any(not 0 <= x < r for x in dual):
            raise MalformedDataError("dual must be a list of valid indices", field="dual")
        if any(dual[dual[x]] != x for x in range(r)):
            raise MalformedDataError("dual is not an involution", field="dual")
        if dual[0] != 0:
            raise MalformedDataError("the unit (index 0) must be self-dual", field="dual")
        sq = self.sqrt_twists
        if sq is not None:
            sq = np.asarray(sq, dtype=np.complex128).reshape(-1)
            if sq.shape != (r,) or not np.all(np.isfinite(sq)):
                raise MalformedDataError(f"sqrt_twists must be {r} finite numbers",
                                         field="sqrt_twists")
            sq = _readonly(sq)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dual", dual)
        object.__setattr__(self, "s_unnorm", _readonly(s))
        object.__setattr__(self, "twists", _readonly(tw))
        object.__setattr__(self, "sqrt_twists", sq)
        object.__setattr__(self, "name", str(self.name))

    @property
    def rank(self):
        return len(self.labels)

    @cached_property
    def derived(self):
        return derive(self)

    def index(self, label):
        """Index of a label given by name or by integer index."""
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.rank:
                raise IndexError(label)
            return int(label)
        try:
            return self.labels.index(str(label))
        except ValueError:
            if str(label).isdigit() and int(label) < self.rank:
                return int(label)
            raise KeyError(f"no label {label!r} in {self.name}") from None

    def dual_matrix(self):
        c = np.zeros((self.rank, self.rank))
        c[np.arange(self.rank), self.dual] = 1.0
        return c

    def replace(self, **changes):
        kw = dict(name=self.name, labels=self.labels, dual=self.dual, s_unnorm=self.s_unnorm,
                  twists=self.twists, sqrt_twists=self.sqrt_twists)
        kw.update(changes)
        return ModularData(**kw)

    def invariant_violations(self, tol=TOL_AXIOM):
        """List of ``(field, message)`` for every violated data invariant."""
        out = []
        s, tw, dual = self.s_unnorm, self.twists, self.dual
        if abs(tw[0] - 1) > tol:
            out.append(("twists", f"twist of the unit is {tw[0]}, expected 1"))
        bad = np.abs(np.abs(tw) - 1)
        if bad.max() > tol:
            out.append(("twists", f"twist modulus deviates from 1 by {bad.max():.3g}"))
        bad = np.abs(tw[list(dual)] - tw)
        if bad.max() > tol:
            out.append(("twists", f"twists of dual objects differ by {bad.max():.3g}"))
        sym = numerics.symmetry_defect(s)
        if sym > tol:
            out.append(("s_unnormalized", f"S' is not symmetric (defect {sym:.3g})"))
        row = s[0]
        if np.abs(row.imag).max() > tol or row.real.min() <= 0:
            out.append(("s_unnormalized", "row 0 of S' must be real and positive"))
        if self.sqrt_twists is not None:
            sq = self.sqrt_twists
            if np.abs(sq ** 2 - tw).max() > tol:
                out.append(("sqrt_twists", "sqrt_twists do not square to the twists"))
            if np.abs(sq[list(dual)] - sq).max() > tol:
                out.append(("sqrt_twists", "sqrt_twists differ on dual objects"))
        return out


@dataclass(frozen=True, eq=False)
class DerivedData:
    qdims: np.ndarray
    global_dim: float
    delta: float
    p_plus: complex
    p_minus: complex
    eta: complex
    s_norm: np.ndarray
    charge_conj: np.ndarray = field(repr=False)


def derive(md):
    """Quantum dimensions, global dimension, Gauss sums and normalized S.

    ``eta = p_plus / delta`` with ``delta`` the positive square root of the global
    dimension.
    """
    row = md.s_unnorm[0]
    if np.abs(row.imag).max() > TOL_AXIOM * max(1.0, np.abs(row).max()):
        raise MalformedDataError("quantum dimensions (row 0 of S') must be real",
                                 field="s_unnorm")
    d = row.real.copy()
    if d.min() <= 0:
        raise MalformedDataError("quantum dimensions must be positive", field="s_unnorm")
    mu = float(np.sum(d * d))
    if not mu > 0:
        raise MalformedDataError("global dimension must be positive", field="s_unnorm")
    delta = math.sqrt(mu)
    d2 = d * d
    p_plus = complex(np.sum(md.twists * d2))
    p_minus = complex(np.sum(np.conj(md.twists) / np.abs(md.twists) ** 2 * d2))
    s = md.s_unnorm / delta
    d.setflags(write=False)
    return DerivedData(d, mu, delta, p_plus, p_minus, p_plus / delta, _readonly(s),
                       _readonly(s @ s))


def dual_index_s(md):
    """Normalized S in the opposite orientation, ``S_{X̄ Y} = conj(S_{XY})``."""
    return np.conj(md.derived.s_norm)


def dual_from_charge_conjugation(s_norm, tol=1e-6):
    """Duality permutation read off ``C = S^2``; None if C is not a permutation matrix."""
    c = s_norm @ s_norm
    r = c.shape[0]
    perm = tuple(int(i) for i in np.argmax(np.abs(c), axis=1))
    target = np.zeros((r, r))
    target[np.arange(r), perm] = 1.0
    if np.abs(c - target).max() > tol:
        return None
    if any(perm[perm[x]] != x for x in range(r)):
        return None
    return perm


def validate(md, tol=TOL_AXIOM):
    """Run the axiom suite and return a composite :class:`CheckReport`.

    Sub-checks: S' symmetry, unitarity of the normalized S, twist modulus, twists
    constant on dual pairs, C = S^2 matches the duality, Verlinde integrality and
    non-negativity, the balancing equation, and (if present) the square roots of twists.
    """
    from . import verlinde

    parts = []
    s_p = md.s_unnorm
    tw = md.twists
    try:
        der = md.derived
    except MalformedDataError as exc:
        bad = CheckReport("quantum dimensions", float("inf"), "fail", tol, notes=str(exc))
        return CheckReport.composite(f"validate {md.name}", [bad], tol)

    parts.append(CheckReport.from_residual(
        "S' symmetric", numerics.symmetry_defect(s_p), tol,
        worst_entries(np.abs(s_p - s_p.T))))
    s = der.s_norm
    unit_res = np.abs(s.conj().T @ s - np.eye(md.rank))
    parts.append(CheckReport.from_residual("normalized S unitary", unit_res.max(), tol,
                                           worst_entries(unit_res)))
    mod = np.abs(np.abs(tw) - 1)
    mod[0] = max(mod[0], abs(tw[0] - 1))
    parts.append(CheckReport.from_residual("twists unit modulus", mod.max(), tol,
                                           worst_entries(mod)))
    dres = np.abs(tw[list(md.dual)] - tw)
    parts.append(CheckReport.from_residual("twists constant on dual pairs", dres.max(), tol,
                                           worst_entries(dres)))
    cres = np.abs(der.charge_conj - md.dual_matrix())
    parts.append(CheckReport.from_residual("C = S^2 matches duality", cres.max(), tol,
                                           worst_entries(cres)))

    raw = verlinde.verlinde_raw(s)
    rounded = np.rint(raw.real)
    ires = np.abs(raw - rounded)
    parts.append(CheckReport.from_residual("Verlinde integrality", ires.max(), tol,
                                           worst_entries(ires)))
    neg = np.maximum(-rounded, 0.0)
    parts.append(CheckReport.from_residual("Verlinde non-negativity", neg.max(), tol,
                                           worst_entries(neg)))
    bres = verlinde.balancing_residuals(md, rounded)
    parts.append(CheckReport.from_residual("balancing equation", bres.max(), tol,
                                           worst_entries(bres)))
    if md.sqrt_twists is not None:
        sq = md.sqrt_twists
        res = np.maximum(np.abs(sq ** 2 - tw), np.abs(sq[list(md.dual)] - sq))
        parts.append(CheckReport.from_residual("square roots of twists", res.max(), tol,
                                               worst_entries(res)))
    return CheckReport.composite(f"validate {md.name}", parts, tol)


def _principal_sqrt(z):
    """Square root with argument in (-pi/2, pi/2], treating -1 -0j as -1."""
    a = math.atan2(z.imag, z.real)
    if a <= -math.pi + 1e-12:
        a = math.pi
    return abs(z) ** 0.5 * complex(math.cos(a / 2), math.sin(a / 2))


def choose_sqrt_twists(md, overrides=None, tol=TOL_AXIOM):
    """A family of square roots of the twists, equal on dual pairs.

    Without `overrides` each dual pair gets the principal root of its twist (computed on
    the smaller index and copied to the partner). Overrides are checked and returned.
    """
    tw = md.twists
    if overrides is not None:
        sq = np.asarray(overrides, dtype=np.complex128).reshape(-1)
        if sq.shape != (md.rank,):
            raise InvalidChoiceError(f"expected {md.rank} square roots, got {sq.size}")
        if np.abs(sq * sq - tw).max() > tol:
            raise InvalidChoiceError("square roots do not square to the twists")
        if np.abs(sq[list(md.dual)] - sq).max() > tol:
            raise InvalidChoiceError("square roots must agree on X and its dual")
        return sq.copy()
    if md.sqrt_twists is not None:
        return choose_sqrt_twists(md, md.sqrt_twists, tol)
    sq = np.empty(md.rank, dtype=np.complex128)
    for x in range(md.rank):
        rep = min(x, md.dual[x])
        sq[x] = _principal_sqrt(complex(tw[rep]))
    return sq


def deligne_product(a, b):
    """``a ⊠ b``: labels are pairs, S' is the Kronecker product, twists multiply."""
    rb = b.rank
    labels = [f"{x}*{y}" for x in a.labels for y in b.labels]
    dual = [a.dual[i] * rb + b.dual[j] for i in range(a.rank) for j in range(rb)]
    sq = None
    if a.sqrt_twists is not None and b.sqrt_twists is not None:
        sq = np.kron(a.sqrt_twists, b.sqrt_twists)
    return ModularData(f"{a.name}*{b.name}", labels, dual,
                       numerics.kron(a.s_unnorm, b.s_unnorm),
                       np.kron(a.twists, b.twists), sq)


def relabel(md, perm):
    """Reorder simple objects: new index ``i`` is old index ``perm[i]`` (perm[0] == 0)."""
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(md.rank)) or perm[0] != 0:
        raise ValueError("perm must be a permutation fixing the unit")
    inv = np.argsort(perm)
    dual = [int(inv[md.dual[p]]) for p in perm]
    sq = None if md.sqrt_twists is None else md.sqrt_twists[perm]
    return ModularData(md.name, [md.labels[p] for p in perm], dual,
                       md.s_unnorm[np.ix_(perm, perm)], md.twists[perm], sq)
