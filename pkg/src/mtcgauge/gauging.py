"""Z/2 permutation gauging of a modular category, from its modular data alone.

The gauged theory has three families of simple objects:

* ``Pair(X, Y)`` for ``X < Y``: the orbit ``X⊠Y ⊕ Y⊠X``, dimension ``2 d_X d_Y``;
* ``Diag(X, ±)``: ``X⊠X`` with either equivariant structure, dimension ``d_X^2``;
* ``Twisted(X, ±)``: the twisted sector, dimension ``delta d_X``.

The closed block formulas for ``S^eq``/``T^eq``, the fusion-rule formulas and the matrix
``P = eta^{-1} T^{1/2} S T^2 S T^{1/2}`` are written for the S-matrix orientation in which
balancing reads ``S'_{XY} = (theta_X theta_Y)^{-1} sum_Z N^Z_{X̄Y} theta_Z d_Z``.
:mod:`mtcgauge.modular_data` stores the opposite orientation, so the builders below
evaluate the formulas on ``conj(S')`` and conjugate the resulting ``S^eq`` back. Twists
are unaffected by the change of orientation.
"""

from dataclasses import dataclass
from enum import Enum
import cmath

import numpy as np

from .errors import FormulaViolationError, GaugingError
from .modular_data import (ModularData, choose_sqrt_twists, dual_from_charge_conjugation,
                           dual_index_s, validate)
from .numerics import TOL_AXIOM, TOL_INTEGER, unitarity_defect
from .report import CheckReport, worst_entries
from .verlinde import FusionTensor, fusion_tensor

__all__ = ["Kind", "GaugedLabel", "GaugingOptions", "enumerate_gauged_labels",
           "gauged_s_and_twists", "gauged_modular_data", "bantay_P", "closed_form_fusion",
           "gauge_and_verify", "gauged_label_names"]


class Kind(Enum):
    DIAG = "diag"
    PAIR = "pair"
    TWISTED = "twisted"


@dataclass(frozen=True)
class GaugedLabel:
    kind: Kind
    first: int
    second: int = None
    sign: int = None

    def __post_init__(self):
        if self.kind is Kind.PAIR:
            if self.second is None or not self.first < self.second:
                raise ValueError("Pair labels need first < second")
            if self.sign is not None:
                raise ValueError("Pair labels carry no sign")
        else:
            if self.sign not in (1, -1):
                raise ValueError("Diag/Twisted labels need sign +1 or -1")
            if self.second is not None:
                raise ValueError("Diag/Twisted labels carry a single index")

    @classmethod
    def pair(cls, x, y):
        x, y = int(x), int(y)
        return cls(Kind.PAIR, min(x, y), max(x, y))

    @classmethod
    def diag(cls, x, sign):
        return cls(Kind.DIAG, int(x), None, int(sign))

    @classmethod
    def twisted(cls, x, sign):
        return cls(Kind.TWISTED, int(x), None, int(sign))

    def name(self, labels):
        if self.kind is Kind.PAIR:
            return f"({labels[self.first]},{labels[self.second]})"
        s = "+" if self.sign > 0 else "-"
        if self.kind is Kind.DIAG:
            return f"({labels[self.first]},{s})"
        return f"(^{labels[self.first]},{s})"

    def dual(self, dual):
        if self.kind is Kind.PAIR:
            return GaugedLabel.pair(dual[self.first], dual[self.second])
        return GaugedLabel(self.kind, dual[self.first], None, self.sign)


@dataclass(frozen=True)
class GaugingOptions:
    """Choices entering the gauged data.

    eta_sqrt_sign : +1 or -1
        ``eta^{1/2} = eta_sqrt_sign * (principal root of eta)``. The two signs give
        inequivalent gauged theories.
    sqrt_twists : sequence or None
        Overrides the default (principal) square roots of the twists.
    tol : float
        Tolerance for validating the output and rounding fusion coefficients.
    """
    eta_sqrt_sign: int = 1
    sqrt_twists: tuple = None
    tol: float = TOL_AXIOM

    def __post_init__(self):
        if self.eta_sqrt_sign not in (1, -1):
            raise ValueError("eta_sqrt_sign must be +1 or -1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


def enumerate_gauged_labels(md):
    """Diag(1,+), the other Diag labels, then Pair, then Twisted labels."""
    r = md.rank
    out = [GaugedLabel.diag(0, 1)]
    out += [GaugedLabel.diag(x, e) for x in range(r) for e in (1, -1) if (x, e) != (0, 1)]
    out += [GaugedLabel.pair(x, y) for x in range(r) for y in range(x + 1, r)]
    out += [GaugedLabel.twisted(x, e) for x in range(r) for e in (1, -1)]
    return out


def gauged_label_names(md):
    return [lab.name(md.labels) for lab in enumerate_gauged_labels(md)]


def _eta_sqrt(md, sign):
    return sign * cmath.sqrt(md.derived.eta)


def _split(labels):
    """Index arrays per kind: (pair idx, X, Y), (diag idx, X, sign), (twisted idx, X, sign)."""
    def cols(kind, second):
        rows = [(i, lab.first, lab.second if second else lab.sign)
                for i, lab in enumerate(labels) if lab.kind is kind]
        return np.array(rows, dtype=np.int64).reshape(-1, 3).T
    return cols(Kind.PAIR, True), cols(Kind.DIAG, False), cols(Kind.TWISTED, False)


def gauged_s_and_twists(md, opts=None, mixed_delta_power=1):
    """Unnormalized ``S^eq`` and the twists ``T^eq`` of the gauged theory.

    ``mixed_delta_power`` selects the coefficient ``delta**power`` of the Diag/Twisted
    block; only 1 gives modular data (2 exists to demonstrate that).
    """
    opts = opts or GaugingOptions()
    labels = enumerate_gauged_labels(md)
    der = md.derived
    delta, eta = der.delta, der.eta
    sp = dual_index_s(md) * delta           # S' in the orientation of the block formulas
    th = md.twists
    h = choose_sqrt_twists(md, opts.sqrt_twists)
    eta_half = _eta_sqrt(md, opts.eta_sqrt_sign)
    (pi, px, py), (di, dx, de), (ti, tx, te) = _split(labels)

    n = len(labels)
    s = np.zeros((n, n), dtype=np.complex128)
    # (XY),(ZW): 2 (S'_XZ S'_YW + S'_XW S'_YZ)
    s[np.ix_(pi, pi)] = 2 * (sp[np.ix_(px, px)] * sp[np.ix_(py, py)]
                             + sp[np.ix_(px, py)] * sp[np.ix_(py, px)])
    # (XY),(Z,e): 2 S'_XZ S'_YZ
    blk = 2 * sp[np.ix_(px, dx)] * sp[np.ix_(py, dx)]
    s[np.ix_(pi, di)] = blk
    s[np.ix_(di, pi)] = blk.T
    # (X,e1),(Y,e2): S'_XY^2
    s[np.ix_(di, di)] = sp[np.ix_(dx, dx)] ** 2
    # (XY),(^Z,e) vanishes; left at zero
    # (X,e1),(^Y,e2): e1 delta S'_XY
    blk = de[:, None] * delta ** mixed_delta_power * sp[np.ix_(dx, tx)]
    s[np.ix_(di, ti)] = blk
    s[np.ix_(ti, di)] = blk.T
    # (^X,e1),(^Y,e2): e1 e2 eta^{-1} theta^{1/2}_X theta^{1/2}_Y (S' T^2 S')_XY
    st2s = sp @ np.diag(th ** 2) @ sp
    s[np.ix_(ti, ti)] = (np.outer(te, te) / eta * np.outer(h[tx], h[tx])
                         * st2s[np.ix_(tx, tx)])

    tw = np.empty(n, dtype=np.complex128)
    tw[pi] = th[px] * th[py]
    tw[di] = th[dx] ** 2
    tw[ti] = te * eta_half * h[tx]
    return np.conj(s), tw


def _block_of(labels, i, j):
    return f"{labels[i].kind.value}/{labels[j].kind.value}"


def gauged_modular_data(md, opts=None):
    """The Z/2 permutation gauging of `md` as a :class:`ModularData`.

    Raises
    ------
    GaugingError
        If the assembled data fails :func:`validate` at ``opts.tol``; the message names
        the block holding the worst residual.
    """
    opts = opts or GaugingOptions()
    labels = enumerate_gauged_labels(md)
    s, tw = gauged_s_and_twists(md, opts)
    names = [lab.name(md.labels) for lab in labels]
    mu2 = 2 * md.derived.global_dim            # delta of the gauged theory
    dual = dual_from_charge_conjugation(s / mu2, tol=max(opts.tol, 1e-9) * 100)
    if dual is None:
        res = np.abs(s / mu2 @ (s / mu2).conj().T - np.eye(len(labels)))
        (i, j), _ = worst_entries(res, 1)[0]
        raise GaugingError(f"charge conjugation of the gauged S is not a permutation "
                           f"(block {_block_of(labels, i, j)})", _block_of(labels, i, j))
    out = ModularData(f"Z2gauge({md.name})", names, dual, s, tw)
    report = validate(out, opts.tol)
    if not report.passed:
        leaf = max(report.failing(), key=lambda p: p.max_residual)
        idx = leaf.witnesses[0][0] if leaf.witnesses else (0, 0)
        i, j = idx[0], idx[1] if len(idx) > 1 else idx[0]
        block = _block_of(labels, i, j)
        raise GaugingError(f"gauged data fails '{leaf.check_name}' "
                           f"(residual {leaf.max_residual:.3g}) in block {block}",
                           block, report)
    return out


def bantay_P(md, opts=None):
    """``P = eta^{-1} T^{1/2} S T^2 S T^{1/2}`` with S normalized.

    S is taken in the orientation of the fusion-rule formulas (see the module docstring).
    P is symmetric and unitary, and ``P^2 = C``.
    """
    opts = opts or GaugingOptions()
    s = dual_index_s(md)
    h = choose_sqrt_twists(md, opts.sqrt_twists)
    th2 = md.twists ** 2
    return (h[:, None] * (s @ np.diag(th2) @ s) * h[None, :]) / md.derived.eta


def _lowered_rule_tensor(md, opts):
    """Closed-form ``N_{ABC}`` (unit multiplicity in ``A B C``) over gauged labels."""
    base = fusion_tensor(md, max(opts.tol, TOL_INTEGER)).lowered().astype(float)
    labels = enumerate_gauged_labels(md)
    s = dual_index_s(md)
    p = bantay_P(md, opts)
    s0 = s[0]
    (pi, px, py), (di, dx, de), (ti, tx, te) = _split(labels)
    n = len(labels)
    out = np.zeros((n, n, n), dtype=np.complex128)
    nb = base

    def put(ia, ib, ic, vals):
        # write vals[a, b, c] to all six argument orders
        for perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
            idx = [ia, ib, ic]
            out[np.ix_(idx[perm[0]], idx[perm[1]], idx[perm[2]])] = np.transpose(vals, perm)

    X, Y = px[:, None, None], py[:, None, None]
    # Pair, Pair, Pair
    X2, Y2 = px[None, :, None], py[None, :, None]
    X3, Y3 = px[None, None, :], py[None, None, :]
    put(pi, pi, pi, nb[X, X2, X3] * nb[Y, Y2, Y3] + nb[X, X2, Y3] * nb[Y, Y2, X3]
        + nb[X, Y2, X3] * nb[Y, X2, Y3] + nb[Y, X2, X3] * nb[X, Y2, Y3])
    # Pair, Pair, Diag
    Z = dx[None, None, :]
    put(pi, pi, di, nb[X, X2, Z] * nb[Y, Y2, Z] + nb[X, Y2, Z] * nb[Y, X2, Z])
    # Pair, Diag, Diag
    Z1, Z2 = dx[None, :, None], dx[None, None, :]
    put(pi, di, di, nb[X, Z1, Z2] * nb[Y, Z1, Z2])
    # Diag, Diag, Diag
    A, B, C = dx[:, None, None], dx[None, :, None], dx[None, None, :]
    eps = de[:, None, None] * de[None, :, None] * de[None, None, :]
    nabc = nb[A, B, C]
    put(di, di, di, nabc * (nabc + eps) / 2)
    # Pair, ^Z1, ^Z2: sum_W S_XW S_YW S_Z1W S_Z2W / S_1W^2
    w = s / s0
    put(pi, ti, ti, np.einsum("aw,bw,cw->abc", w[px] * w[py], s[tx], s[tx]))
    # (X,e), (^Z1,e1), (^Z2,e2)
    first = 0.5 * np.einsum("aw,bw,cw->abc", w[dx] * w[dx], s[tx], s[tx])
    second = 0.5 * np.einsum("aw,bw,cw->abc", s[dx] / s0, p[tx], p[tx])
    sign = de[:, None, None] * te[None, :, None] * te[None, None, :]
    put(di, ti, ti, first + sign * second)
    return out


def closed_form_fusion(md, opts=None):
    """Fusion rules of the gauged theory assembled from the closed formulas.

    Returns a :class:`FusionTensor` indexed by :func:`enumerate_gauged_labels`, with
    ``N^Z_{XY} = N_{X Y Z̄}``.

    Raises
    ------
    FormulaViolationError
        If some coefficient is not within ``opts.tol`` of a non-negative integer.
    """
    opts = opts or GaugingOptions()
    labels = enumerate_gauged_labels(md)
    index = {lab: i for i, lab in enumerate(labels)}
    dual = tuple(index[lab.dual(md.dual)] for lab in labels)
    lowered = _lowered_rule_tensor(md, opts)
    coeffs = lowered[:, :, list(dual)]
    rounded = np.rint(coeffs.real)
    res = np.abs(coeffs - rounded)
    tol = max(opts.tol, 1e-12)
    worst = np.unravel_index(np.argmax(res), res.shape)
    if res[worst] > tol or rounded.min() < 0:
        if rounded.min() < 0 and res[worst] <= tol:
            worst = np.unravel_index(np.argmin(rounded), rounded.shape)
        w = tuple(int(i) for i in worst)
        names = [labels[i].name(md.labels) for i in w]
        raise FormulaViolationError(
            f"closed-form N^{names[2]}_{{{names[0]},{names[1]}}} = {coeffs[worst]:.6g} "
            "is not a non-negative integer", w, coeffs[worst], float(res[worst]))
    return FusionTensor(rounded.astype(np.int64), dual, float(res.max()))


def gauge_and_verify(md, opts=None):
    """Gauge `md` and cross-check the result.

    Returns ``(gauged, report)``. The report covers the axiom suite on the output, the
    global dimension ``4 mu^2``, agreement of closed-form and Verlinde fusion rules,
    symmetry of ``S^eq`` and the vanishing Pair/Twisted block.
    """
    opts = opts or GaugingOptions()
    gauged = gauged_modular_data(md, opts)
    parts = [validate(gauged, opts.tol)]

    mu = md.derived.global_dim
    dims = gauged.derived.global_dim
    parts.append(CheckReport.from_residual("global dimension = 4 mu^2",
                                           abs(dims - 4 * mu * mu) / (4 * mu * mu), 1e-6,
                                           notes=f"{dims:.10g} vs {4 * mu * mu:.10g}"))
    labels = enumerate_gauged_labels(md)
    (pi, _, _), _, (ti, _, _) = _split(labels)
    zero = float(np.abs(gauged.s_unnorm[np.ix_(pi, ti)]).max(initial=0.0))
    parts.append(CheckReport.from_residual("S^eq vanishes on Pair/Twisted", zero, 0.0))
    s_n = gauged.derived.s_norm
    parts.append(CheckReport.from_residual("normalized S^eq unitary", unitarity_defect(s_n),
                                           max(opts.tol, 1e-8)))

    verl = fusion_tensor(gauged, max(opts.tol, TOL_INTEGER))
    closed = closed_form_fusion(md, opts)
    diff = np.abs(verl.coeffs - closed.coeffs)
    same_dual = verl.dual == closed.dual
    parts.append(CheckReport.from_residual(
        "closed-form fusion = Verlinde fusion", float(diff.max()) + (0.0 if same_dual else 1.0),
        0.0, worst_entries(diff),
        notes="" if same_dual else "duality permutations differ"))
    return gauged, CheckReport.composite(f"gauge {md.name}", parts, opts.tol)
