"""Built-in modular data and the metaplectic recovery check."""

import cmath
from dataclasses import dataclass, field
import math

import numpy as np

from .errors import ParameterError, UnknownTheoryError
from .gauging import GaugingOptions, enumerate_gauged_labels, gauged_modular_data, Kind
from .modular_data import ModularData
from .report import CheckReport
from .verlinde import fusion_closure, fusion_tensor

__all__ = ["CatalogEntry", "pointed_zn", "named_entry", "catalog_entry", "catalog_keys",
           "NAMED_KEYS", "metaplectic_recovery"]

PHI = (1 + math.sqrt(5)) / 2


def pointed_zn(N, t=1):
    """Pointed theory on Z_N (N odd) with quadratic form ``q(j) = exp(2 pi i t j^2 / N)``."""
    N, t = int(N), int(t)
    if N < 1 or N % 2 == 0:
        raise ParameterError(f"N must be odd and positive, got {N}")
    if math.gcd(t, N) != 1:
        raise ParameterError(f"t={t} is not coprime to N={N}")
    j = np.arange(N)
    # reduce exponents mod N before exponentiating so entries are as exact as possible
    s = np.exp(4j * np.pi * ((t * np.outer(j, j)) % N) / N)
    tw = np.exp(2j * np.pi * ((t * j * j) % N) / N)
    s[0, :] = 1.0
    s[:, 0] = 1.0
    tw[0] = 1.0
    name = "trivial" if N == 1 else f"pointed_z{N}" + ("" if t == 1 else f"_t{t}")
    return ModularData(name, [str(k) for k in range(N)], [(-k) % N for k in range(N)], s, tw)


def _trivial():
    return ModularData("trivial", ["1"], [0], [[1.0]], [1.0])


def _semion():
    return ModularData("semion", ["1", "s"], [0, 1], [[1, 1], [1, -1]], [1, 1j])


def _fibonacci():
    return ModularData("fibonacci", ["1", "tau"], [0, 1], [[1, PHI], [PHI, -1]],
                       [1, cmath.exp(4j * math.pi / 5)])


def _ising():
    r = math.sqrt(2)
    return ModularData("ising", ["1", "sigma", "psi"], [0, 1, 2],
                       [[1, r, 1], [r, 0, -r], [1, -r, 1]],
                       [1, cmath.exp(2j * math.pi / 16), -1])


def _toric_code():
    s = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]]
    return ModularData("toric_code_expected", ["1", "e", "m", "f"], [0, 1, 2, 3], s,
                       [1, 1, 1, -1])


@dataclass(frozen=True)
class CatalogEntry:
    """A named, parameterized, deterministic constructor of modular data."""
    key: str
    builder: object
    parameters: dict = field(default_factory=dict)

    def build(self):
        return self.builder(**self.parameters)


_ENTRIES = {e.key: e for e in (
    CatalogEntry("trivial", _trivial),
    CatalogEntry("semion", _semion),
    CatalogEntry("fibonacci", _fibonacci),
    CatalogEntry("ising", _ising),
    CatalogEntry("toric_code_expected", _toric_code),
    CatalogEntry("pointed_z3", pointed_zn, {"N": 3, "t": 1}),
    CatalogEntry("pointed_z5", pointed_zn, {"N": 5, "t": 1}),
    CatalogEntry("pointed_z7", pointed_zn, {"N": 7, "t": 1}),
)}

NAMED_KEYS = ("trivial", "semion", "fibonacci", "ising", "toric_code_expected")


def catalog_keys():
    return list(_ENTRIES)


def catalog_entry(key):
    """The :class:`CatalogEntry` for `key` (``pointed_zN`` works for any odd N)."""
    try:
        return _ENTRIES[key]
    except KeyError:
        if key.startswith("pointed_z") and key[9:].isdigit():
            return CatalogEntry(key, pointed_zn, {"N": int(key[9:]), "t": 1})
        raise UnknownTheoryError(f"unknown catalog key {key!r}; known: "
                                 f"{', '.join(_ENTRIES)}") from None


def named_entry(key):
    """Catalog theory by key; ``pointed_zN`` works for any odd N."""
    return catalog_entry(key).build()


def metaplectic_recovery(N, t=1, eta_sqrt_sign=1, tol=1e-8):
    """Fusion closure of ``(^1,+)`` inside the gauging of ``pointed_zn(N, t)``.

    Passes when the closure has rank ``(N+7)/2`` and quantum dimensions
    ``{1, 1, sqrt N, sqrt N} + {2} * (N-1)/2``.
    """
    N = int(N)
    if N < 3:
        raise ParameterError("metaplectic recovery needs odd N >= 3")
    base = pointed_zn(N, t)
    gauged = gauged_modular_data(base, GaugingOptions(eta_sqrt_sign=eta_sqrt_sign))
    labels = enumerate_gauged_labels(base)
    gen = labels.index(next(lab for lab in labels
                            if lab.kind is Kind.TWISTED and lab.first == 0 and lab.sign == 1))
    closure = fusion_closure(fusion_tensor(gauged), [gen])
    dims = np.sort(gauged.derived.qdims[list(closure)])
    expected = np.sort([1.0, 1.0, math.sqrt(N), math.sqrt(N)] + [2.0] * ((N - 1) // 2))
    rank_ok = len(closure) == (N + 7) // 2
    if dims.shape == expected.shape:
        res = float(np.abs(dims - expected).max())
    else:
        res = float("inf")
    rep = CheckReport.from_residual(
        f"metaplectic recovery N={N}", res, tol,
        notes=(f"closure rank {len(closure)} (expected {(N + 7) // 2}); labels "
               + ", ".join(gauged.labels[i] for i in closure)))
    if not rank_ok:
        rep.verdict = "fail"
    rep.table = [(gauged.labels[i], float(gauged.derived.qdims[i])) for i in closure]
    return rep
