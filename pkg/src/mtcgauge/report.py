"""Structured residual reports returned by every check."""

from dataclasses import dataclass, field

import numpy as np

__all__ = ["CheckReport", "PASS", "FAIL", "INFO", "worst_entries", "combine"]

PASS = "pass"
FAIL = "fail"
INFO = "informational"


@dataclass
class CheckReport:
    """Result of one identity check.

    Attributes
    ----------
    check_name : str
    max_residual : float
        Largest residual observed; ``nan`` when not applicable.
    verdict : str
        ``"pass"``, ``"fail"`` or ``"informational"``.
    tol : float or None
        Tolerance the verdict was decided at.
    witnesses : list of (tuple, float)
        The worst offenders as ``(index tuple, residual)``.
    notes : str
    parts : list of CheckReport
        Sub-checks of a composite report.
    table : list of tuple
        Optional tabulated values (used by informational checks).
    """
    check_name: str
    max_residual: float
    verdict: str
    tol: float = None
    witnesses: list = field(default_factory=list)
    notes: str = ""
    parts: list = field(default_factory=list)
    table: list = field(default_factory=list)

    @classmethod
    def from_residual(cls, name, residual, tol, witnesses=(), notes=""):
        residual = float(residual)
        verdict = PASS if residual <= tol else FAIL
        return cls(name, residual, verdict, tol, list(witnesses), notes)

    @classmethod
    def composite(cls, name, parts, tol, notes=""):
        gating = [p for p in parts if p.verdict != INFO]
        res = max((p.max_residual for p in gating), default=0.0)
        verdict = PASS if all(p.verdict == PASS for p in gating) else FAIL
        return cls(name, float(res), verdict, tol, [], notes, list(parts))

    @property
    def passed(self):
        return self.verdict != FAIL

    def failing(self):
        """Leaf reports with verdict fail."""
        if not self.parts:
            return [self] if self.verdict == FAIL else []
        return [leaf for p in self.parts for leaf in p.failing()]

    def to_dict(self):
        def conv(v):
            if isinstance(v, complex):
                return {"re": v.real, "im": v.imag}
            if isinstance(v, (np.integer,)):
                return int(v)
            if isinstance(v, (np.floating, float)):
                return float(v)
            if isinstance(v, np.complexfloating):
                return {"re": float(v.real), "im": float(v.imag)}
            if isinstance(v, (tuple, list)):
                return [conv(x) for x in v]
            return v

        out = {
            "check_name": self.check_name,
            "verdict": self.verdict,
            "max_residual": conv(self.max_residual),
            "tol": self.tol,
            "witnesses": [{"index": conv(idx), "residual": conv(r)} for idx, r in self.witnesses],
            "notes": self.notes,
        }
        if self.parts:
            out["parts"] = [p.to_dict() for p in self.parts]
        if self.table:
            out["table"] = [conv(row) for row in self.table]
        return out

    def lines(self, indent=0):
        """Human-readable table rows, one per (sub-)check."""
        pad = "  " * indent
        res = "n/a" if self.max_residual != self.max_residual else f"{self.max_residual:.3e}"
        tol = "" if self.tol is None else f"  tol={self.tol:.0e}"
        tag = "INFO" if self.verdict == INFO else self.verdict.upper()
        row = f"{pad}{tag:<6} {self.check_name:<44} residual={res}{tol}"
        if self.notes and not self.parts:
            row += f"  ({self.notes})"
        out = [row]
        for idx, r in self.witnesses[:3]:
            if self.verdict == FAIL:
                out.append(f"{pad}         witness {tuple(int(i) for i in idx)}: {r:.3e}")
        for p in self.parts:
            out.extend(p.lines(indent + 1))
        return out

    def __str__(self):
        return "\n".join(self.lines())


def worst_entries(residuals, k=3):
    """Top-`k` ``(index tuple, residual)`` pairs of an array of residuals."""
    a = np.asarray(residuals, dtype=float)
    if a.size == 0:
        return []
    flat = np.argsort(a, axis=None)[::-1][:k]
    return [(tuple(int(i) for i in np.unravel_index(f, a.shape)), float(a.flat[f])) for f in flat]


def combine(name, reports, tol=None, notes=""):
    return CheckReport.composite(name, reports, tol, notes)
