"""The eight matrix identities satisfied by x1, x2, w1, w2, h1, h2.

Derived elements (conjugates by the fixed Weyl matrices):

    x12    = w2 x1 w2^-1        image of x_{a1+a2}(1)
    x112   = w1 x12 w1^-1       image of x_{2a1+a2}(1)
    x1112  = w1 x2 w1^-1        image of x_{3a1+a2}(1)
    x11122 = w2 x1112 w2^-1     image of x_{3a1+2a2}(1)

Each condition is a pair (lhs, rhs) of matrix products; nothing is inverted
except the constant matrices w1, w2.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..chevalley import PRINTED_H1_DIAG, PRINTED_H2_DIAG, PRINTED_W1, PRINTED_W2
from ..matrix import Matrix
from ..ring import Ring

CONDITIONS = ("Con1", "Con2", "Con3", "Con4", "Con5", "Con6", "Con7", "Con8")


@dataclass
class Fixed:
    """Constant matrices w1, w2, their inverses and h1, h2 over a ring."""

    w1: Matrix
    w2: Matrix
    w1i: Matrix
    w2i: Matrix
    h1: Matrix
    h2: Matrix

    @classmethod
    def over(cls, ring: Ring | None = None) -> "Fixed":
        mats = [PRINTED_W1, PRINTED_W2, PRINTED_W1.inverse(), PRINTED_W2.inverse(),
                Matrix.diag(list(PRINTED_H1_DIAG)), Matrix.diag(list(PRINTED_H2_DIAG))]
        if ring is not None:
            mats = [m.to_ring(ring) for m in mats]
        return cls(*mats)


def derived_elements(x1: Matrix, x2: Matrix, f: Fixed) -> dict:
    x12 = f.w2 @ x1 @ f.w2i
    x112 = f.w1 @ x12 @ f.w1i
    x1112 = f.w1 @ x2 @ f.w1i
    x11122 = f.w2 @ x1112 @ f.w2i
    return {"x12": x12, "x112": x112, "x1112": x1112, "x11122": x11122}


def condition_sides(name: str, x1: Matrix, x2: Matrix, f: Fixed, d: dict | None = None,
                    con8: str = "literal") -> tuple[Matrix, Matrix]:
    """(lhs, rhs) of one condition; ``d`` caches derived elements."""
    if d is None:
        d = derived_elements(x1, x2, f)
    if name == "Con1":
        return x2 @ d["x12"], d["x12"] @ x2
    if name == "Con2":
        return f.h1 @ x2 @ f.h1 @ x2, _identity_like(x1)
    if name == "Con3":
        return f.h2 @ x1 @ f.h2 @ x1, _identity_like(x1)
    if name == "Con4":
        return x2 @ d["x112"], d["x112"] @ x2
    if name == "Con5":
        return x2 @ d["x1112"], d["x11122"] @ d["x1112"] @ x2
    if name == "Con6":
        return d["x1112"] @ x1, x1 @ d["x1112"]
    if name == "Con7":
        c = d["x1112"]
        return x1 @ d["x112"], c @ c @ c @ d["x112"] @ x1
    if name == "Con8":
        w3 = f.w1 @ f.w1 @ f.w1
        rhs = x1 @ f.w1 @ x1 @ w3 @ x1
        if con8 == "literal":
            return w3, rhs
        if con8 == "corrected":
            return f.w1, rhs
        raise ValueError(f"unknown Con8 form {con8!r}")
    raise ValueError(f"unknown condition {name!r}")


def _identity_like(M: Matrix) -> Matrix:
    one = M[0, 0] * 0 + 1
    zero = M[0, 0] * 0
    return Matrix.identity(M.shape[0], one=one, zero=zero)


def defect(name: str, x1: Matrix, x2: Matrix, f: Fixed, d: dict | None = None, con8: str = "literal") -> Matrix:
    """lhs - rhs."""
    lhs, rhs = condition_sides(name, x1, x2, f, d, con8)
    return lhs - rhs


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: object = None
    seconds: float = 0.0
    detail: dict = field(default_factory=dict)
    info: bool = False     # diagnostics that never count as a failure

    @property
    def status(self) -> str:
        if self.info:
            return "note"
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "witness": self.witness,
            "timing": round(self.seconds, 4),
            **({"detail": self.detail} if self.detail else {}),
        }


def first_mismatch(A: Matrix, B: Matrix):
    for i in range(A.shape[0]):
        for j in range(A.shape[1]):
            if A[i, j] != B[i, j]:
                return {"entry": [i + 1, j + 1], "lhs": str(A[i, j]), "rhs": str(B[i, j])}
    return None


def verify_conditions() -> list[CheckResult]:
    """Check Con1..Con8 on the true elements over the integers."""
    from ..chevalley import PRINTED_X1, PRINTED_X2

    f = Fixed.over()
    d = derived_elements(PRINTED_X1, PRINTED_X2, f)
    out = []
    for name in CONDITIONS:
        forms = ("literal", "corrected") if name == "Con8" else ("literal",)
        for form in forms:
            t0 = time.perf_counter()
            lhs, rhs = condition_sides(name, PRINTED_X1, PRINTED_X2, f, d, con8=form)
            ok = lhs == rhs
            label = name if name != "Con8" else f"Con8 ({form})"
            out.append(CheckResult(label, ok, None if ok else first_mismatch(lhs, rhs),
                                   time.perf_counter() - t0, info=name == "Con8"))
    forms = [r.name[6:-1] for r in out if r.name.startswith("Con8") and r.passed]
    out.append(CheckResult("Con8 (some form holds)", bool(forms), {"holds": forms}))
    return out


def con8_form_that_holds() -> str | None:
    """Which Con8 form the true elements satisfy (literal preferred)."""
    res = {r.name: r.passed for r in verify_conditions()}
    if res["Con8 (literal)"]:
        return "literal"
    if res["Con8 (corrected)"]:
        return "corrected"
    return None
