"""Replay of the variable-by-variable elimination over a truncated polynomial ring.

Every free y/z variable is seeded as ``residue + eps_v`` in trunc(100, d).
The eight condition defects are computed once in these seeds.  A step
``(ConN, row, col, target)`` takes that defect entry, applies all earlier
substitutions, and solves for ``eps_target``; the coefficient of
``eps_target`` must be a nonzero rational (a unit at eps = 0).  Solving is a
fixed-point iteration ``s <- s - f(s)/c`` which is exact after d rounds.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from ..matrix import Matrix
from ..ring import TruncatedPoly, TruncValue
from .conditions import CONDITIONS, Fixed, condition_sides, derived_elements
from .templates import (
    FREE_VARS,
    NORMALIZED,
    instantiate,
    residue,
    x1_template_entries,
    x2_template_entries,
)


class LedgerError(ValueError):
    pass


class EliminationError(RuntimeError):
    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


@dataclass(frozen=True)
class EliminationStep:
    condition: str
    row: int
    col: int
    target: str
    expected_residue: int
    note: str = ""

    def __str__(self):
        return f"({self.condition},{self.row},{self.col}) -> {self.target}"


_LINE = re.compile(r"^(Con[1-8])\s+(\d+)\s+(\d+)\s+([yz]\d+)\s+(-?\d+)\s*(?:#\s*(.*))?$")


def parse_ledger(text: str) -> list[EliminationStep]:
    steps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _LINE.match(line)
        if not m:
            raise LedgerError(f"line {lineno}: cannot parse {raw!r}")
        con, r, c, var, res, note = m.groups()
        r, c = int(r), int(c)
        if not (1 <= r <= 14 and 1 <= c <= 14):
            raise LedgerError(f"line {lineno}: position ({r},{c}) outside 1..14")
        if var not in FREE_VARS:
            raise LedgerError(f"line {lineno}: {var} is not a free variable")
        steps.append(EliminationStep(con, r, c, var, int(res), (note or "").strip()))
    return steps


def load_ledger(path: str | Path | None = None) -> list[EliminationStep]:
    if path is None:
        text = resources.files("g2chev.replay").joinpath("data/elimination_ledger.txt").read_text()
    else:
        text = Path(path).read_text()
    return parse_ledger(text)


@dataclass
class StepLog:
    step: EliminationStep
    pivot: Fraction
    used: tuple            # (condition, row, col) actually used
    fallback: bool
    seconds: float
    rhs_check: bool | None = None

    def as_dict(self):
        return {
            "step": str(self.step),
            "pivot": str(self.pivot),
            "used": list(self.used),
            "fallback": self.fallback,
            "ledger_rhs_agrees": self.rhs_check,
        }


@dataclass
class EliminationState:
    ring: TruncatedPoly
    assignment: dict = field(default_factory=dict)
    log: list = field(default_factory=list)
    completed: bool = False
    failed_step: EliminationStep | None = None
    seconds: float = 0.0

    @property
    def fallback_count(self) -> int:
        return sum(1 for e in self.log if e.fallback)

    def all_residues(self) -> bool:
        return self.completed and all(self.assignment[v] == residue(v) for v in FREE_VARS)

    def summary(self) -> dict:
        return {
            "ring": self.ring.descriptor,
            "completed": self.completed,
            "steps": len(self.log),
            "fallbacks": self.fallback_count,
            "all_pivots_units": all(e.pivot != 0 for e in self.log),
            "final_equals_residues": self.all_residues(),
            "failed_step": str(self.failed_step) if self.failed_step else None,
            "seconds": round(self.seconds, 2),
        }


def seed_values(ring: TruncatedPoly) -> dict:
    """y/z name -> residue + eps (normalized variables are plain integers)."""
    vals = {}
    for i, v in enumerate(FREE_VARS):
        vals[v] = ring.var(i) + residue(v)
    for v, c in NORMALIZED.items():
        vals[v] = ring(c)
    return vals


def defect_matrices(ring: TruncatedPoly, convention: str = "difference", con8: str = "literal",
                    conditions=CONDITIONS) -> dict:
    """ConN -> defect matrix in the seeded variables.

    ``difference``: lhs - rhs.  ``quotient``: lhs rhs^-1 - E.
    """
    vals = seed_values(ring)
    x1 = instantiate(x1_template_entries(), vals, ring.zero)
    x2 = instantiate(x2_template_entries(), vals, ring.zero)
    f = Fixed.over(ring)
    d = derived_elements(x1, x2, f)
    out = {}
    for name in conditions:
        lhs, rhs = condition_sides(name, x1, x2, f, d, con8=con8)
        if convention == "difference":
            out[name] = lhs - rhs
        elif convention == "quotient":
            out[name] = lhs @ rhs.inverse() - Matrix.identity(14, one=ring.one, zero=ring.zero)
        else:
            raise ValueError(f"unknown defect convention {convention!r}")
    return out


class _Substituter:
    """Ordered list of eps substitutions applied lazily to single entries."""

    def __init__(self):
        self.subs: list[tuple[int, TruncValue]] = []

    def apply(self, f: TruncValue) -> TruncValue:
        for i, s in self.subs:
            f = f.substitute(i, s)
        return f

    def add(self, i: int, s: TruncValue):
        self.subs.append((i, s))


def _solve_for(f: TruncValue, i: int, d: int) -> tuple[Fraction, TruncValue]:
    """Pivot c = d f / d eps_i at 0 and s with f(eps_i = s) = 0."""
    c = f.coefficient((i,))
    if not c:
        return Fraction(0), None
    s = f.ring.zero
    for _ in range(d):
        s = s - f.substitute(i, s) * (1 / c)
    return c, s


def _var_index(name: str) -> int:
    return FREE_VARS.index(name)


def _find_pivot(step, D, i, sub, d):
    """(pivot, solution, used position, fallback flag) for one step."""
    f = sub.apply(D[step.row - 1, step.col - 1])
    c, s = _solve_for(f, i, d)
    if c:
        return c, s, (step.condition, step.row, step.col), False
    # scan the whole condition for an entry with a unit coefficient on the target
    for r in range(14):
        for k in range(14):
            g = D[r, k]
            if not g.terms:
                continue
            c, s = _solve_for(sub.apply(g), i, d)
            if c:
                return c, s, (step.condition, r + 1, k + 1), True
    return Fraction(0), None, None, True


def run_elimination(ledger: list[EliminationStep] | None = None, d: int = 2, convention: str = "difference",
                    con8: str = "literal", check_rhs: bool = True, defects: dict | None = None,
                    on_failure: str = "abort") -> EliminationState:
    """Execute the ledger step by step.

    ``on_failure="abort"`` stops at the first step with no unit pivot (the
    state records it); ``"skip"`` logs such steps with pivot 0 and goes on,
    which is only useful to see how much of a ledger goes through.
    """
    t_start = time.perf_counter()
    ledger = load_ledger() if ledger is None else ledger
    ring = TruncatedPoly(len(FREE_VARS), d, names=[f"e_{v}" for v in FREE_VARS])
    if defects is None:
        defects = defect_matrices(ring, convention=convention, con8=con8)
    state = EliminationState(ring)
    sub = _Substituter()
    solved: dict[int, TruncValue] = {}
    for step in ledger:
        t0 = time.perf_counter()
        i = _var_index(step.target)
        if i in solved:
            c, s, used, fallback = Fraction(0), None, None, True
        else:
            c, s, used, fallback = _find_pivot(step, defects[step.condition], i, sub, d)
        if not c:
            state.log.append(StepLog(step, Fraction(0), used, True, time.perf_counter() - t0))
            if state.failed_step is None:
                state.failed_step = step
            if on_failure == "abort":
                break
            continue
        sub.add(i, s)
        solved[i] = s
        state.log.append(StepLog(step, c, used, fallback, time.perf_counter() - t0,
                                 _rhs_agrees(step, s, ring) if check_rhs and step.note else None))
    if state.failed_step is None:
        # back substitution: the last solution is a constant, earlier ones follow
        values: dict[int, TruncValue] = {}
        for i, s in reversed(sub.subs):
            for j, v in values.items():
                s = s.substitute(j, v)
            values[i] = s
        state.completed = len(values) == len(FREE_VARS)
        for v in FREE_VARS:
            val = values.get(_var_index(v))
            if val is None or val.variables():
                state.completed = False
                continue
            state.assignment[v] = residue(v) + val.constant()
    state.seconds = time.perf_counter() - t_start
    return state


def first_order_system(ring: TruncatedPoly | None = None) -> list[dict]:
    """Linear parts of all defect entries, as rows over the 100 free variables."""
    ring = ring or TruncatedPoly(len(FREE_VARS), 2)
    rows = []
    for M in defect_matrices(ring).values():
        for r in range(14):
            for c in range(14):
                row = {m[0]: v for m, v in M[r, c].terms.items() if len(m) == 1}
                if row:
                    rows.append(row)
    return rows


def first_order_rank(fixed: tuple = ()) -> dict:
    """Rank of the linearized conditions, optionally with extra variables pinned to their residues."""
    from ..linalg import kernel_crt, rank_fraction_free

    rows = first_order_system()
    drop = {_var_index(v) for v in fixed}
    rows = [{k: c for k, c in r.items() if k not in drop} for r in rows]
    rows = [r for r in rows if r]
    rank, _ = rank_fraction_free(rows)
    basis, ranks = kernel_crt(rows, len(FREE_VARS))
    kernel = [{FREE_VARS[k]: str(x) for k, x in enumerate(b) if x and k not in drop} for b in basis or []]
    kernel = [k for k in kernel if k]
    return {"unknowns": len(FREE_VARS) - len(drop), "rank": rank, "modular_ranks": ranks, "kernel": kernel}


# -- comparing with the printed right-hand sides ------------------------------

_VAR = re.compile(r"([yz])_\{?(\d+)\}?")


def rhs_to_python(note: str) -> str | None:
    """``"y47 = -z_7"`` -> ``"-z7"``; returns None when no rhs is present."""
    if "=" not in note:
        return None
    rhs = note.split(";", 1)[0].split("=", 1)[1].strip().lstrip(":")
    rhs = _VAR.sub(r"\1\2", rhs)
    rhs = re.sub(r"(\d)\s*([yz(])", r"\1*\2", rhs)
    rhs = re.sub(r"\)\s*([yz(\d])", r")*\1", rhs)
    return rhs


def _rhs_agrees(step: EliminationStep, s: TruncValue, ring: TruncatedPoly) -> bool | None:
    """Does eps_target = s agree with the printed rhs to first order (after substitution)?"""
    from ..group import eval_param

    expr = rhs_to_python(step.note)
    if expr is None:
        return None
    vals = seed_values(ring)
    try:
        val = eval_param(expr, ring, {k: v for k, v in vals.items()})
    except Exception:
        return None
    lin = {m: c for m, c in s.terms.items() if len(m) <= 1}
    target = {m: c for m, c in (val - residue(step.target)).terms.items() if len(m) <= 1}
    return lin == target
