"""Block shapes, commutants, basis changes and involution ranks."""

from __future__ import annotations

import time
from fractions import Fraction

from ..chevalley import PRINTED_H1_DIAG, PRINTED_H2_DIAG, PRINTED_W1, PRINTED_W2, PRINTED_X1, PRINTED_X2
from ..group import GroupElement, GroupError, root_element, weyl_element
from ..linalg import rank_fraction_free, rank_mod_p
from ..matrix import Matrix
from ..ring import IntegersMod, Rationals, Ring, TruncatedPoly
from ..rootsys import Root, root
from .conditions import CheckResult
from .templates import (
    RESIDUES,
    instantiate,
    linear_system_rows,
    template_variables,
    torus_template_entries,
    x1_template_entries,
    x2_template_entries,
)

N = 14


def commutant_rows(mats) -> list[dict]:
    """Equations M A - A M = 0 on the 196 entries of M (index 14*i + j)."""
    rows = []
    for A in mats:
        for i in range(N):
            for j in range(N):
                row: dict = {}
                for k in range(N):
                    a = A[k, j]
                    if a:
                        row[i * N + k] = row.get(i * N + k, 0) + a
                    b = A[i, k]
                    if b:
                        row[k * N + j] = row.get(k * N + j, 0) - b
                row = {c: v for c, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows


def commutant_dimension(mats) -> int:
    rank, _ = rank_fraction_free(commutant_rows(mats))
    return N * N - rank


def _q(g: GroupElement) -> Matrix:
    return g.matrix.map(lambda v: v.value)


def shape_constraints() -> dict:
    """The elements each template must commute with."""
    Q = Rationals()
    h1 = Matrix.diag(list(PRINTED_H1_DIAG))
    h2 = Matrix.diag(list(PRINTED_H2_DIAG))
    w1, w2 = PRINTED_W1, PRINTED_W2
    w1i, w2i = w1.inverse(), w2.inverse()
    return {
        "x1": [h1, w2 @ w1 @ w2 @ w1i @ w2i],              # h_{a1}(-1), w_{3a1+2a2}
        "x2": [h2, w1 @ w2 @ w1 @ w2i @ w1i],              # h_{a2}(-1), w_{2a1+a2}
        "h_t": [h1, h2, _q(weyl_element(root(6), 1, Q)), _q(root_element(root(6), 1, Q))],
    }


def _failing_variables(entries: dict, mats) -> list[str]:
    out = []
    variables = template_variables(entries)
    for v in variables:
        M = instantiate(entries, {u: int(u == v) for u in variables})
        if any(not (M @ A == A @ M) for A in mats):
            out.append(v)
    return out


def _symbolic_commutes(entries: dict, mats) -> bool:
    variables = template_variables(entries)
    ring = TruncatedPoly(len(variables), 2, names=variables)
    M = instantiate(entries, {v: ring.var(i) for i, v in enumerate(variables)}, ring.zero)
    return all(M @ A == A @ M for A in mats)


def verify_block_shapes() -> list[CheckResult]:
    cons = shape_constraints()
    templates = {
        "x1": (x1_template_entries(), x1_template_entries(printed=True), 52),
        "x2": (x2_template_entries(), x2_template_entries(printed=True), 52),
        "h_t": (torus_template_entries(), torus_template_entries(printed=True), 14),
    }
    out = []
    for name, (entries, printed, expected_dim) in templates.items():
        mats = cons[name]
        t0 = time.perf_counter()
        dim = commutant_dimension(mats)
        out.append(CheckResult(f"{name}: commutant dimension", dim == expected_dim,
                               {"dimension": dim, "expected": expected_dim}, time.perf_counter() - t0))

        t0 = time.perf_counter()
        ok = _symbolic_commutes(entries, mats)
        variables = template_variables(entries)
        span, _ = rank_fraction_free([r for r in linear_system_rows(entries, variables) if r])
        out.append(CheckResult(f"{name}: template commutes identically", ok,
                               {"variables": len(variables), "span": span}, time.perf_counter() - t0))
        out.append(CheckResult(f"{name}: template spans the commutant", ok and span == dim,
                               {"span": span, "dimension": dim}))

        bad = _failing_variables(printed, mats)
        out.append(CheckResult(f"{name}: printed template", not bad,
                               {"non-commuting variables": bad} if bad else None, info=True))

    t0 = time.perf_counter()
    for name, entries, target in (("x1", x1_template_entries(), PRINTED_X1), ("x2", x2_template_entries(), PRINTED_X2)):
        vals = {v: RESIDUES.get(v, 0) for v in template_variables(entries)}
        M = instantiate(entries, vals)
        diff = [(r, c, v) for r, c, v in (M - target).nonzero()]
        out.append(CheckResult(f"{name}: template at residues = generator", not diff,
                               {"differences": diff[:5]} if diff else None, time.perf_counter() - t0))
    return out


# -- basis changes C1..C4 ----------------------------------------------------------

LONG_PAIRS = ((3, 4), (9, 10), (11, 12))
SHORT_PAIRS = ((1, 2), (5, 6), (7, 8))


def basis_change(kind: str, p, ring: Ring) -> Matrix:
    """C1/C2: pair blocks [[1,p],[p,1]] on long/short roots; C3/C4: scalar p on long/short roots."""
    one, zero = ring.one, ring.zero
    M = [[one if i == j else zero for j in range(N)] for i in range(N)]
    pairs = LONG_PAIRS if kind in ("C1", "C3") else SHORT_PAIRS
    for a, b in pairs:
        if kind in ("C1", "C2"):
            M[a - 1][b - 1] = p
            M[b - 1][a - 1] = p
        elif kind in ("C3", "C4"):
            M[a - 1][a - 1] = p
            M[b - 1][b - 1] = p
        else:
            raise ValueError(f"unknown basis change {kind!r}")
    return Matrix(M)


def basis_change_commute() -> list[CheckResult]:
    ring = TruncatedPoly(4, 3, names=["p", "q", "a", "b"])
    p, q, a, b = ring.gens()
    C = {"C1": basis_change("C1", p, ring), "C2": basis_change("C2", q, ring),
         "C3": basis_change("C3", a, ring), "C4": basis_change("C4", b, ring)}
    w = {"w1": PRINTED_W1.to_ring(ring), "w2": PRINTED_W2.to_ring(ring)}
    out = []
    for cn, cm in C.items():
        for wn, wm in w.items():
            out.append(CheckResult(f"{cn} commutes with {wn}", cm @ wm == wm @ cm))
    names = list(C)
    for i, x in enumerate(names):
        for y in names[i + 1:]:
            out.append(CheckResult(f"{x}{y} = {y}{x}", C[x] @ C[y] == C[y] @ C[x]))
    zero_c1 = basis_change("C1", ring.zero, ring)
    out.append(CheckResult("C1 at 0 is the identity", zero_c1 == Matrix.identity(N, one=ring.one, zero=ring.zero)))
    return out


# -- involutions and Cartan blocks ------------------------------------------------

def _residue_rank(M: Matrix, ring: Ring) -> int:
    if isinstance(ring, IntegersMod):
        rows = [{j: int(ring.residue(M[i, j]).value) % ring.p for j in range(N) if ring.residue(M[i, j])}
                for i in range(N)]
        return rank_mod_p([r for r in rows if r], N, ring.p)
    rows = []
    for i in range(N):
        row = {}
        for j in range(N):
            v = M[i, j]
            c = v.constant() if isinstance(ring, TruncatedPoly) else Fraction(v.value)
            if c:
                row[j] = c
        if row:
            rows.append(row)
    return rank_fraction_free(rows)[0]


def involution_split(a: GroupElement) -> tuple[int, int]:
    """Ranks of (1+a)/2 and (1-a)/2 over the residue field."""
    ring = a.ring
    E = Matrix.identity(N, one=ring.one, zero=ring.zero)
    if not (a.matrix @ a.matrix == E):
        raise GroupError("involution_split needs a^2 = 1")
    half = ring(2).inv()
    e = (E + a.matrix).scale(half)
    if not (e @ e == e):
        raise GroupError("(1+a)/2 is not idempotent")
    f = E - e
    r0, r1 = _residue_rank(e, ring), _residue_rank(f, ring)
    assert r0 + r1 == N
    return r0, r1


def weyl_hblock(r: Root) -> list[list[int]]:
    """Restriction of w_r(1) to the Cartan positions 13, 14."""
    if r not in (root(1), root(2)):
        raise ValueError(f"Cartan block only defined for the simple roots, got {r}")
    M = weyl_element(r, 1, Rationals()).matrix
    return [[int(M[i, j].value) for j in (12, 13)] for i in (12, 13)]
