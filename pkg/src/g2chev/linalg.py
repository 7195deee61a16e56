"""Exact rank and kernel computations for sparse rational linear systems.

A system is a list of rows, each row a ``{column: coefficient}`` dict with
int or Fraction coefficients.  Two independent routes are provided:

* ``rank_fraction_free`` keeps every row integral and primitive (content
  divided out after each elimination step), so no rational arithmetic
  happens at all;
* ``rank_mod_p`` reduces modulo a prime with numpy ``int64`` arithmetic.

``kernel_crt`` lifts a modular kernel basis from several primes back to Q
by CRT plus rational reconstruction, and the caller verifies it exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

import numpy as np

Row = dict

DEFAULT_PRIMES = (1_000_003, 998_244_353, 2_147_483_629)


def _integral_row(row: Row) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    out = {}
    for k, v in row.items():
        v = v * den
        if v:
            out[k] = int(v)
    return _primitive(out)


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def rank_fraction_free(rows: Sequence[Row], ncols: int | None = None) -> tuple[int, list[int]]:
    """Rank over Q and pivot columns, by integer-preserving elimination."""
    pivots: dict[int, dict] = {}
    order = []
    for raw in rows:
        row = _integral_row(raw)
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                pivots[col] = row
                order.append(col)
                break
            a = row[col]
            b = prow[col]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            new = {k: v * fa for k, v in row.items()}
            for k, v in prow.items():
                nv = new.get(k, 0) - v * fb
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = _primitive(new)
    return len(pivots), sorted(order)


def _dense_mod(rows: Sequence[Row], ncols: int, p: int) -> np.ndarray:
    A = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for k, v in row.items():
            if isinstance(v, Fraction):
                if v.denominator % p == 0:
                    raise ZeroDivisionError(f"denominator divisible by {p}")
                A[i, k] = v.numerator % p * pow(v.denominator, -1, p) % p
            else:
                A[i, k] = v % p
    return A


def rref_mod_p(rows: Sequence[Row], ncols: int, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p); returns (nonzero rows, pivot cols)."""
    A = _dense_mod(rows, ncols, p)
    m = A.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            # split the product to stay inside int64 for p < 2^31
            A[nzr] = (A[nzr] - (col[nzr, None] * A[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(rows: Sequence[Row], ncols: int, p: int) -> int:
    return len(rref_mod_p(rows, ncols, p)[1])


def kernel_mod_p(rows: Sequence[Row], ncols: int, p: int) -> tuple[list[np.ndarray], list[int]]:
    R, pivots = rref_mod_p(rows, ncols, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-R[i, f]) % p
        basis.append(v)
    return basis, pivots


def rational_reconstruction(a: int, m: int) -> Fraction | None:
    """Find n/d = a (mod m) with |n|, d <= sqrt(m/2), or None."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def crt(residues: Sequence[int], moduli: Sequence[int]) -> tuple[int, int]:
    x, m = 0, 1
    for r, p in zip(residues, moduli):
        t = (r - x) * pow(m, -1, p) % p
        x += m * t
        m *= p
    return x % m, m


def kernel_crt(rows: Sequence[Row], ncols: int, primes: Sequence[int] = DEFAULT_PRIMES):
    """Kernel basis over Q reconstructed from modular kernels.

    Returns ``(basis, ranks)`` where ``basis`` is a list of Fraction vectors
    (or ``None`` if the primes disagree on the pivot structure or a
    coordinate fails to reconstruct) and ``ranks`` the per-prime ranks.
    """
    results = [kernel_mod_p(rows, ncols, p) for p in primes]
    ranks = [len(piv) for _, piv in results]
    pivsets = [tuple(piv) for _, piv in results]
    if len(set(pivsets)) != 1:
        return None, ranks
    basis = []
    for j in range(len(results[0][0])):
        vec = []
        for c in range(ncols):
            x, m = crt([int(res[0][j][c]) for res in results], primes)
            q = rational_reconstruction(x, m)
            if q is None:
                return None, ranks
            vec.append(q)
        basis.append(vec)
    return basis, ranks


def apply_rows(rows: Sequence[Row], vec: Sequence) -> list:
    return [sum((c * vec[k] for k, c in row.items()), Fraction(0)) for row in rows]
