"""Linearized normalizer system: is Z = 0 forced?

Unknowns: the entries of Z outside the 15 positions fixed to zero by the
normal form, and for each of the four equations (a = a1, a2, -a1, -a2) the
coefficients a1, a2, b1..b6, c1..c6.  Equation i reads

    Z x_a(1) - x_a(1) (Z + a_{1,i} T1 + a_{2,i} T2 + sum_j b_{j,i} X_{aj} + sum_j c_{j,i} X_{-aj}) = 0.

The kernel dimension is computed by fraction-free elimination over Q and by
modular elimination at three large primes with a CRT kernel reconstruction.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from ..chevalley import generator_matrix
from ..group import root_element, torus_element
from ..linalg import DEFAULT_PRIMES, apply_rows, kernel_crt, rank_fraction_free
from ..matrix import Matrix
from ..ring import Rationals
from ..rootsys import root
from .conditions import CheckResult

N = 14
ZEROED = ((4, 6), (4, 12), (8, 8), (10, 8), (10, 10), (10, 12), (12, 4), (12, 6),
          (12, 8), (12, 10), (12, 12), (12, 14), (14, 6), (14, 8), (14, 12))
T1_DIAG = (1, 1, 0, 0, 1, 1, 2, 2, 3, 3, 3, 3, 0, 0)
T2_DIAG = (0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 0, 0)
EQUATION_ROOTS = (1, 2, -1, -2)
COEFF_NAMES = ("a1", "a2") + tuple(f"b{j}" for j in range(1, 7)) + tuple(f"c{j}" for j in range(1, 7))


def z_positions() -> list[tuple[int, int]]:
    zero = set(ZEROED)
    return [(i, j) for i in range(1, N + 1) for j in range(1, N + 1) if (i, j) not in zero]


@dataclass
class NormalizerUnknowns:
    z: list = field(default_factory=z_positions)
    equations: tuple = EQUATION_ROOTS

    @property
    def count(self) -> int:
        return len(self.z) + len(self.equations) * len(COEFF_NAMES)

    def names(self) -> list[str]:
        out = [f"z{i},{j}" for i, j in self.z]
        for k in range(len(self.equations)):
            out += [f"{c},{k + 1}" for c in COEFF_NAMES]
        return out

    def coeff_index(self, eq: int, c: int) -> int:
        return len(self.z) + eq * len(COEFF_NAMES) + c


def torus_derivative(r) -> Matrix:
    """d/ds h_r(s) at s = 1: the exponents of h_r(2) as a diagonal matrix."""
    h = torus_element(r, 2, Rationals()).matrix
    diag = []
    for i in range(N):
        v = Fraction(h[i, i].value)
        k = 0
        while v != 1:
            if v.numerator % 2 == 0:
                v /= 2
                k += 1
            else:
                v *= 2
                k -= 1
        diag.append(k)
    return Matrix.diag(diag)


def _int(M: Matrix) -> Matrix:
    return M.map(lambda v: Fraction(v.value) if hasattr(v, "value") else Fraction(v))


def build_system(variant: str = "printed", equations=EQUATION_ROOTS) -> tuple[list[dict], NormalizerUnknowns]:
    """Sparse rows (column -> Fraction) of the linear system."""
    if variant == "printed":
        T = [Matrix.diag(list(T1_DIAG)), Matrix.diag(list(T2_DIAG))]
    elif variant == "derived":
        T = [torus_derivative(root(1)), torus_derivative(root(2))]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    basis = T + [generator_matrix(root(j)) for j in range(1, 7)] + [generator_matrix(root(-j)) for j in range(1, 7)]
    basis = [_int(B) for B in basis]
    unk = NormalizerUnknowns(equations=tuple(equations))
    zidx = {pos: k for k, pos in enumerate(unk.z)}
    rows = []
    for e, a in enumerate(unk.equations):
        x = _int(root_element(root(a), 1, Rationals()).matrix)
        xB = [x @ B for B in basis]
        for p in range(1, N + 1):
            for q in range(1, N + 1):
                row: dict = {}
                # (Z x)[p,q] = sum_k Z[p,k] x[k,q]
                for k in range(1, N + 1):
                    c = x[k - 1, q - 1]
                    if c and (p, k) in zidx:
                        v = zidx[(p, k)]
                        row[v] = row.get(v, 0) + c
                # -(x Z)[p,q]
                for k in range(1, N + 1):
                    c = x[p - 1, k - 1]
                    if c and (k, q) in zidx:
                        v = zidx[(k, q)]
                        row[v] = row.get(v, 0) - c
                for ci, M in enumerate(xB):
                    c = M[p - 1, q - 1]
                    if c:
                        v = unk.coeff_index(e, ci)
                        row[v] = row.get(v, 0) - c
                row = {k: Fraction(v) for k, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows, unk


@dataclass
class KernelReport:
    variant: str
    equations: tuple
    unknowns: int
    rank: int
    modular_ranks: list
    kernel: list | None
    seconds: float

    @property
    def kernel_dimension(self) -> int:
        return self.unknowns - self.rank

    @property
    def consistent(self) -> bool:
        return all(r == self.rank for r in self.modular_ranks) and (
            self.kernel is not None and len(self.kernel) == self.kernel_dimension)

    def as_dict(self) -> dict:
        return {"variant": self.variant, "equations": [str(root(a)) for a in self.equations],
                "unknowns": self.unknowns, "rank": self.rank, "kernel_dimension": self.kernel_dimension,
                "modular_ranks": self.modular_ranks, "cross_check": self.consistent,
                "timing": round(self.seconds, 3)}


def normalizer_kernel(variant: str = "printed", equations=EQUATION_ROOTS) -> KernelReport:
    t0 = time.perf_counter()
    rows, unk = build_system(variant, equations)
    rank, _ = rank_fraction_free(rows, unk.count)
    basis, ranks = kernel_crt(rows, unk.count, DEFAULT_PRIMES)
    if basis is not None and any(any(v) for b in basis for v in [apply_rows(rows, b)]):
        basis = None      # reconstruction is not an exact kernel vector
    return KernelReport(variant, tuple(equations), unk.count, rank, ranks, basis, time.perf_counter() - t0)


def kernel_support(report: KernelReport, names: list[str] | None = None) -> list[list[str]]:
    names = names or NormalizerUnknowns(equations=report.equations).names()
    return [[names[i] for i, v in enumerate(vec) if v] for vec in report.kernel or []]


def verify_normalizer() -> list[CheckResult]:
    out = []
    printed = normalizer_kernel("printed")
    out.append(CheckResult("normalizer: unknown count", printed.unknowns == 237, {"unknowns": printed.unknowns}))
    out.append(CheckResult("normalizer: kernel dimension 0 with T1, T2 as printed",
                           printed.kernel_dimension == 0 and printed.consistent,
                           {**printed.as_dict(), "kernel_support": kernel_support(printed)[:3]}, printed.seconds))
    derived = normalizer_kernel("derived")
    out.append(CheckResult("normalizer: derived torus generators", derived.kernel_dimension == 0 and derived.consistent,
                           {**derived.as_dict(), "kernel_support": kernel_support(derived)[:3]},
                           derived.seconds, info=True))
    dropped = normalizer_kernel("printed", equations=(1, 2, -1))
    out.append(CheckResult("normalizer: without the -a2 equation the kernel is nonzero",
                           dropped.kernel_dimension > 0 and dropped.consistent, dropped.as_dict(), dropped.seconds))
    return out
