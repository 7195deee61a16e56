"""Adjoint generators of G2 pinned to explicit integer matrices.

Nothing here chooses structure-constant signs abstractly.  The inputs are the
four explicit 14x14 integer matrices x_{a1}(1), x_{a2}(1), w1, w2 below; every
other generator is produced by Weyl conjugation

    x_{a3}(t) = w2 x_{a1}(t) w2^-1      x_{a4}(t) = w1 x_{a3}(t) w1^-1
    x_{a5}(t) = w1 x_{a2}(t) w1^-1      x_{a6}(t) = w2 x_{a5}(t) w2^-1
    x_{-a}(t) = w_a x_a(-t) w_a^-1

and the Lie algebra element X_a is read back as the nilpotent logarithm of
the unipotent at t = 1.  Structure constants are then matrix commutators of
these X_a, so they are whatever the explicit matrices force them to be.

The explicit w1 satisfies w1 = x_{a1}(-1) x_{-a1}(1) x_{a1}(-1), i.e. it is
w_{a1}(-1) = w_{a1}(1)^-1 for this pinning.  Conjugating by w or w^-1 gives
the same X_{-a} because w^2 = h_a(-1) centralizes x_a, so the generators do
not depend on that choice.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .matrix import Matrix
from .rootsys import (
    Root,
    all_roots,
    cartan_int,
    coroot_coefficients,
    positive_roots,
    root,
    root_sum,
    simple_roots,
    string_length_below,
)

N = 14


def _units(text: str, identity: bool = False) -> Matrix:
    """Parse ``E - e_{1,2} + 3e_{5,3} ...`` into an integer matrix."""
    entries: dict = {}
    for sign, coef, i, j in re.findall(r"([+-]?)\s*(\d*)\s*e_\{(\d+),+(\d+)\}", text):
        c = int(coef) if coef else 1
        if sign == "-":
            c = -c
        key = (int(i), int(j))
        entries[key] = entries.get(key, 0) + c
    return Matrix.from_units(N, entries, identity=identity)


PRINTED_X1 = _units(
    "-e_{1,2}-2e_{1,13}+3e_{1,14}-e_{4,6}-e_{4,8}-e_{4,10}+3e_{5,3}+2e_{6,8}+3e_{6,10}"
    "-3e_{7,3}-2e_{7,5}+3e_{8,10}+e_{9,3}+e_{9,5}-e_{9,7}+e_{13,2}",
    identity=True,
)
PRINTED_X2 = _units(
    "+e_{2,6}-e_{3,4}+e_{3,13}-2e_{3,14}-e_{5,1}+e_{10,12}-e_{11,9}+e_{14,4}",
    identity=True,
)
PRINTED_W1 = _units(
    "-e_{1,2}-e_{2,1}+e_{3,9}+e_{4,10}-e_{9,3}-e_{10,4}+e_{5,7}+e_{6,8}-e_{7,5}-e_{8,6}"
    "+e_{11,,11}+e_{12,12}-e_{13,13}+e_{14,14}+3e_{13,14}"
)
PRINTED_W2 = _units(
    "-e_{3,4}-e_{4,3}+e_{1,5}+e_{2,6}-e_{5,1}-e_{6,2}+e_{7,7}+e_{8,8}+e_{9,11}+e_{10,12}"
    "-e_{11,9}-e_{12,10}+e_{13,13}-e_{14,14}+e_{14,13}"
)
PRINTED_H1_DIAG = (1, 1, -1, -1, -1, -1, -1, -1, -1, -1, 1, 1, 1, 1)
PRINTED_H2_DIAG = (-1, -1, 1, 1, -1, -1, 1, 1, -1, -1, -1, -1, 1, 1)

IDENTITY = Matrix.identity(N)


class ChevalleyConsistencyError(RuntimeError):
    pass


def nilpotent_log(U: Matrix) -> Matrix:
    """log U for unipotent U, over the rationals."""
    n = U.nrows
    Nm = (U - Matrix.identity(n)).map(Fraction)
    total = Matrix.zeros(n, zero=Fraction(0))
    power = Matrix.identity(n, one=Fraction(1), zero=Fraction(0))
    for k in range(1, n + 1):
        power = power @ Nm
        if power.is_zero():
            break
        total = total + power.scale(Fraction((-1) ** (k + 1), k))
    else:
        raise ChevalleyConsistencyError("matrix is not unipotent")
    return total


def nilpotent_exp(X: Matrix, t=1) -> Matrix:
    n = X.nrows
    total = Matrix.identity(n, one=Fraction(1), zero=Fraction(0))
    power = total
    for k in range(1, n + 1):
        power = (power @ X).scale(Fraction(t) / k)
        if power.is_zero():
            break
        total = total + power
    return total


def _as_int(M: Matrix, what: str) -> Matrix:
    def conv(v):
        v = Fraction(v)
        if v.denominator != 1:
            raise ChevalleyConsistencyError(f"{what} is not integral (entry {v})")
        return int(v)

    return M.map(conv)


def _ratio(A: Matrix, B: Matrix):
    """c with A = c*B, or None."""
    c = None
    for ra, rb in zip(A.rows, B.rows):
        for a, b in zip(ra, rb):
            if b:
                q = Fraction(a) / b
                if c is None:
                    c = q
                elif c != q:
                    return None
            elif a:
                return None
    return c if c is not None else Fraction(0)


@dataclass
class AdjointGenerator:
    root: Root
    matrix: Matrix
    divided_powers: list  # X^j / j! for j = 0..3, integral

    def exp(self, t=1) -> Matrix:
        out = self.divided_powers[0]
        for j in (1, 2, 3):
            D = self.divided_powers[j]
            if not D.is_zero():
                out = out + D.scale(t ** j)
        return out


@dataclass
class StructureConstants:
    N: dict = field(default_factory=dict)        # (a, b) -> N_{a,b}
    cartan: dict = field(default_factory=dict)   # (i, a) -> eigenvalue of h_i on x_a
    coroot: dict = field(default_factory=dict)   # a -> (m1, m2) with [x_a, x_-a] = m1 h1 + m2 h2


@dataclass
class PropertyCheck:
    number: int
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self):
        return {
            "property": self.number,
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "checked": self.checked,
            "failures": [str(f) for f in self.failures],
        }


class ChevalleyData:
    """All 12 root generators, h1, h2 and derived constants."""

    def __init__(self):
        w1, w2 = PRINTED_W1, PRINTED_W2
        w1i, w2i = w1.inverse(), w2.inverse()
        a = {i: root(i) for i in range(-6, 7) if i}

        unip = {a[1]: PRINTED_X1, a[2]: PRINTED_X2}
        unip[a[3]] = w2 @ unip[a[1]] @ w2i
        unip[a[4]] = w1 @ unip[a[3]] @ w1i
        unip[a[5]] = w1 @ unip[a[2]] @ w1i
        unip[a[6]] = w2 @ unip[a[5]] @ w2i

        # Weyl representatives follow the same conjugation pattern
        reps = {a[1]: w1, a[2]: w2}
        reps[a[3]] = w2 @ w1 @ w2i
        reps[a[4]] = w1 @ reps[a[3]] @ w1i
        reps[a[5]] = w1 @ w2 @ w1i
        reps[a[6]] = w2 @ reps[a[5]] @ w2i
        self.weyl_reps = reps

        X = {}
        for r in positive_roots():
            X[r] = _as_int(nilpotent_log(unip[r]), f"log x_{r}(1)")
        for r in positive_roots():
            w = reps[r]
            X[-r] = -(w @ X[r] @ w.inverse())
        self.X = X

        self.generators = {}
        for r in all_roots():
            M = X[r]
            powers = [IDENTITY]
            P = IDENTITY
            for j in range(1, 4):
                P = P @ M
                powers.append(_as_int(P.map(Fraction).scale(Fraction(1, factorial(j))), f"X_{r}^{j}/{j}!"))
            if not (P @ M).is_zero():
                raise ChevalleyConsistencyError(f"X_{r}^4 != 0")
            if r.is_long and not powers[3].is_zero():
                raise ChevalleyConsistencyError(f"X_{r}^3 != 0 for long root {r}")
            self.generators[r] = AdjointGenerator(r, M, powers)

        s1, s2 = simple_roots()
        self.H = (X[s1].commutator(X[-s1]), X[s2].commutator(X[-s2]))
        self.constants = self._derive_constants()

    def _derive_constants(self) -> StructureConstants:
        sc = StructureConstants()
        X = self.X
        for a in all_roots():
            for i, Hi in enumerate(self.H, start=1):
                c = _ratio(Hi.commutator(X[a]), X[a])
                if c is None:
                    raise ChevalleyConsistencyError(f"[h{i}, x_{a}] is not a multiple of x_{a}")
                sc.cartan[(i, a)] = int(c)
            for b in all_roots():
                s = root_sum(a, b)
                if s is None:
                    continue
                c = _ratio(X[a].commutator(X[b]), X[s])
                if c is None or c.denominator != 1:
                    raise ChevalleyConsistencyError(f"[x_{a}, x_{b}] is not an integer multiple of x_{s}")
                sc.N[(a, b)] = int(c)
            C = X[a].commutator(X[-a])
            found = None
            for m1 in range(-4, 5):
                for m2 in range(-4, 5):
                    if C == self.H[0].scale(m1) + self.H[1].scale(m2):
                        found = (m1, m2)
            if found is None:
                raise ChevalleyConsistencyError(f"[x_{a}, x_-{a}] is not in span(h1, h2)")
            sc.coroot[a] = found
        return sc

    def generator(self, r: Root) -> AdjointGenerator:
        return self.generators[r]

    def structure_constant(self, a: Root, b: Root) -> int:
        return self.constants.N.get((a, b), 0)

    def check_properties(self) -> list[PropertyCheck]:
        X, H, sc = self.X, self.H, self.constants
        roots = all_roots()
        p1 = PropertyCheck(1, "[h_i, h_j] = 0")
        for i in range(2):
            for j in range(2):
                p1.checked += 1
                if not H[i].commutator(H[j]).is_zero():
                    p1.failures.append(f"[h{i+1}, h{j+1}] != 0")

        p2 = PropertyCheck(2, "[h_i, x_a] = <a, a_i> x_a")
        for i, si in enumerate(simple_roots()):
            for a in roots:
                p2.checked += 1
                expect = cartan_int(a, si)
                if H[i].commutator(X[a]) != X[a].scale(expect):
                    p2.failures.append(f"[h{i+1}, x_{a}] != {expect} x_{a}")

        p3 = PropertyCheck(3, "[x_a, x_-a] = m1 h1 + m2 h2 (a^vee = m1 a1^vee + m2 a2^vee)")
        for a in roots:
            p3.checked += 1
            m1, m2 = coroot_coefficients(a)
            if X[a].commutator(X[-a]) != H[0].scale(m1) + H[1].scale(m2):
                p3.failures.append(f"[x_{a}, x_{-a}] != {m1} h1 + {m2} h2")

        p4 = PropertyCheck(4, "a + b not a root => [x_a, x_b] = 0")
        for a in roots:
            for b in roots:
                if b == -a or root_sum(a, b) is not None:
                    continue
                p4.checked += 1
                if not X[a].commutator(X[b]).is_zero():
                    p4.failures.append(f"[x_{a}, x_{b}] != 0")

        p5 = PropertyCheck(5, "same length, a + b root => [x_a, x_b] = c x_(a+b), c = +-(r+1)")
        p6 = PropertyCheck(6, "a long, b short, a + b root => [x_a, x_b] = a' x_(a+b) + b' x_(a+2b) + ...")
        for a in roots:
            for b in roots:
                s = root_sum(a, b)
                if s is None:
                    continue
                C = X[a].commutator(X[b])
                if a.is_long == b.is_long:
                    p5.checked += 1
                    c = _ratio(C, X[s])
                    r = string_length_below(b, a)
                    if c is None or c.denominator != 1 or abs(c) != r + 1:
                        p5.failures.append(f"[x_{a}, x_{b}] = {c} x_{s}, expected +-{r + 1}")
                    elif sc.N[(b, a)] != -c:
                        p5.failures.append(f"N_{a},{b} != -N_{b},{a}")
                elif a.is_long:
                    p6.checked += 1
                    coeffs = _expand_along_string(C, a, b, X)
                    r = string_length_below(b, a)
                    if coeffs is None or abs(coeffs[0]) != r + 1:
                        p6.failures.append(f"[x_{a}, x_{b}] not an integral combination along the b-string")
                    elif sc.N[(b, a)] != -coeffs[0]:
                        p6.failures.append(f"N_{a},{b} != -N_{b},{a}")
        return [p1, p2, p3, p4, p5, p6]


def _expand_along_string(C: Matrix, a: Root, b: Root, X: dict):
    """Integers (c1, c2, ...) with C = c1 x_(a+b) + c2 x_(a+2b) + ..., else None."""
    coeffs = []
    rest = C.map(Fraction)
    k = 1
    while True:
        s = (a.n1 + k * b.n1, a.n2 + k * b.n2)
        try:
            target = Root(*s)
        except ValueError:
            break
        # coefficient read at the first nonzero entry of x_target
        r, c, v = X[target].nonzero()[0]
        coef = rest.entry(r, c) / v
        if coef.denominator != 1:
            return None
        coeffs.append(int(coef))
        rest = rest - X[target].scale(coef)
        k += 1
    return coeffs if rest.is_zero() else None


@lru_cache(maxsize=1)
def build_generators() -> ChevalleyData:
    """Construct and self-check the generators; raises on any violated property."""
    data = ChevalleyData()
    for p in data.check_properties():
        if not p.passed:
            raise ChevalleyConsistencyError(f"property {p.number} ({p.name}) violated: {p.failures[0]}")
    return data


def verify_chevalley_properties() -> list[PropertyCheck]:
    return ChevalleyData().check_properties()


def generator_matrix(r: Root) -> Matrix:
    return build_generators().X[r]


def weyl_rep(r: Root) -> Matrix:
    """Integer Weyl representative from the conjugation scheme (w1, w2 for the simple roots)."""
    data = build_generators()
    if r in data.weyl_reps:
        return data.weyl_reps[r]
    return data.weyl_reps[-r]
