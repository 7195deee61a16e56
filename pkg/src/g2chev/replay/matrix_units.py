"""All 196 matrix units as ring combinations of group elements.

Expressions form a DAG: leaves are group words (``x(a2,1)``, ``w(a1,-1)`` ...)
or E, inner nodes are linear combinations, products and references to
already built units.  Every recipe identity is normalized at build time by
evaluating it over Q, so a sign or scalar slip in an identity only changes
the recorded coefficient, never the result.

Order of construction:

    e[3,4]   = c * (x2 - E)^2                     then Weyl transport on long lines
    e[14,4]  = (x2 - E) e[4,4] + e[3,4]           right transport
    e[14,14] = (e[14,3](x2 - E) + e[14,4])(w2 - w1)   see below
    e[3,14]  = -1/2 (x2 - E) e[14,14]             left transport
    e[14,13] = e[14,3](x2 - E) + e[14,4] + 2 e[14,14]
    e[3,13]  = e[3,3](x2 - E) + 2 e[3,14] + e[3,4]
    e[3,2]   = e[3,13](x1 - E)                    transport on both sides
    e[13,13] = 1/4 (h1 + E)(h2 + E) - e[14,14]
    e[1,13]  = -1/2 (x1 - E) e[13,13]
    e[13,2]  = e[13,13](x1 - E)
    e[1,14]  = 1/3 e[1,1] x1 e[14,14]             the only step needing 1/3
    rest     = products e[k,m] e[m,l]

The identity -(e[14,3](x2 - E) + e[14,4])(w1 - E) gives 2 e[14,13] - 3 e[14,14],
not e[14,14]; the left factor is e[14,13] - 2 e[14,14], and right multiplication
by w2 - w1 isolates e[14,14].  The as-written value is kept in ``deviations``.

Every entry of a group element in rows {short, 13} x columns {long, 14} is
divisible by 3, so without 1/3 those units cannot be reached at all.
"""

from __future__ import annotations

import random
import time
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from ..group import evaluate_word
from ..matrix import Matrix
from ..ring import Rationals, Ring
from .conditions import CheckResult

N = 14
SHORT = (1, 2, 5, 6, 7, 8)
LONG = (3, 4, 9, 10, 11, 12)

X1, X2 = "x(a1,1)", "x(a2,1)"
W1, W2 = "w(a1,-1)", "w(a2,1)"       # the explicit w1, w2
H1, H2 = "h(a1,-1)", "h(a2,-1)"


# -- expressions ---------------------------------------------------------------

class Expr:
    def __add__(self, other):
        return Lin(((Fraction(1), self), (Fraction(1), other)))

    def __sub__(self, other):
        return Lin(((Fraction(1), self), (Fraction(-1), other)))

    def __rmul__(self, c):
        return Lin(((Fraction(c), self),))

    def __matmul__(self, other):
        return Prod((self, other))


@dataclass(frozen=True)
class Word(Expr):
    text: str

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class Ident(Expr):
    def __str__(self):
        return "E"


@dataclass(frozen=True)
class Unit(Expr):
    k: int
    l: int

    def __str__(self):
        return f"e[{self.k},{self.l}]"


@dataclass(frozen=True)
class Lin(Expr):
    terms: tuple

    def __str__(self):
        parts = []
        for c, e in self.terms:
            s = str(e)
            if isinstance(e, Lin):
                s = f"({s})"
            parts.append(s if c == 1 else f"-{s}" if c == -1 else f"{c}*{s}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class Prod(Expr):
    factors: tuple

    def __str__(self):
        return " ".join(f"({f})" if isinstance(f, Lin) else str(f) for f in self.factors)


E = Ident()


def minus_e(word: str) -> Expr:
    return Word(word) - E


class Evaluator:
    """Memoized evaluation of expressions over one ring."""

    def __init__(self, units: dict, ring: Ring):
        self.units = units
        self.ring = ring
        self.cache: dict = {}
        self.identity = Matrix.identity(N, one=ring.one, zero=ring.zero)

    def __call__(self, e: Expr) -> Matrix:
        hit = self.cache.get(e)
        if hit is not None:
            return hit
        ring = self.ring
        if isinstance(e, Word):
            out = evaluate_word(e.text, ring).matrix
        elif isinstance(e, Ident):
            out = self.identity
        elif isinstance(e, Unit):
            out = self(self.units[(e.k, e.l)])
        elif isinstance(e, Lin):
            out = None
            for c, t in e.terms:
                m = self(t).scale(ring(c))
                out = m if out is None else out + m
        elif isinstance(e, Prod):
            out = self(e.factors[0])
            for f in e.factors[1:]:
                out = out @ self(f)
        else:
            raise TypeError(f"not an expression: {e!r}")
        self.cache[e] = out
        return out


# -- Weyl transport ------------------------------------------------------------

def weyl_words() -> dict:
    """Distinct elements of <w1, w2> over Q with a shortest word for each."""
    Q = Rationals()
    gens = [W1, W2, W1 + "^-1", W2 + "^-1"]
    mats = {g: evaluate_word(g, Q).matrix for g in gens}
    start = Matrix.identity(N, one=Q.one, zero=Q.zero)
    seen = {_key(start): ("", start)}
    queue = deque([("", start)])
    while queue:
        word, m = queue.popleft()
        for g in gens:
            nm = m @ mats[g]
            k = _key(nm)
            if k not in seen:
                nw = f"{word} {g}".strip()
                seen[k] = (nw, nm)
                queue.append((nw, nm))
    return {w: m for w, m in seen.values()}


def _key(m: Matrix):
    return tuple(tuple(v.value for v in row) for row in m.rows)


def _single(vec) -> tuple | None:
    nz = [(i, v.value) for i, v in enumerate(vec) if v]
    if len(nz) == 1 and nz[0][1] in (1, -1):
        return nz[0][0] + 1, int(nz[0][1])
    return None


class Transport:
    def __init__(self):
        self.left: dict = {}    # (a, k) -> (sign, word):  word e_a = sign e_k
        self.right: dict = {}   # (b, l) -> (sign, word):  e_b^T word = sign e_l^T
        for w, m in sorted(weyl_words().items(), key=lambda kv: (len(kv[0]), kv[0])):
            if not w:
                continue
            for a in range(1, N + 1):
                col = _single([m[i, a - 1] for i in range(N)])
                if col and (a, col[0]) not in self.left:
                    self.left[(a, col[0])] = (col[1], w)
                row = _single([m[a - 1, j] for j in range(N)])
                if row and (a, row[0]) not in self.right:
                    self.right[(a, row[0])] = (row[1], w)

    def apply(self, seed: tuple, k: int, l: int) -> Expr:
        a, b = seed
        factors: list = []
        sign = 1
        if k != a:
            s, w = self.left[(a, k)]
            sign *= s
            factors.append(Word(w))
        factors.append(Unit(a, b))
        if l != b:
            s, w = self.right[(b, l)]
            sign *= s
            factors.append(Word(w))
        e = factors[0] if len(factors) == 1 else Prod(tuple(factors))
        return e if sign == 1 else Lin(((Fraction(-1), e),))


# -- generation ----------------------------------------------------------------

@dataclass
class MatrixUnits:
    units: dict           # (k, l) -> Expr
    coefficients: dict    # recipe label -> c with (identity as written) = c * e[k,l]
    order: list           # construction order
    deviations: dict      # identities that are not a multiple of their unit -> actual support

    def expression(self, k: int, l: int) -> str:
        return str(self.units[(k, l)])

    def evaluator(self, ring: Ring) -> Evaluator:
        return Evaluator(self.units, ring)


def unit_matrix(k: int, l: int, ring: Ring) -> Matrix:
    return Matrix.from_units(N, {(k, l): ring.one}, zero=ring.zero)


def generate_matrix_units() -> MatrixUnits:
    Q = Rationals()
    units: dict = {}
    coeffs: dict = {}
    order: list = []
    deviations: dict = {}
    ev = Evaluator(units, Q)
    tr = Transport()

    def add(k, l, e):
        if (k, l) not in units:
            units[(k, l)] = e
            order.append((k, l))

    def recipe(label, k, l, e):
        M = ev(e)
        c = M[k - 1, l - 1].value
        if not c or not (M == unit_matrix(k, l, Q).scale(Q(c))):
            raise ArithmeticError(f"recipe {label} does not give a multiple of e[{k},{l}]")
        coeffs[label] = c
        add(k, l, e if c == 1 else Lin(((1 / c, e),)))

    def transport(seed, rows, cols):
        for k in rows:
            for l in cols:
                if (k, l) not in units:
                    add(k, l, tr.apply(seed, k, l))

    x1, x2 = minus_e(X1), minus_e(X2)
    recipe("1/2 (x2 - E)^2", 3, 4, Fraction(1, 2) * (x2 @ x2))
    transport((3, 4), LONG, LONG)
    recipe("(x2 - E) e[4,4] + e[3,4]", 14, 4, x2 @ Unit(4, 4) + Unit(3, 4))
    transport((14, 4), (14,), LONG)
    left = Unit(14, 3) @ x2 + Unit(14, 4)
    written = ev(Fraction(-1) * (left @ minus_e(W1)))
    if not (written == unit_matrix(14, 14, Q)):
        deviations["-(e[14,3](x2 - E) + e[14,4])(w1 - E)"] = [[r, c, str(v)] for r, c, v in written.nonzero()]
    recipe("(e[14,3](x2 - E) + e[14,4])(w2 - w1)", 14, 14, left @ (Word(W2) - Word(W1)))
    recipe("-1/2 (x2 - E) e[14,14]", 3, 14, Fraction(-1, 2) * (x2 @ Unit(14, 14)))
    transport((3, 14), LONG, (14,))
    recipe("e[14,3](x2 - E) + e[14,4] + 2 e[14,14]", 14, 13,
           Lin(((Fraction(1), Unit(14, 3) @ x2), (Fraction(1), Unit(14, 4)), (Fraction(2), Unit(14, 14)))))
    recipe("e[3,3](x2 - E) + 2 e[3,14] + e[3,4]", 3, 13,
           Lin(((Fraction(1), Unit(3, 3) @ x2), (Fraction(2), Unit(3, 14)), (Fraction(1), Unit(3, 4)))))
    transport((3, 13), LONG, (13,))
    recipe("e[3,13](x1 - E)", 3, 2, Unit(3, 13) @ x1)
    transport((3, 2), LONG, SHORT)
    recipe("1/4 (h1 + E)(h2 + E) - e[14,14]", 13, 13,
           Fraction(1, 4) * ((Word(H1) + E) @ (Word(H2) + E)) - Unit(14, 14))
    recipe("-1/2 (x1 - E) e[13,13]", 1, 13, Fraction(-1, 2) * (x1 @ Unit(13, 13)))
    transport((1, 13), SHORT, (13,))
    recipe("e[13,13](x1 - E)", 13, 2, Unit(13, 13) @ x1)
    transport((13, 2), (13,), SHORT)
    add(1, 1, Unit(1, 13) @ Unit(13, 1))
    recipe("e[1,1] x1 e[14,14]", 1, 14, Prod((Unit(1, 1), Word(X1), Unit(14, 14))))

    # products of units for the rest
    while len(units) < N * N:
        grew = False
        for k in range(1, N + 1):
            for l in range(1, N + 1):
                if (k, l) in units:
                    continue
                for m in range(1, N + 1):
                    if (k, m) in units and (m, l) in units:
                        add(k, l, Unit(k, m) @ Unit(m, l))
                        grew = True
                        break
        if not grew:
            missing = [kl for kl in ((k, l) for k in range(1, N + 1) for l in range(1, N + 1)) if kl not in units]
            raise ArithmeticError(f"matrix units not reached: {missing[:5]}")
    return MatrixUnits(units, coeffs, order, deviations)


def verify_matrix_units(ring: Ring, mu: MatrixUnits | None = None, triples: int = 50, seed: int = 0) -> list[CheckResult]:
    mu = mu or generate_matrix_units()
    ev = mu.evaluator(ring)
    t0 = time.perf_counter()
    bad = []
    for k, l in mu.order:
        if not (ev(Unit(k, l)) == unit_matrix(k, l, ring)):
            bad.append([k, l])
    out = [CheckResult(f"matrix units over {ring.descriptor}: 196 exact", not bad,
                       {"mismatch": bad[:5]} if bad else {"count": len(mu.order)}, time.perf_counter() - t0)]
    t0 = time.perf_counter()
    rng = random.Random(seed)
    wrong = []
    for _ in range(triples):
        k, l, m = (rng.randint(1, N) for _ in range(3))
        if not (ev(Unit(k, l)) @ ev(Unit(l, m)) == ev(Unit(k, m))):
            wrong.append([k, l, m])
    out.append(CheckResult(f"matrix units over {ring.descriptor}: {triples} product triples", not wrong,
                           {"failing": wrong[:5]} if wrong else None, time.perf_counter() - t0))
    return out


def three_obstruction() -> CheckResult:
    """Generators x_{+-a1}(1), x_{+-a2}(1) are 0 mod 3 on rows {short,13} x cols {long,14}.

    Matrices with that block divisible by 3 form a subring, so over a local
    ring where 3 is not a unit (Z/9, say) the units e[1,3], e[13,14] ... are
    not in the ring generated by the group.
    """
    Q = Rationals()
    rows = SHORT + (13,)
    cols = LONG + (14,)
    words = [f"x({s}a{i},1)" for i in (1, 2) for s in ("", "-")]
    hits = []
    for w in words:
        M = evaluate_word(w, Q).matrix
        hits += [(w, r, c) for r in rows for c in cols if Fraction(M[r - 1, c - 1].value) % 3]
    return CheckResult("matrix units need 1/3: short-to-long block of every generator divisible by 3", not hits,
                       {"offending": hits[:3]} if hits else None, info=True)
