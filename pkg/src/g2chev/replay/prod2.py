"""Normal form lambda * t(s1) t(s2) x_+(t) x_-(u) and its recovery from 15 entries.

Conventions (chosen so the entry formulas below hold):

* ``t_{a1}(s) = h_{a1}(s^2) h_{a2}(s^3)`` and ``t_{a2}(s) = h_{a1}(s) h_{a2}(s^2)``,
  i.e. t_{ai}(s) scales the root line of b = n1 a1 + n2 a2 by s^{n_i};
* the negative-root factors are ``x_{-a}(-u)`` in terms of ``root_element``.

With P = lambda / (s1^3 s2^2) and Q = lambda / (s1^3 s2):

    x[12,12] = P              x[12,10] = -P u2         x[12,8] = P u3
    x[12,6]  = P u4           x[12,4]  = -P u5         x[12,14] = -P (u6 - u2 u5)
    x[10,12] = Q t2           x[10,10] = Q (1 - t2 u2) x[10,8] = -Q (u1 - t2 u3)

and six more entries give s1, t1, t3, t4, t5, t6 by a fixed-point iteration,
each equation having one unit-coefficient unknown.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..chevalley import build_generators
from ..matrix import Matrix
from ..ring import IntegersMod, NotInvertibleError, Ring, TruncatedPoly
from ..rootsys import POSITIVE, root

DESIGNATED = ((12, 12), (12, 10), (12, 8), (12, 6), (12, 4), (12, 14), (10, 12), (10, 10), (10, 8),
              (14, 12), (4, 12), (4, 6), (8, 8), (14, 6), (14, 8))


class NormalFormError(ValueError):
    """Input not in the asserted normal form."""


@dataclass
class TorusUnipotentParams:
    lam: object
    s1: object
    s2: object
    t: list = field(default_factory=list)   # t1..t6
    u: list = field(default_factory=list)   # u1..u6

    @classmethod
    def trivial(cls, ring: Ring) -> "TorusUnipotentParams":
        return cls(ring.one, ring.one, ring.one, [ring.zero] * 6, [ring.zero] * 6)

    @classmethod
    def random(cls, ring: Ring, rng: random.Random) -> "TorusUnipotentParams":
        return cls(
            ring.random_unit(rng),
            ring.random_unit_one(rng),
            ring.random_unit_one(rng),
            [ring.random_radical(rng) for _ in range(6)],
            [ring.random_radical(rng) for _ in range(6)],
        )

    def values(self) -> list:
        return [self.lam, self.s1, self.s2, *self.t, *self.u]

    def __eq__(self, other):
        return isinstance(other, TorusUnipotentParams) and all(a == b for a, b in zip(self.values(), other.values()))

    def as_dict(self) -> dict:
        out = {"lambda": str(self.lam), "s1": str(self.s1), "s2": str(self.s2)}
        out.update({f"t{i + 1}": str(v) for i, v in enumerate(self.t)})
        out.update({f"u{i + 1}": str(v) for i, v in enumerate(self.u)})
        return out


def _position_weights() -> list[tuple[int, int]]:
    out = []
    for n1, n2 in POSITIVE:
        out += [(n1, n2), (-n1, -n2)]
    return out + [(0, 0), (0, 0)]


def _power(s, n: int):
    return s ** n if n >= 0 else s.inv() ** (-n)


def coweight_torus(i: int, s, ring: Ring) -> Matrix:
    """t_{ai}(s): diagonal, s^{n_i} on the line of n1 a1 + n2 a2."""
    s = ring(s)
    return Matrix.diag([_power(s, w[i - 1]) for w in _position_weights()], zero=ring.zero)


def _times_root_element(g: Matrix, r, t, ring: Ring) -> Matrix:
    """g x_r(t) = g + sum_j t^j g (X_r^j / j!), the divided powers being sparse integer matrices."""
    rows = [list(row) for row in g.rows]
    tp = ring.one
    for D in build_generators().generator(r).divided_powers[1:]:
        tp = tp * t
        entries = D.nonzero()
        for i, grow in enumerate(g.rows):
            acc: dict = {}
            for j, c, val in entries:
                v = grow[j - 1]
                if v:
                    acc[c] = acc[c] + v * val if c in acc else v * val
            for c, v in acc.items():
                if v:
                    rows[i][c - 1] = rows[i][c - 1] + v * tp
    return Matrix(rows)


def assemble(p: TorusUnipotentParams, ring: Ring) -> Matrix:
    g = coweight_torus(1, ring(p.s1), ring) @ coweight_torus(2, ring(p.s2), ring)
    for i in range(6):
        if p.t[i]:
            g = _times_root_element(g, root(i + 1), ring(p.t[i]), ring)
    for i in range(6):
        if p.u[i]:
            g = _times_root_element(g, root(-(i + 1)), -ring(p.u[i]), ring)
    return g.scale(ring(p.lam))


def _unit_inverse(v, what: str):
    try:
        if not v.is_unit():
            raise NotInvertibleError(v, v.ring)
        return v.inv()
    except NotInvertibleError:
        raise NormalFormError(f"input not in the asserted normal form: {what} = {v} is not a unit") from None


def _max_iterations(ring: Ring) -> int:
    if isinstance(ring, IntegersMod):
        return 4 * ring.k + 4
    if isinstance(ring, TruncatedPoly):
        return 4 * ring.d + 4
    return 8


def prod2_extract(X: Matrix, ring: Ring, check: bool = True) -> TorusUnipotentParams:
    """Read the normal-form parameters of X off the designated entries.

    With ``check`` the parameters are reassembled and compared with X, so any
    input outside lambda * G(R, J) raises NormalFormError.
    """
    x = lambda r, c: ring(X[r - 1, c - 1])  # noqa: E731
    P = x(12, 12)
    Pi = _unit_inverse(P, "x[12,12]")
    u2 = -x(12, 10) * Pi
    u3 = x(12, 8) * Pi
    u4 = x(12, 6) * Pi
    u5 = -x(12, 4) * Pi
    u6 = -x(12, 14) * Pi + u2 * u5
    # x[10,10] + u2 x[10,12] = Q (1 - t2 u2 + t2 u2) = Q
    Q = x(10, 10) + u2 * x(10, 12)
    Qi = _unit_inverse(Q, "x[10,10] + u2 x[10,12]")
    t2 = x(10, 12) * Qi
    u1 = -x(10, 8) * Qi + t2 * u3
    s2 = Q * Pi

    x88, x412, x46, x1412, x146, x148 = x(8, 8), x(4, 12), x(4, 6), x(14, 12), x(14, 6), x(14, 8)
    _unit_inverse(s2, "s2")
    s1, t1, t3, t4, t5, t6 = ring.one, ring.zero, ring.zero, ring.zero, ring.zero, ring.zero
    for _ in range(_max_iterations(ring)):
        lam = P * s1 ** 3 * s2 ** 2
        lami = _unit_inverse(lam, "lambda")
        A = t5 + 3 * t1 * t4 + 3 * t1 * t1 * t3 - t1 ** 3 * t2
        B = t2 * t5 + 3 * t3 * t4 + 2 * t6
        inner = 1 - 3 * t1 * u1 - 3 * u3 * t3 + 3 * u3 * t1 * t2
        new = (
            x88 * _unit_inverse(P * s2 * inner, "x[8,8] pivot"),                       # s1
            -x46 * s2 * lami + 2 * t1 * t1 * u1 - t1 ** 3 * u1 * u1 + u4 * A,          # t1
            -x146 * lami - 2 * t4 * u1 - t5 * u1 * u1 + u4 * B,                        # t3
            x148 * lami - t5 * u1 - u3 * B,                                            # t4
            x412 * s2 * lami - (3 * t1 * t4 + 3 * t1 * t1 * t3 - t1 ** 3 * t2),       # t5
            (x1412 * lami - t2 * t5 - 3 * t3 * t4) * ring(2).inv(),                    # t6
        )
        if new == (s1, t1, t3, t4, t5, t6):
            break
        s1, t1, t3, t4, t5, t6 = new
    else:
        raise NormalFormError("input not in the asserted normal form: s1, t1, t3..t6 did not stabilize")
    lam = P * s1 ** 3 * s2 ** 2
    out = TorusUnipotentParams(lam, s1, s2, [t1, t2, t3, t4, t5, t6], [u1, u2, u3, u4, u5, u6])
    if check and not (assemble(out, ring) == X):
        raise NormalFormError("input not in the asserted normal form: reassembly differs")
    return out


def roundtrip_trials(ring: Ring, trials: int = 100, seed: int = 0) -> dict:
    """Random parameters -> matrix -> parameters -> matrix; counts exact recoveries.

    A trial succeeds when all 15 parameters come back exactly and the
    matrix reassembled from them equals the input.
    """
    rng = random.Random(seed)
    failures = []
    for k in range(trials):
        p = TorusUnipotentParams.random(ring, rng)
        X = assemble(p, ring)
        try:
            got = prod2_extract(X, ring, check=False)
        except NormalFormError as exc:
            failures.append({"trial": k, "params": p.as_dict(), "error": str(exc)})
            continue
        if not (got == p):
            failures.append({"trial": k, "params": p.as_dict(), "recovered": got.as_dict()})
        elif not (assemble(got, ring) == X):
            failures.append({"trial": k, "params": p.as_dict(), "reassembly": "differs"})
    return {"ring": ring.descriptor, "trials": trials, "seed": seed, "recovered": trials - len(failures),
            "failures": failures[:3]}
