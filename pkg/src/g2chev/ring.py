"""Coefficient rings: rationals, Z/p^k (p >= 5) and truncated polynomial rings.

All three contain 1/2 and 1/3.  Z/p^k and the truncated rings are local, so
every element is either a unit or lies in the radical; the rationals are a
field (radical {0}).

Elements are immutable and carry a reference to their ring.  Arithmetic with
plain ``int`` (and ``Fraction`` where it makes sense) is coerced
automatically, so integer matrices can be multiplied against ring matrices
without conversion.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from math import gcd
from typing import Iterable


class RingError(ValueError):
    pass


class RingMismatchError(RingError):
    """Operands come from different rings."""


class NotInvertibleError(ZeroDivisionError):
    def __init__(self, value, ring):
        super().__init__(f"{value} is not invertible in this ring ({ring.descriptor})")
        self.value = value
        self.ring = ring


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Ring:
    """Base class; concrete rings provide ``__call__`` and the element type."""

    descriptor = "?"
    is_local = True

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __repr__(self):
        return f"<ring {self.descriptor}>"

    def __eq__(self, other):
        return isinstance(other, Ring) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def random_unit(self, rng: random.Random):
        while True:
            x = self.random_element(rng)
            if x.is_unit():
                return x

    def random_unit_one(self, rng: random.Random):
        """A unit congruent to 1 modulo the radical."""
        return self.one + self.random_radical(rng)


class _Value:
    __slots__ = ()

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __radd__(self, other):
        return self + other

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        other = self.ring(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.ring(other) * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __hash__(self):
        return hash((self.ring.descriptor, self._key()))

    def is_unit(self) -> bool:
        raise NotImplementedError

    def in_radical(self) -> bool:
        return not self.is_unit()


# -- rationals ---------------------------------------------------------------


class Rationals(Ring):
    descriptor = "q"
    is_local = False

    def __call__(self, value) -> "QValue":
        if isinstance(value, QValue):
            return value
        if isinstance(value, _Value):
            raise RingMismatchError(f"cannot coerce {value.ring.descriptor} value into q")
        return QValue(self, Fraction(value))

    def residue_ring(self):
        return self

    def residue(self, x):
        return x

    def random_element(self, rng, height=9):
        return QValue(self, Fraction(rng.randint(-height, height), rng.randint(1, height)))

    def random_radical(self, rng):
        return self.zero

    def serialize(self, x) -> str:
        v = x.value
        return f"{v.numerator}/{v.denominator}"

    def deserialize(self, obj):
        if isinstance(obj, str):
            return self(Fraction(obj))
        return self(obj)


class QValue(_Value):
    __slots__ = ("ring", "value")

    def __init__(self, ring, value: Fraction):
        self.ring = ring
        self.value = value

    def _key(self):
        return self.value

    def _coerce(self, other):
        if isinstance(other, QValue):
            return other.value
        if isinstance(other, (int, Fraction)):
            return other
        if isinstance(other, _Value):
            raise RingMismatchError(f"q vs {other.ring.descriptor}")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QValue(self.ring, self.value + o)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QValue(self.ring, self.value * o)

    def __neg__(self):
        return QValue(self.ring, -self.value)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.value == o

    __hash__ = _Value.__hash__

    def __bool__(self):
        return self.value != 0

    def is_unit(self):
        return self.value != 0

    def in_radical(self):
        return self.value == 0

    def inv(self):
        if not self.value:
            raise NotInvertibleError(self, self.ring)
        return QValue(self.ring, 1 / self.value)

    def __repr__(self):
        return str(self.value)


# -- integers modulo p^k -----------------------------------------------------


class IntegersMod(Ring):
    """Z/p^k for a prime p >= 5: local, residue field Z/p."""

    def __init__(self, p: int, k: int = 1):
        if not _is_prime(p) or p < 5:
            raise RingError(f"modulus base must be a prime >= 5, got {p}")
        if k < 1:
            raise RingError(f"exponent must be >= 1, got {k}")
        self.p = p
        self.k = k
        self.n = p ** k
        self.descriptor = f"zmod:{p}^{k}"

    def __call__(self, value) -> "ModValue":
        if isinstance(value, ModValue):
            if value.ring is not self and value.ring != self:
                raise RingMismatchError(f"{value.ring.descriptor} vs {self.descriptor}")
            return value
        if isinstance(value, _Value):
            raise RingMismatchError(f"cannot coerce {value.ring.descriptor} value into {self.descriptor}")
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise NotInvertibleError(value.denominator, self)
            return ModValue(self, value.numerator * pow(value.denominator, -1, self.n) % self.n)
        return ModValue(self, int(value) % self.n)

    def residue_ring(self):
        if self.k == 1:
            return self
        return IntegersMod(self.p, 1)

    def residue(self, x):
        return self.residue_ring()(x.value)

    def random_element(self, rng):
        return ModValue(self, rng.randrange(self.n))

    def random_radical(self, rng):
        return ModValue(self, self.p * rng.randrange(self.n // self.p))

    def serialize(self, x):
        return x.value

    def deserialize(self, obj):
        return self(int(obj))


class ModValue(_Value):
    __slots__ = ("ring", "value")

    def __init__(self, ring, value: int):
        self.ring = ring
        self.value = value

    def _key(self):
        return self.value

    def _coerce(self, other):
        if isinstance(other, ModValue):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(f"{self.ring.descriptor} vs {other.ring.descriptor}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return self.ring(other).value
        if isinstance(other, _Value):
            raise RingMismatchError(f"{self.ring.descriptor} vs {other.ring.descriptor}")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModValue(self.ring, (self.value + o) % self.ring.n)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModValue(self.ring, (self.value * o) % self.ring.n)

    def __neg__(self):
        return ModValue(self.ring, (-self.value) % self.ring.n)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.value == o % self.ring.n

    __hash__ = _Value.__hash__

    def __bool__(self):
        return self.value != 0

    def is_unit(self):
        return self.value % self.ring.p != 0

    def inv(self):
        if not self.is_unit():
            raise NotInvertibleError(self, self.ring)
        return ModValue(self.ring, pow(self.value, -1, self.ring.n))

    def __repr__(self):
        return str(self.value)


# -- truncated polynomial rings ----------------------------------------------
#
# A monomial is a sorted tuple of variable indices with repetition, so
# eps0*eps3^2 is (0, 3, 3) and its total degree is the tuple length.


def _integral(terms: dict) -> tuple[int, list]:
    """(D, [(mono, D*c)]) with D the lcm of the coefficient denominators."""
    den = 1
    for c in terms.values():
        q = c.denominator
        if q != 1 and den % q:
            den = den * q // gcd(den, q)
    if den == 1:
        return 1, [(m, c.numerator) for m, c in terms.items()]
    return den, [(m, c.numerator * (den // c.denominator)) for m, c in terms.items()]


def _scaled(terms: dict, c: Fraction) -> dict:
    cn, cd = c.numerator, c.denominator
    return {m: Fraction(v.numerator * cn, v.denominator * cd) for m, v in terms.items()}


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    if len(a) == 1 and len(b) == 1:
        return a + b if a[0] <= b[0] else b + a
    return tuple(sorted(a + b))


class TruncatedPoly(Ring):
    """Q[eps_0, ..., eps_{m-1}] modulo all monomials of total degree >= d."""

    def __init__(self, m: int, d: int = 2, names: Iterable[str] | None = None):
        if m < 0:
            raise RingError(f"variable count must be >= 0, got {m}")
        if d < 1:
            raise RingError(f"truncation degree must be >= 1, got {d}")
        self.m = m
        self.d = d
        self.descriptor = f"trunc:{m},{d}"
        self.names = list(names) if names is not None else [f"e{i}" for i in range(m)]
        self._q = Rationals()

    def __call__(self, value) -> "TruncValue":
        if isinstance(value, TruncValue):
            if value.ring is not self and value.ring != self:
                raise RingMismatchError(f"{value.ring.descriptor} vs {self.descriptor}")
            return value
        if isinstance(value, QValue):
            value = value.value
        if isinstance(value, _Value):
            raise RingMismatchError(f"cannot coerce {value.ring.descriptor} value into {self.descriptor}")
        value = Fraction(value)
        return TruncValue(self, {(): value} if value else {})

    def var(self, i: int) -> "TruncValue":
        if not 0 <= i < self.m:
            raise IndexError(i)
        if self.d < 2:
            return TruncValue(self, {})
        return TruncValue(self, {(i,): Fraction(1)})

    def gens(self):
        return [self.var(i) for i in range(self.m)]

    def residue_ring(self):
        return self._q

    def residue(self, x):
        return self._q(x.constant())

    def random_element(self, rng, height=5, density=0.5):
        terms = {}
        c = rng.randint(-height, height)
        if c:
            terms[()] = Fraction(c)
        for mono in self._random_monomials(rng, density):
            c = Fraction(rng.randint(-height, height), rng.randint(1, 3))
            if c:
                terms[mono] = c
        return TruncValue(self, terms)

    def random_radical(self, rng):
        x = self.random_element(rng)
        return x - x.constant()

    def _random_monomials(self, rng, density):
        if self.m == 0:
            return []
        out = []
        for deg in range(1, self.d):
            count = max(1, int(density * self.m))
            for _ in range(count):
                out.append(tuple(sorted(rng.randrange(self.m) for _ in range(deg))))
        return out

    def serialize(self, x):
        out = []
        for mono, c in sorted(x.terms.items()):
            exps = [0] * self.m
            for i in mono:
                exps[i] += 1
            out.append({"monomial": exps, "coefficient": f"{c.numerator}/{c.denominator}"})
        return out

    def deserialize(self, obj):
        if isinstance(obj, (int, str)):
            return self(Fraction(obj))
        terms = {}
        for item in obj:
            exps = item["monomial"]
            if len(exps) != self.m:
                raise RingError(f"monomial {exps} has wrong length for {self.descriptor}")
            mono = tuple(i for i, e in enumerate(exps) for _ in range(e))
            if len(mono) >= self.d:
                continue
            c = Fraction(item["coefficient"])
            if c:
                terms[mono] = terms.get(mono, 0) + c
        return TruncValue(self, {k: v for k, v in terms.items() if v})


class TruncValue(_Value):
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms: dict):
        self.ring = ring
        self.terms = terms

    def _key(self):
        return frozenset(self.terms.items())

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def _coerce(self, other):
        if isinstance(other, TruncValue):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(f"{self.ring.descriptor} vs {other.ring.descriptor}")
            return other.terms
        if isinstance(other, (int, Fraction)):
            return {(): Fraction(other)} if other else {}
        if isinstance(other, QValue):
            return {(): other.value} if other.value else {}
        if isinstance(other, _Value):
            raise RingMismatchError(f"{self.ring.descriptor} vs {other.ring.descriptor}")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o:
            return self
        if not self.terms:
            return TruncValue(self.ring, dict(o))
        terms = dict(self.terms)
        for mono, c in o.items():
            v = terms.get(mono)
            if v is None:
                terms[mono] = c
            else:
                v += c
                if v:
                    terms[mono] = v
                else:
                    del terms[mono]
        return TruncValue(self.ring, terms)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        terms = dict(self.terms)
        for mono, c in o.items():
            v = terms.get(mono, 0) - c
            if v:
                terms[mono] = v
            else:
                terms.pop(mono, None)
        return TruncValue(self.ring, terms)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a = self.terms
        if not a or not o:
            return TruncValue(self.ring, {})
        if len(o) == 1 and () in o:
            c = o[()]
            if c == 1:
                return self
            return TruncValue(self.ring, _scaled(a, c))
        if len(a) == 1 and () in a:
            c = a[()]
            if c == 1:
                return TruncValue(self.ring, dict(o))
            return TruncValue(self.ring, _scaled(o, c))
        d = self.ring.d
        # integer numerators over a common denominator; over-degree pairs are never visited
        da, a_int = _integral(a)
        db, b_int = _integral(o)
        by_deg: list = [[] for _ in range(d)]
        for mb, cb in b_int:
            by_deg[len(mb)].append((mb, cb))
        acc: dict = {}
        for ma, ca in a_int:
            for k in range(d - len(ma)):
                for mb, cb in by_deg[k]:
                    mono = _mono_mul(ma, mb)
                    acc[mono] = acc.get(mono, 0) + ca * cb
        den = da * db
        terms = {m: Fraction(v, den) for m, v in acc.items() if v}
        return TruncValue(self.ring, terms)

    def __neg__(self):
        return TruncValue(self.ring, {m: -c for m, c in self.terms.items()})

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.terms == o

    __hash__ = _Value.__hash__

    def __bool__(self):
        return bool(self.terms)

    def is_unit(self):
        return self.constant() != 0

    def inv(self):
        c = self.constant()
        if not c:
            raise NotInvertibleError(self, self.ring)
        # x = c(1 - n)  =>  x^-1 = c^-1 (1 + n + ... + n^(d-1))
        n = -(self * (1 / c) - 1)
        total = self.ring.one
        power = self.ring.one
        for _ in range(1, self.ring.d):
            power = power * n
            if not power:
                break
            total = total + power
        return total * (1 / c)

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def variables(self) -> set:
        return {i for m in self.terms for i in m}

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(sorted(mono)), Fraction(0))

    def substitute(self, i: int, value: "TruncValue") -> "TruncValue":
        """Replace eps_i by ``value`` (truncating as usual)."""
        if not any(i in m for m in self.terms):
            return self
        ring = self.ring
        powers = [ring.one]
        out: dict = {}
        for mono, c in self.terms.items():
            k = mono.count(i)
            if k == 0:
                out[mono] = out.get(mono, 0) + c
                continue
            while len(powers) <= k:
                powers.append(powers[-1] * value)
            rest = tuple(j for j in mono if j != i)
            for m2, c2 in powers[k].terms.items():
                if len(rest) + len(m2) >= ring.d:
                    continue
                mono2 = _mono_mul(rest, m2)
                out[mono2] = out.get(mono2, 0) + c * c2
        return TruncValue(ring, {m: v for m, v in out.items() if v})

    def __repr__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for mono, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            if not mono:
                parts.append(str(c))
                continue
            body = "*".join(names[i] for i in mono)
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


# -- selector strings ----------------------------------------------------------

_ZMOD = re.compile(r"^zmod:(\d+)(?:\^(\d+))?$")
_TRUNC = re.compile(r"^trunc:(\d+),(\d+)$")


def parse_ring(selector: str) -> Ring:
    """Parse ``q``, ``zmod:p^k`` or ``trunc:m,d``."""
    s = selector.strip().lower()
    if s in ("q", "qq", "rationals"):
        return Rationals()
    m = _ZMOD.match(s)
    if m:
        return IntegersMod(int(m.group(1)), int(m.group(2) or 1))
    m = _TRUNC.match(s)
    if m:
        return TruncatedPoly(int(m.group(1)), int(m.group(2)))
    raise RingError(f"unknown ring selector {selector!r}; expected q, zmod:p^k or trunc:m,d")


def parse_value(ring: Ring, text: str):
    """Parse a scalar literal such as ``3``, ``-1/2`` or, in trunc rings, ``1+e0-2*e1``."""
    text = text.strip()
    if isinstance(ring, TruncatedPoly) and re.search(r"[a-z]", text.replace("/", "")):
        return _parse_trunc_expr(ring, text)
    return ring(Fraction(text))


def _parse_trunc_expr(ring: TruncatedPoly, text: str):
    index = {name: i for i, name in enumerate(ring.names)}
    total = ring.zero
    for sign, body in re.findall(r"([+-]?)\s*([^+-]+)", text.replace(" ", "")):
        term = ring.one
        for factor in body.split("*"):
            if factor in index:
                term = term * ring.var(index[factor])
            elif re.fullmatch(r"e\d+", factor) and int(factor[1:]) < ring.m:
                term = term * ring.var(int(factor[1:]))
            else:
                term = term * Fraction(factor)
        total = total - term if sign == "-" else total + term
    return total


def lcm_denominator(values) -> int:
    out = 1
    for v in values:
        den = Fraction(v).denominator
        out = out * den // gcd(out, den)
    return out
