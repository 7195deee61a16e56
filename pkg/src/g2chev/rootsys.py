"""The G2 root system.

Roots are kept in simple-root coordinates ``n1*a1 + n2*a2``.  The Euclidean
realization a1 = e1 - e2, a2 = -2e1 + e2 + e3 in R^3 is used only to get
inner products.

Numbering: the positive roots are
    a1 = (1,0), a2 = (0,1), a3 = a1+a2, a4 = 2a1+a2, a5 = 3a1+a2, a6 = 3a1+2a2
and index -i denotes -a_i.  In the 14-dimensional weight basis, root +i sits
at position 2i-1 and -i at position 2i; positions 13, 14 hold h1, h2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

POSITIVE = ((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2))

_E1 = (1, -1, 0)
_E2 = (-2, 1, 1)


class NotARootError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Root:
    n1: int
    n2: int

    def __post_init__(self):
        if (self.n1, self.n2) not in _COORD_TO_INDEX:
            raise NotARootError(f"({self.n1},{self.n2}) is not a root of G2")

    @property
    def index(self) -> int:
        return _COORD_TO_INDEX[(self.n1, self.n2)]

    @property
    def position(self) -> int:
        """1-based position of x_alpha in the weight basis."""
        i = self.index
        return 2 * i - 1 if i > 0 else -2 * i

    @property
    def euclidean(self) -> tuple[int, int, int]:
        return tuple(self.n1 * a + self.n2 * b for a, b in zip(_E1, _E2))

    @property
    def norm2(self) -> int:
        return dot(self, self)

    @property
    def is_long(self) -> bool:
        return self.norm2 == 6

    @property
    def is_positive(self) -> bool:
        return self.index > 0

    def __neg__(self) -> "Root":
        return Root(-self.n1, -self.n2)

    @property
    def name(self) -> str:
        i = self.index
        return f"a{i}" if i > 0 else f"-a{-i}"

    def __str__(self):
        return self.name


def _build_index():
    out = {}
    for i, c in enumerate(POSITIVE, start=1):
        out[c] = i
        out[(-c[0], -c[1])] = -i
    return out


_COORD_TO_INDEX = _build_index()


def root(index: int) -> Root:
    """Root by signed index: ``root(3)`` is a3, ``root(-3)`` is -a3."""
    if index == 0 or abs(index) > 6:
        raise NotARootError(f"no root with index {index}")
    n1, n2 = POSITIVE[abs(index) - 1]
    return Root(n1, n2) if index > 0 else Root(-n1, -n2)


def parse_root(text: str) -> Root:
    """Accepts ``a1``, ``-a3``, ``alpha2``, ``3`` or ``-5``."""
    t = text.strip().lower().replace("alpha", "a").replace("α", "a")
    sign = 1
    if t.startswith("-"):
        sign, t = -1, t[1:]
    elif t.startswith("+"):
        t = t[1:]
    if t.startswith("a"):
        t = t[1:].lstrip("_")
    try:
        return root(sign * int(t))
    except ValueError:
        raise NotARootError(f"cannot parse root {text!r}") from None


@lru_cache(maxsize=None)
def all_roots() -> tuple[Root, ...]:
    """a1, -a1, a2, -a2, ..., a6, -a6 (matches basis positions 1..12)."""
    out = []
    for i in range(1, 7):
        out.append(root(i))
        out.append(root(-i))
    return tuple(out)


def positive_roots() -> tuple[Root, ...]:
    return tuple(root(i) for i in range(1, 7))


def simple_roots() -> tuple[Root, Root]:
    return root(1), root(2)


def is_root(n1: int, n2: int) -> bool:
    return (n1, n2) in _COORD_TO_INDEX


def root_sum(a: Root, b: Root) -> Root | None:
    """a + b if it is a root, else None (this includes a + (-a) = 0)."""
    c = (a.n1 + b.n1, a.n2 + b.n2)
    return Root(*c) if c in _COORD_TO_INDEX else None


def dot(a: Root, b: Root) -> int:
    return sum(x * y for x, y in zip(a.euclidean, b.euclidean))


def cartan_int(a: Root, b: Root) -> int:
    """<a, b> = 2(a, b)/(b, b)."""
    num = 2 * dot(a, b)
    den = dot(b, b)
    assert num % den == 0
    return num // den


def reflect(a: Root, b: Root) -> Root:
    """w_b(a) = a - <a, b> b."""
    c = cartan_int(a, b)
    return Root(a.n1 - c * b.n1, a.n2 - c * b.n2)


def coroot_coefficients(a: Root) -> tuple[int, int]:
    """(m1, m2) with a^vee = m1 a1^vee + m2 a2^vee."""
    s1, s2 = simple_roots()
    n = a.norm2
    m1 = a.n1 * s1.norm2
    m2 = a.n2 * s2.norm2
    assert m1 % n == 0 and m2 % n == 0
    return m1 // n, m2 // n


def string_length_below(b: Root, a: Root) -> int:
    """Largest r with b - r*a a root (the r in N_{a,b} = +-(r+1))."""
    r = 0
    while is_root(b.n1 - (r + 1) * a.n1, b.n2 - (r + 1) * a.n2):
        r += 1
    return r


def orbit(a: Root, generators=None) -> set[Root]:
    gens = generators or list(positive_roots())
    seen = {a}
    frontier = [a]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = reflect(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def root_table() -> list[dict]:
    return [
        {
            "index": r.index,
            "name": r.name,
            "coords": (r.n1, r.n2),
            "euclidean": r.euclidean,
            "length2": r.norm2,
            "position": r.position,
        }
        for r in all_roots()
    ]
