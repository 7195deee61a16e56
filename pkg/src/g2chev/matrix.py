"""Dense square/rectangular matrices over ints, Fractions or ring values.

Entries only need ``+``, ``*``, unary ``-`` and truthiness (zero test).  Zero
entries are skipped in products, which matters: the 14x14 group elements are
mostly zeros and truncated-polynomial entries are expensive to multiply.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence


class MatrixError(ValueError):
    pass


class SingularMatrixError(MatrixError):
    pass


class Matrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence]):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise MatrixError("ragged rows")

    # -- construction --------------------------------------------------------

    @classmethod
    def identity(cls, n: int, one=1, zero=0) -> "Matrix":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None, zero=0) -> "Matrix":
        return cls([[zero] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def from_units(cls, n: int, entries: dict, zero=0, identity=False) -> "Matrix":
        """Build from ``{(row, col): value}`` with 1-based positions."""
        M = cls.identity(n, zero=zero) if identity else cls.zeros(n, zero=zero)
        for (r, c), v in entries.items():
            M.rows[r - 1][c - 1] = M.rows[r - 1][c - 1] + v
        return M

    @classmethod
    def diag(cls, values: Sequence, zero=0) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else zero for j in range(n)] for i in range(n)])

    # -- access --------------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entry(self, r: int, c: int):
        """1-based access, matching the e_{r,c} notation for matrix units."""
        return self.rows[r - 1][c - 1]

    def nonzero(self):
        """``[(row, col, value)]`` with 1-based positions."""
        return [(i + 1, j + 1, v) for i, row in enumerate(self.rows) for j, v in enumerate(row) if v]

    def is_zero(self) -> bool:
        return not any(v for row in self.rows for v in row)

    def map(self, f: Callable) -> "Matrix":
        return Matrix([[f(v) for v in row] for row in self.rows])

    def copy(self) -> "Matrix":
        return Matrix(self.rows)

    @property
    def T(self) -> "Matrix":
        return Matrix([list(col) for col in zip(*self.rows)])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        """0-based index lists."""
        return Matrix([[self.rows[i][j] for j in cols] for i in rows])

    def diagonal(self) -> list:
        return [self.rows[i][i] for i in range(min(self.nrows, self.ncols))]

    def is_diagonal(self) -> bool:
        return all(not v for i, row in enumerate(self.rows) for j, v in enumerate(row) if i != j)

    # -- arithmetic ----------------------------------------------------------

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise MatrixError(f"shape mismatch {self.shape} @ {other.shape}")
        B = other.rows
        m = other.ncols
        out = []
        for arow in self.rows:
            acc = [None] * m
            for k, a in enumerate(arow):
                if not a:
                    continue
                brow = B[k]
                for j in range(m):
                    b = brow[j]
                    if not b:
                        continue
                    p = a * b
                    acc[j] = p if acc[j] is None else acc[j] + p
            out.append(acc)
        zero = _zero_like(self, other)
        return Matrix([[zero if v is None else v for v in row] for row in out])

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "Matrix":
        return Matrix([[c * a if a else a for a in r] for r in self.rows])

    def __mul__(self, c):
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Matrix":
        if e < 0:
            return self.inverse() ** (-e)
        result = Matrix.identity(self.nrows, one=_one_like(self), zero=_zero_like(self, self))
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix) or self.shape != other.shape:
            return False
        return all(_entry_eq(a, b) for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    __hash__ = None

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    # -- inverse / determinant -----------------------------------------------

    def inverse(self) -> "Matrix":
        """Gauss-Jordan with unit pivots; valid over fields and local rings."""
        n = self.nrows
        if n != self.ncols:
            raise MatrixError("inverse of a non-square matrix")
        field = _is_plain(self)
        rows = [[Fraction(v) for v in r] if field else list(r) for r in self.rows]
        one = Fraction(1) if field else _one_like(self)
        zero = Fraction(0) if field else one - one
        aug = [r + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
        for c in range(n):
            piv = None
            for r in range(c, n):
                v = aug[r][c]
                if (v != 0) if field else v.is_unit():
                    piv = r
                    break
            if piv is None:
                raise SingularMatrixError("matrix is not invertible (no unit pivot in column %d)" % (c + 1))
            aug[c], aug[piv] = aug[piv], aug[c]
            pinv = 1 / aug[c][c] if field else aug[c][c].inv()
            aug[c] = [v * pinv if v else v for v in aug[c]]
            prow = aug[c]
            for r in range(n):
                if r == c:
                    continue
                f = aug[r][c]
                if not f:
                    continue
                aug[r] = [a - f * b if b else a for a, b in zip(aug[r], prow)]
        inv = Matrix([r[n:] for r in aug])
        if field and all(v.denominator == 1 for r in inv.rows for v in r) and _all_int(self):
            inv = inv.map(int)
        return inv

    def determinant(self):
        """Division-free (Berkowitz), so it is exact over any commutative ring."""
        n = self.nrows
        if n != self.ncols:
            raise MatrixError("determinant of a non-square matrix")
        A = self.rows
        one = _one_like(self)
        zero = one - one
        poly = [one]
        for r in range(n):
            sub = [row[:r] for row in A[:r]]
            R = A[r][:r]
            C = [A[i][r] for i in range(r)]
            t = [one, -A[r][r]]
            v = C
            for _ in range(r):
                t.append(-_dot(R, v, zero))
                v = [_dot(row, v, zero) for row in sub]
            new = []
            for i in range(r + 2):
                s = zero
                for j in range(max(0, i - len(t) + 1), min(i, r) + 1):
                    s = s + t[i - j] * poly[j]
                new.append(s)
            poly = new
        return poly[n] if n % 2 == 0 else -poly[n]

    def to_ring(self, ring) -> "Matrix":
        return Matrix([[ring(v) for v in r] for r in self.rows])

    def __repr__(self):
        return "Matrix(" + repr(self.rows) + ")"

    def pretty(self) -> str:
        cells = [[_fmt(v) for v in r] for r in self.rows]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(w) for c in r) for r in cells)


def _dot(a, b, zero):
    s = zero
    for x, y in zip(a, b):
        if x and y:
            s = s + x * y
    return s


def _fmt(v) -> str:
    if isinstance(v, Fraction) and v.denominator == 1:
        return str(v.numerator)
    return str(v)


def _entry_eq(a, b) -> bool:
    if isinstance(a, (int, Fraction)) and not isinstance(b, (int, Fraction)):
        return b == a
    return a == b


def _same_shape(a, b):
    if a.shape != b.shape:
        raise MatrixError(f"shape mismatch {a.shape} vs {b.shape}")


def _is_plain(M) -> bool:
    return all(isinstance(v, (int, Fraction)) for r in M.rows for v in r)


def _all_int(M) -> bool:
    return all(isinstance(v, int) for r in M.rows for v in r)


def _zero_like(a, b):
    for M in (a, b):
        for r in M.rows:
            for v in r:
                if not isinstance(v, (int, Fraction)):
                    return v.ring.zero
    for M in (a, b):
        for r in M.rows:
            for v in r:
                if isinstance(v, Fraction):
                    return Fraction(0)
    return 0


def _one_like(M):
    for r in M.rows:
        for v in r:
            if not isinstance(v, (int, Fraction)):
                return v.ring.one
    return 1
