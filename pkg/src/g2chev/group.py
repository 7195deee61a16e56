"""Elements of the adjoint Chevalley group G(R) of type G2 as 14x14 matrices."""

from __future__ import annotations

import ast
import json
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chevalley import N, build_generators
from .matrix import Matrix
from .ring import NotInvertibleError, Rationals, Ring, parse_ring, parse_value
from .rootsys import Root, parse_root


class GroupError(ValueError):
    pass


class WordError(GroupError):
    def __init__(self, message, atom_index=None):
        super().__init__(message if atom_index is None else f"atom {atom_index}: {message}")
        self.atom_index = atom_index


@dataclass(frozen=True)
class Atom:
    kind: str          # "x", "w" or "h"
    root: Root
    param: object      # ring value (or an unevaluated expression string inside a GroupWord)
    inverse: bool = False

    def __str__(self):
        s = f"{self.kind}({self.root.name},{self.param})"
        return s + "^-1" if self.inverse else s


class GroupElement:
    __slots__ = ("ring", "matrix", "word")

    def __init__(self, ring: Ring, matrix: Matrix, word: tuple | None = None):
        if matrix.shape != (N, N):
            raise GroupError(f"expected a {N}x{N} matrix, got {matrix.shape}")
        self.ring = ring
        self.matrix = matrix
        self.word = word

    @classmethod
    def identity(cls, ring: Ring) -> "GroupElement":
        return cls(ring, Matrix.identity(N, one=ring.one, zero=ring.zero), ())

    @classmethod
    def from_matrix(cls, ring: Ring, M: Matrix) -> "GroupElement":
        return cls(ring, M.to_ring(ring))

    def _check(self, other):
        if not isinstance(other, GroupElement):
            raise TypeError(f"expected GroupElement, got {type(other).__name__}")
        if other.ring != self.ring:
            from .ring import RingMismatchError

            raise RingMismatchError(f"{self.ring.descriptor} vs {other.ring.descriptor}")

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        word = self.word + other.word if self.word is not None and other.word is not None else None
        return GroupElement(self.ring, self.matrix @ other.matrix, word)

    multiply = __matmul__

    def inverse(self) -> "GroupElement":
        if self.word is not None:
            out = GroupElement.identity(self.ring)
            for atom in reversed(self.word):
                out = out @ _inverse_atom_element(self.ring, atom)
            return out
        return GroupElement(self.ring, self.matrix.inverse())

    def conjugate(self, h: "GroupElement") -> "GroupElement":
        """h g h^-1."""
        return h @ self @ h.inverse()

    def commutator(self, h: "GroupElement") -> "GroupElement":
        """g h g^-1 h^-1."""
        return self @ h @ self.inverse() @ h.inverse()

    def __pow__(self, e: int) -> "GroupElement":
        if e < 0:
            return self.inverse() ** (-e)
        out = GroupElement.identity(self.ring)
        for _ in range(e):
            out = out @ self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, GroupElement):
            return self.ring == other.ring and self.matrix == other.matrix
        if isinstance(other, Matrix):
            return self.matrix == other
        return NotImplemented

    __hash__ = None

    def determinant(self):
        return self.matrix.determinant()

    def is_identity(self) -> bool:
        return self.matrix == Matrix.identity(N)

    def entry(self, r: int, c: int):
        return self.matrix.entry(r, c)

    def word_string(self) -> str:
        return " ".join(str(a) for a in self.word) if self.word else ""

    def __repr__(self):
        w = f" word={self.word_string()!r}" if self.word else ""
        return f"<GroupElement over {self.ring.descriptor}{w}>"

    # -- interchange ---------------------------------------------------------

    def to_json(self) -> dict:
        ring = self.ring
        return {
            "ring": ring.descriptor,
            "entries": [[ring.serialize(ring(v)) for v in row] for row in self.matrix.rows],
        }

    @classmethod
    def from_json(cls, doc: dict | str) -> "GroupElement":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            ring = parse_ring(doc["ring"])
            rows = doc["entries"]
        except (KeyError, TypeError) as exc:
            raise GroupError(f"malformed matrix document: {exc}") from None
        if len(rows) != N or any(len(r) != N for r in rows):
            raise GroupError(f"entries must be a {N}x{N} array")
        M = Matrix([[ring.deserialize(v) for v in row] for row in rows])
        return cls(ring, M)


def _coerce(ring: Ring, t):
    return ring(t) if not hasattr(t, "ring") else ring(t)


def _exp_matrix(ring: Ring, r: Root, t) -> Matrix:
    gen = build_generators().generator(r)
    zero, one = ring.zero, ring.one
    rows = [[zero] * N for _ in range(N)]
    for i in range(N):
        rows[i][i] = one
    tp = one
    for j in (1, 2, 3):
        tp = tp * t
        D = gen.divided_powers[j]
        for i, drow in enumerate(D.rows):
            for k, c in enumerate(drow):
                if c:
                    rows[i][k] = rows[i][k] + tp * c
    return Matrix(rows)


def root_element(r: Root, t, ring: Ring | None = None) -> GroupElement:
    """x_a(t) = sum_j t^j X_a^j / j!."""
    ring = ring or getattr(t, "ring", None) or Rationals()
    t = ring(t)
    return GroupElement(ring, _exp_matrix(ring, r, t), (Atom("x", r, t),))


def weyl_element(r: Root, t, ring: Ring | None = None) -> GroupElement:
    """w_a(t) = x_a(t) x_-a(-t^-1) x_a(t)."""
    ring = ring or getattr(t, "ring", None) or Rationals()
    t = ring(t)
    if not t.is_unit():
        raise NotInvertibleError(t, ring)
    x = _exp_matrix(ring, r, t)
    M = x @ _exp_matrix(ring, -r, -t.inv()) @ x
    return GroupElement(ring, M, (Atom("w", r, t),))


def torus_element(r: Root, t, ring: Ring | None = None) -> GroupElement:
    """h_a(t) = w_a(t) w_a(1)^-1, and w_a(1)^-1 = w_a(-1)."""
    ring = ring or getattr(t, "ring", None) or Rationals()
    t = ring(t)
    if not t.is_unit():
        raise NotInvertibleError(t, ring)
    M = weyl_element(r, t, ring).matrix @ weyl_element(r, -ring.one, ring).matrix
    return GroupElement(ring, M, (Atom("h", r, t),))


def _atom_element(ring: Ring, atom: Atom) -> GroupElement:
    f = {"x": root_element, "w": weyl_element, "h": torus_element}[atom.kind]
    g = f(atom.root, atom.param, ring)
    return _inverse_atom_element(ring, Atom(atom.kind, atom.root, atom.param)) if atom.inverse else g


def _inverse_atom_element(ring: Ring, atom: Atom) -> GroupElement:
    if atom.inverse:
        return _atom_element(ring, Atom(atom.kind, atom.root, atom.param))
    t = ring(atom.param)
    if atom.kind == "x":
        return root_element(atom.root, -t, ring)
    if atom.kind == "w":
        return weyl_element(atom.root, -t, ring)
    return torus_element(atom.root, t.inv(), ring)


# -- words -------------------------------------------------------------------

_ATOM_RE = re.compile(r"([xwh])\(\s*([^,()]+?)\s*,\s*((?:[^()]|\([^()]*\))+?)\s*\)(\^-1)?")


@dataclass(frozen=True)
class GroupWord:
    atoms: tuple  # Atoms with string parameter expressions

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        text = text.strip()
        atoms = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace() or text[pos] == "*":
                pos += 1
                continue
            m = _ATOM_RE.match(text, pos)
            if not m:
                raise WordError(f"cannot parse word near {text[pos:pos + 20]!r}", len(atoms))
            kind, rt, param, inv = m.groups()
            try:
                r = parse_root(rt)
            except ValueError as exc:
                raise WordError(str(exc), len(atoms)) from None
            atoms.append(Atom(kind, r, param.strip(), bool(inv)))
            pos = m.end()
        return cls(tuple(atoms))

    def __str__(self):
        return " ".join(str(a) for a in self.atoms)

    def reversed_inverse(self) -> "GroupWord":
        return GroupWord(tuple(Atom(a.kind, a.root, a.param, not a.inverse) for a in reversed(self.atoms)))


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def eval_param(expr, ring: Ring, params: dict | None = None):
    """Evaluate a parameter expression (numbers, bound names, + - * / and integer powers)."""
    if not isinstance(expr, str):
        return ring(expr)
    params = params or {}

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return ring(node.value)
        if isinstance(node, ast.Name):
            if node.id in params:
                return ring(params[node.id])
            names = getattr(ring, "names", ())
            if node.id in names:
                return ring.var(names.index(node.id))
            raise WordError(f"unbound parameter {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
            e = node.right
            if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub) and isinstance(e.operand, ast.Constant):
                return ev(node.left) ** (-int(e.operand.value))
            if isinstance(e, ast.Constant) and isinstance(e.value, int):
                return ev(node.left) ** e.value
        raise WordError(f"unsupported parameter expression {expr!r}")

    try:
        tree = ast.parse(expr.replace("^", "**"), mode="eval")
    except SyntaxError:
        raise WordError(f"cannot parse parameter {expr!r}") from None
    return ev(tree)


def evaluate_word(word: GroupWord | str, ring: Ring, params: dict | None = None) -> GroupElement:
    """Left-to-right product of the word's atoms."""
    if isinstance(word, str):
        word = GroupWord.parse(word)
    out = GroupElement.identity(ring)
    for i, atom in enumerate(word.atoms):
        try:
            t = eval_param(atom.param, ring, params)
        except WordError as exc:
            raise WordError(str(exc), i) from None
        except ZeroDivisionError as exc:
            raise WordError(str(exc), i) from None
        if atom.kind in "wh" and not t.is_unit():
            raise WordError(f"parameter {atom.param} = {t} of {atom.kind}-atom is not a unit", i)
        out = out @ _atom_element(ring, Atom(atom.kind, atom.root, t, atom.inverse))
    return out


def parse_params(items: Sequence[str], ring: Ring) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise WordError(f"parameter binding {item!r} must look like name=value")
        name, value = item.split("=", 1)
        out[name.strip()] = parse_value(ring, value)
    return out


def printed_w1(ring: Ring) -> GroupElement:
    """The explicit w1 matrix; equals weyl_element(a1, -1) for this pinning."""
    from .chevalley import PRINTED_W1

    return GroupElement.from_matrix(ring, PRINTED_W1)


def printed_w2(ring: Ring) -> GroupElement:
    from .chevalley import PRINTED_W2

    return GroupElement.from_matrix(ring, PRINTED_W2)


def as_fraction_matrix(g: GroupElement) -> Matrix:
    return g.matrix.map(lambda v: v.value if hasattr(v, "value") else Fraction(v))
