"""Sparse multivariate polynomials over an exact field.

Monomials are plain exponent tuples.  A :class:`Ring` fixes the variables,
the coefficient field, positive grading weights and a monomial order; the
order is realized as a sort key so comparisons are tuple comparisons.
"""

from __future__ import annotations

import functools
import operator
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .fields import QQ, Field

Monomial = tuple


class RingMismatchError(ValueError):
    pass


@functools.lru_cache(maxsize=None)
def _order_key(order: str, weights: tuple) -> "callable":
    n = len(weights)

    def grevlex_part(m, lo, hi):
        d = 0
        for i in range(lo, hi):
            d += weights[i] * m[i]
        return (d,) + tuple(-m[i] for i in range(hi - 1, lo - 1, -1))

    if order == "grevlex":
        def key(m):
            return grevlex_part(m, 0, n)
    elif order == "lex":
        def key(m):
            return m
    elif order.startswith("elim:"):
        k = int(order[5:])

        def key(m):
            return grevlex_part(m, 0, k) + grevlex_part(m, k, n)
    else:
        raise ValueError(f"unknown monomial order {order!r}")
    return functools.lru_cache(maxsize=1 << 18)(key)


def block_elimination(k: int) -> str:
    return f"elim:{k}"


@dataclass(frozen=True)
class Ring:
    """Polynomial ring descriptor.

    ``order`` is ``"grevlex"``, ``"lex"`` or ``"elim:k"`` (the first ``k``
    variables are eliminated: compared first, by weighted grevlex).
    """

    variables: tuple
    field: Field = QQ
    weights: tuple = None
    order: str = "grevlex"
    _index: dict = dc_field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        n = len(self.variables)
        if len(set(self.variables)) != n:
            raise ValueError("variable names must be distinct")
        for v in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise ValueError(f"bad variable name {v!r}")
        w = tuple(self.weights) if self.weights is not None else (1,) * n
        if len(w) != n or any(int(x) < 1 for x in w):
            raise ValueError("weights must be positive integers, one per variable")
        object.__setattr__(self, "weights", tuple(int(x) for x in w))
        if self.order.startswith("elim:"):
            k = int(self.order[5:])
            if not 1 <= k < n:
                raise ValueError("block elimination needs 1 <= k < number of variables")
        elif self.order not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.order!r}")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.variables)})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def key(self):
        return _order_key(self.order, self.weights)

    def degree(self, m: Monomial) -> int:
        return sum(map(operator.mul, m, self.weights))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def with_order(self, order: str) -> "Ring":
        return Ring(self.variables, self.field, self.weights, order)

    def with_field(self, field: Field) -> "Ring":
        return Ring(self.variables, field, self.weights, self.order)

    def zero_monomial(self) -> Monomial:
        return (0,) * self.nvars

    # construction helpers
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {self.zero_monomial(): c} if c != 0 else {})

    def var(self, name) -> "Polynomial":
        i = name if isinstance(name, int) else self.index(name)
        m = [0] * self.nvars
        m[i] = 1
        return Polynomial(self, {tuple(m): 1})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, m: Monomial, c=1) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {tuple(m): c} if c != 0 else {})

    def __call__(self, obj) -> "Polynomial":
        if isinstance(obj, Polynomial):
            if obj.ring.variables != self.variables or obj.ring.field != self.field:
                raise RingMismatchError("polynomial from a different ring")
            return obj if obj.ring == self else Polynomial(self, obj.coeffs)
        if isinstance(obj, str):
            return parse_polynomial(obj, self)
        return self.constant(obj)

    def __str__(self):
        return f"{self.field!r}[{', '.join(self.variables)}]"


def compare_monomials(a: Sequence[int], b: Sequence[int], order: str = "grevlex",
                      weights: Sequence[int] | None = None) -> int:
    """Return -1, 0, 1 as ``a`` is less than, equal to or greater than ``b``."""
    if len(a) != len(b):
        raise ValueError("monomials of different lengths")
    w = tuple(weights) if weights is not None else (1,) * len(a)
    key = _order_key(order, w)
    ka, kb = key(tuple(a)), key(tuple(b))
    return (ka > kb) - (ka < kb)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.add, a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.sub, a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(map(operator.le, a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


class Polynomial:
    """Immutable sparse polynomial; ``coeffs`` maps monomials to nonzero coefficients."""

    __slots__ = ("ring", "coeffs", "_sorted")

    def __init__(self, ring: Ring, coeffs: Mapping):
        self.ring = ring
        self.coeffs = coeffs
        self._sorted = None

    @classmethod
    def from_terms(cls, ring: Ring, terms: Iterable) -> "Polynomial":
        F = ring.field
        acc: dict = {}
        for m, c in terms:
            m = tuple(m)
            acc[m] = acc.get(m, 0) + F(c)
        return cls(ring, {m: F.normalize(c) for m, c in acc.items() if F.normalize(c) != 0})

    @property
    def terms(self) -> list:
        """Terms ``(monomial, coefficient)`` in strictly descending order."""
        if self._sorted is None:
            key = self.ring.key
            self._sorted = sorted(self.coeffs.items(), key=lambda t: key(t[0]), reverse=True)
        return self._sorted

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    @property
    def lead_monomial(self) -> Monomial:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0][0]

    @property
    def lead_coeff(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0][1]

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.coeffs)

    def constant_value(self):
        return self.coeffs.get(self.ring.zero_monomial(), 0)

    def degree(self) -> int:
        """Weighted degree (max over terms); -1 for zero."""
        if not self.coeffs:
            return -1
        return max(self.ring.degree(m) for m in self.coeffs)

    def is_homogeneous(self) -> bool:
        return len({self.ring.degree(m) for m in self.coeffs}) <= 1

    def variables_used(self) -> set:
        used = set()
        for m in self.coeffs:
            used.update(i for i, e in enumerate(m) if e)
        return used

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                if other.ring.variables == self.ring.variables and other.ring.field == self.ring.field:
                    return Polynomial(self.ring, other.coeffs)
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = F.normalize(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {m: F.normalize(-c) for m, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out: dict = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(map(operator.add, m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, {m: v for m, c in out.items() if (v := F.normalize(c))})

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: F.normalize(v * c) for m, v in self.coeffs.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self.scale(self.ring.field.inv(self.lead_coeff))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.variables == other.ring.variables and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _format_monomial(m: Monomial, names) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if not f.coeffs:
        return "0"
    F = f.ring.field
    names = f.ring.variables
    pieces = []
    for m, c in f.terms:
        mono = _format_monomial(m, names)
        if F.characteristic == 0:
            neg = c < 0
            mag = -c if neg else c
        else:
            neg, mag = False, c
        cs = F.format(mag)
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.ring = ring
        self.tokens = []
        for num, name, op in _TOKEN.findall(text):
            if num:
                self.tokens.append(("num", int(num)))
            elif name:
                self.tokens.append(("var", name))
            elif op.strip():
                self.tokens.append(("op", op))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if op is not None and tok != ("op", op):
            raise ValueError(f"expected {op!r}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            f = self.factor()
            if op == "*":
                acc = acc * f
            else:
                if not f.is_constant() or f.is_zero():
                    raise ValueError("division only by nonzero constants")
                acc = acc.scale(self.ring.field.inv(f.constant_value()))
        return acc

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.constant(val)
        if kind == "var":
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            e = self.expr()
            self.take(")")
            return e
        if (kind, val) == ("op", "-"):
            return -self.factor()
        raise ValueError(f"unexpected token {val!r}")


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse strings like ``"x0^2*x3 - 2*x1*x2"`` or ``"3/2*x - 1"``."""
    p = _Parser(text, ring)
    if not p.tokens:
        raise ValueError("empty polynomial string")
    out = p.expr()
    if p.pos != len(p.tokens):
        raise ValueError(f"trailing input in {text!r}")
    return out


@dataclass(frozen=True)
class RingMap:
    """Substitution homomorphism sending source variable i to ``images[i]``."""

    source: Ring
    target: Ring
    images: tuple

    def __post_init__(self):
        imgs = tuple(self.target(p) for p in self.images)
        if len(imgs) != self.source.nvars:
            raise ValueError("need one image per source variable")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, ring: Ring) -> "RingMap":
        return cls(ring, ring, tuple(ring.gens()))

    @classmethod
    def from_dict(cls, source: Ring, target: Ring, assignment: Mapping) -> "RingMap":
        """Variables not mentioned map to the same-named target variable."""
        imgs = []
        for v in source.variables:
            if v in assignment:
                imgs.append(target(assignment[v]))
            else:
                imgs.append(target.var(v))
        return cls(source, target, tuple(imgs))

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply_ring_map(self, f)

    def compose(self, inner: "RingMap") -> "RingMap":
        """``self ∘ inner``."""
        if inner.target.variables != self.source.variables:
            raise RingMismatchError("maps do not compose")
        return RingMap(inner.source, self.target, tuple(self(p) for p in inner.images))


def apply_ring_map(phi: RingMap, f: Polynomial) -> Polynomial:
    if f.ring.variables != phi.source.variables or f.ring.field != phi.source.field:
        raise RingMismatchError("polynomial is not in the map's source ring")
    T = phi.target
    F = T.field
    powers: dict = {}

    def power(i, e):
        k = (i, e)
        if k not in powers:
            powers[k] = phi.images[i] ** e
        return powers[k]

    acc: dict = {}
    for m, c in f.coeffs.items():
        term = {T.zero_monomial(): c}
        for i, e in enumerate(m):
            if e:
                p = power(i, e)
                nxt: dict = {}
                for m1, c1 in term.items():
                    for m2, c2 in p.coeffs.items():
                        mm = tuple(map(operator.add, m1, m2))
                        nxt[mm] = nxt.get(mm, 0) + c1 * c2
                term = nxt
                if not term:
                    break
        for mm, cc in term.items():
            acc[mm] = acc.get(mm, 0) + cc
    return Polynomial(T, {m: v for m, c in acc.items() if (v := F.normalize(c))})
