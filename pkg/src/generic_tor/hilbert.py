"""Integer Laurent polynomials in ``t`` and Hilbert numerators of monomial ideals."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping, Sequence


class TPoly:
    """Integer Laurent polynomial in one variable ``t`` (immutable)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}

    @classmethod
    def t(cls, e: int = 1) -> "TPoly":
        return cls({e: 1})

    @classmethod
    def const(cls, c: int) -> "TPoly":
        return cls({0: c})

    @classmethod
    def from_list(cls, cs: Sequence[int]) -> "TPoly":
        return cls({i: c for i, c in enumerate(cs)})

    @staticmethod
    def _lift(x) -> "TPoly":
        if isinstance(x, TPoly):
            return x
        if isinstance(x, int):
            return TPoly({0: x})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return TPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return TPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return TPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = TPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, d: int) -> "TPoly":
        return TPoly({e + d: c for e, c in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __call__(self, x):
        return sum(c * x**e for e, c in self.coeffs.items())

    def divmod_one_minus_t(self, k: int):
        """Divide by ``(1-t)^k`` as far as exact; returns ``(quotient, times)``."""
        q, times = self, 0
        while times < k and q.coeffs and q(1) == 0:
            q = _div_one_minus_t(q)
            times += 1
        return q, times

    def to_dict(self) -> dict:
        return {str(e): c for e, c in sorted(self.coeffs.items())}

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "t" if e == 1 else f"t^{e}" if e > 0 else f"t^({e})"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not out:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(out)

    __repr__ = __str__


def _div_one_minus_t(p: TPoly) -> TPoly:
    # p(t) = (1 - t) q(t); q_e = sum_{f <= e} p_f
    lo, hi = min(p.coeffs), max(p.coeffs)
    out, run = {}, 0
    for e in range(lo, hi):
        run += p.coeffs.get(e, 0)
        out[e] = run
    return TPoly(out)


def _minimalize(gens: Iterable[tuple]) -> list:
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def hilbert_numerator(gens: Iterable[tuple], weights: Sequence[int]) -> TPoly:
    """Numerator ``N(t)`` of the Hilbert series ``N(t)/prod(1 - t^w_i)`` of ``S/J``.

    ``J`` is the monomial ideal generated by exponent vectors ``gens``.
    Pivots on a power of the most frequent variable.
    """
    return _hn(tuple(_minimalize(gens)), tuple(weights))


def _deg(m, w):
    return sum(a * b for a, b in zip(m, w))


def _hn(gens: tuple, w: tuple) -> TPoly:
    if not gens:
        return TPoly.const(1)
    if any(not any(g) for g in gens):
        return TPoly()
    freq = Counter(i for g in gens for i, e in enumerate(g) if e)
    var, count = max(freq.items(), key=lambda kv: (kv[1], -kv[0]))
    if count == 1:
        out = TPoly.const(1)
        for g in gens:
            out = out * (1 - TPoly.t(_deg(g, w)))
        return out
    e = min(g[var] for g in gens if g[var])
    pivot = tuple(e if i == var else 0 for i in range(len(w)))
    plus = _minimalize(gens + (pivot,))
    colon = _minimalize(tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens)
    return _hn(tuple(plus), w) + _hn(tuple(colon), w).shift(e * w[var])
