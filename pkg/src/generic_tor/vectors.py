"""Elements of free modules over a polynomial ring.

Internally a vector is a dict ``{(position, monomial): coefficient}``; an
ideal element is a vector supported in position 0.  :class:`ModuleElement`
wraps such a dict with its ring and ambient rank.
"""

from __future__ import annotations

import operator
from typing import Iterable, Sequence

from .poly import Polynomial, Ring, RingMap, RingMismatchError, apply_ring_map


def vec_from_polys(polys: Sequence[Polynomial]) -> dict:
    out = {}
    for i, p in enumerate(polys):
        for m, c in p.coeffs.items():
            out[(i, m)] = c
    return out


def vec_from_poly(p: Polynomial, pos: int = 0) -> dict:
    return {(pos, m): c for m, c in p.coeffs.items()}


def vec_component(vec: dict, ring: Ring, i: int) -> Polynomial:
    return Polynomial(ring, {m: c for (p, m), c in vec.items() if p == i})


def vec_to_polys(vec: dict, ring: Ring, rank: int) -> list:
    comps = [dict() for _ in range(rank)]
    for (p, m), c in vec.items():
        comps[p][m] = c
    return [Polynomial(ring, d) for d in comps]


def vec_add(a: dict, b: dict, F, scale=1) -> dict:
    """``a + scale*b``."""
    out = dict(a)
    norm = F.normalize
    for t, c in b.items():
        v = norm(out.get(t, 0) + scale * c)
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def vec_scale(a: dict, c, F) -> dict:
    norm = F.normalize
    if c == 0:
        return {}
    return {t: norm(v * c) for t, v in a.items()}


def vec_mul_poly(a: dict, f: Polynomial, F) -> dict:
    out: dict = {}
    add = operator.add
    for (p, m), c in a.items():
        for m2, c2 in f.coeffs.items():
            t = (p, tuple(map(add, m, m2)))
            out[t] = out.get(t, 0) + c * c2
    norm = F.normalize
    return {t: v for t, c in out.items() if (v := norm(c))}


def vec_shift(a: dict, offset: int) -> dict:
    return {(p + offset, m): c for (p, m), c in a.items()}


def vec_positions(a: dict) -> set:
    return {p for p, _ in a}


def vec_restrict(a: dict, lo: int, hi: int, offset: int = 0) -> dict:
    """Keep positions in ``[lo, hi)``, shifted down by ``lo - offset``."""
    return {(p - lo + offset, m): c for (p, m), c in a.items() if lo <= p < hi}


def vec_degrees(a: dict, ring: Ring, pos_degrees: Sequence[int]) -> set:
    w = ring.weights
    return {pos_degrees[p] + sum(map(operator.mul, m, w)) for p, m in a}


def vec_degree(a: dict, ring: Ring, pos_degrees) -> int | None:
    """Degree of a homogeneous vector, ``None`` if it is not homogeneous."""
    if pos_degrees is None or not a:
        return None
    ds = vec_degrees(a, ring, pos_degrees)
    return ds.pop() if len(ds) == 1 else None


def vec_map(a: dict, phi: RingMap, rank: int) -> dict:
    out: dict = {}
    src = phi.source
    for i, p in enumerate(vec_to_polys(a, src, rank)):
        if p:
            for m, c in apply_ring_map(phi, p).coeffs.items():
                out[(i, m)] = c
    return out


def matrix_times_vec(columns: Sequence[dict], v: dict, F) -> dict:
    """``A v`` where ``A`` is given by its columns and ``v`` indexes them."""
    out: dict = {}
    add = operator.add
    for (j, m2), c2 in v.items():
        for (p, m), c in columns[j].items():
            t = (p, tuple(map(add, m, m2)))
            out[t] = out.get(t, 0) + c * c2
    norm = F.normalize
    return {t: val for t, c in out.items() if (val := norm(c))}


class ModuleElement:
    """Element of the free module ``R^rank``."""

    __slots__ = ("ring", "rank", "terms")

    def __init__(self, ring: Ring, rank: int, terms: dict):
        self.ring = ring
        self.rank = rank
        self.terms = terms

    @classmethod
    def from_components(cls, ring: Ring, comps: Iterable) -> "ModuleElement":
        comps = [ring(c) for c in comps]
        return cls(ring, len(comps), vec_from_polys(comps))

    @property
    def components(self) -> list:
        return vec_to_polys(self.terms, self.ring, self.rank)

    def __getitem__(self, i) -> Polynomial:
        return vec_component(self.terms, self.ring, i)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        if other.rank != self.rank or other.ring.variables != self.ring.variables:
            raise RingMismatchError("module elements of different free modules")
        return other

    def __add__(self, other):
        other = self._check(other)
        return ModuleElement(self.ring, self.rank, vec_add(self.terms, other.terms, self.ring.field))

    def __sub__(self, other):
        other = self._check(other)
        return ModuleElement(self.ring, self.rank, vec_add(self.terms, other.terms, self.ring.field, -1))

    def __neg__(self):
        return ModuleElement(self.ring, self.rank, vec_scale(self.terms, -1, self.ring.field))

    def __rmul__(self, f):
        f = self.ring(f)
        return ModuleElement(self.ring, self.rank, vec_mul_poly(self.terms, f, self.ring.field))

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"
