"""Gröbner bases for ideals and submodules of free modules.

Module terms are ordered position-over-term: a smaller position index is
larger, ties broken by the ring's monomial order.  Pair handling follows the
Gebauer–Möller installation (chain criterion, plus the product criterion
for ideals) with the normal selection strategy; ties go to the earliest
pair so results are deterministic.
"""

from __future__ import annotations

import heapq
import operator
from dataclasses import dataclass
from typing import Sequence

from .poly import Polynomial, Ring, RingMismatchError, mono_lcm
from .vectors import ModuleElement, vec_from_poly, vec_restrict

_le = operator.le
_add = operator.add
_sub = operator.sub


def _divides(a, b) -> bool:
    return all(map(_le, a, b))


def _coprime(a, b) -> bool:
    return not any(x and y for x, y in zip(a, b))


class _Engine:
    """Buchberger state over one ring; vectors are ``{(pos, mono): coeff}``."""

    def __init__(self, ring: Ring, pos_degrees: Sequence[int] | None = None):
        self.ring = ring
        F = ring.field
        self.norm = F.normalize
        self.inv = F.inv
        mkey = ring.key
        self._mkey = mkey
        self._nk: dict = {}
        self.pos_degrees = pos_degrees
        self.vecs: list = []
        self.lts: list = []
        self.active: dict = {}  # pos -> list of indices
        self.pairs: dict = {}
        self.heap: list = []
        self.rank1 = True

    def key(self, t):
        return (-t[0],) + self._mkey(t[1])

    def nkey(self, t):
        k = self._nk.get(t)
        if k is None:
            k = (t[0],) + tuple(-x for x in self._mkey(t[1]))
            self._nk[t] = k
        return k

    def lead(self, vec):
        return max(vec, key=self.key)

    def reduce(self, vec: dict, skip: int | None = None) -> dict:
        """Full normal form of ``vec`` modulo the active elements."""
        p = dict(vec)
        nk = self.nkey
        heap = [(nk(t), t) for t in p]
        heapq.heapify(heap)
        rem = {}
        norm = self.norm
        active = self.active
        lts = self.lts
        vecs = self.vecs
        while heap:
            t = heapq.heappop(heap)[1]
            c = p.pop(t, None)
            if c is None:
                continue
            pos, m = t
            for idx in active.get(pos, ()):
                if idx == skip:
                    continue
                lm = lts[idx][1]
                if all(map(_le, lm, m)):
                    q = tuple(map(_sub, m, lm))
                    for (gp, gm), gc in vecs[idx].items():
                        if gp == pos and gm == lm:
                            continue
                        nt = (gp, tuple(map(_add, gm, q)))
                        old = p.get(nt)
                        if old is None:
                            v = norm(-c * gc)
                            if v:
                                p[nt] = v
                                heapq.heappush(heap, (nk(nt), nt))
                        else:
                            v = norm(old - c * gc)
                            if v:
                                p[nt] = v
                            else:
                                del p[nt]
                    break
            else:
                rem[t] = c
        return rem

    def _monic(self, vec, lt):
        c = vec[lt]
        if c == 1:
            return vec
        ic = self.inv(c)
        norm = self.norm
        return {t: norm(v * ic) for t, v in vec.items()}

    def _pair_degree(self, pos, l):
        d = self.ring.degree(l)
        if self.pos_degrees is not None:
            d += self.pos_degrees[pos]
        return d

    def add(self, vec: dict) -> int:
        lt = self.lead(vec)
        vec = self._monic(vec, lt)
        h = len(self.vecs)
        self.vecs.append(vec)
        self.lts.append(lt)
        self._update(h)
        return h

    def _update(self, h):
        hp, hm = self.lts[h]
        lts = self.lts
        cands = list(self.active.get(hp, ()))
        lcms = {g: mono_lcm(hm, lts[g][1]) for g in cands}
        rank1 = self.rank1
        kept = []
        for k, g1 in enumerate(cands):
            if rank1 and _coprime(hm, lts[g1][1]):
                kept.append(g1)
                continue
            l1 = lcms[g1]
            if any(_divides(lcms[g2], l1) for g2 in cands[k + 1:]) or any(
                _divides(lcms[g2], l1) for g2 in kept
            ):
                continue
            kept.append(g1)
        new_pairs = [g for g in kept if not (rank1 and _coprime(hm, lts[g][1]))]
        for (i, j), l in list(self.pairs.items()):
            if lts[i][0] != hp:
                continue
            if _divides(hm, l) and mono_lcm(lts[i][1], hm) != l and mono_lcm(lts[j][1], hm) != l:
                del self.pairs[(i, j)]
        for g in new_pairs:
            l = lcms[g]
            self.pairs[(g, h)] = l
            heapq.heappush(self.heap, (self._pair_degree(hp, l), g, h))
        self.active[hp] = [g for g in cands if not _divides(hm, lts[g][1])] + [h]

    def spoly(self, i, j, l):
        pos = self.lts[i][0]
        qi = tuple(map(_sub, l, self.lts[i][1]))
        qj = tuple(map(_sub, l, self.lts[j][1]))
        out = {}
        for (p, m), c in self.vecs[i].items():
            out[(p, tuple(map(_add, m, qi)))] = c
        norm = self.norm
        for (p, m), c in self.vecs[j].items():
            t = (p, tuple(map(_add, m, qj)))
            v = norm(out.get(t, 0) - c)
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        del pos
        return out

    def run(self, inputs):
        inputs = [v for v in inputs if v]
        self.rank1 = all(p == 0 for v in inputs for p, _ in v)
        for v in inputs:
            r = self.reduce(v)
            if r:
                self.add(r)
        while self.heap:
            _, i, j = heapq.heappop(self.heap)
            l = self.pairs.pop((i, j), None)
            if l is None:
                continue
            r = self.reduce(self.spoly(i, j, l))
            if r:
                self.add(r)
        return self.reduced_basis()

    def reduced_basis(self) -> list:
        idxs = sorted((g for lst in self.active.values() for g in lst), key=lambda g: self.key(self.lts[g]),
                      reverse=True)
        out = []
        for g in idxs:
            lt = self.lts[g]
            c = self.vecs[g][lt]
            tail = {t: v for t, v in self.vecs[g].items() if t != lt}
            red = self.reduce(tail, skip=g)
            red[lt] = c
            out.append(red)
        return out


class Reducer:
    """Normal forms modulo a fixed Gröbner basis (given as vectors)."""

    def __init__(self, ring: Ring, basis: Sequence[dict]):
        self._e = _Engine(ring)
        for v in basis:
            lt = self._e.lead(v)
            self._e.vecs.append(self._e._monic(v, lt))
            self._e.lts.append(lt)
            self._e.active.setdefault(lt[0], []).append(len(self._e.vecs) - 1)

    def reduce(self, vec: dict) -> dict:
        return self._e.reduce(vec)

    def is_member(self, vec: dict) -> bool:
        return not self._e.reduce(vec)


def gb_vectors(ring: Ring, vecs: Sequence[dict], pos_degrees=None) -> list:
    """Reduced Gröbner basis of the submodule generated by ``vecs``."""
    return _Engine(ring, pos_degrees).run(vecs)


def syzygy_vectors(ring: Ring, cols: Sequence[dict], rank: int, pos_degrees=None, col_degrees=None) -> list:
    """Generators of ``{u : sum u_j cols_j = 0}`` via the module GB of ``(col_j, e_j)``.

    With position-over-term and the tracking positions placed after the
    ambient ones, the GB elements living purely in tracking positions
    generate the syzygy module.
    """
    m = len(cols)
    aug = []
    for j, c in enumerate(cols):
        v = dict(c)
        v[(rank + j, ring.zero_monomial())] = 1
        aug.append(v)
    pd = None
    if pos_degrees is not None and col_degrees is not None and None not in col_degrees:
        pd = list(pos_degrees) + list(col_degrees)
    gb = _Engine(ring, pd).run(aug)
    out = []
    for v in gb:
        if min(p for p, _ in v) >= rank:
            out.append(vec_restrict(v, rank, rank + m))
    return out


# ---------------------------------------------------------------- public API


@dataclass
class GroebnerBasis:
    ring: Ring
    elements: list
    rank: int | None = None  # None: ideal; otherwise a submodule of R^rank
    reduced: bool = True

    @property
    def vectors(self) -> list:
        if self.rank is None:
            return [vec_from_poly(p) for p in self.elements]
        return [e.terms for e in self.elements]

    def _vec(self, f):
        if self.rank is None:
            return vec_from_poly(self.ring(f))
        return f.terms

    def reduce(self, f):
        r = Reducer(self.ring, self.vectors).reduce(self._vec(f))
        if self.rank is None:
            return Polynomial(self.ring, {m: c for (_, m), c in r.items()})
        return ModuleElement(self.ring, self.rank, r)

    def contains(self, f) -> bool:
        return not Reducer(self.ring, self.vectors).reduce(self._vec(f))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.rank == other.rank and list(self.vectors) == list(other.vectors)


def _common_ring(polys) -> Ring:
    rings = {p.ring for p in polys}
    if len(rings) > 1:
        vs = {r.variables for r in rings}
        if len(vs) > 1:
            raise RingMismatchError("generators live in different rings")
    return next(iter(rings))


def divide(f: Polynomial, divisors: Sequence[Polynomial]):
    """Multivariate division; returns ``(quotients, remainder)``.

    Divisors are tried in list order at every step.
    """
    ring = f.ring
    for d in divisors:
        if d.ring.variables != ring.variables:
            raise RingMismatchError("divisor from a different ring")
        if d.is_zero():
            raise ZeroDivisionError("zero polynomial in divisor list")
    F = ring.field
    key = ring.key
    leads = [(d.lead_monomial, d.lead_coeff) for d in divisors]
    quots = [dict() for _ in divisors]
    p = dict(f.coeffs)
    rem = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for i, (lm, lc) in enumerate(leads):
            if _divides(lm, m):
                q = tuple(map(_sub, m, lm))
                a = F.normalize(c * F.inv(lc))
                quots[i][q] = F.normalize(quots[i].get(q, 0) + a)
                for dm, dc in divisors[i].coeffs.items():
                    t = tuple(map(_add, dm, q))
                    v = F.normalize(p.get(t, 0) - a * dc)
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            rem[m] = c
            del p[m]
    return [Polynomial(ring, {m: c for m, c in q.items() if c}) for q in quots], Polynomial(ring, rem)


def buchberger(generators: Sequence[Polynomial], order: str | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal, sorted by descending leading term."""
    gens = [g for g in generators]
    if not gens:
        raise ValueError("need at least one generator to know the ring")
    ring = _common_ring(gens)
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
    basis = gb_vectors(ring, [vec_from_poly(g) for g in gens])
    return GroebnerBasis(ring, [Polynomial(ring, {m: c for (_, m), c in v.items()}) for v in basis])


def ideal_gb(ring: Ring, generators: Sequence[Polynomial]) -> GroebnerBasis:
    basis = gb_vectors(ring, [vec_from_poly(ring(g)) for g in generators])
    return GroebnerBasis(ring, [Polynomial(ring, {m: c for (_, m), c in v.items()}) for v in basis])


def module_gb(columns: Sequence[ModuleElement], order: str | None = None, *, ring: Ring | None = None,
              rank: int | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of a submodule (position over term)."""
    if columns:
        ring = ring or columns[0].ring
        rank = columns[0].rank if rank is None else rank
    if ring is None or rank is None:
        raise ValueError("empty input needs explicit ring and rank")
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
    basis = gb_vectors(ring, [c.terms for c in columns])
    return GroebnerBasis(ring, [ModuleElement(ring, rank, v) for v in basis], rank=rank)


def eliminate(generators: Sequence[Polynomial], keep: Sequence[str]) -> GroebnerBasis:
    """Generators of ``I ∩ k[keep]`` (reduced GB in the original ring's order)."""
    ring = _common_ring(generators)
    keep = list(keep)
    drop = [v for v in ring.variables if v not in keep]
    for v in keep:
        ring.index(v)
    if not drop:
        return ideal_gb(ring, generators)
    new_vars = drop + [v for v in ring.variables if v in keep]
    perm = [ring.index(v) for v in new_vars]
    weights = [ring.weights[i] for i in perm]
    if not keep:
        elim_ring = Ring(new_vars, ring.field, weights, "grevlex")
    else:
        elim_ring = Ring(new_vars, ring.field, weights, f"elim:{len(drop)}")

    def to_elim(p):
        return {(0, tuple(m[i] for i in perm)): c for m, c in p.coeffs.items()}

    gb = gb_vectors(elim_ring, [to_elim(g) for g in generators])
    k = len(drop)
    inv = [0] * ring.nvars
    for new_i, old_i in enumerate(perm):
        inv[old_i] = new_i
    kept = []
    for v in gb:
        if all(not any(m[:k]) for (_, m) in v):
            kept.append(Polynomial(ring, {tuple(m[inv[i]] for i in range(ring.nvars)): c for (_, m), c in v.items()}))
    if not kept:
        return GroebnerBasis(ring, [])
    return ideal_gb(ring, kept)


def syzygies(columns: Sequence[ModuleElement], *, ring: Ring | None = None, rank: int | None = None) -> list:
    """Generating set of the syzygy module of ``columns`` (elements of ``R^len(columns)``)."""
    if not columns:
        return []
    ring = ring or columns[0].ring
    rank = columns[0].rank if rank is None else rank
    out = syzygy_vectors(ring, [c.terms for c in columns], rank)
    return [ModuleElement(ring, len(columns), v) for v in out]
