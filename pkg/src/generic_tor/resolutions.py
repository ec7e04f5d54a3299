"""Graded free modules, presentations and free resolutions.

A module is presented as the cokernel of a :class:`ModuleMap`; an optional
``ideal`` makes it a module over the quotient ring ``S/ideal`` (the ideal
times every generator is an implicit relation).  Generator *degrees* are
stored; the twist of ``S(-d)`` is ``-d``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import Reducer, gb_vectors, syzygy_vectors
from .hilbert import TPoly, hilbert_numerator
from .poly import Polynomial, Ring, RingMap, RingMismatchError
from .vectors import (
    ModuleElement,
    matrix_times_vec,
    vec_add,
    vec_degree,
    vec_from_poly,
    vec_map,
    vec_mul_poly,
    vec_to_polys,
)


class NotGradedError(ValueError):
    pass


class ResolutionError(RuntimeError):
    pass


@dataclass(frozen=True)
class GradedFreeModule:
    ring: Ring
    rank: int
    degrees: tuple | None = None  # generator degrees, None when ungraded

    def __post_init__(self):
        if self.degrees is not None:
            object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
            if len(self.degrees) != self.rank:
                raise ValueError("one degree per basis element")

    @classmethod
    def from_twists(cls, ring: Ring, twists: Sequence[int]) -> "GradedFreeModule":
        return cls(ring, len(twists), tuple(-t for t in twists))

    @property
    def twists(self) -> tuple | None:
        return None if self.degrees is None else tuple(-d for d in self.degrees)

    @property
    def graded(self) -> bool:
        return self.degrees is not None

    def __str__(self):
        if self.rank == 0:
            return "0"
        if self.degrees is None:
            return f"R^{self.rank}"
        return " + ".join(f"R({-d})" if d else "R" for d in self.degrees)


def _col_degree(col: dict, ring: Ring, target: GradedFreeModule):
    if target.degrees is None:
        return None
    return vec_degree(col, ring, target.degrees)


@dataclass
class ModuleMap:
    """Map of free modules given by the columns (images of source basis vectors)."""

    source: GradedFreeModule
    target: GradedFreeModule
    columns: list

    def __post_init__(self):
        if len(self.columns) != self.source.rank:
            raise ValueError("need one column per source basis element")
        for c in self.columns:
            if any(p >= self.target.rank for p, _ in c):
                raise ValueError("column entry outside the target module")

    @property
    def ring(self) -> Ring:
        return self.target.ring

    @classmethod
    def from_matrix(cls, ring: Ring, rows: Sequence[Sequence], target_degrees=None, source_degrees=None):
        """Build from a row-major matrix; source degrees are inferred when possible."""
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        cols = []
        for j in range(ncols):
            cols.append({(i, m): c for i in range(nrows) for m, c in ring(rows[i][j]).coeffs.items()})
        return cls.from_columns(ring, cols, nrows, target_degrees, source_degrees)

    @classmethod
    def from_columns(cls, ring: Ring, cols: Sequence[dict], rank: int, target_degrees=None, source_degrees=None):
        if target_degrees is None:
            target_degrees = (0,) * rank
        target = GradedFreeModule(ring, rank, target_degrees)
        if source_degrees is None and target.degrees is not None:
            inferred = [_col_degree(c, ring, target) if c else 0 for c in cols]
            source_degrees = None if None in inferred else tuple(inferred)
        source = GradedFreeModule(ring, len(cols), source_degrees)
        return cls(source, target, list(cols))

    @property
    def matrix(self) -> list:
        cols = [vec_to_polys(c, self.ring, self.target.rank) for c in self.columns]
        return [[cols[j][i] for j in range(self.source.rank)] for i in range(self.target.rank)]

    def column(self, j) -> ModuleElement:
        return ModuleElement(self.ring, self.target.rank, self.columns[j])

    def is_homogeneous(self) -> bool:
        if self.source.degrees is None or self.target.degrees is None:
            return False
        for c, d in zip(self.columns, self.source.degrees):
            if c and vec_degree(c, self.ring, self.target.degrees) != d:
                return False
        return True

    def compose(self, inner: "ModuleMap") -> "ModuleMap":
        """``self ∘ inner``."""
        F = self.ring.field
        cols = [matrix_times_vec(self.columns, c, F) for c in inner.columns]
        return ModuleMap(inner.source, self.target, cols)

    def is_zero(self, ideal_reducer=None) -> bool:
        if ideal_reducer is None:
            return not any(self.columns)
        return not any(ideal_reducer(c) for c in self.columns)

    def apply_ring_map(self, phi: RingMap) -> "ModuleMap":
        ring = phi.target
        src = GradedFreeModule(ring, self.source.rank, self.source.degrees)
        tgt = GradedFreeModule(ring, self.target.rank, self.target.degrees)
        return ModuleMap(src, tgt, [vec_map(c, phi, self.target.rank) for c in self.columns])

    def __str__(self):
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.matrix)


# ------------------------------------------------------------ ideal handling


class IdealReducer:
    """Componentwise normal form modulo ``ideal * R^r``."""

    def __init__(self, ring: Ring, ideal: Sequence[Polynomial]):
        self.ring = ring
        self.gb = gb_vectors(ring, [vec_from_poly(ring(g)) for g in ideal]) if ideal else []
        self._red = Reducer(ring, self.gb) if self.gb else None

    def __bool__(self):
        return bool(self.gb)

    def __call__(self, vec: dict) -> dict:
        if self._red is None or not vec:
            return vec
        by_pos: dict = {}
        for (p, m), c in vec.items():
            by_pos.setdefault(p, {})[(0, m)] = c
        out = {}
        for p, v in by_pos.items():
            for (_, m), c in self._red.reduce(v).items():
                out[(p, m)] = c
        return out

    def block(self, rank: int) -> list:
        """Generators ``g e_i`` of ``ideal * R^rank``."""
        return [{(i, m): c for (_, m), c in g.items()} for i in range(rank) for g in self.gb]


@functools.lru_cache(maxsize=64)
def _ideal_reducer_cached(ring: Ring, ideal: tuple) -> IdealReducer:
    return IdealReducer(ring, ideal)


def ideal_reducer(ring: Ring, ideal: Sequence[Polynomial]) -> IdealReducer:
    return _ideal_reducer_cached(ring, tuple(ring(g) for g in ideal))


def prune_generators(ring: Ring, vecs: Sequence[dict], degrees, extra: Sequence[dict] = (), pos_degrees=None):
    """Drop generators lying in the span of the kept ones plus ``extra``.

    Graded input is processed by increasing degree, which yields a minimal
    generating set; otherwise the given order is used.
    Returns ``(kept_vectors, kept_degrees)``.
    """
    items = [(v, d) for v, d in zip(vecs, degrees) if v]
    if degrees is not None and None not in degrees:
        items.sort(key=lambda vd: vd[1])
    extra = list(extra)
    gb = gb_vectors(ring, extra, pos_degrees) if extra else []
    kept, kept_deg = [], []
    red = Reducer(ring, gb)
    for v, d in items:
        if not red.is_member(v):
            kept.append(v)
            kept_deg.append(d)
            gb = gb_vectors(ring, gb + [v], pos_degrees)
            red = Reducer(ring, gb)
    return kept, kept_deg


# ------------------------------------------------------------- presentations


@dataclass
class Presentation:
    """The cokernel of ``map`` over ``ring / ideal``."""

    map: ModuleMap
    ideal: tuple = ()
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.ideal = tuple(self.ring(g) for g in self.ideal)

    @property
    def ring(self) -> Ring:
        return self.map.target.ring

    @property
    def generators(self) -> GradedFreeModule:
        return self.map.target

    @property
    def rank(self) -> int:
        return self.map.target.rank

    @classmethod
    def cyclic(cls, ring: Ring, gens: Sequence, ideal=(), degree: int = 0, label: str = "") -> "Presentation":
        """``R/(gens)`` with generator in ``degree``."""
        polys = [ring(g) for g in gens]
        cols = [vec_from_poly(p) for p in polys if p]
        return cls(ModuleMap.from_columns(ring, cols, 1, (degree,)), tuple(ideal), label)

    @classmethod
    def free(cls, ring: Ring, degrees: Sequence[int], ideal=(), label: str = "") -> "Presentation":
        tgt = GradedFreeModule(ring, len(degrees), tuple(degrees))
        return cls(ModuleMap(GradedFreeModule(ring, 0, ()), tgt, []), tuple(ideal), label)

    @classmethod
    def from_matrix(cls, ring: Ring, rows, degrees=None, ideal=(), label: str = "") -> "Presentation":
        return cls(ModuleMap.from_matrix(ring, rows, degrees), tuple(ideal), label)

    @property
    def reducer(self) -> IdealReducer:
        return ideal_reducer(self.ring, self.ideal)

    def relation_vectors(self) -> list:
        """All relations over the ambient ring (map columns plus ideal block)."""
        red = self.reducer
        cols = [red(c) for c in self.map.columns]
        return [c for c in cols if c] + red.block(self.rank)

    def relation_gb(self) -> list:
        if "gb" not in self._cache:
            self._cache["gb"] = gb_vectors(self.ring, self.relation_vectors(), self.generators.degrees)
        return self._cache["gb"]

    def is_graded(self) -> bool:
        if self.generators.degrees is None:
            return False
        if not all(g.is_homogeneous() for g in self.ideal):
            return False
        degs = self.generators.degrees
        return all(vec_degree(c, self.ring, degs) is not None for c in self.map.columns if c)

    def is_zero(self) -> bool:
        red = Reducer(self.ring, self.relation_gb())
        zero = self.ring.zero_monomial()
        return all(red.is_member({(i, zero): 1}) for i in range(self.rank))

    def over_ambient(self) -> "Presentation":
        """The same module viewed over the ambient polynomial ring."""
        if not self.ideal:
            return self
        cols = self.relation_vectors()
        return Presentation(ModuleMap.from_columns(self.ring, cols, self.rank, self.generators.degrees),
                            (), self.label)

    def apply_ring_map(self, phi: RingMap, ideal=None) -> "Presentation":
        new_ideal = self.ideal if ideal is None else ideal
        if ideal is None and self.ideal and phi.target.variables != self.ring.variables:
            new_ideal = tuple(phi(g) for g in self.ideal)
        return Presentation(self.map.apply_ring_map(phi), tuple(new_ideal), self.label)

    def leading_monomials(self) -> list:
        """Per generator position, the leading monomials of the relation GB."""
        key = self.ring.key
        out = [[] for _ in range(self.rank)]
        for v in self.relation_gb():
            p, m = max(v, key=lambda t: (-t[0],) + key(t[1]))
            out[p].append(m)
        return out

    def __str__(self):
        name = self.label or "M"
        return f"{name} = coker({self.generators} <- {self.map.source}; {len(self.map.columns)} relations)"


# ---------------------------------------------------------------- resolutions


@dataclass
class FreeResolution:
    """``0 <- F_0 <-d_1- F_1 <-d_2- ...`` resolving ``presentation``."""

    presentation: Presentation
    maps: list
    ideal: tuple = ()
    truncated: bool = False

    @property
    def ring(self) -> Ring:
        return self.presentation.ring

    @property
    def modules(self) -> list:
        if not self.maps:
            return [self.presentation.generators]
        return [self.maps[0].target] + [d.source for d in self.maps]

    @property
    def ranks(self) -> list:
        return [F.rank for F in self.modules]

    @property
    def length(self) -> int:
        return len(self.maps)

    def differential(self, i: int) -> ModuleMap:
        return self.maps[i - 1]

    def is_complex(self) -> bool:
        red = ideal_reducer(self.ring, self.ideal)
        for a, b in zip(self.maps, self.maps[1:]):
            if not a.compose(b).is_zero(red):
                return False
        return True

    def is_graded(self) -> bool:
        return all(F.degrees is not None for F in self.modules) and all(d.is_homogeneous() for d in self.maps)

    def betti(self) -> dict:
        """``{(i, j): beta_ij}`` with ``j`` the internal degree."""
        out: dict = {}
        for i, F in enumerate(self.modules):
            if F.degrees is None:
                raise NotGradedError("Betti numbers need a graded resolution")
            for d in F.degrees:
                out[(i, d)] = out.get((i, d), 0) + 1
        return out

    def k_polynomial(self) -> TPoly:
        out = TPoly()
        for i, F in enumerate(self.modules):
            if F.degrees is None:
                raise NotGradedError("K-polynomial needs a graded resolution")
            for d in F.degrees:
                out = out + (TPoly.t(d) if i % 2 == 0 else -TPoly.t(d))
        return out

    def betti_table(self) -> str:
        return betti_table(self)


def _kernel(ring: Ring, d: ModuleMap, red: IdealReducer):
    """Kernel of ``d`` over ``ring/ideal``: generators and degrees."""
    tgt = d.target
    cols = list(d.columns)
    extra = red.block(tgt.rank)
    col_degs = list(d.source.degrees) if d.source.degrees is not None else None
    full_degs = None
    if col_degs is not None and tgt.degrees is not None:
        full_degs = col_degs + [None] * len(extra)
        for k, e in enumerate(extra):
            full_degs[len(cols) + k] = vec_degree(e, ring, tgt.degrees)
        if None in full_degs:
            full_degs = None
    syz = syzygy_vectors(ring, cols + extra, tgt.rank, tgt.degrees, full_degs)
    m = len(cols)
    out, degs = [], []
    for v in syz:
        u = red({t: c for t, c in v.items() if t[0] < m})
        if u:
            out.append(u)
            degs.append(vec_degree(u, ring, col_degs) if col_degs is not None else None)
    if col_degs is None or None in degs:
        degs = [None] * len(out)
    return out, degs


def resolve(M: Presentation, max_length: int | None = None, truncate: bool = False) -> FreeResolution:
    """Free resolution by iterated syzygies (over ``S/ideal`` when ``M.ideal`` is set).

    Graded input gives a minimal resolution.  Without ``truncate`` the
    computation must terminate within ``max_length`` steps (default: the
    number of variables for polynomial rings).
    """
    ring = M.ring
    red = M.reducer
    if max_length is None:
        max_length = ring.nvars if not M.ideal else ring.nvars + 2
    graded = M.is_graded()
    F0 = M.generators
    cols = [red(c) for c in M.map.columns]
    cdeg = [vec_degree(c, ring, F0.degrees) for c in cols] if graded else [None] * len(cols)
    cols, cdeg = prune_generators(ring, cols, cdeg, red.block(F0.rank), F0.degrees if graded else None)
    maps = []
    if not cols:
        return FreeResolution(M, [], M.ideal)
    tgt = F0
    src = GradedFreeModule(ring, len(cols), tuple(cdeg) if graded else None)
    maps.append(ModuleMap(src, tgt, cols))
    truncated = False
    while True:
        d = maps[-1]
        if len(maps) >= max_length:
            if truncate:
                truncated = True
                break
        ker, kdeg = _kernel(ring, d, red)
        if graded:
            extra = red.block(d.source.rank)
            ker, kdeg = prune_generators(ring, ker, kdeg, extra, d.source.degrees)
        else:
            ker, kdeg = prune_generators(ring, ker, [None] * len(ker), red.block(d.source.rank))
            kdeg = [None] * len(ker)
        if not ker:
            break
        if len(maps) >= max_length:
            raise ResolutionError(f"resolution did not terminate within {max_length} steps")
        src = GradedFreeModule(ring, len(ker), tuple(kdeg) if graded else None)
        maps.append(ModuleMap(src, d.source, ker))
    return FreeResolution(M, maps, M.ideal, truncated)


def _drop_position(vec: dict, r: int) -> dict:
    return {(p - (p > r), m): c for (p, m), c in vec.items() if p != r}


def minimalize(FR: FreeResolution) -> FreeResolution:
    """Cancel unit entries until every differential has entries in the maximal ideal."""
    if not FR.is_graded():
        raise NotGradedError("minimalize needs a graded resolution")
    ring = FR.ring
    Fld = ring.field
    red = ideal_reducer(ring, FR.ideal)
    zero = ring.zero_monomial()
    mods = [list(F.degrees) for F in FR.modules]
    cols = [[red(c) for c in d.columns] for d in FR.maps]  # cols[i-1] = d_i
    changed = True
    while changed:
        changed = False
        for i in range(1, len(cols) + 1):
            d = cols[i - 1]
            hit = None
            for c, col in enumerate(d):
                for (r, m), u in col.items():
                    if m == zero:
                        hit = (r, c, u)
                        break
                if hit:
                    break
            if not hit:
                continue
            r, c, u = hit
            iu = Fld.inv(u)
            pivot = d[c]
            new_cols = []
            for b, col in enumerate(d):
                if b == c:
                    continue
                entry = {m: v for (p, m), v in col.items() if p == r}
                if entry:
                    f = Polynomial(ring, {m: Fld.normalize(-v * iu) for m, v in entry.items()})
                    col = vec_add(col, vec_mul_poly(pivot, f, Fld), Fld)
                new_cols.append(red(_drop_position(col, r)))
            cols[i - 1] = new_cols
            if i < len(cols):
                cols[i] = [_drop_position(col, c) for col in cols[i]]
            if i >= 2:
                cols[i - 2] = cols[i - 2][:r] + cols[i - 2][r + 1:]
            del mods[i][c]
            del mods[i - 1][r]
            changed = True
            break
    while len(cols) and not cols[-1]:
        cols.pop()
    maps = []
    for i, cs in enumerate(cols, start=1):
        src = GradedFreeModule(ring, len(mods[i]), tuple(mods[i]))
        tgt = GradedFreeModule(ring, len(mods[i - 1]), tuple(mods[i - 1]))
        maps.append(ModuleMap(src, tgt, cs))
    if maps:
        pres = Presentation(maps[0], FR.ideal, FR.presentation.label)
    else:
        pres = Presentation.free(ring, mods[0], FR.ideal, FR.presentation.label)
    return FreeResolution(pres, maps, FR.ideal, FR.truncated)


def k_polynomial(M: Presentation, route: str = "lt") -> TPoly:
    """K-polynomial: numerator of the Hilbert series over ``prod(1 - t^w_i)``.

    ``route="lt"`` uses the leading-term module, ``route="resolution"`` the
    alternating sum over a minimal free resolution over the ambient ring.
    """
    if not M.is_graded():
        raise NotGradedError("k_polynomial needs a graded module")
    if route == "resolution":
        return minimalize(resolve(M.over_ambient())).k_polynomial()
    if route != "lt":
        raise ValueError(f"unknown route {route!r}")
    return _lt_numerator(M)


def _lt_numerator(M: Presentation) -> TPoly:
    ring = M.ring
    if ring.order == "lex":
        M = M.apply_ring_map(RingMap.identity(ring.with_order("grevlex")))
        ring = M.ring
    degs = M.generators.degrees or (0,) * M.rank
    out = TPoly()
    for pos, monos in enumerate(M.leading_monomials()):
        out = out + hilbert_numerator(monos, ring.weights).shift(degs[pos])
    return out


def hilbert_numerator_of(M: Presentation) -> TPoly:
    """Affine Hilbert numerator (via a degree-compatible order); defined for any module."""
    ring = M.ring
    if ring.order != "grevlex":
        M = M.apply_ring_map(RingMap.identity(ring.with_order("grevlex")))
    return _lt_numerator(M)


def betti_table(FR: FreeResolution) -> str:
    b = FR.betti()
    n = len(FR.modules)
    if not b:
        return "total:"
    rows = sorted({j - i for (i, j) in b})
    width = max(len(str(v)) for v in list(b.values()) + [sum(F.rank for F in FR.modules)]) + 1
    lines = ["       " + "".join(str(i).rjust(width) for i in range(n))]
    lines.append("total: " + "".join(str(F.rank).rjust(width) for F in FR.modules))
    for r in range(rows[0], rows[-1] + 1):
        cells = "".join((str(b[(i, i + r)]) if (i, i + r) in b else ".").rjust(width) for i in range(n))
        lines.append(f"{r:>5}: " + cells)
    return "\n".join(lines)


def check_exactness(FR: FreeResolution) -> bool:
    """Kernel of each ``d_i`` lies in the image of ``d_{i+1}`` (over ``S/ideal``)."""
    ring = FR.ring
    red = ideal_reducer(ring, FR.ideal)
    for i, d in enumerate(FR.maps):
        ker, _ = _kernel(ring, d, red)
        nxt = FR.maps[i + 1].columns if i + 1 < len(FR.maps) else []
        if i + 1 == len(FR.maps) and FR.truncated:
            break
        gens = list(nxt) + red.block(d.source.rank)
        gb = gb_vectors(ring, gens) if gens else []
        r = Reducer(ring, gb)
        if any(not r.is_member(v) for v in ker):
            return False
    return True
