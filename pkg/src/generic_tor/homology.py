"""Chain complexes of presented modules, homology, Tor and total complexes.

A :class:`ChainComplex` term is a free module together with relation
columns (so ``F_i ⊗ N`` is representable as a cokernel); the
differentials are maps between the free covers.  Everything happens over
``ring / ideal``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .groebner import Reducer, gb_vectors, syzygy_vectors
from .hilbert import TPoly
from .poly import Ring, RingMap, RingMismatchError
from .resolutions import (
    FreeResolution,
    GradedFreeModule,
    ModuleMap,
    NotGradedError,
    Presentation,
    hilbert_numerator_of,
    ideal_reducer,
    k_polynomial,
    prune_generators,
    resolve,
)
from .vectors import vec_degree, vec_from_poly, vec_map, vec_restrict


class InvariantViolation(RuntimeError):
    """Two computations that must agree did not (an engine bug)."""


class ComplexError(ValueError):
    pass


@dataclass
class ChainComplex:
    """``C_0 <-d_1- C_1 <-d_2- ... <-d_n- C_n``.

    ``modules[i]`` is the free cover of ``C_i``; ``relations[i]`` lists
    columns in it whose span is divided out.  ``maps[i-1]`` is ``d_i``.
    """

    modules: list
    maps: list
    relations: list = None
    ideal: tuple = ()

    def __post_init__(self):
        if self.relations is None:
            self.relations = [[] for _ in self.modules]
        if len(self.maps) != max(len(self.modules) - 1, 0):
            raise ComplexError("need one differential between consecutive terms")
        if len(self.relations) != len(self.modules):
            raise ComplexError("need one relation list per term")
        for i, d in enumerate(self.maps, start=1):
            if d.source.rank != self.modules[i].rank or d.target.rank != self.modules[i - 1].rank:
                raise ComplexError(f"d_{i} has the wrong shape")

    @property
    def ring(self) -> Ring:
        return self.modules[0].ring

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def ranks(self) -> list:
        return [F.rank for F in self.modules]

    @classmethod
    def from_resolution(cls, FR: FreeResolution) -> "ChainComplex":
        return cls(list(FR.modules), list(FR.maps), None, FR.ideal)

    @classmethod
    def from_maps(cls, maps: Sequence[ModuleMap], ideal=()) -> "ChainComplex":
        maps = list(maps)
        if not maps:
            raise ComplexError("need at least one map (use from_modules for a single term)")
        modules = [maps[0].target] + [d.source for d in maps]
        return cls(modules, maps, None, tuple(ideal))

    def differential(self, i: int) -> ModuleMap:
        return self.maps[i - 1]

    def term(self, i: int) -> Presentation:
        F = self.modules[i]
        rel = list(self.relations[i])
        src = GradedFreeModule(self.ring, len(rel), None)
        return Presentation(ModuleMap(src, F, rel), self.ideal)

    def is_complex(self) -> bool:
        red = ideal_reducer(self.ring, self.ideal)
        for i in range(1, len(self.maps)):
            comp = self.maps[i - 1].compose(self.maps[i])
            rel = list(self.relations[i - 1]) + red.block(self.modules[i - 1].rank)
            r = Reducer(self.ring, gb_vectors(self.ring, rel) if rel else [])
            if any(not r.is_member(c) for c in comp.columns):
                return False
        return True

    def is_graded(self) -> bool:
        return all(F.degrees is not None for F in self.modules)

    def apply_ring_map(self, phi: RingMap, ideal=None) -> "ChainComplex":
        ring = phi.target
        mods = [GradedFreeModule(ring, F.rank, F.degrees) for F in self.modules]
        maps = [ModuleMap(mods[i], mods[i - 1], [vec_map(c, phi, mods[i - 1].rank) for c in d.columns])
                for i, d in enumerate(self.maps, start=1)]
        rels = [[vec_map(c, phi, F.rank) for c in rs] for rs, F in zip(self.relations, mods)]
        if ideal is None:
            ideal = tuple(phi(g) for g in self.ideal)
        return ChainComplex(mods, maps, rels, tuple(ideal))


@dataclass
class HomologyModule:
    index: int
    presentation: Presentation
    _zero: bool | None = field(default=None, repr=False)

    @property
    def ring(self) -> Ring:
        return self.presentation.ring

    def is_zero(self) -> bool:
        if self._zero is None:
            self._zero = self.presentation.rank == 0 or self.presentation.is_zero()
        return self._zero

    def is_graded(self) -> bool:
        return self.presentation.rank == 0 or self.presentation.is_graded()

    def k_polynomial(self) -> TPoly:
        if self.presentation.rank == 0:
            return TPoly()
        return k_polynomial(self.presentation)

    def signature(self) -> TPoly:
        """Graded K-polynomial, or the affine Hilbert numerator when ungraded."""
        if self.presentation.rank == 0:
            return TPoly()
        if self.is_graded():
            return self.k_polynomial()
        return hilbert_numerator_of(self.presentation)

    def __str__(self):
        if self.is_zero():
            return f"H_{self.index} = 0"
        return f"H_{self.index}: k-polynomial {self.signature()}"


def _zero_homology(ring: Ring, i: int, ideal=()) -> HomologyModule:
    return HomologyModule(i, Presentation.free(ring, (), ideal), True)


def _degrees_of(vecs, ring, pos_degrees):
    if pos_degrees is None:
        return None
    ds = [vec_degree(v, ring, pos_degrees) for v in vecs]
    return None if None in ds else ds


def homology_at(C: ChainComplex, i: int) -> HomologyModule:
    """``ker(d_i) / im(d_{i+1})`` at term ``i``, as a cokernel presentation.

    The kernel is taken modulo the relations of ``C_{i-1}``; generators are
    pruned modulo the boundaries, and the presentation's relations are the
    syzygies of (cycles | boundaries) projected to the cycle part.
    """
    ring = C.ring
    if i < 0 or i >= len(C.modules):
        return _zero_homology(ring, i, C.ideal)
    red = ideal_reducer(ring, C.ideal)
    Fi = C.modules[i]
    if Fi.rank == 0:
        return _zero_homology(ring, i, C.ideal)
    degs = Fi.degrees
    zero = ring.zero_monomial()
    if i == 0:
        cycles = [{(a, zero): 1} for a in range(Fi.rank)]
        cdeg = list(degs) if degs is not None else None
    else:
        d = C.maps[i - 1]
        tgt = C.modules[i - 1]
        cols = [red(c) for c in d.columns]
        rel = [red(c) for c in C.relations[i - 1]]
        rel = [c for c in rel if c] + red.block(tgt.rank)
        all_cols = cols + rel
        col_deg = None
        if degs is not None and tgt.degrees is not None:
            rel_deg = _degrees_of(rel, ring, tgt.degrees)
            if rel_deg is not None:
                col_deg = list(degs) + rel_deg
        syz = syzygy_vectors(ring, all_cols, tgt.rank, tgt.degrees, col_deg)
        m = len(cols)
        cycles = [v for v in (red(vec_restrict(s, 0, m)) for s in syz) if v]
        cdeg = _degrees_of(cycles, ring, degs)
    bounds = []
    if i + 1 < len(C.modules):
        bounds = [red(c) for c in C.maps[i].columns]
    bounds = [b for b in bounds if b] + [r for r in (red(c) for c in C.relations[i]) if r]
    bounds += red.block(Fi.rank)
    graded = cdeg is not None
    kept, kdeg = prune_generators(ring, cycles, cdeg if graded else [None] * len(cycles), bounds,
                                  degs if graded else None)
    if not kept:
        return _zero_homology(ring, i, C.ideal)
    bdeg = _degrees_of(bounds, ring, degs) if graded else None
    col_deg = list(kdeg) + bdeg if graded and bdeg is not None else None
    syz = syzygy_vectors(ring, kept + bounds, Fi.rank, degs if col_deg else None, col_deg)
    k = len(kept)
    rels = [v for v in (vec_restrict(s, 0, k) for s in syz) if v]
    tgt_deg = tuple(kdeg) if graded else None
    hmap = ModuleMap.from_columns(ring, rels, k, tgt_deg) if graded else \
        ModuleMap(GradedFreeModule(ring, len(rels), None), GradedFreeModule(ring, k, None), rels)
    return HomologyModule(i, Presentation(hmap, C.ideal), False)


def homology(C: ChainComplex) -> list:
    return [homology_at(C, i) for i in range(len(C.modules))]


# ------------------------------------------------------------------- tensor


def _check_same_ring(a: Ring, b: Ring):
    if a.variables != b.variables or a.field != b.field:
        raise RingMismatchError("complex and module live over different rings")


def _merge_ideals(a: Sequence, b: Sequence) -> tuple:
    out = list(a)
    for g in b:
        if g not in out:
            out.append(g)
    return tuple(out)


def tensor_with_module(C, N: Presentation) -> ChainComplex:
    """Degreewise ``C_i ⊗ N``; basis of ``F_i ⊗ N_0`` indexed by ``a * rank(N) + b``."""
    if isinstance(C, FreeResolution):
        C = ChainComplex.from_resolution(C)
    ring = C.ring
    _check_same_ring(ring, N.ring)
    s = N.rank
    G = N.generators
    ncols = [c for c in N.map.columns if c]
    mods, rels = [], []
    for i, F in enumerate(C.modules):
        degs = None
        if F.degrees is not None and G.degrees is not None:
            degs = tuple(da + db for da in F.degrees for db in G.degrees)
        mods.append(GradedFreeModule(ring, F.rank * s, degs))
        rel = []
        for a in range(F.rank):
            for col in ncols:
                rel.append({(a * s + p, m): c for (p, m), c in col.items()})
        # relations already present in C_i get tensored with every generator of N
        for col in C.relations[i]:
            for b in range(s):
                rel.append({(p * s + b, m): c for (p, m), c in col.items()})
        rels.append(rel)
    maps = []
    for i, d in enumerate(C.maps, start=1):
        cols = []
        for a in range(d.source.rank):
            for b in range(s):
                cols.append({(p * s + b, m): c for (p, m), c in d.columns[a].items()})
        maps.append(ModuleMap(mods[i], mods[i - 1], cols))
    return ChainComplex(mods, maps, rels, _merge_ideals(C.ideal, N.ideal))


# ---------------------------------------------------------------------- Tor


def _resolution_for_tor(M: Presentation, i_max: int) -> FreeResolution:
    return resolve(M, max_length=i_max + 1, truncate=True)


def tor(M: Presentation, N: Presentation, i_max: int | None = None, resolution: FreeResolution | None = None) -> list:
    """``Tor_0 .. Tor_{i_max}`` of ``M`` and ``N`` by resolving ``M``."""
    _check_same_ring(M.ring, N.ring)
    if i_max is None:
        i_max = M.ring.nvars
    if i_max < 0:
        raise ValueError("i_max must be >= 0")
    M = _with_ideal(M, N.ideal)
    N = _with_ideal(N, M.ideal)
    FR = resolution if resolution is not None else _resolution_for_tor(M, i_max)
    C = tensor_with_module(FR, N)
    return [homology_at(C, i) for i in range(i_max + 1)]


def _with_ideal(M: Presentation, ideal) -> Presentation:
    merged = _merge_ideals(M.ideal, [M.ring(g) for g in ideal])
    if len(merged) == len(M.ideal):
        return M
    return Presentation(M.map, merged, M.label)


@dataclass
class TorComparison:
    left: list
    right: list

    @property
    def agree(self) -> bool:
        return self.left == self.right

    def as_dict(self) -> dict:
        return {"left": [str(p) for p in self.left], "right": [str(p) for p in self.right], "agree": self.agree}


def tor_balanced(M: Presentation, N: Presentation, i_max: int | None = None) -> TorComparison:
    """Tor by resolving ``M`` and, separately, by resolving ``N``; the two must agree."""
    left = [h.signature() for h in tor(M, N, i_max)]
    right = [h.signature() for h in tor(N, M, i_max)]
    report = TorComparison(left, right)
    if not report.agree:
        raise InvariantViolation(f"Tor routes disagree: {left} vs {right}")
    return report


# ----------------------------------------------------------- double complexes


@dataclass
class DoubleComplex:
    """Grid ``D[i][j]`` with ``h[i][j]: D_ij -> D_{i-1,j}`` and ``v[i][j]: D_ij -> D_{i,j-1}``.

    ``h[0][j]`` and ``v[i][0]`` are ``None``.
    """

    modules: list
    horizontal: list
    vertical: list
    ideal: tuple = ()

    @property
    def ring(self) -> Ring:
        return self.modules[0][0].ring

    @property
    def shape(self) -> tuple:
        return len(self.modules), len(self.modules[0])

    @classmethod
    def from_complexes(cls, K: ChainComplex, L: ChainComplex, ideal=()) -> "DoubleComplex":
        """``D_ij = K_i ⊗ L_j`` with basis index ``a * rank(L_j) + b``."""
        _check_same_ring(K.ring, L.ring)
        ring = K.ring
        if any(K.relations) or any(L.relations):
            raise ComplexError("double complexes are built from complexes of free modules")
        mods = []
        for Ki in K.modules:
            row = []
            for Lj in L.modules:
                degs = None
                if Ki.degrees is not None and Lj.degrees is not None:
                    degs = tuple(a + b for a in Ki.degrees for b in Lj.degrees)
                row.append(GradedFreeModule(ring, Ki.rank * Lj.rank, degs))
            mods.append(row)
        I, J = len(K.modules), len(L.modules)
        hor = [[None] * J for _ in range(I)]
        ver = [[None] * J for _ in range(I)]
        for i in range(1, I):
            d = K.maps[i - 1]
            for j in range(J):
                s = L.modules[j].rank
                cols = [{(p * s + b, m): c for (p, m), c in d.columns[a].items()}
                        for a in range(d.source.rank) for b in range(s)]
                hor[i][j] = ModuleMap(mods[i][j], mods[i - 1][j], cols)
        for j in range(1, J):
            e = L.maps[j - 1]
            s_src, s_tgt = e.source.rank, e.target.rank
            for i in range(I):
                cols = [{(a * s_tgt + q, m): c for (q, m), c in e.columns[b].items()}
                        for a in range(K.modules[i].rank) for b in range(s_src)]
                ver[i][j] = ModuleMap(mods[i][j], mods[i][j - 1], cols)
        return cls(mods, hor, ver, _merge_ideals(K.ideal, _merge_ideals(L.ideal, ideal)))

    def check_commutes(self) -> bool:
        red = ideal_reducer(self.ring, self.ideal)
        I, J = self.shape
        for i in range(1, I):
            for j in range(1, J):
                hv = self.horizontal[i][j - 1].compose(self.vertical[i][j])
                vh = self.vertical[i - 1][j].compose(self.horizontal[i][j])
                F = self.ring.field
                for a, b in zip(hv.columns, vh.columns):
                    diff = dict(a)
                    for t, c in b.items():
                        x = F.normalize(diff.get(t, 0) - c)
                        if x:
                            diff[t] = x
                        else:
                            diff.pop(t, None)
                    if red(diff):
                        return False
        return True


def total_complex(D: DoubleComplex, check: bool = True, max_degree: int | None = None) -> ChainComplex:
    """``Tot_n = ⊕_{i+j=n} D_ij``; the vertical map out of column ``i`` is signed ``(-1)^i``."""
    if check and not D.check_commutes():
        raise ComplexError("double complex squares do not commute")
    ring = D.ring
    I, J = D.shape
    top = I + J - 2 if max_degree is None else min(max_degree, I + J - 2)
    layout = []  # per n: list of (i, j, offset)
    mods = []
    for n in range(top + 1):
        parts, off, degs = [], 0, []
        for i in range(max(0, n - J + 1), min(n, I - 1) + 1):
            j = n - i
            parts.append((i, j, off))
            off += D.modules[i][j].rank
            degs = None if degs is None or D.modules[i][j].degrees is None else degs + list(D.modules[i][j].degrees)
        layout.append(parts)
        mods.append(GradedFreeModule(ring, off, tuple(degs) if degs is not None else None))
    F = ring.field
    maps = []
    for n in range(1, top + 1):
        tgt_off = {(i, j): o for i, j, o in layout[n - 1]}
        cols = []
        for i, j, _ in layout[n]:
            for a in range(D.modules[i][j].rank):
                col: dict = {}
                if i > 0:
                    o = tgt_off[(i - 1, j)]
                    for (p, m), c in D.horizontal[i][j].columns[a].items():
                        col[(p + o, m)] = c
                if j > 0:
                    o = tgt_off[(i, j - 1)]
                    sign = -1 if i % 2 else 1
                    for (p, m), c in D.vertical[i][j].columns[a].items():
                        col[(p + o, m)] = F.normalize(sign * c)
                cols.append(col)
        maps.append(ModuleMap(mods[n], mods[n - 1], cols))
    return ChainComplex(mods, maps, None, D.ideal)


def _free_complex(FR: FreeResolution) -> ChainComplex:
    return ChainComplex.from_resolution(FR)


def double_complex_tor(E: Presentation, F: Presentation, specialization: RingMap, i_max: int,
                       pullback: RingMap | None = None, inclusion: RingMap | None = None,
                       family_ideal: Sequence = (), check: bool = True) -> list:
    """Tor through the double complex over an enlarged ring, then specialization.

    ``inclusion`` and ``pullback`` are ring maps from the ring ``S`` of
    ``E`` and ``F`` into the enlarged ring ``T``: the resolution of ``E`` is
    carried along ``inclusion`` and that of ``F`` along ``pullback`` (the
    family of translates).  The total complex of the resulting double
    complex is specialized along ``specialization: T -> S`` (parameters to
    constants) before homology is taken.
    """
    S = E.ring
    _check_same_ring(S, F.ring)
    T = specialization.source
    if specialization.target.variables != S.variables:
        raise RingMismatchError("specialization must land in the ring of E and F")
    if inclusion is None:
        inclusion = RingMap.from_dict(S, T, {}) if T.variables != S.variables else RingMap.identity(S)
    if pullback is None:
        pullback = inclusion
    x_names = set(S.variables)
    for v, img in zip(T.variables, specialization.images):
        if v not in x_names and not img.is_constant():
            raise ValueError(f"specialization is not constant on parameter {v!r}")
    ideal = _merge_ideals(E.ideal, F.ideal)
    E = _with_ideal(E, ideal)
    F = _with_ideal(F, ideal)
    K = _free_complex(_resolution_for_tor(E, i_max)).apply_ring_map(inclusion)
    L = _free_complex(_resolution_for_tor(F, i_max)).apply_ring_map(pullback)
    T_ideal = _merge_ideals(K.ideal, [T(g) for g in family_ideal])
    red_S = ideal_reducer(S, ideal)
    for g in T_ideal:
        if red_S(vec_from_poly(specialization(g))):
            raise ValueError("specialization does not send the family relations into the ideal of X")
    D = DoubleComplex.from_complexes(K, L, T_ideal)
    Tot = total_complex(D, check=check, max_degree=i_max + 1)
    spec = Tot.apply_ring_map(specialization, ideal)
    return [homology_at(spec, i) for i in range(i_max + 1)]
