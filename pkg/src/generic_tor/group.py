"""Group elements acting on coordinates, translates of modules, sampling.

Convention: ``g F`` is the pushforward of ``F`` along multiplication by
``g``.  On presentations this substitutes ``x -> g^{-1} x`` so that
supports move covariantly, ``V(I) -> g V(I)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fields import Field
from .poly import Polynomial, Ring, RingMap
from .resolutions import Presentation


class SingularMatrixError(ValueError):
    pass


class SamplingError(RuntimeError):
    pass


# ------------------------------------------------------- field linear algebra


def _eliminate(F: Field, rows: list):
    """In-place Gauss–Jordan; returns the determinant of the left square block."""
    n = len(rows)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        pv = rows[c][c]
        det = F.normalize(det * pv)
        ip = F.inv(pv)
        rows[c] = [F.normalize(x * ip) for x in rows[c]]
        for r in range(n):
            if r != c and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [F.normalize(a - f * b) for a, b in zip(rows[r], rows[c])]
    return det


def field_det(F: Field, M: Sequence[Sequence]) -> object:
    rows = [list(r) for r in M]
    if not rows:
        return 1
    return F.normalize(_eliminate(F, rows))


def field_inverse_matrix(F: Field, M: Sequence[Sequence]) -> tuple:
    n = len(M)
    rows = [list(M[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    if _eliminate(F, rows) == 0:
        raise SingularMatrixError("matrix is not invertible")
    return tuple(tuple(r[n:]) for r in rows)


def field_matmul(F: Field, A, B) -> tuple:
    return tuple(
        tuple(F.normalize(sum(A[i][k] * B[k][j] for k in range(len(B)))) for j in range(len(B[0])))
        for i in range(len(A))
    )


# ------------------------------------------------------------ group elements


@dataclass(frozen=True)
class GroupElement:
    """Invertible ``n x n`` matrix over a field, with its cached inverse."""

    field: Field
    matrix: tuple
    inverse: tuple = None

    def __post_init__(self):
        F = self.field
        mat = tuple(tuple(F(x) for x in row) for row in self.matrix)
        n = len(mat)
        if any(len(r) != n for r in mat):
            raise ValueError("group element must be a square matrix")
        object.__setattr__(self, "matrix", mat)
        inv = field_inverse_matrix(F, mat)
        if self.inverse is not None:
            given = tuple(tuple(F(x) for x in row) for row in self.inverse)
            if given != inv:
                raise ValueError("supplied inverse is wrong")
        object.__setattr__(self, "inverse", inv)

    @classmethod
    def identity(cls, field: Field, n: int) -> "GroupElement":
        return cls(field, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.matrix)

    def det(self):
        return field_det(self.field, self.matrix)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.field, field_matmul(self.field, self.matrix, other.matrix))

    def inv(self) -> "GroupElement":
        return GroupElement(self.field, self.inverse, self.matrix)

    def is_identity(self) -> bool:
        return self.matrix == GroupElement.identity(self.field, self.n).matrix

    def to_strings(self) -> list:
        return [[self.field.format(x) for x in row] for row in self.matrix]


# ------------------------------------------------------------------- actions


def k_subsets(n: int, k: int) -> list:
    return list(itertools.combinations(range(n), k))


def pluecker_names(n: int, k: int, prefix: str = "p") -> list:
    return [prefix + "".join(str(i) for i in s) for s in k_subsets(n, k)]


@dataclass(frozen=True)
class ActionSpec:
    """How ``GL_n`` acts on the coordinates of ``ring``."""

    ring: Ring
    kind: str = "linear"  # "linear" or "pluecker"
    k: int = 1
    n: int | None = None

    def __post_init__(self):
        N = self.ring.nvars
        if self.kind == "linear":
            object.__setattr__(self, "n", N if self.n is None else self.n)
            if self.n != N:
                raise ValueError("linear action: matrix size must equal the number of variables")
        elif self.kind == "pluecker":
            if self.n is None or not 1 <= self.k <= self.n:
                raise ValueError("pluecker action needs 1 <= k <= n")
            subsets = k_subsets(self.n, self.k)
            if len(subsets) != N:
                raise ValueError(f"pluecker({self.k},{self.n}) needs C(n,k) = {len(subsets)} variables")
        else:
            raise ValueError(f"unknown action kind {self.kind!r}")

    @property
    def group_size(self) -> int:
        return self.n

    def coordinate_matrix(self, g):
        """Matrix by which ``g`` acts on the ring's coordinates (field entries or polynomials)."""
        if self.kind == "linear":
            return g
        return compound_matrix(g, self.k)


def _poly_det(M: Sequence[Sequence[Polynomial]]):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _poly_det(minor)
        total = term if total is None else (total + term if j % 2 == 0 else total - term)
    if total is None:
        return M[0][0].ring.zero()
    return total


def poly_det(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    return _poly_det([list(r) for r in M])


def poly_adjugate(M: Sequence[Sequence[Polynomial]]) -> list:
    n = len(M)
    ring = M[0][0].ring
    if n == 1:
        return [[ring.one()]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[M[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            d = poly_det(minor)
            adj[j][i] = d if (i + j) % 2 == 0 else -d
    return adj


def compound_matrix(g, k: int):
    """k-th compound: entry ``(I, J)`` is the minor on rows ``I``, columns ``J``.

    Accepts a :class:`GroupElement` (returns a field matrix) or a square
    matrix of polynomials (returns a polynomial matrix).
    """
    if isinstance(g, GroupElement):
        F, M = g.field, g.matrix
        n = len(M)
        if not 1 <= k <= n:
            raise ValueError("need 1 <= k <= n")
        subs = k_subsets(n, k)
        return tuple(tuple(field_det(F, [[M[i][j] for j in J] for i in I]) for J in subs) for I in subs)
    M = [list(r) for r in g]
    n = len(M)
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    subs = k_subsets(n, k)
    return [[poly_det([[M[i][j] for j in J] for i in I]) for J in subs] for I in subs]


def translation_map(g: GroupElement, action: ActionSpec) -> RingMap:
    """Ring automorphism ``x -> A^{-1} x`` where ``A`` is ``g``'s coordinate matrix."""
    ring = action.ring
    if g.n != action.group_size:
        raise ValueError(f"group element is {g.n}x{g.n}, action expects n = {action.group_size}")
    if g.field != ring.field:
        raise ValueError("group element and ring use different fields")
    ginv = g.inv()
    A = ginv.matrix if action.kind == "linear" else compound_matrix(ginv, action.k)
    xs = ring.gens()
    images = []
    for row in A:
        p = ring.zero()
        for a, x in zip(row, xs):
            if a:
                p = p + x.scale(a)
        images.append(p)
    return RingMap(ring, ring, tuple(images))


def translate_module(F: Presentation, g: GroupElement, action: ActionSpec) -> Presentation:
    """Presentation of ``g F``; X-relations are left untouched (they are G-stable)."""
    if F.ring.variables != action.ring.variables:
        raise ValueError("module and action live over different rings")
    phi = translation_map(g, action)
    return Presentation(F.map.apply_ring_map(phi), F.ideal, F.label)


# ------------------------------------------------------------------ sampling


@dataclass(frozen=True)
class SamplerPolicy:
    seed: int = 42
    bound: int = 10
    attempts: int = 16
    pin: tuple | None = None  # fixed matrix (or "identity") returned for every trial

    def __post_init__(self):
        if self.attempts < 1:
            raise ValueError("attempts must be >= 1")

    def rng(self, trial_index: int, attempt: int = 0) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence([self.seed & (2**64 - 1), trial_index, attempt]))

    def trial_seed(self, trial_index: int) -> int:
        ss = np.random.SeedSequence([self.seed & (2**64 - 1), trial_index, 0])
        return int(ss.generate_state(1, np.uint64)[0])


def _pinned(policy: SamplerPolicy, field: Field, n: int) -> GroupElement:
    if policy.pin == "identity":
        return GroupElement.identity(field, n)
    return GroupElement(field, policy.pin)


def sample_group_element(policy: SamplerPolicy, field: Field, n: int, trial_index: int) -> GroupElement:
    """Random element of ``GL_n``; a deterministic function of ``(seed, trial_index)``."""
    if policy.pin is not None:
        return _pinned(policy, field, n)
    for attempt in range(policy.attempts):
        rng = policy.rng(trial_index, attempt)
        M = tuple(tuple(field.random_element(rng, policy.bound) for _ in range(n)) for _ in range(n))
        if field_det(field, M) != 0:
            return GroupElement(field, M)
    raise SamplingError(f"no invertible matrix after {policy.attempts} attempts")


@dataclass(frozen=True)
class ParametricGroup:
    """Subgroup given by a matrix whose entries are polynomials in parameters."""

    param_ring: Ring
    matrix: tuple  # tuple of tuples of Polynomial in param_ring

    def __post_init__(self):
        R = self.param_ring
        object.__setattr__(self, "matrix", tuple(tuple(R(x) for x in row) for row in self.matrix))
        n = len(self.matrix)
        if any(len(r) != n for r in self.matrix):
            raise ValueError("parametric group matrix must be square")

    @property
    def n(self) -> int:
        return len(self.matrix)

    @property
    def params(self) -> tuple:
        return self.param_ring.variables

    def det(self) -> Polynomial:
        return poly_det(self.matrix)

    def specialize(self, values: Sequence) -> GroupElement:
        R = self.param_ring
        F = R.field
        vals = [F(v) for v in values]
        out = []
        for row in self.matrix:
            out.append(tuple(_evaluate(p, vals, F) for p in row))
        return GroupElement(F, tuple(out))

    def sample(self, policy: SamplerPolicy, trial_index: int) -> tuple:
        """Returns ``(parameter_values, group_element)``."""
        F = self.param_ring.field
        if policy.pin is not None:
            return None, _pinned(policy, F, self.n)
        for attempt in range(policy.attempts):
            rng = policy.rng(trial_index, attempt)
            vals = [F.random_element(rng, policy.bound) for _ in self.params]
            try:
                return vals, self.specialize(vals)
            except SingularMatrixError:
                continue
        raise SamplingError(f"no invertible specialization after {policy.attempts} attempts")


def _evaluate(p: Polynomial, vals, F: Field):
    acc = 0
    for m, c in p.coeffs.items():
        term = c
        for v, e in zip(vals, m):
            if e:
                term = term * v**e
        acc += term
    return F.normalize(acc)
