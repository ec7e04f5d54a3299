"""Generic-translate experiments: vanishing checks, density, freeness certificates, bad loci."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Sequence

from .fields import Field
from .groebner import Reducer, eliminate, gb_vectors, ideal_gb, syzygy_vectors
from .group import (
    GroupElement,
    ParametricGroup,
    SamplerPolicy,
    compound_matrix,
    poly_adjugate,
    poly_det,
    sample_group_element,
    translate_module,
)
from .hilbert import TPoly, hilbert_numerator
from .homology import (
    ChainComplex,
    InvariantViolation,
    double_complex_tor,
    homology_at,
    tensor_with_module,
    tor,
)
from .poly import Polynomial, Ring, RingMap, format_polynomial
from .resolutions import (
    GradedFreeModule,
    ModuleMap,
    Presentation,
    hilbert_numerator_of,
    resolve,
)
from .scenario import GLGroup, Scenario, ScenarioError
from .vectors import vec_from_poly, vec_map, vec_restrict

MAX_PARAMS = 3
MAX_AMBIENT_VARS = 8
MAX_IMAX = 4


class GateError(ScenarioError):
    """A tractability gate refused the computation."""


# ---------------------------------------------------------------- validation


def _linear_root(r: Polynomial):
    """``ℓ`` (up to scalar) if ``r = c * ℓ^e`` with ``ℓ`` linear and ``e >= 2``, else ``None``."""
    if not r.is_homogeneous() or r.ring.weights != (1,) * r.ring.nvars:
        return None
    e = r.degree()
    if e < 2:
        return None
    ring = r.ring
    F = ring.field
    pure = [i for i in range(ring.nvars) if any(m[i] == e for m in r.coeffs)]
    if not pure:
        return None
    i = pure[0]
    # for r = c ℓ^e the coefficient of x_i^{e-1} x_j is e c a_i^{e-1} a_j
    top = tuple(e if k == i else 0 for k in range(ring.nvars))
    ci = r.coeffs[top]
    lin = {}
    for j in range(ring.nvars):
        if j == i:
            lin[j] = F(1)
            continue
        m = tuple((e - 1 if k == i else 0) + (1 if k == j else 0) for k in range(ring.nvars))
        cij = r.coeffs.get(m, 0)
        denom = F.normalize(e * ci)
        if denom == 0:
            return None
        lin[j] = F.normalize(cij * F.inv(denom))
    ell = Polynomial(ring, {tuple(1 if k == j else 0 for k in range(ring.nvars)): c for j, c in lin.items() if c})
    if (ell ** e).scale(ci) != r:
        return None
    return ell


def validate_scenario(s: Scenario) -> Scenario:
    """Reject inputs outside the supported hypotheses or internally inconsistent.

    The reducedness test is a heuristic: a relation that is a power ``ℓ^e``
    of a linear form whose root ``ℓ`` is not in the ideal exhibits a
    nilpotent; a full radical test is not attempted.
    """
    ring = s.ring
    if s.x_relations:
        gb = ideal_gb(ring, s.x_relations)
        if any(g.is_constant() for g in gb):
            raise ScenarioError("X-relations generate the unit ideal (X is empty)")
        for r in s.x_relations:
            ell = _linear_root(r)
            if ell is not None and not gb.contains(ell):
                raise ScenarioError(
                    f"X-relation {format_polynomial(r)} makes the coordinate ring non-reduced "
                    f"({format_polynomial(ell)} is nilpotent); generic Tor vanishing fails over "
                    f"non-reduced bases such as k[e]/(e^2), so such inputs are rejected")
    if s.action.group_size != s.group.n:
        raise ScenarioError(f"group is GL_{s.group.n}-sized but the action expects n = {s.action.group_size}")
    if isinstance(s.group, ParametricGroup):
        det = s.group.det()
        if not det:
            raise ScenarioError("parametric group matrix has identically zero determinant "
                                "(no invertible elements to sample)")
    if s.graded:
        if any(not r.is_homogeneous() for r in s.x_relations):
            raise ScenarioError("grading declared but an X-relation is not homogeneous")
        for M in (s.E, s.F):
            if not M.is_graded():
                raise ScenarioError(f"grading declared but {M.label or 'module'} is not homogeneous")
    for M in (s.E, s.F):
        if tuple(M.ideal) != tuple(s.x_relations):
            raise ScenarioError(f"{M.label or 'module'} does not carry the X-relations")
    return s


# ------------------------------------------------------------------ sampling


def sample_for_trial(s: Scenario, trial_index: int) -> tuple:
    """``(parameter_values or None, group_element)`` for a trial."""
    if isinstance(s.group, ParametricGroup):
        return s.group.sample(s.sampler, trial_index)
    return None, sample_group_element(s.sampler, s.field, s.group.n, trial_index)


# ------------------------------------------------------------- Gamma families


def _fresh_names(base: Sequence[str], taken) -> list:
    taken = set(taken)
    out = []
    for b in base:
        name = b
        while name in taken:
            name = "_" + name
        taken.add(name)
        out.append(name)
    return out


@dataclass
class GammaFamily:
    """Translates ``gF`` for all ``g`` at once, over ``T = S ⊗ k[params]`` (plus ``d``).

    ``inclusion`` and ``pullback`` map ``S`` into ``T``; ``pullback`` sends
    ``x`` to ``g(params)^{-1} x`` (acting through compound matrices in the
    Plücker case).  When the determinant is not a constant, a variable
    ``d`` with ``d * det - 1`` in ``ideal`` inverts it.
    """

    S: Ring
    T: Ring
    params: tuple
    inverse_var: str | None
    matrix: list  # polynomial matrix over T
    det: Polynomial
    inclusion: RingMap
    pullback: RingMap
    ideal: tuple
    E: Presentation
    F: Presentation

    @property
    def A(self) -> Ring:
        names = self.params + ((self.inverse_var,) if self.inverse_var else ())
        return Ring(names, self.T.field)

    def specialization(self, values: Sequence) -> RingMap:
        """``T -> S``: parameters to ``values``, ``d`` to ``1/det``."""
        F = self.S.field
        vals = [F(v) for v in values]
        if len(vals) != len(self.params):
            raise ValueError(f"need {len(self.params)} parameter values")
        assign = dict(zip(self.params, vals))
        detv = _evaluate_in(self.det, self.T, assign)
        if detv == 0:
            raise ValueError("parameter values give a singular group element")
        if self.inverse_var:
            assign[self.inverse_var] = F.inv(detv)
        images = [self.S.constant(assign[v]) if v in assign else self.S.var(v) for v in self.T.variables]
        return RingMap(self.T, self.S, tuple(images))

    def specialize_module(self, M: Presentation, values: Sequence) -> Presentation:
        phi = self.specialization(values)
        return Presentation(M.map.apply_ring_map(phi), tuple(self.S(g) for g in self.E.ideal), M.label)

    def family_module(self) -> Presentation:
        """``p1*E ⊗ p2*F`` over ``T / ideal``."""
        E_T = self.E.apply_ring_map(self.inclusion, self.ideal)
        F_T = self.F.apply_ring_map(self.pullback, self.ideal)
        return tensor_presentations(E_T, F_T)


def _names_used(p: Polynomial) -> set:
    return {p.ring.variables[i] for i in p.variables_used()}


def _evaluate_in(p: Polynomial, ring: Ring, assign: dict):
    F = ring.field
    acc = 0
    for m, c in p.coeffs.items():
        term = c
        for v, e in zip(ring.variables, m):
            if e:
                term = term * assign[v] ** e
        acc += term
    return F.normalize(acc)


def tensor_presentations(M: Presentation, N: Presentation) -> Presentation:
    """``M ⊗ N``: generators ``a * rank(N) + b``."""
    ring = M.ring
    s, r = N.rank, M.rank
    cols = []
    for col in M.map.columns:
        for b in range(s):
            cols.append({(p * s + b, m): c for (p, m), c in col.items()})
    for a in range(r):
        for col in N.map.columns:
            cols.append({(a * s + q, m): c for (q, m), c in col.items()})
    degs = None
    if M.generators.degrees is not None and N.generators.degrees is not None:
        degs = tuple(x + y for x in M.generators.degrees for y in N.generators.degrees)
    ideal = tuple(M.ideal) + tuple(g for g in N.ideal if g not in M.ideal)
    return Presentation(ModuleMap.from_columns(ring, cols, r * s, degs), ideal, f"{M.label}⊗{N.label}")


def build_family(s: Scenario, full: bool = False) -> GammaFamily:
    """Family over the scenario's parametric group, or over all of ``GL_n`` when ``full``."""
    S = s.ring
    F = s.field
    n = s.group.n
    if full or not isinstance(s.group, ParametricGroup):
        params = tuple(_fresh_names([f"g{i}_{j}" for i in range(n) for j in range(n)], S.variables))
        base_matrix = [[f"{params[i * n + j]}" for j in range(n)] for i in range(n)]
    else:
        params = tuple(_fresh_names(s.group.params, S.variables))
        if params != s.group.params:
            raise ScenarioError("parameter names clash with coordinates")
        base_matrix = [[format_polynomial(e) for e in row] for row in s.group.matrix]
    T0 = Ring(S.variables + params, F, S.weights + (1,) * len(params))
    M = [[T0(e) for e in row] for row in base_matrix]
    det = poly_det(M)
    inverse_var = None
    if det.is_constant():
        c = det.constant_value()
        T = T0
        inv = [[a.scale(F.inv(c)) for a in row] for row in poly_adjugate(M)]
        ideal_extra = []
    else:
        inverse_var = _fresh_names(["d"], T0.variables)[0]
        T = Ring(T0.variables + (inverse_var,), F, T0.weights + (1,))
        lift = RingMap.from_dict(T0, T, {})
        M = [[lift(a) for a in row] for row in M]
        det = lift(det)
        dv = T.var(inverse_var)
        inv = [[dv * a for a in row] for row in poly_adjugate(M)]
        ideal_extra = [dv * det - 1]
    if s.action.kind == "pluecker":
        coord_inv = compound_matrix(inv, s.action.k)
    else:
        coord_inv = inv
    xs = [T.var(v) for v in S.variables]
    images = []
    for row in coord_inv:
        p = T.zero()
        for a, x in zip(row, xs):
            if a:
                p = p + a * x
        images.append(p)
    pullback = RingMap(S, T, tuple(images))
    inclusion = RingMap(S, T, tuple(xs))
    ideal = tuple(inclusion(g) for g in s.x_relations) + tuple(ideal_extra)
    if inverse_var is None:
        det = RingMap.from_dict(T0, T, {})(det) if T is not T0 else det
    return GammaFamily(S, T, params, inverse_var, M, det, inclusion, pullback, ideal, s.E, s.F)


def _family(s: Scenario, full: bool) -> GammaFamily:
    key = ("family", full)
    if key not in s._cache:
        s._cache[key] = build_family(s, full)
    return s._cache[key]


def _values_for(g: GroupElement) -> list:
    return [x for row in g.matrix for x in row]


# --------------------------------------------------------- vanishing checks


@dataclass
class VanishingReport:
    scenario: str
    g: list
    k_polynomials: list
    zero: list
    params: list | None = None
    crosscheck: bool | None = None
    seconds: float | None = None

    @property
    def verdict(self) -> bool:
        return all(self.zero[1:])

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "scenario": self.scenario,
            "g": self.g,
            "tor": [{"i": i, "k_polynomial": str(k), "zero": z}
                    for i, (k, z) in enumerate(zip(self.k_polynomials, self.zero))],
            "verdict": self.verdict,
        }
        if self.params is not None:
            out["params"] = self.params
        if self.crosscheck is not None:
            out["crosscheck_agrees"] = self.crosscheck
        if timings and self.seconds is not None:
            out["seconds"] = round(self.seconds, 4)
        return out


def _E_resolution(s: Scenario):
    key = ("E_res", s.i_max)
    if key not in s._cache:
        s._cache[key] = resolve(s.E, max_length=s.i_max + 1, truncate=True)
    return s._cache[key]


def tor_translate(s: Scenario, g: GroupElement) -> list:
    """``Tor_i(E, gF)`` for ``i <= i_max`` (direct route)."""
    gF = translate_module(s.F, g, s.action)
    return tor(s.E, gF, s.i_max, resolution=_E_resolution(s))


def double_complex_route(s: Scenario, g: GroupElement | None = None, values=None, full: bool = True) -> list:
    """Tor through the double complex of the family, specialized at ``g`` (or ``values``)."""
    fam = _family(s, full)
    if values is None:
        if g is None:
            raise ValueError("need g or parameter values")
        if not full:
            raise ValueError("the parametric family is specialized by parameter values")
        values = _values_for(g)
    spec = fam.specialization(values)
    return double_complex_tor(s.E, s.F, spec, s.i_max, pullback=fam.pullback, inclusion=fam.inclusion,
                              family_ideal=fam.ideal)


def check_vanishing(s: Scenario, g: GroupElement, crosscheck: bool | None = None, params=None) -> VanishingReport:
    start = time.perf_counter()
    hs = tor_translate(s, g)
    kp = [h.signature() for h in hs]
    zero = [h.is_zero() for h in hs]
    cc = None
    if s.crosscheck if crosscheck is None else crosscheck:
        other = [h.signature() for h in double_complex_route(s, g)]
        cc = other == kp
        if not cc:
            raise InvariantViolation(f"direct and double-complex Tor disagree: {kp} vs {other}")
    F = s.field
    pv = None if params is None else [F.format(v) for v in params]
    return VanishingReport(s.name, g.to_strings(), kp, zero, pv, cc, time.perf_counter() - start)


@dataclass
class DensityReport:
    scenario: str
    field: str
    seed: int
    trials: int
    passed: int
    failing: list
    trial_seeds: list
    seconds: float | None = None

    @property
    def density(self) -> float:
        return self.passed / self.trials

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "scenario": self.scenario,
            "field": self.field,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "density": self.density,
            "failing": self.failing,
            "trial_seeds": self.trial_seeds,
        }
        if timings and self.seconds is not None:
            out["seconds"] = round(self.seconds, 4)
        return out


def _field_name(F: Field) -> str:
    return "Q" if F.characteristic == 0 else f"F_{F.characteristic}"


def monte_carlo_density(s: Scenario, trials: int, crosscheck: bool | None = None) -> DensityReport:
    """Run :func:`check_vanishing` on ``trials`` independent samples (trial order is fixed)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    start = time.perf_counter()
    passed, failing, seeds = 0, [], []
    for t in range(trials):
        vals, g = sample_for_trial(s, t)
        rep = check_vanishing(s, g, crosscheck, vals)
        seeds.append(s.sampler.trial_seed(t))
        if rep.verdict:
            passed += 1
        else:
            failing.append({"trial": t, "g": rep.g, "nonzero": [i for i, z in enumerate(rep.zero) if i and not z]})
    return DensityReport(s.name, _field_name(s.field), s.sampler.seed, trials, passed, failing, seeds,
                         time.perf_counter() - start)


# ----------------------------------------------------------- generic freeness


@dataclass
class FreenessCertificate:
    """Over ``A_f`` the family is free with the standard monomials as basis."""

    family: Presentation
    params: tuple
    x_vars: tuple
    f: Polynomial
    factors: list
    rank: int | None  # None: infinite rank
    generic_numerator: TPoly
    audit: list = field(default_factory=list)

    @property
    def A(self) -> Ring:
        return self.f.ring

    def x_ring(self) -> Ring:
        R = self.family.ring
        return Ring(self.x_vars, R.field, tuple(R.weights[R.index(v)] for v in self.x_vars))

    def specialize(self, values: Sequence) -> Presentation:
        R = self.family.ring
        X = self.x_ring()
        assign = dict(zip(self.params, values))
        images = [X.constant(assign[v]) if v in assign else X.var(v) for v in R.variables]
        phi = RingMap(R, X, tuple(images))
        M = self.family
        return Presentation(M.map.apply_ring_map(phi), tuple(phi(g) for g in M.ideal), M.label)

    def numerator_at(self, values: Sequence) -> TPoly:
        return hilbert_numerator_of(self.specialize(values))

    def f_at(self, values: Sequence):
        return _evaluate_in(self.f, self.A, dict(zip(self.params, [self.A.field(v) for v in values])))

    def check(self, values: Sequence) -> bool:
        """True when ``f(values) = 0`` or the specialization has the generic numerator."""
        if self.f_at(values) == 0:
            return True
        return self.numerator_at(values) == self.generic_numerator

    def as_dict(self) -> dict:
        return {
            "params": list(self.params),
            "f": format_polynomial(self.f),
            "factors": [format_polynomial(h) for h in self.factors],
            "rank": self.rank,
            "generic_numerator": str(self.generic_numerator),
            "audit": self.audit,
        }


def _standard_count(leads: list, nx: int) -> int | None:
    if any(not any(m) for m in leads):
        return 0
    if nx == 0:
        return 1
    bounds = []
    for i in range(nx):
        pure = [m[i] for m in leads if all(m[j] == 0 for j in range(nx) if j != i) and m[i] > 0]
        if not pure:
            return None
        bounds.append(min(pure))
    count = 0
    for m in itertools.product(*[range(b) for b in bounds]):
        if not any(all(a <= b for a, b in zip(l, m)) for l in leads):
            count += 1
    return count


def generic_freeness_certificate(family: Presentation, params: Sequence[str],
                                 relations: Sequence[Polynomial] = (),
                                 x_order: Sequence[str] | None = None) -> FreenessCertificate:
    """Head coefficients of a Gröbner basis under ``x ≫ params`` give ``f``.

    ``relations`` are parameter-only relations of the base (for example
    ``d * det - 1``); heads lying in their ideal are discarded.  ``x_order``
    reorders the coordinates inside the ``x`` block; different orders give
    different (equally valid) ``f``.
    """
    R = family.ring
    params = tuple(params)
    for p in params:
        R.index(p)
    x_vars = tuple(v for v in R.variables if v not in params)
    if x_order is not None:
        if sorted(x_order) != sorted(x_vars):
            raise ValueError("x_order must list every non-parameter variable once")
        x_vars = tuple(x_order)
    nx = len(x_vars)
    order_vars = x_vars + params
    perm = [R.index(v) for v in order_vars]
    weights = tuple(R.weights[i] for i in perm)
    if nx and params:
        order = f"elim:{nx}"
    else:
        order = "grevlex"
    B = Ring(order_vars, R.field, weights, order)
    A = Ring(params, R.field) if params else Ring(("_a",), R.field)
    to_B = RingMap(R, B, tuple(B.var(v) for v in R.variables))
    rank = family.rank
    vecs = [vec_map(v, to_B, rank) for v in family.relation_vectors()]
    gb = gb_vectors(B, vecs)
    key = B.key
    rel_gb = None
    if relations:
        rel_gb = Reducer(A, gb_vectors(A, [vec_from_poly(A(format_polynomial(r))) for r in relations]))
    leads = [[] for _ in range(rank)]
    heads, audit = [], []
    for v in gb:
        pos, mono = max(v, key=lambda t: (-t[0],) + key(t[1]))
        xm = mono[:nx]
        h = Polynomial(A, {m[nx:] if params else (0,): c for (p, m), c in v.items() if p == pos and m[:nx] == xm})
        h = h.monic()
        leads[pos].append(xm)
        audit.append({"element": _format_vec(v, B, rank), "lead_position": pos,
                      "lead_x_monomial": list(xm), "head": format_polynomial(h)})
        if h.is_constant():
            continue
        if rel_gb is not None and not rel_gb.reduce(vec_from_poly(h)):
            continue
        if h not in heads:
            heads.append(h)
    f = A.one()
    for h in heads:
        f = f * h
    degs = family.generators.degrees or (0,) * rank
    xw = weights[:nx]
    numer = TPoly()
    total = 0
    for pos in range(rank):
        numer = numer + hilbert_numerator(leads[pos], xw).shift(degs[pos])
        c = _standard_count(leads[pos], nx)
        total = None if (c is None or total is None) else total + c
    return FreenessCertificate(family, params, x_vars, f, heads, total, numer, audit)


def _format_vec(v: dict, ring: Ring, rank: int) -> list:
    comps = [dict() for _ in range(rank)]
    for (p, m), c in v.items():
        comps[p][m] = c
    return [format_polynomial(Polynomial(ring, d)) for d in comps]


# -------------------------------------------------------------- bad locus


def _colon_vector(ring: Ring, N: list, v: dict, rank: int) -> list:
    """Generators of the ideal ``(N : v) = {a : a v ∈ N}``."""
    syz = syzygy_vectors(ring, [v] + N, rank)
    out = []
    for s in syz:
        a = Polynomial(ring, {m: c for (p, m), c in s.items() if p == 0})
        if a:
            out.append(a)
    return out


def ideal_intersection(ring: Ring, I: Sequence[Polynomial], J: Sequence[Polynomial]) -> list:
    """``I ∩ J`` via syzygies of ``(1, 1), (I, 0), (0, J)``."""
    z = ring.zero_monomial()
    cols = [{(0, z): 1, (1, z): 1}]
    cols += [{(0, m): c for m, c in g.coeffs.items()} for g in I if g]
    cols += [{(1, m): c for m, c in g.coeffs.items()} for g in J if g]
    syz = syzygy_vectors(ring, cols, 2)
    out = [Polynomial(ring, {m: c for (p, m), c in s.items() if p == 0}) for s in syz]
    out = [p for p in out if p]
    return list(ideal_gb(ring, out))


def _module_quotient(ring: Ring, N: list, f: Polynomial, rank: int) -> list:
    """``N : f = {v : f v ∈ N}``."""
    cols = [{(p, m): c for m, c in f.coeffs.items()} for p in range(rank)] + N
    syz = syzygy_vectors(ring, cols, rank)
    return [u for u in (vec_restrict(s, 0, rank) for s in syz) if u]


def _saturate(ring: Ring, N: list, f: Polynomial, rank: int) -> list:
    cur = gb_vectors(ring, N)
    for _ in range(64):
        nxt = gb_vectors(ring, _module_quotient(ring, cur, f, rank) + cur)
        if nxt == cur:
            return cur
        cur = nxt
    raise RuntimeError("saturation did not stabilise")


def annihilator(M: Presentation) -> list:
    """``ann(M)`` as generators in the ambient ring (the ideal of ``M`` included)."""
    ring = M.ring
    N = M.relation_vectors()
    z = ring.zero_monomial()
    out = None
    for p in range(M.rank):
        I = _colon_vector(ring, N, {(p, z): 1}, M.rank)
        out = I if out is None else ideal_intersection(ring, out, I)
    return list(ideal_gb(ring, out or [ring.one()]))


def torsion_annihilator(M: Presentation, f: Polynomial) -> list | None:
    """``ann`` of ``ker(M -> M_f)`` or ``None`` when that kernel is zero."""
    ring = M.ring
    N = gb_vectors(ring, M.relation_vectors())
    Nsat = _saturate(ring, N, f, M.rank)
    if Nsat == N:
        return None
    out = None
    for v in Nsat:
        I = _colon_vector(ring, N, v, M.rank)
        out = I if out is None else ideal_intersection(ring, out, I)
    return list(ideal_gb(ring, out))


@dataclass
class BadLocusReport:
    scenario: str
    params: tuple
    generators: list  # Polynomials in the parameter ring
    exact: bool
    contributions: list
    certificate_f: str
    seconds: float | None = None

    @property
    def empty(self) -> bool:
        return any(g.is_constant() and g for g in self.generators)

    @property
    def everything(self) -> bool:
        return not self.generators

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "scenario": self.scenario,
            "params": list(self.params),
            "ideal": [format_polynomial(g) for g in self.generators],
            "empty_locus": self.empty,
            "exact": self.exact,
            "contributions": self.contributions,
            "certificate_f": self.certificate_f,
        }
        if timings and self.seconds is not None:
            out["seconds"] = round(self.seconds, 4)
        return out

    def __str__(self):
        if self.empty:
            return "empty"
        if self.everything:
            return "(0)"
        return "(" + ", ".join(format_polynomial(g) for g in self.generators) + ")"


def check_gates(s: Scenario):
    if not isinstance(s.group, ParametricGroup):
        raise GateError("bad locus needs a parametric group (params <= 3)")
    np_ = len(s.group.params)
    problems = []
    if np_ > MAX_PARAMS:
        problems.append(f"parameters = {np_} > {MAX_PARAMS}")
    if s.ring.nvars > MAX_AMBIENT_VARS:
        problems.append(f"ambient variables = {s.ring.nvars} > {MAX_AMBIENT_VARS}")
    if s.i_max > MAX_IMAX:
        problems.append(f"i_max = {s.i_max} > {MAX_IMAX}")
    if problems:
        raise GateError("tractability gate refused: " + "; ".join(problems))


def family_complex(s: Scenario) -> tuple:
    """``(family, K ⊗ p2*F)`` over ``T`` with ``K`` resolving ``E``."""
    fam = _family(s, False)
    K = ChainComplex.from_resolution(_E_resolution(s)).apply_ring_map(fam.inclusion, fam.ideal)
    F_T = s.F.apply_ring_map(fam.pullback, fam.ideal)
    return fam, tensor_with_module(K, F_T)


def bad_locus(s: Scenario) -> BadLocusReport:
    """Parameters where some ``Tor_i``, ``1 <= i <= i_max``, of the specialization is nonzero.

    Base change from the family complex ``C``: a parameter point is bad if
    it lies in the projected support of some ``H_i(C)``, ``i >= 1``, or in
    the support of the parameter-torsion of some ``H_j(C)``, ``j < i_max``.
    Exact for one-parameter families homogeneous in the coordinates, where
    torsion-free and flat agree.  Otherwise the torsion test is replaced by
    certificate loci ``V(f)``, which gives an upper bound flagged as such.
    """
    check_gates(s)
    start = time.perf_counter()
    fam, C = family_complex(s)
    T = fam.T
    A = fam.A
    keep = list(A.variables)
    base_rel = [r for r in fam.ideal if not (_names_used(r) & set(s.ring.variables))]
    pieces, contributions = [], []
    f_total = A.one()
    exact = len(fam.params) == 1 and fam.inverse_var is None and _x_homogeneous(fam)
    for i in range(s.i_max + 1):
        H = homology_at(C, i)
        if H.is_zero():
            continue
        pres = H.presentation
        if i >= 1:
            ann = annihilator(pres)
            loc = _to_params(eliminate(ann, keep), A)
            pieces.append(loc)
            contributions.append({"source": f"support of H_{i}", "ideal": [format_polynomial(g) for g in loc]})
        if i < s.i_max:
            cert = generic_freeness_certificate(pres, keep, base_rel)
            f_total = f_total * cert.f
            if cert.f.is_constant():
                continue
            if exact:
                # over a one-parameter base, flat means torsion-free
                fT = RingMap(A, T, tuple(T.var(v) for v in A.variables))(cert.f)
                tann = torsion_annihilator(pres, fT)
                if tann is None:
                    continue
                loc = _to_params(eliminate(tann, keep), A)
                source = f"parameter torsion of H_{i}"
            else:
                loc = _non_free_bound(pres, keep, base_rel, cert.f)
                source = f"non-free locus bound for H_{i}"
            pieces.append(loc)
            contributions.append({"source": source, "ideal": [format_polynomial(g) for g in loc]})
    gens = [A.one()]
    for piece in pieces:
        gens = ideal_intersection(A, gens, piece)
    if fam.inverse_var:
        rel = [RingMap(T, A, tuple(A.var(v) if v in keep else A.zero() for v in T.variables))(r)
               for r in base_rel]
        gens = _to_params(eliminate(list(gens) + rel, list(fam.params)), A)
        A_out = Ring(fam.params, T.field)
        gens = [A_out(format_polynomial(g)) for g in gens]
    else:
        gens = list(ideal_gb(A, gens))
    return BadLocusReport(s.name, fam.params, gens, exact, contributions, format_polynomial(f_total),
                          time.perf_counter() - start)


def _non_free_bound(pres: Presentation, keep: list, base_rel: list, f: Polynomial) -> list:
    """Generators of ``(f_1, ..., f_r)`` from certificates under rotated coordinate orders.

    The module is free off each ``V(f_k)``, so it is free off their
    intersection; the result bounds the non-free locus from above.
    """
    A = f.ring
    xs = [v for v in pres.ring.variables if v not in keep]
    gens = [f]
    for r in range(1, len(xs)):
        cert = generic_freeness_certificate(pres, keep, base_rel, xs[r:] + xs[:r])
        if cert.f.is_constant():
            return [A.one()]
        gens.append(A(format_polynomial(cert.f)))
    return list(ideal_gb(A, gens))


def _x_homogeneous(fam: GammaFamily) -> bool:
    nx = fam.S.nvars

    def ok(p: Polynomial) -> bool:
        degs = {sum(m[:nx]) for m in p.coeffs}
        return len(degs) <= 1

    polys = list(fam.pullback.images) + [g for g in fam.ideal if _names_used(g) & set(fam.S.variables)]
    if not all(ok(p) for p in polys):
        return False
    for M in (fam.E, fam.F):
        if not M.is_graded():
            return False
    return True


def _to_params(gb, A: Ring) -> list:
    """Rewrite polynomials that only involve parameter variables into ``A``."""
    out = []
    for p in gb:
        R = p.ring
        idx = [R.index(v) for v in A.variables]
        out.append(Polynomial(A, {tuple(m[i] for i in idx): c for m, c in p.coeffs.items()}))
    return out


def verify_bad_locus(s: Scenario, report: BadLocusReport, points: Sequence[Sequence]) -> list:
    """For each parameter point: ``(on_locus, verdict)``; soundness wants ``on_locus != verdict``."""
    A = Ring(report.params, s.field)
    out = []
    for vals in points:
        vals = [s.field(v) for v in vals]
        on = all(_evaluate_in(g, A, dict(zip(report.params, vals))) == 0 for g in report.generators)
        g = s.group.specialize(vals)
        out.append((on, check_vanishing(s, g, crosscheck=False).verdict))
    return out


__all__ = [
    "BadLocusReport",
    "DensityReport",
    "FreenessCertificate",
    "GammaFamily",
    "GateError",
    "VanishingReport",
    "annihilator",
    "bad_locus",
    "build_family",
    "check_vanishing",
    "double_complex_route",
    "generic_freeness_certificate",
    "ideal_intersection",
    "monte_carlo_density",
    "sample_for_trial",
    "tensor_presentations",
    "tor_translate",
    "validate_scenario",
    "verify_bad_locus",
]
