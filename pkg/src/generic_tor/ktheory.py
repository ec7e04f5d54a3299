"""Grothendieck-group classes of graded modules on projective cones.

A class on ``P^n`` is the K-polynomial modulo ``(1-t)^{n+1}``, stored by its
coordinates in the basis ``1, (1-t), ..., (1-t)^n``; ``(1-t)^k`` is the
class of a codimension-``k`` linear subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .bertini import check_vanishing, sample_for_trial, tor_translate, validate_scenario
from .group import ActionSpec, GroupElement, translate_module
from .hilbert import TPoly
from .homology import tor
from .resolutions import NotGradedError, Presentation, k_polynomial
from .scenario import Scenario


class KTheoryError(RuntimeError):
    pass


def _coordinates(p: TPoly, n: int) -> tuple:
    """Coefficients of ``p`` in powers of ``u = 1 - t`` modulo ``u^{n+1}``.

    ``t^e = (1-u)^e`` for ``e >= 0`` and ``t^{-e} = sum_k C(e+k-1, k) u^k``.
    """
    out = [0] * (n + 1)
    for e, c in p.coeffs.items():
        for k in range(n + 1):
            if e >= 0:
                coef = (-1) ** k * comb(e, k) if k <= e else 0
            else:
                coef = comb(-e + k - 1, k)
            out[k] += c * coef
    return tuple(out)


@dataclass(frozen=True)
class KClass:
    n: int
    coords: tuple

    @classmethod
    def from_tpoly(cls, p: TPoly, n: int) -> "KClass":
        if n < 0:
            raise ValueError("ambient dimension must be >= 0")
        return cls(n, _coordinates(p, n))

    def tpoly(self) -> TPoly:
        u = TPoly({0: 1, 1: -1})
        out = TPoly()
        for k, c in enumerate(self.coords):
            if c:
                out = out + (u ** k) * c
        return out

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "KClass") -> "KClass":
        self._check(other)
        return KClass(self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "KClass":
        return KClass(self.n, tuple(-a for a in self.coords))

    def __sub__(self, other: "KClass") -> "KClass":
        return self + (-other)

    def __mul__(self, other: "KClass") -> "KClass":
        self._check(other)
        out = [0] * (self.n + 1)
        for i, a in enumerate(self.coords):
            for j, b in enumerate(other.coords):
                if i + j <= self.n:
                    out[i + j] += a * b
        return KClass(self.n, tuple(out))

    def _check(self, other):
        if not isinstance(other, KClass) or other.n != self.n:
            raise KTheoryError("classes on different projective spaces")

    def as_dict(self) -> dict:
        return {"n": self.n, "t_polynomial": str(self.tpoly()), "basis_coords": list(self.coords)}

    def __str__(self):
        out = ""
        for k, c in enumerate(self.coords):
            if not c:
                continue
            base = "1" if k == 0 else ("(1 - t)" if k == 1 else f"(1 - t)^{k}")
            mag = abs(c)
            body = base if mag == 1 else (str(mag) if k == 0 else f"{mag}*{base}")
            if not out:
                out = f"-{body}" if c < 0 else body
            else:
                out += f" - {body}" if c < 0 else f" + {body}"
        return out or "0"


def default_dimension(M: Presentation) -> int:
    """Projective dimension of the cone's ambient space (Plücker cones push forward to it)."""
    return M.ring.nvars - 1


def kclass_of_module(M: Presentation, n: int | None = None) -> KClass:
    if not M.is_graded():
        raise NotGradedError("K-classes need a graded module")
    if n is None:
        n = default_dimension(M)
    return KClass.from_tpoly(k_polynomial(M), n)


def euler_tor_sum(E: Presentation, F: Presentation, g: GroupElement, i_max: int, n: int | None = None,
                  action: ActionSpec | None = None) -> KClass:
    """``sum_i (-1)^i [Tor_i(E, gF)]`` for ``i <= i_max``."""
    if action is None:
        action = ActionSpec(E.ring, "linear")
    if n is None:
        n = default_dimension(E)
    gF = translate_module(F, g, action)
    total = TPoly()
    for i, h in enumerate(tor(E, gF, i_max)):
        kp = h.k_polynomial()
        total = total + (kp if i % 2 == 0 else -kp)
    return KClass.from_tpoly(total, n)


def scenario_euler_sum(s: Scenario, g: GroupElement, n: int | None = None) -> KClass:
    """As :func:`euler_tor_sum` with the scenario's cached resolution and action."""
    if n is None:
        n = default_dimension(s.E)
    total = TPoly()
    for i, h in enumerate(tor_translate(s, g)):
        kp = h.k_polynomial()
        total = total + (kp if i % 2 == 0 else -kp)
    return KClass.from_tpoly(total, n)


@dataclass
class ProductResult:
    kclass: KClass
    trial: int
    g: list
    rejected: list

    def as_dict(self) -> dict:
        return {"class": self.kclass.as_dict(), "trial": self.trial, "g": self.g, "rejected_samples": self.rejected}


def generic_product(E: Presentation, F: Presentation, s: Scenario, n: int | None = None) -> ProductResult:
    """Class of ``E ⊗ gF`` for a sampled ``g`` whose higher Tor vanishes."""
    validate_scenario(s)
    if n is None:
        n = default_dimension(E)
    sub = s
    if E is not s.E or F is not s.F:
        sub = Scenario(s.name, s.ring, s.x_relations, s.group, s.action, E, F, s.sampler, s.i_max,
                       False, s.graded, s.source)
    rejected = []
    for trial in range(s.sampler.attempts):
        vals, g = sample_for_trial(sub, trial)
        rep = check_vanishing(sub, g, crosscheck=False, params=vals)
        if rep.verdict:
            tor0 = tor(E, translate_module(F, g, s.action), 0)[0]
            return ProductResult(KClass.from_tpoly(tor0.k_polynomial(), n), trial, rep.g, rejected)
        rejected.append({"trial": trial, "g": rep.g})
        if s.sampler.pin is not None:
            break
    raise KTheoryError(f"no sample with vanishing higher Tor; rejected: {rejected}")


@dataclass
class InvarianceReport:
    classes: list  # (label, KClass)

    @property
    def invariant(self) -> bool:
        return len({c for _, c in self.classes}) <= 1

    def as_dict(self) -> dict:
        return {"classes": [{"g": label, **c.as_dict()} for label, c in self.classes],
                "invariant": self.invariant}


def euler_invariance(s: Scenario, samples: int, n: int | None = None) -> InvarianceReport:
    """Euler Tor sums at the identity and at ``samples`` sampled translates."""
    out = [("identity", scenario_euler_sum(s, GroupElement.identity(s.field, s.group.n), n))]
    for t in range(samples):
        _, g = sample_for_trial(s, t)
        out.append((f"sample:{t}", scenario_euler_sum(s, g, n)))
    return InvarianceReport(out)
