"""Experiment descriptions: JSON loading, the scenario dataclass, the bundled corpus."""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .fields import GF, QQ, Field, is_prime
from .group import ActionSpec, GroupElement, ParametricGroup, SamplerPolicy, pluecker_names
from .poly import Ring
from .resolutions import Presentation


class ScenarioError(ValueError):
    """Malformed or rejected scenario."""


@dataclass(frozen=True)
class GLGroup:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ScenarioError("GL_n needs n >= 1")


@dataclass
class Scenario:
    name: str
    ring: Ring
    x_relations: tuple
    group: Any  # GLGroup | ParametricGroup
    action: ActionSpec
    E: Presentation
    F: Presentation
    sampler: SamplerPolicy = SamplerPolicy()
    i_max: int = 3
    crosscheck: bool = False
    graded: bool = True
    source: dict = field(default_factory=dict, repr=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def parametric(self) -> bool:
        return isinstance(self.group, ParametricGroup)

    @property
    def group_size(self) -> int:
        return self.group.n

    def with_overrides(self, *, prime: int | None = None, i_max: int | None = None,
                       crosscheck: bool | None = None, seed: int | None = None, pin=None) -> "Scenario":
        doc = copy.deepcopy(self.source)
        if prime is not None:
            doc["field"] = {"type": "Fp", "p": prime}
        if i_max is not None:
            doc["i_max"] = i_max
        if crosscheck is not None:
            doc["crosscheck"] = crosscheck
        if seed is not None:
            doc.setdefault("sampler", {})["seed"] = seed
        if pin is not None:
            doc.setdefault("sampler", {})["pin"] = pin
        return scenario_from_dict(doc)


# ------------------------------------------------------------------- parsing


def _field(doc) -> Field:
    if doc is None:
        return GF(32003)
    if isinstance(doc, str):
        doc = {"type": doc}
    kind = str(doc.get("type", "")).upper()
    if kind in ("Q", "QQ"):
        return QQ
    if kind in ("FP", "GF"):
        p = int(doc.get("p", 32003))
        if not (2 <= p < 2**31 and is_prime(p)):
            raise ScenarioError(f"field modulus {p} is not a prime below 2^31")
        return GF(p)
    raise ScenarioError(f"unknown field type {doc!r}")


def _module(doc, ring: Ring, ideal: tuple, label: str) -> Presentation:
    if not isinstance(doc, dict):
        raise ScenarioError(f"{label}: expected an object")
    try:
        if "ideal" in doc:
            degree = int(doc.get("degree", 0))
            return Presentation.cyclic(ring, doc["ideal"], ideal, degree, label)
        if "matrix" in doc:
            rows = doc["matrix"]
            degrees = doc.get("degrees")
            if degrees is None:
                degrees = [0] * len(rows)
            if not rows:
                return Presentation.free(ring, degrees, ideal, label)
            return Presentation.from_matrix(ring, rows, tuple(degrees), ideal, label)
        if "free" in doc:
            f = doc["free"]
            degrees = [0] * int(f) if isinstance(f, int) else [int(d) for d in f]
            return Presentation.free(ring, degrees, ideal, label)
    except (ValueError, KeyError, IndexError) as exc:
        raise ScenarioError(f"{label}: {exc}") from exc
    raise ScenarioError(f"{label}: need one of 'ideal', 'matrix', 'free'")


def _sampler(doc, field_: Field, n: int) -> SamplerPolicy:
    doc = doc or {}
    pin = doc.get("pin")
    if pin is not None and pin != "identity":
        pin = tuple(tuple(field_.parse(str(x)) for x in row) for row in pin)
        if len(pin) != n or any(len(r) != n for r in pin):
            raise ScenarioError("pinned matrix has the wrong size")
    return SamplerPolicy(int(doc.get("seed", 42)), int(doc.get("bound", 10)), int(doc.get("attempts", 16)), pin)


def scenario_from_dict(doc: dict) -> Scenario:
    doc = copy.deepcopy(doc)
    try:
        name = str(doc.get("name", "scenario"))
        F = _field(doc.get("field"))
        rdoc = doc.get("ring") or {}
        action_doc = doc.get("action") or {"type": "linear"}
        kind = action_doc.get("type", "linear")
        variables = rdoc.get("vars")
        if variables is None and kind == "pluecker":
            variables = pluecker_names(int(action_doc["n"]), int(action_doc["k"]))
        if not variables:
            raise ScenarioError("ring.vars is required")
        ring = Ring(tuple(variables), F, rdoc.get("weights"))
        graded = bool(rdoc.get("graded", True))
        xrel = tuple(ring(p) for p in doc.get("x_relations", []))
        xrel = tuple(p for p in xrel if p)
        if kind == "linear":
            action = ActionSpec(ring, "linear")
        elif kind == "pluecker":
            action = ActionSpec(ring, "pluecker", int(action_doc["k"]), int(action_doc["n"]))
        else:
            raise ScenarioError(f"unknown action type {kind!r}")
        gdoc = doc.get("group") or {"type": "GL", "n": action.group_size}
        gkind = str(gdoc.get("type", "GL"))
        if gkind == "GL":
            group = GLGroup(int(gdoc.get("n", action.group_size)))
        elif gkind == "parametric":
            params = tuple(gdoc["params"])
            clash = set(params) & set(ring.variables)
            if clash:
                raise ScenarioError(f"parameter names clash with coordinates: {sorted(clash)}")
            A = Ring(params, F)
            group = ParametricGroup(A, tuple(tuple(A(str(e)) for e in row) for row in gdoc["matrix"]))
        else:
            raise ScenarioError(f"unknown group type {gkind!r}")
        E = _module(doc.get("E"), ring, xrel, "E")
        Fm = _module(doc.get("F"), ring, xrel, "F")
        sampler = _sampler(doc.get("sampler"), F, group.n)
        i_max = int(doc.get("i_max", 3))
        if i_max < 0:
            raise ScenarioError("i_max must be >= 0")
    except ScenarioError:
        raise
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise ScenarioError(f"malformed scenario: {exc}") from exc
    return Scenario(name, ring, xrel, group, action, E, Fm, sampler, i_max,
                    bool(doc.get("crosscheck", False)), graded, doc)


def load_scenario(path) -> Scenario:
    p = Path(path)
    if not p.exists():
        bundled = corpus_path(str(path))
        if bundled is None:
            raise ScenarioError(f"no scenario file {path}")
        p = bundled
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{p}: invalid JSON ({exc})") from exc
    return scenario_from_dict(doc)


def corpus_names() -> list:
    root = resources.files("generic_tor") / "corpus"
    return sorted(f.name[:-5] for f in root.iterdir() if f.name.endswith(".json"))


def corpus_path(name: str) -> Path | None:
    stem = name[:-5] if name.endswith(".json") else name
    f = resources.files("generic_tor") / "corpus" / f"{stem}.json"
    return Path(str(f)) if f.is_file() else None


def load_corpus(name: str) -> Scenario:
    p = corpus_path(name)
    if p is None:
        raise ScenarioError(f"no bundled scenario {name!r}")
    return load_scenario(p)


def parse_group_element(text: str, scenario: Scenario, trial_default: int = 0) -> GroupElement:
    """``identity``, ``sample:k`` or a JSON matrix literal."""
    from .bertini import sample_for_trial

    n = scenario.group_size
    text = text.strip()
    if text == "identity":
        return GroupElement.identity(scenario.field, n)
    if text.startswith("sample:"):
        return sample_for_trial(scenario, int(text[7:]))[1]
    try:
        rows = json.loads(text)
        M = tuple(tuple(scenario.field.parse(str(x)) for x in row) for row in rows)
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise ScenarioError(f"cannot parse group element {text!r}") from exc
    if len(M) != n or any(len(r) != n for r in M):
        raise ScenarioError(f"group element must be {n}x{n}")
    try:
        return GroupElement(scenario.field, M)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
