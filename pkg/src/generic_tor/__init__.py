"""Exact engine for Tor of generic group translates of graded modules."""

from .fields import GF, QQ, FieldMismatchError, field_add, field_inverse
from .poly import Polynomial, Ring, RingMap, apply_ring_map, compare_monomials, format_polynomial, parse_polynomial
from .groebner import GroebnerBasis, buchberger, divide, eliminate, module_gb, syzygies
from .vectors import ModuleElement
from .hilbert import TPoly
from .resolutions import (
    FreeResolution,
    GradedFreeModule,
    ModuleMap,
    Presentation,
    k_polynomial,
    minimalize,
    resolve,
)
from .homology import (
    ChainComplex,
    DoubleComplex,
    HomologyModule,
    InvariantViolation,
    double_complex_tor,
    homology_at,
    tensor_with_module,
    tor,
    tor_balanced,
    total_complex,
)
from .group import ActionSpec, GroupElement, ParametricGroup, SamplerPolicy, compound_matrix, sample_group_element, translate_module
from .scenario import Scenario, ScenarioError, load_corpus, load_scenario, scenario_from_dict
from .bertini import (
    bad_locus,
    check_vanishing,
    generic_freeness_certificate,
    monte_carlo_density,
    validate_scenario,
)
from .ktheory import KClass, euler_tor_sum, generic_product, kclass_of_module

__version__ = "0.1.0"
