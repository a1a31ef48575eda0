"""Holonomy invariant kappa of closed Hamiltonian isotopies on SU(n) coadjoint orbits.

Three independent routes compute kappa: the direct action integral on
SU(2) orbits (:func:`kappa_direct`), the isotropy character at the endpoint
of the Lax path (:func:`kappa_character`), and the Weyl character ratio
(:func:`kappa_weyl`).
"""
from .actiondirect import kappa_direct
from .laxflow import CurveSpec, ScalarTimeFunction, Sinusoid, closure_check, solve_lax
from .orbit import DualFunctional, WeightVector, weight_of
from .scenario import Report, ScenarioConfig, parse_config, run_scenario, verify_paper
from .weylrep import KappaResult, kappa_character, kappa_weyl

__version__ = "0.1.0"

__all__ = [
    "CurveSpec",
    "DualFunctional",
    "KappaResult",
    "Report",
    "ScalarTimeFunction",
    "ScenarioConfig",
    "Sinusoid",
    "WeightVector",
    "closure_check",
    "kappa_character",
    "kappa_direct",
    "kappa_weyl",
    "parse_config",
    "run_scenario",
    "solve_lax",
    "verify_paper",
    "weight_of",
]
