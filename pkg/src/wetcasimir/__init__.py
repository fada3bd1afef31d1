"""Lifshitz-van der Waals pressure between metals immersed in liquids."""
from .constants import EV_PER_NM3_IN_PA, HBAR_C
from .dielectric import (BruggemanComposite, ColeCole, ColeColeParams, Constant,
                         DielectricModel, Drude, DrudeParams, Ninham, NinhamParams,
                         Tabulated, Vacuum, bruggeman_mix, cole_cole_eps_izeta,
                         drude_damping, drude_eps_imag, drude_eps_izeta,
                         eval_model, kk_rotate, ninham_eps_izeta)
from .errors import (ConvergenceError, DomainError, MaterialFileError,
                     SeparationError, UnknownRowError, WetCasimirError)
from .lifshitz import (ForceCurve, LayerStack, Polarization, delta_curve,
                       force_curve, force_per_area, fresnel, ideal_mirror_force,
                       integrand, kz, percent_difference)
from .quadrature import QuadratureSpec

__version__ = "0.1.0"

__all__ = [
    "EV_PER_NM3_IN_PA", "HBAR_C",
    "BruggemanComposite", "ColeCole", "ColeColeParams", "Constant",
    "DielectricModel", "Drude", "DrudeParams", "Ninham", "NinhamParams",
    "Tabulated", "Vacuum", "bruggeman_mix", "cole_cole_eps_izeta",
    "drude_damping", "drude_eps_imag", "drude_eps_izeta", "eval_model",
    "kk_rotate", "ninham_eps_izeta",
    "ConvergenceError", "DomainError", "MaterialFileError", "SeparationError",
    "UnknownRowError", "WetCasimirError",
    "ForceCurve", "LayerStack", "Polarization", "delta_curve", "force_curve",
    "force_per_area", "fresnel", "ideal_mirror_force", "integrand", "kz",
    "percent_difference", "QuadratureSpec",
]
