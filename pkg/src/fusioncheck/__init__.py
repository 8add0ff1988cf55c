"""Verification engine for skeletal multiplicity-free braided fusion categories."""
from .braiding import (RSymbolTable, apply_gauge_r, check_braiding_unitarity, check_hexagons,
                       monodromy, solve_braidings)
from .catalog import CATALOG_NAMES, Model, catalog_get, load_model, save_model
from .fsymbols import (FSymbolTable, GaugeTransformation, apply_gauge_f, check_f_unitarity,
                       check_pentagon)
from .fusion_ring import FusionRing, fp_dimensions, fusion_matrix, validate_ring
from .kernels import BACKEND
from .modular import is_modular, modular_data, s_matrix, t_matrix
from .numerics import Tolerance
from .ribbon import (RibbonStructure, SignCharacter, Twist, canonical_twist, check_balancing,
                     check_ribbon_condition, enumerate_ribbon_structures, quantum_dims,
                     select_unitary_ribbon, sign_characters)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CATALOG_NAMES", "FSymbolTable", "FusionRing", "GaugeTransformation", "Model",
    "RSymbolTable", "RibbonStructure", "SignCharacter", "Tolerance", "Twist", "apply_gauge_f",
    "apply_gauge_r", "canonical_twist", "catalog_get", "check_balancing", "check_braiding_unitarity",
    "check_f_unitarity", "check_hexagons", "check_pentagon", "check_ribbon_condition",
    "enumerate_ribbon_structures", "fp_dimensions", "fusion_matrix", "is_modular", "load_model",
    "modular_data", "monodromy", "quantum_dims", "s_matrix", "save_model", "select_unitary_ribbon",
    "sign_characters", "solve_braidings", "t_matrix", "validate_ring",
]
