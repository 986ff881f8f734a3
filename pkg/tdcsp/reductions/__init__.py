"""
Parameterized reductions between Binary CSP, weighted satisfiability,
circuits, List Coloring and Precoloring Extension.
"""

from .coloring import (
    ColoringKernel,
    listcoloring_to_precolext,
    listcoloring_vc_to_wsat2,
    precolext_modtd_strip,
    precolext_vc_kernel,
)
from .hardness import (
    INACTIVE,
    fvs_formula_depth,
    wsat2d1am_to_bincsp_forest_modulator,
    wsat3am_to_bincsp_vc,
    wsatam_to_bincsp_fvs,
)
from .membership import (
    bincsp_fvs_to_circuit,
    bincsp_modtd_to_wsat2d1,
    bincsp_vc_to_wsat3,
)
from .report import ReductionReport, validate_parameters

__all__ = [
    "ReductionReport",
    "validate_parameters",
    "INACTIVE",
    "wsat3am_to_bincsp_vc",
    "bincsp_vc_to_wsat3",
    "wsat2d1am_to_bincsp_forest_modulator",
    "bincsp_modtd_to_wsat2d1",
    "wsatam_to_bincsp_fvs",
    "fvs_formula_depth",
    "bincsp_fvs_to_circuit",
    "listcoloring_vc_to_wsat2",
    "listcoloring_to_precolext",
    "precolext_vc_kernel",
    "precolext_modtd_strip",
    "ColoringKernel",
]
