"""
Alternating read-once stack machines: semantics with resource accounting,
the compiler from Binary CSP on elimination trees, universal blocks and the
reduction from regular machines back to Binary CSP.
"""

from .compiler import (
    TdProgram,
    TreedepthCspMachine,
    compile_bincsp_td,
    decode_td_program,
    encode_td_program,
)
from .model import (
    DETERMINISTIC,
    EXISTENTIAL,
    UNIVERSAL,
    ArosMachine,
    ComputationNode,
    ResourceLimits,
    ResourceUsage,
    StacklessConfiguration,
    UniversalBlock,
    accepting_tree,
    bits_to_int,
    decide,
    int_to_bits,
    measure_tree,
    stack_accepts,
    universal_block,
)
from .regular import compile_regular_arosm_to_bincsp
from .table import (
    TableMachine,
    ToyMachine,
    Transition,
    format_arosm,
    load_toy_machines,
    parse_arosm,
    read_arosm,
)

__all__ = [
    "ArosMachine",
    "StacklessConfiguration",
    "ResourceLimits",
    "ResourceUsage",
    "ComputationNode",
    "UniversalBlock",
    "EXISTENTIAL",
    "UNIVERSAL",
    "DETERMINISTIC",
    "decide",
    "accepting_tree",
    "measure_tree",
    "universal_block",
    "stack_accepts",
    "bits_to_int",
    "int_to_bits",
    "TableMachine",
    "Transition",
    "ToyMachine",
    "parse_arosm",
    "read_arosm",
    "format_arosm",
    "load_toy_machines",
    "TdProgram",
    "TreedepthCspMachine",
    "compile_bincsp_td",
    "encode_td_program",
    "decode_td_program",
    "compile_regular_arosm_to_bincsp",
]
