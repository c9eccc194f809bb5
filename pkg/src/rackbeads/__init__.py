"""Rack counting invariants of framed links and their enhancements.

The main entry points are re-exported here; see the submodules for the
rest (:mod:`rackbeads.codes` for diagram codes, :mod:`rackbeads.search`
for cocycle search, :mod:`rackbeads.cli` for the command line).
"""

from .cocycles import (
    DynamicalCocycle,
    TwoCocycle,
    XModuleStructure,
    bead_op,
    bead_op_inverse,
    coboundary,
    cocycle_from_module,
    extension_rack,
    trivial_cocycle,
    verify_2cocycle_reduced,
    verify_cocycle,
    verify_n_reduced,
    verify_xmodule,
)
from .codes import parse, serialize
from .diagram import LinkDiagram, label_constraints, self_writhe, with_framing
from .invariants import (
    bead_count,
    cocycle_invariant,
    counting_invariant,
    dynamical_invariant,
    enumerate_labelings,
    image_invariant,
    module_invariant,
    writhe_invariant,
)
from .linalg import ZmMatrix, count_kernel, presentation_matrix, row_reduce_prime, smith_normal_form
from .polynomial import InvariantPolynomial, WrithePolynomial
from .racks import RackTable, dihedral_quandle, kink_map, subrack_closure, trivial_rack, ts_rack, verify_rack
from .report import MalformedInputError, Report

__all__ = [
    "DynamicalCocycle",
    "TwoCocycle",
    "XModuleStructure",
    "bead_op",
    "bead_op_inverse",
    "coboundary",
    "cocycle_from_module",
    "extension_rack",
    "trivial_cocycle",
    "verify_2cocycle_reduced",
    "verify_cocycle",
    "verify_n_reduced",
    "verify_xmodule",
    "parse",
    "serialize",
    "LinkDiagram",
    "label_constraints",
    "self_writhe",
    "with_framing",
    "bead_count",
    "cocycle_invariant",
    "counting_invariant",
    "dynamical_invariant",
    "enumerate_labelings",
    "image_invariant",
    "module_invariant",
    "writhe_invariant",
    "ZmMatrix",
    "count_kernel",
    "presentation_matrix",
    "row_reduce_prime",
    "smith_normal_form",
    "InvariantPolynomial",
    "WrithePolynomial",
    "RackTable",
    "dihedral_quandle",
    "kink_map",
    "subrack_closure",
    "trivial_rack",
    "ts_rack",
    "verify_rack",
    "MalformedInputError",
    "Report",
]

__version__ = "0.1.0"
