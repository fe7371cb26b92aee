"""
lqt-kernel: local quasitriangular structures on Hopf quivers, exactly.

Usage:
    >>> from lqt_kernel import Field, z2_loops_bimodule, path_double, verify_lqt
    >>>
    >>> m = z2_loops_bimodule(Field.rationals())
    >>> s = path_double(m, max_degree=2, level=1)
    >>> verify_lqt(s, 1).check("LQT4'").passed
    True

Builders, verifiers and the registry are exported eagerly; the CLI and the
bundle format load on first access.
"""

__version__ = "0.1.0"

# ──── Core Exports ────
from .exactlin import BasisIndex, Field, SparseTensor, SparseVector, add_scaled, solve_linear, tensor
from .exceptions import (
    BimoduleAxiomError,
    BudgetError,
    CharacteristicError,
    GroupTableError,
    InfeasibleSystemError,
    InputError,
    KernelError,
    RamificationError,
    SchemaError,
    SpaceMismatchError,
    VerificationError,
)
from .quivers import (
    FiniteGroup,
    HopfQuiver,
    Path,
    Ramification,
    build_hopf_quiver,
    compose_paths,
    conjugacy_classes,
    cyclic_group,
    direct_product,
    enumerate_paths,
    klein_four_group,
    symmetric_group,
    trivial_group,
)
from .reports import AxiomCheck, Report
from .bimodules import (
    HopfBimoduleData,
    arrow_comodule,
    arrow_module,
    assemble_hopf_bimodule,
    dualize_bimodule,
    permutation_bimodule,
    verify_bimodule,
    z2_loops_bimodule,
)
from .gradedhopf import (
    DualityPairing,
    GradedHopfAlgebra,
    compute_antipode,
    dual_hopf_algebra,
    duality_check,
    group_algebra,
    opposite_coalgebra,
    verify_hopf,
)
from .words import cotensor_hopf, tensor_hopf
from .lqt import (
    Copairing,
    DoubleCrossProduct,
    LqtStructure,
    SkewPairing,
    build_lqt,
    build_r,
    canonical_copairing,
    double_cross_product,
    group_double,
    path_double,
    quiver_lqt,
    quiver_skew_pairing,
    qybe_defect,
    semipath_double,
    verify_copairing,
    verify_lqt,
    verify_skew_pairing,
)
from .braidmod import (
    BraidingOperator,
    FiniteCycleModule,
    YdStructure,
    braiding_matrix,
    check_braid_relation,
    check_module,
    class_module,
    conjugation_module,
    d0_module_from_yd,
    extend_by_zero,
    hexagon_check,
    tensor_module,
    trivial_module,
    yd_structure,
)

# ──── Loader Exports ────
from .loader import load_instance, register_instance

# ──── Lazy Imports ────
_LAZY_MAP = {
    "read_bundle": (".bundle", "read_bundle"),
    "write_bundle": (".bundle", "write_bundle"),
    "InstanceSpec": (".schema", "InstanceSpec"),
    "ModuleSpec": (".schema", "ModuleSpec"),
    "main": (".cli", "main"),
}


def __getattr__(name: str):
    """Load the bundle format, schema models and CLI on first access."""
    if name in _LAZY_MAP:
        import importlib

        module_path, attr = _LAZY_MAP[name]
        module = importlib.import_module(module_path, package="lqt_kernel")
        value = getattr(module, attr)
        globals()[name] = value
        return value
    raise AttributeError(f"module 'lqt_kernel' has no attribute {name!r}")


__all__ = [
    "__version__",
    # Arithmetic
    "BasisIndex",
    "Field",
    "SparseTensor",
    "SparseVector",
    "add_scaled",
    "solve_linear",
    "tensor",
    # Errors
    "BimoduleAxiomError",
    "BudgetError",
    "CharacteristicError",
    "GroupTableError",
    "InfeasibleSystemError",
    "InputError",
    "KernelError",
    "RamificationError",
    "SchemaError",
    "SpaceMismatchError",
    "VerificationError",
    # Quivers
    "FiniteGroup",
    "HopfQuiver",
    "Path",
    "Ramification",
    "build_hopf_quiver",
    "compose_paths",
    "conjugacy_classes",
    "cyclic_group",
    "direct_product",
    "enumerate_paths",
    "klein_four_group",
    "symmetric_group",
    "trivial_group",
    # Reports
    "AxiomCheck",
    "Report",
    # Bimodules
    "HopfBimoduleData",
    "arrow_comodule",
    "arrow_module",
    "assemble_hopf_bimodule",
    "dualize_bimodule",
    "permutation_bimodule",
    "verify_bimodule",
    "z2_loops_bimodule",
    # Graded Hopf algebras
    "DualityPairing",
    "GradedHopfAlgebra",
    "compute_antipode",
    "cotensor_hopf",
    "dual_hopf_algebra",
    "duality_check",
    "group_algebra",
    "opposite_coalgebra",
    "tensor_hopf",
    "verify_hopf",
    # LQT
    "Copairing",
    "DoubleCrossProduct",
    "LqtStructure",
    "SkewPairing",
    "build_lqt",
    "build_r",
    "canonical_copairing",
    "double_cross_product",
    "group_double",
    "path_double",
    "quiver_lqt",
    "quiver_skew_pairing",
    "qybe_defect",
    "semipath_double",
    "verify_copairing",
    "verify_lqt",
    "verify_skew_pairing",
    # Modules and braidings
    "BraidingOperator",
    "FiniteCycleModule",
    "YdStructure",
    "braiding_matrix",
    "check_braid_relation",
    "check_module",
    "class_module",
    "conjugation_module",
    "d0_module_from_yd",
    "extend_by_zero",
    "hexagon_check",
    "tensor_module",
    "trivial_module",
    "yd_structure",
    # Loader
    "load_instance",
    "register_instance",
    # Lazy
    "read_bundle",
    "write_bundle",
    "InstanceSpec",
    "ModuleSpec",
    "main",
]
