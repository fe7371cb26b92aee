"""
Instance factory and registry for building groups, bimodules and modules from configuration.

This module provides two mechanisms:

1. **load_instance(kind, config)**: Factory function for config-driven runs.
   Looks up a builder by kind ("group", "bimodule", "module") and the
   config's "type" key, first in the user registry, then in the builtins.

2. **register_instance(kind, name)**: Decorator for callers to add their own
   builders, enabling discovery via load_instance().

Design rationale:
    Instance files and the CLI only ever name things; the registry turns
    names into verified objects. Third-party groups or module certificates
    can be plugged in without touching the kernel.
"""

from __future__ import annotations

import logging
from typing import Any, Callable, Dict, Mapping

from sympy.polys.matrices.sdm import SDM

from .bimodules import HopfBimoduleData, assemble_hopf_bimodule, permutation_bimodule, z2_loops_bimodule
from .braidmod import (
    FiniteCycleModule,
    class_module,
    conjugation_module,
    d0_module_from_yd,
    trivial_module,
)
from .exactlin import BasisIndex, Field, sdm
from .exceptions import InputError
from .lqt import DoubleCrossProduct, LqtStructure, quiver_lqt
from .quivers import (
    Arrow,
    FiniteGroup,
    Ramification,
    build_hopf_quiver,
    cyclic_group,
    klein_four_group,
    symmetric_group,
    trivial_group,
)
from .schema import InstanceSpec, ModuleSpec

logger = logging.getLogger(__name__)

KINDS = ("group", "bimodule", "module")

# ──── Registry ────

_REGISTRY: Dict[str, Dict[str, Callable[..., Any]]] = {kind: {} for kind in KINDS}


def _table_group(table: list[list[int]], name: str = "G") -> FiniteGroup:
    return FiniteGroup(name, tuple(tuple(row) for row in table))


def _arrow(q_arrows: set[Arrow], key: tuple[int, int, int]) -> Arrow:
    arrow = Arrow(*key)
    if arrow not in q_arrows:
        raise InputError(f"{arrow} is not an arrow of the quiver")
    return arrow


def _permutation_bimodule(
    group: FiniteGroup,
    field: Field,
    ramification: Mapping[int, int],
    characters: Mapping[tuple[int, int], Any] | None = None,
    name: str | None = None,
    **_: Any,
) -> HopfBimoduleData:
    quiver = build_hopf_quiver(group, Ramification.from_elements(group, ramification))
    return permutation_bimodule(quiver, field, characters, name=name or f"kQ1({group.name})")


def _table_bimodule(
    group: FiniteGroup,
    field: Field,
    ramification: Mapping[int, int],
    left: list[Any],
    right: list[Any],
    name: str | None = None,
    **_: Any,
) -> HopfBimoduleData:
    quiver = build_hopf_quiver(group, Ramification.from_elements(group, ramification))
    arrows = set(quiver.arrows)
    left_table: dict[tuple, dict[Arrow, Any]] = {}
    right_table: dict[tuple, dict[Arrow, Any]] = {}
    for entry in left:
        image = {_arrow(arrows, key): value for value, key in entry.image}
        left_table[(entry.element, _arrow(arrows, entry.arrow))] = image
    for entry in right:
        image = {_arrow(arrows, key): value for value, key in entry.image}
        right_table[(_arrow(arrows, entry.arrow), entry.element)] = image
    return assemble_hopf_bimodule(quiver, left_table, right_table, field, name=name or "table")


def _z2_loops(field: Field, **_: Any) -> HopfBimoduleData:
    return z2_loops_bimodule(field)


def _trivial_module(double: DoubleCrossProduct, **_: Any) -> FiniteCycleModule:
    return trivial_module(double)


def _conjugation_module(double: DoubleCrossProduct, group: FiniteGroup, **_: Any) -> FiniteCycleModule:
    return conjugation_module(double, group)


def _class_module(
    double: DoubleCrossProduct, group: FiniteGroup, representative: int, **_: Any
) -> FiniteCycleModule:
    return class_module(double, group, representative)


def _yd_module(
    double: DoubleCrossProduct,
    group: FiniteGroup,
    grading: list[int],
    action: Mapping[int, Any],
    name: str | None = None,
    **_: Any,
) -> FiniteCycleModule:
    return d0_module_from_yd(double, group, grading, action, name=name or "yd")


def _matrix_module(
    double: DoubleCrossProduct,
    basis: list[str],
    cycle_bounds: list[int],
    matrices: list[Any],
    cap: int | None = None,
    carrier_grading: list[int] | None = None,
    name: str | None = None,
    **_: Any,
) -> FiniteCycleModule:
    D = double.double
    field = D.field
    n = len(basis)
    actions: dict[BasisIndex, SDM] = {}
    for entry in matrices:
        index = BasisIndex(*entry.d)
        if not 0 <= index.degree <= D.truncation or not 0 <= index.ordinal < D.basis.dim(index.degree):
            raise InputError(f"{tuple(index)} is not a basis element of D")
        if len(entry.rows) != n or any(len(row) != n for row in entry.rows):
            raise InputError(f"matrix for {tuple(index)} must be {n}x{n}")
        rows = {r: {c: field.convert(v) for c, v in enumerate(row)} for r, row in enumerate(entry.rows)}
        actions[index] = sdm(rows, (n, n), field)
    top = max((i.degree for i in actions), default=0)
    return FiniteCycleModule(
        name=name or "certificate",
        field=field,
        basis=tuple(basis),
        actions=actions,
        cycle_bounds=tuple(cycle_bounds),
        cap=top if cap is None else cap,
        grading=tuple(carrier_grading) if carrier_grading is not None else None,
    )


_BUILTIN_MAP: Dict[str, Dict[str, Callable[..., Any]]] = {
    "group": {
        "trivial": trivial_group,
        "cyclic": cyclic_group,
        "symmetric": symmetric_group,
        "klein": klein_four_group,
        "table": _table_group,
    },
    "bimodule": {
        "permutation": _permutation_bimodule,
        "table": _table_bimodule,
        "z2-loops": _z2_loops,
    },
    "module": {
        "trivial": _trivial_module,
        "conjugation": _conjugation_module,
        "class": _class_module,
        "yd": _yd_module,
        "matrices": _matrix_module,
    },
}


def register_instance(kind: str, name: str):
    """Decorator for callers to register their own builders.

    Args:
        kind: "group", "bimodule" or "module".
        name: Unique type name for config-driven lookup.

    Returns:
        A decorator that registers the builder.

    Example:
        >>> @register_instance("group", "z5")
        ... def z5(**_):
        ...     return cyclic_group(5)
        >>> group = load_instance("group", {"type": "z5"})
    """
    if kind not in KINDS:
        raise ValueError(f"Unknown kind: {kind!r}. Available: {', '.join(KINDS)}")

    def decorator(fn: Callable[..., Any]):
        if name in _REGISTRY[kind]:
            logger.warning(
                "Overwriting registered %s builder %r (was %s, now %s)",
                kind,
                name,
                getattr(_REGISTRY[kind][name], "__name__", "?"),
                getattr(fn, "__name__", "?"),
            )
        _REGISTRY[kind][name] = fn
        return fn

    return decorator


def load_instance(kind: str, config: Mapping[str, Any]) -> Any:
    """Factory: build a group, bimodule or module from a configuration dictionary.

    Looks up the builder by the "type" key, first in the user registry, then
    in the builtins. Remaining keys are passed as keyword arguments.

    Raises:
        ValueError: If "type" is missing or unknown (an InputError).
    """
    if kind not in KINDS:
        raise InputError(f"Unknown kind: {kind!r}. Available: {', '.join(KINDS)}")
    config = dict(config)
    type_name = config.pop("type", None)

    if not type_name:
        raise InputError(f"Config must include 'type' key specifying the {kind} type")

    builder = _REGISTRY[kind].get(type_name) or _BUILTIN_MAP[kind].get(type_name)

    if builder is None:
        registered = sorted(set(_REGISTRY[kind]) | set(_BUILTIN_MAP[kind]))
        raise InputError(f"Unknown {kind} type: {type_name!r}. Available: {', '.join(registered)}")

    return builder(**config)


# ──── Instance specs ────


def instance_group(spec: InstanceSpec) -> FiniteGroup:
    if spec.bimodule.type == "z2-loops":
        return cyclic_group(2)
    return load_instance("group", spec.group.config())


def instance_bimodule(spec: InstanceSpec) -> HopfBimoduleData:
    """Resolve the group and the Hopf bimodule named by an instance spec."""
    field = spec.field.build()
    group = instance_group(spec)
    b = spec.bimodule
    config: dict[str, Any] = {
        "type": b.type,
        "group": group,
        "field": field,
        "ramification": dict(b.ramification),
        "name": b.name,
    }
    if b.type == "permutation":
        config["characters"] = b.character_table()
    elif b.type == "table":
        config["left"] = list(b.left)
        config["right"] = list(b.right)
    return load_instance("bimodule", config)


def instance_lqt(spec: InstanceSpec, threads: int = 1, verify: bool = True) -> LqtStructure:
    """Build the double and R_n for n <= level named by an instance spec."""
    m = instance_bimodule(spec)
    s = quiver_lqt(m, spec.max_degree, spec.level, spec.variant, spec.r_unit_variant, threads, verify)
    s.ledger["field"] = spec.field.name
    s.ledger["group"] = instance_group(spec).name
    return s


def instance_modules(
    specs: list[ModuleSpec], double: DoubleCrossProduct, group: FiniteGroup
) -> list[FiniteCycleModule]:
    modules = []
    for spec in specs:
        config = spec.model_dump(exclude_none=True)
        config["matrices"] = list(spec.matrices)
        config.update(double=double, group=group)
        modules.append(load_instance("module", config))
    return modules
