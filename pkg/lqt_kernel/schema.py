"""
Instance files and module certificates.

An instance file is a JSON document naming the ground field, the group, the
ramification and Hopf bimodule on its arrows, the truncation degree N, the
level n and the variant selectors. Module certificates describe modules
over the double, either by a builtin name or by explicit action matrices.

Design rationale:
    pydantic models validate the documents once, at the boundary; everything
    past this module receives typed, normalised specs. Validation failures
    surface as SchemaError (an InputError) so the CLI maps them to exit 2.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from . import exactlin
from .exceptions import InputError, SchemaError

logger = logging.getLogger(__name__)

ScalarText = int | str
ArrowKey = tuple[int, int, int]

_GROUP_ALIASES = {
    "z2": ("cyclic", 2),
    "z3": ("cyclic", 3),
    "s3": ("symmetric", 3),
    "s4": ("symmetric", 4),
    "v4": ("klein", None),
}


class FieldSpec(BaseModel):
    """The ground field: characteristic 0 (QQ) or an odd prime p."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    characteristic: int = 0

    @model_validator(mode="before")
    @classmethod
    def _from_text(cls, data: Any) -> Any:
        if isinstance(data, (str, int)) and not isinstance(data, bool):
            return {"characteristic": exactlin.Field.parse(data).characteristic}
        return data

    @field_validator("characteristic")
    @classmethod
    def _supported(cls, value: int) -> int:
        exactlin.Field.parse(value)
        return value

    def build(self) -> exactlin.Field:
        return exactlin.Field.parse(self.characteristic)

    @property
    def name(self) -> str:
        return self.build().name


class GroupSpec(BaseModel):
    """A builtin group (``trivial``, ``cyclic``, ``symmetric``, ``klein``) or a Cayley table.

    Shorthands: ``"cyclic:3"``, ``"S3"``, ``"Z2"``, or a bare table (list of rows).
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    type: str = "trivial"
    n: int | None = None
    table: list[list[int]] | None = None
    name: str | None = None

    @model_validator(mode="before")
    @classmethod
    def _shorthand(cls, data: Any) -> Any:
        if isinstance(data, list):
            return {"type": "table", "table": data}
        if isinstance(data, str):
            kind, _, arg = data.partition(":")
            alias = _GROUP_ALIASES.get(kind.strip().lower())
            if alias is not None:
                return {"type": alias[0]} if alias[1] is None else {"type": alias[0], "n": alias[1]}
            out: dict[str, Any] = {"type": kind.strip()}
            if arg:
                out["n"] = arg
            return out
        return data

    @model_validator(mode="after")
    def _consistent(self) -> "GroupSpec":
        if self.type == "table" and self.table is None:
            raise ValueError("group type 'table' needs a 'table'")
        if self.type in ("cyclic", "symmetric") and self.n is None:
            raise ValueError(f"group type {self.type!r} needs 'n'")
        return self

    def config(self) -> dict[str, Any]:
        out: dict[str, Any] = {"type": self.type}
        if self.n is not None:
            out["n"] = self.n
        if self.table is not None:
            out["table"] = self.table
            out["name"] = self.name or "G"
        return out


class ActionEntrySpec(BaseModel):
    """One entry of an explicit action table: element . arrow (or arrow . element) = image."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    element: int
    arrow: ArrowKey
    image: list[tuple[ScalarText, ArrowKey]] = Field(default_factory=list)


class BimoduleSpec(BaseModel):
    """The Hopf bimodule on the arrows.

    ``permutation``: translation on the left, a character-twisted translation on
    the right; ``characters`` maps ``"rep:index"`` to chi(h) for every h.
    ``table``: explicit ``left`` and ``right`` action entries.
    ``z2-loops``: Z2, three loops at the identity, characters (trivial, trivial, sign).
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    type: str = "permutation"
    ramification: dict[int, int] = Field(default_factory=dict)
    characters: dict[str, list[ScalarText]] = Field(default_factory=dict)
    left: list[ActionEntrySpec] = Field(default_factory=list)
    right: list[ActionEntrySpec] = Field(default_factory=list)
    name: str | None = None

    @field_validator("characters")
    @classmethod
    def _character_keys(cls, value: dict[str, list[ScalarText]]) -> dict[str, list[ScalarText]]:
        for key in value:
            rep, sep, index = key.partition(":")
            if not sep or not rep.strip().isdigit() or not index.strip().isdigit():
                raise ValueError(f"character key {key!r} must look like 'rep:index'")
        return value

    @model_validator(mode="after")
    def _consistent(self) -> "BimoduleSpec":
        if self.type == "table" and not (self.left or self.right):
            raise ValueError("bimodule type 'table' needs 'left' and 'right' entries")
        return self

    def character_table(self) -> dict[tuple[int, int], list[ScalarText]]:
        out = {}
        for key, values in sorted(self.characters.items()):
            rep, _, index = key.partition(":")
            out[(int(rep), int(index))] = values
        return out


class MatrixEntrySpec(BaseModel):
    """ρ(d) for the D basis element d = (degree, ordinal), as a list of rows."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    d: tuple[int, int]
    rows: list[list[ScalarText]]


class ModuleSpec(BaseModel):
    """A module certificate.

    ``trivial``, ``conjugation`` and ``class`` (with ``representative``) are
    builtins; ``yd`` takes a ``grading`` and per-element ``action`` matrices;
    ``matrices`` is a full certificate over D with ``basis``, ``cycle_bounds``,
    ``cap`` and one matrix per supplied D basis element.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    type: str
    name: str | None = None
    representative: int | None = None
    grading: list[int] | None = None
    action: dict[int, list[list[ScalarText]]] | None = None
    basis: list[str] | None = None
    cycle_bounds: list[int] | None = None
    cap: int | None = None
    carrier_grading: list[int] | None = None
    matrices: list[MatrixEntrySpec] = Field(default_factory=list)

    @model_validator(mode="before")
    @classmethod
    def _shorthand(cls, data: Any) -> Any:
        if isinstance(data, str):
            kind, _, arg = data.partition(":")
            out: dict[str, Any] = {"type": kind.strip()}
            if arg:
                out["representative"] = arg
            return out
        return data

    @model_validator(mode="after")
    def _consistent(self) -> "ModuleSpec":
        if self.type == "class" and self.representative is None:
            raise ValueError("module type 'class' needs 'representative'")
        if self.type == "yd" and (self.grading is None or self.action is None):
            raise ValueError("module type 'yd' needs 'grading' and 'action'")
        if self.type == "matrices":
            if self.basis is None or self.cycle_bounds is None:
                raise ValueError("module type 'matrices' needs 'basis' and 'cycle_bounds'")
            if len(self.basis) != len(self.cycle_bounds):
                raise ValueError("'basis' and 'cycle_bounds' differ in length")
        return self


class InstanceSpec(BaseModel):
    """Everything needed to build one double and its R-matrices."""

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    field: FieldSpec = Field(default_factory=FieldSpec)
    group: GroupSpec = Field(default_factory=GroupSpec)
    bimodule: BimoduleSpec = Field(default_factory=BimoduleSpec)
    max_degree: int = Field(2, ge=0)
    level: int = Field(0, ge=0)
    variant: Literal["path", "semipath"] = "path"
    r_unit_variant: Literal["unit", "single"] = Field("unit", alias="r-unit-variant")
    modules: list[ModuleSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def _budget(self) -> "InstanceSpec":
        if self.level > self.max_degree:
            raise ValueError(f"level {self.level} exceeds max_degree {self.max_degree}")
        if self.bimodule.type == "z2-loops" and self.field.characteristic == 2:
            raise ValueError("z2-loops needs char k != 2")
        return self

    def with_overrides(self, **updates: Any) -> "InstanceSpec":
        """Apply CLI overrides (None values are ignored) and re-validate."""
        data = self.model_dump()
        for key, value in updates.items():
            if value is not None:
                data[key] = value
        return parse_instance(data)


# ──── Parsing ────


def _schema_error(source: str, error: ValidationError) -> SchemaError:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "<root>"
    return SchemaError(f"{source}: {location}: {first['msg']}")


def parse_instance(data: Any, source: str = "instance") -> InstanceSpec:
    try:
        return InstanceSpec.model_validate(data)
    except ValidationError as e:
        raise _schema_error(source, e) from e


def parse_modules(data: Any, source: str = "modules") -> list[ModuleSpec]:
    items = data if isinstance(data, list) else data.get("modules", [data]) if isinstance(data, dict) else [data]
    try:
        return [ModuleSpec.model_validate(item) for item in items]
    except ValidationError as e:
        raise _schema_error(source, e) from e


def read_json(path: str | Path) -> Any:
    """Read a JSON document; syntax errors become InputError with line and column."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: cannot read ({e.strerror})") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from e


def load_instance_file(path: str | Path) -> InstanceSpec:
    spec = parse_instance(read_json(path), source=str(path))
    logger.debug("Loaded instance %s: %s", path, spec.model_dump())
    return spec


def load_module_files(paths: list[str] | list[Path]) -> list[ModuleSpec]:
    out: list[ModuleSpec] = []
    for path in paths:
        out.extend(parse_modules(read_json(path), source=str(path)))
    return out
