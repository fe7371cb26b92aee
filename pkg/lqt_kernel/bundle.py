"""
Algebra bundles: every structure constant of a built LQT structure as JSON.

A bundle stores A and H (basis labels, unit, counit, complete product and
coproduct tables, antipodes, word realizations), the skew pairing τ and
τ^-1, the copairings P_n and the R-matrices R_n and R_n^-1, together with
the instance that produced them and the design-decision ledger. D itself
is rederived from A, H and τ on reload, so a tampered factor shows up in
the verifiers.

Design rationale:
    Scalars are exact text ("num/den" over QQ, residues over GF(p)) and every
    list is emitted in sorted basis order, so identical inputs give
    byte-identical files and a reloaded bundle re-verifies to the same
    report.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Mapping

from sympy.polys.matrices.sdm import SDM

from .exactlin import BasisIndex, Field, Scalar
from .exceptions import SchemaError
from .gradedhopf import DualLabel, GradedBasis, GradedHopfAlgebra, Label, label_text
from .lqt import Copairing, DoubleCrossProduct, LqtStructure, SkewPairing
from .quivers import Arrow
from .schema import InstanceSpec, parse_instance, read_json

logger = logging.getLogger(__name__)

BUNDLE_FORMAT = "lqt-kernel-bundle"
BUNDLE_VERSION = 1


# ──── Labels ────


def encode_label(label: Label) -> Any:
    if isinstance(label, bool):
        raise SchemaError(f"cannot encode label {label!r}")
    if isinstance(label, int):
        return label
    if isinstance(label, Arrow):
        return {"arrow": [label.source, label.target, label.index]}
    if isinstance(label, DualLabel):
        return {"dual": encode_label(label.inner)}
    if isinstance(label, tuple):
        return {"word": [encode_label(x) for x in label]}
    if isinstance(label, str):
        return {"text": label}
    raise SchemaError(f"cannot encode label {label!r}")


def decode_label(data: Any) -> Label:
    if isinstance(data, int) and not isinstance(data, bool):
        return data
    if isinstance(data, dict) and len(data) == 1:
        (kind, value), = data.items()
        if kind == "arrow":
            return Arrow(*value)
        if kind == "dual":
            return DualLabel(decode_label(value))
        if kind == "word":
            return tuple(decode_label(x) for x in value)
        if kind == "text":
            return str(value)
    raise SchemaError(f"malformed label {data!r}")


# ──── Sparse tables ────


def _key(index: BasisIndex) -> list[int]:
    return [index.degree, index.ordinal]


def _index(data: Any, algebra: str) -> BasisIndex:
    if not (isinstance(data, list) and len(data) == 2 and all(isinstance(x, int) for x in data)):
        raise SchemaError(f"{algebra}: malformed basis index {data!r}")
    return BasisIndex(*data)


def _vector(vec: Mapping[BasisIndex, Scalar], field: Field) -> list:
    return [[_key(i), field.format(c)] for i, c in sorted(vec.items()) if c]


def _tensor(t: Mapping[tuple[BasisIndex, ...], Scalar], field: Field) -> list:
    return [[[_key(i) for i in key], field.format(c)] for key, c in sorted(t.items()) if c]


def _read_vector(data: list, field: Field, where: str) -> dict[BasisIndex, Scalar]:
    out: dict[BasisIndex, Scalar] = {}
    for key, value in data:
        out[_index(key, where)] = field.convert(value)
    return out


def _read_tensor(data: list, field: Field, where: str) -> dict[tuple[BasisIndex, ...], Scalar]:
    out: dict[tuple[BasisIndex, ...], Scalar] = {}
    for keys, value in data:
        out[tuple(_index(k, where) for k in keys)] = field.convert(value)
    return out


# ──── Algebras ────


def algebra_document(h: GradedHopfAlgebra) -> dict[str, Any]:
    f = h.field
    products = h.complete_products()
    return {
        "name": h.name,
        "graded_product": h.graded_product,
        "base_point": None if h.base_point is None else encode_label(h.base_point),
        "basis": [[encode_label(label) for label in level] for level in h.basis.labels],
        "unit": _vector(h.unit, f),
        "counit": _vector(h.counit, f),
        "products": [[_key(i), _key(j), _vector(v, f)] for (i, j), v in sorted(products.items())],
        "coproducts": [[_key(i), _tensor(t, f)] for i, t in sorted(h.coproducts.items())],
        "antipode": [[_key(i), _vector(v, f)] for i, v in sorted((h.antipode or {}).items())],
        "antipode_inverse": [[_key(i), _vector(v, f)] for i, v in sorted((h.antipode_inverse or {}).items())],
        "realization": [
            [
                _key(i),
                [
                    [encode_label(word), f.format(c)]
                    for word, c in sorted(words.items(), key=lambda kv: repr(kv[0]))
                    if c
                ],
            ]
            for i, words in sorted((h.realization or {}).items())
        ],
    }


def read_algebra(data: Mapping[str, Any], field: Field) -> GradedHopfAlgebra:
    name = data.get("name", "?")
    try:
        basis = GradedBasis(tuple(tuple(decode_label(x) for x in level) for level in data["basis"]))
        products = {
            (_index(i, name), _index(j, name)): _read_vector(v, field, name) for i, j, v in data["products"]
        }
        coproducts = {_index(i, name): _read_tensor(t, field, name) for i, t in data["coproducts"]}
        antipode = {_index(i, name): _read_vector(v, field, name) for i, v in data["antipode"]}
        inverse = {_index(i, name): _read_vector(v, field, name) for i, v in data["antipode_inverse"]}
        realization = {
            _index(i, name): {decode_label(w): field.convert(c) for w, c in words} for i, words in data["realization"]
        }
        base_point = data.get("base_point")
        return GradedHopfAlgebra(
            name=name,
            field=field,
            basis=basis,
            unit=_read_vector(data["unit"], field, name),
            counit=_read_vector(data["counit"], field, name),
            coproducts=coproducts,
            products=products,
            antipode=antipode or None,
            antipode_inverse=inverse or None,
            realization=realization or None,
            graded_product=bool(data.get("graded_product", True)),
            base_point=None if base_point is None else decode_label(base_point),
        )
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, SchemaError):
            raise
        raise SchemaError(f"algebra {name}: malformed table ({e})") from e


# ──── Bundles ────


def bundle_document(s: LqtStructure, spec: InstanceSpec | None = None) -> dict[str, Any]:
    d = s.double
    f = d.double.field
    tau = d.pairing
    return {
        "format": BUNDLE_FORMAT,
        "version": BUNDLE_VERSION,
        "instance": None if spec is None else spec.model_dump(mode="json"),
        "field": f.name,
        "variant": s.variant,
        "unit_variant": s.unit_variant,
        "level": s.level,
        "max_degree": d.double.truncation,
        "ledger": _jsonable(s.ledger),
        "dimensions": {
            "A": list(d.algebra.dims),
            "H": list(d.coalgebra.dims),
            "D": list(d.double.dims),
        },
        "algebras": {"A": algebra_document(d.algebra), "H": algebra_document(d.coalgebra)},
        "pairing": {"tau": _tensor(tau.table, f), "tau_inverse": _tensor(tau.inverse, f)},
        "copairings": {str(n): _tensor(p.tensor, f) for n, p in sorted(s.copairings.items())},
        "r": {str(n): _tensor(r, f) for n, r in sorted(s.r.items())},
        "r_inverse": {str(n): _tensor(r, f) for n, r in sorted(s.r_inverse.items())},
    }


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


def dumps(document: Any) -> str:
    return json.dumps(document, indent=1, ensure_ascii=False) + "\n"


def write_bundle(path: str | Path, s: LqtStructure, spec: InstanceSpec | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(bundle_document(s, spec)), encoding="utf-8")
    logger.info("Wrote bundle %s (D dims %s)", path, list(s.double.double.dims))
    return path


def read_bundle_document(data: Mapping[str, Any]) -> tuple[LqtStructure, InstanceSpec | None]:
    """Rebuild the LQT structure from stored constants (no recomputation, no verification)."""
    if data.get("format") != BUNDLE_FORMAT:
        raise SchemaError(f"not an lqt-kernel bundle (format {data.get('format')!r})")
    if data.get("version") != BUNDLE_VERSION:
        raise SchemaError(f"unsupported bundle version {data.get('version')!r}")
    field = Field.parse(data["field"])
    spec = None if data.get("instance") is None else parse_instance(data["instance"], source="bundle.instance")
    a = read_algebra(data["algebras"]["A"], field)
    h = read_algebra(data["algebras"]["H"], field)
    tau = SkewPairing(
        coalgebra=h,
        algebra=a,
        table=_read_tensor(data["pairing"]["tau"], field, "tau"),
        inverse=_read_tensor(data["pairing"]["tau_inverse"], field, "tau_inverse"),
    )
    d = DoubleCrossProduct(a, h, tau)
    d.attach_antipode()
    copairings = {
        int(n): Copairing(tau, int(n), _read_tensor(t, field, f"P_{n}")) for n, t in data["copairings"].items()
    }
    r = {int(n): _read_tensor(t, field, f"R_{n}") for n, t in data["r"].items()}
    r_inverse = {int(n): _read_tensor(t, field, f"R_{n}^-1") for n, t in data["r_inverse"].items()}
    if not r or set(r) != set(r_inverse):
        raise SchemaError("bundle must carry R_n and R_n^-1 for the same levels")
    s = LqtStructure(
        d,
        copairings,
        r,
        r_inverse,
        variant=data.get("variant", "custom"),
        unit_variant=data.get("unit_variant", "unit"),
        ledger=dict(data.get("ledger", {})),
    )
    return s, spec


def read_bundle(path: str | Path) -> tuple[LqtStructure, InstanceSpec | None]:
    data = read_json(path)
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: bundle must be a JSON object")
    try:
        return read_bundle_document(data)
    except KeyError as e:
        raise SchemaError(f"{path}: bundle is missing {e}") from e


# ──── Matrix and tensor export ────


def matrix_document(
    matrix: SDM, field: Field, row_basis: list[str] | None = None, col_basis: list[str] | None = None
) -> dict[str, Any]:
    """Row-major dense export with exact scalar strings."""
    rows, cols = matrix.shape
    zero = field.format(field.zero)
    dense = []
    for r in range(rows):
        row = matrix.get(r, {})
        dense.append([field.format(row[c]) if c in row else zero for c in range(cols)])
    out: dict[str, Any] = {"shape": [rows, cols], "rows": dense}
    if row_basis is not None:
        out["row_basis"] = row_basis
    if col_basis is not None:
        out["col_basis"] = col_basis
    return out


def tensor_document(t: Mapping[tuple[BasisIndex, ...], Scalar], algebras: list[GradedHopfAlgebra]) -> list:
    """Terms of a tensor as [[index, label text]..., scalar] in sorted order."""
    field = algebras[0].field
    return [
        [*[[_key(i), label_text(h.basis.label(i))] for i, h in zip(key, algebras)], field.format(c)]
        for key, c in sorted(t.items())
        if c
    ]
