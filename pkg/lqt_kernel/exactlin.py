"""
Exact scalars, indexed bases, sparse vectors/tensors and linear solving.

Every structure map in lqt-kernel is a finite sparse table whose values are
elements of a sympy ground domain: ``QQ`` (arbitrary-precision rationals,
always canonical) or ``GF(p)`` for an odd prime p. Matrices are sympy's
sparse ``SDM`` (dict-of-dicts) representation, which gives us exact
row reduction, nullspaces and products without ever touching floats.

Design rationale:
    Indices are ``(degree, ordinal)`` pairs instead of flat offsets so that
    raising the truncation degree never re-indexes existing structure
    constants. Public value types (SparseVector, SparseTensor) are frozen;
    internal hot loops work on plain dicts through ``add_into`` and friends
    and wrap results only at module boundaries.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Iterable, Mapping, NamedTuple, Sequence

from sympy import GF, QQ, Rational, isprime
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices.sdm import SDM

from .exceptions import CharacteristicError, InfeasibleSystemError, InputError, SpaceMismatchError

logger = logging.getLogger(__name__)

Scalar = Any
"""An element of ``Field.domain`` (sympy PythonMPQ/mpq or ModularInteger)."""


# ──── Ground field ────


@dataclass(frozen=True, slots=True)
class Field:
    """The ground field k: the rationals or F_p with p an odd prime.

    Attributes:
        characteristic: 0 for the rationals, otherwise the prime p.
        domain: The sympy domain carrying the arithmetic.
    """

    characteristic: int
    domain: Domain = field(compare=False, repr=False)

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0, QQ)

    @classmethod
    def prime(cls, p: int) -> "Field":
        """F_p for an odd prime p; characteristic 2 is rejected outright."""
        if p == 2:
            raise CharacteristicError("characteristic 2 is not supported (char k must differ from 2)")
        if p < 2 or not isprime(p):
            raise CharacteristicError(f"{p} is not a prime")
        return cls(p, GF(p, symmetric=False))

    @classmethod
    def parse(cls, text: str | int | None) -> "Field":
        """Parse ``"QQ"``/``"rational"``/``"0"`` or ``"GF(p)"``/``"p"``."""
        if text is None:
            return cls.rationals()
        if isinstance(text, int):
            return cls.rationals() if text == 0 else cls.prime(text)
        cleaned = text.strip().lower()
        if cleaned in ("qq", "q", "rational", "rationals", "0"):
            return cls.rationals()
        if cleaned.startswith("gf(") and cleaned.endswith(")"):
            cleaned = cleaned[3:-1]
        elif cleaned.startswith("prime:"):
            cleaned = cleaned[6:]
        try:
            return cls.prime(int(cleaned))
        except ValueError as e:
            raise InputError(f"Unrecognised field {text!r}; use 'QQ' or 'GF(p)'") from e

    @property
    def name(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def zero(self) -> Scalar:
        return self.domain.zero

    @property
    def one(self) -> Scalar:
        return self.domain.one

    def convert(self, value: Any) -> Scalar:
        """Convert ints, ``"num/den"`` strings, Fractions and sympy Rationals."""
        if isinstance(value, bool):
            raise InputError(f"Cannot interpret {value!r} as a scalar")
        if isinstance(value, int):
            return self.domain(value)
        if isinstance(value, str):
            try:
                value = Rational(value.strip())
            except (TypeError, ValueError, SyntaxError) as e:
                raise InputError(f"Cannot parse scalar {value!r}") from e
        if isinstance(value, Fraction):
            value = Rational(value.numerator, value.denominator)
        if isinstance(value, Rational):
            num, den = self.domain(int(value.p)), self.domain(int(value.q))
            if not den:
                raise InputError(f"Denominator of {value} vanishes in {self.name}")
            return num / den
        if self.domain.of_type(value):
            return value
        raise InputError(f"Cannot interpret {value!r} as a scalar over {self.name}")

    def format(self, value: Scalar) -> str | int:
        """Exact text form: ``"num/den"`` over QQ, an integer in [0, p) over GF(p)."""
        if self.characteristic:
            return int(self.domain.to_int(value)) % self.characteristic
        return f"{self.domain.numer(value)}/{self.domain.denom(value)}"


# ──── Indexed bases ────


class BasisIndex(NamedTuple):
    """Position of a basis element: the degree and its ordinal inside that degree."""

    degree: int
    ordinal: int


@dataclass(frozen=True, slots=True)
class IndexSpace:
    """Identifier of an indexed basis together with its per-degree dimensions."""

    name: str
    dims: tuple[int, ...]

    def contains(self, index: BasisIndex) -> bool:
        return 0 <= index.degree < len(self.dims) and 0 <= index.ordinal < self.dims[index.degree]


def _validate(space: IndexSpace, index: BasisIndex) -> None:
    if not space.contains(index):
        raise SpaceMismatchError(f"Index {tuple(index)} is not valid for space {space.name!r}")


@dataclass(frozen=True, slots=True)
class SparseVector:
    """Finite map BasisIndex -> nonzero scalar over one indexed basis."""

    space: IndexSpace
    entries: Mapping[BasisIndex, Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {}
        for key, value in sorted(self.entries.items()):
            index = BasisIndex(*key)
            _validate(self.space, index)
            if value:
                cleaned[index] = value
        object.__setattr__(self, "entries", cleaned)

    def is_zero(self) -> bool:
        return not self.entries

    def __getitem__(self, index: BasisIndex) -> Scalar:
        return self.entries.get(index, 0)


@dataclass(frozen=True, slots=True)
class SparseTensor:
    """Finite map from index tuples to nonzero scalars over 1-4 factor spaces."""

    spaces: tuple[IndexSpace, ...]
    entries: Mapping[tuple[BasisIndex, ...], Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 1 <= len(self.spaces) <= 4:
            raise InputError(f"SparseTensor arity must be 1-4, got {len(self.spaces)}")
        cleaned = {}
        for key, value in sorted(self.entries.items()):
            if len(key) != len(self.spaces):
                raise SpaceMismatchError(f"Key {key} does not have arity {len(self.spaces)}")
            indices = tuple(BasisIndex(*k) for k in key)
            for space, index in zip(self.spaces, indices):
                _validate(space, index)
            if value:
                cleaned[indices] = value
        object.__setattr__(self, "entries", cleaned)

    @property
    def arity(self) -> int:
        return len(self.spaces)

    def is_zero(self) -> bool:
        return not self.entries


# ──── Public operations ────


def add_scaled(v: SparseVector, w: SparseVector, c: Scalar) -> SparseVector:
    """Return v + c*w, pruning zero entries.

    Raises:
        SpaceMismatchError: If v and w live over different bases.
    """
    if v.space != w.space:
        raise SpaceMismatchError(f"Cannot combine vectors over {v.space.name!r} and {w.space.name!r}")
    entries = dict(v.entries)
    add_into(entries, w.entries, c)
    return SparseVector(v.space, entries)


def tensor(v: SparseVector | SparseTensor, w: SparseVector | SparseTensor) -> SparseTensor:
    """Bilinear tensor product; tensors of tensors concatenate their factors."""
    left_spaces, left = _as_tensor(v)
    right_spaces, right = _as_tensor(w)
    entries: dict[tuple[BasisIndex, ...], Scalar] = {}
    for i, x in left.items():
        for j, y in right.items():
            product = x * y
            if product:
                entries[i + j] = product
    return SparseTensor(left_spaces + right_spaces, entries)


def _as_tensor(
    value: SparseVector | SparseTensor,
) -> tuple[tuple[IndexSpace, ...], Mapping[tuple[BasisIndex, ...], Scalar]]:
    if isinstance(value, SparseTensor):
        return value.spaces, value.entries
    return (value.space,), {(k,): c for k, c in value.entries.items()}


def solve_linear(rows: Sequence[tuple[SparseVector, Any]], field: Field) -> SparseVector:
    """Find x with <row, x> = rhs for every supplied row.

    Free variables are set to zero, so the answer is deterministic.

    Raises:
        SpaceMismatchError: If the row vectors do not share one space.
        InfeasibleSystemError: If the system is contradictory.
    """
    if not rows:
        raise InputError("solve_linear needs at least one equation")
    space = rows[0][0].space
    for vector, _ in rows:
        if vector.space != space:
            raise SpaceMismatchError("All equations must be over the same space")
    equations = [(dict(vector.entries), field.convert(rhs)) for vector, rhs in rows]
    return SparseVector(space, solve_system(equations, field))


# ──── Internal sparse helpers ────


def add_into(acc: dict, vec: Mapping, coeff: Scalar = None) -> dict:
    """In place: acc += coeff*vec, deleting entries that cancel. Returns acc."""
    for key, value in vec.items():
        term = value if coeff is None else coeff * value
        if not term:
            continue
        current = acc.get(key)
        if current is None:
            acc[key] = term
        else:
            total = current + term
            if total:
                acc[key] = total
            else:
                del acc[key]
    return acc


def add_term(acc: dict, key: Hashable, value: Scalar) -> None:
    """In place: acc[key] += value, deleting the entry if it cancels."""
    if not value:
        return
    current = acc.get(key)
    if current is None:
        acc[key] = value
        return
    total = current + value
    if total:
        acc[key] = total
    else:
        del acc[key]


def scaled(vec: Mapping, coeff: Scalar) -> dict:
    return {k: coeff * v for k, v in vec.items() if coeff * v}


def difference(left: Mapping, right: Mapping) -> dict:
    """left - right as a pruned dict."""
    out = dict(left)
    for key, value in right.items():
        add_term(out, key, -value)
    return out


def row_reduce(rows: Iterable[Mapping[int, Scalar]], ncols: int, field: Field) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form: (pivot rows, pivot columns), pivots normalised to 1."""
    matrix = {}
    for r, row in enumerate(rows):
        cleaned = {c: v for c, v in row.items() if v}
        if cleaned:
            matrix[len(matrix)] = cleaned
    if not matrix:
        return [], []
    reduced, pivots = SDM(matrix, (len(matrix), ncols), field.domain).rref()
    return [dict(reduced[i]) for i in range(len(pivots))], list(pivots)


def nullspace_basis(rows: Iterable[Mapping[int, Scalar]], ncols: int, field: Field) -> list[dict[int, Scalar]]:
    """Basis of {x : row.x = 0 for every row}, one vector per free column."""
    reduced, pivots = row_reduce(rows, ncols, field)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = {free: field.one}
        for row, pivot in zip(reduced, pivots):
            value = row.get(free)
            if value:
                vector[pivot] = -value
        basis.append(vector)
    return basis


def solve_system(equations: Sequence[tuple[Mapping[Hashable, Scalar], Scalar]], field: Field) -> dict:
    """Solve sparse equations keyed by arbitrary hashable unknowns.

    Raises:
        InfeasibleSystemError: If the augmented system is inconsistent.
    """
    unknowns = sorted({key for row, _ in equations for key in row}, key=_sort_key)
    column = {key: i for i, key in enumerate(unknowns)}
    rhs_col = len(unknowns)
    matrix = []
    for row, rhs in equations:
        augmented = {column[k]: v for k, v in row.items() if v}
        if rhs:
            augmented[rhs_col] = rhs
        matrix.append(augmented)
    reduced, pivots = row_reduce(matrix, rhs_col + 1, field)
    if rhs_col in pivots:
        raise InfeasibleSystemError("linear system is infeasible")
    solution = {}
    for row, pivot in zip(reduced, pivots):
        value = row.get(rhs_col)
        if value:
            solution[unknowns[pivot]] = value
    return solution


def invert_matrix(matrix: Mapping[int, Mapping[int, Scalar]], n: int, field: Field) -> dict[int, dict[int, Scalar]]:
    """Inverse of an n x n dict-of-dicts matrix via reduction of [M | I].

    Raises:
        InfeasibleSystemError: If the matrix is singular.
    """
    augmented = []
    for i in range(n):
        row = {c: v for c, v in matrix.get(i, {}).items() if v}
        row[n + i] = field.one
        augmented.append(row)
    reduced, pivots = row_reduce(augmented, 2 * n, field)
    if pivots[:n] != list(range(n)):
        raise InfeasibleSystemError("matrix is singular")
    inverse = {}
    for i in range(n):
        row = {c - n: v for c, v in reduced[i].items() if c >= n}
        if row:
            inverse[i] = row
    return inverse


def _sort_key(key: Any) -> Any:
    return (type(key).__name__, key) if not isinstance(key, tuple) else ("tuple", key)


# ──── Matrices ────


def sdm(entries: Mapping[int, Mapping[int, Scalar]], shape: tuple[int, int], field: Field) -> SDM:
    """Build an SDM, dropping zero entries and empty rows."""
    cleaned = {}
    for r, row in entries.items():
        kept = {c: v for c, v in row.items() if v}
        if kept:
            cleaned[r] = kept
    return SDM(cleaned, shape, field.domain)


def identity(n: int, field: Field) -> SDM:
    return SDM.eye((n, n), field.domain)


def kron(a: SDM, b: SDM) -> SDM:
    """Kronecker product, row-major over (row of a, row of b)."""
    (ra, ca), (rb, cb) = a.shape, b.shape
    out: dict[int, dict[int, Scalar]] = {}
    for i, row_a in a.items():
        for j, row_b in b.items():
            row = out.setdefault(i * rb + j, {})
            for k, x in row_a.items():
                for m, y in row_b.items():
                    product = x * y
                    if product:
                        row[k * cb + m] = product
    return SDM({r: row for r, row in out.items() if row}, (ra * rb, ca * cb), a.domain)


def matrices_equal(a: SDM, b: SDM) -> bool:
    if a.shape != b.shape:
        return False
    rows = set(a) | set(b)
    for r in rows:
        left = {c: v for c, v in a.get(r, {}).items() if v}
        right = {c: v for c, v in b.get(r, {}).items() if v}
        if left != right:
            return False
    return True


def first_difference(a: SDM, b: SDM) -> tuple[int, int] | None:
    """Smallest (row, col) where a and b differ, or None."""
    for r in sorted(set(a) | set(b)):
        left, right = a.get(r, {}), b.get(r, {})
        for c in sorted(set(left) | set(right)):
            if left.get(c, 0) != right.get(c, 0):
                return (r, c)
    return None
