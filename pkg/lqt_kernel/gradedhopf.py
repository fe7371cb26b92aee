"""
Degree-truncated graded Hopf algebras.

A GradedHopfAlgebra stores explicit per-degree bases and sparse structure
constants up to a truncation degree N. Products are only defined when the
input degrees sum to at most N; coproducts are degree preserving and so are
always available. The word-space constructions T_B(M) and T^c_B(M) live in
``lqt_kernel.words``; this module owns the container, the degree-0 group
algebras, twists, the antipode solver, the axiom verifier and the duality
pairing between a tensor algebra and the cotensor coalgebra of the dual
bimodule.

Design rationale:
    Truncation is exact, never approximate: a product that would leave the
    budget raises BudgetError instead of silently dropping terms. The
    antipode is obtained by solving the defining convolution identity degree
    by degree as an exact linear system, so no closed formula has to be
    trusted.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .exactlin import (
    BasisIndex,
    Field,
    IndexSpace,
    Scalar,
    add_into,
    add_term,
    invert_matrix,
    solve_system,
)
from .exceptions import BudgetError, InfeasibleSystemError, InputError, KernelError
from .quivers import FiniteGroup
from .reports import Report, Tally, sweep

logger = logging.getLogger(__name__)

Label = Hashable
Vec = dict[BasisIndex, Scalar]
Tensor = dict[tuple[BasisIndex, ...], Scalar]


# ──── Labels ────


@dataclass(frozen=True, slots=True, order=True)
class DualLabel:
    """Label of the dual basis element of ``inner``."""

    inner: Any

    def __str__(self) -> str:
        return f"p{self.inner}"


def dual_label(label: Label) -> Label:
    """Dualize a label; dualizing twice returns the original."""
    return label.inner if isinstance(label, DualLabel) else DualLabel(label)


def flip_word(word: tuple) -> tuple:
    return tuple(dual_label(letter) for letter in word)


def label_text(label: Label) -> str:
    if type(label) is tuple:
        return "·".join(label_text(x) for x in label) if label else "()"
    return str(label)


# ──── Bases ────


@dataclass(frozen=True)
class GradedBasis:
    """Per-degree ordered label lists with reverse lookup."""

    labels: tuple[tuple[Label, ...], ...]
    _positions: tuple[dict[Label, int], ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self) -> None:
        labels = tuple(tuple(level) for level in self.labels)
        object.__setattr__(self, "labels", labels)
        positions = []
        for degree, level in enumerate(labels):
            lookup = {label: i for i, label in enumerate(level)}
            if len(lookup) != len(level):
                raise InputError(f"duplicate labels in degree {degree}")
            positions.append(lookup)
        object.__setattr__(self, "_positions", tuple(positions))

    @property
    def truncation(self) -> int:
        return len(self.labels) - 1

    def dim(self, degree: int) -> int:
        return len(self.labels[degree]) if 0 <= degree < len(self.labels) else 0

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.labels)

    def index(self, label: Label, degree: int) -> BasisIndex:
        try:
            return BasisIndex(degree, self._positions[degree][label])
        except (KeyError, IndexError) as e:
            raise InputError(f"{label_text(label)} is not a basis label in degree {degree}") from e

    def find(self, label: Label, degree: int) -> BasisIndex | None:
        ordinal = self._positions[degree].get(label) if 0 <= degree < len(self.labels) else None
        return None if ordinal is None else BasisIndex(degree, ordinal)

    def label(self, index: BasisIndex) -> Label:
        return self.labels[index.degree][index.ordinal]

    def indices(self, degree: int) -> list[BasisIndex]:
        return [BasisIndex(degree, i) for i in range(self.dim(degree))]

    def indices_upto(self, degree: int) -> list[BasisIndex]:
        top = min(degree, self.truncation)
        return [BasisIndex(d, i) for d in range(top + 1) for i in range(self.dim(d))]


# ──── The algebra ────


@dataclass(frozen=True)
class GradedHopfAlgebra:
    """A graded Hopf algebra truncated at degree N with sparse structure constants.

    Attributes:
        name: Display name (``"kQ^c"``, ``"D"``...).
        field: Ground field.
        basis: Per-degree bases; ``basis.truncation`` is N.
        unit: The unit element (degree 0).
        counit: Nonzero counit values.
        coproducts: Basis element -> sparse element of H (x) H (degree preserving).
        products: Table (i, j) -> sparse element, complete for in-budget pairs
            unless ``product_rule`` is set, in which case it is a cache.
        product_rule: Optional callable computing missing products on demand.
        antipode: Basis element -> S(element); None until computed.
        antipode_inverse: Basis element -> S^-1(element).
        realization: Basis element -> coefficients on raw words; drives pairings.
        graded_product: True when products land in exactly the sum of degrees.
        base_point: Degree-0 label of the group identity (or its dual functional).
    """

    name: str
    field: Field
    basis: GradedBasis
    unit: Mapping[BasisIndex, Scalar]
    counit: Mapping[BasisIndex, Scalar]
    coproducts: Mapping[BasisIndex, Mapping[tuple[BasisIndex, BasisIndex], Scalar]]
    products: dict[tuple[BasisIndex, BasisIndex], Mapping[BasisIndex, Scalar]]
    product_rule: Callable[[BasisIndex, BasisIndex], Mapping[BasisIndex, Scalar]] | None = None
    antipode: Mapping[BasisIndex, Mapping[BasisIndex, Scalar]] | None = None
    antipode_inverse: Mapping[BasisIndex, Mapping[BasisIndex, Scalar]] | None = None
    realization: Mapping[BasisIndex, Mapping[tuple, Scalar]] | None = None
    graded_product: bool = True
    base_point: Label | None = None

    # ── shape ──

    @property
    def truncation(self) -> int:
        return self.basis.truncation

    @property
    def dims(self) -> tuple[int, ...]:
        return self.basis.dims

    @property
    def space(self) -> IndexSpace:
        return IndexSpace(self.name, self.dims)

    def indices_upto(self, degree: int) -> list[BasisIndex]:
        return self.basis.indices_upto(degree)

    def all_indices(self) -> list[BasisIndex]:
        return self.basis.indices_upto(self.truncation)

    def text(self, index: BasisIndex) -> str:
        return label_text(self.basis.label(index))

    def element(self, label: Label, degree: int) -> Vec:
        return {self.basis.index(label, degree): self.field.one}

    def one(self) -> Vec:
        return dict(self.unit)

    # ── structure maps on basis elements ──

    def product(self, i: BasisIndex, j: BasisIndex) -> Mapping[BasisIndex, Scalar]:
        if i.degree + j.degree > self.truncation:
            raise BudgetError(
                f"{self.name}: product of degrees {i.degree}+{j.degree} exceeds N={self.truncation}",
                required=i.degree + j.degree,
                available=self.truncation,
            )
        key = (i, j)
        cached = self.products.get(key)
        if cached is not None:
            return cached
        if self.product_rule is None:
            return {}
        value = self.product_rule(i, j)
        self.products[key] = value
        return value

    def coproduct(self, i: BasisIndex) -> Mapping[tuple[BasisIndex, BasisIndex], Scalar]:
        return self.coproducts.get(i, {})

    # ── structure maps on elements ──

    def mul(self, x: Mapping[BasisIndex, Scalar], y: Mapping[BasisIndex, Scalar]) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                add_into(out, self.product(i, j), a * b)
        return out

    def comul(self, x: Mapping[BasisIndex, Scalar]) -> Tensor:
        out: Tensor = {}
        for i, a in x.items():
            add_into(out, self.coproduct(i), a)
        return out

    def eps(self, x: Mapping[BasisIndex, Scalar]) -> Scalar:
        total = self.field.zero
        for i, a in x.items():
            value = self.counit.get(i)
            if value:
                total += a * value
        return total

    def apply_antipode(self, x: Mapping[BasisIndex, Scalar], inverse: bool = False) -> Vec:
        table = self.antipode_inverse if inverse else self.antipode
        if table is None:
            raise KernelError(f"{self.name}: antipode has not been computed")
        out: Vec = {}
        for i, a in x.items():
            add_into(out, table.get(i, {}), a)
        return out

    def project(self, x: Mapping[BasisIndex, Scalar], degree: int) -> Vec:
        """Components of degree <= degree."""
        return {i: a for i, a in x.items() if i.degree <= degree}

    def complete_products(self) -> dict[tuple[BasisIndex, BasisIndex], Mapping[BasisIndex, Scalar]]:
        """Force every in-budget product and return the (sparse) table."""
        indices = self.all_indices()
        table = {}
        for i in indices:
            for j in indices:
                if i.degree + j.degree <= self.truncation:
                    value = self.product(i, j)
                    if value:
                        table[(i, j)] = value
        return table


class DegreeZeroView:
    """Label-keyed access to the degree-0 part of an algebra (the base B)."""

    def __init__(self, algebra: GradedHopfAlgebra) -> None:
        self.algebra = algebra
        self.field = algebra.field
        self.labels: tuple[Label, ...] = algebra.basis.labels[0]
        self._label = algebra.basis.labels[0]

    def _decode(self, vec: Mapping[BasisIndex, Scalar]) -> dict[Label, Scalar]:
        return {self._label[i.ordinal]: c for i, c in vec.items()}

    def index(self, label: Label) -> BasisIndex:
        return self.algebra.basis.index(label, 0)

    def mul(self, x: Label, y: Label) -> dict[Label, Scalar]:
        return self._decode(self.algebra.product(self.index(x), self.index(y)))

    def comul(self, x: Label) -> dict[tuple[Label, Label], Scalar]:
        return {
            (self._label[i.ordinal], self._label[j.ordinal]): c
            for (i, j), c in self.algebra.coproduct(self.index(x)).items()
        }

    def eps(self, x: Label) -> Scalar:
        return self.algebra.counit.get(self.index(x), self.field.zero)

    def unit(self) -> dict[Label, Scalar]:
        return self._decode(self.algebra.unit)

    def antipode(self, x: Label) -> dict[Label, Scalar]:
        return self._decode(self.algebra.apply_antipode({self.index(x): self.field.one}))


# ──── Degree-0 algebras ────


def group_algebra(group: FiniteGroup, field: Field) -> GradedHopfAlgebra:
    """kG: group-like basis, S(g) = g^-1."""
    one = field.one
    basis = GradedBasis((tuple(group.elements),))
    idx = [BasisIndex(0, g) for g in group.elements]
    products = {(idx[a], idx[b]): {idx[group.mul(a, b)]: one} for a in group.elements for b in group.elements}
    antipode = {idx[g]: {idx[group.inverse(g)]: one} for g in group.elements}
    return GradedHopfAlgebra(
        name=f"k{group.name}",
        field=field,
        basis=basis,
        unit={idx[group.identity]: one},
        counit={i: one for i in idx},
        coproducts={i: {(i, i): one} for i in idx},
        products=products,
        antipode=antipode,
        antipode_inverse=dict(antipode),
        realization={i: {(group_label,): one} for i, group_label in zip(idx, group.elements)},
        base_point=group.identity,
    )


def dual_hopf_algebra(base: GradedHopfAlgebra) -> GradedHopfAlgebra:
    """The dual B* of a finite-dimensional (degree-0) Hopf algebra, by transposition.

    Labels are dualized, so applying this twice reproduces the original
    structure constants on the original labels.
    """
    if base.truncation != 0:
        raise InputError("only degree-0 (finite-dimensional) Hopf algebras can be dualized")
    view = DegreeZeroView(base)
    labels = tuple(dual_label(label) for label in view.labels)
    basis = GradedBasis((labels,))
    idx = {label: BasisIndex(0, i) for i, label in enumerate(view.labels)}
    one = base.field.one

    products: dict[tuple[BasisIndex, BasisIndex], dict[BasisIndex, Scalar]] = {}
    for k in view.labels:
        for (i, j), c in view.comul(k).items():
            add_term(products.setdefault((idx[i], idx[j]), {}), idx[k], c)
    coproducts: dict[BasisIndex, dict[tuple[BasisIndex, BasisIndex], Scalar]] = {}
    for i in view.labels:
        for j in view.labels:
            for k, c in view.mul(i, j).items():
                add_term(coproducts.setdefault(idx[k], {}), (idx[i], idx[j]), c)
    unit = {idx[k]: view.eps(k) for k in view.labels if view.eps(k)}
    counit = {idx[k]: c for k, c in view.unit().items()}
    antipode: dict[BasisIndex, dict[BasisIndex, Scalar]] = {}
    antipode_inverse: dict[BasisIndex, dict[BasisIndex, Scalar]] = {}
    for j in view.labels:
        for k, c in view.antipode(j).items():
            add_term(antipode.setdefault(idx[k], {}), idx[j], c)
        inverse = base.apply_antipode({idx[j]: one}, inverse=True)
        for k_index, c in inverse.items():
            add_term(antipode_inverse.setdefault(k_index, {}), idx[j], c)

    base_point = None if base.base_point is None else dual_label(base.base_point)
    name = base.name[:-1] if base.name.endswith("*") else f"{base.name}*"
    return GradedHopfAlgebra(
        name=name,
        field=base.field,
        basis=basis,
        unit=unit,
        counit=counit,
        coproducts={k: v for k, v in coproducts.items() if v},
        products={k: v for k, v in products.items() if v},
        antipode=antipode,
        antipode_inverse=antipode_inverse,
        realization={BasisIndex(0, i): {(label,): one} for i, label in enumerate(labels)},
        base_point=base_point,
    )


def opposite_coalgebra(h: GradedHopfAlgebra) -> GradedHopfAlgebra:
    """H^cop: same algebra, flipped coproduct, S and S^-1 exchanged."""
    flipped = {i: {(b, a): c for (a, b), c in delta.items()} for i, delta in h.coproducts.items()}
    name = h.name[: -len("^cop")] if h.name.endswith("^cop") else f"{h.name}^cop"
    return replace(
        h,
        name=name,
        coproducts=flipped,
        antipode=h.antipode_inverse,
        antipode_inverse=h.antipode,
    )


# ──── Tensor helpers ────


def mul_tensors(
    algebras: Sequence[GradedHopfAlgebra], left: Mapping[tuple, Scalar], right: Mapping[tuple, Scalar]
) -> Tensor:
    """Slot-wise product in A_1 (x) ... (x) A_k."""
    out: Tensor = {}
    for lkey, lc in left.items():
        for rkey, rc in right.items():
            slots = [algebras[s].product(lkey[s], rkey[s]) for s in range(len(algebras))]
            if not all(slots):
                continue
            coefficient = lc * rc
            for combo in itertools.product(*(slot.items() for slot in slots)):
                value = coefficient
                for _, c in combo:
                    value = value * c
                add_term(out, tuple(k for k, _ in combo), value)
    return out


def apply_coproduct(h: GradedHopfAlgebra, t: Mapping[tuple, Scalar], slot: int) -> Tensor:
    """Apply Delta in one tensor slot, raising the arity by one."""
    out: Tensor = {}
    for key, c in t.items():
        for (a, b), d in h.coproduct(key[slot]).items():
            add_term(out, key[:slot] + (a, b) + key[slot + 1 :], c * d)
    return out


def iterated_coproduct(h: GradedHopfAlgebra, index: BasisIndex, pieces: int) -> Tensor:
    """Delta^(pieces-1) of a basis element as a pieces-fold tensor."""
    t: Tensor = {(index,): h.field.one}
    for k in range(pieces - 1):
        t = apply_coproduct(h, t, k)
    return t


def apply_slot(t: Mapping[tuple, Scalar], slot: int, fn: Callable[[BasisIndex], Mapping]) -> Tensor:
    """Apply a linear map given on basis elements to one tensor slot."""
    out: Tensor = {}
    for key, c in t.items():
        for image, d in fn(key[slot]).items():
            add_term(out, key[:slot] + (image,) + key[slot + 1 :], c * d)
    return out


def project_tensor(t: Mapping[tuple, Scalar], degree: int) -> Tensor:
    """Keep components whose every slot has degree <= degree."""
    return {k: c for k, c in t.items() if all(i.degree <= degree for i in k)}


def tensor_text(algebras: Sequence[GradedHopfAlgebra], key: tuple) -> str:
    return " ⊗ ".join(a.text(i) for a, i in zip(algebras, key))


# ──── Antipode ────


def compute_antipode(h: GradedHopfAlgebra) -> GradedHopfAlgebra:
    """Fill in S and S^-1 by solving the convolution identities degree by degree.

    S of a graded Hopf algebra preserves degree, so S(x) for x in H_n is
    sought inside H_n only. For each degree n, the unknowns are the matrix
    entries of S: H_n -> H_n; the equations are mu(S (x) id)Delta(x) = eps(x)1
    for x in H_n, where terms with a lower-degree left tensor factor are
    already known. S^-1 is
    solved from sum S^-1(x_2) x_1 = eps(x)1 the same way.

    Raises:
        InfeasibleSystemError: Naming the degree whose system has no solution.
    """
    antipode: dict[BasisIndex, Vec] = {}
    inverse: dict[BasisIndex, Vec] = {}
    for n in range(h.truncation + 1):
        try:
            antipode.update(_solve_antipode_degree(h, n, antipode, flipped=False))
            inverse.update(_solve_antipode_degree(h, n, inverse, flipped=True))
        except InfeasibleSystemError as e:
            raise InfeasibleSystemError(
                f"{h.name}: antipode system is infeasible in degree {n}", context=n
            ) from e
    logger.info("Solved antipode of %s through degree %d", h.name, h.truncation)
    return replace(h, antipode=antipode, antipode_inverse=inverse)


def _solve_antipode_degree(
    h: GradedHopfAlgebra, n: int, known: Mapping[BasisIndex, Vec], flipped: bool
) -> dict[BasisIndex, Vec]:
    level = h.basis.indices(n)
    equations: list[tuple[dict, Scalar]] = []
    for x in level:
        unknown: dict[BasisIndex, dict[tuple[int, int], Scalar]] = {}
        constant: Vec = {}
        for (x1, x2), c in h.coproduct(x).items():
            top, other = (x2, x1) if flipped else (x1, x2)
            if top.degree == n:
                for z in level:
                    image = h.product(z, other)
                    for w, v in image.items():
                        add_term(unknown.setdefault(w, {}), (top.ordinal, z.ordinal), c * v)
            else:
                add_into(constant, h.mul(known.get(top, {}), {other: c}))
        target = dict(h.unit) if h.counit.get(x) else {}
        if target:
            target = {k: v * h.counit[x] for k, v in target.items()}
        for w in sorted(set(unknown) | set(constant) | set(target)):
            rhs = target.get(w, h.field.zero) - constant.get(w, h.field.zero)
            equations.append((unknown.get(w, {}), rhs))
    solution = solve_system(equations, h.field) if equations else {}
    out: dict[BasisIndex, Vec] = {x: {} for x in level}
    for (y, z), value in solution.items():
        out[BasisIndex(n, y)][BasisIndex(n, z)] = value
    return out


# ──── Verification ────


def _degree_combos(dims: Sequence[int], arity: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(len(dims)), repeat=arity)


def verify_hopf(h: GradedHopfAlgebra, threads: int = 1) -> Report:
    """Check every Hopf axiom whose intermediate degrees fit within N.

    Out-of-budget tuples are counted in each check's ``skipped`` field rather
    than silently ignored.
    """
    report = Report(f"hopf:{h.name}")
    report.dimensions[h.name] = list(h.dims)
    N = h.truncation
    indices = h.all_indices()
    by_degree = [h.basis.indices(d) for d in range(N + 1)]
    one = h.one()

    grading = Tally("coproduct-grading")
    filtration = Tally("product-grading" if h.graded_product else "product-filtration")
    coassoc = Tally("coassociativity")
    counit = Tally("counit")
    for x in indices:
        delta = h.coproduct(x)
        grading.record(all(a.degree + b.degree == x.degree for a, b in delta), h.text(x))
        left = apply_coproduct(h, delta, 0)
        right = apply_coproduct(h, delta, 1)
        coassoc.record(left == right, h.text(x))
        lhs: Vec = {}
        rhs: Vec = {}
        for (a, b), c in delta.items():
            add_term(lhs, b, c * h.counit.get(a, h.field.zero))
            add_term(rhs, a, c * h.counit.get(b, h.field.zero))
        counit.record(lhs == {x: h.field.one} and rhs == {x: h.field.one}, h.text(x))

    unit_check = Tally("unit")
    for x in indices:
        ex = {x: h.field.one}
        unit_check.record(h.mul(one, ex) == ex and h.mul(ex, one) == ex, h.text(x))

    pairs = [(x, y) for x in indices for y in indices]
    in_budget = [(x, y) for x, y in pairs if x.degree + y.degree <= N]
    skipped_pairs = len(pairs) - len(in_budget)

    def check_pair(pair: tuple[BasisIndex, BasisIndex]) -> tuple[bool, bool, bool, str]:
        x, y = pair
        xy = h.product(x, y)
        total = x.degree + y.degree
        graded = all(k.degree == total for k in xy) if h.graded_product else all(k.degree <= total for k in xy)
        compat = h.comul(xy) == mul_tensors((h, h), h.coproduct(x), h.coproduct(y))
        eps_ok = h.eps(xy) == h.counit.get(x, h.field.zero) * h.counit.get(y, h.field.zero)
        return graded, compat, eps_ok, f"({h.text(x)}, {h.text(y)})"

    bialgebra = Tally("bialgebra")
    eps_mult = Tally("counit-multiplicative")
    for graded, compat, eps_ok, witness in sweep(in_budget, check_pair, threads):
        filtration.record(graded, witness)
        bialgebra.record(compat, witness)
        eps_mult.record(eps_ok, witness)
    filtration.skip(skipped_pairs)
    bialgebra.skip(skipped_pairs)
    eps_mult.skip(skipped_pairs)

    assoc = Tally("associativity")
    triples = []
    for combo in _degree_combos(h.dims, 3):
        count = h.dims[combo[0]] * h.dims[combo[1]] * h.dims[combo[2]]
        if sum(combo) > N:
            assoc.skip(count)
            continue
        triples.extend(itertools.product(by_degree[combo[0]], by_degree[combo[1]], by_degree[combo[2]]))

    def check_triple(triple: tuple[BasisIndex, BasisIndex, BasisIndex]) -> tuple[bool, str]:
        x, y, z = triple
        left = h.mul(h.product(x, y), {z: h.field.one})
        right = h.mul({x: h.field.one}, h.product(y, z))
        return left == right, f"({h.text(x)}, {h.text(y)}, {h.text(z)})"

    for ok, witness in sweep(triples, check_triple, threads):
        assoc.record(ok, witness)

    delta_one = Tally("coproduct-of-unit")
    delta_one.record(h.comul(one) == _unit_square(h) and h.eps(one) == h.field.one, "1")

    for check in (grading, filtration, coassoc, counit, unit_check, assoc, bialgebra, eps_mult, delta_one):
        report.add(check)

    left_law = Tally("antipode-left")
    right_law = Tally("antipode-right")
    inverse_law = Tally("antipode-inverse")
    if h.antipode is None:
        for tally in (left_law, right_law, inverse_law):
            tally.skip(len(indices))
    else:
        for x in indices:
            target = {k: v * h.counit.get(x, h.field.zero) for k, v in one.items()}
            target = {k: v for k, v in target.items() if v}
            lhs: Vec = {}
            rhs: Vec = {}
            for (a, b), c in h.coproduct(x).items():
                add_into(lhs, h.mul(h.antipode.get(a, {}), {b: c}))
                add_into(rhs, h.mul({a: c}, h.antipode.get(b, {})))
            left_law.record(lhs == target, h.text(x))
            right_law.record(rhs == target, h.text(x))
            if h.antipode_inverse is not None:
                ex = {x: h.field.one}
                round_trip = h.apply_antipode(h.apply_antipode(ex, inverse=True))
                back = h.apply_antipode(h.apply_antipode(ex), inverse=True)
                inverse_law.record(round_trip == ex and back == ex, h.text(x))
            else:
                inverse_law.skip()
    for check in (left_law, right_law, inverse_law):
        report.add(check)
    logger.info("verify_hopf(%s): %s", h.name, "pass" if report.passed else "FAIL")
    return report


def _unit_square(h: GradedHopfAlgebra) -> Tensor:
    out: Tensor = {}
    for i, a in h.unit.items():
        for j, b in h.unit.items():
            add_term(out, (i, j), a * b)
    return out


# ──── Duality pairing ────


def pairing_table(
    algebra: GradedHopfAlgebra, coalgebra: GradedHopfAlgebra
) -> dict[tuple[BasisIndex, BasisIndex], Scalar]:
    """<x, q> from realizations: raw words of x paired letter by letter with q.

    The algebra side is a tensor construction over B* on M*, the coalgebra
    side a cotensor construction over B on M; a raw word pairs with the
    flipped raw word with value 1 and with everything else with value 0.
    """
    if algebra.realization is None or coalgebra.realization is None:
        raise InputError("pairing needs word realizations on both sides")
    table: dict[tuple[BasisIndex, BasisIndex], Scalar] = {}
    top = min(algebra.truncation, coalgebra.truncation)
    for degree in range(top + 1):
        by_word: dict[tuple, list[tuple[BasisIndex, Scalar]]] = {}
        for q in coalgebra.basis.indices(degree):
            for word, c in coalgebra.realization[q].items():
                by_word.setdefault(word, []).append((q, c))
        for x in algebra.basis.indices(degree):
            for word, a in algebra.realization[x].items():
                for q, c in by_word.get(flip_word(word), ()):
                    add_term(table, (x, q), a * c)
    return table


@dataclass(frozen=True)
class DualityPairing:
    """The pairing <x, q> between a tensor algebra and the dual cotensor coalgebra.

    ``phi`` sends an algebra element to the functional it induces; ``psi(f, n)``
    inverts this on degrees <= n using per-degree inverse Gram matrices.
    """

    algebra: GradedHopfAlgebra
    coalgebra: GradedHopfAlgebra
    table: Mapping[tuple[BasisIndex, BasisIndex], Scalar]
    _inverses: dict[int, dict[int, dict[int, Scalar]]] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    @classmethod
    def build(cls, algebra: GradedHopfAlgebra, coalgebra: GradedHopfAlgebra) -> "DualityPairing":
        return cls(algebra, coalgebra, pairing_table(algebra, coalgebra))

    def evaluate(self, x: Mapping[BasisIndex, Scalar], q: Mapping[BasisIndex, Scalar]) -> Scalar:
        total = self.algebra.field.zero
        for i, a in x.items():
            for j, b in q.items():
                value = self.table.get((i, j))
                if value:
                    total += a * b * value
        return total

    def phi(self, x: Mapping[BasisIndex, Scalar]) -> dict[BasisIndex, Scalar]:
        functional: dict[BasisIndex, Scalar] = {}
        for q in self.coalgebra.all_indices():
            value = self.evaluate(x, {q: self.algebra.field.one})
            if value:
                functional[q] = value
        return functional

    def gram_inverse(self, degree: int) -> dict[int, dict[int, Scalar]]:
        """Inverse of the degree-d Gram matrix, rows indexed by coalgebra ordinals (memoized)."""
        cached = self._inverses.get(degree)
        if cached is not None:
            return cached
        n = self.algebra.basis.dim(degree)
        if n != self.coalgebra.basis.dim(degree):
            raise InfeasibleSystemError(f"degree {degree} dimensions differ; pairing is degenerate")
        gram: dict[int, dict[int, Scalar]] = {}
        for (x, q), value in self.table.items():
            if x.degree == degree:
                gram.setdefault(x.ordinal, {})[q.ordinal] = value
        inverse = invert_matrix(gram, n, self.algebra.field)
        self._inverses[degree] = inverse
        return inverse

    def psi(self, functional: Mapping[BasisIndex, Scalar], n: int) -> Vec:
        """The element of degree <= n whose pairing reproduces functional there."""
        out: Vec = {}
        for degree in range(n + 1):
            inverse = self.gram_inverse(degree)
            for q, value in functional.items():
                if q.degree != degree:
                    continue
                for a, g in inverse.get(q.ordinal, {}).items():
                    add_term(out, BasisIndex(degree, a), value * g)
        return out


def duality_check(
    a: GradedHopfAlgebra,
    c: GradedHopfAlgebra,
    pairing: DualityPairing | None = None,
    threads: int = 1,
) -> Report:
    """Verify that the pairing turns products of a into coproducts of c and back.

    Checks <xy, q> = sum <x, q1><y, q2>, <x, qq'> = sum <x1, q><x2, q'>,
    <1, q> = eps(q), <x, 1> = eps(x), phi_n psi_n = id and that psi at levels
    n and n+1 agree on degrees <= n.
    """
    pairing = pairing or DualityPairing.build(a, c)
    one = a.field.one
    report = Report(f"duality:{a.name}|{c.name}")
    N = min(a.truncation, c.truncation)

    def pair(x: BasisIndex, q: BasisIndex) -> Scalar:
        return pairing.table.get((x, q), a.field.zero)

    product_side = Tally("product-vs-coproduct")
    coproduct_side = Tally("coproduct-vs-product")
    xs = a.indices_upto(N)
    qs = c.indices_upto(N)

    def check_product(pair_xy: tuple[BasisIndex, BasisIndex]) -> list[tuple[bool, str]]:
        x, y = pair_xy
        xy = a.product(x, y)
        results = []
        for q in c.basis.indices(x.degree + y.degree):
            lhs = sum((v * pair(k, q) for k, v in xy.items()), a.field.zero)
            rhs = sum(
                (v * pair(x, q1) * pair(y, q2) for (q1, q2), v in c.coproduct(q).items()),
                a.field.zero,
            )
            results.append((lhs == rhs, f"({a.text(x)}, {a.text(y)} | {c.text(q)})"))
        return results

    def check_coproduct(pair_q: tuple[BasisIndex, BasisIndex]) -> list[tuple[bool, str]]:
        q, r = pair_q
        qr = c.product(q, r)
        results = []
        for x in a.basis.indices(q.degree + r.degree):
            lhs = sum((v * pair(x, k) for k, v in qr.items()), a.field.zero)
            rhs = sum(
                (v * pair(x1, q) * pair(x2, r) for (x1, x2), v in a.coproduct(x).items()),
                a.field.zero,
            )
            results.append((lhs == rhs, f"({a.text(x)} | {c.text(q)}, {c.text(r)})"))
        return results

    xy_pairs = [(x, y) for x in xs for y in xs if x.degree + y.degree <= N]
    for results in sweep(xy_pairs, check_product, threads):
        for ok, witness in results:
            product_side.record(ok, witness)
    qr_pairs = [(q, r) for q in qs for r in qs if q.degree + r.degree <= N]
    for results in sweep(qr_pairs, check_coproduct, threads):
        for ok, witness in results:
            coproduct_side.record(ok, witness)
    report.add(product_side)
    report.add(coproduct_side)

    unit_counit = Tally("unit-counit")
    for q in qs:
        lhs = sum((v * pair(k, q) for k, v in a.unit.items()), a.field.zero)
        unit_counit.record(lhs == c.counit.get(q, a.field.zero), f"(1 | {c.text(q)})")
    for x in xs:
        lhs = sum((v * pair(x, k) for k, v in c.unit.items()), a.field.zero)
        unit_counit.record(lhs == a.counit.get(x, a.field.zero), f"({a.text(x)} | 1)")
    report.add(unit_counit)

    inverse_check = Tally("phi-psi-identity")
    coherence = Tally("psi-level-coherence")
    try:
        for q in qs:
            delta_q = {q: one}
            recovered = {k: v for k, v in pairing.phi(pairing.psi(delta_q, N)).items() if v}
            inverse_check.record(recovered == delta_q, c.text(q))
            for n in range(q.degree, N):
                coherence.record(pairing.psi(delta_q, n) == pairing.psi(delta_q, n + 1), f"{c.text(q)}@{n}")
    except InfeasibleSystemError as e:
        inverse_check.record(False, f"degenerate pairing: {e}")
    report.add(inverse_check)
    report.add(coherence)
    return report
