"""
Word constructions: the tensor algebra T_B(M) and the cotensor coalgebra T^c_B(M).

Both are graded Hopf algebras with degree-0 part B and degree-1 part M,
truncated at N. Elements of degree n are represented on raw words of n
letters of M:

* ``tensor_hopf`` presents T_B(M)_n as the quotient of (T_{n-1} x M) by the
  balancing relations (u.b) (x) m = u (x) (b.m). A reduced row echelon form
  of the relations picks a basis of standard words; every other word is
  rewritten to them by a memoized normal form.
* ``cotensor_hopf`` realises T^c_B(M)_n as the subspace of words whose every
  seam is balanced for the coactions, computed as an iterated nullspace. Basis
  elements are word combinations in reduced echelon form, labelled by their
  pivot word.

For path coalgebras every standard word is a single path, so the
constructions recover kQ^a (paths multiply by concatenation) and kQ^c
(paths multiply by the quantum shuffle product).

Design rationale:
    No special-casing of path algebras: both constructions only consume a
    verified Hopf bimodule, so the same code serves the path and semipath
    variants and any user-supplied twisted bimodule. Coordinates are read at
    pivot words and cross-checked by reconstruction, so an element that
    leaves the subspace is reported instead of being silently truncated.
"""

from __future__ import annotations

import itertools
import logging
from typing import Any

from .bimodules import HopfBimoduleData, require_verified
from .exactlin import BasisIndex, Field, Scalar, add_into, add_term, nullspace_basis, row_reduce
from .exceptions import BudgetError, InputError, VerificationError
from .gradedhopf import (
    DegreeZeroView,
    GradedBasis,
    GradedHopfAlgebra,
    Label,
    compute_antipode,
    label_text,
    mul_tensors,
)

logger = logging.getLogger(__name__)

Word = tuple
WordVec = dict[Word, Scalar]


def _check_inputs(base: GradedHopfAlgebra, m: HopfBimoduleData, n: int) -> HopfBimoduleData:
    if n < 0:
        raise BudgetError(f"truncation degree must be non-negative, got {n}", required=0, available=n)
    if base.truncation != 0:
        raise InputError("the base of a word construction must be a degree-0 Hopf algebra")
    if m.base.basis.labels[0] != base.basis.labels[0]:
        raise InputError(f"bimodule {m.name} is defined over {m.base.name}, not {base.name}")
    return require_verified(m)


def _base_blocks(base: GradedHopfAlgebra) -> tuple[dict, dict, dict]:
    """Degree-0 products, coproducts and counit copied from the base."""
    products = {k: dict(v) for k, v in base.products.items() if k[0].degree == 0 and k[1].degree == 0}
    coproducts = {i: dict(base.coproduct(i)) for i in base.basis.indices(0)}
    counit = {i: c for i, c in base.counit.items() if i.degree == 0}
    return products, coproducts, counit


# ──── Tensor algebra ────


class _TensorWords:
    """Standard words and normal forms of T_B(M) up to degree N."""

    def __init__(self, base: GradedHopfAlgebra, m: HopfBimoduleData, n: int) -> None:
        self.field: Field = base.field
        self.view = DegreeZeroView(base)
        self.m = m
        self.letters = tuple(m.labels)
        self.standard: list[list[Word]] = [[()], [(x,) for x in self.letters]]
        self.position: list[dict[Word, int]] = [{(): 0}, {(x,): i for i, x in enumerate(self.letters)}]
        # candidate (prefix ordinal, letter) -> normal form in degree n
        self.rewrite: list[dict[tuple[int, Label], dict[int, Scalar]]] = [{}, {}]
        self.memo: dict[Word, dict[int, Scalar]] = {}
        for degree in range(2, n + 1):
            self._build_degree(degree)

    def _build_degree(self, degree: int) -> None:
        prev = self.standard[degree - 1]
        letters = self.letters
        width = len(letters)
        column = {(v, x): v * width + k for v in range(len(prev)) for k, x in enumerate(letters)}
        candidates = [(v, x) for v in range(len(prev)) for x in letters]
        rows = []
        for v, word in enumerate(prev):
            for b in self.view.labels:
                pushed = self.act_right(word, b)
                for x in letters:
                    row: dict[int, Scalar] = {}
                    for u, c in pushed.items():
                        add_term(row, column[(u, x)], c)
                    for y, c in self.m.act_left(b, {x: self.field.one}).items():
                        add_term(row, column[(v, y)], -c)
                    if row:
                        rows.append(row)
        reduced, pivots = row_reduce(rows, len(candidates), self.field)
        pivot_set = set(pivots)
        free = [c for c in range(len(candidates)) if c not in pivot_set]
        free_position = {c: i for i, c in enumerate(free)}
        words = [prev[candidates[c][0]] + (candidates[c][1],) for c in free]
        rewrite: dict[tuple[int, Label], dict[int, Scalar]] = {}
        for c in free:
            rewrite[candidates[c]] = {free_position[c]: self.field.one}
        for row, pivot in zip(reduced, pivots):
            rewrite[candidates[pivot]] = {
                free_position[c]: -value for c, value in row.items() if c != pivot and value
            }
        self.standard.append(words)
        self.position.append({w: i for i, w in enumerate(words)})
        self.rewrite.append(rewrite)
        logger.debug("T_B(M) degree %d: %d candidates, %d standard words", degree, len(candidates), len(words))

    def normal_form(self, word: Word) -> dict[int, Scalar]:
        """Coordinates of a raw word on the standard words of its degree."""
        cached = self.memo.get(word)
        if cached is not None:
            return cached
        degree = len(word)
        if degree <= 1:
            result = {self.position[degree][word]: self.field.one}
        else:
            result = {}
            for v, c in self.normal_form(word[:-1]).items():
                add_into(result, self.rewrite[degree][(v, word[-1])], c)
        self.memo[word] = result
        return result

    def act_right(self, word: Word, b: Label) -> dict[int, Scalar]:
        out: dict[int, Scalar] = {}
        for y, c in self.m.act_right({word[-1]: self.field.one}, b).items():
            add_into(out, self.normal_form(word[:-1] + (y,)), c)
        return out

    def act_left(self, b: Label, word: Word) -> dict[int, Scalar]:
        out: dict[int, Scalar] = {}
        for y, c in self.m.act_left(b, {word[0]: self.field.one}).items():
            add_into(out, self.normal_form((y,) + word[1:]), c)
        return out


def tensor_hopf(base: GradedHopfAlgebra, m: HopfBimoduleData, n: int, name: str | None = None) -> GradedHopfAlgebra:
    """T_B(M) truncated at degree n, with antipode.

    Products concatenate words (acting on the touching letter when one factor
    has degree 0); the coproduct is the unique algebra map restricting to
    Delta_B on B and to delta^- + delta^+ on M.

    Raises:
        BimoduleAxiomError: If m is not a Hopf bimodule over base.
        BudgetError: If n is negative.
    """
    m = _check_inputs(base, m, n)
    words = _TensorWords(base, m, n)
    field = base.field
    labels = [tuple(base.basis.labels[0])] + [tuple(words.standard[d]) for d in range(1, n + 1)]
    basis = GradedBasis(tuple(labels))
    products, coproducts, counit = _base_blocks(base)
    b_index = {b: BasisIndex(0, i) for i, b in enumerate(base.basis.labels[0])}

    def lift(degree: int, coords: dict[int, Scalar]) -> dict[BasisIndex, Scalar]:
        return {BasisIndex(degree, k): c for k, c in coords.items()}

    for i in range(n + 1):
        for j in range(n + 1 - i):
            if i == 0 and j == 0:
                continue
            for x in basis.indices(i):
                for y in basis.indices(j):
                    if i == 0:
                        value = lift(j, words.act_left(basis.label(x), basis.label(y)))
                    elif j == 0:
                        value = lift(i, words.act_right(basis.label(x), basis.label(y)))
                    else:
                        value = lift(i + j, words.normal_form(basis.label(x) + basis.label(y)))
                    if value:
                        products[(x, y)] = value

    algebra = GradedHopfAlgebra(
        name=name or f"T({m.name})",
        field=field,
        basis=basis,
        unit={b_index[b]: c for b, c in DegreeZeroView(base).unit().items()},
        counit=counit,
        coproducts=coproducts,
        products=products,
        realization=_realization(base, basis, n, field),
        base_point=base.base_point,
    )
    if n >= 1:
        for k, x in enumerate(m.labels):
            delta: dict[tuple[BasisIndex, BasisIndex], Scalar] = {}
            for (b, y), c in m.delta_left(x).items():
                add_term(delta, (b_index[b], BasisIndex(1, words.position[1][(y,)])), c)
            for (y, b), c in m.delta_right(x).items():
                add_term(delta, (BasisIndex(1, words.position[1][(y,)]), b_index[b]), c)
            coproducts[BasisIndex(1, k)] = delta
    for degree in range(2, n + 1):
        for k, word in enumerate(words.standard[degree]):
            prefix = BasisIndex(degree - 1, words.position[degree - 1][word[:-1]])
            last = BasisIndex(1, words.position[1][word[-1:]])
            coproducts[BasisIndex(degree, k)] = mul_tensors(
                (algebra, algebra), algebra.coproduct(prefix), algebra.coproduct(last)
            )
    logger.info("Built %s with dimensions %s", algebra.name, list(algebra.dims))
    return compute_antipode(algebra)


def _realization(base: GradedHopfAlgebra, basis: GradedBasis, n: int, field: Field) -> dict:
    one = field.one
    out: dict[BasisIndex, dict[Word, Scalar]] = {}
    for i, b in enumerate(base.basis.labels[0]):
        out[BasisIndex(0, i)] = {(b,): one}
    for degree in range(1, n + 1):
        for k, word in enumerate(basis.labels[degree]):
            out[BasisIndex(degree, k)] = {word: one}
    return out


# ──── Cotensor coalgebra ────


class _CotensorWords:
    """Per-degree bases of T^c_B(M) as echelon word combinations."""

    def __init__(self, base: GradedHopfAlgebra, m: HopfBimoduleData, n: int) -> None:
        self.field: Field = base.field
        self.view = DegreeZeroView(base)
        self.m = m
        self.letters = tuple(m.labels)
        one = self.field.one
        self.elements: list[list[WordVec]] = [[], [{(x,): one} for x in self.letters]]
        self.pivots: list[dict[Word, int]] = [{}, {(x,): i for i, x in enumerate(self.letters)}]
        self.labels: list[list[Word]] = [[], [(x,) for x in self.letters]]
        for degree in range(2, n + 1):
            self._build_degree(degree)

    def _build_degree(self, degree: int) -> None:
        prev = self.elements[degree - 1]
        letters = self.letters
        unknowns = [(k, x) for k in range(len(prev)) for x in letters]
        constraint_rows: dict[Any, dict[int, Scalar]] = {}
        for u, (k, x) in enumerate(unknowns):
            for word, c in prev[k].items():
                for (y, b), d in self.m.delta_right(word[-1]).items():
                    add_term(constraint_rows.setdefault((word[:-1] + (y,), b, x), {}), u, c * d)
                for (b, y), d in self.m.delta_left(x).items():
                    add_term(constraint_rows.setdefault((word, b, y), {}), u, -c * d)
        kernel = nullspace_basis(constraint_rows.values(), len(unknowns), self.field)
        expanded: list[WordVec] = []
        for vector in kernel:
            element: WordVec = {}
            for u, c in vector.items():
                k, x = unknowns[u]
                for word, d in prev[k].items():
                    add_term(element, word + (x,), c * d)
            if element:
                expanded.append(element)
        columns = sorted({w for e in expanded for w in e})
        column = {w: i for i, w in enumerate(columns)}
        reduced, pivots = row_reduce(
            ({column[w]: c for w, c in e.items()} for e in expanded), len(columns), self.field
        )
        elements = [{columns[c]: v for c, v in row.items()} for row in reduced]
        self.elements.append(elements)
        self.labels.append([columns[p] for p in pivots])
        self.pivots.append({columns[p]: i for i, p in enumerate(pivots)})
        logger.debug("T^c_B(M) degree %d: dimension %d", degree, len(elements))

    def coordinates(self, degree: int, vec: WordVec, context: str) -> dict[int, Scalar]:
        """Read coordinates at pivot words and confirm the vector lies in the span."""
        if not vec:
            return {}
        pivots = self.pivots[degree]
        coords = {pivots[w]: c for w, c in vec.items() if w in pivots}
        rebuilt: WordVec = {}
        for k, c in coords.items():
            add_into(rebuilt, self.elements[degree][k], c)
        if rebuilt != {w: c for w, c in vec.items() if c}:
            raise VerificationError(f"{context}: result leaves T^c_B(M) in degree {degree}")
        return coords


def _pieces(m: HopfBimoduleData, view: DegreeZeroView, raw: Any, pattern: tuple[int, ...]) -> list:
    """Split a raw element along a degree pattern of 0s and 1s.

    ``raw`` is ("B", label) or ("W", word). Returns (coefficient, pieces)
    where each piece is ("B", label) or ("M", letter).
    """
    kind, value = raw
    length = 0 if kind == "B" else len(value)
    if len(pattern) == 1:
        if pattern[0] != length:
            return []
        piece = ("B", value) if kind == "B" else ("M", value[0])
        return [(m.field.one, (piece,))]
    d, rest = pattern[0], pattern[1:]
    splits: list[tuple[Scalar, tuple, Any]] = []
    if kind == "B":
        if d != 0:
            return []
        for (b1, b2), c in view.comul(value).items():
            splits.append((c, ("B", b1), ("B", b2)))
    elif d == 0:
        for (b, y), c in m.delta_left(value[0]).items():
            splits.append((c, ("B", b), ("W", (y,) + value[1:])))
    elif length >= 2:
        splits.append((m.field.one, ("M", value[0]), ("W", value[1:])))
    else:
        for (y, b), c in m.delta_right(value[0]).items():
            splits.append((c, ("M", y), ("B", b)))
    out = []
    for c, head, tail in splits:
        for d2, tail_pieces in _pieces(m, view, tail, rest):
            out.append((c * d2, (head,) + tail_pieces))
    return out


def cotensor_hopf(base: GradedHopfAlgebra, m: HopfBimoduleData, n: int, name: str | None = None) -> GradedHopfAlgebra:
    """T^c_B(M) truncated at degree n, with the quantum shuffle product and antipode.

    The coproduct deconcatenates words, using delta^- and delta^+ at the two
    ends; the product of x in degree i and y in degree j sums over every
    interleaving of their degree-1 pieces, letting each slot act by the
    bimodule action of the other factor's degree-0 piece.

    Raises:
        BimoduleAxiomError: If m is not a Hopf bimodule over base.
        VerificationError: If a computed product or coproduct leaves the subspace.
    """
    m = _check_inputs(base, m, n)
    cw = _CotensorWords(base, m, n)
    field = base.field
    one = field.one
    view = DegreeZeroView(base)
    b_labels = tuple(base.basis.labels[0])
    b_index = {b: BasisIndex(0, i) for i, b in enumerate(b_labels)}
    basis = GradedBasis((b_labels,) + tuple(tuple(cw.labels[d]) for d in range(1, n + 1)))
    products, coproducts, counit = _base_blocks(base)

    def raw(index: BasisIndex) -> list[tuple[Scalar, Any]]:
        if index.degree == 0:
            return [(one, ("B", b_labels[index.ordinal]))]
        return [(c, ("W", w)) for w, c in cw.elements[index.degree][index.ordinal].items()]

    for degree in range(1, n + 1):
        for k, element in enumerate(cw.elements[degree]):
            # raw (left, right) pairs grouped by left degree
            buckets: dict[int, dict[tuple, Scalar]] = {}
            for word, c in element.items():
                for (b, y), d in m.delta_left(word[0]).items():
                    add_term(buckets.setdefault(0, {}), (("B", b), (y,) + word[1:]), c * d)
                for cut in range(1, degree):
                    add_term(buckets.setdefault(cut, {}), (word[:cut], word[cut:]), c)
                for (y, b), d in m.delta_right(word[-1]).items():
                    add_term(buckets.setdefault(degree, {}), (word[:-1] + (y,), ("B", b)), c * d)
            delta: dict[tuple[BasisIndex, BasisIndex], Scalar] = {}
            for cut, terms in buckets.items():
                context = label_text(basis.labels[degree][k])
                delta.update(_split_coordinates(cw, b_index, cut, degree - cut, terms, context))
            coproducts[BasisIndex(degree, k)] = delta

    def shuffle(x: BasisIndex, y: BasisIndex) -> dict[BasisIndex, Scalar]:
        total = x.degree + y.degree
        out_words: WordVec = {}
        for positions in itertools.combinations(range(total), x.degree):
            chosen = set(positions)
            x_pattern = tuple(1 if s in chosen else 0 for s in range(total))
            y_pattern = tuple(1 - s for s in x_pattern)
            x_split = [(c * d, p) for c, r in raw(x) for d, p in _pieces(m, view, r, x_pattern)]
            y_split = [(c * d, p) for c, r in raw(y) for d, p in _pieces(m, view, r, y_pattern)]
            for cx, px in x_split:
                for cy, py in y_split:
                    slots = []
                    for s in range(total):
                        if x_pattern[s]:
                            slots.append(m.act_right({px[s][1]: one}, py[s][1]))
                        else:
                            slots.append(m.act_left(px[s][1], {py[s][1]: one}))
                    if not all(slots):
                        continue
                    for combo in itertools.product(*(slot.items() for slot in slots)):
                        value = cx * cy
                        for _, c in combo:
                            value = value * c
                        add_term(out_words, tuple(letter for letter, _ in combo), value)
        coords = cw.coordinates(total, out_words, f"product of {basis.label(x)} and {basis.label(y)}")
        return {BasisIndex(total, k): c for k, c in coords.items()}

    for i in range(n + 1):
        for j in range(n + 1 - i):
            if i == 0 and j == 0:
                continue
            for x in basis.indices(i):
                for y in basis.indices(j):
                    value = shuffle(x, y)
                    if value:
                        products[(x, y)] = value

    realization: dict[BasisIndex, WordVec] = {}
    for i, b in enumerate(b_labels):
        realization[BasisIndex(0, i)] = {(b,): one}
    for degree in range(1, n + 1):
        for k, element in enumerate(cw.elements[degree]):
            realization[BasisIndex(degree, k)] = dict(element)

    coalgebra = GradedHopfAlgebra(
        name=name or f"Tc({m.name})",
        field=field,
        basis=basis,
        unit={b_index[b]: c for b, c in view.unit().items()},
        counit=counit,
        coproducts=coproducts,
        products=products,
        realization=realization,
        base_point=base.base_point,
    )
    logger.info("Built %s with dimensions %s", coalgebra.name, list(coalgebra.dims))
    return compute_antipode(coalgebra)


def _split_coordinates(
    cw: _CotensorWords,
    b_index: dict[Label, BasisIndex],
    left_degree: int,
    right_degree: int,
    terms: dict[tuple, Scalar],
    context: str,
) -> dict[tuple[BasisIndex, BasisIndex], Scalar]:
    """Coordinates in H_i (x) H_j of a raw two-factor tensor.

    Degree-0 factors are ("B", label) keys; degree-1 and higher factors are
    raw words read at pivot words. The right factor is resolved per fixed
    left key, then the left factor per resolved right basis element.
    """
    by_left: dict[Any, WordVec] = {}
    for (left, right), c in terms.items():
        by_left.setdefault(left, {})
        add_term(by_left[left], right, c)
    right_resolved: dict[BasisIndex, dict[Any, Scalar]] = {}
    for left, right_vec in by_left.items():
        for r_index, c in _resolve(cw, b_index, right_degree, right_vec, context).items():
            add_term(right_resolved.setdefault(r_index, {}), left, c)
    out: dict[tuple[BasisIndex, BasisIndex], Scalar] = {}
    for r_index, left_vec in right_resolved.items():
        for l_index, c in _resolve(cw, b_index, left_degree, left_vec, context).items():
            add_term(out, (l_index, r_index), c)
    return out


def _resolve(
    cw: _CotensorWords,
    b_index: dict[Label, BasisIndex],
    degree: int,
    vec: dict[Any, Scalar],
    context: str,
) -> dict[BasisIndex, Scalar]:
    if degree == 0:
        return {b_index[key[1]]: c for key, c in vec.items() if c}
    coords = cw.coordinates(degree, {w: c for w, c in vec.items() if c}, f"coproduct of {context}")
    return {BasisIndex(degree, k): c for k, c in coords.items()}
