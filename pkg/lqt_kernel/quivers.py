"""
Finite groups, ramifications, Hopf quivers and paths.

The combinatorics here index every basis in the kernel: vertices are group
elements, arrows are labelled ``(source, target, index)`` and n-paths are
arrow sequences written left to right as ``a_n ... a_1``.

Design rationale:
    Groups are explicit Cayley tables validated at construction, which makes
    conjugacy classes, inverses and dual group algebras trivial to compute
    exactly. All enumerations are lexicographic so emitted matrices are
    reproducible bit for bit.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, Mapping, NamedTuple, Sequence

from .exceptions import GroupTableError, InputError, RamificationError

logger = logging.getLogger(__name__)


# ──── Groups ────


@dataclass(frozen=True, slots=True)
class FiniteGroup:
    """A finite group given by its Cayley table on labels 0..order-1.

    Attributes:
        name: Display name (``"Z2"``, ``"S3"``...).
        table: ``table[a][b]`` is the label of the product ab.
        identity: Label of the identity element (found during validation).
    """

    name: str
    table: tuple[tuple[int, ...], ...]
    identity: int = field(default=-1)
    _inverses: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self) -> None:
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n == 0:
            raise GroupTableError("Cayley table is empty")
        for r, row in enumerate(table):
            if len(row) != n:
                raise GroupTableError(f"expected {n} entries, found {len(row)}", row=r)
            for x in row:
                if not 0 <= x < n:
                    raise GroupTableError(f"entry {x} outside 0..{n - 1}", row=r)
        identity = next(
            (e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))),
            None,
        )
        if identity is None:
            raise GroupTableError("table has no identity element")
        inverses = []
        for a in range(n):
            inverse = next((b for b in range(n) if table[a][b] == identity), None)
            if inverse is None or table[inverse][a] != identity:
                raise GroupTableError(f"element {a} has no two-sided inverse", row=a)
            inverses.append(inverse)
        for a in range(n):
            for b in range(n):
                ab = table[a][b]
                for c in range(n):
                    if table[ab][c] != table[a][table[b][c]]:
                        raise GroupTableError(f"associativity fails for ({a}, {b}, {c})", row=a)
        object.__setattr__(self, "identity", identity)
        object.__setattr__(self, "_inverses", tuple(inverses))

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self._inverses[a]

    def conjugate(self, g: int, h: int) -> int:
        """g h g^-1."""
        return self.table[self.table[g][h]][self._inverses[g]]

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in self.elements for b in self.elements)


def trivial_group() -> FiniteGroup:
    return FiniteGroup("1", ((0,),))


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise InputError(f"cyclic group order must be positive, got {n}")
    return FiniteGroup(f"Z{n}", tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on lexicographically ordered permutations; (s t)(i) = s(t(i))."""
    if n not in (1, 2, 3, 4):
        raise InputError(f"symmetric groups are built in for n <= 4, got {n}")
    perms = list(itertools.permutations(range(n)))
    position = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(position[tuple(s[t[i]] for i in range(n))] for t in perms) for s in perms
    )
    return FiniteGroup(f"S{n}", table)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """G x H with pair (a, b) labelled a*|H| + b."""
    m = h.order
    table = tuple(
        tuple(g.mul(x // m, y // m) * m + h.mul(x % m, y % m) for y in range(g.order * m))
        for x in range(g.order * m)
    )
    return FiniteGroup(f"{g.name}x{h.name}", table)


def klein_four_group() -> FiniteGroup:
    group = direct_product(cyclic_group(2), cyclic_group(2))
    return FiniteGroup("V4", group.table)


def conjugacy_classes(g: FiniteGroup) -> list[frozenset[int]]:
    """Partition of G into conjugation orbits, ordered by smallest element."""
    seen: set[int] = set()
    classes = []
    for x in g.elements:
        if x in seen:
            continue
        orbit = frozenset(g.conjugate(y, x) for y in g.elements)
        seen |= orbit
        classes.append(orbit)
    return classes


# ──── Ramification ────


@dataclass(frozen=True, slots=True)
class Ramification:
    """Multiplicities r_C per conjugacy class, keyed by class representative (min element).

    Attributes:
        group: The group whose classes are weighted.
        multiplicities: representative -> r_C (absent classes have r_C = 0).
    """

    group: FiniteGroup
    multiplicities: Mapping[int, int]

    def __post_init__(self) -> None:
        representatives = {min(c) for c in conjugacy_classes(self.group)}
        cleaned = {}
        for rep, r in sorted(self.multiplicities.items()):
            if rep not in representatives:
                raise RamificationError(f"{rep} is not a conjugacy class representative of {self.group.name}")
            if r < 0:
                raise RamificationError(f"multiplicity for class of {rep} is negative ({r})")
            if r:
                cleaned[rep] = int(r)
        object.__setattr__(self, "multiplicities", cleaned)

    @classmethod
    def from_elements(cls, group: FiniteGroup, weights: Mapping[int, int]) -> "Ramification":
        """Accept any element of each class as its key."""
        classes = conjugacy_classes(group)
        merged: dict[int, int] = {}
        for element, r in weights.items():
            if not 0 <= element < group.order:
                raise RamificationError(f"{element} is not an element of {group.name}")
            klass = next(c for c in classes if element in c)
            rep = min(klass)
            if rep in merged:
                raise RamificationError(f"class of {element} is given twice")
            merged[rep] = r
        return cls(group, merged)

    def class_of(self, element: int) -> frozenset[int]:
        return next(c for c in conjugacy_classes(self.group) if element in c)

    def multiplicity(self, element: int) -> int:
        """r_C for the class C containing element."""
        return self.multiplicities.get(min(self.class_of(element)), 0)


# ──── Quivers and paths ────


class Arrow(NamedTuple):
    """An arrow x -> y; index runs over I_C(r) for C the class of x^-1 y."""

    source: int
    target: int
    index: int

    def __str__(self) -> str:
        return f"a{self.index}[{self.source}>{self.target}]"


@dataclass(frozen=True, slots=True)
class Path:
    """A 0-path (vertex) or an arrow sequence a_n ... a_1 written left to right.

    ``arrows[0]`` is a_n and ``arrows[-1]`` is a_1, so consecutive arrows
    satisfy ``arrows[k].source == arrows[k + 1].target``.
    """

    source: int
    target: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self) -> None:
        if not self.arrows:
            if self.source != self.target:
                raise InputError("a 0-path must start and end at the same vertex")
            return
        for left, right in zip(self.arrows, self.arrows[1:]):
            if left.source != right.target:
                raise InputError(f"arrows {left} and {right} are not composable")
        if self.source != self.arrows[-1].source or self.target != self.arrows[0].target:
            raise InputError("cached endpoints do not match the arrow sequence")

    @classmethod
    def vertex(cls, x: int) -> "Path":
        return cls(x, x)

    @classmethod
    def of(cls, arrows: Sequence[Arrow]) -> "Path":
        arrows = tuple(arrows)
        if not arrows:
            raise InputError("use Path.vertex for 0-paths")
        return cls(arrows[-1].source, arrows[0].target, arrows)

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __str__(self) -> str:
        if not self.arrows:
            return f"e{self.source}"
        return "".join(str(a) for a in self.arrows)


@dataclass(frozen=True, slots=True)
class HopfQuiver:
    """Quiver on the elements of G with r_C arrows x -> y whenever x^-1 y is in C."""

    group: FiniteGroup
    ramification: Ramification
    arrows: tuple[Arrow, ...]

    @property
    def vertices(self) -> range:
        return self.group.elements

    def arrow_class(self, arrow: Arrow) -> frozenset[int]:
        g = self.group
        return self.ramification.class_of(g.mul(g.inverse(arrow.source), arrow.target))

    def arrows_between(self, x: int, y: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == x and a.target == y]

    def outgoing(self, x: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == x]

    def is_hopf(self) -> bool:
        """Counting condition: |x -> y| = r of the class of x^-1 y for all x, y."""
        g = self.group
        counts: dict[tuple[int, int], int] = {}
        for a in self.arrows:
            counts[(a.source, a.target)] = counts.get((a.source, a.target), 0) + 1
        return all(
            counts.get((x, y), 0) == self.ramification.multiplicity(g.mul(g.inverse(x), y))
            for x in g.elements
            for y in g.elements
        )


def build_hopf_quiver(g: FiniteGroup, r: Ramification) -> HopfQuiver:
    """Build the Hopf quiver (Q, G, r) with arrows labelled (x, y, i).

    Raises:
        RamificationError: If r is defined on a different group.
    """
    if r.group != g:
        raise RamificationError(f"ramification is defined on {r.group.name}, not {g.name}")
    arrows = []
    for x in g.elements:
        for y in g.elements:
            for i in range(r.multiplicity(g.mul(g.inverse(x), y))):
                arrows.append(Arrow(x, y, i))
    arrows.sort()
    logger.info("Built Hopf quiver over %s with %d arrows", g.name, len(arrows))
    return HopfQuiver(g, r, tuple(arrows))


def _extend(q: HopfQuiver, prefix: tuple[Arrow, ...], remaining: int) -> Iterator[tuple[Arrow, ...]]:
    if remaining == 0:
        yield prefix
        return
    last = prefix[-1]
    for arrow in q.arrows:
        if arrow.target == last.source:
            yield from _extend(q, prefix + (arrow,), remaining - 1)


def enumerate_paths(q: HopfQuiver, n: int) -> list[Path]:
    """All n-paths in lexicographic order of their arrow sequences; Q_0 is the vertex list."""
    if n < 0:
        raise InputError(f"path length must be non-negative, got {n}")
    if n == 0:
        return [Path.vertex(x) for x in q.vertices]
    paths = []
    for first in q.arrows:
        for arrows in _extend(q, (first,), n - 1):
            paths.append(Path.of(arrows))
    return paths


def compose_paths(p: Path, q: Path) -> Path | None:
    """The concatenation pq (p after q), or None when s(p) != t(q)."""
    if p.source != q.target:
        return None
    if not p.arrows:
        return q
    if not q.arrows:
        return p
    return Path.of(p.arrows + q.arrows)
