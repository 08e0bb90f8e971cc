"""Finite groups with dense integer element indices 0..order-1.

Cyclic, symmetric and product groups multiply structurally; arbitrary groups
come in through validated Cayley tables. All instances are immutable and all
operations are pure.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

from .permutations import CapExceededError, Permutation, lex_rank, lex_unrank

DEFAULT_CAYLEY_ORDER_CAP = 256
# Flat h*order+g conjugation tables are materialized lazily up to this size.
_CONJ_TABLE_MAX_ENTRIES = 1_200_000
# Symmetric groups cache their element tuples up to this order.
_SYM_ELEMENT_CACHE_MAX_ORDER = 100_000


class GroupValidationError(ValueError):
    """A group axiom failed; carries the axiom name and a witnessing tuple."""

    def __init__(self, axiom: str, witness: tuple | None, message: str):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class FiniteGroup:
    """Base class. Elements are the indices 0..order-1; the identity is 0
    unless a subclass says otherwise."""

    name = "group"
    order = 1

    def __init__(self) -> None:
        self._conj_table: list[int] | None = None
        self._conj_table_built = False

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def elements(self) -> range:
        return range(self.order)

    def check_element(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.order:
            raise ValueError(f"element index {a} out of range for {self.name} of order {self.order}")
        return a

    def conjugate(self, g: int, h: int) -> int:
        """h g h^-1, the result of conjugating g by h."""
        g = self.check_element(g)
        h = self.check_element(h)
        table = self._conjugation_table()
        if table is not None:
            return table[h * self.order + g]
        return self.mul(self.mul(h, g), self.inv(h))

    def _conjugation_table(self) -> list[int] | None:
        if not self._conj_table_built:
            self._conj_table_built = True
            if self.order * self.order <= _CONJ_TABLE_MAX_ENTRIES:
                mul, inv, order = self.mul, self.inv, self.order
                table = []
                for h in range(order):
                    hinv = inv(h)
                    table.extend(mul(mul(h, g), hinv) for g in range(order))
                self._conj_table = table
        return self._conj_table

    def element_repr(self, a: int) -> str:
        return str(self.check_element(a))

    def multiplication_table(self) -> list[list[int]]:
        """Full Cayley table; round-trips through from_cayley_table."""
        return [[self.mul(a, b) for b in self.elements()] for a in self.elements()]

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} of order {self.order}>"


class CyclicGroup(FiniteGroup):
    """Z/k with addition mod k."""

    def __init__(self, k: int):
        super().__init__()
        if k < 1:
            raise ValueError(f"cyclic group order must be at least 1, got {k}")
        self.order = k
        self.name = f"Z/{k}"

    def mul(self, a: int, b: int) -> int:
        return (a + b) % self.order

    def inv(self, a: int) -> int:
        return (-a) % self.order


class SymmetricGroup(FiniteGroup):
    """S_n: elements are permutations of {0..n-1}, indexed by lexicographic
    rank of their image tuples. Multiplication is composition, right factor
    first: (sigma * tau)(x) = sigma(tau(x))."""

    def __init__(self, n: int):
        super().__init__()
        if n < 0:
            raise ValueError(f"symmetric group degree must be nonnegative, got {n}")
        self.n = n
        self.order = math.factorial(n)
        self.name = f"S{n}"
        self._images: list[tuple[int, ...]] | None = None
        self._rank_of: dict[tuple[int, ...], int] | None = None

    def _tables(self):
        if self._images is None and self.order <= _SYM_ELEMENT_CACHE_MAX_ORDER:
            import itertools

            self._images = list(itertools.permutations(range(self.n)))
            self._rank_of = {images: i for i, images in enumerate(self._images)}
        return self._images, self._rank_of

    def permutation_at(self, a: int) -> Permutation:
        a = self.check_element(a)
        images, _ = self._tables()
        if images is not None:
            return Permutation(images[a])
        return Permutation(lex_unrank(self.n, a))

    def index_of(self, perm: Permutation) -> int:
        if perm.degree != self.n:
            raise ValueError(f"degree mismatch: {perm.degree} vs {self.n}")
        _, rank_of = self._tables()
        if rank_of is not None:
            return rank_of[perm.images]
        return lex_rank(perm.images)

    def mul(self, a: int, b: int) -> int:
        images, rank_of = self._tables()
        if images is not None:
            fa, fb = images[a], images[b]
            return rank_of[tuple(fa[i] for i in fb)]
        fa = lex_unrank(self.n, a)
        fb = lex_unrank(self.n, b)
        return lex_rank(tuple(fa[i] for i in fb))

    def inv(self, a: int) -> int:
        images, rank_of = self._tables()
        if images is not None:
            fa = images[a]
            out = [0] * self.n
            for i, img in enumerate(fa):
                out[img] = i
            return rank_of[tuple(out)]
        return lex_rank(Permutation(lex_unrank(self.n, a)).inverse().images)

    def element_repr(self, a: int) -> str:
        return str(list(self.permutation_at(a).images))


class ProductGroup(FiniteGroup):
    """Direct product; the pair (a, b) is packed as a * |H| + b."""

    def __init__(self, left: FiniteGroup, right: FiniteGroup):
        super().__init__()
        self.left = left
        self.right = right
        self.order = left.order * right.order
        self.name = f"({left.name}x{right.name})"

    def _split(self, a: int) -> tuple[int, int]:
        return divmod(a, self.right.order)

    def mul(self, a: int, b: int) -> int:
        a1, a2 = self._split(a)
        b1, b2 = self._split(b)
        return self.left.mul(a1, b1) * self.right.order + self.right.mul(a2, b2)

    def inv(self, a: int) -> int:
        a1, a2 = self._split(a)
        return self.left.inv(a1) * self.right.order + self.right.inv(a2)

    def element_repr(self, a: int) -> str:
        a1, a2 = self._split(a)
        return f"({self.left.element_repr(a1)},{self.right.element_repr(a2)})"


class CayleyGroup(FiniteGroup):
    """Group given by an explicit multiplication table, validated on construction."""

    def __init__(self, table: tuple[tuple[int, ...], ...], identity: int, inverses: tuple[int, ...], name: str = "cayley"):
        super().__init__()
        self.order = len(table)
        self.table = table
        self._identity = identity
        self._inverses = inverses
        self.name = name

    @property
    def identity(self) -> int:
        return self._identity

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverses[a]


@lru_cache(maxsize=None)
def make_cyclic(k: int) -> CyclicGroup:
    """Z/k; rejects k = 0."""
    return CyclicGroup(k)


@lru_cache(maxsize=None)
def make_symmetric(n: int) -> SymmetricGroup:
    """S_n of order n! (the trivial group for n = 0)."""
    return SymmetricGroup(n)


def make_product(left: FiniteGroup, right: FiniteGroup) -> ProductGroup:
    """Direct product with componentwise operations."""
    return ProductGroup(left, right)


def from_cayley_table(table: Sequence[Sequence[int]], *, max_order: int = DEFAULT_CAYLEY_ORDER_CAP, force: bool = False) -> CayleyGroup:
    """Build a group from an m x m table of element indices, checking closure,
    associativity (all m^3 triples), a two-sided identity and inverses.

    Raises GroupValidationError naming the first failing axiom and a witness.
    The O(m^3) associativity scan is capped at max_order unless force is set.
    """
    m = len(table)
    if m == 0:
        raise GroupValidationError("shape", None, "a group table cannot be empty")
    if m > max_order and not force:
        raise CapExceededError(f"table order {m} exceeds associativity validation cap {max_order} (pass force=True to override)")
    rows: list[tuple[int, ...]] = []
    for i, row in enumerate(table):
        entries = tuple(int(x) for x in row)
        if len(entries) != m:
            raise GroupValidationError("shape", (i,), f"row {i} has length {len(entries)}, expected {m}")
        for j, x in enumerate(entries):
            if not 0 <= x < m:
                raise GroupValidationError("closure", (i, j), f"entry table[{i}][{j}] = {x} is outside 0..{m - 1}")
        rows.append(entries)
    tbl = tuple(rows)

    for a in range(m):
        for b in range(m):
            for c in range(m):
                if tbl[tbl[a][b]][c] != tbl[a][tbl[b][c]]:
                    raise GroupValidationError(
                        "associativity", (a, b, c),
                        f"associativity fails at triple ({a}, {b}, {c}): ({a}*{b})*{c} = {tbl[tbl[a][b]][c]} but {a}*({b}*{c}) = {tbl[a][tbl[b][c]]}",
                    )

    identity = None
    for e in range(m):
        if all(tbl[e][g] == g and tbl[g][e] == g for g in range(m)):
            identity = e
            break
    if identity is None:
        raise GroupValidationError("identity", None, "no two-sided identity element")

    inverses = []
    for g in range(m):
        h = next((h for h in range(m) if tbl[g][h] == identity and tbl[h][g] == identity), None)
        if h is None:
            raise GroupValidationError("inverse", (g,), f"element {g} has no two-sided inverse")
        inverses.append(h)

    return CayleyGroup(tbl, identity, tuple(inverses))


def from_cayley_json(data: dict, **kwargs) -> CayleyGroup:
    """Ingest {"order": m, "table": [[...]]} and validate it as a group."""
    if not isinstance(data, dict) or "order" not in data or "table" not in data:
        raise ValueError('Cayley JSON must be an object with "order" and "table" keys')
    table = data["table"]
    if len(table) != int(data["order"]):
        raise ValueError(f'declared order {data["order"]} does not match table size {len(table)}')
    return from_cayley_table(table, **kwargs)


def to_cayley_json(group: FiniteGroup) -> dict:
    """Export any group's multiplication table in the ingestible JSON shape."""
    return {"order": group.order, "table": group.multiplication_table()}


def conjugate(group: FiniteGroup, g: int, h: int) -> int:
    """h g h^-1 inside the given group."""
    return group.conjugate(g, h)
