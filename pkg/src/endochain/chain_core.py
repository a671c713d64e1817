"""Endomorphisms of a finite chain and the semiring they form.

An endomorphism of the chain ``C_n = {0 < 1 < ... < n-1}`` (viewed as a
join-semilattice) is an order-preserving self-map, stored as its image tuple.
Addition is the pointwise join. Multiplication is composition written on the
right: ``f * g`` means *first f, then g*, so ``(f * g)(i) == g(f(i))``.
Every formula elsewhere in the package depends on this convention.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np


class ChainError(ValueError):
    """Base class for invalid constructions."""


class OutOfRange(ChainError):
    pass


class NotMonotone(ChainError):
    pass


class LengthMismatch(ChainError):
    pass


class ChainMismatch(ChainError):
    pass


@dataclass(frozen=True, order=True)
class Chain:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ChainError(f"chain size must be a positive integer, got {self.n!r}")


@dataclass(frozen=True, order=True)
class ChainEndomorphism:
    chain: Chain
    images: tuple[int, ...]

    def __post_init__(self):
        n = self.chain.n
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != n:
            raise LengthMismatch(f"expected {n} images, got {len(images)}")
        for i, v in enumerate(images):
            if not 0 <= v < n:
                raise OutOfRange(f"image {v} at position {i} is outside 0..{n - 1}")
        for i in range(n - 1):
            if images[i] > images[i + 1]:
                raise NotMonotone(f"images decrease at position {i}: {images}")

    @classmethod
    def _trusted(cls, chain: Chain, images: tuple[int, ...]) -> "ChainEndomorphism":
        # Skips validation; only for results of add/compose on valid inputs.
        obj = object.__new__(cls)
        object.__setattr__(obj, "chain", chain)
        object.__setattr__(obj, "images", images)
        return obj

    @property
    def n(self) -> int:
        return self.chain.n

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __add__(self, other: "ChainEndomorphism") -> "ChainEndomorphism":
        return add(self, other)

    def __mul__(self, other: "ChainEndomorphism") -> "ChainEndomorphism":
        return compose(self, other)

    def __str__(self):
        return "<" + ",".join(map(str, self.images)) + ">"

    def __repr__(self):
        return f"ChainEndomorphism(n={self.chain.n}, images={self.images})"


def make_endomorphism(chain: Chain | int, images: Sequence[int]) -> ChainEndomorphism:
    if isinstance(chain, int):
        chain = Chain(chain)
    return ChainEndomorphism(chain, tuple(int(v) for v in images))


def _same_chain(f: ChainEndomorphism, g: ChainEndomorphism) -> None:
    if f.chain != g.chain:
        raise ChainMismatch(f"operands live on chains of size {f.n} and {g.n}")


def add(f: ChainEndomorphism, g: ChainEndomorphism) -> ChainEndomorphism:
    """Pointwise join."""
    _same_chain(f, g)
    return ChainEndomorphism._trusted(f.chain, tuple(map(max, f.images, g.images)))


def compose(f: ChainEndomorphism, g: ChainEndomorphism) -> ChainEndomorphism:
    """First ``f``, then ``g``: ``result(i) = g(f(i))``."""
    _same_chain(f, g)
    gi = g.images
    return ChainEndomorphism._trusted(f.chain, tuple(gi[x] for x in f.images))


def constant(chain: Chain | int, c: int) -> ChainEndomorphism:
    if isinstance(chain, int):
        chain = Chain(chain)
    if not 0 <= c < chain.n:
        raise OutOfRange(f"constant {c} is outside 0..{chain.n - 1}")
    return ChainEndomorphism._trusted(chain, (c,) * chain.n)


def identity(chain: Chain | int) -> ChainEndomorphism:
    if isinstance(chain, int):
        chain = Chain(chain)
    return ChainEndomorphism._trusted(chain, tuple(range(chain.n)))


def leq(f: ChainEndomorphism, g: ChainEndomorphism) -> bool:
    _same_chain(f, g)
    return all(x <= y for x, y in zip(f.images, g.images))


def all_endomorphisms(chain: Chain | int) -> Iterator[ChainEndomorphism]:
    """Every monotone self-map, in lexicographic order of image tuples."""
    if isinstance(chain, int):
        chain = Chain(chain)
    for images in itertools.combinations_with_replacement(range(chain.n), chain.n):
        yield ChainEndomorphism._trusted(chain, images)


def count_endomorphisms(n: int) -> int:
    return comb(2 * n - 1, n)


@dataclass(frozen=True)
class Carrier:
    """A finite, duplicate-free set of endomorphisms kept in lexicographic order."""

    chain: Chain
    elements: tuple[ChainEndomorphism, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        elements = tuple(sorted(set(self.elements)))
        for e in elements:
            if e.chain != self.chain:
                raise ChainMismatch("all carrier elements must share one chain")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(elements)})

    @classmethod
    def of(cls, elements: Iterable[ChainEndomorphism], chain: Chain | None = None) -> "Carrier":
        elements = tuple(elements)
        if chain is None:
            if not elements:
                raise ChainError("cannot infer the chain of an empty carrier")
            chain = elements[0].chain
        return cls(chain, elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> ChainEndomorphism:
        return self.elements[i]

    def __contains__(self, e) -> bool:
        return e in self._index

    def index(self, e: ChainEndomorphism) -> int:
        return self._index[e]

    def issubset(self, other: "Carrier") -> bool:
        return all(e in other for e in self.elements)

    def union(self, other: "Carrier") -> "Carrier":
        return Carrier(self.chain, self.elements + other.elements)

    def __str__(self):
        return "{" + ", ".join(map(str, self.elements)) + "}"


def full_carrier(chain: Chain | int) -> Carrier:
    if isinstance(chain, int):
        chain = Chain(chain)
    return Carrier(chain, tuple(all_endomorphisms(chain)))


AXIOMS = (
    "closed_add",
    "closed_mul",
    "add_commutative",
    "add_associative",
    "add_idempotent",
    "mul_associative",
    "left_distributive",
    "right_distributive",
)


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of :func:`check_semiring_axioms`.

    ``results`` maps each law in :data:`AXIOMS` to ``True`` or to the first
    failing tuple of elements (lexicographic in carrier order).
    """

    results: dict

    def holds(self, law: str) -> bool:
        return self.results[law] is True

    def witness(self, law: str):
        value = self.results[law]
        return None if value is True else value

    @property
    def all_hold(self) -> bool:
        return all(v is True for v in self.results.values())

    @property
    def is_subsemiring(self) -> bool:
        return self.all_hold


def _op_table(elements, op, index) -> np.ndarray | None:
    size = len(elements)
    table = np.empty((size, size), dtype=np.int64)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            k = index.get(op(x, y))
            if k is None:
                return None
            table[i, j] = k
    return table


def _first_closure_failure(elements, op, index):
    for x in elements:
        for y in elements:
            if op(x, y) not in index:
                return (x, y)
    return None


def _first_true(mask: np.ndarray):
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def check_semiring_axioms(carrier: Carrier) -> AxiomReport:
    """Exhaustively check closure and every semiring law over ``carrier``.

    No zero or one is tested for. Laws are evaluated in the ambient semiring
    of all endomorphisms, so they are meaningful even when closure fails.
    """
    elements = carrier.elements
    if not elements:
        return AxiomReport({law: True for law in AXIOMS})
    index = carrier._index
    results: dict = {}

    plus = _op_table(elements, add, index)
    times = _op_table(elements, compose, index)
    results["closed_add"] = True if plus is not None else _first_closure_failure(elements, add, index)
    results["closed_mul"] = True if times is not None else _first_closure_failure(elements, compose, index)

    if plus is not None and times is not None:
        # Vectorised pass over all triples (i, j, k) via index tables.
        e = lambda idx: elements[idx]  # noqa: E731
        bad = _first_true(plus != plus.T)
        results["add_commutative"] = True if bad is None else tuple(map(e, bad))
        bad = _first_true(np.arange(len(elements)) != np.diagonal(plus))
        results["add_idempotent"] = True if bad is None else (e(bad[0]),)
        for law, table in (("add_associative", plus), ("mul_associative", times)):
            lhs = table[table[:, :, None], np.arange(len(elements))[None, None, :]]
            rhs = table[np.arange(len(elements))[:, None, None], table[None, :, :]]
            bad = _first_true(lhs != rhs)
            results[law] = True if bad is None else tuple(map(e, bad))
        # x(y+z) = xy + xz
        lhs = times[np.arange(len(elements))[:, None, None], plus[None, :, :]]
        rhs = plus[times[:, :, None], times[:, None, :]]
        bad = _first_true(lhs != rhs)
        results["left_distributive"] = True if bad is None else tuple(map(e, bad))
        # (x+y)z = xz + yz
        lhs = times[plus[:, :, None], np.arange(len(elements))[None, None, :]]
        rhs = plus[times[:, None, :], times[None, :, :]]
        bad = _first_true(lhs != rhs)
        results["right_distributive"] = True if bad is None else tuple(map(e, bad))
        return AxiomReport(results)

    laws = {
        "add_commutative": lambda x, y, z: add(x, y) == add(y, x),
        "add_associative": lambda x, y, z: add(add(x, y), z) == add(x, add(y, z)),
        "add_idempotent": lambda x, y, z: add(x, x) == x,
        "mul_associative": lambda x, y, z: compose(compose(x, y), z) == compose(x, compose(y, z)),
        "left_distributive": lambda x, y, z: compose(x, add(y, z)) == add(compose(x, y), compose(x, z)),
        "right_distributive": lambda x, y, z: compose(add(x, y), z) == add(compose(x, z), compose(y, z)),
    }
    arity = {"add_commutative": 2, "add_idempotent": 1}
    for law, check in laws.items():
        results[law] = True
        k = arity.get(law, 3)
        for combo in itertools.product(elements, repeat=k):
            args = combo + (combo[0],) * (3 - k)
            if not check(*args):
                results[law] = combo
                break
    return AxiomReport(results)


def is_idempotent(f: ChainEndomorphism) -> bool:
    return compose(f, f) == f
