"""Strings of endomorphisms and their closed-form arithmetic.

``STR{a,b}`` is the set of endomorphisms with image inside ``{a, b}``. Its
members are indexed by ``k`` = the number of points sent to ``b``, so
``alpha_k`` maps ``i -> a`` for ``i <= n-k-1`` and ``i -> b`` otherwise; the
string is an ``(n+1)``-element chain ``alpha_0 < ... < alpha_n``.

A string of type m over anchors ``a_1 < ... < a_m`` is the union of the
consecutive type-2 strings. Its elements are indexed by pairs ``(k, l)``
with ``l`` counted from 1; the boundary aliases ``(0, l+1) == (n, l)`` are
always written as ``(n, l)``, except the global bottom ``(0, 1)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .chain_core import (
    Carrier,
    Chain,
    ChainEndomorphism,
    ChainError,
    add,
    check_semiring_axioms,
    compose,
    constant,
)


class BadAnchors(ChainError):
    pass


class IndexOutOfRange(ChainError):
    pass


class NotASubset(ChainError):
    pass


def _as_chain(chain: Chain | int) -> Chain:
    return Chain(chain) if isinstance(chain, int) else chain


def string_element(n: int, lo: int, hi: int, k: int) -> ChainEndomorphism:
    """``alpha_k`` of ``STR{lo,hi}`` over ``C_n``: the top ``k`` points go to ``hi``."""
    return ChainEndomorphism._trusted(Chain(n), (lo,) * (n - k) + (hi,) * k)


@dataclass(frozen=True)
class StringType2:
    chain: Chain
    a: int
    b: int
    elements: Carrier

    @property
    def n(self) -> int:
        return self.chain.n

    def alpha(self, k: int) -> ChainEndomorphism:
        if not 0 <= k <= self.n:
            raise IndexOutOfRange(f"string index {k} outside 0..{self.n}")
        return self.elements[k]

    def index_of(self, e: ChainEndomorphism) -> int:
        # Lexicographic order of a string coincides with its chain order.
        return self.elements.index(e)

    def label(self, k: int) -> str:
        return f"a_{k}"

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e):
        return e in self.elements


def string_type2(chain: Chain | int, a: int, b: int) -> StringType2:
    chain = _as_chain(chain)
    n = chain.n
    if not (0 <= a < b <= n - 1):
        raise BadAnchors(f"need 0 <= a < b <= {n - 1}, got a={a}, b={b}")
    elems = tuple(string_element(n, a, b, k) for k in range(n + 1))
    return StringType2(chain, a, b, Carrier(chain, elems))


def _check_index(k: int, n: int) -> None:
    if not 0 <= k <= n:
        raise IndexOutOfRange(f"string index {k} outside 0..{n}")


def mul_index_type2(k: int, s: int, string: StringType2) -> int:
    """Index of ``alpha_k * alpha_s`` from the three-band rule."""
    n, a, b = string.n, string.a, string.b
    _check_index(k, n)
    _check_index(s, n)
    if s <= n - b - 1:
        return 0
    if s <= n - a - 1:
        return k
    return n


class Classification(enum.Enum):
    A_NILPOTENT = "a-nilpotent"
    IDEMPOTENT = "idempotent"
    B_NILPOTENT = "b-nilpotent"


def classify(k: int, string: StringType2) -> Classification:
    n, a, b = string.n, string.a, string.b
    _check_index(k, n)
    if k <= n - b - 1:
        return Classification.A_NILPOTENT
    if k <= n - a - 1:
        return Classification.IDEMPOTENT
    return Classification.B_NILPOTENT


class SubfamilyKind(enum.Enum):
    A_NILPOTENTS = "N_a"
    B_NILPOTENTS = "N_b"
    IDEMPOTENTS = "Id"
    S = "S"
    T = "T"
    DS = "DS"
    DIFFERENTIAL_IDEAL = "I"
    CONSTANTS = "CO"


@dataclass(frozen=True)
class Subfamily:
    kind: SubfamilyKind
    carrier: Carrier
    indices: tuple = ()
    j: int | None = None

    def __len__(self):
        return len(self.carrier)

    def __iter__(self):
        return iter(self.carrier)

    def __contains__(self, e):
        return e in self.carrier


def subfamily_range(string: StringType2, kind: SubfamilyKind, j: int | None = None) -> range | tuple:
    n, a, b = string.n, string.a, string.b
    if kind is SubfamilyKind.A_NILPOTENTS:
        return range(0, n - b)
    if kind is SubfamilyKind.B_NILPOTENTS:
        return range(n - a, n + 1)
    if kind is SubfamilyKind.IDEMPOTENTS:
        return range(n - b, n - a)
    if kind is SubfamilyKind.S:
        return range(0, n - a)
    if kind is SubfamilyKind.T:
        return range(n - b, n + 1)
    if kind is SubfamilyKind.DS:
        return range(0, n - b + 1)
    if kind is SubfamilyKind.DIFFERENTIAL_IDEAL:
        if j is None or not 0 <= j <= n - b - 1:
            raise IndexOutOfRange(f"differential ideal index {j} outside 0..{n - b - 1}")
        return range(0, j + 1)
    if kind is SubfamilyKind.CONSTANTS:
        return (0, n)
    raise ValueError(kind)


def subfamily(string: StringType2, kind: SubfamilyKind | str, j: int | None = None) -> Subfamily:
    """The index-range subfamilies of ``STR{a,b}``.

    Membership comes from index ranges only; the behavioural definitions
    (squares, closure) are checked separately by the verifier.
    """
    kind = SubfamilyKind(kind) if isinstance(kind, str) else kind
    idx = tuple(subfamily_range(string, kind, j))
    carrier = Carrier(string.chain, tuple(string.alpha(k) for k in idx))
    return Subfamily(kind, carrier, idx, j)


# -- strings of type m ------------------------------------------------------


@dataclass(frozen=True, order=True)
class StringIndexM:
    k: int
    l: int

    def __str__(self):
        return f"({self.k},{self.l})"


@dataclass(frozen=True)
class StringTypeM:
    chain: Chain
    anchors: tuple[int, ...]
    elements: Carrier

    @property
    def n(self) -> int:
        return self.chain.n

    @property
    def m(self) -> int:
        return len(self.anchors)

    def anchor(self, l: int) -> int:
        """``a_l`` with 1-based ``l``."""
        return self.anchors[l - 1]

    def canonical(self, k: int, l: int) -> StringIndexM:
        n, m = self.n, self.m
        if not (0 <= k <= n and 1 <= l <= m - 1):
            raise IndexOutOfRange(f"index ({k},{l}) outside 0..{n} x 1..{m - 1}")
        if k == 0 and l > 1:
            return StringIndexM(n, l - 1)
        return StringIndexM(k, l)

    def alpha(self, k: int, l: int) -> ChainEndomorphism:
        idx = self.canonical(k, l)
        return string_element(self.n, self.anchor(idx.l), self.anchor(idx.l + 1), idx.k)

    def position(self, idx: StringIndexM) -> int:
        idx = self.canonical(idx.k, idx.l)
        return (idx.l - 1) * self.n + idx.k

    def index_of(self, e: ChainEndomorphism) -> StringIndexM:
        pos = self.elements.index(e)
        if pos == 0:
            return StringIndexM(0, 1)
        l, k = divmod(pos - 1, self.n)
        return StringIndexM(k + 1, l + 1)

    def indices(self) -> list[StringIndexM]:
        return [self.index_of(e) for e in self.elements]

    def label(self, idx: StringIndexM) -> str:
        return f"a_{idx.k}_{idx.l}"

    def kappa(self, c: int) -> ChainEndomorphism:
        return constant(self.chain, c)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e):
        return e in self.elements


def string_type_m(chain: Chain | int, anchors: Sequence[int]) -> StringTypeM:
    chain = _as_chain(chain)
    n = chain.n
    anchors = tuple(int(x) for x in anchors)
    if len(anchors) < 2:
        raise BadAnchors("a string needs at least two anchors")
    if any(not 0 <= x <= n - 1 for x in anchors):
        raise BadAnchors(f"anchors must lie in 0..{n - 1}: {anchors}")
    if any(x >= y for x, y in zip(anchors, anchors[1:])):
        raise BadAnchors(f"anchors must be strictly increasing: {anchors}")
    elems = [
        string_element(n, lo, hi, k)
        for lo, hi in zip(anchors, anchors[1:])
        for k in range(n + 1)
    ]
    return StringTypeM(chain, anchors, Carrier(chain, tuple(elems)))


def full_string(chain: Chain | int) -> StringTypeM:
    """The string over all anchors ``0, 1, ..., n-1``."""
    chain = _as_chain(chain)
    return string_type_m(chain, range(chain.n))


def mul_index_type_m(x: StringIndexM, y: StringIndexM, string: StringTypeM) -> StringIndexM:
    """Canonical index of ``alpha_x * alpha_y`` from the three-band rule."""
    x = string.canonical(x.k, x.l)
    y = string.canonical(y.k, y.l)
    n = string.n
    k, l = x.k, x.l
    s, r = y.k, y.l
    if s <= n - string.anchor(l + 1) - 1:
        return string.canonical(0, r)
    if s <= n - string.anchor(l) - 1:
        return string.canonical(k, r)
    return string.canonical(n, r)


def constants_ideal(string: StringTypeM | StringType2) -> Subfamily:
    if isinstance(string, StringType2):
        anchors = (string.a, string.b)
    else:
        anchors = string.anchors
    carrier = Carrier(string.chain, tuple(constant(string.chain, c) for c in anchors))
    return Subfamily(SubfamilyKind.CONSTANTS, carrier)


@dataclass(frozen=True)
class IdealCheck:
    holds: bool
    witness: tuple | None = None
    reason: str | None = None

    def __bool__(self):
        return self.holds


def is_ideal(sub: Carrier, ambient: Carrier) -> IdealCheck:
    """Two-sided ideal test: closed under ``+`` and absorbing products from ``ambient``."""
    if not sub.issubset(ambient):
        raise NotASubset("candidate ideal is not contained in the ambient carrier")
    for x in sub:
        for y in sub:
            if add(x, y) not in sub:
                return IdealCheck(False, (x, y), "sum escapes")
    for x in sub:
        for r in ambient:
            if compose(x, r) not in sub:
                return IdealCheck(False, (x, r), "right product escapes")
            if compose(r, x) not in sub:
                return IdealCheck(False, (r, x), "left product escapes")
    return IdealCheck(True)


def is_subsemiring(sub: Carrier) -> bool:
    return check_semiring_axioms(sub).all_hold
