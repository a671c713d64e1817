"""Self-maps of carriers: the shift map, Jordan-type maps and their analysis.

A derivation here is an additive map ``d`` obeying the Leibniz rule
``d(x*y) = d(x)*y + x*d(y)``; nothing is required at a zero, since the
endomorphism semiring has none.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .chain_core import Carrier, ChainEndomorphism, ChainError, add, compose
from .strings import NotASubset, StringType2, StringTypeM, full_string


class EscapesAmbient(ChainError):
    pass


class DomainNotClosed(ChainError):
    pass


class DomainMismatch(ChainError):
    pass


class NotInvariant(ChainError):
    pass


class NotADerivation(ChainError):
    pass


class NotInString(ChainError):
    pass


@dataclass(frozen=True)
class SelfMap:
    domain: Carrier
    ambient: Carrier
    table: Mapping[ChainEndomorphism, ChainEndomorphism]
    label: str = "d"

    def __post_init__(self):
        if not self.domain.issubset(self.ambient):
            raise NotASubset(f"{self.label}: domain is not inside the ambient carrier")
        for x in self.domain:
            if x not in self.table:
                raise ChainError(f"{self.label}: no value for {x}")
            if self.table[x] not in self.ambient:
                raise EscapesAmbient(f"{self.label}({x}) = {self.table[x]} is outside the ambient carrier")
        object.__setattr__(self, "table", {x: self.table[x] for x in self.domain})

    def __call__(self, x: ChainEndomorphism) -> ChainEndomorphism:
        return self.table[x]

    def is_invariant(self, on: Carrier | None = None) -> bool:
        on = self.domain if on is None else on
        return all(self.table[x] in on for x in on)

    def restrict(self, domain: Carrier, ambient: Carrier | None = None) -> "SelfMap":
        return SelfMap(domain, self.ambient if ambient is None else ambient,
                       {x: self.table[x] for x in domain}, self.label)

    def power(self, t: int) -> "SelfMap":
        if not self.is_invariant():
            raise NotInvariant(f"{self.label} does not map its domain into itself")
        table = {}
        for x in self.domain:
            y = x
            for _ in range(t):
                y = self.table[y]
            table[x] = y
        return SelfMap(self.domain, self.ambient, table, f"{self.label}^{t}")

    def same_as(self, other: "SelfMap") -> bool:
        """Extensional equality on a shared domain."""
        return self.domain == other.domain and self.table == other.table


@dataclass(frozen=True)
class LeibnizWitness:
    x: ChainEndomorphism
    y: ChainEndomorphism
    lhs: ChainEndomorphism
    rhs: ChainEndomorphism
    kind: str = "leibniz"


@dataclass(frozen=True)
class Check:
    """A boolean verdict with the first counterexample found, if any."""

    holds: bool
    witness: LeibnizWitness | tuple | None = None

    def __bool__(self):
        return self.holds


def shift_derivation(string: StringType2) -> SelfMap:
    """``D(alpha_k) = alpha_{k-1}``, ``D(alpha_0) = alpha_0`` on the whole string."""
    table = {string.alpha(k): string.alpha(max(k - 1, 0)) for k in range(string.n + 1)}
    return SelfMap(string.elements, string.elements, table, "D")


def delta(alpha: ChainEndomorphism, carrier: Carrier, ambient: Carrier | None = None,
          label: str | None = None) -> SelfMap:
    """``x -> alpha*x + x*alpha``, evaluated in the full endomorphism semiring."""
    ambient = carrier if ambient is None else ambient
    table = {x: add(compose(alpha, x), compose(x, alpha)) for x in carrier}
    return SelfMap(carrier, ambient, table, label or f"delta({alpha})")


def _pairs(over: Carrier):
    for x in over:
        for y in over:
            yield x, y


def is_additive(m: SelfMap, over: Carrier | None = None) -> Check:
    over = m.domain if over is None else over
    for x, y in _pairs(over):
        s = add(x, y)
        if s not in m.domain:
            raise DomainNotClosed(f"{x} + {y} is outside the domain of {m.label}")
        lhs, rhs = m(s), add(m(x), m(y))
        if lhs != rhs:
            return Check(False, LeibnizWitness(x, y, lhs, rhs, "additivity"))
    return Check(True)


def leibniz_sides(m: SelfMap, x: ChainEndomorphism, y: ChainEndomorphism):
    xy = compose(x, y)
    if xy not in m.domain:
        raise DomainNotClosed(f"{x} * {y} is outside the domain of {m.label}")
    return m(xy), add(compose(m(x), y), compose(x, m(y)))


def satisfies_leibniz(m: SelfMap, over: Carrier | None = None) -> Check:
    """Check the Leibniz rule on all pairs from ``over`` (default: the domain).

    ``over`` may be a subset of the domain; products only need to land in
    the domain.
    """
    over = m.domain if over is None else over
    for x, y in _pairs(over):
        lhs, rhs = leibniz_sides(m, x, y)
        if lhs != rhs:
            return Check(False, LeibnizWitness(x, y, lhs, rhs))
    return Check(True)


def is_derivation(m: SelfMap, over: Carrier | None = None) -> Check:
    additive = is_additive(m, over)
    if not additive:
        return additive
    return satisfies_leibniz(m, over)


def maps_commute(m1: SelfMap, m2: SelfMap) -> Check:
    if m1.domain != m2.domain:
        raise DomainMismatch(f"{m1.label} and {m2.label} have different domains")
    for m in (m1, m2):
        if not m.is_invariant():
            raise NotInvariant(f"{m.label} does not map its domain into itself")
    for x in m1.domain:
        u, v = m1(m2(x)), m2(m1(x))
        if u != v:
            return Check(False, (x, u, v))
    return Check(True)


def compose_maps(m1: SelfMap, m2: SelfMap) -> SelfMap:
    """First ``m1``, then ``m2``: ``x -> m2(m1(x))``."""
    if not m1.domain.issubset(m2.domain) or not all(m1(x) in m2.domain for x in m1.domain):
        raise NotInvariant(f"{m1.label} leaves the domain of {m2.label}")
    table = {x: m2(m1(x)) for x in m1.domain}
    return SelfMap(m1.domain, m2.ambient, table, f"{m1.label}.{m2.label}")


@dataclass(frozen=True)
class SemilatticeReport:
    representatives: tuple[SelfMap, ...]
    classes: tuple[tuple[int, ...], ...]
    table: tuple[tuple[int | None, ...], ...]
    closed: bool
    commutative: bool
    idempotent: bool
    identity: int | None
    absorbing: int | None

    @property
    def distinct_maps(self) -> int:
        return len(self.representatives)

    def labels(self) -> list[str]:
        return [m.label for m in self.representatives]

    def class_of(self, i: int) -> int:
        """Representative position of the ``i``-th input map."""
        for pos, members in enumerate(self.classes):
            if i in members:
                return pos
        raise IndexError(i)


def analyze_derivation_set(maps: Sequence[SelfMap]) -> SemilatticeReport:
    """Deduplicate ``maps`` extensionally and tabulate their compositions.

    Table cell ``[i][j]`` is the representative equal to "first rep i, then
    rep j", or ``None`` if that composite is not among the maps.
    """
    reps: list[SelfMap] = []
    classes: list[list[int]] = []
    for i, m in enumerate(maps):
        if not m.is_invariant():
            raise NotInvariant(f"{m.label} does not map its domain into itself")
        for pos, r in enumerate(reps):
            if r.same_as(m):
                classes[pos].append(i)
                break
        else:
            reps.append(m)
            classes.append([i])

    def find(m: SelfMap) -> int | None:
        for pos, r in enumerate(reps):
            if r.same_as(m):
                return pos
        return None

    size = len(reps)
    table = [[find(compose_maps(reps[i], reps[j])) for j in range(size)] for i in range(size)]
    closed = all(c is not None for row in table for c in row)
    commutative = all(table[i][j] == table[j][i] for i in range(size) for j in range(size))
    idempotent = all(table[i][i] == i for i in range(size))
    identity = next((e for e in range(size)
                     if all(table[e][x] == x and table[x][e] == x for x in range(size))), None)
    absorbing = next((z for z in range(size)
                      if all(table[z][x] == z and table[x][z] == z for x in range(size))), None)
    return SemilatticeReport(
        tuple(reps),
        tuple(tuple(c) for c in classes),
        tuple(tuple(row) for row in table),
        closed, commutative, idempotent, identity, absorbing,
    )


def orbit_trace(x: ChainEndomorphism, d: SelfMap, ideal: Carrier) -> tuple[list, bool]:
    """Iterates ``x, d(x), d^2(x), ...`` until one lands in ``ideal`` or repeats."""
    trace = [x]
    seen = {x}
    y = x
    while y not in ideal:
        y = d(y)
        trace.append(y)
        if y in seen:
            return trace, y in ideal
        seen.add(y)
    return trace, True


def differential_closure(R: Carrier, I: Carrier, d: SelfMap) -> Carrier:
    """Elements of ``R`` driven into ``I`` by some power of ``d`` (``d^0`` included)."""
    if not I.issubset(R):
        raise NotASubset("ideal is not contained in R")
    if not R.issubset(d.domain) or not all(d(x) in R for x in R):
        raise NotInvariant(f"R is not invariant under {d.label}")
    members = []
    for x in R:
        y = x
        # An orbit inside a finite set cycles within |R| steps.
        for _ in range(len(R) + 1):
            if y in I:
                members.append(x)
                break
            y = d(y)
    return Carrier(R.chain, tuple(members))


def iterated_leibniz_check(d: SelfMap, order: int) -> Check:
    """``d^t(xy) == join_k d^(t-k)(x) * d^k(y)`` for ``t = order`` on all pairs."""
    if order < 1:
        raise ValueError("order must be at least 1")
    if not is_derivation(d):
        raise NotADerivation(f"{d.label} is not a derivation on its domain")
    powers = [d.power(t) for t in range(order + 1)]
    for x in d.domain:
        for y in d.domain:
            lhs = powers[order](compose(x, y))
            rhs = None
            for k in range(order + 1):
                term = compose(powers[order - k](x), powers[k](y))
                rhs = term if rhs is None else add(rhs, term)
            if lhs != rhs:
                return Check(False, LeibnizWitness(x, y, lhs, rhs, f"leibniz^{order}"))
    return Check(True)


@dataclass(frozen=True)
class ConstantsReport:
    """Values of a Jordan map on the constants of the full string."""

    computed: dict = field(default_factory=dict)   # i -> c with delta(kappa_i) == kappa_c
    predicted: dict = field(default_factory=dict)  # i -> c from the three-case rule
    leibniz: Check = Check(True)

    @property
    def matches(self) -> bool:
        return self.computed == self.predicted


def predicted_delta_on_constant(i: int, s: int, r: int, n: int) -> int:
    """Three-case rule for ``delta_{alpha_{s,r}}(kappa_i)`` in the full string."""
    if i >= r:
        return i
    if i <= n - s - 1:
        return r - 1
    return r


def delta_on_constants(alpha_sr: ChainEndomorphism, string: StringTypeM | None = None) -> ConstantsReport:
    n = alpha_sr.n
    string = full_string(n) if string is None else string
    if string.anchors != tuple(range(n)):
        raise NotInString("the constants rule is stated for the full string over 0..n-1")
    if alpha_sr not in string:
        raise NotInString(f"{alpha_sr} is not in the string")
    idx = string.index_of(alpha_sr)
    kappas = [string.kappa(c) for c in range(n)]
    co = Carrier(string.chain, tuple(kappas))
    d = delta(alpha_sr, co, string.elements)
    computed = {}
    for i, kap in enumerate(kappas):
        value = d(kap)
        computed[i] = value.images[0] if len(set(value.images)) == 1 else None
    predicted = {i: predicted_delta_on_constant(i, idx.k, idx.l, n) for i in range(n)}
    return ConstantsReport(computed, predicted, satisfies_leibniz(d))
