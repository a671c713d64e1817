"""Claim registry: each numbered statement bound to an exhaustive check.

Checks compare closed forms against brute-force composition and joins of
image tuples. A claim runs at one chain size ``n`` and sweeps every legal
parameter choice (anchor pairs, anchor sets, string indices) at that size.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable

from .chain_core import (
    Carrier,
    Chain,
    ChainEndomorphism,
    ChainError,
    add,
    all_endomorphisms,
    check_semiring_axioms,
    compose,
    constant,
    is_idempotent,
    leq,
    make_endomorphism,
)
from .derivations import (
    SelfMap,
    analyze_derivation_set,
    compose_maps,
    delta,
    delta_on_constants,
    differential_closure,
    is_additive,
    is_derivation,
    iterated_leibniz_check,
    leibniz_sides,
    maps_commute,
    satisfies_leibniz,
    shift_derivation,
)
from .specs import SpecResolution, parse_derivation, parse_string, parse_subset
from .strings import (
    Classification,
    StringType2,
    StringTypeM,
    SubfamilyKind,
    classify,
    constants_ideal,
    full_string,
    is_ideal,
    mul_index_type2,
    mul_index_type_m,
    string_type2,
    string_type_m,
    subfamily,
)

CLAIM_IDS = (
    "3.1", "3.2", "3.3", "3.4", "3.5",
    "4.1a", "4.1b", "4.2", "4.3", "4.4", "4.5",
    "5.1", "5.2", "5.3", "5.4", "5.5", "5.6",
    "6.1", "6.2", "6.3", "6.4",
    "7.1", "7.2", "7.3", "7.4", "7.5", "7.6", "7.7", "7.8",
)

# Claims whose content is a counterexample; they pass when it reproduces.
COUNTEREXAMPLE_CLAIMS = ("7.1", "7.4")

DEFAULT_MAX_N = 12


class UnknownClaim(KeyError):
    pass


class BadParams(ValueError):
    pass


class ClaimFailed(Exception):
    def __init__(self, witness: dict, details: dict | None = None):
        super().__init__(witness.get("reason", "claim failed"))
        self.witness = witness
        self.details = details or {}


@dataclass
class VerificationResult:
    claim: str
    params: dict
    status: str
    witness: dict | None = None
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        record = {
            "claim": self.claim,
            "params": self.params,
            "status": self.status,
        }
        if self.witness is not None:
            record["witness"] = self.witness
        record["elapsed_ms"] = round(self.elapsed * 1000, 3)
        if self.details:
            record["details"] = self.details
        return record


# -- helpers ----------------------------------------------------------------


def enc(e: ChainEndomorphism | None):
    return None if e is None else list(e.images)


def _fail(reason: str, **items) -> None:
    witness = {"reason": reason}
    for key, value in items.items():
        if isinstance(value, ChainEndomorphism):
            value = enc(value)
        elif isinstance(value, (tuple, list)) and value and all(
                isinstance(v, ChainEndomorphism) for v in value):
            value = [enc(v) for v in value]
        witness[key] = value
    raise ClaimFailed(witness)


def _expect(cond: bool, reason: str, **items) -> None:
    if not cond:
        _fail(reason, **items)


def _leibniz_witness(w) -> dict:
    return {"x": enc(w.x), "y": enc(w.y), "lhs": enc(w.lhs), "rhs": enc(w.rhs), "kind": w.kind}


def _expect_check(check, reason: str, **ctx) -> None:
    if not check:
        w = check.witness
        if hasattr(w, "lhs"):
            _fail(reason, **ctx, **_leibniz_witness(w))
        _fail(reason, **ctx, witness=[enc(v) if isinstance(v, ChainEndomorphism) else v for v in w])


def _expect_semiring(carrier: Carrier, reason: str, **ctx) -> None:
    report = check_semiring_axioms(carrier)
    for law, value in report.results.items():
        if value is not True:
            _fail(reason, law=law, triple=list(value), **ctx)


def _type2_pairs(n: int):
    for a in range(n):
        for b in range(a + 1, n):
            yield a, b


def _anchor_sets(n: int):
    for m in range(2, n + 1):
        yield from itertools.combinations(range(n), m)


def _ab(a, b):
    return {"a": a, "b": b}


def _is_chain(carrier: Carrier) -> bool:
    return all(leq(x, y) for x, y in zip(carrier, carrier.elements[1:]))


def _closure_checks(R: Carrier, closure: Carrier, d: SelfMap, ctx: dict) -> None:
    """The integral of a differential ideal is itself a differential subsemiring."""
    report = check_semiring_axioms(closure)
    _expect(report.holds("closed_add"), "closure not closed under +",
            pair=list(report.witness("closed_add") or ()), **ctx)
    _expect(report.holds("closed_mul"), "closure not closed under *",
            pair=list(report.witness("closed_mul") or ()), **ctx)
    for x in closure:
        _expect(d(x) in closure, "closure not closed under the derivation", x=x, **ctx)


def _delta_family(string: StringType2) -> list[SelfMap]:
    return [delta(string.alpha(k), string.elements, label=f"delta(a_{k})") for k in range(string.n + 1)]


def expected_delta_table(n: int, a: int, b: int) -> list[list[int]]:
    """Closed-form composition table of the Jordan maps indexed 0..n-a.

    Below n-b everything composes to index 0, the idempotent band composes by
    max, lower maps act as identities on the band, and n-a absorbs.
    """
    top = n - a
    low = n - b  # first idempotent index

    def cell(i, j):
        if i == top or j == top:
            return top
        if i < low and j < low:
            return 0
        if i < low:
            return i
        if j < low:
            return j
        return max(i, j)

    return [[cell(i, j) for j in range(top + 1)] for i in range(top + 1)]


# -- claims -----------------------------------------------------------------


def claim_3_1(n: int) -> dict:
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        _expect(len(s) == n + 1 and _is_chain(s.elements), "string is not an (n+1)-chain", **_ab(a, b))
        _expect(s.alpha(0) == constant(n, a) and s.alpha(n) == constant(n, b),
                "string ends are not the constants", **_ab(a, b))
        _expect_semiring(s.elements, "string is not a subsemiring", **_ab(a, b))
    details = {}
    if n == 4:
        f = make_endomorphism(4, (2, 2, 3, 3))
        details["fixed_points_example"] = {"element": enc(f), "fixes_3": f(3) == 3, "fixes_2": f(2) == 2}
    return details


def claim_3_2(n: int) -> dict:
    pairs = 0
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        for k in range(n + 1):
            for t in range(n + 1):
                brute = s.index_of(compose(s.alpha(k), s.alpha(t)))
                formula = mul_index_type2(k, t, s)
                pairs += 1
                _expect(brute == formula, "three-band formula disagrees with composition",
                        **_ab(a, b), k=k, s=t, formula=formula, composed=brute)
    return {"pairs": pairs}


def _powers_hit(x: ChainEndomorphism, target: ChainEndomorphism) -> bool:
    y, seen = x, set()
    while y not in seen:
        if y == target:
            return True
        seen.add(y)
        y = compose(y, x)
    return False


def claim_3_3(n: int) -> dict:
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        lo, hi = s.alpha(0), s.alpha(n)
        fams = {kind: subfamily(s, kind) for kind in (
            SubfamilyKind.A_NILPOTENTS, SubfamilyKind.B_NILPOTENTS, SubfamilyKind.IDEMPOTENTS)}
        for kind, fam in fams.items():
            _expect_semiring(fam.carrier, f"{kind.value} is not a subsemiring", **_ab(a, b))
        a_nil = {x for x in s if _powers_hit(x, lo)}
        b_nil = {x for x in s if _powers_hit(x, hi)}
        _expect(a_nil == set(fams[SubfamilyKind.A_NILPOTENTS]), "N_a is not the set of a-nilpotents", **_ab(a, b))
        _expect(b_nil == set(fams[SubfamilyKind.B_NILPOTENTS]), "N_b is not the set of b-nilpotents", **_ab(a, b))
        for k in range(n + 1):
            x = s.alpha(k)
            sq = compose(x, x)
            expected = {Classification.A_NILPOTENT: lo, Classification.IDEMPOTENT: x,
                        Classification.B_NILPOTENT: hi}[classify(k, s)]
            _expect(sq == expected, "classification disagrees with squaring", **_ab(a, b), k=k, square=sq)
        idem = {x for x in s if is_idempotent(x)}
        # The two constant ends are idempotent too but belong to N_a and N_b.
        _expect(idem - {lo, hi} == set(fams[SubfamilyKind.IDEMPOTENTS]),
                "Id is not the set of non-constant idempotents", **_ab(a, b))
    return {}


def _disjoint_union(s, whole, parts, name, a, b):
    sets = [set(subfamily(s, p)) for p in parts]
    _expect(not (sets[0] & sets[1]), f"{name} parts overlap", **_ab(a, b))
    _expect(set(subfamily(s, whole)) == sets[0] | sets[1], f"{name} is not the union of its parts", **_ab(a, b))


def claim_3_4(n: int) -> dict:
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        _expect_semiring(subfamily(s, SubfamilyKind.S).carrier, "S_{a,b} is not a subsemiring", **_ab(a, b))
        _disjoint_union(s, SubfamilyKind.S, (SubfamilyKind.A_NILPOTENTS, SubfamilyKind.IDEMPOTENTS), "S", a, b)
    return {}


def claim_3_5(n: int) -> dict:
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        _expect_semiring(subfamily(s, SubfamilyKind.T).carrier, "T_{a,b} is not a subsemiring", **_ab(a, b))
        _disjoint_union(s, SubfamilyKind.T, (SubfamilyKind.IDEMPOTENTS, SubfamilyKind.B_NILPOTENTS), "T", a, b)
    return {}


def claim_4_1a(n: int) -> dict:
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        ds = subfamily(s, SubfamilyKind.DS).carrier
        _expect_semiring(ds, "DS is not a subsemiring", **_ab(a, b))
        _expect(ds.issubset(subfamily(s, SubfamilyKind.S).carrier), "DS is not inside S", **_ab(a, b))
        zero = s.alpha(0)
        for x in ds:
            _expect(add(zero, x) == x and compose(zero, x) == zero and compose(x, zero) == zero,
                    "alpha_0 is not the zero of DS", **_ab(a, b), x=x)
        right_ids = [e for e in ds if all(compose(x, e) == x for x in ds)]
        _expect(right_ids == [s.alpha(n - b)], "alpha_{n-b} is not the unique right identity",
                **_ab(a, b), right_identities=right_ids)
    return {}


def claim_4_1b(n: int) -> dict:
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        ds = subfamily(s, SubfamilyKind.DS).carrier
        d = shift_derivation(s).restrict(ds, ds)
        _expect_check(is_derivation(d), "D is not a derivation on DS", **_ab(a, b))
    return {}


def claim_4_2(n: int) -> dict:
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        ds = subfamily(s, SubfamilyKind.DS).carrier
        D = shift_derivation(s)
        for k in range(n - b + 1, n + 1):
            x = s.alpha(k)
            lhs, rhs = leibniz_sides(D, x, x)
            _expect(lhs != rhs, "no Leibniz failure at (alpha_k, alpha_k)", **_ab(a, b), k=k, lhs=lhs, rhs=rhs)
            extended = ds.union(Carrier.of([x]))
            _expect(not satisfies_leibniz(D, extended), "extended domain still satisfies Leibniz",
                    **_ab(a, b), k=k)
    return {}


def claim_4_3(n: int) -> dict:
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        ds = subfamily(s, SubfamilyKind.DS).carrier
        D = shift_derivation(s)
        previous = None
        for j in range(0, n - b):
            ij = subfamily(s, SubfamilyKind.DIFFERENTIAL_IDEAL, j).carrier
            _expect_semiring(ij, "I_j is not a subsemiring", **_ab(a, b), j=j)
            _expect(all(D(x) in ij for x in ij), "I_j is not D-invariant", **_ab(a, b), j=j)
            ideal = is_ideal(ij, ds)
            _expect(bool(ideal), "I_j is not an ideal of DS", **_ab(a, b), j=j,
                    pair=list(ideal.witness or ()))
            if previous is not None:
                _expect(previous.issubset(ij) and len(previous) < len(ij), "I_j chain is not strict", **_ab(a, b), j=j)
            previous = ij
        _expect(set(previous) == set(subfamily(s, SubfamilyKind.A_NILPOTENTS)),
                "top differential ideal is not N_a", **_ab(a, b))
    return {}


def _closure_instances(n: int):
    """(label, R, I, d) for every integral the other claims compute at size n."""
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        ds = subfamily(s, SubfamilyKind.DS).carrier
        d = shift_derivation(s).restrict(ds, ds)
        for j in range(0, n - b):
            yield {"a": a, "b": b, "d": "D", "I": f"I_{j}"}, ds, subfamily(s, SubfamilyKind.DIFFERENTIAL_IDEAL, j).carrier, d
        ends = constants_ideal(s).carrier
        for i, dm in enumerate(_delta_family(s)):
            yield {"a": a, "b": b, "d": f"delta(a_{i})", "I": "{a_0,a_n}"}, s.elements, ends, dm
    full = full_string(n)
    co = constants_ideal(full).carrier
    for t in range(2, n + 1):
        dm = delta(full.alpha(t, n - 1), full.elements)
        yield {"string": "full", "d": f"delta(a_{t}_{n - 1})", "I": "CO"}, full.elements, co, dm


def claim_4_4(n: int) -> dict:
    count = 0
    for ctx, R, I, d in _closure_instances(n):
        closure = differential_closure(R, I, d)
        count += 1
        _expect(I.issubset(closure), "closure does not contain the ideal", **ctx)
        _expect(differential_closure(R, closure, d) == closure, "closure is not idempotent", **ctx)
        _closure_checks(R, closure, d, ctx)
    # Monotone in the ideal along the I_j chains.
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        ds = subfamily(s, SubfamilyKind.DS).carrier
        d = shift_derivation(s).restrict(ds, ds)
        _expect_check(iterated_leibniz_check(d, 2), "second-order Leibniz expansion fails", **_ab(a, b))
        prev = None
        for j in range(0, n - b):
            cl = differential_closure(ds, subfamily(s, SubfamilyKind.DIFFERENTIAL_IDEAL, j).carrier, d)
            _expect(prev is None or prev.issubset(cl), "closure is not monotone in the ideal", **_ab(a, b), j=j)
            prev = cl
    return {"integrals_checked": count}


def claim_4_5(n: int) -> dict:
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        ds = subfamily(s, SubfamilyKind.DS).carrier
        d = shift_derivation(s).restrict(ds, ds)
        for j in range(0, n - b):
            ij = subfamily(s, SubfamilyKind.DIFFERENTIAL_IDEAL, j).carrier
            closure = differential_closure(ds, ij, d)
            _expect(closure == ds, "integral of I_j is not DS", **_ab(a, b), j=j,
                    closure=list(closure.elements))
    return {}


def claim_5_1(n: int) -> dict:
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        for k, d in enumerate(_delta_family(s)):
            _expect_check(is_derivation(d), "delta is not a derivation", **_ab(a, b), alpha_index=k)
    return {}


def claim_5_2(n: int) -> dict:
    informational = {}
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        family = _delta_family(s)
        for i, j in itertools.combinations(range(len(family)), 2):
            _expect_check(maps_commute(family[i], family[j]), "deltas do not commute", **_ab(a, b), i=i, j=j)
        D = shift_derivation(s)
        commuting = [k for k, d in enumerate(family) if maps_commute(D, d)]
        informational[f"{a},{b}"] = commuting
    return {"D_commutes_with_delta_indices": informational}


def claim_5_3(n: int) -> dict:
    for b in range(1, n):
        s = string_type2(n, 0, b)
        ident = delta(s.alpha(n - b), s.elements)
        _expect(all(ident(x) == x for x in s), "delta_{n-b} is not the identity", b=b)
        family = [delta(s.alpha(t), s.elements, label=f"delta(a_{t})") for t in range(n - b, n)]
        for pos, t in enumerate(range(n - b, n)):
            d = family[pos]
            for k in range(n + 1):
                if k < n - b or k == n or k > t:
                    want = s.alpha(k)
                else:
                    want = s.alpha(t)
                _expect(d(s.alpha(k)) == want, "delta value differs", b=b, l=t, k=k)
        for i, l_idx in enumerate(range(n - b, n)):
            for j, m_idx in enumerate(range(n - b, n)):
                if l_idx <= m_idx:
                    # delta_m applied after delta_l
                    comp = compose_maps(family[i], family[j])
                    _expect(comp.same_as(family[j]), "delta_m . delta_l != delta_m", b=b, l=l_idx, m=m_idx)
        report = analyze_derivation_set(family)
        _expect(report.closed and report.commutative and report.idempotent,
                "Delta is not a semilattice", b=b)
        _expect(report.identity == 0, "identity is not delta_{n-b}", b=b, identity=report.identity)
    return {}


TOP_PAIR_TABLE = [[0, 0, 2], [0, 1, 2], [2, 2, 2]]


def claim_5_4(n: int) -> dict:
    a, b = n - 2, n - 1
    s = string_type2(n, a, b)
    family = _delta_family(s)
    top = s.alpha(n)
    expected_rows = {
        0: [s.alpha(0), s.alpha(0)] + [top] * (n - 1),
        1: [s.alpha(0), s.alpha(1)] + [top] * (n - 1),
    }
    for t in range(n + 1):
        row = [family[t](x) for x in s]
        want = expected_rows.get(t, [top] * (n + 1))
        _expect(row == want, "delta values differ from the expected rows", alpha_index=t, row=row)
    report = analyze_derivation_set(family)
    _expect(report.distinct_maps == 3, "expected three distinct maps", distinct=report.distinct_maps)
    _expect(report.classes[2] == tuple(range(2, n + 1)), "delta_2..delta_n do not collapse",
            classes=[list(c) for c in report.classes])
    table = [list(row) for row in report.table]
    _expect(table == TOP_PAIR_TABLE, "composition table differs from the expected 3x3 table", table=table)
    _expect(report.commutative and report.idempotent and report.closed, "Delta is not a semilattice")
    return {"table": table, "labels": report.labels()}


def claim_5_5(n: int) -> dict:
    not_idempotent = []
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        family = _delta_family(s)
        report = analyze_derivation_set(family)
        top = n - a
        _expect(report.distinct_maps == top + 1, "unexpected number of distinct maps",
                **_ab(a, b), distinct=report.distinct_maps)
        _expect(report.classes[top] == tuple(range(top, n + 1)), "delta_{n-a}..delta_n do not collapse",
                **_ab(a, b), classes=[list(c) for c in report.classes])
        _expect(all(report.classes[i] == (i,) for i in range(top)), "unexpected coincidences below n-a",
                **_ab(a, b))
        _expect(report.closed and report.commutative, "Delta is not a commutative closed set", **_ab(a, b))
        _expect(report.identity == n - b, "identity is not delta_{n-b}", **_ab(a, b), identity=report.identity)
        _expect(report.absorbing == top, "absorbing element is not delta_{n-a}",
                **_ab(a, b), absorbing=report.absorbing)
        table = [list(row) for row in report.table]
        expected = expected_delta_table(n, a, b)
        _expect(table == expected, "composition table differs from the closed form",
                **_ab(a, b), table=table, expected=expected)
        if not report.idempotent:
            bad = [i for i in range(report.distinct_maps) if report.table[i][i] != i]
            not_idempotent.append({"a": a, "b": b, "squares_not_fixed": bad})
    return {"non_idempotent_cases": not_idempotent}


def claim_5_6(n: int) -> dict:
    mismatches = []
    for a, b in _type2_pairs(n):
        s = string_type2(n, a, b)
        R = s.elements
        I = constants_ideal(s).carrier
        ideal = is_ideal(I, R)
        _expect(bool(ideal), "{alpha_0, alpha_n} is not an ideal", **_ab(a, b))
        b_nil = subfamily(s, SubfamilyKind.B_NILPOTENTS).carrier
        for t, d in enumerate(_delta_family(s)):
            _expect(all(d(x) in I for x in I), "I is not closed under delta", **_ab(a, b), alpha_index=t)
            closure = differential_closure(R, I, d)
            _closure_checks(R, closure, d, {"a": a, "b": b, "alpha_index": t})
            idempotent_range = n - b <= t <= n - a - 1
            stated = I if idempotent_range else R
            if closure != stated:
                mismatches.append({"a": a, "b": b, "alpha_index": t,
                                   "stated": [enc(x) for x in stated],
                                   "closure": [enc(x) for x in closure]})
            # What the brute force actually gives: the b-nilpotents join I.
            observed = I.union(b_nil) if idempotent_range else R
            _expect(closure == observed, "integral differs from the observed closed form",
                    **_ab(a, b), alpha_index=t, closure=list(closure.elements))
    if mismatches:
        witness = dict(mismatches[0], reason="integral over an idempotent-index delta is larger than I")
        raise ClaimFailed(witness, {"mismatches": len(mismatches),
                                    "observed_form": "I + N_b for n-b <= i <= n-a-1; R otherwise"})
    return {}


def claim_6_1(n: int) -> dict:
    for anchors in _anchor_sets(n):
        s = string_type_m(n, anchors)
        m = len(anchors)
        _expect(len(s) == (m - 1) * n + 1, "wrong element count", anchors=list(anchors), count=len(s))
        _expect(_is_chain(s.elements), "string is not a chain", anchors=list(anchors))
        _expect_semiring(s.elements, "string is not a subsemiring", anchors=list(anchors))
    return {}


def claim_6_2(n: int) -> dict:
    strings = {anchors: string_type_m(n, anchors) for anchors in _anchor_sets(n)}
    checked = 0
    missing = []
    for anchors, big in strings.items():
        for m in range(2, len(anchors)):
            for sub in itertools.combinations(anchors, m):
                checked += 1
                contained = strings[sub].elements.issubset(big.elements)
                pos = [anchors.index(x) for x in sub]
                consecutive = pos == list(range(pos[0], pos[0] + m))
                # Runs of consecutive anchors are always contained.
                _expect(contained or not consecutive, "consecutive sub-string is not contained",
                        anchors=list(anchors), sub=list(sub))
                if not contained:
                    outside = next(x for x in strings[sub] if x not in big)
                    missing.append({"anchors": list(anchors), "sub": list(sub), "element": enc(outside)})
    for anchors, s in strings.items():
        report = check_semiring_axioms(s.elements)
        _expect(report.holds("closed_add") and report.holds("closed_mul"), "sub-string not closed",
                anchors=list(anchors))
    details = {"pairs_checked": checked}
    if missing:
        witness = dict(missing[0], reason="sub-anchor string is not contained in the larger string")
        details.update(not_contained=len(missing), contained_when="sub-anchors are consecutive")
        raise ClaimFailed(witness, details)
    return details


def claim_6_3(n: int) -> dict:
    pairs = 0
    for anchors in _anchor_sets(n):
        s = string_type_m(n, anchors)
        idx = s.indices()
        for x in idx:
            ex = s.alpha(x.k, x.l)
            for y in idx:
                brute = s.index_of(compose(ex, s.alpha(y.k, y.l)))
                formula = mul_index_type_m(x, y, s)
                pairs += 1
                _expect(brute == formula, "type-m formula disagrees with composition",
                        anchors=list(anchors), x=str(x), y=str(y), formula=str(formula), composed=str(brute))
    return {"pairs": pairs}


def claim_6_4(n: int) -> dict:
    for anchors in _anchor_sets(n):
        s = string_type_m(n, anchors)
        co = constants_ideal(s).carrier
        _expect(len(co) == len(anchors), "wrong number of constants", anchors=list(anchors))
        ideal = is_ideal(co, s.elements)
        _expect(bool(ideal), "constants are not an ideal", anchors=list(anchors), pair=list(ideal.witness or ()))
    return {}


def _gap_instance_c4() -> dict:
    F = full_string(4)
    x = make_endomorphism(4, (0, 0, 1, 1))
    y = make_endomorphism(4, (2, 2, 3, 3))
    alpha = make_endomorphism(4, (2, 2, 2, 2))
    _expect(x == F.alpha(2, 1) and y == F.alpha(2, 3), "instance elements have unexpected indices")
    d = delta(alpha, F.elements)
    xy = compose(x, y)
    _expect(xy == alpha, "alpha_{2,1}*alpha_{2,3} != <2,2,2,2>", product=xy)
    lhs, rhs = leibniz_sides(d, x, y)
    dx_y = compose(d(x), y)
    _expect(lhs == alpha, "delta(x*y) != <2,2,2,2>", lhs=lhs)
    _expect(d(x) == alpha and dx_y == make_endomorphism(4, (3, 3, 3, 3)), "intermediate values differ",
            dx=d(x), dx_y=dx_y)
    _expect(lhs != rhs and leq(dx_y, rhs), "Leibniz rule unexpectedly holds", lhs=lhs, rhs=rhs)
    return {
        "delta_parameter": enc(alpha),
        "delta_parameter_canonical_index": str(F.index_of(alpha)),
        "x": enc(x), "y": enc(y), "x*y": enc(xy),
        "delta(x)": enc(d(x)), "delta(x)*y": enc(dx_y),
        "x*delta(y)": enc(compose(x, d(y))),
        "lhs": enc(lhs), "rhs": enc(rhs),
    }


def _gap_counterexamples(n: int) -> int:
    found = 0
    for anchors in _anchor_sets(n):
        s = string_type_m(n, anchors)
        m = len(anchors)
        for l in range(1, m):
            if s.anchor(l + 1) - s.anchor(l) < 2:
                continue
            p = n - s.anchor(l + 1)
            d = delta(s.alpha(p, l), s.elements)
            for r in range(l + 1, m):
                x, y = s.alpha(p + 1, l), s.alpha(p, r)
                ctx = {"anchors": list(anchors), "l": l, "r": r, "p": p}
                _expect(compose(x, y) == s.alpha(p + 1, r), "x*y != alpha_{p+1,r}", **ctx)
                lhs, rhs = leibniz_sides(d, x, y)
                _expect(lhs == s.alpha(p, r) and rhs == s.alpha(p + 1, r) and lhs != rhs,
                        "gap construction does not break the Leibniz rule", **ctx, lhs=lhs, rhs=rhs)
                found += 1
    return found


def claim_7_1(n: int) -> tuple[dict, dict | None]:
    details = {"gap_counterexamples": _gap_counterexamples(n)}
    witness = None
    if n == 4:
        witness = _gap_instance_c4()
    return details, witness


def _set_S(n: int) -> Carrier:
    full = full_string(n)
    return constants_ideal(full).carrier.union(string_type2(n, n - 2, n - 1).elements)


def claim_7_2(n: int) -> dict:
    F = full_string(n)
    co = constants_ideal(F).carrier
    for idx in F.indices():
        alpha = F.alpha(idx.k, idx.l)
        report = delta_on_constants(alpha, F)
        _expect(report.matches, "delta on constants differs from the three cases", alpha=str(idx),
                computed=report.computed, predicted=report.predicted)
        _expect_check(report.leibniz, "Leibniz fails on constants", alpha=str(idx))
        for c in co:
            v = add(compose(alpha, c), compose(c, alpha))
            _expect(v in co, "constants not invariant", alpha=str(idx), kappa=c)
        for i in range(n):
            # kappa_i * alpha_{s,r} is the constant alpha_{s,r}(i).
            _expect(compose(constant(n, i), alpha) == constant(n, alpha(i)), "constant product rule fails",
                    alpha=str(idx), i=i)
    return {}


def claim_7_3(n: int) -> dict:
    F = full_string(n)
    S = _set_S(n)
    _expect(S.issubset(F.elements), "S is not inside the full string")
    _expect_semiring(S, "S is not a subsemiring")
    shifted_mismatch = 0
    for idx in F.indices():
        alpha = F.alpha(idx.k, idx.l)
        d = delta(alpha, S, F.elements)
        for x in S:
            _expect(d(x) in S, "S is not invariant", alpha=str(idx), x=x, value=d(x))
    for l in range(1, n - 1):
        for k in range(n + 1):
            d = delta(F.alpha(k, l), F.elements)
            for t in range(n + 1):
                value = d(F.alpha(t, n - 1))
                if t <= n - l - 1:
                    want = constant(n, n - 2)
                elif t == n - l:
                    want = F.alpha(k, n - 1)
                else:
                    want = constant(n, n - 1)
                _expect(value == want, "image formula fails", k=k, l=l, s=t, value=value)
                # Same cases with every threshold one lower: counted, not asserted.
                if t <= n - 1:
                    if t <= n - l - 2:
                        shifted = constant(n, n - 2)
                    elif t == n - l - 1:
                        shifted = F.alpha(k, n - 1)
                    else:
                        shifted = constant(n, n - 1)
                    shifted_mismatch += value != shifted
    return {"shifted_threshold_mismatches": shifted_mismatch}


def _constants_instance_c4() -> dict:
    F = full_string(4)
    alpha = make_endomorphism(4, (1, 2, 2, 2))
    k1 = constant(4, 1)
    y = make_endomorphism(4, (2, 2, 3, 3))
    _expect(F.index_of(alpha) == F.canonical(3, 2) and y == F.alpha(2, 3), "instance elements have unexpected indices")
    S = _set_S(4)
    d = delta(alpha, S, F.elements)
    k1y = compose(k1, y)
    _expect(k1y == constant(4, 2), "kappa_1*alpha_{2,3} != kappa_2", product=k1y)
    lhs, rhs = leibniz_sides(d, k1, y)
    _expect(lhs == constant(4, 2), "delta(kappa_2) != kappa_2", lhs=lhs)
    _expect(d(k1) == constant(4, 2), "delta(kappa_1) != kappa_2", value=d(k1))
    dk_y = compose(d(k1), y)
    _expect(dk_y == constant(4, 3), "delta(kappa_1)*alpha_{2,3} != kappa_3", value=dk_y)
    _expect(lhs != rhs, "Leibniz rule unexpectedly holds", lhs=lhs, rhs=rhs)
    scan = satisfies_leibniz(d)
    _expect(not scan, "exhaustive scan found no violation")
    return {
        "x": enc(k1), "y": enc(y), "x*y": enc(k1y),
        "delta(x)": enc(d(k1)), "delta(x)*y": enc(dk_y), "x*delta(y)": enc(compose(k1, d(y))),
        "lhs": enc(lhs), "rhs": enc(rhs),
        "first_canonical_witness": _leibniz_witness(scan.witness),
    }


def claim_7_4(n: int) -> tuple[dict, dict | None]:
    F = full_string(n)
    S = _set_S(n)
    failing = []
    for idx in F.indices():
        d = delta(F.alpha(idx.k, idx.l), S, F.elements)
        if not is_derivation(d):
            failing.append(str(idx))
    details = {"non_derivations_on_S": failing}
    witness = _constants_instance_c4() if n == 4 else None
    return details, witness


def claim_7_5(n: int) -> dict:
    F = full_string(n)
    for t in range(n + 1):
        d = delta(F.alpha(t, n - 1), F.elements)
        for l in range(1, n - 1):
            for k in range(n + 1):
                value = d(F.alpha(k, l))
                if t <= n - l - 1:
                    want = constant(n, n - 2)
                elif t == n - l:
                    want = F.alpha(k, n - 1)
                else:
                    want = constant(n, n - 1)
                _expect(value == want, "closed form differs", s=t, k=k, l=l, value=value)
        for k in range(n + 1):
            value = d(F.alpha(k, n - 1))
            if k >= 2 or t >= 2:
                want = constant(n, n - 1)
            elif k == t == 1:
                want = F.alpha(1, n - 1)
            else:
                want = constant(n, n - 2)
            _expect(value == want, "top-string closed form differs", s=t, k=k, value=value)
    return {}


def claim_7_6(n: int) -> dict:
    F = full_string(n)
    checked = 0
    for t in range(n + 1):
        d = delta(F.alpha(t, n - 1), F.elements)
        for q in range(1, n - 1):
            for p in range(n + 1):
                y = F.alpha(p, q)
                dy = d(y)
                for l in range(1, n):
                    for k in range(n + 1):
                        x = F.alpha(k, l)
                        right = compose(x, dy)
                        total = add(compose(d(x), y), right)
                        checked += 1
                        _expect(total == right, "absorption fails", s=t, k=k, l=l, p=p, q=q)
    return {"tuples": checked}


def claim_7_7(n: int) -> dict:
    F = full_string(n)
    for t in range(2, n + 1):
        d = delta(F.alpha(t, n - 1), F.elements)
        _expect_check(is_derivation(d), "delta_{s,n-1} is not a derivation", s=t)
    low = {}
    for t in (0, 1):
        check = is_derivation(delta(F.alpha(t, n - 1), F.elements))
        low[str(t)] = True if check else _leibniz_witness(check.witness)
    return {"s_below_2": low}


def claim_7_8(n: int) -> dict:
    F = full_string(n)
    co = constants_ideal(F).carrier
    for t in range(2, n + 1):
        d = delta(F.alpha(t, n - 1), F.elements)
        _expect(all(d(x) in co for x in co), "CO is not closed under delta", s=t)
        closure = differential_closure(F.elements, co, d)
        _expect(closure == F.elements, "integral of CO is not the whole string", s=t,
                closure=list(closure.elements))
        _closure_checks(F.elements, closure, d, {"s": t})
    return {}


@dataclass(frozen=True)
class ClaimEntry:
    id: str
    check: Callable
    min_n: int
    statement: str
    max_n: int | None = None


REGISTRY: dict[str, ClaimEntry] = {c.id: c for c in (
    ClaimEntry("3.1", claim_3_1, 2, "STR{a,b} is an (n+1)-chain and a subsemiring"),
    ClaimEntry("3.2", claim_3_2, 2, "three-band multiplication rule in STR{a,b}"),
    ClaimEntry("3.3", claim_3_3, 2, "N_a, N_b, Id_{a,b} are subsemirings matching squaring behaviour"),
    ClaimEntry("3.4", claim_3_4, 2, "S_{a,b} is a subsemiring, S = N_a + Id"),
    ClaimEntry("3.5", claim_3_5, 2, "T_{a,b} is a subsemiring, T = Id + N_b"),
    ClaimEntry("4.1a", claim_4_1a, 2, "DS_{a,b} is a subsemiring of S_{a,b}"),
    ClaimEntry("4.1b", claim_4_1b, 2, "D is a derivation on DS_{a,b}"),
    ClaimEntry("4.2", claim_4_2, 2, "DS_{a,b} is the maximal differential subsemiring under D"),
    ClaimEntry("4.3", claim_4_3, 2, "I_0 < ... < I_{n-b-1} = N_a are differential ideals of DS"),
    ClaimEntry("4.4", claim_4_4, 2, "integrals of differential ideals are differential subsemirings"),
    ClaimEntry("4.5", claim_4_5, 2, "integral of every I_k over DS is DS"),
    ClaimEntry("5.1", claim_5_1, 2, "every delta_alpha is a derivation of STR{a,b}"),
    ClaimEntry("5.2", claim_5_2, 2, "all delta_alpha commute"),
    ClaimEntry("5.3", claim_5_3, 2, "STR{0,b}: Jordan maps over Id form a semilattice with identity"),
    ClaimEntry("5.4", claim_5_4, 2, "STR{n-2,n-1}: three maps with the shifted table"),
    ClaimEntry("5.5", claim_5_5, 2, "Delta has identity delta_{n-b} and absorbing delta_{n-a}"),
    ClaimEntry("5.6", claim_5_6, 2, "integrals of {alpha_0, alpha_n} under each delta"),
    ClaimEntry("6.1", claim_6_1, 2, "type-m strings are ((m-1)n+1)-chains and subsemirings"),
    ClaimEntry("6.2", claim_6_2, 2, "sub-anchor strings are subsemirings of the larger string"),
    ClaimEntry("6.3", claim_6_3, 2, "type-m three-band multiplication rule"),
    ClaimEntry("6.4", claim_6_4, 2, "constants form an ideal of a type-m string"),
    ClaimEntry("7.1", claim_7_1, 2, "delta maps on type-m strings fail the Leibniz rule"),
    ClaimEntry("7.2", claim_7_2, 2, "delta_{s,r} on constants: three cases and Leibniz"),
    ClaimEntry("7.3", claim_7_3, 2, "S = CO + STR{n-2,n-1} is a subsemiring invariant under all delta"),
    ClaimEntry("7.4", claim_7_4, 2, "delta_{3,2} on S over C_4 fails the Leibniz rule"),
    ClaimEntry("7.5", claim_7_5, 2, "closed form of delta_{s,n-1} on the full string"),
    ClaimEntry("7.6", claim_7_6, 2, "absorption inequality for delta_{s,n-1}"),
    ClaimEntry("7.7", claim_7_7, 2, "delta_{s,n-1}, s >= 2, is a derivation of the full string"),
    ClaimEntry("7.8", claim_7_8, 2, "integral of CO under delta_{s,n-1} is the full string"),
)}


def verify_claim(claim_id: str, params: dict | int) -> VerificationResult:
    if claim_id not in REGISTRY:
        raise UnknownClaim(claim_id)
    spec = REGISTRY[claim_id]
    if isinstance(params, int):
        params = {"n": params}
    n = params.get("n")
    if not isinstance(n, int) or n < spec.min_n:
        raise BadParams(f"claim {claim_id} needs n >= {spec.min_n}, got {n!r}")
    start = time.perf_counter()
    witness = None
    try:
        out = spec.check(n)
        if isinstance(out, tuple):
            details, witness = out
        else:
            details = out
        status = "pass"
    except ClaimFailed as failure:
        status, details, witness = "fail", failure.details, failure.witness
    elapsed = time.perf_counter() - start
    if status == "pass" and claim_id == "7.4" and n != 4:
        # The pinned instance lives at n = 4; other sizes only report the generalisation.
        status = "info"
    return VerificationResult(claim_id, {"n": n}, status, witness, elapsed, details or {})


def run_suite(n_range: range | tuple[int, int], claims=None, max_n: int = DEFAULT_MAX_N) -> list[VerificationResult]:
    if isinstance(n_range, tuple):
        n_range = range(n_range[0], n_range[1] + 1)
    if len(n_range) and (n_range.start < 2 or n_range[-1] > max_n):
        raise BadParams(f"n range must lie within 2..{max_n}")
    ids = CLAIM_IDS if claims is None else tuple(claims)
    for cid in ids:
        if cid not in REGISTRY:
            raise UnknownClaim(cid)
    ordered = [cid for cid in CLAIM_IDS if cid in ids]
    results = []
    for cid in ordered:
        for n in n_range:
            if n >= REGISTRY[cid].min_n:
                results.append(verify_claim(cid, {"n": n}))
    return results


def suite_passed(results) -> bool:
    return all(r.status in ("pass", "info") for r in results)


def search_counterexample(n: int, string_spec: str, map_spec: str, carrier_spec: str = "string"):
    """First additivity or Leibniz violation of a map over a carrier, or ``None``.

    ``carrier_spec`` names the domain: ``"string"``, ``"DS"``, ``"CO"``,
    ``"S"`` (constants plus STR{n-2,n-1}, full string only) or an explicit set.
    """
    try:
        string = parse_string(n, string_spec)
        if carrier_spec == "S" and isinstance(string, StringTypeM):
            domain = _set_S(n)
            if not domain.issubset(string.elements):
                raise SpecResolution("S needs the full string")
        else:
            domain = parse_subset(carrier_spec, string)
        m = parse_derivation(map_spec, string, domain)
    except SpecResolution:
        raise
    except ChainError as exc:
        raise SpecResolution(str(exc)) from exc
    report = check_semiring_axioms(domain)
    if not (report.holds("closed_add") and report.holds("closed_mul")):
        raise SpecResolution("carrier is not closed under + and *")
    check = is_additive(m)
    if not check:
        return check.witness
    check = satisfies_leibniz(m)
    return None if check else check.witness
