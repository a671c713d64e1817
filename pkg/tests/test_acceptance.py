"""Acceptance checks, one test per criterion.

Every comparison is exact (structural equality of image tuples or index
labels); wall-clock limits are pinned as constants below. Run on its own with
``pytest tests/test_acceptance.py`` or ``python tests/test_acceptance.py``;
a verdict line per criterion is printed at the end of the session.
"""
import itertools
import subprocess
import sys
import time

import pytest

from endochain.chain_core import (
    Carrier,
    add,
    all_endomorphisms,
    check_semiring_axioms,
    compose,
    is_idempotent,
    make_endomorphism,
)
from endochain.derivations import (
    analyze_derivation_set,
    delta,
    is_derivation,
    satisfies_leibniz,
    shift_derivation,
)
from endochain.strings import (
    StringIndexM,
    SubfamilyKind,
    full_string,
    mul_index_type2,
    mul_index_type_m,
    string_type2,
    string_type_m,
    subfamily,
)
from endochain.verifier import verify_claim

LIMIT_TYPE2_S = 5.0
LIMIT_TYPE_M_S = 30.0
LIMIT_DERIVATIONS_S = 60.0
LIMIT_FULL_STRING_S = 60.0
LIMIT_SUITE_S = 60.0


def type2_tuple(n, a, b, k):
    return (a,) * (n - k) + (b,) * k


def type_m_tuple(n, anchors, k, l):
    return type2_tuple(n, anchors[l - 1], anchors[l], k)


def pairs(n):
    return [(a, b) for a in range(n) for b in range(a + 1, n)]


def anchor_sets(n):
    for m in range(2, n + 1):
        yield from itertools.combinations(range(n), m)


@pytest.mark.criterion(1, "two-anchor product formula equals composition, n <= 10")
def test_criterion_01_type2_formula_matches_composition():
    start = time.perf_counter()
    checked = 0
    for n in range(2, 11):
        for a, b in pairs(n):
            s = string_type2(n, a, b)
            for k in range(n + 1):
                f = make_endomorphism(n, type2_tuple(n, a, b, k))
                for t in range(n + 1):
                    g = make_endomorphism(n, type2_tuple(n, a, b, t))
                    product = compose(f, g).images
                    formula = mul_index_type2(k, t, s)
                    assert product == type2_tuple(n, a, b, formula), (n, a, b, k, t)
                    checked += 1
    elapsed = time.perf_counter() - start
    assert checked == sum(len(pairs(n)) * (n + 1) ** 2 for n in range(2, 11))
    assert elapsed < LIMIT_TYPE2_S


@pytest.mark.criterion(2, "multi-anchor product formula equals composition, n <= 8")
def test_criterion_02_type_m_formula_matches_composition():
    start = time.perf_counter()
    for n in range(2, 9):
        for anchors in anchor_sets(n):
            s = string_type_m(n, anchors)
            idx = s.indices()
            tuples = {i: type_m_tuple(n, anchors, i.k, i.l) for i in idx}
            for x in idx:
                fx = make_endomorphism(n, tuples[x])
                for y in idx:
                    product = compose(fx, make_endomorphism(n, tuples[y])).images
                    z = mul_index_type_m(x, y, s)
                    assert product == type_m_tuple(n, anchors, z.k, z.l), (n, anchors, x, y)
    assert time.perf_counter() - start < LIMIT_TYPE_M_S


@pytest.mark.criterion(3, "Jordan maps are commuting derivations; shift is a derivation on DS, n <= 10")
def test_criterion_03_derivation_theorems():
    start = time.perf_counter()
    for n in range(2, 11):
        for claim in ("5.1", "5.2", "4.1b"):
            result = verify_claim(claim, n)
            assert result.status == "pass", (claim, n, result.witness)
    assert time.perf_counter() - start < LIMIT_DERIVATIONS_S


@pytest.mark.criterion(4, "DS is maximal: adding any higher element breaks the Leibniz rule, n <= 10")
def test_criterion_04_maximality():
    for n in range(2, 11):
        for a, b in pairs(n):
            s = string_type2(n, a, b)
            D = shift_derivation(s)
            ds = subfamily(s, SubfamilyKind.DS).carrier
            for k in range(n - b + 1, n + 1):
                over = ds.union(Carrier(s.chain, (s.alpha(k),)))
                check = satisfies_leibniz(D, over=over)
                assert not check, (n, a, b, k)
                w = check.witness
                assert D(compose(w.x, w.y)) != add(compose(D(w.x), w.y), compose(w.x, D(w.y)))
        assert verify_claim("4.2", n).status == "pass"


@pytest.mark.criterion(5, "Jordan-map table for anchors n-2,n-1; identity n-b and absorbing n-a, n <= 8")
def test_criterion_05_semilattice_structure():
    for n in range(3, 9):
        s = string_type2(n, n - 2, n - 1)
        report = analyze_derivation_set([delta(x, s.elements) for x in s])
        assert [list(row) for row in report.table] == [[0, 0, 2], [0, 1, 2], [2, 2, 2]]
    for n in range(2, 9):
        for a, b in pairs(n):
            s = string_type2(n, a, b)
            report = analyze_derivation_set([delta(x, s.elements) for x in s])
            assert report.identity == n - b, (n, a, b)
            assert report.absorbing == n - a, (n, a, b)
            assert min(report.classes[report.identity]) == n - b
            assert min(report.classes[report.absorbing]) == n - a


@pytest.mark.criterion(6, "both C_4 counterexamples reproduce bit-exactly")
def test_criterion_06_counterexamples():
    F = full_string(4)
    x = make_endomorphism(4, (0, 0, 1, 1))
    y = make_endomorphism(4, (2, 2, 3, 3))
    assert x == F.alpha(2, 1) and y == F.alpha(2, 3)
    xy = compose(x, y)
    assert xy.images == (2, 2, 2, 2)
    assert F.index_of(xy) == StringIndexM(4, 2)
    result = verify_claim("7.1", 4)
    assert result.status == "pass"
    w = result.witness
    assert (w["x"], w["y"], w["x*y"]) == ([0, 0, 1, 1], [2, 2, 3, 3], [2, 2, 2, 2])
    assert w["lhs"] == [2, 2, 2, 2] and w["rhs"] == [3, 3, 3, 3]

    alpha = F.alpha(3, 2)
    assert alpha.images == (1, 2, 2, 2)
    kappa1 = make_endomorphism(4, (1, 1, 1, 1))
    d_kappa1 = add(compose(alpha, kappa1), compose(kappa1, alpha))
    assert d_kappa1.images == (2, 2, 2, 2)
    assert compose(d_kappa1, y).images == (3, 3, 3, 3)
    assert compose(kappa1, y).images == (2, 2, 2, 2)
    result = verify_claim("7.4", 4)
    assert result.status == "pass"
    w = result.witness
    assert w["x"] == [1, 1, 1, 1] and w["y"] == [2, 2, 3, 3]
    assert w["delta(x)"] == [2, 2, 2, 2] and w["delta(x)*y"] == [3, 3, 3, 3]
    assert w["lhs"] == [2, 2, 2, 2] and w["rhs"] == [3, 3, 3, 3]


@pytest.mark.criterion(7, "top-row Jordan maps with s >= 2 are derivations of the full string, n <= 8")
def test_criterion_07_full_string_derivations():
    start = time.perf_counter()
    for n in range(3, 9):
        F = full_string(n)
        for s in range(2, n + 1):
            d = delta(F.alpha(s, n - 1), F.elements)
            check = is_derivation(d)
            assert check, (n, s, check.witness)
    assert time.perf_counter() - start < LIMIT_FULL_STRING_S


@pytest.mark.criterion(8, "closure statements for shift, Jordan maps and constants hold, n <= 8")
@pytest.mark.parametrize("claim", ["4.4", "4.5", "5.6", "7.8"])
def test_criterion_08_closure_corollaries(claim):
    for n in range(2, 9):
        result = verify_claim(claim, n)
        assert result.status == "pass", (claim, n, result.witness)


@pytest.mark.criterion(9, "every constructed string and subfamily is a subsemiring, n <= 6")
def test_criterion_09_axiom_suite():
    kinds = [k for k in SubfamilyKind if k is not SubfamilyKind.DIFFERENTIAL_IDEAL]
    for n in range(2, 7):
        for a, b in pairs(n):
            s = string_type2(n, a, b)
            carriers = [s.elements] + [subfamily(s, k).carrier for k in kinds]
            carriers += [subfamily(s, "I", j).carrier for j in range(n - b)]
            for c in carriers:
                report = check_semiring_axioms(c)
                assert report.all_hold, (n, a, b, report.results)
        for anchors in anchor_sets(n):
            assert check_semiring_axioms(string_type_m(n, anchors).elements).all_hold, anchors
    idem = Carrier.of([e for e in all_endomorphisms(3) if is_idempotent(e)])
    report = check_semiring_axioms(idem)
    assert not report.holds("closed_mul")
    x, y = report.witness("closed_mul")
    assert compose(x, y) not in idem


@pytest.mark.criterion(10, "verify --claims all --n 2..6 exits 0 within a minute, same output twice")
def test_criterion_10_full_suite():
    cmd = [sys.executable, "-m", "endochain", "verify", "--claims", "all", "--n", "2..6"]
    start = time.perf_counter()
    first = subprocess.run(cmd, capture_output=True, text=True, check=False)
    elapsed = time.perf_counter() - start
    second = subprocess.run(cmd, capture_output=True, text=True, check=False)
    assert first.stdout == second.stdout
    assert elapsed < LIMIT_SUITE_S
    failing = [ln for ln in first.stdout.splitlines() if " fail" in ln]
    assert first.returncode == 0, "\n".join(failing)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
