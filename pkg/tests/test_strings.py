import pytest

from endochain.chain_core import (
    Carrier,
    Chain,
    all_endomorphisms,
    check_semiring_axioms,
    compose,
    constant,
    is_idempotent,
    leq,
    make_endomorphism,
)
from endochain.strings import (
    BadAnchors,
    Classification,
    IndexOutOfRange,
    NotASubset,
    StringIndexM,
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


def image_set_string(n, anchors):
    """All endomorphisms whose image lies in two consecutive anchors."""
    out = set()
    for e in all_endomorphisms(n):
        for lo, hi in zip(anchors, anchors[1:]):
            if set(e.images) <= {lo, hi}:
                out.add(e)
    return sorted(out)


def test_type2_elements_of_c4():
    s = string_type2(4, 1, 3)
    assert [e.images for e in s] == [
        (1, 1, 1, 1), (1, 1, 1, 3), (1, 1, 3, 3), (1, 3, 3, 3), (3, 3, 3, 3)]
    assert s.label(2) == "a_2"
    assert s.index_of(make_endomorphism(4, (1, 1, 3, 3))) == 2


@pytest.mark.parametrize("n", range(2, 7))
def test_type2_string_matches_image_filter(n):
    for a in range(n):
        for b in range(a + 1, n):
            s = string_type2(n, a, b)
            assert list(s.elements) == image_set_string(n, (a, b))
            assert len(s) == n + 1
            assert all(leq(x, y) for x, y in zip(s, list(s)[1:]))


@pytest.mark.parametrize("a, b", [(2, 1), (1, 1), (-1, 2), (0, 4)])
def test_bad_anchors(a, b):
    with pytest.raises(BadAnchors):
        string_type2(4, a, b)


def test_three_bands_example():
    s = string_type2(4, 2, 3)
    # n-b = 1, n-a = 2
    assert [mul_index_type2(3, t, s) for t in range(5)] == [0, 3, 4, 4, 4]
    with pytest.raises(IndexOutOfRange):
        mul_index_type2(5, 0, s)


@pytest.mark.parametrize("n", range(2, 8))
def test_three_bands_agree_with_composition(n):
    for a in range(n):
        for b in range(a + 1, n):
            s = string_type2(n, a, b)
            for k in range(n + 1):
                for t in range(n + 1):
                    assert s.index_of(compose(s.alpha(k), s.alpha(t))) == mul_index_type2(k, t, s)


def test_classification_matches_squares():
    n = 6
    for a in range(n):
        for b in range(a + 1, n):
            s = string_type2(n, a, b)
            for k in range(n + 1):
                sq = s.index_of(compose(s.alpha(k), s.alpha(k)))
                kind = classify(k, s)
                if kind is Classification.IDEMPOTENT:
                    assert sq == k
                elif kind is Classification.A_NILPOTENT:
                    assert sq == 0
                else:
                    assert sq == n


def test_subfamily_ranges_c5():
    s = string_type2(5, 1, 3)
    idx = {kind: subfamily(s, kind).indices for kind in SubfamilyKind
           if kind is not SubfamilyKind.DIFFERENTIAL_IDEAL}
    assert idx[SubfamilyKind.A_NILPOTENTS] == (0, 1)
    assert idx[SubfamilyKind.IDEMPOTENTS] == (2, 3)
    assert idx[SubfamilyKind.B_NILPOTENTS] == (4, 5)
    assert idx[SubfamilyKind.S] == (0, 1, 2, 3)
    assert idx[SubfamilyKind.T] == (2, 3, 4, 5)
    assert idx[SubfamilyKind.DS] == (0, 1, 2)
    assert idx[SubfamilyKind.CONSTANTS] == (0, 5)
    assert subfamily(s, "I", 1).indices == (0, 1)
    with pytest.raises(IndexOutOfRange):
        subfamily(s, "I", 2)


def test_smallest_nilpotent_family_is_the_bottom():
    s = string_type2(3, 0, 2)
    na = subfamily(s, SubfamilyKind.A_NILPOTENTS)
    assert na.indices == (0,)
    assert check_semiring_axioms(na.carrier).all_hold


@pytest.mark.parametrize("n", range(2, 7))
def test_every_subfamily_closed(n):
    for a in range(n):
        for b in range(a + 1, n):
            s = string_type2(n, a, b)
            kinds = [k for k in SubfamilyKind if k is not SubfamilyKind.DIFFERENTIAL_IDEAL]
            fams = [subfamily(s, k) for k in kinds]
            fams += [subfamily(s, "I", j) for j in range(n - b)]
            for fam in fams:
                assert check_semiring_axioms(fam.carrier).all_hold, (a, b, fam.kind)


def test_type_m_indices_and_aliases():
    F = full_string(4)
    assert len(F) == 13
    assert F.alpha(0, 2) == F.alpha(4, 1) == constant(4, 1)
    assert F.canonical(0, 3) == StringIndexM(4, 2)
    assert F.canonical(0, 1) == StringIndexM(0, 1)
    assert F.index_of(constant(4, 0)) == StringIndexM(0, 1)
    assert F.index_of(make_endomorphism(4, (1, 2, 2, 2))) == StringIndexM(3, 2)
    assert F.label(StringIndexM(2, 3)) == "a_2_3"
    positions = [F.position(i) for i in F.indices()]
    assert positions == list(range(13))


@pytest.mark.parametrize("n", range(2, 6))
def test_type_m_matches_image_filter(n):
    import itertools
    for m in range(2, n + 1):
        for anchors in itertools.combinations(range(n), m):
            s = string_type_m(n, anchors)
            assert list(s.elements) == image_set_string(n, anchors)
            assert len(s) == (m - 1) * n + 1


def test_type_m_product_example():
    F = full_string(4)
    x, y = StringIndexM(2, 1), StringIndexM(2, 3)
    # <0,0,1,1> then <2,2,3,3> is the constant 2.
    assert compose(F.alpha(2, 1), F.alpha(2, 3)).images == (2, 2, 2, 2)
    assert mul_index_type_m(x, y, F) == StringIndexM(4, 2)


@pytest.mark.parametrize("n", range(2, 7))
def test_type_m_formula_agrees_with_composition(n):
    import itertools
    for m in range(2, n + 1):
        for anchors in itertools.combinations(range(n), m):
            s = string_type_m(n, anchors)
            idx = s.indices()
            for x in idx:
                for y in idx:
                    brute = s.index_of(compose(s.alpha(x.k, x.l), s.alpha(y.k, y.l)))
                    assert brute == mul_index_type_m(x, y, s)


def test_bad_type_m_anchors():
    with pytest.raises(BadAnchors):
        string_type_m(4, (0,))
    with pytest.raises(BadAnchors):
        string_type_m(4, (0, 2, 1))
    with pytest.raises(BadAnchors):
        string_type_m(4, (0, 4))


def test_constants_ideal_of_full_string():
    F = full_string(5)
    co = constants_ideal(F)
    assert [e.images for e in co] == [(c,) * 5 for c in range(5)]
    assert is_ideal(co.carrier, F.elements)


def test_non_ideal_reports_witness():
    s = string_type2(4, 0, 2)
    sub = Carrier(Chain(4), (s.alpha(1),))
    check = is_ideal(sub, s.elements)
    assert not check
    assert check.reason is not None
    with pytest.raises(NotASubset):
        is_ideal(Carrier(Chain(4), (constant(4, 3),)), s.elements)


def test_sub_anchor_runs_are_contained():
    big = string_type_m(5, (0, 1, 2, 4))
    assert string_type_m(5, (1, 2, 4)).elements.issubset(big.elements)
    assert string_type_m(5, (0, 1)).elements.issubset(big.elements)


def test_gapped_sub_anchors_not_contained():
    big = string_type_m(3, (0, 1, 2))
    small = string_type_m(3, (0, 2))
    outside = [e for e in small if e not in big]
    assert make_endomorphism(3, (0, 0, 2)) in outside


def test_all_idempotents_of_c3_not_closed_under_product():
    idem = Carrier.of([e for e in all_endomorphisms(3) if is_idempotent(e)])
    bad = [(x, y) for x in idem for y in idem if compose(x, y) not in idem]
    assert bad
