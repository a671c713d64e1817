import pytest

from endochain.chain_core import make_endomorphism
from endochain.specs import SpecResolution
from endochain.verifier import (
    CLAIM_IDS,
    COUNTEREXAMPLE_CLAIMS,
    REGISTRY,
    BadParams,
    UnknownClaim,
    run_suite,
    search_counterexample,
    suite_passed,
    verify_claim,
)

NUMBERED = {
    "3.1", "3.2", "3.3", "3.4", "3.5",
    "4.1a", "4.1b", "4.2", "4.3", "4.4", "4.5",
    "5.1", "5.2", "5.3", "5.4", "5.5", "5.6",
    "6.1", "6.2", "6.3", "6.4",
    "7.1", "7.2", "7.3", "7.4", "7.5", "7.6", "7.7", "7.8",
}
# Statements that do not survive brute force; see the notes in the README.
REFUTED = {"5.6", "6.2"}


def strip(record):
    record = dict(record)
    record.pop("elapsed_ms")
    return record


def test_registry_is_complete():
    assert set(CLAIM_IDS) == NUMBERED == set(REGISTRY)
    assert len(CLAIM_IDS) == 29
    assert set(COUNTEREXAMPLE_CLAIMS) <= NUMBERED


@pytest.mark.parametrize("claim", sorted(NUMBERED - REFUTED))
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_claim_holds_at_small_sizes(claim, n):
    result = verify_claim(claim, n)
    assert result.status in ("pass", "info"), result.witness


@pytest.mark.parametrize("claim", sorted(REFUTED))
def test_refuted_claims_fail_with_witness(claim):
    assert verify_claim(claim, 2).status == "pass"
    result = verify_claim(claim, 3)
    assert result.status == "fail"
    assert result.witness and "reason" in result.witness


def test_integral_witness_is_the_middle_b_nilpotent():
    w = verify_claim("5.6", 3).witness
    assert (w["a"], w["b"], w["alpha_index"]) == (1, 2, 1)
    assert w["stated"] == [[1, 1, 1], [2, 2, 2]]
    assert w["closure"] == [[1, 1, 1], [1, 2, 2], [2, 2, 2]]


def test_gapped_sub_string_witness():
    result = verify_claim("6.2", 3)
    assert result.witness["sub"] == [0, 2]
    assert result.witness["element"] == [0, 0, 2]
    assert result.details["contained_when"] == "sub-anchors are consecutive"


def test_three_band_instance():
    assert verify_claim("3.2", {"n": 7}).status == "pass"


def test_two_top_anchor_table_is_emitted():
    result = verify_claim("5.4", 4)
    assert result.details["table"] == [[0, 0, 2], [0, 1, 2], [2, 2, 2]]


def test_gap_counterexample_on_c4():
    result = verify_claim("7.1", 4)
    assert result.status == "pass"
    w = result.witness
    assert w["x"] == [0, 0, 1, 1] and w["y"] == [2, 2, 3, 3]
    assert w["x*y"] == [2, 2, 2, 2]
    assert w["delta_parameter_canonical_index"] == "(4,2)"
    assert w["lhs"] == [2, 2, 2, 2] and w["rhs"] == [3, 3, 3, 3]


def test_constants_counterexample_on_c4():
    result = verify_claim("7.4", 4)
    assert result.status == "pass"
    w = result.witness
    assert w["x"] == [1, 1, 1, 1] and w["y"] == [2, 2, 3, 3]
    assert w["x*y"] == [2, 2, 2, 2]
    assert w["delta(x)*y"] == [3, 3, 3, 3]
    assert w["lhs"] == [2, 2, 2, 2] and w["lhs"] != w["rhs"]
    assert w["first_canonical_witness"]["x"] == [0, 0, 0, 0]
    assert verify_claim("7.4", 5).status == "info"


def test_low_index_top_row_maps_are_recorded():
    details = verify_claim("7.7", 4).details
    assert set(details["s_below_2"]) == {"0", "1"}


def test_unknown_claim_and_bad_params():
    with pytest.raises(UnknownClaim):
        verify_claim("9.9", 4)
    with pytest.raises(BadParams):
        verify_claim("3.2", 1)
    with pytest.raises(UnknownClaim):
        run_suite(range(2, 3), ["9.9"])
    with pytest.raises(BadParams):
        run_suite(range(2, 14))


def test_empty_range_gives_no_results():
    assert run_suite(range(5, 5)) == []


def test_suite_order_and_determinism():
    first = run_suite(range(2, 5), ["7.4", "3.1", "6.4"])
    second = run_suite((2, 4), ["3.1", "6.4", "7.4"])
    assert [(r.claim, r.params["n"]) for r in first] == [
        (c, n) for c in ("3.1", "6.4", "7.4") for n in (2, 3, 4)]
    assert [strip(r.to_record()) for r in first] == [strip(r.to_record()) for r in second]
    assert suite_passed(first)


def test_record_shape():
    record = verify_claim("7.1", 4).to_record()
    assert set(record) >= {"claim", "params", "status", "witness", "elapsed_ms"}
    assert "witness" not in verify_claim("3.1", 3).to_record()


def test_counterexample_search():
    assert search_counterexample(5, "1,3", "delta:2") is None
    w = search_counterexample(5, "0,2,3", "delta:3,1")
    assert w is not None and w.lhs != w.rhs
    assert w.x == make_endomorphism(5, (0, 0, 0, 0, 2))
    w = search_counterexample(4, "0,1,2,3", "delta:3,2", "S")
    assert w.x == make_endomorphism(4, (0, 0, 0, 0))
    assert search_counterexample(4, "0,1,2,3", "delta:2,3") is None
    with pytest.raises(SpecResolution):
        search_counterexample(4, "0,1", "nonsense")
