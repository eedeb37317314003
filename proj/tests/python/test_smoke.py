import pytest

import hypjac


def test_characters_product_identity():
    rc = hypjac.ring_characters(2, 20)
    assert rc["product_identity"] is True


def test_basis_counts_match_character():
    ch = dict(hypjac.ring_characters(2, 12)["ch_A0"]["terms"])
    for d in range(12):
        assert len(hypjac.basis(2, d)) == int(ch.get(d, "0"))
    # g = 1: one normal monomial in each degree except 1
    assert [len(hypjac.basis(1, d)) for d in range(7)] == [1, 0, 1, 1, 1, 1, 1]


def test_normal_form_and_parse_error():
    assert hypjac.normal_form("b1 - b1", 1) == "0"
    with pytest.raises(hypjac.ParseError):
        hypjac.normal_form("b1 +* a1", 1)
    with pytest.raises(ValueError):
        hypjac.normal_form("(b1", 1)


def test_divisor_to_triple_exact():
    t = hypjac.divisor_to_triple(1, [("1", "1")])
    assert t == {"a": ["1"], "b": ["-1"], "c": ["1", "1"]}


def test_round_trip():
    r = hypjac.mumford_round_trip(2, cases=5, seed=3)
    assert r["exact_ok"] and r["numeric_ok"]


def test_flows_genus_two():
    r = hypjac.verify_flows(2)
    assert r["epsilon"] == 1
    assert all(c["passed"] for c in r["checks"])


def test_cohomology_and_refusal():
    t = hypjac.cohomology(2)
    assert t["dims"] == [1, 4, 5]
    with pytest.raises(hypjac.WindowRefusal) as err:
        hypjac.cohomology(1, (-2, 2))
    assert err.value.need_window == (-1, 7)


def test_descend_residual():
    d = hypjac.descend(1, "b1^2")
    assert d["residual_zero"] is True


def test_criterion_one():
    assert hypjac.run_criterion(1, [1])["verdict"] == "PASS"
