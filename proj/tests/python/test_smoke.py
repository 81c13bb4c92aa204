from fractions import Fraction

import pytest

import tinpc


def test_extremal_ratios():
    expected = {3: Fraction(3, 2), 4: Fraction(2), 5: Fraction(9, 4), 6: Fraction(41, 16)}
    for k, value in expected.items():
        assert tinpc.ratio(tinpc.extremal_small(k)) == value


def test_opc_witness_and_bpc_sets():
    res = tinpc.solve_opc(tinpc.extremal_small(6))
    assert res["value"] == 41
    assert res["allocation"] == [0, 0, -5, -6, -8, -10]
    assert res["gdof"] == [8, 8, 5, 6, 8, 6]
    assert res["active_set"] == [1, 2, 3, 4, 5, 6]

    value, sets = tinpc.solve_bpc_gdof(tinpc.extremal_grid(3))
    assert value == 3
    assert [7, 8, 9] in sets and [9] in sets


def test_topology_round_trip_and_fractions():
    t = tinpc.Topology([[1, "1/4"], [Fraction(1, 4), 1]])
    assert tinpc.Topology.parse(t.to_text()) == t
    assert t.alpha(0, 1) == Fraction(1, 4)
    assert tinpc.solve_opc(t)["value"] == Fraction(3, 2)
    assert tinpc.is_strictly_positive_class(t)
    assert not tinpc.is_strictly_positive_class(tinpc.Topology([[1, "1/2"], ["1/2", 1]]))


def test_allocations_with_off_users():
    t = tinpc.extremal_small(3)
    per_user, total = tinpc.sum_gdof(t, [0, None, 0])
    assert per_user == [0, 0, 2] and total == 2
    assert tinpc.normalize_power([None, -3, -5]) == [None, 0, -2]
    assert tinpc.sum_gdof(t, "0 0 -1")[1] == 3


def test_certificates():
    cert = tinpc.certificate_small_k(tinpc.extremal_small(5), [0, 0, -1, -2, -2])
    assert cert["holds"] and cert["ratio_bound"] == Fraction(9, 4)
    sq = tinpc.certificate_square(tinpc.extremal_grid(3), tinpc.kk_power_allocation(3), 3)
    assert sq["holds"] and sq["constant"] == 4
    with pytest.raises(ValueError):
        tinpc.certificate_small_k(tinpc.extremal_small(3), [0, 0, 0])


def test_sweep_and_search():
    rows = tinpc.gain_sweep(tinpc.extremal_grid(3), tinpc.kk_power_allocation(3), [5.0, 20.0])
    assert rows[0][3] < 1 and rows[1][3] < 2
    a = tinpc.local_search(4, 200, 1, 7)
    b = tinpc.local_search(4, 200, 1, 7, threads=2)
    assert a["text"] == b["text"]
    assert a["known_gain_ok"] and a["best_ratio"] <= 2


def test_errors():
    with pytest.raises(ValueError):
        tinpc.Topology.parse("2\n1 -1\n0 1")
    with pytest.raises(ValueError):
        tinpc.Topology([[1, -1], [0, 1]])


def test_cli_run():
    status, out, err = tinpc.run(["opc", "-t", "/nonexistent/topology.txt"])
    assert status != 0 and "--topology" in err
