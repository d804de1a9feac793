import json

import pytest

from nclaurent import dynamics as dyn
from nclaurent import verify as vf
from nclaurent.commpoly import CommPoly, DivisionNotExact
from nclaurent.faults import corrupt
from nclaurent.report import VerifyReport

x, y = CommPoly.var("x"), CommPoly.var("y")


def test_comm_oracle_small_values():
    t = vf.comm_oracle(2, 2, 3)
    assert t.r[2] == (1 + y * y).exact_div(x)
    # rank-2 (1,1) is periodic with period 5
    t = vf.comm_oracle(1, 1, 7)
    assert t.r[5] == t.r[0] and t.r[6] == t.r[1]


def test_comm_oracle_backward():
    t = vf.comm_oracle(1, 4, 3, n_min=-3)
    for n in range(-2, 3):
        e = 1 if n % 2 else 4
        assert t.r[n + 1] * t.r[n - 1] == 1 + t.r[n] ** e


def test_comm_oracle_wild_type_is_laurent_but_not_periodic():
    t = vf.comm_oracle(3, 3, 6)
    assert len({str(p) for p in t.r.values()}) == 7
    with pytest.raises(DivisionNotExact):
        (1 + x).exact_div(1 + y)


@pytest.mark.parametrize("tag", ["22", "14xy", "14XY"])
def test_abelianization(tag):
    s = dyn.Systems(7)
    rep = vf.check_abelianization(s.trajectory(tag))
    assert rep.overall and rep.entries[f"abelian[{tag}]"].count >= 6


def test_abelianization_of_derived_families():
    s = dyn.Systems(6)
    for case in (dyn.CaseTag.B41_xy, dyn.CaseTag.B41_XY):
        assert vf.check_abelianization(s.trajectory_range(case, -3, 4)).overall


def test_abelianization_catches_corruption():
    t = corrupt(dyn.seq_22(5), 3)
    rep = vf.check_abelianization(t)
    assert rep.first_failure("abelian[22]") == 3


def test_quantum():
    t = dyn.seq_14("xy", 6)
    assert vf.check_quantum(t).overall
    assert not vf.check_quantum(corrupt(t, 2)).overall


def test_c_inverse_term():
    for data in ("xy", "XY"):
        rep = vf.check_c_inverse_term(dyn.seq_14(data, 8))
        assert rep.overall, rep.to_text()


def test_coefficient_in_product():
    a = dyn.seq_22(3).r[3]
    b = dyn.seq_22(3).r[2]
    prod = a * b
    for w, c in prod:
        assert vf.coefficient_in_product(a, b, w) == c


def test_direct_division_oracle():
    s = dyn.Systems(6)
    r = vf.direct_oracle(4, 1, 5)
    assert max(r) == 5
    for n, p in r.items():
        assert p == s.f41(n)


def test_full_suite_passes_and_fails():
    rep = vf.full_suite(5)
    assert rep.overall, rep.to_text()
    bad = vf.full_suite(5, inject_fault=True)
    assert not bad.overall
    assert bad.first_failure("nonlinear[22]") == 1
    doc = json.loads(bad.to_json())
    assert doc["overall"] is False


def test_full_suite_vacuous():
    assert vf.full_suite(0).overall


def test_report_merge_and_text():
    a, b = VerifyReport(), VerifyReport()
    a.expect("k", 1, True)
    b.expect("k", 4, False, lhs=1)
    b.skip("s", "not run")
    a.merge(b)
    assert not a.overall
    assert a.entries["k"].index_range == "1..4"
    text = a.to_text()
    assert "FAIL  k" in text and "SKIP  s" in text and text.endswith("overall: FAIL")
