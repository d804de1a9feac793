import pytest

from nclaurent import dynamics as dyn
from nclaurent import pathmodel as pm
from nclaurent.dynamics import C, CaseTag
from nclaurent.ncpoly import NCPoly

MODELS = [CaseTag.B22, CaseTag.B14_xy, CaseTag.B14_XY]


@pytest.fixture(scope="module", params=MODELS, ids=lambda c: c.value)
def model(request):
    return pm.build_model(request.param)


def test_weights(model):
    rep = pm.weight_identities(model)
    assert rep.overall, rep.to_text()


def test_segment_weight_product():
    y1, y2, y3 = pm.build_model(CaseTag.B22).y
    assert y3 * y1 == C


def test_barbell_identity():
    for case in (CaseTag.B14_xy, CaseTag.B14_XY):
        y1, y2, y3 = pm.build_model(case).y
        assert y2 == y3 * y1 - C


def test_no_model_for_41():
    with pytest.raises(pm.UnsupportedCase):
        pm.build_model(CaseTag.B41_xy)


def test_three_evaluators_agree(model):
    rep = pm.three_way(model, 5)
    assert rep.overall, rep.to_text()


def test_paths_reproduce_recursion():
    t22 = dyn.seq_22(5)
    seg = pm.build_model(CaseTag.B22)
    for n in range(6):
        assert pm.variable(seg, n) == t22.r[n]
    for data, case, shift in (("xy", CaseTag.B14_xy, 0), ("XY", CaseTag.B14_XY, 1)):
        t = dyn.seq_14(data, 10)
        bar = pm.build_model(case)
        for n in range(4):
            assert pm.variable(bar, n) == t.u[n + shift]


def test_path_counts():
    seg = pm.build_model(CaseTag.B22)
    assert [pm.path_count(seg, 2 * n) for n in range(6)] == [1, 1, 2, 5, 13, 34]
    assert all(pm.path_count(seg, k) == 0 for k in (1, 3, 5, 7))
    bar = pm.build_model(CaseTag.B14_xy)
    assert [pm.path_count(bar, n) for n in range(6)] == [1, 1, 2, 4, 8, 16]


def test_barbell_length_three():
    bar = pm.build_model(CaseTag.B14_xy)
    paths = list(pm.enumerate_paths(bar, 3))
    labels = sorted(pm.symbolic_weight(bar, v) for v, _ in paths)
    assert labels == ["y1 y1 y1", "y1 y2", "y2 y1", "y3 y2"]
    y1, y2, y3 = bar.y
    assert {w for _, w in paths} == {y1 * y1 * y1, y1 * y2, y2 * y1, y3 * y2}


def test_empty_walk():
    seg = pm.build_model(CaseTag.B22)
    assert list(pm.enumerate_paths(seg, 0)) == [((0,), NCPoly.one())]
    assert pm.symbolic_weight(seg, (0,)) == "1"


def test_budget(monkeypatch):
    seg = pm.build_model(CaseTag.B22)
    with pytest.raises(pm.BudgetExceeded):
        list(pm.enumerate_paths(seg, 8, budget=10))
    monkeypatch.setenv("NCL_BUDGET", "3")
    assert pm.default_budget() == 3
    with pytest.raises(pm.BudgetExceeded):
        pm.partition_fn_enumerate(seg, 6)


def test_series_identity(model):
    series = pm.continued_fraction_series(model, 6)
    assert pm.series_multiply_check(model, series).overall


def test_series_arithmetic():
    x, y = NCPoly.gens()
    s = pm.SeriesNC([NCPoly.zero(), x], 4)
    g = s.geometric()
    assert g.coeffs == [NCPoly.one(), x, x * x, x * x * x]
    assert ((pm.SeriesNC.const(1, 4) - s) * g).coeffs == [NCPoly.one()] + [NCPoly.zero()] * 3
    with pytest.raises(ValueError):
        pm.SeriesNC.const(1, 3).geometric()
    with pytest.raises(ValueError):
        pm.continued_fraction_series(pm.build_model(CaseTag.B22), 0)


def test_matrix_power_agrees_with_row_walk(model):
    T = pm.transfer_matrix(model)
    k = model.steps_per_index
    for n in range(4):
        assert pm.mat_pow(T, k * n)[0][0] == pm.partition_fn_matrix(model, k * n)
