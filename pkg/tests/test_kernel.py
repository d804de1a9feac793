from hypothesis import given, settings, strategies as st

from nclaurent import freegroup as fg
from nclaurent.kernel import compare_sums, sum_of_products_vanishes
from nclaurent.ncpoly import NCPoly

from conftest import polys

P = NCPoly.parse


def _expanded(pairs):
    total = NCPoly.zero()
    for a, b, s in pairs:
        total = total + (a * b).scale(s)
    return total


@settings(max_examples=80)
@given(polys(max_terms=6), polys(max_terms=6), polys(max_terms=6), polys(max_terms=6))
def test_kernel_agrees_with_dict_products(a, b, c, d):
    pairs = [(a, b, 1), (c, d, -1)]
    ok, witness, _ = sum_of_products_vanishes(pairs)
    total = _expanded(pairs)
    assert ok == (not total)
    if not ok:
        w, coeff = witness
        assert total.coeff(w) == coeff != 0


@given(polys(max_terms=6), polys(max_terms=6))
def test_kernel_sees_identity(a, b):
    ab = a * b
    ok, witness, _ = sum_of_products_vanishes([(a, b, 1), (ab, NCPoly.one(), -1)])
    assert ok and witness is None


def test_missing_constant_is_reported():
    x, y = NCPoly.gens()
    a = (1 + x) * (1 + y)
    ok, witness, _ = sum_of_products_vanishes([(1 + x, 1 + y, 1), (a - 1, NCPoly.one(), -1)])
    assert not ok and witness == (fg.ONE, 1)


def test_long_words_use_fallback():
    # 70 letters do not fit the packed form
    long = P("x^40 y^-3 x + 2*y^30 x^-1")
    ok, witness, count = sum_of_products_vanishes([(long, long, 1)])
    assert not ok
    assert (long * long).coeff(witness[0]) == witness[1]
    assert count == 4


def test_recursion_sized_example():
    from nclaurent import dynamics as dyn

    t = dyn.seq_22(9)
    r, C = t.r, dyn.C
    pairs = [(r[8], C * r[6], 1), (r[7], r[7], -1), (NCPoly.one(), NCPoly.one(), -1)]
    ok, witness, count = sum_of_products_vanishes(pairs)
    assert ok and count == len(r[8]) * len(r[6]) + len(r[7]) ** 2 + 1
    bad = [(r[8], C * r[6], 1), (r[7], r[7], -1)]
    assert sum_of_products_vanishes(bad)[:2] == (False, (fg.ONE, 1))


def test_compare_sums_both_routes():
    x, y = NCPoly.gens()
    lhs = [(1 + x, 1 + y)]
    rhs = [1 + x + y + x * y]
    assert compare_sums(lhs, rhs) == (True, None)
    assert compare_sums(lhs, rhs, limit=0) == (True, None)
    ok, detail = compare_sums(lhs, [1 + x + y], limit=0)
    assert not ok and detail == {"word": "x y", "lhs_minus_rhs": "1"}
    ok, detail = compare_sums(lhs, [1 + x + y])
    assert not ok and detail["lhs"] == 1 + x + y + x * y
