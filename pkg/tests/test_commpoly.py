import pytest
from hypothesis import given, strategies as st

from nclaurent.commpoly import CommPoly, DivisionNotExact, QPoly

x, y = CommPoly.var("x"), CommPoly.var("y")

small = st.builds(
    lambda ts: CommPoly({(a, b): c for a, b, c in ts}),
    st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-4, 4)), max_size=4),
)


def test_exact_div_examples():
    assert ((1 + y) ** 2).exact_div(x) == CommPoly({(-1, 0): 1, (-1, 1): 2, (-1, 2): 1})
    assert (x * x - y * y).exact_div(x - y) == x + y
    with pytest.raises(DivisionNotExact):
        (1 + x).exact_div(1 + y)
    with pytest.raises(ZeroDivisionError):
        x.exact_div(CommPoly())


@given(small, small)
def test_exact_div_inverts_mul(a, b):
    if b:
        assert (a * b).exact_div(b) == a


@given(small, small, small)
def test_commutative_ring(a, b, c):
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c


def test_text():
    assert str(1 + x) in ("1 + x", "x + 1")
    assert str(CommPoly()) == "0"


def test_qpoly_commutation():
    # keys are (q power, x power, y power)
    qx = QPoly({(0, 1, 0): 1})
    qy = QPoly({(0, 0, 1): 1})
    assert qx * qy == QPoly.q(1) * (qy * qx)
    assert QPoly.q(1) * QPoly.q(-1) == QPoly.one()
