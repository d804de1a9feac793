from hypothesis import given

from nclaurent import freegroup as fg
from nclaurent.freegroup import compare, format_word, inv, mul, parse_word, reduce

from conftest import raw_words, words

w = parse_word


def test_reduce_examples():
    assert reduce([("x", 1), ("y", 1), ("y", -1)]) == fg.X
    assert reduce([]) == fg.ONE
    assert reduce([("y", 1), ("x", 1), ("y", -1), ("y", 1), ("x", -1)]) == fg.Y


def test_reduce_merges_and_drops_zero():
    assert reduce([("x", 2), ("x", 0), ("x", -2), ("y", 3)]) == (("y", 3),)


def test_mul_examples():
    assert mul(w("x y"), w("y^-1 x")) == w("x^2")
    assert mul(w("x y^2"), fg.ONE) == w("x y^2")
    # C * R0 = x
    assert mul(w("x y x^-1 y^-1"), w("y x y^-1")) == fg.X


def test_inv_examples():
    assert inv(w("x y x^-1")) == w("x y^-1 x^-1")
    assert inv(fg.ONE) == fg.ONE


def test_compare_examples():
    assert compare(fg.ONE, fg.X) == -1
    assert compare(fg.X, fg.Y) == -1
    assert compare(w("x^2"), w("x y")) == -1
    assert compare(w("x^-1"), w("y")) == -1


def test_format_and_parse():
    assert format_word(fg.ONE) == "1"
    assert format_word(w("x^2 y^-1 x^-1")) == "x^2 y^-1 x^-1"
    assert w("x x y y^-1 1") == w("x^2")


def test_parse_rejects_garbage():
    import pytest

    for bad in ("", "z", "x^", "xy"):
        with pytest.raises(ValueError):
            w(bad)


@given(words, words, words)
def test_mul_associative(a, b, c):
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@given(raw_words)
def test_reduce_idempotent(raw):
    r = reduce(raw)
    assert reduce(r) == r
    assert all(e != 0 for _, e in r)
    assert all(r[i][0] != r[i + 1][0] for i in range(len(r) - 1))


@given(words)
def test_inverse(a):
    assert mul(a, inv(a)) == fg.ONE == mul(inv(a), a)
    assert inv(inv(a)) == a


@given(words)
def test_identity(a):
    assert mul(a, fg.ONE) == a == mul(fg.ONE, a)


@given(words, words, words)
def test_compare_total_order(a, b, c):
    assert (compare(a, b) == 0) == (a == b)
    assert compare(a, b) == -compare(b, a)
    if compare(a, b) < 0 and compare(b, c) < 0:
        assert compare(a, c) < 0


@given(words)
def test_format_parse_round_trip(a):
    assert parse_word(format_word(a)) == a


@given(words, words)
def test_degree_is_additive(a, b):
    da, db = fg.degree(a), fg.degree(b)
    assert fg.degree(mul(a, b)) == (da[0] + db[0], da[1] + db[1])
