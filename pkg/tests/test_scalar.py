import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import finite
from dualmp.errors import NegativeValue, NotAppreciable
from dualmp.scalar import (
    DualComplex,
    DualReal,
    Kind,
    Ordering,
    arith,
    classify,
    conj,
    dual_abs,
    dual_sqrt,
    inv,
    total_cmp,
)

complexes = st.builds(complex, finite, finite)
duals = st.builds(DualComplex, complexes, complexes)
reals = st.builds(DualReal, finite, finite)


def close(a, b, tol=1e-12):
    return abs(a.std - b.std) <= tol * (1 + abs(a.std)) and abs(a.dual - b.dual) <= tol * (1 + abs(a.dual))


def test_product_expands_with_nilpotent_eps():
    assert arith(DualReal(1, 2), DualReal(3, 4), "mul") == DualReal(3, 10)


def test_eps_squared_is_zero():
    e = DualComplex(0, 1)
    assert e * e == DualComplex(0, 0)


def test_conjugate_pair_product():
    assert DualComplex(1j, 1) * DualComplex(1j, -1) == DualComplex(-1, 0)


def test_add_sub_neg():
    a, b = DualComplex(1 + 1j, 2), DualComplex(3, -1j)
    assert arith(a, b, "add") == DualComplex(4 + 1j, 2 - 1j)
    assert arith(a, b, "sub") == DualComplex(-2 + 1j, 2 + 1j)
    assert arith(a, None, "neg") == DualComplex(-1 - 1j, -2)
    with pytest.raises(ValueError):
        arith(a, b, "pow")


def test_conj_examples():
    assert conj(DualComplex(1 + 1j, 2 - 1j)) == DualComplex(1 - 1j, 2 + 1j)
    assert conj(DualReal(3, -2)) == DualReal(3, -2)


def test_inverse_examples():
    assert inv(DualReal(2, 4)) == DualReal(0.5, -1.0)
    assert inv(DualReal(1, 0)) == DualReal(1, 0)
    with pytest.raises(NotAppreciable):
        inv(DualComplex(0, 5))
    with pytest.raises(ZeroDivisionError):
        DualReal(1, 1) / DualReal(0, 1)


def test_total_cmp_examples():
    assert total_cmp(DualReal(1, 5), DualReal(2, -9)) is Ordering.LESS
    assert total_cmp(DualReal(1, 1), DualReal(1, 2)) is Ordering.LESS
    assert total_cmp(DualReal(1, 2), DualReal(1, 2)) is Ordering.EQUAL
    vals = [DualReal(2, 0), DualReal(1, 3), DualReal(1, 1)]
    assert sorted(vals) == [DualReal(1, 1), DualReal(1, 3), DualReal(2, 0)]


def test_total_cmp_tolerance_only_merges_close_parts():
    a, b = DualReal(1, 2), DualReal(1 + 1e-14, 2 - 1e-14)
    assert total_cmp(a, b) is not Ordering.EQUAL
    assert total_cmp(a, b, tol=1e-12) is Ordering.EQUAL
    assert total_cmp(DualReal(1, 2), DualReal(1, 3), tol=1e-12) is Ordering.LESS


def test_classify_examples():
    assert classify(DualReal(3, -7)) is Kind.POSITIVE_APPRECIABLE
    assert classify(DualReal(0, 2)) is Kind.POSITIVE_INFINITESIMAL
    assert classify(DualReal(0, 0)) is Kind.ZERO
    assert classify(DualReal(0, -1)) is Kind.NEGATIVE_INFINITESIMAL
    assert classify(DualReal(-1, 9)) is Kind.NEGATIVE_APPRECIABLE
    assert classify(DualReal(1e-14, -1)) is Kind.NEGATIVE_INFINITESIMAL
    assert classify(DualReal(1e-14, -1), tol=0) is Kind.POSITIVE_APPRECIABLE


def test_sqrt_examples():
    assert dual_sqrt(DualReal(4, 4)) == DualReal(2, 1)
    assert dual_sqrt(DualReal(1, 0)) == DualReal(1, 0)
    with pytest.raises(NegativeValue):
        dual_sqrt(DualReal(-1, 0))
    with pytest.raises(NotAppreciable):
        dual_sqrt(DualReal(0, 1))


def test_dual_real_rejects_complex():
    with pytest.raises(TypeError):
        DualReal(1j, 0)


def test_abs():
    assert dual_abs(DualComplex(3 + 4j, 0)) == DualReal(5, 0)
    assert dual_abs(DualComplex(0, -2j)) == DualReal(0, 2)
    # |a|^2 = a conj(a) to first order
    a = DualComplex(1 + 2j, 3 - 1j)
    m = dual_abs(a)
    sq = a * a.conj()
    assert close(m * m, DualReal(sq.std.real, sq.dual.real))


@given(duals, duals, duals)
def test_ring_axioms(a, b, c):
    def near(x, y):
        scale = 1 + max(abs(x.std), abs(x.dual), abs(y.std), abs(y.dual))
        return abs(x.std - y.std) <= 1e-12 * scale and abs(x.dual - y.dual) <= 1e-12 * scale

    assert near((a + b) + c, a + (b + c))
    assert near((a * b) * c, a * (b * c))
    assert near(a * (b + c), a * b + a * c)
    assert a * b == b * a
    assert a + b == b + a


@given(complexes, complexes)
def test_infinitesimals_multiply_to_exact_zero(x, y):
    assert DualComplex(0, x) * DualComplex(0, y) == DualComplex(0, 0)


@given(duals)
def test_conj_involution(a):
    assert conj(conj(a)) == a


@given(st.builds(DualComplex, complexes.filter(lambda z: abs(z) > 1e-3), complexes))
def test_inverse_round_trip(a):
    assert close(inv(inv(a)), a, 1e-9)
    one = a * inv(a)
    assert abs(one.std - 1) < 1e-12 and abs(one.dual) < 1e-9 * (1 + abs(a.dual) / abs(a.std) ** 2)


@given(st.builds(DualReal, st.floats(1e-3, 100), finite))
def test_sqrt_round_trip(a):
    r = dual_sqrt(a)
    assert close(r * r, a, 1e-10)


@given(reals, reals, reals)
def test_total_order_laws(a, b, c):
    assert total_cmp(a, a) is Ordering.EQUAL
    assert total_cmp(a, b) == -total_cmp(b, a)
    if total_cmp(a, b) <= 0 and total_cmp(b, c) <= 0:
        assert total_cmp(a, c) <= 0


@given(reals)
def test_order_agrees_with_classify(a):
    k = classify(a, tol=0)
    positive = k in (Kind.POSITIVE_APPRECIABLE, Kind.POSITIVE_INFINITESIMAL)
    assert positive == (total_cmp(a, DualReal(0, 0)) is Ordering.GREATER)
    assert a.is_appreciable == (a.std != 0)
    assert a.is_infinitesimal == (not a.is_appreciable)
