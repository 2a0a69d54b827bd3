import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spohnci.polyring import Poly, Ring, RingMismatch, binom, linear_form, multinomial, tridiag_det_identity


def test_truncated_square():
    R = Ring(2, (2, 4))
    x1, x2 = R.gens()
    assert (x1 + 2 * x2) ** 2 == 4 * x1 * x2 + 4 * x2**2


def test_pow_zero_and_mul_zero():
    R = Ring(3)
    p = R.var(0) + R.var(2, 5)
    assert p**0 == R.one()
    assert (p * R.zero()).is_zero()
    assert (p * 0).is_zero()


def test_coefficient_matches_table_row():
    R = Ring(2, (2, 4))
    x1, x2 = R.gens()
    p = x2 * (x1 + 2 * x2) ** 2 * (x1 + x2)
    assert p.coefficient((1, 3)) == 8
    assert p.coefficient((0, 0)) == 0
    assert R.const(7).coefficient((0, 0)) == 7


def test_caps_never_stored():
    R = Ring(2, (2, 2))
    p = Poly(R, {(2, 0): 3, (1, 1): 2, (0, 0): 0})
    assert p.terms == {(1, 1): 2}


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        Ring(2).var(0) + Ring(3).var(0)


def test_canonical_text():
    R = Ring(2)
    x1, x2 = R.gens()
    p = 8 * x1 * x2**3 - x1**2 + 3
    assert p.to_str() == "8*x1*x2^3 - x1^2 + 3"
    assert R.zero().to_str() == "0"


@pytest.mark.parametrize("l", range(1, 9))
def test_tridiagonal_identity(l):
    R = Ring(2)
    a, b = R.gens()
    closed = sum((a**i * b ** (l - i) for i in range(l + 1)), R.zero())
    assert tridiag_det_identity(l, a, b) == closed


def test_tridiagonal_small_cases():
    R = Ring(2)
    a, b = R.gens()
    assert tridiag_det_identity(1, a, b) == a + b
    assert tridiag_det_identity(2, a, b) == a * a + a * b + b * b


def test_multinomial_and_binom():
    assert multinomial([1, 1, 1]) == 6
    assert multinomial([1, 3]) == 4
    assert multinomial([0, 5]) == 1
    assert binom(3, 5) == 0
    assert binom(3, -1) == 0
    assert binom(6, 2) == 15


def test_exact_division():
    R = Ring(3)
    x, y, z = R.gens()
    f = (x + y) * (x * z - 2 * y)
    assert f.exact_div(x + y) == x * z - 2 * y
    with pytest.raises(ArithmeticError):
        (x * y + 1).exact_div(x + z)


def test_substitute_monomials():
    R = Ring(2)
    S = Ring(3)
    p = R.var(0) * R.var(1) - R.var(1) ** 2
    q = p.substitute_monomials(S, [(1, 1, 0), (0, 1, 1)])
    a, b, c = S.gens()
    assert q == a * b * b * c - b * b * c * c


def test_linear_form():
    R = Ring(3)
    assert linear_form(R, [1, 0, Fraction(1, 2)]) == R.var(0) + R.var(2, Fraction(1, 2))


# -- randomized ring laws against a dense oracle --------------------------------------

NV = 3
exps = st.tuples(*(st.integers(0, 2) for _ in range(NV)))
polys = st.dictionaries(exps, st.integers(-5, 5), max_size=5)


def dense_mul(a, b, caps=None):
    out = {}
    for (e1, c1), (e2, c2) in itertools.product(a.items(), b.items()):
        e = tuple(x + y for x, y in zip(e1, e2))
        if caps and any(x >= c for x, c in zip(e, caps)):
            continue
        out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    R = Ring(NV)
    A, B, C = Poly(R, a), Poly(R, b), Poly(R, c)
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert (A * B).terms == dense_mul(A.terms, B.terms)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_truncation_commutes_with_product(a, b):
    caps = (3, 2, 4)
    R = Ring(NV)
    A, B = Poly(R, a), Poly(R, b)
    assert (A * B).truncate(caps) == A.truncate(caps) * B.truncate(caps)
    assert (A * B).truncate(caps).terms == dense_mul(A.terms, B.terms, caps)


# -- support of a product of linear forms ---------------------------------------------


def _support_oracle(k, ds, iso):
    total = sum(ds[i] - 1 for i in iso)
    out = set()
    for alpha in itertools.product(range(total + 1), repeat=k):
        if sum(alpha) != total:
            continue
        if all(alpha[i] <= sum(ds[j] - 1 for j in iso if j != i) for i in iso):
            out.add(alpha)
    return out


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_product_support(k):
    for ds in itertools.product(range(1, 5), repeat=k):
        for r in range(1, k + 1):
            for iso in itertools.combinations(range(k), r):
                R = Ring(k)
                xs = R.gens()
                tot = sum(xs, R.zero())
                p = R.one()
                for i in iso:
                    p = p * (tot - xs[i]) ** (ds[i] - 1)
                assert p.support() == _support_oracle(k, ds, iso), (ds, iso)
