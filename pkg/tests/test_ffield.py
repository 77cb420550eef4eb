import pytest
from hypothesis import given, strategies as st

from ffvc.ffield import FieldElement, FieldSpec, arith, inv, is_prime, make_field

PRIMES_100 = [p for p in range(2, 101) if is_prime(p)]


def test_make_field():
    assert make_field(5).q == 5
    assert make_field(13).q == 13
    with pytest.raises(ValueError, match="not prime"):
        make_field(9)
    for bad in (0, 1, 65537 * 2, 1 << 17):
        with pytest.raises(ValueError):
            make_field(bad)
    assert make_field(65521).q == 65521


def test_arith_examples():
    F5, F7 = make_field(5), make_field(7)
    assert arith(F5(2), F5(4), "add").value == 1
    assert arith(F5(2), F5(4), "mul").value == 3
    assert arith(F7(0), None, "neg").value == 0
    assert arith(F5(2), F5(3), "pow").value == 3
    with pytest.raises(ValueError):
        arith(F5(1), F7(1), "add")
    with pytest.raises(ValueError):
        arith(F5(1), F5(1), "div")


def test_inverse_examples():
    F7 = make_field(7)
    assert inv(F7(3)).value == 5
    for q in (2, 3, 5, 13):
        assert inv(make_field(q)(1)).value == 1
    with pytest.raises(ZeroDivisionError):
        inv(make_field(5)(0))


def test_canonical_representative():
    with pytest.raises(ValueError):
        FieldElement(5, FieldSpec(5))
    assert make_field(5)(-1).value == 4


@pytest.mark.parametrize("q", PRIMES_100)
def test_pairwise_axioms_exhaustive(q):
    F = make_field(q)
    els = F.elements()
    zero, one = F(0), F(1)
    for a in els:
        assert a + (-a) == zero
        if a.value:
            assert a * inv(a) == one
            assert a ** (q - 1) == one
        for b in els:
            assert a + b == b + a
            assert a * b == b * a
            assert (a - b) + b == a


@pytest.mark.parametrize("q", [p for p in PRIMES_100 if p <= 23])
def test_triple_axioms_exhaustive(q):
    els = make_field(q).elements()
    for a in els:
        for b in els:
            ab, apb = a * b, a + b
            for c in els:
                assert ab * c == a * (b * c)
                assert apb + c == a + (b + c)
                assert a * (b + c) == ab + a * c


@given(st.sampled_from(PRIMES_100), st.integers(), st.integers(), st.integers())
def test_triple_axioms_random(q, x, y, z):
    F = make_field(q)
    a, b, c = F(x), F(y), F(z)
    assert (a * b) * c == a * (b * c)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
