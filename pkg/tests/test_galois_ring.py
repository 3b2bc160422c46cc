import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hjelmslev_arcs.galois_ring import (
    RingMismatchError, default_polynomial, is_irreducible_mod_p, make_ring, parse_ring,
)

from conftest import SMALL_RINGS


def long_division_product(a, b, f, pm):
    """Schoolbook product of coefficient lists, then long division by monic f."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    r = len(f) - 1
    rem = list(prod)
    for d in range(len(rem) - 1, r - 1, -1):
        c = rem[d]
        for i in range(r + 1):
            rem[d - r + i] -= c * f[i]
    return tuple(c % pm for c in rem[:r])


def test_make_ring_g16():
    R = make_ring(2, 2, 2, [1, 1, 1])
    assert R.order == 16 and R.characteristic == 4 and R.q == 4
    assert R == parse_ring("G16") == parse_ring("GR(16,4)")


def test_r1_and_m1_cases():
    Z4 = make_ring(2, 1, 2)
    assert Z4.order == 4 and Z4.characteristic == 4
    F4 = make_ring(2, 2, 1)
    assert F4.order == 4 and F4.characteristic == 2
    assert F4.is_unit_table[1:].all()


@pytest.mark.parametrize("args", [(4, 1, 1, None), (2, 2, 2, [1, 0, 1]), (2, 2, 2, [1, 1, 2]), (2, 2, 2, [1, 1])])
def test_make_ring_rejects(args):
    with pytest.raises(ValueError):
        make_ring(*args)


def test_default_polynomials():
    assert default_polynomial(2, 2) == (1, 1, 1)
    assert default_polynomial(3, 2) == (1, 0, 1)
    assert default_polynomial(5, 1) == (0, 1)
    assert not is_irreducible_mod_p([1, 0, 1], 2)
    assert is_irreducible_mod_p([1, 1, 0, 1], 2)


def test_add_examples(g16):
    assert g16((1, 1)) + g16((3, 3)) == g16(0)
    Z9 = parse_ring("Z9")
    assert Z9(5) + Z9(7) == Z9(3)
    for x in g16.elements():
        assert x + g16(0) == x
        assert x - x == g16(0)
        assert -(-x) == x


def test_mul_examples(g16):
    X = g16.X
    assert X * X == g16((3, 3))
    assert X * X == g16(long_division_product([0, 1], [0, 1], [1, 1, 1], 4))
    assert g16(2) * g16((2, 2)) == g16(0)
    for x in g16.elements():
        assert x * g16(1) == x


@pytest.mark.parametrize("name", ["G16", "F9", "Z27", "Z25"])
def test_mul_table_matches_long_division(name):
    R = parse_ring(name)
    for a, b in itertools.product(R.elements(), repeat=2):
        assert (a * b).coeffs == long_division_product(a.coeffs, b.coeffs, R.f, R.pm)


def test_mismatched_rings(g16):
    with pytest.raises(RingMismatchError):
        g16(1) + parse_ring("Z4")(1)


def test_units_and_inverse(g16):
    assert g16.is_unit(g16.X)
    assert not g16.is_unit(g16(0))
    assert g16.inverse(g16.X) == g16((3, 3))
    assert g16.inverse(g16(1)) == g16(1)
    Z25 = parse_ring("Z25")
    assert Z25.inverse(Z25(7)) == Z25(18)
    with pytest.raises(ZeroDivisionError):
        g16.inverse(g16(2))


@pytest.mark.parametrize("name", SMALL_RINGS)
def test_unit_count_and_inverses(name):
    R = parse_ring(name)
    units = [x for x in R.elements() if R.is_unit(x)]
    assert len(units) == R.q**R.m - R.q ** (R.m - 1)
    for x in units:
        assert x * R.inverse(x) == R(1)


@pytest.mark.parametrize("name", SMALL_RINGS)
def test_ring_axioms_pairs(name):
    R = parse_ring(name)
    els = R.elements()
    for a, b in itertools.product(els, repeat=2):
        assert a + b == b + a
        assert a * b == b * a


@settings(max_examples=300, deadline=None)
@given(name=st.sampled_from(SMALL_RINGS), data=st.data())
def test_ring_axioms_triples(name, data):
    R = parse_ring(name)
    a, b, c = (R.element(data.draw(st.integers(0, R.order - 1))) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


def test_residue(g16):
    assert g16.residue(g16((2, 3))).coeffs == (0, 1)
    for x, y in itertools.product(g16.elements(), repeat=2):
        assert g16.residue(x * y) == g16.residue(x) * g16.residue(y)
        assert g16.residue(x + y) == g16.residue(x) + g16.residue(y)
    for x in g16.elements():
        assert g16.residue(g16(2) * x) == g16.residue_field(0)


@pytest.mark.parametrize("name", SMALL_RINGS)
def test_residue_surjective_kernel_nonunits(name):
    R = parse_ring(name)
    images = {R.residue(x) for x in R.elements()}
    assert len(images) == R.q
    for x in R.elements():
        assert (R.residue(x) == R.residue_field(0)) == (not R.is_unit(x))


def test_m1_matches_reference_f4():
    # F4 = {0, 1, a, a+1} with a^2 = a + 1
    F4 = make_ring(2, 2, 1)
    names = {(0, 0): "0", (1, 0): "1", (0, 1): "a", (1, 1): "b"}
    ref = {
        ("a", "a"): "b", ("a", "b"): "1", ("b", "b"): "a",
        ("1", "a"): "a", ("1", "b"): "b", ("1", "1"): "1",
    }
    for (x, y), z in ref.items():
        ex = next(e for e in F4.elements() if names[e.coeffs] == x)
        ey = next(e for e in F4.elements() if names[e.coeffs] == y)
        assert names[(ex * ey).coeffs] == z


@pytest.mark.parametrize("N", [4, 8, 9, 16, 25, 27])
def test_r1_matches_integers_mod(N):
    R = parse_ring(f"Z{N}")
    for a in range(N):
        for b in range(N):
            assert R(a) * R(b) == R(a * b % N)
            assert R(a) + R(b) == R((a + b) % N)


def test_elements_enumeration():
    assert len(parse_ring("G16").elements()) == 16
    assert len(parse_ring("Z27").elements()) == 27
    F9 = make_ring(3, 2, 1)
    els = F9.elements()
    assert len(els) == 9 and els == sorted(els)


def test_teichmuller_z4():
    Z4 = parse_ring("Z4")
    # brute force: t^2 = t in Z4
    fixed = {t for t in range(4) if t * t % 4 == t}
    assert {x.coeffs[0] for x in (Z4.element(t) for t in Z4.teichmuller_set)} == fixed == {0, 1}
    assert Z4.teichmuller_decompose(Z4(3)) == (Z4(1), Z4(1))
    assert Z4.teichmuller_decompose(Z4(2)) == (Z4(0), Z4(1))


def test_teichmuller_g16(g16):
    T = [x for x in g16.elements() if x ** 4 == x]
    assert len(T) == 4 == len(g16.teichmuller_set)
    assert g16.teichmuller_decompose(g16(0)) == (g16(0), g16(0))


@pytest.mark.parametrize("name", SMALL_RINGS)
def test_teichmuller_reconstruction(name):
    R = parse_ring(name)
    p = R(R.p)
    for x in R.elements():
        digits = R.teichmuller_decompose(x)
        total, scale = R(0), R(1)
        for t in digits:
            assert t ** R.q == t
            total = total + scale * t
            scale = scale * p
        assert total == x


@pytest.mark.parametrize("name", SMALL_RINGS)
def test_text_roundtrip(name):
    R = parse_ring(name)
    assert parse_ring(R.to_text()) == R


def test_text_format(g16):
    assert g16.to_text() == "GR(p^m=4,q=4,f=[1,1,1])"
    with pytest.raises(ValueError):
        parse_ring("GR(p^m=6,q=6,f=[0,1])")
