"""Arithmetic in R = F_q[Y]/(Y^m - 1): products, conjugation, units, CRT."""

import random

import pytest

from qcsd.errors import BudgetExceeded, UnsupportedCase
from qcsd.ring import enumerate_solutions, partition_ranges, ring


def test_constructor_validation():
    with pytest.raises(ValueError):
        ring(2, 0)
    # m sharing a factor with the characteristic is rejected
    with pytest.raises(ValueError):
        ring(2, 4)
    with pytest.raises(ValueError):
        ring(3, 3)
    with pytest.raises(ValueError):
        ring(4, 6)


def test_constants():
    sp = ring(2, 3)
    assert sp.zero == (0, 0, 0)
    assert sp.one == (1, 0, 0)
    assert sp.y == (0, 1, 0)
    assert sp.phi == (1, 1, 1)
    assert sp.q == 2 and sp.m == 3


def test_cyclotomic_flag():
    # true exactly when m is prime and q generates the multiplicative
    # group modulo m
    assert ring(2, 3).cyclotomic_ok
    assert ring(2, 5).cyclotomic_ok
    assert ring(3, 5).cyclotomic_ok
    assert ring(3, 7).cyclotomic_ok
    assert ring(5, 7).cyclotomic_ok
    assert not ring(2, 7).cyclotomic_ok  # 2 has order 3 modulo 7
    assert not ring(4, 3).cyclotomic_ok  # 4 = 1 modulo 3
    assert not ring(4, 5).cyclotomic_ok  # 4 has order 2 modulo 5
    assert not ring(4, 7).cyclotomic_ok  # 4 has order 3 modulo 7


def test_mul_literals():
    sp = ring(2, 3)
    y, one = sp.y, sp.one
    y2 = sp.mul(y, y)
    assert y2 == (0, 0, 1)
    assert sp.mul(y2, y) == one  # Y^3 = 1
    a = (1, 1, 0)  # 1 + Y
    assert sp.mul(a, a) == (1, 0, 1)  # squaring in characteristic 2
    sp5 = ring(5, 7)
    b = (2, 0, 0, 0, 1, 0, 0)  # 2 + Y^4
    c = (0, 0, 0, 3, 0, 0, 0)  # 3Y^3
    assert sp5.mul(b, c) == (3, 0, 0, 1, 0, 0, 0)  # 6Y^3 + 3Y^7 = 3 + Y^3


def test_mul_matches_naive_convolution():
    rng = random.Random(11)
    for q, m in [(2, 3), (3, 5), (4, 3), (5, 7)]:
        sp = ring(q, m)
        f = sp.field
        for _ in range(50):
            a = tuple(rng.randrange(q) for _ in range(m))
            b = tuple(rng.randrange(q) for _ in range(m))
            out = [0] * m
            for i in range(m):
                for j in range(m):
                    k = (i + j) % m
                    out[k] = f.add(out[k], f.mul(a[i], b[j]))
            assert sp.mul(a, b) == tuple(out)


def test_conj_is_order_two_ring_map():
    rng = random.Random(7)
    for q, m in [(2, 3), (2, 5), (4, 5), (3, 7)]:
        sp = ring(q, m)
        assert sp.conj(sp.y) == sp.shift(sp.one, m - 1)  # Y -> Y^(m-1)
        for _ in range(40):
            a = sp.element_from_index(rng.randrange(q**m))
            b = sp.element_from_index(rng.randrange(q**m))
            assert sp.conj(sp.conj(a)) == a
            assert sp.conj(sp.add(a, b)) == sp.add(sp.conj(a), sp.conj(b))
            assert sp.conj(sp.mul(a, b)) == sp.mul(sp.conj(a), sp.conj(b))


def test_shift_and_eval1():
    sp = ring(3, 5)
    a = (1, 2, 0, 0, 1)
    assert sp.shift(a, 1) == (1, 1, 2, 0, 0)
    assert sp.shift(a, 5) == a
    assert sp.mul(sp.y, a) == sp.shift(a, 1)
    assert sp.eval1(a) == 1  # 1 + 2 + 1 = 4 = 1 in F_3


def test_units_count_matches_crt_factorization():
    # R = F_q x F_{q^(m-1)} when Y^m - 1 has exactly two irreducible
    # factors, so the unit group has (q-1)(q^(m-1)-1) elements
    for q, m in [(2, 3), (2, 5), (3, 5), (3, 7)]:
        sp = ring(q, m)
        assert len(sp.units()) == (q - 1) * (q ** (m - 1) - 1)


def test_unit_inverses_exhaustive():
    for q, m in [(2, 3), (2, 5), (3, 5)]:
        sp = ring(q, m)
        for u in sp.units():
            assert sp.mul(u, sp.inv(u)) == sp.one
        assert not sp.is_unit(sp.phi)  # Phi divides Y^m - 1
        assert not sp.is_unit(sp.sub(sp.y, sp.one))
        with pytest.raises(ValueError):
            sp.inv(sp.phi)


def test_element_indexing_roundtrip():
    sp = ring(4, 3)
    seen = set()
    for i in range(4**3):
        e = sp.element_from_index(i)
        assert sp.element_index(e) == i
        seen.add(e)
    assert len(seen) == 64


def test_crt_split_combine_roundtrip_exhaustive():
    for q, m in [(2, 3), (2, 5), (3, 5)]:
        sp = ring(q, m)
        for i in range(q**m):
            a = sp.element_from_index(i)
            pair = sp.crt_split(a)
            assert pair.eval1 == sp.eval1(a)
            assert pair.evalphi == sp.mod_phi(a)
            assert sp.crt_combine(pair) == a


def test_crt_split_is_a_ring_map():
    rng = random.Random(23)
    sp = ring(2, 5)
    for _ in range(60):
        a = sp.element_from_index(rng.randrange(2**5))
        b = sp.element_from_index(rng.randrange(2**5))
        pa, pb = sp.crt_split(a), sp.crt_split(b)
        prod = sp.crt_split(sp.mul(a, b))
        assert prod.eval1 == sp.field.mul(pa.eval1, pb.eval1)
        assert prod.evalphi == sp.phi_component_mul(pa.evalphi, pb.evalphi)


def test_crt_requires_two_factor_splitting():
    sp = ring(2, 7)
    with pytest.raises(UnsupportedCase):
        sp.crt_split(sp.one)


def test_multiples_of_phi():
    sp = ring(2, 3)
    assert sp.is_multiple_of_phi(sp.phi)
    assert sp.is_multiple_of_phi(sp.zero)
    assert not sp.is_multiple_of_phi(sp.one)
    assert sp.mod_phi(sp.phi) == sp.zerophi


def test_hermitian_ip_sesquilinear():
    rng = random.Random(31)
    for q, m in [(2, 3), (4, 5), (5, 7)]:
        sp = ring(q, m)
        ell = 4
        def rvec():
            return tuple(
                sp.element_from_index(rng.randrange(q**m)) for _ in range(ell)
            )
        for _ in range(30):
            x, y, z = rvec(), rvec(), rvec()
            sx = tuple(map(sp.add, x, y))
            # additive in the first argument
            assert sp.hermitian_ip(sx, z) == sp.add(
                sp.hermitian_ip(x, z), sp.hermitian_ip(y, z)
            )
            # conjugate-symmetric
            assert sp.hermitian_ip(x, y) == sp.conj(sp.hermitian_ip(y, x))
            c = sp.element_from_index(rng.randrange(q**m))
            cx = tuple(sp.mul(c, e) for e in x)
            assert sp.hermitian_ip(cx, y) == sp.mul(c, sp.hermitian_ip(x, y))


def test_norm_classes_partition():
    for q, m in [(2, 3), (3, 5), (4, 3)]:
        sp = ring(q, m)
        classes = sp.norm_classes()
        total = 0
        for t, members in classes.items():
            total += len(members)
            for a in members:
                assert sp.mul(a, sp.conj(a)) == t
        assert total == q**m


def test_poly_str_parse_roundtrip():
    for q, m in [(2, 3), (4, 3), (3, 5)]:
        sp = ring(q, m)
        for i in range(q**m):
            a = sp.element_from_index(i)
            assert sp.parse_poly(sp.poly_str(a)) == a
    sp = ring(4, 3)
    assert sp.poly_str((0, 0, 0)) == "0"
    assert sp.parse_poly("1 + w Y + w^2 Y^2") == (1, 2, 3)


def test_enumerate_solutions_matches_brute_force():
    sp = ring(2, 3)
    minus1 = sp.neg(sp.one)
    got = list(enumerate_solutions(sp, 2, minus1))
    brute = []
    for i in range(8**2):
        x = (sp.element_from_index(i // 8), sp.element_from_index(i % 8))
        if sp.hermitian_ip(x, x) == minus1:
            brute.append(x)
    assert sorted(got) == sorted(brute)
    assert len(got) == len(set(got))


def test_enumerate_solutions_budget_and_ranges():
    sp = ring(2, 3)
    minus1 = sp.neg(sp.one)
    with pytest.raises(BudgetExceeded):
        list(enumerate_solutions(sp, 12, minus1, budget=1000))
    whole = list(enumerate_solutions(sp, 2, minus1))
    pieces = []
    for lo, hi in partition_ranges(sp, 2, 5):
        pieces.extend(enumerate_solutions(sp, 2, minus1, index_range=(lo, hi)))
    assert pieces == whole
