"""Field codes: RREF canonicalisation, duality, expand/collapse, Gray map."""

import random

import pytest

from qcsd.gf import FIELD_SIZES, field
from qcsd.qc import (
    FieldCode,
    collapse,
    expand,
    gray_image,
    is_euclidean_self_dual,
    is_shift_invariant,
    rotate_right,
    rref,
)
from qcsd.rcode import RingCode
from qcsd.ring import ring


def naive_rref(fld, n, rows):
    """Textbook reduced row echelon form, written independently of qc.rref."""
    work = [list(r) for r in rows]
    rank = 0
    pivots = []
    for col in range(n):
        src = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if src is None:
            continue
        work[rank], work[src] = work[src], work[rank]
        inv = fld.inv(work[rank][col])
        work[rank] = [fld.mul(inv, v) for v in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                c = work[i][col]
                work[i] = [fld.sub(a, fld.mul(c, b)) for a, b in zip(work[i], work[rank])]
        pivots.append(col)
        rank += 1
    return [tuple(r) for r in work[:rank]], pivots


def test_rref_matches_naive_reduction():
    rng = random.Random(11)
    for q in FIELD_SIZES:
        fld = field(q)
        for _ in range(40):
            n = rng.randrange(1, 8)
            rows = [
                tuple(rng.randrange(q) for _ in range(n))
                for _ in range(rng.randrange(0, 6))
            ]
            got_rows, got_piv = rref(fld, n, rows)
            want_rows, want_piv = naive_rref(fld, n, rows)
            assert list(got_rows) == want_rows
            assert list(got_piv) == want_piv


def test_rref_shape_properties():
    rng = random.Random(12)
    for q in FIELD_SIZES:
        fld = field(q)
        for _ in range(25):
            n = rng.randrange(2, 9)
            rows = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(4)]
            red, piv = rref(fld, n, rows)
            assert list(piv) == sorted(piv)
            for i, p in enumerate(piv):
                assert red[i][p] == 1
                assert all(red[t][p] == 0 for t in range(len(red)) if t != i)
                assert all(v == 0 for v in red[i][:p])


def test_field_code_equality_is_row_space_equality():
    f = field(3)
    a = FieldCode(f, 3, [(1, 2, 0), (0, 1, 1)])
    b = FieldCode(f, 3, [(0, 1, 1), (1, 0, 1)])  # same space, different basis
    c = FieldCode(f, 3, [(1, 2, 0)])
    assert a == b
    assert hash(a) == hash(b)
    assert a.key() == b.key()
    assert a != c
    assert a.k == 2 and c.k == 1


def test_field_code_contains():
    f = field(2)
    code = FieldCode(f, 4, [(1, 1, 0, 0), (0, 0, 1, 1)])
    assert code.contains((1, 1, 1, 1))
    assert code.contains((0, 0, 0, 0))
    assert not code.contains((1, 0, 0, 0))
    assert code.contains_all([(1, 1, 0, 0), (1, 1, 1, 1)])
    assert not code.contains_all([(1, 1, 0, 0), (1, 0, 1, 0)])


def test_field_code_validation():
    f = field(2)
    with pytest.raises(ValueError):
        FieldCode(f, 0, [])
    with pytest.raises(ValueError):
        FieldCode(f, 2, [(1,)])
    with pytest.raises(ValueError):
        FieldCode(f, 2, [(1, 2)])


def test_euclidean_self_dual_literals():
    assert is_euclidean_self_dual(FieldCode(field(2), 2, [(1, 1)]))
    assert not is_euclidean_self_dual(FieldCode(field(2), 2, [(1, 0)]))
    assert not is_euclidean_self_dual(FieldCode(field(2), 3, [(1, 1, 1)]))
    assert is_euclidean_self_dual(FieldCode(field(5), 2, [(1, 2)]))
    assert not is_euclidean_self_dual(FieldCode(field(5), 2, [(1, 1)]))
    assert is_euclidean_self_dual(FieldCode(field(4), 2, [(1, 1)]))
    assert not is_euclidean_self_dual(FieldCode(field(4), 2, [(1, 2)]))


def test_rotate_right():
    assert rotate_right((1, 2, 3, 4), 1) == (4, 1, 2, 3)
    assert rotate_right((1, 2, 3, 4), 0) == (1, 2, 3, 4)
    assert rotate_right((1, 2, 3, 4), 6) == (3, 4, 1, 2)


def test_shift_invariance():
    f = field(2)
    cyclic = FieldCode(f, 4, [(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1)])
    assert is_shift_invariant(cyclic, 1)
    assert is_shift_invariant(cyclic, 2)
    half_cyclic = FieldCode(f, 4, [(1, 0, 1, 0)])
    assert not is_shift_invariant(half_cyclic, 1)
    assert is_shift_invariant(half_cyclic, 2)
    assert not is_shift_invariant(FieldCode(f, 4, [(1, 1, 0, 0)]), 2)


def test_expand_sets_qc_index():
    sp = ring(2, 3)
    rc = RingCode(sp, 2, [((1, 0, 0), (0, 0, 1))])
    assert rc.expansion().qc_index == 2


def test_expand_collapse_roundtrip_exhaustive_single_generator():
    # every nonzero single-generator code over F_2[Y]/(Y^3 - 1), ell = 2
    sp = ring(2, 3)
    count = 0
    for idx_a in range(8):
        for idx_b in range(8):
            if idx_a == 0 and idx_b == 0:
                continue
            row = (sp.element_from_index(idx_a), sp.element_from_index(idx_b))
            rc = RingCode(sp, 2, [row])
            back = collapse(rc.expansion(), sp.m, 2)
            assert back.same_row_space(rc)
            assert back.expansion() == rc.expansion()
            count += 1
    assert count == 63


def test_collapse_expand_roundtrip_random_multirow():
    rng = random.Random(13)
    for q, m in [(2, 3), (3, 5), (4, 3), (5, 7)]:
        sp = ring(q, m)
        for _ in range(8):
            ell = rng.choice([1, 2, 3])
            rows = [
                tuple(
                    tuple(rng.randrange(q) for _ in range(m)) for _ in range(ell)
                )
                for _ in range(rng.randrange(1, 3))
            ]
            if not any(any(any(e) for e in r) for r in rows):
                continue
            rc = RingCode(sp, ell, rows)
            fc = rc.expansion()
            assert is_shift_invariant(fc, ell)
            back = collapse(fc, m, ell)
            assert back.expansion() == fc


def test_collapse_rejects_bad_input():
    f = field(2)
    code = FieldCode(f, 6, [(1, 0, 1, 1, 0, 1)])
    with pytest.raises(ValueError):
        collapse(code, 4, 2)  # 4*2 != 6
    not_invariant = FieldCode(f, 6, [(1, 0, 0, 0, 0, 0)])
    with pytest.raises(ValueError):
        collapse(not_invariant, 3, 2)


def test_gray_image_literal():
    # w -> (1, 0), w^2 -> (0, 1), 1 = w + w^2 -> (1, 1), x parts then y parts
    f4 = field(4)
    code = FieldCode(f4, 2, [(2, 1)])  # (w, 1)
    img = gray_image(code)
    assert img.n == 4
    assert img.k == 2
    # row itself: (w, 1) -> x=(1,1), y=(0,1); w*row = (w^2, w) -> x=(0,1), y=(1,0)
    assert img == FieldCode(field(2), 4, [(1, 1, 0, 1), (0, 1, 1, 0)])


def test_gray_image_doubles_parameters():
    rng = random.Random(14)
    f4 = field(4)
    for _ in range(10):
        n = rng.randrange(2, 7)
        rows = [tuple(rng.randrange(4) for _ in range(n)) for _ in range(2)]
        code = FieldCode(f4, n, rows)
        img = gray_image(code)
        assert img.n == 2 * n
        assert img.k == 2 * code.k


def test_gray_image_of_hermitian_self_dual_is_self_dual():
    from qcsd import corpus

    for name in ["J_2", "M_2", "J_4"]:
        rc = corpus.load(corpus.get(name))
        img = gray_image(rc.expansion())
        assert is_euclidean_self_dual(img)


def test_gray_image_rejects_other_fields():
    with pytest.raises(ValueError):
        gray_image(FieldCode(field(2), 2, [(1, 1)]))
