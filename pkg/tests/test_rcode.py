"""Codes over R: expansion layout, self-duality, standard form."""

import pytest

from qcsd.gf import field
from qcsd.qc import FieldCode, is_shift_invariant
from qcsd.rcode import RingCode
from qcsd.ring import ring


def test_constructor_validation():
    sp = ring(2, 3)
    with pytest.raises(ValueError):
        RingCode(sp, 2, [((1, 0, 0),)])  # row too short
    with pytest.raises(ValueError):
        RingCode(sp, 1, [((1, 0),)])  # element with wrong coefficient count
    with pytest.raises(ValueError):
        RingCode(sp, 1, [((2, 0, 0),)])  # coefficient out of range for F_2
    with pytest.raises(ValueError):
        RingCode(sp, 2, [((0, 0, 0), (0, 0, 0))])  # no nonzero generators
    with pytest.raises(ValueError):
        RingCode(sp, 0, [])


def test_expansion_layout_literal():
    # entry j of a ring row contributes the coefficient of Y^i at field
    # position i*ell + j, and multiplying a row by Y lands in the code
    sp = ring(2, 3)
    rc = RingCode(sp, 2, [((1, 1, 0), (0, 1, 1))])  # (1 + Y | Y + Y^2)
    exp = rc.expansion()
    assert exp.n == 6
    assert exp.k == 2
    expected = FieldCode(
        field(2),
        6,
        [
            (1, 0, 1, 1, 0, 1),  # the row itself
            (0, 1, 1, 0, 1, 1),  # Y times the row
            (1, 1, 0, 1, 1, 0),  # Y^2 times the row
        ],
    )
    assert exp == expected


def test_expansion_is_shift_invariant():
    sp = ring(5, 7)
    rc = RingCode(
        sp,
        2,
        [((1, 0, 0, 0, 0, 0, 0), (0, 2, 0, 0, 3, 0, 0))],
    )
    exp = rc.expansion()
    assert exp.n == 14
    assert exp.k == 7
    assert is_shift_invariant(exp, 2)


def test_expansion_dimension_is_rank_not_row_count():
    sp = ring(2, 3)
    # Phi = 1 + Y + Y^2 spans a 1-dimensional module: Y*Phi = Phi
    rc = RingCode(sp, 1, [((1, 1, 1),)])
    assert rc.expansion().k == 1


def test_self_dual_literals():
    sp = ring(2, 3)
    assert RingCode(sp, 2, [((1, 0, 0), (0, 0, 1))]).is_self_dual()
    assert not RingCode(sp, 2, [((1, 0, 0), (0, 0, 0))]).is_self_dual()
    assert not RingCode(sp, 1, [((1, 1, 1),)]).is_self_dual()
    sp4 = ring(4, 3)
    # over F_4 the all-ones column pair is not self-dual (norms add to 2*1=0
    # but the dimension is right only for the hermitian-orthogonal pair)
    assert RingCode(sp4, 2, [((1, 0, 0), (0, 0, 1))]).is_self_dual()


def test_self_duality_breaks_under_single_coefficient_typo():
    # the transcription gate: flipping any one coefficient of a self-dual
    # generator matrix destroys self-duality
    from qcsd import corpus

    rc = corpus.load(corpus.get("K_2"))
    sp = rc.spec
    rows = [list(list(e) for e in r) for r in rc.rows]
    flips = 0
    for i in range(len(rows)):
        for j in range(rc.ell):
            for t in range(sp.m):
                rows[i][j][t] ^= 1
                bad = RingCode(sp, rc.ell, [tuple(tuple(e) for e in r) for r in rows])
                assert not bad.is_self_dual()
                rows[i][j][t] ^= 1
                flips += 1
    assert flips == len(rc.rows) * rc.ell * sp.m


def test_is_self_orthogonal():
    sp = ring(2, 3)
    rc = RingCode(sp, 2, [((1, 0, 0), (0, 0, 1))])
    assert rc.is_self_orthogonal()
    assert not RingCode(sp, 2, [((1, 0, 0), (1, 1, 0))]).is_self_orthogonal()


def test_permute_columns_and_same_row_space():
    sp = ring(2, 5)
    rc = RingCode(sp, 2, [((1, 0, 0, 0, 0), (0, 0, 0, 0, 1))])
    swapped = rc.permute_columns((1, 0))
    assert swapped.rows[0] == ((0, 0, 0, 0, 1), (1, 0, 0, 0, 0))
    assert not rc.same_row_space(swapped)
    doubled = RingCode(sp, 2, list(rc.rows) + [tuple(sp.mul(sp.y, e) for e in rc.rows[0])])
    assert rc.same_row_space(doubled)


def test_standard_form_blocks_on_self_dual_codes():
    # self-dual codes have no Phi-block (k3 = 0) and split the half-length
    # between the free block and the (Y-1)-block
    from qcsd import corpus

    for name in ["G_14", "G_16", "I_8", "I_4", "G_12"]:
        rc = corpus.load(corpus.get(name))
        sf = rc.standard_form()
        assert sf.k3 == 0
        assert sf.k1 + sf.k2 == rc.ell // 2
        assert sf.k1 >= 2
        # the first k1 rows start with an identity block
        sp = rc.spec
        for i in range(sf.k1):
            for j in range(sf.k1):
                want = sp.one if i == j else sp.zero
                assert sf.rows[i][j] == want
        # the standard form generates the permuted code
        recon = RingCode(sp, rc.ell, sf.rows)
        assert recon.same_row_space(rc.permute_columns(sf.col_perm))


def test_standard_form_seed_profile():
    sp = ring(2, 3)
    rc = RingCode(sp, 2, [((1, 0, 0), (0, 0, 1))])
    sf = rc.standard_form()
    assert (sf.k1, sf.k2, sf.k3) == (1, 0, 0)
    assert rc.free_rank_at_least(1)
    assert not rc.free_rank_at_least(2)


def test_standard_form_needs_two_factor_splitting():
    from qcsd.errors import UnsupportedCase

    sp = ring(2, 7)
    rc = RingCode(sp, 2, [((1, 0, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 0, 1))])
    with pytest.raises(UnsupportedCase):
        rc.standard_form()


def test_single_factor_rows_fill_k3():
    # generators living inside one maximal ideal only form the k3 block,
    # tagged with the ideal they came from
    sp = ring(2, 3)
    rc = RingCode(sp, 2, [(sp.phi, sp.zero)])
    sf = rc.standard_form()
    assert (sf.k1, sf.k2, sf.k3) == (0, 0, 1)
    assert sf.alpha_branch == "phi"
    rc2 = RingCode(sp, 2, [(sp.sub(sp.y, sp.one), sp.zero)])
    sf2 = rc2.standard_form()
    assert (sf2.k1, sf2.k2, sf2.k3) == (0, 0, 1)
    assert sf2.alpha_branch == "Y-1"


def test_two_ideal_row_fills_k2():
    # a row with a (Y-1)-multiple in one column and a Phi-multiple in
    # another has zero annihilator but no unit coordinate: it is counted
    # by k2 and spans a full rank-m module
    sp = ring(2, 3)
    y_minus_1 = sp.sub(sp.y, sp.one)
    rc = RingCode(sp, 2, [(y_minus_1, sp.phi)])
    sf = rc.standard_form()
    assert (sf.k1, sf.k2, sf.k3) == (0, 1, 0)
    assert rc.expansion().k == sp.m
