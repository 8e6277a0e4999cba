"""Building-up constructions for self-dual codes over R.

Seeds are the shortest self-dual codes: [1 c] with c*conj(c) = -1 when
char 2 or q = 1 mod 4, and a fixed 2x4 matrix built from a solution of
a^2 + b^2 = -1 when q = 3 mod 4.  `extend_i` grows a self-dual code by
two columns and one row, `extend_ii` by four columns and two rows; both
preserve self-duality for every valid witness.  `reduce` inverts
extend_i constructively and is used as a verification oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConstructionError, UnsupportedCase
from .gf import sum_of_squares_minus_one
from .rcode import RingCode
from .ring import RingSpec


@dataclass(frozen=True)
class ExtensionWitness:
    """Everything needed to replay one extension step."""

    branch: str  # "i" or "ii"
    base: RingCode
    c: tuple | None = None  # branch i multiplier
    alpha: tuple | None = None  # branch ii pair
    beta: tuple | None = None
    x1: tuple = ()
    x2: tuple | None = None

    def apply(self) -> RingCode:
        if self.branch == "i":
            return extend_i(self.base, self.c, self.x1)
        return extend_ii(self.base, self.alpha, self.beta, self.x1, self.x2)

    def log_line(self) -> str:
        sp = self.base.spec
        xs = "(" + ", ".join(sp.poly_str(e) for e in self.x1) + ")"
        if self.branch == "i":
            return f"i; c = {sp.poly_str(self.c)}; x = {xs}"
        x2s = "(" + ", ".join(sp.poly_str(e) for e in self.x2) + ")"
        return (
            f"ii; alpha = {sp.poly_str(self.alpha)}; beta = {sp.poly_str(self.beta)}; "
            f"x1 = {xs}; x2 = {x2s}"
        )


def minus_one_elem(spec: RingSpec):
    return spec.neg(spec.one)


def norm_minus_one_elements(spec: RingSpec):
    """All c in R with c*conj(c) = -1, in lexicographic order."""
    return tuple(spec.norm_classes().get(minus_one_elem(spec), ()))


def seed(spec: RingSpec):
    """All shortest self-dual codes over R, deduplicated by equivalence
    of their expansions."""
    from .equiv import are_equivalent

    if spec.field.residue_class in ("char-2", "1-mod-4"):
        codes = [
            RingCode(spec, 2, [(spec.one, c)]) for c in norm_minus_one_elements(spec)
        ]
        kept: list[RingCode] = []
        for cand in codes:
            exp = cand.expansion()
            if any(
                exp == k.expansion() or are_equivalent(exp, k.expansion())
                for k in kept
            ):
                continue
            kept.append(cand)
        return kept

    a, b = sum_of_squares_minus_one(spec.field)
    alpha = (a,) + (0,) * (spec.m - 1)
    beta = (b,) + (0,) * (spec.m - 1)
    one, zero = spec.one, spec.zero
    rows = [
        (one, zero, alpha, beta),
        (zero, one, spec.neg(beta), alpha),
    ]
    return [RingCode(spec, 4, rows)]


def _check(cond: bool, identity: str):
    if not cond:
        raise ConstructionError(f"witness violates {identity}")


def extend_i(base: RingCode, c, x) -> RingCode:
    """Two new columns and one new row: (1, 0 | x) on top, each base row
    r continues as (y, c*y | r) with y = -<r, x>."""
    sp = base.spec
    if sp.field.residue_class == "3-mod-4":
        raise ConstructionError(
            f"branch i needs char 2 or q = 1 mod 4; q = {sp.q} is 3 mod 4"
        )
    x = tuple(tuple(e) for e in x)
    if len(x) != base.ell:
        raise ConstructionError(
            f"x has length {len(x)}, base has length {base.ell}"
        )
    minus1 = minus_one_elem(sp)
    _check(sp.mul(c, sp.conj(c)) == minus1, "c*conj(c) = -1")
    _check(sp.hermitian_ip(x, x) == minus1, "<x, x> = -1")
    _check(base.is_self_dual(), "base self-dual")
    rows = [(sp.one, sp.zero) + x]
    for r in base.rows:
        y = sp.neg(sp.hermitian_ip(r, x))
        rows.append((y, sp.mul(c, y)) + r)
    return RingCode(sp, base.ell + 2, rows)


def extend_ii(base: RingCode, alpha, beta, x1, x2) -> RingCode:
    """Four new columns and two new rows for q = 3 mod 4: (1,0,0,0 | x1),
    (0,1,0,0 | x2), and each base row r continues as
    (s, t, alpha*s + beta*t, beta*s - alpha*t | r) with s = -<r, x1>,
    t = -<r, x2>."""
    sp = base.spec
    if sp.field.residue_class != "3-mod-4":
        raise ConstructionError(
            f"branch ii needs q = 3 mod 4; q = {sp.q} is not"
        )
    if base.ell % 4 != 0:
        raise ConstructionError(
            f"branch ii needs base length 2L with L even; length {base.ell}"
        )
    x1 = tuple(tuple(e) for e in x1)
    x2 = tuple(tuple(e) for e in x2)
    if len(x1) != base.ell or len(x2) != base.ell:
        raise ConstructionError("x1/x2 length must match the base length")
    minus1 = minus_one_elem(sp)
    aa = sp.mul(alpha, sp.conj(alpha))
    bb = sp.mul(beta, sp.conj(beta))
    _check(sp.add(aa, bb) == minus1, "alpha*conj(alpha) + beta*conj(beta) = -1")
    _check(
        sp.mul(alpha, sp.conj(beta)) == sp.mul(sp.conj(alpha), beta),
        "alpha*conj(beta) = conj(alpha)*beta",
    )
    _check(sp.hermitian_ip(x1, x1) == minus1, "<x1, x1> = -1")
    _check(sp.hermitian_ip(x2, x2) == minus1, "<x2, x2> = -1")
    _check(sp.hermitian_ip(x1, x2) == sp.zero, "<x1, x2> = 0")
    _check(base.is_self_dual(), "base self-dual")
    one, zero = sp.one, sp.zero
    rows = [
        (one, zero, zero, zero) + x1,
        (zero, one, zero, zero) + x2,
    ]
    for r in base.rows:
        s = sp.neg(sp.hermitian_ip(r, x1))
        t = sp.neg(sp.hermitian_ip(r, x2))
        y = (
            s,
            t,
            sp.add(sp.mul(alpha, s), sp.mul(beta, t)),
            sp.sub(sp.mul(beta, s), sp.mul(alpha, t)),
        )
        rows.append(y + r)
    return RingCode(sp, base.ell + 4, rows)


def reduce(code: RingCode) -> RingCode:
    """Invert extend_i: find a shorter self-dual code plus a witness that
    regenerates this code's row space in reordered coordinates.

    Works from the standard form: any two identity-block columns can play
    the role of the two added columns.  For each such ordered pair and
    each multiplier candidate c, the base is recovered by the projection
    u - (a + conj(c)*b)*x applied to the generators, and the candidate is
    accepted when re-extension reproduces the permuted code exactly.
    """
    sp = code.spec
    if sp.field.residue_class == "3-mod-4":
        raise UnsupportedCase("reduction implemented for branch i fields only")
    if code.ell < 4:
        raise UnsupportedCase(f"length {code.ell} is below the reducible minimum 4")
    if not code.is_self_dual():
        raise UnsupportedCase("input is not self-dual")
    sf = code.standard_form()
    if sf.k1 < 2:
        raise UnsupportedCase(f"free rank {sf.k1} < 2; converse needs at least 2")
    permuted = code.permute_columns(sf.col_perm)
    rows = sf.rows
    cs = norm_minus_one_elements(sp)
    for i in range(sf.k1):
        for j in range(sf.k1):
            if i == j:
                continue
            # rows[i] has 1 at column i and 0 at column j
            lead = rows[i]
            keep = [t for t in range(code.ell) if t not in (i, j)]
            x = tuple(lead[t] for t in keep)
            reorder = [i, j] + keep
            target = permuted.permute_columns(reorder)
            for c in cs:
                cbar = sp.conj(c)
                base_rows = []
                for widx, w in enumerate(rows):
                    if widx == i:
                        continue
                    coef = sp.add(w[i], sp.mul(cbar, w[j]))
                    base_rows.append(
                        tuple(
                            sp.sub(w[t], sp.mul(coef, x[ti]))
                            for ti, t in enumerate(keep)
                        )
                    )
                if not any(any(any(e) for e in r) for r in base_rows):
                    continue
                base = RingCode(sp, code.ell - 2, base_rows)
                try:
                    again = extend_i(base, c, x)
                except ConstructionError:
                    continue
                if target.same_row_space(again):
                    return base
    raise UnsupportedCase("no reduction witness found over the identity block")
