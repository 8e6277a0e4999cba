"""Arithmetic in R = F_q[Y]/(Y^m - 1) and its conjugation structure.

Ring elements are tuples of m field indices, constant coefficient
first.  The conjugation sends Y to Y^(m-1) = Y^(-1) and fixes F_q; the
hermitian inner product of vectors over R is sum_j x_j * conj(y_j).

When m is a prime p and q is a primitive root mod p, Y^m - 1 has exactly
the two irreducible factors (Y - 1) and Phi_p = 1 + Y + ... + Y^(p-1),
and R splits as F_q x F_q[Y]/Phi_p.  Several operations (crt_split,
standard forms downstream) require that situation; the flag
`cyclotomic_ok` records it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetExceeded, UnsupportedCase
from .gf import FieldSpec, field

DEFAULT_ENUM_BUDGET = 1 << 27

RingElem = tuple  # m field indices, constant coefficient first


@dataclass(frozen=True)
class CrtPair:
    """Image of a ring element under R -> F_q x F_q[Y]/Phi_p."""

    eval1: int
    evalphi: tuple  # p-1 coefficients of the residue mod Phi_p


def _mult_order(q: int, m: int) -> int:
    o, x = 1, q % m
    while x != 1:
        x = (x * q) % m
        o += 1
    return o


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    f = 2
    while f * f <= m:
        if m % f == 0:
            return False
        f += 1
    return True


class RingSpec:
    """Operations for R = F_q[Y]/(Y^m - 1)."""

    def __init__(self, f: FieldSpec, m: int):
        if m < 1:
            raise ValueError("m must be positive")
        if m % f.characteristic == 0:
            raise ValueError(
                f"m = {m} shares a factor with the characteristic {f.characteristic}"
            )
        self.field = f
        self.m = m
        self.cyclotomic_ok = _is_prime(m) and _mult_order(f.q, m) == m - 1
        self.zero = (0,) * m
        self.one = (1,) + (0,) * (m - 1)
        self.phi = (1,) * m if m > 1 else (1,)  # 1 + Y + ... + Y^(m-1)
        self.y = ((0, 1) + (0,) * (m - 2)) if m > 1 else (1,)
        self.zerophi = (0,) * (m - 1)  # zero of F_q[Y]/Phi_p
        p_in_f = 0
        for _ in range(m):
            p_in_f = f.add(p_in_f, 1)
        self.p_in_field = p_in_f  # m as an element of F_q (nonzero: gcd(m, char)=1)
        self._units = None
        self._norm_classes = None

    @property
    def q(self) -> int:
        return self.field.q

    # -- scalar ops ------------------------------------------------------

    def add(self, a, b):
        add = self.field._add
        return tuple(add[x][y] for x, y in zip(a, b))

    def sub(self, a, b):
        fld = self.field
        return tuple(fld.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        neg = self.field._neg
        return tuple(neg[x] for x in a)

    def scalar_mul(self, c: int, a):
        mul = self.field._mul
        return tuple(mul[c][x] for x in a)

    def mul(self, a, b):
        m = self.m
        mul = self.field._mul
        add = self.field._add
        out = [0] * m
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            row = mul[ai]
            for j, bj in enumerate(b):
                if bj == 0:
                    continue
                k = i + j
                if k >= m:
                    k -= m
                out[k] = add[out[k]][row[bj]]
        return tuple(out)

    def conj(self, a):
        """Y -> Y^(-1): coefficient of Y^i moves to Y^(m-i)."""
        m = self.m
        return (a[0],) + tuple(a[m - i] for i in range(1, m))

    def eval1(self, a) -> int:
        s = 0
        add = self.field._add
        for x in a:
            s = add[s][x]
        return s

    def shift(self, a, j: int):
        """Multiply by Y^j (cyclic coefficient shift)."""
        m = self.m
        j %= m
        return a[m - j:] + a[:m - j]

    # -- units -----------------------------------------------------------

    def is_unit(self, a) -> bool:
        g, _ = self._gcd_with_modulus(a)
        return len(g) == 1

    def inv(self, a):
        g, u = self._gcd_with_modulus(a)
        if len(g) != 1:
            raise ValueError(f"{self.poly_str(a)} is not a unit in {self}")
        c = self.field.inv(g[0])
        out = [0] * self.m
        for i, x in enumerate(u):
            out[i] = self.field.mul(c, x)
        return tuple(out)

    def _gcd_with_modulus(self, a):
        """Extended Euclid for (a, Y^m - 1): returns (gcd, u) with u*a = gcd mod (Y^m-1)."""
        fld = self.field
        mod = [fld.neg(1)] + [0] * (self.m - 1) + [1]  # Y^m - 1
        r0, r1 = mod, _trim(list(a))
        u0, u1 = [], [1]
        while r1:
            q, r = _poly_divmod(r0, r1, fld)
            r0, r1 = r1, r
            u0, u1 = u1, _poly_sub(u0, _poly_mul(q, u1, fld), fld)
        # u0 * a = r0 (mod Y^m - 1)
        if not r0:
            return [0], ()
        out = [0] * self.m
        for i, x in enumerate(u0):
            j = i % self.m
            out[j] = fld.add(out[j], x)
        return r0, tuple(out)

    def units(self):
        if self._units is None:
            self._units = tuple(a for a in self.elements() if self.is_unit(a))
        return self._units

    # -- CRT -------------------------------------------------------------

    def _require_cyclotomic(self, what: str):
        if not self.cyclotomic_ok:
            raise UnsupportedCase(
                f"{what} needs m prime with q primitive mod m; "
                f"Y^{self.m}-1 over F_{self.field.q} has a different factor pattern"
            )

    def mod_phi(self, a):
        """Residue of a mod Phi_p, as p-1 coefficients (Y^(p-1) = -(Phi_p - Y^(p-1)))."""
        # Phi_p = 1 + Y + ... + Y^(p-1), so Y^(p-1) = -(1 + Y + ... + Y^(p-2)).
        fld = self.field
        top = a[self.m - 1]
        if top == 0:
            return a[:-1]
        nt = fld.neg(top)
        return tuple(fld.add(a[i], nt) for i in range(self.m - 1))

    def crt_split(self, a) -> CrtPair:
        self._require_cyclotomic("crt_split")
        return CrtPair(self.eval1(a), self.mod_phi(a))

    def crt_combine(self, pair: CrtPair):
        self._require_cyclotomic("crt_combine")
        fld = self.field
        g = tuple(pair.evalphi) + (0,)
        # g + lam*Phi_p evaluates to g(1) + lam*p at Y=1; solve for lam.
        g1 = self.eval1(g)
        lam = fld.mul(fld.sub(pair.eval1, g1), fld.inv(self.p_in_field))
        return tuple(fld.add(g[i], lam) for i in range(self.m))

    def is_multiple_of_phi(self, a) -> bool:
        return all(x == a[0] for x in a)

    # -- arithmetic in the residue field F_q[Y]/Phi_p ---------------------
    # Components are tuples of p-1 coefficients, as in CrtPair.evalphi.

    def phi_component_sub(self, a, b):
        fld = self.field
        return tuple(fld.sub(x, y) for x, y in zip(a, b))

    def phi_component_mul(self, a, b):
        return self.mod_phi(self.mul(a + (0,), b + (0,)))

    def phi_component_inv(self, a):
        if not any(a):
            raise ZeroDivisionError("zero has no inverse in F_q[Y]/Phi_p")
        lifted = self.crt_combine(CrtPair(1, a))  # a unit of R
        return self.mod_phi(self.inv(lifted))

    # -- vectors ---------------------------------------------------------

    def hermitian_ip(self, xs, ys):
        acc = self.zero
        for x, y in zip(xs, ys):
            acc = self.add(acc, self.mul(x, self.conj(y)))
        return acc

    def elements(self):
        """All q^m elements in lexicographic order of coefficient tuples."""
        for idx in range(self.field.q ** self.m):
            yield self.element_from_index(idx)

    def element_from_index(self, idx: int):
        q = self.field.q
        out = [0] * self.m
        for i in range(self.m - 1, -1, -1):
            out[i] = idx % q
            idx //= q
        return tuple(out)

    def element_index(self, a) -> int:
        q = self.field.q
        idx = 0
        for x in a:
            idx = idx * q + x
        return idx

    def norm_classes(self):
        """Map t -> sorted list of elements with a*conj(a) = t.  Cached."""
        if self._norm_classes is None:
            classes: dict = {}
            for a in self.elements():
                classes.setdefault(self.mul(a, self.conj(a)), []).append(a)
            self._norm_classes = classes
        return self._norm_classes

    # -- rendering -------------------------------------------------------

    def poly_str(self, a) -> str:
        fld = self.field
        terms = []
        for i in range(self.m - 1, -1, -1):
            c = a[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(fld.element_str(c))
            else:
                ypow = "Y" if i == 1 else f"Y^{i}"
                terms.append(ypow if c == 1 else f"{fld.element_str(c)}*{ypow}")
        return " + ".join(terms) if terms else "0"

    def parse_poly(self, text: str):
        fld = self.field
        out = [0] * self.m
        t = text.strip()
        if t == "0":
            return tuple(out)
        for term in t.split("+"):
            term = term.strip().replace(" ", "")
            if not term:
                raise ValueError(f"empty term in {text!r}")
            if "Y" in term:
                coef_s, _, pow_s = term.partition("Y")
                coef_s = coef_s.rstrip("*")
                c = 1 if coef_s == "" else fld.parse_element(coef_s)
                if pow_s == "":
                    i = 1
                elif pow_s.startswith("^"):
                    i = int(pow_s[1:])
                else:
                    raise ValueError(f"bad power in term {term!r}")
            else:
                c, i = fld.parse_element(term), 0
            if not 0 <= i < self.m:
                raise ValueError(f"power Y^{i} out of range for m={self.m}")
            out[i] = fld.add(out[i], c)
        return tuple(out)

    def __repr__(self):
        return f"RingSpec(q={self.field.q}, m={self.m})"

    def __eq__(self, other):
        return (
            isinstance(other, RingSpec)
            and other.field.q == self.field.q
            and other.m == self.m
        )

    def __hash__(self):
        return hash(("RingSpec", self.field.q, self.m))


@lru_cache(maxsize=None)
def ring(q: int, m: int) -> RingSpec:
    return RingSpec(field(q), m)


# -- plain polynomial helpers over F_q (dense coefficient lists) ---------


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_sub(a, b, fld):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out[i] = fld.sub(x, y)
    return _trim(out)


def _poly_mul(a, b, fld):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = fld.add(out[i + j], fld.mul(x, y))
    return _trim(out)


def _poly_divmod(a, b, fld):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = fld.inv(b[-1])
    while len(a) >= len(b) and a:
        c = fld.mul(a[-1], inv_lead)
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] = fld.sub(a[d + i], fld.mul(c, y))
        _trim(a)
    return _trim(q), a


# -- inner-product solution streams ---------------------------------------


def enumerate_solutions(
    spec: RingSpec,
    n: int,
    target,
    budget: int = DEFAULT_ENUM_BUDGET,
    index_range: tuple[int, int] | None = None,
):
    """Yield all x in R^n with <x, x> = target, in lexicographic order.

    The candidate space has size q^(m*n); `index_range` restricts the
    scan to a half-open block of vector indices so disjoint blocks can
    be handled independently.  A scan larger than `budget` raises
    BudgetExceeded before any work is done.
    """
    total = spec.field.q ** (spec.m * n)
    lo, hi = (0, total) if index_range is None else index_range
    if not 0 <= lo <= hi <= total:
        raise ValueError(f"index range {index_range} outside [0, {total}]")
    if hi - lo > budget:
        raise BudgetExceeded(f"inner-product scan over R^{n}", hi - lo, budget)
    target = tuple(target)
    elem_count = spec.field.q ** spec.m
    elems = [spec.element_from_index(i) for i in range(elem_count)]
    norms = [spec.mul(e, spec.conj(e)) for e in elems]
    for vidx in range(lo, hi):
        digits = []
        r = vidx
        for _ in range(n):
            digits.append(r % elem_count)
            r //= elem_count
        digits.reverse()
        acc = spec.zero
        for d in digits:
            acc = spec.add(acc, norms[d])
        if acc == target:
            yield tuple(elems[d] for d in digits)


def partition_ranges(spec: RingSpec, n: int, parts: int):
    """Split the q^(m*n) vector-index space into `parts` contiguous blocks."""
    total = spec.field.q ** (spec.m * n)
    step, rem = divmod(total, parts)
    ranges = []
    lo = 0
    for i in range(parts):
        hi = lo + step + (1 if i < rem else 0)
        ranges.append((lo, hi))
        lo = hi
    return ranges
