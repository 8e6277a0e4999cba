"""Field-level linear codes and the correspondence with codes over R.

A length-n code over F_q with n = m*ell corresponds to a code of length
ell over R = F_q[Y]/(Y^m - 1) when it is invariant under the coordinate
shift by ell.  The correspondence reads coordinate i*ell + j as the
Y^i coefficient of ring coordinate j, so shifting by ell is exactly
multiplication by Y.
"""

from __future__ import annotations

from .gf import FieldSpec, field


def rref(fld: FieldSpec, n: int, rows):
    """Reduced row echelon form over F_q.

    Returns (basis_rows, pivot_columns); zero rows are dropped.  The
    result is canonical for the row space.
    """
    if fld.q == 2:
        masks = []
        for r in rows:
            x = 0
            for j, v in enumerate(r):
                if v:
                    x |= 1 << j
            masks.append(x)
        basis, pivots = _rref_gf2(masks)
        out = tuple(
            tuple((x >> j) & 1 for j in range(n)) for x in basis
        )
        return out, tuple(pivots)

    work = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(n):
        pr = None
        for i in range(rank, len(work)):
            if work[i][col] != 0:
                pr = i
                break
        if pr is None:
            continue
        work[rank], work[pr] = work[pr], work[rank]
        inv = fld.inv(work[rank][col])
        work[rank] = [fld.mul(inv, v) for v in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                c = work[i][col]
                work[i] = [
                    fld.sub(a, fld.mul(c, b)) for a, b in zip(work[i], work[rank])
                ]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return tuple(tuple(r) for r in work[:rank]), tuple(pivots)


def _rref_gf2(masks):
    """RREF of GF(2) rows given as bit masks (bit j = column j)."""
    basis = []
    pivots = []
    for x in masks:
        for p, b in zip(pivots, basis):
            if (x >> p) & 1:
                x ^= b
        if x == 0:
            continue
        p = (x & -x).bit_length() - 1
        for i in range(len(basis)):
            if (basis[i] >> p) & 1:
                basis[i] ^= x
        # keep rows ordered by pivot
        at = 0
        while at < len(pivots) and pivots[at] < p:
            at += 1
        pivots.insert(at, p)
        basis.insert(at, x)
    return basis, pivots


class FieldCode:
    """A linear [n, k] code over F_q, stored by its canonical RREF basis.

    Two FieldCode objects compare equal exactly when they have the same
    row space.  `qc_index` optionally records the shift step ell under
    which the code is known to be invariant.
    """

    def __init__(self, fld: FieldSpec, n: int, rows, qc_index: int | None = None):
        if n < 1:
            raise ValueError("length must be positive")
        rows = [tuple(r) for r in rows]
        for r in rows:
            if len(r) != n:
                raise ValueError(f"row of length {len(r)} in a code of length {n}")
            for v in r:
                if not 0 <= v < fld.q:
                    raise ValueError(f"symbol {v} out of range for F_{fld.q}")
        self.field = fld
        self.n = n
        self.rows, self.pivots = rref(fld, n, rows)
        self.k = len(self.rows)
        self.qc_index = qc_index

    def contains(self, word) -> bool:
        fld = self.field
        w = list(word)
        for piv, row in zip(self.pivots, self.rows):
            c = w[piv]
            if c != 0:
                for j in range(self.n):
                    w[j] = fld.sub(w[j], fld.mul(c, row[j]))
        return all(v == 0 for v in w)

    def contains_all(self, words) -> bool:
        return all(self.contains(w) for w in words)

    def key(self) -> bytes:
        """Canonical bytes for the row space (dedup key)."""
        return bytes([self.field.q, self.n % 256, self.n // 256]) + b"".join(
            bytes(r) for r in self.rows
        )

    def __eq__(self, other):
        return (
            isinstance(other, FieldCode)
            and other.field.q == self.field.q
            and other.n == self.n
            and other.rows == self.rows
        )

    def __hash__(self):
        return hash((self.field.q, self.n, self.rows))

    def __repr__(self):
        return f"FieldCode(q={self.field.q}, n={self.n}, k={self.k})"


def is_euclidean_self_dual(code: FieldCode) -> bool:
    """dim = n/2 and all generator pairs orthogonal under the plain dot
    product (no conjugation; over F_4 this is the Euclidean form)."""
    if code.n % 2 or code.k != code.n // 2:
        return False
    fld = code.field
    rows = code.rows
    for i in range(len(rows)):
        ri = rows[i]
        for j in range(i, len(rows)):
            rj = rows[j]
            acc = 0
            for a, b in zip(ri, rj):
                acc = fld.add(acc, fld.mul(a, b))
            if acc:
                return False
    return True


def rotate_right(row, step: int):
    step %= len(row)
    return row[-step:] + row[:-step] if step else tuple(row)


def is_shift_invariant(code: FieldCode, step: int) -> bool:
    """True if shifting every coordinate forward by `step` preserves the code."""
    return all(code.contains(rotate_right(r, step)) for r in code.rows)


def expand(rc) -> FieldCode:
    """Image of a ring code as an m*ell field code.

    Each generator row r contributes the field rows of r, Y*r, ...,
    Y^(m-1)*r; field position i*ell + j carries the Y^i coefficient of
    ring coordinate j.
    """
    spec = rc.spec
    m, ell = spec.m, rc.ell
    n = m * ell
    frows = []
    for row in rc.rows:
        shifted = row
        for _ in range(m):
            out = [0] * n
            for j, entry in enumerate(shifted):
                for i in range(m):
                    out[i * ell + j] = entry[i]
            frows.append(tuple(out))
            shifted = tuple(spec.shift(e, 1) for e in shifted)
    return FieldCode(spec.field, n, frows, qc_index=ell)


def collapse(code: FieldCode, m: int, ell: int):
    """Inverse of expand: read a shift-invariant field code as a code over R.

    Raises ValueError when the length does not factor or the code is not
    invariant under the shift by ell.
    """
    from .rcode import RingCode
    from .ring import ring

    if code.n != m * ell:
        raise ValueError(f"length {code.n} is not m*ell = {m}*{ell}")
    if not is_shift_invariant(code, ell):
        raise ValueError(f"code is not invariant under the shift by {ell}")
    spec = ring(code.field.q, m)
    rrows = []
    for row in code.rows:
        rrows.append(tuple(tuple(row[i * ell + j] for i in range(m)) for j in range(ell)))
    return RingCode(spec, ell, rrows)


def gray_image(code: FieldCode) -> FieldCode:
    """Binary image of an F_4 code under a + b*w -> (a XOR b, a).

    Symbol s written as x*w + y*w^2 maps to the bit pair (x, y); the
    image word is all x parts followed by all y parts, so an [n, k]
    F_4 code maps to a binary [2n, 2k] code (as an F_2 space).
    """
    if code.field.q != 4:
        raise ValueError("gray_image is defined for F_4 codes only")
    f2 = field(2)
    f4 = code.field
    out = []
    for row in code.rows:
        for scaled in (row, tuple(f4.mul(2, v) for v in row)):
            x = tuple(((v & 1) ^ (v >> 1)) for v in scaled)
            y = tuple((v & 1) for v in scaled)
            out.append(x + y)
    return FieldCode(f2, 2 * code.n, out)
