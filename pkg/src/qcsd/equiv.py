"""Code equivalence, canonical fingerprints, and automorphism groups.

Equivalence here is monomial: a coordinate permutation combined with a
nonzero scaling of each coordinate (for binary codes this degenerates
to plain permutation equivalence).  The field automorphism of F_4 is
deliberately not part of the group.

The engine works on an incidence structure between "slots" and
low-weight codewords.  A slot is a pair (column, nonzero value); a
monomial map acts on slots by sending (j, v) to (sigma(j), lambda_j v),
so slot images within one column are tied together by value ratios.
Iterated partition refinement colors the slots; individualization and
backtracking resolve the remaining symmetry.  Every leaf candidate is
verified by remapping one code's basis into the other's row space, so
a positive answer is never wrong; negative answers are exact because
the search is exhaustive.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass
from itertools import product

import numpy as np

from .analysis import DEFAULT_WEIGHT_BUDGET, weight_enumerator
from .errors import BudgetExceeded, UnsupportedCase
from .gf import FieldSpec
from .qc import FieldCode, is_shift_invariant, rref

DEFAULT_NODE_BUDGET = 500000
DEFAULT_MAX_WORDS = 20000
_MATERIALIZE_LIMIT = 1 << 24


# -- codeword materialization ------------------------------------------------


def _collect_words_q2(code: FieldCode, wanted: set[int], cap: int):
    """All codewords of the listed weights, as symbol tuples."""
    n, k = code.n, code.k
    packed = []
    for r in code.rows:
        x = 0
        for j, v in enumerate(r):
            if v:
                x |= 1 << j
        packed.append(x)
    out = []
    t = min(k, 16)
    tab = [0]
    for g in packed[:t]:
        tab = tab + [x ^ g for x in tab]
    tab_np = np.array([[w] for w in tab], dtype=np.uint64) if n <= 64 else None
    rest = packed[t:]
    prefix = 0
    order = [0]
    for i in range(1, 1 << len(rest)):
        order.append((i & -i).bit_length() - 1)
    wanted_arr = sorted(wanted)
    for step, j in enumerate(order):
        if step:
            prefix ^= rest[j]
        if tab_np is not None:
            words = tab_np[:, 0] ^ np.uint64(prefix)
            wts = np.bitwise_count(words)
            mask = np.isin(wts, wanted_arr)
            for x in words[mask]:
                out.append(int(x))
        else:
            for x in tab:
                y = x ^ prefix
                if y.bit_count() in wanted:
                    out.append(y)
        if len(out) > cap:
            raise UnsupportedCase(
                f"more than {cap} low-weight codewords; equivalence undecided"
            )
    rows = []
    for x in out:
        if x:
            rows.append(tuple((x >> j) & 1 for j in range(n)))
    return rows


def _collect_words_prime(code: FieldCode, wanted: set[int], cap: int):
    q, n, k = code.field.q, code.n, code.k
    total = q**k
    G = np.array(code.rows, dtype=np.int64)
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    out = []
    for lo in range(0, total, 1 << 16):
        hi = min(lo + (1 << 16), total)
        idx = np.arange(lo, hi, dtype=np.int64)
        digits = (idx[:, None] // powers) % q
        words = (digits @ G) % q
        wts = np.count_nonzero(words, axis=1)
        mask = np.isin(wts, sorted(wanted))
        for row in words[mask]:
            if row.any():
                out.append(tuple(int(v) for v in row))
        if len(out) > cap:
            raise UnsupportedCase(
                f"more than {cap} low-weight codewords; equivalence undecided"
            )
    return out


def _collect_words_f4(code: FieldCode, wanted: set[int], cap: int):
    fld, n, k = code.field, code.n, code.k
    gens = []
    for row in code.rows:
        for s in (1, 2):
            rs = [fld.mul(s, v) for v in row]
            p0 = sum(1 << j for j, v in enumerate(rs) if v & 1)
            p1 = sum(1 << j for j, v in enumerate(rs) if v >> 1)
            gens.append((p0, p1))
    out = []
    state0 = state1 = 0
    for i in range(1, 1 << len(gens)):
        j = (i & -i).bit_length() - 1
        g0, g1 = gens[j]
        state0 ^= g0
        state1 ^= g1
        merged = state0 | state1
        if merged.bit_count() in wanted:
            out.append(
                tuple(
                    ((state0 >> c) & 1) | (((state1 >> c) & 1) << 1) for c in range(n)
                )
            )
            if len(out) > cap:
                raise UnsupportedCase(
                    f"more than {cap} low-weight codewords; equivalence undecided"
                )
    return out


def _collect_words(code: FieldCode, wanted: set[int], cap: int):
    q, k = code.field.q, code.k
    if q**k > _MATERIALIZE_LIMIT:
        raise BudgetExceeded(
            "codeword materialization for equivalence", q**k, _MATERIALIZE_LIMIT
        )
    if q == 2:
        return _collect_words_q2(code, wanted, cap)
    if q == 4:
        return _collect_words_f4(code, wanted, cap)
    return _collect_words_prime(code, wanted, cap)


def _select_strata(code: FieldCode, budget: int, max_words: int):
    """Weights of the strata used for refinement, smallest first, adding
    strata until they span the code (or words run out)."""
    w = weight_enumerator(code, budget)
    weights = [i for i in range(1, code.n + 1) if w.counts[i]]
    chosen: list[int] = []
    words_total = 0
    for wt in weights:
        if chosen and words_total + w.counts[wt] > max_words:
            break
        chosen.append(wt)
        words_total += w.counts[wt]
        if words_total >= code.k:
            rows = _collect_words(code, set(chosen), max_words)
            basis, _ = rref(code.field, code.n, rows)
            if len(basis) == code.k:
                return chosen, rows
    rows = _collect_words(code, set(chosen), max_words)
    return chosen, rows


# -- incidence structure -----------------------------------------------------


class _Structure:
    def __init__(self, code: FieldCode, strata_weights, words, succ_cols=None):
        fld: FieldSpec = code.field
        q, n = fld.q, code.n
        r = max(q - 1, 1)
        self.code = code
        self.n = n
        self.r = r
        self.nslots = n * r
        # slot id for (col j, value v >= 1) is j*r + (v-1)
        mates = []
        ratios = list(range(2, q))
        for s in range(self.nslots):
            j, vi = divmod(s, r)
            v = vi + 1
            mates.append(tuple(j * r + (fld.mul(rho, v) - 1) for rho in ratios))
        self.mates = mates
        if succ_cols is None:
            self.succ_mate = None
            self.pred_mate = None
            self.base_colors = [0] * self.nslots
        else:
            pred_cols = [0] * n
            for j, j2 in enumerate(succ_cols):
                pred_cols[j2] = j
            self.succ_mate = [
                succ_cols[s // r] * r + (s % r) for s in range(self.nslots)
            ]
            self.pred_mate = [
                pred_cols[s // r] * r + (s % r) for s in range(self.nslots)
            ]
            # block maps may scale a whole block only by a scalar that
            # preserves the inner product, i.e. with square one; color the
            # slots by the orbit of their value under those scalars
            square_one = [g for g in range(1, q) if fld.mul(g, g) == 1]
            orbit = {}
            for v in range(1, q):
                rep = min(fld.mul(g, v) for g in square_one)
                orbit[v] = rep
            self.base_colors = [orbit[(s % r) + 1] for s in range(self.nslots)]
        wt_rank = {wt: i for i, wt in enumerate(strata_weights)}
        self.word_slots: list[tuple] = []
        self.word_stratum: list[int] = []
        self.slot_words: list[list[int]] = [[] for _ in range(self.nslots)]
        for row in words:
            wt = sum(1 for v in row if v)
            slots = tuple(j * r + (v - 1) for j, v in enumerate(row) if v)
            wid = len(self.word_slots)
            self.word_slots.append(slots)
            self.word_stratum.append(wt_rank[wt])
            for s in slots:
                self.slot_words[s].append(wid)
        self.stratum_sizes = Counter(self.word_stratum)


def _refine(structs, colors_list):
    """Iterated joint recoloring; returns stable colors or None when the
    color class sizes of the two structures diverge."""
    pair = len(structs) == 2
    while True:
        if pair and Counter(colors_list[0]) != Counter(colors_list[1]):
            return None
        wsigs_list = []
        allw = set()
        for S, colors in zip(structs, colors_list):
            wsigs = [
                (S.word_stratum[w],) + tuple(sorted(colors[s] for s in S.word_slots[w]))
                for w in range(len(S.word_slots))
            ]
            wsigs_list.append(wsigs)
            allw.update(wsigs)
        wrank = {sig: i for i, sig in enumerate(sorted(allw))}
        sigs_list = []
        alls = set()
        for S, colors, wsigs in zip(structs, colors_list, wsigs_list):
            sigs = []
            for s in range(S.nslots):
                cyc = (
                    (colors[S.succ_mate[s]], colors[S.pred_mate[s]])
                    if S.succ_mate is not None
                    else ()
                )
                sigs.append(
                    (
                        colors[s],
                        tuple(colors[mate] for mate in S.mates[s]),
                        cyc,
                        tuple(sorted(wrank[wsigs[w]] for w in S.slot_words[s])),
                    )
                )
            sigs_list.append(sigs)
            alls.update(sigs)
        srank = {sig: i for i, sig in enumerate(sorted(alls))}
        new_list = [[srank[sig] for sig in sigs] for sigs in sigs_list]
        if all(
            len(set(new)) == len(set(old))
            for new, old in zip(new_list, colors_list)
        ):
            if pair and Counter(new_list[0]) != Counter(new_list[1]):
                return None
            return new_list
        colors_list = new_list


def _pin_closure(SA, SB, pins):
    """Expand pins through ratio mates and, in quasi-cyclic mode, along the
    cycle successor and predecessor; None on conflict or non-injectivity."""
    mapping: dict[int, int] = {}
    queue = list(pins)
    while queue:
        a, b = queue.pop()
        prev = mapping.get(a)
        if prev is not None:
            if prev != b:
                return None
            continue
        mapping[a] = b
        queue.extend(zip(SA.mates[a], SB.mates[b]))
        if SA.succ_mate is not None:
            queue.append((SA.succ_mate[a], SB.succ_mate[b]))
            queue.append((SA.pred_mate[a], SB.pred_mate[b]))
    if len(set(mapping.values())) != len(mapping):
        return None
    return mapping


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    perm: tuple | None = None  # one-line notation: column j of D1 lands on perm[j]
    scalars: tuple | None = None  # column j of D1 is scaled by scalars[j]

    def __bool__(self) -> bool:
        return self.equivalent


def apply_monomial(code: FieldCode, perm, scalars) -> FieldCode:
    fld, n = code.field, code.n
    rows = []
    for row in code.rows:
        new = [0] * n
        for j, v in enumerate(row):
            new[perm[j]] = fld.mul(scalars[j], v)
        rows.append(tuple(new))
    return FieldCode(fld, n, rows)


def _leaf_witness(SA, SB, cA, cB):
    """Read the unique candidate map off discrete colorings and verify it."""
    where_b = {}
    for s, c in enumerate(cB):
        where_b[c] = s
    n, r = SA.n, SA.r
    fld = SA.code.field
    perm = [0] * n
    scal = [1] * n
    for j in range(n):
        t = where_b.get(cA[j * r])
        if t is None:
            return None
        j2, vi = divmod(t, r)
        lam = vi + 1
        perm[j] = j2
        scal[j] = lam
        for v in range(2, fld.q):
            t2 = where_b.get(cA[j * r + (v - 1)])
            if t2 != j2 * r + (fld.mul(v, lam) - 1):
                return None
    if len(set(perm)) != n:
        return None
    mapped = apply_monomial(SA.code, perm, scal)
    if mapped.key() != SB.code.key():
        return None
    return EquivalenceResult(True, tuple(perm), tuple(scal))


def _find_map(SA, SB, pins, state):
    state["nodes"] += 1
    if state["nodes"] > state["budget"]:
        raise UnsupportedCase(
            "equivalence search exceeded its node budget; result undecided"
        )
    mapping = _pin_closure(SA, SB, pins)
    if mapping is None:
        return None
    keysA = [(c, 0) for c in SA.base_colors]
    keysB = [(c, 0) for c in SB.base_colors]
    for i, (a, b) in enumerate(sorted(mapping.items())):
        keysA[a] = (SA.base_colors[a], i + 1)
        keysB[b] = (SB.base_colors[b], i + 1)
    rank = {t: i for i, t in enumerate(sorted(set(keysA) | set(keysB)))}
    colorsA = [rank[t] for t in keysA]
    colorsB = [rank[t] for t in keysB]
    res = _refine([SA, SB], [colorsA, colorsB])
    if res is None:
        return None
    cA, cB = res
    if len(set(cA)) == SA.nslots:
        return _leaf_witness(SA, SB, cA, cB)
    classesA: dict[int, list] = {}
    for s, c in enumerate(cA):
        classesA.setdefault(c, []).append(s)
    color, slots = min(
        ((c, ss) for c, ss in classesA.items() if len(ss) > 1),
        key=lambda item: (len(item[1]), item[0]),
    )
    a = slots[0]
    candidates = sorted(s for s, c in enumerate(cB) if c == color)
    for b in candidates:
        res = _find_map(SA, SB, pins + [(a, b)], state)
        if res is not None:
            return res
    return None


def _succ_cols(n: int, qc_blocks) -> list:
    """Column successor for the cyclic block layout: position i*ell + j holds
    coefficient i of block j, so multiplying a block by the cycle generator
    sends it to position ((i+1) mod m)*ell + j."""
    m, ell = qc_blocks
    if m < 2 or m * ell != n:
        raise ValueError(f"block shape {qc_blocks} does not tile length {n}")
    return [((pos // ell + 1) % m) * ell + (pos % ell) for pos in range(n)]


def _build_structures(d1: FieldCode, d2: FieldCode, budget, max_words, succ=None):
    w1, rows1 = _select_strata(d1, budget, max_words)
    w2, rows2 = _select_strata(d2, budget, max_words)
    if w1 != w2:
        return None
    S1 = _Structure(d1, w1, rows1, succ_cols=succ)
    S2 = _Structure(d2, w2, rows2, succ_cols=succ)
    if S1.stratum_sizes != S2.stratum_sizes:
        return None
    return S1, S2


def are_equivalent(
    d1: FieldCode,
    d2: FieldCode,
    budget: int = DEFAULT_WEIGHT_BUDGET,
    max_words: int = DEFAULT_MAX_WORDS,
    node_budget: int = DEFAULT_NODE_BUDGET,
    qc_blocks: tuple | None = None,
) -> EquivalenceResult:
    """Exact monomial equivalence with a verified witness on success.

    With qc_blocks=(m, ell) the search is restricted to maps that permute
    the ell cyclic blocks, rotate within blocks, and scale whole blocks by
    square-one scalars; this is the structure-preserving equivalence used
    for deduplication of codes presented over the polynomial ring."""
    if d1.field.q != d2.field.q:
        raise ValueError("codes live over different fields")
    if d1.n != d2.n or d1.k != d2.k:
        return EquivalenceResult(False)
    if d1.k == 0:
        return EquivalenceResult(True, tuple(range(d1.n)), (1,) * d1.n)
    succ = _succ_cols(d1.n, qc_blocks) if qc_blocks is not None else None
    built = _build_structures(d1, d2, budget, max_words, succ=succ)
    if built is None:
        return EquivalenceResult(False)
    S1, S2 = built
    state = {"nodes": 0, "budget": node_budget}
    res = _find_map(S1, S2, [], state)
    return res if res is not None else EquivalenceResult(False)


# -- fingerprints ------------------------------------------------------------


@dataclass(frozen=True)
class CodeFingerprint:
    n: int
    k: int
    d: int
    enum_prefix: tuple  # ((i, A_i), ...) for the first few nonzero weights
    refinement_signature: str

    def key(self):
        return (self.n, self.k, self.d, self.enum_prefix, self.refinement_signature)


def fingerprint(
    code: FieldCode,
    budget: int = DEFAULT_WEIGHT_BUDGET,
    max_words: int = DEFAULT_MAX_WORDS,
) -> CodeFingerprint:
    """Deterministic invariant under column permutation and scaling."""
    if code.k == 0:
        raise ValueError("fingerprint needs at least one nonzero codeword")
    w = weight_enumerator(code, budget)
    nz = [(i, a) for i, a in enumerate(w.counts) if i > 0 and a]
    d = nz[0][0]
    prefix = tuple(nz[:4])
    weights, rows = _select_strata(code, budget, max_words)
    S = _Structure(code, weights, rows)
    colors = [0] * S.nslots
    (colors,) = _refine([S], [colors])
    trace = (
        code.n,
        code.k,
        code.field.q,
        tuple(weights),
        tuple(sorted(S.stratum_sizes.items())),
        tuple(sorted(Counter(colors).items())),
    )
    digest = hashlib.sha256(repr(trace).encode()).hexdigest()
    return CodeFingerprint(code.n, code.k, d, prefix, digest)


# -- automorphisms -----------------------------------------------------------


def _automorphism_gens(code: FieldCode, budget, max_words, node_budget):
    weights, rows = _select_strata(code, budget, max_words)
    S = _Structure(code, weights, rows)
    state = {"nodes": 0, "budget": node_budget}
    base: list[int] = []
    order = 1
    gens = []
    while True:
        pins = [(b, b) for b in base]
        mapping = _pin_closure(S, S, pins)
        colors = [0] * S.nslots
        for i, (a, b) in enumerate(sorted(mapping.items())):
            colors[a] = i + 1
        res = _refine([S], [colors])
        (colors,) = res
        classes: dict[int, list] = {}
        for s, c in enumerate(colors):
            classes.setdefault(c, []).append(s)
        nontrivial = [(c, ss) for c, ss in classes.items() if len(ss) > 1]
        if not nontrivial:
            break
        _, slots = min(nontrivial, key=lambda item: (len(item[1]), item[0]))
        b0 = slots[0]
        orbit = 1
        for c in slots[1:]:
            witness = _find_map(S, S, pins + [(b0, c)], state)
            if witness is not None:
                orbit += 1
                gens.append(witness)
        order *= orbit
        base.append(b0)
    return order, gens


def automorphism_order(
    code: FieldCode,
    max_n: int = 24,
    budget: int = DEFAULT_WEIGHT_BUDGET,
    max_words: int = DEFAULT_MAX_WORDS,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> int:
    """Order of the monomial automorphism group (permutations for q=2),
    by orbit-stabilizer over the refinement structure."""
    if code.n > max_n:
        raise BudgetExceeded("automorphism group search", code.n, max_n)
    if code.k == 0:
        raise ValueError("automorphism group of the zero code is everything")
    order, _ = _automorphism_gens(code, budget, max_words, node_budget)
    return order


def has_fpf_automorphism_order_p(
    code: FieldCode,
    p: int,
    budget: int = DEFAULT_WEIGHT_BUDGET,
    max_words: int = DEFAULT_MAX_WORDS,
    node_budget: int = DEFAULT_NODE_BUDGET,
    sylow_cap: int = 200000,
) -> bool:
    """Does the permutation part of the automorphism group contain a
    fixed-point-free element of order p?  (For p prime and p | n this is
    the same as the code sitting in a (n/p)-quasi-cyclic position.)"""
    n = code.n
    if n % p:
        raise ValueError(f"p = {p} must divide the length {n}")
    ell = n // p
    if is_shift_invariant(code, ell):
        return True
    if code.field.q != 2:
        raise UnsupportedCase(
            "fixed-point-free search beyond the shift test is implemented "
            "for binary codes only"
        )
    from sympy.combinatorics import Permutation, PermutationGroup

    order, gens = _automorphism_gens(code, budget, max_words, node_budget)
    if order % p:
        return False
    group = PermutationGroup([Permutation(list(g.perm)) for g in gens])
    syl = group.sylow_subgroup(p)
    if syl.order() > sylow_cap:
        raise UnsupportedCase(
            f"Sylow {p}-subgroup of order {syl.order()} too large to scan"
        )
    for el in syl.elements:
        if el.order() == p and not any(
            el(i) == i for i in range(n)
        ):
            return True
    return False
