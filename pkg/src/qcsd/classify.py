"""Classification of self-dual codes presented over the cyclic polynomial
ring: an exhaustive building-up search with structure-preserving
deduplication, plus an independent enumeration that splits the ring through
its idempotents and rebuilds every self-dual code from field components.

How the search stays complete and affordable
--------------------------------------------
A self-dual code of length ell over the ring extends to length ell + 2 by
adjoining two columns and one row for a witness pair (c, x) with
c*conj(c) = -1 and <x, x> = -1, and conversely every self-dual code of the
longer length arises this way.  Iterating from the length-2 seeds therefore
visits every class, provided no reachable base class is lost at an
intermediate level.  Three exact reductions shrink the witness space; each
is realized by a map that only permutes blocks, rotates within blocks, or
scales blocks by square-one scalars on the expanded code, so it never
merges classes that the block-preserving equivalence keeps apart:

* scaling the second new column by a unit u with u*conj(u) = 1 replaces the
  witness (c, x) by (c*u, x); the units of shape (square-one scalar)*Y^s
  act on the expansion as block rotations, so c matters only up to that
  orbit;
* a base presented as g(C), for g block-preserving with square-one scalars,
  extends exactly as C does with witness g^{-1}(x), up to the same kind of
  map on the longer code; this is why intermediate levels are deduplicated
  by block-preserving equivalence and only by it;
* within a fixed coset x + C of the base code, the extension depends only
  on the value t = <r, x_0 + r> - <r, x_0> of the pairing functional, so x
  ranges over coset representatives and, per coset, over the finitely many
  functional offsets t compatible with <x, x> = -1.

Cosets are enumerated through the idempotent splitting: a self-dual base
splits into an evaluation-at-one component over F_q and a residue component
over the field F_q[Y]/Phi, and a coset of the base is a pair of field-level
cosets, one per component.

The independent oracle enumerate_via_crt walks the complete sets of
Euclidean self-dual component codes over F_q and Hermitian self-dual
component codes over the residue field (neighbor search certified complete
against closed-form counts), recombines every pair through the idempotents,
and deduplicates the expansions; agreement with classify is a test target.
"""

from dataclasses import dataclass, field as dc_field
import itertools
import json
import os
import random

from .errors import BudgetExceeded, UnsupportedCase
from .ring import RingSpec, ring, CrtPair
from .qc import FieldCode
from .rcode import RingCode
from .buildup import ExtensionWitness, extend_i, norm_minus_one_elements
from .equiv import (
    CodeFingerprint,
    are_equivalent,
    fingerprint,
)

DEFAULT_CANDIDATE_BUDGET = 5_000_000


# -- field arithmetic for the two idempotent factors -------------------------


class _EvalFactor:
    """The evaluation-at-one factor: the base field with trivial conjugation."""

    def __init__(self, sp: RingSpec):
        self.fld = sp.field
        self.size = sp.q
        self.zero = 0
        self.one = 1
        self.elements_list = list(range(sp.q))

    def add(self, a, b):
        return self.fld.add(a, b)

    def sub(self, a, b):
        return self.fld.sub(a, b)

    def mul(self, a, b):
        return self.fld.mul(a, b)

    def inv(self, a):
        return self.fld.inv(a)

    def neg(self, a):
        return self.fld.neg(a)

    def conj(self, a):
        return a


class _PhiFactor:
    """The residue factor modulo the cyclotomic polynomial, a field of size
    q^(m-1), with the conjugation induced by inverting the cycle generator."""

    def __init__(self, sp: RingSpec):
        sp._require_cyclotomic("residue factor arithmetic")
        self.sp = sp
        self.size = sp.q ** (sp.m - 1)
        self.zero = sp.zerophi
        self.one = (1,) + (0,) * (sp.m - 2)
        self.elements_list = [
            tuple(t) for t in itertools.product(range(sp.q), repeat=sp.m - 1)
        ]

    def add(self, a, b):
        fld = self.sp.field
        return tuple(fld.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return self.sp.phi_component_sub(a, b)

    def mul(self, a, b):
        return self.sp.phi_component_mul(a, b)

    def inv(self, a):
        return self.sp.phi_component_inv(a)

    def neg(self, a):
        fld = self.sp.field
        return tuple(fld.neg(x) for x in a)

    def conj(self, a):
        return self.sp.mod_phi(self.sp.conj(a + (0,)))


def _f_ip(F, u, v):
    """Hermitian inner product over a factor field."""
    acc = F.zero
    for x, y in zip(u, v):
        acc = F.add(acc, F.mul(x, F.conj(y)))
    return acc


def _f_rref(F, n, rows):
    """Canonical reduced row echelon form over a factor field."""
    work = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(n):
        piv = None
        for i in range(rank, len(work)):
            if work[i][col] != F.zero:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        scale = F.inv(work[rank][col])
        work[rank] = [F.mul(scale, x) for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col] != F.zero:
                lam = work[i][col]
                work[i] = [
                    F.sub(x, F.mul(lam, y)) for x, y in zip(work[i], work[rank])
                ]
        pivots.append(col)
        rank += 1
    return [tuple(r) for r in work[:rank]], pivots


def _f_nullspace(F, n, rows):
    """Basis of the right kernel of the matrix whose rows are given (no
    conjugation applied here; callers conjugate their rows first)."""
    basis, pivots = _f_rref(F, n, rows)
    free = [j for j in range(n) if j not in pivots]
    out = []
    for f in free:
        v = [F.zero] * n
        v[f] = F.one
        for i, p in enumerate(pivots):
            v[p] = F.neg(basis[i][f])
        out.append(tuple(v))
    return out


# -- complete sets of self-dual component codes -------------------------------


def euclidean_self_dual_count(q: int, n: int) -> int:
    """Closed-form count of Euclidean self-dual codes of even length n over
    F_q, used as a completeness certificate for the component search.
    Implemented for q = 2."""
    if q != 2:
        raise UnsupportedCase(
            f"no completeness certificate for Euclidean self-dual codes over F_{q}"
        )
    if n % 2:
        return 0
    out = 1
    for i in range(1, n // 2):
        out *= 2**i + 1
    return out


def hermitian_self_dual_count(r: int, n: int) -> int:
    """Closed-form count of Hermitian self-dual codes of even length n over
    F_{r^2} (conjugation x -> x^r), the completeness certificate for the
    residue component search."""
    if n % 2:
        return 0
    out = 1
    for i in range(1, n // 2 + 1):
        out *= r ** (2 * i - 1) + 1
    return out


def _self_dual_start(F, n):
    u = None
    for a in F.elements_list:
        if F.add(F.one, F.mul(a, F.conj(a))) == F.zero:
            u = a
            break
    if u is None:
        raise UnsupportedCase(
            "no length-2 self-dual code over this component field"
        )
    rows = []
    for i in range(n // 2):
        row = [F.zero] * n
        row[2 * i] = F.one
        row[2 * i + 1] = u
        rows.append(tuple(row))
    basis, _ = _f_rref(F, n, rows)
    return tuple(basis)


def _sd_neighbors(F, n, code):
    """All self-dual codes meeting the given one in codimension <= 1."""
    k = len(code)
    out = []
    # normalized functionals on the code: first nonzero entry is one
    for i0 in range(k):
        for tail in itertools.product(F.elements_list, repeat=k - 1 - i0):
            f = [F.zero] * k
            f[i0] = F.one
            for idx, val in enumerate(tail):
                f[i0 + 1 + idx] = val
            # kernel of f: rows r_i - f_i * r_{i0} for i != i0
            sub = []
            for i in range(k):
                if i == i0:
                    continue
                if f[i] == F.zero:
                    sub.append(code[i])
                else:
                    sub.append(
                        tuple(
                            F.sub(x, F.mul(f[i], y))
                            for x, y in zip(code[i], code[i0])
                        )
                    )
            # dual of the subcode: right kernel of the conjugated rows
            conj_rows = [tuple(F.conj(x) for x in r) for r in sub]
            null = _f_nullspace(F, n, conj_rows)
            # two completion directions past the subcode
            cur, _ = _f_rref(F, n, sub)
            comp = []
            for v in null:
                trial, _ = _f_rref(F, n, list(cur) + [v])
                if len(trial) > len(cur):
                    comp.append(v)
                    cur = trial
                    if len(comp) == 2:
                        break
            p, qv = comp
            cands = [(F.one, b) for b in F.elements_list] + [(F.zero, F.one)]
            for a, b in cands:
                w = tuple(
                    F.add(F.mul(a, x), F.mul(b, y)) for x, y in zip(p, qv)
                )
                if _f_ip(F, w, w) != F.zero:
                    continue
                basis, piv = _f_rref(F, n, list(sub) + [w])
                if len(basis) == k:
                    out.append(tuple(basis))
    return out


def _all_self_dual(F, n, expected=None):
    """All self-dual codes over the factor field by neighbor search, checked
    against the closed-form count when one is available."""
    start = _self_dual_start(F, n)
    seen = {start}
    stack = [start]
    out = []
    while stack:
        code = stack.pop()
        out.append(code)
        for nb in _sd_neighbors(F, n, code):
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if expected is not None and len(out) != expected:
        raise RuntimeError(
            f"component search found {len(out)} self-dual codes, "
            f"the closed-form count says {expected}"
        )
    return sorted(out)


def component_self_dual_codes(spec: RingSpec, ell: int):
    """Complete lists of (Euclidean, Hermitian) self-dual component codes of
    length ell for the two idempotent factors of the ring.  Restricted to
    the residue fields with four and sixteen elements over the binary field;
    the search is a desk-scale oracle, not a general engine."""
    if not spec.cyclotomic_ok:
        raise UnsupportedCase(
            "idempotent splitting needs m prime with q primitive modulo m"
        )
    if (spec.q, spec.m) not in ((2, 3), (2, 5)):
        raise UnsupportedCase(
            "residue component enumeration is implemented for the residue "
            f"fields F_4 and F_16 over F_2 only; got q = {spec.q}, m = {spec.m}"
        )
    if ell % 2 or ell < 2:
        raise ValueError(f"self-dual codes need positive even length, got {ell}")
    ev = _EvalFactor(spec)
    ph = _PhiFactor(spec)
    r = spec.q ** ((spec.m - 1) // 2)
    c1 = _all_self_dual(ev, ell, expected=euclidean_self_dual_count(spec.q, ell))
    c2 = _all_self_dual(ph, ell, expected=hermitian_self_dual_count(r, ell))
    return c1, c2


def enumerate_via_crt(spec: RingSpec, ell: int, progress=None):
    """Every self-dual code over R of length ell, built by combining each
    Euclidean self-dual component with each Hermitian self-dual component
    through the idempotents, then deduplicated by equivalence of the
    expansions.  Returns one ring code per equivalence class."""
    c1s, c2s = component_self_dual_codes(spec, ell)
    ph = _PhiFactor(spec)
    reps: list[RingCode] = []
    buckets: dict = {}
    total = len(c1s) * len(c2s)
    done = 0
    for c1 in c1s:
        for c2 in c2s:
            rows = []
            for u in c1:
                rows.append(
                    tuple(spec.crt_combine(CrtPair(x, ph.zero)) for x in u)
                )
            for v in c2:
                rows.append(tuple(spec.crt_combine(CrtPair(0, x)) for x in v))
            cand = RingCode(spec, ell, rows)
            if not cand.is_self_dual():
                raise RuntimeError(
                    "component recombination produced a non-self-dual code"
                )
            exp = cand.expansion()
            fp = fingerprint(exp)
            bucket = buckets.setdefault(fp.key(), [])
            if not any(are_equivalent(exp, known.expansion()) for known in bucket):
                bucket.append(cand)
                reps.append(cand)
            done += 1
            if progress is not None and done % 500 == 0:
                progress(f"recombined {done}/{total}, {len(reps)} classes")
    return reps


# -- the classification driver ------------------------------------------------


@dataclass(frozen=True)
class ClassifiedCode:
    """One class representative with everything needed to audit it."""

    code: RingCode
    expansion: FieldCode
    fingerprint: CodeFingerprint
    trail: tuple  # replayable witness steps, seed first

    def trail_lines(self):
        out = []
        for step in self.trail:
            if step["kind"] == "seed":
                out.append(f"seed; c = {list(step['c'])}")
            else:
                out.append(f"extend i; c = {list(step['c'])}; x = {step['x']}")
        return out


@dataclass
class RunStats:
    candidates: int = 0
    exact_duplicates: int = 0
    equivalence_checks: int = 0
    ring_classes_per_level: dict = dc_field(default_factory=dict)


@dataclass
class ClassificationRun:
    spec: RingSpec
    target_ell: int
    classes: tuple  # of ClassifiedCode, pairwise inequivalent expansions
    stats: RunStats
    complete: bool


def replay_trail(spec: RingSpec, trail) -> RingCode:
    """Rebuild a classified code from its witness trail."""
    code = None
    for step in trail:
        if step["kind"] == "seed":
            code = RingCode(spec, 2, [(spec.one, tuple(step["c"]))])
        elif step["kind"] == "extend_i":
            x = [tuple(e) for e in step["x"]]
            code = extend_i(code, tuple(step["c"]), x)
        else:
            raise ValueError(f"unknown trail step kind {step['kind']!r}")
    if code is None:
        raise ValueError("empty witness trail")
    return code


def _square_one_block_units(sp: RingSpec):
    """Units of shape gamma * Y^s with gamma^2 = 1; scaling a coordinate by
    one of these only rotates and sign-flips that block of the expansion."""
    fld = sp.field
    out = []
    for g in range(1, sp.q):
        if fld.mul(g, g) != 1:
            continue
        for s in range(sp.m):
            out.append(sp.scalar_mul(g, sp.shift(sp.one, s)))
    return out


def _norm_minus_one_orbit_reps(sp: RingSpec):
    """Representatives of {c : c*conj(c) = -1} up to multiplication by the
    block-rotation units; one representative per orbit, in lexicographic
    order of first appearance."""
    group = _square_one_block_units(sp)
    seen = set()
    reps = []
    for c in norm_minus_one_elements(sp):
        if c in seen:
            continue
        reps.append(c)
        for u in group:
            seen.add(sp.mul(c, u))
    return reps


def _component_pivots(base: RingCode):
    """Pivot columns of the two component codes of a self-dual base."""
    sp = base.spec
    ev = _EvalFactor(sp)
    ph = _PhiFactor(sp)
    rows1 = [tuple(sp.eval1(a) for a in row) for row in base.rows]
    rows2 = [tuple(sp.mod_phi(a) for a in row) for row in base.rows]
    b1, p1 = _f_rref(ev, base.ell, rows1)
    b2, p2 = _f_rref(ph, base.ell, rows2)
    k = base.ell // 2
    if len(b1) != k or len(b2) != k:
        raise ValueError("base code components are not half-dimensional")
    return ev, ph, p1, p2


def _trace_fiber(ph: _PhiFactor, target):
    """All residue elements z with z + conj(z) = target."""
    return [z for z in ph.elements_list if ph.add(z, ph.conj(z)) == target]


def _witness_count(base: RingCode) -> int:
    k = base.ell // 2
    sp = base.spec
    return (sp.q**k) * (sp.q ** (sp.m - 1)) ** k


def _iter_extension_witnesses(base: RingCode, c_reps, lo: int, hi: int):
    """Extension witnesses for coset indices [lo, hi).

    Complete per base class: x runs over one representative per coset of
    the base code (component-wise free-coordinate assignments), and within
    a coset over one x per attainable pairing offset t with <x, x> = -1.
    """
    sp = base.spec
    fld = sp.field
    ell = base.ell
    k = ell // 2
    ev, ph, p1, p2 = _component_pivots(base)
    free1 = [j for j in range(ell) if j not in p1]
    free2 = [j for j in range(ell) if j not in p2]
    minus1 = sp.neg(sp.one)
    qq = sp.q
    ss = ph.size
    fibers: dict = {}
    for idx in range(lo, hi):
        i2 = idx % (ss**k)
        i1 = idx // (ss**k)
        w1 = []
        for _ in range(k):
            w1.append(i1 % qq)
            i1 //= qq
        w1.reverse()
        w2 = []
        for _ in range(k):
            w2.append(ph.elements_list[i2 % ss])
            i2 //= ss
        w2.reverse()
        comp1 = [0] * ell
        comp2 = [ph.zero] * ell
        for pos, val in zip(free1, w1):
            comp1[pos] = val
        for pos, val in zip(free2, w2):
            comp2[pos] = val
        x0 = tuple(
            sp.crt_combine(CrtPair(a, b)) for a, b in zip(comp1, comp2)
        )
        nu = sp.hermitian_ip(x0, x0)
        tau = sp.sub(minus1, nu)
        tau1 = sp.eval1(tau)
        tauphi = sp.mod_phi(tau)
        psi = [sp.hermitian_ip(r, x0) for r in base.rows]
        t1s = [sp.eval1(t) for t in psi]
        tps = [sp.mod_phi(t) for t in psi]
        im1_full = any(v != 0 for v in t1s)
        imp_full = any(v != ph.zero for v in tps)
        # evaluation component of the trace condition: 2*t1 = tau1
        if qq % 2 == 0:
            if tau1 != 0:
                continue
            t1_list = list(range(qq)) if im1_full else [0]
        else:
            t1 = fld.mul(tau1, fld.inv(2 % qq))
            if t1 != 0 and not im1_full:
                continue
            t1_list = [t1]
        # residue component: z + conj(z) = tauphi within the attainable image
        if imp_full:
            if tauphi not in fibers:
                fibers[tauphi] = _trace_fiber(ph, tauphi)
            tp_list = fibers[tauphi]
            if not tp_list:
                continue
        else:
            if tauphi != ph.zero:
                continue
            tp_list = [ph.zero]
        for t1 in t1_list:
            # particular solution a with sum a_i * t1s_i = t1
            a = [0] * len(base.rows)
            if t1 != 0:
                i0 = next(i for i, v in enumerate(t1s) if v != 0)
                a[i0] = fld.mul(t1, fld.inv(t1s[i0]))
            for tp in tp_list:
                b = [ph.zero] * len(base.rows)
                if tp != ph.zero:
                    i0 = next(i for i, v in enumerate(tps) if v != ph.zero)
                    b[i0] = ph.mul(tp, ph.inv(tps[i0]))
                x = list(x0)
                for lam1, lam2, row in zip(a, b, base.rows):
                    if lam1 == 0 and lam2 == ph.zero:
                        continue
                    lam = sp.crt_combine(CrtPair(lam1, lam2))
                    for j in range(ell):
                        x[j] = sp.add(x[j], sp.mul(lam, row[j]))
                x = tuple(x)
                if sp.hermitian_ip(x, x) != minus1:
                    raise RuntimeError("witness construction lost <x, x> = -1")
                for c in c_reps:
                    yield ExtensionWitness("i", base, c=c, x1=x)


def _seed_candidates(spec: RingSpec):
    for c in norm_minus_one_elements(spec):
        code = RingCode(spec, 2, [(spec.one, c)])
        trail = ({"kind": "seed", "c": list(c)},)
        yield code, trail


def _constructive_witnesses(base: RingCode, c_reps, samples: int, rng):
    """Non-exhaustive witness sampling for rings outside the classification
    hypotheses that still support the two-column extension."""
    sp = base.spec
    minus1 = sp.neg(sp.one)
    found = 0
    attempts = 0
    while found < samples and attempts < samples * 200:
        attempts += 1
        x = tuple(
            tuple(rng.randrange(sp.q) for _ in range(sp.m))
            for _ in range(base.ell)
        )
        if sp.hermitian_ip(x, x) != minus1:
            continue
        found += 1
        for c in c_reps:
            yield ExtensionWitness("i", base, c=c, x1=x)


def _candidate_chunk(args):
    """Worker task: materialize one chunk of extension candidates with the
    invariants the coordinator needs for deduplication."""
    q, m, ell, base_rows, c_reps, lo, hi = args
    sp = ring(q, m)
    base = RingCode(sp, ell, base_rows)
    out = []
    for wit in _iter_extension_witnesses(base, list(c_reps), lo, hi):
        ext = wit.apply()
        exp = ext.expansion()
        step = {"kind": "extend_i", "c": list(wit.c), "x": [list(e) for e in wit.x1]}
        out.append((ext.rows, step, exp.key(), fingerprint(exp)))
    return out


class _Checkpoint:
    """Append-only witness log; completed levels can be replayed."""

    def __init__(self, path):
        self.path = path

    def append(self, record):
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record) + "\n")
            fh.flush()

    def load(self):
        records = []
        if os.path.exists(self.path):
            with open(self.path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        records.append(json.loads(line))
        return records


def _resume_levels(spec, target_ell, ckpt: _Checkpoint, stats: RunStats):
    """Rebuild completed levels from a checkpoint by replaying trails."""
    records = ckpt.load()
    header = [r for r in records if r.get("event") == "run"]
    if header and (
        header[0]["q"] != spec.q
        or header[0]["m"] != spec.m
    ):
        raise ValueError("checkpoint belongs to a different ring")
    done_levels = {r["ell"]: r["count"] for r in records if r.get("event") == "level"}
    pending: dict[int, list] = {}
    for r in records:
        if r.get("event") == "class" and r["ell"] in done_levels:
            pending.setdefault(r["ell"], []).append(r["trail"])
    levels: dict[int, list] = {}
    for ell in sorted(done_levels):
        if ell > target_ell:
            continue
        reps = []
        for trail in pending.get(ell, []):
            code = replay_trail(spec, tuple(trail))
            exp = code.expansion()
            reps.append(
                ClassifiedCode(code, exp, fingerprint(exp), tuple(trail))
            )
        if len(reps) != done_levels[ell]:
            raise ValueError(
                f"checkpoint level {ell} replays {len(reps)} classes, "
                f"recorded {done_levels[ell]}"
            )
        levels[ell] = reps
        stats.ring_classes_per_level[ell] = len(reps)
    return levels


def classify(
    spec: RingSpec,
    target_ell: int,
    constructive: bool = False,
    constructive_samples: int = 400,
    rng_seed: int = 20260814,
    candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
    checkpoint_path: str | None = None,
    resume: bool = False,
    workers: int = 1,
    progress=None,
) -> ClassificationRun:
    """All equivalence classes of self-dual codes over R of length
    target_ell, by extending every class at each intermediate length with
    every witness that can produce a new class, then deduplicating
    expansions.  Exhaustive when the ring satisfies the classification
    hypotheses (char 2 or q = 1 mod 4; m prime with q primitive mod m);
    pass constructive=True to run a sampled, non-exhaustive search instead
    of refusing when only the exhaustiveness hypotheses fail."""
    if target_ell < 2 or target_ell % 2:
        raise ValueError(f"classification targets positive even lengths, got {target_ell}")
    exhaustive = (
        spec.field.residue_class in ("char-2", "1-mod-4") and spec.cyclotomic_ok
    )
    if not exhaustive:
        if spec.field.residue_class == "3-mod-4":
            raise UnsupportedCase(
                f"classification by two-column extensions needs char 2 or "
                f"q = 1 mod 4; q = {spec.q} is 3 mod 4"
            )
        if not constructive:
            raise UnsupportedCase(
                "exhaustive classification needs m prime with q primitive "
                f"modulo m; (q, m) = ({spec.q}, {spec.m}) fails that, pass "
                "constructive=True for a non-exhaustive construction run"
            )
    rng = random.Random(rng_seed)
    stats = RunStats()
    ckpt = _Checkpoint(checkpoint_path) if checkpoint_path else None
    levels: dict[int, list] = {}
    if ckpt and resume:
        levels = _resume_levels(spec, target_ell, ckpt, stats)
    if ckpt and not levels:
        ckpt.append(
            {"event": "run", "q": spec.q, "m": spec.m, "target_ell": target_ell}
        )
    c_reps = _norm_minus_one_orbit_reps(spec)
    pool = None
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        pool = ProcessPoolExecutor(max_workers=workers)
    try:
        start_ell = 2
        done = sorted(e for e in levels if e <= target_ell)
        if done:
            start_ell = done[-1] + 2
        for ell in range(start_ell, target_ell + 1, 2):
            if ell == 2:
                cands = (
                    (code, trail, code.expansion()) for code, trail in _seed_candidates(spec)
                )
                reps = _dedup_level(spec, ell, cands, stats, candidate_budget, progress)
            elif exhaustive:
                reps = _level_step(
                    spec,
                    ell,
                    levels[ell - 2],
                    c_reps,
                    stats,
                    candidate_budget,
                    pool,
                    workers,
                    progress,
                )
            else:
                reps = _level_step_constructive(
                    spec,
                    ell,
                    levels[ell - 2],
                    c_reps,
                    stats,
                    candidate_budget,
                    constructive_samples,
                    rng,
                    progress,
                )
            levels[ell] = reps
            stats.ring_classes_per_level[ell] = len(reps)
            if ckpt:
                for cc in reps:
                    ckpt.append(
                        {
                            "event": "class",
                            "ell": ell,
                            "trail": list(cc.trail),
                            "fingerprint": cc.fingerprint.refinement_signature,
                        }
                    )
                ckpt.append({"event": "level", "ell": ell, "count": len(reps)})
            if progress is not None:
                progress(
                    f"length {ell}: {len(reps)} ring classes "
                    f"({stats.candidates} candidates so far)"
                )
    finally:
        if pool is not None:
            pool.shutdown()
    # final pass: collapse the structure-preserving classes into classes of
    # the expanded codes, which is the equivalence the counts are stated in
    final = []
    buckets: dict = {}
    for cc in levels[target_ell]:
        bucket = buckets.setdefault(cc.fingerprint.key(), [])
        hit = False
        for known in bucket:
            stats.equivalence_checks += 1
            if are_equivalent(cc.expansion, known.expansion):
                hit = True
                break
        if not hit:
            bucket.append(cc)
            final.append(cc)
    return ClassificationRun(
        spec=spec,
        target_ell=target_ell,
        classes=tuple(final),
        stats=stats,
        complete=exhaustive,
    )


def _dedup_level(spec, ell, cands, stats, candidate_budget, progress):
    """Stream candidates into structure-preserving equivalence classes."""
    seen_keys = set()
    buckets: dict = {}
    reps: list[ClassifiedCode] = []
    for item in cands:
        stats.candidates += 1
        if stats.candidates > candidate_budget:
            raise BudgetExceeded(
                "classification candidates", stats.candidates, candidate_budget
            )
        code, trail, exp = item[0], item[1], item[2]
        key = item[3] if len(item) > 3 else exp.key()
        if key in seen_keys:
            stats.exact_duplicates += 1
            continue
        seen_keys.add(key)
        fp = item[4] if len(item) > 4 else fingerprint(exp)
        bucket = buckets.setdefault(fp.key(), [])
        hit = False
        for known in bucket:
            stats.equivalence_checks += 1
            if are_equivalent(
                exp, known.expansion, qc_blocks=(spec.m, ell)
            ):
                hit = True
                break
        if not hit:
            cc = ClassifiedCode(code, exp, fp, trail)
            bucket.append(cc)
            reps.append(cc)
        if progress is not None and stats.candidates % 5000 == 0:
            progress(
                f"length {ell}: {stats.candidates} candidates, "
                f"{len(reps)} ring classes"
            )
    return reps


def _level_step(
    spec, ell, bases, c_reps, stats, candidate_budget, pool, workers, progress
):
    def generate():
        for base_cc in bases:
            base = base_cc.code
            total = _witness_count(base)
            if pool is None:
                chunks = [(0, total)]
            else:
                step = max(1, -(-total // (workers * 4)))
                chunks = [
                    (lo, min(lo + step, total)) for lo in range(0, total, step)
                ]
            if pool is None:
                for lo, hi in chunks:
                    for wit in _iter_extension_witnesses(base, c_reps, lo, hi):
                        ext = wit.apply()
                        step_rec = {
                            "kind": "extend_i",
                            "c": list(wit.c),
                            "x": [list(e) for e in wit.x1],
                        }
                        yield ext, base_cc.trail + (step_rec,), ext.expansion()
            else:
                args = [
                    (spec.q, spec.m, base.ell, base.rows, tuple(c_reps), lo, hi)
                    for lo, hi in chunks
                ]
                for chunk in pool.map(_candidate_chunk, args):
                    for rows, step_rec, key, fp in chunk:
                        ext = RingCode(spec, ell, rows)
                        yield (
                            ext,
                            base_cc.trail + (step_rec,),
                            ext.expansion(),
                            key,
                            fp,
                        )

    return _dedup_level(spec, ell, generate(), stats, candidate_budget, progress)


def _level_step_constructive(
    spec, ell, bases, c_reps, stats, candidate_budget, samples, rng, progress
):
    def generate():
        for base_cc in bases:
            for wit in _constructive_witnesses(base_cc.code, c_reps, samples, rng):
                ext = wit.apply()
                step_rec = {
                    "kind": "extend_i",
                    "c": list(wit.c),
                    "x": [list(e) for e in wit.x1],
                }
                yield ext, base_cc.trail + (step_rec,), ext.expansion()

    return _dedup_level(spec, ell, generate(), stats, candidate_budget, progress)


# -- reporting ----------------------------------------------------------------


@dataclass(frozen=True)
class ClassReport:
    index: int
    n: int
    k: int
    d: int
    weight_family: str | None
    beta: int | None
    divisibility_ok: bool
    aut_order: int | None

    def to_dict(self):
        return {
            "index": self.index,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "weight_family": self.weight_family,
            "beta": self.beta,
            "divisibility_ok": self.divisibility_ok,
            "aut_order": self.aut_order,
        }


@dataclass(frozen=True)
class FilterReport:
    rows: tuple
    by_distance: tuple  # sorted (d, class count)
    max_distance: int | None
    extremal_count: int

    def to_dict(self):
        return {
            "classes": [r.to_dict() for r in self.rows],
            "by_distance": [list(t) for t in self.by_distance],
            "max_distance": self.max_distance,
            "extremal_count": self.extremal_count,
        }

    def summary_lines(self):
        out = [
            f"{len(self.rows)} classes; distance profile: "
            + ", ".join(f"d={d}: {c}" for d, c in self.by_distance)
        ]
        if self.max_distance is not None:
            out.append(
                f"highest distance {self.max_distance} achieved by "
                f"{self.extremal_count} class(es)"
            )
        return out


def filter_report(run: ClassificationRun, aut_max_n: int = 24) -> FilterReport:
    """Per-class parameters, weight-family match, divisibility check, and the
    automorphism group order where the length stays within budget."""
    from .analysis import (
        divisibility_check,
        match_template,
        weight_enumerator,
    )
    from .equiv import automorphism_order

    rows = []
    dist: dict[int, int] = {}
    for i, cc in enumerate(run.classes):
        exp = cc.expansion
        w = weight_enumerator(exp)
        d = next(j for j, a in enumerate(w.counts) if j > 0 and a)
        matches = match_template(w)
        family = beta = None
        if matches:
            best = next((m for m in matches if m.in_listed_range), matches[0])
            family, beta = best.family, best.beta
        div_ok = divisibility_check(w, run.spec.m)
        aut = automorphism_order(exp) if exp.n <= aut_max_n else None
        rows.append(
            ClassReport(i, exp.n, exp.k, d, family, beta, div_ok, aut)
        )
        dist[d] = dist.get(d, 0) + 1
    by_distance = tuple(sorted(dist.items()))
    max_d = max(dist) if dist else None
    extremal = dist.get(max_d, 0) if max_d is not None else 0
    return FilterReport(tuple(rows), by_distance, max_d, extremal)
