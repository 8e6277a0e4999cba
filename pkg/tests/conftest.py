"""Shared helpers: random witnesses and random self-dual codes over R."""

import functools
import random

from qcsd.buildup import extend_i, extend_ii, norm_minus_one_elements, seed
from qcsd.ring import RingSpec, ring


@functools.lru_cache(maxsize=None)
def seeds_for(q: int, m: int):
    return tuple(seed(ring(q, m)))


@functools.lru_cache(maxsize=None)
def pairs_for(q: int, m: int):
    return tuple(alpha_beta_pairs(ring(q, m)))


def random_element(sp: RingSpec, rng: random.Random):
    return sp.element_from_index(rng.randrange(sp.q**sp.m))


def random_norm_minus_one_vector(sp: RingSpec, ell: int, rng: random.Random):
    """Random x in R^ell with <x, x> = -1, by resampling the tail and
    solving the first coordinate through the norm-class table."""
    minus1 = sp.neg(sp.one)
    classes = sp.norm_classes()
    while True:
        tail = [random_element(sp, rng) for _ in range(ell - 1)]
        acc = sp.zero
        for e in tail:
            acc = sp.add(acc, sp.mul(e, sp.conj(e)))
        need = sp.sub(minus1, acc)
        heads = classes.get(need)
        if heads:
            return tuple([rng.choice(heads)] + tail)


def random_extension_i(base, rng: random.Random):
    """One random valid branch-i witness applied to base."""
    sp = base.spec
    c = rng.choice(norm_minus_one_elements(sp))
    x = random_norm_minus_one_vector(sp, base.ell, rng)
    return extend_i(base, c, x)


def alpha_beta_pairs(sp: RingSpec):
    """All (alpha, beta) with alpha*conj(alpha) + beta*conj(beta) = -1 and
    alpha*conj(beta) = conj(alpha)*beta."""
    minus1 = sp.neg(sp.one)
    classes = sp.norm_classes()
    pairs = []
    for i in range(sp.q**sp.m):
        alpha = sp.element_from_index(i)
        need = sp.sub(minus1, sp.mul(alpha, sp.conj(alpha)))
        for beta in classes.get(need, ()):
            if sp.mul(alpha, sp.conj(beta)) == sp.mul(sp.conj(alpha), beta):
                pairs.append((alpha, beta))
    return pairs


def random_extension_ii(base, pairs, rng: random.Random):
    """One random valid branch-ii witness applied to base."""
    sp = base.spec
    alpha, beta = rng.choice(pairs)
    x1 = random_norm_minus_one_vector(sp, base.ell, rng)
    while True:
        x2 = random_norm_minus_one_vector(sp, base.ell, rng)
        if sp.hermitian_ip(x1, x2) == sp.zero:
            return extend_ii(base, alpha, beta, x1, x2)


def random_self_dual(q: int, m: int, target_ell: int, rng: random.Random):
    """A random self-dual code over F_q[Y]/(Y^m - 1) of the target length,
    built by random extension steps from a random seed."""
    sp = ring(q, m)
    seeds = seeds_for(q, m)
    code = rng.choice(seeds)
    if sp.field.residue_class == "3-mod-4":
        pairs = pairs_for(q, m)
        while code.ell < target_ell:
            code = random_extension_ii(code, pairs, rng)
    else:
        while code.ell < target_ell:
            code = random_extension_i(code, rng)
    if code.ell != target_ell:
        raise ValueError(
            f"cannot reach length {target_ell} from the length-{code.ell} seed"
        )
    return code
