"""Seeded random objects for tests, the self-test and counterexample search.

Everything takes a `random.Random` so runs are reproducible.
"""

from __future__ import annotations

import random

from .complexes import ChainComplex, ChainMap, chain_map_module, direct_sum, disc, zero_complex
from .exact_linalg import ExactMatrix, RingSpec
from .injclass import evaluation_envelope
from .modules import (FPModule, ModMorphism, hom_module, identity, is_iso, kernel,
                      map_from_blocks)


def random_element(R: RingSpec, rng: random.Random):
    if R.is_product:
        return tuple(random_element(r, rng) for r in R.parts)
    if R.kind == "Integers":
        return R.from_int(rng.randint(-6, 6))
    return rng.choice(R.elements())


def random_module(R: RingSpec, rng: random.Random, max_gens: int = 2, max_rels: int = 2) -> FPModule:
    """Generators plus a few random relations; often not diagonal."""
    g = rng.randint(0, max_gens)
    r = rng.randint(0, max_rels) if g else 0
    rows = [[random_element(R, rng) for _ in range(r)] for _ in range(g)]
    return FPModule(R, g, ExactMatrix(R, rows, g, r))


def random_vector(M: FPModule, rng: random.Random):
    return [random_element(M.ring, rng) for _ in range(M.num_generators)]


def random_hom(M: FPModule, N: FPModule, rng: random.Random) -> ModMorphism:
    H = hom_module(M, N)
    return H.decode(random_vector(H.module, rng))


def random_complex(R: RingSpec, rng: random.Random, lo: int = -2, hi: int = 0,
                   max_gens: int = 2, bounded_above_at=0) -> ChainComplex:
    """A random complex on [lo, hi], zero outside, built bottom up so d d = 0."""
    objs = {i: random_module(R, rng, max_gens) for i in range(lo, hi + 1)}
    diffs = {}
    for i in range(lo + 1, hi + 1):
        if i - 1 in diffs:
            Kmod, inc = kernel(diffs[i - 1])
        else:
            Kmod, inc = objs[i - 1], None
        h = random_hom(objs[i], Kmod, rng)
        diffs[i] = h if inc is None else inc @ h
    return ChainComplex(R, objs, diffs, (lo, hi), bounded_above_at, check=True)


def random_chain_map(X: ChainComplex, Y: ChainComplex, rng: random.Random) -> ChainMap:
    Z, decode = chain_map_module(X, Y)
    return decode(random_vector(Z, rng))


def random_member(cls, rng: random.Random, max_gens: int = 2) -> FPModule:
    """A member of the class: the envelope of a random module."""
    return evaluation_envelope(random_module(cls.ring, rng, max_gens), cls)[0]


def random_automorphism(M: FPModule, rng: random.Random, tries: int = 8) -> ModMorphism:
    """A random invertible endomorphism (the identity if none turns up)."""
    for _ in range(tries):
        g = random_hom(M, M, rng)
        if is_iso(g)[0]:
            return g
    return identity(M)


def conjugate_complex(X: ChainComplex, rng: random.Random):
    """(X', g: X -> X') with X' the complex X transported along random
    degreewise automorphisms g_n."""
    g = {n: random_automorphism(X.obj(n), rng) for n in X.degrees()}
    ginv = {n: is_iso(g[n])[1] for n in X.degrees()}
    diffs = {n: g[n - 1] @ X.d(n) @ ginv[n] for n in range(X.lo + 1, X.hi + 1)}
    Y = ChainComplex(X.ring, {n: X.obj(n) for n in X.degrees()}, diffs, (X.lo, X.hi),
                     X.bounded_above_at, X.exhaustive, check=False)
    return Y, ChainMap(X, Y, g, check=False)


def random_disc_sum(cls, rng: random.Random, lo: int = -2, hi: int = 0, count: int = 2):
    """(+) D_i(W_i) with W_i random members, as (complex, [(i, W_i)])."""
    discs = [(rng.randint(lo + 1, hi), random_member(cls, rng)) for _ in range(count)]
    discs = [(i, W) for i, W in discs if not W.is_zero()]
    if not discs:
        return zero_complex(cls.ring, (lo, hi), hi), []
    parts = [disc(i, W, hi).with_window(lo, hi) for i, W in discs]
    S = direct_sum(parts)
    S.bounded_above_at = hi
    return S, discs


def twisted_projection(B: ChainComplex, K: ChainComplex, rng: random.Random):
    """p: E -> B with E_n = B_n + K_n, differential [[d_B, 0], [D, d_K]] where
    D = d_K t - t d_B for a random degreewise t: B -> K."""
    S = direct_sum([B, K])
    t = {n: random_hom(B.obj(n), K.obj(n), rng) for n in S.degrees()}
    diffs = {}
    for n in range(S.lo + 1, S.hi + 1):
        twist = K.d(n) @ t[n] - t[n - 1] @ B.d(n)
        diffs[n] = map_from_blocks(S.sums[n], S.sums[n - 1], [[B.d(n), None], [twist, K.d(n)]])
    E = ChainComplex(B.ring, {n: S.obj(n) for n in S.degrees()}, diffs, (S.lo, S.hi),
                     S.bounded_above_at, True, check=True)
    E.sums = S.sums
    p = ChainMap(E, B, {n: S.sums[n].projections[0] for n in S.degrees()}, check=True)
    return E, p


def certified_square(cls, mode: str, rng: random.Random, lo: int = -1, hi: int = 0):
    """A commutative square whose left and right maps have the kinds the
    lifting mode asks for, by construction.

    The left map is the cylinder inclusion of a random map (a split
    injection and a homotopy equivalence).  The right map is a twisted
    projection whose kernel is a conjugated sum of discs ("cof-vs-trivfib")
    or the envelope complex of a random complex ("trivcof-vs-fib").
    """
    from .bounded_model import LiftingProblem, reschains_envelope
    from .complexes import cylinder

    R = cls.ring
    A = random_complex(R, rng, lo, hi)
    N = random_complex(R, rng, lo, hi)
    i = cylinder(random_chain_map(A, N, rng)).j
    B = random_complex(R, rng, lo, hi)
    if mode == "cof-vs-trivfib":
        K, _ = random_disc_sum(cls, rng, lo - 1, hi)
        K, _ = conjugate_complex(K, rng)
    else:
        K = reschains_envelope(random_complex(R, rng, lo - 1, hi), cls)[0]
    E, p = twisted_projection(B, K, rng)
    u = random_chain_map(i.target, E, rng)
    return LiftingProblem(i, p, u @ i, p @ u)


def trivial_fibrant_complex(cls, rng: random.Random, lo: int = -3, hi: int = 0, count: int = 3):
    """A fibrant I-trivial complex hidden behind random automorphisms, with
    the discs it was built from."""
    S, discs = random_disc_sum(cls, rng, lo, hi, count)
    X, _ = conjugate_complex(S, rng)
    return X, discs
