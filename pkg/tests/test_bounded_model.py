import random
import warnings

import pytest
from hypothesis import given, strategies as st

from brute import Finite, image_set, kernel_set
from relhom.bounded_model import (MODES, LiftingPreconditionError, LiftingProblem,
                                  decompose_trivial_fibrant, factor_cof_trivfib, factor_trivcof_fib,
                                  fibrant_replacement, identity_of, is_cofibration,
                                  is_degreewise_I_mono, is_fibrant, is_fibration,
                                  is_trivial_fibration, reschains_envelope, solve_lifting,
                                  solve_lifting_linear)
from relhom.complexes import (ChainComplex, ChainMap, concentrated, cone_of_complex, disc, homology,
                              is_I_we, is_k_I_we, zero_chain_map, zero_complex)
from relhom.generators import (certified_square, random_chain_map, random_complex,
                               trivial_fibrant_complex)
from relhom.injclass import InjectiveClass, class_from_primes, is_member, spec_primes
from relhom.modules import FPModule, ModMorphism, describe, is_isomorphic
from rings import F2T2, Z4, Z6

R4 = FPModule.cyclic(Z4, 0)
Z2 = FPModule.cyclic(Z4, 2)
cls4 = InjectiveClass(Z4, [R4])


def brute_homology_order(X, i):
    Fi = Finite(X.obj(i))
    cycles = kernel_set(X.d(i), Fi, Finite(X.obj(i - 1)))
    bounds = image_set(X.d(i + 1), Finite(X.obj(i + 1)), Fi)
    return len(cycles) // len(bounds)


def test_cofibration_examples():
    X = random_complex(Z4, random.Random(1), -1, 0)
    assert is_cofibration(zero_chain_map(zero_complex(Z4, (X.lo, X.hi), 0), X), cls4)
    # Z/4 -> Z/2 below the top degree of Ch<=0
    src = ChainComplex(Z4, {-1: R4}, {}, (-1, 0), 0)
    tgt = ChainComplex(Z4, {-1: Z2}, {}, (-1, 0), 0)
    f = ChainMap(src, tgt, {-1: ModMorphism(R4, Z2, [[1]])})
    assert not is_cofibration(f, cls4)
    assert not is_degreewise_I_mono(f, cls4)
    everything = InjectiveClass.everything(Z4)
    g = ChainMap(tgt, src, {-1: ModMorphism(Z2, R4, [[2]])})
    assert not is_cofibration(g, everything)


def test_fibration_examples():
    X = concentrated(R4, 0, 0)
    assert is_fibration(zero_chain_map(X, zero_complex(Z4, (0, 0), 0)), cls4)
    assert is_fibration(identity_of(X), cls4)
    Y = concentrated(Z2, 0, 0)
    assert not is_fibration(ChainMap(X, Y, {0: ModMorphism(R4, Z2, [[1]])}), cls4)


def test_envelope_examples():
    I, m = reschains_envelope(zero_complex(Z4), cls4)
    assert I.is_zero()
    I, m = reschains_envelope(concentrated(Z2, 0), cls4)
    assert describe(I.obj(0)) == "R"


def resolution_oracle_orders(depth):
    """Brute homology orders of Z/2 -> (Z/4 --2--> Z/4 --2--> ...): the
    periodic complex forced by Z/4 being the only essential extension of Z/2."""
    objs = {-k: R4 for k in range(depth)}
    diffs = {-k: [[2]] for k in range(depth - 1)}
    P = ChainComplex(Z4, objs, diffs, (-depth + 1, 0), 0, exhaustive=False, check=True,
                     known=(False, True))
    return {i: brute_homology_order(P, i) for i in range(-depth + 2, 1)}


def test_resolution_of_z2_matches_oracle():
    RX, j = fibrant_replacement(concentrated(Z2, 0, 0), cls4, 4)
    assert describe(homology(RX, 0)) == "R/(2)"
    assert homology(RX, -1).is_zero() and homology(RX, -2).is_zero()
    oracle = resolution_oracle_orders(4)
    assert oracle == {-2: 1, -1: 1, 0: 2}
    for i, n in oracle.items():
        assert brute_homology_order(RX, i) == n
    assert all(is_member(RX.obj(i), cls4) for i in RX.degrees())


def test_replacement_of_fibrant_complex():
    X = concentrated(R4, 0, 0)
    RX, j = fibrant_replacement(X, cls4, 3)
    assert is_fibrant(RX, cls4) and is_I_we(j, cls4)


def test_replacement_can_vanish():
    cls3 = InjectiveClass(Z6, [FPModule.cyclic(Z6, 3)])
    X = concentrated(FPModule.cyclic(Z6, 2), 0, 0)
    rep = fibrant_replacement(X, cls3, 3)
    assert rep.complex.is_zero() and rep.map.is_zero()
    assert is_I_we(rep.map, cls3)


def test_factorization_examples():
    X = random_complex(Z4, random.Random(5), -1, 0)
    for fac in (factor_cof_trivfib, factor_trivcof_fib):
        res = fac(identity_of(X), cls4)
        assert res.second @ res.first == identity_of(X)
        assert res.certified["first"] and res.certified["second"]
    # X -> 0 factored as trivial cofibration then fibration gives a replacement of X
    Y = concentrated(Z2, 0, 0)
    res = factor_trivcof_fib(zero_chain_map(Y, zero_complex(Z4, (0, 0), 0)), cls4, depth=5)
    assert is_fibrant(res.mid, cls4)
    rep = fibrant_replacement(Y, cls4, 5)
    for i in range(-2, 1):
        assert is_isomorphic(homology(res.mid, i), homology(rep.complex, i))


def test_lifting_with_identities():
    rng = random.Random(2)
    X = random_complex(Z4, rng, -1, 0)
    E = random_complex(Z4, rng, -1, 0)
    u = random_chain_map(X, E, rng)
    prob = LiftingProblem(identity_of(X), zero_chain_map(E, zero_complex(Z4, (-1, 0), 0)), u,
                          zero_chain_map(X, zero_complex(Z4, (-1, 0), 0)))
    h = solve_lifting_linear(prob)
    assert h == u
    prob = LiftingProblem(zero_chain_map(zero_complex(Z4, (-1, 0), 0), X), identity_of(E),
                          zero_chain_map(zero_complex(Z4, (-1, 0), 0), E), u)
    assert solve_lifting_linear(prob) == u


def test_lifting_rejects_bad_input():
    with pytest.raises(ValueError):
        solve_lifting(certified_square(cls4, MODES[0], random.Random(0)), cls4, "sideways")


def test_decomposition_examples():
    D = disc(0, R4, 0)
    dec = decompose_trivial_fibrant(D, cls4)
    assert [(i, describe(W)) for i, W in dec] == [(0, "R")]
    assert len(decompose_trivial_fibrant(zero_complex(Z4, (0, 0), 0), cls4)) == 0
    X = random_complex(Z4, random.Random(4), -1, 0)
    RX = fibrant_replacement(X, cls4, 6)
    if RX.exhaustive:
        C, _ = cone_of_complex(RX.complex)
        dec = decompose_trivial_fibrant(C, cls4)
        assert dec.from_discs @ dec.to_discs == identity_of(C)


def prime_classes(R):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        primes = spec_primes(R)
        return [class_from_primes(R, primes)] + [class_from_primes(R, [P]) for P in primes]


CLASSES = [(R, c) for R in (Z4, Z6, F2T2) for c in prime_classes(R)] + \
    [(R, InjectiveClass.everything(R)) for R in (Z4, Z6, F2T2)]
classes = st.sampled_from(CLASSES)
seeds = st.integers(0, 10 ** 6)


@given(classes, seeds)
def test_factorizations_certified(rc, seed):
    R, cls = rc
    rng = random.Random(seed)
    X, Y = random_complex(R, rng, -1, 0), random_complex(R, rng, -1, 0)
    f = random_chain_map(X, Y, rng)
    a = factor_cof_trivfib(f, cls)
    assert a.second @ a.first == f
    assert is_cofibration(a.first, cls) and is_trivial_fibration(a.second, cls)
    b = factor_trivcof_fib(f, cls)
    assert b.second @ b.first == f
    assert is_cofibration(b.first, cls) and is_I_we(b.first, cls) and is_fibration(b.second, cls)


@given(classes, seeds, st.sampled_from(MODES))
def test_lifting_both_routes(rc, seed, mode):
    R, cls = rc
    prob = certified_square(cls, mode, random.Random(seed))
    h = solve_lifting(prob, cls, mode)
    assert prob.check(h)
    h2 = solve_lifting_linear(prob)
    assert h2 is not None and prob.check(h2)


@given(classes, seeds)
def test_replacement_is_trivial_cofibration(rc, seed):
    R, cls = rc
    X = random_complex(R, random.Random(seed), -1, 0)
    N = 5
    RX, j = fibrant_replacement(X, cls, N)
    assert is_fibrant(RX, cls)
    assert is_cofibration(j, cls)
    for k in range(-N + 2, 1):
        if k - 1 >= RX.lo or RX.known_below():
            assert is_k_I_we(j, k, cls)


@given(classes, seeds)
def test_disc_decomposition(rc, seed):
    R, cls = rc
    X, discs = trivial_fibrant_complex(cls, random.Random(seed))
    dec = decompose_trivial_fibrant(X, cls)
    assert dec.from_discs @ dec.to_discs == identity_of(X)
    assert dec.to_discs @ dec.from_discs == identity_of(dec.complex)
    # discs in the same degree come back merged into one summand
    from relhom.modules import biproduct
    for i in {i for i, _ in discs} | {i for i, _ in dec}:
        want = biproduct([W for j, W in discs if j == i], R).module
        got = biproduct([W for j, W in dec if j == i], R).module
        assert is_isomorphic(want, got)


def test_precondition_error_for_non_fibration():
    src = concentrated(R4, 0, 0)
    tgt = concentrated(Z2, 0, 0)
    p = ChainMap(src, tgt, {0: ModMorphism(R4, Z2, [[1]])})
    prob = LiftingProblem(identity_of(src), p, identity_of(src), p)
    with pytest.raises(LiftingPreconditionError):
        solve_lifting(prob, cls4, "cof-vs-trivfib")
