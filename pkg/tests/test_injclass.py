import random
import warnings

import pytest
from hypothesis import given, strategies as st

from brute import Finite, all_homs, images_to_matrix
from oracle_checks import random_oracle_morphism
from relhom.complexes import ChainMap, concentrated, identity_map as chain_id, zero_complex
from relhom.exact_linalg import IntegersMod
from relhom.injclass import (InjectiveClass, NotAnIMono, class_from_primes, evaluation_envelope,
                             extend_along_imono, identity_map, induce_class_along_ring_map,
                             is_I_mono, is_member, make_ideal, quotient_map, spec_primes,
                             we_criterion_annihilator)
from relhom.modules import FPModule, ModMorphism, describe, identity, is_isomorphic, zero_map
from rings import F2T2, Z4, Z6

R4 = FPModule.cyclic(Z4, 0)
Z2 = FPModule.cyclic(Z4, 2)
quotient = ModMorphism(R4, Z2, [[1]])
inc = ModMorphism(Z2, R4, [[2]])


def test_i_mono_examples():
    cls4 = InjectiveClass(Z4, [R4])
    cls2 = InjectiveClass(Z4, [Z2])
    assert is_I_mono(identity(Z2), cls4)
    assert is_I_mono(quotient, cls2)
    assert not is_I_mono(quotient, cls4)


def test_envelope_examples():
    cls4 = InjectiveClass(Z4, [R4])
    P, e = evaluation_envelope(Z2, cls4)
    assert is_isomorphic(P, R4) and is_I_mono(e, cls4)
    P, e = evaluation_envelope(FPModule.zero(Z4), cls4)
    assert P.is_zero()
    P, e = evaluation_envelope(R4, InjectiveClass(Z4, [Z2]))
    assert is_isomorphic(P, Z2) and e == quotient


def test_membership_examples():
    cls4 = InjectiveClass(Z4, [R4])
    assert is_member(R4, cls4)
    assert not is_member(Z2, cls4)
    assert is_member(FPModule.zero(Z4), cls4)


def test_extend_along_imono_examples():
    cls4 = InjectiveClass(Z4, [R4])
    assert extend_along_imono(identity(R4), identity(R4), cls4) == identity(R4)
    h = extend_along_imono(inc, inc, cls4)
    assert h @ inc == inc and h.matrix[0, 0] in (1, 3)
    assert extend_along_imono(inc, zero_map(Z2, R4), cls4).is_zero()
    with pytest.raises(NotAnIMono):
        extend_along_imono(quotient, identity(R4), cls4)


def test_class_from_primes_examples():
    P2, P3 = spec_primes(Z6)
    cls = class_from_primes(Z6, [P2, P3])
    assert sorted(describe(W) for W in cls.generators) == ["R/(2)", "R/(3)"]
    with pytest.warns(UserWarning):
        empty = class_from_primes(Z6, [])
    assert empty.is_degenerate
    (P,) = spec_primes(Z4)
    assert is_isomorphic(class_from_primes(Z4, [P]).generators[0], R4)


def test_annihilator_criterion_examples():
    X = concentrated(Z2, 0)
    f = ChainMap(zero_complex(Z4), X, {})
    assert we_criterion_annihilator(chain_id(X), [make_ideal(Z4, 2)])
    assert not we_criterion_annihilator(f, [make_ideal(Z4, 2)])
    assert we_criterion_annihilator(f, [])


def test_induced_classes():
    Z2r = IntegersMod(2)
    phi = quotient_map(Z4, Z2r)
    base = InjectiveClass(Z2r, [FPModule.cyclic(Z2r, 0)])
    induced = induce_class_along_ring_map(phi, base)
    assert [describe(W) for W in induced.generators] == ["R/(2)"]
    cls = InjectiveClass(Z4, [R4])
    same = induce_class_along_ring_map(identity_map(Z4), cls)
    assert [describe(W) for W in same.generators] == ["R"]
    everything = induce_class_along_ring_map(phi, InjectiveClass.everything(Z2r))
    # Z/2 = r(l(Z/2)) is a member; Z/4 is not (its unit is not split)
    assert is_member(Z2, everything)
    assert not is_member(R4, everything)


def brute_is_I_mono(f, W):
    """Every map source -> W extends along f, by enumeration."""
    tgtW = Finite(W)
    R = f.ring
    ext = set()
    for imgs in all_homs(f.target, W, tgtW):
        g = ModMorphism(f.target, W, images_to_matrix(R, imgs, W.num_generators), check=False)
        ext.add(tuple(tgtW.cid(col) for col in zip(*(g @ f).matrix.rows)) if f.source.num_generators else ())
    for imgs in all_homs(f.source, W, tgtW):
        key = tuple(tgtW.cid(v) for v in imgs)
        if key not in ext:
            return False
    return True


@given(st.sampled_from([Z4, Z6, F2T2]), st.integers(0, 10 ** 6))
def test_i_mono_against_enumeration(R, seed):
    rng = random.Random(seed)
    f, _, _ = random_oracle_morphism(R, rng, max_gens=2)
    W = FPModule.cyclic(R, rng.choice(R.elements()))
    assert is_I_mono(f, InjectiveClass(R, [W])) == brute_is_I_mono(f, W)


@given(st.sampled_from([Z4, Z6, F2T2]), st.integers(0, 10 ** 6))
def test_envelope_is_i_mono_into_member(R, seed):
    rng = random.Random(seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        primes = [P for P in spec_primes(R) if rng.random() < 0.7]
        cls = class_from_primes(R, primes)
    M = random_oracle_morphism(R, rng, max_gens=2)[0].source
    P, e = evaluation_envelope(M, cls)
    assert is_I_mono(e, cls) and is_member(P, cls)
