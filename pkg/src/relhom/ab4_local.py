"""Connectivity of products of relative resolutions, and the local algebra
of finite rings: localizations, torsion functors, Cech cohomology and
injective hulls.

Over a finite ring every module is finite, so "killed by a power of x"
stabilizes after finitely many steps and M_x is the quotient of M by the
elements killed by a power of x.  Products are finite products; countable
families are out of reach and reports say so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .bounded_model import factor_trivcof_fib, fibrant_replacement
from .complexes import (
    ChainComplex,
    _lo_bound,
    concentrated,
    connectivity_profile,
    direct_sum,
    homology,
    homology_map,
    interior_degrees,
    truncate,
)
from .exact_linalg import RingSpec
from .injclass import (
    Ideal,
    InjectiveClass,
    make_ideal,
    precompose_is_onto,
    spec_primes,
)
from .modules import (
    FPModule,
    ModMorphism,
    ResourceLimitError,
    biproduct,
    cokernel,
    describe,
    extend_along,
    identity,
    image,
    is_iso,
    is_mono,
    kernel,
    map_from_blocks,
)


class HullSearchError(ResourceLimitError):
    """No injective hull was found within the search cap."""


# ---------------------------------------------------------------------------
# primes


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime ideal with its certificate: the multiplication table of R
    modulo the ideal was checked to have no zero divisors."""

    ideal: Ideal
    checked_pairs: int = field(default=0, compare=False)

    @property
    def ring(self) -> RingSpec:
        return self.ideal.ring

    @property
    def gen(self):
        return self.ideal.gen

    def __str__(self):
        return str(self.ideal)


def in_ideal(P: Ideal, x) -> bool:
    return P.contains_ideal(Ideal(P.ring, (x,)))


def prime_ideal(P: Ideal) -> PrimeIdeal:
    """Certify that P is prime (finite rings only)."""
    R = P.ring
    if not R.is_finite:
        raise ValueError("primality is certified by enumeration over finite rings")
    if not P.is_proper():
        raise ValueError(f"{P} is the unit ideal")
    outside = [a for a in R.elements() if not in_ideal(P, a)]
    count = 0
    for a in outside:
        for b in outside:
            count += 1
            if in_ideal(P, R.mul(a, b)):
                raise ValueError(f"{P} is not prime: a b lies in it for a = {a}, b = {b}")
    return PrimeIdeal(P, count)


def primes_of(R: RingSpec):
    return [prime_ideal(P) for P in spec_primes(R)]


def _as_ideal(P) -> Ideal:
    return P.ideal if isinstance(P, PrimeIdeal) else P


def _elem(R: RingSpec, g):
    """A ring element from an ideal generator in the Euclidean cover."""
    return R.reduce(g)


def residue_module(P) -> FPModule:
    """R/P as a cyclic module."""
    P = _as_ideal(P)
    return FPModule.cyclic(P.ring, _elem(P.ring, P.gen))


# ---------------------------------------------------------------------------
# torsion and localization


def multiplication(M: FPModule, x) -> ModMorphism:
    return identity(M).scale(x)


def _power(R, x, t):
    out = R.one
    for _ in range(t):
        out = R.mul(out, x)
    return out


def stable_annihilator(M: FPModule, x):
    """(K, K -> M) with K = {m : x^t m = 0 for some t}."""
    R = M.ring
    t, prev = 1, None
    while True:
        K, inc = kernel(multiplication(M, _power(R, x, t)))
        size = describe(K)
        if size == prev:
            return K, inc
        prev, t = size, t + 1
        if t > 64:
            raise ResourceLimitError("powers of the element did not stabilize")


def localize_at_element(M: FPModule, x):
    """(M_x, M -> M_x): the quotient of M by its x-power torsion."""
    if not M.ring.is_finite:
        raise ValueError("localization is realized by torsion quotients over finite rings")
    _, inc = stable_annihilator(M, x)
    return cokernel(inc)


def acts_invertibly(M: FPModule, x) -> bool:
    return is_iso(multiplication(M, x))[0]


def gamma_torsion(M: FPModule, P):
    """(G, G -> M) with G = {m : P^t m = 0 for some t}."""
    P = _as_ideal(P)
    return stable_annihilator(M, _elem(M.ring, P.gen))


def _outside_product(P: Ideal):
    """The product of every element outside P (itself outside P if P is prime)."""
    R = P.ring
    s = R.one
    for a in R.elements():
        if not in_ideal(P, a):
            s = R.mul(s, a)
    return s


def localize_at_prime(M: FPModule, P):
    """(M_P, M -> M_P): invert every element outside P.

    Over a finite ring the set of those elements has a largest member up to
    units, their product s, and M_P = M_s.
    """
    P = _as_ideal(P)
    return localize_at_element(M, _outside_product(P))


# ---------------------------------------------------------------------------
# Cech complexes


def cech_complex(M: FPModule, elements) -> ChainComplex:
    """C(x_1..x_r; M) with the cohomological degree k stored in homological
    degree -k: C^k = (+)_{|S| = k} M_{x_S}."""
    R = M.ring
    xs = list(elements)
    r = len(xs)
    locs = {}
    for k in range(r + 1):
        for S in combinations(range(r), k):
            xS = R.one
            for i in S:
                xS = R.mul(xS, xs[i])
            locs[S] = localize_at_element(M, xS)
    sums, keys = {}, {}
    for k in range(r + 1):
        keys[k] = list(combinations(range(r), k))
        sums[k] = biproduct([locs[S][0] for S in keys[k]], R)
    diffs = {}
    for k in range(r):
        blocks = [[None] * len(keys[k]) for _ in keys[k + 1]]
        for a, S in enumerate(keys[k]):
            for b, T in enumerate(keys[k + 1]):
                if not set(S) <= set(T):
                    continue
                (extra,) = set(T) - set(S)
                sign = sorted(T).index(extra) % 2
                h = extend_along(locs[T][1], locs[S][1])
                blocks[b][a] = -h if sign else h
        diffs[-k] = map_from_blocks(sums[k], sums[k + 1], blocks)
    objs = {-k: sums[k].module for k in range(r + 1)}
    return ChainComplex(R, objs, diffs, (-r, 0), 0, True, check=True)


def cech_local_cohomology(M: FPModule, elements, degree: int) -> FPModule:
    """H^degree of the Cech complex of M on the given elements."""
    r = len(list(elements))
    C = cech_complex(M, elements)
    H = homology(C, -degree)
    if degree > r and not H.is_zero():
        raise AssertionError("Cech cohomology above the number of elements")
    return H


# ---------------------------------------------------------------------------
# injective hulls


def _ideal_generators(R: RingSpec):
    """One generator per ideal of a finite ring."""
    seen, out = set(), []
    for a in R.elements():
        key = str(Ideal(R, (a,)))
        if key not in seen:
            seen.add(key)
            out.append(a)
    return out


def is_injective(E: FPModule) -> bool:
    """Baer's criterion: every map from an ideal extends to R.  Every ideal
    of the supported rings is principal, so one generator per ideal is
    enough."""
    R = E.ring
    free = FPModule.free(R, 1)
    for a in _ideal_generators(R):
        _, inc, _ = image(multiplication(free, a))
        if not precompose_is_onto(inc, E):
            return False
    return True


def _cyclic_elements(E: FPModule):
    """Elements of a cyclic module R/(c) as ring elements, one per class."""
    R = E.ring
    out = []
    for a in R.elements():
        if not any(_is_zero_in(E, R.sub(a, b)) for b in out):
            out.append(a)
    return out


def _is_zero_in(E: FPModule, a) -> bool:
    return ModMorphism(FPModule.free(E.ring, 1), E, [[a]], check=False).is_zero()


def is_essential_socle(E: FPModule, gen) -> bool:
    """For a cyclic E = R/(c) and a generator g of a simple submodule: does
    every nonzero cyclic submodule Rs contain g?"""
    R = E.ring
    for s in _cyclic_elements(E):
        if _is_zero_in(E, s):
            continue
        if not any(_is_zero_in(E, R.sub(R.mul(u, s), gen)) for u in R.elements()):
            return False
    return True


def injective_hull(R: RingSpec, P, cap: int = 64):
    """(E, R/P -> E): the injective hull, found by searching the cyclic
    quotients of R in order of size.

    A candidate E is accepted once an injective map R/P -> E is found whose
    image lies in every nonzero cyclic submodule (so the extension is
    essential, R/P being simple) and E passes Baer's criterion.  The
    smallest accepted candidate is returned.
    """
    if not R.is_finite:
        raise ValueError("hull search needs a finite ring")
    P = _as_ideal(P)
    k = residue_module(P)
    cands = []
    for c in _ideal_generators(R):
        E = FPModule.cyclic(R, c)
        if not E.is_zero():
            cands.append((E.order(), str(Ideal(R, (c,))), E))
    cands.sort(key=lambda t: (t[0], t[1]))
    tried = 0
    for _, _, E in cands:
        tried += 1
        if tried > cap:
            break
        for g in _cyclic_elements(E):
            if _is_zero_in(E, g):
                continue
            emb = ModMorphism(k, E, [[g]], check=False)
            if not emb.is_well_defined() or not is_mono(emb):
                continue
            if is_essential_socle(E, g) and is_injective(E):
                return E, emb
    raise HullSearchError(f"no injective hull of R/{P} among {tried} candidates")


# ---------------------------------------------------------------------------
# AB4* style connectivity


@dataclass
class ConnectivityReport:
    """Connectivity of a finite product of relative resolutions.

    `verdicts[j]` is True when H^{-j} of A(prod, W) vanishes for every
    generator W, at homological degree j; only degrees j <= -n-1 inside the
    computed window matter for the verdict.  `scope` states that the
    family is finite.
    """

    n: int
    verdicts: dict
    window: tuple
    depth: int
    passed: bool
    scope: str = "finite family: countable products are not computed"

    def as_dict(self) -> dict:
        return {"n": self.n, "passed": self.passed, "window": list(self.window),
                "depth": self.depth, "scope": self.scope,
                "verdicts": {str(j): v for j, v in sorted(self.verdicts.items())}}


def check_AB4_I_n(family, cls: InjectiveClass, n: int = 0, depth: int = 6) -> ConnectivityReport:
    """Is the product of relative resolutions of the family (-n-1)-connected?"""
    R = cls.ring
    if not (R.is_finite or cls.all_objects):
        raise ValueError("relative resolutions need a finite ring or the all-objects class")
    family = list(family)
    if not family:
        return ConnectivityReport(n, {}, (0, 0), depth, True)
    res = [fibrant_replacement(concentrated(A, 0, 0), cls, depth).complex for A in family]
    lo = _lo_bound([(X, X.lo) for X in res], min(X.lo for X in res))
    prod = direct_sum([X.with_window(lo, 0) for X in res])
    prof = connectivity_profile(prod, cls)
    verdicts = {j: ok for j, ok in prof.items() if j <= -n - 1}
    window = (min(prof), max(prof)) if prof else (0, 0)
    return ConnectivityReport(n, verdicts, window, depth, all(verdicts.values()))


def lim_connectivity_check(K, cls: InjectiveClass, n: int = 0, k: Optional[int] = None) -> bool:
    """For a fibrant tower K of k-connected levels: is lim K
    (k - n - 1)-connected in the computed window?

    When k is not given it is the largest k for which every level is
    k-connected inside its window.
    """
    from .towers import lim_tower, limit_splitting

    if k is None:
        k = min(_connectivity_bound(X, cls) for X in K.levels)
    if not limit_splitting(K)["split"]:
        raise ValueError("the tower is not degreewise split, so it is not fibrant")
    L = lim_tower(K)
    prof = connectivity_profile(L, cls)
    return all(ok for j, ok in prof.items() if j <= k - n - 1)


def _connectivity_bound(X: ChainComplex, cls) -> int:
    prof = connectivity_profile(X, cls)
    bad = [j for j, ok in prof.items() if not ok]
    if not bad:
        return X.top() + 1
    return min(bad) - 1


# ---------------------------------------------------------------------------
# homology of relative resolutions


def resolution_homology_bound_check(M, cls: InjectiveClass, depth: int = 8) -> dict:
    """H_k of a relative resolution vanishes for k < -1 (dimension zero).

    M is a module, or a bounded complex in Ch<=0.  For a complex the
    comparison with the truncation tau_{-1} is checked as well: X -> tau X
    is replaced by a fibration I(X) -> I(tau X) between fibrant complexes
    and its effect on H_k for k < -1 must be an isomorphism.
    """
    X = concentrated(M, 0, 0) if isinstance(M, FPModule) else M
    RX = fibrant_replacement(X, cls, depth).complex
    degs = [k for k in interior_degrees(RX) if k < -1]
    vanishing = {k: homology(RX, k).is_zero() for k in degs}
    report = {"vanishing": vanishing, "window": (RX.lo, RX.hi), "depth": depth}
    if not isinstance(M, FPModule) and X.lo < 0:
        T, t = truncate(X, -1)
        RT = fibrant_replacement(T, cls, depth)
        fac = factor_trivcof_fib(RT.map @ _restrict_to(t, RT.map.source), cls, depth, certify=False)
        p = fac.second
        degs2 = [k for k in interior_degrees(p.source, p.target) if k < -1]
        report["comparison"] = {k: is_iso(homology_map(p, k))[0] for k in degs2}
    report["passed"] = all(vanishing.values()) and all(report.get("comparison", {}).values())
    return report


def _restrict_to(t, target):
    from .towers import relabel
    return relabel(t, t.source, target)


def class_of_primes(R: RingSpec, primes, label: str = "") -> InjectiveClass:
    """The injective class generated by the hulls E(R/P)."""
    from .injclass import class_from_primes
    return class_from_primes(R, [_as_ideal(P) for P in primes], label)


__all__ = [
    "ConnectivityReport", "HullSearchError", "PrimeIdeal", "acts_invertibly", "cech_complex",
    "cech_local_cohomology", "check_AB4_I_n", "class_of_primes", "gamma_torsion", "in_ideal",
    "injective_hull", "is_injective", "lim_connectivity_check", "localize_at_element",
    "localize_at_prime", "make_ideal", "multiplication", "prime_ideal", "primes_of",
    "residue_module", "resolution_homology_bound_check", "stable_annihilator",
]
