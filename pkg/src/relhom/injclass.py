"""Injective classes given by finite generator lists.

A class is the closure of its generators under finite products and
retracts.  Nothing is ever materialized beyond the generators: a map f is
an I-mono when Hom(f, W) is onto for every generator W, and the
evaluation envelope M -> prod W is built from module generators of the
hom modules Hom(M, W).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

from .exact_linalg import ExactMatrix, PolyDomain, RingMismatch, RingSpec, ZZ, dom_gcd
from .modules import (
    FPModule,
    ModMorphism,
    biproduct,
    cokernel,
    extend_along,
    hom_module,
    identity,
    is_split_mono,
    map_into_sum,
    normal_form,
    zero_map,
)


class NotAnIMono(ValueError):
    """An extension along a map was requested but the map is not an I-mono."""


# ---------------------------------------------------------------------------
# ideals and primes


@dataclass(frozen=True)
class Ideal:
    """The ideal generated by a list of ring elements."""

    ring: RingSpec
    generators: tuple

    @property
    def gen(self):
        """Canonical generator in the Euclidean cover (per factor for products)."""
        return _ideal_gen(self.ring, self.generators)

    def is_proper(self) -> bool:
        R = self.ring
        g = self.gen
        if R.is_product:
            return not all(r.domain.is_unit(x) for r, x in zip(R.parts, g))
        return not R.domain.is_unit(g)

    def contains_ideal(self, other: "Ideal") -> bool:
        """Is other a subset of self?"""
        R = self.ring
        a, b = self.gen, other.gen
        if R.is_product:
            return all(_divides(r.domain, x, y) for r, x, y in zip(R.parts, a, b))
        return _divides(R.domain, a, b)

    def __str__(self):
        R = self.ring
        g = self.gen
        if R.is_product:
            return "(" + ", ".join(_fmt(r, x) for r, x in zip(R.parts, g)) + ")"
        return "(" + _fmt(R, g) + ")"


def _fmt(R, x):
    from .exact_linalg import poly_str
    if R.domain is ZZ:
        return str(x)
    return poly_str(x)


def _divides(dom, a, b):
    if a == dom.zero:
        return b == dom.zero
    return dom.divmod(b, a)[1] == dom.zero


def _ideal_gen(R, gens):
    if R.is_product:
        return tuple(_ideal_gen(r, [g[k] for g in gens]) for k, r in enumerate(R.parts))
    dom = R.domain
    acc = R.modulus
    for g in gens:
        if dom is not ZZ and isinstance(g, int):
            g = dom.trim([g])
        acc = dom_gcd(dom, acc, g)
    return dom.normal_part(acc)[0]


def make_ideal(R: RingSpec, *gens) -> Ideal:
    return Ideal(R, tuple(R.reduce(g) for g in gens))


def _int_prime_factors(n):
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def _monic_polys(p, deg):
    for k in range(p ** deg):
        coeffs = []
        for _ in range(deg):
            coeffs.append(k % p)
            k //= p
        yield tuple(coeffs) + (1,)


def _poly_prime_factors(p, f):
    dom = PolyDomain(p)
    out = []
    rest = f
    deg = 1
    while len(rest) - 1 >= 2 * deg:
        for g in _monic_polys(p, deg):
            if dom.divmod(rest, g)[1] == ():
                out.append(g)
                while dom.divmod(rest, g)[1] == ():
                    rest = dom.divmod(rest, g)[0]
        deg += 1
    if len(rest) > 1:
        out.append(dom.normal_part(rest)[0])
    return sorted(out, key=lambda g: (len(g), g))


def spec_primes(R: RingSpec):
    """All prime ideals of a finite ring, in a fixed order."""
    if not R.is_finite:
        raise ValueError("prime spectrum is only enumerated for finite rings")
    if R.is_product:
        out = []
        for k, part in enumerate(R.parts):
            for P in spec_primes(part):
                gens = tuple(P.gen if j == k else r.one for j, r in enumerate(R.parts))
                out.append(Ideal(R, (gens,)))
        return out
    if R.kind == "PrimeField":
        return [Ideal(R, (0,))]
    if R.kind == "IntegersMod":
        return [Ideal(R, (q,)) for q in _int_prime_factors(R.n)]
    return [Ideal(R, (g,)) for g in _poly_prime_factors(R.p, R.f)]


# ---------------------------------------------------------------------------
# ring maps (restriction and extension of scalars)


@dataclass(frozen=True)
class RingMap:
    """A surjective ring map S -> R of one of the supported shapes.

    kind "identity", "quotient" (same cover, the modulus of R divides that
    of S) or "projection" (a product ring onto its factor `index`).
    """

    source: RingSpec
    target: RingSpec
    kind: str
    index: int = 0

    def __call__(self, a):
        if self.kind == "projection":
            return a[self.index]
        return self.target.reduce(a)

    def restrict_module(self, W: FPModule) -> FPModule:
        """r(W): an R-module viewed as an S-module."""
        S, R = self.source, self.target
        if self.kind == "identity":
            return W
        g = W.num_generators
        if self.kind == "quotient":
            rel = W.relations.lift()
            c = R.modulus
            rows = [list(rel[i]) + [c if i == j else S.zero for j in range(g)] for i in range(g)]
            return FPModule(S, g, ExactMatrix(S, rows, g, W.relations.ncols + g))
        rows = []
        for i in range(g):
            row = []
            for x in W.relations.rows[i]:
                row.append(tuple(x if k == self.index else r.zero for k, r in enumerate(S.parts)))
            for j in range(g):
                row.append(tuple((r.zero if k == self.index else (r.one if i == j else r.zero))
                                 for k, r in enumerate(S.parts)))
            rows.append(row)
        return FPModule(S, g, ExactMatrix(S, rows, g, W.relations.ncols + g))

    def extend_module(self, M: FPModule) -> FPModule:
        """l(M) = R (x)_S M."""
        if self.kind == "identity":
            return M
        rel = ExactMatrix(self.target, [[self(x) for x in r] for r in M.relations.rows],
                          M.num_generators, M.relations.ncols)
        return FPModule(self.target, M.num_generators, rel)

    def extend_morphism(self, f: ModMorphism, source=None, target=None) -> ModMorphism:
        if self.kind == "identity":
            return f
        source = source or self.extend_module(f.source)
        target = target or self.extend_module(f.target)
        mat = ExactMatrix(self.target, [[self(x) for x in r] for r in f.matrix.rows],
                          f.matrix.nrows, f.matrix.ncols)
        return ModMorphism(source, target, mat, check=False)

    def restrict_morphism(self, g: ModMorphism, source=None, target=None) -> ModMorphism:
        """r(g) for an R-linear map g."""
        if self.kind == "identity":
            return g
        S = self.source
        source = source or self.restrict_module(g.source)
        target = target or self.restrict_module(g.target)
        if self.kind == "quotient":
            mat = ExactMatrix(S, g.matrix.lift(), g.matrix.nrows, g.matrix.ncols)
        else:
            mat = ExactMatrix(S, [[tuple(x if k == self.index else r.zero
                                         for k, r in enumerate(S.parts)) for x in row]
                                  for row in g.matrix.rows], g.matrix.nrows, g.matrix.ncols)
        return ModMorphism(source, target, mat, check=False)

    def unit(self, M: FPModule) -> ModMorphism:
        """The unit M -> r(l(M)); the identity on generators."""
        rl = self.restrict_module(self.extend_module(M))
        return ModMorphism(M, rl, ExactMatrix.identity(self.source, M.num_generators), check=False)


def identity_map(R: RingSpec) -> RingMap:
    return RingMap(R, R, "identity")


def quotient_map(S: RingSpec, R: RingSpec) -> RingMap:
    if S.is_product or R.is_product:
        raise ValueError("unsupported ring map: quotient between product rings")
    if S.domain != R.domain and not (S.domain is ZZ and R.domain is ZZ):
        raise ValueError("unsupported ring map: different Euclidean covers")
    if not _divides(S.domain, R.modulus, S.modulus):
        raise ValueError(f"unsupported ring map: {S} does not surject onto {R}")
    return RingMap(S, R, "quotient")


def projection_map(S: RingSpec, index: int) -> RingMap:
    if not S.is_product:
        raise ValueError("unsupported ring map: projection needs a product ring")
    return RingMap(S, S.parts[index], "projection", index)


# ---------------------------------------------------------------------------
# classes


class InjectiveClass:
    """Retracts of finite products of the generators.

    `all_objects` marks the class of every module (envelope = identity).
    `base`/`ring_map` mark a class induced from another ring when the base
    class has no finite generator list.
    """

    def __init__(self, ring: RingSpec, generators=(), label: str = "", all_objects: bool = False,
                 base: Optional["InjectiveClass"] = None, ring_map: Optional[RingMap] = None):
        gens = list(generators)
        for W in gens:
            if W.ring != ring:
                raise RingMismatch(f"class generator over {W.ring}, class over {ring}")
        self.ring = ring
        self.generators = gens
        self.label = label or ("all objects" if all_objects else f"{len(gens)} generators")
        self.all_objects = all_objects
        self.base = base
        self.ring_map = ring_map
        if not gens and not all_objects and base is None:
            warnings.warn("empty injective class: this is the degenerate class {0}", stacklevel=2)
        self._members = [normal_form(W)[0] for W in gens]

    @classmethod
    def everything(cls, ring: RingSpec, label: str = "all objects"):
        return cls(ring, [], label, all_objects=True)

    @property
    def is_degenerate(self) -> bool:
        return not self.generators and not self.all_objects and self.base is None

    def __repr__(self):
        return f"InjectiveClass({self.ring}, {self.label})"


def _check_ring(f, cls):
    if f.ring != cls.ring:
        raise RingMismatch(f"map over {f.ring}, class over {cls.ring}")


def precompose_is_onto(f: ModMorphism, W: FPModule) -> bool:
    """Is Hom(target, W) -> Hom(source, W) surjective?"""
    Hs = hom_module(f.source, W)
    if Hs.module.is_zero():
        return True
    Ht = hom_module(f.target, W)
    pre = Ht.precompose(f, Hs)
    return cokernel(pre)[0].is_zero()


def is_I_mono(f: ModMorphism, cls: InjectiveClass) -> bool:
    _check_ring(f, cls)
    if cls.all_objects:
        return is_split_mono(f)[0]
    if cls.base is not None:
        return is_I_mono(cls.ring_map.extend_morphism(f), cls.base)
    return all(precompose_is_onto(f, W) for W in cls._members)


def evaluation_envelope(M: FPModule, cls: InjectiveClass):
    """(P, e: M -> P) with P a finite product of generators and e an I-mono."""
    if M.ring != cls.ring:
        raise RingMismatch(f"module over {M.ring}, class over {cls.ring}")
    if cls.all_objects:
        return M, identity(M)
    if cls.base is not None:
        phi = cls.ring_map
        lM = phi.extend_module(M)
        P, e = evaluation_envelope(lM, cls.base)
        rP = phi.restrict_module(P)
        eta = phi.unit(M)
        re = phi.restrict_morphism(e, eta.target, rP)
        return rP, re @ eta
    if not cls.ring.is_finite:
        raise ValueError("evaluation envelopes need a finite ring or the all-objects class")
    factors, comps = [], []
    for W in cls._members:
        for phi in hom_module(M, W).generators():
            factors.append(W)
            comps.append(phi)
    if not factors:
        P = FPModule.zero(M.ring)
        return P, zero_map(M, P)
    S = biproduct(factors)
    e = map_into_sum(S, comps)
    return S.module, e


def is_member(M: FPModule, cls: InjectiveClass) -> bool:
    return member_retraction(M, cls) is not None


def member_retraction(M: FPModule, cls: InjectiveClass):
    """(e, r) with r o e = id when M lies in the class, else None."""
    if cls.all_objects:
        return identity(M), identity(M)
    _, e = evaluation_envelope(M, cls)
    ok, r = is_split_mono(e)
    return (e, r) if ok else None


def extend_along_imono(m: ModMorphism, h: ModMorphism, cls: Optional[InjectiveClass] = None) -> ModMorphism:
    """h~ with h~ o m == h, for m an I-mono and h landing in a member."""
    out = extend_along(h, m)
    if out is None:
        raise NotAnIMono("no extension exists: the map is not an I-mono for the target")
    return out


def class_from_primes(R: RingSpec, primes, label: str = "") -> InjectiveClass:
    """The class generated by the injective hulls E(R/p) for p in primes."""
    from .ab4_local import injective_hull

    primes = list(primes)
    gens = [injective_hull(R, P)[0] for P in primes]
    label = label or ("primes " + ",".join(str(P) for P in primes) if primes else "no primes")
    if not primes:
        warnings.warn("empty prime set: this is the degenerate class {0}", stacklevel=2)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return InjectiveClass(R, [], label)
    return InjectiveClass(R, gens, label)


def induce_class_along_ring_map(phi: RingMap, cls: InjectiveClass, label: str = "") -> InjectiveClass:
    """The class on S-modules made of retracts of restrictions r(W)."""
    if cls.ring != phi.target:
        raise RingMismatch("class is not over the target of the ring map")
    label = label or f"induced from {cls.label}"
    if cls.all_objects or cls.base is not None:
        return InjectiveClass(phi.source, [], label, base=cls, ring_map=phi)
    if cls.is_degenerate:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return InjectiveClass(phi.source, [], label)
    return InjectiveClass(phi.source, [phi.restrict_module(W) for W in cls.generators], label)


def annihilator(M: FPModule, coords) -> tuple:
    """Generator of the annihilator ideal of an element given in the
    coordinates of the diagonal model of M."""
    N = normal_form(M)[0]
    R = M.ring
    if R.is_product:
        return tuple(_ann_simple(r, [d[k] for d in N._divs], [x[k] for x in coords])
                     for k, r in enumerate(R.parts))
    return _ann_simple(R, N._divs, coords)


def _ann_simple(R, divs, coords):
    dom = R.domain
    acc = dom.one
    for d, x in zip(divs, coords):
        g = dom_gcd(dom, x, d)
        if g == dom.zero:
            continue
        a = dom.divmod(d, g)[0]
        # lcm(acc, a)
        acc = dom.normal_part(dom.divmod(dom.mul(acc, a), dom_gcd(dom, acc, a))[0])[0]
    if R.modulus != dom.zero:
        acc = dom_gcd(dom, acc, R.modulus)
    return acc


def module_elements(M: FPModule):
    """All elements of a finite module, as coordinates in its diagonal model."""
    N = normal_form(M)[0]
    R = M.ring
    if not R.is_finite:
        raise ValueError("only finite modules can be enumerated")

    def residues(r, d):
        return [x for x in r.elements() if _reduced(r, x, d)]

    per = []
    for d in N._divs:
        if R.is_product:
            lists = [residues(r, d[k]) for k, r in enumerate(R.parts)]
            combos = [()]
            for L in lists:
                combos = [c + (x,) for c in combos for x in L]
            per.append(combos)
        else:
            per.append(residues(R, d))
    out = [()]
    for opts in per:
        out = [v + (x,) for v in out for x in opts]
    return out


def _reduced(R, x, d):
    from .exact_linalg import dom_reduce
    return dom_reduce(R.domain, x, d) == x


def we_criterion_annihilator(f, ideals, degrees=None) -> bool:
    """Annihilator test: every element of ker H_n(f) and coker H_n(f) has an
    annihilator contained in none of the given ideals."""
    from .complexes import homology_map, interior_degrees

    ideals = list(ideals)
    if not ideals:
        return True
    if degrees is None:
        degrees = interior_degrees(f.source, f.target)
    for n in degrees:
        Hf = homology_map(f, n)
        from .modules import kernel
        for M in (kernel(Hf)[0], cokernel(Hf)[0]):
            for x in module_elements(M):
                a = annihilator(M, x)
                ann = Ideal(M.ring, (_ann_element(M.ring, a),))
                for lam in ideals:
                    if lam.contains_ideal(ann):
                        return False
    return True


def _ann_element(R, a):
    if R.is_product:
        return tuple(r.reduce(x) for r, x in zip(R.parts, a))
    return R.reduce(a)
