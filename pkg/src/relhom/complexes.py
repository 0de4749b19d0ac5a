"""Chain complexes over a degree window, chain maps, homology and the
relative weak-equivalence predicates.

Complexes are homological (d_i : X_i -> X_{i-1}).  A complex stores the
modules of a window [lo, hi].  When `exhaustive` is true everything outside
the window is zero; otherwise the window is a view of a larger complex and
only degrees whose neighbours are known can be used.  A complex that is
bounded above at n (an object of Ch<=n) is known to vanish above n either
way.
"""

from __future__ import annotations

from typing import Optional

from .exact_linalg import ExactMatrix
from .injclass import InjectiveClass, is_I_mono
from .modules import (
    FPModule,
    ModMorphism,
    biproduct,
    cokernel,
    copair_from_pushout,
    extend_along,
    hom_module,
    identity,
    is_mono,
    kernel,
    lift_along,
    map_from_blocks,
    map_into_sum,
    map_out_of_sum,
    pushout,
    solve_hom_system,
    zero_map,
)


class WindowTooSmall(ValueError):
    """A predicate needs degrees that the window does not cover."""


class NotAChainMap(ValueError):
    pass


class ChainComplex:
    def __init__(self, ring, objects: dict, differentials: Optional[dict] = None, window=None,
                 bounded_above_at: Optional[int] = None, exhaustive: bool = True, check: bool = True,
                 known: Optional[tuple] = None):
        differentials = dict(differentials or {})
        degs = sorted(objects)
        if window is None:
            window = (degs[0], degs[-1]) if degs else (0, 0)
        lo, hi = window
        if lo > hi:
            raise ValueError("empty window")
        self.ring = ring
        self.lo, self.hi = lo, hi
        self.bounded_above_at = bounded_above_at
        self.exhaustive = exhaustive
        # (zero below the window, zero above the window)
        self._known = known
        self._zero = FPModule.zero(ring)
        self.objects = {}
        for i in range(lo, hi + 1):
            M = objects.get(i)
            if M is None:
                M = self._zero
            if M.ring != ring:
                raise ValueError(f"object in degree {i} lives over {M.ring}")
            self.objects[i] = M
        for i in objects:
            if (i < lo or i > hi) and not objects[i].is_zero():
                raise ValueError(f"nonzero object in degree {i} outside the window")
        self.diffs = {}
        for i in range(lo + 1, hi + 1):
            d = differentials.get(i)
            if d is None:
                d = zero_map(self.objects[i], self.objects[i - 1])
            elif not isinstance(d, ModMorphism):
                d = ModMorphism(self.objects[i], self.objects[i - 1], d, check=check)
            self.diffs[i] = d
        if bounded_above_at is not None:
            for i in range(bounded_above_at + 1, hi + 1):
                if not self.objects[i].is_zero():
                    raise ValueError(f"complex bounded above at {bounded_above_at} has X_{i} != 0")
        if check:
            for i in range(lo + 2, hi + 1):
                if not (self.diffs[i - 1] @ self.diffs[i]).is_zero():
                    raise ValueError(f"d_{i - 1} o d_{i} is not zero")

    # -- access ------------------------------------------------------------------
    def obj(self, i: int) -> FPModule:
        return self.objects.get(i, self._zero)

    def d(self, i: int) -> ModMorphism:
        if i in self.diffs:
            return self.diffs[i]
        return zero_map(self.obj(i), self.obj(i - 1))

    def known_above(self) -> bool:
        """Are the degrees above the window genuinely zero?"""
        if self._known is not None:
            return self._known[1]
        return self.exhaustive or (self.bounded_above_at is not None
                                   and self.bounded_above_at <= self.hi)

    def known_below(self) -> bool:
        if self._known is not None:
            return self._known[0]
        return self.exhaustive

    def top(self) -> int:
        """Highest degree that may be nonzero."""
        if self.bounded_above_at is not None:
            return min(self.hi, self.bounded_above_at)
        return self.hi

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def is_zero(self) -> bool:
        return all(M.is_zero() for M in self.objects.values())

    def __repr__(self):
        from .modules import describe
        parts = [f"{i}:{describe(self.objects[i])}" for i in self.degrees()
                 if not self.objects[i].is_zero()]
        return f"ChainComplex([{self.lo},{self.hi}] {' '.join(parts) or '0'})"

    def with_window(self, lo, hi, exhaustive=None) -> "ChainComplex":
        """Re-window: degrees outside the old window are zero."""
        objs = {i: self.obj(i) for i in range(lo, hi + 1)}
        diffs = {i: self.d(i) for i in range(lo + 1, hi + 1)}
        return ChainComplex(self.ring, objs, diffs, (lo, hi), self.bounded_above_at,
                            self.exhaustive if exhaustive is None else exhaustive, check=False)


class ChainMap:
    def __init__(self, source: ChainComplex, target: ChainComplex, components: dict,
                 check: bool = True):
        self.source = source
        self.target = target
        self.comps = {}
        for i in _union(source, target):
            f = components.get(i)
            if f is None:
                f = zero_map(source.obj(i), target.obj(i))
            elif not isinstance(f, ModMorphism):
                f = ModMorphism(source.obj(i), target.obj(i), f, check=check)
            self.comps[i] = f
        if check:
            bad = self.failing_degree()
            if bad is not None:
                raise NotAChainMap(f"square at degree {bad} does not commute")

    @property
    def ring(self):
        return self.source.ring

    def __getitem__(self, i) -> ModMorphism:
        f = self.comps.get(i)
        if f is None:
            return zero_map(self.source.obj(i), self.target.obj(i))
        return f

    def degrees(self):
        return sorted(self.comps)

    def failing_degree(self):
        for i in self.degrees():
            a = self.target.d(i) @ self[i]
            b = self[i - 1] @ self.source.d(i)
            if a.matrix.shape != b.matrix.shape or not (a - b).is_zero():
                return i
        return None

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(other.source, self.target,
                        {i: self[i] @ other[i] for i in _union(other.source, self.target)},
                        check=False)

    def __add__(self, other):
        return ChainMap(self.source, self.target, {i: self[i] + other[i] for i in self.comps},
                        check=False)

    def __sub__(self, other):
        return ChainMap(self.source, self.target, {i: self[i] - other[i] for i in self.comps},
                        check=False)

    def __neg__(self):
        return ChainMap(self.source, self.target, {i: -self[i] for i in self.comps}, check=False)

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.comps.values())

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        degs = set(self.comps) | set(other.comps)
        return all((self[i] - other[i]).is_zero() for i in degs)

    __hash__ = None


def _union(X: ChainComplex, Y: ChainComplex):
    return range(min(X.lo, Y.lo), max(X.hi, Y.hi) + 1)


# ---------------------------------------------------------------------------
# basic constructions


def zero_complex(ring, window=(0, 0), bounded_above_at=None) -> ChainComplex:
    return ChainComplex(ring, {}, {}, window, bounded_above_at)


def concentrated(M: FPModule, k: int = 0, bounded_above_at: Optional[int] = None) -> ChainComplex:
    """M sitting alone in degree k."""
    return ChainComplex(M.ring, {k: M}, {}, (k, k), bounded_above_at)


def disc(k: int, M: FPModule, bounded_above_at: Optional[int] = None) -> ChainComplex:
    """D_k(M): M in degrees k and k-1 joined by the identity."""
    return ChainComplex(M.ring, {k: M, k - 1: M}, {k: identity(M)}, (k - 1, k), bounded_above_at,
                        check=False)


def identity_map(X: ChainComplex) -> ChainMap:
    return ChainMap(X, X, {i: identity(X.obj(i)) for i in X.degrees()}, check=False)


def zero_chain_map(X: ChainComplex, Y: ChainComplex) -> ChainMap:
    return ChainMap(X, Y, {}, check=False)


def suspension(X: ChainComplex) -> ChainComplex:
    """(Sigma X)_n = X_{n-1} with differential -d."""
    objs = {i + 1: X.obj(i) for i in X.degrees()}
    diffs = {i + 1: -X.d(i) for i in range(X.lo + 1, X.hi + 1)}
    b = None if X.bounded_above_at is None else X.bounded_above_at + 1
    return ChainComplex(X.ring, objs, diffs, (X.lo + 1, X.hi + 1), b, X.exhaustive, check=False)


def direct_sum(complexes) -> ChainComplex:
    """Degreewise biproduct of finitely many complexes."""
    complexes = list(complexes)
    R = complexes[0].ring
    lo = _lo_bound([(X, X.lo) for X in complexes], min(X.lo for X in complexes))
    hi = _hi_bound([(X, X.hi) for X in complexes], max(X.hi for X in complexes))
    sums = {i: biproduct([X.obj(i) for X in complexes]) for i in range(lo, hi + 1)}
    diffs = {}
    for i in range(lo + 1, hi + 1):
        blocks = [[X.d(i) if a == b else None for b, X in enumerate(complexes)]
                  for a, _ in enumerate(complexes)]
        diffs[i] = map_from_blocks(sums[i], sums[i - 1], blocks)
    bs = [X.bounded_above_at for X in complexes]
    b = None if any(x is None for x in bs) else max(bs)
    out = ChainComplex(R, {i: s.module for i, s in sums.items()}, diffs, (lo, hi), b,
                       all(X.exhaustive for X in complexes), check=False,
                       known=(all(X.known_below() for X in complexes),
                              all(X.known_above() for X in complexes)))
    out.sums = sums
    return out


def sum_injection(S: ChainComplex, k: int, X: ChainComplex) -> ChainMap:
    """The k-th injection X -> S for S built by direct_sum."""
    return ChainMap(X, S, {i: S.sums[i].injections[k] for i in S.degrees()}, check=False)


def sum_projection(S: ChainComplex, k: int, X: ChainComplex) -> ChainMap:
    return ChainMap(S, X, {i: S.sums[i].projections[k] for i in S.degrees()}, check=False)


# ---------------------------------------------------------------------------
# homology


def _homology_ok(X: ChainComplex, i: int) -> bool:
    return (i > X.lo or X.known_below()) and (i < X.hi or X.known_above())


def homology_data(X: ChainComplex, i: int):
    """(H, z, p): z: Z_i -> X_i the cycles, p: Z_i -> H the quotient."""
    if not _homology_ok(X, i):
        raise WindowTooSmall(f"window too small: H_{i} needs degrees {i - 1}..{i + 1}, "
                             f"window is [{X.lo},{X.hi}]")
    Z, z = kernel(X.d(i))
    b = lift_along(X.d(i + 1), z)
    H, p = cokernel(b)
    return H, z, p


def homology(X: ChainComplex, i: int) -> FPModule:
    return homology_data(X, i)[0]


def homology_map(f: ChainMap, i: int) -> ModMorphism:
    """H_i(f): H_i(source) -> H_i(target)."""
    HX, zX, pX = homology_data(f.source, i)
    HY, zY, pY = homology_data(f.target, i)
    onto_cycles = lift_along(f[i] @ zX, zY)
    return extend_along(pY @ onto_cycles, pX)


def interior_degrees(*complexes):
    """Degrees at which homology of every given complex is computable."""
    lo = min(X.lo for X in complexes)
    hi = max(X.hi for X in complexes)
    return [i for i in range(lo - 1, hi + 2) if all(_homology_ok(X, i) for X in complexes)]


# ---------------------------------------------------------------------------
# hom complexes


def hom_cochain(X: ChainComplex, W: FPModule, homs: Optional[dict] = None) -> ChainComplex:
    """A(X, W) with A(X_k, W) in degree -k.

    Its differential out of degree -k is precomposition with d_{k+1}, so it
    lowers the degree by one and the result is again a ChainComplex.
    """
    homs = homs if homs is not None else {}
    for k in X.degrees():
        if k not in homs:
            homs[k] = hom_module(X.obj(k), W)
    objs = {-k: homs[k].module for k in X.degrees()}
    diffs = {}
    for k in range(X.lo, X.hi):
        diffs[-k] = homs[k].precompose(X.d(k + 1), homs[k + 1])
    # the bottom of the hom complex is known iff the top of X is
    out = ChainComplex(X.ring, objs, diffs, (-X.hi, -X.lo), None, X.exhaustive, check=False,
                       known=(X.known_above(), X.known_below()))
    out._homs = homs
    return out


def hom_cochain_map(f: ChainMap, W: FPModule, AY: ChainComplex = None,
                    AX: ChainComplex = None) -> ChainMap:
    """A(f, W): A(Y, W) -> A(X, W), degreewise precomposition with f."""
    AX = AX or hom_cochain(f.source, W)
    AY = AY or hom_cochain(f.target, W)
    comps = {}
    for k in _union(f.source, f.target):
        if k in AY._homs and k in AX._homs:
            comps[-k] = AY._homs[k].precompose(f[k], AX._homs[k])
    return ChainMap(AY, AX, comps, check=False)


def _generators(cls: InjectiveClass):
    return cls._members


def _uses_hom_strategy(cls: InjectiveClass) -> bool:
    return not cls.all_objects and cls.base is None


class WeProfile:
    """What A(f, W) does on cohomology, for every generator W.

    For classes with generators, `degrees[j] = (iso, mono)` records the
    behaviour at homological degree j (cohomological degree -j).  For the
    all-objects class and induced classes the cone of f is used instead:
    f is a k-weak equivalence iff the cone is (k+1)-connected, and
    `cone[j]` records connectivity of the cone at degree j.
    """

    def __init__(self, degrees=None, cone=None):
        self.degrees = degrees
        self.cone = cone

    @property
    def verified(self):
        keys = sorted(self.degrees if self.degrees is not None else self.cone)
        return (keys[0], keys[-1]) if keys else None

    def holds(self, k: int) -> bool:
        if self.degrees is not None:
            for j, (iso, mono) in self.degrees.items():
                if j <= k and not iso:
                    return False
                if j == k + 1 and not mono:
                    return False
            return True
        return all(ok for j, ok in self.cone.items() if j <= k + 1)

    def all_iso(self) -> bool:
        if self.degrees is not None:
            return all(iso for iso, _ in self.degrees.values())
        return all(self.cone.values())


def we_profile(f: ChainMap, cls: InjectiveClass) -> WeProfile:
    X, Y = f.source, f.target
    if not _uses_hom_strategy(cls):
        return WeProfile(cone=connectivity_profile(cone_of_map(f), cls))
    prof = {}
    for W in _generators(cls):
        AX = hom_cochain(X, W)
        AY = hom_cochain(Y, W)
        g = hom_cochain_map(f, W, AY, AX)
        for n in interior_degrees(AX, AY):
            h = homology_map(g, n)
            mono = is_mono(h)
            iso = mono and cokernel(h)[0].is_zero()
            old = prof.get(-n, (True, True))
            prof[-n] = (old[0] and iso, old[1] and mono)
    if not _generators(cls):
        # degenerate class {0}: every map is an equivalence
        prof = {j: (True, True) for j in interior_degrees(X, Y)}
    return WeProfile(degrees=prof)


def connectivity_profile(X: ChainComplex, cls: InjectiveClass) -> dict:
    """j -> is coker(d_{j+1}) -> X_{j-1} an I-mono (H^{-j}(A(X, W)) = 0)."""
    out = {}
    for j in range(X.lo - 1, X.hi + 2):
        if not _homology_ok(X, j):
            continue
        out[j] = is_I_mono(_induced_boundary(X, j), cls)
    return out


def _induced_boundary(X: ChainComplex, j: int) -> ModMorphism:
    """coker(d_{j+1}) -> X_{j-1} induced by d_j."""
    _, p = cokernel(X.d(j + 1))
    return extend_along(X.d(j), p)


def _require_top(f: ChainMap, k: int):
    for X in (f.source, f.target):
        if not X.known_above() and X.hi < k + 2:
            raise WindowTooSmall(
                f"window too small: a {k}-weak equivalence test needs degree {k + 2}, "
                f"window is [{X.lo},{X.hi}]")


def is_k_I_we(f: ChainMap, k: int, cls: InjectiveClass, profile: WeProfile = None) -> bool:
    """Is f a k-I-weak equivalence: A(f, W) an iso on H^n for n >= -k and a
    mono on H^{-k-1}, for every W in the class?

    Degrees below a non-exhaustive window are not examined; the profile's
    `verified` range says what was.
    """
    _require_top(f, k)
    if profile is None:
        profile = we_profile(f, cls)
    return profile.holds(k)


def is_I_we(f: ChainMap, cls: InjectiveClass) -> bool:
    """Iso in every computable degree."""
    return we_profile(f, cls).all_iso()


def is_k_I_connected(X: ChainComplex, k: int, cls: InjectiveClass) -> bool:
    """H^n(A(X, W)) = 0 for n >= -k, i.e. the induced boundary maps are I-monos
    in homological degrees <= k."""
    if not X.known_above() and X.hi < k + 1:
        raise WindowTooSmall(f"window too small for {k}-connectivity")
    return all(ok for j, ok in connectivity_profile(X, cls).items() if j <= k)


def is_I_trivial(X: ChainComplex, cls: InjectiveClass, strategy: str = "coker") -> bool:
    """Is A(X, W) acyclic for every W (in the computable window)?

    strategy "hom" computes the hom complexes, "coker" tests that every
    induced boundary coker(d_{j+1}) -> X_{j-1} is an I-mono.
    """
    if strategy == "coker" or not _uses_hom_strategy(cls):
        return all(connectivity_profile(X, cls).values())
    if strategy != "hom":
        raise ValueError(f"unknown strategy {strategy!r}")
    for W in _generators(cls):
        A = hom_cochain(X, W)
        for n in interior_degrees(A):
            if not homology(A, n).is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# truncation


def truncate(X: ChainComplex, n: int):
    """(tau_n X, t_n: X -> tau_n X).

    Degree n of the truncation is coker(d_{n+1}); lower degrees are copied and
    t_n is the quotient map in degree n and the identity below.
    """
    if not (n + 1 <= X.hi or X.known_above()):
        raise WindowTooSmall(f"window too small: truncation at {n} needs degree {n + 1}")
    C, p = cokernel(X.d(n + 1))
    lo = min(X.lo, n)
    objs = {i: X.obj(i) for i in range(lo, n)}
    objs[n] = C
    diffs = {i: X.d(i) for i in range(lo + 1, n)}
    if n - 1 >= lo:
        diffs[n] = extend_along(X.d(n), p)
    T = ChainComplex(X.ring, objs, diffs, (lo, n), n, X.exhaustive, check=False,
                     known=(X.known_below(), True))
    comps = {i: identity(X.obj(i)) for i in range(lo, n)}
    comps[n] = p
    return T, ChainMap(X, T, comps, check=False)


# ---------------------------------------------------------------------------
# cones, cylinders, path objects


def _neg_if(f: ModMorphism, odd: bool) -> ModMorphism:
    return -f if odd else f


def _top_of(*complexes) -> int:
    tops = []
    for X in complexes:
        if X.bounded_above_at is not None:
            tops.append(X.bounded_above_at)
        elif X.known_above():
            tops.append(X.hi)
        else:
            raise ValueError("construction needs a complex that is bounded above")
    return max(tops)


def _low_of(*complexes, shift=0) -> int:
    return _lo_bound([(X, X.lo + shift) for X in complexes], min(X.lo for X in complexes))


def _lo_bound(pairs, default: int) -> int:
    """Lowest computable degree of a construction.

    pairs lists (X, d): below d the construction needs X outside its
    window.  That only matters when X is not known to vanish there.
    """
    need = [d for X, d in pairs if not X.known_below()]
    return max(need) if need else default


def _hi_bound(pairs, default: int) -> int:
    need = [d for X, d in pairs if not X.known_above()]
    return min(need) if need else default


def cone_of_complex(X: ChainComplex, n: Optional[int] = None):
    """(CX, X -> CX) for X bounded above at n.

    CX_n = X_{n-1}, CX_m = X_m + X_{m-1} below, with differential (Id, d) out
    of degree n and [[d, (-1)^(m-n) Id], [0, d]] further down.  The map
    X -> CX is d in degree n and the first-factor inclusion below.
    """
    n = _top_of(X) if n is None else n
    lo = _low_of(X, shift=1)
    sums = {m: biproduct([X.obj(m), X.obj(m - 1)]) for m in range(lo, n)}
    objs = {n: X.obj(n - 1)}
    objs.update({m: s.module for m, s in sums.items()})
    diffs = {}
    if n - 1 >= lo:
        S = sums[n - 1]
        diffs[n] = S.injections[0] @ identity(X.obj(n - 1)) + S.injections[1] @ X.d(n - 1)
    for m in range(lo + 1, n):
        odd = (m - n) % 2 == 1
        diffs[m] = map_from_blocks(sums[m], sums[m - 1], [
            [X.d(m), _neg_if(identity(X.obj(m - 1)), odd)],
            [None, X.d(m - 1)]])
    CX = ChainComplex(X.ring, objs, diffs, (min(lo, n), n), n, X.exhaustive, check=False,
                      known=(X.known_below(), True))
    comps = {n: X.d(n)}
    for m in range(lo, n):
        comps[m] = sums[m].injections[0]
    return CX, ChainMap(X, CX, comps, check=False)


def cone_of_map(f: ChainMap) -> ChainComplex:
    """Cone(f)_m = Y_m + X_{m-1} with differential [[d_Y, f], [0, -d_X]]."""
    X, Y = f.source, f.target
    below = X.known_below() and Y.known_below()
    above = X.known_above() and Y.known_above()
    lo = _lo_bound([(Y, Y.lo), (X, X.lo + 1)], min(Y.lo, X.lo + 1))
    hi = _hi_bound([(Y, Y.hi), (X, X.hi + 1)], max(Y.hi, X.hi + 1))
    sums = {m: biproduct([Y.obj(m), X.obj(m - 1)]) for m in range(lo, hi + 1)}
    diffs = {}
    for m in range(lo + 1, hi + 1):
        diffs[m] = map_from_blocks(sums[m], sums[m - 1], [
            [Y.d(m), f[m - 1]],
            [None, -X.d(m - 1)]])
    b = None
    if X.bounded_above_at is not None and Y.bounded_above_at is not None:
        b = max(Y.bounded_above_at, X.bounded_above_at + 1)
    return ChainComplex(Y.ring, {m: s.module for m, s in sums.items()}, diffs, (lo, hi), b,
                        X.exhaustive and Y.exhaustive, check=False, known=(below, above))


class Cylinder:
    """Cyl(f) with j: N -> Cyl, q: Cyl -> M (q o j = f) and the splitting
    retraction of j onto N."""

    def __init__(self, complex, j, q, retraction, sums):
        self.complex = complex
        self.j = j
        self.q = q
        self.retraction = retraction
        self.sums = sums

    def __iter__(self):
        return iter((self.complex, self.j, self.q))


def cylinder(f: ChainMap, n: Optional[int] = None) -> Cylinder:
    """Mapping cylinder of f: N -> M in Ch<=n.

    Cyl_i = N_i + M_{i+1} + M_i (with M_{n+1} = 0).  Out of degree i the
    N_i part goes to N_{i-1} by the differential and to the middle slot M_i
    by (-1)^(i-1-n) f; M_{i+1} goes to the middle slot by d; M_i goes to the
    middle slot by (-1)^(i-n) Id and to M_{i-1} by d.
    """
    N, M = f.source, f.target
    n = _top_of(N, M) if n is None else n
    lo = _lo_bound([(N, N.lo), (M, M.lo)], min(N.lo, M.lo - 1))
    R = N.ring
    zero = FPModule.zero(R)
    sums = {}
    for i in range(lo, n + 1):
        mid = M.obj(i + 1) if i < n else zero
        sums[i] = biproduct([N.obj(i), mid, M.obj(i)])
    diffs = {}
    for i in range(lo + 1, n + 1):
        dmid = M.d(i + 1) if i < n else zero_map(zero, M.obj(i))
        diffs[i] = map_from_blocks(sums[i], sums[i - 1], [
            [N.d(i), None, None],
            [_neg_if(f[i], (i - 1 - n) % 2 == 1), dmid, _neg_if(identity(M.obj(i)), (i - n) % 2 == 1)],
            [None, None, M.d(i)]])
    C = ChainComplex(R, {i: s.module for i, s in sums.items()}, diffs, (lo, n), n,
                     N.exhaustive and M.exhaustive, check=False,
                     known=(N.known_below() and M.known_below(), True))
    j = ChainMap(N, C, {i: sums[i].injections[0] + sums[i].injections[2] @ f[i]
                        for i in range(lo, n + 1)}, check=False)
    q = ChainMap(C, M, {i: sums[i].projections[2] for i in range(lo, n + 1)}, check=False)
    r = ChainMap(C, N, {i: sums[i].projections[0] for i in range(lo, n + 1)}, check=False)
    return Cylinder(C, j, q, r, sums)


def path_object(X: ChainComplex):
    """(P(X), h: X -> P(X), pi: P(X) -> X + X) with P(X)_i = X_i + X_i + X_{i+1}
    and differential [[d,0,0],[0,d,0],[(-1)^(i+1), (-1)^i, d]]."""
    top = _top_of(X)
    lo = X.lo - 1 if X.known_below() else X.lo
    R = X.ring
    sums = {i: biproduct([X.obj(i), X.obj(i), X.obj(i + 1)]) for i in range(lo, top + 1)}
    diffs = {}
    for i in range(lo + 1, top + 1):
        e = identity(X.obj(i))
        diffs[i] = map_from_blocks(sums[i], sums[i - 1], [
            [X.d(i), None, None],
            [None, X.d(i), None],
            [_neg_if(e, (i + 1) % 2 == 1), _neg_if(e, i % 2 == 1), X.d(i + 1)]])
    P = ChainComplex(R, {i: s.module for i, s in sums.items()}, diffs, (lo, top),
                     X.bounded_above_at, X.exhaustive, check=False,
                     known=(X.known_below(), True))
    XX = direct_sum([X, X])
    h = ChainMap(X, P, {i: sums[i].injections[0] + sums[i].injections[1]
                        for i in range(lo, top + 1)}, check=False)
    pi = {}
    for i in range(lo, top + 1):
        S = sums[i]
        T = biproduct([X.obj(i), X.obj(i)])
        pi[i] = ModMorphism(S.module, XX.obj(i),
                            (T.injections[0] @ S.projections[0]
                             + T.injections[1] @ S.projections[1]).matrix, check=False)
    return P, h, ChainMap(P, XX, pi, check=False)


def homotopic(f: ChainMap, g: ChainMap):
    """A homotopy {s_i: X_i -> Y_{i+1}} with f_i - g_i = d s_i + s_{i-1} d,
    or None.

    All degrees are solved at once as one linear system over the hom
    modules, so a solution is found whenever one exists.
    """
    X, Y = f.source, f.target
    degs = list(_union(X, Y))
    s_slots = [i for i in degs if not X.obj(i).is_zero() and not Y.obj(i + 1).is_zero()]
    t_slots = [i for i in degs if not X.obj(i).is_zero() and not Y.obj(i).is_zero()]
    if not t_slots:
        return {}
    index = {i: a for a, i in enumerate(s_slots)}
    unknowns = [hom_module(X.obj(i), Y.obj(i + 1)) for i in s_slots]
    equations = []
    for t in t_slots:
        terms = []
        if t in index:
            terms.append((index[t], lambda phi, t=t: Y.d(t + 1) @ phi))
        if t - 1 in index:
            terms.append((index[t - 1], lambda phi, t=t: phi @ X.d(t)))
        equations.append((hom_module(X.obj(t), Y.obj(t)), terms, f[t] - g[t]))
    sol = solve_hom_system(unknowns, equations)
    if sol is None:
        return None
    return dict(zip(s_slots, sol))


def check_homotopy(f: ChainMap, g: ChainMap, s: dict) -> bool:
    X, Y = f.source, f.target
    for i in _union(X, Y):
        lhs = f[i] - g[i]
        rhs = zero_map(X.obj(i), Y.obj(i))
        if i in s:
            rhs = rhs + Y.d(i + 1) @ s[i]
        if i - 1 in s:
            rhs = rhs + s[i - 1] @ X.d(i)
        if not (lhs - rhs).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# degreewise kernels, cokernels and pushouts of chain maps


def kernel_complex(f: ChainMap):
    """(K, K -> X) with K_i = ker f_i."""
    X = f.source
    incs = {i: kernel(f[i])[1] for i in X.degrees()}
    diffs = {i: lift_along(X.d(i) @ incs[i], incs[i - 1]) for i in range(X.lo + 1, X.hi + 1)}
    K = ChainComplex(X.ring, {i: m.source for i, m in incs.items()}, diffs, (X.lo, X.hi),
                     X.bounded_above_at, X.exhaustive, check=False, known=(X.known_below(), X.known_above()))
    return K, ChainMap(K, X, incs, check=False)


def cokernel_complex(f: ChainMap):
    """(C, Y -> C) with C_i = coker f_i."""
    Y = f.target
    projs = {i: cokernel(f[i])[1] for i in Y.degrees()}
    diffs = {i: extend_along(projs[i - 1] @ Y.d(i), projs[i]) for i in range(Y.lo + 1, Y.hi + 1)}
    C = ChainComplex(Y.ring, {i: p.target for i, p in projs.items()}, diffs, (Y.lo, Y.hi),
                     Y.bounded_above_at, Y.exhaustive, check=False, known=(Y.known_below(), Y.known_above()))
    return C, ChainMap(Y, C, projs, check=False)


def pushout_complex(f: ChainMap, g: ChainMap):
    """Degreewise pushout of B <-f- A -g-> C: (P, B -> P, C -> P).

    The window is the common window of B and C.
    """
    B, C = f.target, g.target
    A = f.source
    lo = _lo_bound([(A, A.lo), (B, B.lo), (C, C.lo)], min(B.lo, C.lo))
    hi = _hi_bound([(A, A.hi), (B, B.hi), (C, C.hi)], max(B.hi, C.hi))
    objs, ib, ic = {}, {}, {}
    for i in range(lo, hi + 1):
        objs[i], ib[i], ic[i] = pushout(f[i], g[i])
    diffs = {}
    for i in range(lo + 1, hi + 1):
        diffs[i] = copair_from_pushout(ib[i], ic[i], ib[i - 1] @ B.d(i), ic[i - 1] @ C.d(i))
    b = None
    if B.bounded_above_at is not None and C.bounded_above_at is not None:
        b = max(B.bounded_above_at, C.bounded_above_at)
    P = ChainComplex(B.ring, objs, diffs, (lo, hi), b, B.exhaustive and C.exhaustive, check=False,
                     known=(B.known_below() and C.known_below(), B.known_above() and C.known_above()))
    return P, ChainMap(B, P, ib, check=False), ChainMap(C, P, ic, check=False)


def copair_complex(ib: ChainMap, ic: ChainMap, u: ChainMap, v: ChainMap) -> ChainMap:
    """The chain map out of a degreewise pushout induced by u and v."""
    P = ib.target
    comps = {i: copair_from_pushout(ib[i], ic[i], u[i], v[i]) for i in P.degrees()}
    return ChainMap(P, u.target, comps, check=False)


def pullback_complex(f: ChainMap, g: ChainMap):
    """Degreewise pullback of B -f-> D <-g- C: (P, P -> B, P -> C).

    P_i sits inside B_i + C_i as the kernel of (f_i, -g_i); the inclusions
    are kept on P so that maps into P can be induced later.
    """
    B, C = f.source, g.source
    D = f.target
    lo = _lo_bound([(D, D.lo), (B, B.lo), (C, C.lo)], min(B.lo, C.lo))
    hi = _hi_bound([(D, D.hi), (B, B.hi), (C, C.hi)], max(B.hi, C.hi))
    sums, incs, pb, pc = {}, {}, {}, {}
    for i in range(lo, hi + 1):
        S = biproduct([B.obj(i), C.obj(i)], B.ring)
        _, inc = kernel(map_out_of_sum(S, [f[i], -g[i]]))
        sums[i], incs[i] = S, inc
        pb[i] = S.projections[0] @ inc
        pc[i] = S.projections[1] @ inc
    diffs = {}
    for i in range(lo + 1, hi + 1):
        both = map_into_sum(sums[i - 1], [B.d(i) @ pb[i], C.d(i) @ pc[i]])
        diffs[i] = lift_along(both, incs[i - 1])
    b = None
    if B.bounded_above_at is not None and C.bounded_above_at is not None:
        b = max(B.bounded_above_at, C.bounded_above_at)
    P = ChainComplex(B.ring, {i: incs[i].source for i in incs}, diffs, (lo, hi), b,
                     B.exhaustive and C.exhaustive, check=False,
                     known=(B.known_below() and C.known_below(), B.known_above() and C.known_above()))
    P.pullback_data = (sums, incs)
    return P, ChainMap(P, B, pb, check=False), ChainMap(P, C, pc, check=False)


def pair_into_pullback(P: ChainComplex, u: ChainMap, v: ChainMap) -> ChainMap:
    """The chain map A -> P induced by u: A -> B and v: A -> C."""
    sums, incs = P.pullback_data
    comps = {}
    for i in P.degrees():
        h = lift_along(map_into_sum(sums[i], [u[i], v[i]]), incs[i])
        if h is None:
            raise ValueError(f"the maps do not agree over the base in degree {i}")
        comps[i] = h
    return ChainMap(u.source, P, comps, check=False)


def chain_map_module(X: ChainComplex, Y: ChainComplex):
    """(Z, decode): the module of chain maps X -> Y and a function turning a
    coordinate vector of Z into a ChainMap."""
    R = X.ring
    degs = [i for i in _union(X, Y) if not X.obj(i).is_zero() and not Y.obj(i).is_zero()]
    homs = {i: hom_module(X.obj(i), Y.obj(i)) for i in _union(X, Y)}
    S = biproduct([homs[i].module for i in degs], R)
    eq_degs = [i for i in _union(X, Y) if not X.obj(i).is_zero() and not Y.obj(i - 1).is_zero()]
    eqs = {i: hom_module(X.obj(i), Y.obj(i - 1)) for i in eq_degs}
    T = biproduct([eqs[i].module for i in eq_degs], R)
    cols = []
    for i in degs:
        for phi in homs[i].generators():
            vec = []
            for e in eq_degs:
                if e == i:
                    v = eqs[e].encode(Y.d(i) @ phi)
                elif e == i + 1:
                    v = eqs[e].encode(-(phi @ X.d(i + 1)))
                else:
                    v = [R.zero] * eqs[e].module.num_generators
                vec.extend(v)
            cols.append(vec)
    nT = T.module.num_generators
    Phi = ModMorphism(S.module, T.module,
                      ExactMatrix(R, [[c[r] for c in cols] for r in range(nT)], nT, len(cols)),
                      check=False)
    Z, inc = kernel(Phi)

    def decode(vec) -> ChainMap:
        coords = [row[0] for row in (inc.matrix @ _column(R, vec)).rows]
        comps, pos = {}, 0
        for i in degs:
            k = homs[i].module.num_generators
            comps[i] = homs[i].decode(coords[pos:pos + k])
            pos += k
        return ChainMap(X, Y, comps, check=False)

    return Z, decode


def _column(R, vec):
    return ExactMatrix(R, [[x] for x in vec], len(vec), 1)
