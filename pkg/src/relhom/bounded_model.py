"""The relative model structure on complexes bounded above.

Cofibrations are degreewise I-monos.  Fibrations are degreewise split
epimorphisms whose kernels lie in the class.  Weak equivalences are the
I-weak equivalences of `complexes`.

Every construction here is explicit.  Fibrant replacements are infinite in
general, so they are built on a finite window of columns and report the
window on which they are exact.
"""

from __future__ import annotations

from typing import Optional

from .complexes import (
    ChainComplex,
    ChainMap,
    WindowTooSmall,
    _top_of,
    _union,
    cokernel_complex,
    cone_of_complex,
    copair_complex,
    cylinder,
    direct_sum,
    homotopic,
    is_I_trivial,
    is_I_we,
    kernel_complex,
    pushout_complex,
    zero_chain_map,
)
from .injclass import (
    InjectiveClass,
    NotAnIMono,
    evaluation_envelope,
    extend_along_imono,
    is_I_mono,
    member_retraction,
)
from .modules import (
    biproduct,
    cokernel,
    copair_from_pushout,
    extend_along,
    hom_module,
    identity,
    is_iso,
    is_split_epi,
    kernel,
    lift_along,
    map_from_blocks,
    map_into_sum,
    pushout,
    solve_hom_system,
    zero_map,
)


class LiftingPreconditionError(ValueError):
    """A lifting problem whose maps do not have the required kinds."""

    def __init__(self, message, degree=None):
        super().__init__(message if degree is None else f"{message} (degree {degree})")
        self.degree = degree


# ---------------------------------------------------------------------------
# predicates


def _ambient_top(f: ChainMap) -> int:
    tops = [X.bounded_above_at for X in (f.source, f.target) if X.bounded_above_at is not None]
    return max(tops) if tops else _top_of(f.source, f.target)


def cofibration_failure(f: ChainMap, cls: InjectiveClass, n: Optional[int] = None) -> Optional[int]:
    """First degree i < n where f_i is not an I-mono, or None.

    n is the top of the ambient category Ch<=n (by default the bound of the
    complexes).  The top degree itself is not tested: a map into a disc
    D_n(W) vanishes in degree n on cycles, so asking for an I-mono there
    would rule out the factorizations.
    """
    n = _ambient_top(f) if n is None else n
    for i in _union(f.source, f.target):
        if i < n and not is_I_mono(f[i], cls):
            return i
    return None


def is_cofibration(f: ChainMap, cls: InjectiveClass, n: Optional[int] = None) -> bool:
    return cofibration_failure(f, cls, n) is None


def is_degreewise_I_mono(f: ChainMap, cls: InjectiveClass) -> bool:
    """The stronger condition: an I-mono in every degree, the top included."""
    return all(is_I_mono(f[i], cls) for i in _union(f.source, f.target))


class FibrationWitness:
    """Degreewise data certifying a fibration.

    sections[i] splits f_i, kernels[i] = (K_i, K_i -> X_i) and
    memberships[i] = (e, r) exhibits K_i as a retract of a product of
    generators.
    """

    def __init__(self, sections, kernels, memberships):
        self.sections = sections
        self.kernels = kernels
        self.memberships = memberships


def fibration_witness(f: ChainMap, cls: InjectiveClass):
    """(FibrationWitness, None) or (None, failing degree)."""
    sections, kernels, members = {}, {}, {}
    for i in _union(f.source, f.target):
        ok, s = is_split_epi(f[i])
        if not ok:
            return None, i
        K, inc = kernel(f[i])
        mem = member_retraction(K, cls)
        if mem is None:
            return None, i
        sections[i], kernels[i], members[i] = s, (K, inc), mem
    return FibrationWitness(sections, kernels, members), None


def is_fibration(f: ChainMap, cls: InjectiveClass) -> bool:
    return fibration_witness(f, cls)[0] is not None


def is_fibrant(X: ChainComplex, cls: InjectiveClass) -> bool:
    return all(member_retraction(X.obj(i), cls) is not None for i in X.degrees())


def is_trivial_fibration(f: ChainMap, cls: InjectiveClass) -> bool:
    if not is_fibration(f, cls):
        return False
    return is_I_trivial(kernel_complex(f)[0], cls)


# ---------------------------------------------------------------------------
# envelopes of complexes


def reschains_envelope(X: ChainComplex, cls: InjectiveClass):
    """(I, m: X -> I) with every I_i in the class and every m_i an I-mono.

    In each degree the cycles Z_i get an envelope J_i, the pushout
    Q_i = J_i +_{Z_i} X_i gets an envelope I_i, and the differential of I
    is routed through R_i = I_i +_{Q_i} B_i where B_i = X_i / Z_i.
    """
    R = X.ring
    data = {}
    for i in X.degrees():
        Z, z = kernel(X.d(i))
        J, a = evaluation_envelope(Z, cls)
        Q, u, v = pushout(a, z)
        I, b = evaluation_envelope(Q, cls)
        B, pi = cokernel(z)
        qb = copair_from_pushout(u, v, zero_map(J, B), pi)
        Rm, s, t = pushout(b, qb)
        data[i] = dict(z=z, a=a, u=u, v=v, b=b, pi=pi, s=s, t=t, I=I)
    diffs = {}
    for i in range(X.lo + 1, X.hi + 1):
        cur, low = data[i], data[i - 1]
        into_cycles = lift_along(X.d(i), low["z"])
        delta = extend_along(into_cycles, cur["pi"])
        rho = extend_along_imono(cur["t"], low["a"] @ delta, cls)
        diffs[i] = low["b"] @ low["u"] @ rho @ cur["s"]
    I = ChainComplex(R, {i: data[i]["I"] for i in X.degrees()}, diffs, (X.lo, X.hi),
                     X.bounded_above_at, X.exhaustive, check=False,
                     known=(X.known_below(), X.known_above()))
    m = ChainMap(X, I, {i: data[i]["b"] @ data[i]["v"] for i in X.degrees()}, check=False)
    return I, m


class FibrantReplacement:
    """j: X -> RX with RX built as the totalization of a column resolution.

    `window` is the range of degrees on which RX is exact; `exhaustive`
    says whether the resolution stopped by itself (RX is then exact in all
    degrees).  `columns` holds the column complexes I_p.
    """

    def __init__(self, complex, map, columns, window, exhaustive):
        self.complex = complex
        self.map = map
        self.columns = columns
        self.window = window
        self.exhaustive = exhaustive

    def __iter__(self):
        return iter((self.complex, self.map))

    def __repr__(self):
        kind = "complete" if self.exhaustive else f"exact on {list(self.window)}"
        return f"FibrantReplacement({self.complex}, {len(self.columns)} columns, {kind})"


def default_depth(X: ChainComplex) -> int:
    return _top_of(X) - X.lo + 4


def fibrant_replacement(X: ChainComplex, cls: InjectiveClass, depth: Optional[int] = None):
    """A trivial cofibration X -> RX into a complex of members of the class.

    Columns: I_0 envelopes X, I_{p+1} envelopes coker(I_{p-1} -> I_p) (with
    the convention coker = X for p = 0), and RX_m = (+)_{q - p = m} I_{p,q}
    with differential delta + (-1)^p d.  With `depth` columns the result is
    exact in degrees >= top - depth + 1, unless the resolution stops first.
    """
    if depth is None:
        depth = default_depth(X)
    if depth < 1:
        raise ValueError("need at least one column")
    top = _top_of(X)
    I0, m0 = reschains_envelope(X, cls)
    columns, deltas = [I0], []
    last = m0
    finished = False
    while True:
        K, pr = cokernel_complex(last)
        if K.is_zero():
            finished = True
            break
        if len(columns) == depth:
            break
        Ip, mp = reschains_envelope(K, cls)
        deltas.append(mp @ pr)
        columns.append(Ip)
        last = mp
    P = len(columns)
    if finished and X.known_below():
        lo = X.lo - (P - 1)
    else:
        lo = top - depth + 1
        if not X.known_below():
            lo = max(lo, X.lo)
    R = X.ring
    sums = {}
    for m in range(lo, top + 1):
        sums[m] = biproduct([columns[p].obj(m + p) for p in range(P)], R)
    diffs = {}
    for m in range(lo + 1, top + 1):
        blocks = [[None] * P for _ in range(P)]
        for p in range(P):
            q = m + p
            vert = columns[p].d(q)
            blocks[p][p] = -vert if p % 2 else vert
            if p + 1 < P:
                blocks[p + 1][p] = deltas[p][q]
        diffs[m] = map_from_blocks(sums[m], sums[m - 1], blocks)
    exhaustive = finished and X.known_below()
    RX = ChainComplex(R, {m: s.module for m, s in sums.items()}, diffs, (lo, top), top,
                      exhaustive, check=False, known=(exhaustive, True))
    j = ChainMap(X, RX, {m: sums[m].injections[0] @ m0[m] for m in range(max(lo, X.lo), top + 1)},
                 check=False)
    return FibrantReplacement(RX, j, columns, (lo, top), exhaustive)


# ---------------------------------------------------------------------------
# factorizations


class FactorizationResult:
    """f = second o first through `mid`.

    `certified` maps "first" and "second" to the kind that was checked
    ("cofibration", "trivial cofibration", "fibration", "trivial
    fibration") and "window" to the degrees where the check ran.
    `witnesses` keeps the intermediate objects.
    """

    def __init__(self, mid, first, second, certified, witnesses):
        self.mid = mid
        self.first = first
        self.second = second
        self.certified = certified
        self.witnesses = witnesses

    def __iter__(self):
        return iter((self.mid, self.first, self.second))


def _cylinder_kernel(f: ChainMap):
    cyl = cylinder(f)
    K, kinc = kernel_complex(cyl.q)
    return cyl, K, kinc


def _pad_depth(f: ChainMap, depth):
    if depth is not None:
        return depth
    lo = min(f.source.lo, f.target.lo)
    return _top_of(f.source, f.target) - lo + 4


def factor_cof_trivfib(f: ChainMap, cls: InjectiveClass, depth: Optional[int] = None,
                       certify: bool = True) -> FactorizationResult:
    """Cofibration followed by a trivial fibration.

    f factors through the cylinder; the kernel K of Cyl -> N is resolved by
    K -> RK -> C(RK) and Cyl is pushed out along K -> C(RK).
    """
    cyl, K, kinc = _cylinder_kernel(f)
    RK = fibrant_replacement(K, cls, _pad_depth(f, depth))
    CRK, c = cone_of_complex(RK.complex)
    X, cyl_to_x, p_to_x = pushout_complex(kinc, c @ RK.map)
    first = cyl_to_x @ cyl.j
    second = copair_complex(cyl_to_x, p_to_x, cyl.q, zero_chain_map(CRK, f.target))
    result = FactorizationResult(X, first, second, {"window": (X.lo, X.hi)},
                                 {"cylinder": cyl, "kernel": K, "replacement": RK, "cone": CRK})
    if certify:
        result.certified["first"] = "cofibration" if is_cofibration(first, cls) else None
        ok = is_fibration(second, cls) and is_I_trivial(kernel_complex(second)[0], cls)
        result.certified["second"] = "trivial fibration" if ok else None
    return result


def factor_trivcof_fib(f: ChainMap, cls: InjectiveClass, depth: Optional[int] = None,
                       certify: bool = True) -> FactorizationResult:
    """Trivial cofibration followed by a fibration.

    As above, but Cyl is pushed out along the fibrant replacement K -> RK.
    """
    cyl, K, kinc = _cylinder_kernel(f)
    RK = fibrant_replacement(K, cls, _pad_depth(f, depth))
    X, cyl_to_x, r_to_x = pushout_complex(kinc, RK.map)
    first = cyl_to_x @ cyl.j
    second = copair_complex(cyl_to_x, r_to_x, cyl.q, zero_chain_map(RK.complex, f.target))
    result = FactorizationResult(X, first, second, {"window": (X.lo, X.hi)},
                                 {"cylinder": cyl, "kernel": K, "replacement": RK})
    if certify:
        ok = is_cofibration(first, cls) and is_I_we(first, cls)
        result.certified["first"] = "trivial cofibration" if ok else None
        result.certified["second"] = "fibration" if is_fibration(second, cls) else None
    return result


# ---------------------------------------------------------------------------
# trivial fibrant complexes


class DiscDecomposition:
    """X = (+) D_i(W_i) with the explicit isomorphism.

    `discs` lists (i, W_i); `to_discs`: X -> D and `from_discs`: D -> X are
    mutually inverse chain maps.
    """

    def __init__(self, discs, complex, to_discs, from_discs, slots):
        self.discs = discs
        self.complex = complex
        self.to_discs = to_discs
        self.from_discs = from_discs
        self.slots = slots

    def __iter__(self):
        return iter(self.discs)

    def __len__(self):
        return len(self.discs)


def _disc_sum(R, discs, lo, hi):
    """(+) D_i(W_i) with slots[n] = list of (disc index, 'top'|'bottom')."""
    slots = {n: [] for n in range(lo, hi + 1)}
    for k, (i, W) in enumerate(discs):
        slots[i].append((k, "top"))
        slots[i - 1].append((k, "bottom"))
    sums = {n: biproduct([discs[k][1] for k, _ in slots[n]], R) for n in slots}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        blocks = []
        for k2, pos2 in slots[n - 1]:
            row = []
            for k1, pos1 in slots[n]:
                same = k1 == k2 and pos1 == "top" and pos2 == "bottom"
                row.append(identity(discs[k1][1]) if same else None)
            blocks.append(row)
        diffs[n] = map_from_blocks(sums[n], sums[n - 1], blocks)
    D = ChainComplex(R, {n: s.module for n, s in sums.items()}, diffs, (lo, hi), hi, True,
                     check=False)
    D.sums = sums
    return D, slots


def decompose_trivial_fibrant(X: ChainComplex, cls: InjectiveClass) -> DiscDecomposition:
    """Split a fibrant I-trivial complex into discs D_i(W_i), W_i = coker d_{i+1}.

    The retraction of coker(d_{i+1}) -> X_{i-1} gives the component of the
    isomorphism onto D_i(W_i).
    """
    if not X.known_below() or not X.known_above():
        raise WindowTooSmall("disc decomposition needs a complex known in every degree")
    if not is_fibrant(X, cls):
        raise ValueError("complex is not fibrant")
    if not is_I_trivial(X, cls):
        raise ValueError("complex is not I-trivial")
    R = X.ring
    discs, proj, retr = [], [], []
    for i in range(X.hi, X.lo - 1, -1):
        W, p = cokernel(X.d(i + 1))
        if W.is_zero():
            continue
        dbar = extend_along(X.d(i), p)
        try:
            r = extend_along_imono(dbar, identity(W), cls)
        except NotAnIMono:
            raise ValueError(f"induced boundary at degree {i} has no retraction")
        discs.append((i, W))
        proj.append(p)
        retr.append(r)
    lo = min([X.lo] + [i - 1 for i, _ in discs])
    D, slots = _disc_sum(R, discs, lo, X.hi)
    comps = {}
    for n in range(lo, X.hi + 1):
        maps = []
        for k, pos in slots[n]:
            maps.append(proj[k] if pos == "top" else retr[k])
        if maps:
            comps[n] = map_into_sum(D.sums[n], maps)
    to_d = ChainMap(X, D, comps, check=False)
    inv = {}
    for n in range(lo, X.hi + 1):
        ok, g = is_iso(to_d[n])
        if not ok:
            raise ValueError(f"disc map is not an isomorphism in degree {n}")
        inv[n] = g
    from_d = ChainMap(D, X, inv, check=False)
    return DiscDecomposition(discs, D, to_d, from_d, slots)


def split_acyclic_fibration(p: ChainMap, cls: InjectiveClass):
    """(s, retraction onto K, K, K -> E) for an acyclic fibration p: E -> B.

    s is a chain-level section of p and the retraction is a chain map, so
    E = B (+) K as complexes with p the projection.
    """
    E, B = p.source, p.target
    if not E.known_below():
        raise WindowTooSmall("splitting an acyclic fibration needs a complex known in every degree")
    wit, bad = fibration_witness(p, cls)
    if wit is None:
        raise LiftingPreconditionError("not a fibration", bad)
    K, kinc = kernel_complex(p)
    if not is_I_trivial(K, cls):
        raise LiftingPreconditionError("kernel is not I-trivial")
    H = homotopic(identity_of(K), zero_chain_map(K, K))
    if H is None:
        raise LiftingPreconditionError("kernel is not contractible")
    degs = list(_union(E, B))
    sigma = {i: wit.sections[i] for i in degs}
    rho = {i: lift_along(identity(E.obj(i)) - sigma[i] @ p[i], kinc[i]) for i in degs}
    section = {}
    for n in degs:
        t = None
        if n - 1 in H:
            delta = rho[n - 1] @ E.d(n) @ sigma[n]
            t = -(H[n - 1] @ delta)
        section[n] = sigma[n] if t is None else sigma[n] + kinc[n] @ t
    s = ChainMap(B, E, section, check=False)
    retract = {n: lift_along(identity(E.obj(n)) - s[n] @ p[n], kinc[n]) for n in degs}
    return s, ChainMap(E, K, retract, check=False), K, kinc


def identity_of(X: ChainComplex) -> ChainMap:
    return ChainMap(X, X, {i: identity(X.obj(i)) for i in X.degrees()}, check=False)


def acyclic_fibration_splitting(p: ChainMap, cls: InjectiveClass):
    """Isomorphism alpha: B (+) K -> E with p o alpha the projection onto B."""
    s, _, K, kinc = split_acyclic_fibration(p, cls)
    S = direct_sum([p.target, K])
    comps = {}
    for n in S.degrees():
        comps[n] = (s[n] @ S.sums[n].projections[0]) + (kinc[n] @ S.sums[n].projections[1])
    return ChainMap(S, p.source, comps, check=False), S


# ---------------------------------------------------------------------------
# lifting


class LiftingProblem:
    """A commutative square

        A --top--> E
        |i         |p
        B --bot--> C
    """

    def __init__(self, i: ChainMap, p: ChainMap, top: ChainMap, bottom: ChainMap):
        if not (p @ top) == (bottom @ i):
            raise ValueError("square does not commute")
        self.i = i
        self.p = p
        self.top = top
        self.bottom = bottom

    def check(self, h: ChainMap) -> bool:
        return (h.failing_degree() is None and (h @ self.i) == self.top
                and (self.p @ h) == self.bottom)


MODES = ("cof-vs-trivfib", "trivcof-vs-fib")


def solve_lifting(prob: LiftingProblem, cls: InjectiveClass, mode: str) -> ChainMap:
    """A diagonal h: B -> E with h o i = top and p o h = bottom."""
    if mode == "cof-vs-trivfib":
        return _lift_against_trivial_fibration(prob, cls)
    if mode == "trivcof-vs-fib":
        return _lift_trivial_cofibration(prob, cls)
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def _require_cofibration(i: ChainMap, cls):
    bad = cofibration_failure(i, cls)
    if bad is not None:
        raise LiftingPreconditionError("left map is not a cofibration", bad)


def _lift_against_trivial_fibration(prob: LiftingProblem, cls: InjectiveClass) -> ChainMap:
    """Split E = C (+) K with K a sum of discs; a map into D_j(W) is a map
    out of degree j-1, which extends along the I-mono i_{j-1}."""
    i, p = prob.i, prob.p
    B = i.target
    _require_cofibration(i, cls)
    s, retract, K, kinc = split_acyclic_fibration(p, cls)
    dec = decompose_trivial_fibrant(K, cls)
    g = dec.to_discs @ retract @ prob.top
    D = dec.complex
    ext = []
    for k, (j, W) in enumerate(dec.discs):
        n = j - 1
        idx = dec.slots[n].index((k, "bottom"))
        comp = D.sums[n].projections[idx] @ g[n]
        try:
            ext.append(extend_along_imono(i[n], comp, cls))
        except NotAnIMono:
            raise LiftingPreconditionError("no extension along the left map", n)
    comps = {}
    for n in _union(B, D):
        cols = []
        for k, pos in dec.slots.get(n, []):
            j = dec.discs[k][0]
            cols.append(ext[k] @ B.d(j) if pos == "top" else ext[k])
        if cols:
            comps[n] = map_into_sum(D.sums[n], cols)
    k_map = dec.from_discs @ ChainMap(B, D, comps, check=False)
    h = s @ prob.bottom + kinc @ k_map
    return ChainMap(B, p.source, {n: h[n] for n in _union(B, p.source)}, check=False)


def _lift_trivial_cofibration(prob: LiftingProblem, cls: InjectiveClass) -> ChainMap:
    """Degree by degree from the top: with E_n = B_n (+) K_n, look for
    k_n: Y_n -> K_n extending f_n = rho top_n and compatible with the
    differential; k_n = phi_n + xi_{n-1} d where (phi_n, zeta_{n-1}) solve
    phi d = Delta l + d_K k_{n+1} and f_n = phi i + zeta d, and xi extends
    zeta along i_{n-1}."""
    i, p = prob.i, prob.p
    X, Y = i.source, i.target
    E = p.source
    _require_cofibration(i, cls)
    wit, bad = fibration_witness(p, cls)
    if wit is None:
        raise LiftingPreconditionError("right map is not a fibration", bad)
    ell = prob.bottom
    degs = list(_union(Y, E))
    top = max(degs)
    kinc = {n: wit.kernels[n][1] if n in wit.kernels else None for n in degs}
    Kmod = {n: wit.kernels[n][0] for n in wit.kernels}
    sigma = wit.sections
    rho = {n: lift_along(identity(E.obj(n)) - sigma[n] @ p[n], kinc[n]) for n in wit.kernels}
    k = {}
    for n in range(top, min(degs) - 1, -1):
        if n not in Kmod:
            continue
        Kn = Kmod[n]
        f_n = rho[n] @ prob.top[n]
        L = None
        if n + 1 in k:
            delta = rho[n] @ E.d(n + 1) @ sigma[n + 1]
            dK = rho[n] @ E.d(n + 1) @ kinc[n + 1]
            L = delta @ ell[n + 1] + dK @ k[n + 1]
        Hphi = hom_module(Y.obj(n), Kn)
        Hzeta = hom_module(X.obj(n - 1), Kn)
        equations = [
            (hom_module(Y.obj(n + 1), Kn), [(0, lambda phi: phi @ Y.d(n + 1))], L),
            (hom_module(X.obj(n), Kn), [(0, lambda phi: phi @ i[n]),
                                        (1, lambda z: z @ X.d(n))], f_n),
        ]
        sol = solve_hom_system([Hphi, Hzeta], equations)
        if sol is None:
            raise LiftingPreconditionError("no compatible extension; left map is not trivial", n)
        phi, zeta = sol
        try:
            xi = extend_along_imono(i[n - 1], zeta, cls)
        except NotAnIMono:
            raise LiftingPreconditionError("left map is not an I-mono", n - 1)
        k[n] = phi + xi @ Y.d(n)
    comps = {}
    for n in degs:
        h = sigma[n] @ ell[n] if n in sigma else zero_map(Y.obj(n), E.obj(n))
        if n in k:
            h = h + kinc[n] @ k[n]
        comps[n] = h
    return ChainMap(Y, E, comps, check=False)


def solve_lifting_linear(prob: LiftingProblem) -> Optional[ChainMap]:
    """Independent route: solve h o i = top, p o h = bottom and the chain
    map equations as one linear system.  None when no lift exists."""
    i, p = prob.i, prob.p
    Y, E = i.target, p.source
    degs = [n for n in _union(Y, E) if not Y.obj(n).is_zero() and not E.obj(n).is_zero()]
    index = {n: a for a, n in enumerate(degs)}
    unknowns = [hom_module(Y.obj(n), E.obj(n)) for n in degs]
    equations = []
    for n in degs:
        if not i.source.obj(n).is_zero():
            equations.append((hom_module(i.source.obj(n), E.obj(n)),
                              [(index[n], lambda h, n=n: h @ i[n])], prob.top[n]))
        if not p.target.obj(n).is_zero():
            equations.append((hom_module(Y.obj(n), p.target.obj(n)),
                              [(index[n], lambda h, n=n: p[n] @ h)], prob.bottom[n]))
    for n in _union(Y, E):
        if Y.obj(n).is_zero() or E.obj(n - 1).is_zero():
            continue
        terms = []
        if n in index:
            terms.append((index[n], lambda h, n=n: E.d(n) @ h))
        if n - 1 in index:
            terms.append((index[n - 1], lambda h, n=n: -(h @ Y.d(n))))
        if terms:
            equations.append((hom_module(Y.obj(n), E.obj(n - 1)), terms, None))
    if not equations:
        return ChainMap(Y, E, {}, check=False)
    if not unknowns:
        ok = all(b is None or b.is_zero() for _, _, b in equations)
        return ChainMap(Y, E, {}, check=False) if ok else None
    sol = solve_hom_system(unknowns, equations)
    if sol is None:
        return None
    return ChainMap(Y, E, dict(zip(degs, sol)), check=False)


__all__ = [
    "DiscDecomposition", "FactorizationResult", "FibrantReplacement", "FibrationWitness",
    "LiftingPreconditionError", "LiftingProblem", "MODES", "acyclic_fibration_splitting",
    "cofibration_failure", "is_degreewise_I_mono", "decompose_trivial_fibrant", "factor_cof_trivfib",
    "factor_trivcof_fib", "fibrant_replacement", "fibration_witness", "is_cofibration",
    "is_fibrant", "is_fibration", "is_trivial_fibration", "reschains_envelope",
    "solve_lifting", "solve_lifting_linear", "split_acyclic_fibration",
]
