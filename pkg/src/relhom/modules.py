"""Finitely presented modules and their morphisms.

A module is given by generators and a relation matrix whose columns are
relations.  Internally every module has a diagonal model
D/(d_1) + ... + D/(d_s) over the Euclidean cover D of the ring, reached
through a pair of mutually inverse coordinate changes.  Everything the
library builds is already diagonal, so the coordinate change is only paid
once for modules that come from the outside.

Over a product ring every computation is split into the factors, done
there, and glued back.  Gluing pads the smaller factors with generators
that are killed by a unit relation in that factor.
"""

from __future__ import annotations

import os
from typing import Optional

from .exact_linalg import (
    ExactMatrix,
    RingMismatch,
    RingSpec,
    ShapeMismatch,
    ZZ,
    block,
    block_diag,
    dom_divides,
    dom_gcd,
    dom_kernel,
    dom_reduce,
    dom_solve,
    hstack,
    smith_normal_form_domain,
    vstack,
)

DEFAULT_MAX_GENERATORS = 64


class ResourceLimitError(RuntimeError):
    """A construction would exceed the configured generator cap."""


class IllDefinedMorphism(ValueError):
    pass


def max_generators() -> int:
    raw = os.environ.get("RELHOM_MAX_GENERATORS")
    return int(raw) if raw else DEFAULT_MAX_GENERATORS


# ---------------------------------------------------------------------------
# helpers on divisors


def _norm_div(R: RingSpec, d):
    """Normalize a divisor of a simple ring so that it divides the modulus."""
    dom = R.domain
    c = R.modulus
    if c != dom.zero:
        d = dom_gcd(dom, d, c)
    return dom.normal_part(d)[0]


def _div_size(R: RingSpec, d):
    dom = R.domain
    if d == dom.zero:
        return None
    if dom is ZZ:
        return abs(d)
    return R.p ** (len(d) - 1)


def _sigma(dom, a, b):
    """Generator of {h : a*h in (b)} modulo (b), as b/gcd(a, b)."""
    g = dom_gcd(dom, a, b)
    if g == dom.zero:
        return dom.one
    return dom.divmod(b, g)[0]


class FPModule:
    """A finitely presented module over `ring`.

    relations is an ExactMatrix with num_generators rows; its columns are
    the relations.  Modules are immutable.
    """

    def __init__(self, ring: RingSpec, num_generators: int, relations: Optional[ExactMatrix] = None):
        if num_generators > max_generators():
            raise ResourceLimitError(
                f"module with {num_generators} generators exceeds the cap of {max_generators()}"
                " (set RELHOM_MAX_GENERATORS to raise it)")
        if relations is None:
            relations = ExactMatrix.zeros(ring, num_generators, 0)
        elif not isinstance(relations, ExactMatrix):
            relations = ExactMatrix(ring, relations, num_generators,
                                    len(relations[0]) if relations else 0)
        if relations.ring != ring:
            raise RingMismatch("relation matrix over a different ring")
        if relations.nrows != num_generators:
            raise ShapeMismatch("relation matrix must have one row per generator")
        self.ring = ring
        self.num_generators = num_generators
        self.relations = relations
        self._divs = None
        self._nf_cache = None
        self._parts_cache = None

    # -- constructors ---------------------------------------------------------
    @classmethod
    def diagonal(cls, ring: RingSpec, divs):
        """The module D/(d_1) + ... over a simple ring, or over a product ring
        with each d_i a tuple of per-factor divisors."""
        if ring.is_product:
            divs = [tuple(_norm_div(r, x) for r, x in zip(ring.parts, d)) for d in divs]
            entries = [tuple(r.reduce(x) for r, x in zip(ring.parts, d)) for d in divs]
        else:
            divs = [_norm_div(ring, d) for d in divs]
            entries = [ring.reduce(d) for d in divs]
        M = cls(ring, len(divs), ExactMatrix.diag(ring, entries))
        M._divs = divs
        return M

    @classmethod
    def cyclic(cls, ring: RingSpec, a):
        """R/(a) on one generator."""
        return cls(ring, 1, ExactMatrix(ring, [[a]], 1, 1))

    @classmethod
    def free(cls, ring: RingSpec, n: int):
        if ring.is_product:
            return cls.diagonal(ring, [tuple(r.modulus for r in ring.parts)] * n)
        return cls.diagonal(ring, [ring.modulus] * n)

    @classmethod
    def zero(cls, ring: RingSpec):
        M = cls(ring, 0)
        M._divs = []
        return M

    # -- structure -------------------------------------------------------------
    def __repr__(self):
        return f"FPModule({self.ring}, {describe(self)})"

    def is_zero(self) -> bool:
        return normal_form(self)[0].num_generators == 0

    def order(self) -> Optional[int]:
        """Number of elements, or None if infinite."""
        N = normal_form(self)[0]
        R = self.ring
        total = 1
        for d in N._divs:
            if R.is_product:
                for r, x in zip(R.parts, d):
                    total *= _div_size(r, x)
            else:
                s = _div_size(R, d)
                if s is None:
                    return None
                total *= s
        return total

    def invariants(self):
        """Sorted invariant factors; two modules are isomorphic iff these agree."""
        R = self.ring
        if R.is_product:
            return tuple(_split_module(self, k).invariants() for k in range(len(R.parts)))
        divs = normal_form(self)[0]._divs
        if not _is_chain(R.domain, divs):
            # a diagonal module given directly need not be in Smith form
            n = len(divs)
            rows = [[d if i == j else R.domain.zero for j in range(n)] for i, d in enumerate(divs)]
            divs = _diagonalize(R, n, rows)[0]
        return tuple(sorted(divs, key=lambda d: (d == R.domain.zero, d)))

    def reduce_matrix(self, A: ExactMatrix) -> ExactMatrix:
        """Reduce the rows of A modulo the divisors, when the module is diagonal."""
        if self._divs is None:
            return A
        R = self.ring
        rows = []
        if R.is_product:
            for row, d in zip(A.rows, self._divs):
                rows.append([tuple(dom_reduce(r.domain, x[k], d[k]) for k, r in enumerate(R.parts))
                             for x in row])
        else:
            dom = R.domain
            for row, d in zip(A.rows, self._divs):
                if d == R.modulus:
                    rows.append(row)
                else:
                    rows.append([dom_reduce(dom, x, d) for x in row])
        return ExactMatrix._raw(R, rows, A.nrows, A.ncols)


def _is_chain(dom, divs) -> bool:
    return all(dom_divides(dom, a, b) for a, b in zip(divs, divs[1:]))


def describe(M: FPModule) -> str:
    """Human-readable isomorphism type, e.g. 'R/(2) + R/(4)'."""
    R = M.ring
    if R.is_product:
        return " x ".join("(" + describe(_split_module(M, k)) + ")" for k in range(len(R.parts)))
    divs = M.invariants()
    if not divs:
        return "0"
    dom = R.domain

    def show(d):
        if d == R.modulus or d == dom.zero:
            return "R"
        if dom is ZZ:
            return f"R/({d})"
        from .exact_linalg import poly_str
        return f"R/({poly_str(d)})"

    return " + ".join(show(d) for d in divs)


# ---------------------------------------------------------------------------
# normal form (simple rings)


def _diagonalize(R: RingSpec, g: int, rel_lists):
    """Diagonalize a presentation over the cover of a simple ring.

    rel_lists is g rows of relation coefficients.  Returns (divs, P, Q)
    as plain lists: P maps old coordinates to new ones (s x g), Q maps the
    new generators back (g x s).
    """
    dom = R.domain
    c = R.modulus
    rows = [list(r) for r in rel_lists]
    ncols = len(rows[0]) if rows else 0
    if c != dom.zero:
        for i in range(g):
            rows[i] = rows[i] + [c if i == j else dom.zero for j in range(g)]
        ncols += g
    if g == 0:
        return [], [], []
    U, D, _, Ui = smith_normal_form_domain(dom, rows, g, ncols)
    divs, P, Q = [], [], []
    for i in range(g):
        d = D[i][i] if i < ncols else dom.zero
        d = dom.normal_part(d)[0]
        if dom.is_unit(d):
            continue
        divs.append(d)
        P.append([dom_reduce(dom, x, d) for x in U[i]])
        Q.append([Ui[r][i] for r in range(g)])
    Q = [list(col) for col in zip(*Q)] if Q else [[] for _ in range(g)]
    return divs, P, Q


def _is_unit_div(R, d):
    if R.is_product:
        return all(r.domain.is_unit(x) for r, x in zip(R.parts, d))
    return R.domain.is_unit(d)


def normal_form(M: FPModule):
    """(N, P, Q): N diagonal, P: M -> N and Q: N -> M mutually inverse
    coordinate matrices (None stands for the identity)."""
    if M._nf_cache is not None:
        return M._nf_cache
    R = M.ring
    if M._divs is not None:
        keep = [i for i, d in enumerate(M._divs) if not _is_unit_div(R, d)]
        if len(keep) == M.num_generators:
            M._nf_cache = (M, None, None)
        else:
            N = FPModule.diagonal(R, [M._divs[i] for i in keep])
            eye = ExactMatrix.identity(R, M.num_generators)
            M._nf_cache = (N, eye.submatrix(keep, range(M.num_generators)),
                           eye.submatrix(range(M.num_generators), keep))
        return M._nf_cache
    if R.is_product:
        parts = [normal_form(_split_module(M, k)) for k in range(len(R.parts))]
        N = _join_modules(R, [p[0] for p in parts])
        P = ExactMatrix.from_components(
            R, [p[1] if p[1] is not None else ExactMatrix.identity(r, M.num_generators)
                for p, r in zip(parts, R.parts)], N.num_generators, M.num_generators)
        Q = ExactMatrix.from_components(
            R, [p[2] if p[2] is not None else ExactMatrix.identity(r, M.num_generators)
                for p, r in zip(parts, R.parts)], M.num_generators, N.num_generators)
        M._nf_cache = (N, P, Q)
        return M._nf_cache
    divs, P, Q = _diagonalize(R, M.num_generators, M.relations.lift())
    N = FPModule.diagonal(R, divs)
    M._nf_cache = (N, ExactMatrix(R, P, len(divs), M.num_generators),
                   ExactMatrix(R, Q, M.num_generators, len(divs)))
    return M._nf_cache


# ---------------------------------------------------------------------------
# product-ring plumbing


def _split_module(M: FPModule, k: int) -> FPModule:
    if M._parts_cache is None:
        R = M.ring
        parts = []
        for j, r in enumerate(R.parts):
            Mk = FPModule(r, M.num_generators, M.relations.component(j))
            if M._divs is not None:
                Mk._divs = [d[j] for d in M._divs]
            parts.append(Mk)
        M._parts_cache = parts
    return M._parts_cache[k]


def _join_modules(R: RingSpec, mods) -> FPModule:
    g = max((m.num_generators for m in mods), default=0)
    divs = []
    for i in range(g):
        divs.append(tuple(m._divs[i] if i < m.num_generators else r.domain.one
                          for m, r in zip(mods, R.parts)))
    return FPModule.diagonal(R, divs)


def _split_morphism(f: "ModMorphism", k: int) -> "ModMorphism":
    return ModMorphism(_split_module(f.source, k), _split_module(f.target, k),
                       f.matrix.component(k), check=False)


def _join_morphism(source: FPModule, target: FPModule, comps) -> "ModMorphism":
    R = source.ring
    mat = ExactMatrix.from_components(R, [c.matrix for c in comps],
                                      target.num_generators, source.num_generators)
    return ModMorphism(source, target, mat, check=False)


# ---------------------------------------------------------------------------
# morphisms


class ModMorphism:
    """A module map given by the images of the source generators (columns)."""

    def __init__(self, source: FPModule, target: FPModule, matrix, check: bool = True):
        if source.ring != target.ring:
            raise RingMismatch("source and target over different rings")
        R = source.ring
        if not isinstance(matrix, ExactMatrix):
            matrix = ExactMatrix(R, matrix, target.num_generators, source.num_generators)
        if matrix.ring != R:
            raise RingMismatch("matrix over a different ring")
        if matrix.shape != (target.num_generators, source.num_generators):
            raise ShapeMismatch(
                f"matrix is {matrix.shape}, expected {(target.num_generators, source.num_generators)}")
        self.source = source
        self.target = target
        self.matrix = target.reduce_matrix(matrix)
        if check and not self.is_well_defined():
            raise IllDefinedMorphism("matrix does not respect the source relations")

    @property
    def ring(self):
        return self.source.ring

    def is_well_defined(self) -> bool:
        rel = self.source.relations
        if rel.ncols == 0:
            return True
        img = self.matrix @ rel
        return _lies_in_relations(self.target, img)

    def __repr__(self):
        return f"ModMorphism({[list(r) for r in self.matrix.rows]})"

    def __matmul__(self, other: "ModMorphism") -> "ModMorphism":
        """Composition: (self @ other)(x) = self(other(x))."""
        if other.target is not self.source and other.target.num_generators != self.source.num_generators:
            raise ShapeMismatch("morphisms are not composable")
        return ModMorphism(other.source, self.target, self.matrix @ other.matrix, check=False)

    def __add__(self, other):
        return ModMorphism(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other):
        return ModMorphism(self.source, self.target, self.matrix - other.matrix, check=False)

    def __neg__(self):
        return ModMorphism(self.source, self.target, -self.matrix, check=False)

    def scale(self, a):
        return ModMorphism(self.source, self.target, self.matrix.scale(a), check=False)

    def is_zero(self) -> bool:
        return _lies_in_relations(self.target, self.matrix)

    def __eq__(self, other):
        if not isinstance(other, ModMorphism):
            return NotImplemented
        return self.matrix.shape == other.matrix.shape and (self - other).is_zero()

    __hash__ = None


def _lies_in_relations(N: FPModule, A: ExactMatrix) -> bool:
    """Are all columns of A zero as elements of N?"""
    if A.ncols == 0:
        return True
    if N._divs is not None:
        return N.reduce_matrix(A).is_zero()
    Nn, P, _ = normal_form(N)
    return Nn.reduce_matrix(P @ A).is_zero()


def identity(M: FPModule) -> ModMorphism:
    return ModMorphism(M, M, ExactMatrix.identity(M.ring, M.num_generators), check=False)


def zero_map(M: FPModule, N: FPModule) -> ModMorphism:
    return ModMorphism(M, N, ExactMatrix.zeros(M.ring, N.num_generators, M.num_generators),
                       check=False)


def _in_normal_coords(f: ModMorphism):
    """(Ms, Ns, F) with F the matrix of f between the diagonal models."""
    Ms, _, Qm = normal_form(f.source)
    Ns, Pn, _ = normal_form(f.target)
    F = f.matrix
    if Qm is not None:
        F = F @ Qm
    if Pn is not None:
        F = Pn @ F
    return Ms, Ns, Ns.reduce_matrix(F)


def _from_normal_source(M: FPModule, mat: ExactMatrix) -> ExactMatrix:
    """Given a matrix of a map out of the diagonal model of M, return the
    matrix on M's own generators."""
    _, P, _ = normal_form(M)
    return mat if P is None else mat @ P


def _to_target(N: FPModule, mat: ExactMatrix) -> ExactMatrix:
    _, _, Q = normal_form(N)
    return mat if Q is None else Q @ mat


# ---------------------------------------------------------------------------
# kernels and cokernels


def kernel(f: ModMorphism):
    """(K, inclusion K -> source)."""
    R = f.ring
    if R.is_product:
        res = [kernel(_split_morphism(f, k)) for k in range(len(R.parts))]
        K = _join_modules(R, [r[0] for r in res])
        return K, _join_morphism(K, f.source, [r[1] for r in res])
    Ms, Ns, F = _in_normal_coords(f)
    dom = R.domain
    m, n = Ms.num_generators, Ns.num_generators
    A = [list(F.rows[i]) + [dom.neg(Ns._divs[i]) if i == j else dom.zero for j in range(n)]
         for i in range(n)]
    if n == 0:
        gens = [[dom.one if i == j else dom.zero for i in range(m)] for j in range(m)]
    else:
        gens = [v[:m] for v in dom_kernel(dom, A, n, m + n)]
    gens = [v for v in gens if any(x != dom.zero for x in v)]
    s = len(gens)
    # relations among the generators modulo the source divisors
    G = [[gens[j][i] for j in range(s)] + [dom.neg(Ms._divs[i]) if i == k else dom.zero
                                          for k in range(m)] for i in range(m)]
    rel = [v[:s] for v in dom_kernel(dom, G, m, s + m)] if s else []
    rel_rows = [[v[i] for v in rel] for i in range(s)]
    divs, _, Q = _diagonalize(R, s, rel_rows)
    K = FPModule.diagonal(R, divs)
    Gm = ExactMatrix(R, [[gens[j][i] for j in range(s)] for i in range(m)], m, s)
    inc = Gm @ ExactMatrix(R, Q, s, len(divs))
    return K, ModMorphism(K, f.source, _to_target(f.source, inc), check=False)


def cokernel(f: ModMorphism):
    """(C, projection target -> C)."""
    R = f.ring
    if R.is_product:
        res = [cokernel(_split_morphism(f, k)) for k in range(len(R.parts))]
        C = _join_modules(R, [r[0] for r in res])
        return C, _join_morphism(f.target, C, [r[1] for r in res])
    Ms, Ns, F = _in_normal_coords(f)
    dom = R.domain
    n = Ns.num_generators
    rows = [list(F.rows[i]) + [Ns._divs[i] if i == j else dom.zero for j in range(n)]
            for i in range(n)]
    divs, P, _ = _diagonalize(R, n, rows)
    C = FPModule.diagonal(R, divs)
    proj = ExactMatrix(R, P, len(divs), n)
    return C, ModMorphism(f.target, C, _from_normal_source(f.target, proj), check=False)


def image(f: ModMorphism):
    """(I, inclusion I -> target, corestriction source -> I)."""
    _, p = cokernel(f)
    K, inc = kernel(p)
    core = lift_along(f, inc)
    return K, inc, core


def is_mono(f: ModMorphism) -> bool:
    return kernel(f)[0].is_zero()


def is_epi(f: ModMorphism) -> bool:
    return cokernel(f)[0].is_zero()


# ---------------------------------------------------------------------------
# lifting and extension problems


def lift_along(g: ModMorphism, f: ModMorphism) -> Optional[ModMorphism]:
    """Some h with f @ h == g (g: X -> N, f: M -> N), or None."""
    R = f.ring
    if g.ring != R:
        raise RingMismatch("lift_along over different rings")
    if R.is_product:
        comps = []
        for k in range(len(R.parts)):
            h = lift_along(_split_morphism(g, k), _split_morphism(f, k))
            if h is None:
                return None
            comps.append(h)
        return _join_morphism(g.source, f.source, comps)
    dom = R.domain
    Ms, Ns, F = _in_normal_coords(f)
    Xs, _, G = _in_normal_coords(ModMorphism(g.source, f.target, g.matrix, check=False))
    m, n, x = Ms.num_generators, Ns.num_generators, Xs.num_generators
    H = [[dom.zero] * x for _ in range(m)]
    by_div = {}
    for j, a in enumerate(Xs._divs):
        by_div.setdefault(a, []).append(j)
    for a, cols in by_div.items():
        sig = [_sigma(dom, a, b) for b in Ms._divs]
        A = [[dom.mul(F.rows[i][l], sig[l]) for l in range(m)]
             + [dom.neg(Ns._divs[i]) if i == k else dom.zero for k in range(n)] for i in range(n)]
        B = [[G.rows[i][j] for j in cols] for i in range(n)]
        if n == 0:
            continue
        sol = dom_solve(dom, A, B, n, m + n)
        if sol is None:
            return None
        for c, j in enumerate(cols):
            for l in range(m):
                H[l][j] = dom.mul(sol[l][c], sig[l])
    Hm = ExactMatrix(R, H, m, x)
    Hm = _to_target(f.source, _from_normal_source(g.source, Hm))
    return ModMorphism(g.source, f.source, Hm, check=False)


def extend_along(g: ModMorphism, f: ModMorphism) -> Optional[ModMorphism]:
    """Some h with h @ f == g (g: M -> Y, f: M -> N), or None."""
    R = f.ring
    if g.ring != R:
        raise RingMismatch("extend_along over different rings")
    if R.is_product:
        comps = []
        for k in range(len(R.parts)):
            h = extend_along(_split_morphism(g, k), _split_morphism(f, k))
            if h is None:
                return None
            comps.append(h)
        return _join_morphism(f.target, g.target, comps)
    dom = R.domain
    Ms, Ns, F = _in_normal_coords(f)
    _, Ys, G = _in_normal_coords(ModMorphism(f.source, g.target, g.matrix, check=False))
    m, n, y = Ms.num_generators, Ns.num_generators, Ys.num_generators
    H = [[dom.zero] * n for _ in range(y)]
    by_div = {}
    for i, b in enumerate(Ys._divs):
        by_div.setdefault(b, []).append(i)
    for b, rows in by_div.items():
        if m == 0:
            continue
        sig = [_sigma(dom, e, b) for e in Ns._divs]
        # unknowns s_l (l < n) and t_k (k < m): sum_l s_l sig_l F[l][k] + b t_k = G[i][k]
        A = [[dom.mul(sig[l], F.rows[l][k]) for l in range(n)]
             + [b if k == kk else dom.zero for kk in range(m)] for k in range(m)]
        B = [[G.rows[i][k] for i in rows] for k in range(m)]
        sol = dom_solve(dom, A, B, m, n + m)
        if sol is None:
            return None
        for c, i in enumerate(rows):
            for l in range(n):
                H[i][l] = dom.mul(sol[l][c], sig[l])
    Hm = ExactMatrix(R, H, y, n)
    Hm = _to_target(g.target, _from_normal_source(f.target, Hm))
    return ModMorphism(f.target, g.target, Hm, check=False)


def is_split_epi(f: ModMorphism):
    """(True, section) or (False, None)."""
    s = lift_along(identity(f.target), f)
    return (s is not None), s


def is_split_mono(f: ModMorphism):
    """(True, retraction) or (False, None)."""
    r = extend_along(identity(f.source), f)
    return (r is not None), r


def is_iso(f: ModMorphism):
    """(True, inverse) or (False, None)."""
    ok, s = is_split_epi(f)
    if not ok or not is_mono(f):
        return False, None
    return True, s


# ---------------------------------------------------------------------------
# finite limits and colimits


class Biproduct:
    """A finite direct sum with its injections and projections."""

    def __init__(self, module, summands, injections, projections):
        self.module = module
        self.summands = summands
        self.injections = injections
        self.projections = projections

    def __iter__(self):
        return iter((self.module, self.injections, self.projections))

    def offsets(self):
        out, pos = [], 0
        for M in self.summands:
            out.append(pos)
            pos += M.num_generators
        return out


def biproduct(mods, ring: Optional[RingSpec] = None) -> Biproduct:
    """Direct sum of a list of modules (the zero module for an empty list)."""
    mods = list(mods)
    if not mods:
        if ring is None:
            raise ValueError("biproduct of an empty list needs the ring")
        return Biproduct(FPModule.zero(ring), [], [], [])
    R = mods[0].ring
    if any(M.ring != R for M in mods):
        raise RingMismatch("biproduct of modules over different rings")
    if len(mods) == 1:
        M = mods[0]
        return Biproduct(M, mods, [identity(M)], [identity(M)])
    if all(M._divs is not None for M in mods):
        S = FPModule.diagonal(R, [d for M in mods for d in M._divs])
    else:
        rel = block_diag(R, [M.relations for M in mods])
        S = FPModule(R, sum(M.num_generators for M in mods), rel)
    inj, proj = [], []
    total = S.num_generators
    pos = 0
    for M in mods:
        g = M.num_generators
        E = [[R.one if (i == pos + j) else R.zero for j in range(g)] for i in range(total)]
        Em = ExactMatrix._raw(R, E, total, g)
        inj.append(ModMorphism(M, S, Em, check=False))
        proj.append(ModMorphism(S, M, Em.T, check=False))
        pos += g
    return Biproduct(S, mods, inj, proj)


def direct_sum_map(maps, source_sum: Biproduct, target_sum: Biproduct) -> ModMorphism:
    """The block-diagonal map between two biproducts."""
    R = source_sum.module.ring
    mat = block_diag(R, [f.matrix for f in maps]) if maps else ExactMatrix.zeros(R, 0, 0)
    return ModMorphism(source_sum.module, target_sum.module, mat, check=False)


def map_from_blocks(source_sum: Biproduct, target_sum: Biproduct, blocks) -> ModMorphism:
    """Assemble a map between biproducts from a grid of component maps
    blocks[i][j]: source summand j -> target summand i (None = 0)."""
    R = source_sum.module.ring
    grid = [[b.matrix if b is not None else None for b in row] for row in blocks]
    mat = block(R, grid, [M.num_generators for M in target_sum.summands],
                [M.num_generators for M in source_sum.summands])
    return ModMorphism(source_sum.module, target_sum.module, mat, check=False)


def map_into_sum(target_sum: Biproduct, maps) -> ModMorphism:
    """The map X -> (+) M_i with components maps[i] (None = 0)."""
    src = next(f.source for f in maps if f is not None)
    R = src.ring
    mats = [f.matrix if f is not None else ExactMatrix.zeros(R, M.num_generators, src.num_generators)
            for f, M in zip(maps, target_sum.summands)]
    return ModMorphism(src, target_sum.module, vstack(R, mats, src.num_generators), check=False)


def map_out_of_sum(source_sum: Biproduct, maps) -> ModMorphism:
    """The map (+) M_i -> Y with components maps[i] (None = 0)."""
    tgt = next(f.target for f in maps if f is not None)
    R = tgt.ring
    mats = [f.matrix if f is not None else ExactMatrix.zeros(R, tgt.num_generators, M.num_generators)
            for f, M in zip(maps, source_sum.summands)]
    return ModMorphism(source_sum.module, tgt, hstack(R, mats, tgt.num_generators), check=False)


def pushout(f: ModMorphism, g: ModMorphism):
    """Pushout of B <-f- A -g-> C: returns (P, B -> P, C -> P)."""
    S = biproduct([f.target, g.target])
    h = map_into_sum(S, [f, -g])
    P, q = cokernel(h)
    return P, q @ S.injections[0], q @ S.injections[1]


def pullback(f: ModMorphism, g: ModMorphism):
    """Pullback of B -f-> D <-g- C: returns (P, P -> B, P -> C)."""
    S = biproduct([f.source, g.source])
    h = map_out_of_sum(S, [f, -g])
    P, i = kernel(h)
    return P, S.projections[0] @ i, S.projections[1] @ i


# ---------------------------------------------------------------------------
# hom modules


class HomModule:
    """Hom(M, N) as a module, with a bijection to actual morphisms."""

    def __init__(self, source: FPModule, target: FPModule):
        self.source = source
        self.target = target
        R = source.ring
        self.ring = R
        if R.is_product:
            self._parts = [HomModule(_split_module(source, k), _split_module(target, k))
                           for k in range(len(R.parts))]
            self.module = _join_modules(R, [h.module for h in self._parts])
            return
        dom = R.domain
        Ms, _, _ = normal_form(source)
        Ns, _, _ = normal_form(target)
        self._slots = []
        divs = []
        for i, b in enumerate(Ns._divs):
            for j, a in enumerate(Ms._divs):
                if b == dom.zero and a != dom.zero:
                    continue
                g = dom_gcd(dom, a, b)
                if dom.is_unit(g):
                    continue
                self._slots.append((i, j, _sigma(dom, a, b), g))
                divs.append(g)
        self.module = FPModule.diagonal(R, divs)

    def decode(self, vec) -> ModMorphism:
        """The morphism represented by a coordinate vector of the hom module."""
        R = self.ring
        vec = list(vec)
        if R.is_product:
            mats = []
            for k, h in enumerate(self._parts):
                sub = [v[k] for v in vec[:h.module.num_generators]]
                mats.append(h.decode(sub).matrix)
            mat = ExactMatrix.from_components(R, mats, self.target.num_generators,
                                              self.source.num_generators)
            return ModMorphism(self.source, self.target, mat, check=False)
        Ms, _, _ = normal_form(self.source)
        Ns, _, _ = normal_form(self.target)
        dom = R.domain
        F = [[dom.zero] * Ms.num_generators for _ in range(Ns.num_generators)]
        for (i, j, sig, _), v in zip(self._slots, vec):
            F[i][j] = dom.mul(v, sig)
        mat = ExactMatrix(R, F, Ns.num_generators, Ms.num_generators)
        mat = _to_target(self.target, _from_normal_source(self.source, mat))
        return ModMorphism(self.source, self.target, mat, check=False)

    def encode(self, f: ModMorphism):
        """Coordinates of a morphism in the hom module (canonical form)."""
        R = self.ring
        if R.is_product:
            out = [[] for _ in range(self.module.num_generators)]
            for k, h in enumerate(self._parts):
                sub = h.encode(_split_morphism(f, k))
                for i in range(self.module.num_generators):
                    out[i].append(sub[i] if i < len(sub) else R.parts[k].zero)
            return [tuple(x) for x in out]
        dom = R.domain
        _, Ns, F = _in_normal_coords(ModMorphism(self.source, self.target, f.matrix, check=False))
        out = []
        for i, j, sig, g in self._slots:
            x = F.rows[i][j]
            q, r = dom.divmod(x, sig) if sig != dom.one else (x, dom.zero)
            if r != dom.zero:
                raise IllDefinedMorphism("matrix entry outside the allowed ideal")
            out.append(R.reduce(dom_reduce(dom, q, g)))
        return out

    def generators(self):
        n = self.module.num_generators
        R = self.ring
        return [self.decode([R.one if i == j else R.zero for i in range(n)]) for j in range(n)]

    def _induced(self, other: "HomModule", fn) -> ModMorphism:
        cols = [other.encode(fn(phi)) for phi in self.generators()]
        R = self.ring
        n_out = other.module.num_generators
        mat = ExactMatrix._raw(R, [[cols[j][i] for j in range(len(cols))] for i in range(n_out)],
                               n_out, len(cols)) if cols else ExactMatrix.zeros(R, n_out, 0)
        return ModMorphism(self.module, other.module, mat, check=False)

    def precompose(self, g: ModMorphism, other: Optional["HomModule"] = None) -> ModMorphism:
        """Hom(M, N) -> Hom(M', N), phi |-> phi o g, for g: M' -> M."""
        other = other or HomModule(g.source, self.target)
        return self._induced(other, lambda phi: phi @ g)

    def postcompose(self, h: ModMorphism, other: Optional["HomModule"] = None) -> ModMorphism:
        """Hom(M, N) -> Hom(M, N'), phi |-> h o phi, for h: N -> N'."""
        other = other or HomModule(self.source, h.target)
        return self._induced(other, lambda phi: h @ phi)


def hom_module(M: FPModule, N: FPModule) -> HomModule:
    if M.ring != N.ring:
        raise RingMismatch(f"{M.ring} vs {N.ring}")
    return HomModule(M, N)


def is_isomorphic(M: FPModule, N: FPModule) -> bool:
    return M.ring == N.ring and M.invariants() == N.invariants()



def solve_hom_system(unknowns, equations):
    """Solve a linear system whose unknowns are morphisms.

    `unknowns` is a list of HomModule.  Each equation is a triple
    (hom, terms, rhs): `hom` is the HomModule the equation lives in, `terms`
    is a list of (index, fn) with fn a linear map from the unknown's hom set
    to `hom`, and rhs is a morphism (None for zero).  Returns a list of
    morphisms, one per unknown, or None when the system has no solution.
    """
    R = unknowns[0].ring if unknowns else equations[0][0].ring
    cols = []
    for a, H in enumerate(unknowns):
        for phi in H.generators():
            vec = []
            for hom, terms, _ in equations:
                acc = None
                for idx, fn in terms:
                    if idx == a:
                        v = fn(phi)
                        acc = v if acc is None else acc + v
                if acc is None:
                    vec.extend([R.zero] * hom.module.num_generators)
                else:
                    vec.extend(hom.encode(acc))
            cols.append(vec)
    S = biproduct([H.module for H in unknowns], R)
    T = biproduct([hom.module for hom, _, _ in equations], R)
    nT = T.module.num_generators
    Phi = ModMorphism(S.module, T.module,
                      ExactMatrix(R, [[c[r] for c in cols] for r in range(nT)], nT, len(cols)),
                      check=False)
    rhs = []
    for hom, _, b in equations:
        rhs.extend(hom.encode(b) if b is not None else [R.zero] * hom.module.num_generators)
    one = FPModule.free(R, 1)
    v = ModMorphism(one, T.module, ExactMatrix(R, [[x] for x in rhs], nT, 1), check=False)
    x = lift_along(v, Phi)
    if x is None:
        return None
    xs = [row[0] for row in x.matrix.rows]
    out, pos = [], 0
    for H in unknowns:
        k = H.module.num_generators
        out.append(H.decode(xs[pos:pos + k]))
        pos += k
    return out


def copair_from_pushout(into_p_from_b: ModMorphism, into_p_from_c: ModMorphism,
                        u: ModMorphism, v: ModMorphism) -> ModMorphism:
    """The map P -> Y out of a pushout P with legs B -> P, C -> P, induced by
    compatible u: B -> Y and v: C -> Y."""
    S = biproduct([into_p_from_b.source, into_p_from_c.source])
    q = map_out_of_sum(S, [into_p_from_b, into_p_from_c])
    w = map_out_of_sum(S, [u, v])
    h = extend_along(w, q)
    if h is None:
        raise IllDefinedMorphism("maps do not agree on the pushout")
    return h
