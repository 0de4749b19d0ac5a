"""Comparisons between the Smith-form machinery and brute enumeration.

Shared by the module tests and the acceptance suite.
"""

import random

from brute import Finite, apply, count_homs, image_set, kernel_set, vec_add, vec_scale
from relhom.exact_linalg import ExactMatrix
from relhom.modules import FPModule, ModMorphism, cokernel, hom_module, kernel

ENUM_LIMIT = 6000


def random_presented(R, rng, max_gens=3, max_rels=2):
    g = rng.randint(1, max_gens)
    r = rng.randint(0, max_rels)
    els = R.elements()
    rows = [[rng.choice(els) for _ in range(r)] for _ in range(g)]
    return FPModule(R, g, ExactMatrix(R, rows, g, r))


def _respects(M, tgt, imgs):
    R = M.ring
    for j in range(M.relations.ncols):
        acc = tuple([R.zero] * tgt.n)
        for i, v in enumerate(imgs):
            acc = vec_add(R, acc, vec_scale(R, M.relations.rows[i][j], v))
        if not tgt.is_zero(acc):
            return False
    return True


def random_oracle_morphism(R, rng, max_gens=3):
    """A morphism chosen by sampling images until the relations hold; the
    zero map is the fallback.  Sizes are kept small enough to enumerate."""
    while True:
        M = random_presented(R, rng, max_gens)
        N = random_presented(R, rng, max_gens)
        src, tgt = Finite(M), Finite(N)
        if len(tgt) ** M.num_generators <= ENUM_LIMIT:
            break
    imgs = None
    for _ in range(40):
        cand = [rng.choice(tgt.reps) for _ in range(M.num_generators)]
        if _respects(M, tgt, cand):
            imgs = cand
            break
    if imgs is None:
        imgs = [tuple([R.zero] * N.num_generators)] * M.num_generators
    rows = [[imgs[j][i] for j in range(M.num_generators)] for i in range(N.num_generators)]
    f = ModMorphism(M, N, ExactMatrix(R, rows, N.num_generators, M.num_generators))
    return f, src, tgt


def morphism_mismatches(f, src, tgt):
    """Every disagreement between kernel/cokernel/hom_module and enumeration."""
    R = f.ring
    bad = []
    K, inc = kernel(f)
    ker = kernel_set(f, src, tgt)
    fk = Finite(K)
    if len(fk) != len(ker):
        bad.append(f"kernel order {len(fk)} vs {len(ker)}")
    if image_set(inc, fk, src) != ker:
        bad.append("kernel inclusion lands outside the kernel or misses part of it")
    C, q = cokernel(f)
    fc = Finite(C)
    im = image_set(f, src, tgt)
    if len(fc) * len(im) != len(tgt):
        bad.append(f"cokernel order {len(fc)}, expected {len(tgt) // len(im)}")
    if any(not fc.is_zero(apply(R, q.matrix, tgt.reps[i])) for i in im):
        bad.append("cokernel projection does not kill the image")
    if len(image_set(q, tgt, fc)) != len(fc):
        bad.append("cokernel projection is not onto")
    H = hom_module(f.source, f.target)
    n_homs = count_homs(f.source, f.target, src, tgt)
    if len(Finite(H.module)) != n_homs:
        bad.append(f"hom module order {len(Finite(H.module))} vs {n_homs} maps")
    rng = random.Random(len(bad))
    vec = [rng.choice(R.elements()) for _ in range(H.module.num_generators)]
    if not H.decode(vec).is_well_defined():
        bad.append("decoded hom element is not a morphism")
    return bad
