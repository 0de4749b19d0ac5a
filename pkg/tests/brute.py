"""Brute-force oracles over finite rings.

Nothing here touches the Smith form: modules are enumerated as sets of
cosets R^n / span(relations), and every count is obtained by walking
those sets.  Keep the inputs tiny.
"""

from itertools import product


def ring_elements(R):
    return R.elements()


def vec_add(R, x, y):
    return tuple(R.add(a, b) for a, b in zip(x, y))


def vec_scale(R, a, x):
    return tuple(R.mul(a, b) for b in x)


def span(R, vecs, n):
    """The R-submodule of R^n generated by vecs, as a set."""
    zero = tuple([R.zero] * n)
    out = {zero}
    scalars = ring_elements(R)
    for v in vecs:
        multiples = {vec_scale(R, a, v) for a in scalars}
        out = {vec_add(R, x, m) for x in out for m in multiples}
    return out


class Finite:
    """A finite module R^g / span(relations) with explicit cosets."""

    def __init__(self, M):
        R = M.ring
        self.ring = R
        self.n = M.num_generators
        rels = [tuple(M.relations.rows[i][j] for i in range(self.n))
                for j in range(M.relations.ncols)]
        self.sub = span(R, rels, self.n)
        self.coset = {}
        self.reps = []
        for x in product(ring_elements(R), repeat=self.n):
            if x in self.coset:
                continue
            cid = len(self.reps)
            self.reps.append(x)
            for s in self.sub:
                self.coset[vec_add(R, x, s)] = cid

    def __len__(self):
        return len(self.reps)

    def cid(self, x):
        return self.coset[tuple(x)]

    def is_zero(self, x):
        return self.cid(x) == self.coset[tuple([self.ring.zero] * self.n)]


def apply(R, matrix, x):
    """Image of a coordinate vector under a matrix (rows of ring elements)."""
    out = []
    for row in matrix.rows:
        acc = R.zero
        for a, b in zip(row, x):
            acc = R.add(acc, R.mul(a, b))
        out.append(acc)
    return tuple(out)


def kernel_set(f, src: Finite, tgt: Finite):
    """Coset ids of the source that map to zero."""
    R = f.ring
    return {i for i, x in enumerate(src.reps) if tgt.is_zero(apply(R, f.matrix, x))}


def image_set(f, src: Finite, tgt: Finite):
    R = f.ring
    return {tgt.cid(apply(R, f.matrix, x)) for x in src.reps}


def count_homs(M, N, src: Finite = None, tgt: Finite = None):
    """Number of well-defined maps M -> N, by trying every tuple of images."""
    src = src or Finite(M)
    tgt = tgt or Finite(N)
    R = M.ring
    rels = [[M.relations.rows[i][j] for i in range(M.num_generators)]
            for j in range(M.relations.ncols)]
    count = 0
    for imgs in product(tgt.reps, repeat=M.num_generators):
        ok = True
        for r in rels:
            acc = tuple([R.zero] * N.num_generators)
            for a, v in zip(r, imgs):
                acc = vec_add(R, acc, vec_scale(R, a, v))
            if not tgt.is_zero(acc):
                ok = False
                break
        if ok:
            count += 1
    return count


def all_homs(M, N, tgt: Finite = None):
    """Every well-defined map M -> N as a list of image tuples."""
    tgt = tgt or Finite(N)
    R = M.ring
    rels = [[M.relations.rows[i][j] for i in range(M.num_generators)]
            for j in range(M.relations.ncols)]
    out = []
    for imgs in product(tgt.reps, repeat=M.num_generators):
        ok = True
        for r in rels:
            acc = tuple([R.zero] * N.num_generators)
            for a, v in zip(r, imgs):
                acc = vec_add(R, acc, vec_scale(R, a, v))
            if not tgt.is_zero(acc):
                ok = False
                break
        if ok:
            out.append(imgs)
    return out


def images_to_matrix(R, imgs, nrows):
    """Turn a tuple of image vectors (one per source generator) into rows."""
    return [[imgs[j][i] for j in range(len(imgs))] for i in range(nrows)]
