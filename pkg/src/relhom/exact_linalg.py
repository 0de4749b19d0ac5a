"""Exact matrix algebra over the supported coefficient rings.

Two Euclidean domains do all the real work: the integers and F_p[t].
Every other ring is a quotient D/(c) of one of them, or a finite
product of such quotients.  Over a quotient, a linear system A x = b is
lifted to D by adjoining c times the identity as extra columns, and the
Smith form over D decides it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional


class RingMismatch(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# Euclidean domains


class IntegerDomain:
    """The integers, with the usual floor division."""

    zero = 0
    one = 1

    def __repr__(self):
        return "ZZ"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def norm(self, a):
        return abs(a)

    def divmod(self, a, b):
        return divmod(a, b)

    def normal_part(self, a):
        """Return (canonical associate, unit u) with a == u * associate."""
        if a < 0:
            return -a, -1
        return a, 1

    def unit_inverse(self, u):
        return u

    def is_unit(self, a):
        return a == 1 or a == -1

    def from_int(self, k):
        return k


class PolyDomain:
    """F_p[t]; a polynomial is a tuple of coefficients, constant term first."""

    one = (1,)
    zero = ()

    def __init__(self, p):
        self.p = p

    def __repr__(self):
        return f"F{self.p}[t]"

    def __eq__(self, other):
        return isinstance(other, PolyDomain) and other.p == self.p

    def __hash__(self):
        return hash(("poly", self.p))

    def trim(self, coeffs):
        c = [x % self.p for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    def add(self, a, b):
        n = max(len(a), len(b))
        return self.trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                          for i in range(n)])

    def neg(self, a):
        return self.trim([-x for x in a])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self.trim(out)

    def norm(self, a):
        # degree; the zero polynomial is never used as a divisor
        return len(a) - 1

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        inv = pow(b[-1], p - 2, p)
        r = list(a)
        q = [0] * max(len(a) - len(b) + 1, 0)
        while len(r) >= len(b) and r:
            coef = (r[-1] * inv) % p
            shift = len(r) - len(b)
            q[shift] = coef
            for i, y in enumerate(b):
                r[shift + i] = (r[shift + i] - coef * y) % p
            while r and r[-1] == 0:
                r.pop()
        return self.trim(q), self.trim(r)

    def normal_part(self, a):
        if not a:
            return (), (1,)
        lead = a[-1]
        inv = pow(lead, self.p - 2, self.p)
        return self.mul(a, (inv,)), (lead,)

    def unit_inverse(self, u):
        return (pow(u[0], self.p - 2, self.p),)

    def is_unit(self, a):
        return len(a) == 1

    def from_int(self, k):
        return self.trim([k])


ZZ = IntegerDomain()


@lru_cache(maxsize=None)
def poly_domain(p):
    return PolyDomain(p)


def dom_gcd(dom, a, b):
    """Normalized gcd of two domain elements."""
    while b != dom.zero:
        a, b = b, dom.divmod(a, b)[1]
    return dom.normal_part(a)[0]


def dom_divides(dom, a, b):
    """Does a divide b?"""
    if a == dom.zero:
        return b == dom.zero
    return dom.divmod(b, a)[1] == dom.zero


def dom_quo(dom, a, b):
    """Exact quotient b | a assumed."""
    return dom.divmod(a, b)[0]


def dom_reduce(dom, a, d):
    """Remainder of a modulo d, with d == 0 meaning no reduction."""
    if d == dom.zero:
        return a
    r = dom.divmod(a, d)[1]
    if dom is ZZ and r < 0:
        r += abs(d)
    return r


# ---------------------------------------------------------------------------
# Rings


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class RingSpec:
    """A commutative coefficient ring.

    kind is one of "Integers", "IntegersMod", "PrimeField", "QuotientPoly",
    "ProductRing".  Use the constructor functions below rather than building
    instances by hand; they validate the parameters.
    """

    kind: str
    n: int = 0
    p: int = 0
    f: tuple = ()
    parts: tuple = ()

    # -- structure -------------------------------------------------------
    @property
    def is_product(self) -> bool:
        return self.kind == "ProductRing"

    @property
    def is_finite(self) -> bool:
        return self.kind != "Integers" and all(r.is_finite for r in self.parts)

    @cached_property
    def domain(self):
        if self.kind == "QuotientPoly":
            return poly_domain(self.p)
        if self.is_product:
            raise TypeError("a product ring has no single Euclidean cover")
        return ZZ

    @property
    def modulus(self):
        """The generator c of the kernel of D -> R (zero for the integers)."""
        if self.kind == "Integers":
            return 0
        if self.kind == "IntegersMod":
            return self.n
        if self.kind == "PrimeField":
            return self.p
        if self.kind == "QuotientPoly":
            return self.f
        raise TypeError("a product ring has no single modulus")

    def order(self) -> int:
        if self.kind == "IntegersMod":
            return self.n
        if self.kind == "PrimeField":
            return self.p
        if self.kind == "QuotientPoly":
            return self.p ** (len(self.f) - 1)
        if self.is_product:
            out = 1
            for r in self.parts:
                out *= r.order()
            return out
        raise ValueError("the integers are infinite")

    # -- elements ----------------------------------------------------------
    def reduce(self, a):
        """Canonical representative of a ring element."""
        if self.is_product:
            return tuple(r.reduce(x) for r, x in zip(self.parts, a))
        if self.kind == "Integers":
            return a
        if self.kind == "QuotientPoly":
            if isinstance(a, int):
                a = (a,)
            dom = self.domain
            return dom.divmod(dom.trim(a), self.f)[1]
        return a % self.modulus

    def from_int(self, k: int):
        if self.is_product:
            return tuple(r.from_int(k) for r in self.parts)
        return self.reduce(self.domain.from_int(k))

    @cached_property
    def zero(self):
        return self.from_int(0)

    @cached_property
    def one(self):
        return self.from_int(1)

    def add(self, a, b):
        if self.is_product:
            return tuple(r.add(x, y) for r, x, y in zip(self.parts, a, b))
        return self.reduce(self.domain.add(a, b))

    def sub(self, a, b):
        if self.is_product:
            return tuple(r.sub(x, y) for r, x, y in zip(self.parts, a, b))
        return self.reduce(self.domain.sub(a, b))

    def neg(self, a):
        if self.is_product:
            return tuple(r.neg(x) for r, x in zip(self.parts, a))
        return self.reduce(self.domain.neg(a))

    def mul(self, a, b):
        if self.is_product:
            return tuple(r.mul(x, y) for r, x, y in zip(self.parts, a, b))
        return self.reduce(self.domain.mul(a, b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_unit(self, a) -> bool:
        if self.is_product:
            return all(r.is_unit(x) for r, x in zip(self.parts, a))
        if self.kind == "Integers":
            return a in (1, -1)
        dom = self.domain
        return dom.is_unit(dom_gcd(dom, a, self.modulus))

    def elements(self):
        """All elements of a finite ring, in a fixed order."""
        if self.is_product:
            out = [()]
            for r in self.parts:
                out = [x + (y,) for x in out for y in r.elements()]
            return out
        if self.kind == "Integers":
            raise ValueError("the integers are infinite")
        if self.kind == "QuotientPoly":
            deg = len(self.f) - 1
            out = []
            for k in range(self.p ** deg):
                coeffs = []
                for _ in range(deg):
                    coeffs.append(k % self.p)
                    k //= self.p
                out.append(self.domain.trim(coeffs))
            return out
        return list(range(self.modulus))

    def __str__(self):
        if self.kind == "Integers":
            return "ZZ"
        if self.kind == "IntegersMod":
            return f"ZZ/{self.n}"
        if self.kind == "PrimeField":
            return f"F{self.p}"
        if self.kind == "QuotientPoly":
            return f"F{self.p}[t]/({poly_str(self.f)})"
        return " x ".join(str(r) for r in self.parts)


def poly_str(f) -> str:
    terms = []
    for i, c in enumerate(f):
        if c:
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(coef + mono)
    return " + ".join(reversed(terms)) or "0"


def Integers() -> RingSpec:
    return RingSpec("Integers")


def IntegersMod(n: int) -> RingSpec:
    if n < 2:
        raise ValueError("IntegersMod needs n >= 2")
    return RingSpec("IntegersMod", n=n)


def PrimeField(p: int) -> RingSpec:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return RingSpec("PrimeField", p=p)


def QuotientPoly(p: int, f) -> RingSpec:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    f = PolyDomain(p).trim(list(f))
    if len(f) < 2 or f[-1] != 1:
        raise ValueError("modulus polynomial must be monic of degree >= 1")
    return RingSpec("QuotientPoly", p=p, f=f)


def ProductRing(parts) -> RingSpec:
    flat = []
    for r in parts:
        flat.extend(r.parts if r.is_product else [r])
    if not flat:
        raise ValueError("a product ring needs at least one factor")
    return RingSpec("ProductRing", parts=tuple(flat))


# ---------------------------------------------------------------------------
# Matrices


class ExactMatrix:
    """A matrix over a RingSpec with canonical entries.

    Shape is stored explicitly so that 0 x n and n x 0 matrices behave.
    """

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring: RingSpec, rows, nrows=None, ncols=None):
        rows = [list(r) for r in rows]
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged matrix or wrong declared shape")
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.rows = tuple(tuple(ring.reduce(x) for x in r) for r in rows)

    @classmethod
    def _raw(cls, ring, rows, nrows, ncols):
        # entries already canonical
        m = cls.__new__(cls)
        m.ring = ring
        m.nrows = nrows
        m.ncols = ncols
        m.rows = tuple(tuple(r) for r in rows)
        return m

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.zero
        return cls._raw(ring, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero, ring.one
        return cls._raw(ring, [[o if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, ring, entries):
        n = len(entries)
        z = ring.zero
        return cls(ring, [[entries[i] if i == j else z for j in range(n)] for i in range(n)], n, n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.ring == other.ring
                and self.shape == other.shape and self.rows == other.rows)

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return f"ExactMatrix({self.ring}, {[list(r) for r in self.rows]}, {self.nrows}x{self.ncols})"

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        add = self.ring.add
        return ExactMatrix._raw(self.ring, [[add(x, y) for x, y in zip(a, b)]
                                            for a, b in zip(self.rows, other.rows)],
                                self.nrows, self.ncols)

    def __neg__(self):
        neg = self.ring.neg
        return ExactMatrix._raw(self.ring, [[neg(x) for x in r] for r in self.rows],
                                self.nrows, self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        self._check(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        R = self.ring
        if not R.is_product:
            # work in the cover and reduce once per entry
            dom = R.domain
            cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
            out = []
            if dom is ZZ:
                c = R.modulus
                for r in self.rows:
                    if c:
                        out.append([sum(x * y for x, y in zip(r, col)) % c for col in cols])
                    else:
                        out.append([sum(x * y for x, y in zip(r, col)) for col in cols])
            else:
                for r in self.rows:
                    row = []
                    for col in cols:
                        acc = ()
                        for x, y in zip(r, col):
                            if x and y:
                                acc = dom.add(acc, dom.mul(x, y))
                        row.append(R.reduce(acc))
                    out.append(row)
            return ExactMatrix._raw(R, out, self.nrows, other.ncols)
        parts = [self.component(k) @ other.component(k) for k in range(len(R.parts))]
        return ExactMatrix.from_components(R, parts)

    def scale(self, a):
        mul = self.ring.mul
        return ExactMatrix._raw(self.ring, [[mul(a, x) for x in r] for r in self.rows],
                                self.nrows, self.ncols)

    @property
    def T(self):
        return ExactMatrix._raw(self.ring, [list(c) for c in zip(*self.rows)] if self.nrows
                                else [[] for _ in range(self.ncols)], self.ncols, self.nrows)

    def column(self, j):
        return [r[j] for r in self.rows]

    def submatrix(self, rows, cols):
        return ExactMatrix._raw(self.ring, [[self.rows[i][j] for j in cols] for i in rows],
                                len(rows), len(cols))

    def is_zero(self):
        z = self.ring.zero
        return all(x == z for r in self.rows for x in r)

    def lift(self):
        """Entries as plain lists (canonical representatives in the cover)."""
        return [list(r) for r in self.rows]

    # -- product rings ------------------------------------------------------
    def component(self, k):
        R = self.ring
        return ExactMatrix._raw(R.parts[k], [[x[k] for x in r] for r in self.rows],
                                self.nrows, self.ncols)

    @staticmethod
    def from_components(ring, mats, nrows=None, ncols=None):
        """Reassemble a product-ring matrix, zero-padding smaller components."""
        if nrows is None:
            nrows = max((m.nrows for m in mats), default=0)
        if ncols is None:
            ncols = max((m.ncols for m in mats), default=0)
        out = []
        for i in range(nrows):
            row = []
            for j in range(ncols):
                row.append(tuple(m.rows[i][j] if i < m.nrows and j < m.ncols else part.zero
                                 for m, part in zip(mats, ring.parts)))
            out.append(row)
        return ExactMatrix._raw(ring, out, nrows, ncols)


def hstack(ring, mats, nrows=None):
    if not mats:
        return ExactMatrix.zeros(ring, nrows or 0, 0)
    n = mats[0].nrows
    if any(m.nrows != n for m in mats):
        raise ShapeMismatch("hstack row mismatch")
    rows = [[] for _ in range(n)]
    for m in mats:
        for i in range(n):
            rows[i].extend(m.rows[i])
    return ExactMatrix._raw(ring, rows, n, sum(m.ncols for m in mats))


def vstack(ring, mats, ncols=None):
    if not mats:
        return ExactMatrix.zeros(ring, 0, ncols or 0)
    n = mats[0].ncols
    if any(m.ncols != n for m in mats):
        raise ShapeMismatch("vstack column mismatch")
    rows = []
    for m in mats:
        rows.extend(m.rows)
    return ExactMatrix._raw(ring, rows, sum(m.nrows for m in mats), n)


def block(ring, blocks, row_sizes, col_sizes):
    """Assemble from a grid of blocks; None stands for a zero block."""
    rows = []
    for bi, rs in enumerate(row_sizes):
        strip = []
        for bj, cs in enumerate(col_sizes):
            b = blocks[bi][bj]
            if b is None:
                b = ExactMatrix.zeros(ring, rs, cs)
            elif b.shape != (rs, cs):
                raise ShapeMismatch(f"block ({bi},{bj}) has shape {b.shape}, wanted {(rs, cs)}")
            strip.append(b)
        rows.append(hstack(ring, strip, rs))
    return vstack(ring, rows, sum(col_sizes))


def block_diag(ring, mats):
    return block(ring, [[m if i == j else None for j in range(len(mats))]
                        for i, m in enumerate(mats)],
                 [m.nrows for m in mats], [m.ncols for m in mats])


# ---------------------------------------------------------------------------
# Smith normal form over a Euclidean domain (plain lists)


def _snf_lists(dom, A, m, n, track_left=True, track_right=True):
    """Diagonalize A (m x n list of lists) in place.

    Returns (A, U, Uinv, V) with U*A0*V = A and A diagonal with the
    divisibility chain.  U/Uinv are None when track_left is false, V is
    None when track_right is false.
    """
    zero, one = dom.zero, dom.one
    add, sub, mul, norm = dom.add, dom.sub, dom.mul, dom.norm
    A = [list(r) for r in A]
    U = [[one if i == j else zero for j in range(m)] for i in range(m)] if track_left else None
    Ui = [[one if i == j else zero for j in range(m)] for i in range(m)] if track_left else None
    V = [[one if i == j else zero for j in range(n)] for i in range(n)] if track_right else None

    def row_axpy(i, t, q):
        # row_i -= q * row_t
        Ai, At = A[i], A[t]
        for j in range(n):
            if At[j] != zero:
                Ai[j] = sub(Ai[j], mul(q, At[j]))
        if U is not None:
            Ui_, Ut = U[i], U[t]
            for j in range(m):
                if Ut[j] != zero:
                    Ui_[j] = sub(Ui_[j], mul(q, Ut[j]))
            for r in Ui:  # column t += q * column i
                if r[i] != zero:
                    r[t] = add(r[t], mul(q, r[i]))

    def col_axpy(j, t, q):
        # col_j -= q * col_t
        for r in A:
            if r[t] != zero:
                r[j] = sub(r[j], mul(q, r[t]))
        if V is not None:
            for r in V:
                if r[t] != zero:
                    r[j] = sub(r[j], mul(q, r[t]))

    def swap_rows(i, t):
        if i == t:
            return
        A[i], A[t] = A[t], A[i]
        if U is not None:
            U[i], U[t] = U[t], U[i]
            for r in Ui:
                r[i], r[t] = r[t], r[i]

    def swap_cols(j, t):
        if j == t:
            return
        for r in A:
            r[j], r[t] = r[t], r[j]
        if V is not None:
            for r in V:
                r[j], r[t] = r[t], r[j]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] != zero and (best is None or norm(A[i][j]) < best[0]):
                    best = (norm(A[i][j]), i, j)
        if best is None:
            break
        swap_rows(best[1], t)
        swap_cols(best[2], t)
        while True:
            # bring the smallest entry of row t / column t to the pivot
            best = (norm(A[t][t]), t, t)
            for i in range(t + 1, m):
                if A[i][t] != zero and norm(A[i][t]) < best[0]:
                    best = (norm(A[i][t]), i, t)
            for j in range(t + 1, n):
                if A[t][j] != zero and norm(A[t][j]) < best[0]:
                    best = (norm(A[t][j]), t, j)
            swap_rows(best[1], t)
            swap_cols(best[2], t)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t] != zero:
                    q = dom.divmod(A[i][t], p)[0]
                    row_axpy(i, t, q)
                    if A[i][t] != zero:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j] != zero:
                    q = dom.divmod(A[t][j], p)[0]
                    col_axpy(j, t, q)
                    if A[t][j] != zero:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] != zero and dom.divmod(A[i][j], p)[1] != zero:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # row_t += row_bad, then keep reducing
            row_axpy(t, bad, dom.neg(one))
        assoc, u = dom.normal_part(A[t][t])
        if u != one:
            uinv = dom.unit_inverse(u)
            A[t] = [mul(uinv, x) for x in A[t]]
            if U is not None:
                U[t] = [mul(uinv, x) for x in U[t]]
                for r in Ui:
                    r[t] = mul(u, r[t])
    return A, U, Ui, V


def smith_normal_form(A, domain=None):
    """Smith form U*A*V = D over a Euclidean domain.

    A is either an ExactMatrix over the integers, or a list of lists of
    polynomials (coefficient tuples) together with domain=PolyDomain(p).
    The result has the same kind as the input.
    """
    if domain is None:
        if not isinstance(A, ExactMatrix) or A.ring.kind != "Integers":
            raise RingMismatch("smith_normal_form needs a matrix over a Euclidean domain")
        D, U, _, V = _snf_lists(ZZ, A.lift(), A.nrows, A.ncols)
        R = A.ring
        return (ExactMatrix(R, U, A.nrows, A.nrows), ExactMatrix(R, D, A.nrows, A.ncols),
                ExactMatrix(R, V, A.ncols, A.ncols))
    m = len(A)
    n = len(A[0]) if A else 0
    D, U, _, V = _snf_lists(domain, [[domain.trim(x) if domain is not ZZ else x for x in r]
                                     for r in A], m, n)
    return U, D, V


def smith_normal_form_domain(dom, A, m, n):
    """Smith form of a list-of-lists matrix over `dom`: returns (U, D, V, Uinv)."""
    D, U, Ui, V = _snf_lists(dom, A, m, n)
    return U, D, V, Ui


def dom_matmul(dom, A, B, n_inner, ncols):
    zero = dom.zero
    out = []
    for r in A:
        row = []
        for j in range(ncols):
            acc = zero
            for k in range(n_inner):
                if r[k] != zero and B[k][j] != zero:
                    acc = dom.add(acc, dom.mul(r[k], B[k][j]))
            row.append(acc)
        out.append(row)
    return out


def dom_solve(dom, A, B, m, n):
    """Solve A X = B over the domain.  A is m x n, B is m x k (lists).

    Returns X (n x k) or None.
    """
    k = len(B[0]) if B else 0
    if m == 0:
        return [[dom.zero] * k for _ in range(n)]
    D, U, _, V = _snf_lists(dom, A, m, n, track_left=True, track_right=True)
    UB = dom_matmul(dom, U, B, m, k)
    zero = dom.zero
    Y = [[zero] * k for _ in range(n)]
    for i in range(m):
        d = D[i][i] if i < n else zero
        for j in range(k):
            b = UB[i][j]
            if b == zero:
                continue
            if d == zero:
                return None
            q, r = dom.divmod(b, d)
            if r != zero:
                return None
            Y[i][j] = q
    return dom_matmul(dom, V, Y, n, k)


def dom_kernel(dom, A, m, n):
    """A basis (as list of column vectors) of the kernel of an m x n matrix."""
    if n == 0:
        return []
    D, _, _, V = _snf_lists(dom, A, m, n, track_left=False, track_right=True)
    zero = dom.zero
    rank = 0
    while rank < min(m, n) and D[rank][rank] != zero:
        rank += 1
    return [[V[i][j] for i in range(n)] for j in range(rank, n)]


def solve_matrix_equation(A: ExactMatrix, B: ExactMatrix) -> Optional[ExactMatrix]:
    """Some X with A X = B over the ring of A, or None when there is none."""
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")
    if A.nrows != B.nrows:
        raise ShapeMismatch(f"A is {A.shape} but B is {B.shape}")
    R = A.ring
    if R.is_product:
        parts = []
        for k in range(len(R.parts)):
            X = solve_matrix_equation(A.component(k), B.component(k))
            if X is None:
                return None
            parts.append(X)
        return ExactMatrix.from_components(R, parts, A.ncols, B.ncols)
    dom = R.domain
    c = R.modulus
    m, n = A.nrows, A.ncols
    lifted = A.lift()
    width = n
    if c != dom.zero:
        for i in range(m):
            lifted[i] = lifted[i] + [c if i == j else dom.zero for j in range(m)]
        width = n + m
    X = dom_solve(dom, lifted, B.lift(), m, width)
    if X is None:
        return None
    return ExactMatrix(R, X[:n], n, B.ncols)
