"""Exact linear algebra over Q(i).

Matrices are plain lists of rows of GaussianRational.  The main elimination
route is fraction-free (Bareiss over the Gaussian integers after clearing
denominators); reduced echelon bases are derived from it by exact pivot
normalization, so every basis this module hands out is the unique RREF basis
of its space.  A deliberately plain division-based elimination lives in
``naive_rank`` as an independently written oracle; the two routes are
cross-checked by the test suite on large batches of random matrices.

Pivoting rule everywhere: first nonzero column, smallest row index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import AlreadyReal, DenNotContained, InternalInvariantError
from .exact import GaussianRational, ZERO, ONE

GQ = GaussianRational


# ---- small matrix helpers ------------------------------------------------

def zeros(nrows: int, ncols: int):
    return [[ZERO] * ncols for _ in range(nrows)]

def identity(n: int):
    rows = zeros(n, n)
    for i in range(n):
        rows[i][i] = ONE
    return rows

def transpose(rows):
    return [list(col) for col in zip(*rows)] if rows else []

def mat_vec(rows, vec):
    out = []
    for row in rows:
        acc = ZERO
        for a, x in zip(row, vec):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    return out

def mat_mul(a, b):
    bt = transpose(b)
    return [[_dot(row, col) for col in bt] for row in a]

def _dot(u, v):
    acc = ZERO
    for a, x in zip(u, v):
        if a and x:
            acc = acc + a * x
    return acc

def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

def mat_scale(a, s):
    return [[s * x for x in row] for row in a]

def is_zero_matrix(rows) -> bool:
    return all(not x for row in rows for x in row)

def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))

def conj_vector(v):
    return [x.conjugate() for x in v]


# ---- fraction-free elimination (main route) ------------------------------

def _gi_mul(z, w):
    a, b = z
    c, d = w
    return (a * c - b * d, a * d + b * c)

def _gi_sub(z, w):
    return (z[0] - w[0], z[1] - w[1])

def _gi_exact_div(z, w):
    """Exact division in Z[i]; raises if the quotient is not integral."""
    c, d = w
    n = c * c + d * d
    a, b = _gi_mul(z, (c, -d))
    qa, ra = divmod(a, n)
    qb, rb = divmod(b, n)
    if ra or rb:
        raise InternalInvariantError("non-exact division in fraction-free elimination")
    return (qa, qb)

def _clear_denominators(row):
    """Scale a row of Gaussian rationals to Gaussian integers."""
    scale = 1
    for x in row:
        scale = lcm(scale, x.re.denominator, x.im.denominator)
    return [(int(x.re * scale), int(x.im * scale)) for x in row]

def _bareiss_echelon(rows, ncols, limit=None):
    """Fraction-free row echelon form over Z[i].

    Returns (echelon_rows, pivot_columns).  ``limit`` restricts pivot search
    to the first ``limit`` columns (used for augmented reductions).
    """
    work = [_clear_denominators(r) for r in rows]
    m = len(work)
    if limit is None:
        limit = ncols
    pivots = []
    prev = (1, 0)
    r = 0
    for c in range(limit):
        p = None
        for i in range(r, m):
            if work[i][c] != (0, 0):
                p = i
                break
        if p is None:
            continue
        if p != r:
            work[r], work[p] = work[p], work[r]
        piv = work[r][c]
        for i in range(r + 1, m):
            fac = work[i][c]
            if fac == (0, 0):
                row_i = work[i]
                work[i] = [_gi_exact_div(_gi_mul(piv, row_i[j]), prev)
                           for j in range(ncols)]
            else:
                row_i, row_r = work[i], work[r]
                work[i] = [
                    _gi_exact_div(
                        _gi_sub(_gi_mul(piv, row_i[j]), _gi_mul(fac, row_r[j])),
                        prev)
                    for j in range(ncols)
                ]
            work[i][c] = (0, 0)
        pivots.append(c)
        prev = piv
        r += 1
        if r == m:
            break
    return work[:r], pivots


def _gi_to_gq(z):
    return GQ(Fraction(z[0]), Fraction(z[1]))


def rref(rows, ncols, limit=None):
    """Reduced row echelon form via the fraction-free route.

    Returns (rref_rows, pivot_columns) with rows of GaussianRational.  The
    RREF of a matrix is unique, so the output is deterministic by
    construction.  ``limit`` restricts pivoting to the leading columns,
    which turns this into an augmented reduction.
    """
    if not rows:
        return [], []
    ech, pivots = _bareiss_echelon(rows, ncols, limit=limit)
    out = []
    for k, row in enumerate(ech):
        piv = _gi_to_gq(row[pivots[k]]).inverse()
        out.append([_gi_to_gq(x) * piv for x in row])
    # eliminate above the pivots, bottom-up
    for k in range(len(out) - 1, -1, -1):
        c = pivots[k]
        for i in range(k):
            fac = out[i][c]
            if fac:
                out[i] = [a - fac * b for a, b in zip(out[i], out[k])]
    return out, pivots


def rank(rows, ncols) -> int:
    """Rank by fraction-free elimination (the main route)."""
    if not rows:
        return 0
    _, pivots = _bareiss_echelon(rows, ncols)
    return len(pivots)


def naive_rank(rows, ncols) -> int:
    """Independent oracle: rank by plain division-based Gauss-Jordan.

    Written straightforwardly and kept separate from the fraction-free
    route on purpose; the test suite compares the two on random matrices.
    """
    work = [list(r) for r in rows]
    nrows = len(work)
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if work[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = work[r][c].inverse()
        work[r] = [e * inv for e in work[r]]
        for i in range(nrows):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        r += 1
        if r == nrows:
            break
    return r


def nullspace(rows, ncols):
    """Basis (list of vectors) of {x : M x = 0}."""
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for k, pc in enumerate(pivots):
            coef = red[k][free]
            if coef:
                v[pc] = -coef
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One exact solution x of M x = b, or None if inconsistent.

    Free variables are set to zero, so the returned solution is
    deterministic.
    """
    if not rows:
        return None if any(rhs) else []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1, limit=ncols)
    x = [ZERO] * ncols
    for k, pc in enumerate(pivots):
        x[pc] = red[k][ncols]
    check = mat_vec(rows, x)
    if any((a - b) for a, b in zip(check, rhs)):
        return None
    return x


def det(rows):
    """Exact determinant (fraction-free on the integer-scaled matrix)."""
    n = len(rows)
    if n == 0:
        return ONE
    scale = ONE
    work = []
    for row in rows:
        s = 1
        for x in row:
            s = lcm(s, x.re.denominator, x.im.denominator)
        scale = scale * GQ(Fraction(1, s))
        work.append([(int(x.re * s), int(x.im * s)) for x in row])
    sign = 1
    prev = (1, 0)
    for c in range(n - 1):
        p = None
        for i in range(c, n):
            if work[i][c] != (0, 0):
                p = i
                break
        if p is None:
            return ZERO
        if p != c:
            work[c], work[p] = work[p], work[c]
            sign = -sign
        piv = work[c][c]
        for i in range(c + 1, n):
            fac = work[i][c]
            work[i] = [
                _gi_exact_div(
                    _gi_sub(_gi_mul(piv, work[i][j]), _gi_mul(fac, work[c][j])),
                    prev)
                for j in range(n)
            ]
        prev = piv
    d = _gi_to_gq(work[n - 1][n - 1])
    if sign < 0:
        d = -d
    return d * scale


def invert(rows):
    """Exact inverse of a square matrix, or None if singular."""
    n = len(rows)
    aug = [list(r) + list(e) for r, e in zip(rows, identity(n))]
    red, pivots = rref(aug, 2 * n, limit=n)
    if len(pivots) < n:
        return None
    return [row[n:] for row in red]


# ---- subspaces ------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace given by its unique RREF basis.

    ``tag`` records whether coordinates live in the complex model
    ("complex") or in a realified model ("real-realified") where a complex
    N-dimensional ambient space became a real 2N-dimensional one.
    """

    ambient: int
    basis: tuple
    tag: str = "complex"

    @classmethod
    def from_vectors(cls, vectors, ambient, tag="complex"):
        vecs = [list(v) for v in vectors if any(v)]
        if not vecs:
            return cls(ambient, (), tag)
        red, pivots = rref(vecs, ambient)
        rows = tuple(tuple(r) for r in red[:len(pivots)])
        return cls(ambient, rows, tag)

    @classmethod
    def zero(cls, ambient, tag="complex"):
        return cls(ambient, (), tag)

    @classmethod
    def full(cls, ambient, tag="complex"):
        return cls(ambient, tuple(tuple(r) for r in identity(ambient)), tag)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _pivots(self):
        pivs = []
        for row in self.basis:
            for j, x in enumerate(row):
                if x:
                    pivs.append(j)
                    break
        return pivs

    def reduce(self, vector):
        """Reduce a vector modulo this subspace (eliminate pivot coordinates)."""
        v = list(vector)
        for row, p in zip(self.basis, self._pivots()):
            coef = v[p]
            if coef:
                v = [a - coef * b for a, b in zip(v, row)]
        return v

    def contains_vector(self, vector) -> bool:
        return not any(self.reduce(vector))

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(v) for v in other.basis)

    def annihilator(self) -> "Subspace":
        """Covectors vanishing on this subspace."""
        if not self.basis:
            return Subspace.full(self.ambient, self.tag)
        return Subspace.from_vectors(
            nullspace([list(r) for r in self.basis], self.ambient),
            self.ambient, self.tag)

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        ann = list(self.annihilator().basis) + list(other.annihilator().basis)
        if not ann:
            return Subspace.full(self.ambient, self.tag)
        return Subspace.from_vectors(
            nullspace([list(r) for r in ann], self.ambient),
            self.ambient, self.tag)

    def add(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        return Subspace.from_vectors(
            list(self.basis) + list(other.basis), self.ambient, self.tag)


def rank_kernel_image(rows, ncols):
    """(rank, kernel, image) of a matrix, all via the main elimination.

    The kernel lives in the column space's source (ambient = ncols), the
    image in the target (ambient = nrows); both bases are RREF.
    """
    nrows = len(rows)
    r = rank(rows, ncols) if rows else 0
    ker = Subspace.from_vectors(nullspace(rows, ncols) if rows else [],
                                ncols)
    img = Subspace.from_vectors(transpose(rows) if rows else [], nrows)
    if ker.dim + r != ncols or img.dim != r:
        raise InternalInvariantError(
            "rank/kernel/image dimensions inconsistent",
        )
    return r, ker, img


def quotient(num: Subspace, den: Subspace):
    """Dimension and reduced coset representatives of num/den.

    Raises DEN_NOT_CONTAINED unless den is a subspace of num.
    """
    if not num.contains(den):
        raise DenNotContained("denominator subspace not contained in numerator")
    reps = []
    for v in num.basis:
        red = den.reduce(v)
        if any(red):
            reps.append(red)
    reps_space = Subspace.from_vectors(reps, num.ambient, num.tag)
    if reps_space.dim != num.dim - den.dim:
        raise InternalInvariantError("quotient representative count mismatch")
    return reps_space.dim, reps_space.basis


# ---- realification ---------------------------------------------------------

def realify_vector(v):
    """Complex coordinates (z_1..z_N) -> real coordinates (Re z | Im z)."""
    re = [GQ(x.re) for x in v]
    im = [GQ(x.im) for x in v]
    return re + im

def realify_vector_times_i(v):
    """Real coordinates of i*v under the same stacking convention."""
    re = [GQ(-x.im) for x in v]
    im = [GQ(x.re) for x in v]
    return re + im


def derealify_vector(v):
    """Inverse of realify_vector: (Re z | Im z) -> complex coordinates.

    The input must have real entries and even length.
    """
    if len(v) % 2:
        raise InternalInvariantError("realified vector must have even length")
    if any(x.im for x in v):
        raise InternalInvariantError("realified coordinates must be real")
    n = len(v) // 2
    return [GQ(v[k].re, v[n + k].re) for k in range(n)]


def realify(s: Subspace) -> Subspace:
    """Realify a complex subspace: dimensions double, tag flips."""
    if s.tag != "complex":
        raise AlreadyReal("subspace is already realified")
    vecs = []
    for v in s.basis:
        vecs.append(realify_vector(v))
        vecs.append(realify_vector_times_i(v))
    out = Subspace.from_vectors(vecs, 2 * s.ambient, "real-realified")
    if out.dim != 2 * s.dim:
        raise InternalInvariantError("realified dimension is not doubled")
    return out


def realify_linear_matrix(rows):
    """Real 2Nx2M matrix of a complex-linear map given by an NxM matrix."""
    re = [[GQ(x.re) for x in row] for row in rows]
    im = [[GQ(x.im) for x in row] for row in rows]
    top = [r + [-x for x in i] for r, i in zip(re, im)]
    bot = [i + r for i, r in zip(im, re)]
    return top + bot


def realify_antilinear_matrix(rows):
    """Real matrix of the anti-linear map v -> A * conj(v).

    Anti-linear maps are never stored as complex matrices in this package;
    this is the one sanctioned representation.
    """
    re = [[GQ(x.re) for x in row] for row in rows]
    im = [[GQ(x.im) for x in row] for row in rows]
    top = [r + i for r, i in zip(re, im)]
    bot = [i + [-x for x in r] for i, r in zip(im, re)]
    return top + bot


def fixed_subspace(real_rows, sign=1) -> Subspace:
    """Fixed (sign=+1) or anti-fixed (sign=-1) subspace of a real operator."""
    n = len(real_rows)
    shifted = [list(r) for r in real_rows]
    for i in range(n):
        shifted[i][i] = shifted[i][i] - GQ(sign)
    return Subspace.from_vectors(nullspace(shifted, n), n, "real-realified")
