"""Finite-dimensional Lie algebras over the rationals.

An algebra is given by sparse bracket triples (i, j, coefficient vector)
meaning [e_i, e_j] = sum_k c^k e_k; antisymmetry is enforced on input and
the Jacobi identity is validated separately.  The Chevalley-Eilenberg
differential acts on left-invariant forms: on 1-forms

    (d a)(x, y) = -a([x, y])

extended to higher degree as a derivation.  d o d = 0 is equivalent to the
Jacobi identity, which gives an independent cross-check on both.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BadParameters, InternalInvariantError, JacobiViolation
from .exact import GaussianRational, ONE, ZERO
from .forms import basis_tuples, merge_sign
from .linalg import Subspace, mat_mul, is_zero_matrix, nullspace, rank

GQ = GaussianRational


class LieAlgebra:
    """A Lie algebra with a distinguished basis e_1..e_n."""

    def __init__(self, dim, brackets, labels=None):
        """brackets: iterable of (i, j, coeffs) with 1-based i, j and coeffs
        a length-dim list of scalars; pairs may appear in either order but
        not twice."""
        self.dim = dim
        self.labels = tuple(labels) if labels else tuple(
            f"e{k}" for k in range(1, dim + 1))
        if len(self.labels) != dim:
            raise BadParameters(f"expected {dim} basis labels")
        table = {}
        for i, j, coeffs in brackets:
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise BadParameters(f"bracket index out of range: ({i}, {j})")
            vec = [c if isinstance(c, GQ) else GQ(c) for c in coeffs]
            if len(vec) != dim:
                raise BadParameters(
                    f"bracket ({i}, {j}) has {len(vec)} coefficients, want {dim}")
            if i == j:
                if any(vec):
                    raise BadParameters(f"[e_{i}, e_{i}] must vanish")
                continue
            key, sign = ((i, j), 1) if i < j else ((j, i), -1)
            if key in table:
                raise BadParameters(f"bracket ({i}, {j}) specified twice")
            table[key] = vec if sign > 0 else [-c for c in vec]
        self._table = table
        self._d_cache: dict = {}

    # ---- brackets ----

    def bracket_basis(self, i: int, j: int):
        """[e_i, e_j] as a coefficient vector (1-based indices)."""
        if i == j:
            return [ZERO] * self.dim
        key, sign = ((i, j), 1) if i < j else ((j, i), -1)
        vec = self._table.get(key)
        if vec is None:
            return [ZERO] * self.dim
        return list(vec) if sign > 0 else [-c for c in vec]

    def bracket(self, x, y):
        """Bilinear extension of the bracket to coefficient vectors."""
        out = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                vec = self.bracket_basis(i + 1, j + 1)
                s = xi * yj
                for k, c in enumerate(vec):
                    if c:
                        out[k] = out[k] + s * c
        return out

    def nonzero_pairs(self):
        return sorted(self._table.keys())

    # ---- Chevalley-Eilenberg differential ----

    def d1_sparse(self):
        """d of each dual basis 1-form, as sparse 2-forms.

        d e^m = - sum_{i<j} c^m_{ij} e^{ij}.
        """
        out = [dict() for _ in range(self.dim)]
        for (i, j), vec in self._table.items():
            for m, c in enumerate(vec):
                if c:
                    out[m][(i, j)] = out[m].get((i, j), ZERO) - c
        return [{t: c for t, c in f.items() if c} for f in out]

    def ce_matrix(self, k: int):
        """Matrix of d: k-forms -> (k+1)-forms (rows = target coordinates)."""
        if k in self._d_cache:
            return self._d_cache[k]
        n = self.dim
        src, _ = basis_tuples(n, k)
        tgt, tgt_index = basis_tuples(n, k + 1)
        d1 = self.d1_sparse()
        cols = []
        for S in src:
            col = [ZERO] * len(tgt)
            for r, idx in enumerate(S):
                rest = S[:r] + S[r + 1:]
                row_sign = -1 if r % 2 else 1
                for pair, c in d1[idx - 1].items():
                    sgn, merged = merge_sign(pair, rest)
                    if sgn == 0:
                        continue
                    term = c if row_sign * sgn > 0 else -c
                    pos = tgt_index[merged]
                    col[pos] = col[pos] + term
            cols.append(col)
        matrix = [[cols[j][i] for j in range(len(src))] for i in range(len(tgt))]
        self._d_cache[k] = matrix
        return matrix


def validate_jacobi(g: LieAlgebra):
    """(ok, first violating triple or None) for the Jacobi identity."""
    n = g.dim
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            cij = g.bracket_basis(i, j)
            for k in range(j + 1, n + 1):
                acc = g.bracket(cij, _basis_vec(n, k))
                cjk = g.bracket_basis(j, k)
                for m, c in enumerate(g.bracket(cjk, _basis_vec(n, i))):
                    acc[m] = acc[m] + c
                cki = g.bracket_basis(k, i)
                for m, c in enumerate(g.bracket(cki, _basis_vec(n, j))):
                    acc[m] = acc[m] + c
                if any(acc):
                    return False, (i, j, k)
    return True, None


def require_jacobi(g: LieAlgebra):
    ok, triple = validate_jacobi(g)
    if not ok:
        raise JacobiViolation(
            f"Jacobi identity fails on basis triple {triple}", triple=list(triple))


def _basis_vec(n, k):
    v = [ZERO] * n
    v[k - 1] = ONE
    return v


def ce_differential(g: LieAlgebra, k: int):
    """Chevalley-Eilenberg d on k-forms, as an exact matrix."""
    if not (0 <= k <= g.dim):
        raise BadParameters(f"form degree {k} out of range 0..{g.dim}")
    if k == g.dim:
        return [[] for _ in range(0)]
    return g.ce_matrix(k)


def d_squared_is_zero(g: LieAlgebra) -> bool:
    """Check d o d = 0 on all degrees; equivalent to Jacobi."""
    for k in range(0, g.dim - 1):
        dk = g.ce_matrix(k)
        dk1 = g.ce_matrix(k + 1)
        if dk and dk[0] and not is_zero_matrix(mat_mul(dk1, dk)):
            return False
    return True


def unimodularity(g: LieAlgebra) -> bool:
    """True when every ad_x is traceless."""
    n = g.dim
    for i in range(1, n + 1):
        tr = ZERO
        for j in range(1, n + 1):
            tr = tr + g.bracket_basis(i, j)[j - 1]
        if tr:
            return False
    return True


def derived_subalgebra(g: LieAlgebra) -> Subspace:
    """[g, g] as a subspace of coefficient vectors."""
    return Subspace.from_vectors(
        [g.bracket_basis(i, j) for i, j in g.nonzero_pairs()], g.dim)


def lower_central_series(g: LieAlgebra):
    """(dims, nilpotent) for g >= [g,g] >= [g,[g,g]] >= ...

    dims starts at dim g and the series is followed until it stabilizes;
    nilpotent means it reaches zero.
    """
    n = g.dim
    dims = [n]
    current = Subspace.full(n)
    while True:
        vecs = []
        for i in range(1, n + 1):
            ei = _basis_vec(n, i)
            for v in current.basis:
                vecs.append(g.bracket(ei, list(v)))
        nxt = Subspace.from_vectors(vecs, n)
        if nxt.dim == dims[-1]:
            dims.append(nxt.dim)
            break
        dims.append(nxt.dim)
        current = nxt
        if nxt.dim == 0:
            break
    return dims, dims[-1] == 0


def find_codim1_abelian_ideal(g: LieAlgebra):
    """The codimension-1 abelian ideal ker(lambda), or None.

    A hyperplane H is an abelian ideal iff it contains [g, g] and every
    component 2-form B_m = e^m([.,.]) vanishes on H x H.  A nonzero
    alternating form vanishing on a hyperplane has rank 2 and is divisible
    by the defining functional, so the search is exact linear algebra:
    lambda must annihilate [g, g] and lie in the row space of every nonzero
    B_m; any nonzero B_m of rank > 2 rules a hyperplane out entirely.
    """
    n = g.dim
    candidates = derived_subalgebra(g).annihilator()
    for m in range(n):
        b = [[ZERO] * n for _ in range(n)]
        nonzero = False
        for (i, j), vec in g._table.items():
            c = vec[m]
            if c:
                nonzero = True
                b[i - 1][j - 1] = c
                b[j - 1][i - 1] = -c
        if not nonzero:
            continue
        r = rank(b, n)
        if r > 2:
            return None
        candidates = candidates.intersect(Subspace.from_vectors(b, n))
        if candidates.dim == 0:
            return None
    if candidates.dim == 0:
        return None
    lam = list(candidates.basis[0])
    ideal = Subspace.from_vectors(nullspace([lam], n), n)
    # tripwire: the returned hyperplane really is an abelian ideal
    for u in ideal.basis:
        for v in ideal.basis:
            if any(g.bracket(list(u), list(v))):
                raise InternalInvariantError("candidate hyperplane is not abelian")
    if not ideal.contains(derived_subalgebra(g)):
        raise InternalInvariantError("candidate hyperplane is not an ideal")
    return ideal
