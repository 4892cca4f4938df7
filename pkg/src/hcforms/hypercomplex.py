"""Hypercomplex structures and the bigraded calculus they induce.

A hypercomplex structure on a Lie algebra g is a pair of anticommuting
complex structures I, J; the product K = IJ is then a third one.  The
conventions pinned here (and regression-tested) are:

* Structure endomorphisms act on vectors.  The induced action on the
  coordinates of a 1-form is [L a] = -L^T [a], which implements
  (L a)(x) = a(L^{-1} x) and extends multiplicatively to k-forms, where
  it satisfies (L_ind)^2 = (-1)^k.
* (1,0)-forms with respect to I are the (-i)-eigenvectors of the induced
  action; the automatic coframe pairs them so that phi^{2k} is J applied
  to the conjugate of phi^{2k-1}.
* d splits on (p,0)-forms into a (p+1,0) part ("del"), a (p,1) part
  ("delbar"), and a (p-1,2) part that vanishes exactly when I is
  integrable; del_J := J^{-1} o delbar o J maps (p,0) to (p+1,0).
* sigma(a) = J(conj a) is anti-linear and squares to (-1)^p on (p,0)-forms,
  so for even p it splits the real points of A^{p,0} into fixed and
  anti-fixed halves.  Anti-linear maps are only ever handled realified.

Everything is exact; the bigraded matrices are built degree by degree from
sparse Leibniz expansions and cross-checked against the plain
Chevalley-Eilenberg differential by ``verify_identities``.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from .errors import (BadCoframe, BadParameters, DegreeOutOfRange,
                     InternalInvariantError, Leakage, NotAlmostComplex,
                     NotAnticommuting, NotIntegrable, WrongDegree)
from .exact import GaussianRational, ONE, ZERO
from .exact import I as IMAG
from .forms import basis_tuples, coords_to_sparse, merge_sign, sparse_wedge_list
from .liealg import LieAlgebra, require_jacobi
from .linalg import (Subspace, conj_vector, fixed_subspace, identity, invert,
                     mat_eq, mat_mul, mat_scale, mat_vec, nullspace,
                     realify_antilinear_matrix, realify_linear_matrix,
                     transpose)

GQ = GaussianRational

STRUCTURE_NAMES = ("I", "J", "K")


def one_form_action(L):
    """Induced action of an endomorphism on 1-form coordinates: -L^T."""
    n = len(L)
    return [[-L[j][i] for j in range(n)] for i in range(n)]


def _coerce_real_matrix(mat, n, what):
    if len(mat) != n or any(len(row) != n for row in mat):
        raise BadParameters(f"{what} must be a {n}x{n} matrix")
    rows = []
    for row in mat:
        out = []
        for x in row:
            v = x if isinstance(x, GQ) else GQ(x)
            if v.im:
                raise BadParameters(f"{what} must have real entries")
            out.append(v)
        rows.append(out)
    return rows


class HypercomplexTriple:
    """Anticommuting complex structures I, J and their product K = IJ.

    Build instances through :func:`check_quaternion_triple`, which is the
    validating constructor.
    """

    __slots__ = ("I", "J", "K", "dim")

    def __init__(self, I, J, K):
        self.I = I
        self.J = J
        self.K = K
        self.dim = len(I)

    def structure(self, name):
        if name not in STRUCTURE_NAMES:
            raise BadParameters(f"unknown structure {name!r}; want I, J or K")
        return getattr(self, name)


def check_quaternion_triple(g: LieAlgebra, I, J, K=None) -> HypercomplexTriple:
    """Validate the quaternion relations and return the triple.

    Checks, in order: square real matrices of the right size on an algebra
    of dimension divisible by four; I^2 = J^2 = -Id; IJ = -JI; and, when K
    is supplied explicitly, K = IJ.
    """
    n = g.dim
    if n % 4:
        raise BadParameters(
            f"hypercomplex structures need dimension divisible by 4, got {n}")
    I = _coerce_real_matrix(I, n, "I")
    J = _coerce_real_matrix(J, n, "J")
    minus_id = mat_scale(identity(n), -ONE)
    if not mat_eq(mat_mul(I, I), minus_id):
        raise NotAlmostComplex("I^2 is not -Id")
    if not mat_eq(mat_mul(J, J), minus_id):
        raise NotAlmostComplex("J^2 is not -Id")
    IJ = mat_mul(I, J)
    if not mat_eq(IJ, mat_scale(mat_mul(J, I), -ONE)):
        raise NotAnticommuting("IJ is not -JI")
    if K is not None:
        K = _coerce_real_matrix(K, n, "K")
        if not mat_eq(K, IJ):
            raise NotAnticommuting("K does not equal IJ")
    return HypercomplexTriple(I, J, IJ)


def nijenhuis_tensor(g: LieAlgebra, L):
    """Nijenhuis tensor of an almost complex structure on basis pairs.

    N(x, y) = [Lx, Ly] - L[Lx, y] - L[x, Ly] - [x, y]   (using L^2 = -Id).

    Returns (is_zero, violations) where violations lists (i, j, N(e_i, e_j))
    for the basis pairs i < j with nonzero value.
    """
    n = g.dim
    L = _coerce_real_matrix(L, n, "structure")
    cols = transpose(L)  # column i = L e_{i+1}
    violations = []
    for i in range(1, n + 1):
        ei = [ZERO] * n
        ei[i - 1] = ONE
        for j in range(i + 1, n + 1):
            ej = [ZERO] * n
            ej[j - 1] = ONE
            li, lj = cols[i - 1], cols[j - 1]
            val = g.bracket(li, lj)
            for v, c in zip(mat_vec(L, g.bracket(li, ej)), range(n)):
                val[c] = val[c] - v
            for v, c in zip(mat_vec(L, g.bracket(ei, lj)), range(n)):
                val[c] = val[c] - v
            for v, c in zip(g.bracket_basis(i, j), range(n)):
                val[c] = val[c] - v
            if any(val):
                violations.append((i, j, val))
    return not violations, violations


# ---- (1,0)-coframes --------------------------------------------------------

def _validate_coframe(g: LieAlgebra, triple: HypercomplexTriple, vectors):
    """Check a candidate (1,0)-coframe; return (coframe, P, P^{-1}).

    P is the change-of-basis matrix whose columns are the coframe vectors
    followed by their conjugates, so P^{-1} rewrites 1-form coordinates in
    the coframe alphabet.
    """
    n = g.dim
    half = n // 2
    if len(vectors) != half:
        raise BadCoframe(f"expected {half} coframe forms, got {len(vectors)}")
    frame = []
    for v in vectors:
        if len(v) != n:
            raise BadCoframe("coframe form has wrong length")
        frame.append([x if isinstance(x, GQ) else GQ(x) for x in v])
    ind_i = one_form_action(triple.I)
    for a, v in enumerate(frame, start=1):
        image = mat_vec(ind_i, v)
        expect = [-(IMAG * x) for x in v]
        if any((p - q) for p, q in zip(image, expect)):
            raise BadCoframe(f"coframe form {a} is not of type (1,0)")
    letters = [list(v) for v in frame] + [conj_vector(v) for v in frame]
    P = [[letters[a][k] for a in range(n)] for k in range(n)]
    Pinv = invert(P)
    if Pinv is None:
        raise BadCoframe("coframe forms and conjugates do not span all 1-forms")
    return [tuple(v) for v in frame], P, Pinv


def one_zero_coframe(g: LieAlgebra, triple: HypercomplexTriple, coframe=None):
    """A (1,0)-coframe as coordinate vectors over the dual basis.

    With ``coframe`` supplied it is validated and returned; otherwise one is
    built greedily: take the first dual basis vector a outside the span so
    far, form phi = a + i*(I a) (type (1,0) by construction), pair it with
    J applied to its conjugate, and repeat.  Each step extends the real
    span by a 4-dimensional quaternionic orbit.
    """
    if coframe is not None:
        frame, _, _ = _validate_coframe(g, triple, coframe)
        return [list(v) for v in frame]
    n = g.dim
    half = n // 2
    ind_i = one_form_action(triple.I)
    ind_j = one_form_action(triple.J)
    span = Subspace.zero(n)
    out = []
    for r in range(n):
        if len(out) == half:
            break
        alpha = [ZERO] * n
        alpha[r] = ONE
        if span.contains_vector(alpha):
            continue
        ia = mat_vec(ind_i, alpha)
        phi = [GQ(a.re, b.re) for a, b in zip(alpha, ia)]
        psi = mat_vec(ind_j, conj_vector(phi))
        out.append(phi)
        out.append(psi)
        parts = [alpha, ia,
                 [GQ(x.re) for x in psi], [GQ(x.im) for x in psi]]
        bigger = span.add(Subspace.from_vectors(parts, n))
        if bigger.dim != span.dim + 4:
            raise InternalInvariantError(
                "quaternionic orbit did not extend the coframe span by 4")
        span = bigger
    if len(out) != half or span.dim != n:
        raise InternalInvariantError("automatic coframe construction failed")
    frame, _, _ = _validate_coframe(g, triple, out)
    return [list(v) for v in frame]


# ---- bidegree bookkeeping --------------------------------------------------

_PQ_CACHE: dict = {}


def pq_tuples(half: int, p: int, q: int):
    """Basis tuples of the (p,q)-block over the coframe alphabet.

    Letters 1..half are the coframe forms, letters half+1..2*half their
    conjugates; the tuples are lexicographic with all unbarred letters
    first, which is also their ascending order.
    """
    key = (half, p, q)
    if key not in _PQ_CACHE:
        tuples = []
        for P in combinations(range(1, half + 1), p):
            for Q in combinations(range(half + 1, 2 * half + 1), q):
                tuples.append(P + Q)
        index = {t: pos for pos, t in enumerate(tuples)}
        _PQ_CACHE[key] = (tuples, index)
    return _PQ_CACHE[key]


def _conj_sparse(f: dict, half: int) -> dict:
    """Complex conjugate of a sparse form over the coframe alphabet."""
    out = {}
    for t, c in f.items():
        p = sum(1 for a in t if a <= half)
        q = len(t) - p
        mirrored = tuple(sorted(a + half if a <= half else a - half for a in t))
        cc = c.conjugate()
        out[mirrored] = -cc if (p * q) % 2 else cc
    return out


class HypercomplexInstance:
    """A Lie algebra with a hypercomplex triple and a chosen (1,0)-coframe.

    All bigraded operators are exact matrices over blocks of the coframe
    wedge basis; they are built lazily and cached.  Operators of the
    integrable calculus (del, delbar, del_J, sigma decompositions) insist
    on vanishing Nijenhuis tensors first.
    """

    def __init__(self, g: LieAlgebra, triple: HypercomplexTriple, coframe=None):
        require_jacobi(g)
        if not isinstance(triple, HypercomplexTriple):
            raise BadParameters(
                "expected a HypercomplexTriple (use check_quaternion_triple)")
        if triple.dim != g.dim:
            raise BadParameters("structure matrices do not match the algebra")
        self.g = g
        self.triple = triple
        self.n = g.dim
        self.half = g.dim // 2
        frame, P, Pinv = _validate_coframe(
            g, triple, coframe if coframe is not None
            else one_zero_coframe(g, triple))
        self.coframe = frame
        self._P = P
        self._Pinv = Pinv
        # dual basis 1-forms rewritten in the coframe alphabet
        self._e_in_phi = [
            {(a + 1,): Pinv[a][j] for a in range(self.n) if Pinv[a][j]}
            for j in range(self.n)
        ]
        self._letters = (
            [{(j + 1,): c for j, c in enumerate(v) if c} for v in frame]
            + [{(j + 1,): c.conjugate() for j, c in enumerate(v) if c}
               for v in frame]
        )
        self._jmat = self._compute_jmat()
        self._dletter = None
        self._dblocks: dict = {}
        self._jbar: dict = {}
        self._sigma_real: dict = {}
        self._integrability = None

    # -- structural data --

    def _compute_jmat(self):
        """Matrix of J on conjugate coframe forms: J conj(phi^a) in phi-coords."""
        ind_j = one_form_action(self.triple.J)
        half = self.half
        jmat = [[ZERO] * half for _ in range(half)]
        for a in range(half):
            image = mat_vec(ind_j, conj_vector(list(self.coframe[a])))
            coords = mat_vec(self._Pinv, image)
            if any(coords[half:]):
                raise InternalInvariantError(
                    "J image of a conjugate coframe form is not of type (1,0)")
            for b in range(half):
                jmat[b][a] = coords[b]
        return jmat

    @property
    def frame_vectors(self):
        """Rows of the inverse coframe matrix: the complexified dual frame.

        The first ``half`` rows are the (1,0) frame vectors dual to the
        coframe; the remaining rows are their conjugates.
        """
        return tuple(tuple(r) for r in self._Pinv)

    def p0_dim(self, p: int) -> int:
        self._check_degree(p)
        return comb(self.half, p)

    def p0_tuples(self, p: int):
        """Index tuples of the (p,0) wedge basis (subsets of the coframe)."""
        self._check_degree(p)
        return [t[:p] for t in pq_tuples(self.half, p, 0)[0]]

    def _check_degree(self, p: int):
        if not (0 <= p <= self.half):
            raise DegreeOutOfRange(
                f"(p,0)-form degree {p} out of range 0..{self.half}")

    # -- coordinate conversions --

    def e_sparse_to_phi(self, f: dict) -> dict:
        """Rewrite a sparse form over the dual basis in the coframe alphabet."""
        out: dict = {}
        for t, c in f.items():
            for t2, c2 in sparse_wedge_list(
                    [self._e_in_phi[j - 1] for j in t]).items():
                term = c * c2
                prev = out.get(t2)
                out[t2] = term if prev is None else prev + term
        return {t: c for t, c in out.items() if c}

    def phi_sparse_to_e(self, f: dict) -> dict:
        """Rewrite a sparse form over the coframe alphabet in the dual basis."""
        out: dict = {}
        for t, c in f.items():
            for t2, c2 in sparse_wedge_list(
                    [self._letters[a - 1] for a in t]).items():
                term = c * c2
                prev = out.get(t2)
                out[t2] = term if prev is None else prev + term
        return {t: c for t, c in out.items() if c}

    def block_coords(self, f: dict, p: int, q: int):
        """Dense coordinates of the (p,q)-block of a sparse coframe form."""
        tuples, index = pq_tuples(self.half, p, q)
        out = [ZERO] * len(tuples)
        for t, c in f.items():
            pos = index.get(t)
            if pos is not None:
                out[pos] = out[pos] + c
        return out

    def p0_coords_to_sparse(self, coords, p: int) -> dict:
        tuples, _ = pq_tuples(self.half, p, 0)
        return {t: c for t, c in zip(tuples, coords) if c}

    # -- the differential in coframe coordinates --

    def _dletters(self):
        """d of every alphabet letter as a sparse 2-form in the alphabet."""
        if self._dletter is None:
            d1 = self.g.ce_matrix(1)
            out = []
            for letter in self._letters:
                vec = [ZERO] * self.n
                for (j,), c in letter.items():
                    vec[j - 1] = c
                de = mat_vec(d1, vec) if d1 else []
                out.append(self.e_sparse_to_phi(
                    coords_to_sparse(de, self.n, 2)))
            self._dletter = out
        return self._dletter

    def d_blocks(self, p: int):
        """The three bigraded blocks of d on (p,0)-forms.

        Returns {"del": ..., "delbar": ..., "leak": ...} where the leak
        block is the (p-1,2) component, nonzero exactly on non-integrable
        structures.  No integrability gate: this is the raw split.
        """
        self._check_degree(p)
        if p not in self._dblocks:
            half = self.half
            src = self.p0_tuples(p)
            tgt_del = pq_tuples(half, p + 1, 0)[1] if p + 1 <= half else {}
            tgt_delbar = pq_tuples(half, p, 1)[1]
            tgt_leak = pq_tuples(half, p - 1, 2)[1] if p >= 1 else {}
            dletter = self._dletters()
            n_del, n_delbar, n_leak = len(tgt_del), len(tgt_delbar), len(tgt_leak)
            m_del = [[ZERO] * len(src) for _ in range(n_del)]
            m_delbar = [[ZERO] * len(src) for _ in range(n_delbar)]
            m_leak = [[ZERO] * len(src) for _ in range(n_leak)]
            for col, S in enumerate(src):
                for r, a in enumerate(S):
                    rest = S[:r] + S[r + 1:]
                    row_sign = -1 if r % 2 else 1
                    for t2, c in dletter[a - 1].items():
                        sgn, merged = merge_sign(rest, t2)
                        if sgn == 0:
                            continue
                        term = c if row_sign * sgn > 0 else -c
                        if merged in tgt_del:
                            m_del[tgt_del[merged]][col] += term
                        elif merged in tgt_delbar:
                            m_delbar[tgt_delbar[merged]][col] += term
                        elif merged in tgt_leak:
                            m_leak[tgt_leak[merged]][col] += term
                        else:
                            raise InternalInvariantError(
                                "differential produced an impossible bidegree")
            self._dblocks[p] = {"del": m_del, "delbar": m_delbar,
                                "leak": m_leak}
        return self._dblocks[p]

    # -- integrability --

    def integrability(self):
        """(all_integrable, names of structures with nonzero Nijenhuis)."""
        if self._integrability is None:
            bad = tuple(
                name for name in STRUCTURE_NAMES
                if not nijenhuis_tensor(self.g, self.triple.structure(name))[0])
            self._integrability = (not bad, bad)
        return self._integrability

    @property
    def is_integrable(self) -> bool:
        return self.integrability()[0]

    def ensure_integrable(self):
        ok, bad = self.integrability()
        if not ok:
            raise NotIntegrable(
                "Nijenhuis tensor does not vanish for: " + ", ".join(bad),
                structures=list(bad))

    # -- gated bigraded operators --

    def _gated_blocks(self, p: int):
        self.ensure_integrable()
        blocks = self.d_blocks(p)
        if any(x for row in blocks["leak"] for x in row):
            raise Leakage(
                f"d on ({p},0)-forms has a ({p-1},2) component despite "
                "vanishing Nijenhuis tensors")
        return blocks

    def del_matrix(self, p: int):
        """del: (p,0) -> (p+1,0), the holomorphic part of d."""
        return self._gated_blocks(p)["del"]

    def delbar_matrix(self, p: int):
        """delbar: (p,0) -> (p,1), the anti-holomorphic part of d."""
        return self._gated_blocks(p)["delbar"]

    def jbar_block(self, k: int):
        """Matrix of J from the (0,k)-block to the (k,0)-block."""
        if k not in self._jbar:
            half = self.half
            tuples, index = pq_tuples(half, k, 0)
            subsets = [t for t in tuples]
            rows = [[ZERO] * len(subsets) for _ in range(len(subsets))]
            for col, Q in enumerate(subsets):
                factors = [
                    {(b,): self._jmat[b - 1][a - 1]
                     for b in range(1, half + 1) if self._jmat[b - 1][a - 1]}
                    for a in Q
                ]
                for t, c in sparse_wedge_list(factors).items():
                    rows[index[t]][col] = rows[index[t]][col] + c
            self._jbar[k] = rows
        return self._jbar[k]

    def delJ_matrix(self, p: int):
        """del_J = J^{-1} o delbar o J : (p,0) -> (p+1,0).

        J sends (p,0) to (0,p); there d has its (0,p+1) component, which is
        the entrywise conjugate of the del block by realness of d; J^{-1}
        on (p+1)-forms is (-1)^{p+1} J.
        """
        self._check_degree(p)
        if p == self.half:
            return []
        j_to_bar = [[x.conjugate() for x in row] for row in self.jbar_block(p)]
        conj_del = [[x.conjugate() for x in row] for row in self.del_matrix(p)]
        back = self.jbar_block(p + 1)
        out = mat_mul(back, mat_mul(conj_del, j_to_bar))
        if (p + 1) % 2:
            out = mat_scale(out, -ONE)
        return out

    # -- sigma = J o conj --

    def sigma_matrix(self, p: int):
        """Complex matrix S of the anti-linear map sigma(v) = S conj(v)."""
        self._check_degree(p)
        return self.jbar_block(p)

    def sigma_real(self, p: int):
        """Realified matrix of sigma on (p,0)-forms."""
        if p not in self._sigma_real:
            self._check_degree(p)
            self._sigma_real[p] = realify_antilinear_matrix(self.sigma_matrix(p))
        return self._sigma_real[p]

    def apply_sigma(self, coords, p: int):
        """sigma of a dense (p,0) coordinate vector."""
        return mat_vec(self.sigma_matrix(p), conj_vector(coords))


def bigraded_operator(instance: HypercomplexInstance, name: str, p: int):
    """Matrix of a bigraded operator out of the (p,0)-block.

    ``name`` is one of "d", "del", "delbar", "delJ".  "d" returns the raw
    stacked blocks [(p+1,0); (p,1); (p-1,2)] without an integrability gate;
    the named parts insist on integrability and on the absence of leakage.
    """
    if name == "d":
        blocks = instance.d_blocks(p)
        return blocks["del"] + blocks["delbar"] + blocks["leak"]
    if name == "del":
        return instance.del_matrix(p)
    if name == "delbar":
        return instance.delbar_matrix(p)
    if name == "delJ":
        return instance.delJ_matrix(p)
    raise BadParameters(f"unknown operator {name!r}; want d, del, delbar or delJ")


def sigma_decompose(instance: HypercomplexInstance, p: int):
    """Fixed and anti-fixed subspaces of sigma on realified (p,0)-forms.

    sigma is anti-linear with sigma^2 = (-1)^p, so real eigenspaces only
    exist for even p; both halves then have real dimension equal to the
    complex dimension of the block.
    """
    if p % 2:
        raise WrongDegree(
            f"sigma squares to -1 on ({p},0)-forms; no real eigenspaces")
    real = instance.sigma_real(p)
    plus = fixed_subspace(real, 1)
    minus = fixed_subspace(real, -1)
    want = instance.p0_dim(p)
    if plus.dim != want or minus.dim != want:
        raise InternalInvariantError(
            "sigma eigenspaces do not halve the realified block")
    return plus, minus


def closed_quaternionic_coframe(g: LieAlgebra, triple: HypercomplexTriple):
    """Largest quaternion-invariant subspace of closed 1-forms.

    Returns ker(d) intersected with its images under the induced actions of
    I, J and K, as a subspace of 1-form coordinates.
    """
    n = g.dim
    d1 = g.ce_matrix(1)
    ker = Subspace.from_vectors(nullspace(d1, n), n) if d1 else Subspace.full(n)
    out = ker
    for name in STRUCTURE_NAMES:
        ind = one_form_action(triple.structure(name))
        moved = Subspace.from_vectors(
            [mat_vec(ind, list(v)) for v in ker.basis], n)
        out = out.intersect(moved)
    return out


# ---- identity battery -------------------------------------------------------

def _induced_on_two_forms(g: LieAlgebra, action):
    """Matrix on 2-form coordinates induced by a 1-form coordinate action."""
    n = g.dim
    tuples, index = basis_tuples(n, 2)
    cols = []
    for (i, j) in tuples:
        fi = {(k + 1,): action[k][i - 1] for k in range(n) if action[k][i - 1]}
        fj = {(k + 1,): action[k][j - 1] for k in range(n) if action[k][j - 1]}
        w = sparse_wedge_list([fi, fj])
        col = [ZERO] * len(tuples)
        for t, c in w.items():
            col[index[t]] = col[index[t]] + c
        cols.append(col)
    return [[cols[c][r] for c in range(len(tuples))] for r in range(len(tuples))]


def verify_identities(instance: HypercomplexInstance) -> dict:
    """Cross-check battery for one instance; returns {check name: bool}.

    The checks compare independently computed routes (coframe-alphabet
    Leibniz matrices against the plain Chevalley-Eilenberg differential,
    leakage against the Nijenhuis tensor, the sigma conventions against
    operator kernels) and the structural identities of the calculus.
    """
    g = instance.g
    half = instance.half
    report = {}

    from .liealg import d_squared_is_zero
    report["d_squared_zero"] = d_squared_is_zero(g)

    # object-level facts, reported but excluded from the machinery verdict
    nij = {name: nijenhuis_tensor(g, instance.triple.structure(name))[0]
           for name in STRUCTURE_NAMES}
    facts = {}
    for name in STRUCTURE_NAMES:
        facts[f"nijenhuis_{name}_vanishes"] = nij[name]

    # leakage on (1,0) must match the Nijenhuis tensor of I exactly
    leak1 = instance.d_blocks(1)["leak"]
    report["leak_iff_nonintegrable"] = (
        not any(x for row in leak1 for x in row)) == nij["I"]

    # conjugation consistency of the letter differentials
    dletter = instance._dletters()
    ok = True
    for a in range(half):
        if _conj_sparse(dletter[a], half) != dletter[half + a]:
            ok = False
    report["conjugate_letter_differentials"] = ok

    # induced action of I is diagonal (-i / +i) on the alphabet
    ind_i = one_form_action(instance.triple.I)
    ok = True
    for a, letter in enumerate(instance._letters):
        vec = [ZERO] * instance.n
        for (j,), c in letter.items():
            vec[j - 1] = c
        image = mat_vec(instance._Pinv, mat_vec(ind_i, vec))
        want = [ZERO] * instance.n
        want[a] = -IMAG if a < half else IMAG
        if any((x - y) for x, y in zip(image, want)):
            ok = False
    report["i_action_diagonal"] = ok

    # coordinate conversions invert each other on every 2-form basis element
    ok = True
    for t in basis_tuples(instance.n, 2)[0]:
        back = instance.phi_sparse_to_e(instance.e_sparse_to_phi({t: ONE}))
        if back != {t: ONE}:
            ok = False
    report["coordinate_roundtrip"] = ok

    # J on (2,0)-forms agrees with the plain induced action on 2-forms
    ind_j2 = _induced_on_two_forms(g, one_form_action(instance.triple.J))
    tuples20 = instance.p0_tuples(2)
    jbar2 = instance.jbar_block(2)
    ok = True
    for col, S in enumerate(tuples20):
        shifted = tuple(a + half for a in S)
        via_e = instance.e_sparse_to_phi(coords_to_sparse(
            mat_vec(ind_j2, [x for x in _dense_e(instance, {shifted: ONE})]),
            instance.n, 2))
        direct = {}
        for row, T in enumerate(tuples20):
            c = jbar2[row][col]
            if c:
                direct[T] = c
        if via_e != direct:
            ok = False
    report["j_action_matches_plain_route"] = ok

    # the alphabet differential matches the plain differential on (2,0)
    d2 = g.ce_matrix(2)
    blocks2 = instance.d_blocks(2)
    ok = True
    for col, S in enumerate(tuples20):
        image = {}
        for key, (pp, qq) in (("del", (3, 0)), ("delbar", (2, 1)),
                              ("leak", (1, 2))):
            tuples_t, _ = pq_tuples(half, pp, qq)
            for row, T in enumerate(tuples_t):
                c = blocks2[key][row][col]
                if c:
                    image[T] = c
        lhs = instance.phi_sparse_to_e(image)
        rhs = coords_to_sparse(
            mat_vec(d2, _dense_e(instance, {S: ONE})), instance.n, 3)
        if lhs != rhs:
            ok = False
    report["d_matches_plain_route"] = ok

    # sigma squares to (-1)^p blockwise
    ok = True
    for p in range(half + 1):
        s = instance.sigma_matrix(p)
        prod = mat_mul(s, [[x.conjugate() for x in row] for row in s])
        want = identity(len(s)) if p % 2 == 0 else mat_scale(
            identity(len(s)), -ONE)
        if not mat_eq(prod, want):
            ok = False
    report["sigma_squares_to_sign"] = ok

    if instance.is_integrable:
        ok = True
        for p in range(half):
            dd = mat_mul(instance.del_matrix(p + 1), instance.del_matrix(p))
            if any(x for row in dd for x in row):
                ok = False
        report["del_squared_zero"] = ok
        ok = True
        for p in range(half):
            dd = mat_mul(instance.delJ_matrix(p + 1), instance.delJ_matrix(p))
            if any(x for row in dd for x in row):
                ok = False
        report["delJ_squared_zero"] = ok
        ok = True
        for p in range(half - 1):
            anti = mat_mul(instance.del_matrix(p + 1), instance.delJ_matrix(p))
            for row, extra in zip(anti, mat_mul(instance.delJ_matrix(p + 1),
                                                instance.del_matrix(p))):
                for a, b in zip(row, extra):
                    if a + b:
                        ok = False
        report["del_delJ_anticommute"] = ok

        # sigma exchanges the kernels of del and del_J on (2,0)-forms
        if half >= 2:
            ker_del = Subspace.from_vectors(
                nullspace(realify_linear_matrix(instance.del_matrix(2)),
                          2 * instance.p0_dim(2)),
                2 * instance.p0_dim(2), "real-realified")
            ker_delJ = Subspace.from_vectors(
                nullspace(realify_linear_matrix(instance.delJ_matrix(2)),
                          2 * instance.p0_dim(2)),
                2 * instance.p0_dim(2), "real-realified")
            sig = instance.sigma_real(2)
            mapped = Subspace.from_vectors(
                [mat_vec(sig, list(v)) for v in ker_delJ.basis],
                2 * instance.p0_dim(2), "real-realified")
            report["sigma_swaps_operator_kernels"] = (
                mapped.dim == ker_del.dim and ker_del.contains(mapped))

    report["all_ok"] = all(v for v in report.values())
    report.update(facts)
    return report


def _dense_e(instance: HypercomplexInstance, sparse_phi: dict):
    """Dense dual-basis coordinates of a sparse coframe-alphabet form."""
    f = instance.phi_sparse_to_e(sparse_phi)
    k = len(next(iter(sparse_phi)))
    tuples, index = basis_tuples(instance.n, k)
    out = [ZERO] * len(tuples)
    for t, c in f.items():
        out[index[t]] = out[index[t]] + c
    return out
