"""Hyperhermitian metrics and their certificates on hypercomplex instances.

A metric is a symmetric positive-definite rational Gram matrix on the
algebra, compatible with all three complex structures.  From it the module
builds the three fundamental 2-forms and the holomorphic form

    Omega = omega_J + i omega_K,

a (2,0)-form that is fixed by the involution sigma and q-positive.  (One
normalization note: some sources carry a factor 1/2 in front of Omega; the
convention here is pinned by the regression constants h(Omega, Omega) = 2
and star(Omega) = Omega on the flat instance, which force the unscaled
form.)

Certificates come in independent pairs wherever the theory offers two
routes:

* HKT:  (A) the holomorphic derivative of Omega vanishes; (B) the three
  torsion 3-forms T_L(x,y,z) = -sum_cyc g([Lx,Ly],z) coincide for
  L = I, J, K.  The two routes must agree; disagreement is a hard error.
* hyperkahler: all three fundamental forms are d-closed.

For eight-dimensional instances whose canonical bundle is trivialized by a
closed top coframe form, the module also builds the quaternionic Hodge star
on (p,0)-forms from the wedge pairing

    alpha ^ star(beta) = h(alpha, beta) * Omega^2 / 2,

where h is the Hermitian extension of the metric to (p,0)-forms
(conjugate-linear in the second slot, h(coframe, coframe) = identity when
the frame is orthonormal).  The star is anti-linear and squares to the
identity on (2,0)-forms.  On top of it sits the invariant restriction of
the fourth-order operator P: the sigma-anti-fixed projection of
del del-star on anti-fixed (2,0)-forms, returned with its exact kernel and
with a probe reporting which anti-fixed forms the star actually fixes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadParameters,
    InternalInvariantError,
    MethodDisagreement,
    NoTrivializingForm,
    NotHermitian,
    NotPositive,
)
from .exact import GaussianRational, ZERO, ONE, HALF, I as IMAG
from .forms import basis_tuples, merge_sign
from .hypercomplex import HypercomplexInstance
from .linalg import (
    Subspace,
    derealify_vector,
    det,
    fixed_subspace,
    invert,
    mat_mul,
    mat_vec,
    nullspace,
    realify_antilinear_matrix,
    realify_linear_matrix,
    transpose,
)

GQ = GaussianRational

SCOPE = "invariant-level"


# ---- metric construction ----------------------------------------------------

@dataclass(frozen=True)
class FundamentalForms:
    """The three fundamental 2-forms and the holomorphic (2,0)-form.

    ``omega_I``/``omega_J``/``omega_K`` are skew matrices over the algebra
    basis; ``omega`` holds the coordinates of Omega = omega_J + i omega_K
    on the (2,0) coframe basis.
    """

    omega_I: tuple
    omega_J: tuple
    omega_K: tuple
    omega: tuple


@dataclass(frozen=True)
class HyperhermitianMetric:
    """A validated compatible metric together with its fundamental forms."""

    gram: tuple
    forms: FundamentalForms


def _validate_gram(gram, n):
    if len(gram) != n or any(len(r) != n for r in gram):
        raise BadParameters(f"gram matrix must be {n}x{n}")
    rows = [[x if isinstance(x, GQ) else GQ(x) for x in r] for r in gram]
    for i in range(n):
        for j in range(n):
            if rows[i][j].im:
                raise BadParameters("gram entries must be rational")
            if rows[i][j] != rows[j][i]:
                raise BadParameters("gram matrix must be symmetric")
    for k in range(1, n + 1):
        minor = det([r[:k] for r in rows[:k]])
        if minor.im or minor.re <= 0:
            raise NotPositive(
                f"leading principal minor {k} is not positive")
    return rows


def _omega_matrix(action, gram):
    """Matrix of the 2-form (x, y) -> g(action(x), y)."""
    lg = mat_mul(transpose(action), gram)
    n = len(gram)
    for i in range(n):
        for j in range(n):
            if lg[i][j] != -lg[j][i]:
                raise InternalInvariantError("fundamental form is not skew")
    return lg


def _two_form_sparse(mat, n):
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            if mat[i][j]:
                out[(i + 1, j + 1)] = mat[i][j]
    return out


def _qpositivity_matrix(instance, omega_coords):
    """The Hermitian matrix a, b -> Omega(Z_a, J conj(Z_b))."""
    half = instance.half
    frame = [list(r) for r in instance.frame_vectors]
    jc = [[x if isinstance(x, GQ) else GQ(x) for x in row]
          for row in instance.triple.J]
    pairs = []
    for b in range(half):
        zbar = frame[half + b]
        pairs.append(mat_vec(jc, zbar))
    tuples2 = instance.p0_tuples(2)
    coframe = instance.coframe
    n2 = len(tuples2)

    def eval_phi(a, vec):
        row = coframe[a - 1]
        return sum((row[k] * vec[k] for k in range(len(vec))), ZERO)

    h = [[ZERO] * half for _ in range(half)]
    for a in range(half):
        za = frame[a]
        for b in range(half):
            acc = ZERO
            for k in range(n2):
                c = omega_coords[k]
                if not c:
                    continue
                s, t = tuples2[k]
                acc = acc + c * (eval_phi(s, za) * eval_phi(t, pairs[b]) -
                                 eval_phi(t, za) * eval_phi(s, pairs[b]))
            h[a][b] = acc
    for a in range(half):
        for b in range(half):
            if h[a][b] != h[b][a].conjugate():
                raise InternalInvariantError(
                    "q-positivity matrix is not Hermitian")
    return h


def _hermitian_positive(h):
    for k in range(1, len(h) + 1):
        minor = det([r[:k] for r in h[:k]])
        if minor.im or minor.re <= 0:
            return False
    return True


def build_metric(instance: HypercomplexInstance, gram) -> HyperhermitianMetric:
    """Validate a compatible metric and compute its fundamental forms.

    Checks: symmetry and positive-definiteness of the Gram matrix,
    compatibility g(Lx, Ly) = g(x, y) for all three structures, that
    omega_J + i omega_K is of type (2,0), fixed by sigma, and q-positive.
    """
    instance.ensure_integrable()
    n = instance.g.dim
    rows = _validate_gram(gram, n)
    mats = {}
    for name in ("I", "J", "K"):
        action = [[x if isinstance(x, GQ) else GQ(x) for x in r]
                  for r in instance.triple.structure(name)]
        if mat_mul(transpose(action), mat_mul(rows, action)) != rows:
            raise NotHermitian(
                f"metric is not compatible with structure {name}")
        mats[name] = _omega_matrix(action, rows)
    w_sparse = {}
    for key, val in _two_form_sparse(mats["J"], n).items():
        w_sparse[key] = w_sparse.get(key, ZERO) + val
    for key, val in _two_form_sparse(mats["K"], n).items():
        w_sparse[key] = w_sparse.get(key, ZERO) + IMAG * val
    w_phi = instance.e_sparse_to_phi(w_sparse)
    half = instance.half
    for key in w_phi:
        if w_phi[key] and any(letter > half for letter in key):
            raise InternalInvariantError(
                "omega_J + i omega_K is not of type (2,0)")
    omega_coords = instance.block_coords(w_phi, 2, 0)
    sig = instance.apply_sigma(omega_coords, 2)
    if list(sig) != list(omega_coords):
        raise InternalInvariantError("Omega is not fixed by sigma")
    qmat = _qpositivity_matrix(instance, omega_coords)
    if not _hermitian_positive(qmat):
        raise NotPositive("Omega is not q-positive")
    forms = FundamentalForms(
        omega_I=tuple(tuple(r) for r in mats["I"]),
        omega_J=tuple(tuple(r) for r in mats["J"]),
        omega_K=tuple(tuple(r) for r in mats["K"]),
        omega=tuple(omega_coords),
    )
    return HyperhermitianMetric(gram=tuple(tuple(r) for r in rows),
                                forms=forms)


# ---- HKT and hyperkahler certificates ---------------------------------------

@dataclass(frozen=True)
class HktReport:
    """Dual-method HKT certificate.

    ``holomorphic_closed`` is method A (the derivative of Omega vanishes);
    ``torsions_equal`` is method B (the three torsion 3-forms coincide).
    The constructor path guarantees both agree; ``hkt`` is their common
    value.  The three torsion coordinate vectors are kept as evidence.
    """

    hkt: bool
    holomorphic_closed: bool
    torsions_equal: bool
    torsion_I: tuple
    torsion_J: tuple
    torsion_K: tuple
    scope: str = SCOPE


def _torsion_form(g, action, gram):
    """Coordinates of -sum_cyc g([Lx, Ly], z) over the 3-form basis."""
    n = g.dim
    cols = [[x if isinstance(x, GQ) else GQ(x) for x in col]
            for col in transpose(action)]
    tuples3, _ = basis_tuples(n, 3)

    def pair(x, y, z):
        # g([Lx, Ly], z) for basis vectors x, y and basis index z
        br = g.bracket(cols[x - 1], cols[y - 1])
        return sum((br[k] * gram[k][z - 1] for k in range(n)), ZERO)

    out = []
    for (i, j, k) in tuples3:
        val = pair(i, j, k) + pair(j, k, i) + pair(k, i, j)
        out.append(-val)
    return out


def hkt_check(instance: HypercomplexInstance,
              metric: HyperhermitianMetric) -> HktReport:
    """Certify HKT by two independent methods and require agreement."""
    instance.ensure_integrable()
    d2 = instance.del_matrix(2)
    image = mat_vec(d2, list(metric.forms.omega)) if d2 else []
    method_a = not any(image)
    torsions = {}
    for name in ("I", "J", "K"):
        action = instance.triple.structure(name)
        torsions[name] = _torsion_form(
            instance.g, action, [list(r) for r in metric.gram])
    method_b = torsions["I"] == torsions["J"] == torsions["K"]
    if method_a != method_b:
        raise MethodDisagreement(
            "HKT methods disagree: holomorphic-closedness says "
            f"{method_a}, torsion comparison says {method_b}")
    return HktReport(
        hkt=method_a,
        holomorphic_closed=method_a,
        torsions_equal=method_b,
        torsion_I=tuple(torsions["I"]),
        torsion_J=tuple(torsions["J"]),
        torsion_K=tuple(torsions["K"]),
    )


def hyperkahler_check(instance: HypercomplexInstance,
                      metric: HyperhermitianMetric) -> bool:
    """True iff all three fundamental forms are d-closed."""
    instance.ensure_integrable()
    n = instance.g.dim
    d2 = instance.g.ce_matrix(2)
    tuples2, index2 = basis_tuples(n, 2)
    for mat in (metric.forms.omega_I, metric.forms.omega_J,
                metric.forms.omega_K):
        coords = [ZERO] * len(tuples2)
        for (i, j), pos in index2.items():
            coords[pos] = mat[i - 1][j - 1]
        if any(mat_vec(d2, coords)):
            return False
    return True


# ---- quaternionic Hodge star -------------------------------------------------

@dataclass(frozen=True)
class HodgeStar:
    """Anti-linear star on (p,0)-forms, stored realified.

    ``matrix`` is the complex matrix applied to conjugated coordinates;
    ``real_matrix`` the equivalent realified operator.
    """

    p: int
    matrix: tuple
    real_matrix: tuple

    def apply(self, coords):
        conj = [x.conjugate() for x in coords]
        return mat_vec([list(r) for r in self.matrix], conj)


def _coframe_gram(instance, metric):
    """h(phi^a, phi^b): half the complexified dual metric against conjugates."""
    ginv = invert([list(r) for r in metric.gram])
    half = instance.half
    n = instance.g.dim
    cols = [list(instance.coframe[a]) for a in range(half)]
    h = [[ZERO] * half for _ in range(half)]
    for a in range(half):
        ga = mat_vec(ginv, cols[a])
        for b in range(half):
            acc = sum((ga[k] * cols[b][k].conjugate() for k in range(n)),
                      ZERO)
            h[a][b] = HALF * acc
    for a in range(half):
        for b in range(half):
            if h[a][b] != h[b][a].conjugate():
                raise InternalInvariantError("coframe Gram is not Hermitian")
    if not _hermitian_positive(h):
        raise InternalInvariantError("coframe Gram is not positive")
    return h


def _gram_on_degree(h1, tuples_p):
    """Extend the coframe Gram to (p,0)-forms by minors."""
    out = []
    for s in tuples_p:
        row = []
        for t in tuples_p:
            row.append(det([[h1[a - 1][b - 1] for b in t] for a in s]))
        out.append(row)
    return out


def _wedge_pairing(instance, p):
    """Pairing matrix (phi^S ^ phi^T) / phi^top on complementary degrees."""
    half = instance.half
    rows = []
    for s in instance.p0_tuples(p):
        row = []
        for t in instance.p0_tuples(half - p):
            sgn, _ = merge_sign(s, t)
            row.append(GQ(sgn))
        rows.append(row)
    return rows


def _top_form_scale(instance, metric):
    """The scalar q with Omega^2 / 2 = q * phi^top."""
    omega = metric.forms.omega
    tuples2 = instance.p0_tuples(2)
    acc = ZERO
    for a, s in enumerate(tuples2):
        for b, t in enumerate(tuples2):
            sgn, _ = merge_sign(s, t)
            if sgn:
                acc = acc + omega[a] * omega[b] * GQ(sgn)
    return HALF * acc


def _require_trivializing_form(instance):
    """The closed top coframe form, or an error when it is not closed.

    The top (p,0) coframe form spans the invariant canonical bundle; the
    star recipe requires it to be annihilated by the conjugate-side
    derivative.  Its sigma-reality is automatic up to a unit scale and the
    scale cancels from the star's defining pairing, so only closedness is
    checked.
    """
    half = instance.half
    dbar = instance.delbar_matrix(half)
    if dbar and any(any(row) for row in dbar):
        raise NoTrivializingForm(
            "the top coframe form is not closed on the conjugate side")


def hodge_star_p0(instance: HypercomplexInstance,
                  metric: HyperhermitianMetric, p: int = 2) -> HodgeStar:
    """Star on (p,0)-forms from alpha ^ star(beta) = h(alpha,beta) Omega²/2.

    Requires an eight-dimensional instance with a closed top coframe form.
    The operator is anti-linear; on (2,0)-forms it squares to the identity.
    """
    instance.ensure_integrable()
    if instance.half != 4:
        raise BadParameters(
            "the quaternionic star is implemented for eight-dimensional "
            "instances only")
    _require_trivializing_form(instance)
    instance.p0_dim(p)
    q = _top_form_scale(instance, metric)
    if not q:
        raise InternalInvariantError("Omega^2 vanishes on a valid metric")
    h1 = _coframe_gram(instance, metric)
    hp = _gram_on_degree(h1, instance.p0_tuples(p))
    wp = _wedge_pairing(instance, p)
    winv = invert(wp)
    smat = [[q * x for x in row] for row in mat_mul(winv, hp)]
    star = HodgeStar(
        p=p,
        matrix=tuple(tuple(r) for r in smat),
        real_matrix=tuple(tuple(r) for r in realify_antilinear_matrix(smat)),
    )
    if p == 2:
        square = mat_mul([list(r) for r in star.real_matrix],
                         [list(r) for r in star.real_matrix])
        ident = [[ONE if i == j else ZERO for j in range(len(square))]
                 for i in range(len(square))]
        if square != ident:
            raise InternalInvariantError(
                "the star fails to square to the identity on (2,0)-forms")
    return star


# ---- the operator P on anti-fixed (2,0)-forms --------------------------------

@dataclass(frozen=True)
class PInvariantReport:
    """Invariant restriction of P with its kernel and the self-dual probe.

    ``matrix_real`` is the realified matrix of P on the coefficient space
    of the anti-fixed basis; ``kernel_basis`` holds complex coordinates of
    anti-fixed forms; ``star_fixed_dim``/``star_fixed_basis`` report the
    subspace of anti-fixed forms actually fixed by the star.
    """

    kernel_dim: int
    kernel_basis: tuple
    anti_fixed_dim: int
    star_fixed_dim: int
    star_fixed_basis: tuple
    matrix_real: tuple
    scope: str = SCOPE


def adjoint_derivative(instance: HypercomplexInstance,
                       metric: HyperhermitianMetric, p: int):
    """Matrix of -star ∘ D ∘ star from (p,0)- to (p-1,0)-forms."""
    star_p = hodge_star_p0(instance, metric, p)
    star_next = hodge_star_p0(instance, metric, instance.half - p + 1)
    d_mid = instance.del_matrix(instance.half - p)
    n_src = instance.p0_dim(p)
    cols = []
    for k in range(n_src):
        coords = [ZERO] * n_src
        coords[k] = ONE
        step = star_p.apply(coords)
        step = mat_vec(d_mid, step) if d_mid else []
        step = star_next.apply(step)
        cols.append([-x for x in step])
    return transpose(cols)


def operator_P_invariant(instance: HypercomplexInstance,
                         metric: HyperhermitianMetric) -> PInvariantReport:
    """P on anti-fixed (2,0)-forms: the anti-fixed part of D D-star.

    Returns the exact kernel of the realified operator together with a
    probe reporting which anti-fixed forms the star fixes (the self-dual
    subspace), with no claim that the probe covers the whole space.
    """
    instance.ensure_integrable()
    if instance.half != 4:
        raise BadParameters(
            "the operator P is implemented for eight-dimensional "
            "instances only")
    n2 = instance.p0_dim(2)
    dstar = adjoint_derivative(instance, metric, 2)
    ddstar = mat_mul(instance.del_matrix(1), dstar)
    m_real = realify_linear_matrix(ddstar)
    sig_real = [list(r) for r in instance.sigma_real(2)]
    anti = fixed_subspace(sig_real, -1)
    star2 = hodge_star_p0(instance, metric, 2)
    images = []
    for v in anti.basis:
        w = mat_vec(m_real, list(v))
        sw = mat_vec(sig_real, w)
        proj = [HALF * (a - b) for a, b in zip(w, sw)]
        images.append(proj)
    p_matrix = transpose(images)
    coeff_kernel = nullspace(p_matrix, len(images)) if images else []
    kernel_basis = []
    for c in coeff_kernel:
        vec = [ZERO] * (2 * n2)
        for coef, bas in zip(c, anti.basis):
            vec = [a + coef * b for a, b in zip(vec, bas)]
        kernel_basis.append(tuple(derealify_vector(vec)))
    star_real = [list(r) for r in star2.real_matrix]
    shifted = [list(r) for r in star_real]
    for i in range(len(shifted)):
        shifted[i][i] = shifted[i][i] - ONE
    star_fixed_all = Subspace.from_vectors(
        nullspace(shifted, 2 * n2), 2 * n2, "real-realified")
    probe = star_fixed_all.intersect(anti)
    return PInvariantReport(
        kernel_dim=len(kernel_basis),
        kernel_basis=tuple(kernel_basis),
        anti_fixed_dim=anti.dim,
        star_fixed_dim=probe.dim,
        star_fixed_basis=tuple(tuple(derealify_vector(list(v)))
                               for v in probe.basis),
        matrix_real=tuple(tuple(r) for r in p_matrix),
    )
