"""Built-in example families and structure-level classification.

Three eight-dimensional families are shipped:

``gt``
    A one-parameter nilpotent family with parameter ``t`` in the open
    interval (0, 1); the structure equations degenerate at ``t = 1/2``
    where the structure becomes abelian.

``nilpotent8``
    The generic nilpotent family with four real parameters ``t1..t4``:
    the four closed coframe directions wedge into the three fundamental
    self-dual two-forms, whose multiples drive the non-closed directions.
    The parameter origin is the abelian algebra.

``almost-abelian``
    Algebras with a codimension-one abelian ideal, parameterized by the
    block form of the outer derivation: a four-by-four block commuting
    with the induced structures (parameters ``a11, a21, a13, a23``), a
    scaling ``a`` on the complementary directions, and a translation part
    ``v2..v5``.

Besides the builders, this module recognizes the block form of an
almost-abelian structure from raw data, certifies the trivializing-form
criterion by two independent methods, classifies a single instance, and
sweeps parameter grids.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cohomology import cohomology_group, jbar_subgroups
from .errors import (
    BadParameters,
    InternalInvariantError,
    MethodDisagreement,
    NotAlmostAbelian,
)
from .exact import (
    GaussianRational,
    HALF,
    MINUS_ONE,
    ONE,
    ZERO,
    I as IMAG,
    parse_rational,
)
from .hypercomplex import (
    HypercomplexInstance,
    check_quaternion_triple,
    nijenhuis_tensor,
)
from .liealg import (
    LieAlgebra,
    find_codim1_abelian_ideal,
    lower_central_series,
    unimodularity,
    validate_jacobi,
)
from .linalg import Subspace, invert, mat_mul, mat_vec, nullspace
from .metric import (
    HyperhermitianMetric,
    build_metric,
    hkt_check,
    hyperkahler_check,
)

GQ = GaussianRational

SCOPE = "invariant-level"
FIELD_TAG = "Q(i)"

FAMILY_IDS = ("gt", "nilpotent8", "almost-abelian")

#: Canonical parameter order per family; missing optional parameters
#: default to zero.  The ``gt`` parameter is required.
FAMILY_PARAMETERS = {
    "gt": ("t",),
    "nilpotent8": ("t1", "t2", "t3", "t4"),
    "almost-abelian": (
        "a11", "a21", "a13", "a23", "a", "v2", "v3", "v4", "v5"),
}

_REQUIRED = {"gt": ("t",), "nilpotent8": (), "almost-abelian": ()}


# ---- shared helpers ----------------------------------------------------------

def _structure(pattern, n=8):
    """Almost-complex matrix from an involution pattern.

    ``pattern`` maps source index to (target index, sign), meaning
    L e_src = sign * e_tgt (and therefore L e_tgt = -sign * e_src).
    """
    rows = [[ZERO] * n for _ in range(n)]
    for src, (tgt, sign) in pattern.items():
        rows[tgt - 1][src - 1] = GQ(sign)
        rows[src - 1][tgt - 1] = GQ(-sign)
    return rows


def _vec(entries, n=8):
    out = [ZERO] * n
    for idx, value in entries.items():
        out[idx - 1] = value if isinstance(value, GQ) else GQ(value)
    return out


def _as_fraction(name, value):
    if isinstance(value, bool):
        raise BadParameters(f"parameter {name} must be a rational number")
    if isinstance(value, GQ):
        if value.im:
            raise BadParameters(f"parameter {name} must be real")
        return value.re
    try:
        return parse_rational(value)
    except Exception as exc:
        raise BadParameters(
            f"parameter {name} is not a rational number: {value!r}") from exc


def _normalize_parameters(family_id, parameters):
    if family_id not in FAMILY_IDS:
        raise BadParameters(
            f"unknown family {family_id!r}; available: {', '.join(FAMILY_IDS)}")
    allowed = FAMILY_PARAMETERS[family_id]
    given = dict(parameters or {})
    unknown = sorted(set(given) - set(allowed))
    if unknown:
        raise BadParameters(
            f"unknown parameter(s) for family {family_id}: "
            f"{', '.join(unknown)}; allowed: {', '.join(allowed)}")
    for name in _REQUIRED[family_id]:
        if name not in given:
            raise BadParameters(
                f"family {family_id} requires parameter {name}")
    out = {}
    for name in allowed:
        out[name] = _as_fraction(name, given[name]) if name in given \
            else Fraction(0)
    return out


def _require_jacobi_internal(g, what):
    ok, triple = validate_jacobi(g)
    if not ok:
        raise InternalInvariantError(
            f"{what} produced a bracket table violating the Jacobi "
            f"identity on basis triple {triple}")


# The gt and nilpotent8 families share one quaternionic triple.
_N8_I = {1: (2, 1), 3: (4, 1), 5: (6, 1), 7: (8, 1)}
_N8_J = {1: (3, 1), 2: (4, -1), 5: (7, 1), 6: (8, -1)}

# almost-abelian structures.
_AA_I = {1: (8, 1), 2: (3, 1), 4: (5, 1), 6: (7, 1)}
_AA_J = {1: (7, 1), 2: (4, 1), 3: (5, -1), 6: (8, -1)}

# Explicit (1,0)-coframe for the almost-abelian family: the displayed
# structure equations are stated in these coordinates.
_AA_COFRAME = (
    (ONE, ZERO, ZERO, ZERO, ZERO, ZERO, ZERO, IMAG),          # e1 + i e8
    (ZERO, ONE, IMAG, ZERO, ZERO, ZERO, ZERO, ZERO),          # e2 + i e3
    (ZERO, ZERO, ZERO, ONE, IMAG, ZERO, ZERO, ZERO),          # e4 + i e5
    (ZERO, ZERO, ZERO, ZERO, ZERO, -IMAG, ONE, ZERO),         # e7 - i e6
)


# ---- builders ----------------------------------------------------------------

def _build_gt(params):
    t = params["t"]
    if not Fraction(0) < t < Fraction(1):
        raise BadParameters(
            f"family gt requires 0 < t < 1, got {t}")
    tq = GQ(t)
    one = ONE
    brackets = [
        (1, 2, _vec({6: -tq})),
        (3, 4, _vec({6: one - tq})),
        (1, 3, _vec({7: -tq})),
        (2, 4, _vec({7: tq - one})),
        (1, 4, _vec({8: -tq})),
        (2, 3, _vec({8: one - tq})),
    ]
    g = LieAlgebra(8, brackets)
    _require_jacobi_internal(g, "the gt builder")
    triple = check_quaternion_triple(
        g, _structure(_N8_I), _structure(_N8_J))
    return HypercomplexInstance(g, triple)


# The three self-dual fundamental two-forms on the closed four directions.
_W_I = {(1, 2): 1, (3, 4): 1}
_W_J = {(1, 3): 1, (2, 4): -1}
_W_K = {(1, 4): 1, (2, 3): 1}


def _sd_combo(a, b, c):
    out = {}
    for table, coeff in ((_W_I, a), (_W_J, b), (_W_K, c)):
        if coeff:
            for pair, sign in table.items():
                out[pair] = out.get(pair, Fraction(0)) + coeff * sign
    return {pair: val for pair, val in out.items() if val}


def _build_nilpotent8(params):
    t1, t2, t3, t4 = (params[k] for k in ("t1", "t2", "t3", "t4"))
    h = Fraction(1, 2)
    w = {
        5: _sd_combo(h * t1, h * t2, h * t3),
        6: _sd_combo(h * t4, -h * t3, h * t2),
        7: _sd_combo(h * t3, h * t4, -h * t1),
        8: _sd_combo(-h * t2, h * t1, h * t4),
    }
    # d e^m = w^m means the structure constant c^m_{ij} is -w^m[(i, j)].
    pairs = sorted({pair for wm in w.values() for pair in wm})
    brackets = []
    for (i, j) in pairs:
        coeffs = [ZERO] * 8
        nonzero = False
        for m, wm in w.items():
            val = wm.get((i, j))
            if val:
                coeffs[m - 1] = GQ(-val)
                nonzero = True
        if nonzero:
            brackets.append((i, j, coeffs))
    g = LieAlgebra(8, brackets)
    _require_jacobi_internal(g, "the nilpotent8 builder")
    triple = check_quaternion_triple(
        g, _structure(_N8_I), _structure(_N8_J))
    return HypercomplexInstance(g, triple)


def _build_almost_abelian(params):
    a11, a21, a13, a23 = (params[k] for k in ("a11", "a21", "a13", "a23"))
    a = params["a"]
    v2, v3, v4, v5 = (params[k] for k in ("v2", "v3", "v4", "v5"))
    rows = {
        2: {2: a11, 3: a21, 4: -a13, 5: a23},
        3: {2: -a21, 3: a11, 4: -a23, 5: -a13},
        4: {2: a13, 3: a23, 4: a11, 5: -a21},
        5: {2: -a23, 3: a13, 4: a21, 5: a11},
        6: {6: a, 2: -v4, 3: v5, 4: v2, 5: -v3},
        7: {7: a, 2: -v5, 3: -v4, 4: v3, 5: v2},
        8: {8: a, 2: v2, 3: v3, 4: v4, 5: v5},
    }
    brackets = []
    for j, terms in rows.items():
        entries = {k: GQ(val) for k, val in terms.items() if val}
        if entries:
            brackets.append((1, j, _vec(entries)))
    g = LieAlgebra(8, brackets)
    _require_jacobi_internal(g, "the almost-abelian builder")
    triple = check_quaternion_triple(
        g, _structure(_AA_I), _structure(_AA_J))
    return HypercomplexInstance(g, triple, coframe=_AA_COFRAME)


_BUILDERS = {
    "gt": _build_gt,
    "nilpotent8": _build_nilpotent8,
    "almost-abelian": _build_almost_abelian,
}


# ---- structure-equation regression ------------------------------------------

def _expected_del1(instance, table):
    """Dense matrix of the displayed (1,0) -> (2,0) derivative table."""
    pairs = instance.p0_tuples(2)
    index = {pair: k for k, pair in enumerate(pairs)}
    half = instance.half
    rows = [[ZERO] * half for _ in range(len(pairs))]
    for source, terms in table.items():
        for pair, coeff in terms.items():
            rows[index[pair]][source - 1] = coeff
    return rows


def _del1_table(family_id, params):
    if family_id == "gt":
        return {4: {(1, 2): GQ(params["t"]) - HALF}}
    if family_id == "nilpotent8":
        h = Fraction(1, 2)
        return {
            3: {(1, 2): GQ(h * params["t2"], -h * params["t3"])},
            4: {(1, 2): GQ(h * params["t4"], h * params["t1"])},
        }
    h = Fraction(1, 2)
    a11, a21, a13, a23 = (params[k] for k in ("a11", "a21", "a13", "a23"))
    a = params["a"]
    v2, v3, v4, v5 = (params[k] for k in ("v2", "v3", "v4", "v5"))
    return {
        2: {
            (1, 2): GQ(-h * a11, -h * a21),
            (1, 3): GQ(-h * a13, -h * a23),
            (1, 4): GQ(h * v5, h * v4),
        },
        3: {
            (1, 2): GQ(h * a13, -h * a23),
            (1, 3): GQ(-h * a11, h * a21),
            (1, 4): GQ(-h * v3, -h * v2),
        },
        4: {(1, 4): GQ(-h * a)},
    }


def _check_structure_table(family_id, params, instance):
    expected = _expected_del1(instance, _del1_table(family_id, params))
    actual = instance.del_matrix(1)
    if [list(r) for r in actual] != [list(r) for r in expected]:
        raise InternalInvariantError(
            f"family {family_id} no longer reproduces its displayed "
            "structure-equation table")


# ---- family construction ------------------------------------------------------

@dataclass(frozen=True)
class FamilyInstance:
    """A built family member together with its hyperhermitian metric."""

    family_id: str
    parameters: dict
    instance: HypercomplexInstance
    metric: HyperhermitianMetric
    scope: str = SCOPE


def _identity_gram(n):
    return [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]


def build_family(family_id, parameters=None, gram=None) -> FamilyInstance:
    """Construct a family member and verify its structure equations.

    ``parameters`` maps parameter names to rationals (ints, Fractions, or
    strings like ``"1/2"``).  ``gram`` optionally replaces the identity
    inner product; it must be symmetric, positive, and compatible with all
    three structures.
    """
    params = _normalize_parameters(family_id, parameters)
    instance = _BUILDERS[family_id](params)
    _check_structure_table(family_id, params, instance)
    metric = build_metric(
        instance, gram if gram is not None else _identity_gram(instance.g.dim))
    return FamilyInstance(
        family_id=family_id, parameters=params,
        instance=instance, metric=metric)


# ---- block-form recognition ---------------------------------------------------

@dataclass(frozen=True)
class ShapeFailure:
    """The block-form shape predicted for integrable structures failed.

    Returned (not raised) when an abelian codimension-one ideal exists but
    the outer derivation does not have the predicted commuting block form;
    this can only happen when the structures are non-integrable, which the
    Nijenhuis flags document.
    """

    reason: str
    nijenhuis_I_zero: bool
    nijenhuis_J_zero: bool
    witnesses: tuple
    scope: str = SCOPE


@dataclass(frozen=True)
class BlockDecomposition:
    """Adapted basis and block data of an almost-abelian structure.

    The ideal decomposes as u = u_IJ + span(KX, JX, IX) and the outer
    derivation f = ad_X acts as f_tilde on u_IJ (commuting with the
    restricted structures), as the scalar ``a`` on KX, JX, IX, with
    translation part f(IX) = a IX + v, f(JX) = a JX + Kv,
    f(KX) = a KX - Jv.
    """

    x: tuple
    ix: tuple
    jx: tuple
    kx: tuple
    u_ij_basis: tuple
    ideal_basis: tuple
    f_tilde: tuple
    a: GaussianRational
    a11: GaussianRational
    v: tuple
    scope: str = SCOPE


def _is_abelian_subspace(g, basis):
    for p, u in enumerate(basis):
        for w in basis[p + 1:]:
            if any(g.bracket(list(u), list(w))):
                return False
    return True


def _validate_supplied_ideal(g, ideal):
    vectors = [list(v) for v in ideal]
    sub = Subspace.from_vectors(vectors, g.dim)
    if sub.dim != g.dim - 1:
        raise NotAlmostAbelian(
            f"the supplied ideal has dimension {sub.dim}, "
            f"want {g.dim - 1}")
    basis = [list(v) for v in sub.basis]
    if not _is_abelian_subspace(g, basis):
        raise NotAlmostAbelian("the supplied subspace is not abelian")
    for k in range(g.dim):
        unit = [ZERO] * g.dim
        unit[k] = ONE
        for u in basis:
            if not sub.contains_vector(g.bracket(unit, u)):
                raise NotAlmostAbelian("the supplied subspace is not an ideal")
    return sub


def _row_compose(xi, action):
    return mat_mul([list(xi)], [list(r) for r in action])[0]


def recognize_block_form(g, triple, ideal=None):
    """Recover the adapted block form of an almost-abelian structure.

    Returns a :class:`BlockDecomposition`, or a :class:`ShapeFailure` when
    the algebra has the required ideal but the derivation lacks the block
    shape (possible only for non-integrable structures).  Raises
    :class:`NotAlmostAbelian` when no abelian codimension-one ideal is
    found.
    """
    n = g.dim
    if n % 4:
        raise BadParameters("the block form needs dimension divisible by 4")
    if ideal is not None:
        sub = _validate_supplied_ideal(g, ideal)
    else:
        sub = find_codim1_abelian_ideal(g)
        if sub is None:
            raise NotAlmostAbelian(
                "the algebra has no abelian codimension-one ideal")
    xi = list(sub.annihilator().basis[0])

    acts = {name: [[x if isinstance(x, GQ) else GQ(x) for x in row]
                   for row in triple.structure(name)]
            for name in ("I", "J", "K")}
    xi_l = {name: _row_compose(xi, acts[name]) for name in ("I", "J", "K")}

    window = nullspace([xi_l["I"], xi_l["J"], xi_l["K"]], n)
    x = None
    for w in window:
        pairing = sum((a * b for a, b in zip(xi, w)), ZERO)
        if pairing:
            x = [c / pairing for c in w]
            break
    if x is None:
        raise InternalInvariantError(
            "no transversal direction with I-, J-, K-images inside the "
            "ideal; this contradicts the quaternionic pairing argument")

    u_ij = nullspace([xi, xi_l["I"], xi_l["J"], xi_l["K"]], n)
    if len(u_ij) != n - 4:
        raise InternalInvariantError(
            "the structure-compatible part of the ideal has dimension "
            f"{len(u_ij)}, want {n - 4}")

    ix = mat_vec(acts["I"], x)
    jx = mat_vec(acts["J"], x)
    kx = mat_vec(acts["K"], x)
    cols = [list(u) for u in u_ij] + [kx, jx, ix, x]
    basis_mat = [[cols[c][r] for c in range(n)] for r in range(n)]
    inverse = invert(basis_mat)
    if inverse is None:
        raise InternalInvariantError(
            "the adapted ideal basis failed to be a direct sum")

    def coords(vec):
        return mat_vec(inverse, vec)

    m = n - 4

    def shape_failure(reason):
        ok_i, wit_i = nijenhuis_tensor(g, acts["I"])
        ok_j, wit_j = nijenhuis_tensor(g, acts["J"])
        if ok_i and ok_j:
            raise InternalInvariantError(
                "block-form shape failed although both structures are "
                f"integrable: {reason}")
        witnesses = tuple(tuple(w) for w in (wit_i + wit_j)[:3])
        return ShapeFailure(
            reason=reason,
            nijenhuis_I_zero=ok_i,
            nijenhuis_J_zero=ok_j,
            witnesses=witnesses)

    # f = ad_X in the adapted coordinates, one column per ideal basis vector.
    fcols = [coords(g.bracket(x, col)) for col in cols[:n - 1]]
    for col in fcols:
        if col[n - 1]:
            raise InternalInvariantError(
                "ad_X left the ideal although the ideal contains the "
                "derived subalgebra")

    for c in range(m):
        if any(fcols[c][m:]):
            return shape_failure(
                "the derivation does not preserve the structure-compatible "
                "part of the ideal")
    f_tilde = [[fcols[c][r] for c in range(m)] for r in range(m)]

    # Restrictions of the structures to u_IJ, in the chosen basis.
    restricted = {}
    for name in ("I", "J", "K"):
        rcols = []
        for u in u_ij:
            cu = coords(mat_vec(acts[name], list(u)))
            if any(cu[m:]):
                raise InternalInvariantError(
                    "a structure left the subspace it must preserve")
            rcols.append(cu[:m])
        restricted[name] = [[rcols[c][r] for c in range(m)]
                            for r in range(m)]

    for name in ("I", "J"):
        lhs = mat_mul(f_tilde, restricted[name])
        rhs = mat_mul(restricted[name], f_tilde)
        if lhs != rhs:
            return shape_failure(
                f"the restricted derivation does not commute with {name}")

    tail = [fcols[m + k][m:n - 1] for k in range(3)]
    a = tail[2][2]
    for r in range(3):
        for c in range(3):
            want = a if r == c else ZERO
            if tail[c][r] != want:
                return shape_failure(
                    "the derivation is not scalar on the span of KX, JX, IX")

    v = [fcols[m + 2][r] for r in range(m)]
    want_jx = mat_vec(restricted["K"], v)
    have_jx = [fcols[m + 1][r] for r in range(m)]
    if have_jx != want_jx:
        return shape_failure(
            "the translation part of f(JX) is not K applied to that of "
            "f(IX)")
    want_kx = [-c for c in mat_vec(restricted["J"], v)]
    have_kx = [fcols[m][r] for r in range(m)]
    if have_kx != want_kx:
        return shape_failure(
            "the translation part of f(KX) is not -J applied to that of "
            "f(IX)")

    trace = sum((f_tilde[k][k] for k in range(m)), ZERO)
    return BlockDecomposition(
        x=tuple(x),
        ix=tuple(ix),
        jx=tuple(jx),
        kx=tuple(kx),
        u_ij_basis=tuple(tuple(u) for u in u_ij),
        ideal_basis=tuple(tuple(col) for col in cols[:n - 1]),
        f_tilde=tuple(tuple(row) for row in f_tilde),
        a=a,
        a11=trace / GQ(m),
        v=tuple(v),
    )


# ---- trivializing-form criterion ----------------------------------------------

@dataclass(frozen=True)
class SlReport:
    """Dual-method certificate for the closed trivializing form.

    Method A checks that the top coframe form is closed on the conjugate
    side; method B, available when a block decomposition is supplied,
    checks the trace condition a + a11 = 0.  ``trivializing_form`` holds
    the coordinates of a closed sigma-real top form when one exists.
    """

    sl: bool
    top_form_closed: bool
    trace_value: GaussianRational | None
    trace_condition: bool | None
    methods_agree: bool | None
    trivializing_form: tuple | None
    field_tag: str = FIELD_TAG
    scope: str = SCOPE


def _sigma_real_top_form(instance):
    """Coordinates of a sigma-fixed top (p,0) coframe multiple.

    On the one-dimensional top degree the conjugation-type involution acts
    by a norm-one scalar; the fixed multiple is produced by the classical
    norm-one-to-quotient trick (c = 1 + scalar, or i when the scalar is
    -1).
    """
    half = instance.half
    lam = instance.apply_sigma([ONE], half)[0]
    if lam * lam.conjugate() != ONE:
        raise InternalInvariantError(
            "the conjugation involution acts on the top form by a scalar "
            "of norm different from one")
    c = IMAG if lam == MINUS_ONE else ONE + lam
    if instance.apply_sigma([c], half)[0] != c:
        raise InternalInvariantError(
            "failed to produce a sigma-fixed top form scale")
    return (c,)


def sl_check(instance: HypercomplexInstance, decomposition=None) -> SlReport:
    """Certify the closed-trivializing-form property.

    When a block decomposition is given, the independent trace criterion
    must agree with direct closedness, otherwise a
    :class:`MethodDisagreement` is raised.
    """
    instance.ensure_integrable()
    half = instance.half
    dbar = instance.delbar_matrix(half)
    closed = not (dbar and any(any(row) for row in dbar))

    trace_value = None
    trace_condition = None
    agree = None
    if decomposition is not None:
        trace_value = decomposition.a + decomposition.a11
        trace_condition = not trace_value
        agree = trace_condition == closed
        if not agree:
            raise MethodDisagreement(
                "trivializing-form methods disagree: closedness says "
                f"{closed}, the trace condition says {trace_condition}")

    return SlReport(
        sl=closed,
        top_form_closed=closed,
        trace_value=trace_value,
        trace_condition=trace_condition,
        methods_agree=agree,
        trivializing_form=_sigma_real_top_form(instance) if closed else None,
    )


# ---- single-instance classification -------------------------------------------

_KINDS = ("dolbeault", "delJ", "bott-chern", "aeppli")


def _is_abelian_structure(g, action):
    cols = [[x if isinstance(x, GQ) else GQ(x) for x in col]
            for col in zip(*action)]
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = g.bracket(cols[i], cols[j])
            rhs = g.bracket_basis(i + 1, j + 1)
            if lhs != rhs:
                return False
    return True


def abelian_structure_check(instance: HypercomplexInstance) -> bool:
    """True when all three structures satisfy [Lx, Ly] = [x, y]."""
    return all(
        _is_abelian_structure(instance.g, instance.triple.structure(name))
        for name in ("I", "J", "K"))


@dataclass(frozen=True)
class AnalysisReport:
    """Full structure-level classification of one instance."""

    dimension: int
    family: tuple | None
    integrable: bool
    abelian_structure: bool
    nilpotent: bool
    unimodular: bool
    hkt: object
    hyperkahler: bool
    sl: SlReport
    block_form: BlockDecomposition | None
    cohomology: tuple
    jbar: object
    jbar_bott_chern: object
    closed_nonexact_imaginary_dim: int
    warnings: tuple
    field_tag: str = FIELD_TAG
    scope: str = SCOPE


def classify(target, gram=None) -> AnalysisReport:
    """Classify a family member or a raw hypercomplex instance.

    ``target`` is a :class:`FamilyInstance` (its stored metric is used) or
    a :class:`HypercomplexInstance` (an identity-gram metric is built
    unless ``gram`` is given).
    """
    family = None
    if isinstance(target, FamilyInstance):
        instance = target.instance
        metric = target.metric if gram is None \
            else build_metric(instance, gram)
        family = (target.family_id,
                  tuple(sorted(target.parameters.items())))
    else:
        instance = target
        metric = build_metric(
            instance,
            gram if gram is not None else _identity_gram(instance.g.dim))
    instance.ensure_integrable()
    g = instance.g

    warnings = []
    block = None
    try:
        found = recognize_block_form(g, instance.triple)
    except NotAlmostAbelian:
        found = None
    if isinstance(found, BlockDecomposition):
        block = found
    elif isinstance(found, ShapeFailure):
        raise InternalInvariantError(
            "an integrable instance produced a block-form shape failure: "
            + found.reason)

    hkt = hkt_check(instance, metric)
    hyperkahler = hyperkahler_check(instance, metric)
    if hyperkahler and not hkt.hkt:
        raise InternalInvariantError(
            "a hyperkahler metric failed the weaker torsion criterion")
    sl = sl_check(instance, decomposition=block)

    groups = tuple(cohomology_group(instance, kind, 2) for kind in _KINDS)
    dim_of = {group.kind: group.dim for group in groups}
    jbar = jbar_subgroups(instance, source="dolbeault", p=2)
    jbar_bc = jbar_subgroups(instance, source="bott-chern", p=2)

    if sl.sl:
        gap = dim_of["bott-chern"] - dim_of["dolbeault"]
        if gap not in (0, 1):
            raise InternalInvariantError(
                "on a trivialized instance the Bott-Chern defect must be "
                f"0 or 1, got {gap}")
        if hkt.hkt and gap != 0:
            raise InternalInvariantError(
                "an HKT instance must have vanishing Bott-Chern defect, "
                f"got {gap}")
        if gap == 0 and not hkt.hkt:
            warnings.append(
                "cohomology indicates a torsion-free-compatible metric "
                "exists, but the supplied metric is not HKT")

    return AnalysisReport(
        dimension=g.dim,
        family=family,
        integrable=True,
        abelian_structure=abelian_structure_check(instance),
        nilpotent=lower_central_series(g)[1],
        unimodular=unimodularity(g),
        hkt=hkt,
        hyperkahler=hyperkahler,
        sl=sl,
        block_form=block,
        cohomology=groups,
        jbar=jbar,
        jbar_bott_chern=jbar_bc,
        closed_nonexact_imaginary_dim=jbar.real_dim_minus,
        warnings=tuple(warnings),
    )


# ---- parameter sweeps ----------------------------------------------------------

_SWEEP_CAP = 2000

_DEFAULT_GRIDS = {
    "gt": {"t": (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2),
                 Fraction(2, 3))},
    "nilpotent8": {name: (Fraction(-1), Fraction(0), Fraction(1))
                   for name in ("t1", "t2", "t3", "t4")},
    "almost-abelian": {
        "a11": (Fraction(-1), Fraction(0), Fraction(1)),
        "a21": (Fraction(0), Fraction(1)),
        "a13": (Fraction(0), Fraction(1)),
        "a23": (Fraction(0),),
        "a": (Fraction(-1), Fraction(0), Fraction(1)),
        "v2": (Fraction(0), Fraction(1)),
        "v3": (Fraction(0),),
        "v4": (Fraction(0),),
        "v5": (Fraction(0), Fraction(1)),
    },
}


@dataclass(frozen=True)
class SweepPoint:
    parameters: tuple
    hkt: bool
    hyperkahler: bool
    sl: bool
    abelian_structure: bool
    abelian_algebra: bool
    unimodular: bool
    facts: tuple


@dataclass(frozen=True)
class SweepSummary:
    name: str
    holds: bool
    counterexamples: tuple


@dataclass(frozen=True)
class SweepResult:
    family_id: str
    grid: tuple
    points: tuple
    summaries: tuple
    all_hold: bool
    field_tag: str = FIELD_TAG
    scope: str = SCOPE


def _span_of_columns(mat, n):
    cols = [[row[c] for row in mat] for c in range(len(mat[0]))] if mat \
        else []
    return Subspace.from_vectors(cols, n)


def _two_form_coords(instance, terms):
    pairs = instance.p0_tuples(2)
    index = {pair: k for k, pair in enumerate(pairs)}
    out = [ZERO] * len(pairs)
    for pair, coeff in terms.items():
        out[index[pair]] = coeff
    return out


def _named_two_forms(instance):
    """The four fixed and two anti-fixed quaternionic (2,0) basis forms."""
    return {
        "psi1": _two_form_coords(instance, {(1, 2): ONE}),
        "psi2": _two_form_coords(instance, {(3, 4): ONE}),
        "psi3": _two_form_coords(instance, {(1, 3): ONE, (2, 4): ONE}),
        "psi4": _two_form_coords(instance, {(1, 4): ONE, (2, 3): MINUS_ONE}),
        "phi1": _two_form_coords(instance, {(1, 3): ONE, (2, 4): MINUS_ONE}),
        "phi2": _two_form_coords(instance, {(1, 4): ONE, (2, 3): ONE}),
    }


def _quaternionic_form_facts(instance):
    forms = _named_two_forms(instance)
    d2 = instance.del_matrix(2)
    image = _span_of_columns(instance.del_matrix(1), len(forms["psi1"]))

    def closed(coords):
        return not any(mat_vec(d2, coords)) if d2 else True

    sigma_ok = True
    for name, coords in forms.items():
        want = 1 if name.startswith("psi") else -1
        got = instance.apply_sigma(coords, 2)
        expect = [c if want == 1 else -c for c in coords]
        if got != expect:
            sigma_ok = False
    return {
        "psi1_closed": closed(forms["psi1"]),
        "psi1_exact": image.contains_vector(forms["psi1"]),
        "psi2_closed": closed(forms["psi2"]),
        "psi3_closed": closed(forms["psi3"]),
        "psi4_closed": closed(forms["psi4"]),
        "phi1_closed": closed(forms["phi1"]),
        "phi2_closed": closed(forms["phi2"]),
        "phi1_exact": image.contains_vector(forms["phi1"]),
        "phi2_exact": image.contains_vector(forms["phi2"]),
        "sigma_types_ok": sigma_ok,
    }


def _is_abelian_algebra(g):
    return not g.nonzero_pairs()


def _sweep_point(family_id, items):
    params = dict(items)
    fam = build_family(family_id, params)
    instance, metric = fam.instance, fam.metric
    hkt = hkt_check(instance, metric)
    facts = {}
    if family_id == "gt":
        facts["dolbeault_dim_2"] = cohomology_group(
            instance, "dolbeault", 2).dim
        facts["bott_chern_dim_2"] = cohomology_group(
            instance, "bott-chern", 2).dim
        image = _span_of_columns(instance.del_matrix(1), 6)
        facts["psi1_exact"] = image.contains_vector(
            _named_two_forms(instance)["psi1"])
    elif family_id == "nilpotent8":
        facts.update(_quaternionic_form_facts(instance))
    return SweepPoint(
        parameters=tuple(sorted(fam.parameters.items())),
        hkt=hkt.hkt,
        hyperkahler=hyperkahler_check(instance, metric),
        sl=sl_check(instance).sl,
        abelian_structure=abelian_structure_check(instance),
        abelian_algebra=_is_abelian_algebra(instance.g),
        unimodular=unimodularity(instance.g),
        facts=tuple(sorted(facts.items())),
    )


def _gt_summaries():
    half = Fraction(1, 2)

    def at_half(params):
        return params["t"] == half

    return (
        ("hkt-iff-t-one-half",
         lambda params, pt: pt.hkt == at_half(params)),
        ("abelian-structure-iff-t-one-half",
         lambda params, pt: pt.abelian_structure == at_half(params)),
        ("trivializing-form-everywhere", lambda params, pt: pt.sl),
        ("never-hyperkahler", lambda params, pt: not pt.hyperkahler),
        ("dolbeault-dim-jumps-at-one-half",
         lambda params, pt: dict(pt.facts)["dolbeault_dim_2"]
         == (6 if at_half(params) else 4)),
        ("bott-chern-dim-jumps-at-one-half",
         lambda params, pt: dict(pt.facts)["bott_chern_dim_2"]
         == (6 if at_half(params) else 5)),
        ("defect-vanishes-exactly-on-hkt",
         lambda params, pt: (dict(pt.facts)["bott_chern_dim_2"]
                             == dict(pt.facts)["dolbeault_dim_2"])
         == pt.hkt),
        ("generator-exact-off-one-half",
         lambda params, pt: dict(pt.facts)["psi1_exact"]
         == (not at_half(params))),
    )


def _n8_summaries():
    def origin(params):
        return not any(params[k] for k in ("t1", "t2", "t3", "t4"))

    def form_facts_hold(params, pt):
        facts = dict(pt.facts)
        always = (facts["psi1_closed"] and facts["psi3_closed"]
                  and facts["psi4_closed"] and facts["phi1_closed"]
                  and facts["phi2_closed"] and not facts["phi1_exact"]
                  and not facts["phi2_exact"] and facts["sigma_types_ok"])
        at_zero = origin(params)
        return (always and facts["psi1_exact"] == (not at_zero)
                and facts["psi2_closed"] == at_zero)

    return (
        ("hkt-iff-origin",
         lambda params, pt: pt.hkt == origin(params)),
        ("abelian-structure-iff-origin",
         lambda params, pt: pt.abelian_structure == origin(params)),
        ("abelian-algebra-iff-origin",
         lambda params, pt: pt.abelian_algebra == origin(params)),
        ("hkt-iff-abelian-structure",
         lambda params, pt: pt.hkt == pt.abelian_structure),
        ("trivializing-form-everywhere", lambda params, pt: pt.sl),
        ("quaternionic-form-facts", form_facts_hold),
    )


def _aa_summaries():
    def skew_and_translation_free(params):
        return (params["a11"] == 0
                and not any(params[k] for k in ("v2", "v3", "v4", "v5")))

    return (
        ("hkt-iff-skew-and-translation-free",
         lambda params, pt: pt.hkt == skew_and_translation_free(params)),
        ("hyperkahler-iff-hkt-and-scale-free",
         lambda params, pt: pt.hyperkahler
         == (pt.hkt and params["a"] == 0)),
        ("trivializing-form-iff-trace-condition",
         lambda params, pt: pt.sl == (params["a"] + params["a11"] == 0)),
        ("unimodular-iff-trace",
         lambda params, pt: pt.unimodular
         == (3 * params["a"] + 4 * params["a11"] == 0)),
    )


_SUMMARIES = {
    "gt": _gt_summaries,
    "nilpotent8": _n8_summaries,
    "almost-abelian": _aa_summaries,
}


def sweep(family_id, grid=None, workers=None) -> SweepResult:
    """Evaluate a family over a parameter grid and check its known laws.

    ``grid`` maps parameter names to value lists (defaults cover each
    family's characteristic loci); the total point count is capped at
    2000.  ``workers`` optionally parallelizes point evaluation; results
    are merged in deterministic grid order either way.
    """
    if family_id not in FAMILY_IDS:
        raise BadParameters(
            f"unknown family {family_id!r}; available: {', '.join(FAMILY_IDS)}")
    base = {name: tuple(values)
            for name, values in _DEFAULT_GRIDS[family_id].items()}
    if grid:
        for name, values in grid.items():
            if name not in FAMILY_PARAMETERS[family_id]:
                raise BadParameters(
                    f"unknown parameter {name!r} for family {family_id}")
            values = tuple(_as_fraction(name, v) for v in values)
            if not values:
                raise BadParameters(f"empty grid for parameter {name}")
            base[name] = values
    names = [name for name in FAMILY_PARAMETERS[family_id] if name in base]
    axes = [base[name] for name in names]
    total = 1
    for axis in axes:
        total *= len(axis)
    if total > _SWEEP_CAP:
        raise BadParameters(
            f"sweep grid has {total} points; the cap is {_SWEEP_CAP}")

    jobs = [tuple(zip(names, combo)) for combo in product(*axes)]
    if workers and workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        from functools import partial
        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(
                partial(_sweep_point, family_id), jobs, chunksize=8))
    else:
        points = [_sweep_point(family_id, job) for job in jobs]

    summaries = []
    for name, law in _SUMMARIES[family_id]():
        bad = []
        for pt in points:
            if not law(dict(pt.parameters), pt):
                if len(bad) < 3:
                    bad.append(pt.parameters)
        summaries.append(SweepSummary(
            name=name, holds=not bad, counterexamples=tuple(bad)))

    return SweepResult(
        family_id=family_id,
        grid=tuple((name, base[name]) for name in names),
        points=tuple(points),
        summaries=tuple(summaries),
        all_hold=all(s.holds for s in summaries),
    )
