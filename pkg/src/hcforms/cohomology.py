"""Cohomology of the (p,0)-complex of an integrable hypercomplex instance.

Four groups are computed on invariant forms, all as exact quotients of
kernels by images of the operator matrices supplied by the hypercomplex
layer (D = the holomorphic exterior derivative on (p,0)-forms, DJ = its
twist by the second complex structure):

* ``dolbeault``   ker D  / im D
* ``delJ``        ker DJ / im DJ
* ``bott-chern``  (ker D ∩ ker DJ) / im (D ∘ DJ)
* ``aeppli``      ker (D ∘ DJ) / (im D + im DJ)

On top of the plain groups the module computes the eigenspace refinement
induced by the anti-linear involution sigma (wedge-square of the quaternionic
pairing on the coframe): closed forms fixed by sigma ("real" forms) and
anti-fixed ones ("imaginary" forms) map to real subspaces of the realified
cohomology.  Dimensions of those subspaces are reported as *real* dimensions;
no attempt is made to compress them into a single scalar per sign, because
the two conventions in circulation disagree (multiplying a fixed form by i
yields an anti-fixed one, so the realified plus and minus images always have
equal dimension — any asymmetric count is basis-dependent).  The generator
lists carry the convention-independent facts instead: each generator is
labeled fixed/anti-fixed ("real"/"imaginary"), closed, and exact, and every
exactness claim stores a primitive that is re-checked by applying the
operator.

Everything here is invariant-level: the complex is the finite-dimensional
one of left-invariant forms, and no manifold-level claim is made.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadParameters,
    InternalInvariantError,
    WrongDegree,
)
from .hypercomplex import HypercomplexInstance
from .linalg import (
    Subspace,
    derealify_vector,
    fixed_subspace,
    mat_mul,
    mat_vec,
    nullspace,
    realify,
    realify_vector,
    solve,
)

KINDS = ("dolbeault", "delJ", "bott-chern", "aeppli")

SCOPE = "invariant-level"


# ---- matrix plumbing -------------------------------------------------------

def _kernel(mat, ncols) -> Subspace:
    """Kernel of an operator matrix as a complex subspace of its source."""
    if not mat:
        # A map into a zero-dimensional target: everything is closed.
        return Subspace.full(ncols)
    return Subspace.from_vectors(nullspace(mat, ncols), ncols)


def _image(mat, ambient) -> Subspace:
    """Image of an operator matrix as a complex subspace of its target."""
    if not mat:
        return Subspace.zero(ambient)
    cols = [[row[j] for row in mat] for j in range(len(mat[0]))]
    return Subspace.from_vectors(cols, ambient)


def _compose(outer, inner):
    """Matrix of outer ∘ inner, tolerating empty edge matrices."""
    if not outer or not inner:
        return []
    return mat_mul(outer, inner)


def _apply(mat, coords):
    """Apply an operator matrix, mapping into a possibly empty target."""
    if not mat:
        return []
    return mat_vec(mat, coords)


def _ddj_into(instance: HypercomplexInstance, p: int):
    """Matrix of D∘DJ landing in (p,0)-forms (source degree p-2)."""
    if p < 2:
        return []
    return _compose(instance.del_matrix(p - 1), instance.delJ_matrix(p - 2))


def _ddj_from(instance: HypercomplexInstance, p: int):
    """Matrix of D∘DJ with source in (p,0)-forms (target degree p+2)."""
    if p + 2 > instance.half:
        return []
    return _compose(instance.del_matrix(p + 1), instance.delJ_matrix(p))


# ---- plain groups ----------------------------------------------------------

@dataclass(frozen=True)
class CohomologyGroup:
    """One cohomology group with verified coset representatives."""

    kind: str
    p: int
    dim: int
    representative_basis: tuple
    field_tag: str = "Q(i)"
    scope: str = SCOPE


def _numerator_denominator(instance: HypercomplexInstance, kind: str, p: int):
    n = instance.p0_dim(p)
    ker_del = _kernel(instance.del_matrix(p), n)
    if kind == "dolbeault":
        num = ker_del
        den = _image(instance.del_matrix(p - 1), n) if p >= 1 else \
            Subspace.zero(n)
    elif kind == "delJ":
        num = _kernel(instance.delJ_matrix(p), n)
        den = _image(instance.delJ_matrix(p - 1), n) if p >= 1 else \
            Subspace.zero(n)
    elif kind == "bott-chern":
        num = ker_del.intersect(_kernel(instance.delJ_matrix(p), n))
        den = _image(_ddj_into(instance, p), n)
    elif kind == "aeppli":
        num = _kernel(_ddj_from(instance, p), n)
        if p >= 1:
            den = _image(instance.del_matrix(p - 1), n).add(
                _image(instance.delJ_matrix(p - 1), n))
        else:
            den = Subspace.zero(n)
    else:
        raise BadParameters(
            f"unknown cohomology kind {kind!r}; expected one of {KINDS}")
    return num, den


def _closedness_matrices(instance: HypercomplexInstance, kind: str, p: int):
    """The operator matrices a representative of this kind must annihilate."""
    if kind == "dolbeault":
        return (instance.del_matrix(p),)
    if kind == "delJ":
        return (instance.delJ_matrix(p),)
    if kind == "bott-chern":
        return (instance.del_matrix(p), instance.delJ_matrix(p))
    return (_ddj_from(instance, p),)


def cohomology_group(instance: HypercomplexInstance, kind: str,
                     p: int) -> CohomologyGroup:
    """Compute one of the four groups on invariant (p,0)-forms.

    Representatives are the reduced coset representatives of the numerator's
    echelon basis modulo the denominator, hence deterministic.  Before
    returning, every representative is checked closed for its kind and the
    set is checked independent modulo the denominator.
    """
    instance.ensure_integrable()
    if kind not in KINDS:
        raise BadParameters(
            f"unknown cohomology kind {kind!r}; expected one of {KINDS}")
    num, den = _numerator_denominator(instance, kind, p)
    if not num.contains(den):
        raise InternalInvariantError(
            f"{kind} denominator escapes the numerator at degree {p}")
    reps = []
    for v in num.basis:
        red = den.reduce(v)
        if any(red):
            reps.append(tuple(red))
    closedness = _closedness_matrices(instance, kind, p)
    for rep in reps:
        for mat in closedness:
            if any(_apply(mat, list(rep))):
                raise InternalInvariantError(
                    f"{kind} representative is not closed at degree {p}")
    span = Subspace.from_vectors([list(r) for r in reps], instance.p0_dim(p))
    if span.dim != len(reps) or span.intersect(den).dim != 0:
        raise InternalInvariantError(
            f"{kind} representatives are not independent modulo exact forms")
    if len(reps) != num.dim - den.dim:
        raise InternalInvariantError(
            f"{kind} dimension bookkeeping failed at degree {p}")
    return CohomologyGroup(kind=kind, p=p, dim=len(reps),
                           representative_basis=tuple(reps))


# ---- sigma-eigen refinement ------------------------------------------------

@dataclass(frozen=True)
class GeneratorFact:
    """One sigma-eigen closed form with its verified class-level facts.

    ``label`` follows the classical naming: "real" for sigma-fixed forms,
    "imaginary" for sigma-anti-fixed ones.  ``primitive`` is set exactly
    when ``exact`` is true and re-applying the operator to it returns the
    generator.
    """

    coords: tuple
    label: str
    closed: bool
    exact: bool
    primitive: tuple | None = None


@dataclass(frozen=True)
class JbarSubgroupReport:
    """Realified eigen refinement of a Dolbeault or Bott-Chern group."""

    source: str
    p: int
    real_dim_plus: int
    real_dim_minus: int
    plus_basis: tuple
    minus_basis: tuple
    pure_over_R: bool
    full_over_R: bool
    generator_facts: tuple
    class_real_dim: int
    scope: str = SCOPE


def _eigen_spaces(instance: HypercomplexInstance, num_c: Subspace, p: int):
    """Realified sigma-fixed / anti-fixed subspaces of a complex numerator."""
    num_r = realify(num_c)
    sig = instance.sigma_real(p)
    plus = fixed_subspace(sig, 1).intersect(num_r)
    minus = fixed_subspace(sig, -1).intersect(num_r)
    if plus.dim != minus.dim:
        # multiplication by i swaps the two eigenspaces inside any complex
        # subspace, so unequal dimensions can only mean broken machinery
        raise InternalInvariantError("sigma eigenspace dimensions differ")
    if plus.intersect(minus).dim != 0:
        raise InternalInvariantError("sigma eigenspaces overlap")
    return num_r, plus, minus


def _class_space(den_r: Subspace, space: Subspace) -> Subspace:
    return Subspace.from_vectors([den_r.reduce(v) for v in space.basis],
                                 den_r.ambient, "real-realified")


def _eigen_generators(den_r: Subspace, eigen: Subspace, label: str,
                      closedness, primitive_mat):
    """Split an eigenspace basis into class generators and exact forms.

    Returns (class_basis, facts): ``class_basis`` are eigen forms whose
    classes are independent; ``facts`` additionally carry the exact eigen
    forms with verified primitives.
    """
    generators = []
    seen = Subspace.zero(den_r.ambient, "real-realified")
    exact_vectors = []
    for v in eigen.basis:
        red = den_r.reduce(v)
        if not any(red):
            exact_vectors.append(v)
            continue
        if seen.contains_vector(red):
            # dependent class: fold into the exact/dependent pool only if
            # genuinely exact, otherwise skip (its class is already covered)
            continue
        generators.append(v)
        seen = seen.add(Subspace.from_vectors([red], den_r.ambient,
                                              "real-realified"))
    facts = []
    class_basis = []
    for v in generators:
        coords = derealify_vector(v)
        for mat in closedness:
            if any(_apply(mat, coords)):
                raise InternalInvariantError("eigen generator is not closed")
        class_basis.append(tuple(coords))
        facts.append(GeneratorFact(coords=tuple(coords), label=label,
                                   closed=True, exact=False))
    for v in exact_vectors:
        coords = derealify_vector(v)
        for mat in closedness:
            if any(_apply(mat, coords)):
                raise InternalInvariantError("exact eigen form is not closed")
        if not primitive_mat:
            raise InternalInvariantError(
                "exact eigen form with no operator to invert")
        primitive = solve(primitive_mat, coords)
        if primitive is None:
            raise InternalInvariantError(
                "declared-exact eigen form has no primitive")
        if _apply(primitive_mat, primitive) != coords:
            raise InternalInvariantError("primitive fails verification")
        facts.append(GeneratorFact(coords=tuple(coords), label=label,
                                   closed=True, exact=True,
                                   primitive=tuple(primitive)))
    return tuple(class_basis), facts


def _jbar_data(instance: HypercomplexInstance, source: str, p: int):
    """Numerator, realified denominator and eigenspaces for one source."""
    n = instance.p0_dim(p)
    if p % 2:
        raise WrongDegree(
            "the involution squares to -1 in odd degree; "
            "no eigen decomposition exists")
    ker_del = _kernel(instance.del_matrix(p), n)
    ker_both = ker_del.intersect(_kernel(instance.delJ_matrix(p), n))
    if source == "dolbeault":
        num_c = ker_del
        den_c = _image(instance.del_matrix(p - 1), n) if p >= 1 else \
            Subspace.zero(n)
        closedness = (instance.del_matrix(p),)
        primitive_mat = instance.del_matrix(p - 1) if p >= 1 else []
    elif source == "bott-chern":
        num_c = ker_both
        den_c = _image(_ddj_into(instance, p), n)
        closedness = (instance.del_matrix(p), instance.delJ_matrix(p))
        primitive_mat = _ddj_into(instance, p)
    else:
        raise BadParameters(
            f"unknown subgroup source {source!r}; "
            "expected 'dolbeault' or 'bott-chern'")
    if not num_c.contains(den_c):
        raise InternalInvariantError("denominator escapes numerator")
    num_r, plus, minus = _eigen_spaces(instance, num_c, p)
    # a sigma-eigen closed form is automatically closed for the twisted
    # operator as well, so the eigenspaces of the two sources coincide
    both_r = realify(ker_both)
    if not (both_r.contains(plus) and both_r.contains(minus)):
        raise InternalInvariantError(
            "sigma-eigen closed forms escape the twisted kernel")
    den_r = realify(den_c) if den_c.dim else \
        Subspace.zero(2 * n, "real-realified")
    return num_r, den_r, plus, minus, closedness, primitive_mat


def jbar_subgroups(instance: HypercomplexInstance, source: str = "dolbeault",
                   p: int = 2) -> JbarSubgroupReport:
    """Eigen refinement of the degree-p Dolbeault or Bott-Chern group.

    The report carries the real dimensions of the images of the fixed and
    anti-fixed closed forms in the realified class space, purity (trivial
    intersection of the two images), fullness (the two images span the whole
    class space), eigen representatives for each image, and the annotated
    generator list with verified exactness facts.
    """
    instance.ensure_integrable()
    num_r, den_r, plus, minus, closedness, primitive_mat = _jbar_data(
        instance, source, p)
    plus_classes = _class_space(den_r, plus)
    minus_classes = _class_space(den_r, minus)
    if plus_classes.dim != minus_classes.dim:
        raise InternalInvariantError("eigen class dimensions differ")
    total_classes = _class_space(den_r, num_r)
    pure = plus_classes.intersect(minus_classes).dim == 0
    full = plus_classes.add(minus_classes).dim == total_classes.dim
    plus_basis, plus_facts = _eigen_generators(
        den_r, plus, "real", closedness, primitive_mat)
    minus_basis, minus_facts = _eigen_generators(
        den_r, minus, "imaginary", closedness, primitive_mat)
    if len(plus_basis) != plus_classes.dim or \
            len(minus_basis) != minus_classes.dim:
        raise InternalInvariantError("generator count mismatch")
    return JbarSubgroupReport(
        source=source,
        p=p,
        real_dim_plus=plus_classes.dim,
        real_dim_minus=minus_classes.dim,
        plus_basis=plus_basis,
        minus_basis=minus_basis,
        pure_over_R=pure,
        full_over_R=full,
        generator_facts=tuple(plus_facts + minus_facts),
        class_real_dim=total_classes.dim,
    )


# ---- the ddJ lemma ---------------------------------------------------------

@dataclass(frozen=True)
class DdjLemmaResult:
    """Outcome of the degree-p lemma test with a witness on failure."""

    p: int
    holds: bool
    witness: tuple | None
    scope: str = SCOPE


def ddj_lemma_check(instance: HypercomplexInstance, p: int) -> DdjLemmaResult:
    """Test whether every D-closed, DJ-exact (p,0)-form is D∘DJ-exact.

    Returns the outcome together with a witness form (a D-closed DJ-exact
    form that is not D∘DJ-exact) when the inclusion fails.
    """
    instance.ensure_integrable()
    n = instance.p0_dim(p)
    ker_del = _kernel(instance.del_matrix(p), n)
    im_delJ = _image(instance.delJ_matrix(p - 1), n) if p >= 1 else \
        Subspace.zero(n)
    both = ker_del.intersect(im_delJ)
    target = _image(_ddj_into(instance, p), n)
    if not both.contains(target):
        raise InternalInvariantError(
            "the D∘DJ image escapes the D-closed DJ-exact forms")
    witness = None
    for v in both.basis:
        if not target.contains_vector(v):
            witness = tuple(v)
            break
    return DdjLemmaResult(p=p, holds=witness is None, witness=witness)


# ---- both-closed representatives -------------------------------------------

def both_closed_representative(instance: HypercomplexInstance, coords,
                               p: int = 2):
    """Move a D-closed form inside its class to one that is also DJ-closed.

    Solves DJ(D(beta)) = DJ(alpha) and returns alpha - D(beta); the result is
    cohomologous to alpha, D-closed, and DJ-closed.  Returns None when no
    such correction exists.
    """
    instance.ensure_integrable()
    n = instance.p0_dim(p)
    alpha = list(coords)
    if len(alpha) != n:
        raise BadParameters(
            f"expected {n} coordinates for a degree-{p} form")
    del_p = instance.del_matrix(p)
    if any(_apply(del_p, alpha)):
        raise BadParameters("the input form must be D-closed")
    delJ_p = instance.delJ_matrix(p)
    rhs = _apply(delJ_p, alpha)
    if not any(rhs):
        return list(alpha)
    if p < 1:
        return None
    mat = _compose(delJ_p, instance.del_matrix(p - 1))
    if not mat:
        return None
    beta = solve(mat, rhs)
    if beta is None:
        return None
    corrected = [a - b for a, b in zip(alpha, _apply(
        instance.del_matrix(p - 1), beta))]
    if any(_apply(del_p, corrected)) or any(_apply(delJ_p, corrected)):
        raise InternalInvariantError(
            "corrected representative fails the closedness check")
    return corrected


# ---- natural maps -----------------------------------------------------------

@dataclass(frozen=True)
class NaturalMapSide:
    """One sign of the Bott-Chern to Dolbeault comparison map."""

    sign: str
    domain_real_dim: int
    image_real_dim: int
    target_real_dim: int
    surjective: bool
    injective: bool


@dataclass(frozen=True)
class NaturalMapReport:
    """Realified comparison of eigen subgroups across the two groups."""

    plus: NaturalMapSide
    minus: NaturalMapSide
    p: int = 2
    scope: str = SCOPE


def natural_map_check(instance: HypercomplexInstance,
                      p: int = 2) -> NaturalMapReport:
    """Compare eigen subgroups of Bott-Chern and Dolbeault cohomology.

    The map sends the class of a both-closed eigen form to its class modulo
    D-exact forms.  For each sign the report carries the real dimensions of
    the domain, of the image, and of the target subgroup, together with the
    resulting surjectivity and injectivity flags.
    """
    instance.ensure_integrable()
    _, bc_den_r, bc_plus, bc_minus, _, _ = _jbar_data(
        instance, "bott-chern", p)
    _, d_den_r, d_plus, d_minus, _, _ = _jbar_data(
        instance, "dolbeault", p)
    sides = {}
    for sign, bc_space, d_space in (("plus", bc_plus, d_plus),
                                    ("minus", bc_minus, d_minus)):
        domain = _class_space(bc_den_r, bc_space)
        image = _class_space(d_den_r, bc_space)
        target = _class_space(d_den_r, d_space)
        if not target.contains(image):
            raise InternalInvariantError(
                "natural map image escapes the target subgroup")
        sides[sign] = NaturalMapSide(
            sign=sign,
            domain_real_dim=domain.dim,
            image_real_dim=image.dim,
            target_real_dim=target.dim,
            surjective=image.dim == target.dim,
            injective=image.dim == domain.dim,
        )
    return NaturalMapReport(plus=sides["plus"], minus=sides["minus"], p=p)


# ---- purity/fullness via the lemma ------------------------------------------

@dataclass(frozen=True)
class PureFullReport:
    """The one-way implication from the degree-2 lemma to pure-and-full."""

    lemma_holds: bool
    lemma_witness: tuple | None
    pure_over_R: bool
    full_over_R: bool
    implication_holds: bool
    scope: str = SCOPE


def pure_full_implication(instance: HypercomplexInstance) -> PureFullReport:
    """Evaluate: degree-2 lemma ⟹ the eigen images are pure and full.

    Both sides are computed independently; only the forward implication is
    asserted (its converse is not a theorem and is never checked).
    """
    lemma = ddj_lemma_check(instance, 2)
    report = jbar_subgroups(instance, "dolbeault", 2)
    implication = (not lemma.holds) or (report.pure_over_R and
                                        report.full_over_R)
    return PureFullReport(
        lemma_holds=lemma.holds,
        lemma_witness=lemma.witness,
        pure_over_R=report.pure_over_R,
        full_over_R=report.full_over_R,
        implication_holds=implication,
    )


# ---- re-verification of serialized claims ----------------------------------

def verify_group(instance: HypercomplexInstance,
                 group: CohomologyGroup) -> None:
    """Re-verify a computed group's claims before they are serialized.

    Every stored representative must be closed for its kind, the set must
    be independent modulo the exact forms, and the stored dimension must
    match both the representative count and the rank computation.  A
    failure here means the report was corrupted after construction, so it
    raises an internal error rather than a validation error.
    """
    num, den = _numerator_denominator(instance, group.kind, group.p)
    closedness = _closedness_matrices(instance, group.kind, group.p)
    for rep in group.representative_basis:
        vec = list(rep)
        for mat in closedness:
            if any(_apply(mat, vec)):
                raise InternalInvariantError(
                    f"serialized {group.kind} representative is not closed")
        if not num.contains_vector(vec):
            raise InternalInvariantError(
                f"serialized {group.kind} representative escapes the kernel")
    span = Subspace.from_vectors(
        [list(r) for r in group.representative_basis], instance.p0_dim(group.p))
    if span.dim != group.dim or span.intersect(den).dim != 0:
        raise InternalInvariantError(
            f"serialized {group.kind} representatives are dependent")
    if group.dim != num.dim - den.dim:
        raise InternalInvariantError(
            f"serialized {group.kind} dimension disagrees with a recount")


def verify_eigen_facts(instance: HypercomplexInstance,
                       report: JbarSubgroupReport) -> None:
    """Re-verify the closed/exact claims of an eigen refinement report.

    Each generator fact's closedness is recomputed from the operator
    matrices; each exactness claim is re-checked by applying the operator
    to the stored primitive; each independence claim is re-checked modulo
    the realified exact forms.  The eigen dimensions are recounted.
    """
    num_r, den_r, plus, minus, closedness, primitive_mat = _jbar_data(
        instance, report.source, report.p)
    if (_class_space(den_r, plus).dim != report.real_dim_plus
            or _class_space(den_r, minus).dim != report.real_dim_minus):
        raise InternalInvariantError(
            "serialized eigen dimensions disagree with a recount")
    for fact in report.generator_facts:
        coords = list(fact.coords)
        for mat in closedness:
            if any(_apply(mat, coords)):
                raise InternalInvariantError(
                    "serialized eigen generator is not closed")
        if fact.exact:
            if fact.primitive is None:
                raise InternalInvariantError(
                    "serialized exact claim carries no primitive")
            if _apply(primitive_mat, list(fact.primitive)) != coords:
                raise InternalInvariantError(
                    "serialized primitive fails re-verification")
        else:
            if not any(den_r.reduce(realify_vector(coords))):
                raise InternalInvariantError(
                    "serialized generator claimed independent is exact")
