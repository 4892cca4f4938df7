"""Frozen cohomology values and invariant checks on the reference families."""

import dataclasses

import pytest

import hcforms.cohomology as cohomology
from hcforms.cohomology import (
    KINDS,
    both_closed_representative,
    cohomology_group,
    ddj_lemma_check,
    jbar_subgroups,
    natural_map_check,
    pure_full_implication,
    verify_eigen_facts,
    verify_group,
)
from hcforms.errors import BadParameters, InternalInvariantError, WrongDegree
from hcforms.exact import ONE, ZERO
from hcforms.hypercomplex import pq_tuples
from hcforms.linalg import realify_vector

# dimensions of the four groups on the one-parameter family, frozen after
# a dual-route (rank oracle) computation
GT13_P2 = {"dolbeault": 4, "delJ": 4, "bott-chern": 5, "aeppli": 5}
GT13_TABLES = {
    "dolbeault": [1, 3, 4, 3, 1],
    "delJ": [1, 3, 4, 3, 1],
    "bott-chern": [1, 2, 5, 4, 1],
    "aeppli": [1, 4, 5, 2, 1],
}


def form(instance, p, entries):
    tuples, _ = pq_tuples(instance.half, p, 0)
    index = {tup: k for k, tup in enumerate(tuples)}
    vec = [ZERO] * len(tuples)
    for tup, c in entries.items():
        vec[index[tup]] = c
    return vec


def test_generic_parameter_dimensions(gt13):
    for kind, expected in GT13_P2.items():
        assert cohomology_group(gt13, kind, 2).dim == expected


@pytest.mark.parametrize("kind", KINDS)
def test_generic_parameter_tables(gt13, kind):
    dims = [cohomology_group(gt13, kind, p).dim for p in range(5)]
    assert dims == GT13_TABLES[kind]


@pytest.mark.parametrize("kind", KINDS)
def test_midpoint_parameter_all_kinds_agree(gt12, kind):
    assert cohomology_group(gt12, kind, 2).dim == 6


@pytest.mark.parametrize("kind", KINDS)
def test_abelian_all_kinds_agree(flat, kind):
    assert cohomology_group(flat, kind, 2).dim == 6


def test_eigen_refinement_generic(gt13):
    dol = jbar_subgroups(gt13, "dolbeault")
    assert (dol.real_dim_plus, dol.real_dim_minus) == (4, 4)
    assert dol.pure_over_R and dol.full_over_R

    bc = jbar_subgroups(gt13, "bott-chern")
    assert (bc.real_dim_plus, bc.real_dim_minus) == (5, 5)
    assert bc.pure_over_R and bc.full_over_R


def test_eigen_refinement_midpoint_and_abelian(gt12, flat):
    for inst in (gt12, flat):
        rep = jbar_subgroups(inst, "dolbeault")
        assert (rep.real_dim_plus, rep.real_dim_minus) == (6, 6)
        assert rep.pure_over_R and rep.full_over_R


def test_exact_generator_facts(gt13):
    dol = jbar_subgroups(gt13, "dolbeault")
    exact = [f for f in dol.generator_facts if f.exact]
    assert len(exact) == 2
    assert all(f.primitive is not None for f in exact)

    bc = jbar_subgroups(gt13, "bott-chern")
    assert [f for f in bc.generator_facts if f.exact] == []


def test_classical_generators_sit_in_their_eigenspaces(gt13):
    # the closed sigma-fixed pair and the anti-fixed pair on two-forms
    a = form(gt13, 2, {(1, 3): ONE, (2, 4): ONE})
    b = form(gt13, 2, {(1, 4): ONE, (2, 3): -ONE})
    a_prime = form(gt13, 2, {(1, 3): ONE, (2, 4): -ONE})
    b_prime = form(gt13, 2, {(1, 4): ONE, (2, 3): ONE})

    _, den_r, plus, minus, _, _ = cohomology._jbar_data(gt13, "dolbeault", 2)
    for vec, space in ((a, plus), (b, plus),
                       (a_prime, minus), (b_prime, minus)):
        rv = realify_vector(vec)
        assert space.contains_vector(rv)
        # the class is nonzero: nothing of it reduces away modulo exact
        assert any(den_r.reduce(rv))


def test_lemma_profile_generic(gt13):
    assert [ddj_lemma_check(gt13, p).holds for p in range(5)] == [
        True, True, False, False, True]

    failed2 = ddj_lemma_check(gt13, 2)
    assert failed2.witness == (ONE, ZERO, ZERO, ZERO, ZERO, ZERO)

    failed3 = ddj_lemma_check(gt13, 3)
    tuples3, _ = pq_tuples(4, 3, 0)
    witness = {tuples3[k]: failed3.witness[k]
               for k in range(len(tuples3)) if failed3.witness[k]}
    assert witness == {(1, 2, 4): ONE}


def test_lemma_holds_at_midpoint_and_abelian(gt12, flat):
    assert ddj_lemma_check(gt12, 2).holds
    for p in range(5):
        assert ddj_lemma_check(flat, p).holds


def test_natural_maps_generic(gt13):
    report = natural_map_check(gt13)
    for side in (report.plus, report.minus):
        assert (side.domain_real_dim, side.image_real_dim,
                side.target_real_dim) == (5, 4, 4)
        assert side.surjective and not side.injective


def test_natural_maps_bijective_when_groups_agree(gt12, flat):
    for inst in (gt12, flat):
        report = natural_map_check(inst)
        for side in (report.plus, report.minus):
            assert side.surjective and side.injective
    mid = natural_map_check(gt12)
    assert (mid.minus.domain_real_dim, mid.minus.target_real_dim) == (6, 6)


def test_lemma_implies_pure_and_full(gt13, gt12, flat):
    for inst in (gt13, gt12, flat):
        assert pure_full_implication(inst).implication_holds


def test_both_closed_representative_identity(gt13):
    # every closed two-form here is already closed for the twisted operator
    for entries in ({(1, 3): ONE, (2, 4): ONE}, {(1, 4): ONE, (2, 3): -ONE},
                    {(1, 3): ONE, (2, 4): -ONE}, {(1, 4): ONE, (2, 3): ONE}):
        vec = form(gt13, 2, entries)
        assert both_closed_representative(gt13, vec) == vec


def test_both_closed_representative_rejects_non_closed(gt13):
    with pytest.raises(BadParameters):
        both_closed_representative(gt13, form(gt13, 2, {(3, 4): ONE}))


def test_eigen_refinement_requires_even_degree(gt13):
    with pytest.raises(WrongDegree):
        jbar_subgroups(gt13, "dolbeault", 3)


def test_group_reverification_accepts_honest_groups(gt13):
    for kind in KINDS:
        for p in range(5):
            verify_group(gt13, cohomology_group(gt13, kind, p))


def test_group_reverification_detects_tampering(gt13):
    group = cohomology_group(gt13, "dolbeault", 2)
    forged = dataclasses.replace(group, dim=7)
    with pytest.raises(InternalInvariantError):
        verify_group(gt13, forged)

    # swap a representative for a non-closed form
    bad_rep = tuple(form(gt13, 2, {(3, 4): ONE}))
    forged = dataclasses.replace(
        group, representative_basis=(bad_rep,) + group.representative_basis[1:])
    with pytest.raises(InternalInvariantError):
        verify_group(gt13, forged)


def test_eigen_reverification(gt13):
    report = jbar_subgroups(gt13, "dolbeault")
    verify_eigen_facts(gt13, report)
    forged = dataclasses.replace(report, real_dim_plus=9)
    with pytest.raises(InternalInvariantError):
        verify_eigen_facts(gt13, forged)
