"""Metric layer: star tables, HKT/hyperkahler certificates, the operator P."""

from fractions import Fraction

import pytest

from conftest import abelian_instance, gt_instance, identity_gram
from hcforms.errors import BadParameters, NotHermitian, NotPositive
from hcforms.exact import ONE, ZERO, GaussianRational as GQ, gq
from hcforms.linalg import mat_vec
from hcforms.metric import (
    adjoint_derivative,
    build_metric,
    hkt_check,
    hodge_star_p0,
    hyperkahler_check,
    operator_P_invariant,
)

TUPLES2 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


@pytest.fixture(scope="module")
def flat_metric(flat):
    return build_metric(flat, identity_gram())


def basis_vec(tup):
    vec = [ZERO] * 6
    vec[TUPLES2.index(tup)] = ONE
    return vec


def test_fundamental_form_coordinates(flat, flat_metric):
    assert flat.p0_tuples(2) == TUPLES2
    assert list(flat_metric.forms.omega) == [ONE, ZERO, ZERO, ZERO, ZERO, ONE]


def test_star_table_on_two_forms(flat, flat_metric):
    star = hodge_star_p0(flat, flat_metric, 2)
    assert star.apply(basis_vec((1, 2))) == basis_vec((3, 4))
    assert star.apply(basis_vec((1, 3))) == [-x for x in basis_vec((2, 4))]
    assert star.apply(basis_vec((1, 4))) == basis_vec((2, 3))

    omega = list(flat_metric.forms.omega)
    assert star.apply(omega) == omega

    a_prime = [ZERO, ONE, ZERO, ZERO, gq(-1), ZERO]
    assert star.apply(a_prime) == a_prime

    # the star extends anti-linearly: i Omega is anti-fixed
    i_omega = [x * GQ(0, 1) for x in omega]
    assert star.apply(i_omega) == [-x for x in i_omega]


def test_flat_metric_is_hyperkahler(flat, flat_metric):
    report = hkt_check(flat, flat_metric)
    assert report.hkt and report.holomorphic_closed and report.torsions_equal
    for torsion in (report.torsion_I, report.torsion_J, report.torsion_K):
        assert all(v == Fraction(0) for v in torsion)
    assert hyperkahler_check(flat, flat_metric) is True


def test_flat_invariant_operator_dimensions(flat, flat_metric):
    report = operator_P_invariant(flat, flat_metric)
    assert report.kernel_dim == 6
    assert report.anti_fixed_dim == 6
    assert report.star_fixed_dim == 5


def test_generic_parameter_is_not_hkt(gt13):
    metric = build_metric(gt13, identity_gram())
    report = hkt_check(gt13, metric)
    assert not report.hkt
    assert not report.holomorphic_closed
    assert not report.torsions_equal
    assert hyperkahler_check(gt13, metric) is False

    p_report = operator_P_invariant(gt13, metric)
    assert (p_report.kernel_dim, p_report.anti_fixed_dim,
            p_report.star_fixed_dim) == (5, 6, 5)


def test_midpoint_parameter_is_hkt_but_not_hyperkahler(gt12):
    metric = build_metric(gt12, identity_gram())
    report = hkt_check(gt12, metric)
    assert report.hkt
    assert hyperkahler_check(gt12, metric) is False

    p_report = operator_P_invariant(gt12, metric)
    assert (p_report.kernel_dim, p_report.anti_fixed_dim,
            p_report.star_fixed_dim) == (6, 6, 5)


def test_adjoint_derivative_lowers_degree(gt13):
    metric = build_metric(gt13, identity_gram())
    dstar = adjoint_derivative(gt13, metric, 2)
    assert len(dstar) == gt13.p0_dim(1)
    assert all(len(row) == gt13.p0_dim(2) for row in dstar)
    # on the abelian algebra the derivative vanishes, hence so does dstar
    flat = abelian_instance()
    flat_dstar = adjoint_derivative(flat, build_metric(flat, identity_gram()), 2)
    assert not any(x for row in flat_dstar for x in row)


def test_gram_must_be_symmetric(flat):
    bad = identity_gram()
    bad[0][1] = Fraction(1)
    with pytest.raises(BadParameters):
        build_metric(flat, bad)


def test_gram_must_be_positive(flat):
    bad = identity_gram()
    bad[0][0] = Fraction(-1)
    with pytest.raises(NotPositive):
        build_metric(flat, bad)


def test_gram_must_respect_the_triple(flat):
    bad = identity_gram()
    bad[0][0] = Fraction(2)
    with pytest.raises(NotHermitian):
        build_metric(flat, bad)


def test_hyperkahler_implies_hkt(flat, flat_metric):
    # the one shipped hyperkahler point also passes the HKT certificate
    assert hyperkahler_check(flat, flat_metric) is True
    assert hkt_check(flat, flat_metric).hkt
