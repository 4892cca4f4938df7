"""Convention regressions for the hypercomplex layer against hand tables."""

from fractions import Fraction

import pytest

from conftest import I_GT, J_GT, gt_algebra, struct_matrix
from hcforms.errors import DegreeOutOfRange, NotIntegrable
from hcforms.exact import ONE, ZERO, GaussianRational as GQ
from hcforms.hypercomplex import (
    HypercomplexInstance,
    check_quaternion_triple,
    closed_quaternionic_coframe,
    nijenhuis_tensor,
    one_zero_coframe,
    pq_tuples,
    sigma_decompose,
    verify_identities,
)

T = Fraction(1, 3)


def column(mat, c):
    return [row[c] for row in mat]


def sparse_column(mat, c, tuples):
    return {tuples[r]: mat[r][c] for r in range(len(tuples)) if mat[r][c]}


def test_product_structure_column(gt13):
    # K = IJ sends e1 -> I(e3) = e4 and nothing else out of lane 1
    kcol = column(gt13.triple.K, 0)
    assert kcol[3] == ONE
    assert sum(1 for x in kcol if x) == 1


def test_nijenhuis_vanishes_on_all_three(gt13):
    g = gt13.g
    for name in "IJK":
        ok, violations = nijenhuis_tensor(g, gt13.triple.structure(name))
        assert ok, (name, violations)


def test_automatic_coframe_pairs_adjacent_lanes():
    g = gt_algebra(T)
    triple = check_quaternion_triple(g, I_GT, J_GT)
    frame = one_zero_coframe(g, triple)
    expected = [
        [(1 if k == 2 * m else 0, 1 if k == 2 * m + 1 else 0)
         for k in range(8)]
        for m in range(4)
    ]
    assert [[(x.re, x.im) for x in v] for v in frame] == expected


def test_conjugate_structure_matrix(gt13):
    # J followed by conjugation swaps phi^1 <-> phi^2 and phi^3 <-> phi^4,
    # with a sign on the way back
    jm = gt13._jmat
    assert column(jm, 0) == [ZERO, ONE, ZERO, ZERO]
    assert column(jm, 1) == [-ONE, ZERO, ZERO, ZERO]
    assert column(jm, 2) == [ZERO, ZERO, ZERO, ONE]
    assert column(jm, 3) == [ZERO, ZERO, -ONE, ZERO]


def test_holomorphic_differential_table(gt13):
    # the only nonzero entry on (1,0): del phi^4 = (t - 1/2) phi^{12}
    del1 = gt13.del_matrix(1)
    t20, _ = pq_tuples(4, 2, 0)
    coefficient = GQ(T - Fraction(1, 2))
    for c in range(4):
        entries = sparse_column(del1, c, t20)
        if c == 3:
            assert entries == {(1, 2): coefficient}
        else:
            assert entries == {}


def test_antiholomorphic_differential_table(gt13):
    # delbar phi^3 = -(t/2) phi^{1 1bar} + ((1-t)/2) phi^{2 2bar}
    delbar1 = gt13.delbar_matrix(1)
    t11, _ = pq_tuples(4, 1, 1)
    entries = sparse_column(delbar1, 2, t11)
    assert entries == {(1, 5): GQ(-T / 2), (2, 6): GQ((1 - T) / 2)}


def test_twisted_differential_table(gt13):
    # the only nonzero entry on (1,0): delJ phi^3 = (t - 1/2) phi^{12}
    delJ1 = gt13.delJ_matrix(1)
    t20, _ = pq_tuples(4, 2, 0)
    coefficient = GQ(T - Fraction(1, 2))
    for c in range(4):
        entries = sparse_column(delJ1, c, t20)
        if c == 2:
            assert entries == {(1, 2): coefficient}
        else:
            assert entries == {}


def test_involution_table_on_two_forms(gt13):
    t20, _ = pq_tuples(4, 2, 0)
    index = {tup: r for r, tup in enumerate(t20)}

    def sigma_of(tup):
        vec = [ZERO] * 6
        vec[index[tup]] = ONE
        out = gt13.apply_sigma(vec, 2)
        return {t20[r]: out[r] for r in range(6) if out[r]}

    assert sigma_of((1, 2)) == {(1, 2): ONE}
    assert sigma_of((3, 4)) == {(3, 4): ONE}
    assert sigma_of((1, 3)) == {(2, 4): ONE}
    assert sigma_of((2, 4)) == {(1, 3): ONE}
    assert sigma_of((1, 4)) == {(2, 3): -ONE}
    assert sigma_of((2, 3)) == {(1, 4): -ONE}


def test_involution_eigenspaces_split_evenly(gt13):
    plus, minus = sigma_decompose(gt13, 2)
    assert (plus.dim, minus.dim) == (6, 6)


def test_identity_battery(gt13):
    report = verify_identities(gt13)
    failures = {k: v for k, v in report.items() if v is False}
    assert report["all_ok"], failures


def test_closed_quaternionic_coframe_dimension(gt13):
    space = closed_quaternionic_coframe(gt13.g, gt13.triple)
    assert space.dim == 4


def test_non_integrable_structure_leaks():
    # pairing lanes (1,3)(2,4) instead of (1,2)(3,4) breaks integrability
    g = gt_algebra(T)
    I_alt = struct_matrix({1: (3, 1), 2: (4, 1), 5: (6, 1), 7: (8, 1)})
    J_alt = struct_matrix({1: (2, 1), 3: (4, -1), 5: (7, 1), 6: (8, -1)})
    triple = check_quaternion_triple(g, I_alt, J_alt)
    inst = HypercomplexInstance(g, triple)

    leak = inst.d_blocks(1)["leak"]
    has_leak = any(x for row in leak for x in row)
    nij_ok, _ = nijenhuis_tensor(g, I_alt)
    assert has_leak == (not nij_ok)
    assert not inst.is_integrable
    with pytest.raises(NotIntegrable):
        inst.del_matrix(1)


def test_midpoint_parameter_kills_both_operators(gt12):
    assert not any(x for row in gt12.del_matrix(1) for x in row)
    assert not any(x for row in gt12.delJ_matrix(1) for x in row)
    assert verify_identities(gt12)["all_ok"]


@pytest.mark.parametrize("p", [-1, 5, 9])
def test_degree_bounds_are_enforced(gt13, p):
    with pytest.raises(DegreeOutOfRange):
        gt13.p0_dim(p)
    with pytest.raises(DegreeOutOfRange):
        gt13.sigma_matrix(p)
