"""Family builders, block-form recognition, classification, and sweeps."""

from fractions import Fraction

import pytest

from hcforms.errors import (
    BadParameters,
    MethodDisagreement,
    NotAlmostAbelian,
)
from hcforms.exact import ONE, ZERO, GaussianRational as GQ
from hcforms.families import (
    FAMILY_IDS,
    BlockDecomposition,
    ShapeFailure,
    _AA_I,
    _AA_J,
    _structure,
    _vec,
    abelian_structure_check,
    build_family,
    classify,
    recognize_block_form,
    sl_check,
    sweep,
)
from hcforms.hypercomplex import check_quaternion_triple
from hcforms.liealg import LieAlgebra

RECOGNITION_PARAMS = {
    "a11": Fraction(1), "a21": Fraction(2), "a13": Fraction(-3),
    "a23": Fraction(5, 2), "a": Fraction(7), "v2": Fraction(1),
    "v3": Fraction(-2), "v4": Fraction(3), "v5": Fraction(4, 3),
}
SL_PARAMS = {"a11": Fraction(2), "a21": Fraction(1), "a": Fraction(-2),
             "v2": Fraction(3)}


def unit(k):
    return tuple(ONE if i == k - 1 else ZERO for i in range(8))


@pytest.fixture(scope="module")
def aa_family():
    return build_family("almost-abelian", RECOGNITION_PARAMS)


@pytest.fixture(scope="module")
def sl_family():
    return build_family("almost-abelian", SL_PARAMS)


@pytest.fixture(scope="module")
def non_sl_family():
    return build_family("almost-abelian", {"a11": Fraction(1),
                                           "a": Fraction(1)})


def test_family_ids():
    assert FAMILY_IDS == ("gt", "nilpotent8", "almost-abelian")


def test_build_family_validation():
    for bad in ({}, {"t": 0}, {"t": 1}, {"t": Fraction(3, 2)},
                {"t": Fraction(1, 3), "s": 1}):
        with pytest.raises(BadParameters):
            build_family("gt", bad)
    with pytest.raises(BadParameters):
        build_family("nope", {})
    with pytest.raises(BadParameters):
        build_family("gt", {"t": True})


def test_build_family_accepts_rational_strings():
    fam = build_family("gt", {"t": "1/3"})
    assert fam.parameters["t"] == Fraction(1, 3)


def test_recognition_inverts_construction(aa_family):
    dec = recognize_block_form(aa_family.instance.g, aa_family.instance.triple)
    assert isinstance(dec, BlockDecomposition)
    assert dec.x == unit(1)
    assert dec.ix == unit(8)
    assert dec.jx == unit(7)
    assert dec.kx == tuple(-x for x in unit(6))
    assert dec.u_ij_basis == (unit(2), unit(3), unit(4), unit(5))

    a11, a21, a13, a23 = (GQ(RECOGNITION_PARAMS[k])
                          for k in ("a11", "a21", "a13", "a23"))
    assert dec.f_tilde == ((a11, -a21, a13, -a23),
                           (a21, a11, a23, a13),
                           (-a13, -a23, a11, a21),
                           (a23, -a13, -a21, a11))
    assert dec.a == GQ(RECOGNITION_PARAMS["a"])
    assert dec.a11 == a11
    assert dec.v == tuple(GQ(RECOGNITION_PARAMS[k])
                          for k in ("v2", "v3", "v4", "v5"))


def test_recognition_with_supplied_ideal(aa_family):
    g, triple = aa_family.instance.g, aa_family.instance.triple
    reference = recognize_block_form(g, triple)
    supplied = recognize_block_form(
        g, triple, ideal=[list(unit(k)) for k in range(2, 9)])
    assert supplied.f_tilde == reference.f_tilde
    assert supplied.a == reference.a and supplied.v == reference.v

    with pytest.raises(NotAlmostAbelian):
        recognize_block_form(g, triple,
                             ideal=[list(unit(k)) for k in range(2, 8)])
    with pytest.raises(NotAlmostAbelian):
        recognize_block_form(g, triple,
                             ideal=[list(unit(k)) for k in range(1, 8)])


def test_central_extension_family_has_no_block_form():
    fam = build_family("gt", {"t": Fraction(1, 3)})
    with pytest.raises(NotAlmostAbelian):
        recognize_block_form(fam.instance.g, fam.instance.triple)


def test_abelian_algebra_recognized_degenerately():
    g = LieAlgebra(8, [])
    triple = check_quaternion_triple(g, _structure(_AA_I), _structure(_AA_J))
    dec = recognize_block_form(g, triple)
    assert isinstance(dec, BlockDecomposition)
    assert dec.a == ZERO and dec.a11 == ZERO and not any(dec.v)
    assert all(not any(row) for row in dec.f_tilde)


def test_off_block_component_reports_shape_failure():
    rows = {
        2: {2: Fraction(1)}, 3: {3: Fraction(1)},
        4: {4: Fraction(1)}, 5: {5: Fraction(1)},
        6: {6: Fraction(2), 7: Fraction(1)},
        7: {7: Fraction(2)}, 8: {8: Fraction(2)},
    }
    brackets = [(1, j, _vec({k: GQ(v) for k, v in terms.items()}))
                for j, terms in rows.items()]
    g = LieAlgebra(8, brackets)
    triple = check_quaternion_triple(g, _structure(_AA_I), _structure(_AA_J))
    failure = recognize_block_form(g, triple)
    assert isinstance(failure, ShapeFailure)
    assert not (failure.nijenhuis_I_zero and failure.nijenhuis_J_zero)


def test_sl_check_dual_method(sl_family):
    dec = recognize_block_form(sl_family.instance.g, sl_family.instance.triple)
    report = sl_check(sl_family.instance, decomposition=dec)
    assert report.sl and report.top_form_closed and report.trace_condition
    assert report.trace_value == ZERO and report.methods_agree
    assert report.trivializing_form is not None


def test_sl_check_negative_and_disagreement(sl_family, non_sl_family):
    dec_good = recognize_block_form(sl_family.instance.g,
                                    sl_family.instance.triple)
    dec_bad = recognize_block_form(non_sl_family.instance.g,
                                   non_sl_family.instance.triple)
    report = sl_check(non_sl_family.instance, decomposition=dec_bad)
    assert not report.sl and report.trace_value == GQ(2)
    assert report.trivializing_form is None

    with pytest.raises(MethodDisagreement):
        sl_check(non_sl_family.instance, decomposition=dec_good)


def test_classify_generic_central_extension():
    rep = classify(build_family("gt", {"t": Fraction(1, 3)}))
    dims = {grp.kind: grp.dim for grp in rep.cohomology}
    assert dims == {"dolbeault": 4, "delJ": 4, "bott-chern": 5, "aeppli": 5}
    assert (rep.jbar.real_dim_plus, rep.jbar.real_dim_minus) == (4, 4)
    assert rep.jbar_bott_chern.real_dim_plus == 5
    assert rep.closed_nonexact_imaginary_dim == 4
    assert rep.sl.sl and not rep.hkt.hkt and not rep.hyperkahler
    assert rep.nilpotent and rep.unimodular and not rep.abelian_structure
    assert rep.block_form is None
    assert rep.family == ("gt", (("t", Fraction(1, 3)),))


def test_classify_midpoint_central_extension():
    rep = classify(build_family("gt", {"t": Fraction(1, 2)}))
    dims = {grp.kind: grp.dim for grp in rep.cohomology}
    assert dims["dolbeault"] == 6 and dims["bott-chern"] == 6
    assert rep.hkt.hkt and rep.abelian_structure and rep.sl.sl
    assert not rep.hyperkahler
    assert not rep.warnings


def test_classify_two_step_nilpotent():
    rep = classify(build_family("nilpotent8", {"t1": 1,
                                               "t3": Fraction(-1, 2)}))
    assert not rep.hkt.hkt and rep.sl.sl and rep.nilpotent
    assert not rep.abelian_structure and rep.block_form is None
    dims = {grp.kind: grp.dim for grp in rep.cohomology}
    assert dims == {"dolbeault": 4, "delJ": 4, "bott-chern": 5, "aeppli": 5}
    assert (rep.jbar.real_dim_plus, rep.jbar.real_dim_minus) == (4, 4)

    rep0 = classify(build_family("nilpotent8", {}))
    assert rep0.hkt.hkt and rep0.abelian_structure and rep0.sl.sl
    assert rep0.block_form is not None
    assert rep0.nilpotent and rep0.unimodular
    dims0 = {grp.kind: grp.dim for grp in rep0.cohomology}
    assert dims0["dolbeault"] == 6 and dims0["bott-chern"] == 6


def test_classify_solvable_family(sl_family, non_sl_family):
    rep = classify(sl_family)
    assert rep.sl.sl and rep.sl.methods_agree and rep.block_form is not None
    assert not rep.nilpotent
    assert not rep.hkt.hkt
    dims = {grp.kind: grp.dim for grp in rep.cohomology}
    assert dims["bott-chern"] - dims["dolbeault"] in (0, 1)

    rep = classify(non_sl_family)
    assert not rep.sl.sl and rep.block_form is not None


def test_classify_hyperkahler_point():
    rep = classify(build_family("almost-abelian", {"a21": Fraction(1),
                                                   "a13": Fraction(2)}))
    assert rep.hkt.hkt and rep.hyperkahler and rep.sl.sl and rep.unimodular


def test_abelian_structure_check_matches_brackets(flat, gt13):
    assert abelian_structure_check(flat)
    assert not abelian_structure_check(gt13)


def test_sweep_central_extension():
    result = sweep("gt")
    assert result.all_hold, [s.name for s in result.summaries if not s.holds]
    assert len(result.points) == 4
    assert len(result.summaries) == 8


def test_sweep_two_step_nilpotent():
    result = sweep("nilpotent8")
    assert len(result.points) == 81
    assert result.all_hold, [(s.name, s.counterexamples)
                             for s in result.summaries if not s.holds]


def test_sweep_solvable_family():
    result = sweep("almost-abelian")
    assert len(result.points) == 144
    assert result.all_hold, [(s.name, s.counterexamples)
                             for s in result.summaries if not s.holds]


def test_sweep_grid_override_and_caps():
    result = sweep("gt", grid={"t": ["1/5", "4/5"]})
    assert len(result.points) == 2 and result.all_hold

    with pytest.raises(BadParameters, match="cap"):
        sweep("nilpotent8", grid={"t1": list(range(16)),
                                  "t2": list(range(16))})
    with pytest.raises(BadParameters):
        sweep("gt", grid={"s": [1]})
