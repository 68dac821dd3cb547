# tests/modules/test_bialgebra_yb.py
"""Tests for bialgebra_yb.py"""
import pytest
import sys
from fractions import Fraction
from functools import reduce
from pathlib import Path

import numpy as np
from hypothesis import HealthCheck, example, given, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from modules.bialgebra_yb import (
    BialgebraSpec,
    RLabel,
    RMatrixData,
    adl_invariance_audit,
    canonical_r,
    cbd_conditions,
    check_poisson_bialgebra,
    classify_r,
    coboundary_bialgebra,
    coboundary_coproduct,
    coboundary_maps,
    drinfeld_double,
    dual_products_and_homs,
    factorize,
    modified_rb_identities,
    same_bialgebra,
    solves_pybe,
    split_vector,
    transport_isomorphism,
    yang_baxter_agreement,
    yb_residuals,
)
from modules.exact_linear import TwoTensor, exactly_equal, identity, is_zero, normalize, rational_array
from modules.poisson_core import AlgebraSpec, check_poisson, direct_sum
from utils.error_handler import DimMismatch, InvalidAlgebra, InvalidBialgebra, NotFactorizable, NotInvariant


E_TENSOR_E = [[1, 0], [0, 0]]


def test_zero_bialgebra_passes(zero_bialgebra_p2):
    """Test the zero cobracket and coproduct on a Poisson algebra"""
    assert check_poisson_bialgebra(zero_bialgebra_p2).passed


def test_broken_algebra_fails_bialgebra_check(broken_jacobi):
    """Test algebra violations are merged with a prefix"""
    report = check_poisson_bialgebra(BialgebraSpec.zero(broken_jacobi))
    assert not report.passed
    assert report.first_violation().identity == "algebra.jacobi"


def test_rmatrix_maps(factorizable_r):
    """Test r+, r- and I_r for r = v (x) e"""
    assert exactly_equal(factorizable_r.r_plus, rational_array([[0, 1], [0, 0]]))
    assert exactly_equal(factorizable_r.r_minus, rational_array([[0, 0], [-1, 0]]))
    assert exactly_equal(factorizable_r.i_r, rational_array([[0, 1], [1, 0]]))
    assert exactly_equal(factorizable_r.r_plus - factorizable_r.r_minus, factorizable_r.i_r)


def test_classify_factorizable(dual_numbers, factorizable_r):
    """Test r = v (x) e on the dual numbers is factorizable"""
    cls = classify_r(dual_numbers, factorizable_r)
    assert cls.label == RLabel.FACTORIZABLE
    assert cls.rank_s == 2
    assert all(cls.conditions.values())
    assert cls.flags["pybe"] and cls.flags["s_invariant"]
    assert cls.flags["tau_consistent"]


def test_classify_not_solution(dual_numbers):
    """Test r = e (x) e fails L-invariance and the associative equation"""
    r = RMatrixData.from_entries(E_TENSOR_E)
    cls = classify_r(dual_numbers, r)
    assert cls.label == RLabel.NOT_SOLUTION
    assert not cls.conditions["s_L_invariant"]
    assert not solves_pybe(dual_numbers, r)


def test_classify_zero_is_triangular(p2):
    """Test the zero r-matrix"""
    cls = classify_r(p2, RMatrixData.zero(2))
    assert cls.label == RLabel.TRIANGULAR
    assert cls.rank_s == 0


def test_classification_report(dual_numbers, factorizable_r):
    """Test the classification renders as a passing report with notes"""
    report = classify_r(dual_numbers, factorizable_r).to_report()
    assert report.passed
    assert "label=Factorizable" in report.notes
    assert report.flags["condition.s_L_invariant"]


def test_label_ordering():
    """Test at_least follows the strengthening order"""
    assert RLabel.FACTORIZABLE.at_least(RLabel.QUASI_TRIANGULAR)
    assert RLabel.TRIANGULAR.at_least(RLabel.COBOUNDARY_ONLY)
    assert RLabel.QUASI_TRIANGULAR.at_least(RLabel.NOT_SOLUTION)
    assert not RLabel.COBOUNDARY_ONLY.at_least(RLabel.QUASI_TRIANGULAR)
    assert not RLabel.TRIANGULAR.at_least(RLabel.FACTORIZABLE)


def test_yb_residuals(dual_numbers, factorizable_r):
    """Test both Yang-Baxter residuals vanish for a solution"""
    c, assoc = yb_residuals(dual_numbers, factorizable_r)
    assert is_zero(c) and is_zero(assoc)
    _, assoc_bad = yb_residuals(dual_numbers, RMatrixData.from_entries(E_TENSOR_E))
    assert assoc_bad[0, 0, 0] == Fraction(1)


def test_coboundary_forms_agree_on_commutative(dual_numbers, factorizable_r):
    """Test left-left and left-right coproducts coincide for a commutative product"""
    left_left = coboundary_coproduct(dual_numbers, factorizable_r, "left-left")
    left_right = coboundary_coproduct(dual_numbers, factorizable_r, "left-right")
    assert exactly_equal(left_left, left_right)
    # Delta(v) = v (x) v, Delta(e) = 0
    assert left_left[1, 1, 1] == 1
    assert int(np.count_nonzero(left_left != 0)) == 1
    with pytest.raises(ValueError):
        coboundary_coproduct(dual_numbers, factorizable_r, "right-right")


def test_coboundary_bialgebra_of_solution(dual_numbers, factorizable_r):
    """Test a quasi-triangular r gives a Poisson bialgebra"""
    bialgebra = coboundary_bialgebra(dual_numbers, factorizable_r)
    assert check_poisson_bialgebra(bialgebra).passed
    assert check_poisson_bialgebra(bialgebra.swap()).passed


def test_adl_invariance_characterizations(dual_numbers, factorizable_r):
    """Test tensor, operator and symmetric forms agree on S"""
    s, _ = factorizable_r.parts()
    report = adl_invariance_audit(dual_numbers, s)
    assert report.passed
    assert report.flags["operator_form"] and report.flags["symmetric_form"]
    assert report.flags["characterizations_agree"]


def test_dual_products_and_homs(dual_numbers, factorizable_r):
    """Test r+ and r- are homomorphisms from the dual algebra"""
    dual, report = dual_products_and_homs(dual_numbers, factorizable_r)
    assert report.passed
    assert report.flags["r_plus_hom"] and report.flags["r_minus_hom"]
    assert check_poisson(dual).passed
    # v* . v* = v* is the only nonzero product
    assert dual.product[1, 1, 1] == 1
    assert int(np.count_nonzero(dual.product != 0)) == 1


def test_dual_products_require_invariant_part(dual_numbers):
    """Test NotInvariant when S is not L-invariant"""
    with pytest.raises(NotInvariant):
        dual_products_and_homs(dual_numbers, RMatrixData.from_entries(E_TENSOR_E))


def test_modified_rb_identities(dual_numbers, pairing_form, factorizable_r):
    """Test the operator identities agree with the PYBE"""
    report = modified_rb_identities(dual_numbers, pairing_form, factorizable_r)
    assert report.passed
    assert report.flags["identities_hold"] and report.flags["pybe"]


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=3))
def test_antisymmetric_r_on_abelian_is_triangular(c):
    """Test any antisymmetric r on a zero algebra classifies as triangular"""
    alg_r = RMatrixData.from_entries([[0, c], [-c, 0]])
    assert classify_r(AlgebraSpec.zero(2), alg_r).label == RLabel.TRIANGULAR


def test_split_vector(factorizable_r):
    """Test x = x+ - x-"""
    x = rational_array([3, 5])
    plus, minus = split_vector(factorizable_r, x)
    assert exactly_equal(plus, rational_array([3, 0]))
    assert exactly_equal(minus, rational_array([0, -5]))
    assert exactly_equal(plus - minus, x)


def test_factorize_requires_factorizable(dual_numbers):
    """Test NotFactorizable for a non-solution"""
    with pytest.raises(NotFactorizable) as exc_info:
        factorize(dual_numbers, RMatrixData.from_entries(E_TENSOR_E), rational_array([1, 0]))
    assert exc_info.value.details["label"] == "NotSolution"


def test_canonical_r():
    """Test r = sum e_i (x) e_i*"""
    r = canonical_r(2)
    assert r.entries[0, 2] == 1 and r.entries[1, 3] == 1
    assert sum(r.entries.flat) == 2


def test_drinfeld_double_of_zero_bialgebra(zero_bialgebra_p2):
    """Test the double is Poisson and the canonical r is factorizable"""
    double, r_canon, cls = drinfeld_double(zero_bialgebra_p2)
    assert double.dim == 4
    assert double.basis_names == ("e0", "e1", "e0*", "e1*")
    assert check_poisson(double).passed
    assert r_canon == canonical_r(2)
    assert cls.label == RLabel.FACTORIZABLE


def test_drinfeld_double_rejects_invalid(broken_jacobi):
    """Test InvalidBialgebra carries the failing report"""
    with pytest.raises(InvalidBialgebra) as exc_info:
        drinfeld_double(BialgebraSpec.zero(broken_jacobi))
    assert not exc_info.value.report.passed


def test_transport_isomorphism_scales(zero_bialgebra_p2):
    """Test transport along 2 id halves the bracket"""
    phi = normalize(identity(2) * 2)
    carried = transport_isomorphism(zero_bialgebra_p2, phi)
    assert carried.alg.bracket[0, 1, 1] == Fraction(1, 2)
    assert check_poisson_bialgebra(carried).passed


def test_two_tensor_equality_is_exact():
    """Test RMatrixData equality compares entries"""
    a = RMatrixData(TwoTensor.from_entries([[0, "1/2"], [0, 0]]))
    b = RMatrixData.from_entries([[0, "2/4"], [0, 0]])
    assert a == b
    assert a != a.flip()


def test_transport_along_identity_and_double_swap(dual_numbers, factorizable_r):
    """Test identity transport and swapping twice change nothing"""
    bialgebra = coboundary_bialgebra(dual_numbers, factorizable_r)
    assert same_bialgebra(transport_isomorphism(bialgebra, identity(2)), bialgebra)
    assert same_bialgebra(bialgebra.swap().swap(), bialgebra)
    assert not same_bialgebra(bialgebra.swap(), bialgebra)


def test_coboundary_maps(dual_numbers, factorizable_r, broken_jacobi):
    """Test delta_r vanishes with a zero bracket and Delta_r is the left-left form"""
    delta, coproduct = coboundary_maps(dual_numbers, factorizable_r)
    assert is_zero(delta)
    assert exactly_equal(coproduct, coboundary_coproduct(dual_numbers, factorizable_r, "left-left"))
    with pytest.raises(DimMismatch):
        coboundary_maps(dual_numbers, RMatrixData.zero(3))
    with pytest.raises(InvalidAlgebra):
        coboundary_maps(broken_jacobi, RMatrixData.zero(3))


# ============================================================================
# COBOUNDARY CONDITIONS AGAINST THE BIALGEBRA CHECK
# ============================================================================

def build_algebra(request, parts):
    """Direct sum of the named algebra fixtures."""
    return reduce(direct_sum, [request.getfixturevalue(name) for name in parts])


def block_swap(n):
    return rational_array([[1 if abs(i - j) == n else 0 for j in range(2 * n)] for i in range(2 * n)])


ZERO2 = [[0, 0], [0, 0]]
ZERO3 = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
WEDGE01_3 = [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]
LAST_SQUARE_3 = [[0, 0, 0], [0, 0, 0], [0, 0, 1]]

COBOUNDARY_CASES = [
    pytest.param(("abelian2",), [[1, 0], [0, 0]], True, id="abelian-e0e0"),
    pytest.param(("abelian2",), [[1, 2], [3, 4]], True, id="abelian-generic"),
    pytest.param(("abelian2", "abelian2"),
                 [[1, 0, 2, 0], [0, -1, 0, "1/2"], [3, 0, 1, 0], [0, 2, 0, 5]], True, id="abelian4-generic"),
    pytest.param(("p2",), ZERO2, True, id="p2-zero"),
    pytest.param(("p2",), [[0, 1], [-1, 0]], True, id="p2-wedge"),
    pytest.param(("p2",), [[0, "-3/2"], ["3/2", 0]], True, id="p2-scaled-wedge"),
    pytest.param(("p2",), [[1, 0], [0, 0]], False, id="p2-mutant-e0e0"),
    pytest.param(("p2",), [[0, 1], [0, 0]], False, id="p2-mutant-e0e1"),
    pytest.param(("p2",), [[0, 0], [0, 1]], False, id="p2-mutant-e1e1"),
    pytest.param(("dual_numbers",), ZERO2, True, id="dual-zero"),
    pytest.param(("dual_numbers",), [[0, 0], [1, 0]], True, id="dual-ve"),
    pytest.param(("dual_numbers",), [[0, 1], [0, 0]], True, id="dual-ev"),
    pytest.param(("dual_numbers",), [[0, 0], [0, 1]], True, id="dual-vv"),
    pytest.param(("dual_numbers",), [[0, 1], [-1, 0]], True, id="dual-wedge-coboundary-only"),
    pytest.param(("dual_numbers",), [[1, 0], [0, 0]], False, id="dual-mutant-ee"),
    pytest.param(("dual_numbers",), [[1, 0], [0, 1]], False, id="dual-mutant-ee-vv"),
    pytest.param(("heisenberg",), ZERO3, True, id="heisenberg-zero"),
    pytest.param(("heisenberg",), LAST_SQUARE_3, True, id="heisenberg-central-square"),
    pytest.param(("heisenberg",), WEDGE01_3, True, id="heisenberg-wedge"),
    pytest.param(("heisenberg",), [[1, 0, 0], [0, 0, 0], [0, 0, 0]], False, id="heisenberg-mutant-e0e0"),
    pytest.param(("heisenberg",), [[0, 1, 0], [0, 0, 0], [0, 0, 0]], False, id="heisenberg-mutant-e0e1"),
    pytest.param(("p3", "p3"), [[1, 0], [0, 1]], True, id="idempotents-squares"),
    pytest.param(("p3", "p3"), [[0, 1], [0, 0]], False, id="idempotents-mutant-ef"),
    pytest.param(("p3", "p3"), [[0, 1], [-1, 0]], False, id="idempotents-mutant-wedge"),
    pytest.param(("p2", "p3"), LAST_SQUARE_3, True, id="p2-idempotent-square"),
    pytest.param(("p2", "p3"), WEDGE01_3, True, id="p2-idempotent-wedge"),
    pytest.param(("p2", "p3"), [[0, 0, 1], [0, 0, 0], [0, 0, 0]], False, id="p2-idempotent-mutant"),
    pytest.param(("dual_numbers", "p3"), [[0, 0, 0], [1, 0, 0], [0, 0, 1]], True, id="dual-idempotent-sum"),
    pytest.param(("dual_numbers", "p3"), [[0, 0, 1], [0, 0, 0], [0, 0, 0]], False, id="dual-idempotent-mutant"),
    pytest.param(("p2", "p2"),
                 [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], True, id="p2-pair-wedges"),
    pytest.param(("p2", "p2"),
                 [[0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [-1, 0, 0, 0]], True, id="p2-pair-cross-wedge"),
    pytest.param(("p2", "p2"),
                 [[0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], False, id="p2-pair-mutant"),
    pytest.param(("dual_numbers", "dual_numbers"),
                 [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0]], True, id="dual-pair-sum"),
    pytest.param(("dual_numbers", "dual_numbers"),
                 [[0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], False, id="dual-pair-mutant"),
]


@pytest.mark.parametrize("parts,entries,expected", COBOUNDARY_CASES)
def test_coboundary_conditions_decide_bialgebra(request, parts, entries, expected):
    """Test (delta_r, Delta_r) is a Poisson bialgebra exactly when the five conditions hold"""
    a = build_algebra(request, parts)
    r = RMatrixData.from_entries(entries)
    conditions, _, _ = cbd_conditions(a, r)
    bialgebra_ok = check_poisson_bialgebra(coboundary_bialgebra(a, r)).passed
    assert bialgebra_ok == all(conditions.values()), conditions
    assert bialgebra_ok == expected


def test_coboundary_only_label(dual_numbers):
    """Test e ^ v on the dual numbers meets the conditions without solving the PYBE"""
    r = RMatrixData.from_entries([[0, 1], [-1, 0]])
    cls = classify_r(dual_numbers, r)
    assert cls.label == RLabel.COBOUNDARY_ONLY
    assert not cls.flags["pybe"]
    assert all(cls.conditions.values())


# ============================================================================
# PYBE FOUR-WAY AGREEMENT
# ============================================================================

def test_yang_baxter_agreement_flags(dual_numbers, factorizable_r):
    """Test all four verdicts for a solution and for a non-solution"""
    report = yang_baxter_agreement(dual_numbers, factorizable_r)
    assert report.passed
    assert report.flags["pybe_tau"] and report.flags["r_minus_identities"]
    failing = yang_baxter_agreement(dual_numbers, RMatrixData.from_entries(E_TENSOR_E))
    assert failing.passed
    assert not failing.flags["pybe"] and not failing.flags["r_plus_identities"]


def test_yang_baxter_agreement_dim_checked(dual_numbers):
    """Test DimMismatch for r of the wrong size"""
    with pytest.raises(DimMismatch):
        yang_baxter_agreement(dual_numbers, RMatrixData.zero(3))


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(
    which=st.sampled_from(["dual_numbers", "p2", "idempotents"]),
    values=st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=2), min_size=4, max_size=4),
)
@example(which="dual_numbers", values=[0, 0, 1, 0])
@example(which="dual_numbers", values=[0, 1, 0, 0])
@example(which="dual_numbers", values=[0, 0, 0, 1])
@example(which="p2", values=[0, 0, 0, 1])
@example(which="p2", values=[1, 2, 0, 0])
def test_yang_baxter_agreement_random_r(dual_numbers, p2, p3, which, values):
    """Test PYBE(r), PYBE(tau(r)) and both operator forms agree on random r"""
    algebras = {"dual_numbers": dual_numbers, "p2": p2, "idempotents": direct_sum(p3, p3)}
    r = RMatrixData.from_entries([values[:2], values[2:]])
    report = yang_baxter_agreement(algebras[which], r)
    assert report.passed, report.flags


# ============================================================================
# DOUBLES OF VALID BIALGEBRAS
# ============================================================================

DOUBLE_CASES = [
    pytest.param(("abelian2",), None, id="abelian-zero"),
    pytest.param(("p2",), None, id="p2-zero"),
    pytest.param(("p3",), None, id="idempotent-zero"),
    pytest.param(("heisenberg",), None, id="heisenberg-zero"),
    pytest.param(("dual_numbers",), None, id="dual-zero"),
    pytest.param(("p3", "p3"), None, id="idempotents-zero"),
    pytest.param(("p2", "p3"), None, id="p2-idempotent-zero"),
    pytest.param(("dual_numbers",), [[0, 0], [1, 0]], id="dual-ve"),
    pytest.param(("dual_numbers",), [[0, 1], [0, 0]], id="dual-ev"),
    pytest.param(("dual_numbers",), [[0, 1], [-1, 0]], id="dual-wedge"),
    pytest.param(("p2",), [[0, 1], [-1, 0]], id="p2-wedge"),
    pytest.param(("heisenberg",), WEDGE01_3, id="heisenberg-wedge"),
    pytest.param(("dual_numbers", "p3"), [[0, 0, 0], [1, 0, 0], [0, 0, 1]], id="dual-idempotent-sum"),
]


@pytest.mark.parametrize("parts,entries", DOUBLE_CASES)
def test_drinfeld_double_every_fixture(request, parts, entries):
    """Test the double of every valid bialgebra fixture is factorizable with I_r the block swap"""
    a = build_algebra(request, parts)
    b = BialgebraSpec.zero(a) if entries is None else coboundary_bialgebra(a, RMatrixData.from_entries(entries))
    assert check_poisson_bialgebra(b).passed
    double, r_canon, cls = drinfeld_double(b)
    assert check_poisson(double).passed
    assert cls.label == RLabel.FACTORIZABLE
    assert exactly_equal(r_canon.i_r, block_swap(a.dim))
