"""
Rota-Baxter operators on Poisson algebras

Covers descendent algebras, quadratic Rota-Baxter data and both directions
of the correspondence between factorizable r-matrices and quadratic
Rota-Baxter operators of nonzero weight.
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from models.report_schema import Report
from modules.bialgebra_yb import (
    RLabel,
    RMatrixData,
    check_poisson_bialgebra,
    classify_r,
    coboundary_bialgebra,
    dual_structure_constants,
    transport_isomorphism,
)
from modules.exact_linear import (
    Matrix,
    Scalar,
    TwoTensor,
    apply_last,
    bilinear_table,
    exactly_equal,
    identity,
    is_zero,
    matrix_inverse,
    normalize,
    to_scalar,
    zeros,
)
from modules.poisson_core import (
    AlgebraSpec,
    BilinearFormData,
    check_quadratic,
    coadjoint_rep,
    homomorphism_report,
    record_residual,
    semidirect_product,
)
from utils.error_handler import (
    DimMismatch,
    MissingForm,
    NotFactorizable,
    NotQuadraticRB,
    NotRotaBaxter,
    ZeroWeight,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RotaBaxterData:
    """Operator P of weight lambda, optionally with a bilinear form."""
    p: Matrix
    weight: Scalar
    form: Optional[BilinearFormData] = None

    def __post_init__(self):
        object.__setattr__(self, "weight", to_scalar(self.weight))
        if self.form is not None and self.form.dim != self.p.shape[0]:
            raise DimMismatch(f"form of dimension {self.form.dim} for operator of shape {self.p.shape}")

    @property
    def dim(self) -> int:
        return self.p.shape[0]

    def same_as(self, other: "RotaBaxterData") -> bool:
        if self.weight != other.weight or not exactly_equal(self.p, other.p):
            return False
        if self.form is None or other.form is None:
            return self.form is other.form
        return exactly_equal(self.form.b, other.form.b)


@dataclass(frozen=True)
class FormTensors:
    """I_B: A* -> A in column form and r_B, the 2-tensor of I_B."""
    i_b: Matrix
    r_b: TwoTensor


# ============================================================================
# ROTA-BAXTER IDENTITIES
# ============================================================================

def rb_residuals(a: AlgebraSpec, rb: RotaBaxterData) -> Tuple[np.ndarray, np.ndarray]:
    """op(Pa, Pb) - P(op(Pa, b) + op(a, Pb) + lambda op(a, b)) for bracket and product."""
    if rb.dim != a.dim:
        raise DimMismatch(f"operator of dimension {rb.dim} on algebra of dimension {a.dim}")
    p, eye = rb.p, identity(a.dim)
    out = []
    for t in (a.bracket, a.product):
        inside = bilinear_table(t, p, eye) + bilinear_table(t, eye, p) + rb.weight * t
        out.append(bilinear_table(t, p, p) - apply_last(p, inside))
    return out[0], out[1]


def check_rb_operator(a: AlgebraSpec, rb: RotaBaxterData) -> Report:
    """Weighted Rota-Baxter identity for both operations on basis pairs."""
    report = Report(name="rota_baxter")
    lie, assoc = rb_residuals(a, rb)
    record_residual(report, "bracket_rb", lie, 2)
    record_residual(report, "product_rb", assoc, 2)
    report.notes.append(f"weight={rb.weight}")
    return report


def _require_rb(a: AlgebraSpec, rb: RotaBaxterData, context: str) -> None:
    report = check_rb_operator(a, rb)
    if not report.passed:
        logger.warning(f"{context}: operator fails the Rota-Baxter identity of weight {rb.weight}")
        raise NotRotaBaxter(report, weight=str(rb.weight))


def descendent_algebra(a: AlgebraSpec, rb: RotaBaxterData) -> AlgebraSpec:
    """
    [a, b]_P = [Pa, b] + [a, Pb] + lambda [a, b] and the same for the product.

    Raises:
        NotRotaBaxter: if P fails check_rb_operator
    """
    _require_rb(a, rb, "descendent_algebra")
    p, eye = rb.p, identity(a.dim)

    def descend(t):
        return normalize(bilinear_table(t, p, eye) + bilinear_table(t, eye, p) + rb.weight * t)

    return AlgebraSpec(descend(a.bracket), descend(a.product), a.basis_names)


def descendent_homomorphism(a: AlgebraSpec, rb: RotaBaxterData) -> Report:
    """P as a map from the descendent algebra back to the original."""
    return homomorphism_report(descendent_algebra(a, rb), a, rb.p, "descendent_homomorphism")


def qrbp_residual(form: BilinearFormData, p: Matrix, weight: Scalar) -> Matrix:
    """B(a, Pb) + B(Pa, b) + lambda B(a, b) as a matrix over basis pairs."""
    b = form.b
    return normalize(b @ p + p.T @ b + to_scalar(weight) * b)


def check_quadratic_rb(a: AlgebraSpec, rb: RotaBaxterData) -> Report:
    """
    Quadratic form, Rota-Baxter identity and the form compatibility.

    Raises:
        MissingForm: if rb carries no form
    """
    if rb.form is None:
        raise MissingForm("check_quadratic_rb")
    report = Report(name="quadratic_rb")
    report.merge(check_quadratic(a, rb.form), "quadratic")
    report.merge(check_rb_operator(a, rb), "rota_baxter")
    record_residual(report, "form_compatibility", qrbp_residual(rb.form, rb.p, rb.weight), 2)
    return report


def tilde_operator(rb: RotaBaxterData) -> RotaBaxterData:
    """P~ = -lambda id - P with the same weight and form."""
    p_tilde = normalize(-rb.weight * identity(rb.dim) - rb.p)
    return replace(rb, p=p_tilde)


# ============================================================================
# DOUBLE CONSTRUCTION
# ============================================================================

def semidirect_double_form(n: int) -> BilinearFormData:
    """B_d(a + x*, b + y*) = <a, y*> + <b, x*> on A (+) A*."""
    b = np.zeros((2 * n, 2 * n), dtype=object)
    b[...] = 0
    for i in range(n):
        b[i, n + i] = 1
        b[n + i, i] = 1
    return BilinearFormData(normalize(b), label="B_d")


def semidirect_rb(a: AlgebraSpec, rb: RotaBaxterData) -> Tuple[AlgebraSpec, RotaBaxterData]:
    """
    A x A* under the coadjoint representation with B_d and P (+) P~*.

    Raises:
        NotRotaBaxter: if P fails check_rb_operator
    """
    _require_rb(a, rb, "semidirect_rb")
    n = a.dim
    double = semidirect_product(a, coadjoint_rep(a))
    op = np.zeros((2 * n, 2 * n), dtype=object)
    op[...] = 0
    op[:n, :n] = rb.p
    op[n:, n:] = tilde_operator(rb).p.T
    logger.info(f"semidirect_rb built dimension {2 * n} at weight {rb.weight}")
    return double, RotaBaxterData(normalize(op), rb.weight, semidirect_double_form(n))


# ============================================================================
# FORMS AND R-MATRICES
# ============================================================================

def form_tensors(f: BilinearFormData) -> FormTensors:
    """
    I_B with <I_B^-1(e_i), e_j> = B(e_i, e_j), and r_B.

    Raises:
        SingularMatrix: if B is degenerate
    """
    i_b = matrix_inverse(f.b.T)
    return FormTensors(i_b=i_b, r_b=TwoTensor(normalize(i_b.T)))


def operator_to_r(op: Matrix) -> RMatrixData:
    """The r whose r+ is the given map A* -> A."""
    return RMatrixData(TwoTensor(normalize(op.T)))


def form_compatibility_test(f: BilinearFormData, r: RMatrixData, weight: Scalar) -> Report:
    """
    P_r = r+ I_B^-1 satisfies the form compatibility exactly when
    r + tau(r) = -lambda r_B. Both sides are computed independently.
    """
    weight = to_scalar(weight)
    tensors = form_tensors(f)
    p_r = r.r_plus @ f.b.T
    compatible = is_zero(qrbp_residual(f, p_r, weight))
    matches = exactly_equal(r.i_r, -weight * tensors.r_b.entries)
    report = Report(name="form_compatibility")
    report.flags["form_compatible"] = compatible
    report.flags["symmetric_part_matches"] = matches
    report.require("equivalence", compatible == matches)
    return report


def _require_factorizable(a: AlgebraSpec, r: RMatrixData, weight: Fraction, operation: str) -> None:
    if weight == 0:
        raise ZeroWeight(operation)
    cls = classify_r(a, r)
    if cls.label != RLabel.FACTORIZABLE:
        logger.warning(f"{operation}: r classifies as {cls.label.value}")
        raise NotFactorizable(cls.label.value)


def factorizable_to_qrb(a: AlgebraSpec, r: RMatrixData, weight: Scalar) -> RotaBaxterData:
    """
    P = -lambda r+ I_r^-1 and B(a, b) = -lambda <I_r^-1 a, b>.

    Raises:
        ZeroWeight: if lambda = 0
        NotFactorizable: unless classify_r labels r Factorizable
    """
    weight = to_scalar(weight)
    _require_factorizable(a, r, weight, "factorizable_to_qrb")
    return rb_from_r(r, weight)


def rb_from_r(r: RMatrixData, weight: Scalar) -> RotaBaxterData:
    """(B, P) attached to r at the given weight, without classifying r."""
    weight = to_scalar(weight)
    i_r_inv = matrix_inverse(r.i_r)
    p = normalize(-weight * (r.r_plus @ i_r_inv))
    b = normalize(-weight * i_r_inv.T)
    return RotaBaxterData(p, weight, BilinearFormData(b))


def qrb_to_factorizable(a: AlgebraSpec, rb: RotaBaxterData) -> RMatrixData:
    """
    r = 2-tensor of P I_B.

    Factorizable for nonzero weight, triangular at weight zero.

    Raises:
        NotQuadraticRB: if rb fails check_quadratic_rb
    """
    report = check_quadratic_rb(a, rb)
    if not report.passed:
        logger.warning(f"qrb_to_factorizable: {report.total_violations} violations")
        raise NotQuadraticRB(report)
    tensors = form_tensors(rb.form)
    r = operator_to_r(rb.p @ tensors.i_b)
    logger.info(f"qrb_to_factorizable dim={a.dim} weight={rb.weight}")
    return r


def factorizable_descendent_iso(a: AlgebraSpec, r: RMatrixData, weight: Scalar) -> Report:
    """
    -(1/lambda) I_r from (A*, [,]_r, ._r) onto the descendent algebra of
    P = -lambda r+ I_r^-1, and the transported bialgebra on top of it.
    """
    weight = to_scalar(weight)
    rb = factorizable_to_qrb(a, r, weight)
    phi = normalize(-(r.i_r / weight))
    dual = dual_structure_constants(a, r)
    descendent = descendent_algebra(a, rb)
    report = Report(name="descendent_iso")
    report.merge(homomorphism_report(dual, descendent, phi), "homomorphism")
    transported = transport_isomorphism(coboundary_bialgebra(a, r).swap(), phi)
    report.require("transported_is_descendent", transported.alg.same_structure(descendent))
    report.merge(check_poisson_bialgebra(transported), "transported")
    return report


def diagram_check(a: AlgebraSpec, r: RMatrixData, weight: Scalar) -> Report:
    """
    tau(r) corresponds to (B, P~) when r corresponds to (B, P), in both directions.

    Raises:
        ZeroWeight, NotFactorizable: as factorizable_to_qrb
    """
    weight = to_scalar(weight)
    rb = factorizable_to_qrb(a, r, weight)
    flipped = r.flip()
    rb_flipped = factorizable_to_qrb(a, flipped, weight)
    tilde = tilde_operator(rb)
    report = Report(name="tau_tilde_diagram")
    report.require("same_form", exactly_equal(rb_flipped.form.b, rb.form.b))
    report.require("tau_gives_tilde", exactly_equal(rb_flipped.p, tilde.p))
    report.require("tilde_gives_tau", qrb_to_factorizable(a, tilde) == flipped)
    report.require("round_trip", qrb_to_factorizable(a, rb) == r)
    return report


def zero_operator(n: int, weight: Scalar = 0) -> RotaBaxterData:
    return RotaBaxterData(zeros(n, n), weight)
