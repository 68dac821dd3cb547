"""
Differential ASI bialgebras and induced Poisson bialgebras

A differential algebra is an associative product with commuting derivations
Phi; a differential coalgebra a coassociative coproduct with commuting
coderivations Psi. Commutative differential algebras with two derivations
induce Poisson algebras, and the quasi-triangular theory transfers along
that induction.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from models.report_schema import Report
from modules.bialgebra_yb import (
    BialgebraSpec,
    Classification,
    RLabel,
    RMatrixData,
    canonical_r,
    classify_r,
    coboundary_coproduct,
    coboundary_maps,
    drinfeld_double,
    dual_structure_constants,
    split_vector,
    yb_residuals,
)
from modules.exact_linear import (
    Matrix,
    Scalar,
    Tensor3,
    Vector,
    apply_last,
    basis_vector,
    bilinear_table,
    exactly_equal,
    identity,
    is_zero,
    matrix_inverse,
    normalize,
    rank,
    to_scalar,
    zeros,
)
from modules.poisson_core import (
    AlgebraSpec,
    BilinearFormData,
    associativity_residual,
    direct_sum,
    homomorphism_report,
    invariance_residuals,
    left_operators,
    record_residual,
    right_operators,
)
from modules.rota_baxter import (
    RotaBaxterData,
    check_quadratic_rb,
    form_tensors,
    operator_to_r,
    qrb_to_factorizable,
    qrbp_residual,
    rb_from_r,
    rb_residuals,
)
from utils.error_handler import (
    DimMismatch,
    NotCommutative,
    NotFactorizable,
    NotInvariant,
    NotQuadraticRB,
    VipViolated,
    ZeroWeight,
    InvalidBialgebra,
)

logger = logging.getLogger(__name__)


# ============================================================================
# VALUE TYPES
# ============================================================================

def _as_maps(maps: Sequence[Matrix]) -> Tuple[Matrix, ...]:
    return tuple(normalize(np.asarray(m, dtype=object)) for m in maps)


@dataclass(frozen=True, eq=False)
class DiffAlgebra:
    """Associative product with derivations phi[k]; the bracket of ``alg`` is ignored."""
    alg: AlgebraSpec
    phi: Tuple[Matrix, ...]
    commutative: bool = True

    def __post_init__(self):
        object.__setattr__(self, "phi", _as_maps(self.phi))
        for m in self.phi:
            if m.shape != (self.dim, self.dim):
                raise DimMismatch(f"derivation of shape {m.shape} in dimension {self.dim}")

    @classmethod
    def from_product(cls, product: Tensor3, phi: Sequence[Matrix], commutative: bool = True,
                     basis_names: Tuple[str, ...] = ()) -> "DiffAlgebra":
        n = product.shape[0]
        return cls(AlgebraSpec(zeros(n, n, n), product, basis_names), tuple(phi), commutative)

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def m(self) -> int:
        return len(self.phi)

    @property
    def product(self) -> Tensor3:
        return self.alg.product

    def associative_part(self) -> AlgebraSpec:
        """The product alone, with zero bracket."""
        return AlgebraSpec(zeros(self.dim, self.dim, self.dim), self.product, self.alg.basis_names)


@dataclass(frozen=True, eq=False)
class DiffCoalgebra:
    """Coproduct table [k, i, j] with coderivations psi[k]."""
    coproduct: Tensor3
    psi: Tuple[Matrix, ...]
    cocommutative: bool = True

    def __post_init__(self):
        object.__setattr__(self, "psi", _as_maps(self.psi))
        n = self.coproduct.shape[0]
        for m in self.psi:
            if m.shape != (n, n):
                raise DimMismatch(f"coderivation of shape {m.shape} in dimension {n}")

    @property
    def dim(self) -> int:
        return self.coproduct.shape[0]


@dataclass(frozen=True, eq=False)
class DiffASIBialgebra:
    diff_alg: DiffAlgebra
    diff_coalg: DiffCoalgebra

    def __post_init__(self):
        if self.diff_alg.dim != self.diff_coalg.dim:
            raise DimMismatch(f"algebra of dimension {self.diff_alg.dim} with coalgebra of dimension {self.diff_coalg.dim}")
        if self.diff_alg.m != len(self.diff_coalg.psi):
            raise DimMismatch(f"{self.diff_alg.m} derivations with {len(self.diff_coalg.psi)} coderivations")

    @classmethod
    def zero_coproduct(cls, d: DiffAlgebra, psi: Sequence[Matrix]) -> "DiffASIBialgebra":
        n = d.dim
        return cls(d, DiffCoalgebra(zeros(n, n, n), tuple(psi)))

    @property
    def dim(self) -> int:
        return self.diff_alg.dim

    @property
    def psi(self) -> Tuple[Matrix, ...]:
        return self.diff_coalg.psi

    @property
    def coproduct(self) -> Tensor3:
        return self.diff_coalg.coproduct


@dataclass(frozen=True, eq=False)
class FrobeniusData:
    """Form B with phi_hat[k] adjoint to phi[k]: B(d a, b) = B(a, d^ b)."""
    form: BilinearFormData
    phi_hat: Tuple[Matrix, ...]


# ============================================================================
# DIFFERENTIAL ALGEBRAS AND COALGEBRAS
# ============================================================================

def leibniz_table(product: Tensor3, d: Matrix) -> np.ndarray:
    """d(ab) - d(a)b - a d(b) on basis pairs."""
    eye = identity(d.shape[0])
    return apply_last(d, product) - bilinear_table(product, d, eye) - bilinear_table(product, eye, d)


def _record_commutation(report: Report, identity_name: str, maps: Sequence[Matrix]) -> None:
    for i, j in combinations(range(len(maps)), 2):
        commutator = maps[i] @ maps[j] - maps[j] @ maps[i]
        record_residual(report, f"{identity_name}[{i},{j}]", commutator.T, 1)


def check_diff_algebra(d: DiffAlgebra) -> Report:
    """Associativity, commutativity when flagged, Leibniz per derivation, commuting family."""
    report = Report(name="diff_algebra")
    pr = d.product
    record_residual(report, "associativity", associativity_residual(pr), 3)
    if d.commutative:
        record_residual(report, "commutativity", pr - np.transpose(pr, (1, 0, 2)), 2)
    for k, der in enumerate(d.phi):
        record_residual(report, f"leibniz[{k}]", leibniz_table(pr, der), 2)
    _record_commutation(report, "derivations_commute", d.phi)
    return report


def coassociativity_residual(coproduct: Tensor3) -> np.ndarray:
    """(Delta (x) id)Delta - (id (x) Delta)Delta as a table [k, a, b, c]."""
    g = coproduct
    return np.einsum('kpc,pab->kabc', g, g) - np.einsum('kaq,qbc->kabc', g, g)


def coderivation_table(coproduct: Tensor3, d: Matrix) -> np.ndarray:
    """Delta(d e_k) - (d (x) id + id (x) d)Delta(e_k)."""
    g = coproduct
    return (np.einsum('mk,mij->kij', d, g)
            - np.einsum('ip,kpj->kij', d, g)
            - np.einsum('kiq,jq->kij', g, d))


def check_diff_coalgebra(c: DiffCoalgebra) -> Report:
    """Coassociativity, cocommutativity when flagged, coderivation rule, commuting family."""
    report = Report(name="diff_coalgebra")
    g = c.coproduct
    record_residual(report, "coassociativity", coassociativity_residual(g), 1)
    if c.cocommutative:
        record_residual(report, "cocommutativity", g - np.transpose(g, (0, 2, 1)), 1)
    for k, der in enumerate(c.psi):
        record_residual(report, f"coderivation[{k}]", coderivation_table(g, der), 1)
    _record_commutation(report, "coderivations_commute", c.psi)
    return report


def dual_coalgebra(d: DiffAlgebra) -> DiffCoalgebra:
    """(A*, product*, Phi*) as a differential coalgebra on the dual basis."""
    coproduct = normalize(np.transpose(d.product, (2, 0, 1)))
    return DiffCoalgebra(coproduct, tuple(m.T for m in d.phi), d.commutative)


def admissibility_tables(b: DiffASIBialgebra, k: int) -> Dict[str, np.ndarray]:
    pr, g = b.diff_alg.product, b.coproduct
    der, coder = b.diff_alg.phi[k], b.psi[k]
    eye = identity(b.dim)
    return {
        "algebra_admissible_left": bilinear_table(pr, coder, eye) - bilinear_table(pr, eye, der) - apply_last(coder, pr),
        "algebra_admissible_right": bilinear_table(pr, eye, coder) - bilinear_table(pr, der, eye) - apply_last(coder, pr),
        "coalgebra_admissible_left": (np.einsum('ip,kpj->kij', der, g)
                   - np.einsum('kiq,jq->kij', g, coder)
                   - np.einsum('mk,mij->kij', der, g)),
        "coalgebra_admissible_right": (np.einsum('kiq,jq->kij', g, der)
                   - np.einsum('ip,kpj->kij', coder, g)
                   - np.einsum('mk,mij->kij', der, g)),
    }


def admissibility_audit(b: DiffASIBialgebra) -> Report:
    """Psi-admissibility of the algebra and Phi*-admissibility of the coalgebra, per k."""
    report = Report(name="admissibility")
    for k in range(b.diff_alg.m):
        for name, residual in admissibility_tables(b, k).items():
            lead = 2 if name.startswith("algebra_") else 1
            record_residual(report, f"{name}[{k}]", residual, lead)
    return report


def asi_residuals(product: Tensor3, coproduct: Tensor3) -> Tuple[np.ndarray, np.ndarray]:
    """Both ASI compatibility identities as tables [a, b, i, j]."""
    pr, g = product, coproduct
    first = (np.einsum('abk,kij->abij', pr, g)
             - np.einsum('pbi,apj->abij', pr, g)
             - np.einsum('aqj,biq->abij', pr, g))
    second = (np.einsum('api,bpj->abij', pr, g)
              - np.einsum('qaj,biq->abij', pr, g)
              - np.einsum('qbi,ajq->abij', pr, g)
              + np.einsum('bpj,api->abij', pr, g))
    return first, second


def check_diff_asi_bialgebra(b: DiffASIBialgebra) -> Report:
    """ASI compatibilities, both differential structures and admissibility."""
    report = Report(name="diff_asi_bialgebra")
    first, second = asi_residuals(b.diff_alg.product, b.coproduct)
    record_residual(report, "asi_coproduct_of_product", first, 2)
    record_residual(report, "asi_twisted", second, 2)
    report.merge(check_diff_algebra(b.diff_alg), "algebra")
    report.merge(check_diff_coalgebra(b.diff_coalg), "coalgebra")
    report.merge(admissibility_audit(b), "admissibility")
    logger.debug(f"check_diff_asi_bialgebra dim={b.dim} violations={report.total_violations}")
    return report


# ============================================================================
# ADMISSIBLE AYBE AND CLASSIFICATION
# ============================================================================

def r_admissibility_tables(phi: Sequence[Matrix], psi: Sequence[Matrix], r: RMatrixData) -> Dict[str, np.ndarray]:
    """(d (x) id - id (x) c)(r) and (c (x) id - id (x) d)(r) stacked over k."""
    rr = r.entries
    first = np.array([d @ rr - rr @ c.T for d, c in zip(phi, psi)], dtype=object)
    second = np.array([c @ rr - rr @ d.T for d, c in zip(phi, psi)], dtype=object)
    return {"r_admissible_left": first, "r_admissible_right": second}


def operator_admissibility_tables(phi: Sequence[Matrix], psi: Sequence[Matrix], r: RMatrixData) -> Dict[str, np.ndarray]:
    """d r+ - r+ c* and d r- - r- c* stacked over k."""
    rp, rm = r.r_plus, r.r_minus
    return {
        "r_plus": np.array([d @ rp - rp @ c.T for d, c in zip(phi, psi)], dtype=object),
        "r_minus": np.array([d @ rm - rm @ c.T for d, c in zip(phi, psi)], dtype=object),
    }


def psi_admissible_aybe(d: DiffAlgebra, psi: Sequence[Matrix], r: RMatrixData) -> Report:
    """A(r) = 0 with both admissibility conditions, cross-checked in operator form."""
    psi = _as_maps(psi)
    if len(psi) != d.m:
        raise DimMismatch(f"{d.m} derivations with {len(psi)} maps")
    report = Report(name="psi_admissible_aybe")
    _, assoc = yb_residuals(d.associative_part(), r)
    record_residual(report, "aybe", assoc, 2)
    tensor_ok = True
    for name, table in r_admissibility_tables(d.phi, psi, r).items():
        tensor_ok = record_residual(report, name, table, 2) and tensor_ok
    operator_ok = all(is_zero(t) for t in operator_admissibility_tables(d.phi, psi, r).values())
    report.flags["r_admissible"] = tensor_ok
    report.flags["operator_form_holds"] = operator_ok
    report.require("operator_form_agrees", tensor_ok == operator_ok)
    return report


def l_invariance_table(d: DiffAlgebra, t: Matrix) -> np.ndarray:
    """(L(e_a) (x) id - id (x) R(e_a))(t) for every basis a."""
    alg = d.associative_part()
    left, right = left_operators(alg), right_operators(alg)
    return np.einsum('aip,pj->aij', left, t) - np.einsum('iq,ajq->aij', t, right)


def diff_dual_product(d: DiffAlgebra, r: RMatrixData) -> Tensor3:
    """x* ._r y* = R*(r+ x*) y* + L*(r- y*) x*."""
    rp, rm = r.r_plus, r.r_minus
    pr = d.product
    return normalize(np.einsum('bi,cbj->ijc', rp, pr) + np.einsum('aj,aci->ijc', rm, pr))


def factorization_report(d: DiffAlgebra, psi: Sequence[Matrix], r: RMatrixData) -> Report:
    """r+ and r- as differential homomorphisms (A*, ._r, Psi*) -> (A, ., Phi), plus a = a+ - a-."""
    report = Report(name="diff_factorization")
    n = d.dim
    dual = AlgebraSpec(zeros(n, n, n), diff_dual_product(d, r))
    for tag, m in (("r_plus", r.r_plus), ("r_minus", r.r_minus)):
        report.merge(homomorphism_report(dual, d.associative_part(), m), tag)
    for tag, table in operator_admissibility_tables(d.phi, _as_maps(psi), r).items():
        report.require(f"{tag}.intertwines", is_zero(table))
    for i in range(n):
        x = basis_vector(n, i)
        plus, minus = split_vector(r, x)
        report.require(f"decomposition[{i}]", exactly_equal(plus - minus, x))
    return report


def classify_diff_r(d: DiffAlgebra, psi: Sequence[Matrix], r: RMatrixData) -> Classification:
    """
    Quasi-triangular, triangular, factorizable or not a solution.

    Only the associative equation applies here, so ``c_residual`` is zero.
    """
    psi = _as_maps(psi)
    aybe = psi_admissible_aybe(d, psi, r)
    s, _ = r.parts()
    rank_s = rank(s.entries)
    _, assoc = yb_residuals(d.associative_part(), r)
    conditions = {
        "aybe": is_zero(assoc),
        "r_admissible": aybe.flags["r_admissible"],
        "s_L_invariant": is_zero(l_invariance_table(d, s.entries)),
    }
    flags = {
        "antisymmetric": r.r.is_antisymmetric(),
        "s_nondegenerate": rank_s == d.dim,
        "operator_form_agrees": aybe.flags["operator_form_agrees"],
    }
    if all(conditions.values()):
        if flags["antisymmetric"]:
            label = RLabel.TRIANGULAR
        elif flags["s_nondegenerate"]:
            label = RLabel.FACTORIZABLE
        else:
            label = RLabel.QUASI_TRIANGULAR
    else:
        label = RLabel.NOT_SOLUTION
    if label == RLabel.FACTORIZABLE:
        flags["factorization"] = factorization_report(d, psi, r).passed
    logger.info(f"classify_diff_r dim={d.dim} label={label.value}")
    return Classification(label, conditions, flags, rank_s, zeros(d.dim, d.dim, d.dim), assoc, "left-right")


def diff_factorize(d: DiffAlgebra, psi: Sequence[Matrix], r: RMatrixData, x: Vector) -> Tuple[Vector, Vector]:
    """
    a = a+ - a- through Im(r+ (+) r-). ``x`` is one vector or a stack of
    column vectors.

    Raises:
        NotFactorizable: unless classify_diff_r labels r Factorizable
    """
    cls = classify_diff_r(d, psi, r)
    if cls.label != RLabel.FACTORIZABLE:
        raise NotFactorizable(cls.label.value)
    return split_vector(r, x)


def diff_drinfeld_double(b: DiffASIBialgebra) -> Tuple[DiffASIBialgebra, RMatrixData]:
    """
    A (+) A* with derivations d (+) c* and coderivations c (+) d*, coproduct
    (id (x) L(u) - R(u) (x) id)(r) for r = sum_i e_i (x) e_i*.

    Raises:
        InvalidBialgebra: if b fails check_diff_asi_bialgebra
    """
    report = check_diff_asi_bialgebra(b)
    if not report.passed:
        logger.warning(f"diff_drinfeld_double: {report.total_violations} violations")
        raise InvalidBialgebra(report)
    n = b.dim
    pr, g = b.diff_alg.product, b.coproduct
    product = np.zeros((2 * n,) * 3, dtype=object)
    product[:n, :n, :n] = pr
    product[:n, n:, :n] = g
    product[:n, n:, n:] = np.transpose(pr, (1, 2, 0))
    product[n:, :n, :n] = np.transpose(g, (2, 0, 1))
    product[n:, :n, n:] = np.transpose(pr, (2, 0, 1))
    product[n:, n:, n:] = np.transpose(g, (1, 2, 0))
    product = normalize(product)

    def block(top, bottom):
        out = np.zeros((2 * n, 2 * n), dtype=object)
        out[...] = 0
        out[:n, :n], out[n:, n:] = top, bottom
        return normalize(out)

    phi = tuple(block(der, coder.T) for der, coder in zip(b.diff_alg.phi, b.psi))
    psi = tuple(block(coder, der.T) for der, coder in zip(b.diff_alg.phi, b.psi))
    names = tuple(b.diff_alg.alg.basis_names) + tuple(f"{name}*" for name in b.diff_alg.alg.basis_names)
    commutative = b.diff_alg.commutative and b.diff_coalg.cocommutative
    double_alg = DiffAlgebra.from_product(product, phi, commutative, names)
    r_canon = canonical_r(n)
    coproduct = coboundary_coproduct(double_alg.associative_part(), r_canon, "left-right")
    double = DiffASIBialgebra(double_alg, DiffCoalgebra(coproduct, psi, commutative))
    logger.info(f"diff_drinfeld_double dim={2 * n}")
    return double, r_canon


# ============================================================================
# FROBENIUS FORMS AND ROTA-BAXTER CONVERSIONS
# ============================================================================

def adjoint_maps(f: BilinearFormData, maps: Sequence[Matrix]) -> Tuple[Matrix, ...]:
    """d^ = B^-1 d^T B, so that B(d a, b) = B(a, d^ b)."""
    b_inv = matrix_inverse(f.b)
    return tuple(normalize(b_inv @ m.T @ f.b) for m in maps)


def frobenius_tools(d: DiffAlgebra, f: BilinearFormData) -> FrobeniusData:
    """
    Adjoint derivations of a symmetric Frobenius form.

    Raises:
        SingularMatrix: if B is degenerate
        NotInvariant: if B is not symmetric and invariant for the product
    """
    report = Report(name="frobenius_form")
    report.require("symmetric", f.symmetric)
    _, assoc = invariance_residuals(d.associative_part(), f.b)
    record_residual(report, "product_invariance", assoc, 3)
    if not report.passed:
        raise NotInvariant(report, details="Frobenius form")
    return FrobeniusData(f, adjoint_maps(f, d.phi))


def frobenius_adjoint_report(d: DiffAlgebra, fd: FrobeniusData, p: Optional[Matrix] = None) -> Report:
    """
    d I_B = I_B d^* for each derivation; with an operator P also
    d P = P d  <=>  d r+ = r+ d^* for r+ = P I_B.
    """
    report = Report(name="frobenius_adjoint")
    i_b = form_tensors(fd.form).i_b
    for k, (der, hat) in enumerate(zip(d.phi, fd.phi_hat)):
        report.require(f"form_intertwines[{k}]", exactly_equal(der @ i_b, i_b @ hat.T))
        if p is not None:
            r_plus = p @ i_b
            commutes = exactly_equal(der @ p, p @ der)
            intertwines = exactly_equal(der @ r_plus, r_plus @ hat.T)
            report.flags[f"commutes_with_p[{k}]"] = commutes
            report.flags[f"r_plus_intertwines[{k}]"] = intertwines
            report.require(f"p_equivalence[{k}]", commutes == intertwines)
    return report


def check_symmetric_rb_frobenius(d: DiffAlgebra, rb: RotaBaxterData) -> Report:
    """Differential algebra, symmetric Frobenius form, RB identity, form compatibility, d P = P d."""
    report = Report(name="symmetric_rb_frobenius")
    if rb.form is None:
        report.require("form_present", False)
        return report
    report.merge(check_diff_algebra(d), "algebra")
    report.require("symmetric", rb.form.symmetric)
    report.require("nondegenerate", rb.form.nondegenerate)
    _, assoc_inv = invariance_residuals(d.associative_part(), rb.form.b)
    record_residual(report, "product_invariance", assoc_inv, 3)
    _, assoc_rb = rb_residuals(d.associative_part(), rb)
    record_residual(report, "product_rb", assoc_rb, 2)
    record_residual(report, "form_compatibility", qrbp_residual(rb.form, rb.p, rb.weight), 2)
    for k, der in enumerate(d.phi):
        record_residual(report, f"commutes_with_p[{k}]", der @ rb.p - rb.p @ der, 1)
    return report


def diff_rb_to_r(d: DiffAlgebra, rb: RotaBaxterData) -> Tuple[RMatrixData, Tuple[Matrix, ...], Classification]:
    """
    r = 2-tensor of P I_B with Psi = Phi^; triangular at weight zero,
    factorizable otherwise.

    Raises:
        NotQuadraticRB: if (d, B, P) is not a symmetric RB differential Frobenius algebra
    """
    report = check_symmetric_rb_frobenius(d, rb)
    if not report.passed:
        logger.warning(f"diff_rb_to_r: {report.total_violations} violations")
        raise NotQuadraticRB(report)
    r = operator_to_r(rb.p @ form_tensors(rb.form).i_b)
    psi = adjoint_maps(rb.form, d.phi)
    return r, psi, classify_diff_r(d, psi, r)


def diff_r_to_rb(d: DiffAlgebra, psi: Sequence[Matrix], r: RMatrixData, weight: Scalar) -> Tuple[RotaBaxterData, Report]:
    """
    (B, P) = (-lambda I_r^-1, -lambda r+ I_r^-1) with the check that Phi^ = Psi.

    Raises:
        ZeroWeight: if lambda = 0
        NotFactorizable: unless classify_diff_r labels r Factorizable
    """
    weight = to_scalar(weight)
    if weight == 0:
        raise ZeroWeight("diff_r_to_rb")
    cls = classify_diff_r(d, psi, r)
    if cls.label != RLabel.FACTORIZABLE:
        raise NotFactorizable(cls.label.value)
    rb = rb_from_r(r, weight)
    report = check_symmetric_rb_frobenius(d, rb)
    hats = adjoint_maps(rb.form, d.phi)
    for k, (hat, coder) in enumerate(zip(hats, _as_maps(psi))):
        report.require(f"adjoint_is_psi[{k}]", exactly_equal(hat, coder))
    return rb, report


def diff_rb_conversions(mode: str, d: DiffAlgebra, **kwargs):
    """Dispatch ``check``, ``rb2r`` or ``r2rb``."""
    if mode == "check":
        return check_symmetric_rb_frobenius(d, kwargs["rb"])
    if mode == "rb2r":
        return diff_rb_to_r(d, kwargs["rb"])
    if mode == "r2rb":
        return diff_r_to_rb(d, kwargs["psi"], kwargs["r"], kwargs["weight"])
    raise ValueError(f"unknown conversion mode {mode!r}")


# ============================================================================
# INDUCED POISSON STRUCTURES
# ============================================================================

def _require_two(maps: Sequence[Matrix], what: str) -> None:
    if len(maps) != 2:
        raise DimMismatch(f"induction needs exactly two {what}, got {len(maps)}")


def induced_poisson_algebra(d: DiffAlgebra) -> AlgebraSpec:
    """[a, b] = d1(a) d2(b) - d2(a) d1(b) with the original product."""
    _require_two(d.phi, "derivations")
    if not d.commutative:
        raise NotCommutative("induced bracket needs a commutative product")
    d1, d2 = d.phi
    pr = d.product
    bracket = normalize(bilinear_table(pr, d1, d2) - bilinear_table(pr, d2, d1))
    return AlgebraSpec(bracket, pr, d.alg.basis_names)


def induced_cobracket(coproduct: Tensor3, psi: Sequence[Matrix]) -> Tensor3:
    """delta = (c1 (x) c2 - c2 (x) c1) Delta."""
    _require_two(psi, "coderivations")
    c1, c2 = psi
    return normalize(np.einsum('ip,kpq,jq->kij', c1, coproduct, c2)
                     - np.einsum('ip,kpq,jq->kij', c2, coproduct, c1))


def cross_compatibility_report(b: DiffASIBialgebra) -> Report:
    """c2 d1(a) . b = c1 d2(a) . b and (c2 d1 (x) id)Delta = (c1 d2 (x) id)Delta."""
    _require_two(b.diff_alg.phi, "derivations")
    d1, d2 = b.diff_alg.phi
    c1, c2 = b.psi
    gap = c2 @ d1 - c1 @ d2
    report = Report(name="cross_compatibility")
    product_side = bilinear_table(b.diff_alg.product, gap, identity(b.dim))
    coproduct_side = np.einsum('ip,kpj->kij', gap, b.coproduct)
    report.flags["product_side"] = record_residual(report, "cross_product", product_side, 2)
    report.flags["coproduct_side"] = is_zero(coproduct_side)
    return report


def _require_commutative(b: DiffASIBialgebra) -> None:
    pr, g = b.diff_alg.product, b.coproduct
    if not (b.diff_alg.commutative and b.diff_coalg.cocommutative):
        raise NotCommutative("commutative and cocommutative flags must be set")
    if not is_zero(pr - np.transpose(pr, (1, 0, 2))):
        raise NotCommutative("product is not commutative")
    if not is_zero(g - np.transpose(g, (0, 2, 1))):
        raise NotCommutative("coproduct is not cocommutative")


def image_square_report(d: DiffAlgebra, psi: Sequence[Matrix], r: RMatrixData) -> Report:
    """
    For factorizable r: the induced algebra of (A*, ._r, Psi*) is (A*, [,]_r, ._r),
    and x* -> (r+ x*, r- x*) embeds it in the induced A (+) A compatibly with
    the derivations.
    """
    psi = _as_maps(psi)
    induced = induced_poisson_algebra(d)
    expected = dual_structure_constants(induced, r)
    dual_diff = DiffAlgebra.from_product(diff_dual_product(d, r), tuple(c.T for c in psi), d.commutative)
    report = Report(name="image_square")
    report.require("dual_induced_matches", induced_poisson_algebra(dual_diff).same_structure(expected))
    n = d.dim
    embed = normalize(np.concatenate([r.r_plus, r.r_minus], axis=0))
    report.merge(homomorphism_report(expected, direct_sum(induced, induced), embed), "embedding")
    for k, (der, coder) in enumerate(zip(d.phi, psi)):
        doubled = np.zeros((2 * n, 2 * n), dtype=object)
        doubled[:n, :n], doubled[n:, n:] = der, der
        report.require(f"embedding_intertwines[{k}]", exactly_equal(doubled @ embed, embed @ coder.T))
    return report


def double_square_report(b: DiffASIBialgebra) -> Report:
    """Induce-then-double against double-then-induce."""
    report = Report(name="double_square")
    cross = cross_compatibility_report(b)
    report.merge(cross, "cross_compatibility")
    if not (cross.flags["product_side"] and cross.flags["coproduct_side"]):
        report.notes.append("skipped: both compatibility identities are required")
        return report
    base = BialgebraSpec(induced_poisson_algebra(b.diff_alg), induced_cobracket(b.coproduct, b.psi), b.coproduct)
    poisson_double, r_canon, _ = drinfeld_double(base)
    diff_double, _ = diff_drinfeld_double(b)
    induced_double = induced_poisson_algebra(diff_double.diff_alg)
    report.require("double_algebra_matches", induced_double.same_structure(poisson_double))
    delta_r, coproduct_r = coboundary_maps(poisson_double, r_canon)
    report.require("double_cobracket_matches",
                   exactly_equal(induced_cobracket(diff_double.coproduct, diff_double.psi), delta_r))
    report.require("double_coproduct_matches", exactly_equal(diff_double.coproduct, coproduct_r))
    return report


def induce_poisson_bialgebra(b: DiffASIBialgebra, r: RMatrixData) -> Tuple[BialgebraSpec, Classification, Report]:
    """
    The induced Poisson bialgebra (A, [,], ., delta, Delta_r) and its classification.

    Raises:
        NotCommutative: unless product and coproduct are (co)commutative
        VipViolated: if c2 d1(a) . b = c1 d2(a) . b fails
    """
    _require_commutative(b)
    cross = cross_compatibility_report(b)
    if not cross.flags["product_side"]:
        logger.warning("induce_poisson_bialgebra: derivation/coderivation compatibility fails")
        raise VipViolated(cross, details=f"{cross.total_violations} basis pairs")
    d = b.diff_alg
    alg = induced_poisson_algebra(d)
    coproduct = coboundary_coproduct(alg, r, "left-left")
    pb = BialgebraSpec(alg, induced_cobracket(coproduct, b.psi), coproduct)
    cls = classify_r(alg, r)
    diff_cls = classify_diff_r(d, b.psi, r)

    diagrams = Report(name="induction")
    diagrams.merge(cross, "cross_compatibility")
    diagrams.notes.append(f"diff_label={diff_cls.label.value}")
    diagrams.notes.append(f"poisson_label={cls.label.value}")
    diagrams.flags["coproduct_is_coboundary"] = exactly_equal(b.coproduct, coproduct)
    if diff_cls.label.is_quasi_triangular():
        delta_r, _ = coboundary_maps(alg, r)
        diagrams.require("cobracket_is_coboundary", exactly_equal(pb.cobracket, delta_r))
        diagrams.require("label_inherited", cls.label.at_least(diff_cls.label))
    if diff_cls.label == RLabel.FACTORIZABLE:
        diagrams.merge(image_square_report(d, b.psi, r), "image_square")
    if check_diff_asi_bialgebra(b).passed:
        diagrams.merge(double_square_report(b), "double_square")
    logger.info(f"induce_poisson_bialgebra dim={b.dim} label={cls.label.value}")
    return pb, cls, diagrams


def induced_qrb_check(d: DiffAlgebra, rb: RotaBaxterData) -> Report:
    """
    A symmetric RB differential Frobenius algebra with Psi = Phi^ gives a
    quadratic RB Poisson algebra on the induced bracket, and both routes to
    r agree.
    """
    report = Report(name="induced_qrb")
    r_diff, psi, _ = diff_rb_to_r(d, rb)
    gap = psi[1] @ d.phi[0] - psi[0] @ d.phi[1]
    cross_ok = is_zero(bilinear_table(d.product, gap, identity(d.dim)))
    report.flags["cross_compatibility"] = cross_ok
    if not cross_ok:
        report.notes.append("skipped: adjoint derivations fail the compatibility identity")
        return report
    induced = induced_poisson_algebra(d)
    qrb = check_quadratic_rb(induced, rb)
    report.merge(qrb, "quadratic_rb")
    if qrb.passed:
        report.require("same_r", qrb_to_factorizable(induced, rb) == r_diff)
    return report
