"""
Poisson bialgebras, r-matrices and the classical double

Cobracket and coproduct tensors follow the dual-pairing convention
<delta(e_k), e_i* (x) e_j*> = <e_k, [e_i*, e_j*]>, so delta[k, i, j] is the
structure constant of the dual bracket; likewise for the coproduct.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Tuple

import numpy as np

from models.report_schema import Report
from modules.exact_linear import (
    Matrix,
    Tensor3,
    TwoTensor,
    Vector,
    act_on_slot,
    apply_last,
    bilinear_table,
    exactly_equal,
    freeze,
    identity,
    is_zero,
    matrix_inverse,
    normalize,
    rank,
    split_two_tensor,
)
from modules.poisson_core import (
    AlgebraSpec,
    BilinearFormData,
    ad_operators,
    check_poisson,
    check_quadratic,
    left_operators,
    record_residual,
    require_poisson,
    right_operators,
)
from utils.error_handler import (
    DimMismatch,
    InvalidBialgebra,
    NotFactorizable,
    NotInvariant,
)

logger = logging.getLogger(__name__)


# ============================================================================
# VALUE TYPES
# ============================================================================

@dataclass(frozen=True)
class BialgebraSpec:
    """A Poisson algebra with cobracket delta and coproduct Delta."""
    alg: AlgebraSpec
    cobracket: Tensor3
    coproduct: Tensor3

    def __post_init__(self):
        n = self.alg.dim
        for name, t in (("cobracket", self.cobracket), ("coproduct", self.coproduct)):
            if t.shape != (n, n, n):
                raise DimMismatch(f"{name} has shape {t.shape}, expected {(n, n, n)}")

    @classmethod
    def zero(cls, alg: AlgebraSpec) -> "BialgebraSpec":
        n = alg.dim
        empty = normalize(np.zeros((n, n, n), dtype=object))
        return cls(alg, empty, empty)

    @property
    def dim(self) -> int:
        return self.alg.dim

    def dual_algebra(self) -> AlgebraSpec:
        """(A*, [,]_{A*}, ._{A*}) read off the cobracket and coproduct."""
        names = tuple(f"{name}*" for name in self.alg.basis_names)
        return AlgebraSpec(
            normalize(np.transpose(self.cobracket, (1, 2, 0))),
            normalize(np.transpose(self.coproduct, (1, 2, 0))),
            names,
        )

    def swap(self) -> "BialgebraSpec":
        """The bialgebra (A*, A) with the roles of algebra and dual exchanged."""
        return BialgebraSpec(
            self.dual_algebra(),
            normalize(np.transpose(self.alg.bracket, (2, 0, 1))),
            normalize(np.transpose(self.alg.product, (2, 0, 1))),
        )


@dataclass(frozen=True)
class RMatrixData:
    """
    A 2-tensor r with its attached maps A* -> A, in column form.

    r_plus is the matrix of r+ (column a is r+(e_a*) = sum_b r[a, b] e_b),
    r_minus that of r-, and i_r = r_plus - r_minus is symmetric.
    """
    r: TwoTensor

    @classmethod
    def from_entries(cls, data) -> "RMatrixData":
        return cls(TwoTensor.from_entries(data))

    @classmethod
    def zero(cls, n: int) -> "RMatrixData":
        return cls(TwoTensor.zero(n))

    @property
    def dim(self) -> int:
        return self.r.dim

    @property
    def entries(self) -> Matrix:
        return self.r.entries

    @property
    def r_plus(self) -> Matrix:
        return freeze(self.entries.T.copy())

    @property
    def r_minus(self) -> Matrix:
        return normalize(-self.entries)

    @property
    def i_r(self) -> Matrix:
        return normalize(self.entries + self.entries.T)

    @property
    def s_plus(self) -> Matrix:
        return normalize(self.i_r * Fraction(1, 2))

    def parts(self) -> Tuple[TwoTensor, TwoTensor]:
        return split_two_tensor(self.r)

    def flip(self) -> "RMatrixData":
        return RMatrixData(self.r.flip())

    def __eq__(self, other) -> bool:
        return isinstance(other, RMatrixData) and self.r == other.r

    def __hash__(self):
        return hash(self.r)


class RLabel(str, Enum):
    NOT_SOLUTION = "NotSolution"
    COBOUNDARY_ONLY = "CoboundaryOnly"
    QUASI_TRIANGULAR = "QuasiTriangular"
    TRIANGULAR = "Triangular"
    FACTORIZABLE = "Factorizable"

    def is_quasi_triangular(self) -> bool:
        return self in (RLabel.QUASI_TRIANGULAR, RLabel.TRIANGULAR, RLabel.FACTORIZABLE)

    def at_least(self, other: "RLabel") -> bool:
        """True when this label is ``other`` or a strengthening of it."""
        if self == other:
            return True
        if other == RLabel.NOT_SOLUTION:
            return True
        if other == RLabel.COBOUNDARY_ONLY:
            return self.is_quasi_triangular()
        if other == RLabel.QUASI_TRIANGULAR:
            return self in (RLabel.TRIANGULAR, RLabel.FACTORIZABLE)
        return False


@dataclass(frozen=True)
class Classification:
    """Label of an r-matrix with all the evidence that produced it."""
    label: RLabel
    conditions: Dict[str, bool]
    flags: Dict[str, bool]
    rank_s: int
    c_residual: np.ndarray = field(repr=False)
    a_residual: np.ndarray = field(repr=False)
    coboundary_form: str = "left-left"

    def to_report(self, name: str = "classification") -> Report:
        report = Report(name=name)
        report.flags.update({f"condition.{k}": v for k, v in self.conditions.items()})
        report.flags.update(self.flags)
        report.notes.append(f"label={self.label.value}")
        report.notes.append(f"rank_s={self.rank_s}")
        report.notes.append(f"coboundary_form={self.coboundary_form}")
        return report


# ============================================================================
# BIALGEBRA AXIOMS
# ============================================================================

def compatibility_residuals(b: BialgebraSpec) -> Dict[str, np.ndarray]:
    """Residual tables [a, b, i, j] of the four bialgebra compatibility identities."""
    br, pr = b.alg.bracket, b.alg.product
    d, g = b.cobracket, b.coproduct

    def left_on(ops, t):  # (X(a) (x) id) t(b)
        return np.einsum('api,bpj->abij', ops, t)

    def right_on(ops, t):  # (id (x) X(a)) t(b)
        return np.einsum('aqj,biq->abij', ops, t)

    def swap_ab(t):
        return np.transpose(t, (1, 0, 2, 3))

    cocycle = (np.einsum('abk,kij->abij', br, d)
               - left_on(br, d) - right_on(br, d)
               + swap_ab(left_on(br, d)) + swap_ab(right_on(br, d)))
    infinitesimal = (np.einsum('abk,kij->abij', pr, g)
                     - left_on(pr, g)
                     - np.einsum('qbj,aiq->abij', pr, g))
    mixed_cobracket = (np.einsum('abk,kij->abij', pr, d)
                       - left_on(pr, d) - swap_ab(left_on(pr, d))
                       - right_on(br, g) - swap_ab(right_on(br, g)))
    mixed_coproduct = (np.einsum('abk,kij->abij', br, g)
                       - left_on(br, g) - right_on(br, g)
                       - swap_ab(left_on(pr, d)) + swap_ab(right_on(pr, d)))
    return {
        "lie_cocycle": cocycle,
        "infinitesimal": infinitesimal,
        "mixed_cobracket": mixed_cobracket,
        "mixed_coproduct": mixed_coproduct,
    }


def check_poisson_bialgebra(b: BialgebraSpec) -> Report:
    """Both algebras Poisson, plus the cocycle, infinitesimal and mixed identities."""
    report = Report(name="poisson_bialgebra")
    report.merge(check_poisson(b.alg), "algebra")
    report.merge(check_poisson(b.dual_algebra()), "dual")
    for identity_name, residual in compatibility_residuals(b).items():
        record_residual(report, identity_name, residual, 2)
    logger.debug(f"check_poisson_bialgebra dim={b.dim} violations={report.total_violations}")
    return report


def transport_isomorphism(b: BialgebraSpec, phi: Matrix) -> BialgebraSpec:
    """
    Carry the bialgebra structure along phi: A -> B.

    [a, b]_B = phi[phi^-1 a, phi^-1 b] and the dual side uses (phi*)^-1.
    """
    phi_inv = matrix_inverse(phi)
    if phi.shape != (b.dim, b.dim):
        raise DimMismatch(f"phi of shape {phi.shape} in dimension {b.dim}")

    def carry(t, outer, inner):
        return normalize(np.einsum('km,pi,qj,pqm->ijk', outer, inner, inner, t))

    dual = b.dual_algebra()
    bracket = carry(b.alg.bracket, phi, phi_inv)
    product = carry(b.alg.product, phi, phi_inv)
    dual_bracket = carry(dual.bracket, phi_inv.T, phi.T)
    dual_product = carry(dual.product, phi_inv.T, phi.T)
    alg = AlgebraSpec(bracket, product, b.alg.basis_names)
    return BialgebraSpec(
        alg,
        normalize(np.transpose(dual_bracket, (2, 0, 1))),
        normalize(np.transpose(dual_product, (2, 0, 1))),
    )


# ============================================================================
# COBOUNDARY STRUCTURES
# ============================================================================

def coboundary_coproduct(a: AlgebraSpec, r: RMatrixData, form: str = "left-left") -> Tensor3:
    """
    Delta_r(e_k) as a table [k, i, j].

    ``left-left`` is (id (x) L(u) - L(u) (x) id)(r); ``left-right`` is
    (id (x) L(u) - R(u) (x) id)(r). They agree on commutative products.
    """
    rr = r.entries
    left = left_operators(a)
    if form == "left-left":
        outer = left
    elif form == "left-right":
        outer = right_operators(a)
    else:
        raise ValueError(f"unknown coboundary form {form!r}")
    return normalize(np.einsum('iq,kjq->kij', rr, left) - np.einsum('kip,pj->kij', outer, rr))


def coboundary_maps(a: AlgebraSpec, r: RMatrixData) -> Tuple[Tensor3, Tensor3]:
    """delta_r(e_k) = (id (x) ad(e_k) + ad(e_k) (x) id)(r) and Delta_r(e_k)."""
    require_poisson(a, "coboundary_maps")
    if r.dim != a.dim:
        raise DimMismatch(f"r of dimension {r.dim} on algebra of dimension {a.dim}")
    rr = r.entries
    ad = ad_operators(a)
    delta = normalize(np.einsum('kip,pj->kij', ad, rr) + np.einsum('iq,kjq->kij', rr, ad))
    return delta, coboundary_coproduct(a, r, "left-left")


def coboundary_bialgebra(a: AlgebraSpec, r: RMatrixData) -> BialgebraSpec:
    delta, coproduct = coboundary_maps(a, r)
    return BialgebraSpec(a, delta, coproduct)


def yb_residuals(a: AlgebraSpec, r: RMatrixData) -> Tuple[np.ndarray, np.ndarray]:
    """
    C(r) = [r12, r13] + [r13, r23] + [r12, r23] and
    A(r) = r12.r13 + r13.r23 - r23.r12 as n x n x n coefficient arrays.
    """
    rr = r.entries
    br, pr = a.bracket, a.product
    c = (np.einsum('ib,kc,ika->abc', rr, rr, br)
         + np.einsum('aj,bl,jlc->abc', rr, rr, br)
         + np.einsum('aq,sc,qsb->abc', rr, rr, br))
    assoc = (np.einsum('ib,kc,ika->abc', rr, rr, pr)
             + np.einsum('aj,bl,jlc->abc', rr, rr, pr)
             - np.einsum('aq,sc,sqb->abc', rr, rr, pr))
    return normalize(c), normalize(assoc)


def solves_pybe(a: AlgebraSpec, r: RMatrixData) -> bool:
    c, assoc = yb_residuals(a, r)
    return is_zero(c) and is_zero(assoc)


def invariance_tables(a: AlgebraSpec, t: Matrix) -> Tuple[np.ndarray, np.ndarray]:
    """(ad(e_a) (x) id + id (x) ad(e_a)) t and (L(e_a) (x) id - id (x) L(e_a)) t."""
    ad, left = ad_operators(a), left_operators(a)
    lie = np.einsum('aip,pj->aij', ad, t) + np.einsum('iq,ajq->aij', t, ad)
    assoc = np.einsum('aip,pj->aij', left, t) - np.einsum('iq,ajq->aij', t, left)
    return lie, assoc


def adl_invariance_audit(a: AlgebraSpec, t: TwoTensor) -> Report:
    """
    (ad, L)-invariance of a 2-tensor.

    For symmetric t the operator form (through S+ = t as a map A* -> A) and
    the symmetric form are evaluated too; the flag ``characterizations_agree``
    records whether all three verdicts coincide.
    """
    report = Report(name="adl_invariance")
    tt = t.entries
    lie, assoc = invariance_tables(a, tt)
    tensor_ok = record_residual(report, "ad_invariance", lie, 1)
    tensor_ok = record_residual(report, "L_invariance", assoc, 1) and tensor_ok
    report.flags["tensor_form"] = tensor_ok

    if t.is_symmetric():
        br, pr = a.bracket, a.product
        ad, left = ad_operators(a), left_operators(a)
        s_plus = tt.T
        adi_lie = np.einsum('pq,ajq->apj', s_plus, ad) + np.einsum('apq,qj->apj', ad, s_plus)
        adi_assoc = np.einsum('pq,ajq->apj', s_plus, left) - np.einsum('apq,qj->apj', left, s_plus)
        sadi_lie = np.einsum('bi,bcj->ijc', s_plus, br) + np.einsum('bj,bci->ijc', s_plus, br)
        sadi_assoc = np.einsum('bi,bcj->ijc', s_plus, pr) - np.einsum('bj,bci->ijc', s_plus, pr)
        operator_ok = is_zero(adi_lie) and is_zero(adi_assoc)
        symmetric_ok = is_zero(sadi_lie) and is_zero(sadi_assoc)
        report.flags["operator_form"] = operator_ok
        report.flags["symmetric_form"] = symmetric_ok
        report.flags["characterizations_agree"] = tensor_ok == operator_ok == symmetric_ok
    return report


# ============================================================================
# CLASSIFICATION
# ============================================================================

def cbd_conditions(a: AlgebraSpec, r: RMatrixData) -> Tuple[Dict[str, bool], np.ndarray, np.ndarray]:
    """The five conditions under which (delta_r, Delta_r) is a Poisson bialgebra."""
    s, _ = r.parts()
    lie_s, assoc_s = invariance_tables(a, s.entries)
    c, assoc = yb_residuals(a, r)
    ad, left = ad_operators(a), left_operators(a)
    cond3 = act_on_slot(ad, c, 0) + act_on_slot(ad, c, 1) + act_on_slot(ad, c, 2)
    cond4 = act_on_slot(left, assoc, 0) - act_on_slot(left, assoc, 2)
    cond5 = act_on_slot(ad, assoc, 0) - act_on_slot(left, c, 1) + act_on_slot(left, c, 2)
    conditions = {
        "s_ad_invariant": is_zero(lie_s),
        "s_L_invariant": is_zero(assoc_s),
        "c_ad_invariant": is_zero(cond3),
        "a_L_balanced": is_zero(cond4),
        "mixed_balanced": is_zero(cond5),
    }
    return conditions, c, assoc


def _evaluate(a: AlgebraSpec, r: RMatrixData) -> Tuple[RLabel, Dict[str, bool], Dict[str, bool], int, np.ndarray, np.ndarray]:
    conditions, c, assoc = cbd_conditions(a, r)
    s, lam = r.parts()
    rank_s = rank(s.entries)
    pybe = is_zero(c) and is_zero(assoc)
    s_invariant = conditions["s_ad_invariant"] and conditions["s_L_invariant"]
    flags = {
        "pybe": pybe,
        "s_invariant": s_invariant,
        "antisymmetric": r.r.is_antisymmetric(),
        "s_nondegenerate": rank_s == a.dim,
    }
    if pybe and s_invariant:
        if flags["antisymmetric"]:
            label = RLabel.TRIANGULAR
        elif flags["s_nondegenerate"]:
            label = RLabel.FACTORIZABLE
        else:
            label = RLabel.QUASI_TRIANGULAR
    elif all(conditions.values()):
        label = RLabel.COBOUNDARY_ONLY
    else:
        label = RLabel.NOT_SOLUTION
    return label, conditions, flags, rank_s, c, assoc


def classify_r(a: AlgebraSpec, r: RMatrixData) -> Classification:
    """
    Strongest label of r with the five coboundary conditions, the
    Yang-Baxter residuals and the tau(r) cross-check attached.
    """
    if r.dim != a.dim:
        raise DimMismatch(f"r of dimension {r.dim} on algebra of dimension {a.dim}")
    label, conditions, flags, rank_s, c, assoc = _evaluate(a, r)
    tau_label = _evaluate(a, r.flip())[0]
    if label.is_quasi_triangular() or tau_label.is_quasi_triangular():
        flags["tau_consistent"] = label == tau_label
    else:
        flags["tau_consistent"] = True
    logger.info(f"classify_r dim={a.dim} label={label.value}")
    return Classification(label, conditions, flags, rank_s, c, assoc)


# ============================================================================
# DUAL STRUCTURES AND HOMOMORPHISMS
# ============================================================================

def dual_structure_constants(a: AlgebraSpec, r: RMatrixData) -> AlgebraSpec:
    """
    [x*, y*]_r = -ad*(r+ x*) y* + ad*(r- y*) x* and
    x* ._r y* = L*(r+ x*) y* + L*(r- y*) x* on the dual basis.
    """
    rp, rm = r.r_plus, r.r_minus
    br, pr = a.bracket, a.product
    bracket = -np.einsum('bi,bcj->ijc', rp, br) + np.einsum('aj,aci->ijc', rm, br)
    product = np.einsum('bi,bcj->ijc', rp, pr) + np.einsum('aj,aci->ijc', rm, pr)
    names = tuple(f"{name}*" for name in a.basis_names)
    return AlgebraSpec(normalize(bracket), normalize(product), names)


def homomorphism_residuals(a: AlgebraSpec, r: RMatrixData) -> Dict[str, np.ndarray]:
    """r+ and r- against the dual bracket and product, per dual basis pair."""
    dual = dual_structure_constants(a, r)
    out = {}
    for tag, m in (("r_plus", r.r_plus), ("r_minus", r.r_minus)):
        out[f"{tag}.bracket"] = apply_last(m, dual.bracket) - bilinear_table(a.bracket, m, m)
        out[f"{tag}.product"] = apply_last(m, dual.product) - bilinear_table(a.product, m, m)
    return out


def dual_products_and_homs(a: AlgebraSpec, r: RMatrixData) -> Tuple[AlgebraSpec, Report]:
    """
    The dual algebra (A*, [,]_r, ._r) and the homomorphism report.

    Raises:
        NotInvariant: if the symmetric part of r is not (ad, L)-invariant
    """
    s, _ = r.parts()
    audit = adl_invariance_audit(a, s)
    if not audit.passed:
        logger.warning("dual_products_and_homs: symmetric part is not (ad, L)-invariant")
        raise NotInvariant(audit, details="symmetric part of r")
    dual = dual_structure_constants(a, r)
    report = Report(name="dual_homomorphisms")
    residuals = homomorphism_residuals(a, r)
    for key, residual in residuals.items():
        report.flags[key] = is_zero(residual)
    r_plus_hom = report.flags["r_plus.bracket"] and report.flags["r_plus.product"]
    r_minus_hom = report.flags["r_minus.bracket"] and report.flags["r_minus.product"]
    dual_poisson = check_poisson(dual).passed
    pybe = solves_pybe(a, r)
    report.flags.update({
        "r_plus_hom": r_plus_hom,
        "r_minus_hom": r_minus_hom,
        "dual_poisson": dual_poisson,
        "pybe": pybe,
    })
    report.require("equivalence", pybe == (dual_poisson and r_plus_hom and r_minus_hom))
    return dual, report


def yang_baxter_agreement(a: AlgebraSpec, r: RMatrixData) -> Report:
    """
    PYBE for r and for tau(r) against the operator identities

        [r+ x*, r+ y*] = r+([x*, y*]_r),  r+ x* . r+ y* = r+(x* ._r y*)

    and their analogues with r+ and r- exchanged. No invariance of the
    symmetric part is assumed; the four verdicts must coincide.
    """
    if r.dim != a.dim:
        raise DimMismatch(f"r of dimension {r.dim} on algebra of dimension {a.dim}")
    # -tau(r) has r+ and r- exchanged
    exchanged = RMatrixData(TwoTensor(normalize(-r.entries.T)))
    verdicts = {}
    for tag, candidate in (("r_plus_identities", r), ("r_minus_identities", exchanged)):
        residuals = homomorphism_residuals(a, candidate)
        verdicts[tag] = is_zero(residuals["r_plus.bracket"]) and is_zero(residuals["r_plus.product"])
    report = Report(name="yang_baxter_agreement")
    report.flags["pybe"] = solves_pybe(a, r)
    report.flags["pybe_tau"] = solves_pybe(a, r.flip())
    report.flags.update(verdicts)
    report.require("agreement", len(set(report.flags.values())) == 1)
    return report


def modified_rb_identities(a: AlgebraSpec, b: BilinearFormData, r: RMatrixData) -> Report:
    """
    Identities for P = r+ . I_B^-1:

        [Pa, Pb] = P([Pa, b] + [a, Pb] - [a, I_r I_B^-1 b])

    and the same shape for the product, compared against the PYBE residuals.
    """
    quadratic = check_quadratic(a, b)
    if not quadratic.passed:
        raise NotInvariant(quadratic, details="bilinear form")
    matrix_inverse(b.b)  # SingularMatrix on a degenerate form
    i_b_inv = b.b.T
    p = r.r_plus @ i_b_inv
    correction = r.i_r @ i_b_inv
    eye = identity(a.dim)
    report = Report(name="modified_rb")
    holds = True
    for tag, t in (("bracket", a.bracket), ("product", a.product)):
        inside = bilinear_table(t, p, eye) + bilinear_table(t, eye, p) - bilinear_table(t, eye, correction)
        residual = bilinear_table(t, p, p) - apply_last(p, inside)
        holds = record_residual(report, f"{tag}_identity", residual, 2) and holds
    pybe = solves_pybe(a, r)
    report.flags["identities_hold"] = holds
    report.flags["pybe"] = pybe
    report.require("equivalence", holds == pybe)
    return report


# ============================================================================
# FACTORIZATION AND THE DOUBLE
# ============================================================================

def split_vector(r: RMatrixData, x: Vector) -> Tuple[Vector, Vector]:
    """(r+ I_r^-1 x, r- I_r^-1 x); requires I_r invertible."""
    pre = matrix_inverse(r.i_r) @ x
    return normalize(r.r_plus @ pre), normalize(r.r_minus @ pre)


def factorize(a: AlgebraSpec, r: RMatrixData, x: Vector) -> Tuple[Vector, Vector]:
    """
    Unique decomposition x = x+ - x- with (x+, x-) in Im(r+ (+) r-).

    Raises:
        NotFactorizable: unless classify_r labels r Factorizable
    """
    cls = classify_r(a, r)
    if cls.label != RLabel.FACTORIZABLE:
        raise NotFactorizable(cls.label.value)
    return split_vector(r, x)


def canonical_r(n: int) -> RMatrixData:
    """r = sum_i e_i (x) e_i* on a space with basis (e, e*)."""
    entries = np.zeros((2 * n, 2 * n), dtype=object)
    entries[...] = 0
    for i in range(n):
        entries[i, n + i] = 1
    return RMatrixData(TwoTensor(normalize(entries)))


def drinfeld_double(b: BialgebraSpec) -> Tuple[AlgebraSpec, RMatrixData, Classification]:
    """
    The double A (+) A* with basis (e_0 .. e_{n-1}, e_0* .. e_{n-1}*).

    Raises:
        InvalidBialgebra: if b fails check_poisson_bialgebra
    """
    report = check_poisson_bialgebra(b)
    if not report.passed:
        logger.warning(f"drinfeld_double: input fails {report.total_violations} bialgebra identities")
        raise InvalidBialgebra(report)
    n = b.dim
    br, pr = b.alg.bracket, b.alg.product
    d, g = b.cobracket, b.coproduct
    bracket = np.zeros((2 * n,) * 3, dtype=object)
    product = np.zeros((2 * n,) * 3, dtype=object)

    bracket[:n, :n, :n] = br
    bracket[:n, n:, :n] = d
    bracket[:n, n:, n:] = -np.transpose(br, (0, 2, 1))
    bracket[n:, :n, :] = -np.transpose(bracket[:n, n:, :], (1, 0, 2))
    bracket[n:, n:, n:] = np.transpose(d, (1, 2, 0))

    product[:n, :n, :n] = pr
    product[:n, n:, :n] = g
    product[:n, n:, n:] = np.transpose(pr, (0, 2, 1))
    product[n:, :n, :] = np.transpose(product[:n, n:, :], (1, 0, 2))
    product[n:, n:, n:] = np.transpose(g, (1, 2, 0))

    names = tuple(b.alg.basis_names) + tuple(f"{name}*" for name in b.alg.basis_names)
    double = AlgebraSpec(normalize(bracket), normalize(product), names)
    r_canon = canonical_r(n)
    cls = classify_r(double, r_canon)
    logger.info(f"drinfeld_double dim={2 * n} label={cls.label.value}")
    return double, r_canon, cls


def same_bialgebra(x: BialgebraSpec, y: BialgebraSpec) -> bool:
    return (x.alg.same_structure(y.alg)
            and exactly_equal(x.cobracket, y.cobracket)
            and exactly_equal(x.coproduct, y.coproduct))
