"""
Poisson algebras from structure constants

Holds the AlgebraSpec / Representation / BilinearFormData value types and the
axiom checks for Poisson algebras, their representations, semidirect
products, multiplication operators and invariant bilinear forms.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from config import config
from models.report_schema import Report
from modules.exact_linear import (
    Matrix,
    Tensor3,
    Vector,
    contract_bilinear,
    exactly_equal,
    freeze,
    is_zero,
    nonzero_sites,
    normalize,
    rank,
    rational_array,
    zeros,
)
from utils.error_handler import DimMismatch, InvalidAlgebra, InvalidRepresentation

logger = logging.getLogger(__name__)


# ============================================================================
# VALUE TYPES
# ============================================================================

@dataclass(frozen=True)
class AlgebraSpec:
    """A bracket and a product on span(e_0 .. e_{n-1}), as raw structure constants."""
    bracket: Tensor3
    product: Tensor3
    basis_names: Tuple[str, ...] = ()
    commutative: bool = True

    def __post_init__(self):
        n = self.bracket.shape[0]
        for name, t in (("bracket", self.bracket), ("product", self.product)):
            if t.shape != (n, n, n):
                raise DimMismatch(f"{name} has shape {t.shape}, expected {(n, n, n)}")
        if n > 2 * config.MAX_DIM:
            raise DimMismatch(f"dimension {n} exceeds limit {2 * config.MAX_DIM}")
        if not self.basis_names:
            object.__setattr__(self, "basis_names", tuple(f"e{i}" for i in range(n)))
        elif len(self.basis_names) != n:
            raise DimMismatch(f"{len(self.basis_names)} basis names for dimension {n}")

    @classmethod
    def from_entries(cls, n: int, bracket=(), product=(), **kwargs) -> "AlgebraSpec":
        """
        Build from sparse (i, j, k, value) entries.

        Bracket entries are taken literally; use ``antisymmetric_entries`` to
        list [e_i, e_j] once.
        """
        return cls(bracket=_dense3(n, bracket), product=_dense3(n, product), **kwargs)

    @classmethod
    def zero(cls, n: int) -> "AlgebraSpec":
        return cls(bracket=zeros(n, n, n), product=zeros(n, n, n))

    @property
    def dim(self) -> int:
        return self.bracket.shape[0]

    def bracket_of(self, u: Vector, v: Vector) -> Vector:
        return contract_bilinear(self.bracket, u, v)

    def product_of(self, u: Vector, v: Vector) -> Vector:
        return contract_bilinear(self.product, u, v)

    def same_structure(self, other: "AlgebraSpec") -> bool:
        return exactly_equal(self.bracket, other.bracket) and exactly_equal(self.product, other.product)


def _dense3(n: int, entries) -> Tensor3:
    t = np.zeros((n, n, n), dtype=object)
    t[...] = 0
    for i, j, k, value in entries:
        t[i, j, k] = t[i, j, k] + rational_array([value])[0]
    return normalize(t)


def antisymmetric_entries(entries):
    """Expand [e_i, e_j] = c e_k entries with their [e_j, e_i] = -c e_k partners."""
    expanded = []
    for i, j, k, value in entries:
        expanded.append((i, j, k, value))
        expanded.append((j, i, k, -rational_array([value])[0]))
    return expanded


def symmetric_entries(entries):
    """Expand e_i . e_j = c e_k entries with their e_j . e_i partners (i != j)."""
    expanded = []
    for i, j, k, value in entries:
        expanded.append((i, j, k, value))
        if i != j:
            expanded.append((j, i, k, value))
    return expanded


@dataclass(frozen=True)
class Representation:
    """rho[a], mu[a]: dimV x dimV matrices of rho(e_a), mu(e_a)."""
    rho: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        if self.rho.shape != self.mu.shape or self.rho.ndim != 3 or self.rho.shape[1] != self.rho.shape[2]:
            raise DimMismatch(f"rho {self.rho.shape} and mu {self.mu.shape} must both be (n, d, d)")

    @property
    def dim_v(self) -> int:
        return self.rho.shape[1]

    @classmethod
    def zero(cls, n: int, dim_v: int) -> "Representation":
        return cls(zeros(n, dim_v, dim_v), zeros(n, dim_v, dim_v))


@dataclass(frozen=True)
class BilinearFormData:
    """B(e_i, e_j) = b[i, j]."""
    b: Matrix
    label: str = field(default="B", compare=False)

    @property
    def dim(self) -> int:
        return self.b.shape[0]

    @property
    def symmetric(self) -> bool:
        return exactly_equal(self.b, self.b.T)

    @property
    def nondegenerate(self) -> bool:
        return rank(self.b) == self.dim

    def sharp(self) -> Matrix:
        """Matrix of B#: A -> A*, <B#(a), b> = B(a, b)."""
        return freeze(self.b.T.copy())


# ============================================================================
# OPERATOR TABLES
# ============================================================================

def ad_operators(a: AlgebraSpec) -> np.ndarray:
    """Stack of ad(e_i) matrices: result[i][k, j] = bracket[i, j, k]."""
    return np.transpose(a.bracket, (0, 2, 1))


def left_operators(a: AlgebraSpec) -> np.ndarray:
    """Stack of L(e_i) matrices."""
    return np.transpose(a.product, (0, 2, 1))


def right_operators(a: AlgebraSpec) -> np.ndarray:
    """Stack of R(e_i) matrices: result[i][k, j] = product[j, i, k]."""
    return np.transpose(a.product, (1, 2, 0))


def multiplication_operators(a: AlgebraSpec, x: Vector) -> Tuple[Matrix, Matrix, Matrix]:
    """
    Matrices of ad(x), L(x) and R(x).

    Args:
        a: The algebra
        x: Coordinates of x

    Returns:
        (ad, L, R) with ad(x) v = [x, v], L(x) v = x.v, R(x) v = v.x
    """
    if x.shape != (a.dim,):
        raise DimMismatch(f"vector of shape {x.shape} in dimension {a.dim}")
    ad = normalize(np.einsum('i,ijk->kj', x, a.bracket))
    left = normalize(np.einsum('i,ijk->kj', x, a.product))
    right = normalize(np.einsum('i,jik->kj', x, a.product))
    return ad, left, right


def record_residual(report: Report, identity: str, residual: np.ndarray, lead_axes: int) -> bool:
    """Add one violation per nonzero residual slice; True when all vanish."""
    clean = True
    for indices, chunk in nonzero_sites(residual, lead_axes):
        report.add_violation(identity, indices, chunk)
        clean = False
    return clean


# ============================================================================
# POISSON AXIOMS
# ============================================================================

def jacobi_residual(a: AlgebraSpec) -> np.ndarray:
    br = a.bracket
    return (np.einsum('bck,akm->abcm', br, br)
            + np.einsum('cak,bkm->abcm', br, br)
            + np.einsum('abk,ckm->abcm', br, br))


def associativity_residual(product: Tensor3) -> np.ndarray:
    return np.einsum('abk,kcm->abcm', product, product) - np.einsum('bck,akm->abcm', product, product)


def leibniz_residual(a: AlgebraSpec) -> np.ndarray:
    """[a, b.c] - [a, b].c - b.[a, c] over all basis triples."""
    br, pr = a.bracket, a.product
    return (np.einsum('bck,akm->abcm', pr, br)
            - np.einsum('abk,kcm->abcm', br, pr)
            - np.einsum('ack,bkm->abcm', br, pr))


def leibniz_at(a: AlgebraSpec, x: Vector, y: Vector, z: Vector) -> Vector:
    """Leibniz residual [x, y.z] - [x, y].z - y.[x, z] for arbitrary vectors."""
    return (a.bracket_of(x, a.product_of(y, z))
            - a.product_of(a.bracket_of(x, y), z)
            - a.product_of(y, a.bracket_of(x, z)))


def check_poisson(a: AlgebraSpec, name: str = "poisson") -> Report:
    """
    Check every Poisson algebra axiom on basis elements.

    Raw constants are not trusted: antisymmetry of the bracket and
    commutativity of the product are checked like the other identities.
    """
    report = Report(name=name)
    br, pr = a.bracket, a.product
    record_residual(report, "antisymmetry", br + np.transpose(br, (1, 0, 2)), 2)
    record_residual(report, "jacobi", jacobi_residual(a), 3)
    record_residual(report, "commutativity", pr - np.transpose(pr, (1, 0, 2)), 2)
    record_residual(report, "associativity", associativity_residual(pr), 3)
    record_residual(report, "leibniz", leibniz_residual(a), 3)
    logger.debug(f"check_poisson dim={a.dim} violations={report.total_violations}")
    return report


def require_poisson(a: AlgebraSpec, context: str) -> None:
    report = check_poisson(a)
    if not report.passed:
        logger.warning(f"{context}: input is not a Poisson algebra ({report.total_violations} violations)")
        raise InvalidAlgebra(report)


# ============================================================================
# REPRESENTATIONS
# ============================================================================

def check_representation(a: AlgebraSpec, v: Representation) -> Report:
    """
    Check that (rho, mu) is a representation of the Poisson algebra.

    Raises:
        InvalidAlgebra: if ``a`` is not a Poisson algebra
    """
    require_poisson(a, "check_representation")
    if v.rho.shape[0] != a.dim:
        raise DimMismatch(f"representation has {v.rho.shape[0]} operators for dimension {a.dim}")
    report = Report(name="representation")
    rho, mu, br, pr = v.rho, v.mu, a.bracket, a.product

    lie = (np.einsum('abk,kpq->abpq', br, rho)
           - np.einsum('apr,brq->abpq', rho, rho)
           + np.einsum('bpr,arq->abpq', rho, rho))
    assoc = np.einsum('abk,kpq->abpq', pr, mu) - np.einsum('apr,brq->abpq', mu, mu)
    rho_of_product = (np.einsum('abk,kpq->abpq', pr, rho)
                      - np.einsum('bpr,arq->abpq', mu, rho)
                      - np.einsum('apr,brq->abpq', mu, rho))
    mu_of_bracket = (np.einsum('abk,kpq->abpq', br, mu)
                     - np.einsum('apr,brq->abpq', rho, mu)
                     + np.einsum('bpr,arq->abpq', mu, rho))

    record_residual(report, "rho_lie", lie, 2)
    record_residual(report, "mu_associative", assoc, 2)
    record_residual(report, "rho_of_product", rho_of_product, 2)
    record_residual(report, "mu_of_bracket", mu_of_bracket, 2)
    return report


def coadjoint_rep(a: AlgebraSpec) -> Representation:
    """(rho, mu) = (-ad*, L*), matrices -ad(e_i)^T and L(e_i)^T."""
    require_poisson(a, "coadjoint_rep")
    rho = normalize(-np.transpose(ad_operators(a), (0, 2, 1)))
    mu = normalize(np.transpose(left_operators(a), (0, 2, 1)))
    return Representation(rho, mu)


def adjoint_rep(a: AlgebraSpec) -> Representation:
    return Representation(normalize(ad_operators(a)), normalize(left_operators(a)))


def semidirect_product(a: AlgebraSpec, v: Representation) -> AlgebraSpec:
    """
    The semidirect product A x V with basis (e_0 .. e_{n-1}, v_0 .. v_{d-1}).

    Raises:
        InvalidRepresentation: if (rho, mu) fails check_representation
    """
    report = check_representation(a, v)
    if not report.passed:
        logger.warning(f"semidirect_product: representation fails {report.total_violations} identities")
        raise InvalidRepresentation(report)
    n, d = a.dim, v.dim_v
    total = n + d
    br = np.zeros((total, total, total), dtype=object)
    pr = np.zeros((total, total, total), dtype=object)
    br[:n, :n, :n] = a.bracket
    pr[:n, :n, :n] = a.product
    # (e_i, v_p) -> rho(e_i) v_p, read off column p
    action_rho = np.transpose(v.rho, (0, 2, 1))
    action_mu = np.transpose(v.mu, (0, 2, 1))
    br[:n, n:, n:] = action_rho
    br[n:, :n, n:] = -np.transpose(action_rho, (1, 0, 2))
    pr[:n, n:, n:] = action_mu
    pr[n:, :n, n:] = np.transpose(action_mu, (1, 0, 2))
    names = tuple(a.basis_names) + tuple(f"v{p}" for p in range(d))
    logger.info(f"semidirect_product built dimension {total}")
    return AlgebraSpec(normalize(br), normalize(pr), names)


# ============================================================================
# INVARIANT BILINEAR FORMS
# ============================================================================

def invariance_residuals(a: AlgebraSpec, b: Matrix) -> Tuple[np.ndarray, np.ndarray]:
    """B([x,y],z) - B(x,[y,z]) and B(x.y,z) - B(x,y.z) on basis triples."""
    br, pr = a.bracket, a.product
    lie = np.einsum('abk,kc->abc', br, b) - np.einsum('ak,bck->abc', b, br)
    assoc = np.einsum('abk,kc->abc', pr, b) - np.einsum('ak,bck->abc', b, pr)
    return lie, assoc


def intertwining_residuals(a: AlgebraSpec, i: Matrix) -> Tuple[np.ndarray, np.ndarray]:
    """i ad(x) + ad(x)^T i and i L(x) - L(x)^T i for every basis x."""
    ad, left = ad_operators(a), left_operators(a)
    lie = np.einsum('pq,xqj->xpj', i, ad) + np.einsum('xqp,qj->xpj', ad, i)
    assoc = np.einsum('pq,xqj->xpj', i, left) - np.einsum('xqp,qj->xpj', left, i)
    return lie, assoc


def check_quadratic(a: AlgebraSpec, f: BilinearFormData) -> Report:
    """Symmetric, nondegenerate and invariant for both operations."""
    if f.dim != a.dim:
        raise DimMismatch(f"form of dimension {f.dim} on algebra of dimension {a.dim}")
    report = Report(name="quadratic")
    report.require("symmetric", f.symmetric)
    report.require("nondegenerate", f.nondegenerate)
    lie, assoc = invariance_residuals(a, f.b)
    record_residual(report, "bracket_invariance", lie, 3)
    record_residual(report, "product_invariance", assoc, 3)
    lie_i, assoc_i = intertwining_residuals(a, f.sharp())
    report.flags["bsharp_intertwines"] = is_zero(lie_i) and is_zero(assoc_i)
    return report


def bsharp_iso_check(a: AlgebraSpec, i: Matrix) -> Report:
    """
    Check that i: A -> A* intertwines (ad, L) with (-ad*, L*) and is invertible.

    The converse direction builds B(x, y) = <i(x), y> and records whether
    that form is nondegenerate and invariant.
    """
    if i.shape != (a.dim, a.dim):
        raise DimMismatch(f"intertwiner of shape {i.shape} in dimension {a.dim}")
    report = Report(name="bsharp_iso")
    lie, assoc = intertwining_residuals(a, i)
    record_residual(report, "intertwines_ad", lie, 1)
    record_residual(report, "intertwines_L", assoc, 1)
    report.require("invertible", rank(i) == a.dim)

    form = freeze(i.T.copy())
    lie_b, assoc_b = invariance_residuals(a, form)
    report.flags["converse_nondegenerate"] = rank(form) == a.dim
    report.flags["converse_invariant"] = is_zero(lie_b) and is_zero(assoc_b)
    return report


def random_vector(rng, n: int) -> Vector:
    """Random rational vector for multilinearity and factorization tests."""
    values = [f"{rng.integers(-config.RANDOM_ENTRY_RANGE, config.RANDOM_ENTRY_RANGE + 1)}"
              f"/{rng.choice(config.RANDOM_DENOMINATORS)}" for _ in range(n)]
    return rational_array(values)


def direct_sum(a: AlgebraSpec, b: AlgebraSpec) -> AlgebraSpec:
    """Direct sum of two algebras, basis of ``a`` first."""
    n, m = a.dim, b.dim
    br = np.zeros((n + m,) * 3, dtype=object)
    pr = np.zeros((n + m,) * 3, dtype=object)
    br[:n, :n, :n], pr[:n, :n, :n] = a.bracket, a.product
    br[n:, n:, n:], pr[n:, n:, n:] = b.bracket, b.product
    names = tuple(a.basis_names) + tuple(f"{name}'" for name in b.basis_names)
    return AlgebraSpec(normalize(br), normalize(pr), names)


def homomorphism_report(source: AlgebraSpec, target: AlgebraSpec, m: Matrix, name: str = "homomorphism") -> Report:
    """m(op_source(x, y)) = op_target(m x, m y) for both operations on basis pairs."""
    if m.shape != (target.dim, source.dim):
        raise DimMismatch(f"map of shape {m.shape} from dimension {source.dim} to {target.dim}")
    report = Report(name=name)
    for tag, s, t in (("bracket", source.bracket, target.bracket), ("product", source.product, target.product)):
        residual = np.einsum('km,ijm->ijk', m, s) - np.einsum('pi,qj,pqk->ijk', m, m, t)
        record_residual(report, tag, residual, 2)
    return report
