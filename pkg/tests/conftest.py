# tests/conftest.py
"""Shared test fixtures for all tests, layered on tmp_path."""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Callable

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from config import config
from modules.bialgebra_yb import BialgebraSpec, RMatrixData
from modules.diff_asi import DiffASIBialgebra, DiffAlgebra, diff_drinfeld_double
from modules.exact_linear import rational_array
from modules.poisson_core import AlgebraSpec, BilinearFormData, antisymmetric_entries, symmetric_entries
from modules.rota_baxter import RotaBaxterData


def diag(*values) -> np.ndarray:
    return rational_array(np.diag(values).astype(int).tolist())


# ============================================================================
# BASE FIXTURES: Poisson algebras (pure, no I/O)
# ============================================================================

@pytest.fixture
def abelian2() -> AlgebraSpec:
    """2-dim space with zero bracket and zero product."""
    return AlgebraSpec.zero(2)


@pytest.fixture
def p2() -> AlgebraSpec:
    """[e0, e1] = e1, zero product."""
    return AlgebraSpec.from_entries(2, bracket=antisymmetric_entries([(0, 1, 1, 1)]))


@pytest.fixture
def p3() -> AlgebraSpec:
    """1-dim idempotent algebra e.e = e."""
    return AlgebraSpec.from_entries(1, product=[(0, 0, 0, 1)])


@pytest.fixture
def heisenberg() -> AlgebraSpec:
    """[e0, e1] = e2, zero product."""
    return AlgebraSpec.from_entries(3, bracket=antisymmetric_entries([(0, 1, 2, 1)]))


@pytest.fixture
def dual_numbers() -> AlgebraSpec:
    """Q[v]/(v^2) with unit e, basis (e, v), zero bracket."""
    return AlgebraSpec.from_entries(
        2, product=symmetric_entries([(0, 0, 0, 1), (0, 1, 1, 1)]), basis_names=("e", "v"))


@pytest.fixture
def broken_jacobi() -> AlgebraSpec:
    """[e0, e1] = e0, [e0, e2] = e1: antisymmetric but not Lie."""
    return AlgebraSpec.from_entries(3, bracket=antisymmetric_entries([(0, 1, 0, 1), (0, 2, 1, 1)]))


@pytest.fixture
def poisson_fixtures(abelian2, p2, p3, heisenberg, dual_numbers) -> list[AlgebraSpec]:
    """Every valid Poisson algebra fixture."""
    return [abelian2, p2, p3, heisenberg, dual_numbers]


# ============================================================================
# LAYER 2: r-matrices, forms and Rota-Baxter data built on the algebras
# ============================================================================

@pytest.fixture
def pairing_form() -> BilinearFormData:
    """B(e, v) = B(v, e) = 1 on the dual numbers."""
    return BilinearFormData(rational_array([[0, 1], [1, 0]]))


@pytest.fixture
def factorizable_r() -> RMatrixData:
    """r = v (x) e on the dual numbers."""
    return RMatrixData.from_entries([[0, 0], [1, 0]])


@pytest.fixture
def dual_numbers_qrb(pairing_form) -> RotaBaxterData:
    """P = diag(1, 0) of weight -1 with the pairing form."""
    return RotaBaxterData(diag(1, 0), -1, pairing_form)


@pytest.fixture
def zero_bialgebra_p2(p2) -> BialgebraSpec:
    return BialgebraSpec.zero(p2)


# ============================================================================
# LAYER 3: differential algebras and differential ASI bialgebras
# ============================================================================

SQUARE_ZERO_PRODUCT = symmetric_entries([
    (0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1), (0, 3, 3, 1), (1, 2, 3, 1),
])


@pytest.fixture
def square_zero_xy() -> DiffAlgebra:
    """Q[x,y]/(x^2, y^2), basis (1, x, y, xy), Euler derivations x d/dx and y d/dy."""
    alg = AlgebraSpec.from_entries(4, product=SQUARE_ZERO_PRODUCT, basis_names=("1", "x", "y", "xy"))
    return DiffAlgebra(alg, (diag(0, 1, 0, 1), diag(0, 0, 1, 1)))


@pytest.fixture
def degree3_xy() -> DiffAlgebra:
    """Q[x,y] truncated at degree 3, basis (1, x, y, x^2, xy, y^2), Euler derivations."""
    product = symmetric_entries(
        [(0, k, k, 1) for k in range(6)] + [(1, 1, 3, 1), (1, 2, 4, 1), (2, 2, 5, 1)])
    alg = AlgebraSpec.from_entries(6, product=product, basis_names=("1", "x", "y", "xx", "xy", "yy"))
    return DiffAlgebra(alg, (diag(0, 1, 0, 2, 1, 0), diag(0, 0, 1, 0, 1, 2)))


@pytest.fixture
def square_zero_asi(square_zero_xy) -> DiffASIBialgebra:
    """Zero coproduct with coderivations psi = -phi."""
    return DiffASIBialgebra.zero_coproduct(square_zero_xy, tuple(-m for m in square_zero_xy.phi))


@pytest.fixture
def square_zero_double(square_zero_asi):
    """(double, canonical r) of the square-zero differential ASI bialgebra."""
    return diff_drinfeld_double(square_zero_asi)


@pytest.fixture
def dual_numbers_diff() -> DiffAlgebra:
    """Dual numbers with the derivation v -> v."""
    alg = AlgebraSpec.from_entries(
        2, product=symmetric_entries([(0, 0, 0, 1), (0, 1, 1, 1)]), basis_names=("e", "v"))
    return DiffAlgebra(alg, (diag(0, 1),))


# ============================================================================
# LAYER 4: File fixtures (prefer built-in tmp_path for temp dirs)
# ============================================================================

@pytest.fixture
def specs_dir() -> Path:
    """Curated example specs shipped with the repository."""
    return config.SPECS_DIR


@pytest.fixture
def write_spec(tmp_path: Path) -> Callable[[str, str], Path]:
    """Factory writing spec text into tmp_path."""
    def _write(text: str, name: str = "spec.pbx") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(config.RANDOM_SEED)
