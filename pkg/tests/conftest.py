"""
Configuración de tests para Incidence-Salem.
"""

import sys
from pathlib import Path

import pytest

# Add src to Python path for testing
src_path = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(src_path))

from incidence_salem.incidence import build_incidence  # noqa: E402
from incidence_salem.rings import GF, Mat, Trunc, ZMod, build_ring, field_spec  # noqa: E402


@pytest.fixture(scope="session")
def gf2():
    return build_ring(GF(2))


@pytest.fixture(scope="session")
def gf3():
    return build_ring(GF(3))


@pytest.fixture(scope="session")
def gf4():
    return build_ring(field_spec(4))


@pytest.fixture(scope="session")
def zmod4():
    return build_ring(ZMod(4))


@pytest.fixture(scope="session")
def zmod9():
    return build_ring(ZMod(9))


@pytest.fixture(scope="session")
def trunc2():
    """F_2[e]/(e^2)."""
    return build_ring(Trunc(GF(2), 2))


@pytest.fixture(scope="session")
def mat2():
    """M_2(F_2)."""
    return build_ring(Mat(2, GF(2)))


@pytest.fixture(scope="session")
def gf3_operator(gf3):
    return build_incidence(gf3, 2, gf3.one)


@pytest.fixture(scope="session")
def zmod4_operator(zmod4):
    return build_incidence(zmod4, 2, zmod4.one)


@pytest.fixture(scope="session")
def mat2_operator(mat2):
    return build_incidence(mat2, 2, mat2.one)


@pytest.fixture
def cache_dir(tmp_path):
    """Directorio de caché aislado por test."""
    path = tmp_path / "cache"
    path.mkdir()
    return path
