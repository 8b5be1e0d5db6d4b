from pathlib import Path

import pytest

from uageo.algebra.core import direct_product
from uageo.algebra.loader import load_algebra
from uageo.algebra.model import FiniteAlgebra
from uageo.representation.loader import load_group, load_representation
from uageo.representation.model import FiniteGroup, FiniteRepresentation

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_fixture_algebra(name: str) -> FiniteAlgebra:
    path = fixture_path(name)
    return load_algebra(path.read_text(), str(path))


def load_fixture_rep(name: str) -> FiniteRepresentation:
    path = fixture_path(name)
    return load_representation(path.read_text(), str(path))


@pytest.fixture(scope="session")
def c2() -> FiniteAlgebra:
    return load_fixture_algebra("C2.alg")


@pytest.fixture(scope="session")
def c3() -> FiniteAlgebra:
    return load_fixture_algebra("C3.alg")


@pytest.fixture(scope="session")
def m2() -> FiniteAlgebra:
    return load_fixture_algebra("M2.alg")


@pytest.fixture(scope="session")
def c2_squared(c2: FiniteAlgebra) -> FiniteAlgebra:
    return direct_product([c2, c2])


@pytest.fixture(scope="session")
def algebras(c2, c3, m2) -> dict[str, FiniteAlgebra]:
    return {"C2": c2, "C3": c3, "M2": m2}


@pytest.fixture(scope="session")
def sign_rep() -> FiniteRepresentation:
    return load_fixture_rep("C2sign.rep")


@pytest.fixture(scope="session")
def regular_rep3() -> FiniteRepresentation:
    return load_fixture_rep("C2reg3.rep")


@pytest.fixture(scope="session")
def regular_rep2() -> FiniteRepresentation:
    return load_fixture_rep("C2reg2.rep")


@pytest.fixture(scope="session")
def cyclic2() -> FiniteGroup:
    return load_group(fixture_path("C2.grp").read_text())


@pytest.fixture(scope="session")
def fixtures() -> Path:
    return FIXTURES
