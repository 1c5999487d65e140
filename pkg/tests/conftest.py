import pathlib

import pytest

from tropcong.trop_core import ToricContext, parse_poly
from tropcong.congruence import CongruencePresentation, PrimeMatrix

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def ctx2():
    return ToricContext.affine(2)


@pytest.fixture(scope="session")
def ctx1():
    return ToricContext.affine(1)


@pytest.fixture(scope="session")
def ctx3():
    return ToricContext.affine(3)


@pytest.fixture(scope="session")
def ctxB():
    return ToricContext.affine(3, coeff="B")


@pytest.fixture(scope="session")
def quartic(ctx2):
    return parse_poly(ctx2, "x^2 + t^1*x*y + y^2 + x^2*y^2")


@pytest.fixture(scope="session")
def quartic_E(quartic):
    return CongruencePresentation.bend_of(quartic)


@pytest.fixture(scope="session")
def quartic_P(ctx2):
    return PrimeMatrix.from_extended_matrix(ctx2, [["1", None, None]])


@pytest.fixture(scope="session")
def quartic_Q(ctx2):
    return PrimeMatrix.from_extended_matrix(ctx2, [["0", "-1", "-1"], ["1", "0", "-1"]])


@pytest.fixture(scope="session")
def boolean_E(ctxB):
    f = parse_poly(ctxB, "x + x^2*y^2 + z^3")
    g = parse_poly(ctxB, "x^2*z + x^2 + y")
    return CongruencePresentation.make(ctxB, [(f, g)], finite_tropical_basis=True)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
