import pytest

from betaorbit import ExpansionParams, IntPolynomial, NumberField

# minimal polynomials used throughout: constant term first
GOLDEN = (-1, -1, 1)            # z^2 - z - 1, beta ~ 1.618034
QUINTIC = (-1, -1, -1, -1, 0, 1)  # z^5 - z^3 - z^2 - z - 1, beta ~ 1.534158
BASE2 = (-2, 1)                 # z - 2
PLASTIC = (-1, -1, 0, 1)        # z^3 - z - 1, beta ~ 1.324718
CUBIC2 = (-1, 0, -1, 1)         # z^3 - z^2 - 1, beta ~ 1.465571
TETRA = (-1, -1, -1, -1, 1)     # z^4 - z^3 - z^2 - z - 1, beta ~ 1.927562
SQRT2 = (-2, 0, 1)              # z^2 - 2, not Pisot
SQRT3 = (-3, 0, 1)              # z^2 - 3, not Pisot


@pytest.fixture(scope="session")
def golden():
    return NumberField(IntPolynomial(GOLDEN))


@pytest.fixture(scope="session")
def quintic():
    return NumberField(IntPolynomial(QUINTIC))


@pytest.fixture(scope="session")
def base2():
    return NumberField(IntPolynomial(BASE2))


@pytest.fixture(scope="session")
def golden_params(golden):
    return ExpansionParams(golden, 1)


@pytest.fixture(scope="session")
def quintic_params(quintic):
    return ExpansionParams(quintic, 1)


@pytest.fixture(scope="session")
def quintic_x(quintic):
    b = quintic.beta
    return (b * b - 1).inverse()
