import pytest

from gtqft import GFrobeniusAlgebra, builtin, dual_numbers_algebra, group_algebra
from gtqft.exactlin import Matrix, Tensor3


def dual_number_group_algebra(group) -> GFrobeniusAlgebra:
    """Group algebra tensored with the dual numbers: every grade is
    two-dimensional with basis (delta_g * 1, delta_g * x), which exercises
    genuinely non-scalar blocks in every downstream computation."""
    n = group.order
    cell = Tensor3.from_entries(2, 2, 2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1})
    block = Matrix.identity(2)
    product = {(g, h): cell for g in range(n) for h in range(n)}
    action = {(k, g): block for k in range(n) for g in range(n)}
    return GFrobeniusAlgebra(group, (2,) * n, product, action, (1, 0), (0, 1))


@pytest.fixture(scope="session")
def z2():
    return builtin("cyclic", 2)


@pytest.fixture(scope="session")
def z3():
    return builtin("cyclic", 3)


@pytest.fixture(scope="session")
def z4():
    return builtin("cyclic", 4)


@pytest.fixture(scope="session")
def s3():
    return builtin("symmetric", 3)


@pytest.fixture(scope="session")
def d4():
    return builtin("dihedral", 4)


@pytest.fixture(scope="session")
def q8():
    return builtin("quaternion8")


@pytest.fixture(scope="session")
def trivial_group():
    return builtin("cyclic", 1)


@pytest.fixture(scope="session")
def s3_algebra(s3):
    return group_algebra(s3)


@pytest.fixture(scope="session")
def z2_algebra(z2):
    return group_algebra(z2)


@pytest.fixture(scope="session")
def dual_numbers():
    return dual_numbers_algebra()


@pytest.fixture(scope="session")
def rich_s3(s3):
    return dual_number_group_algebra(s3)
