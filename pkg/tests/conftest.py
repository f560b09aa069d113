"""Shared fixtures: groups and cocycle data reused across the suite."""

from functools import lru_cache

import numpy as np
import pytest

from dwcat.center import CocycleData
from dwcat.cohomology import Cochain, dihedral_omega
from dwcat.groups import cyclic_group, dihedral_group


@lru_cache(maxsize=None)
def dihedral_data(m: int, p: int) -> CocycleData:
    omega = dihedral_omega(m, p)
    return CocycleData(omega.group, omega)


def cyclic_omega(n: int, p: int) -> Cochain:
    """The closed-form 3-cocycle p*a*floor((b+c)/n)/n on Z_n."""
    G = cyclic_group(n)
    a = np.arange(n)
    vals = (p * a[:, None, None] * ((a[None, :, None] + a[None, None, :]) // n)) % n
    return Cochain(G, 3, n, vals)


@lru_cache(maxsize=None)
def cyclic_data(n: int, p: int) -> CocycleData:
    omega = cyclic_omega(n, p)
    return CocycleData(omega.group, omega)


@pytest.fixture(scope="session")
def d3():
    return dihedral_group(1)


@pytest.fixture(scope="session")
def d5():
    return dihedral_group(2)


@pytest.fixture(scope="session")
def d3_data_p1():
    return dihedral_data(1, 1)


@pytest.fixture(scope="session")
def d5_data_p3():
    return dihedral_data(2, 3)
