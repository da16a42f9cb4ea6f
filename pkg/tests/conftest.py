import numpy as np
import pytest

from goldman import Presentation, Representation, cocycle_basis, random_representation

GRID = [(g, n) for g in (2, 3) for n in (1, 2, 3)]


@pytest.fixture(scope="session")
def seeded_reps():
    """One seeded unitary representation per grid size."""
    return {(g, n): random_representation(g, n, "unitary", seed=0) for g, n in GRID}


@pytest.fixture(scope="session")
def seeded_bases(seeded_reps):
    return {key: cocycle_basis(rep) for key, rep in seeded_reps.items()}


@pytest.fixture(scope="session")
def rep_g2n2(seeded_reps):
    return seeded_reps[(2, 2)]


@pytest.fixture(scope="session")
def basis_g2n2(seeded_bases):
    return seeded_bases[(2, 2)]


@pytest.fixture(scope="session")
def trivial_scalar_rep():
    """Rank-one identity images: the trivial action at genus two."""
    pres = Presentation(2)
    return Representation(pres, 1, tuple(np.eye(1, dtype=complex) for _ in range(4)),
                          "unitary")
