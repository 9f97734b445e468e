import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dyonfw import catalog as cat_mod
from dyonfw import fw
from dyonfw import hamiltonians as ham


@pytest.fixture(scope="session")
def catalog():
    return cat_mod.ReferenceCatalog.build()


@pytest.fixture(scope="session")
def dirac_result(catalog):
    h = ham.build_dirac_hamiltonian(ham.ParticleParams(e=1, etilde=1))
    return fw.fw_run(h, references=catalog.fw_references())


@pytest.fixture(scope="session")
def pauli_result():
    h = ham.build_dirac_pauli_hamiltonian(
        ham.ParticleParams(e=1, etilde=1, ge=3, gte=3))
    return fw.fw_run(h, model="dirac-pauli")
