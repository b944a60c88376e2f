import os
import sys

os.environ.setdefault("SLOCC_ENV", "testing")
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import numpy as np
import pytest

from core.fock import enumerate_sector
from components.hubbard.hamiltonian import HamiltonianParams
from components.maxent.logic import two_fermion_max


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def sector22():
    return enumerate_sector(2, 2)


@pytest.fixture
def sector33():
    return enumerate_sector(3, 3)


@pytest.fixture
def eq12_state():
    return two_fermion_max()


@pytest.fixture
def reference_params():
    return HamiltonianParams.reference()


@pytest.fixture
def state_file(tmp_path):
    def write(text, name="input.state"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write
