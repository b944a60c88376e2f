import pytest

from core.errors import DomainError, ResourceError
from core.fock import permute_modes
from components.invariants.logic import generator_values
from components.maxent.logic import (
    EXAMPLE_KINDS, EXTRA_KINDS, SWAP_BC, CyclicSpec, cyclic_max_state, example_state, is_maximally_entangled,
    named_state, odd_attractive_state, psi_p_state, two_fermion_max,
)

SINGLE_GENERATOR = {
    "I2_only": "I2", "I1_only": "I1", "IAB_only": "I_AB", "IAC_only": "I_AC",
    "IBC_only": "I_BC", "IABC1_only": "I_ABC1", "IABC2_only": "I_ABC2",
}


@pytest.mark.parametrize("kind", EXAMPLE_KINDS)
def test_examples_are_normalized_and_maximal(kind):
    state = example_state(kind)
    assert state.is_normalized(1e-12)
    assert is_maximally_entangled(state)


@pytest.mark.parametrize("kind,nonzero", sorted(SINGLE_GENERATOR.items()))
def test_examples_carry_a_single_generator(kind, nonzero):
    values = generator_values(example_state(kind))
    assert abs(values[nonzero].value) > 1e-6
    for name, inv in values.items():
        if name != nonzero:
            assert abs(inv.value) < 1e-12, name


def test_i1_example_is_the_swapped_i2_example():
    assert example_state("I1_only") == permute_modes(example_state("I2_only"), SWAP_BC)
    assert generator_values(example_state("I2_only"))["I2"].value == pytest.approx(1 / 16)


def test_unknown_example():
    with pytest.raises(DomainError):
        example_state("I3_only")


def test_two_fermion_state_is_maximal():
    assert is_maximally_entangled(two_fermion_max())


def test_odd_attractive_state_is_not_maximal():
    state = odd_attractive_state()
    assert state.is_normalized(1e-12)
    assert not is_maximally_entangled(state)


def test_psi_p_state():
    state = psi_p_state()
    assert len(state.support()) == 12
    assert state.is_normalized(1e-12)
    assert state["uD0"] == pytest.approx(12 ** -0.5)
    assert state["Du0"] == pytest.approx(-(12 ** -0.5))


@pytest.mark.parametrize("kind", EXAMPLE_KINDS + EXTRA_KINDS)
def test_named_states(kind):
    assert named_state(kind).is_normalized(1e-12)


def test_cyclic_state_spin_half():
    state = cyclic_max_state(CyclicSpec(1, 1))
    assert state.sector.n_modes == 4 and state.sector.n_particles == 4
    assert sorted(str(label) for label in state.support()) == ["0udD", "D0ud", "dD0u", "udD0"]
    assert state["0udD"] == pytest.approx(0.5)
    assert is_maximally_entangled(state)


def test_cyclic_state_repeated_sequence():
    spec = CyclicSpec(1, 2)
    state = cyclic_max_state(spec)
    assert spec.n_modes == 8
    assert len(state.support()) == 4
    assert is_maximally_entangled(state)


def test_cyclic_guards():
    with pytest.raises(DomainError):
        CyclicSpec(2, 1)
    with pytest.raises(DomainError):
        CyclicSpec(1, 0)
    with pytest.raises(ResourceError):
        cyclic_max_state(CyclicSpec(3, 1))
    with pytest.raises(ResourceError):
        cyclic_max_state(CyclicSpec(1, 3))
    with pytest.raises(ResourceError):
        cyclic_max_state(CyclicSpec(1, 1), max_labels=10)
