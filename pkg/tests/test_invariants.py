import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core.errors import DomainError
from core.fock import (
    ModeOccupation, basis_state, enumerate_sector, permute_modes, random_state, random_state_on,
    state_from_labels,
)
from core.slocc import LocalOperator, apply, embed_local, exponentiate, random_element, random_restricted_element
from components.invariants.logic import (
    InvariantValue, attractive_invariants, detect_family, evaluate_family, fermionic_concurrence, generator_values,
    i0, i12_measure, i_abc, i_deg4, i_pair, localized_invariant, monotone, repulsive_invariant, symmetric_measures,
    tau_measure, three_tangle,
)
from components.maxent.logic import example_state, psi_p_state


def _close(a, b, rel=1e-8):
    return abs(a - b) <= rel * max(abs(a), abs(b), 1e-14)


def test_two_mode_generator_on_max_state(eq12_state):
    inv = i0(eq12_state)
    assert inv.value == pytest.approx(1 / 16)
    assert inv.degree == 4
    assert inv.monotone == pytest.approx(0.25)
    assert fermionic_concurrence(eq12_state) == pytest.approx(0.0, abs=1e-15)


def test_two_mode_generator_vanishes_on_product():
    assert i0(basis_state("ud")).value == 0


def test_monotone_rejects_degree_zero():
    with pytest.raises(DomainError):
        monotone(InvariantValue(1.0, 0))


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_two_mode_generator_invariant(seed):
    state = random_state(enumerate_sector(2, 2), np.random.default_rng(seed))
    moved = apply(random_element(2, seed=seed), state)
    assert _close(i0(state).value, i0(moved).value)


@pytest.mark.parametrize("seed", range(5))
def test_three_mode_generators_invariant(sector33, seed):
    state = random_state(sector33, np.random.default_rng(seed))
    moved = apply(random_element(3, seed=100 + seed), state)
    before, after = generator_values(state), generator_values(moved)
    for name in before:
        assert _close(before[name].value, after[name].value), name


@pytest.mark.parametrize("restriction", ["spin", "attractive"])
@pytest.mark.parametrize("seed", range(5))
def test_three_tangle_invariant_under_unit_determinant_spin_blocks(sector33, restriction, seed):
    state = random_state(sector33, np.random.default_rng(seed))
    moved = apply(random_restricted_element(3, seed=200 + seed, restriction=restriction), state)
    assert _close(three_tangle(state).value, three_tangle(moved).value)


@pytest.mark.parametrize("mode", range(3))
def test_three_tangle_rescaled_by_occupation_generators(sector33, rng, mode):
    state = random_state(sector33, rng)
    c8, c15 = 0.1 - 0.2j, 0.05 + 0.3j
    moved = apply(embed_local(exponentiate([0, 0, 0, c8, c15]), mode, 3), state)
    expected = np.exp(4 * (c8 + c15)) * three_tangle(state).value
    assert _close(three_tangle(moved).value, expected)
    assert not _close(three_tangle(moved).value, three_tangle(state).value)


def test_generator_degrees(sector33, rng):
    values = generator_values(random_state(sector33, rng))
    assert {name: v.degree for name, v in values.items()} == {
        "I1": 4, "I2": 4, "I_BC": 8, "I_AC": 8, "I_AB": 8, "I_ABC1": 12, "I_ABC2": 12,
    }


def test_wrong_sector_rejected(eq12_state):
    with pytest.raises(DomainError):
        i_deg4(eq12_state, 1)
    with pytest.raises(DomainError):
        i_pair(eq12_state, "AB")
    with pytest.raises(DomainError):
        i0(basis_state("uud"))


def test_unknown_variants(sector33, rng):
    state = random_state(sector33, rng)
    with pytest.raises(DomainError):
        i_deg4(state, 3)
    with pytest.raises(DomainError):
        i_pair(state, "CD")


def test_swapping_b_and_c_exchanges_degree_four_generators(sector33, rng):
    state = random_state(sector33, rng)
    swapped = permute_modes(state, [0, 2, 1])
    assert _close(i_deg4(state, 1).value, i_deg4(swapped, 2).value)
    assert _close(abs(i_pair(swapped, "AB").value), abs(i_pair(state, "AC").value))


def test_single_generator_state():
    state = example_state("I2_only")
    values = generator_values(state)
    assert values["I2"].value == pytest.approx(1 / 16)
    for name, inv in values.items():
        if name != "I2":
            assert abs(inv.value) < 1e-12, name
    assert i12_measure(state) == pytest.approx(1.0)
    assert symmetric_measures(state)["deg4"] == pytest.approx(0.25)
    assert symmetric_measures(state)["deg8"] == pytest.approx(0.0, abs=1e-6)


def test_three_tangle_of_ghz_pair():
    state = state_from_labels({"uuu": 1.0, "ddd": 1.0}, normalize=True)
    assert three_tangle(state).value == pytest.approx(0.25)
    assert tau_measure(state) == pytest.approx(1.0)
    assert i12_measure(state) == pytest.approx(0.0)


def test_repulsive_invariants():
    weight = 1 / math.sqrt(6)
    state = state_from_labels({label: weight for label in ("uu0", "dd0", "0uu", "0dd", "u0u", "d0d")})
    first = repulsive_invariant(state, 1)
    assert first.degree == 6 and first.name == "R1"
    assert first.value == pytest.approx(1 / 216)
    assert repulsive_invariant(state, 2).degree == 3
    with pytest.raises(DomainError):
        repulsive_invariant(state_from_labels({"uD": 1.0, "Du": 1.0}), 1)
    with pytest.raises(DomainError):
        repulsive_invariant(state_from_labels({"uD0": 1.0}), 1)
    with pytest.raises(DomainError):
        repulsive_invariant(state, 3)


def test_repulsive_invariants_under_restricted_group():
    sector = enumerate_sector(3, 2)
    labels = [label for label in sector.basis if "D" not in str(label)]
    rng = np.random.default_rng(9)
    for seed in range(3):
        state = random_state_on(labels, rng)
        moved = apply(random_restricted_element(3, seed=seed, restriction="repulsive"), state)
        for which in (1, 2):
            assert _close(repulsive_invariant(state, which).value, repulsive_invariant(moved, which).value)


def test_attractive_invariants():
    pair = state_from_labels({"0D": 1.0, "D0": 1.0}, normalize=True)
    assert attractive_invariants(pair, "pair").value == pytest.approx(0.5)
    four = state_from_labels({"0DD0": 1.0, "D00D": 1.0}, normalize=True)
    assert attractive_invariants(four, "AB|CD").value == pytest.approx(0.5)
    assert attractive_invariants(four, "AD|BC").value == pytest.approx(0.0)
    assert attractive_invariants(four, "AC|BD").value == pytest.approx(0.5)
    with pytest.raises(DomainError):
        attractive_invariants(basis_state("uu"), "pair")
    with pytest.raises(DomainError):
        attractive_invariants(four, "AB")


def test_localized_invariants():
    state = state_from_labels({"u0D": 1.0, "dD0": 1.0}, normalize=True)
    inv = localized_invariant(state, "AL")
    assert inv.value == pytest.approx(0.5)
    assert inv.degree == 2
    relabeled = permute_modes(state, [1, 0, 2])
    on_b = localized_invariant(relabeled, "AL", "B")
    assert on_b.name == "I_AL[B]"
    assert on_b.value == pytest.approx(0.5)
    with pytest.raises(DomainError):
        localized_invariant(state, "AL", "D")
    with pytest.raises(DomainError):
        localized_invariant(state_from_labels({"D0u": 1.0}), "A1")


def test_localized_invariants_under_balanced_group():
    sector = enumerate_sector(3, 3)
    labels = [label for label in sector.basis if str(label)[0] in "ud"]
    rng = np.random.default_rng(11)
    for seed in range(3):
        state = random_state_on(labels, rng)
        moved = apply(random_restricted_element(3, seed=seed, restriction="balanced", modes=(0,)), state)
        for which in ("A1", "A2"):
            assert _close(localized_invariant(state, which).value, localized_invariant(moved, which).value)


def test_family_detection(eq12_state, sector33, rng):
    assert detect_family(eq12_state) == "two"
    assert detect_family(state_from_labels({"uu0": 1.0, "0dd": 1.0})) == "repulsive"
    assert detect_family(state_from_labels({"0DD0": 1.0, "D00D": 1.0})) == "attractive"
    assert detect_family(state_from_labels({"u0D": 1.0, "dD0": 1.0})) == "localizedA"
    assert detect_family(random_state(sector33, rng)) == "full3"
    with pytest.raises(DomainError):
        detect_family(basis_state("u"))


def test_evaluate_family(eq12_state, sector33, rng):
    assert [inv.name for inv in evaluate_family(eq12_state)] == ["I0"]
    full = evaluate_family(random_state(sector33, rng), "full3")
    assert [inv.name for inv in full] == ["I1", "I2", "I_BC", "I_AC", "I_AB", "I_ABC1", "I_ABC2", "tau"]
    localized = evaluate_family(state_from_labels({"u0D": 1.0, "dD0": 1.0}, normalize=True))
    assert [inv.name for inv in localized] == ["I_A1", "I_A2", "I_AL"]
    with pytest.raises(DomainError):
        evaluate_family(eq12_state, "everything")


def _spin_rotation(rng, mode, n_modes):
    coefficients = list(0.2 * (rng.standard_normal(3) + 1j * rng.standard_normal(3))) + [0, 0]
    return embed_local(exponentiate(coefficients), mode, n_modes)


@pytest.mark.parametrize("mode", range(3))
@pytest.mark.parametrize("occupations", ["u0D", "u"], ids=["bell_local", "localized"])
def test_generators_vanish_on_mode_with_fixed_spin(sector33, mode, occupations):
    allowed = {ModeOccupation.from_char(char) for char in occupations}
    labels = [label for label in sector33.basis if label[mode] in allowed]
    rng = np.random.default_rng(40 + mode)
    for _ in range(10):
        state = apply(_spin_rotation(rng, mode, 3), random_state_on(labels, rng))
        for name, inv in generator_values(state).items():
            assert abs(inv.value) < 1e-12, name


@pytest.mark.parametrize("mode", range(2))
def test_two_mode_generator_vanishes_on_bell_local_forms(sector22, mode):
    labels = [label for label in sector22.basis if label[mode] is not ModeOccupation.DOWN]
    rng = np.random.default_rng(mode)
    for _ in range(10):
        state = apply(_spin_rotation(rng, mode, 2), random_state_on(labels, rng))
        assert abs(i0(state).value) < 1e-12


def _not_double(label):
    return ModeOccupation.DOUBLE not in label.occupations


PAIRED = (ModeOccupation.EMPTY, ModeOccupation.DOUBLE)


def _all_paired(label):
    return all(occ in PAIRED for occ in label.occupations)


def _single_on_a(label):
    return label[0] in (ModeOccupation.UP, ModeOccupation.DOWN)


def _localized_on_a(label):
    return _single_on_a(label) and all(occ in PAIRED for occ in label.occupations[1:])


HOMOGENEOUS = [
    pytest.param((2, 2), None, i0, id="I0"),
    pytest.param((3, 3), None, lambda s: i_deg4(s, 1), id="I1"),
    pytest.param((3, 3), None, lambda s: i_deg4(s, 2), id="I2"),
    pytest.param((3, 3), None, lambda s: i_pair(s, "BC"), id="I_BC"),
    pytest.param((3, 3), None, lambda s: i_pair(s, "AC"), id="I_AC"),
    pytest.param((3, 3), None, lambda s: i_pair(s, "AB"), id="I_AB"),
    pytest.param((3, 3), None, lambda s: i_abc(s, 1), id="I_ABC1"),
    pytest.param((3, 3), None, lambda s: i_abc(s, 2), id="I_ABC2"),
    pytest.param((3, 3), None, three_tangle, id="tau"),
    pytest.param((3, 2), _not_double, lambda s: repulsive_invariant(s, 1), id="R1"),
    pytest.param((3, 2), _not_double, lambda s: repulsive_invariant(s, 2), id="R2"),
    pytest.param((4, 4), _all_paired, lambda s: attractive_invariants(s, "AB|CD"), id="AB|CD"),
    pytest.param((3, 3), _single_on_a, lambda s: localized_invariant(s, "A1"), id="A1"),
    pytest.param((3, 3), _single_on_a, lambda s: localized_invariant(s, "A2"), id="A2"),
    pytest.param((3, 3), _localized_on_a, lambda s: localized_invariant(s, "AL"), id="AL"),
]


@pytest.mark.parametrize("factor", [2.0, 1 + 1j])
@pytest.mark.parametrize("sector_shape,allowed,evaluate", HOMOGENEOUS)
def test_invariants_are_homogeneous(sector_shape, allowed, evaluate, factor):
    sector = enumerate_sector(*sector_shape)
    labels = [label for label in sector.basis if allowed is None or allowed(label)]
    state = random_state_on(labels, np.random.default_rng(17))
    inv = evaluate(state)
    assert _close(evaluate(state.scaled(factor)).value, factor ** inv.degree * inv.value)


@pytest.mark.parametrize("labels", [("duu", "udu", "uud"), ("udd", "dud", "ddu")], ids=["one_down", "one_up"])
def test_three_tangle_vanishes_on_w_states(labels):
    state = state_from_labels({label: 1.0 for label in labels}, normalize=True)
    assert three_tangle(state).value == pytest.approx(0.0, abs=1e-15)
    assert tau_measure(state) == pytest.approx(0.0, abs=1e-7)


def test_monotone_maximal_on_balanced_two_mode_state(eq12_state):
    peak = monotone(i0(eq12_state))
    assert peak == pytest.approx(0.25)
    for seed in range(1000):
        moved = apply(random_element(2, scale=0.5, seed=seed), eq12_state).normalized()
        assert monotone(i0(moved)) <= peak + 1e-9, seed


@pytest.mark.parametrize("label", [str(label) for label in enumerate_sector(3, 3).basis])
def test_generators_vanish_on_single_label(label):
    for name, inv in generator_values(basis_state(label)).items():
        assert inv.value == 0, name


@pytest.mark.parametrize("name", ["I_AB", "I_AC", "I_BC", "I_ABC1", "I_ABC2"])
def test_generators_vanish_on_permutation_symmetric_groundstate(name):
    assert generator_values(psi_p_state())[name].value == pytest.approx(0.0, abs=1e-15)


def test_localized_bracket_example():
    state = state_from_labels({label: 0.5 for label in ("u0D", "uD0", "ddu", "dud")})
    inv = localized_invariant(state, "A1")
    assert inv.value == pytest.approx(1 / 8)
    assert inv.degree == 4


# two fermions on two modes before and after a particle exchange on mode A
SLATER_RANK_ONE = {"du": 0.5, "ud": -0.5, "D0": -0.5, "0D": -0.5}
SLATER_RANK_TWO = {"du": 0.5, "ud": -0.5, "D0": 0.5, "0D": -0.5}


def _particle_exchange_on_a():
    exchange = exponentiate([0, 0, 0, 0, 1j * math.pi / 4]).matrix
    return embed_local(LocalOperator(np.exp(-1j * math.pi / 4) * exchange), 0, 2)


def test_particle_exchange_changes_slater_rank():
    rank_one = state_from_labels(SLATER_RANK_ONE)
    rank_two = apply(_particle_exchange_on_a(), rank_one)
    np.testing.assert_allclose(rank_two.amplitudes, state_from_labels(SLATER_RANK_TWO).amplitudes, atol=1e-12)
    assert fermionic_concurrence(rank_one) == pytest.approx(0.0, abs=1e-12)
    assert fermionic_concurrence(rank_two) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("entries", [SLATER_RANK_ONE, SLATER_RANK_TWO], ids=["rank_one", "rank_two"])
def test_monotone_is_maximal_for_both_slater_ranks(entries):
    assert monotone(i0(state_from_labels(entries))) == pytest.approx(0.25, abs=1e-12)
