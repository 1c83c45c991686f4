import itertools

import numpy as np
import pytest

from blochbounds import (
    DensityMatrix,
    Ensemble,
    PureState,
    as_pure,
    from_ensemble,
    from_pure,
    ghz,
    haar_random_pure,
    isotropic_ghz4,
    partial_trace,
    product_max_entangled,
    product_state,
    purity,
    random_mixed,
)
from conftest import loop_partial_trace


def test_from_pure_basis_state():
    rho = from_pure(PureState([1, 0], 2, 1))
    np.testing.assert_allclose(rho.matrix, np.diag([1.0, 0.0]), atol=1e-14)


def test_from_pure_bell_corners():
    bell = PureState(np.array([1, 0, 0, 1]) / np.sqrt(2), 2, 2)
    rho = from_pure(bell).matrix
    expected = np.zeros((4, 4))
    for i, j in itertools.product((0, 3), repeat=2):
        expected[i, j] = 0.5
    np.testing.assert_allclose(rho, expected, atol=1e-14)


def test_from_pure_is_rank_one():
    psi = haar_random_pure(3, 2, seed=11)
    eigs = np.linalg.eigvalsh(from_pure(psi).matrix)
    np.testing.assert_allclose(eigs[-1], 1.0, atol=1e-12)
    np.testing.assert_allclose(eigs[:-1], 0.0, atol=1e-12)


def test_pure_state_rejects_unnormalized():
    with pytest.raises(ValueError):
        PureState([1, 1], 2, 1)


def test_pure_state_rejects_wrong_length():
    with pytest.raises(ValueError):
        PureState([1, 0, 0], 2, 1)


def test_single_member_ensemble_matches_from_pure():
    psi = haar_random_pure(2, 2, seed=3)
    via_ensemble = from_ensemble(Ensemble([(1.0, psi)]))
    np.testing.assert_allclose(via_ensemble.matrix, from_pure(psi).matrix, atol=1e-14)


def test_equal_mixture_is_maximally_mixed():
    mix = Ensemble([(0.5, PureState([1, 0], 2, 1)), (0.5, PureState([0, 1], 2, 1))])
    np.testing.assert_allclose(from_ensemble(mix).matrix, np.eye(2) / 2, atol=1e-14)


def test_ensemble_purity_matches_overlap_formula():
    members = [(0.7, ghz(2, 4)), (0.3, PureState([1] + [0] * 15, 2, 4))]
    rho = from_ensemble(Ensemble(members))
    expected = sum(
        wa * wb * abs(pa.overlap(pb)) ** 2
        for wa, pa in members
        for wb, pb in members
    )
    assert abs(expected - 0.79) < 1e-12
    assert abs(purity(rho) - expected) < 1e-12


def test_ensemble_rejects_mismatched_members():
    with pytest.raises(ValueError):
        Ensemble([(0.5, ghz(2, 2)), (0.5, ghz(2, 3))])
    with pytest.raises(ValueError):
        Ensemble([(0.5, ghz(2, 2)), (0.5, ghz(3, 2))])


def test_ensemble_rejects_bad_weights():
    with pytest.raises(ValueError):
        Ensemble([(0.9, ghz(2, 2))])
    with pytest.raises(ValueError):
        Ensemble([(1.4, ghz(2, 2)), (-0.4, ghz(2, 2))])


def test_ghz_amplitudes():
    four_qubit = ghz(2, 4).amplitudes
    expected = np.zeros(16)
    expected[0] = expected[15] = 1 / np.sqrt(2)
    np.testing.assert_allclose(four_qubit, expected, atol=1e-14)

    qutrit = ghz(3, 3).amplitudes
    expected = np.zeros(27)
    expected[[0, 13, 26]] = 1 / np.sqrt(3)
    np.testing.assert_allclose(qutrit, expected, atol=1e-14)

    assert abs(np.linalg.norm(ghz(2, 2).amplitudes) - 1) < 1e-14


@pytest.mark.parametrize("d,n", [(1, 3), (2, 1), (2, 5)])
def test_ghz_rejects_out_of_range(d, n):
    with pytest.raises(ValueError):
        ghz(d, n)


def test_isotropic_ghz4_endpoints():
    pure = isotropic_ghz4(1.0, 2)
    np.testing.assert_allclose(pure.matrix, from_pure(ghz(2, 4)).matrix, atol=1e-14)
    noise = isotropic_ghz4(0.0, 2)
    np.testing.assert_allclose(noise.matrix, np.eye(16) / 16, atol=1e-14)


def test_isotropic_ghz4_half_spectrum():
    rho = isotropic_ghz4(0.5, 2)
    assert abs(rho.matrix.trace() - 1) < 1e-12
    eigs = np.sort(np.linalg.eigvalsh(rho.matrix))
    expected = np.sort([0.5 + 1 / 32] + [1 / 32] * 15)
    np.testing.assert_allclose(eigs, expected, atol=1e-12)


@pytest.mark.parametrize("x", [-0.1, 1.1])
def test_isotropic_ghz4_rejects_bad_weight(x):
    with pytest.raises(ValueError):
        isotropic_ghz4(x, 2)


def test_product_max_entangled_d2():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    np.testing.assert_allclose(
        product_max_entangled(2).amplitudes, np.kron(bell, bell), atol=1e-14
    )


@pytest.mark.parametrize("d", [2, 3])
def test_product_max_entangled_marginal_is_maximally_mixed(d):
    rho = from_pure(product_max_entangled(d))
    marginal = partial_trace(rho, (1,))
    np.testing.assert_allclose(marginal.matrix, np.eye(d) / d, atol=1e-12)
    assert abs(purity(rho) - 1.0) < 1e-12


def test_product_state_places_factors_correctly():
    up = [1, 0]
    down = [0, 1]
    psi = product_state([((2,), down), ((1,), up), ((3,), up)], 2)
    expected = np.zeros(8)
    expected[0b010] = 1.0
    np.testing.assert_allclose(psi.amplitudes, expected, atol=1e-14)


def test_product_state_matches_kron_for_sorted_parties():
    rng = np.random.default_rng(5)
    a = rng.normal(size=2) + 1j * rng.normal(size=2)
    a /= np.linalg.norm(a)
    b = rng.normal(size=4) + 1j * rng.normal(size=4)
    b /= np.linalg.norm(b)
    psi = product_state([((1,), a), ((2, 3), b)], 2)
    np.testing.assert_allclose(psi.amplitudes, np.kron(a, b), atol=1e-14)


def test_product_state_rejects_bad_partitions():
    with pytest.raises(ValueError):
        product_state([((1,), [1, 0]), ((1,), [1, 0])], 2)
    with pytest.raises(ValueError):
        product_state([((1,), [1, 0]), ((3,), [1, 0])], 2)


def test_partial_trace_ghz_single_party():
    rho = from_pure(ghz(2, 4))
    np.testing.assert_allclose(partial_trace(rho, (1,)).matrix, np.eye(2) / 2, atol=1e-12)


def test_partial_trace_keep_all_is_identity_operation():
    rho = random_mixed(2, 3, 8, seed=21)
    np.testing.assert_allclose(partial_trace(rho, (1, 2, 3)).matrix, rho.matrix, atol=1e-14)


def test_partial_trace_of_paired_entanglement():
    rho = from_pure(product_max_entangled(2))
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    np.testing.assert_allclose(
        partial_trace(rho, (1, 2)).matrix, np.outer(bell, bell), atol=1e-12
    )


@pytest.mark.parametrize(
    "d,n,keep",
    [
        (2, 3, (1,)),
        (2, 3, (2, 3)),
        (2, 3, (1, 3)),
        (3, 2, (2,)),
        (2, 4, (2, 4)),
        (2, 4, (1, 3, 4)),
    ],
)
def test_partial_trace_matches_loop_oracle(d, n, keep):
    rho = random_mixed(d, n, d**n, seed=1000 + 10 * d + n)
    expected = loop_partial_trace(rho.matrix, keep, d, n)
    np.testing.assert_allclose(partial_trace(rho, keep).matrix, expected, atol=1e-12)


def test_partial_trace_preserves_trace_and_positivity():
    for seed in range(5):
        rho = random_mixed(2, 4, 16, seed=seed)
        for keep in [(1,), (2, 3), (1, 2, 4)]:
            reduced = partial_trace(rho, keep)
            assert abs(reduced.matrix.trace() - 1) < 1e-12
            assert np.linalg.eigvalsh(reduced.matrix)[0] > -1e-12


def test_partial_trace_rejects_bad_subsets():
    rho = from_pure(ghz(2, 3))
    with pytest.raises(ValueError):
        partial_trace(rho, ())
    with pytest.raises(ValueError):
        partial_trace(rho, (0, 1))
    with pytest.raises(ValueError):
        partial_trace(rho, (4,))


def test_purity_values():
    assert abs(purity(isotropic_ghz4(0.0, 2)) - 1 / 16) < 1e-14
    assert abs(purity(from_pure(haar_random_pure(2, 3, seed=9))) - 1.0) < 1e-12
    rho = isotropic_ghz4(0.5, 2)
    expected = float(np.sum(np.linalg.eigvalsh(rho.matrix) ** 2))
    assert abs(purity(rho) - expected) < 1e-12
    assert abs(purity(rho) - 19 / 64) < 1e-12


@pytest.mark.parametrize("seed", range(6))
def test_pure_tripartite_marginal_purities_agree(seed):
    rho = from_pure(haar_random_pure(2 + seed % 2, 3, seed=40 + seed))
    for i, rest in [(1, (2, 3)), (2, (1, 3)), (3, (1, 2))]:
        one = purity(partial_trace(rho, (i,)))
        two = purity(partial_trace(rho, rest))
        assert abs(one - two) < 1e-10


@pytest.mark.parametrize("seed", range(6))
def test_pure_fourpartite_marginal_purities_agree(seed):
    rho = from_pure(haar_random_pure(2 + seed % 2, 4, seed=60 + seed))
    for i in (1, 2, 3, 4):
        rest = tuple(p for p in (1, 2, 3, 4) if p != i)
        assert abs(purity(partial_trace(rho, (i,))) - purity(partial_trace(rho, rest))) < 1e-10


def test_as_pure_round_trip():
    psi = ghz(3, 2)
    back = as_pure(from_pure(psi))
    overlap = abs(np.vdot(back.amplitudes, psi.amplitudes))
    assert abs(overlap - 1.0) < 1e-10


def test_as_pure_rejects_mixed():
    with pytest.raises(ValueError):
        as_pure(isotropic_ghz4(0.5, 2))


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(np.array([[0.5, 0.3], [0.1, 0.5]]), 2, 1)  # not Hermitian
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(2), 2, 1)  # trace 2
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([1.5, -0.5]), 2, 1)  # negative eigenvalue
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(4) / 4, 2, 1)  # wrong shape for (d, n)


def test_state_objects_are_immutable():
    psi = ghz(2, 2)
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0.0
    rho = from_pure(psi)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 0.0
