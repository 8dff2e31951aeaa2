import numpy as np
import pytest

from beamwalk.coins import CoinParams, build_coin, is_unitary


def test_balanced_coin_matches_closed_form():
    coin = build_coin(CoinParams(0.5))
    expected = np.array([[1j, 1.0], [1.0, 1j]]) / np.sqrt(2.0)
    np.testing.assert_allclose(coin, expected, atol=1e-12)


def test_full_reflection_is_phase_decorated_identity():
    coin = build_coin(CoinParams(1.0))
    np.testing.assert_allclose(coin, np.array([[1j, 0.0], [0.0, 1j]]), atol=1e-12)


def test_quarter_turned_plates_cancel_the_reflection_phase():
    coin = build_coin(CoinParams(1.0, -np.pi / 2, -np.pi / 2))
    np.testing.assert_allclose(coin, np.eye(2), atol=1e-12)


def test_real_splitter_entry_magnitudes():
    coin = build_coin(CoinParams(0.44))
    np.testing.assert_allclose(np.abs(coin) ** 2, [[0.44, 0.56], [0.56, 0.44]], atol=1e-12)


@pytest.mark.parametrize("reflectivity", [0.0, 0.17, 0.44, 0.5, 0.83, 1.0])
@pytest.mark.parametrize(
    "theta0,theta1",
    [(0.0, 0.0), (0.3, -1.2), (np.pi, np.pi / 7), (2.5, 2.5)],
)
def test_unitarity_and_entry_structure(reflectivity, theta0, theta1):
    coin = build_coin(CoinParams(reflectivity, theta0, theta1))
    assert is_unitary(coin)
    # column norms and the off-diagonal unitarity condition
    assert abs(abs(coin[0, 0]) ** 2 + abs(coin[1, 0]) ** 2 - 1.0) < 1e-12
    assert abs(abs(coin[0, 1]) ** 2 + abs(coin[1, 1]) ** 2 - 1.0) < 1e-12
    assert abs(coin[0, 0] * np.conj(coin[0, 1]) + coin[1, 0] * np.conj(coin[1, 1])) < 1e-12
    # reflected entries carry sqrt(R), transmitted ones sqrt(1-R)
    assert abs(abs(coin[0, 0]) - np.sqrt(reflectivity)) < 1e-12
    assert abs(abs(coin[1, 1]) - np.sqrt(reflectivity)) < 1e-12
    assert abs(abs(coin[0, 1]) - np.sqrt(1.0 - reflectivity)) < 1e-12
    assert abs(abs(coin[1, 0]) - np.sqrt(1.0 - reflectivity)) < 1e-12


def test_out_of_range_reflectivity_rejected():
    with pytest.raises(ValueError, match="reflectivity"):
        CoinParams(1.2)
    with pytest.raises(ValueError, match="reflectivity"):
        CoinParams(-0.1)


def test_nonfinite_phase_rejected():
    with pytest.raises(ValueError, match="finite"):
        CoinParams(0.5, float("nan"), 0.0)


def test_observable_phase_is_the_difference():
    assert CoinParams(0.5, 1.0, 0.25).theta == pytest.approx(0.75)
