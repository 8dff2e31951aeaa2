import numpy as np
import pytest

from beamwalk import (
    Distribution,
    DistributionSeries,
    LossModel,
    delta_state,
    ensemble_mean_series,
    evolve,
    initial_state,
    measured_distribution,
    measured_powers,
    ordered_schedule,
    position_distribution,
    renormalize_measured,
    series_from_trajectory,
    similarity,
    variance,
    variance_series,
)


def dist(step, probs):
    return Distribution(step, np.asarray(probs, dtype=float))


def series(*rows):
    return DistributionSeries(tuple(dist(step, probs) for step, probs in rows))


@pytest.fixture(scope="module")
def ordered_walk():
    return evolve(initial_state(7), ordered_schedule(7, 0.0), 0.5)


def test_delta_state_measures_to_a_point_mass():
    measured = position_distribution(initial_state(2))
    assert measured.step == 0
    np.testing.assert_allclose(measured.probs, [1.0])


def test_coin_trace_sums_both_components(ordered_walk):
    measured = position_distribution(ordered_walk[1])
    np.testing.assert_allclose(measured.probs, [0.5, 0.5], atol=1e-12)


def test_three_step_distribution(ordered_walk):
    measured = position_distribution(ordered_walk[3])
    np.testing.assert_allclose(measured.probs, [1 / 8, 5 / 8, 1 / 8, 1 / 8], atol=1e-12)


def test_renormalize_uniform_raw_powers():
    measured = renormalize_measured([2.0, 2.0], step=1)
    np.testing.assert_allclose(measured.probs, [0.5, 0.5])


def test_renormalize_plain_arithmetic():
    measured = renormalize_measured([1.0, 0.0, 3.0], step=2)
    np.testing.assert_allclose(measured.probs, [0.25, 0.0, 0.75])


@pytest.mark.parametrize("scale", [1e-6, 0.5, 3.0, 1e6])
def test_renormalize_is_scale_invariant(scale):
    raw = np.array([0.3, 0.1, 0.0, 0.6])
    a = renormalize_measured(raw, step=3)
    b = renormalize_measured(scale * raw, step=3)
    np.testing.assert_allclose(a.probs, b.probs, atol=1e-15)


def test_renormalize_rejects_degenerate_measurements():
    with pytest.raises(ValueError, match="zero"):
        renormalize_measured([0.0, 0.0], step=1)
    with pytest.raises(ValueError, match="nonnegative"):
        renormalize_measured([0.5, -0.1], step=1)
    with pytest.raises(ValueError, match="site powers"):
        renormalize_measured([1.0, 1.0], step=2)


def test_loss_emulation_cancels_after_renormalization(ordered_walk):
    lossy = measured_distribution(ordered_walk[5], LossModel(eta=0.8))
    ideal = position_distribution(ordered_walk[5])
    np.testing.assert_allclose(lossy.probs, ideal.probs, atol=1e-12)


def test_measured_powers_decay_with_the_step(ordered_walk):
    raw = measured_powers(ordered_walk[3], LossModel(eta=0.5))
    assert raw.sum() == pytest.approx(0.5**3)


def test_loss_model_validation():
    with pytest.raises(ValueError, match="eta"):
        LossModel(0.0)
    with pytest.raises(ValueError, match="eta"):
        LossModel(1.1)


def test_variance_of_a_point_mass_is_zero():
    assert variance(position_distribution(initial_state(3))) == 0.0


def test_variance_of_the_symmetric_pair():
    assert variance(dist(1, [0.5, 0.5])) == pytest.approx(1.0)


def test_variance_of_the_three_step_walk(ordered_walk):
    assert variance(position_distribution(ordered_walk[3])) == pytest.approx(2.75)


def test_variance_is_reflection_invariant():
    probs = np.array([0.1, 0.3, 0.05, 0.35, 0.2])
    assert variance(dist(4, probs)) == pytest.approx(variance(dist(4, probs[::-1])))


def test_variance_series_of_the_ordered_walk(ordered_walk):
    measured = series_from_trajectory(ordered_walk[:4], steps=[1, 2, 3])
    np.testing.assert_allclose(variance_series(measured), [1.0, 2.0, 2.75], atol=1e-12)


def test_variance_series_includes_a_leading_zero_with_step_zero(ordered_walk):
    measured = series_from_trajectory(ordered_walk[:3])
    assert variance_series(measured)[0] == 0.0


def test_variance_is_bounded_by_the_step_squared(ordered_walk):
    measured = series_from_trajectory(ordered_walk)
    for step, value in zip(measured.steps, variance_series(measured)):
        assert 0.0 <= value <= step**2


def test_similarity_of_a_series_with_itself_is_one(ordered_walk):
    measured = series_from_trajectory(ordered_walk, steps=range(1, 8))
    assert similarity(measured, measured) == pytest.approx(1.0, abs=1e-12)


def test_similarity_vanishes_on_disjoint_supports():
    a = series((1, [1.0, 0.0]), (2, [1.0, 0.0, 0.0]))
    b = series((1, [0.0, 1.0]), (2, [0.0, 0.0, 1.0]))
    assert similarity(a, b) == 0.0


def test_similarity_is_symmetric(ordered_walk):
    other = evolve(initial_state(7), ordered_schedule(7, 0.0), 0.44)
    a = series_from_trajectory(ordered_walk, steps=range(1, 8))
    b = series_from_trajectory(other, steps=range(1, 8))
    assert abs(similarity(a, b) - similarity(b, a)) < 1e-12


def test_similarity_separates_localized_from_ballistic(ordered_walk):
    from beamwalk import DisorderSpec, ensemble_mean_series as mean_series, ensemble_schedules

    ideal = series_from_trajectory(ordered_walk, steps=range(1, 8))
    real = series_from_trajectory(
        evolve(initial_state(7), ordered_schedule(7, 0.0), 0.44), steps=range(1, 8)
    )
    spec = DisorderSpec("binary_0_pi", seed=6, realization_count=30)
    localized = mean_series(
        [
            series_from_trajectory(evolve(initial_state(7), s, 0.5), steps=range(1, 8))
            for s in ensemble_schedules(7, spec)
        ]
    )
    nearly_equal = similarity(ideal, real)
    far_apart = similarity(ideal, localized)
    assert far_apart < nearly_equal - 0.05


def test_similarity_rejects_mismatched_step_sets():
    a = series((1, [0.5, 0.5]))
    b = series((2, [0.25, 0.5, 0.25]))
    with pytest.raises(ValueError, match="different steps"):
        similarity(a, b)


def test_mean_of_a_single_run_is_the_run_itself():
    run = series((1, [0.5, 0.5]), (2, [0.25, 0.5, 0.25]))
    mean = ensemble_mean_series([run])
    for row, expected in zip(mean.rows, run.rows):
        np.testing.assert_allclose(row.probs, expected.probs)


def test_mean_of_two_opposite_runs_is_uniform():
    a = series((1, [1.0, 0.0]))
    b = series((1, [0.0, 1.0]))
    mean = ensemble_mean_series([a, b])
    np.testing.assert_allclose(mean.rows[0].probs, [0.5, 0.5])


def test_mean_of_an_empty_ensemble_is_rejected():
    with pytest.raises(ValueError, match="empty"):
        ensemble_mean_series([])


def test_mean_rows_stay_normalized():
    rng = np.random.default_rng(8)
    runs = []
    for _ in range(40):
        probs = rng.random(4)
        runs.append(series((3, probs / probs.sum())))
    mean = ensemble_mean_series(runs)
    assert abs(float(mean.rows[0].probs.sum()) - 1.0) < 1e-10


def test_series_from_trajectory_validates_requested_steps(ordered_walk):
    with pytest.raises(ValueError, match="no states"):
        series_from_trajectory(ordered_walk, steps=[9])


def test_subseries_selects_and_validates(ordered_walk):
    measured = series_from_trajectory(ordered_walk)
    sliced = measured.subseries(range(1, 4))
    assert sliced.steps == (1, 2, 3)
    with pytest.raises(ValueError, match="no steps"):
        measured.subseries([12])


def test_distribution_validation():
    with pytest.raises(ValueError, match="entries"):
        dist(2, [0.5, 0.5])
    with pytest.raises(ValueError, match="nonnegative"):
        dist(1, [1.2, -0.2])
    with pytest.raises(ValueError, match="sum to 1"):
        dist(1, [0.7, 0.7])
    with pytest.raises(ValueError, match="increasing"):
        series((2, [0.25, 0.5, 0.25]), (1, [0.5, 0.5]))
