"""Single-step and multi-step unitary evolution of the walker.

One walk step is the coin layer (every occupied site's beam splitter
mixes the two coin modes) followed by the conditional shift (coin 0
moves one site down, coin 1 one site up).  The shift also inverts the
coin label, because each splitter output port feeds the opposite input
port of the next splitter.
"""

from __future__ import annotations

from collections.abc import Mapping

import numpy as np

from .apparatus import reachable_sites
from .coins import CoinParams, build_coin
from .errors import CapacityError, ScheduleError
from .schedules import PhaseSchedule
from .state import WalkerState

__all__ = ["apply_coin_layer", "apply_shift", "step", "coin_field", "evolve"]


def apply_coin_layer(state: WalkerState, coins: Mapping[int, np.ndarray]) -> WalkerState:
    """Apply a beam-splitter coin at every occupied site.

    ``coins`` maps site -> 2x2 matrix.  A site occupied by the walker
    with no coin assigned is a schedule error; unoccupied sites may be
    omitted.  The step index does not change.
    """
    new = state.amplitudes.copy()
    for site in reachable_sites(state.step_index):
        site = int(site)
        idx = site + state.num_steps
        matrix = coins.get(site)
        if matrix is None:
            if np.any(state.amplitudes[:, idx] != 0):
                raise ScheduleError(
                    f"no coin defined for populated site {site} "
                    f"at step index {state.step_index}"
                )
            continue
        new[:, idx] = np.asarray(matrix, dtype=np.complex128) @ state.amplitudes[:, idx]
    return WalkerState(new, state.step_index, state.num_steps)


def apply_shift(state: WalkerState) -> WalkerState:
    """Conditional shift: (coin 0, i) -> (coin 1, i-1), (coin 1, i) -> (coin 0, i+1).

    Increments the step index.  Applying it twice restores the coin
    label, so the inversion is an involution.
    """
    if state.step_index >= state.num_steps:
        raise CapacityError(
            f"cannot shift beyond the allocated lattice: step index "
            f"{state.step_index} of a {state.num_steps}-step walk"
        )
    amps = state.amplitudes
    new = np.zeros_like(amps)
    new[1, :-1] = amps[0, 1:]
    new[0, 1:] = amps[1, :-1]
    return WalkerState(new, state.step_index + 1, state.num_steps)


def step(state: WalkerState, coins: Mapping[int, np.ndarray]) -> WalkerState:
    """One walk step: coin layer, then conditional shift."""
    return apply_shift(apply_coin_layer(state, coins))


def coin_field(
    schedule: PhaseSchedule,
    reflectivity: float,
    step_number: int,
    phase_gauge: float = 0.0,
) -> dict[int, np.ndarray]:
    """Coin matrices for step ``step_number`` (1-based), keyed by site.

    The schedule phase theta enters as the port-0 plate setting with the
    port-1 plate at zero; ``phase_gauge`` shifts both settings by a
    constant, which never changes any measured distribution.
    """
    by_theta: dict[float, np.ndarray] = {}
    field = {}
    for site in schedule.sites(step_number):
        theta = schedule.theta(step_number, site)
        matrix = by_theta.get(theta)
        if matrix is None:
            params = CoinParams(reflectivity, theta + phase_gauge, phase_gauge)
            matrix = by_theta.setdefault(theta, build_coin(params))
        field[site] = matrix
    return field


def evolve(
    initial: WalkerState,
    schedule: PhaseSchedule,
    reflectivity: float,
    steps: int | None = None,
    phase_gauge: float = 0.0,
) -> list[WalkerState]:
    """Run ``steps`` walk steps; returns the trajectory including ``initial``.

    The trajectory ends on the final shift: no trailing coin layer is
    applied, matching a network read out right after the last splitter
    row.
    """
    if steps is None:
        steps = schedule.num_steps
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    last_needed = initial.step_index + steps
    if steps > 0 and schedule.num_steps < last_needed:
        raise ScheduleError(
            f"schedule covers {schedule.num_steps} steps, but the walk needs "
            f"{last_needed}"
        )
    trajectory = [initial]
    state = initial
    for _ in range(steps):
        coins = coin_field(schedule, reflectivity, state.step_index + 1, phase_gauge)
        state = step(state, coins)
        trajectory.append(state)
    return trajectory
