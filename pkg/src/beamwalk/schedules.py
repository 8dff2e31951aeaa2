"""Phase schedules: the relative phase applied at every mesh point.

An N-step walk traverses one beam splitter per occupied site per step.
A schedule assigns the phase-plate difference theta to each of those
mesh points; the ordered walk uses one constant everywhere, disordered
walks draw each mesh point independently from a seeded stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .apparatus import reachable_sites

__all__ = [
    "BINARY_0_PI",
    "UNIFORM_0_2PI",
    "DISORDER_KINDS",
    "PhaseSchedule",
    "DisorderSpec",
    "ordered_schedule",
    "disordered_schedule",
    "ensemble_schedules",
]

BINARY_0_PI = "binary_0_pi"
UNIFORM_0_2PI = "uniform_0_2pi"
DISORDER_KINDS = (BINARY_0_PI, UNIFORM_0_2PI)


@dataclass(frozen=True)
class PhaseSchedule:
    """Per-step, per-site phase assignments for an ``num_steps``-step walk.

    ``thetas[k][i]`` is the phase (radians) of the beam splitter the
    walker meets at site ``i`` during step ``k`` (1-based).  Entries
    exist exactly for the mesh points reachable from the origin:
    |i| <= k-1 with i + k - 1 even.
    """

    num_steps: int
    thetas: Mapping[int, Mapping[int, float]]

    def __post_init__(self) -> None:
        if self.num_steps < 1:
            raise ValueError(f"num_steps must be >= 1, got {self.num_steps}")
        if set(self.thetas) != set(range(1, self.num_steps + 1)):
            raise ValueError("schedule must define steps 1..num_steps exactly")
        for k, row in self.thetas.items():
            expected = {int(i) for i in reachable_sites(k - 1)}
            if set(row) != expected:
                raise ValueError(
                    f"step {k} must define phases exactly for sites {sorted(expected)}"
                )
            for theta in row.values():
                if not math.isfinite(theta):
                    raise ValueError(f"step {k} has a non-finite phase")

    def theta(self, step: int, site: int) -> float:
        """Phase at mesh point (step, site)."""
        return self.thetas[step][site]

    def sites(self, step: int) -> list[int]:
        """Sites holding a beam splitter during ``step``, ascending."""
        return sorted(self.thetas[step])

    def entries(self) -> list[tuple[int, int, float]]:
        """All (step, site, theta) triples in (step, site) order."""
        return [
            (k, i, self.thetas[k][i])
            for k in range(1, self.num_steps + 1)
            for i in self.sites(k)
        ]


@dataclass(frozen=True)
class DisorderSpec:
    """How to draw a disorder ensemble, and how large it is."""

    kind: str
    seed: int
    realization_count: int

    def __post_init__(self) -> None:
        if self.kind not in DISORDER_KINDS:
            raise ValueError(f"kind must be one of {DISORDER_KINDS}, got {self.kind!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a nonnegative 64-bit integer, got {self.seed}")
        if self.realization_count < 1:
            raise ValueError(
                f"realization_count must be >= 1, got {self.realization_count}"
            )


def ordered_schedule(num_steps: int, theta: float) -> PhaseSchedule:
    """Constant phase ``theta`` at every mesh point (the ordered walk)."""
    if num_steps < 1:
        raise ValueError(f"num_steps must be >= 1, got {num_steps}")
    thetas = {
        k: {int(i): float(theta) for i in reachable_sites(k - 1)}
        for k in range(1, num_steps + 1)
    }
    return PhaseSchedule(num_steps, thetas)


def disordered_schedule(
    num_steps: int, spec: DisorderSpec, realization_index: int
) -> PhaseSchedule:
    """Draw one disorder realization.

    Realization ``j`` consumes a PCG64 stream seeded with
    ``numpy.random.SeedSequence([spec.seed, j])``, one draw per mesh
    point in (step, site-ascending) order.  That keyed derivation is the
    stability contract: the same (seed, index, num_steps) always
    reproduces the same schedule, and distinct indices use disjoint
    streams.
    """
    if num_steps < 1:
        raise ValueError(f"num_steps must be >= 1, got {num_steps}")
    if not 0 <= realization_index < spec.realization_count:
        raise ValueError(
            f"realization_index must be in [0, {spec.realization_count}), "
            f"got {realization_index}"
        )
    rng = np.random.default_rng(np.random.SeedSequence([spec.seed, realization_index]))
    thetas: dict[int, dict[int, float]] = {}
    for k in range(1, num_steps + 1):
        sites = reachable_sites(k - 1)
        if spec.kind == BINARY_0_PI:
            values = rng.integers(0, 2, size=sites.size) * math.pi
        else:
            values = rng.uniform(0.0, 2.0 * math.pi, size=sites.size)
        thetas[k] = {int(i): float(v) for i, v in zip(sites, values)}
    return PhaseSchedule(num_steps, thetas)


def ensemble_schedules(num_steps: int, spec: DisorderSpec) -> list[PhaseSchedule]:
    """All ``spec.realization_count`` realizations, in index order."""
    return [
        disordered_schedule(num_steps, spec, j) for j in range(spec.realization_count)
    ]
