"""Beam-splitter coin operators.

The coin is the 2x2 unitary a lossless beam splitter applies to its two
path modes.  Its entries are fixed by the intensity reflectivity R and
by the settings of the phase plates sitting in the two output ports:

    alpha = sqrt(R)   * exp(i (theta0 + pi/2))     (0 -> 0, reflected)
    beta  = sqrt(1-R) * exp(i theta0)              (1 -> 0, transmitted)
    gamma = sqrt(1-R) * exp(i theta1)              (0 -> 1, transmitted)
    delta = sqrt(R)   * exp(i (theta1 + pi/2))     (1 -> 1, reflected)

The pi/2 offsets on the reflected amplitudes keep the matrix unitary for
every R and every phase setting; only the difference theta0 - theta1 is
observable in any measured distribution.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = ["CoinParams", "build_coin", "is_unitary"]


@dataclass(frozen=True)
class CoinParams:
    """Optical parameters of one beam-splitter mesh point."""

    reflectivity: float
    theta0: float = 0.0
    theta1: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.reflectivity <= 1.0:
            raise ValueError(f"reflectivity must be in [0, 1], got {self.reflectivity}")
        if not (math.isfinite(self.theta0) and math.isfinite(self.theta1)):
            raise ValueError("phase settings must be finite")

    @property
    def theta(self) -> float:
        """The observable phase difference theta0 - theta1."""
        return self.theta0 - self.theta1


def build_coin(params: CoinParams) -> np.ndarray:
    """Return the 2x2 coin matrix ((alpha, beta), (gamma, delta)).

    Rows index the output port, columns the input port.  Degenerate
    reflectivities are allowed: R = 1 gives a phase-decorated identity,
    R = 0 a phase-decorated swap.
    """
    r = math.sqrt(params.reflectivity)
    t = math.sqrt(1.0 - params.reflectivity)
    half_pi = math.pi / 2
    return np.array(
        [
            [r * cmath.exp(1j * (params.theta0 + half_pi)), t * cmath.exp(1j * params.theta0)],
            [t * cmath.exp(1j * params.theta1), r * cmath.exp(1j * (params.theta1 + half_pi))],
        ],
        dtype=np.complex128,
    )


def is_unitary(matrix: np.ndarray, atol: float = 1e-12) -> bool:
    """True if ``matrix`` is unitary within ``atol``."""
    matrix = np.asarray(matrix)
    ident = np.eye(matrix.shape[0], dtype=np.complex128)
    return np.allclose(matrix.conj().T @ matrix, ident, rtol=0.0, atol=atol)
