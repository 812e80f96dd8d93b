"""Unitary building blocks of one walk step and n-step evolution.

A step is the fixed composition coin -> spin-conditioned shift -> linear
phase.  The coin rotates the two spin amplitudes at every site, the shift
moves each spin component by one site in its own direction, and the
optional phase multiplies each amplitude by exp(i * phi * x), the discrete
analog of a homogeneous force.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import BoundaryOverflowError, PureState, Spin

__all__ = [
    "CoinParams",
    "ShiftMap",
    "StepConfig",
    "coin_matrix",
    "apply_coin",
    "apply_shift",
    "apply_electric_phase",
    "step",
    "evolve",
]

_TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class CoinParams:
    """Spin rotation angle theta with optional pre/post phases alpha, beta.

    Angles are reduced modulo 2*pi.  theta = pi/2 with zero phases is the
    balanced (Hadamard-like) coin producing an equal superposition.
    """

    theta: float
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self) -> None:
        for name in ("theta", "alpha", "beta"):
            object.__setattr__(self, name, float(np.mod(getattr(self, name), _TWO_PI)))


@dataclass(frozen=True)
class ShiftMap:
    """Per-spin unit displacement; the two spins move in opposite directions."""

    up: int = -1
    down: int = +1

    def __post_init__(self) -> None:
        if {self.up, self.down} != {-1, +1}:
            raise ValueError(
                "shift map must assign opposite unit displacements, got "
                f"up={self.up}, down={self.down}"
            )

    def of(self, spin: Spin) -> int:
        return self.up if spin is Spin.UP else self.down


@dataclass(frozen=True)
class StepConfig:
    """Everything defining one walk step."""

    coin: CoinParams
    shift: ShiftMap = ShiftMap()
    electric_phase: float = 0.0


def coin_matrix(c: CoinParams) -> np.ndarray:
    """2x2 unitary diag(e^{i alpha}, 1) @ R(theta) @ diag(1, e^{i beta})
    acting on (up, down), where R(theta) = [[cos(theta/2), -sin(theta/2)],
    [sin(theta/2), cos(theta/2)]]."""
    ch = np.cos(c.theta / 2.0)
    sh = np.sin(c.theta / 2.0)
    ea = np.exp(1j * c.alpha)
    eb = np.exp(1j * c.beta)
    return np.array([[ea * ch, -ea * eb * sh], [sh, eb * ch]], dtype=np.complex128)


# The primitives below act on the last axis of an array holding one state
# per leading index, so the same code drives pure states (shape (d,)),
# density-matrix columns (shape (d, d)) and two-particle tensors.


def _coin_on(arr: np.ndarray, u: np.ndarray) -> np.ndarray:
    a = arr.reshape(*arr.shape[:-1], -1, 2)
    return (a @ u.T).reshape(arr.shape)


def _shift_on(arr: np.ndarray, shift: ShiftMap) -> np.ndarray:
    a = arr.reshape(*arr.shape[:-1], -1, 2)
    if np.any(a[..., 0, :] != 0) or np.any(a[..., -1, :] != 0):
        raise BoundaryOverflowError(
            "nonzero amplitude on a boundary site before a shift; "
            "allocate a larger half_width"
        )
    out = np.zeros_like(a)
    for s, d in ((0, shift.up), (1, shift.down)):
        if d == -1:
            out[..., :-1, s] = a[..., 1:, s]
        else:
            out[..., 1:, s] = a[..., :-1, s]
    return out.reshape(arr.shape)


def _phase_on(arr: np.ndarray, half_width: int, phi: float) -> np.ndarray:
    if phi == 0.0:
        return arr
    x = np.arange(-half_width, half_width + 1)
    ph = np.exp(1j * phi * x)
    a = arr.reshape(*arr.shape[:-1], -1, 2) * ph[:, None]
    return a.reshape(arr.shape)


def _step_on(arr: np.ndarray, half_width: int, cfg: StepConfig) -> np.ndarray:
    out = _coin_on(arr, coin_matrix(cfg.coin))
    out = _shift_on(out, cfg.shift)
    return _phase_on(out, half_width, cfg.electric_phase)


def apply_coin(state: PureState, c: CoinParams) -> PureState:
    """Rotate the spin amplitude pair at every site by the coin matrix."""
    return PureState(state.half_width, _coin_on(state.amplitudes, coin_matrix(c)))


def apply_shift(state: PureState, shift: ShiftMap = ShiftMap()) -> PureState:
    """Move each spin component by one site in its own direction.

    Raises :class:`BoundaryOverflowError` if a boundary site is occupied.
    """
    return PureState(state.half_width, _shift_on(state.amplitudes, shift))


def apply_electric_phase(state: PureState, phi: float) -> PureState:
    """Multiply the amplitude at site x by exp(i * phi * x)."""
    return PureState(
        state.half_width, _phase_on(state.amplitudes, state.half_width, phi)
    )


def step(state: PureState, cfg: StepConfig) -> PureState:
    """One walk step: coin, then shift, then electric phase."""
    return PureState(state.half_width, _step_on(state.amplitudes, state.half_width, cfg))


def evolve(state: PureState, cfg: StepConfig, n: int) -> PureState:
    """n repetitions of :func:`step`."""
    if n < 0:
        raise ValueError("step count must be nonnegative")
    amps = state.amplitudes
    for _ in range(n):
        amps = _step_on(amps, state.half_width, cfg)
    return PureState(state.half_width, amps)
