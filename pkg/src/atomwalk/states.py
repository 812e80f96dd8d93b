"""Walker states on a finite 1D lattice with a two-level internal degree of freedom.

Sites are the integers x in [-L, L] where L is the state's half-width.  The
basis is ordered lexicographically: x ascending, spin up before spin down,
so the flat index of (x, s) is ``2 * (x + L) + s``.  The boundary sites
x = -L and x = +L act as guard cells: they must stay empty, and any
amplitude reaching them is reported as a :class:`BoundaryOverflowError`
instead of being wrapped or reflected.

All state types are immutable values; operations return new instances.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

__all__ = [
    "BoundaryOverflowError",
    "Spin",
    "PureState",
    "DensityOperator",
    "basis_index",
    "site_and_spin",
    "new_localized",
    "from_spinor",
    "to_density",
    "inner",
]


class BoundaryOverflowError(RuntimeError):
    """Amplitude reached the edge of the allocated lattice.

    Raised instead of silently wrapping or reflecting; allocate a larger
    half-width (L >= number of steps + initial support radius + 1).
    """


class Spin(IntEnum):
    """Two-level internal state of the walker."""

    UP = 0
    DOWN = 1


def basis_index(half_width: int, x: int, spin: Spin) -> int:
    """Flat index of the (site, spin) basis state."""
    if abs(x) > half_width:
        raise ValueError(f"site {x} outside lattice [-{half_width}, {half_width}]")
    return 2 * (x + half_width) + int(spin)


def site_and_spin(half_width: int, index: int) -> tuple[int, Spin]:
    """Inverse of :func:`basis_index`."""
    dim = 2 * (2 * half_width + 1)
    if not 0 <= index < dim:
        raise ValueError(f"index {index} outside [0, {dim})")
    return index // 2 - half_width, Spin(index % 2)


def _frozen_complex(values: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.shape != shape:
        raise ValueError(f"expected array of shape {shape}, got {arr.shape}")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class PureState:
    """Complex amplitude vector over (site, spin), in basis_index order."""

    half_width: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.half_width < 1:
            raise ValueError("half_width must be a positive integer")
        dim = 2 * (2 * self.half_width + 1)
        object.__setattr__(
            self, "amplitudes", _frozen_complex(self.amplitudes, (dim,))
        )

    @property
    def dimension(self) -> int:
        return self.amplitudes.shape[0]

    def sites(self) -> np.ndarray:
        """Site coordinates -L..L, ascending."""
        return np.arange(-self.half_width, self.half_width + 1)

    def by_site(self) -> np.ndarray:
        """Read-only view shaped (n_sites, 2) with spin as the fast axis."""
        return self.amplitudes.reshape(-1, 2)

    def amplitude(self, x: int, spin: Spin) -> complex:
        return complex(self.amplitudes[basis_index(self.half_width, x, spin)])

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def to_json(self) -> str:
        """Serialize as {"half_width": L, "amplitudes": [[re, im], ...]}."""
        pairs = [[float(a.real), float(a.imag)] for a in self.amplitudes]
        return json.dumps({"half_width": self.half_width, "amplitudes": pairs})

    @classmethod
    def from_json(cls, text: str) -> "PureState":
        data = json.loads(text)
        amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
        return cls(half_width=int(data["half_width"]), amplitudes=amps)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Operator on the (site, spin) space; for physical states it is
    Hermitian, unit trace, and positive semidefinite."""

    half_width: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        if self.half_width < 1:
            raise ValueError("half_width must be a positive integer")
        dim = 2 * (2 * self.half_width + 1)
        object.__setattr__(self, "matrix", _frozen_complex(self.matrix, (dim, dim)))

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


def new_localized(half_width: int, x0: int, spin: Spin) -> PureState:
    """Unit-norm state concentrated on the single basis state (x0, spin).

    Requires |x0| < half_width so the guard cells at the lattice edge start
    out empty.
    """
    if abs(x0) >= half_width:
        raise ValueError(
            f"initial site {x0} violates |x0| < half_width = {half_width}: "
            "boundary sites must stay empty"
        )
    amps = np.zeros(2 * (2 * half_width + 1), dtype=np.complex128)
    amps[basis_index(half_width, x0, spin)] = 1.0
    return PureState(half_width, amps)


def from_spinor(half_width: int, x0: int, up: complex, down: complex) -> PureState:
    """State localized at one site with an arbitrary normalized spin pair."""
    if abs(x0) >= half_width:
        raise ValueError(
            f"initial site {x0} violates |x0| < half_width = {half_width}: "
            "boundary sites must stay empty"
        )
    if abs(abs(up) ** 2 + abs(down) ** 2 - 1.0) > 1e-12:
        raise ValueError("spin amplitudes must be normalized")
    amps = np.zeros(2 * (2 * half_width + 1), dtype=np.complex128)
    amps[basis_index(half_width, x0, Spin.UP)] = up
    amps[basis_index(half_width, x0, Spin.DOWN)] = down
    return PureState(half_width, amps)


def to_density(psi: PureState) -> DensityOperator:
    """Projector |psi><psi|; its trace equals the squared norm of psi."""
    return DensityOperator(
        psi.half_width, np.outer(psi.amplitudes, psi.amplitudes.conj())
    )


def inner(a: PureState, b: PureState) -> complex:
    """Inner product <a|b> (conjugate-linear in the first argument)."""
    if a.half_width != b.half_width:
        raise ValueError(
            f"half_width mismatch: {a.half_width} != {b.half_width}"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))
