"""Displacement operators and the discrete coherent-state tight frame."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gaussian import discrete_gaussian, vacuum_norm, vacuum_state
from .hilbert import HilbertSpace, _frozen, center_mod, dft, parity_op


def _phase(space: HilbertSpace, n: int, k: int) -> complex:
    return np.exp(-1j * np.pi * n * k / space.d)


def position_shift(space: HilbertSpace, k: int) -> np.ndarray:
    """exp(2 pi i k q / d), diagonal in the standard basis."""
    return np.diag(np.exp(2j * np.pi * k * space.indices / space.d))


def momentum_shift(space: HilbertSpace, n: int) -> np.ndarray:
    """exp(-2 pi i n p / d), the cyclic translation |m> -> |m + n>.

    Equal to F^dagger diag(exp(-2 pi i n a / d)) F, but exact as a permutation.
    """
    return np.roll(np.eye(space.d, dtype=complex), center_mod(n, space), axis=0)


def displacement(space: HilbertSpace, n: int, k: int) -> np.ndarray:
    """D(n, k) = exp(-pi i n k / d) exp(2 pi i k q / d) exp(-2 pi i n p / d).

    ``n`` and ``k`` are reduced to [-s, s] first; the global phase depends on
    the representative, so callers get the centered convention.
    """
    n, k = center_mod(n, space), center_mod(k, space)
    return _frozen(_phase(space, n, k) * position_shift(space, k) @ momentum_shift(space, n))


def coherent_state(space: HilbertSpace, n: int, k: int) -> np.ndarray:
    """Closed form <m|n;k> = N^{-1/2} e^{-pi i n k/d} e^{2 pi i k m/d} g_1(m - n)."""
    n, k = center_mod(n, space), center_mod(k, space)
    m = space.indices
    g = discrete_gaussian(space)
    amp = g[center_mod(m - n, space) + space.s]
    out = _phase(space, n, k) * np.exp(2j * np.pi * k * m / space.d) * amp / np.sqrt(vacuum_norm(space))
    return _frozen(out)


def coherent_state_applied(space: HilbertSpace, n: int, k: int) -> np.ndarray:
    """D(n, k)|0;0>; cross-check for :func:`coherent_state`."""
    return displacement(space, n, k) @ vacuum_state(space)


@dataclass(frozen=True, eq=False)
class CoherentFrame:
    """All d^2 coherent states; ``states[i, j]`` is |n;k> with n = i - s, k = j - s."""

    space: HilbertSpace
    states: np.ndarray
    vacuum_norm: float

    @property
    def d(self) -> int:
        return self.space.d

    def state(self, n: int, k: int) -> np.ndarray:
        return self.states[self.space.slot(n), self.space.slot(k)]

    def vectors(self) -> np.ndarray:
        """(d^2, d) matrix of frame vectors, row-major over (n, k)."""
        return self.states.reshape(self.d * self.d, self.d)

    def gram(self) -> np.ndarray:
        """Overlaps <n;k|m;l> over flattened labels."""
        v = self.vectors()
        return v.conj() @ v.T


@lru_cache(maxsize=64)
def _frame(s: int) -> CoherentFrame:
    space = HilbertSpace(s)
    idx = space.indices
    states = np.empty((space.d, space.d, space.d), dtype=complex)
    for i, n in enumerate(idx):
        for j, k in enumerate(idx):
            states[i, j] = coherent_state(space, n, k)
    return CoherentFrame(space, _frozen(states), vacuum_norm(space))


def coherent_frame(space: HilbertSpace) -> CoherentFrame:
    """Frame for ``space``; cached, so repeated calls share one immutable object."""
    return _frame(space.s)


def frame_operator(frame: CoherentFrame) -> np.ndarray:
    v = frame.vectors()
    return v.T @ v.conj() / frame.d


def resolution_residual(frame: CoherentFrame) -> float:
    """|| (1/d) sum |n;k><n;k| - I ||_F."""
    return float(np.linalg.norm(frame_operator(frame) - np.eye(frame.d)))


def fourier_maps_frame(frame: CoherentFrame) -> float:
    """max over (n, k) of || F|n;k> - |k;-n> ||."""
    f = dft(frame.space)
    worst = 0.0
    for n in frame.space.indices:
        for k in frame.space.indices:
            dev = np.linalg.norm(f @ frame.state(n, k) - frame.state(k, -n))
            worst = max(worst, dev)
    return float(worst)


def parity_maps_frame(frame: CoherentFrame) -> float:
    """max over (n, k) of || Pi|n;k> - |-n;-k> ||."""
    p = parity_op(frame.space)
    worst = 0.0
    for n in frame.space.indices:
        for k in frame.space.indices:
            worst = max(worst, np.linalg.norm(p @ frame.state(n, k) - frame.state(-n, -k)))
    return float(worst)


def displacement_shifts_frame(frame: CoherentFrame, m: int, l: int) -> float:
    """Projector-level deviation of D(m,l)|n;k><n;k|D(m,l)^dagger from |n+m;k+l><n+m;k+l|."""
    space = frame.space
    dm = displacement(space, m, l)
    worst = 0.0
    for n in space.indices:
        for k in space.indices:
            moved = dm @ frame.state(n, k)
            target = frame.state(n + m, k + l)
            dev = np.linalg.norm(np.outer(moved, moved.conj()) - np.outer(target, target.conj()))
            worst = max(worst, dev)
    return float(worst)
