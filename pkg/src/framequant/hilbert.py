"""Centered odd-dimensional Hilbert space.

Vectors are plain complex numpy arrays of length ``d`` and operators are
``d x d`` complex arrays. Storage slot ``i`` holds the component at centered
index ``n = i - s``; every public function here speaks centered indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionError

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class HilbertSpace:
    """The space l^2(R) with R = {-s, ..., s} and d = 2s + 1."""

    s: int

    def __post_init__(self):
        if int(self.s) != self.s or self.s < 0:
            raise DimensionError(f"half-range s must be a nonnegative integer, got {self.s!r}")

    @property
    def d(self) -> int:
        return 2 * self.s + 1

    @property
    def indices(self) -> np.ndarray:
        """Centered indices -s..s in storage order."""
        return np.arange(-self.s, self.s + 1)

    def slot(self, n: int) -> int:
        """Storage slot of centered index ``n`` (reduced mod d first)."""
        return center_mod(n, self) + self.s

    @classmethod
    def from_dim(cls, d: int) -> "HilbertSpace":
        if int(d) != d or d < 1 or d % 2 == 0:
            raise DimensionError(f"dimension must be odd and positive, got {d!r}")
        return cls((int(d) - 1) // 2)


def make_space(s: int) -> HilbertSpace:
    return HilbertSpace(int(s))


def center_mod(n, space: HilbertSpace):
    """Representative of ``n`` mod d lying in [-s, s]. Works elementwise on arrays."""
    s, d = space.s, space.d
    return (np.asarray(n) + s) % d - s if isinstance(n, np.ndarray) else (int(n) + s) % d - s


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def basis_state(space: HilbertSpace, m: int) -> np.ndarray:
    v = np.zeros(space.d, dtype=complex)
    v[space.slot(m)] = 1.0
    return _frozen(v)


def inner(psi, phi) -> complex:
    """<psi, phi>, conjugate-linear in the first argument."""
    psi = np.asarray(psi)
    phi = np.asarray(phi)
    if psi.shape != phi.shape:
        raise DimensionError(f"cannot pair vectors of shapes {psi.shape} and {phi.shape}")
    return complex(np.vdot(psi, phi))


def norm(psi) -> float:
    return float(np.linalg.norm(psi))


def identity(space: HilbertSpace) -> np.ndarray:
    return _frozen(np.eye(space.d, dtype=complex))


@lru_cache(maxsize=None)
def _dft(s: int) -> np.ndarray:
    d = 2 * s + 1
    n = np.arange(-s, s + 1)
    return _frozen(np.exp(-2j * np.pi * np.outer(n, n) / d) / np.sqrt(d))


def dft(space: HilbertSpace) -> np.ndarray:
    """Unitary DFT with entry (k, n) = d^{-1/2} exp(-2 pi i k n / d)."""
    return _dft(space.s)


def position_op(space: HilbertSpace) -> np.ndarray:
    return _frozen(np.diag(space.indices.astype(complex)))


def momentum_op(space: HilbertSpace) -> np.ndarray:
    """p = F^dagger q F."""
    f = dft(space)
    return _frozen(f.conj().T @ position_op(space) @ f)


def parity_op(space: HilbertSpace) -> np.ndarray:
    """Pi |j> = |-j>: the anti-diagonal permutation."""
    return _frozen(np.eye(space.d, dtype=complex)[::-1])


def frob(a) -> float:
    return float(np.linalg.norm(a))


def hermitian_defect(a) -> float:
    a = np.asarray(a)
    return frob(a - a.conj().T)


def unitary_defect(a) -> float:
    a = np.asarray(a)
    return frob(a.conj().T @ a - np.eye(a.shape[0]))


def is_hermitian(a, tol: float = DEFAULT_TOL) -> bool:
    return hermitian_defect(a) < tol


def is_unitary(a, tol: float = DEFAULT_TOL) -> bool:
    return unitary_defect(a) < tol


def min_eigenvalue(a) -> float:
    """Smallest eigenvalue of the Hermitian part of ``a``."""
    a = np.asarray(a)
    return float(np.linalg.eigvalsh((a + a.conj().T) / 2)[0])


def is_psd(a, tol: float = DEFAULT_TOL) -> bool:
    return min_eigenvalue(a) >= -tol


def check_square(a, d: int, what: str = "operator") -> np.ndarray:
    a = np.asarray(a)
    if a.shape != (d, d):
        raise DimensionError(f"{what} has shape {a.shape}, expected {(d, d)}")
    return a
