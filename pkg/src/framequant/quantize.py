"""Frame quantization f -> Lambda_f and the operators built from it.

Besides the quantization map itself this module holds the discrete harmonic
oscillator (quantization of (n^2 + k^2)/2), ordering of real eigenvectors by
sign alternations, the fractional Fourier transform on such an ordered basis,
and the finite-difference Harper operator used as a comparison basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .coherent import CoherentFrame, coherent_frame
from .errors import DimensionError, OrderingError
from .hilbert import HilbertSpace, _frozen, center_mod, dft, hermitian_defect

ZERO_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class PhaseSpaceFunction:
    """Values f(n, k) on the d x d grid; ``values[i, j] = f(i - s, j - s)``."""

    space: HilbertSpace
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values)
        if vals.shape != (self.space.d, self.space.d):
            raise DimensionError(f"function grid has shape {vals.shape}, expected {(self.space.d,) * 2}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __call__(self, n: int, k: int):
        return self.values[self.space.slot(n), self.space.slot(k)]

    @property
    def d(self) -> int:
        return self.space.d

    def is_real(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(np.imag(self.values)) <= tol))

    def is_nonnegative(self, tol: float = 0.0) -> bool:
        return self.is_real(tol) and bool(np.all(np.real(self.values) >= -tol))

    def total(self):
        return self.values.sum()

    def reindex(self, rule: Callable[[np.ndarray, np.ndarray], tuple]) -> "PhaseSpaceFunction":
        """g(n, k) = f(*rule(n, k)), arguments reduced mod d."""
        n, k = np.meshgrid(self.space.indices, self.space.indices, indexing="ij")
        src_n, src_k = rule(n, k)
        s = self.space.s
        vals = self.values[center_mod(np.asarray(src_n), self.space) + s,
                           center_mod(np.asarray(src_k), self.space) + s]
        return PhaseSpaceFunction(self.space, vals)

    @classmethod
    def from_callable(cls, space: HilbertSpace, fn) -> "PhaseSpaceFunction":
        n, k = np.meshgrid(space.indices, space.indices, indexing="ij")
        return cls(space, np.asarray(fn(n, k)) * np.ones((space.d, space.d)))

    @classmethod
    def constant(cls, space: HilbertSpace, value) -> "PhaseSpaceFunction":
        return cls(space, np.full((space.d, space.d), value))

    @classmethod
    def delta(cls, space: HilbertSpace, m: int, l: int, height=None) -> "PhaseSpaceFunction":
        """Height ``d`` at (m, l) and zero elsewhere unless ``height`` is given."""
        vals = np.zeros((space.d, space.d))
        vals[space.slot(m), space.slot(l)] = space.d if height is None else height
        return cls(space, vals)

    def __add__(self, other):
        return PhaseSpaceFunction(self.space, self.values + _values(other))

    def __mul__(self, scalar):
        return PhaseSpaceFunction(self.space, self.values * scalar)

    __rmul__ = __mul__


def _values(f) -> np.ndarray:
    return f.values if isinstance(f, PhaseSpaceFunction) else np.asarray(f)


def as_function(space: HilbertSpace, f) -> PhaseSpaceFunction:
    if isinstance(f, PhaseSpaceFunction):
        if f.space != space:
            raise DimensionError(f"function lives on d={f.d}, expected d={space.d}")
        return f
    return PhaseSpaceFunction(space, np.asarray(f))


def quantize(frame: CoherentFrame, f) -> np.ndarray:
    """Lambda_f = (1/d) sum_{n,k} f(n,k) |n;k><n;k|."""
    f = as_function(frame.space, f)
    v = frame.vectors()
    return (v.T * f.values.ravel()) @ v.conj() / frame.d


def quantize_trace(f) -> complex:
    """(1/d) sum f(n, k), which equals tr Lambda_f."""
    vals = _values(f)
    return complex(vals.sum() / vals.shape[0])


def harmonic_function(space: HilbertSpace) -> PhaseSpaceFunction:
    return PhaseSpaceFunction.from_callable(space, lambda n, k: (n**2 + k**2) / 2)


def harmonic_operator(frame: CoherentFrame) -> np.ndarray:
    """Lambda_f for f(n, k) = (n^2 + k^2)/2; real symmetric, commutes with F."""
    return quantize(frame, harmonic_function(frame.space))


def harper_operator(space: HilbertSpace) -> np.ndarray:
    """H = 2 cos(2 pi q / d) + 2 cos(2 pi p / d).

    The momentum term is the cyclic hopping psi(n-1) + psi(n+1), so the matrix
    is assembled directly in real arithmetic.
    """
    d = space.d
    hop = np.roll(np.eye(d), 1, axis=1) + np.roll(np.eye(d), -1, axis=1)
    return _frozen((np.diag(2 * np.cos(2 * np.pi * space.indices / d)) + hop).astype(complex))


def sign_alternations(vec, tol: float = ZERO_TOL) -> int:
    """Strict sign changes along psi(-s)..psi(s), skipping entries with |x| < tol."""
    x = np.real(np.asarray(vec))
    x = x[np.abs(x) >= tol]
    return int(np.count_nonzero(np.signbit(x[1:]) != np.signbit(x[:-1])))


@dataclass(frozen=True, eq=False)
class OrderedEigenbasis:
    """Eigenvectors sorted by sign alternations; ``vectors[j]`` is psi_j."""

    space: HilbertSpace
    vectors: np.ndarray
    eigenvalues: np.ndarray
    alternation_counts: np.ndarray

    def __len__(self):
        return len(self.eigenvalues)


def order_by_sign_alternations(op, tol: float = 1e-10) -> OrderedEigenbasis:
    """Diagonalize a real symmetric operator and sort eigenvectors by node count.

    Each eigenvector gets a global sign making its first non-negligible entry
    positive. Raises :class:`OrderingError` when two eigenvectors share a count,
    which always happens on degenerate spectra such as the identity.
    """
    op = np.asarray(op)
    d = op.shape[0]
    if np.iscomplexobj(op) and np.max(np.abs(op.imag), initial=0.0) > tol:
        raise ValueError("sign-alternation ordering needs a real matrix")
    if hermitian_defect(op) > tol:
        raise ValueError("sign-alternation ordering needs a symmetric matrix")
    real = np.real(op)
    evals, evecs = np.linalg.eigh((real + real.T) / 2)
    vecs = evecs.T.copy()
    for v in vecs:
        lead = np.flatnonzero(np.abs(v) > ZERO_TOL)
        if lead.size and v[lead[0]] < 0:
            v *= -1
    counts = np.array([sign_alternations(v) for v in vecs])
    if len(set(counts.tolist())) != d:
        raise OrderingError(
            f"eigenvectors do not have distinct sign-alternation counts: {counts.tolist()}", counts)
    order = np.argsort(counts, kind="stable")
    return OrderedEigenbasis(
        HilbertSpace.from_dim(d),
        _frozen(vecs[order].astype(complex)),
        _frozen(evals[order]),
        _frozen(counts[order]),
    )


def fourier_eigen_residuals(basis: OrderedEigenbasis) -> dict:
    """How far each psi_n is from being a Fourier eigenvector.

    ``best`` is min over lambda in {1, -i, -1, i} of ||F psi_n - lambda psi_n||;
    ``nominal`` uses lambda = (-i)^n for the level index n.
    """
    f = dft(basis.space)
    roots = np.array([1, -1j, -1, 1j])
    best, nominal, labels = [], [], []
    for level, psi in enumerate(basis.vectors):
        image = f @ psi
        devs = [np.linalg.norm(image - r * psi) for r in roots]
        j = int(np.argmin(devs))
        best.append(float(devs[j]))
        labels.append(j)
        nominal.append(float(np.linalg.norm(image - (-1j) ** level * psi)))
    return {"best": best, "best_power": labels, "nominal": nominal}


def frac_fourier(basis: OrderedEigenbasis, alpha: float) -> np.ndarray:
    """F^alpha = sum_n exp(-i pi n alpha / 2) |psi_n><psi_n|."""
    levels = np.arange(len(basis))
    phases = np.exp(-1j * np.pi * levels * alpha / 2)
    v = basis.vectors
    return (v.T * phases) @ v.conj()


def hermite_gauss_samples(space: HilbertSpace, level: int) -> np.ndarray:
    """Normalized samples of H_n(q sqrt(2 pi / d)) exp(-pi q^2 / d) at q = -s..s."""
    if not 0 <= level <= space.d - 1:
        raise ValueError(f"level must lie in [0, {space.d - 1}], got {level}")
    q = space.indices.astype(float)
    herm = np.polynomial.hermite.Hermite.basis(level)
    vals = herm(q * np.sqrt(2 * np.pi / space.d)) * np.exp(-np.pi * q**2 / space.d)
    return _frozen((vals / np.linalg.norm(vals)).astype(complex))


def harmonic_basis(space: HilbertSpace) -> OrderedEigenbasis:
    return order_by_sign_alternations(harmonic_operator(coherent_frame(space)))


def harper_basis(space: HilbertSpace) -> OrderedEigenbasis:
    return order_by_sign_alternations(harper_operator(space))
