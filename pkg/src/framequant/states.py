"""Density operators rho_f obtained by quantizing phase-space distributions.

A valid generating function f is real, takes values in [0, d] and sums to d.
The covariance helpers (Fourier, displacement, transposition, parity) return
the transformed state together with the reindexed function g, after checking
that the transformed matrix really equals rho_g.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .coherent import CoherentFrame, coherent_frame, displacement
from .errors import (
    ComplexEntryError,
    CovarianceError,
    DimensionError,
    EntryTooLargeError,
    MissingSourceError,
    NegativeEntryError,
    WrongTotalError,
)
from .hilbert import (
    DEFAULT_TOL,
    HilbertSpace,
    _frozen,
    center_mod,
    check_square,
    dft,
    hermitian_defect,
    min_eigenvalue,
    parity_op,
)
from .quantize import PhaseSpaceFunction, as_function, quantize

TOTAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, unit-trace, positive semidefinite matrix.

    ``source`` is the generating function when the state was built by frame
    quantization; operations that rely on it raise :class:`MissingSourceError`
    otherwise. ``source`` may also be a bipartite function (see ``composite``).
    """

    matrix: np.ndarray
    source: Union[PhaseSpaceFunction, object, None] = None
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"density matrix must be square, got shape {m.shape}")
        if hermitian_defect(m) >= self.tol:
            raise ValueError(f"matrix is not Hermitian (defect {hermitian_defect(m):.3e})")
        if abs(np.trace(m) - 1) >= self.tol:
            raise ValueError(f"trace is {np.trace(m).real:.12g}, expected 1")
        if min_eigenvalue(m) < -self.tol:
            raise ValueError(f"matrix is not positive semidefinite (min eigenvalue {min_eigenvalue(m):.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def space(self) -> HilbertSpace:
        return HilbertSpace.from_dim(self.dim)

    def eigenvalues(self) -> np.ndarray:
        """Spectrum with the tiny negative round-off clamped to zero."""
        ev = np.linalg.eigvalsh(self.matrix)
        return np.where((ev < 0) & (ev > -self.tol), 0.0, ev)

    def require_source(self):
        if self.source is None:
            raise MissingSourceError("operation needs a state built from a phase-space function")
        return self.source


def validate_function(f: PhaseSpaceFunction, bound: float, target: float, tol: float = TOTAL_TOL) -> np.ndarray:
    """Check f is real, 0 <= f <= bound and sum f == target; return the real grid."""
    vals = np.asarray(f.values)
    if np.iscomplexobj(vals):
        if np.max(np.abs(vals.imag)) > tol:
            raise ComplexEntryError("phase-space function must be real")
        vals = vals.real
    if np.min(vals) < -tol:
        raise NegativeEntryError(f"phase-space function has a negative entry ({np.min(vals):.3e})")
    if np.max(vals) > bound + tol:
        raise EntryTooLargeError(f"phase-space function exceeds {bound} ({np.max(vals):.6g})")
    total = float(vals.sum())
    if abs(total - target) > tol:
        raise WrongTotalError(f"phase-space function sums to {total:.12g}, expected {target}")
    return vals


def density_from_function(frame: CoherentFrame, f) -> DensityOperator:
    """rho_f = (1/d) sum f(n,k) |n;k><n;k| for a valid distribution f."""
    f = as_function(frame.space, f)
    vals = validate_function(f, frame.d, frame.d)
    f = PhaseSpaceFunction(frame.space, vals)
    return DensityOperator(quantize(frame, f), f)


def random_function(space: HilbertSpace, rng: np.random.Generator, support: int | None = None) -> PhaseSpaceFunction:
    """Random valid f: Dirichlet weights scaled to sum to d, optionally on ``support`` cells."""
    d = space.d
    weights = rng.dirichlet(np.ones(d * d))
    if support is not None:
        mask = np.zeros(d * d)
        mask[rng.choice(d * d, size=support, replace=False)] = 1
        weights = weights * mask
        weights /= weights.sum()
    return PhaseSpaceFunction(space, (d * weights).reshape(d, d))


def purity(rho: DensityOperator) -> float:
    """tr rho^2."""
    m = rho.matrix
    return float(np.real(np.vdot(m.conj().T, m)))


def purity_from_source(rho: DensityOperator) -> float:
    """(1/d^2) sum f(n,k) f(m,l) |<n;k|m;l>|^2, the frame-side route to tr rho^2."""
    f = rho.require_source()
    frame = coherent_frame(f.space)
    w = np.real(f.values).ravel()
    g2 = np.abs(frame.gram()) ** 2
    return float(w @ g2 @ w / frame.d**2)


def expectation(rho: DensityOperator, a) -> complex:
    """(1/d) sum f(n,k) <n;k|A|n;k>; equals tr(A rho)."""
    f = rho.require_source()
    frame = coherent_frame(f.space)
    a = check_square(a, frame.d)
    v = frame.vectors()
    diag = np.einsum("ji,ik,jk->j", v.conj(), a, v)
    return complex(np.real(f.values).ravel() @ diag / frame.d)


def _covariant(rho: DensityOperator, transformed: np.ndarray, g: PhaseSpaceFunction, tol: float):
    frame = coherent_frame(g.space)
    target = quantize(frame, g)
    residual = float(np.linalg.norm(transformed - target))
    if residual >= tol:
        raise CovarianceError(f"transformed state differs from rho_g by {residual:.3e}")
    return DensityOperator(transformed, g), g, residual


def _fourier(rho, tol):
    f = rho.require_source()
    fm = dft(f.space)
    g = f.reindex(lambda n, k: (-k, n))
    return _covariant(rho, fm @ rho.matrix @ fm.conj().T, g, tol)


def _displace(rho, m, l, tol):
    f = rho.require_source()
    dm = displacement(f.space, m, l)
    g = f.reindex(lambda n, k: (n - m, k - l))
    return _covariant(rho, dm @ rho.matrix @ dm.conj().T, g, tol)


def _transpose(rho, tol):
    f = rho.require_source()
    g = f.reindex(lambda n, k: (n, -k))
    return _covariant(rho, rho.matrix.T, g, tol)


def _parity(rho, tol):
    f = rho.require_source()
    p = parity_op(f.space)
    g = f.reindex(lambda n, k: (-n, -k))
    return _covariant(rho, p @ rho.matrix @ p, g, tol)


def fourier_transform_density(rho: DensityOperator, tol: float = DEFAULT_TOL):
    """F rho_f F^dagger = rho_g with g(n, k) = f(-k, n)."""
    return _fourier(rho, tol)[:2]


def displace_density(rho: DensityOperator, m: int, l: int, tol: float = DEFAULT_TOL):
    """D(m,l) rho_f D(m,l)^dagger = rho_g with g(n, k) = f(n - m, k - l)."""
    return _displace(rho, m, l, tol)[:2]


def transpose_density(rho: DensityOperator, tol: float = DEFAULT_TOL):
    """rho_f^T = rho_g with g(n, k) = f(n, -k)."""
    return _transpose(rho, tol)[:2]


def parity_density(rho: DensityOperator, tol: float = DEFAULT_TOL):
    """Pi rho_f Pi = rho_g with g(n, k) = f(-n, -k)."""
    return _parity(rho, tol)[:2]


def covariance_residuals(rho: DensityOperator, shift=(1, 1)) -> dict:
    """Residuals of the four covariance identities; never raises on a mismatch."""
    inf = float("inf")
    return {
        "fourier": _fourier(rho, inf)[2],
        "displacement": _displace(rho, shift[0], shift[1], inf)[2],
        "transpose": _transpose(rho, inf)[2],
        "parity": _parity(rho, inf)[2],
    }


def convex_combine(lam: float, rho_f: DensityOperator, rho_g: DensityOperator) -> DensityOperator:
    """rho_h with h = (1 - lam) f + lam g."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {lam}")
    f, g = rho_f.require_source(), rho_g.require_source()
    if f.space != g.space:
        raise DimensionError("states live on different spaces")
    h = PhaseSpaceFunction(f.space, (1 - lam) * np.real(f.values) + lam * np.real(g.values))
    return density_from_function(coherent_frame(f.space), h)


@dataclass(frozen=True, eq=False)
class WignerGrid:
    """W(n, k) on the d x d grid, ``values[i, j] = W(i - s, j - s)``."""

    space: HilbertSpace
    values: np.ndarray

    def __call__(self, n: int, k: int) -> float:
        return float(self.values[self.space.slot(n), self.space.slot(k)])

    def total(self) -> float:
        return float(self.values.sum())

    def position_marginal(self) -> np.ndarray:
        return self.values.sum(axis=1)


def _matrix(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho)


def wigner_raw(rho) -> np.ndarray:
    """Complex W(n,k) = (1/d) sum_m exp(-4 pi i k m / d) <n+m|rho|n-m>."""
    m_ = _matrix(rho)
    space = HilbertSpace.from_dim(m_.shape[0])
    d, s, idx = space.d, space.s, space.indices
    n, m = np.meshgrid(idx, idx, indexing="ij")
    corr = m_[center_mod(n + m, space) + s, center_mod(n - m, space) + s]
    kernel = np.exp(-4j * np.pi * np.outer(idx, idx) / d)  # [k, m]
    return corr @ kernel.T / d


def wigner(rho, tol: float = DEFAULT_TOL) -> WignerGrid:
    raw = wigner_raw(rho)
    imag = float(np.max(np.abs(raw.imag)))
    if imag >= tol:
        raise ValueError(f"Wigner grid has imaginary part {imag:.3e}; is the matrix Hermitian?")
    return WignerGrid(HilbertSpace.from_dim(raw.shape[0]), _frozen(raw.real.copy()))


def wigner_pure(psi) -> WignerGrid:
    """W(n,k) = (1/d) sum_m exp(-4 pi i k m/d) psi(n+m) conj(psi(n-m))."""
    psi = np.asarray(psi)
    space = HilbertSpace.from_dim(psi.shape[0])
    d, s, idx = space.d, space.s, space.indices
    n, m = np.meshgrid(idx, idx, indexing="ij")
    corr = psi[center_mod(n + m, space) + s] * psi[center_mod(n - m, space) + s].conj()
    raw = corr @ np.exp(-4j * np.pi * np.outer(idx, idx) / d).T / d
    return WignerGrid(space, _frozen(raw.real.copy()))


def theta_kernel(space: HilbertSpace, window: int) -> np.ndarray:
    """K[x, y] = sum_{a,b} (-1)^{ab} e^{-(2pi/d)(x + a d/2)^2} e^{-(2pi/d)(y + b d/2)^2}.

    Rows and columns are indexed by centered offsets x, y in [-s, s].
    """
    d = space.d
    alpha = np.arange(-window, window + 1)
    x = space.indices[:, None]
    gauss = np.exp(-2 * np.pi / d * (x + alpha[None, :] * d / 2) ** 2)
    signs = np.where(np.outer(alpha, alpha) % 2 == 0, 1.0, -1.0)
    return gauss @ signs @ gauss.T


def wigner_theta_form(rho: DensityOperator, theta_window: int = 4) -> WignerGrid:
    """Wigner grid of rho_f as a theta-kernel convolution of f, normalized to total 1."""
    if theta_window < 1:
        raise ValueError("theta_window must be at least 1")
    f = rho.require_source()
    space = f.space
    s = space.s
    kernel = theta_kernel(space, theta_window)
    idx = space.indices
    # out[m, l] = sum_{n,k} f[n,k] K[m-n, l-k], offsets reduced mod d
    off = center_mod(idx[:, None] - idx[None, :], space) + s  # [m, n]
    vals = np.einsum("nk,mnlk->ml", np.real(f.values), kernel[off[:, :, None, None], off[None, None, :, :]])
    return WignerGrid(space, _frozen(vals / vals.sum()))
