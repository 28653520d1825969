"""Discrete Gaussians as periodized theta sums, and the vacuum state."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .hilbert import HilbertSpace, _frozen, dft


@dataclass(frozen=True)
class GaussianParams:
    kappa: float = 1.0
    truncation_tol: float = 1e-18

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa!r}")
        if not self.truncation_tol > 0:
            raise ValueError(f"truncation_tol must be positive, got {self.truncation_tol!r}")


def theta_window(d: int, kappa: float, tol: float) -> int:
    """Smallest A >= 1 with exp(-kappa pi (A d - s)^2 / d) < tol."""
    s = (d - 1) // 2
    # exponent bound: kappa*pi*(A d - s)^2/d > -log(tol)
    need = math.sqrt(-math.log(tol) * d / (kappa * math.pi))
    a = max(1, math.ceil((need + s) / d))
    while math.exp(-kappa * math.pi * (a * d - s) ** 2 / d) >= tol:
        a += 1
    return a


@lru_cache(maxsize=256)
def _gaussian(s: int, kappa: float, tol: float) -> np.ndarray:
    d = 2 * s + 1
    window = theta_window(d, kappa, tol)
    n = np.arange(-s, s + 1)[:, None]
    alpha = np.arange(-window, window + 1)[None, :]
    terms = np.exp(-kappa * np.pi * (n + alpha * d) ** 2 / d)
    # pair +alpha with -alpha before summing so g(-n) == g(n) bit for bit
    g = terms[:, window].copy()
    for a in range(window, 0, -1):
        g += terms[:, window + a] + terms[:, window - a]
    return _frozen(g.astype(complex))


def discrete_gaussian(space: HilbertSpace, params: GaussianParams | float = GaussianParams()) -> np.ndarray:
    """g_kappa(n) = sum_alpha exp(-kappa pi (n + alpha d)^2 / d) over a symmetric window."""
    if not isinstance(params, GaussianParams):
        params = GaussianParams(float(params))
    return _gaussian(space.s, float(params.kappa), float(params.truncation_tol))


def gaussian_fourier_residual(space: HilbertSpace, kappa: float) -> float:
    """|| F[g_kappa] - kappa^{-1/2} g_{1/kappa} ||."""
    g = discrete_gaussian(space, GaussianParams(kappa))
    g_dual = discrete_gaussian(space, GaussianParams(1.0 / kappa))
    return float(np.linalg.norm(dft(space) @ g - g_dual / np.sqrt(kappa)))


def vacuum_norm(space: HilbertSpace) -> float:
    """<g_1, g_1>."""
    g = discrete_gaussian(space)
    return float(np.vdot(g, g).real)


def vacuum_state(space: HilbertSpace) -> np.ndarray:
    g = discrete_gaussian(space)
    return _frozen(g / np.sqrt(vacuum_norm(space)))
