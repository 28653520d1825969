"""Bipartite frames, bipartite rho_f, partial traces and SWAP.

Flat index convention: the composite basis vector |i>_A (x) |j>_B sits at
``(i + s_A) * d_B + (j + s_B)``, i.e. ``np.kron`` order with A as the slow index.
Bipartite functions are stored as ``values[n, m, k, l] = f(n, m; k, l)``
with n, k on A and m, l on B, all shifted by their half-ranges.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coherent import CoherentFrame, coherent_frame
from .errors import CovarianceError, DimensionError
from .hilbert import HilbertSpace
from .quantize import PhaseSpaceFunction, quantize
from .states import DensityOperator, TOTAL_TOL, validate_function


@dataclass(frozen=True)
class BipartiteSpace:
    space_a: HilbertSpace
    space_b: HilbertSpace

    @property
    def d_a(self) -> int:
        return self.space_a.d

    @property
    def d_b(self) -> int:
        return self.space_b.d

    @property
    def d(self) -> int:
        return self.d_a * self.d_b

    def flat(self, i: int, j: int) -> int:
        return self.space_a.slot(i) * self.d_b + self.space_b.slot(j)


@dataclass(frozen=True, eq=False)
class BipartitePhaseFunction:
    space: BipartiteSpace
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values)
        da, db = self.space.d_a, self.space.d_b
        if vals.shape != (da, db, da, db):
            raise DimensionError(f"bipartite grid has shape {vals.shape}, expected {(da, db, da, db)}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __call__(self, n, m, k, l):
        sa, sb = self.space.space_a, self.space.space_b
        return self.values[sa.slot(n), sb.slot(m), sa.slot(k), sb.slot(l)]

    def total(self):
        return self.values.sum()

    @classmethod
    def product(cls, f: PhaseSpaceFunction, g: PhaseSpaceFunction) -> "BipartitePhaseFunction":
        """h(n, m; k, l) = f(n, k) g(m, l)."""
        vals = np.einsum("nk,ml->nmkl", f.values, g.values)
        return cls(BipartiteSpace(f.space, g.space), vals)

    @classmethod
    def constant(cls, space: BipartiteSpace, value) -> "BipartitePhaseFunction":
        return cls(space, np.full((space.d_a, space.d_b, space.d_a, space.d_b), value))

    @classmethod
    def delta(cls, space: BipartiteSpace, n, m, k, l) -> "BipartitePhaseFunction":
        """Height d at one label, zero elsewhere."""
        vals = np.zeros((space.d_a, space.d_b, space.d_a, space.d_b))
        sa, sb = space.space_a, space.space_b
        vals[sa.slot(n), sb.slot(m), sa.slot(k), sb.slot(l)] = space.d
        return cls(space, vals)

    def reduce_to_a(self) -> PhaseSpaceFunction:
        """f_A(n, k) = (1/d_B) sum_{m,l} f(n, m; k, l)."""
        return PhaseSpaceFunction(self.space.space_a, self.values.sum(axis=(1, 3)) / self.space.d_b)

    def reduce_to_b(self) -> PhaseSpaceFunction:
        """f_B(m, l) = (1/d_A) sum_{n,k} f(n, m; k, l)."""
        return PhaseSpaceFunction(self.space.space_b, self.values.sum(axis=(0, 2)) / self.space.d_a)

    def swapped(self) -> "BipartitePhaseFunction":
        """g(n, m; k, l) = f(m, n; l, k), on the space with A and B exchanged."""
        sp = BipartiteSpace(self.space.space_b, self.space.space_a)
        return BipartitePhaseFunction(sp, self.values.transpose(1, 0, 3, 2))


def random_bipartite_function(space: BipartiteSpace, rng: np.random.Generator) -> BipartitePhaseFunction:
    shape = (space.d_a, space.d_b, space.d_a, space.d_b)
    w = rng.dirichlet(np.ones(int(np.prod(shape))))
    return BipartitePhaseFunction(space, space.d * w.reshape(shape))


def product_coherent(frame_a: CoherentFrame, frame_b: CoherentFrame, n, m, k, l) -> np.ndarray:
    """|n, m; k, l> = |n;k>_A (x) |m;l>_B."""
    return np.kron(frame_a.state(n, k), frame_b.state(m, l))


def bipartite_vectors(frame_a: CoherentFrame, frame_b: CoherentFrame) -> np.ndarray:
    """All product frame vectors, rows ordered like ``values.ravel()`` over (n, m, k, l)."""
    da, db = frame_a.d, frame_b.d
    v = np.einsum("nki,mlj->nmklij", frame_a.states, frame_b.states)
    return v.reshape(da * db * da * db, da * db)


def bipartite_resolution_residual(frame_a: CoherentFrame, frame_b: CoherentFrame) -> float:
    v = bipartite_vectors(frame_a, frame_b)
    d = frame_a.d * frame_b.d
    return float(np.linalg.norm(v.T @ v.conj() / d - np.eye(d)))


def bipartite_quantize(frame_a: CoherentFrame, frame_b: CoherentFrame, f: BipartitePhaseFunction) -> np.ndarray:
    v = bipartite_vectors(frame_a, frame_b)
    d = frame_a.d * frame_b.d
    return (v.T * np.real(f.values).ravel()) @ v.conj() / d


def bipartite_density(frame_a: CoherentFrame, frame_b: CoherentFrame, f: BipartitePhaseFunction) -> DensityOperator:
    if (f.space.space_a, f.space.space_b) != (frame_a.space, frame_b.space):
        raise DimensionError("bipartite function does not match the frames")
    d = f.space.d
    vals = validate_function(f, d, d, TOTAL_TOL)
    f = BipartitePhaseFunction(f.space, vals)
    return DensityOperator(bipartite_quantize(frame_a, frame_b, f), f)


def ptrace_a(matrix, d_a: int, d_b: int) -> np.ndarray:
    """tr_A by index contraction."""
    return np.einsum("ijik->jk", np.asarray(matrix).reshape(d_a, d_b, d_a, d_b))


def ptrace_b(matrix, d_a: int, d_b: int) -> np.ndarray:
    """tr_B by index contraction."""
    return np.einsum("ijkj->ik", np.asarray(matrix).reshape(d_a, d_b, d_a, d_b))


def swap_operator(d_a: int, d_b: int) -> np.ndarray:
    """SWAP: |i>_A |j>_B -> |j> |i>, as a (d_a d_b) square permutation."""
    d = d_a * d_b
    out = np.zeros((d, d))
    for i in range(d_a):
        for j in range(d_b):
            out[j * d_a + i, i * d_b + j] = 1
    return out


def _source(rho: DensityOperator) -> BipartitePhaseFunction:
    f = rho.require_source()
    if not isinstance(f, BipartitePhaseFunction):
        raise TypeError("state was not built from a bipartite function")
    return f


def reduction_residuals(rho: DensityOperator) -> dict:
    """Distances between the matrix partial traces and the reduced-function states."""
    f = _source(rho)
    da, db = f.space.d_a, f.space.d_b
    fa, fb = f.reduce_to_a(), f.reduce_to_b()
    return {
        "trace_a": float(np.linalg.norm(ptrace_a(rho.matrix, da, db) - quantize(coherent_frame(fb.space), fb))),
        "trace_b": float(np.linalg.norm(ptrace_b(rho.matrix, da, db) - quantize(coherent_frame(fa.space), fa))),
    }


def partial_trace_a(rho: DensityOperator, tol: float = 1e-10):
    """(tr_A rho_f, f_B); raises if tr_A rho_f differs from rho_{f_B}."""
    f = _source(rho)
    reduced = ptrace_a(rho.matrix, f.space.d_a, f.space.d_b)
    return _reduced(reduced, f.reduce_to_b(), tol)


def partial_trace_b(rho: DensityOperator, tol: float = 1e-10):
    """(tr_B rho_f, f_A); raises if tr_B rho_f differs from rho_{f_A}."""
    f = _source(rho)
    reduced = ptrace_b(rho.matrix, f.space.d_a, f.space.d_b)
    return _reduced(reduced, f.reduce_to_a(), tol)


def _reduced(matrix, fr: PhaseSpaceFunction, tol):
    target = quantize(coherent_frame(fr.space), fr)
    residual = float(np.linalg.norm(matrix - target))
    if residual >= tol:
        raise CovarianceError(f"partial trace differs from the reduced-function state by {residual:.3e}")
    return DensityOperator(matrix, fr), fr


def swap_density(rho: DensityOperator, tol: float = 1e-10):
    """SWAP rho_f SWAP = rho_g with g(n, m; k, l) = f(m, n; l, k); needs d_A = d_B."""
    f = _source(rho)
    if f.space.d_a != f.space.d_b:
        raise DimensionError(f"SWAP needs equal factors, got d_A={f.space.d_a}, d_B={f.space.d_b}")
    sw = swap_operator(f.space.d_a, f.space.d_b)
    moved = sw @ rho.matrix @ sw.T
    g = f.swapped()
    fa = coherent_frame(g.space.space_a)
    target = bipartite_quantize(fa, coherent_frame(g.space.space_b), g)
    residual = float(np.linalg.norm(moved - target))
    if residual >= tol:
        raise CovarianceError(f"SWAP image differs from rho_g by {residual:.3e}")
    return DensityOperator(moved, g), g
