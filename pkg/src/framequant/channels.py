"""Channels E_f : L(H_A) -> L(H_B) dual to bipartite states rho_f on A' (x) B.

Each label (n, m; k, l) contributes one rank-one Kraus matrix

    K[j, i] = c * sqrt(f(n, m; k, l) / d) * <i|n;k>_A * <j|m;l>_B,

where the A-side coherent amplitude enters unconjugated. Two scalings c are
offered:

* ``"unscaled"`` (c = 1, the bare weight sqrt(f / d)): the Choi state (I (x) E_f)(|Phi><Phi|) equals
  rho_f / d_A, and sum K^dagger K = (rho_{f_A})^T has trace 1.
* ``"trace_preserving"`` (c = sqrt(d_A), the default): the Choi state equals
  rho_f and sum K^dagger K = d_A (rho_{f_A})^T, which is the identity exactly
  when the A-marginal f_A quantizes to I / d_A.

With c = 1 the completeness relation can never hold for d_A > 1 (its trace is
1, not d_A), so only the rescaled family can be trace preserving.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coherent import CoherentFrame, coherent_frame
from .composite import BipartitePhaseFunction, bipartite_quantize, ptrace_b
from .errors import DimensionError
from .hilbert import HilbertSpace, _frozen
from .states import TOTAL_TOL, DensityOperator, validate_function

NORMALIZATIONS = ("trace_preserving", "unscaled")
DROP_TOL = 1e-15


def max_entangled(space_a: HilbertSpace) -> np.ndarray:
    """|Phi> = d_A^{-1/2} sum_i |i>_{A'} |i>_A, flattened with A' as the slow index."""
    d = space_a.d
    return _frozen(np.eye(d, dtype=complex).ravel() / np.sqrt(d))


@dataclass(frozen=True, eq=False)
class KrausChannel:
    space_a: HilbertSpace
    space_b: HilbertSpace
    kraus: np.ndarray          # (count, d_B, d_A)
    labels: tuple              # (n, m, k, l) per Kraus matrix
    source: BipartitePhaseFunction
    normalization: str = "trace_preserving"

    def __len__(self):
        return len(self.kraus)

    @property
    def scale(self) -> float:
        """Choi state divided by rho_f: 1 for trace-preserving scaling, 1/d_A otherwise."""
        return 1.0 if self.normalization == "trace_preserving" else 1.0 / self.space_a.d

    def completeness_operator(self) -> np.ndarray:
        return np.einsum("kji,kjl->il", self.kraus.conj(), self.kraus)


def kraus_from_function(frame_a: CoherentFrame, frame_b: CoherentFrame, f: BipartitePhaseFunction,
                        normalization: str = "trace_preserving", drop_tol: float = DROP_TOL) -> KrausChannel:
    """Rank-one Kraus family of E_f; labels with f <= drop_tol are omitted."""
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}, got {normalization!r}")
    if (f.space.space_a, f.space.space_b) != (frame_a.space, frame_b.space):
        raise DimensionError("bipartite function does not match the frames")
    d = f.space.d
    vals = validate_function(f, d, d, TOTAL_TOL)
    f = BipartitePhaseFunction(f.space, vals)
    weight = vals / (f.space.d_b if normalization == "trace_preserving" else d)

    sa, sb = frame_a.space, frame_b.space
    kraus, labels = [], []
    for (i, j, p, q), w in np.ndenumerate(weight):
        if vals[i, j, p, q] <= drop_tol:
            continue
        row_a = frame_a.states[i, p]       # <i|n;k>, unconjugated
        col_b = frame_b.states[j, q]       # <j|m;l>
        kraus.append(np.sqrt(w) * np.outer(col_b, row_a))
        labels.append((i - sa.s, j - sb.s, p - sa.s, q - sb.s))
    arr = np.array(kraus) if kraus else np.zeros((0, sb.d, sa.d), dtype=complex)
    return KrausChannel(sa, sb, _frozen(arr), tuple(labels), f, normalization)


def apply_channel(ch: KrausChannel, rho) -> np.ndarray:
    """sum_K K rho K^dagger. Trace is preserved only when the completeness defect vanishes."""
    m = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho)
    if m.shape != (ch.space_a.d, ch.space_a.d):
        raise DimensionError(f"input has shape {m.shape}, channel expects {(ch.space_a.d,) * 2}")
    if len(ch) == 0:
        return np.zeros((ch.space_b.d, ch.space_b.d), dtype=complex)
    return np.einsum("kab,bc,kdc->ad", ch.kraus, m, ch.kraus.conj())


def choi_state(ch: KrausChannel) -> np.ndarray:
    """(I_{A'} (x) E)(|Phi><Phi|) on A' (x) B, A' as the slow index."""
    da, db = ch.space_a.d, ch.space_b.d
    if len(ch) == 0:
        return np.zeros((da * db, da * db), dtype=complex)
    # (I (x) K)|Phi> has components K[j, i] / sqrt(d_A) at (i, j)
    cols = ch.kraus.transpose(0, 2, 1).reshape(len(ch), da * db) / np.sqrt(da)
    return cols.T @ cols.conj()


def choi_reconstruction_residual(ch: KrausChannel) -> float:
    """|| Choi(E_f) - scale * rho_f ||_F with scale = 1/d_A for unscaled weights."""
    rho_f = bipartite_quantize(coherent_frame(ch.space_a), coherent_frame(ch.space_b), ch.source)
    return float(np.linalg.norm(choi_state(ch) - ch.scale * rho_f))


def completeness_defect(ch: KrausChannel) -> float:
    """|| sum K^dagger K - I_A ||_F."""
    return float(np.linalg.norm(ch.completeness_operator() - np.eye(ch.space_a.d)))


def marginal_is_maximally_mixed(ch: KrausChannel, tol: float = 1e-10) -> bool:
    """Whether tr_B rho_f = I / d_A, the condition for trace preservation."""
    da, db = ch.space_a.d, ch.space_b.d
    rho_f = bipartite_quantize(coherent_frame(ch.space_a), coherent_frame(ch.space_b), ch.source)
    return bool(np.linalg.norm(ptrace_b(rho_f, da, db) - np.eye(da) / da) < tol)
