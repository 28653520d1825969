"""JSON job specifications and the flat-file formats written by the CLI.

A function spec is an object with a ``kind`` and kind-specific keys
(optionally nested under ``params``)::

    {"kind": "uniform", "value": 0.2}
    {"kind": "delta", "position": [m, l]}            # height d unless "height"
    {"kind": "harmonic"}                             # (n^2 + k^2) / 2
    {"kind": "gaussian", "width": 1.5, "center": [0, 0]}
    {"kind": "grid", "values": [[...], ...]}         # rows n = -s..s, columns k
    {"kind": "product", "a": {...}, "b": {...}}      # bipartite only

``"normalize": true`` rescales the grid so that it sums to d.
"""
from __future__ import annotations

import io
import json

import numpy as np

from .composite import BipartitePhaseFunction, BipartiteSpace
from .hilbert import HilbertSpace
from .quantize import PhaseSpaceFunction
from .states import WignerGrid

KINDS = ("uniform", "delta", "harmonic", "gaussian", "grid", "product")


class SpecError(ValueError):
    """Job or function spec cannot be resolved."""


def load_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno} column {exc.colno})") from exc
    except OSError as exc:
        raise SpecError(f"{path}: {exc.strerror}") from exc
    if not isinstance(data, dict):
        raise SpecError(f"{path}: top level must be a JSON object")
    return data


def parse_dim(value, what="dimension") -> int:
    try:
        d = int(value)
    except (TypeError, ValueError):
        raise SpecError(f"{what} must be an integer, got {value!r}") from None
    if d != value and not isinstance(value, str):
        raise SpecError(f"{what} must be an integer, got {value!r}")
    if d % 2 == 0:
        raise SpecError(f"{what} must be odd, got {d}")
    if d < 3:
        raise SpecError(f"{what} must be at least 3, got {d}")
    return d


def _params(spec) -> dict:
    if not isinstance(spec, dict):
        raise SpecError(f"function spec must be an object, got {type(spec).__name__}")
    kind = spec.get("kind")
    if kind not in KINDS:
        raise SpecError(f"unknown function kind {kind!r}; expected one of {', '.join(KINDS)}")
    merged = dict(spec.get("params", {}))
    merged.update({k: v for k, v in spec.items() if k != "params"})
    return merged


def _pair(value, name):
    try:
        m, l = (int(v) for v in value)
    except (TypeError, ValueError):
        raise SpecError(f"{name} must be a pair of integers, got {value!r}") from None
    return m, l


def _grid(values, shape) -> np.ndarray:
    try:
        arr = np.array(values, dtype=float)
    except (TypeError, ValueError):
        raise SpecError("grid values must be numbers") from None
    if arr.shape != shape:
        raise SpecError(f"grid has shape {arr.shape}, expected {shape}")
    if not np.all(np.isfinite(arr)):
        raise SpecError("grid values must be finite")
    return arr


def _normalize(arr: np.ndarray, target: float) -> np.ndarray:
    total = arr.sum()
    if not total > 0:
        raise SpecError("cannot normalize a grid whose sum is not positive")
    return arr * (target / total)


def resolve_function(spec: dict, space: HilbertSpace, purpose: str = "operator") -> PhaseSpaceFunction:
    """Grid for one system.

    ``purpose`` is ``"operator"`` or ``"state"``; it only changes the default
    height of ``uniform`` (1 for operators, 1/d for states).
    """
    p = _params(spec)
    d = space.d
    kind = p["kind"]
    n, k = np.meshgrid(space.indices, space.indices, indexing="ij")
    if kind == "uniform":
        value = p.get("value", 1.0 if purpose == "operator" else 1.0 / d)
        arr = np.full((d, d), float(value))
    elif kind == "delta":
        m, l = _pair(p.get("position", [0, 0]), "position")
        arr = PhaseSpaceFunction.delta(space, m, l, p.get("height")).values.astype(float)
    elif kind == "harmonic":
        arr = (n**2 + k**2) / 2.0
    elif kind == "gaussian":
        width = float(p.get("width", 1.0))
        if not width > 0:
            raise SpecError("gaussian width must be positive")
        c0, c1 = _pair(p.get("center", [0, 0]), "center")
        dn = (n - c0 + space.s) % d - space.s
        dk = (k - c1 + space.s) % d - space.s
        arr = np.exp(-(dn**2 + dk**2) / (2 * width**2))
    elif kind == "grid":
        arr = _grid(p.get("values"), (d, d))
    else:
        raise SpecError("kind 'product' needs a bipartite job (dim_a, dim_b)")
    if p.get("normalize"):
        arr = _normalize(arr, d)
    return PhaseSpaceFunction(space, arr)


def resolve_bipartite(spec: dict, bspace: BipartiteSpace) -> BipartitePhaseFunction:
    p = _params(spec)
    da, db = bspace.d_a, bspace.d_b
    kind = p["kind"]
    shape = (da, db, da, db)
    if kind == "product":
        if "a" not in p or "b" not in p:
            raise SpecError("product spec needs sub-specs 'a' and 'b'")
        fa = resolve_function(p["a"], bspace.space_a, "state")
        fb = resolve_function(p["b"], bspace.space_b, "state")
        arr = BipartitePhaseFunction.product(fa, fb).values
    elif kind == "uniform":
        arr = np.full(shape, float(p.get("value", 1.0 / bspace.d)))
    elif kind == "delta":
        pos = p.get("position", [0, 0, 0, 0])
        try:
            n, m, k, l = (int(v) for v in pos)
        except (TypeError, ValueError):
            raise SpecError(f"bipartite delta position must be [n, m, k, l], got {pos!r}") from None
        arr = BipartitePhaseFunction.delta(bspace, n, m, k, l).values
    elif kind == "grid":
        arr = _grid(p.get("values"), shape)
    else:
        raise SpecError(f"kind {kind!r} is not available for bipartite jobs")
    if p.get("normalize"):
        arr = _normalize(arr, bspace.d)
    return BipartitePhaseFunction(bspace, arr)


def operator_to_json(matrix) -> dict:
    m = np.asarray(matrix, dtype=complex)
    return {"dim": int(m.shape[0]), "re": m.real.tolist(), "im": m.imag.tolist()}


def operator_from_json(data: dict) -> np.ndarray:
    try:
        re = np.array(data["re"], dtype=float)
        im = np.array(data["im"], dtype=float)
        dim = int(data["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"operator JSON needs 'dim', 're' and 'im' ({exc})") from None
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise SpecError(f"operator arrays must be {dim}x{dim}")
    return re + 1j * im


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, shortest round-trip floats, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def wigner_csv(grid: WignerGrid) -> str:
    buf = io.StringIO()
    buf.write("n,k,value\n")
    idx = grid.space.indices
    for i, n in enumerate(idx):
        for j, k in enumerate(idx):
            buf.write(f"{n},{k},{format(float(grid.values[i, j]), '.17g')}\n")
    return buf.getvalue()


def wigner_json(grid: WignerGrid) -> dict:
    return {"dim": grid.space.d, "values": grid.values.tolist()}
