"""Write Wigner grids of a few frame-quantized states as CSV files.

States: the vacuum |0;0>, a displaced coherent state, an equal mixture of two
coherent states, and a Gaussian-weighted phase-space blur.

    python3 scripts/wigner_gallery.py --dim 15 --out-dir wigner_out
"""
import argparse
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from framequant.coherent import coherent_frame
from framequant.hilbert import HilbertSpace
from framequant.jobs import wigner_csv
from framequant.quantize import PhaseSpaceFunction
from framequant.states import density_from_function, wigner


@dataclass
class Config:
    dim: int = 15
    shift: tuple = (3, -2)
    blur_width: float = 1.5
    out_dir: str = "wigner_out"


def functions(cfg: Config):
    space = HilbertSpace.from_dim(cfg.dim)
    d = space.d
    n, k = np.meshgrid(space.indices, space.indices, indexing="ij")
    blur = np.exp(-(n**2 + k**2) / (2 * cfg.blur_width**2))
    pair = PhaseSpaceFunction.delta(space, *cfg.shift, d / 2) + PhaseSpaceFunction.delta(space, -cfg.shift[0], -cfg.shift[1], d / 2)
    return space, {
        "vacuum": PhaseSpaceFunction.delta(space, 0, 0),
        "displaced": PhaseSpaceFunction.delta(space, *cfg.shift),
        "mixture": pair,
        "blur": PhaseSpaceFunction(space, blur * d / blur.sum()),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=Config.dim)
    ap.add_argument("--out-dir", default=Config.out_dir)
    args = ap.parse_args(argv)
    cfg = Config(dim=args.dim, out_dir=args.out_dir)
    space, funcs = functions(cfg)
    frame = coherent_frame(space)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, f in funcs.items():
        grid = wigner(density_from_function(frame, f))
        (out / f"{name}.csv").write_text(wigner_csv(grid))
        print(f"{name:10s} min {grid.values.min():+.4f}  max {grid.values.max():+.4f}  sum {grid.total():.12f}")


if __name__ == "__main__":
    main()
