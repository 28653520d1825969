"""Trace preservation along a path from a uniform-in-A' function to a single delta.

f_t = (1 - t) f_uniform_A + t f_delta. Prints the completeness defect, the
Choi residual and the distance of the A-marginal from I/d_A for each t.

    python3 scripts/channel_survey.py --dim-a 3 --dim-b 5 --steps 11
"""
import argparse
from dataclasses import dataclass

import numpy as np

from framequant.channels import choi_reconstruction_residual, completeness_defect, kraus_from_function
from framequant.coherent import coherent_frame
from framequant.composite import BipartitePhaseFunction, BipartiteSpace, bipartite_quantize, ptrace_b
from framequant.hilbert import HilbertSpace
from framequant.quantize import PhaseSpaceFunction
from framequant.states import random_function


@dataclass
class Config:
    dim_a: int = 3
    dim_b: int = 5
    steps: int = 11
    seed: int = 0
    normalization: str = "trace_preserving"


def survey(cfg: Config):
    sa, sb = HilbertSpace.from_dim(cfg.dim_a), HilbertSpace.from_dim(cfg.dim_b)
    fa, fb = coherent_frame(sa), coherent_frame(sb)
    bs = BipartiteSpace(sa, sb)
    g = random_function(sb, np.random.default_rng(cfg.seed))
    start = BipartitePhaseFunction.product(PhaseSpaceFunction.constant(sa, 1 / sa.d), g).values
    end = BipartitePhaseFunction.delta(bs, 0, 0, 0, 0).values
    for t in np.linspace(0, 1, cfg.steps):
        f = BipartitePhaseFunction(bs, (1 - t) * start + t * end)
        ch = kraus_from_function(fa, fb, f, cfg.normalization)
        marginal = ptrace_b(bipartite_quantize(fa, fb, f), sa.d, sb.d)
        yield t, completeness_defect(ch), choi_reconstruction_residual(ch), np.linalg.norm(marginal - np.eye(sa.d) / sa.d)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim-a", type=int, default=Config.dim_a)
    ap.add_argument("--dim-b", type=int, default=Config.dim_b)
    ap.add_argument("--steps", type=int, default=Config.steps)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--normalization", choices=("trace_preserving", "unscaled"), default=Config.normalization)
    args = ap.parse_args(argv)
    cfg = Config(args.dim_a, args.dim_b, args.steps, args.seed, args.normalization)
    print("t,completeness_defect,choi_residual,marginal_distance")
    for row in survey(cfg):
        print(",".join(f"{v:.6g}" for v in row))


if __name__ == "__main__":
    main()
