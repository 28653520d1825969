"""Acceptance gate: ten criteria at their stated tolerances.

Each test gathers worst-case residuals, records a PASS/FAIL line for the
terminal summary (see conftest.py) and then asserts.
"""
import json
import operator
import subprocess
import sys

import numpy as np
import pytest

from framequant import channels, composite, states
from framequant.coherent import coherent_frame, fourier_maps_frame, parity_maps_frame, resolution_residual
from framequant.gaussian import gaussian_fourier_residual
from framequant.hilbert import dft, hermitian_defect, min_eigenvalue, unitary_defect
from framequant.quantize import (
    PhaseSpaceFunction,
    fourier_eigen_residuals,
    frac_fourier,
    harmonic_basis,
    harmonic_operator,
    quantize,
    quantize_trace,
)

from conftest import ODD_DIMS, space_of

N_RANDOM = 100
KAPPAS = (0.25, 0.5, 1.0, 2.0, 4.0)
ALPHAS = (0.3, 0.5, 1.0, 1.7)
OPS = {"<": operator.lt, ">": operator.gt, ">=": operator.ge}


@pytest.fixture
def verdict(request):
    def record(number, title, checks, notes=()):
        failed = [c for c in checks if not OPS[c[2]](c[1], c[3])]
        lines = [f"{'ok ' if OPS[op](v, b) else 'BAD'} {name}: {v:.3e} {op} {b:g}" for name, v, op, b in checks]
        request.config.acceptance_results.append((number, title, not failed, lines + list(notes)))
        print(f"{'PASS' if not failed else 'FAIL'} criterion {number}: {title}")
        assert not failed, "; ".join(f"{c[0]}={c[1]:.3e}" for c in failed)
    return record


def test_criterion_01_resolution_of_identity(verdict):
    worst = max(resolution_residual(coherent_frame(space_of(d))) for d in ODD_DIMS)
    verdict(1, "resolution of identity, d = 3..31", [("frame residual", worst, "<", 1e-10)])


def test_criterion_02_gaussian_fourier_law(verdict):
    worst = max(gaussian_fourier_residual(space_of(d), k) for d in ODD_DIMS for k in KAPPAS)
    self_dual = max(np.linalg.norm(dft(space_of(d)) @ coherent_frame(space_of(d)).state(0, 0)
                                   - coherent_frame(space_of(d)).state(0, 0)) for d in ODD_DIMS)
    self_dual = max(self_dual, max(gaussian_fourier_residual(space_of(d), 1.0) for d in ODD_DIMS))
    verdict(2, "discrete Gaussian Fourier law", [
        ("F g_kappa - g_1/kappa / sqrt(kappa)", worst, "<", 1e-9),
        ("F g_1 - g_1", self_dual, "<", 1e-10),
    ])


def test_criterion_03_quantization_map(verdict):
    ident = lin = herm = tr = 0.0
    mineig = np.inf
    for d in ODD_DIMS:
        rng = np.random.default_rng(d)
        frame = coherent_frame(space_of(d))
        ident = max(ident, np.linalg.norm(quantize(frame, np.ones((d, d))) - np.eye(d)))
        for _ in range(N_RANDOM):
            f, g = rng.normal(size=(2, d, d)) + 1j * rng.normal(size=(2, d, d))
            a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
            qf, qg = quantize(frame, f), quantize(frame, g)
            lin = max(lin, np.linalg.norm(quantize(frame, a * f + b * g) - a * qf - b * qg))
            herm = max(herm, hermitian_defect(quantize(frame, f.real)))
            tr = max(tr, abs(np.trace(qf) - quantize_trace(f)))
            mineig = min(mineig, min_eigenvalue(quantize(frame, rng.random((d, d)))))
    verdict(3, f"quantization map, {N_RANDOM} random f per d", [
        ("Lambda_1 - I", ident, "<", 1e-10),
        ("linearity", lin, "<", 1e-12),
        ("Hermiticity for real f", herm, "<", 1e-12),
        ("min eigenvalue for f >= 0", mineig, ">=", -1e-10),
        ("trace formula", tr, "<", 1e-10),
    ])


def test_criterion_04_states_and_purity(verdict):
    state_defect = delta_defect = uniform_defect = 0.0
    mixed_max = 0.0
    for d in ODD_DIMS:
        rng = np.random.default_rng(100 + d)
        space = space_of(d)
        frame = coherent_frame(space)
        for i in range(N_RANDOM):
            support = None if i % 2 else int(rng.integers(2, 6))
            rho = states.density_from_function(frame, states.random_function(space, rng, support))
            m = rho.matrix
            state_defect = max(state_defect, hermitian_defect(m), abs(np.trace(m) - 1), -min_eigenvalue(m))
            mixed_max = max(mixed_max, states.purity(rho))
        for m, l in [(0, 0), (space.s, -space.s), (1, 2 % d)]:
            rho = states.density_from_function(frame, PhaseSpaceFunction.delta(space, m, l))
            delta_defect = max(delta_defect, abs(states.purity(rho) - 1))
        uniform = states.density_from_function(frame, PhaseSpaceFunction.constant(space, 1 / d))
        uniform_defect = max(uniform_defect, abs(states.purity(uniform) - 1 / d))
    verdict(4, "density operators and purity", [
        ("Hermitian / unit trace / PSD defect", state_defect, "<", 1e-10),
        ("delta purity - 1", delta_defect, "<", 1e-8),
        ("max purity of non-delta f", mixed_max, "<", 1 - 1e-8),
        ("uniform purity - 1/d", uniform_defect, "<", 1e-10),
    ])


def test_criterion_05_covariance(verdict):
    worst = {"fourier": 0.0, "displacement": 0.0, "transpose": 0.0, "parity": 0.0}
    frame_f = frame_p = 0.0
    for d in ODD_DIMS:
        rng = np.random.default_rng(200 + d)
        space = space_of(d)
        frame = coherent_frame(space)
        for _ in range(N_RANDOM):
            rho = states.density_from_function(frame, states.random_function(space, rng))
            shift = tuple(int(x) for x in rng.integers(-d, d + 1, size=2))
            for key, value in states.covariance_residuals(rho, shift).items():
                worst[key] = max(worst[key], value)
        frame_f = max(frame_f, fourier_maps_frame(frame))
        frame_p = max(frame_p, parity_maps_frame(frame))
    checks = [(f"{k} covariance", v, "<", 1e-10) for k, v in worst.items()]
    checks += [("F|n;k> - |k;-n>", frame_f, "<", 1e-10), ("Pi|n;k> - |-n;-k>", frame_p, "<", 1e-10)]
    verdict(5, f"covariance quartet, {N_RANDOM} random f per d", checks)


def test_criterion_06_wigner(verdict):
    imag = total = marg = theta = stability = flat = 0.0
    for d in ODD_DIMS:
        rng = np.random.default_rng(300 + d)
        space = space_of(d)
        frame = coherent_frame(space)
        for _ in range(5):
            rho = states.density_from_function(frame, states.random_function(space, rng))
            imag = max(imag, np.max(np.abs(states.wigner_raw(rho).imag)))
            grid = states.wigner(rho)
            total = max(total, abs(grid.total() - 1))
            marg = max(marg, np.max(np.abs(grid.position_marginal() - np.diag(rho.matrix).real)))
            w4 = states.wigner_theta_form(rho, 4).values
            theta = max(theta, np.max(np.abs(w4 - grid.values)))
            stability = max(stability, np.max(np.abs(states.wigner_theta_form(rho, 8).values - w4)))
        uniform = states.density_from_function(frame, PhaseSpaceFunction.constant(space, 1 / d))
        flat = max(flat, np.max(np.abs(states.wigner(uniform).values - 1 / d**2)))
    verdict(6, "discrete Wigner function", [
        ("imaginary part", imag, "<", 1e-10),
        ("sum - 1", total, "<", 1e-9),
        ("position marginal - diag(rho)", marg, "<", 1e-10),
        ("theta form - direct form", theta, "<", 1e-6),
        ("theta window 4 vs 8", stability, "<", 1e-10),
        ("uniform state - 1/d^2", flat, "<", 1e-10),
    ])


def test_criterion_07_composite(verdict):
    tight = red = prod = swap = 0.0
    for da, db in [(3, 3), (3, 5), (5, 3)]:
        rng = np.random.default_rng(400 + 10 * da + db)
        fa, fb = coherent_frame(space_of(da)), coherent_frame(space_of(db))
        bs = composite.BipartiteSpace(fa.space, fb.space)
        tight = max(tight, composite.bipartite_resolution_residual(fa, fb))
        for _ in range(N_RANDOM):
            rho = composite.bipartite_density(fa, fb, composite.random_bipartite_function(bs, rng))
            red = max(red, *composite.reduction_residuals(rho).values())
        for _ in range(10):
            f, g = states.random_function(fa.space, rng), states.random_function(fb.space, rng)
            rho = composite.bipartite_density(fa, fb, composite.BipartitePhaseFunction.product(f, g))
            prod = max(prod, np.linalg.norm(rho.matrix - np.kron(quantize(fa, f), quantize(fb, g))))
    rng = np.random.default_rng(499)
    f3 = coherent_frame(space_of(3))
    sw = composite.swap_operator(3, 3)
    for _ in range(N_RANDOM):
        fsq = composite.random_bipartite_function(composite.BipartiteSpace(f3.space, f3.space), rng)
        rho = composite.bipartite_density(f3, f3, fsq)
        target = composite.bipartite_quantize(f3, f3, fsq.swapped())
        swap = max(swap, np.linalg.norm(sw @ rho.matrix @ sw.T - target))
    verdict(7, "bipartite systems", [
        ("bipartite tightness", tight, "<", 1e-10),
        ("partial traces vs reduced functions", red, "<", 1e-10),
        ("product factorization", prod, "<", 1e-10),
        ("SWAP covariance", swap, "<", 1e-10),
    ])


def test_criterion_08_channels(verdict):
    rng = np.random.default_rng(500)
    s3 = space_of(3)
    f3 = coherent_frame(s3)
    bs = composite.BipartiteSpace(s3, s3)
    funcs = [composite.random_bipartite_function(bs, rng) for _ in range(N_RANDOM)]
    funcs += [composite.BipartitePhaseFunction.constant(bs, 1 / 9),
              composite.BipartitePhaseFunction.delta(bs, 1, -1, 0, 1)]
    choi = choi_tp = 0.0
    mismatch = 0
    for f in funcs:
        choi = max(choi, channels.choi_reconstruction_residual(channels.kraus_from_function(f3, f3, f, "unscaled")))
        tp = channels.kraus_from_function(f3, f3, f)
        choi_tp = max(choi_tp, channels.choi_reconstruction_residual(tp))
        mismatch += (channels.completeness_defect(tp) < 1e-10) != channels.marginal_is_maximally_mixed(tp)
    uniform_a = 0.0
    for _ in range(N_RANDOM):
        g = states.random_function(s3, rng)
        f = composite.BipartitePhaseFunction.product(PhaseSpaceFunction.constant(s3, 1 / 3), g)
        uniform_a = max(uniform_a, channels.completeness_defect(channels.kraus_from_function(f3, f3, f)))
    delta_min = min(
        channels.completeness_defect(channels.kraus_from_function(
            f3, f3, composite.BipartitePhaseFunction.delta(bs, n, m, k, l)))
        for n, m, k, l in [(0, 0, 0, 0), (1, -1, 0, 1), (-1, 1, 1, -1)])
    ch = channels.kraus_from_function(f3, f3, funcs[0])
    cp = np.inf
    for _ in range(50):
        z = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        cp = min(cp, min_eigenvalue(channels.apply_channel(ch, z @ z.conj().T)))
    literal = channels.completeness_defect(channels.kraus_from_function(f3, f3, funcs[-2], "unscaled"))
    verdict(8, "channel-state duality at (3, 3)", [
        ("Choi - rho_f / d_A (unscaled Kraus weights)", choi, "<", 1e-10),
        ("Choi - rho_f (trace-preserving weights)", choi_tp, "<", 1e-10),
        ("completeness defect, uniform-in-A' family", uniform_a, "<", 1e-10),
        ("completeness test vs maximally mixed marginal (mismatches)", float(mismatch), "<", 0.5),
        ("completeness defect, single delta", delta_min, ">", 0.1),
        ("CP: min eigenvalue over 50 PSD inputs", cp, ">=", -1e-10),
    ], notes=[f"diagnostic: completeness defect with unscaled weights, uniform f = {literal:.4f}"])


def test_criterion_09_fractional_fourier(verdict):
    unit = group = period = comm = 0.0
    notes = []
    for d in ODD_DIMS:
        space = space_of(d)
        basis = harmonic_basis(space)
        f = dft(space)
        h = harmonic_operator(coherent_frame(space))
        comm = max(comm, np.linalg.norm(f @ h - h @ f))
        for a in ALPHAS:
            fa = frac_fourier(basis, a)
            unit = max(unit, unitary_defect(fa))
            for b in ALPHAS:
                group = max(group, np.linalg.norm(fa @ frac_fourier(basis, b) - frac_fourier(basis, a + b)))
        period = max(period, np.linalg.norm(frac_fourier(basis, 0) - np.eye(d)),
                     np.linalg.norm(frac_fourier(basis, 4) - np.eye(d)))
        if d in (7, 21):
            res = fourier_eigen_residuals(basis)
            notes.append(f"diagnostic d={d}: max |F psi_n - (-i)^n psi_n| = {max(res['nominal']):.2e}")
    verdict(9, "fractional Fourier transform", [
        ("unitarity", unit, "<", 1e-10),
        ("group law", group, "<", 1e-10),
        ("F^0 = F^4 = I", period, "<", 1e-10),
        ("[F, Lambda_harmonic]", comm, "<", 1e-10),
    ], notes=notes)


def _cli(args, cwd):
    return subprocess.run([sys.executable, "-m", "framequant", *args], capture_output=True, cwd=cwd)


def test_criterion_10_cli_determinism(verdict, tmp_path):
    (tmp_path / "one.json").write_text(json.dumps(
        {"dim": 7, "function": {"kind": "gaussian", "width": 1.3, "center": [1, 0], "normalize": True}}))
    (tmp_path / "two.json").write_text(json.dumps(
        {"dim_a": 3, "dim_b": 5, "function": {"kind": "product", "a": {"kind": "uniform"}, "b": {"kind": "delta"}}}))
    (tmp_path / "rho.json").write_text(json.dumps(
        {"dim": 3, "re": (np.eye(3) / 3).tolist(), "im": np.zeros((3, 3)).tolist()}))
    jobs = [
        ["wigner", "--spec", "one.json"],
        ["wigner", "--spec", "one.json", "--format", "json"],
        ["quantize", "--spec", "one.json"],
        ["eigen", "--dim", "9", "--alpha", "0.5"],
        ["channel", "--spec", "two.json", "--input-state", "rho.json"],
    ]
    differing = 0
    failed_runs = 0
    for job in jobs:
        first, second = _cli(job, tmp_path), _cli(job, tmp_path)
        failed_runs += (first.returncode != 0) + (second.returncode != 0)
        differing += first.stdout != second.stdout or not first.stdout
    verify = _cli(["verify", "--dims", "3,5,7"], tmp_path)
    verdict(10, "CLI determinism and verify exit code", [
        ("jobs with differing bytes", float(differing), "<", 0.5),
        ("failed job runs", float(failed_runs), "<", 0.5),
        ("verify --dims 3,5,7 exit code", float(verify.returncode), "<", 0.5),
    ])
