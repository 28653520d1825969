"""Invariant battery: every identity of the construction as a numeric residual.

``run_battery(d)`` returns a flat mapping of named residuals for one dimension
together with the threshold each must satisfy. Bipartite and channel checks
pair the d-dimensional factor with a partner of the same size up to d = 7
and with a qutrit beyond that.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import channels, composite, states
from .coherent import coherent_frame, displacement_shifts_frame, fourier_maps_frame, parity_maps_frame, resolution_residual
from .gaussian import gaussian_fourier_residual
from .hilbert import DEFAULT_TOL, HilbertSpace, dft, hermitian_defect, min_eigenvalue, unitary_defect
from .quantize import (
    PhaseSpaceFunction,
    frac_fourier,
    harmonic_basis,
    harmonic_operator,
    quantize,
    quantize_trace,
)

KAPPAS = (0.25, 0.5, 1.0, 2.0, 4.0)
ALPHAS = (0.3, 0.5, 1.0, 1.7)


@dataclass
class Check:
    name: str
    value: float
    threshold: float
    above: bool = False  # True when the value must exceed the threshold

    @property
    def passed(self) -> bool:
        if not np.isfinite(self.value):
            return False
        return self.value > self.threshold if self.above else self.value < self.threshold


@dataclass
class BatteryReport:
    dim: int
    checks: list = field(default_factory=list)

    def add(self, name, value, threshold, above=False):
        self.checks.append(Check(name, float(value), float(threshold), above))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c.name for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        out = {c.name: c.value for c in self.checks}
        out["thresholds"] = {c.name: c.threshold for c in self.checks}
        out["failures"] = self.failures()
        out["passed"] = self.passed
        return out


def run_battery(d: int, samples: int = 10, seed: int = 0, tol: float = DEFAULT_TOL) -> BatteryReport:
    space = HilbertSpace.from_dim(d)
    frame = coherent_frame(space)
    rng = np.random.default_rng(seed)
    rep = BatteryReport(d)
    eye = np.eye(d)

    # tight frame and the Gaussian Fourier law
    rep.add("theorem_1_residual", resolution_residual(frame), tol)
    rep.add("gaussian_fourier_residual", max(gaussian_fourier_residual(space, k) for k in KAPPAS), 10 * tol)
    rep.add("vacuum_fourier_residual", gaussian_fourier_residual(space, 1.0), tol)

    # quantization map
    rep.add("identity_residual", np.linalg.norm(quantize(frame, np.ones((d, d))) - eye), tol)
    lin = herm = tr = 0.0
    mineig = np.inf
    for _ in range(samples):
        f = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
        lin = max(lin, np.linalg.norm(quantize(frame, a * f + b * g) - a * quantize(frame, f) - b * quantize(frame, g)))
        herm = max(herm, hermitian_defect(quantize(frame, f.real)))
        tr = max(tr, abs(np.trace(quantize(frame, f)) - quantize_trace(f)))
        mineig = min(mineig, min_eigenvalue(quantize(frame, rng.random((d, d)))))
    rep.add("linearity_residual", lin, 1e-12)
    rep.add("hermiticity_defect", herm, 1e-12)
    rep.add("positivity_min_eigenvalue", mineig, -tol, above=True)
    rep.add("trace_formula_residual", tr, tol)

    # states, expectations and covariance
    state_defect = cov = expect = 0.0
    for _ in range(samples):
        rho = states.density_from_function(frame, states.random_function(space, rng))
        m = rho.matrix
        state_defect = max(state_defect, hermitian_defect(m), abs(np.trace(m) - 1), max(0.0, -min_eigenvalue(m)))
        shift = tuple(rng.integers(-space.s, space.s + 1, size=2))
        cov = max(cov, *states.covariance_residuals(rho, shift).values())
        obs = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        expect = max(expect, abs(states.expectation(rho, obs) - np.trace(obs @ m)))
    rep.add("state_defect", state_defect, tol)
    rep.add("expectation_residual", expect, tol)
    rep.add("covariance_residual", cov, tol)
    rep.add("frame_fourier_residual", fourier_maps_frame(frame), tol)
    rep.add("frame_parity_residual", parity_maps_frame(frame), tol)
    rep.add("frame_displacement_residual", displacement_shifts_frame(frame, 1, -1), tol)

    delta = states.density_from_function(frame, PhaseSpaceFunction.delta(space, 1, 0))
    uniform = states.density_from_function(frame, PhaseSpaceFunction.constant(space, 1 / d))
    rep.add("delta_purity_defect", abs(states.purity(delta) - 1), 1e-8)
    rep.add("uniform_purity_defect", abs(states.purity(uniform) - 1 / d), tol)
    two_point = states.density_from_function(frame, states.random_function(space, rng, support=2))
    rep.add("mixed_purity", states.purity(two_point), 1 - 1e-6)

    # Wigner function, direct and theta forms
    rho = states.density_from_function(frame, states.random_function(space, rng))
    raw = states.wigner_raw(rho)
    grid = states.wigner(rho)
    rep.add("wigner_imag", np.max(np.abs(raw.imag)), tol)
    rep.add("wigner_total_defect", abs(grid.total() - 1), 1e-9)
    rep.add("wigner_marginal_residual", np.linalg.norm(grid.position_marginal() - np.diag(rho.matrix).real), tol)
    theta4 = states.wigner_theta_form(rho, 4)
    rep.add("theta_form_residual", np.max(np.abs(theta4.values - grid.values)), 1e-6)
    rep.add("theta_window_stability",
            np.max(np.abs(states.wigner_theta_form(rho, 8).values - theta4.values)), tol)

    # Fractional Fourier transform on the harmonic eigenbasis
    harm = harmonic_operator(frame)
    fm = dft(space)
    rep.add("harmonic_fourier_commutator", np.linalg.norm(fm @ harm - harm @ fm), tol)
    basis = harmonic_basis(space)
    group = unit = 0.0
    for a in ALPHAS:
        fa = frac_fourier(basis, a)
        unit = max(unit, unitary_defect(fa))
        for b in ALPHAS:
            group = max(group, np.linalg.norm(fa @ frac_fourier(basis, b) - frac_fourier(basis, a + b)))
    rep.add("frac_fourier_unitarity", unit, tol)
    rep.add("frac_fourier_group_law", group, tol)
    rep.add("frac_fourier_period", max(np.linalg.norm(frac_fourier(basis, 0) - eye),
                                       np.linalg.norm(frac_fourier(basis, 4) - eye)), tol)

    # bipartite system; the partner factor stays small for large d
    partner = d if d <= 7 else 3
    pspace = HilbertSpace.from_dim(partner)
    pframe = coherent_frame(pspace)
    bs = composite.BipartiteSpace(space, pspace)
    rep.add("bipartite_resolution_residual", composite.bipartite_resolution_residual(frame, pframe), tol)
    fb = composite.random_bipartite_function(bs, rng)
    rho_ab = composite.bipartite_density(frame, pframe, fb)
    red = composite.reduction_residuals(rho_ab)
    rep.add("partial_trace_residual", max(red.values()), tol)
    f1, f2 = states.random_function(space, rng), states.random_function(pspace, rng)
    prod = composite.bipartite_density(frame, pframe, composite.BipartitePhaseFunction.product(f1, f2))
    kron = np.kron(quantize(frame, f1), quantize(pframe, f2))
    rep.add("product_factorization_residual", np.linalg.norm(prod.matrix - kron), tol)
    sq = composite.BipartiteSpace(pspace, pspace)
    fsq = composite.random_bipartite_function(sq, rng)
    rho_sq = composite.bipartite_density(pframe, pframe, fsq)
    sw = composite.swap_operator(partner, partner)
    target = composite.bipartite_quantize(pframe, pframe, fsq.swapped())
    rep.add("swap_residual", np.linalg.norm(sw @ rho_sq.matrix @ sw.T - target), tol)

    # channels A -> B with d_A = d and d_B = partner
    rep.add("channel_choi_residual", channels.choi_reconstruction_residual(
        channels.kraus_from_function(frame, pframe, fb, "unscaled")), tol)
    uni_a = composite.BipartitePhaseFunction.product(PhaseSpaceFunction.constant(space, 1 / d), f2)
    tp = channels.kraus_from_function(frame, pframe, uni_a)
    rep.add("channel_completeness_defect", channels.completeness_defect(tp), tol)
    rep.add("channel_tp_choi_residual", channels.choi_reconstruction_residual(tp), tol)
    spike = channels.kraus_from_function(frame, pframe, composite.BipartitePhaseFunction.delta(bs, 0, 0, 0, 0))
    rep.add("channel_delta_defect", channels.completeness_defect(spike), 0.1, above=True)
    out_min = np.inf
    for _ in range(max(1, samples // 2)):
        z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        out_min = min(out_min, min_eigenvalue(channels.apply_channel(tp, z @ z.conj().T)))
    rep.add("channel_cp_min_eigenvalue", out_min, -tol, above=True)
    return rep
