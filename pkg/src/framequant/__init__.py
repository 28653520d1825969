"""Finite coherent-state frame quantization on odd-dimensional Hilbert spaces."""
from .hilbert import HilbertSpace, make_space, center_mod, basis_state, inner, dft, position_op, momentum_op, parity_op
from .gaussian import GaussianParams, discrete_gaussian, gaussian_fourier_residual, vacuum_state
from .coherent import (
    CoherentFrame,
    coherent_frame,
    coherent_state,
    displacement,
    displacement_shifts_frame,
    fourier_maps_frame,
    resolution_residual,
)
from .quantize import (
    OrderedEigenbasis,
    PhaseSpaceFunction,
    frac_fourier,
    harmonic_operator,
    harper_operator,
    hermite_gauss_samples,
    order_by_sign_alternations,
    quantize,
    quantize_trace,
)
from .states import (
    DensityOperator,
    WignerGrid,
    convex_combine,
    density_from_function,
    displace_density,
    expectation,
    fourier_transform_density,
    parity_density,
    purity,
    transpose_density,
    wigner,
    wigner_theta_form,
)
from .composite import (
    BipartitePhaseFunction,
    BipartiteSpace,
    bipartite_density,
    partial_trace_a,
    partial_trace_b,
    product_coherent,
    swap_density,
)
from .channels import (
    KrausChannel,
    apply_channel,
    choi_reconstruction_residual,
    completeness_defect,
    kraus_from_function,
    max_entangled,
)

__version__ = "0.1.0"
