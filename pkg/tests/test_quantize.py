import numpy as np
import pytest
from hypothesis import given, strategies as st

from framequant.coherent import coherent_frame, coherent_state
from framequant.errors import DimensionError, OrderingError
from framequant.hilbert import dft, hermitian_defect, min_eigenvalue, unitary_defect
from framequant.quantize import (
    PhaseSpaceFunction,
    fourier_eigen_residuals,
    frac_fourier,
    harmonic_basis,
    harmonic_function,
    harmonic_operator,
    harper_basis,
    harper_operator,
    hermite_gauss_samples,
    order_by_sign_alternations,
    quantize,
    quantize_trace,
    sign_alternations,
)

from conftest import ODD_DIMS, odd_dims, seeds, space_of

# pure-Python loop over the closed-form coherent states, bisection on the characteristic polynomial
HARMONIC_D3_EIGENVALUES = (0.35566243270259357, 0.7499999999999999, 0.8943375672974067)


def _quantize_oracle(space, f):
    """Projector sum written out term by term."""
    out = np.zeros((space.d, space.d), dtype=complex)
    for n in space.indices:
        for k in space.indices:
            v = coherent_state(space, n, k)
            out += f(n, k) * np.outer(v, v.conj())
    return out / space.d


def test_constant_one_gives_identity():
    for d in (3, 9, 31):
        frame = coherent_frame(space_of(d))
        assert np.linalg.norm(quantize(frame, np.ones((d, d))) - np.eye(d)) < 1e-10


def test_matches_projector_sum():
    space = space_of(5)
    fn = lambda n, k: np.cos(n) + 1j * k**3
    f = PhaseSpaceFunction.from_callable(space, fn)
    np.testing.assert_allclose(quantize(coherent_frame(space), f), _quantize_oracle(space, fn), atol=1e-13)


@given(odd_dims, seeds)
def test_linearity(d, seed):
    rng = np.random.default_rng(seed)
    frame = coherent_frame(space_of(d))
    f, g = (rng.normal(size=(2, d, d)) + 1j * rng.normal(size=(2, d, d)))
    a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
    lhs = quantize(frame, a * f + b * g)
    assert np.linalg.norm(lhs - a * quantize(frame, f) - b * quantize(frame, g)) < 1e-12


@given(odd_dims, seeds)
def test_real_function_gives_hermitian(d, seed):
    f = np.random.default_rng(seed).normal(size=(d, d))
    assert hermitian_defect(quantize(coherent_frame(space_of(d)), f)) < 1e-12


@given(odd_dims, seeds)
def test_nonnegative_function_gives_psd(d, seed):
    f = np.random.default_rng(seed).random((d, d))
    assert min_eigenvalue(quantize(coherent_frame(space_of(d)), f)) >= -1e-10


@given(odd_dims, seeds)
def test_trace_formula(d, seed):
    rng = np.random.default_rng(seed)
    f = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    assert abs(np.trace(quantize(coherent_frame(space_of(d)), f)) - quantize_trace(f)) < 1e-10


def test_trace_examples():
    assert quantize_trace(np.ones((5, 5))) == 5
    assert quantize_trace(np.full((5, 5), 1 / 5)) == pytest.approx(1)
    n = PhaseSpaceFunction.from_callable(space_of(5), lambda n, k: n)
    assert quantize_trace(n) == 0


def test_shape_mismatch_rejected():
    with pytest.raises(DimensionError):
        quantize(coherent_frame(space_of(3)), np.ones((5, 5)))


def test_function_grid_is_read_only():
    f = PhaseSpaceFunction.constant(space_of(3), 1.0)
    with pytest.raises(ValueError):
        f.values[0, 0] = 2


def test_reindex_wraps_modulo_d():
    space = space_of(5)
    f = PhaseSpaceFunction.delta(space, 2, 0)
    g = f.reindex(lambda n, k: (n - 1, k))
    assert g(-2, 0) == 5
    assert g.total() == 5


def test_harmonic_trace_and_fourier_symmetry():
    space = space_of(3)
    h = harmonic_operator(coherent_frame(space))
    assert np.trace(h).real == pytest.approx(2, abs=1e-12)
    assert hermitian_defect(h) < 1e-12
    assert min_eigenvalue(h) >= -1e-10
    f = dft(space)
    for d in (3, 7, 15):
        f = dft(space_of(d))
        h = harmonic_operator(coherent_frame(space_of(d)))
        assert np.linalg.norm(f @ h - h @ f) < 1e-10


def test_harmonic_eigenvalues_match_oracle():
    h = harmonic_operator(coherent_frame(space_of(3)))
    np.testing.assert_allclose(np.linalg.eigvalsh(h), HARMONIC_D3_EIGENVALUES, atol=1e-12)


def test_harmonic_function_values():
    f = harmonic_function(space_of(5))
    assert f(2, -1) == 2.5
    assert f(0, 0) == 0


def test_sign_alternations_counts():
    assert sign_alternations([1, 2, 3]) == 0
    assert sign_alternations([1, -2, 3]) == 2
    assert sign_alternations([1, 0, -3]) == 1


@pytest.mark.parametrize("d", ODD_DIMS)
def test_harmonic_ordering_gives_permutation(d):
    basis = harmonic_basis(space_of(d))
    assert basis.alternation_counts.tolist() == list(range(d))
    assert np.all(basis.vectors[0].real > 0)


def test_ordering_rejects_degenerate_identity():
    with pytest.raises(OrderingError) as info:
        order_by_sign_alternations(np.eye(5))
    assert len(info.value.counts) == 5


def test_ordering_rejects_complex_matrix():
    with pytest.raises(ValueError):
        order_by_sign_alternations(np.array([[1, 1j], [-1j, 2]]))


def test_fractional_fourier_examples():
    basis = harmonic_basis(space_of(7))
    np.testing.assert_allclose(frac_fourier(basis, 0), np.eye(7), atol=1e-12)
    np.testing.assert_allclose(frac_fourier(basis, 4), np.eye(7), atol=1e-10)
    half = frac_fourier(basis, 0.5)
    np.testing.assert_allclose(half @ half, frac_fourier(basis, 1), atol=1e-10)


@given(st.sampled_from([3, 5, 7, 11]), st.floats(-4, 4), st.floats(-4, 4))
def test_fractional_fourier_group_law(d, a, b):
    basis = harmonic_basis(space_of(d))
    fa = frac_fourier(basis, a)
    assert unitary_defect(fa) < 1e-10
    assert np.linalg.norm(fa @ frac_fourier(basis, b) - frac_fourier(basis, a + b)) < 1e-10


def test_harmonic_levels_are_fourier_eigenvectors():
    res = fourier_eigen_residuals(harmonic_basis(space_of(21)))
    assert len(res["best"]) == 21
    assert max(res["best"]) < 1e-10


def test_harper_operator():
    for d in (3, 7, 21):
        space = space_of(d)
        h = harper_operator(space)
        f = dft(space)
        assert hermitian_defect(h) < 1e-12
        assert np.linalg.norm(f @ h - h @ f) < 1e-10
    assert np.all(np.isreal(np.linalg.eigvalsh(harper_operator(space_of(3)))))
    assert harper_basis(space_of(9)).alternation_counts.tolist() == list(range(9))


def test_hermite_gauss_samples():
    space = space_of(9)
    assert np.all(hermite_gauss_samples(space, 0).real > 0)
    assert abs(hermite_gauss_samples(space, 1)[space.slot(0)]) == 0
    with pytest.raises(ValueError):
        hermite_gauss_samples(space, 9)


def test_ground_level_close_to_gaussian_sample():
    space = space_of(21)
    psi0 = harmonic_basis(space).vectors[0]
    assert abs(np.vdot(hermite_gauss_samples(space, 0), psi0)) > 0.99
