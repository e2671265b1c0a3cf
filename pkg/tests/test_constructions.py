import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framelab import (
    DualPair,
    Frame,
    canonical_dual,
    classify_frame,
    classify_pair,
    dual_from_parameters,
    dual_parameterization,
    example_frame,
    harmonic_frame,
    make_dual_pair,
    onb_extension_pair,
    random_frame,
    two_uniform_pair,
    worst_case,
)
from framelab.constructions import two_uniform_certificate


@pytest.mark.parametrize("N, n", [(2, 2), (3, 2), (7, 3), (9, 1), (12, 5), (16, 16)])
def test_harmonic_frame_is_equal_norm_parseval(N, n):
    p = classify_frame(harmonic_frame(N, n))
    assert p.is_parseval and p.is_equal_norm
    assert p.common_norm ** 2 == pytest.approx(n / N, abs=1e-12)


def test_harmonic_square_case_is_scaled_dft():
    H = harmonic_frame(4, 4)
    np.testing.assert_allclose(H.vectors @ H.vectors.conj().T, np.eye(4), atol=1e-12)


def test_harmonic_n_plus_one_is_equiangular():
    for n in range(1, 7):
        p = classify_frame(harmonic_frame(n + 1, n))
        assert p.is_equiangular
        assert p.common_angle == pytest.approx(1 / (n + 1), abs=1e-12)


def test_onb_extension_square_case():
    P = onb_extension_pair(3, 3)
    np.testing.assert_array_equal(P.F.vectors, np.eye(3))
    np.testing.assert_array_equal(P.G.vectors, np.eye(3))
    assert worst_case(P, 1, "spectral").worst_value == 1


def test_onb_extension_4_2_entries():
    P = onb_extension_pair(4, 2)
    e1, e2 = np.eye(2)
    np.testing.assert_allclose(P.F.vectors[2], e1 + e2)
    np.testing.assert_allclose(P.F.vectors[3], e1 + e2)
    np.testing.assert_allclose(P.G.vectors[0], e1 - 0.5 * (e1 + e2))
    np.testing.assert_allclose(P.G.vectors[2], 0.25 * (e1 + e2))
    np.testing.assert_allclose(P.G.vectors[3], 0.25 * (e1 + e2))
    # reconstruction on the standard basis
    for f in np.eye(2):
        rec = sum(np.vdot(fi, f) * gi for fi, gi in zip(P.F.vectors, P.G.vectors))
        np.testing.assert_allclose(rec, f, atol=1e-15)


@pytest.mark.parametrize("N, n", [(4, 2), (5, 3), (7, 3), (10, 4), (9, 1)])
def test_onb_extension_is_one_uniform(N, n):
    c = classify_pair(onb_extension_pair(N, n))
    assert c.one_uniform and c.c1 == pytest.approx(n / N)


@pytest.mark.parametrize("n", range(1, 9))
def test_two_uniform_pair(n):
    P = two_uniform_pair(n)
    c = classify_pair(P)
    assert c.two_uniform and c.c1 == pytest.approx(n / (n + 1))
    assert worst_case(P, 2, "spectral").worst_value == pytest.approx(1, abs=1e-9)


def test_two_uniform_pair_small_cases():
    P = two_uniform_pair(1)
    np.testing.assert_allclose(P.F.vectors, [[1], [1]])
    np.testing.assert_allclose(P.G.vectors, [[0.5], [0.5]])
    rep = worst_case(two_uniform_pair(2), 2, "spectral")
    assert len(rep.argmax_sets) == 3
    assert two_uniform_certificate(3).holds


def test_random_frame_determinism():
    a = random_frame(8, 4, seed=1)
    b = random_frame(8, 4, seed=1)
    assert a == b
    assert a != random_frame(8, 4, seed=2)
    B = random_frame(4, 4, seed=7)
    A, Bb = classify_frame(B).lower_bound, classify_frame(B).upper_bound
    assert 0 < A <= Bb < np.inf


def test_dual_parameterization_examples():
    p = dual_parameterization(Frame(np.eye(3)))
    np.testing.assert_allclose(p.projector, 0, atol=1e-12)
    assert p.rank == 0
    assert dual_parameterization(example_frame()).rank == 1
    assert dual_parameterization(harmonic_frame(7, 3)).rank == 4


def test_dual_from_parameters_zero_is_canonical():
    F = random_frame(6, 3, seed=0)
    p = dual_parameterization(F)
    P = dual_from_parameters(p, np.zeros(p.shape))
    np.testing.assert_allclose(P.G.vectors, canonical_dual(F).vectors, atol=1e-12)


def test_dual_from_parameters_ignores_range_component():
    rng = np.random.default_rng(3)
    F = random_frame(6, 3, seed=4)
    p = dual_parameterization(F)
    V = rng.standard_normal(p.shape) + 1j * rng.standard_normal(p.shape)
    W = rng.standard_normal(p.shape) + 1j * rng.standard_normal(p.shape)
    a = dual_from_parameters(p, V).G.vectors
    b = dual_from_parameters(p, V + W @ (np.eye(6) - p.projector)).G.vectors
    np.testing.assert_allclose(a, b, atol=1e-12)
    with pytest.raises(ValueError):
        dual_from_parameters(p, np.zeros((3, 5)))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 5), st.integers(0, 10**6))
def test_parameterization_properties(n, extra, seed):
    N = n + extra
    F = random_frame(N, n, seed)
    p = dual_parameterization(F)
    P = p.projector
    np.testing.assert_allclose(P @ P, P, atol=1e-9)
    np.testing.assert_allclose(P, P.conj().T, atol=1e-12)
    assert p.rank == N - n
    rng = np.random.default_rng(seed)
    V = rng.standard_normal(p.shape) + 1j * rng.standard_normal(p.shape)
    make_dual_pair(F, dual_from_parameters(p, V).G)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(0, 5), st.integers(0, 10**6))
def test_parameterization_is_surjective(n, extra, seed):
    # an independently found dual: pseudo-inverse left inverse of Phi^H plus a
    # random combination of vectors from the kernel of F's synthesis matrix
    N = n + extra
    F = random_frame(N, n, seed)
    rng = np.random.default_rng(seed + 1)
    Phi = F.synthesis
    G0 = np.linalg.pinv(Phi.conj().T)
    _, _, Vh = np.linalg.svd(Phi)
    kernel = Vh[n:].conj().T  # columns c with Phi c = 0
    Ws = rng.standard_normal((n, kernel.shape[1])) + 1j * rng.standard_normal((n, kernel.shape[1]))
    Gsyn = G0 + Ws @ kernel.conj().T
    G = Frame(Gsyn.T)
    P = DualPair(F, G)
    p = dual_parameterization(F)
    V = p.parameters_for(P.G)
    np.testing.assert_allclose(p.synthesis(V), P.G.synthesis, atol=1e-9)
