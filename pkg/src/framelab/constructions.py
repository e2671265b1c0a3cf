"""Explicit frames and dual pairs, random frames, and the space of all duals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import NotAFrameError
from .frame import DEFAULT_TOL, DualPair, Frame, canonical_dual, frame_operator

RANDOM_ATTEMPTS = 16
RANDOM_SMIN = 1e-6


def harmonic_frame(N: int, n: int) -> Frame:
    """Rows of the N-point DFT matrix restricted to frequencies 0..n-1.

    ``f_k = N^{-1/2} (w^{k j})_{j < n}`` with ``w = exp(2 pi i / N)``; an
    equal-norm Parseval frame with ``|f_k|^2 = n/N``.
    """
    if not 1 <= n <= N:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={N}")
    k = np.arange(N)[:, None]
    j = np.arange(n)[None, :]
    return Frame(np.exp(2j * np.pi * k * j / N) / np.sqrt(N))


def standard_basis(n: int) -> Frame:
    return Frame(np.eye(n))


def onb_extension_pair(N: int, n: int) -> DualPair:
    """Orthonormal basis padded with copies of e_1 + ... + e_n, and its
    1-uniform dual.

    ``g_i = e_i - (N-n)/N * sum_j e_j`` for i <= n and ``g_i = (1/N) sum_j e_j``
    for the padding vectors; every ``<f_i, g_i>`` equals n/N.
    """
    if not 1 <= n <= N:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={N}")
    e = np.eye(n)
    ones = np.ones(n)
    F = np.vstack([e, np.tile(ones, (N - n, 1))])
    G = np.vstack([e - (N - n) / N * ones, np.tile(ones / N, (N - n, 1))])
    return DualPair(Frame(F), Frame(G))


def two_uniform_pair(n: int) -> DualPair:
    """The (n+1, n) ONB-extension pair, which is 2-uniform."""
    if n < 1:
        raise ValueError("n must be positive")
    return onb_extension_pair(n + 1, n)


def two_uniform_certificate(n: int):
    """R2 membership verdict for :func:`two_uniform_pair`."""
    from .optimality import check_membership

    return check_membership(two_uniform_pair(n), "R2")


def _complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_frame(N: int, n: int, seed: int) -> Frame:
    """Frame with i.i.d. standard complex normal entries.

    Draws come from numpy's PCG64 generator seeded with ``seed``; samples whose
    smallest singular value is at most 1e-6 are redrawn.
    """
    if not 1 <= n <= N:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={N}")
    rng = np.random.default_rng(seed)
    for _ in range(RANDOM_ATTEMPTS):
        X = _complex_normal(rng, (N, n))
        if np.linalg.svd(X, compute_uv=False)[-1] > RANDOM_SMIN:
            return Frame(X)
    raise NotAFrameError(f"could not draw a nondegenerate ({N}, {n}) frame in {RANDOM_ATTEMPTS} attempts")


@dataclass(frozen=True)
class DualParameterization:
    """Every dual of ``frame`` has synthesis ``base + V @ projector``.

    ``projector`` is the orthogonal projector onto the complement of the
    range of the analysis operator; ``base`` is the canonical dual's
    synthesis matrix (n x N).
    """

    frame: Frame
    base: np.ndarray
    projector: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.base.shape

    @property
    def rank(self) -> int:
        return int(round(float(np.real(np.trace(self.projector)))))

    def synthesis(self, V) -> np.ndarray:
        V = np.asarray(V, dtype=complex)
        if V.shape != self.base.shape:
            raise ValueError(f"V must have shape {self.base.shape}, got {V.shape}")
        return self.base + V @ self.projector

    def parameters_for(self, G: Frame) -> np.ndarray:
        """A V reproducing the dual G (any dual of ``frame``)."""
        return (G.synthesis - self.base) @ self.projector


def dual_parameterization(F: Frame) -> DualParameterization:
    phi = F.synthesis
    S = frame_operator(F)
    P = np.eye(F.N) - phi.conj().T @ np.linalg.solve(S, phi)
    P = (P + P.conj().T) / 2
    base = canonical_dual(F).synthesis.copy()
    base.setflags(write=False)
    P.setflags(write=False)
    return DualParameterization(F, base, P)


def dual_from_parameters(param: DualParameterization, V, tol: float = DEFAULT_TOL) -> DualPair:
    Gs = param.synthesis(V)
    scale = 1.0 + float(np.max(np.abs(V))) if np.size(V) else 1.0
    return DualPair(param.frame, Frame(Gs.T), max(tol, tol * scale))


def random_dual_pair(N: int, n: int, seed: int, spread: float = 1.0) -> DualPair:
    """Random frame paired with a random (generally non-canonical) dual."""
    F = random_frame(N, n, seed)
    param = dual_parameterization(F)
    rng = np.random.default_rng([seed, 1])
    V = spread * _complex_normal(rng, param.shape)
    return dual_from_parameters(param, V)


def example_frame() -> Frame:
    """{[1,0], [0,1], [1,1]} in C^2: 1-uniform with its canonical dual but not
    1-erasure optimal under the numerical radius."""
    return Frame([[1, 0], [0, 1], [1, 1]])
