"""Finite frames, dual pairs and their structural predicates.

Conventions
-----------
Vectors live in C^n and the inner product is linear in the first slot,
``<x, y> = sum_k x_k * conj(y_k)``.  A frame with N vectors is stored as an
``(N, n)`` array whose rows are the frame vectors; its synthesis matrix is
the ``(n, N)`` transpose, so the frame operator is ``S = Phi @ Phi^H``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .exceptions import DualityError, NotAFrameError

DEFAULT_TOL = 1e-9


def inner(x, y) -> complex:
    """``<x, y>``, linear in ``x``."""
    return complex(np.vdot(np.asarray(y), np.asarray(x)))


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


class Frame:
    """An immutable finite frame for C^n.

    Parameters
    ----------
    vectors : array-like, shape (N, n)
        The frame vectors, one per row.  Real input is promoted to complex.
    tol : float
        A frame is rejected when the smallest singular value of its synthesis
        matrix does not exceed ``tol``.
    """

    __slots__ = ("_vectors",)

    def __init__(self, vectors, tol: float = DEFAULT_TOL):
        arr = np.asarray(vectors, dtype=complex)
        if arr.ndim != 2 or arr.shape[1] < 1:
            raise NotAFrameError(f"expected an (N, n) array of vectors, got shape {arr.shape}")
        N, n = arr.shape
        if N < n:
            raise NotAFrameError(f"{N} vectors cannot span a space of dimension {n}")
        if not np.all(np.isfinite(arr)):
            raise NotAFrameError("frame vectors contain NaN or Inf entries")
        smin = np.linalg.svd(arr, compute_uv=False)[-1]
        if smin <= tol:
            raise NotAFrameError(f"vectors do not span C^{n} (smallest singular value {smin:.3e})")
        object.__setattr__(self, "_vectors", _readonly(arr))

    def __setattr__(self, name, value):
        raise AttributeError("Frame is immutable")

    @property
    def vectors(self) -> np.ndarray:
        return self._vectors

    @property
    def synthesis(self) -> np.ndarray:
        """Synthesis matrix, shape (n, N); column i is f_i."""
        return self._vectors.T

    @property
    def analysis(self) -> np.ndarray:
        """Analysis matrix, shape (N, n); maps f to (<f, f_i>)_i."""
        return self._vectors.conj()

    @property
    def dim(self) -> int:
        return self._vectors.shape[1]

    @property
    def N(self) -> int:
        return self._vectors.shape[0]

    def __len__(self) -> int:
        return self.N

    def __getitem__(self, i) -> np.ndarray:
        return self._vectors[i]

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self._vectors, axis=1)

    def gram(self) -> np.ndarray:
        """Gram matrix with entry (i, j) = <f_i, f_j>."""
        return self._vectors @ self._vectors.conj().T

    def transform(self, T) -> "Frame":
        """The frame {T f_i} for an n x n matrix T."""
        T = np.asarray(T, dtype=complex)
        return Frame(self._vectors @ T.T)

    def __eq__(self, other):
        if not isinstance(other, Frame):
            return NotImplemented
        return np.array_equal(self._vectors, other._vectors)

    __hash__ = None

    def __repr__(self):
        return f"Frame(N={self.N}, n={self.dim})"


def frame_operator(F: Frame) -> np.ndarray:
    """S_F = Theta_F^* Theta_F as an n x n Hermitian matrix."""
    phi = F.synthesis
    S = phi @ phi.conj().T
    return (S + S.conj().T) / 2


def frame_bounds(F: Frame, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Optimal frame bounds, the extreme eigenvalues of S_F."""
    w = np.linalg.eigvalsh(frame_operator(F))
    A, B = float(w[0]), float(w[-1])
    if A <= tol:
        raise NotAFrameError(f"degenerate frame: lower bound {A:.3e}")
    return A, B


def _inv_power(F: Frame, power: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    w, U = np.linalg.eigh(frame_operator(F))
    w = np.maximum(w, tol)
    return (U * w**power) @ U.conj().T


def canonical_dual(F: Frame) -> Frame:
    """The canonical dual {S_F^{-1} f_i}."""
    S = frame_operator(F)
    # rows g_i = S^{-1} f_i  <=>  G^T = S^{-1} F^T
    return Frame(np.linalg.solve(S, F.synthesis).T)


def inv_sqrt_frame(F: Frame) -> Frame:
    """The Parseval frame {S_F^{-1/2} f_i}."""
    R = _inv_power(F, -0.5)
    return Frame((R @ F.synthesis).T)


@dataclass(frozen=True)
class FrameProperties:
    lower_bound: float
    upper_bound: float
    is_tight: bool
    is_parseval: bool
    is_equal_norm: bool
    is_equiangular: bool
    common_norm: Optional[float] = None
    common_angle: Optional[float] = None

    def labels(self) -> list[str]:
        out = []
        if self.is_parseval:
            out.append("parseval")
        elif self.is_tight:
            out.append("tight")
        if self.is_equal_norm:
            out.append("equal-norm")
        if self.is_equiangular:
            out.append("equiangular")
        return out


def classify_frame(F: Frame, tol: float = DEFAULT_TOL) -> FrameProperties:
    A, B = frame_bounds(F)
    tight = B - A <= tol
    parseval = tight and abs(A - 1) <= tol and abs(B - 1) <= tol
    norms = F.norms()
    equal_norm = float(np.ptp(norms)) <= tol
    common_norm = float(norms.mean()) if equal_norm else None
    equiangular = False
    common_angle = None
    if equal_norm:
        if F.N == 1:
            equiangular = True
        else:
            off = np.abs(F.gram())[~np.eye(F.N, dtype=bool)]
            if float(np.ptp(off)) <= tol:
                equiangular = True
                common_angle = float(off.mean())
    return FrameProperties(A, B, tight, parseval, equal_norm, equiangular, common_norm, common_angle)


class DualPair:
    """A frame F together with a verified dual G.

    The constructor checks ``Theta_G^* Theta_F = I`` entrywise within ``tol``
    and caches the cross-Gram matrix ``alpha[i, j] = <f_i, g_j>`` along with
    both Gram matrices.
    """

    __slots__ = ("F", "G", "tol", "cross_gram", "gram_f", "gram_g")

    def __init__(self, F: Frame, G: Frame, tol: float = DEFAULT_TOL):
        if F.dim != G.dim or F.N != G.N:
            raise DualityError(
                f"shape mismatch: F is ({F.N}, {F.dim}), G is ({G.N}, {G.dim})"
            )
        recon = G.synthesis @ F.synthesis.conj().T
        resid = float(np.max(np.abs(recon - np.eye(F.dim))))
        if resid > tol:
            raise DualityError(
                f"G is not a dual of F: max |Theta_G^* Theta_F - I| = {resid:.3e}", resid
            )
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "tol", tol)
        object.__setattr__(self, "cross_gram", _readonly(F.vectors @ G.vectors.conj().T))
        object.__setattr__(self, "gram_f", _readonly(F.gram()))
        object.__setattr__(self, "gram_g", _readonly(G.gram()))

    def __setattr__(self, name, value):
        raise AttributeError("DualPair is immutable")

    @property
    def dim(self) -> int:
        return self.F.dim

    @property
    def N(self) -> int:
        return self.F.N

    def trace(self) -> complex:
        """sum_i <g_i, f_i>; equals n for any dual pair."""
        return complex(np.trace(self.cross_gram).conjugate())

    def __repr__(self):
        return f"DualPair(N={self.N}, n={self.dim})"


def make_dual_pair(F: Frame, G: Frame, tol: float = DEFAULT_TOL) -> DualPair:
    return DualPair(F, G, tol)


@dataclass(frozen=True)
class PairClassification:
    one_uniform: bool
    two_uniform: bool
    c1: Optional[complex] = None
    c2: Optional[complex] = None
    diag_residual: float = 0.0
    offdiag_spread: Optional[float] = None
    products: np.ndarray = field(default=None, repr=False, compare=False)


def classify_pair(P: DualPair, tol: float = DEFAULT_TOL) -> PairClassification:
    """1-uniform and 2-uniform tests on the cross-Gram matrix.

    1-uniform means every ``<f_i, g_i>`` equals n/N.  2-uniform additionally
    asks that all products ``alpha_ij * alpha_ji`` (i != j) coincide.
    """
    N, n = P.N, P.dim
    alpha = P.cross_gram
    diag = np.diag(alpha)
    diag_resid = float(np.max(np.abs(diag - n / N)))
    one = diag_resid <= tol
    c1 = complex(n / N) if one else None
    if N == 1:
        return PairClassification(one, one, c1, None, diag_resid, None)
    prod = alpha * alpha.T
    off = prod[~np.eye(N, dtype=bool)]
    center = off.mean()
    spread = float(np.max(np.abs(off - center)))
    two = one and spread <= tol
    return PairClassification(
        one, two, c1, complex(center) if two else None, diag_resid, spread, prod
    )


def as_frame(vectors: Sequence | np.ndarray | Frame) -> Frame:
    return vectors if isinstance(vectors, Frame) else Frame(vectors)
