"""Erasure sets, error operators and the three worst-case error measures.

For a dual pair (F, G) and an erasure set L, the error operator is
``E f = sum_{i in L} <f, f_i> g_i``.  Its nonzero spectrum is carried by the
m x m reduced matrix ``M[a, b] = <g_{i_b}, f_{i_a}>``; its Frobenius norm has
the closed form ``sum_{j,k in L} <g_j, g_k> <f_k, f_j>``.  The numerical
radius is not a similarity invariant, so it is computed on the compression
of E to span{f_i, g_i : i in L}, which is exact.
"""

from __future__ import annotations

import cmath
import csv
import io
import itertools
import math
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional, Sequence

import numpy as np

from .exceptions import ComputationError, EnumerationCapError
from .frame import DEFAULT_TOL, DualPair

DEFAULT_ENUM_CAP = 2_000_000
SWEEP_POINTS = 1024
SWEEP_WIDTH = 1e-12
_CHUNK = 1 << 14


class MeasureKind(str, Enum):
    FROBENIUS = "frobenius"
    SPECTRAL = "spectral"
    NUMERICAL = "numerical"

    @classmethod
    def parse(cls, value) -> "MeasureKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown measure {value!r}; expected one of {names}") from None


@dataclass(frozen=True, order=True)
class ErasureSet:
    """Sorted 1-based erasure locations drawn from {1..N}."""

    indices: tuple[int, ...]
    N: int = field(compare=False)

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if not 1 <= len(idx) <= self.N:
            raise ValueError(f"erasure count {len(idx)} outside 1..{self.N}")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"indices must be strictly increasing: {idx}")
        if idx[0] < 1 or idx[-1] > self.N:
            raise ValueError(f"indices {idx} out of range 1..{self.N}")

    @property
    def m(self) -> int:
        return len(self.indices)

    @property
    def zero_based(self) -> list[int]:
        return [i - 1 for i in self.indices]

    def __str__(self):
        return "{" + ",".join(map(str, self.indices)) + "}"


def enumerate_erasures(N: int, m: int) -> Iterator[ErasureSet]:
    """All C(N, m) erasure sets in lexicographic order."""
    if not 1 <= m <= N:
        raise ValueError(f"m={m} outside 1..{N}")
    for c in itertools.combinations(range(1, N + 1), m):
        yield ErasureSet(c, N)


def enum_cap() -> int:
    env = os.environ.get("FRAMELAB_MAX_ENUM")
    return int(env) if env else DEFAULT_ENUM_CAP


# --------------------------------------------------------------------------
# error operator


@dataclass(frozen=True)
class ErrorOperator:
    reduced: np.ndarray
    pair: DualPair = field(repr=False)
    lam: ErasureSet

    def full(self) -> np.ndarray:
        """The n x n operator sum_{i in L} g_i <., f_i>."""
        idx = self.lam.zero_based
        Fl = self.pair.F.synthesis[:, idx]
        Gl = self.pair.G.synthesis[:, idx]
        return Gl @ Fl.conj().T

    def compressed(self) -> np.ndarray:
        """E restricted to span{f_i, g_i : i in L}, in an orthonormal basis."""
        idx = self.lam.zero_based
        return _compress(self.pair.F.synthesis[:, idx], self.pair.G.synthesis[:, idx])

    def check_spectrum(self, tol: float = 1e-8) -> float:
        """Max mismatch between nonzero spectra of reduced and full operators."""
        return _spectrum_mismatch(self.reduced, self.full(), tol)


def error_operator(P: DualPair, lam: ErasureSet) -> ErrorOperator:
    if lam.N != P.N:
        raise ValueError(f"erasure set over {lam.N} indices, pair has {P.N}")
    idx = lam.zero_based
    # M[a, b] = <g_{i_b}, f_{i_a}> = conj(alpha[i_a, i_b])
    M = P.cross_gram[np.ix_(idx, idx)].conj()
    M.setflags(write=False)
    return ErrorOperator(M, P, lam)


def _compress(Fl: np.ndarray, Gl: np.ndarray) -> np.ndarray:
    n, m = Fl.shape
    E = Gl @ Fl.conj().T
    if 2 * m >= n:
        return E
    U, s, _ = np.linalg.svd(np.hstack([Fl, Gl]), full_matrices=False)
    r = int(np.sum(s > s[0] * 1e-13)) if s[0] > 0 else 0
    Q = U[:, : max(r, 1)]
    return Q.conj().T @ E @ Q


def _spectrum_mismatch(M: np.ndarray, E: np.ndarray, tol: float) -> float:
    def nonzero(a):
        ev = np.linalg.eigvals(a)
        scale = max(1.0, float(np.max(np.abs(ev))) if ev.size else 1.0)
        return ev[np.abs(ev) > tol * scale]

    a, b = nonzero(M), nonzero(E)
    if a.size != b.size:
        return math.inf
    if a.size == 0:
        return 0.0
    # match greedily; eigenvalue order can differ on ties
    remaining = list(b)
    worst = 0.0
    for z in a:
        d = [abs(z - w) for w in remaining]
        k = int(np.argmin(d))
        worst = max(worst, d[k])
        remaining.pop(k)
    return worst


# --------------------------------------------------------------------------
# single-operator measures


def frobenius_norm(E: ErrorOperator, tol: float = DEFAULT_TOL) -> float:
    idx = E.lam.zero_based
    sq = _frob_sq(E.pair.gram_f, E.pair.gram_g, np.asarray([idx]))[0]
    return _safe_sqrt(sq, tol)


def _frob_sq(gram_f, gram_g, combos: np.ndarray) -> np.ndarray:
    # sum_{j,k} <g_j, g_k> <f_k, f_j> = sum_{j,k} gram_g[j,k] * gram_f[k,j]
    gg = gram_g[combos[:, :, None], combos[:, None, :]]
    gf = gram_f[combos[:, None, :], combos[:, :, None]]
    return np.real(np.sum(gg * gf, axis=(1, 2)))


def _safe_sqrt(sq: float, tol: float) -> float:
    if sq < -tol:
        raise ComputationError(f"negative squared Frobenius norm {sq:.3e}")
    return math.sqrt(max(float(sq), 0.0))


def spectral_radius(E: ErrorOperator) -> float:
    M = E.reduced
    if M.shape == (1, 1):
        return float(abs(M[0, 0]))
    try:
        ev = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise ComputationError(f"eigensolver failed on\n{M!r}") from exc
    return float(np.max(np.abs(ev)))


def complex_sqrt_branch(z) -> complex:
    """Square root with nonnegative real part; on the negative real axis,
    the root with nonnegative imaginary part."""
    r = cmath.sqrt(complex(z))
    if r.real == 0.0:
        return complex(0.0, abs(r.imag))
    return r


def two_erasure_spectral_formula(a_ii, a_jj, a_ij, a_ji) -> float:
    """Spectral radius of a two-erasure error operator from cross-Gram entries."""
    s = complex_sqrt_branch((a_ii - a_jj) ** 2 + 4 * a_ij * a_ji)
    return max(abs(a_ii + a_jj + s), abs(a_ii + a_jj - s)) / 2


def numerical_radius_rank_one(f, g) -> float:
    """Numerical radius of the rank-one operator g <., f>."""
    f = np.asarray(f)
    g = np.asarray(g)
    return (abs(np.vdot(f, g)) + np.linalg.norm(f) * np.linalg.norm(g)) / 2


def numerical_radius_sweep(A: np.ndarray, points: int = SWEEP_POINTS, width: float = SWEEP_WIDTH) -> float:
    """max over theta of lambda_max((e^{i theta} A + e^{-i theta} A^*) / 2).

    A uniform grid over [0, 2 pi) is refined by golden-section search around
    every grid-local maximum close to the best grid value.
    """
    A = np.asarray(A, dtype=complex)
    if A.size == 0:
        return 0.0
    if A.shape == (1, 1):
        return float(abs(A[0, 0]))
    Ah = A.conj().T

    def f(theta):
        z = np.exp(1j * np.atleast_1d(theta))[:, None, None]
        H = (z * A + Ah / z) / 2
        return np.linalg.eigvalsh(H)[:, -1]

    h = 2 * math.pi / points
    grid = np.arange(points) * h
    try:
        vals = f(grid)
    except np.linalg.LinAlgError as exc:
        raise ComputationError(f"Hermitian eigensolver failed on sweep of\n{A!r}") from exc
    best = float(vals.max())
    scale = max(float(np.linalg.norm(A, 2)), 1e-300)
    is_peak = (vals >= np.roll(vals, 1)) & (vals >= np.roll(vals, -1))
    cand = np.flatnonzero(is_peak & (vals >= best - scale * 4 * h * h))
    if cand.size == 0:
        cand = np.array([int(np.argmax(vals))])
    for k in cand[np.argsort(-vals[cand])][:8]:
        best = max(best, _golden_max(lambda t: float(f(t)[0]), grid[k] - h, grid[k] + h, width))
    return best


def _golden_max(fun, a: float, b: float, width: float) -> float:
    invphi = (math.sqrt(5) - 1) / 2
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fun(c), fun(d)
    best = max(fc, fd)
    for _ in range(200):
        if b - a <= width:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fun(d)
        best = max(best, fc, fd)
    return best


def numerical_radius(E: ErrorOperator) -> float:
    if E.lam.m == 1:
        i = E.lam.zero_based[0]
        return float(numerical_radius_rank_one(E.pair.F.vectors[i], E.pair.G.vectors[i]))
    return numerical_radius_sweep(E.compressed())


def measure(E: ErrorOperator, kind) -> float:
    kind = MeasureKind.parse(kind)
    if kind is MeasureKind.FROBENIUS:
        return frobenius_norm(E)
    if kind is MeasureKind.SPECTRAL:
        return spectral_radius(E)
    return numerical_radius(E)


# --------------------------------------------------------------------------
# worst case over all erasure sets


@dataclass
class MeasureReport:
    measure: MeasureKind
    m: int
    worst_value: float
    argmax_sets: list[ErasureSet]
    per_set_values: Optional[dict[ErasureSet, float]] = None
    theoretical_optimum: Optional[float] = None

    def to_dict(self) -> dict:
        d = {
            "measure": self.measure.value,
            "m": self.m,
            "worst": self.worst_value,
            "argmax": [list(s.indices) for s in self.argmax_sets],
            "theoretical": self.theoretical_optimum,
        }
        if self.per_set_values is not None:
            d["per_set"] = [
                {"indices": list(s.indices), "value": v} for s, v in self.per_set_values.items()
            ]
        return d

    def to_csv(self) -> str:
        if self.per_set_values is None:
            raise ValueError("report was built without keep_all")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["indices", "value"])
        for s, v in self.per_set_values.items():
            w.writerow([" ".join(map(str, s.indices)), repr(v)])
        return buf.getvalue()


def _combo_chunks(N: int, m: int) -> Iterator[np.ndarray]:
    it = itertools.combinations(range(N), m)
    while True:
        block = list(itertools.islice(it, _CHUNK))
        if not block:
            return
        yield np.asarray(block, dtype=np.intp)


def set_values(Fs: np.ndarray, Gs: np.ndarray, m: int, kind: MeasureKind,
               tol: float = DEFAULT_TOL) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Measure values over all erasure sets, yielded as (combos, values) blocks.

    ``Fs`` and ``Gs`` are the (N, n) vector arrays of the pair.  Works on raw
    arrays so the dual search can call it without building Frame objects.
    """
    N, n = Fs.shape
    if m == 1:
        combos = np.arange(N)[:, None]
        fn = np.linalg.norm(Fs, axis=1)
        gn = np.linalg.norm(Gs, axis=1)
        if kind is MeasureKind.FROBENIUS:
            vals = fn * gn
        else:
            d = np.abs(np.einsum("ij,ij->i", Fs, Gs.conj()))
            vals = d if kind is MeasureKind.SPECTRAL else (d + fn * gn) / 2
        yield combos, vals
        return
    if kind is MeasureKind.FROBENIUS:
        gram_f = Fs @ Fs.conj().T
        gram_g = Gs @ Gs.conj().T
        for combos in _combo_chunks(N, m):
            sq = _frob_sq(gram_f, gram_g, combos)
            if np.any(sq < -tol):
                raise ComputationError(f"negative squared Frobenius norm {sq.min():.3e}")
            yield combos, np.sqrt(np.maximum(sq, 0.0))
    elif kind is MeasureKind.SPECTRAL:
        Mfull = (Fs @ Gs.conj().T).conj()
        for combos in _combo_chunks(N, m):
            M = Mfull[combos[:, :, None], combos[:, None, :]]
            try:
                ev = np.linalg.eigvals(M)
            except np.linalg.LinAlgError as exc:
                raise ComputationError("eigensolver failed on a reduced error matrix") from exc
            yield combos, np.max(np.abs(ev), axis=1)
    else:
        for combos in _combo_chunks(N, m):
            vals = np.empty(len(combos))
            for r, c in enumerate(combos):
                vals[r] = numerical_radius_sweep(_compress(Fs[c].T, Gs[c].T))
            yield combos, vals


def worst_case(P: DualPair, m: int, kind, keep_all: bool = False,
               cap: Optional[int] = None, tol: float = DEFAULT_TOL) -> MeasureReport:
    """Exact maximum of a measure over every erasure set of size m.

    Sets whose value lies within ``tol`` of the maximum are all reported, in
    lexicographic order.
    """
    from .optimality import theoretical_optimum

    kind = MeasureKind.parse(kind)
    N = P.N
    if not 1 <= m <= N:
        raise ValueError(f"m={m} outside 1..{N}")
    cap = enum_cap() if cap is None else cap
    count = math.comb(N, m)
    if count > cap:
        raise EnumerationCapError(
            f"C({N},{m}) = {count} erasure sets exceeds the enumeration cap {cap}", count, cap
        )
    all_combos, all_vals = [], []
    for combos, vals in set_values(P.F.vectors, P.G.vectors, m, kind, tol):
        all_combos.append(combos)
        all_vals.append(vals)
    combos = np.concatenate(all_combos)
    vals = np.concatenate(all_vals)
    worst = float(vals.max())
    hits = np.flatnonzero(vals >= worst - tol)
    argmax = [ErasureSet(tuple(int(i) + 1 for i in combos[k]), N) for k in hits]
    per = None
    if keep_all:
        per = {ErasureSet(tuple(int(i) + 1 for i in c), N): float(v) for c, v in zip(combos, vals)}
    return MeasureReport(kind, m, worst, argmax, per, theoretical_optimum(kind, N, P.dim, m))


def worst_value(Fs: np.ndarray, Gs: np.ndarray, m: int, kind) -> float:
    """Worst-case value only, from raw (N, n) arrays; no enumeration cap."""
    kind = MeasureKind.parse(kind)
    return max(float(v.max()) for _, v in set_values(Fs, Gs, m, kind))


def full_operator_frobenius(E: ErrorOperator) -> float:
    """Entrywise Frobenius norm of the materialized n x n operator."""
    return float(np.linalg.norm(E.full(), "fro"))


def reduced_matrix(P: DualPair, indices: Sequence[int]) -> np.ndarray:
    """Reduced matrix for 1-based ``indices``."""
    return error_operator(P, ErasureSet(tuple(indices), P.N)).reduced
