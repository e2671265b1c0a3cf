"""Optimal values, optimality-class membership, invariance transforms.

Membership is decided from the algebraic characterizations (norm products,
uniformity of the cross-Gram matrix, constant real parts of Gram products),
never by comparing against an infimum.  The measured worst-case value is
attached to each verdict as corroboration.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .erasure import MeasureKind, worst_case
from .frame import DEFAULT_TOL, DualPair, canonical_dual, classify_frame

UNITARY_TOL = 1e-9
COND_CAP = 1e12


def _check_sizes(N: int, n: int, m: int):
    if not (isinstance(N, int) and isinstance(n, int) and isinstance(m, int)):
        raise TypeError("N, n, m must be integers")
    if not 1 <= n <= N:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={N}")
    if not 1 <= m <= N:
        raise ValueError(f"need 1 <= m <= N, got m={m}, N={N}")


def forced_gram_constant(N: int, n: int) -> float:
    """n(N-n)/(N^2(N-1)); the only possible common off-diagonal value."""
    if N == 1:
        return 0.0
    return n * (N - n) / (N * N * (N - 1))


def theoretical_optimum(kind, N: int, n: int, m: int) -> Optional[float]:
    """Closed-form optimal worst-case value, or None where none is known.

    For the Frobenius norm with m >= 2 the value is a lower bound that is
    attained whenever a constant-real-part pair exists (see
    :func:`constant_pair_witness`).  For the spectral radius with m = 2 and
    N > n it is attained when a 2-uniform pair exists.
    """
    kind = MeasureKind.parse(kind)
    _check_sizes(N, n, m)
    r = n / N
    if kind is MeasureKind.FROBENIUS:
        if m == 1:
            return r
        return math.sqrt(m * r * r + m * (m - 1) * forced_gram_constant(N, n))
    if kind is MeasureKind.SPECTRAL:
        if m == 1:
            return r
        if m == 2:
            return r + math.sqrt(forced_gram_constant(N, n))
        return None
    return r if m == 1 else None


@functools.lru_cache(maxsize=None)
def constant_pair_witness(N: int, n: int) -> Optional[str]:
    """Name of a library construction witnessing the existence hypothesis.

    The hypothesis (a pair in F^(1) with constant Re<g_i,g_j><f_j,f_i>, or a
    2-uniform pair) is satisfied by any equal-norm Parseval equiangular frame
    paired with itself.  Returns None when the library has no witness.
    """
    from .constructions import harmonic_frame

    if N == n:
        return "orthonormal basis"
    if n == 1:
        return f"harmonic({N},1)"
    if N == n + 1:
        return f"harmonic({N},{n})"
    if classify_frame(harmonic_frame(N, n), tol=1e-9).is_equiangular:
        return f"harmonic({N},{n})"
    return None


# --------------------------------------------------------------------------
# membership


class OptimalityClass:
    """One of F1, Fm(m), R1, R2, N1."""

    NAMES = ("F1", "Fm", "R1", "R2", "N1")

    def __init__(self, name: str, m: int = 1):
        if name not in self.NAMES:
            raise ValueError(f"unknown class {name!r}; expected one of {', '.join(self.NAMES)}")
        if name == "Fm" and m < 2:
            raise ValueError("Fm requires m >= 2")
        self.name = name
        self.m = m if name == "Fm" else {"R2": 2}.get(name, 1)

    @classmethod
    def parse(cls, text) -> "OptimalityClass":
        if isinstance(text, cls):
            return text
        t = str(text).strip()
        if t.upper().startswith("F") and t[1:].isdigit() and int(t[1:]) >= 2:
            return cls("Fm", int(t[1:]))
        if t.upper().startswith("FM") and ":" in t:
            return cls("Fm", int(t.split(":", 1)[1]))
        return cls(t.upper() if t.upper() != "FM" else "Fm")

    def __str__(self):
        return f"F{self.m}" if self.name == "Fm" else self.name

    def __repr__(self):
        return f"OptimalityClass({self})"

    def __eq__(self, other):
        return isinstance(other, OptimalityClass) and (self.name, self.m) == (other.name, other.m)

    def __hash__(self):
        return hash((self.name, self.m))


@dataclass
class MembershipVerdict:
    cls: str
    holds: bool
    certificate: list[tuple[str, float]]
    conditional_on_existence: bool = False
    tol: float = DEFAULT_TOL
    measured: Optional[float] = None
    optimum: Optional[float] = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["certificate"] = [{"condition": c, "max_violation": v} for c, v in self.certificate]
        return d


def _norm_products(P: DualPair) -> np.ndarray:
    return P.F.norms() * P.G.norms()


def _one_uniform_violation(P: DualPair) -> float:
    return float(np.max(np.abs(np.diag(P.cross_gram) - P.dim / P.N)))


def _offdiag(P: DualPair, mat: np.ndarray) -> np.ndarray:
    return mat[~np.eye(P.N, dtype=bool)]


def _verdict(cls, cert, tol, **kw) -> MembershipVerdict:
    holds = all(v <= tol for _, v in cert)
    return MembershipVerdict(str(cls), holds, cert, tol=tol, **kw)


def check_membership(P: DualPair, cls, tol: float = DEFAULT_TOL,
                     measure_value: bool = True) -> MembershipVerdict:
    cls = OptimalityClass.parse(cls)
    N, n = P.N, P.dim
    r = n / N
    name = cls.name
    notes: list[str] = []

    if name in ("F1", "N1"):
        cert = [("|f_i|*|g_i| = n/N", float(np.max(np.abs(_norm_products(P) - r))))]
        kind = MeasureKind.FROBENIUS if name == "F1" else MeasureKind.NUMERICAL
        return _verdict(cls, cert, tol, notes=notes,
                        measured=worst_case(P, 1, kind).worst_value if measure_value else None,
                        optimum=r)

    if name == "R1":
        cert = [("<f_i,g_i> = n/N", _one_uniform_violation(P))]
        return _verdict(cls, cert, tol,
                        measured=worst_case(P, 1, MeasureKind.SPECTRAL).worst_value if measure_value else None,
                        optimum=r)

    if name == "R2":
        opt = theoretical_optimum(MeasureKind.SPECTRAL, N, n, 2) if N >= 2 else None
        measured = worst_case(P, 2, MeasureKind.SPECTRAL).worst_value if (measure_value and N >= 2) else None
        if N == n:
            notes.append("N = n: every dual pair is 2-erasure spectrally optimal")
            cert = [("<f_i,g_i> = n/N", _one_uniform_violation(P))]
            return _verdict(cls, cert, tol, notes=notes, measured=measured, optimum=opt)
        c = forced_gram_constant(N, n)
        prod = _offdiag(P, P.cross_gram * P.cross_gram.T)
        cert = [
            ("<f_i,g_i> = n/N", _one_uniform_violation(P)),
            ("alpha_ij*alpha_ji constant", float(np.max(np.abs(prod - prod.mean())))),
            ("alpha_ij*alpha_ji = n(N-n)/(N^2(N-1))", float(np.max(np.abs(prod - c)))),
        ]
        witness = constant_pair_witness(N, n)
        if witness:
            notes.append(f"existence hypothesis witnessed by {witness}")
        else:
            notes.append("no 2-uniform witness known for this (N, n); optimality is conditional")
        return _verdict(cls, cert, tol, conditional_on_existence=witness is None,
                        notes=notes, measured=measured, optimum=opt)

    # Fm
    m = cls.m
    if m > N:
        raise ValueError(f"m={m} exceeds N={N}")
    if m == N and N > 1:
        notes.append(f"F^({N}) = F^({N - 1}); checked as m = {N - 1}")
    cert = [("|f_i|*|g_i| = n/N", float(np.max(np.abs(_norm_products(P) - r))))]
    if min(m, N - 1) >= 2:
        re = np.real(_offdiag(P, P.gram_g * P.gram_f.T))
        c = forced_gram_constant(N, n)
        cert.append(("Re<g_i,g_j><f_j,f_i> constant", float(np.ptp(re)) if re.size else 0.0))
        cert.append(("Re<g_i,g_j><f_j,f_i> = n(N-n)/(N^2(N-1))",
                     float(np.max(np.abs(re - c))) if re.size else 0.0))
    witness = constant_pair_witness(N, n)
    if witness:
        notes.append(f"existence hypothesis witnessed by {witness}")
    else:
        notes.append("no constant-Re witness known for this (N, n); optimality is conditional")
    return _verdict(cls, cert, tol, conditional_on_existence=witness is None, notes=notes,
                    measured=worst_case(P, m, MeasureKind.FROBENIUS).worst_value if measure_value else None,
                    optimum=theoretical_optimum(MeasureKind.FROBENIUS, N, n, m))


# --------------------------------------------------------------------------
# averaging lemma


@dataclass(frozen=True)
class AveragingInstance:
    """Real weights a[i, j] for 1 <= j < i <= N (stored 0-based, lower triangle)."""

    a: np.ndarray
    m: int

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("a must be a square N x N array")
        if not np.all(np.isfinite(np.tril(a, -1))):
            raise ValueError("weights must be finite")
        object.__setattr__(self, "a", np.tril(a, -1))

    @property
    def N(self) -> int:
        return self.a.shape[0]

    @classmethod
    def from_pairs(cls, N: int, m: int, values: dict) -> "AveragingInstance":
        """Build from a mapping {(i, j): a_ij} with 1-based i > j."""
        a = np.zeros((N, N))
        for (i, j), v in values.items():
            if not 1 <= j < i <= N:
                raise ValueError(f"pair ({i}, {j}) must satisfy 1 <= j < i <= N")
            a[i - 1, j - 1] = v
        return cls(a, m)


def averaging_lower_bound(inst: AveragingInstance) -> tuple[float, float]:
    """(m(m-1)S/(N(N-1)), exhaustive max over L of sum_{j>k} a[i_j, i_k])."""
    N, m = inst.N, inst.m
    if not 2 <= m <= N:
        raise ValueError(f"need 2 <= m <= N, got m={m}, N={N}")
    S = float(inst.a.sum())
    bound = m * (m - 1) * S / (N * (N - 1))
    best = -math.inf
    a = inst.a
    for c in itertools.combinations(range(N), m):
        idx = np.asarray(c)
        best = max(best, float(a[np.ix_(idx, idx)].sum()))
    return bound, best


# --------------------------------------------------------------------------
# transforms


def transform_unitary(P: DualPair, U, tol: float = UNITARY_TOL) -> DualPair:
    U = np.asarray(U, dtype=complex)
    n = P.dim
    if U.shape != (n, n):
        raise ValueError(f"U must be {n} x {n}")
    dev = float(np.max(np.abs(U.conj().T @ U - np.eye(n))))
    if dev > tol:
        raise ValueError(f"U is not unitary: max |U*U - I| = {dev:.3e}")
    return DualPair(P.F.transform(U), P.G.transform(U), max(P.tol, 10 * tol))


def transform_invertible(P: DualPair, T, cond_cap: float = COND_CAP) -> DualPair:
    T = np.asarray(T, dtype=complex)
    n = P.dim
    if T.shape != (n, n):
        raise ValueError(f"T must be {n} x {n}")
    cond = float(np.linalg.cond(T))
    if not np.isfinite(cond) or cond > cond_cap:
        raise ValueError(f"T is too close to singular (condition number {cond:.3e})")
    Tinv_adj = np.linalg.inv(T.conj().T)
    return DualPair(P.F.transform(T), P.G.transform(Tinv_adj), max(P.tol, 1e-12 * cond))


# --------------------------------------------------------------------------
# relations between classes


@dataclass
class RelationsReport:
    F1: MembershipVerdict
    R1: MembershipVerdict
    N1: MembershipVerdict
    tight_canonical: bool
    violations: list[str]

    @property
    def consistent(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "F1": self.F1.to_dict(),
            "R1": self.R1.to_dict(),
            "N1": self.N1.to_dict(),
            "tight_canonical": self.tight_canonical,
            "violations": list(self.violations),
            "consistent": self.consistent,
        }


def relations_report(P: DualPair, tol: float = DEFAULT_TOL) -> RelationsReport:
    f1 = check_membership(P, "F1", tol)
    r1 = check_membership(P, "R1", tol)
    n1 = check_membership(P, "N1", tol)
    violations = []
    if f1.holds and not r1.holds:
        violations.append("F1 holds but R1 fails")
    if f1.holds != n1.holds:
        violations.append("F1 and N1 disagree")
    if n1.holds and not r1.holds:
        violations.append("N1 holds but R1 fails")

    tight_canonical = False
    props = classify_frame(P.F, tol)
    if props.is_tight:
        can = canonical_dual(P.F)
        tight_canonical = bool(np.max(np.abs(can.vectors - P.G.vectors)) <= tol)
    if tight_canonical and not (f1.holds == r1.holds == n1.holds):
        violations.append("tight frame with canonical dual: F1, R1, N1 not equivalent")
    return RelationsReport(f1, r1, n1, tight_canonical, violations)
