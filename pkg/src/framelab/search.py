"""Derivative-free minimax search for good duals of a fixed frame.

The objective ``V -> worst-case measure of (F, base + V P)`` is a maximum of
eigenvalue-type functions and is not smooth, so a compass (coordinate pattern)
search over the real and imaginary parts of V is used.  Restart 0 starts from
the canonical dual (V = 0); the remaining restarts start from Gaussian V.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .constructions import DualParameterization, dual_parameterization
from .erasure import MeasureKind, worst_value
from .frame import Frame
from .optimality import theoretical_optimum


@dataclass(frozen=True)
class SearchConfig:
    measure: MeasureKind = MeasureKind.FROBENIUS
    m: int = 1
    max_iters: int = 5000
    restarts: int = 8
    step_init: float = 0.5
    step_min: float = 1e-7
    seed: int = 0
    lower_bound: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "measure", MeasureKind.parse(self.measure))
        if not self.step_min < self.step_init:
            raise ValueError("step_min must be smaller than step_init")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")


@dataclass
class SearchResult:
    best_dual: Frame
    best_value: float
    best_V: np.ndarray
    trace: list[tuple[int, float]] = field(default_factory=list)
    gap_to_bound: Optional[float] = None
    converged: bool = False
    best_restart: int = 0

    def to_dict(self) -> dict:
        from .io import frame_to_dict, matrix_to_json

        return {
            "best_value": self.best_value,
            "gap_to_bound": self.gap_to_bound,
            "converged": self.converged,
            "best_restart": self.best_restart,
            "trace": [[i, v] for i, v in self.trace],
            "V": matrix_to_json(self.best_V),
            "G": frame_to_dict(self.best_dual),
        }


def _value(F: Frame, param: DualParameterization, V: np.ndarray, cfg: SearchConfig) -> float:
    Gs = param.base + V @ param.projector
    return worst_value(F.vectors, Gs.T, cfg.m, cfg.measure)


def objective(F: Frame, V, cfg: SearchConfig, param: Optional[DualParameterization] = None) -> float:
    """Worst-case value of the dual with parameters V."""
    param = dual_parameterization(F) if param is None else param
    V = np.asarray(V, dtype=complex)
    if V.shape != param.shape:
        raise ValueError(f"V must have shape {param.shape}, got {V.shape}")
    return _value(F, param, V, cfg)


def _pattern_search(F, param, V0, cfg, budget):
    """Compass search; returns (V, value, trace, converged, iterations)."""
    x = np.concatenate([V0.real.ravel(), V0.imag.ravel()])
    half = x.size // 2
    shape = param.shape

    def f(x):
        return _value(F, param, (x[:half] + 1j * x[half:]).reshape(shape), cfg)

    fx = f(x)
    step = cfg.step_init
    trace = [(0, fx)]
    it = 0
    while it < budget and step >= cfg.step_min:
        it += 1
        improved = False
        for k in range(x.size):
            for sgn in (1.0, -1.0):
                y = x.copy()
                y[k] += sgn * step
                fy = f(y)
                if fy < fx:
                    x, fx, improved = y, fy, True
                    break
        if not improved:
            step /= 2
        trace.append((it, fx))
    V = (x[:half] + 1j * x[half:]).reshape(shape)
    return V, fx, trace, step < cfg.step_min, it


def search(F: Frame, cfg: SearchConfig = SearchConfig()) -> SearchResult:
    param = dual_parameterization(F)
    n, N = param.shape
    bound = cfg.lower_bound
    if bound is None and cfg.m <= N:
        bound = theoretical_optimum(cfg.measure, N, n, cfg.m)
    zero = np.zeros(param.shape, dtype=complex)
    base_value = _value(F, param, zero, cfg)

    def finish(V, value, trace, converged, restart):
        G = Frame(param.synthesis(V).T)
        gap = None if bound is None else value - bound
        return SearchResult(G, value, V, trace, gap, converged, restart)

    if param.rank == 0:
        return finish(zero, base_value, [(0, base_value)], True, 0)

    rng = np.random.default_rng(cfg.seed)
    best = None
    trace: list[tuple[int, float]] = []
    offset = 0
    for r in range(cfg.restarts):
        V0 = zero if r == 0 else (
            rng.standard_normal(param.shape) + 1j * rng.standard_normal(param.shape)
        ) * cfg.step_init / np.sqrt(2)
        V, val, tr, conv, its = _pattern_search(F, param, V0, cfg, cfg.max_iters)
        # keep the reported trace monotone across restarts
        running = best[1] if best is not None else np.inf
        for i, v in tr:
            running = min(running, v)
            trace.append((offset + i, running))
        offset += its + 1
        if best is None or val < best[1]:
            best = (V, val, conv, r)
    V, val, conv, r = best
    if base_value <= val:
        V, val, r = zero, base_value, 0
    return finish(V, val, trace, conv, r)
