"""Grid scans and derivative-free maximization of strength objectives.

Objectives are looked up by name and evaluated on a mapping of named
parameters; whatever a scan or refinement does not vary is taken from
``fixed``.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .constructors import SixParam, make_six_param, make_subfamily
from .strength import (
    sixparam_reference_pattern,
    strength_generic,
    strength_sixparam_closed,
    strength_tri_closed,
    strength_tri_f,
    tripartite_reference_pattern,
)

__all__ = [
    "Axis",
    "ScanGrid",
    "Maximum",
    "OptimizationResult",
    "OBJECTIVES",
    "make_objective",
    "grid_scan",
    "find_local_maxima",
    "refine_max",
    "maximize_from_grid",
]

log = logging.getLogger(__name__)

_SIX_NAMES = ("thetaA", "gammaA", "phiA", "thetaB", "gammaB", "phiB")


def _six_from(params: Mapping[str, float]) -> SixParam:
    if "x" in params:
        theta = float(np.arccos(params["x"]))
        return SixParam.equal_angle(theta, params.get("phiA", 0.0), params.get("phiB", 0.0))
    missing = [n for n in _SIX_NAMES if n not in params]
    if missing:
        raise KeyError(f"six-parameter objective missing {missing}")
    return SixParam(*(float(params[n]) for n in _SIX_NAMES))


@lru_cache(maxsize=1)
def _six_ref():
    return sixparam_reference_pattern()


@lru_cache(maxsize=1)
def _tri_ref():
    return tripartite_reference_pattern()


def _sixparam_closed(p):
    return strength_sixparam_closed(_six_from(p))


def _sixparam_generic(p):
    return strength_generic(make_six_param(_six_from(p)), _six_ref()).value


def _tri_f(p):
    return strength_tri_f(p["x"], p["y"])


def _tri_closed(p):
    return strength_tri_closed(p["x"], p["y"])


def _subfamily_generic(p):
    S = make_subfamily(float(np.arccos(p["x"])), float(np.arccos(p["y"])))
    return strength_generic(S, _tri_ref()).value


def _quadratic(p):
    return 1.0 - (p["x"] - 0.3) ** 2


#: name -> (function of a parameter mapping, default fixed parameters)
OBJECTIVES: dict = {
    "sixparam_closed": (_sixparam_closed, {}),
    "sixparam_generic": (_sixparam_generic, {}),
    "tri_f": (_tri_f, {}),
    "tri_closed": (_tri_closed, {}),
    "subfamily_generic": (_subfamily_generic, {}),
    "quadratic": (_quadratic, {}),
}


def make_objective(name: str, fixed: Optional[Mapping[str, float]] = None) -> Callable:
    """Return ``f(params) -> float`` with ``fixed`` merged underneath ``params``."""
    if name not in OBJECTIVES:
        raise ValueError(f"unknown objective {name!r}; choose from {sorted(OBJECTIVES)}")
    func, defaults = OBJECTIVES[name]
    base = dict(defaults)
    base.update(fixed or {})

    def objective(params: Mapping[str, float]) -> float:
        merged = dict(base)
        merged.update(params)
        return float(func(merged))

    objective.__name__ = name
    objective.objective_id = name
    objective.fixed = dict(base)
    return objective


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError(f"axis {self.name!r} needs at least 2 steps")
        if not self.hi > self.lo:
            raise ValueError(f"axis {self.name!r} has empty range [{self.lo}, {self.hi}]")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)

    @property
    def spacing(self) -> float:
        return (self.hi - self.lo) / (self.steps - 1)

    @classmethod
    def parse(cls, text: str) -> "Axis":
        """``name:lo:hi:steps``"""
        parts = text.split(":")
        if len(parts) != 4:
            raise ValueError(f"axis spec {text!r} is not name:lo:hi:steps")
        return cls(parts[0], float(parts[1]), float(parts[2]), int(parts[3]))


@dataclass(frozen=True)
class ScanGrid:
    objective_id: str
    axes: tuple
    values: np.ndarray
    failed: np.ndarray
    fixed: dict = field(default_factory=dict)

    @property
    def shape(self) -> tuple:
        return tuple(a.steps for a in self.axes)

    def point(self, index) -> dict:
        return {a.name: float(a.values[i]) for a, i in zip(self.axes, index)}

    def argmax(self) -> tuple:
        return tuple(int(i) for i in np.unravel_index(np.argmax(self.values), self.shape))

    def slice(self, name: str, index: int) -> "ScanGrid":
        """Sub-grid with axis ``name`` pinned at ``index``."""
        k = [a.name for a in self.axes].index(name)
        axis = self.axes[k]
        fixed = dict(self.fixed)
        fixed[name] = float(axis.values[index])
        axes = self.axes[:k] + self.axes[k + 1:]
        return ScanGrid(
            self.objective_id,
            axes,
            np.take(self.values, index, axis=k),
            np.take(self.failed, index, axis=k),
            fixed,
        )

    def rows(self):
        """Row-major ``(point values..., value)`` tuples."""
        for index in np.ndindex(*self.shape):
            yield tuple(float(a.values[i]) for a, i in zip(self.axes, index)) + (float(self.values[index]),)

    def to_csv(self, value_name: str = "f") -> str:
        lines = [",".join([a.name for a in self.axes] + [value_name])]
        for row in self.rows():
            lines.append(",".join(f"{v:.12g}" for v in row))
        return "\n".join(lines) + "\n"


def grid_scan(
    objective: str,
    axes: Sequence[Axis],
    fixed: Optional[Mapping[str, float]] = None,
    threads: int = 1,
) -> ScanGrid:
    """Evaluate ``objective`` on the tensor grid of ``axes``.

    A point where evaluation raises is stored as 0 and flagged in ``failed``.
    """
    f = make_objective(objective, fixed)
    axes = tuple(axes)
    shape = tuple(a.steps for a in axes)
    grids = [a.values for a in axes]
    indices = list(np.ndindex(*shape))

    def evaluate(index):
        params = {a.name: float(g[i]) for a, g, i in zip(axes, grids, index)}
        try:
            value = f(params)
        except (ValueError, ZeroDivisionError, FloatingPointError) as exc:
            log.debug("evaluation failed at %s: %s", params, exc)
            return 0.0, True
        if not np.isfinite(value):
            return 0.0, True
        return value, False

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(evaluate, indices))
    else:
        results = [evaluate(i) for i in indices]
    values = np.array([r[0] for r in results], dtype=float).reshape(shape)
    failed = np.array([r[1] for r in results], dtype=bool).reshape(shape)
    if failed.any():
        log.warning("%d grid points failed to evaluate and were set to 0", int(failed.sum()))
    return ScanGrid(objective, axes, values, failed, dict(f.fixed))


@dataclass(frozen=True)
class Maximum:
    point: dict
    value: float
    kind: str = "local"


@dataclass(frozen=True)
class OptimizationResult:
    maxima: tuple
    evaluations: int
    converged: bool
    step_final: float
    history: tuple = ()

    @property
    def best(self) -> Maximum:
        return self.maxima[0]


def find_local_maxima(grid: ScanGrid) -> list:
    """Grid points strictly above every axis neighbour, best first.

    Boundary points are compared with the neighbours they have.
    """
    V = grid.values
    out = []
    for index in np.ndindex(*V.shape):
        v = V[index]
        is_max = True
        for k in range(V.ndim):
            for d in (-1, 1):
                j = index[k] + d
                if 0 <= j < V.shape[k]:
                    nb = list(index)
                    nb[k] = j
                    if not v > V[tuple(nb)]:
                        is_max = False
                        break
            if not is_max:
                break
        if is_max and V.size > 1:
            out.append(Maximum(grid.point(index), float(v)))
    out.sort(key=lambda m: (-m.value, tuple(m.point.values())))
    return out


def refine_max(
    objective: Callable,
    start: Mapping[str, float],
    step0: float = 0.1,
    tol: float = 1e-8,
    max_iter: int = 10_000,
    bounds: Optional[Mapping[str, tuple]] = None,
) -> OptimizationResult:
    """Coordinate pattern search for a maximum.

    Each iteration probes ``+step`` then ``-step`` along every coordinate in
    turn, taking any strict improvement at once; if no coordinate improves the
    step is halved. Probes are clamped into ``bounds``.
    """
    bounds = dict(bounds or {})
    names = list(start)
    x = {n: float(start[n]) for n in names}

    def clamp(n, v):
        if n in bounds:
            lo, hi = bounds[n]
            return min(max(v, lo), hi)
        return v

    def safe(p):
        try:
            val = objective(p)
        except (ValueError, ZeroDivisionError, FloatingPointError):
            return -np.inf
        return val if np.isfinite(val) else -np.inf

    fx = safe(x)
    if not np.isfinite(fx):
        raise ValueError(f"objective is not finite at the start point {x}")
    evaluations = 1
    history = [fx]
    step = float(step0)
    it = 0
    while step >= tol and it < max_iter:
        it += 1
        improved = False
        for n in names:
            for sign in (1.0, -1.0):
                trial = dict(x)
                trial[n] = clamp(n, x[n] + sign * step)
                if trial[n] == x[n]:
                    continue
                ft = safe(trial)
                evaluations += 1
                if ft > fx:
                    x, fx = trial, ft
                    history.append(fx)
                    improved = True
                    break
        if not improved:
            step *= 0.5
    return OptimizationResult(
        (Maximum(x, fx, "global"),), evaluations, step < tol, step, tuple(history)
    )


def maximize_from_grid(
    grid: ScanGrid,
    tol: float = 1e-10,
    max_iter: int = 10_000,
    dedup: float = 1e-3,
) -> OptimizationResult:
    """Refine every grid local maximum and merge the results.

    Starting steps equal the grid spacing; refined points closer than ``dedup``
    (Euclidean, parameter space) collapse onto the better one.
    """
    objective = make_objective(grid.objective_id, grid.fixed)
    bounds = {a.name: (a.lo, a.hi) for a in grid.axes}
    step0 = min(a.spacing for a in grid.axes)
    found = []
    evaluations = 0
    converged = True
    step_final = 0.0
    for cand in find_local_maxima(grid):
        res = refine_max(objective, cand.point, step0, tol, max_iter, bounds)
        evaluations += res.evaluations
        converged &= res.converged
        step_final = max(step_final, res.step_final)
        found.append(res.best)
    found.sort(key=lambda m: (-m.value, tuple(m.point.values())))
    merged = []
    for m in found:
        p = np.array(list(m.point.values()))
        if any(np.linalg.norm(p - np.array(list(q.point.values()))) < dedup for q in merged):
            continue
        merged.append(m)
    maxima = tuple(
        Maximum(m.point, m.value, "global" if i == 0 else "local") for i, m in enumerate(merged)
    )
    return OptimizationResult(maxima, evaluations, converged, step_final)
