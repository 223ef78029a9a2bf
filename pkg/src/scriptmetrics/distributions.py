"""Discrete models for count data and their chi-square goodness of fit.

Two models are supported: the Shenton-Skees-geometric distribution on
x = 1, 2, ... and the Poisson distribution on x = 0, 1, ...  Expected
frequencies are pooled with an open last class so that expected and observed
totals agree exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .model import DataError, FrequencyTable, table_moments
from .special import chi_square_sf

SS_GEOMETRIC = "ss-geometric"
POISSON = "poisson"
MODELS = (SS_GEOMETRIC, POISSON)
METHODS = ("chisq-min", "moment")
DF_MODES = ("classes-1", "classes-1-params")

GRID_STEP = 1e-3
REFINE_TOL = 1e-5

_BOUND_SLACK = 1e-12


@dataclass(frozen=True)
class SSGeometricParams:
    p: float
    a: float

    def __post_init__(self):
        p, a = self.p, self.a
        if not (0 < p <= 1):
            raise DataError(f"p must lie in (0, 1], got {p}")
        if a < 0:
            raise DataError(f"a must be non-negative, got {a}")
        if p == 1:
            if a != 0:
                raise DataError("p = 1 requires a = 0")
        elif a > p / (1 - p) * (1 + _BOUND_SLACK):
            raise DataError(f"a = {a} exceeds its upper bound p/(1-p) = {p / (1 - p)}")

    @property
    def a_max(self) -> float:
        return a_upper(self.p)

    def as_tuple(self) -> tuple[float, ...]:
        return (self.p, self.a)


@dataclass(frozen=True)
class PoissonParams:
    lam: float

    def __post_init__(self):
        if not self.lam > 0:
            raise DataError(f"lambda must be positive, got {self.lam}")

    def as_tuple(self) -> tuple[float, ...]:
        return (self.lam,)


Params = Union[SSGeometricParams, PoissonParams]


def a_upper(p: float) -> float:
    return 0.0 if p >= 1 else p / (1 - p)


def _check_int(x, lowest: int) -> int:
    if isinstance(x, bool) or int(x) != x:
        raise DataError(f"x must be an integer, got {x!r}")
    if x < lowest:
        raise DataError(f"x must be >= {lowest}, got {x}")
    return int(x)


def ss_geometric_pmf(params: SSGeometricParams, x: int) -> float:
    x = _check_int(x, 1)
    p, a = params.p, params.a
    if p == 1:
        return 1.0 if x == 1 else 0.0
    val = p * (1 - p) ** (x - 1) * (1 + a * (x - 1 / p))
    # at a = p/(1-p) the x=1 factor is zero analytically; drop rounding residue
    return max(val, 0.0)


def ss_geometric_mean(params: SSGeometricParams) -> float:
    p, a = params.p, params.a
    return 1 / p + a * (1 - p) / p**2


def ss_geometric_variance(params: SSGeometricParams) -> float:
    p, a = params.p, params.a
    q = 1 - p
    second = (1 + q) / p**2 + a * (3 * q + q * q) / p**3
    return second - ss_geometric_mean(params) ** 2


def poisson_pmf(params: PoissonParams, x: int) -> float:
    x = _check_int(x, 0)
    lam = params.lam
    if x == 0:
        return math.exp(-lam)
    return math.exp(-lam + x * math.log(lam) - math.lgamma(x + 1))


def model_support_start(model: str) -> int:
    if model == SS_GEOMETRIC:
        return 1
    if model == POISSON:
        return 0
    raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


def model_pmf(model: str, params: Params, x: int) -> float:
    if model == SS_GEOMETRIC:
        return ss_geometric_pmf(params, x)
    if model == POISSON:
        return poisson_pmf(params, x)
    raise ValueError(f"unknown model {model!r}")


def n_params(model: str) -> int:
    return {SS_GEOMETRIC: 2, POISSON: 1}[model]


def make_params(model: str, values) -> Params:
    if model == SS_GEOMETRIC:
        return SSGeometricParams(*values)
    if model == POISSON:
        return PoissonParams(*values)
    raise ValueError(f"unknown model {model!r}")


class PooledClass(NamedTuple):
    x: int
    open: bool
    observed: int
    expected: float

    @property
    def label(self) -> str:
        return f">={self.x}" if self.open else str(self.x)


def _check_support(table: FrequencyTable, model: str) -> tuple[int, int]:
    nz = table.nonzero()
    if not nz:
        raise DataError("empty table")
    start = model_support_start(model)
    if nz.support[0] < start:
        raise DataError(f"{model} support starts at {start}; table has x={nz.support[0]}")
    return start, nz.support[-1]


def pool_open_tail(table: FrequencyTable, model: str, params: Params) -> list[PooledClass]:
    """Observed/expected classes from the model's first support value up to
    the largest observed x; the last class is open and absorbs the tail so
    that the expected total equals N."""
    start, x_max = _check_support(table, model)
    n = table.n
    classes = []
    lower_total = 0.0
    for x in range(start, x_max):
        e = n * model_pmf(model, params, x)
        lower_total += e
        classes.append(PooledClass(x, False, table[x], e))
    tail_obs = sum(f for x, f in table.items() if x >= x_max)
    classes.append(PooledClass(x_max, True, tail_obs, n - lower_total))
    return classes


def chi_square_statistic(classes) -> float:
    total = 0.0
    for c in classes:
        if not c.expected > 0:
            raise DataError(f"expected frequency {c.expected} in class {c.label}; pool classes first")
        total += (c.observed - c.expected) ** 2 / c.expected
    return total


@dataclass(frozen=True)
class DiscreteModelFit:
    model: str
    params: Params
    classes: tuple[PooledClass, ...]
    chi_square: float
    df: int
    p_value: float | None  # None when df < 1
    method: str

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def df_for(self, df_mode) -> int:
        return resolve_df(df_mode, len(self.classes), n_params(self.model))

    def p_value_at(self, df: int) -> float | None:
        return chi_square_sf(self.chi_square, df) if df >= 1 else None


def resolve_df(df_mode, n_classes: int, k_params: int) -> int:
    if df_mode == "classes-1":
        return n_classes - 1
    if df_mode == "classes-1-params":
        return n_classes - 1 - k_params
    if isinstance(df_mode, int) and not isinstance(df_mode, bool):
        return df_mode
    raise ValueError(f"unknown df mode {df_mode!r}; expected one of {DF_MODES} or an integer")


def evaluate_fit(table: FrequencyTable, model: str, params: Params,
                 df_mode="classes-1-params", method: str = "given") -> DiscreteModelFit:
    """Goodness of fit of ``model`` at fixed ``params``."""
    classes = tuple(pool_open_tail(table, model, params))
    chi = chi_square_statistic(classes)
    df = resolve_df(df_mode, len(classes), n_params(model))
    p_value = chi_square_sf(chi, df) if df >= 1 else None
    return DiscreteModelFit(model, params, classes, chi, df, p_value, method)


# --- estimation ------------------------------------------------------------


def _poisson_moment(table: FrequencyTable) -> PoissonParams:
    mean = table_moments(table).mean
    if mean <= 0:
        raise DataError("no feasible parameters: Poisson needs a positive mean")
    return PoissonParams(mean)


def _ss_moment(table: FrequencyTable) -> SSGeometricParams:
    mom = table_moments(table, "population")
    m, v = mom.mean, mom.variance
    if m <= 1 + 1e-12:
        return SSGeometricParams(1.0, 0.0)

    # the mean equation fixes a(p); a stays in its box for p in [1/m, min(1, 2/m)]
    def a_of(p):
        return min(max((m - 1 / p) * p * p / (1 - p), 0.0), a_upper(p))

    def gap(p):
        return ss_geometric_variance(SSGeometricParams(p, a_of(p))) - v

    lo = 1 / m
    hi = min(1 - 1e-9, 2 / m)
    ps = np.linspace(lo, hi, 2001)
    gaps = [gap(p) for p in ps]
    for i in range(len(ps) - 1):
        if gaps[i] == 0:
            return SSGeometricParams(ps[i], a_of(ps[i]))
        if (gaps[i] < 0) != (gaps[i + 1] < 0):
            a_, b_ = ps[i], ps[i + 1]
            ga = gaps[i]
            for _ in range(200):
                mid = 0.5 * (a_ + b_)
                gm = gap(mid)
                if (gm < 0) == (ga < 0):
                    a_, ga = mid, gm
                else:
                    b_ = mid
                if b_ - a_ < 1e-14:
                    break
            p = float(0.5 * (a_ + b_))
            return SSGeometricParams(p, a_of(p))
    # no exact solution inside the box: project onto the closest variance match
    p = float(ps[int(np.argmin(np.abs(gaps)))])
    return SSGeometricParams(p, a_of(p))


def _chi_grid(obs: np.ndarray, exp_lower: np.ndarray, n: int) -> np.ndarray:
    """Pooled chi-square over a parameter grid.

    ``exp_lower`` has the expected counts of the non-open classes on its last
    axis; the open class is N minus their sum.
    """
    tail = n - exp_lower.sum(axis=-1)
    expected = np.concatenate([exp_lower, tail[..., None]], axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = (obs - expected) ** 2 / expected
    chi = terms.sum(axis=-1)
    chi[~(expected > 0).all(axis=-1)] = np.inf
    return chi


def _chi_at(table, model, values) -> float:
    try:
        params = make_params(model, values)
        return chi_square_statistic(pool_open_tail(table, model, params))
    except DataError:
        return math.inf


def _in_box(model, values) -> bool:
    if model == POISSON:
        return values[0] > 0
    p, a = values
    return 0 < p <= 1 and 0 <= a <= a_upper(p)


def _pattern_search(table, model, start, step=GRID_STEP, tol=REFINE_TOL):
    """Deterministic compass search with halving steps, down to ``tol``."""
    x = tuple(start)
    fx = _chi_at(table, model, x)
    dim = len(x)
    if dim == 1:
        directions = [(-1.0,), (1.0,)]
    else:
        directions = [(dp, da) for dp in (-1.0, 0.0, 1.0) for da in (-1.0, 0.0, 1.0) if dp or da]
    h = step
    while h >= tol / 2:
        improved = True
        while improved:
            improved = False
            best = (fx, x)
            for d in directions:
                y = tuple(xi + h * di for xi, di in zip(x, d))
                if model == SS_GEOMETRIC:
                    y = (min(y[0], 1.0), min(max(y[1], 0.0), a_upper(min(y[0], 1.0))))
                if not _in_box(model, y):
                    continue
                fy = _chi_at(table, model, y)
                # directions run in ascending order, so ties keep the smaller point
                if fy < best[0]:
                    best = (fy, y)
            if best[0] < fx:
                fx, x = best
                improved = True
        h /= 2
    return x, fx


def _poisson_grid_start(table: FrequencyTable, start: int, x_max: int) -> tuple[float]:
    obs = np.array([table[x] for x in range(start, x_max)] + [sum(f for x, f in table.items() if x >= x_max)], float)
    hi = max(2.0 * x_max, 2.0 * table_moments(table).mean) + 5.0
    lams = np.arange(1, int(round(hi / GRID_STEP)) + 1) * GRID_STEP
    xs = np.arange(start, x_max)
    logs = -lams[:, None] + xs[None, :] * np.log(lams)[:, None] - np.array([math.lgamma(x + 1) for x in xs])[None, :]
    chi = _chi_grid(obs, table.n * np.exp(logs), table.n)
    return (float(lams[int(np.argmin(chi))]),)


def _ss_grid_start(table: FrequencyTable, x_max: int) -> tuple[float, float]:
    obs = np.array([table[x] for x in range(1, x_max)] + [sum(f for x, f in table.items() if x >= x_max)], float)
    ps = np.round(np.arange(1, int(round(1 / GRID_STEP)) + 1) * GRID_STEP, 12)
    ts = np.round(np.arange(0, int(round(1 / GRID_STEP)) + 1) * GRID_STEP, 12)
    q = 1 - ps
    with np.errstate(divide="ignore", invalid="ignore"):
        amax = np.where(q > 0, ps / q, 0.0)
    a = amax[:, None] * ts[None, :]  # rows: p, columns: fraction of the a bound
    P, Q = ps[:, None], q[:, None]
    lower = []
    for x in range(1, x_max):
        pmf = P * Q ** (x - 1) * (1 + a * (x - 1 / P))
        lower.append(np.maximum(pmf, 0.0))
    if lower:
        exp_lower = table.n * np.stack(lower, axis=-1)
    else:
        exp_lower = np.zeros(a.shape + (0,))
    chi = _chi_grid(obs, exp_lower, table.n)
    # argmin returns the first minimum in row-major order: smallest p, then smallest a
    i, j = np.unravel_index(int(np.argmin(chi)), chi.shape)
    return float(ps[i]), float(a[i, j])


def fit_discrete(table: FrequencyTable, model: str = SS_GEOMETRIC, method: str = "chisq-min",
                 df_mode="classes-1-params") -> DiscreteModelFit:
    """Estimate parameters of ``model`` from ``table`` and test the fit.

    ``method="moment"`` matches moments (Poisson: the mean; SS-geometric:
    mean and population variance).  ``method="chisq-min"`` minimizes the
    pooled chi-square over the valid parameter box with a fixed grid followed
    by a compass search; ties go to the lexicographically smallest parameters.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    start, x_max = _check_support(table, model)
    table = table.nonzero()

    moment = _ss_moment(table) if model == SS_GEOMETRIC else _poisson_moment(table)
    n_classes = x_max - start + 1
    if method == "moment" or n_classes == 1:
        # a single class has chi-square 0 for every parameter value
        return evaluate_fit(table, model, moment, df_mode, method)

    if model == SS_GEOMETRIC:
        x0 = _ss_grid_start(table, x_max)
    else:
        x0 = _poisson_grid_start(table, start, x_max)
    x, fx = _pattern_search(table, model, x0)
    if not math.isfinite(fx):
        raise DataError("no feasible parameters")
    return evaluate_fit(table, model, make_params(model, x), df_mode, method)
