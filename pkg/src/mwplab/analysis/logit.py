"""Logistic regression by Newton/IRLS with Wald inference.

The designs here are tiny (an intercept plus a handful of indicator
columns), so full Newton steps with an exact information matrix are both
the fastest and the most accurate choice, and the information matrix is
needed for the Wald standard errors anyway.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .stats import two_sided_p

MAX_ITERATIONS = 50
LL_TOLERANCE = 1e-10
GRADIENT_TOLERANCE = 1e-8
SEPARATION_BOUND = 30.0


class SingularDesignError(ValueError):
    """The information matrix is singular (e.g. collinear columns)."""


class SeparationWarning(UserWarning):
    pass


@dataclass
class DesignMatrix:
    """Observations for a binary-outcome regression.

    The first column must be the all-ones intercept; remaining columns are
    0/1 indicators.
    """

    columns: list[str]
    rows: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:
        self.rows = np.asarray(self.rows, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        if self.rows.ndim != 2 or self.rows.shape[1] != len(self.columns):
            raise ValueError("row width must match the column names")
        if self.rows.shape[0] != self.y.shape[0]:
            raise ValueError("row count must match the outcome count")
        if not np.all(self.rows[:, 0] == 1.0):
            raise ValueError("first column must be the intercept (all ones)")
        if self.y.size and (self.y.min() == self.y.max()):
            raise ValueError("outcomes are all identical")


@dataclass(frozen=True)
class Coefficient:
    estimate: float
    se: float
    z: float
    p: float


@dataclass
class RegressionResult:
    coefficients: dict[str, Coefficient]
    log_likelihood: float
    iterations: int
    converged: bool
    information: np.ndarray = field(repr=False, default=None)  # type: ignore[assignment]

    def __getitem__(self, name: str) -> Coefficient:
        return self.coefficients[name]


def _sigmoid(eta: np.ndarray) -> np.ndarray:
    out = np.empty_like(eta)
    pos = eta >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-eta[pos]))
    expeta = np.exp(eta[~pos])
    out[~pos] = expeta / (1.0 + expeta)
    return out


def _log_likelihood(y: np.ndarray, eta: np.ndarray) -> float:
    # sum of y*eta - log(1 + exp(eta)), computed stably
    return float(np.sum(y * eta - np.logaddexp(0.0, eta)))


def fit_logistic(design: DesignMatrix) -> RegressionResult:
    """Maximize the Bernoulli log-likelihood by IRLS from beta = 0.

    Converges when the log-likelihood change drops below 1e-10 or the
    gradient max-norm below 1e-8. Perfect separation (any |beta| passing 30)
    stops the fit with converged=False and a SeparationWarning; a singular
    information matrix raises SingularDesignError.
    """
    X, y = design.rows, design.y
    beta = np.zeros(X.shape[1])
    eta = X @ beta
    ll = _log_likelihood(y, eta)
    converged = False
    iterations = 0
    info = None
    for iterations in range(1, MAX_ITERATIONS + 1):
        mu = _sigmoid(eta)
        weights = mu * (1.0 - mu)
        info = (X * weights[:, None]).T @ X
        gradient = X.T @ (y - mu)
        try:
            factor = cho_factor(info)
        except (LinAlgError, np.linalg.LinAlgError) as err:
            raise SingularDesignError(f"singular information matrix: {err}") from err
        beta = beta + cho_solve(factor, gradient)
        if np.max(np.abs(beta)) > SEPARATION_BOUND:
            warnings.warn("coefficients diverging; data are likely separated",
                          SeparationWarning, stacklevel=2)
            eta = X @ beta
            ll = _log_likelihood(y, eta)
            break
        eta = X @ beta
        new_ll = _log_likelihood(y, eta)
        new_gradient = X.T @ (y - _sigmoid(eta))
        if abs(new_ll - ll) < LL_TOLERANCE or np.max(np.abs(new_gradient)) < GRADIENT_TOLERANCE:
            ll = new_ll
            converged = True
            break
        ll = new_ll

    mu = _sigmoid(eta)
    weights = mu * (1.0 - mu)
    info = (X * weights[:, None]).T @ X
    try:
        covariance = np.linalg.inv(info)
    except np.linalg.LinAlgError as err:
        raise SingularDesignError(f"singular information matrix: {err}") from err
    ses = np.sqrt(np.diag(covariance))
    coefficients = {}
    for name, estimate, se in zip(design.columns, beta, ses):
        z = estimate / se if se > 0 else float("inf")
        coefficients[name] = Coefficient(estimate=float(estimate), se=float(se),
                                         z=float(z), p=two_sided_p(float(z)))
    return RegressionResult(coefficients=coefficients, log_likelihood=ll,
                            iterations=iterations, converged=converged,
                            information=info)


def model_dummy_design(items: list[dict], reference: str) -> DesignMatrix:
    """Build an intercept + model-indicator design from per-item dicts with
    ``model_id`` and a boolean outcome under ``mac``. The reference model is
    absorbed into the intercept."""
    models = sorted({item["model_id"] for item in items})
    if reference not in models:
        raise ValueError(f"reference model {reference!r} not present in the data")
    others = [m for m in models if m != reference]
    columns = ["intercept"] + others
    rows = np.zeros((len(items), len(columns)))
    rows[:, 0] = 1.0
    y = np.zeros(len(items))
    for i, item in enumerate(items):
        if item["model_id"] != reference:
            rows[i, 1 + others.index(item["model_id"])] = 1.0
        y[i] = 1.0 if item["mac"] else 0.0
    return DesignMatrix(columns=columns, rows=rows, y=y)


def replay_items_from_counts(counts: dict[str, tuple[int, int]]) -> list[dict]:
    """Expand per-model (n, successes) counts into per-item outcome dicts,
    e.g. reconstructed solvable/MaC counts for a regression replay."""
    items = []
    for model, (n, successes) in sorted(counts.items()):
        if not 0 <= successes <= n:
            raise ValueError(f"bad counts for {model}")
        for i in range(n):
            items.append({"model_id": model, "mac": i < successes})
    return items
