"""scikit-learn style wrapper around :func:`optimize_boundary`."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .optimize import MAX_ITER, MIN_STEP, TradeoffCurve, optimize_boundary
from .regions import Evaluator, get_family


class TradeoffEstimator(BaseEstimator):
    """Estimate the trade-off curve of one family for a noisy state or channel.

    ``fit(obj)`` runs the restart optimizer on ``grid`` budgets from 0 to
    ``max_budget`` (default: where the constraint stops binding) and
    stores the curve in ``curve_``. ``predict(budgets)`` returns the best
    certified value at arbitrary budgets from the fitted witness pool, so
    it is monotone and never exceeds what some witness achieves.

    Examples
    --------
    >>> from ricalc.quantum import identity_channel
    >>> est = TradeoffEstimator("FATHER", grid=3, restarts=2).fit(identity_channel(2))
    >>> float(est.predict([0.0])[0])
    1.0
    """

    def __init__(self, family: str = "MOTHER", grid: int = 17, restarts: int = 64,
                 seed: int = 0, max_budget: float | None = None, x_max: int = 4,
                 max_iter: int = MAX_ITER, min_step: float = MIN_STEP):
        self.family = family
        self.grid = grid
        self.restarts = restarts
        self.seed = seed
        self.max_budget = max_budget
        self.x_max = x_max
        self.max_iter = max_iter
        self.min_step = min_step

    def fit(self, obj, y=None) -> "TradeoffEstimator":
        fam = get_family(self.family)
        if self.grid < 1:
            raise ValueError("grid must be at least 1")
        top = self.max_budget
        if top is None:
            top = fam.budget_max(Evaluator(fam, obj).d)
        budgets = np.linspace(0.0, float(top), self.grid)
        self.curve_: TradeoffCurve = optimize_boundary(
            fam, obj, restarts=self.restarts, seed=self.seed, budgets=budgets,
            x_max=self.x_max, max_iter=self.max_iter, min_step=self.min_step)
        self.budgets_ = self.curve_.budgets
        self.values_ = self.curve_.values
        return self

    def _check_fitted(self):
        if not hasattr(self, "curve_"):
            raise NotFittedError("call fit before using the estimator")

    def predict(self, budgets) -> np.ndarray:
        self._check_fitted()
        budgets = np.atleast_1d(np.asarray(budgets, dtype=float))
        return np.array([self.curve_.value_at(b) for b in budgets])

    def to_csv(self) -> str:
        self._check_fitted()
        return self.curve_.to_csv()
