"""scikit-learn wrappers so gauges compose with pipelines.

``GaugeTransformer`` maps points to gauge values; ``MinusKClassifier``
predicts the position of points relative to ``-K``.
"""

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .cones import DEFAULT_TOL, Cone, classify_dual
from .exceptions import DimensionError
from .gauge import FiniteGauge, OrientedDistanceGauge, canonical_gauge, classify_by_sign, gauge_values
from .gauge import minimal_generating_subset
from .jsonio import cone_from_dict


def _build_gauge(cone, dual_set, kind, reduce):
    if not isinstance(cone, Cone):
        cone = cone_from_dict(cone)
    if kind == "oriented":
        return OrientedDistanceGauge(cone)
    if kind != "finite":
        raise ValueError(f"kind must be 'finite' or 'oriented', got {kind!r}")
    g = canonical_gauge(cone) if dual_set is None else FiniteGauge(cone, dual_set)
    return minimal_generating_subset(g) if reduce else g


class GaugeTransformer(TransformerMixin, BaseEstimator):
    """Transform points of R^m into the column of gauge values ``phi(x)``.

    Parameters
    ----------
    cone : Cone or dict
        A cone instance or its JSON object.
    dual_set : array_like, optional
        Finite generating set ``C``; the unit dual extreme rays when omitted.
    kind : {"finite", "oriented"}
    reduce : bool
        Drop redundant elements of ``C`` at fit time.
    """

    def __init__(self, cone=None, dual_set=None, kind="finite", reduce=False):
        self.cone = cone
        self.dual_set = dual_set
        self.kind = kind
        self.reduce = reduce

    def fit(self, X=None, y=None):
        self.gauge_ = _build_gauge(self.cone, self.dual_set, self.kind, self.reduce)
        self.n_features_in_ = self.gauge_.cone.dim
        return self

    def transform(self, X):
        check_is_fitted(self, "gauge_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise DimensionError(f"X has {X.shape[1]} features, gauge expects {self.n_features_in_}")
        return np.asarray(gauge_values(self.gauge_, X)).reshape(-1, 1)


class MinusKClassifier(ClassifierMixin, BaseEstimator):
    """Predict -1 (interior of -K), 0 (boundary) or 1 (exterior).

    With ``method="dual"`` the labels come from the dual inequalities,
    otherwise from the sign of the fitted gauge.
    """

    def __init__(self, cone=None, dual_set=None, kind="finite", method="gauge", tol=DEFAULT_TOL):
        self.cone = cone
        self.dual_set = dual_set
        self.kind = kind
        self.method = method
        self.tol = tol

    def fit(self, X=None, y=None):
        if self.method not in ("gauge", "dual"):
            raise ValueError(f"method must be 'gauge' or 'dual', got {self.method!r}")
        self.gauge_ = _build_gauge(self.cone, self.dual_set, self.kind, False)
        self.n_features_in_ = self.gauge_.cone.dim
        self.classes_ = np.array([-1, 0, 1])
        return self

    def predict(self, X):
        check_is_fitted(self, "gauge_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise DimensionError(f"X has {X.shape[1]} features, gauge expects {self.n_features_in_}")
        if self.method == "dual":
            return classify_dual(self.gauge_.cone, X, self.tol)
        return classify_by_sign(self.gauge_, X, self.tol)

    def decision_function(self, X):
        check_is_fitted(self, "gauge_")
        X = check_array(X, dtype=float)
        return np.asarray(gauge_values(self.gauge_, X))
