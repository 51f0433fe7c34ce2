import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from biframe.engine import assemble_biframe_operator
from biframe.estimators import BiframeAnalyzer
from biframe.exceptions import DimensionMismatchError, SingularOperatorError

from conftest import example1, seeds


def test_params_roundtrip():
    est = BiframeAnalyzer(tolerance_parseval=1e-6)
    assert est.get_params() == {"cond_max": 1e12, "tolerance_parseval": 1e-6, "tolerance_positivity": 1e-10}
    assert clone(est).set_params(cond_max=1e8).cond_max == 1e8


def test_onb_is_parseval():
    est = BiframeAnalyzer().fit(np.eye(3))
    assert est.report_.is_parseval and est.n_features_in_ == 3
    assert (est.lower_bound_, est.upper_bound_) == (1.0, 1.0)
    Z = np.array([[1.0, 2.0, 3.0], [0.0, -1.0, 4.0]])
    np.testing.assert_allclose(est.transform(Z), Z)
    np.testing.assert_allclose(est.inverse_transform(est.transform(Z)), Z)


def test_weighted_example1_matches_engine():
    xi, phi = example1(8)
    est = BiframeAnalyzer().fit(xi.vectors, synthesis=phi.vectors, sample_weight=xi.space.weights)
    np.testing.assert_allclose(est.operator_, assemble_biframe_operator(xi, phi), atol=1e-15)
    assert not est.report_.is_biframe
    with pytest.raises(SingularOperatorError):
        est.transform([[1.0, 0.0]])


@given(seed=seeds, n=st.integers(2, 6), extra=st.integers(0, 10), complex_=st.booleans())
def test_roundtrip(seed, n, extra, complex_):
    rng = np.random.default_rng(seed)
    m = n + extra
    X = rng.standard_normal((m, n)) + (1j * rng.standard_normal((m, n)) if complex_ else 0)
    Phi = rng.standard_normal((m, n)) + (1j * rng.standard_normal((m, n)) if complex_ else 0)
    w = rng.uniform(0.1, 1.0, m)
    est = BiframeAnalyzer().fit(X, synthesis=Phi, sample_weight=w)
    if np.linalg.cond(est.operator_) > 1e6:
        return
    Z = rng.standard_normal((4, n))
    np.testing.assert_allclose(est.inverse_transform(est.transform(Z)), Z, atol=1e-8)


def test_pipeline_and_fit_transform():
    X = np.random.default_rng(1).standard_normal((6, 3))
    coeffs = BiframeAnalyzer().fit_transform(X)
    assert coeffs.shape == (6, 6)
    pipe = make_pipeline(BiframeAnalyzer()).fit(X)
    np.testing.assert_allclose(pipe.inverse_transform(pipe.transform(X)), X, atol=1e-12)


def test_validation():
    with pytest.raises(NotFittedError):
        BiframeAnalyzer().transform([[1.0, 2.0]])
    est = BiframeAnalyzer().fit(np.eye(2))
    with pytest.raises(DimensionMismatchError):
        est.transform([[1.0, 2.0, 3.0]])
    with pytest.raises(DimensionMismatchError):
        est.inverse_transform([[1.0, 2.0, 3.0]])
    with pytest.raises(DimensionMismatchError):
        BiframeAnalyzer().fit(np.eye(2), synthesis=np.eye(3))
    with pytest.raises(DimensionMismatchError):
        BiframeAnalyzer().fit(np.eye(2), sample_weight=[1.0])
    with pytest.raises(ValueError):
        BiframeAnalyzer().fit(np.eye(2), sample_weight=[1.0, -1.0])
    with pytest.raises(ValueError):
        BiframeAnalyzer(tolerance_parseval=0).fit(np.eye(2))
    with pytest.raises(ValueError):
        BiframeAnalyzer().fit([[np.nan, 1.0]])
