import numpy as np
import pytest
from hypothesis import given

from biframe.engine import assemble_biframe_operator
from biframe.exceptions import DimensionMismatchError
from biframe.family import VectorFamily, analysis_map, check_compatible, sample_family, synthesis_map
from biframe.measure import make_counting_measure, make_uniform_quadrature

from conftest import example1, onb, random_pairs


def test_sample_example1_families():
    xi, phi = example1(nodes=5)
    w = xi.space.nodes
    np.testing.assert_array_equal(xi.vectors, np.column_stack([np.zeros(5), w]))
    np.testing.assert_array_equal(phi.vectors, np.column_stack([w, np.ones(5)]))
    assert xi.dim == 2 and len(xi) == 5 and xi.field == "real"


def test_sample_counting_basis():
    fam = sample_family(make_counting_measure(2), lambda k: np.eye(2)[int(k) - 1])
    np.testing.assert_array_equal(fam.vectors, np.eye(2))
    np.testing.assert_array_equal(fam.column_matrix(), np.eye(2))


def test_sample_rejects_inconsistent_shapes():
    space = make_counting_measure(2)
    with pytest.raises(DimensionMismatchError):
        sample_family(space, lambda k: np.ones(int(k)))
    with pytest.raises(DimensionMismatchError):
        sample_family(space, lambda k: np.ones(2) * (1j if k > 1 else 1))


@pytest.mark.parametrize(
    "fam, x, expected",
    [
        (onb(2), [3, 4], [3, 4]),
        (example1(4)[0], [1, 0], np.zeros(4)),
    ],
)
def test_analysis_examples(fam, x, expected):
    np.testing.assert_allclose(analysis_map(fam, x), expected, atol=0)


def test_analysis_picks_out_nodes():
    xi, _ = example1(6)
    np.testing.assert_allclose(analysis_map(xi, [0, 1]), xi.space.nodes)


def test_analysis_conjugates_family():
    fam = VectorFamily(make_counting_measure(1), [[1j, 0]])
    # <x, Xi> = x . conj(Xi)
    assert analysis_map(fam, [1, 0])[0] == pytest.approx(-1j)


def test_synthesis_examples():
    np.testing.assert_allclose(synthesis_map(onb(2), [3, 4]), [3, 4])
    _, phi = example1(7)
    np.testing.assert_allclose(synthesis_map(phi, np.zeros(7)), [0, 0])
    # int_0^1 w (w, 1) dw = (1/3, 1/2)
    for nodes in (2, 3, 16):
        _, phi = example1(nodes)
        np.testing.assert_allclose(synthesis_map(phi, phi.space.nodes), [1 / 3, 1 / 2], atol=1e-15)


def test_shape_errors():
    with pytest.raises(DimensionMismatchError):
        analysis_map(onb(2), [1, 2, 3])
    with pytest.raises(DimensionMismatchError):
        synthesis_map(onb(2), [1, 2, 3])
    with pytest.raises(DimensionMismatchError):
        VectorFamily(make_counting_measure(3), np.eye(2))


def test_compatibility():
    a = onb(2)
    with pytest.raises(DimensionMismatchError):
        check_compatible(a, onb(3))
    with pytest.raises(DimensionMismatchError):
        check_compatible(a, onb(2, field="complex"))
    q = VectorFamily(make_uniform_quadrature((0, 1), 2), np.eye(2))
    with pytest.raises(DimensionMismatchError):
        check_compatible(a, q)
    check_compatible(a, onb(2, scale=3))


def test_family_is_immutable_and_maps():
    fam = onb(2)
    with pytest.raises(ValueError):
        fam.vectors[0, 0] = 2.0
    R = np.array([[0.0, -1.0], [1.0, 0.0]])
    np.testing.assert_allclose(fam.map(R).column_matrix(), R)
    np.testing.assert_allclose(fam.scale(2).vectors, 2 * np.eye(2))
    assert fam.with_label("e").label == "e"


@given(random_pairs())
def test_synthesis_after_analysis_is_frame_operator(pair):
    xi, _, rng = pair
    x = rng.standard_normal(xi.dim) + (1j * rng.standard_normal(xi.dim) if xi.field == "complex" else 0)
    T = assemble_biframe_operator(xi, xi)
    y = synthesis_map(xi, analysis_map(xi, x))
    assert np.linalg.norm(y - T @ x) <= 1e-12 * max(1.0, np.linalg.norm(T, 2) * np.linalg.norm(x))
