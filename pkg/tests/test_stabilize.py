import numpy as np
import pytest

from homstab.complex import ComplexError, homology
from homstab.field import FramedField, ImageLattice, single_input_image
from homstab.stabilize import (
    COMPARE_THEOREM,
    INCLUSION_THEOREM,
    INDEX_THEOREM,
    check_stabilizability,
    compare_vector_fields,
    index_test,
    recheck_fail,
)

from .helpers import angles, annulus, unit


@pytest.fixture
def ring():
    K, pos, loop = annulus(16)
    H1 = homology(K, 1).rebased([loop])
    return K, pos, loop, H1


def field(K, pos, k, shift=0.0):
    return FramedField(K, unit(k * angles(pos) + shift))


def test_compare_distinct_with_witness(ring):
    K, pos, _, H1 = ring
    v = compare_vector_fields(field(K, pos, 2), field(K, pos, 0), H1)
    assert v.outcome == "Distinct" and v.obstruction
    assert v.witness_index == 0 and v.witness_windings == (2, 0)
    d = v.to_dict()
    assert d["theorem"] == COMPARE_THEOREM
    assert d["witness"] == {"generator": 0, "windings": [2, 0]}
    assert d["degrees-checked"] == [0, 1]


def test_compare_equal_is_inconclusive(ring):
    K, pos, _, H1 = ring
    v = compare_vector_fields(field(K, pos, 1), field(K, pos, 1, shift=2.5), H1)
    assert v.outcome == "Equal" and not v.obstruction
    assert v.witness_index is None
    assert "inconclusive" in v.interpretation


def test_compare_rejects_mismatched_inputs(ring):
    K, pos, _, H1 = ring
    other, opos, _ = annulus(8)
    with pytest.raises(ComplexError):
        compare_vector_fields(field(K, pos, 1), field(other, opos, 1), H1)
    with pytest.raises(ComplexError):
        compare_vector_fields(field(K, pos, 1), field(K, pos, 1), homology(K, 0))


def test_check_fail_and_recheck(ring):
    K, pos, _, H1 = ring
    g = field(K, pos, 2)
    image = single_input_image(g, H1)
    assert image.columns() == [(1, 2)]
    v = check_stabilizability(field(K, pos, 0), image, H1)
    assert v.outcome == "Fail" and v.witness == (1, 0) and v.witness_index == 0
    assert recheck_fail(v.witness, v.lattice, 2)
    d = v.to_dict()
    assert d["theorem"] == INCLUSION_THEOREM and d["coefficients"] is None


def test_check_pass_with_coefficients(ring):
    K, pos, _, H1 = ring
    image = ImageLattice.from_columns([(1, 2), (0, 1)])
    v = check_stabilizability(field(K, pos, 0), image, H1)
    assert v.outcome == "Pass"
    (x,) = v.coefficients
    assert tuple(image.matrix.apply(x)) == (1, 0)
    assert v.to_dict()["coefficients"] == [list(x)]


def test_check_same_field_passes(ring):
    K, pos, _, H1 = ring
    g = field(K, pos, 3)
    assert check_stabilizability(g, single_input_image(g, H1), H1).outcome == "Pass"


def test_check_zero_lattice(ring):
    K, pos, _, H1 = ring
    image = ImageLattice.from_columns([], 2)
    v = check_stabilizability(field(K, pos, 1), image, H1)
    assert v.outcome == "Fail" and v.witness == (1, 1)


def test_check_dimension_mismatch(ring):
    K, pos, _, H1 = ring
    with pytest.raises(ValueError):
        check_stabilizability(field(K, pos, 0), ImageLattice.from_columns([(1, 0, 0)]), H1)


@pytest.mark.parametrize("k,outcome", [(1, "Pass"), (0, "Fail"), (2, "Fail"), (-1, "Fail")])
def test_index(ring, k, outcome):
    K, pos, loop, _ = ring
    v = index_test(field(K, pos, k), loop)
    assert v.outcome == outcome and v.winding == k
    assert v.to_dict()["theorem"] == INDEX_THEOREM


def test_index_requires_planar(ring):
    K, pos, loop, _ = ring
    with pytest.raises(ValueError):
        index_test(field(K, pos, 1), loop, planar=False)


def test_negated_field_same_verdict(ring):
    K, pos, _, H1 = ring
    X = field(K, pos, 2)
    assert compare_vector_fields(X, -X, H1).outcome == "Equal"
    scaled = X.with_samples(X.samples * np.linspace(0.5, 3, len(pos))[:, None])
    assert compare_vector_fields(X, scaled, H1).outcome == "Equal"
