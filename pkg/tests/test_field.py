import math

import numpy as np
import pytest

from homstab.complex import Chain, ComplexError, NotACycleError, edge_loop, homology
from homstab.field import (
    AdequacyError,
    FieldError,
    FramedField,
    ImageConstructionError,
    ZeroSampleError,
    induced_map_h0,
    induced_map_h1,
    single_input_image,
    winding_number,
)

from .helpers import angles, annulus, unit


@pytest.fixture
def ring():
    return annulus(16)


@pytest.mark.parametrize("k", [-3, -1, 0, 1, 2, 4])
def test_winding_of_angle_multiple(ring, k):
    K, pos, loop = ring
    F = FramedField(K, unit(k * angles(pos)))
    assert winding_number(F, loop) == k
    assert winding_number(F, -loop) == -k


def test_winding_scaling_and_negation(ring):
    K, pos, loop = ring
    F = FramedField(K, unit(2 * angles(pos)))
    rng = np.random.default_rng(0)
    scaled = F.with_samples(F.samples * rng.uniform(0.1, 10, size=(len(pos), 1)))
    assert winding_number(scaled, loop) == 2
    assert winding_number(-F, loop) == 2


def test_winding_is_linear_in_cycles(ring):
    K, pos, loop = ring
    H1 = homology(K, 1)
    F = FramedField(K, unit(3 * angles(pos)))
    outer = edge_loop(K, [16 + i for i in range(16)])
    assert winding_number(F, loop + outer) == winding_number(F, loop) + winding_number(F, outer)
    assert winding_number(F, loop.scale(5)) == 5 * winding_number(F, loop)
    g = H1.generators[0]
    assert abs(winding_number(F, g)) == 3


def test_boundary_has_zero_winding(ring):
    K, pos, _ = ring
    F = FramedField(K, unit(3 * angles(pos)))
    for j in range(K.count(2)):
        tri = Chain(2, {j: 1}).boundary(K)
        assert winding_number(F, tri) == 0


def test_homotopy_invariance_small_perturbation(ring):
    K, pos, loop = ring
    rng = np.random.default_rng(1)
    base = 2 * angles(pos)
    G = FramedField(K, unit(base + rng.uniform(-1.0, 1.0, len(pos))))
    assert winding_number(G, loop) == 2


def test_winding_rejects_non_cycles(ring):
    K, pos, _ = ring
    F = FramedField(K, unit(angles(pos)))
    with pytest.raises(NotACycleError):
        winding_number(F, Chain(1, {0: 1}))
    with pytest.raises(ComplexError):
        winding_number(F, Chain(2, {}))


def test_inadequate_mesh_is_reported(ring):
    K, pos, loop = ring
    coarse = FramedField(K, unit(8 * angles(pos)))  # a half-turn per edge
    with pytest.raises(AdequacyError) as info:
        winding_number(coarse, loop)
    assert len(info.value.edge) == 2


def test_aliasing_beyond_a_half_turn_is_not_detectable(ring):
    # 9 turns over 16 edges look like -7 turns edge by edge
    K, pos, loop = ring
    assert winding_number(FramedField(K, unit(9 * angles(pos))), loop) == -7


def test_antipodal_samples_across_an_edge(ring):
    K, pos, loop = ring
    s = unit(np.zeros(len(pos)))
    s[1] = (-1.0, 0.0)
    with pytest.raises(AdequacyError):
        winding_number(FramedField(K, s), loop)


def test_zero_and_bad_samples(ring):
    K, pos, _ = ring
    s = unit(angles(pos))
    s[3] = (0.0, 0.0)
    with pytest.raises(ZeroSampleError):
        FramedField(K, s)
    s[3] = (1e-12, 0.0)
    with pytest.raises(ZeroSampleError):
        FramedField(K, s)
    with pytest.raises(FieldError):
        FramedField(K, s[:-1])
    with pytest.raises(FieldError):
        FramedField(K, np.full((len(pos), 2), np.nan))
    with pytest.raises(FieldError):
        FramedField(K, np.ones((len(pos), 3)))


def test_eps_z_is_relative(ring):
    K, pos, loop = ring
    s = 1e-12 * unit(angles(pos))
    assert winding_number(FramedField(K, s), loop) == 1


def test_samples_are_read_only(ring):
    K, pos, _ = ring
    F = FramedField(K, unit(angles(pos)))
    with pytest.raises(ValueError):
        F.samples[0, 0] = 5.0


def test_induced_maps(ring):
    K, pos, _ = ring
    H1 = homology(K, 1)
    F = FramedField(K, unit(2 * angles(pos)))
    (cls,) = induced_map_h1(F, H1)
    assert cls.base == (1,) and abs(cls.fiber) == 2
    assert cls.vector == (1, cls.fiber)
    assert induced_map_h0(F) == [(0, 0)]
    with pytest.raises(ComplexError):
        induced_map_h1(F, homology(K, 0))
    other, _, _ = annulus(8)
    with pytest.raises(ComplexError):
        induced_map_h1(F, homology(other, 1))


def test_single_input_image(ring):
    K, pos, _ = ring
    H1 = homology(K, 1)
    g = FramedField(K, unit(angles(pos)))
    image = single_input_image(g, H1)
    w = winding_number(g, H1.generators[0])
    assert image.columns() == [(1, w)]
    assert single_input_image(g.samples, H1) == image


def test_single_input_image_needs_nonvanishing_g(ring):
    K, pos, _ = ring
    s = unit(angles(pos))
    s[0] = 0.0
    with pytest.raises(ImageConstructionError, match="image lattice directly"):
        single_input_image(s, homology(K, 1))


def test_edge_angle_sign():
    K, _, _ = annulus(4)
    s = np.tile([1.0, 0.0], (8, 1))
    s[1] = (0.0, 1.0)
    F = FramedField(K, s)
    assert F.edge_angle(0, 1) == pytest.approx(math.pi / 2)
    assert F.edge_angle(1, 0) == pytest.approx(-math.pi / 2)
