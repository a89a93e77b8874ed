"""Framed vector fields on a complex: winding numbers and induced maps on H_1.

A field is sampled once per vertex, in coordinates relative to a fixed
2-dimensional frame on the region. Under the frame the punctured tangent
bundle splits as region x (plane minus origin), so the field's class of a
loop is (loop class, winding of the field along the loop).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .abelian import IntMatrix
from .complex import (
    Chain,
    ComplexError,
    HomologyGroup,
    NotACycleError,
    SimplicialComplex,
)

DEFAULT_EPS_Z = 1e-9
DEFAULT_DELTA = 1e-6
ROUNDING_TOLERANCE = 1e-6


class FieldError(ValueError):
    pass


class ZeroSampleError(FieldError):
    pass


class AdequacyError(FieldError):
    """Field turns by nearly a half-turn across an edge; refine the mesh."""

    def __init__(self, edge: tuple[int, int], angle: float, delta: float):
        self.edge = edge
        self.angle = angle
        super().__init__(
            f"field turns by {abs(angle):.6g} rad along edge {list(edge)}, "
            f"not below pi - {delta:g}; refine the mesh near this edge"
        )


@dataclass(frozen=True, eq=False)
class FramedField:
    """Per-vertex samples ``(a, b)`` meaning ``a * frame_1 + b * frame_2``.

    ``eps_z`` is relative to the largest sample norm; ``delta`` is the
    margin by which per-edge turning must stay below a half-turn.
    """

    complex: SimplicialComplex
    samples: np.ndarray
    eps_z: float = DEFAULT_EPS_Z
    delta: float = DEFAULT_DELTA

    def __post_init__(self):
        s = np.array(self.samples, dtype=float)
        if s.ndim != 2 or s.shape[1] != 2:
            raise FieldError(f"samples must be (a, b) pairs, got shape {s.shape}")
        if len(s) != self.complex.vertex_count:
            raise FieldError(f"{len(s)} samples for {self.complex.vertex_count} vertices")
        if not np.all(np.isfinite(s)):
            raise FieldError("samples must be finite")
        if self.eps_z <= 0 or self.delta <= 0:
            raise FieldError("tolerances must be positive")
        norms = np.hypot(s[:, 0], s[:, 1])
        scale = norms.max() if len(norms) else 0.0
        bad = np.flatnonzero(norms <= self.eps_z * scale) if scale > 0 else np.arange(len(s))
        if len(bad):
            raise ZeroSampleError(
                f"field vanishes (norm <= {self.eps_z:g} x max norm) at vertices {bad[:10].tolist()}"
            )
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    def __neg__(self) -> FramedField:
        return self.with_samples(-self.samples)

    def with_samples(self, samples) -> FramedField:
        return FramedField(self.complex, samples, self.eps_z, self.delta)

    def edge_angle(self, u: int, v: int) -> float:
        """Signed turning angle in (-pi, pi] from the sample at u to the one at v."""
        a, b = self.samples[u], self.samples[v]
        return math.atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1])


@dataclass(frozen=True)
class ProductClass:
    """Element of H_1(region) + Z: homology coordinates and a winding."""

    base: tuple[int, ...]
    fiber: int

    @property
    def vector(self) -> tuple[int, ...]:
        return (*self.base, self.fiber)


@dataclass(frozen=True)
class ImageLattice:
    """Sublattice of H_1(region) + Z; columns are ``base + (fiber,)`` vectors."""

    matrix: IntMatrix

    @classmethod
    def from_columns(cls, columns, dimension: int | None = None) -> ImageLattice:
        return cls(IntMatrix.from_columns(columns, dimension))

    @property
    def dimension(self) -> int:
        return self.matrix.rows

    def columns(self) -> list[tuple[int, ...]]:
        return self.matrix.columns()


def _check_same_complex(F: FramedField, H: HomologyGroup):
    if H.complex is not F.complex:
        raise ComplexError("field and homology group live on different complexes")


def winding_number(F: FramedField, c: Chain) -> int:
    """Degree of the field direction along the 1-cycle ``c``.

    Linear in ``c``: each edge contributes its coefficient times the turning
    angle from tail to head, so no explicit loop decomposition is needed.
    """
    K = F.complex
    if c.dim != 1:
        raise ComplexError(f"winding number needs a 1-cycle, got a {c.dim}-chain")
    if not c.is_cycle(K):
        raise NotACycleError("chain is not a cycle, so it does not split into closed edge loops")
    limit = math.pi - F.delta
    total = 0.0
    for i, coeff in c.coefficients.items():
        u, v = K.edges[i]
        ang = F.edge_angle(u, v)
        if abs(ang) >= limit:
            raise AdequacyError((u, v), ang, F.delta)
        total += coeff * ang
    turns = total / (2 * math.pi)
    w = round(turns)
    if abs(turns - w) > ROUNDING_TOLERANCE:
        raise FieldError(f"accumulated turning {turns!r} is not within "
                         f"{ROUNDING_TOLERANCE:g} of an integer")
    return int(w)


def induced_map_h1(F: FramedField, H: HomologyGroup) -> list[ProductClass]:
    """Image of each H_1 generator: (unit base vector, winding along it)."""
    if H.degree != 1:
        raise ComplexError(f"expected H_1, got H_{H.degree}")
    _check_same_complex(F, H)
    n = len(H.generators)
    return [
        ProductClass(tuple(int(i == j) for j in range(n)), winding_number(F, g))
        for i, g in enumerate(H.generators)
    ]


def induced_map_h0(F: FramedField, K: SimplicialComplex | None = None) -> list[tuple[int, int]]:
    """Degree-0 image: one ``(component, least vertex)`` marker per component.

    H_0 of the punctured plane is a point class, so this is the same for
    every nowhere-zero field; it exists so comparisons cover degree 0.
    """
    K = F.complex if K is None else K
    if K is not F.complex:
        raise ComplexError("field does not live on this complex")
    return [(i, comp[0]) for i, comp in enumerate(K.components())]


class ImageConstructionError(FieldError):
    pass


def single_input_image(g, H: HomologyGroup) -> ImageLattice:
    """Image lattice of the single-input system ``f(m, u) = u * g(m)``.

    Off ``u = 0`` the input space is two half-lines; the negative one
    contributes ``-g``, whose windings equal those of ``g``, so each H_1
    generator contributes one column ``(e_i, w(g, gen_i))``.
    """
    if not isinstance(g, FramedField):
        try:
            g = FramedField(H.complex, g)
        except ZeroSampleError as exc:
            raise ImageConstructionError(
                f"{exc}; the region does not split as region x (R minus 0), "
                "supply the image lattice directly"
            ) from None
    if H.degree != 1:
        raise ComplexError(f"expected H_1, got H_{H.degree}")
    classes = induced_map_h1(g, H)
    dim = len(H.generators) + 1
    return ImageLattice(IntMatrix.from_columns([c.vector for c in classes], dim))
