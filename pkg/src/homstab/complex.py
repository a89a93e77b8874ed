"""Simplicial complexes of dimension at most 2 and their integral homology.

Simplices are strictly increasing vertex tuples; that order is their
orientation. Homology generators are read off the Smith form of the
boundary maps, so they are deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .abelian import (
    FgAbGroup,
    IntMatrix,
    determinant,
    lattice_member,
    smith_normal_form,
)

MAX_DIM = 2


class ComplexError(ValueError):
    pass


class NotACycleError(ComplexError):
    pass


@dataclass(frozen=True)
class Defect:
    kind: str
    simplex: tuple[int, ...]
    detail: str = ""

    def __str__(self) -> str:
        s = f"{self.kind}: {list(self.simplex)}"
        return f"{s} ({self.detail})" if self.detail else s


@dataclass(frozen=True)
class ValidationReport:
    defects: tuple[Defect, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.defects

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """Vertices ``0..vertex_count-1`` plus edges and triangles.

    Construction does not validate; call :func:`validate` (or use
    :meth:`closure`, which adds missing faces).
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()
    triangles: tuple[tuple[int, int, int], ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "triangles", tuple(tuple(t) for t in self.triangles))

    @classmethod
    def closure(cls, triangles: Iterable[Sequence[int]], edges: Iterable[Sequence[int]] = (),
                vertex_count: int | None = None) -> SimplicialComplex:
        """Smallest complex containing the given simplices (sorted, deduplicated)."""
        tris = sorted({tuple(sorted(t)) for t in triangles})
        es = {tuple(sorted(e)) for e in edges}
        for a, b, c in tris:
            es.update([(a, b), (a, c), (b, c)])
        es = sorted(es)
        if vertex_count is None:
            vertex_count = 1 + max((v for e in es for v in e), default=-1)
        return cls(vertex_count, tuple(es), tuple(tris))

    def simplices(self, k: int) -> tuple[tuple[int, ...], ...]:
        if k == 0:
            return tuple((v,) for v in range(self.vertex_count))
        if k == 1:
            return self.edges
        if k == 2:
            return self.triangles
        if k > MAX_DIM:
            raise ComplexError(f"dimension {k} exceeds the supported maximum {MAX_DIM}")
        return ()

    def count(self, k: int) -> int:
        if k < 0 or k > MAX_DIM:
            return 0
        return len(self.simplices(k))

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def triangle_index(self) -> dict[tuple[int, int, int], int]:
        return {t: i for i, t in enumerate(self.triangles)}

    def index(self, simplex: Sequence[int]) -> int:
        s = tuple(simplex)
        if len(s) == 1:
            if not 0 <= s[0] < self.vertex_count:
                raise KeyError(s)
            return s[0]
        if len(s) == 2:
            return self.edge_index[s]
        if len(s) == 3:
            return self.triangle_index[s]
        raise ComplexError(f"simplices of dimension {len(s) - 1} are not supported")

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - len(self.edges) + len(self.triangles)

    def components(self) -> list[list[int]]:
        """Vertex sets of the connected components, ordered by least vertex."""
        n = self.vertex_count
        if n == 0:
            return []
        e = np.array(self.edges, dtype=np.int64).reshape(-1, 2)
        graph = coo_matrix((np.ones(len(e)), (e[:, 0], e[:, 1])), shape=(n, n))
        _, labels = connected_components(graph, directed=False)
        groups: dict[int, list[int]] = {}
        for v, lab in enumerate(labels):
            groups.setdefault(int(lab), []).append(v)
        return sorted(groups.values())

    @cached_property
    def _boundaries(self) -> dict[int, IntMatrix]:
        return {}


def validate(K: SimplicialComplex) -> ValidationReport:
    defects = []
    seen_per_dim = []
    for k, simplices in ((1, K.edges), (2, K.triangles)):
        seen = set()
        for s in simplices:
            if len(s) != k + 1:
                defects.append(Defect("wrong arity", s, f"expected {k + 1} vertices"))
                continue
            if any(not 0 <= v < K.vertex_count for v in s):
                defects.append(Defect("vertex out of range", s, f"vertex_count={K.vertex_count}"))
                continue
            if any(a >= b for a, b in zip(s, s[1:])):
                defects.append(Defect("not strictly increasing", s))
                continue
            if s in seen:
                defects.append(Defect("duplicate simplex", s))
            seen.add(s)
        seen_per_dim.append(seen)
    edges = seen_per_dim[0]
    for t in seen_per_dim[1]:
        a, b, c = t
        for face in ((b, c), (a, c), (a, b)):
            if face not in edges:
                defects.append(Defect("missing face", t, f"edge {list(face)} absent"))
    if not defects:
        prod = boundary_matrix(K, 1) @ boundary_matrix(K, 2)
        if any(prod.entries):
            defects.append(Defect("boundary of boundary nonzero", ()))
    return ValidationReport(tuple(defects))


def boundary_matrix(K: SimplicialComplex, k: int) -> IntMatrix:
    """Matrix of the boundary map C_k -> C_{k-1}; column j is simplex j.

    ``k == 0`` and ``k == 3`` give the zero maps at the ends of the chain
    complex (shapes ``0 x n0`` and ``n2 x 0``).
    """
    if k < 0 or k > MAX_DIM + 1:
        raise ComplexError(f"boundary degree {k} out of range 0..{MAX_DIM + 1}")
    cache = K._boundaries
    if k in cache:
        return cache[k]
    rows, cols = K.count(k - 1), K.count(k)
    data = [[0] * cols for _ in range(rows)]
    if k in (1, 2):
        for j, s in enumerate(K.simplices(k)):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                try:
                    data[K.index(face)][j] += -1 if i % 2 else 1
                except KeyError:
                    raise ComplexError(f"simplex {list(s)} is missing face {list(face)}") from None
    M = IntMatrix._trusted(data, rows, cols) if rows and cols else IntMatrix.zeros(rows, cols)
    cache[k] = M
    return M


@dataclass(frozen=True, eq=False)
class Chain:
    """Sparse integer chain of dimension ``dim``: simplex index -> coefficient."""

    dim: int
    coefficients: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coefficients",
                           {int(i): int(c) for i, c in sorted(self.coefficients.items()) if c})

    @classmethod
    def from_vector(cls, dim: int, vec: Sequence[int]) -> Chain:
        return cls(dim, {i: c for i, c in enumerate(vec) if c})

    def to_vector(self, K: SimplicialComplex) -> tuple[int, ...]:
        n = K.count(self.dim)
        vec = [0] * n
        for i, c in self.coefficients.items():
            if not 0 <= i < n:
                raise ComplexError(f"chain refers to {self.dim}-simplex {i}, complex has {n}")
            vec[i] = c
        return tuple(vec)

    def boundary(self, K: SimplicialComplex) -> Chain:
        if self.dim == 0:
            return Chain(-1)
        simplices = K.simplices(self.dim)
        out: dict[int, int] = {}
        for j, c in self.coefficients.items():
            if not 0 <= j < len(simplices):
                raise ComplexError(f"chain refers to {self.dim}-simplex {j}, "
                                   f"complex has {len(simplices)}")
            s = simplices[j]
            for i in range(len(s)):
                f = K.index(s[:i] + s[i + 1:])
                out[f] = out.get(f, 0) + (-c if i % 2 else c)
        return Chain(self.dim - 1, out)

    def is_cycle(self, K: SimplicialComplex) -> bool:
        return not self.boundary(K).coefficients

    def __add__(self, other: Chain) -> Chain:
        return self.combine(other, 1)

    def __sub__(self, other: Chain) -> Chain:
        return self.combine(other, -1)

    def __neg__(self) -> Chain:
        return self.scale(-1)

    def __rmul__(self, k: int) -> Chain:
        return self.scale(k)

    def scale(self, k: int) -> Chain:
        return Chain(self.dim, {i: k * c for i, c in self.coefficients.items()})

    def combine(self, other: Chain, sign: int) -> Chain:
        if self.dim != other.dim:
            raise ComplexError(f"cannot combine chains of dimension {self.dim} and {other.dim}")
        out = dict(self.coefficients)
        for i, c in other.coefficients.items():
            out[i] = out.get(i, 0) + sign * c
        return Chain(self.dim, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.dim == other.dim and self.coefficients == other.coefficients

    __hash__ = None

    def __repr__(self) -> str:
        return f"Chain({self.dim}, {self.coefficients})"


class Cycle(Chain):
    """A chain with zero boundary; checked against ``K`` on construction."""

    def __init__(self, K: SimplicialComplex, chain: Chain):
        super().__init__(chain.dim, chain.coefficients)
        if not chain.is_cycle(K):
            raise NotACycleError(f"chain has nonzero boundary: {chain.boundary(K).coefficients}")

    def __repr__(self) -> str:
        return f"Cycle({self.dim}, {self.coefficients})"


def edge_loop(K: SimplicialComplex, vertices: Sequence[int]) -> Cycle:
    """1-cycle traversing ``vertices`` in order and back to the first."""
    if len(vertices) < 2:
        raise ComplexError("a loop needs at least two vertices")
    coeffs: dict[int, int] = {}
    for u, v in zip(vertices, list(vertices[1:]) + [vertices[0]]):
        if u == v:
            raise ComplexError(f"degenerate step {u} -> {v}")
        key = (u, v) if u < v else (v, u)
        if key not in K.edge_index:
            raise ComplexError(f"loop uses missing edge {list(key)}")
        i = K.edge_index[key]
        coeffs[i] = coeffs.get(i, 0) + (1 if u < v else -1)
    return Cycle(K, Chain(1, coeffs))


@dataclass(frozen=True, eq=False)
class HomologyGroup(FgAbGroup):
    """H_k of a complex, with generator cycles and the data to take coordinates.

    ``_coord`` maps a chain vector to its coordinates with respect to the
    generators before torsion reduction; torsion coordinates are reduced
    modulo their order by :func:`express_in_homology`.
    """

    complex: SimplicialComplex | None = None
    degree: int = 0
    _coord: IntMatrix | None = field(default=None, repr=False)

    def rebased(self, cycles: Sequence[Chain]) -> HomologyGroup:
        """Same group with a user-chosen basis (torsion-free groups only)."""
        if self.torsion:
            raise ComplexError("rebasing is only supported for torsion-free homology")
        if len(cycles) != self.free_rank:
            raise ComplexError(f"need {self.free_rank} cycles, got {len(cycles)}")
        K = self.complex
        cycles = [c if isinstance(c, Cycle) else Cycle(K, c) for c in cycles]
        cols = [express_in_homology(c, self).coordinates for c in cycles]
        M = IntMatrix.from_columns(cols, self.free_rank)
        if abs(determinant(M)) != 1:
            raise ComplexError("cycles do not form a basis of homology "
                               f"(change-of-basis determinant {determinant(M)})")
        snf = smith_normal_form(M)
        # M is unimodular, so M^-1 = V^-1 U^-1
        Minv = snf.V_inv @ snf.U_inv
        return HomologyGroup(
            free_rank=self.free_rank,
            torsion=(),
            generators=tuple(cycles),
            complex=K,
            degree=self.degree,
            _coord=Minv @ self._coord,
        )


@dataclass(frozen=True)
class HomologyCoordinates:
    """Coordinates of a cycle plus a certificate: ``c == sum x_i g_i + boundary(w)``."""

    coordinates: tuple[int, ...]
    certificate: Chain


def homology(K: SimplicialComplex, k: int) -> HomologyGroup:
    if not 0 <= k <= MAX_DIM:
        raise ComplexError(f"homology degree {k} out of range 0..{MAX_DIM}")
    d_k = boundary_matrix(K, k)
    d_k1 = boundary_matrix(K, k + 1)
    n = K.count(k)

    snf_k = smith_normal_form(d_k)
    r = snf_k.rank
    # kernel of d_k: columns r.. of V^-1; V maps a cycle into those coordinates
    V_tail = IntMatrix([snf_k.V.row(i) for i in range(r, n)], n - r, n)
    C = V_tail @ d_k1  # boundaries in cycle-basis coordinates

    snf_c = smith_normal_form(C)
    rc = snf_c.rank
    free_idx = list(range(rc, n - r))
    tors_idx = [i for i in range(rc) if snf_c.diag[i] > 1]
    order = free_idx + tors_idx

    Z = IntMatrix.from_columns([snf_k.V_inv.column(i) for i in range(r, n)], n)
    U_sel = IntMatrix.from_columns([snf_c.U.column(i) for i in order], n - r)
    G = Z @ U_sel
    gens = [Cycle(K, Chain.from_vector(k, G.column(j))) for j in range(len(order))]

    coord_rows = [snf_c.U_inv.row(i) for i in order]
    coord = IntMatrix(coord_rows, len(order), n - r) @ V_tail
    return HomologyGroup(
        free_rank=len(free_idx),
        torsion=tuple(snf_c.diag[i] for i in tors_idx),
        generators=tuple(gens),
        complex=K,
        degree=k,
        _coord=coord,
    )


def express_in_homology(c: Chain, H: HomologyGroup) -> HomologyCoordinates:
    """Coordinates of ``[c]`` in the generators of ``H``, with a 2-chain
    (or (k+1)-chain) certificate checked by reconstruction."""
    K = H.complex
    if c.dim != H.degree:
        raise ComplexError(f"{c.dim}-chain against H_{H.degree}")
    if not c.is_cycle(K):
        raise NotACycleError(f"chain has nonzero boundary: {c.boundary(K).coefficients}")
    vec = c.to_vector(K)
    raw = H._coord.apply(vec)
    coords = tuple(x % t if t else x for x, t in zip(raw, H.order))

    residual = list(vec)
    for x, g in zip(coords, H.generators):
        for i, v in g.coefficients.items():
            residual[i] -= x * v
    d = boundary_matrix(K, H.degree + 1)
    sol = lattice_member(residual, d)
    if not sol.member:
        raise ComplexError("cycle is not expressible in the given homology basis")
    w = Chain.from_vector(H.degree + 1, sol.coefficients)
    recon = list(d.apply(sol.coefficients))
    for x, g in zip(coords, H.generators):
        for i, v in g.coefficients.items():
            recon[i] += x * v
    if tuple(recon) != vec:
        raise ComplexError("internal error: homology certificate does not reconstruct the cycle")
    return HomologyCoordinates(coords, w)
