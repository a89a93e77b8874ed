"""Decision engine: obstructions to asymptotic stability from homology data.

Three tests, each a necessary condition. An obstruction (``Distinct`` or
``Fail``) is a certified negative result; ``Equal``/``Pass`` never imply
that stabilization is possible.
"""
from __future__ import annotations

from dataclasses import dataclass

from .abelian import IntMatrix, lattice_member, lattice_subset
from .complex import Chain, ComplexError, HomologyGroup
from .field import FramedField, ImageLattice, induced_map_h0, induced_map_h1, winding_number

COMPARE_THEOREM = "field-homotopy obstruction: fields stabilizing the same set are homotopic"
INCLUSION_THEOREM = "image-inclusion obstruction: Y_* H_1 must lie in the control image f_* H_1"
INDEX_THEOREM = "planar index obstruction: a stable equilibrium in the plane has index 1"

INCONCLUSIVE = "inconclusive for stability: the necessary condition holds, nothing more follows"


@dataclass(frozen=True)
class CompareVerdict:
    outcome: str  # "Equal" | "Distinct"
    windings_x: tuple[int, ...]
    windings_y: tuple[int, ...]
    witness_index: int | None = None
    degrees_checked: tuple[int, ...] = (0, 1)
    theorem: str = COMPARE_THEOREM
    interpretation: str = ""

    @property
    def witness_windings(self) -> tuple[int, int] | None:
        if self.witness_index is None:
            return None
        i = self.witness_index
        return self.windings_x[i], self.windings_y[i]

    @property
    def obstruction(self) -> bool:
        return self.outcome == "Distinct"

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "outcome": self.outcome,
            "witness": None if self.witness_index is None else {
                "generator": self.witness_index,
                "windings": list(self.witness_windings),
            },
            "coefficients": None,
            "interpretation": self.interpretation,
            "degrees-checked": list(self.degrees_checked),
            "windings": {"X": list(self.windings_x), "Y": list(self.windings_y)},
        }


@dataclass(frozen=True)
class StabilizabilityVerdict:
    outcome: str  # "Pass" | "Fail"
    classes: tuple[tuple[int, ...], ...]
    lattice: tuple[tuple[int, ...], ...]
    witness: tuple[int, ...] | None = None
    witness_index: int | None = None
    coefficients: tuple[tuple[int, ...], ...] = ()
    theorem: str = INCLUSION_THEOREM
    interpretation: str = ""

    @property
    def obstruction(self) -> bool:
        return self.outcome == "Fail"

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "outcome": self.outcome,
            "witness": None if self.witness is None else {
                "generator": self.witness_index,
                "class": list(self.witness),
            },
            "coefficients": [list(c) for c in self.coefficients] if self.outcome == "Pass" else None,
            "interpretation": self.interpretation,
            "classes": [list(c) for c in self.classes],
            "lattice": [list(c) for c in self.lattice],
        }


@dataclass(frozen=True)
class IndexVerdict:
    outcome: str  # "Pass" | "Fail"
    winding: int
    theorem: str = INDEX_THEOREM
    interpretation: str = ""

    @property
    def obstruction(self) -> bool:
        return self.outcome == "Fail"

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "outcome": self.outcome,
            "witness": None if self.outcome == "Pass" else {"winding": self.winding, "required": 1},
            "coefficients": None,
            "interpretation": self.interpretation,
            "winding": self.winding,
        }


def compare_vector_fields(X: FramedField, Y: FramedField, H: HomologyGroup) -> CompareVerdict:
    """Compare the induced maps of X and Y in degrees 0 and 1.

    ``Distinct`` means X and Y are not homotopic through nowhere-zero
    fields on the region, so at most one of them makes the removed set
    asymptotically stable.
    """
    if X.complex is not Y.complex:
        raise ComplexError("fields are sampled on different complexes")
    if H.complex is not X.complex:
        raise ComplexError("homology group belongs to a different complex")
    if H.degree != 1:
        raise ComplexError(f"expected H_1, got H_{H.degree}")
    if induced_map_h0(X) != induced_map_h0(Y):
        raise ComplexError("degree-0 data differ; fields are not on the same region")
    wx = tuple(c.fiber for c in induced_map_h1(X, H))
    wy = tuple(c.fiber for c in induced_map_h1(Y, H))
    for i, (a, b) in enumerate(zip(wx, wy)):
        if a != b:
            return CompareVerdict(
                "Distinct", wx, wy, witness_index=i,
                interpretation=(
                    f"windings {a} != {b} on H_1 generator {i}: X and Y are not homotopic "
                    "through nowhere-zero fields on the region, so at most one of them "
                    "renders the removed set asymptotically stable"
                ),
            )
    return CompareVerdict("Equal", wx, wy, interpretation=INCONCLUSIVE)


def check_stabilizability(Y: FramedField, image: ImageLattice, H: HomologyGroup
                          ) -> StabilizabilityVerdict:
    """Test whether every class Y induces on H_1 lies in the control image lattice.

    ``Y`` must be a field for which the removed set is known to be
    asymptotically stable. ``Fail`` means no feedback law can stabilize it.
    """
    dim = len(H.generators) + 1
    if image.dimension != dim:
        raise ValueError(f"image lattice lives in Z^{image.dimension}, "
                         f"expected Z^{dim} (H_1 rank {dim - 1} plus winding)")
    classes = tuple(c.vector for c in induced_map_h1(Y, H))
    sub = IntMatrix.from_columns(classes, dim)
    inc = lattice_subset(sub, image.matrix)
    lattice = tuple(image.columns())
    if not inc.contained:
        return StabilizabilityVerdict(
            "Fail", classes, lattice, witness=inc.witness, witness_index=inc.witness_index,
            interpretation=(
                f"class {list(inc.witness)} of Y is not in the image lattice: no feedback law "
                "makes the set asymptotically stable for the closed loop"
            ),
        )
    return StabilizabilityVerdict("Pass", classes, lattice, coefficients=inc.coefficients,
                                  interpretation=INCONCLUSIVE)


def index_test(X: FramedField, c: Chain, planar: bool = True) -> IndexVerdict:
    """An asymptotically stable point in the plane has index 1.

    ``c`` must encircle the candidate equilibrium once, counterclockwise,
    in the standard frame.
    """
    if not planar:
        raise ValueError("the index test applies to planar framed regions only")
    w = winding_number(X, c)
    if w == 1:
        return IndexVerdict("Pass", w, interpretation=INCONCLUSIVE)
    return IndexVerdict(
        "Fail", w,
        interpretation=f"index {w} != 1: the encircled point is not asymptotically stable",
    )


def recheck_fail(witness, lattice_columns, dimension: int) -> bool:
    """True if ``witness`` is indeed outside the lattice (re-verifies a Fail)."""
    L = IntMatrix.from_columns(lattice_columns, dimension)
    return not lattice_member(witness, L).member
