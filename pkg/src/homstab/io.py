"""Input files and structured reports.

Inputs are YAML documents (JSON is accepted too, being a subset):

complex::

    vertices: 3
    edges: [[0, 1], [0, 2], [1, 2]]
    triangles: []

field (``complex`` is an optional name checked against the complex's)::

    samples: [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]]

cycle, either a closed vertex path or ``[u, v, c]`` items meaning c times
the edge traversed from u to v::

    loop: [0, 1, 2]
    chain: [[0, 1, 1], [1, 2, 1], [2, 0, 1]]

lattice (``columns: []`` with ``dimension: n`` is the zero lattice)::

    columns: [[1, 2]]
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

import yaml

from .complex import Chain, ComplexError, Cycle, SimplicialComplex, edge_loop, validate
from .abelian import IntMatrix
from .field import FramedField, ImageLattice


class InputError(ValueError):
    """Malformed input file; the message names the file and the field."""


def _load(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "unknown position"
        raise InputError(f"{path}: parse error at {where}: {getattr(exc, 'problem', exc)}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a mapping of fields at the top level")
    return doc


def _int_list(path, name, value, arity=None):
    if not isinstance(value, list):
        raise InputError(f"{path}: field '{name}' must be a list")
    out = []
    for k, item in enumerate(value):
        if not isinstance(item, list) or not all(isinstance(v, int) and not isinstance(v, bool)
                                                 for v in item):
            raise InputError(f"{path}: field '{name}' item {k} must be a list of integers")
        if arity is not None and len(item) != arity:
            raise InputError(f"{path}: field '{name}' item {k} must have {arity} entries")
        out.append(tuple(item))
    return out


def load_complex(path) -> SimplicialComplex:
    doc = _load(path)
    n = doc.get("vertices")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InputError(f"{path}: field 'vertices' must be a nonnegative integer")
    edges = _int_list(path, "edges", doc.get("edges", []), 2)
    tris = _int_list(path, "triangles", doc.get("triangles", []) or [], 3)
    if doc.get("tetrahedra"):
        raise InputError(f"{path}: field 'tetrahedra': complexes above dimension 2 are not supported")
    name = doc.get("name")
    K = SimplicialComplex(n, tuple(edges), tuple(tris), "" if name is None else str(name))
    report = validate(K)
    if not report.ok:
        raise InputError(f"{path}: invalid complex: " + "; ".join(map(str, report.defects[:5])))
    return K


def _samples(path, doc) -> list:
    samples = doc.get("samples")
    if not isinstance(samples, list):
        raise InputError(f"{path}: field 'samples' must be a list of [a, b] pairs")
    for k, s in enumerate(samples):
        if (not isinstance(s, list) or len(s) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in s)):
            raise InputError(f"{path}: field 'samples' item {k} must be a pair of numbers")
    return samples


def load_samples(path) -> list:
    return _samples(path, _load(path))


def load_field(path, K: SimplicialComplex, eps_z: float, delta: float) -> FramedField:
    doc = _load(path)
    samples = _samples(path, doc)
    want = doc.get("complex")
    if want is not None and K.name and str(want) != K.name:
        raise InputError(f"{path}: field 'complex' names '{want}', but the complex is '{K.name}'")
    if len(samples) != K.vertex_count:
        raise InputError(f"{path}: field 'samples' has {len(samples)} entries, "
                         f"complex has {K.vertex_count} vertices")
    return FramedField(K, samples, eps_z, delta)


def load_cycle(path, K: SimplicialComplex) -> Cycle:
    doc = _load(path)
    try:
        if "loop" in doc:
            loop = doc["loop"]
            if not isinstance(loop, list) or not all(isinstance(v, int) for v in loop):
                raise InputError(f"{path}: field 'loop' must be a list of vertex indices")
            return edge_loop(K, loop)
        if "chain" in doc:
            coeffs: dict[int, int] = {}
            for u, v, c in _int_list(path, "chain", doc["chain"], 3):
                key = (min(u, v), max(u, v))
                if key not in K.edge_index:
                    raise InputError(f"{path}: field 'chain' uses missing edge {list(key)}")
                i = K.edge_index[key]
                coeffs[i] = coeffs.get(i, 0) + (c if u < v else -c)
            return Cycle(K, Chain(1, coeffs))
    except ComplexError as exc:
        raise InputError(f"{path}: {exc}") from None
    raise InputError(f"{path}: expected a 'loop' or 'chain' field")


def load_lattice(path) -> ImageLattice:
    doc = _load(path)
    cols = _int_list(path, "columns", doc.get("columns"))
    if not cols:
        dim = doc.get("dimension")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise InputError(f"{path}: field 'columns' is empty; "
                             "give 'dimension' for the zero lattice")
        return ImageLattice(IntMatrix.zeros(dim, 0))
    if len({len(c) for c in cols}) != 1:
        raise InputError(f"{path}: field 'columns' has columns of different lengths")
    return ImageLattice.from_columns(cols)


def digest(paths=(), extra: str = "") -> str:
    h = hashlib.sha256()
    for p in paths:
        h.update(Path(p).read_bytes())
        h.update(b"\0")
    h.update(extra.encode())
    return "sha256:" + h.hexdigest()


def dump_report(report: dict) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
