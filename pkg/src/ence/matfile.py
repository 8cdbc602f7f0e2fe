"""JSON matrix files.

A file is a UTF-8 JSON object::

    {
      "format": "ence-matrix",
      "version": 1,
      "kind": "density" | "superoperator" | "general",
      "dim": 4,
      "dims": [2, 2],                      # optional bipartite split
      "conventions": {"order": "row-major", "vec": "column-stacking",
                      "major": "A-slow"},
      "data": [[re, im], ...]              # dim*dim entries, row-major
    }

Superoperator files hold the ``d^2 x d^2`` matrix acting on column-stacked
matrices. The conventions block is written on every save and checked on
load so that files cannot silently be read with a different convention.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .matcore import BipartiteDims, as_cmatrix, check_density

FORMAT = "ence-matrix"
VERSION = 1
KINDS = ("density", "superoperator", "general")
CONVENTIONS = {"order": "row-major", "vec": "column-stacking", "major": "A-slow"}


class MatrixFileError(ValueError):
    pass


@dataclass(frozen=True)
class MatrixFile:
    kind: str
    mat: np.ndarray
    dims: BipartiteDims | None = None

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def to_dict(mat, kind: str = "general", dims=None) -> dict:
    mat = as_cmatrix(mat)
    if kind not in KINDS:
        raise MatrixFileError(f"unknown kind {kind!r}")
    out = {
        "format": FORMAT,
        "version": VERSION,
        "kind": kind,
        "dim": mat.shape[0],
    }
    if dims is not None:
        out["dims"] = [int(dims[0]), int(dims[1])]
    out["conventions"] = dict(CONVENTIONS)
    out["data"] = [[float(z.real), float(z.imag)] for z in mat.ravel()]
    return out


def from_dict(obj: dict) -> MatrixFile:
    """Parse and validate a matrix-file object; raises :class:`MatrixFileError`."""
    if not isinstance(obj, dict):
        raise MatrixFileError("matrix file must be a JSON object")
    if obj.get("format", FORMAT) != FORMAT:
        raise MatrixFileError(f"unsupported format {obj.get('format')!r}")
    conv = obj.get("conventions", CONVENTIONS)
    for key, expected in CONVENTIONS.items():
        if conv.get(key, expected) != expected:
            raise MatrixFileError(f"convention {key}={conv.get(key)!r} not supported (need {expected!r})")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise MatrixFileError(f"kind must be one of {KINDS}, got {kind!r}")
    try:
        dim = int(obj["dim"])
        data = np.asarray(obj["data"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFileError(f"malformed matrix file: {exc}") from exc
    if dim < 1:
        raise MatrixFileError("dim must be positive")
    if data.shape != (dim * dim, 2):
        raise MatrixFileError(
            f"data must hold {dim * dim} [re, im] pairs, got array of shape {data.shape}"
        )
    mat = (data[:, 0] + 1j * data[:, 1]).reshape(dim, dim)
    dims = None
    if obj.get("dims") is not None:
        try:
            dims = BipartiteDims(*(int(x) for x in obj["dims"]))
        except TypeError as exc:
            raise MatrixFileError(f"dims must be a pair of integers: {exc}") from exc
        if dims.total != dim:
            raise MatrixFileError(f"dims {list(dims)} do not multiply to dim {dim}")
    try:
        if kind == "density":
            mat = check_density(mat)
        elif kind == "superoperator":
            root = math.isqrt(dim)
            if root * root != dim:
                raise MatrixFileError(f"superoperator dim {dim} is not a perfect square")
        as_cmatrix(mat)
    except MatrixFileError:
        raise
    except ValueError as exc:
        raise MatrixFileError(f"invalid {kind} matrix: {exc}") from exc
    return MatrixFile(kind, mat, dims)


def dumps(mat, kind: str = "general", dims=None) -> str:
    return json.dumps(to_dict(mat, kind, dims), indent=1) + "\n"


def loads(text: str) -> MatrixFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"not valid JSON: {exc}") from exc
    return from_dict(obj)


def save(path, mat, kind: str = "general", dims=None) -> None:
    Path(path).write_text(dumps(mat, kind, dims), encoding="utf-8")


def load(path) -> MatrixFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc}") from exc
    return loads(text)
