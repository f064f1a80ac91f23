"""JSON documents for product bases and density matrices, plus run configuration."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .constructors import ProductBasisSet
from .linalg import DEFAULT_RANK_TOL
from .states import DEFAULT_PPT_TOL, DensityMatrix
from .verify import DEFAULT_MAX_MEMBERS, DEFAULT_ZERO_TOL

__all__ = [
    "SCHEMA_VERSION",
    "DocumentError",
    "RunConfig",
    "dump_upb",
    "load_upb",
    "upb_to_dict",
    "upb_from_dict",
    "density_to_dict",
    "density_from_dict",
    "load_document",
]

SCHEMA_VERSION = 1
OUTDIR_ENV = "UPBSTRENGTH_OUTDIR"


class DocumentError(ValueError):
    """Malformed or unreadable document."""


@dataclass(frozen=True)
class RunConfig:
    tol_zero: float = DEFAULT_ZERO_TOL
    tol_rank: float = DEFAULT_RANK_TOL
    tol_ppt: float = DEFAULT_PPT_TOL
    max_members: int = DEFAULT_MAX_MEMBERS
    out_dir: Optional[str] = None
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        for name in ("tol_zero", "tol_rank", "tol_ppt"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.max_members < 1:
            raise ValueError("max_members must be positive")
        if self.threads < 1:
            raise ValueError("threads must be positive")
        if self.out_dir is None:
            object.__setattr__(self, "out_dir", os.environ.get(OUTDIR_ENV))

    def to_dict(self) -> dict:
        return asdict(self)


def _pair(z) -> list:
    # repr() of a float is the shortest string that round-trips exactly
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _unpair(p) -> complex:
    if not isinstance(p, (list, tuple)) or len(p) != 2:
        raise DocumentError(f"amplitude must be an [re, im] pair, got {p!r}")
    return complex(float(p[0]), float(p[1]))


def upb_to_dict(S: ProductBasisSet) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "product_basis",
        "label": S.label,
        "dims": list(S.dims),
        "members": [[[_pair(a) for a in v] for v in m] for m in S.members],
    }


def upb_from_dict(doc: dict) -> ProductBasisSet:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema_version {doc.get('schema_version')!r}")
    try:
        members = [[[_unpair(a) for a in v] for v in m] for m in doc["members"]]
        return ProductBasisSet(tuple(doc["dims"]), tuple(members), str(doc.get("label", "")))
    except DocumentError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"invalid product-basis document: {exc}") from exc


def density_to_dict(rho: DensityMatrix) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "density_matrix",
        "dims": list(rho.dims),
        "matrix": [[_pair(a) for a in row] for row in rho.matrix],
    }


def density_from_dict(doc: dict) -> DensityMatrix:
    try:
        M = np.array([[_unpair(a) for a in row] for row in doc["matrix"]], dtype=complex)
        return DensityMatrix.from_matrix(M, doc["dims"])
    except DocumentError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"invalid density-matrix document: {exc}") from exc


def dump_upb(S: ProductBasisSet, indent: Optional[int] = None) -> str:
    return json.dumps(upb_to_dict(S), indent=indent)


def load_document(text: str):
    """Parse either document kind; returns a ProductBasisSet or DensityMatrix."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    if isinstance(doc, dict) and doc.get("kind") == "density_matrix":
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise DocumentError(f"unsupported schema_version {doc.get('schema_version')!r}")
        return density_from_dict(doc)
    return upb_from_dict(doc)


def load_upb(text: str) -> ProductBasisSet:
    obj = load_document(text)
    if not isinstance(obj, ProductBasisSet):
        raise DocumentError("expected a product-basis document")
    return obj
