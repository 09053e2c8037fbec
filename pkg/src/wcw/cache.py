"""On-disk cache of induced-module action matrices.

One JSON file per module, named by a content hash of (p, l, modulus, chi
values, cut, lambda).  Matrices are stored as sparse (row, col, element)
triplets; elements as coordinate lists.  The cache only saves straightening
time: a load reproduces exactly the matrices a fresh build would produce.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

import numpy as np

from .witt import parse_index

FORMAT = "wcw-actions/1"


def module_key(module) -> str:
    d = module.datum
    F = d.shape.field
    payload = {
        "p": F.p,
        "ell": d.shape.ell,
        "modulus": list(F.modulus),
        "chi": {str(b): list(c.coeffs) for b, c in sorted(d.chi.values.items())},
        "cut": d.cut,
        "lambda": list(d.lam.coeffs) if d.lam is not None else None,
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def default_dir() -> Path | None:
    env = os.environ.get("WCW_CACHE_DIR")
    return Path(env) if env else None


def _path(module, cache_dir) -> tuple[str, Path]:
    key = module_key(module)
    return key, Path(cache_dir) / f"{key}.json"


def store(module, cache_dir) -> Path:
    key, path = _path(module, cache_dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    F = module.field
    mats = {}
    for b in module.shape.basis:
        M = module.matrix(b)
        rows, cols = np.nonzero(M)
        mats[str(b)] = [[int(r), int(c), list(F.coords(int(M[r, c])))] for r, c in zip(rows, cols)]
    doc = {"format": FORMAT, "key": key, "dim": module.dim, "matrices": mats}
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(doc, separators=(",", ":")))
    tmp.replace(path)
    return path


def load_into(module, cache_dir) -> bool:
    """Fill module's matrices from the cache; False when absent or mismatched."""
    key, path = _path(module, cache_dir)
    if not path.exists():
        return False
    doc = json.loads(path.read_text())
    if doc.get("format") != FORMAT or doc.get("key") != key or doc.get("dim") != module.dim:
        return False
    F = module.field
    n = module.dim
    for name, triplets in doc["matrices"].items():
        M = np.zeros((n, n), dtype=np.int64)
        for r, c, coords in triplets:
            M[r, c] = F.encode(coords)
        module._mats[parse_index(name)] = M
    return True
