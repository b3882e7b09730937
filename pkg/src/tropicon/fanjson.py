"""Canonical JSON interchange for fans and complexes.

Documents and enforces the file schema::

    {"ambient_dim": n,
     "rays": [[int, ...], ...],          # primitive integer vectors
     "vertices": [["p/q", ...], ...],    # rationals as strings
     "lineality": [[int, ...], ...],
     "cells": [{"v": [...], "r": [...]}, ...],
     "weights": [int, ...]}

Cells reference pool indices; every cell implicitly contains the lineality
space.  Serialization is canonical (sorted pools and cells), so printing an
already-parsed canonical file reproduces it byte for byte.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Union

from .polyhedral import Complex
from .ratlin import as_int_list, vec


def format_rational(x: Fraction) -> Union[str, int]:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s)
    raise ValueError(f"rationals must be strings or integers, got {type(s).__name__}")


def fan_to_obj(c: Complex) -> dict:
    """Canonical JSON-ready dict: pools sorted, cells remapped and sorted."""
    vperm = sorted(range(len(c.vertex_pool)), key=lambda i: c.vertex_pool[i])
    rperm = sorted(range(len(c.ray_pool)), key=lambda i: c.ray_pool[i])
    vmap = {old: new for new, old in enumerate(vperm)}
    rmap = {old: new for new, old in enumerate(rperm)}
    cells = []
    for (vidx, ridx), w in zip(c.cells, c.weights):
        cells.append((tuple(sorted(vmap[i] for i in vidx)),
                      tuple(sorted(rmap[i] for i in ridx)), w))
    cells.sort(key=lambda t: (t[0], t[1]))
    return {
        "ambient_dim": c.ambient_dim,
        "rays": [as_int_list(c.ray_pool[i]) for i in rperm],
        "vertices": [[format_rational(x) for x in c.vertex_pool[i]] for i in vperm],
        "lineality": [as_int_list(l) for l in c.lineality],
        "cells": [{"v": list(v), "r": list(r)} for v, r, _ in cells],
        "weights": [w for _, _, w in cells],
    }


def fan_to_text(c: Complex) -> str:
    return json.dumps(fan_to_obj(c), indent=2) + "\n"


def fan_from_obj(obj: dict) -> Complex:
    required = {"ambient_dim", "rays", "vertices", "lineality", "cells", "weights"}
    missing = required - set(obj)
    if missing:
        raise ValueError(f"fan file missing keys: {sorted(missing)}")
    n = int(obj["ambient_dim"])
    rays = tuple(vec(r) for r in obj["rays"])
    vertices = tuple(tuple(parse_rational(x) for x in v) for v in obj["vertices"])
    lineality = tuple(vec(l) for l in obj["lineality"])
    cells = []
    for cell in obj["cells"]:
        v = tuple(int(i) for i in cell.get("v", ()))
        r = tuple(int(i) for i in cell.get("r", ()))
        if any(i >= len(vertices) or i < 0 for i in v) or \
                any(i >= len(rays) or i < 0 for i in r):
            raise ValueError("cell references an index outside the pools")
        cells.append((v, r))
    weights = tuple(int(w) for w in obj["weights"])
    return Complex(n, vertices, rays, lineality, tuple(cells), weights)


def fan_from_text(text: str) -> Complex:
    return fan_from_obj(json.loads(text))


def save_fan(c: Complex, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(fan_to_text(c))


def load_fan(path: str) -> Complex:
    with open(path) as fh:
        return fan_from_text(fh.read())
