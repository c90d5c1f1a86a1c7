# -*- coding: utf-8 -*-
# experiments/field_io.py
"""
Field dump format:

    MAOB-FIELD v1
    <n> <q>
    <lo_0> <hi_0> <res_0> <lo_1> <hi_1> <res_1> ...
    one node value per line, row-major, 17 significant digits, nan outside the mask
"""
from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np

from errors import ConfigError
from geometry.grid import Grid, ScalarField

__all__ = ["MAGIC", "dump_field", "load_field"]

MAGIC = "MAOB-FIELD v1"


def dump_field(field: ScalarField, path: Union[str, Path]) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    g = field.grid
    axes = " ".join(f"{g.lo[i]!r} {g.hi[i]!r} {g.res[i]}" for i in range(g.n))
    q = 0.0 if field.q is None else float(field.q)
    with p.open("w", encoding="utf-8") as f:
        f.write(f"{MAGIC}\n{g.n} {q!r}\n{axes}\n")
        np.savetxt(f, field.masked().reshape(-1), fmt="%.17g")
    return p


def load_field(path: Union[str, Path]) -> ScalarField:
    p = Path(path)
    with p.open("r", encoding="utf-8") as f:
        magic = f.readline().strip()
        if magic != MAGIC:
            raise ConfigError(f"{p} is not a field dump (header '{magic}')")
        n_s, q_s = f.readline().split()
        n, q = int(n_s), float(q_s)
        parts = f.readline().split()
        if len(parts) != 3 * n:
            raise ConfigError(f"{p}: expected {3 * n} grid entries, found {len(parts)}")
        lo = tuple(float(parts[3 * i]) for i in range(n))
        hi = tuple(float(parts[3 * i + 1]) for i in range(n))
        res = tuple(int(parts[3 * i + 2]) for i in range(n))
        values = np.loadtxt(f, dtype=float, ndmin=1)
    grid = Grid(lo, hi, res)
    if values.size != grid.size:
        raise ConfigError(f"{p}: {values.size} values for {grid.size} nodes")
    values = values.reshape(grid.shape)
    mask = np.isfinite(values)
    return ScalarField(grid, np.where(mask, values, 0.0), mask, q)
