"""StateField import/export: flat binary or CSV plus a JSON grid header.

The flat data is ordered with axis 0 fastest (Fortran flattening).  Binary
files hold interleaved float64 (re, im) pairs; CSV files hold rows of
``index,re,im``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .grids import GridSpec, StateField

HEADER_SCHEMA = 1


def _header_path(data_path: Path) -> Path:
    return data_path.with_suffix(data_path.suffix + ".json")


def save_field(phi: StateField, data_path, fmt: str = "bin") -> None:
    """Write field data plus a sidecar JSON header describing the grid."""
    if fmt not in ("bin", "csv"):
        raise ValueError(f"unknown format {fmt!r}")
    data_path = Path(data_path)
    flat = phi.values.flatten(order="F")
    if fmt == "bin":
        flat.astype(np.complex128).tofile(data_path)
    else:
        with open(data_path, "w") as fh:
            for idx, z in enumerate(flat):
                fh.write(f"{idx},{float(z.real)!r},{float(z.imag)!r}\n")
    header = {
        "schema": HEADER_SCHEMA,
        "format": fmt,
        "count": int(flat.size),
        "grid": phi.grid.to_dict(),
    }
    with open(_header_path(data_path), "w") as fh:
        json.dump(header, fh, indent=2)
        fh.write("\n")


def load_field(data_path) -> StateField:
    """Read a field written by :func:`save_field`."""
    data_path = Path(data_path)
    with open(_header_path(data_path)) as fh:
        header = json.load(fh)
    if header.get("schema") != HEADER_SCHEMA:
        raise ValueError(f"unsupported header schema {header.get('schema')!r}")
    grid = GridSpec.from_dict(header["grid"])
    count = int(header["count"])
    if count != grid.N ** grid.n:
        raise ValueError("header count does not match the grid size")
    if header["format"] == "bin":
        flat = np.fromfile(data_path, dtype=np.complex128)
    elif header["format"] == "csv":
        rows = np.loadtxt(data_path, delimiter=",").reshape(-1, 3)
        order = np.argsort(rows[:, 0].astype(int))
        rows = rows[order]
        flat = rows[:, 1] + 1j * rows[:, 2]
    else:
        raise ValueError(f"unknown format {header['format']!r}")
    if flat.size != count:
        raise ValueError("data size does not match the header")
    values = flat.reshape(grid.shape, order="F")
    return StateField(grid, values)
