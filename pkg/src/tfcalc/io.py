"""Columnar CSV serialization with a JSON metadata sidecar.

A function on a lattice is written as one CSV row per sample with columns
``i1, ..., iK, re, im`` (array indices, C order).  The sidecar
``<file>.json`` carries ``{kind, d, N, L, n, axis_order}``.
"""

import csv
import json
import os

import numpy as np

from .grid import Grid, PhaseFn, Signal

__all__ = ["sidecar_path", "write", "read", "write_kernel", "read_kernel"]


def sidecar_path(path):
    return os.fspath(path) + ".json"


def _write_rows(path, values, names):
    arr = np.asarray(values)
    idx = np.indices(arr.shape).reshape(arr.ndim, -1).T
    flat = arr.ravel()
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names + ["re", "im"])
        for ij, v in zip(idx, flat):
            w.writerow([*map(int, ij), format(float(v.real), ".17g"), format(float(v.imag), ".17g")])


def _read_rows(path, shape):
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    k = len(header) - 2
    if k != len(shape) or header[-2:] != ["re", "im"]:
        raise ValueError(f"{path}: header {header} does not match {len(shape)} index columns")
    out = np.zeros(shape, dtype=np.complex128)
    for r in body:
        ij = tuple(int(x) for x in r[:k])
        out[ij] = complex(float(r[k]), float(r[k + 1]))
    if len(body) != out.size:
        raise ValueError(f"{path}: expected {out.size} rows, found {len(body)}")
    return out


def write(path, obj):
    """Write a :class:`Signal` or :class:`PhaseFn` and its sidecar."""
    if isinstance(obj, PhaseFn):
        g = obj.xgrid
        meta = {"kind": "phase", "d": obj.d, "N": g.N, "L": g.L, "n": obj.n,
                "axis_order": obj.axis_order}
    elif isinstance(obj, Signal):
        g = obj.grid
        meta = {"kind": "signal", "d": g.d, "N": g.N, "L": g.L, "n": 1,
                "axis_order": [f"x{i + 1}" for i in range(g.d)]}
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    _write_rows(path, obj.values, [f"i_{a}" for a in meta["axis_order"]])
    with open(sidecar_path(path), "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")


def read(path):
    """Read back what :func:`write` produced."""
    with open(sidecar_path(path), encoding="utf-8") as fh:
        meta = json.load(fh)
    kind = meta.get("kind")
    n = int(meta.get("n", 1))
    d = int(meta["d"])
    if kind == "signal":
        g = Grid(d, int(meta["N"]), float(meta["L"]))
        return Signal(g, _read_rows(path, g.shape))
    if kind == "phase":
        g = Grid(n * d, int(meta["N"]), float(meta["L"]))
        return PhaseFn(g, _read_rows(path, (g.N,) * (2 * g.d)), n)
    raise ValueError(f"{path}: unknown kind {kind!r}")


def write_kernel(path, kernel):
    """Dense kernel as ``(row, col, re, im)`` rows plus sidecar."""
    g = kernel.grid
    _write_rows(path, kernel.matrix, ["t", "s"])
    meta = {"kind": "kernel", "d": g.d, "N": g.N, "L": g.L, "n": 1,
            "axis_order": ["t", "s"], "orientation": "(A f)(s) = sum_t k(t, s) f(t) dt"}
    with open(sidecar_path(path), "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")


def read_kernel(path):
    from .operators import Kernel
    with open(sidecar_path(path), encoding="utf-8") as fh:
        meta = json.load(fh)
    if meta.get("kind") != "kernel":
        raise ValueError(f"{path}: not a kernel file")
    g = Grid(int(meta["d"]), int(meta["N"]), float(meta["L"]))
    return Kernel(g, _read_rows(path, (g.size, g.size)))
