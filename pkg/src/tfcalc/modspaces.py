"""Weighted Lebesgue, mixed-norm and modulation-space norms.

Exponents may be given as numbers, :class:`fractions.Fraction`, the string
``"inf"`` or ``math.inf``; ``1/inf`` is treated as 0 and every norm branches
to a supremum there.  Weights are polynomial brackets
``<z>^s = (1 + |z|^2)^(s/2)``.

Modulation norms of phase-space functions (Wigner transforms, Weyl symbols)
treat the phase lattice as a uniform lattice of ``R^{2D}``.  That requires
the space and frequency spacings to coincide, i.e. ``N == L**2``.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import _kernels
from .grid import GridMismatchError, PhaseFn, Signal, cfft, gaussian, icfft

__all__ = [
    "WeightParams",
    "as_exponent",
    "weight_eval",
    "lp_weighted_norm",
    "mixed_norm",
    "modulation_norm",
    "modulation_norm_multi",
    "phase_window",
    "phase_modulation_norm",
    "symbol_convolve",
]


@dataclass(frozen=True)
class WeightParams:
    """Powers of the weight ``<x>^t <w>^s``."""

    s: float = 0.0
    t: float = 0.0


def as_exponent(p):
    """Float value of a Lebesgue exponent in ``[1, inf]``."""
    if isinstance(p, str):
        if p.strip().lower() not in ("inf", "infinity", "oo"):
            raise ValueError(f"cannot parse exponent {p!r}")
        return math.inf
    val = float(p)
    if not val >= 1:
        raise ValueError(f"exponent must lie in [1, inf], got {p!r}")
    return val


def _bracket(sq, power):
    return (1.0 + sq) ** (power / 2.0)


def weight_eval(kind, params, point):
    """Evaluate a polynomial weight at one point.

    Parameters
    ----------
    kind : {'bracket_2d', 'bracket_space', 'bracket_freq', 'product'}
        ``bracket_2d`` is ``<(x, w)>^s`` with ``point = (x, w)`` flattened;
        ``bracket_space`` is ``<x>^t``; ``bracket_freq`` is ``<w>^s``;
        ``product`` is ``<x>^t <w>^s`` with ``point = (x, w)``, split in half.
    params : WeightParams or float
        A bare number is used as the single relevant power.
    point : array_like
    """
    if not isinstance(params, WeightParams):
        params = WeightParams(s=float(params), t=float(params))
    z = np.atleast_1d(np.asarray(point, dtype=float))
    if kind == "bracket_2d":
        return float(_bracket(np.sum(z ** 2), params.s))
    if kind == "bracket_space":
        return float(_bracket(np.sum(z ** 2), params.t))
    if kind == "bracket_freq":
        return float(_bracket(np.sum(z ** 2), params.s))
    if kind == "product":
        if z.size % 2:
            raise ValueError("product weight needs a point (x, w) of even length")
        h = z.size // 2
        return float(_bracket(np.sum(z[:h] ** 2), params.t) * _bracket(np.sum(z[h:] ** 2), params.s))
    raise ValueError(f"unknown weight kind {kind!r}")


def _lp(vals, p, cell, axes):
    """``(cell * sum |vals|^p)^(1/p)`` over ``axes``; ``p = inf`` gives the max."""
    a = np.abs(vals)
    if math.isinf(p):
        return a.max(axis=axes, initial=0.0)
    scale = a.max(axis=axes, keepdims=True, initial=0.0)
    safe = np.where(scale > 0, scale, 1.0)
    s = np.sum((a / safe) ** p, axis=axes) * cell
    return np.squeeze(safe, axis=axes) * s ** (1.0 / p)


def _radius_sq(grid, D, dual=False):
    ax = grid.dual_axis if dual else grid.axis
    mesh = np.meshgrid(*([ax] * D), indexing="ij")
    return sum(m ** 2 for m in mesh)


def lp_weighted_norm(f, p, t=0.0):
    """``||f <.>^t||_{L^p}`` by quadrature."""
    p = as_exponent(p)
    g = f.grid
    w = _bracket(g.radius_squared(), t)
    return float(_lp(f.values * w, p, g.cell_volume, tuple(range(g.d))))


def _weight(grid, D, s, t, weight):
    rx = _radius_sq(grid, D).reshape((grid.N,) * D + (1,) * D)
    rw = _radius_sq(grid, D, dual=True).reshape((1,) * D + (grid.N,) * D)
    if weight == "product":
        return _bracket(rx, t) * _bracket(rw, s)
    if weight == "bracket_2d":
        if t:
            raise ValueError("the joint bracket weight takes a single power s")
        return _bracket(rx + rw, s)
    raise ValueError(f"unknown weight {weight!r}")


def _mixed(vals, grid, D, p, q, s, t, weight="product"):
    x_axes = tuple(range(D))
    w = _weight(grid, D, s, t, weight)
    inner_norm = _lp(vals * w, p, grid.spacing ** D, x_axes)
    return float(_lp(inner_norm, q, grid.dual_spacing ** D, tuple(range(D))))


def mixed_norm(F, p, q, s=0.0, t=0.0, weight="product"):
    """Weighted ``L^{p,q}`` norm: inner over the ``x`` block, outer over ``w``.

    ``weight='product'`` is ``<x>^t <w>^s``; ``weight='bracket_2d'`` is the
    joint bracket ``<(x, w)>^s`` (then ``t`` must be 0).
    """
    p, q = as_exponent(p), as_exponent(q)
    return _mixed(F.values, F.xgrid, F.dim, p, q, s, t, weight)


def modulation_norm(f, p, q, s=0.0, t=0.0, window=None, weight="product"):
    """``||f||_{M^{p,q}_{s,t}}``, the mixed norm of ``V_window f``.

    The default window is the L2-normalized Gaussian.
    """
    from .tf_transforms import stft
    window = gaussian(f.grid) if window is None else window
    return mixed_norm(stft(f, window), p, q, s, t, weight)


def modulation_norm_multi(fv, p, q, s=0.0, t=0.0, wv=None, weight="product"):
    """Modulation norm of ``f_1 (x) ... (x) f_n`` via the multilinear STFT."""
    from .tf_transforms import SignalVector, WindowVector, _as_vector, stft_tensor
    fv = _as_vector(fv, SignalVector)
    if wv is None:
        wv = WindowVector(tuple(gaussian(fv.grid) for _ in range(fv.n)))
    return mixed_norm(stft_tensor(fv, wv), p, q, s, t, weight)


def phase_window(grid, D):
    """``W(gamma, gamma) = 2^D exp(-2 pi |z|^2)`` on a self-dual ``2D``-dimensional grid.

    ``gamma`` is the normalized Gaussian on ``R^D``; this is the window for
    which the Weyl-operator bound by the ``M^{inf,1}`` norm has constant 1.
    """
    g2 = grid.with_dim(2 * D)
    return Signal(g2, 2.0 ** D * np.exp(-2 * np.pi * g2.radius_squared()))


def phase_modulation_norm(F, p, q, s=0.0, t=0.0, window=None, weight="product"):
    """Modulation norm of a phase-space function (symbol or Wigner transform).

    ``F`` is viewed as a signal on ``R^{2D}``; ``window`` defaults to
    :func:`phase_window`.
    """
    from .tf_transforms import stft
    sig = F.as_signal()
    window = phase_window(F.xgrid, F.dim) if window is None else window
    return mixed_norm(stft(sig, window), p, q, s, t, weight)


def symbol_convolve(a, b, method="fft"):
    """Periodic convolution ``(a * b)(z) = int a(y) b(z - y) dy`` on the phase lattice."""
    if a.xgrid != b.xgrid or a.n != b.n:
        raise GridMismatchError("symbols live on different phase lattices")
    cell = a.cell_volume
    if method == "fft":
        axes = tuple(range(a.values.ndim))
        vals = cell * icfft(cfft(a.values, axes) * cfft(b.values, axes), axes)
    elif method == "direct":
        N, P = a.xgrid.N, a.values.ndim
        Dz = _kernels.shift_table(N, P)
        vals = _kernels.convolve_direct(a.values.ravel(), b.values.ravel(), Dz, cell)
    else:
        raise ValueError(f"unknown method {method!r}")
    return PhaseFn(a.xgrid, np.reshape(vals, a.values.shape), a.n)
