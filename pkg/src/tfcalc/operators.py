"""Weyl quantization, multilinear localization operators and their kernels.

Functions on the ``nd``-dimensional lattice are flattened in C order when
operators are written as matrices.  A symbol on the ``2nd``-dimensional
phase lattice is then an ``M x M`` array with ``M = N**(n*d)``: rows index
the space block, columns the frequency block.

The discrete Weyl operator is *defined* as the adjoint of the discrete
Wigner transform, ``<L_sigma f, g> = <sigma, W(g, f)>``.  Writing this out
gives the midpoint rule ``sigma((x + y)/2, w)`` with the midpoint taken by
trigonometric interpolation along the shorter periodic arc, which is the
same interpolation that the Wigner transform uses for its half shifts.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .grid import GridMismatchError, PhaseFn, Signal, cfft, icfft
from .modspaces import symbol_convolve
from .tf_transforms import (WindowVector, _as_vector, _stft_array,
                            halfshift_phase, stft_tensor, tensor_product,
                            wigner_multi)

__all__ = [
    "KERNEL_MAX_ENTRIES",
    "KernelSizeError",
    "Symbol",
    "Kernel",
    "LocalizationSpec",
    "weyl_apply",
    "weyl_apply_multi",
    "weyl_weak",
    "localization_apply",
    "localization_weak",
    "localization_kernel",
    "weyl_symbol_of_localization",
    "trace_restrict",
]

#: Largest dense kernel (number of complex entries) assembled by default.
KERNEL_MAX_ENTRIES = 1 << 26


class KernelSizeError(MemoryError):
    """A dense kernel would exceed the configured entry cap."""


@dataclass(frozen=True, eq=False)
class Symbol(PhaseFn):
    """Phase-space symbol, optionally remembering a tensor factorization.

    ``factors`` is either ``None`` or a tuple of ``n`` one-factor symbols
    whose outer product equals ``values``; the fast factor-wise paths use it.
    """

    factors: tuple = field(default=None, repr=False)

    @classmethod
    def wrap(cls, s, n=None):
        if isinstance(s, Symbol):
            return s
        if isinstance(s, PhaseFn):
            return cls(s.xgrid, s.values, s.n if n is None else n)
        raise TypeError(f"expected a PhaseFn, got {type(s).__name__}")

    @classmethod
    def tensor(cls, factors):
        """``a_1 (x) ... (x) a_n`` from one-factor symbols on a common grid."""
        from .tf_transforms import _outer_phase
        factors = tuple(cls.wrap(a) for a in factors)
        g = factors[0].xgrid
        for a in factors:
            if a.xgrid != g or a.n != 1:
                raise GridMismatchError("tensor factors must be n=1 symbols on one grid")
        n = len(factors)
        vals = _outer_phase([a.values for a in factors], n, g.d)
        return cls(g.with_dim(n * g.d), vals, n, factors)

    @classmethod
    def constant(cls, grid, value=1.0, n=1):
        big = grid.with_dim(n * grid.d)
        vals = np.full((grid.N,) * (2 * big.d), value, dtype=np.complex128)
        return cls(big, vals, n)

    def matrix(self):
        M = self.xgrid.size
        return self.values.reshape(M, M)


@dataclass(frozen=True, eq=False)
class Kernel:
    """Dense kernel ``k(t, s)`` on the ``nd``-dimensional lattice.

    Oriented so that ``(A f)(s) = int k(t, s) f(t) dt`` and therefore
    ``<A f, g> = <k, conj(f) (x) g>``.
    """

    grid: object
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        M = self.grid.size
        arr = np.asarray(self.matrix, dtype=np.complex128)
        if arr.shape != (M, M):
            raise ValueError(f"kernel of shape {arr.shape} does not match {(M, M)}")
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    def apply(self, f):
        if f.grid != self.grid:
            raise GridMismatchError("kernel and signal live on different grids")
        out = self.grid.cell_volume * (self.matrix.T @ f.values.ravel())
        return Signal(self.grid, out.reshape(self.grid.shape))

    def pair(self, f, g):
        """``<k, conj(f) (x) g>``, the kernel form of ``<A f, g>``."""
        fr, gr = f.values.ravel(), g.values.ravel()
        return complex(self.grid.cell_volume ** 2 * (fr @ self.matrix @ np.conj(gr)))


@dataclass(frozen=True)
class LocalizationSpec:
    """Symbol ``a`` with analysis windows ``phi`` and synthesis windows ``psi``."""

    symbol: Symbol
    analysis: WindowVector
    synthesis: WindowVector

    def __post_init__(self):
        object.__setattr__(self, "symbol", Symbol.wrap(self.symbol))
        object.__setattr__(self, "analysis", _as_vector(self.analysis, WindowVector))
        object.__setattr__(self, "synthesis", _as_vector(self.synthesis, WindowVector))
        n = self.symbol.n
        if self.analysis.n != n or self.synthesis.n != n:
            raise ValueError(f"symbol has n={n} but window vectors have "
                             f"{self.analysis.n} and {self.synthesis.n} entries")
        g = self.analysis.grid
        if self.synthesis.grid != g or self.symbol.xgrid != g.with_dim(n * g.d):
            raise GridMismatchError("symbol and windows live on different grids")

    @property
    def n(self):
        return self.symbol.n


def _check_cap(M, max_entries):
    cap = KERNEL_MAX_ENTRIES if max_entries is None else max_entries
    if M * M > cap:
        raise KernelSizeError(f"dense kernel needs {M * M} entries, cap is {cap}")


def _tensor_input(sigma, fv):
    fv = _as_vector(fv)
    if fv.n != sigma.n:
        raise ValueError(f"symbol has n={sigma.n} but {fv.n} signals were given")
    g = fv.grid
    if sigma.xgrid != g.with_dim(fv.n * g.d):
        raise GridMismatchError("symbol and signals live on different grids")
    return fv, tensor_product(fv.signals)


# -- Weyl ---------------------------------------------------------------------

def _weyl_spreading(sigma, grid):
    """Apply-ready spreading data ``B[m, t]`` with ``L f(t) = sum_m B[m, t] f(t - tau_m)``."""
    N, D = grid.N, grid.d
    cell = grid.cell_volume * grid.dual_cell_volume
    xax, wax = tuple(range(D)), tuple(range(D, 2 * D))
    # sum over p against exp(-2 pi i k.p/N) and over q against exp(+2 pi i q.m/N)
    R = cfft(sigma, xax)
    R = icfft(R, wax) * N ** D
    eta = np.transpose(R, wax + xax)  # [m, k]
    eta = cell ** 2 * np.conj(halfshift_phase(N, D)) * eta
    return icfft(eta, wax) * N ** D  # [m, t]


def _weyl_fft(sigma, f, grid):
    N, D = grid.N, grid.d
    M = grid.size
    B = _weyl_spreading(sigma, grid).reshape(M, M)
    T = _kernels.shift_table(N, D)
    fr = f.ravel()
    out = np.einsum("mt,mt->t", B, fr[T])
    return out.reshape(grid.shape)


def _weyl_kernel(sigma, grid):
    N, D = grid.N, grid.d
    M = grid.size
    Dt = _kernels.shift_table(N, D)
    Hc = _kernels.halfshift_table(N, D, conjugate=True)
    Eq = _kernels.exp_table(N, D, +1)
    return _kernels.weyl_kernel_direct(sigma.reshape(M, M), Dt, Hc, Eq, grid.dual_cell_volume)


def weyl_apply_multi(sigma, fv, method="fft", max_entries=None):
    """Multilinear Weyl operator ``L_sigma`` applied to ``f_1 (x) ... (x) f_n``.

    Parameters
    ----------
    sigma : Symbol or PhaseFn
        Symbol on the ``2nd``-dimensional phase lattice.
    fv : SignalVector or sequence of Signal
    method : {'fft', 'kernel'}
        ``'fft'`` works through the spreading function.  ``'kernel'`` builds
        the dense ``nd``-dimensional kernel from midpoint samples of ``sigma``
        (subject to ``max_entries``) and is the brute-force oracle.

    Returns
    -------
    Signal
        A function on the ``nd``-dimensional lattice.
    """
    sigma = Symbol.wrap(sigma)
    fv, F = _tensor_input(sigma, fv)
    grid = F.grid
    if method == "fft":
        return Signal(grid, _weyl_fft(sigma.values, F.values, grid))
    if method == "kernel":
        _check_cap(grid.size, max_entries)
        K = _weyl_kernel(sigma.values, grid)
        return Signal(grid, grid.cell_volume * (K @ F.values.ravel()).reshape(grid.shape))
    raise ValueError(f"unknown method {method!r}")


def weyl_apply(sigma, f, method="fft", max_entries=None):
    """Linear Weyl operator ``L_sigma f`` (``sigma`` with ``n = 1``)."""
    sigma = Symbol.wrap(sigma)
    if sigma.n != 1:
        raise ValueError("weyl_apply takes a one-factor symbol; use weyl_apply_multi")
    return weyl_apply_multi(sigma, (f,), method, max_entries)


def weyl_weak(sigma, fv, gv):
    """``<sigma, W(g, f)>`` over the phase lattice, the weak form of ``<L_sigma f, g>``."""
    sigma = Symbol.wrap(sigma)
    fv, gv = _as_vector(fv), _as_vector(gv)
    _tensor_input(sigma, fv)
    _tensor_input(sigma, gv)
    W = wigner_multi(gv, fv)
    return complex(sigma.cell_volume * np.vdot(W.values, sigma.values))


# -- localization ---------------------------------------------------------------

def _loc_fft(a, V, psi, grid):
    N, D = grid.N, grid.d
    M = grid.size
    wax = tuple(range(D, 2 * D))
    cell = grid.cell_volume * grid.dual_cell_volume
    S = (icfft(a * V, wax) * N ** D).reshape(M, M)  # [x, t]
    T = _kernels.shift_table(N, D)
    out = cell * np.einsum("xt,xt->t", S, psi.ravel()[T])
    return out.reshape(grid.shape)


def _loc_direct(a, V, psi, grid):
    N, D = grid.N, grid.d
    M = grid.size
    cell = grid.cell_volume * grid.dual_cell_volume
    out = _kernels.localization_direct(a.reshape(M, M), V.reshape(M, M), psi.ravel(),
                                       _kernels.shift_table(N, D),
                                       _kernels.exp_table(N, D, +1), cell)
    return out.reshape(grid.shape)


def localization_apply(spec, fv, method="auto"):
    """Multilinear localization operator ``A f`` on the ``nd``-dimensional lattice.

    Parameters
    ----------
    spec : LocalizationSpec
    fv : SignalVector or sequence of Signal
    method : {'auto', 'factor', 'fft', 'direct'}
        ``'factor'`` needs a tensor symbol and applies the ``n`` linear
        operators separately.  ``'fft'`` and ``'direct'`` act on the full
        ``2nd``-dimensional quadrature; ``'direct'`` sums it term by term.
        ``'auto'`` picks ``'factor'`` when possible, else ``'fft'``.
    """
    a = spec.symbol
    fv, F = _tensor_input(a, fv)
    if method == "auto":
        method = "factor" if a.factors is not None else "fft"
    if method == "factor":
        if a.factors is None:
            raise ValueError("factor-wise application needs a tensor symbol")
        parts = []
        for aj, f, phi, psi in zip(a.factors, fv, spec.analysis, spec.synthesis):
            V = _stft_array(f.values, phi.values, f.grid)
            parts.append(Signal(f.grid, _loc_fft(aj.values, V, psi.values, f.grid)))
        return tensor_product(parts)
    if method not in ("fft", "direct"):
        raise ValueError(f"unknown method {method!r}")
    grid = F.grid
    Psi = spec.synthesis.tensor()
    V = stft_tensor(fv, spec.analysis, method="direct" if method == "direct" else "fft").values
    run = _loc_fft if method == "fft" else _loc_direct
    return Signal(grid, run(a.values, V, Psi.values, grid))


def localization_weak(spec, fv, gv, form="stft"):
    """Weak form of ``<A f, g>`` through the short-time Fourier transforms.

    ``form='stft'`` evaluates ``<a V_phi f, V_psi g>``; ``form='symbol'``
    evaluates ``<a, conj(V_phi f) V_psi g>``.
    """
    a = spec.symbol
    fv, gv = _as_vector(fv), _as_vector(gv)
    _tensor_input(a, fv)
    _tensor_input(a, gv)
    Vf = stft_tensor(fv, spec.analysis).values
    Vg = stft_tensor(gv, spec.synthesis).values
    if form == "stft":
        return complex(a.cell_volume * np.vdot(Vg, a.values * Vf))
    if form == "symbol":
        return complex(a.cell_volume * np.vdot(np.conj(Vf) * Vg, a.values))
    raise ValueError(f"unknown form {form!r}")


def localization_kernel(spec, max_entries=None):
    """Dense kernel ``k(t, s) = int a(z) conj(pi(z) phi)(t) (pi(z) psi)(s) dz``."""
    a = spec.symbol
    grid = a.xgrid
    N, D, M = grid.N, grid.d, grid.size
    _check_cap(M, max_entries)
    wax = tuple(range(D, 2 * D))
    ahat = (icfft(a.values, wax) * N ** D).reshape(M, M)  # [x, r]
    T = _kernels.shift_table(N, D)
    cell = grid.cell_volume * grid.dual_cell_volume
    K = _kernels.localization_kernel_assemble(
        ahat, spec.analysis.tensor().values.ravel(), spec.synthesis.tensor().values.ravel(),
        T, T, cell)
    return Kernel(grid, K)


def weyl_symbol_of_localization(spec, method="fft"):
    """Weyl symbol ``a * W(psi, phi)`` of the localization operator."""
    a = spec.symbol
    W = wigner_multi(spec.synthesis, spec.analysis)
    return Symbol.wrap(symbol_convolve(a, W, method=method))


def trace_restrict(F, n):
    """Diagonal restriction ``F(t, ..., t)`` of a function on ``R^{nd}``."""
    g = F.grid
    if n < 1 or g.d % n:
        raise ValueError(f"n={n} does not divide the dimension {g.d}")
    d = g.d // n
    m = g.N ** d
    ar = np.arange(m)
    vals = F.values.reshape((m,) * n)[(ar,) * n]
    return Signal(g.with_dim(d), vals.reshape((g.N,) * d))
