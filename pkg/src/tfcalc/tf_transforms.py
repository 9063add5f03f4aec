"""Time-frequency shifts, short-time Fourier and Wigner transforms.

Conventions
-----------
``V_g f(x, w) = int f(t) conj(g(t - x)) exp(-2 pi i w.t) dt`` and
``W(f, g)(x, w) = int f(x + t/2) conj(g(x - t/2)) exp(-2 pi i w.t) dt``.
Both are evaluated on the lattice times the dual lattice.

The half shifts ``x +- t/2`` are handled in the ambiguity domain: ``W`` is
the symplectic Fourier transform of ``exp(i pi tau.nu) V_g f(tau, nu)``.
Multiplying by ``exp(i pi tau.nu)`` is the Fourier-side form of trigonometric
interpolation at half-lattice points.  At the two edges ``tau = -L/2`` and
``nu = -N/(2L)`` the representative of the lag (resp. frequency) is picked
by the sign of the other coordinate, which keeps the phase unimodular and
Hermitian.  As a result the discrete transform satisfies exactly, up to
rounding:

* Moyal: ``<W(f1,g1), W(f2,g2)> = <f1,f2> conj(<g1,g2>)``
* covariance under lattice time-frequency shifts
* ``W(g, f) = conj(W(f, g))`` and the marginal ``sum W(f, f) = ||f||^2``.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .grid import GridMismatchError, PhaseFn, Signal, cfft, icfft

__all__ = [
    "SignalVector",
    "WindowVector",
    "translate",
    "modulate",
    "involution",
    "stft",
    "stft_tensor",
    "wigner",
    "wigner_multi",
    "tensor_product",
    "halfshift_phase",
]


@dataclass(frozen=True)
class SignalVector:
    """Ordered tuple ``(f_1, ..., f_n)`` on a common grid.

    Also stands for the tensor product ``f_1 (x) ... (x) f_n``.
    """

    signals: tuple

    def __post_init__(self):
        sigs = tuple(self.signals)
        if not sigs:
            raise ValueError("a signal vector needs at least one entry")
        grid = sigs[0].grid
        for s in sigs[1:]:
            if s.grid != grid:
                raise GridMismatchError("signal vector entries live on different grids")
        object.__setattr__(self, "signals", sigs)

    @property
    def n(self):
        return len(self.signals)

    @property
    def grid(self):
        return self.signals[0].grid

    def __len__(self):
        return len(self.signals)

    def __iter__(self):
        return iter(self.signals)

    def __getitem__(self, i):
        return self.signals[i]

    def tensor(self):
        return tensor_product(self.signals)


class WindowVector(SignalVector):
    """Signal vector whose entries are all nonzero windows."""

    def __post_init__(self):
        super().__post_init__()
        for s in self.signals:
            _check_window(s)


def _as_vector(v, cls=SignalVector):
    if isinstance(v, cls):
        return v
    if isinstance(v, Signal):
        v = (v,)
    return cls(tuple(v))


def _check_window(g):
    if float(np.abs(g.values).max(initial=0.0)) <= 1e-14:
        raise ValueError("window must be nonzero")


def tensor_product(signals):
    """``f_1 (x) ... (x) f_n`` as a signal on the ``n*d`` dimensional grid."""
    signals = list(signals)
    vals = signals[0].values
    for s in signals[1:]:
        vals = np.multiply.outer(vals, s.values)
    g = signals[0].grid
    return Signal(g.with_dim(g.d * len(signals)), vals)


# -- time-frequency shifts --------------------------------------------------

def _per_axis(value, d):
    arr = np.atleast_1d(np.asarray(value, dtype=float))
    if arr.size == 1:
        arr = np.full(d, float(arr[0]))
    if arr.shape != (d,):
        raise ValueError(f"expected a scalar or {d} coordinates, got {value!r}")
    return arr


def translate(f, x0):
    """``T_x0 f = f(. - x0)``; ``x0`` must be a multiple of the spacing."""
    g = f.grid
    shifts = []
    for c in _per_axis(x0, g.d):
        k = c / g.spacing
        if abs(k - round(k)) > 1e-9 * max(1.0, abs(k)):
            raise ValueError(f"translation {c!r} is not on the lattice (spacing {g.spacing})")
        shifts.append(int(round(k)))
    return Signal(g, np.roll(f.values, shifts, axis=tuple(range(g.d))))


def modulate(f, w0):
    """``M_w0 f = exp(2 pi i w0.x) f``; ``w0`` must be on the dual lattice."""
    g = f.grid
    w0 = _per_axis(w0, g.d)
    for w in w0:
        k = w * g.L
        if abs(k - round(k)) > 1e-9 * max(1.0, abs(k)):
            raise ValueError(f"modulation {w!r} is not on the dual lattice (spacing {1 / g.L})")
    phase = sum(w * c for w, c in zip(w0, g.mesh()))
    return Signal(g, f.values * np.exp(2j * np.pi * phase))


def involution(f):
    """``f*(t) = conj(f(-t))`` with periodic reflection through the origin."""
    vals = f.values
    for ax in range(f.grid.d):
        vals = np.roll(np.flip(vals, axis=ax), 1, axis=ax)
    return Signal(f.grid, np.conj(vals))


# -- STFT -------------------------------------------------------------------

@lru_cache(maxsize=32)
def _tables(N, D):
    T = _kernels.shift_table(N, D)
    T.setflags(write=False)
    return T


def _stft_fft(f, g, grid, chunk_entries=1 << 22):
    """Fast STFT of ``D``-dimensional arrays, one FFT per translate.

    Translates are processed in chunks along the flattened shift index so
    that at most ``chunk_entries`` samples are held at once.
    """
    N, D = grid.N, f.ndim
    M = N ** D
    c = _kernels.lattice_coords(N, D)
    gc = np.conj(g).ravel()
    fr = f.ravel()
    out = np.empty((M,) + (N,) * D, dtype=np.complex128)
    step = max(1, chunk_entries // M)
    for lo in range(0, M, step):
        rows = c[lo:lo + step]
        idx = _kernels._flat((c[None, :, :] - rows[:, None, :] + N // 2) % N, N)
        H = (fr[None, :] * gc[idx]).reshape((-1,) + (N,) * D)
        out[lo:lo + step] = cfft(H, range(1, D + 1))
    return grid.cell_volume * out.reshape((N,) * (2 * D))


def _stft_array(f, g, grid, method="fft"):
    if method == "fft":
        return _stft_fft(f, g, grid)
    if method == "direct":
        N, D = grid.N, f.ndim
        V = _kernels.stft_direct(f.ravel(), g.ravel(), _tables(N, D),
                                 _kernels.exp_table(N, D, -1), grid.cell_volume)
        return V.reshape((N,) * (2 * D))
    raise ValueError(f"unknown method {method!r}")


def stft(f, g, method="fft"):
    """Short-time Fourier transform ``V_g f`` on the phase lattice.

    Parameters
    ----------
    f, g : Signal
        Signal and window on a common grid (any dimension).
    method : {'fft', 'direct'}
        ``'direct'`` is the independent brute-force summation.
    """
    if f.grid != g.grid:
        raise GridMismatchError("signal and window live on different grids")
    _check_window(g)
    return PhaseFn(f.grid, _stft_array(f.values, g.values, f.grid, method))


def _block_order(n, d):
    """Permutation turning (x1, w1, x2, w2, ...) into (x1, x2, ..., w1, w2, ...)."""
    xs = [j * 2 * d + a for j in range(n) for a in range(d)]
    ws = [j * 2 * d + d + a for j in range(n) for a in range(d)]
    return xs + ws


def _outer_phase(arrays, n, d):
    vals = arrays[0]
    for a in arrays[1:]:
        vals = np.multiply.outer(vals, a)
    return np.transpose(vals, _block_order(n, d))


def stft_tensor(fv, wv, method="fft"):
    """Multilinear STFT ``V_{phi-vec} f-vec`` on the ``2nd``-dimensional lattice.

    Computed as the outer product of the factor transforms.  ``method='direct'``
    instead runs the brute-force sum over the full ``nd``-dimensional lattice
    on the tensor products.
    """
    fv = _as_vector(fv)
    wv = _as_vector(wv, WindowVector)
    if fv.n != wv.n:
        raise ValueError(f"signal vector has {fv.n} entries, window vector {wv.n}")
    if fv.grid != wv.grid:
        raise GridMismatchError("signals and windows live on different grids")
    n, grid = fv.n, fv.grid
    big = grid.with_dim(n * grid.d)
    if method == "direct":
        vals = _stft_array(fv.tensor().values, wv.tensor().values, big, "direct")
    else:
        parts = [_stft_array(f.values, w.values, grid, method) for f, w in zip(fv, wv)]
        vals = _outer_phase(parts, n, grid.d)
    return PhaseFn(big, vals, n)


# -- Wigner -----------------------------------------------------------------

def halfshift_phase(N, D):
    """Phase ``exp(i pi tau.nu)`` on the ambiguity lattice, shape ``(N,)*(2D)``."""
    ph1 = _kernels.halfshift_phase_1d(N)
    out = np.ones((N,) * (2 * D), dtype=np.complex128)
    for a in range(D):
        shape = [1] * (2 * D)
        shape[a] = N
        shape[D + a] = N
        out = out * ph1.reshape(shape)
    return out


def _wigner_fft(f, g, grid):
    N, D = grid.N, f.ndim
    V = _stft_fft(f, g, grid) * halfshift_phase(N, D)
    xax = tuple(range(D))
    wax = tuple(range(D, 2 * D))
    R = cfft(V, xax)  # lag -> frequency
    R = icfft(R, wax) * N ** D  # frequency -> position
    R *= grid.cell_volume * grid.dual_cell_volume
    return np.transpose(R, tuple(range(D, 2 * D)) + tuple(range(D)))


def _wigner_array(f, g, grid, method="fft"):
    if method == "fft":
        return _wigner_fft(f, g, grid)
    if method == "direct":
        N, D = grid.N, f.ndim
        T = _tables(N, D)
        H = _kernels.halfshift_table(N, D)
        Eq = _kernels.exp_table(N, D, -1)
        W = _kernels.wigner_direct(f.ravel(), g.ravel(), T, T, H, Eq, grid.cell_volume)
        return W.reshape((N,) * (2 * D))
    raise ValueError(f"unknown method {method!r}")


def wigner(f, g, method="fft"):
    """Cross-Wigner distribution ``W(f, g)`` on the phase lattice.

    ``method='direct'`` sums the lag products explicitly, interpolating them
    at the half-lattice points with the same trigonometric weights; it shares
    no FFT code with the fast path.
    """
    if f.grid != g.grid:
        raise GridMismatchError("signals live on different grids")
    return PhaseFn(f.grid, _wigner_array(f.values, g.values, f.grid, method))


def wigner_multi(fv, gv, method="fft"):
    """Multilinear Wigner ``W(f-vec, g-vec)``, the outer product of factor transforms."""
    fv, gv = _as_vector(fv), _as_vector(gv)
    if fv.n != gv.n:
        raise ValueError(f"vectors have {fv.n} and {gv.n} entries")
    if fv.grid != gv.grid:
        raise GridMismatchError("vectors live on different grids")
    n, grid = fv.n, fv.grid
    big = grid.with_dim(n * grid.d)
    if method == "direct":
        vals = _wigner_array(fv.tensor().values, gv.tensor().values, big, "direct")
    else:
        parts = [_wigner_array(f.values, g.values, grid, method) for f, g in zip(fv, gv)]
        vals = _outer_phase(parts, n, grid.d)
    return PhaseFn(big, vals, n)
