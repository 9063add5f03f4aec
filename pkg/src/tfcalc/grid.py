"""Periodic sampling grids, sampled functions and quadrature.

The continuum ``R^d`` is modelled by the periodic box ``[-L/2, L/2)^d``
sampled at ``N`` points per axis.  Every integral in the package is a
Riemann sum with cell volume ``spacing**d`` (space side) or
``dual_spacing**d`` (frequency side).

Array layout
------------
A function on a ``d``-dimensional grid is stored as an ``ndarray`` of shape
``(N,) * d``.  Index ``j`` along an axis is the point ``-L/2 + j*L/N``;
index ``k`` along a frequency axis is ``(k - N/2) / L``.  Both axes are
therefore sorted, and the origin sits at index ``N // 2``.
"""

from dataclasses import dataclass, field
import math

import numpy as np

__all__ = [
    "GridMismatchError",
    "Grid",
    "Signal",
    "PhaseFn",
    "make_grid",
    "inner",
    "norm",
    "fourier",
    "inverse_fourier",
    "upsample2",
    "gaussian",
    "hermite1",
    "random_test_signal",
    "cfft",
    "icfft",
]


class GridMismatchError(ValueError):
    """Raised when operands live on incompatible grids."""


@dataclass(frozen=True)
class Grid:
    """Uniform periodic lattice on ``[-L/2, L/2)^d``.

    Parameters
    ----------
    d : int
        Spatial dimension.
    N : int
        Samples per axis, even and at least 4.
    L : float
        Period length per axis.
    """

    d: int
    N: int
    L: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.d!r}")
        if int(self.N) != self.N or self.N < 4:
            raise ValueError(f"N must be an integer >= 4, got {self.N!r}")
        if self.N % 2:
            raise ValueError(f"N must be even, got {self.N}")
        if not (self.L > 0 and math.isfinite(self.L)):
            raise ValueError(f"L must be positive and finite, got {self.L!r}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "L", float(self.L))

    @property
    def spacing(self):
        return self.L / self.N

    @property
    def dual_spacing(self):
        return 1.0 / self.L

    @property
    def dual_extent(self):
        return self.N / self.L

    @property
    def shape(self):
        return (self.N,) * self.d

    @property
    def size(self):
        return self.N ** self.d

    @property
    def cell_volume(self):
        return self.spacing ** self.d

    @property
    def dual_cell_volume(self):
        return self.dual_spacing ** self.d

    @property
    def axis(self):
        """Sample points of one axis, ``-L/2 + j*L/N``."""
        return -self.L / 2 + self.spacing * np.arange(self.N)

    @property
    def dual_axis(self):
        """Frequencies of one axis, ``k/L`` for ``k = -N/2 .. N/2-1``."""
        return (np.arange(self.N) - self.N // 2) / self.L

    def dual(self):
        """The frequency lattice viewed as a grid in its own right."""
        return Grid(self.d, self.N, self.dual_extent)

    def mesh(self):
        """Coordinate arrays, one per axis, each of shape ``self.shape``."""
        return np.meshgrid(*([self.axis] * self.d), indexing="ij")

    def radius_squared(self):
        return sum(c ** 2 for c in self.mesh())

    def is_self_dual(self, rtol=1e-12):
        """True when the space and frequency spacings coincide (``N == L**2``)."""
        return math.isclose(self.spacing, self.dual_spacing, rel_tol=rtol)

    def with_dim(self, d):
        return Grid(d, self.N, self.L)

    def lattice_index(self, point):
        """Axis index of a lattice coordinate; raises if off-lattice."""
        return _lattice_index(point, -self.L / 2, self.spacing, self.N, "lattice")

    def dual_index(self, freq):
        """Axis index of a dual-lattice frequency; raises if off-lattice."""
        return _lattice_index(freq, -self.dual_extent / 2, self.dual_spacing, self.N,
                              "dual lattice")


def _lattice_index(value, origin, step, n, what):
    pos = (float(value) - origin) / step
    k = round(pos)
    if abs(pos - k) > 1e-9 * max(1.0, abs(pos)):
        raise ValueError(f"{value!r} is not a {what} point (step {step})")
    return k % n


def make_grid(d=1, N=64, L=8.0):
    """Build a :class:`Grid`; the defaults are the desk-scale ``d=1, N=64, L=8``."""
    return Grid(d, N, L)


def _as_values(grid, values, shape=None):
    arr = np.array(values, dtype=np.complex128)
    expected = grid.shape if shape is None else shape
    if arr.size == int(np.prod(expected)) and arr.shape != expected:
        arr = arr.reshape(expected)
    if arr.shape != expected:
        raise ValueError(f"values of shape {arr.shape} do not match {expected}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Signal:
    """Complex function sampled on a :class:`Grid`."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", _as_values(self.grid, self.values))

    @classmethod
    def zeros(cls, grid):
        return cls(grid, np.zeros(grid.shape, dtype=np.complex128))

    @classmethod
    def from_function(cls, grid, fn):
        """Sample ``fn(*coords)`` on the grid."""
        return cls(grid, fn(*grid.mesh()))

    def conj(self):
        return Signal(self.grid, np.conj(self.values))

    def is_finite(self):
        return bool(np.all(np.isfinite(self.values)))

    def _check(self, other):
        if not isinstance(other, Signal) or other.grid != self.grid:
            raise GridMismatchError("signals live on different grids")

    def __add__(self, other):
        self._check(other)
        return Signal(self.grid, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return Signal(self.grid, self.values - other.values)

    def __mul__(self, alpha):
        if isinstance(alpha, Signal):
            self._check(alpha)
            return Signal(self.grid, self.values * alpha.values)
        return Signal(self.grid, alpha * self.values)

    __rmul__ = __mul__

    def __neg__(self):
        return Signal(self.grid, -self.values)


@dataclass(frozen=True, eq=False)
class PhaseFn:
    """Complex function on the phase-space lattice of ``xgrid``.

    ``xgrid`` has dimension ``n*d``.  Axis order of ``values`` is fixed: all
    ``n*d`` space axes first (factor by factor), then all ``n*d`` frequency
    axes in the same order.
    """

    xgrid: Grid
    values: np.ndarray = field(repr=False)
    n: int = 1

    def __post_init__(self):
        if self.n < 1 or self.xgrid.d % self.n:
            raise ValueError(f"n={self.n} does not divide the phase dimension {self.xgrid.d}")
        shape = (self.xgrid.N,) * (2 * self.xgrid.d)
        object.__setattr__(self, "values", _as_values(self.xgrid, self.values, shape))

    @property
    def wgrid(self):
        return self.xgrid.dual()

    @property
    def d(self):
        return self.xgrid.d // self.n

    @property
    def dim(self):
        """Number of space axes (``n*d``)."""
        return self.xgrid.d

    @property
    def cell_volume(self):
        return self.xgrid.cell_volume * self.xgrid.dual_cell_volume

    @property
    def axis_order(self):
        nd = self.xgrid.d
        return [f"x{i + 1}" for i in range(nd)] + [f"w{i + 1}" for i in range(nd)]

    @classmethod
    def zeros(cls, xgrid, n=1):
        return cls(xgrid, np.zeros((xgrid.N,) * (2 * xgrid.d), dtype=np.complex128), n)

    @classmethod
    def from_function(cls, xgrid, fn, n=1):
        """Sample ``fn(x_1..x_D, w_1..w_D)`` on the phase lattice."""
        axes = [xgrid.axis] * xgrid.d + [xgrid.dual_axis] * xgrid.d
        return cls(xgrid, fn(*np.meshgrid(*axes, indexing="ij")), n)

    def phase_mesh(self):
        axes = [self.xgrid.axis] * self.dim + [self.xgrid.dual_axis] * self.dim
        return np.meshgrid(*axes, indexing="ij")

    def as_signal(self):
        """View on the ``2*n*d`` dimensional grid; needs a self-dual ``xgrid``."""
        if not self.xgrid.is_self_dual():
            raise GridMismatchError(
                "phase-space function can be treated as a signal only on a "
                f"self-dual grid (N == L**2); got N={self.xgrid.N}, L={self.xgrid.L}")
        return Signal(self.xgrid.with_dim(2 * self.dim), self.values)

    def conj(self):
        return PhaseFn(self.xgrid, np.conj(self.values), self.n)

    def _check(self, other):
        if not isinstance(other, PhaseFn) or other.xgrid != self.xgrid or other.n != self.n:
            raise GridMismatchError("phase functions live on different lattices")

    def __add__(self, other):
        self._check(other)
        return PhaseFn(self.xgrid, self.values + other.values, self.n)

    def __sub__(self, other):
        self._check(other)
        return PhaseFn(self.xgrid, self.values - other.values, self.n)

    def __mul__(self, alpha):
        if isinstance(alpha, PhaseFn):
            self._check(alpha)
            return PhaseFn(self.xgrid, self.values * alpha.values, self.n)
        return PhaseFn(self.xgrid, alpha * self.values, self.n)

    __rmul__ = __mul__

    def __neg__(self):
        return PhaseFn(self.xgrid, -self.values, self.n)


def cfft(a, axes):
    """Unnormalized DFT with the origin at index ``N//2`` on both sides."""
    axes = tuple(axes)
    return np.fft.fftshift(np.fft.fftn(np.fft.ifftshift(a, axes=axes), axes=axes), axes=axes)


def icfft(a, axes):
    """Inverse of :func:`cfft` (includes the ``1/N`` factors)."""
    axes = tuple(axes)
    return np.fft.fftshift(np.fft.ifftn(np.fft.ifftshift(a, axes=axes), axes=axes), axes=axes)


def inner(f, g):
    """Quadrature of ``<f, g> = int f conj(g)``."""
    f._check(g)
    return complex(f.grid.cell_volume * np.vdot(g.values, f.values))


def norm(f):
    return math.sqrt(max(inner(f, f).real, 0.0))


def fourier(f):
    """``f^(w) = int f(t) exp(-2 pi i w.t) dt`` on the dual lattice."""
    axes = range(f.grid.d)
    return Signal(f.grid.dual(), f.grid.cell_volume * cfft(f.values, axes))


def inverse_fourier(F):
    """Inverse of :func:`fourier`; ``F`` lives on a dual grid."""
    primal = F.grid.dual()
    axes = range(F.grid.d)
    vals = F.grid.cell_volume * F.grid.N ** F.grid.d * icfft(F.values, axes)
    return Signal(primal, vals)


def _upsample_axis(a, axis):
    n = a.shape[axis]
    spec = np.moveaxis(cfft(a, (axis,)), axis, 0)
    out = np.zeros((2 * n,) + spec.shape[1:], dtype=np.complex128)
    out[n // 2 + 1: n // 2 + n] = spec[1:]
    # split the Nyquist coefficient evenly so real input stays real
    out[n // 2] = spec[0] / 2
    out[n // 2 + n] = spec[0] / 2
    return np.moveaxis(2 * icfft(out, (0,)), 0, axis)


def upsample2(f):
    """Trigonometric interpolation onto ``Grid(d, 2N, L)`` by zero padding."""
    vals = f.values
    for ax in range(f.grid.d):
        vals = _upsample_axis(vals, ax)
    return Signal(Grid(f.grid.d, 2 * f.grid.N, f.grid.L), vals)


def gaussian(grid, center=None, freq=None):
    """L2-normalized Gaussian ``2^(d/4) exp(-pi |t - center|^2)``, optionally modulated."""
    coords = grid.mesh()
    center = np.zeros(grid.d) if center is None else np.broadcast_to(center, (grid.d,))
    r2 = sum((c - c0) ** 2 for c, c0 in zip(coords, center))
    vals = 2 ** (grid.d / 4) * np.exp(-np.pi * r2)
    if freq is not None:
        freq = np.broadcast_to(freq, (grid.d,))
        vals = vals * np.exp(2j * np.pi * sum(w * c for w, c in zip(freq, coords)))
    return Signal(grid, vals)


def hermite1(grid):
    """L2-normalized first Hermite function along the first axis."""
    coords = grid.mesh()
    r2 = sum(c ** 2 for c in coords)
    vals = 2 ** (grid.d / 4) * 2 * math.sqrt(math.pi) * coords[0] * np.exp(-np.pi * r2)
    return Signal(grid, vals)


_BOUNDARY_TOL = 1e-13


def _boundary_max(vals, width=2):
    edge = np.zeros(vals.shape, dtype=bool)
    for ax in range(vals.ndim):
        idx = [slice(None)] * vals.ndim
        idx[ax] = np.r_[0:width, vals.shape[ax] - width: vals.shape[ax]]
        edge[tuple(idx)] = True
    return float(np.abs(vals[edge]).max())


def random_test_signal(seed, grid, max_shift=None, max_freq=None, precision_scale=1.0):
    """Reproducible smooth, rapidly decaying test signal of unit L2 norm.

    A sum of one to three terms, each a complex polynomial of degree at most
    three times a Gaussian envelope, shifted to a random lattice point and
    modulated by a random dual-lattice frequency.  Envelopes start at the
    grid's balanced width (``exp(-pi N t^2 / L^2)``) and are tightened until
    the samples in the two outermost shells fall below ``1e-13``.

    Parameters
    ----------
    seed : int
    grid : Grid
    max_shift, max_freq : int, optional
        Largest shift in lattice cells (default ``N // 8``) and largest
        modulation in dual-lattice cells (default ``max(1, N // 16)``).
    precision_scale : float
        Dilation applied after the envelopes have been localized: every
        precision is multiplied by this factor.  Values above 1 give narrower
        envelopes in time and wider ones in frequency.  The boundary bound is
        only guaranteed for ``precision_scale >= 1``.
    """
    rng = np.random.default_rng(seed)
    N, L, d = grid.N, grid.L, grid.d
    nterms = int(rng.integers(1, 4))
    kmax = max(1, N // 16) if max_freq is None else int(max_freq)
    cmax = max(0, N // 8) if max_shift is None else int(max_shift)
    terms = []
    for _ in range(nterms):
        shift = rng.integers(-cmax, cmax + 1, size=d) * grid.spacing
        freq = rng.integers(-kmax, kmax + 1, size=d) / L
        deg = rng.integers(0, 4, size=d)
        coefs = [(rng.normal(size=k + 1) + 1j * rng.normal(size=k + 1))
                 / np.array([math.factorial(j) for j in range(k + 1)]) for k in deg]
        amp = complex(rng.normal(), rng.normal())
        prec = (N / L ** 2) * 2.0 ** rng.uniform(-0.5, 0.5)
        terms.append((shift, freq, coefs, amp, prec))

    coords = grid.mesh()

    def build(scale):
        vals = np.zeros(grid.shape, dtype=np.complex128)
        for shift, freq, coefs, amp, prec in terms:
            a = prec * scale
            term = np.full(grid.shape, amp, dtype=np.complex128)
            for ax in range(d):
                u = (coords[ax] - shift[ax]) * math.sqrt(a)
                term = term * np.polyval(coefs[ax][::-1], u) * np.exp(-np.pi * u ** 2)
                term = term * np.exp(2j * np.pi * freq[ax] * coords[ax])
            vals += term
        return vals / math.sqrt(grid.cell_volume * float(np.vdot(vals, vals).real))

    scale = 1.0
    for _ in range(200):
        vals = build(scale)
        if _boundary_max(vals) < _BOUNDARY_TOL:
            if precision_scale != 1.0:
                vals = build(scale * precision_scale)
            return Signal(grid, vals)
        scale *= 1.15
    raise RuntimeError(f"could not localize test signal on {grid}")  # pragma: no cover
