import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tfcalc.grid import (Grid, GridMismatchError, PhaseFn, Signal, cfft, fourier, gaussian,
                         hermite1, icfft, inner, inverse_fourier, make_grid, norm,
                         random_test_signal, upsample2)

from conftest import rsig


class TestGrid:
    def test_axis_layout(self):
        g = Grid(1, 8, 4.0)
        np.testing.assert_allclose(g.axis, [-2, -1.5, -1, -0.5, 0, 0.5, 1, 1.5])
        np.testing.assert_allclose(g.dual_axis, (np.arange(8) - 4) / 4.0)
        assert g.axis[g.N // 2] == 0.0
        assert g.cell_volume == 0.5
        assert g.dual_cell_volume == 0.25

    @pytest.mark.parametrize("bad", [dict(N=7), dict(N=2), dict(L=0.0), dict(L=math.inf),
                                     dict(d=0)])
    def test_rejects_bad_parameters(self, bad):
        kw = dict(d=1, N=8, L=4.0)
        kw.update(bad)
        with pytest.raises(ValueError):
            Grid(**kw)

    def test_self_dual(self):
        assert Grid(1, 16, 4.0).is_self_dual()
        assert not Grid(1, 32, 8.0).is_self_dual()

    def test_lattice_index(self):
        g = Grid(1, 8, 4.0)
        assert g.lattice_index(0.0) == 4
        assert g.lattice_index(-2.0) == 0
        assert g.dual_index(0.25) == 5
        with pytest.raises(ValueError):
            g.lattice_index(0.3)

    def test_make_grid_defaults(self):
        assert make_grid() == Grid(1, 64, 8.0)


class TestSignal:
    def test_shape_check(self, g16):
        with pytest.raises(ValueError):
            Signal(g16, np.zeros(15))

    def test_values_are_read_only(self, g16):
        s = Signal.zeros(g16)
        with pytest.raises(ValueError):
            s.values[0] = 1

    def test_arithmetic_and_mismatch(self, g16):
        f = gaussian(g16)
        assert np.allclose((f + f - f * 2.0).values, 0)
        with pytest.raises(GridMismatchError):
            f + gaussian(Grid(1, 16, 8.0))

    def test_phase_fn_axis_order(self):
        g = Grid(2, 4, 2.0)
        F = PhaseFn.zeros(g, n=2)
        assert F.values.shape == (4,) * 4
        assert F.axis_order == ["x1", "x2", "w1", "w2"]
        assert F.d == 1 and F.dim == 2

    def test_phase_fn_as_signal_needs_self_dual(self):
        with pytest.raises(GridMismatchError):
            PhaseFn.zeros(Grid(1, 8, 4.0)).as_signal()
        S = PhaseFn.zeros(Grid(1, 16, 4.0)).as_signal()
        assert S.grid.d == 2


class TestFourier:
    def test_cfft_roundtrip(self):
        a = np.random.default_rng(0).normal(size=(8, 6)) + 0j
        np.testing.assert_allclose(icfft(cfft(a, (0, 1)), (0, 1)), a, atol=1e-14)

    def test_gaussian_is_fixed_point(self, g64):
        # the normalized Gaussian is its own Fourier transform; here dual grid = (N, N/L)
        f = gaussian(g64)
        F = fourier(f)
        w = F.grid.axis
        np.testing.assert_allclose(F.values, 2 ** 0.25 * np.exp(-np.pi * w ** 2), atol=1e-12)
        np.testing.assert_allclose(inverse_fourier(F).values, f.values, atol=1e-13)

    def test_plancherel(self, g64):
        f = rsig(g64, 3)
        F = fourier(f)
        assert math.isclose(norm(F), norm(f), rel_tol=1e-12)


class TestTestSignals:
    def test_gaussian_normalized(self, g64):
        assert math.isclose(norm(gaussian(g64)), 1.0, rel_tol=1e-12)
        assert math.isclose(norm(hermite1(g64)), 1.0, rel_tol=1e-10)
        assert abs(inner(gaussian(g64), hermite1(g64))) < 1e-14

    @given(st.integers(0, 10_000))
    def test_random_signal_properties(self, seed):
        g = Grid(1, 32, 4 * math.sqrt(2))
        f = random_test_signal(seed, g)
        assert math.isclose(norm(f), 1.0, rel_tol=1e-12)
        edge = np.abs(np.r_[f.values[:2], f.values[-2:]])
        assert edge.max() < 1e-13
        # determinism
        np.testing.assert_array_equal(f.values, random_test_signal(seed, g).values)

    def test_precision_scale_changes_width(self, g64):
        a = random_test_signal(4, g64)
        b = random_test_signal(4, g64, precision_scale=4.0)
        spread = lambda s: float(np.sum(g64.axis ** 2 * np.abs(s.values) ** 2) * g64.spacing)
        assert spread(b) < spread(a)

    def test_two_dimensional(self):
        g = Grid(2, 16, 4.0)
        f = random_test_signal([1, 2], g)
        assert f.values.shape == (16, 16)
        assert math.isclose(norm(f), 1.0, rel_tol=1e-12)


def test_upsample_interpolates_band_limited(g64):
    f = gaussian(g64)
    up = upsample2(f)
    assert up.grid.N == 128
    np.testing.assert_allclose(up.values[::2], f.values, atol=1e-13)
    np.testing.assert_allclose(up.values, 2 ** 0.25 * np.exp(-np.pi * up.grid.axis ** 2),
                               atol=1e-12)
