import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tfcalc.grid import Grid, GridMismatchError, Signal, gaussian, hermite1, inner
from tfcalc.tf_transforms import (SignalVector, WindowVector, involution, modulate, stft,
                                  stft_tensor, tensor_product, translate, wigner, wigner_multi)
from tfcalc.verify import _stft_wigner_relation

from conftest import brute_stft, rsig

G16 = Grid(1, 16, 4.0)
G64 = Grid(1, 64, 8.0)
seeds = st.integers(0, 100_000)


def _phase_mesh(grid):
    return np.meshgrid(grid.axis, grid.dual_axis, indexing="ij")


class TestShifts:
    def test_translate_and_modulate(self):
        f = rsig(G16, 1)
        h = G16.spacing
        np.testing.assert_array_equal(translate(f, 3 * h).values, np.roll(f.values, 3))
        m = modulate(f, 2 / G16.L)
        np.testing.assert_allclose(m.values, f.values * np.exp(4j * np.pi * G16.axis / G16.L))

    def test_off_lattice_rejected(self):
        f = gaussian(G16)
        with pytest.raises(ValueError):
            translate(f, 0.1)
        with pytest.raises(ValueError):
            modulate(f, 0.1)

    @given(seeds)
    def test_involution_is_an_involution(self, seed):
        f = rsig(G16, seed)
        np.testing.assert_array_equal(involution(involution(f)).values, f.values)
        # f*(0) = conj f(0)
        assert involution(f).values[8] == np.conj(f.values[8])

    def test_tensor_product(self):
        f, g = rsig(G16, 1), rsig(G16, 2)
        T = tensor_product([f, g])
        assert T.grid.d == 2
        np.testing.assert_allclose(T.values, np.outer(f.values, g.values))

    def test_window_vector_rejects_zero(self):
        with pytest.raises(ValueError):
            WindowVector((Signal.zeros(G16),))
        with pytest.raises(ValueError):
            SignalVector(())


class TestSTFT:
    @pytest.mark.parametrize("method", ["fft", "direct"])
    def test_matches_definition(self, method):
        f, g = rsig(G16, 1), rsig(G16, 2)
        np.testing.assert_allclose(stft(f, g, method).values, brute_stft(f, g), atol=1e-13)

    def test_gaussian_closed_form(self):
        phi = gaussian(G64)
        x, w = _phase_mesh(G64)
        ref = np.exp(-1j * np.pi * x * w) * np.exp(-np.pi * (x ** 2 + w ** 2) / 2)
        # 1e-11 is the periodic alias of the Gaussian tail at the Nyquist frequency
        np.testing.assert_allclose(stft(phi, phi).values, ref, atol=1e-10)

    @given(seeds, seeds)
    def test_orthogonality_relation(self, s1, s2):
        f, g = rsig(G16, s1), rsig(G16, s2)
        V = stft(f, g)
        assert math.isclose(math.sqrt(np.sum(np.abs(V.values) ** 2) * V.cell_volume), 1.0,
                            rel_tol=1e-12)

    def test_two_dimensional_paths_agree(self):
        g2 = Grid(2, 8, 2 * math.sqrt(2))
        f, w = rsig(g2, 1), rsig(g2, 2)
        np.testing.assert_allclose(stft(f, w).values, stft(f, w, "direct").values, atol=1e-13)

    def test_tensor_paths_agree(self):
        g8 = Grid(1, 8, 2 * math.sqrt(2))
        fv = [rsig(g8, 1, j) for j in range(2)]
        wv = [rsig(g8, 2, j) for j in range(2)]
        a = stft_tensor(fv, wv).values
        b = stft_tensor(fv, wv, method="direct").values
        np.testing.assert_allclose(a, b, atol=1e-13)
        # factor structure with blocks (x1, x2, w1, w2)
        V1, V2 = stft(fv[0], wv[0]).values, stft(fv[1], wv[1]).values
        np.testing.assert_allclose(a, np.einsum("ac,bd->abcd", V1, V2), atol=1e-15)

    def test_grid_mismatch(self):
        with pytest.raises(GridMismatchError):
            stft(gaussian(G16), gaussian(G64))

    def test_zero_window_rejected(self):
        with pytest.raises(ValueError):
            stft(gaussian(G16), Signal.zeros(G16))


class TestWigner:
    def test_gaussian_closed_form(self):
        x, w = _phase_mesh(G64)
        # unnormalized exp(-pi t^2): W = sqrt(2) exp(-2 pi (x^2 + w^2))
        raw = Signal(G64, np.exp(-np.pi * G64.axis ** 2))
        np.testing.assert_allclose(wigner(raw, raw).values,
                                   math.sqrt(2) * np.exp(-2 * np.pi * (x ** 2 + w ** 2)),
                                   atol=1e-10)
        phi = gaussian(G64)
        np.testing.assert_allclose(wigner(phi, phi).values,
                                   2 * np.exp(-2 * np.pi * (x ** 2 + w ** 2)), atol=1e-10)

    def test_hermite_closed_form(self):
        x, w = _phase_mesh(G64)
        r2 = x ** 2 + w ** 2
        ref = -2 * (1 - 4 * np.pi * r2) * np.exp(-2 * np.pi * r2)
        h = hermite1(G64)
        np.testing.assert_allclose(wigner(h, h).values, ref, atol=1e-9)

    def test_paths_agree(self):
        f, g = rsig(G16, 1), rsig(G16, 2)
        np.testing.assert_allclose(wigner(f, g).values, wigner(f, g, "direct").values,
                                   atol=1e-13)

    def test_two_dimensional_paths_agree(self):
        g2 = Grid(2, 8, 2 * math.sqrt(2))
        f, h = rsig(g2, 3), rsig(g2, 4)
        np.testing.assert_allclose(wigner(f, h).values, wigner(f, h, "direct").values,
                                   atol=1e-13)

    @given(seeds, seeds)
    def test_marginal(self, s1, s2):
        f, g = rsig(G16, s1), rsig(G16, s2)
        W = wigner(f, g)
        marg = W.values.sum(axis=1) * G16.dual_cell_volume
        np.testing.assert_allclose(marg, f.values * np.conj(g.values), atol=1e-13)

    @given(seeds, seeds, seeds, seeds)
    def test_moyal(self, a, b, c, d):
        f1, g1, f2, g2 = (rsig(G16, s) for s in (a, b, c, d))
        W1, W2 = wigner(f1, g1), wigner(f2, g2)
        lhs = W1.cell_volume * np.vdot(W2.values, W1.values)
        rhs = inner(f1, f2) * np.conj(inner(g1, g2))
        assert abs(lhs - rhs) < 1e-13

    @given(seeds, seeds)
    def test_conjugation_symmetry(self, s1, s2):
        f, g = rsig(G16, s1), rsig(G16, s2)
        np.testing.assert_allclose(wigner(g, f).values, np.conj(wigner(f, g).values),
                                   atol=1e-14)

    @given(seeds, st.integers(-4, 4), st.integers(-4, 4))
    def test_covariance(self, seed, kx, kw):
        f, g = rsig(G16, seed, 1), rsig(G16, seed, 2)
        x0, w0 = kx * G16.spacing, kw * G16.dual_spacing
        W0 = wigner(f, g).values
        W1 = wigner(translate(modulate(f, w0), x0), translate(modulate(g, w0), x0)).values
        np.testing.assert_allclose(W1, np.roll(W0, (kx, kw), axis=(0, 1)), atol=1e-13)

    def test_stft_relation_on_wide_grid(self):
        g = Grid(1, 128, 8.0)
        for seed in range(3):
            f = rsig(g, seed, 0, max_shift=0, max_freq=2)
            h = rsig(g, seed, 1, max_shift=0, max_freq=2)
            assert _stft_wigner_relation(f, h) < 1e-12

    def test_multilinear_is_outer_product(self):
        fv = [rsig(G16, 1, j) for j in range(2)]
        gv = [rsig(G16, 2, j) for j in range(2)]
        W = wigner_multi(fv, gv).values
        W1, W2 = wigner(fv[0], gv[0]).values, wigner(fv[1], gv[1]).values
        np.testing.assert_allclose(W, np.einsum("ac,bd->abcd", W1, W2), atol=1e-15)

    def test_multilinear_direct_path(self):
        g8 = Grid(1, 8, 2 * math.sqrt(2))
        fv = [rsig(g8, 1, j) for j in range(2)]
        gv = [rsig(g8, 2, j) for j in range(2)]
        np.testing.assert_allclose(wigner_multi(fv, gv).values,
                                   wigner_multi(fv, gv, method="direct").values, atol=1e-13)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            wigner_multi([gaussian(G16)], [gaussian(G16)] * 2)
