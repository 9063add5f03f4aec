"""Hot loops: direct-summation oracles and dense kernel assembly.

Every kernel exists twice, as an explicit loop compiled with numba
(``*_loops``) and as a vectorized numpy version (``*_numpy``).  The public
names at the bottom of the module are bound to the loops when
:data:`tfcalc._accel.USE_NUMBA` is set and the kernel is in
:data:`LOOPS_PREFERRED`, else to the numpy version.  Both versions take the
same flattened arguments: functions on a ``D``-dimensional lattice are passed
as 1-d arrays of length ``M = N**D`` in C order, and all index bookkeeping is
precomputed by the ``*_table`` helpers.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

__all__ = [
    "lattice_coords",
    "shift_table",
    "exp_table",
    "halfshift_table",
    "stft_direct",
    "wigner_direct",
    "weyl_kernel_direct",
    "localization_direct",
    "localization_kernel_assemble",
    "convolve_direct",
]


# -- tables ----------------------------------------------------------------

def lattice_coords(N, D):
    """Centered integer coordinates (``j - N/2``) of every flat index, shape (M, D)."""
    grids = np.meshgrid(*([np.arange(N)] * D), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1) - N // 2


def _flat(idx, N):
    out = np.zeros(idx.shape[:-1], dtype=np.int64)
    for a in range(idx.shape[-1]):
        out = out * N + idx[..., a]
    return out


def shift_table(N, D):
    """``T[s, t]`` = flat index of the lattice point ``t - s`` (periodic).

    Doubles as a difference table: ``T[t, p]`` indexes the offset ``p - t``.
    """
    c = lattice_coords(N, D)
    diff = (c[None, :, :] - c[:, None, :]) % N
    # diff is a centered offset; shift back to array indices
    return _flat((diff + N // 2) % N, N)


def exp_table(N, D, sign=-1):
    """``E[k, t] = exp(sign * 2 pi i k~.t~ / N)`` over centered coordinates."""
    c = lattice_coords(N, D)
    return np.exp(sign * 2j * np.pi * (c @ c.T) / N)


def _edge_reps(N):
    """Centered lag/frequency representatives used by the half-shift phase."""
    m = np.arange(N) - N // 2
    M, K = np.meshgrid(m, m, indexing="ij")
    Mr, Kr = M.copy(), K.copy()
    Mr[(M == -N // 2) & (K > 0)] = N // 2
    Kr[(K == -N // 2) & (M > 0)] = N // 2
    return Mr, Kr


def halfshift_phase_1d(N):
    """``exp(i pi m~ k~ / N)`` with the sign-split edge convention, shape (N, N)."""
    Mr, Kr = _edge_reps(N)
    return np.exp(1j * np.pi * Mr * Kr / N)


def halfshift_table(N, D, conjugate=False):
    """Interpolation weights for half-lattice shifts.

    ``H[m, r] = (1/N^D) sum_k phase(m, k) exp(2 pi i k~.r~ / N)`` where ``m``
    is a lag and ``r`` a centered offset, both flat indices.  Evaluating
    ``sum_t F(t) H[m, p - t]`` interpolates ``F`` at ``x_p + lag/2``; with
    ``conjugate=True`` it interpolates at ``x_p - lag/2``.
    """
    ph = halfshift_phase_1d(N)
    if conjugate:
        ph = np.conj(ph)
    k = np.arange(N) - N // 2
    e = np.exp(2j * np.pi * np.outer(k, k) / N)  # [k, r]
    h1 = ph @ e / N  # [m, r]
    H = h1
    for _ in range(D - 1):
        H = np.einsum("ab,cd->acbd", H, h1).reshape(H.shape[0] * N, H.shape[1] * N)
    return np.ascontiguousarray(H)


# -- STFT ------------------------------------------------------------------

@njit
def _stft_loops(f, g, T, E, cell):
    M = f.shape[0]
    out = np.zeros((M, M), dtype=np.complex128)
    h = np.empty(M, dtype=np.complex128)
    for s in range(M):
        for t in range(M):
            h[t] = f[t] * np.conj(g[T[s, t]])
        for k in range(M):
            acc = 0j
            for t in range(M):
                acc += h[t] * E[k, t]
            out[s, k] = cell * acc
    return out


def _stft_numpy(f, g, T, E, cell):
    H = f[None, :] * np.conj(g[T])
    return cell * (H @ E.T)


# -- Wigner ----------------------------------------------------------------

@njit
def _wigner_loops(f, g, T, Dt, H, Eq, cell):
    # W[p, q] = cell * sum_m Eq[q, m] sum_t f[t] conj(g[t - m]) H[m, p - t]
    M = f.shape[0]
    S = np.zeros((M, M), dtype=np.complex128)
    for m in range(M):
        for p in range(M):
            acc = 0j
            for t in range(M):
                acc += f[t] * np.conj(g[T[m, t]]) * H[m, Dt[t, p]]
            S[m, p] = acc
    out = np.zeros((M, M), dtype=np.complex128)
    for p in range(M):
        for q in range(M):
            acc = 0j
            for m in range(M):
                acc += Eq[q, m] * S[m, p]
            out[p, q] = cell * acc
    return out


def _wigner_numpy(f, g, T, Dt, H, Eq, cell):
    lag = f[None, :] * np.conj(g[T])  # [m, t]
    Hm = H[:, Dt]  # [m, t, p]
    S = np.einsum("mt,mtp->mp", lag, Hm)
    return cell * (Eq @ S).T


# -- Weyl ------------------------------------------------------------------

@njit
def _weyl_loops(sigma, Dt, Hc, Eq, cellw):
    # K[t, y] = cellw * sum_q Eq[q, t - y] sum_p sigma[p, q] Hc[t - y, t - p]
    M = sigma.shape[0]
    EqT = np.ascontiguousarray(Eq.T)
    K = np.zeros((M, M), dtype=np.complex128)
    mid = np.empty(M, dtype=np.complex128)
    for t in range(M):
        for y in range(M):
            m = Dt[y, t]
            mid[:] = 0j
            for p in range(M):
                h = Hc[m, Dt[p, t]]
                for q in range(M):
                    mid[q] += sigma[p, q] * h
            acc = 0j
            for q in range(M):
                acc += EqT[m, q] * mid[q]
            K[t, y] = cellw * acc
    return K


def _weyl_numpy(sigma, Dt, Hc, Eq, cellw):
    M = sigma.shape[0]
    K = np.empty((M, M), dtype=np.complex128)
    ts = np.arange(M)
    for m in range(M):
        ys = Dt[m]  # t - lag
        mid = Hc[m][Dt.T] @ sigma  # [t, q], midpoint samples of sigma
        K[ts, ys] = cellw * (mid @ Eq[:, m])
    return K


# -- localization ----------------------------------------------------------

@njit
def _loc_direct_loops(a, V, psi, T, Einv, cell):
    # A f(t) = cell * sum_{x, w} a[x, w] V[x, w] exp(2 pi i w.t) psi(t - x)
    M = psi.shape[0]
    out = np.zeros(M, dtype=np.complex128)
    row = np.empty(M, dtype=np.complex128)
    for x in range(M):
        row[:] = 0j
        for w in range(M):
            c = a[x, w] * V[x, w]
            for t in range(M):
                row[t] += c * Einv[w, t]
        for t in range(M):
            out[t] += row[t] * psi[T[x, t]]
    return cell * out


def _loc_direct_numpy(a, V, psi, T, Einv, cell):
    S = (a * V) @ Einv  # [x, t]
    return cell * np.sum(S * psi[T], axis=0)


@njit
def _loc_kernel_loops(ahat, phi, psi, T, Dt, cell):
    # k[t, s] = cell * sum_x conj(phi(t - x)) psi(s - x) ahat[x, s - t]
    M = phi.shape[0]
    K = np.zeros((M, M), dtype=np.complex128)
    for x in range(M):
        for t in range(M):
            cp = np.conj(phi[T[x, t]])
            if cp == 0:
                continue
            for s in range(M):
                K[t, s] += cp * psi[T[x, s]] * ahat[x, Dt[t, s]]
    return cell * K


def _loc_kernel_numpy(ahat, phi, psi, T, Dt, cell):
    M = phi.shape[0]
    K = np.zeros((M, M), dtype=np.complex128)
    for x in range(M):
        K += np.outer(np.conj(phi[T[x]]), psi[T[x]]) * ahat[x][Dt]
    return cell * K


# -- convolution -----------------------------------------------------------

@njit
def _conv_loops(a, b, Dz, cell):
    P = a.shape[0]
    out = np.zeros(P, dtype=np.complex128)
    for z in range(P):
        acc = 0j
        for y in range(P):
            acc += a[y] * b[Dz[y, z]]
        out[z] = cell * acc
    return out


def _conv_numpy(a, b, Dz, cell):
    return cell * (a @ b[Dz])


IMPLEMENTATIONS = {
    "stft_direct": (_stft_loops, _stft_numpy),
    "wigner_direct": (_wigner_loops, _wigner_numpy),
    "weyl_kernel_direct": (_weyl_loops, _weyl_numpy),
    "localization_direct": (_loc_direct_loops, _loc_direct_numpy),
    "localization_kernel_assemble": (_loc_kernel_loops, _loc_kernel_numpy),
    "convolve_direct": (_conv_loops, _conv_numpy),
}

#: Kernels whose compiled loops beat the numpy version (benchmarks/bench_kernels.py).
#: The other three are matrix products in disguise, where BLAS wins for M >= 32
#: and ties below, so numpy serves them even when numba is enabled.
LOOPS_PREFERRED = frozenset({"wigner_direct", "localization_kernel_assemble",
                             "convolve_direct"})


def _select(name):
    loops, vec = IMPLEMENTATIONS[name]
    return loops if USE_NUMBA and name in LOOPS_PREFERRED else vec


stft_direct = _select("stft_direct")
wigner_direct = _select("wigner_direct")
weyl_kernel_direct = _select("weyl_kernel_direct")
localization_direct = _select("localization_direct")
localization_kernel_assemble = _select("localization_kernel_assemble")
convolve_direct = _select("convolve_direct")


def sample_arguments(name, N, D=1, seed=0):
    """Random but well-formed arguments for ``IMPLEMENTATIONS[name]``.

    Used to compare the loop and numpy versions and to benchmark them.
    """
    rng = np.random.default_rng(seed)
    M = N ** D

    def cvec(*shape):
        return rng.normal(size=shape) + 1j * rng.normal(size=shape)

    T = shift_table(N, D)
    cell = 0.37
    if name == "stft_direct":
        return (cvec(M), cvec(M), T, exp_table(N, D, -1), cell)
    if name == "wigner_direct":
        return (cvec(M), cvec(M), T, T, halfshift_table(N, D), exp_table(N, D, -1), cell)
    if name == "weyl_kernel_direct":
        return (cvec(M, M), T, halfshift_table(N, D, conjugate=True), exp_table(N, D, +1), cell)
    if name == "localization_direct":
        return (cvec(M, M), cvec(M, M), cvec(M), T, exp_table(N, D, +1), cell)
    if name == "localization_kernel_assemble":
        return (cvec(M, M), cvec(M), cvec(M), T, T, cell)
    if name == "convolve_direct":
        return (cvec(M), cvec(M), T, cell)
    raise KeyError(name)
