"""Identity certification and bounded-ratio sweeps.

Every experiment is a pure function of its :class:`ExperimentConfig`: test
data is drawn from seeded generators, trials run in seed order, and the
emitted CSV/JSON files are byte-stable.  Inequality sweeps consult the
matching admissibility check first and refuse to produce any record for an
inadmissible tuple.

Dilation sweeps rescale the Gaussian envelopes of the test signals.  A
factor ``lam`` multiplies the envelope precision by ``sqrt(lam) / 2``, so
the factors ``1, 2, 4, 8, 16`` sweep the time/frequency variance ratio of
every envelope over a range of ``16`` centred on the grid's balanced width.
"""

from dataclasses import dataclass, field, asdict
import csv
import hashlib
import io
import json
import math
import os
import time

import numpy as np

from . import admissibility as adm
from .grid import Grid, inner, random_test_signal
from .modspaces import modulation_norm, modulation_norm_multi, phase_modulation_norm
from .operators import (LocalizationSpec, Symbol, localization_apply, localization_kernel,
                        localization_weak, weyl_apply_multi, weyl_symbol_of_localization,
                        weyl_weak)
from .tf_transforms import (SignalVector, WindowVector, involution, modulate, stft,
                            tensor_product, translate, wigner, wigner_multi)

__all__ = [
    "ExperimentConfig",
    "Report",
    "certify_identities",
    "sweep_wigner_bound",
    "sweep_operator_bound",
    "sweep_localization_bound",
    "run",
    "emit",
]

KINDS = ("identities", "wigner", "weyl", "localization")

DEFAULT_TOLERANCES = {
    "weyl_connection": 1e-7,
    "lemma_weak": 1e-8,
    "weak_chain": 1e-8,
    "wigner_conjugation": 1e-12,
    "wigner_covariance": 1e-10,
    "stft_wigner_relation": 1e-8,
    "dilation_spread": 10.0,
}

DEFAULT_PARAMS = {
    "wigner": {"p1": 2, "q1": 2, "p2": 2, "q2": 2, "p": 1, "q": "inf", "s": 0},
    "weyl": {"p1": 2, "q1": 2, "p2": 2, "q2": 2, "p": "inf", "q": 1, "s": 0},
    "localization": {"p1": 2, "q1": 2, "p2": 2, "q2": 2, "p": 2, "q": 2, "p0": 2, "q0": 2,
                     "r1": 2, "r2": 2, "s": 0, "s0": 0, "t0": 0,
                     "strict_at_equality": False},
}


def _jsonable(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return _jsonable(float(v))
    return v


@dataclass(frozen=True)
class ExperimentConfig:
    """What to run and on which data.

    Parameters
    ----------
    kind : {'identities', 'wigner', 'weyl', 'localization'}
    d, N, L : grid parameters; ``L`` defaults to ``sqrt(N)`` (self-dual).
    n : number of factors; defaults to 2 for identities, 1 for sweeps.
    params : exponent/weight tuple for the sweep's theorem (``"inf"`` allowed).
        The Weyl sweep also accepts ``spaces``, a list of ``[p1, q1, p2, q2]``
        rows that are swept in turn.
    seeds : seed list; trials run in this order.
    tolerances : overrides of :data:`DEFAULT_TOLERANCES`.
    dilations : envelope dilation factors for the sweeps.
    slack : discretization slack for the constant-1 Weyl bound.
    symbol : 'mixed' (tensor on even seeds, general on odd), 'tensor',
        'random' or 'zero'.
    relation_N, relation_L : grid of the STFT-Wigner relation check.
    """

    kind: str
    d: int = 1
    N: int = None
    L: float = None
    n: int = None
    params: dict = field(default_factory=dict)
    seeds: tuple = tuple(range(25))
    tolerances: dict = field(default_factory=dict)
    dilations: tuple = (1, 2, 4, 8, 16)
    slack: float = 0.05
    symbol: str = "mixed"
    relation_N: int = 128
    relation_L: float = 8.0
    out: str = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}; expected one of {KINDS}")
        if self.N is None:
            object.__setattr__(self, "N", 16 if self.kind == "identities" else 32)
        if self.L is None:
            object.__setattr__(self, "L", math.sqrt(self.N))
        if self.n is None:
            object.__setattr__(self, "n", 2 if self.kind == "identities" else 1)
        if self.symbol not in ("mixed", "tensor", "random", "zero"):
            raise ValueError(f"unknown symbol kind {self.symbol!r}")
        params = dict(DEFAULT_PARAMS.get(self.kind, {}))
        params.update(self.params or {})
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        object.__setattr__(self, "dilations", tuple(self.dilations))
        tol = dict(DEFAULT_TOLERANCES)
        tol.update(self.tolerances or {})
        object.__setattr__(self, "tolerances", tol)

    @property
    def grid(self):
        return Grid(self.d, self.N, self.L)

    def as_dict(self):
        return _jsonable(asdict(self))

    @classmethod
    def from_dict(cls, data, **overrides):
        data = dict(data)
        data.update({k: v for k, v in overrides.items() if v is not None})
        known = {f for f in cls.__dataclass_fields__}
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        for key in ("seeds", "dilations"):
            if key in data:
                data[key] = tuple(data[key])
        return cls(**data)


@dataclass
class Report:
    """Per-trial records, summary and gate verdict of one experiment."""

    kind: str
    config: dict
    columns: list
    records: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    verdict: dict = None
    passed: bool = True
    failure: str = ""
    wall_clock: float = 0.0

    def as_dict(self):
        return _jsonable({"kind": self.kind, "passed": self.passed, "failure": self.failure,
                          "summary": self.summary, "verdict": self.verdict,
                          "config": self.config, "n_records": len(self.records)})


def _hash(*arrays):
    h = hashlib.sha256()
    for a in arrays:
        h.update(np.ascontiguousarray(a).tobytes())
    return h.hexdigest()[:16]


# -- test data ------------------------------------------------------------------

def _signal(grid, *key, scale=1.0):
    return random_test_signal(list(key), grid, precision_scale=scale)


def _dilation_scale(lam):
    return math.sqrt(lam) / 2.0


def _random_symbol(cfg, seed, grid1, n):
    """Smooth symbol on the ``2nd``-dimensional phase lattice."""
    kind = cfg.symbol
    if kind == "mixed":
        kind = "tensor" if seed % 2 == 0 else "random"
    if kind == "zero":
        return Symbol(grid1.with_dim(n * grid1.d),
                      np.zeros((grid1.N,) * (2 * n * grid1.d), dtype=np.complex128), n)
    if kind == "tensor":
        factors = []
        for j in range(n):
            s = random_test_signal([seed, 7, j], grid1.with_dim(2 * grid1.d))
            factors.append(Symbol(grid1, s.values, 1))
        return Symbol.tensor(factors)
    s = random_test_signal([seed, 8], grid1.with_dim(2 * n * grid1.d))
    return Symbol(grid1.with_dim(n * grid1.d), s.values, n)


def _vec(grid, seed, role, n, cls=SignalVector, scale=1.0):
    return cls(tuple(_signal(grid, seed, role, j, scale=scale) for j in range(n)))


# -- identities -------------------------------------------------------------------

IDENTITY_COLUMNS = ["seed", "inputs_hash", "pairing", "weyl_connection", "lemma_weak",
                    "weak_chain", "wigner_conjugation", "wigner_covariance",
                    "stft_wigner_relation"]


def _stft_wigner_relation(f, g):
    """Max deviation from ``W(f,g)(x,w) = 2^d exp(4 pi i x.w) V_{conj(g*)} f(2x, 2w)``.

    Only lattice points whose doubles are lattice points are compared.
    """
    grid = f.grid
    N, d = grid.N, grid.d
    W = wigner(f, g).values
    V = stft(f, involution(g).conj()).values
    half = np.arange(N // 4, 3 * N // 4)
    dbl = 2 * (half - N // 2) + N // 2
    sel_h = np.ix_(*([half] * (2 * d)))
    sel_d = np.ix_(*([dbl] * (2 * d)))
    axes = [grid.axis[half]] * d + [grid.dual_axis[half]] * d
    mesh = np.meshgrid(*axes, indexing="ij")
    xw = sum(mesh[a] * mesh[d + a] for a in range(d))
    rhs = 2 ** d * np.exp(4j * np.pi * xw) * V[sel_d]
    return float(np.abs(W[sel_h] - rhs).max())


def _identity_trial(cfg, seed):
    grid = cfg.grid
    n = cfg.n
    fv = _vec(grid, seed, 1, n)
    gv = _vec(grid, seed, 2, n)
    phis = _vec(grid, seed, 3, n, WindowVector)
    psis = _vec(grid, seed, 4, n, WindowVector)
    a = _random_symbol(cfg, seed, grid, n)
    spec = LocalizationSpec(a, phis, psis)
    G = tensor_product(gv.signals)

    Af = localization_apply(spec, fv)
    lhs = inner(Af, G)
    sigma = weyl_symbol_of_localization(spec)
    rhs = inner(weyl_apply_multi(sigma, fv), G)
    weyl_conn = abs(lhs - rhs) / max(1.0, abs(lhs))

    lemma = abs(weyl_weak(a, fv, gv) - inner(weyl_apply_multi(a, fv), G))

    chain = [inner(localization_apply(spec, fv, method="direct"), G),
             localization_weak(spec, fv, gv),
             localization_weak(spec, fv, gv, form="symbol"),
             localization_kernel(spec).pair(tensor_product(fv.signals), G)]
    weak = max(abs(u - v) for i, u in enumerate(chain) for v in chain[i + 1:])

    Wfg = wigner_multi(fv, gv).values
    Wgf = wigner_multi(gv, fv).values
    conj_res = float(np.abs(Wgf - np.conj(Wfg)).max())

    # covariance of the one-factor transform under a lattice shift
    rng = np.random.default_rng([seed, 5])
    k = rng.integers(-grid.N // 4, grid.N // 4 + 1, size=(2, grid.d))
    x0, w0 = k[0] * grid.spacing, k[1] * grid.dual_spacing
    f1, g1 = fv[0], gv[0]
    W0 = wigner(f1, g1).values
    W1 = wigner(translate(modulate(f1, w0), x0), translate(modulate(g1, w0), x0)).values
    shifted = np.roll(W0, tuple(k[0]) + tuple(k[1]), axis=tuple(range(2 * grid.d)))
    cov = float(np.abs(W1 - shifted).max())

    rgrid = Grid(grid.d, cfg.relation_N, cfg.relation_L)
    fr = random_test_signal([seed, 6, 0], rgrid, max_shift=0, max_freq=2)
    gr = random_test_signal([seed, 6, 1], rgrid, max_shift=0, max_freq=2)
    rel = _stft_wigner_relation(fr, gr)

    h = _hash(*[s.values for s in fv], *[s.values for s in gv], *[s.values for s in phis],
              *[s.values for s in psis], a.values)
    return {"seed": seed, "inputs_hash": h, "pairing": abs(lhs),
            "weyl_connection": weyl_conn, "lemma_weak": lemma, "weak_chain": weak,
            "wigner_conjugation": conj_res, "wigner_covariance": cov,
            "stft_wigner_relation": rel}


def certify_identities(cfg):
    """Residuals of the operator identities and transform invariants, per seed.

    Families: the Weyl connection ``<A f, g> = <L_{a * W(psi, phi)} f, g>``,
    the weak form ``<L_sigma f, g> = <sigma, W(g, f)>``, the three
    computations of ``<A f, g>`` (direct quadrature, STFT pairing, kernel
    pairing), conjugation symmetry and covariance of the Wigner transform,
    and the STFT-Wigner relation.
    """
    if cfg.kind != "identities":
        raise ValueError("certify_identities needs an 'identities' config")
    t0 = time.perf_counter()
    rep = Report("identities", cfg.as_dict(), list(IDENTITY_COLUMNS))
    try:
        for seed in cfg.seeds:
            rep.records.append(_identity_trial(cfg, seed))
    except (MemoryError, ValueError) as exc:
        rep.passed = False
        rep.failure = f"aborted: {type(exc).__name__}: {exc}"
    tol = cfg.tolerances
    summary = {"vacuous": not rep.records}
    for col in IDENTITY_COLUMNS[3:]:
        worst = max((r[col] for r in rep.records), default=0.0)
        summary[f"max_{col}"] = worst
        if worst > tol[col]:
            rep.passed = False
            rep.failure = rep.failure or f"{col} residual {worst:.3e} exceeds {tol[col]:.1e}"
    rep.summary = summary
    rep.wall_clock = time.perf_counter() - t0
    return rep


# -- sweeps ------------------------------------------------------------------------

SWEEP_COLUMNS = ["seed", "dilation", "space", "inputs_hash", "numerator", "denominator",
                 "ratio"]


def _refuse(kind, cfg, verdict):
    rep = Report(kind, cfg.as_dict(), list(SWEEP_COLUMNS), verdict=verdict.as_dict())
    rep.passed = False
    rep.failure = "inadmissible: " + adm.explain(verdict)
    rep.summary = {"vacuous": True, "refused": True}
    return rep


def _ratio(num, den):
    if num == 0.0:
        return 0.0
    return num / den if den > 0 else math.inf


def _summarize_sweep(rep, cfg, extra_bound=None):
    recs = rep.records
    per_dil = {}
    for r in recs:
        per_dil[r["dilation"]] = max(per_dil.get(r["dilation"], 0.0), r["ratio"])
    max_ratio = max((r["ratio"] for r in recs), default=0.0)
    finite = all(math.isfinite(r["ratio"]) for r in recs)
    positive = [v for v in per_dil.values() if v > 0]
    spread = max(positive) / min(positive) if positive else 1.0
    rep.summary = {"vacuous": not recs, "max_ratio": max_ratio, "finite": finite,
                   "max_ratio_by_dilation": {str(k): v for k, v in sorted(per_dil.items())},
                   "dilation_spread": spread}
    if not finite:
        rep.passed = False
        rep.failure = "non-finite ratio"
    elif spread >= cfg.tolerances["dilation_spread"]:
        rep.passed = False
        rep.failure = f"dilation spread {spread:.3g} is not below {cfg.tolerances['dilation_spread']}"
    if extra_bound is not None:
        rep.summary["bound"] = extra_bound
        rep.summary["bound_holds"] = max_ratio <= extra_bound
        if max_ratio > extra_bound:
            rep.passed = False
            rep.failure = rep.failure or f"ratio {max_ratio:.6g} exceeds {extra_bound}"


def _space_label(*exps):
    return "/".join(str(adm.ExtExp(e)) for e in exps)


def sweep_wigner_bound(cfg):
    """Ratios ``||W(f,g)||_{M^{p,q}_{s,0}} / (||f||_{M^{p1,q1}_{|s|}} ||g||_{M^{p2,q2}_s})``.

    Single-index weights ``M_s`` use the joint bracket ``<(x, w)>^s``.
    """
    if cfg.kind != "wigner":
        raise ValueError("sweep_wigner_bound needs a 'wigner' config")
    P = cfg.params
    verdict = adm.check_wigner_thm(**{k: P[k] for k in ("p1", "q1", "p2", "q2", "p", "q", "s")})
    if not verdict.passed:
        return _refuse("wigner", cfg, verdict)
    t0 = time.perf_counter()
    grid = cfg.grid
    s = float(adm.parse_exact(P["s"]))
    e = {k: float(adm.ExtExp(P[k])) for k in ("p1", "q1", "p2", "q2", "p", "q")}
    label = _space_label(P["p1"], P["q1"], P["p2"], P["q2"], P["p"], P["q"])
    rep = Report("wigner", cfg.as_dict(), list(SWEEP_COLUMNS), verdict=verdict.as_dict())
    for seed in cfg.seeds:
        for lam in cfg.dilations:
            sc = _dilation_scale(lam)
            f = _signal(grid, seed, 1, 0, scale=sc)
            g = _signal(grid, seed, 2, 0, scale=sc)
            num = phase_modulation_norm(wigner(f, g), e["p"], e["q"], s, 0.0)
            den = (modulation_norm(f, e["p1"], e["q1"], abs(s), weight="bracket_2d")
                   * modulation_norm(g, e["p2"], e["q2"], s, weight="bracket_2d"))
            rep.records.append({"seed": seed, "dilation": lam, "space": label,
                                "inputs_hash": _hash(f.values, g.values),
                                "numerator": num, "denominator": den,
                                "ratio": _ratio(num, den)})
    _summarize_sweep(rep, cfg)
    rep.wall_clock = time.perf_counter() - t0
    return rep


def _weyl_spaces(P):
    if "spaces" in P and P["spaces"]:
        return [tuple(row) for row in P["spaces"]]
    return [(P["p1"], P["q1"], P["p2"], P["q2"])]


def sweep_operator_bound(cfg):
    """Ratios ``||L_sigma f||_{M^{p2,q2}_{s,0}} / (||sigma||_{M^{p,q}_{s,0}} ||f||_{M^{p1,q1}_{s,0}})``.

    When ``(p, q) = (inf, 1)`` and ``s = 0`` the ratios must also stay below
    ``1 + slack``.
    """
    if cfg.kind != "weyl":
        raise ValueError("sweep_operator_bound needs a 'weyl' config")
    P = cfg.params
    spaces = _weyl_spaces(P)
    verdicts = [adm.check_weyl_bound_thm(p1=r[0], q1=r[1], p2=r[2], q2=r[3], p=P["p"],
                                         q=P["q"], s=P["s"]) for r in spaces]
    for v in verdicts:
        if not v.passed:
            return _refuse("weyl", cfg, v)
    t0 = time.perf_counter()
    grid = cfg.grid
    n = cfg.n
    s = float(adm.parse_exact(P["s"]))
    p, q = float(adm.ExtExp(P["p"])), float(adm.ExtExp(P["q"]))
    unit = math.isinf(p) and q == 1.0 and s == 0.0
    rep = Report("weyl", cfg.as_dict(), list(SWEEP_COLUMNS),
                 verdict={"theorem": "weyl", "pass": True,
                          "rows": [v.as_dict() for v in verdicts]})
    for seed in cfg.seeds:
        sigma = _random_symbol(cfg, seed, grid, n)
        if sigma.factors is not None:
            nsig = math.prod(phase_modulation_norm(fa, p, q, s, 0.0) for fa in sigma.factors)
        else:
            nsig = phase_modulation_norm(sigma, p, q, s, 0.0)
        for lam in cfg.dilations:
            fv = _vec(grid, seed, 1, n, scale=_dilation_scale(lam))
            Lf = weyl_apply_multi(sigma, fv)
            for row in spaces:
                p1, q1, p2, q2 = (float(adm.ExtExp(x)) for x in row)
                num = modulation_norm(Lf, p2, q2, s, 0.0)
                den = nsig * modulation_norm_multi(fv, p1, q1, s, 0.0)
                rep.records.append({"seed": seed, "dilation": lam, "space": _space_label(*row),
                                    "inputs_hash": _hash(sigma.values,
                                                         *[f.values for f in fv]),
                                    "numerator": num, "denominator": den,
                                    "ratio": _ratio(num, den)})
    _summarize_sweep(rep, cfg, extra_bound=1.0 + cfg.slack if unit else None)
    rep.wall_clock = time.perf_counter() - t0
    return rep


def sweep_localization_bound(cfg):
    """Ratios ``||A f||_{M^{p2,q2}_{s,0}}`` over the product of the bounding norms.

    The denominator is ``||a||_{M^{p0,q0}_{s0,t0}} ||phi||_{M^{r1}_{2s,0}}
    ||psi||_{M^{r2}_{2s,0}} ||f||_{M^{p1,q1}_{s,0}}``.
    """
    if cfg.kind != "localization":
        raise ValueError("sweep_localization_bound needs a 'localization' config")
    P = dict(cfg.params)
    lp = adm.LocalizationParams(d=cfg.d, **P)
    verdict = adm.check_localization_thm(lp)
    if not verdict.passed:
        return _refuse("localization", cfg, verdict)
    t0 = time.perf_counter()
    grid = cfg.grid
    n = cfg.n
    fl = {k: float(adm.ExtExp(P[k])) for k in ("p1", "q1", "p2", "q2", "p0", "q0", "r1", "r2")}
    s, s0, t0w = (float(adm.parse_exact(P[k])) for k in ("s", "s0", "t0"))
    label = _space_label(P["p1"], P["q1"], P["p2"], P["q2"])
    rep = Report("localization", cfg.as_dict(), list(SWEEP_COLUMNS), verdict=verdict.as_dict())
    for seed in cfg.seeds:
        a = _random_symbol(cfg, seed, grid, n)
        phis = _vec(grid, seed, 3, n, WindowVector)
        psis = _vec(grid, seed, 4, n, WindowVector)
        spec = LocalizationSpec(a, phis, psis)
        if a.factors is not None:
            na = math.prod(phase_modulation_norm(fa, fl["p0"], fl["q0"], s0, t0w)
                           for fa in a.factors)
        else:
            na = phase_modulation_norm(a, fl["p0"], fl["q0"], s0, t0w)
        nphi = modulation_norm_multi(phis, fl["r1"], fl["r1"], 2 * s, 0.0)
        npsi = modulation_norm_multi(psis, fl["r2"], fl["r2"], 2 * s, 0.0)
        for lam in cfg.dilations:
            fv = _vec(grid, seed, 1, n, scale=_dilation_scale(lam))
            Af = localization_apply(spec, fv)
            num = modulation_norm(Af, fl["p2"], fl["q2"], s, 0.0)
            den = na * nphi * npsi * modulation_norm_multi(fv, fl["p1"], fl["q1"], s, 0.0)
            rep.records.append({"seed": seed, "dilation": lam, "space": label,
                                "inputs_hash": _hash(a.values, *[f.values for f in fv]),
                                "numerator": num, "denominator": den,
                                "ratio": _ratio(num, den)})
    _summarize_sweep(rep, cfg)
    rep.wall_clock = time.perf_counter() - t0
    return rep


def run(cfg):
    """Dispatch on ``cfg.kind``."""
    return {"identities": certify_identities, "wigner": sweep_wigner_bound,
            "weyl": sweep_operator_bound, "localization": sweep_localization_bound}[cfg.kind](cfg)


# -- output -----------------------------------------------------------------------

def _cell(v):
    if isinstance(v, float):
        if math.isinf(v):
            return "inf"
        return format(v, ".17g")
    return str(v)


def report_csv(rep):
    """Per-trial records as CSV text (header only when there are none)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(rep.columns)
    for r in rep.records:
        w.writerow([_cell(r[c]) for c in rep.columns])
    return buf.getvalue()


def emit(rep, path):
    """Write ``<kind>.json``, ``<kind>.csv`` and ``<kind>.timing.json`` into ``path``.

    The JSON and CSV files hold no timing data and are byte-stable for a fixed
    config; wall-clock time goes to the separate timing file.
    """
    os.makedirs(path, exist_ok=True)
    base = os.path.join(path, rep.kind)
    with open(base + ".csv", "w", encoding="utf-8", newline="") as fh:
        fh.write(report_csv(rep))
    with open(base + ".json", "w", encoding="utf-8") as fh:
        json.dump(rep.as_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(base + ".timing.json", "w", encoding="utf-8") as fh:
        json.dump({"wall_clock_seconds": rep.wall_clock}, fh)
        fh.write("\n")
    return base
