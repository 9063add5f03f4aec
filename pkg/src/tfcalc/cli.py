"""Command line interface ``tfcalc``.

Exit codes: 0 success, 1 a check or verdict failed, 2 bad usage or input.
"""

import argparse
import json
import math
import sys

from . import admissibility as adm
from . import io as tfio
from . import verify
from .grid import PhaseFn, gaussian, hermite1, make_grid, random_test_signal
from .modspaces import lp_weighted_norm, mixed_norm, modulation_norm
from .operators import (LocalizationSpec, Symbol, localization_apply, localization_kernel,
                        weyl_apply_multi)
from .tf_transforms import stft, wigner

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _paths(arg):
    return [p for p in arg.split(",") if p]


def _load_signals(arg):
    out = []
    for p in _paths(arg):
        obj = tfio.read(p)
        if isinstance(obj, PhaseFn):
            raise UsageError(f"{p}: expected a signal, found a phase-space function")
        out.append(obj)
    return out


def _load_symbol(path):
    obj = tfio.read(path)
    if not isinstance(obj, PhaseFn):
        raise UsageError(f"{path}: expected a phase-space symbol")
    return Symbol.wrap(obj)


def cmd_make(args):
    g = make_grid(args.d, args.N, args.L)
    if args.kind == "gaussian":
        f = gaussian(g)
    elif args.kind == "hermite":
        f = hermite1(g)
    elif args.kind == "random":
        f = random_test_signal(args.seed, g)
    else:  # random symbol on the phase lattice of an n-factor grid
        big = g.with_dim(args.n * g.d)
        s = random_test_signal(args.seed, big.with_dim(2 * big.d))
        f = PhaseFn(big, s.values, args.n)
    tfio.write(args.out, f)
    return EXIT_OK


def cmd_transform(args):
    (f,) = _load_signals(args.inp)
    (g,) = _load_signals(args.window)
    fn = stft if args.kind == "stft" else wigner
    tfio.write(args.out, fn(f, g, method=args.method))
    return EXIT_OK


def cmd_localize(args):
    fv = _load_signals(args.inp)
    spec = LocalizationSpec(_load_symbol(args.symbol), _load_signals(args.analysis),
                            _load_signals(args.synthesis))
    tfio.write(args.out, localization_apply(spec, fv, method=args.method))
    if args.kernel_out:
        tfio.write_kernel(args.kernel_out, localization_kernel(spec))
    return EXIT_OK


def cmd_weyl(args):
    fv = _load_signals(args.inp)
    tfio.write(args.out, weyl_apply_multi(_load_symbol(args.symbol), fv, method=args.method))
    return EXIT_OK


def cmd_norm(args):
    obj = tfio.read(args.inp)
    if args.kind == "lp":
        if isinstance(obj, PhaseFn):
            raise UsageError("--kind lp needs a signal")
        val = lp_weighted_norm(obj, args.p, args.t)
    elif args.kind == "mixed":
        if not isinstance(obj, PhaseFn):
            raise UsageError("--kind mixed needs a phase-space function")
        val = mixed_norm(obj, args.p, args.q, args.s, args.t)
    else:
        if isinstance(obj, PhaseFn):
            raise UsageError("--kind modulation needs a signal")
        window = _load_signals(args.window)[0] if args.window else None
        val = modulation_norm(obj, args.p, args.q, args.s, args.t, window=window)
    print(format(val, ".17g"))
    if args.report:
        rec = {"kind": args.kind, "p": _exp_str(args.p), "q": _exp_str(args.q), "s": args.s, "t": args.t,
               "input": args.inp, "window": args.window, "value": val}
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(rec, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


_CHECKS = {
    "convolution": adm.check_convolution_thm,
    "wigner": adm.check_wigner_thm,
    "weyl": adm.check_weyl_bound_thm,
    "localization": adm.check_localization_thm,
}


def cmd_admissible(args):
    with open(args.params, encoding="utf-8") as fh:
        params = json.load(fh)
    try:
        verdict = _CHECKS[args.theorem](**params)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad parameters: {exc}") from exc
    out = verdict.as_dict()
    out["explanation"] = adm.explain(verdict)
    text = json.dumps(out, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_OK if verdict.passed else EXIT_FAIL


def _suite_config(data, kind):
    if kind in data and isinstance(data[kind], dict):
        return dict(data[kind])
    flat = {k: v for k, v in data.items() if k not in verify.KINDS and k != "kind"}
    if "kind" in data and data["kind"] != kind:
        return {}
    return flat


def cmd_verify(args):
    data = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
    kinds = verify.KINDS if args.suite == "all" else (args.suite,)
    ok = True
    for kind in kinds:
        try:
            cfg = verify.ExperimentConfig.from_dict(_suite_config(data, kind), kind=kind)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad config for {kind}: {exc}") from exc
        rep = verify.run(cfg)
        verify.emit(rep, args.out)
        status = "PASS" if rep.passed else "FAIL"
        print(f"{kind}: {status}" + (f" ({rep.failure.splitlines()[0]})" if rep.failure else ""))
        ok = ok and rep.passed
    return EXIT_OK if ok else EXIT_FAIL


def build_parser():
    ap = argparse.ArgumentParser(prog="tfcalc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("make", help="write a test signal or symbol")
    p.add_argument("--kind", choices=["gaussian", "hermite", "random", "symbol"], required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--N", type=int, default=64)
    p.add_argument("--L", type=float, default=8.0)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_make)

    p = sub.add_parser("transform", help="STFT or cross-Wigner transform")
    p.add_argument("--kind", choices=["stft", "wigner"], required=True)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--window", required=True)
    p.add_argument("--method", choices=["fft", "direct"], default="fft")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("localize", help="apply a multilinear localization operator")
    p.add_argument("--symbol", required=True)
    p.add_argument("--analysis", required=True, help="comma-separated window files")
    p.add_argument("--synthesis", required=True, help="comma-separated window files")
    p.add_argument("--in", dest="inp", required=True, help="comma-separated signal files")
    p.add_argument("--method", choices=["auto", "fft", "direct"], default="auto")
    p.add_argument("--out", required=True)
    p.add_argument("--kernel-out", default=None, help="also export the dense kernel")
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("weyl", help="apply a (multilinear) Weyl operator")
    p.add_argument("--symbol", required=True)
    p.add_argument("--in", dest="inp", required=True, help="comma-separated signal files")
    p.add_argument("--method", choices=["fft", "kernel"], default="fft")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("norm", help="weighted Lebesgue, mixed or modulation norm")
    p.add_argument("--kind", choices=["lp", "mixed", "modulation"], required=True)
    p.add_argument("--p", default="2")
    p.add_argument("--q", default="2")
    p.add_argument("--s", type=float, default=0.0)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--window", default=None)
    p.add_argument("--report", default=None, help="JSON record of the computation")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("admissible", help="check a theorem's exponent hypotheses")
    p.add_argument("--theorem", choices=sorted(_CHECKS), required=True)
    p.add_argument("--params", required=True, help='JSON file; infinity as "inf"')
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("verify", help="run identity certification or ratio sweeps")
    p.add_argument("--suite", choices=list(verify.KINDS) + ["all"], required=True)
    p.add_argument("--config", default=None)
    p.add_argument("--out", required=True, help="report directory")
    p.set_defaults(func=cmd_verify)
    return ap


def _exp_str(v):
    return "inf" if math.isinf(v) else v


def _exp_arg(v):
    return math.inf if str(v).strip().lower() in ("inf", "infinity") else float(v)


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "norm":
            args.p, args.q = _exp_arg(args.p), _exp_arg(args.q)
        return args.func(args)
    except UsageError as exc:
        print(f"tfcalc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"tfcalc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
