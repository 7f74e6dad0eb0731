"""Command-line frontend.

One binary, subcommand style.  Samplers, exact evaluators and the harness
suites; outputs are schema-versioned JSON, CSV with a header row, or SVG.
Identical (argv, seed) invocations produce byte-identical primary outputs.

Exit codes: 0 success, 2 usage error, 3 verification failure,
4 numerical-consistency error.  All errors are also emitted as a
single-line JSON object on stderr.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import xml.etree.ElementTree as ET

from . import fredholm, harness, kernels
from .growth import (aztec_shuffle, domino_class, tiling_to_paths, sample_g_batch,
                     sample_geometric_field, staircase, png_height,
                     sample_gue, rsk_shape, lis, PermutationRecord)
from .processes import NumericalConsistencyError, TailDivergenceError

__all__ = ["run", "main"]

# Fixed SVG domino colors (documented in --help): chosen so the frozen
# brick-wall corners stand out from the disordered center by eye.
SVG_COLORS = {"N": "#d62728", "S": "#1f77b4", "E": "#2ca02c", "W": "#e8c51c"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of printing+exiting, so errors can be
    mirrored as single-line JSON on stderr with exit code 2."""

    def error(self, message):
        raise UsageError(message)


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _csv(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(v) if isinstance(v, float) else str(v)
                              for v in row))
    return "\n".join(lines) + "\n"


def _seed_of(args):
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("DETLAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError("DETLAB_SEED must be an integer") from None
    raise UsageError("no --seed given and DETLAB_SEED is not set")


# ---------------------------------------------------------------------------
# SVG rendering


def _tiling_svg(tiling, with_paths):
    n = tiling.n
    unit = 10.0
    span = 2 * (n + 1) * unit

    def X(x):
        return (x + n + 1) * unit

    def Y(y):
        return (n + 1 - y) * unit  # flip so +y points up

    root = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "width": str(int(span)), "height": str(int(span)),
        "viewBox": f"0 0 {int(span)} {int(span)}",
    })
    for x, y, o in tiling.dominos:
        w, h = (2, 1) if o == "H" else (1, 2)
        cls = domino_class(x, y, o, n)
        ET.SubElement(root, "rect", {
            "x": repr(X(x)), "y": repr(Y(y + h)),
            "width": repr(w * unit), "height": repr(h * unit),
            "class": cls, "fill": SVG_COLORS[cls],
            "stroke": "#333333", "stroke-width": "0.5",
        })
    if with_paths:
        for path in tiling_to_paths(tiling).paths:
            pts = " ".join(f"{X(px)!r},{Y(py)!r}" for px, py in path)
            ET.SubElement(root, "polyline", {
                "points": pts, "fill": "none",
                "stroke": "#000000", "stroke-width": "1.5",
            })
    return ET.tostring(root, encoding="unicode") + "\n"


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_sample_aztec(args):
    tiling = aztec_shuffle(args.n, args.a, _seed_of(args))
    _emit(tiling.to_json() + "\n", args.out)
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(_tiling_svg(tiling, args.paths))
    return 0


def _cmd_corner_growth(args):
    draws = sample_g_batch(args.M, args.N, args.q, args.samples,
                           _seed_of(args))
    if args.format == "csv":
        text = _csv(["index", "G"], list(enumerate(draws.tolist())))
    else:
        text = json.dumps({
            "schema": "draws/1",
            "params": {"M": args.M, "N": args.N, "q": args.q,
                       "samples": args.samples},
            "values": draws.tolist(),
        }, sort_keys=True, separators=(",", ":")) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_png_height(args):
    if args.t < 1 or abs(args.x) > args.t:
        raise UsageError("need t >= 1 and |x| <= t")
    order = 2 * args.t - 1
    p = math.sqrt(args.q)
    field = sample_geometric_field(staircase(order), [p] * order,
                                   [p] * order, _seed_of(args))
    _emit(str(png_height(field, args.x, args.t)) + "\n", args.out)
    return 0


def _cmd_tw(args):
    _emit(repr(fredholm.tracy_widom_cdf(args.t)) + "\n", args.out)
    return 0


def _cmd_g_cdf(args):
    _emit(repr(fredholm.g_cdf_exact(args.M, args.N, args.q, args.t)) + "\n",
          args.out)
    return 0


def _cmd_lis_cdf(args):
    _emit(repr(fredholm.l_alpha_cdf(args.alpha, args.n)) + "\n", args.out)
    return 0


_KERNELS = {
    "airy": (2, lambda a: kernels.airy_kernel(a[0], a[1])),
    "airy-contour": (2, lambda a: kernels.airy_contour(a[0], a[1])),
    "extended-airy": (4, lambda a: kernels.extended_airy(*a)),
    "extended-airy-contour": (4, lambda a: kernels.extended_airy_contour(*a)),
    "krawtchouk": (5, lambda a: kernels.krawtchouk_kernel(
        int(a[0]), int(a[1]), a[2])(int(a[3]), int(a[4]))),
    "krawtchouk-line": (5, lambda a: kernels.krawtchouk_line_contour(
        int(a[0]), int(a[1]), a[2], int(a[3]), int(a[4]))),
    "extended-krawtchouk": (6, lambda a: kernels.extended_krawtchouk(
        int(a[0]), a[1])((int(a[2]), int(a[3])), (int(a[4]), int(a[5])))),
    "meixner": (5, lambda a: kernels.meixner_kernel(
        int(a[0]), int(a[1]), a[2])(int(a[3]), int(a[4]))),
    "bessel": (3, lambda a: kernels.discrete_bessel(a[0])(int(a[1]),
                                                          int(a[2]))),
    "hermite": (3, lambda a: kernels.hermite_kernel(int(a[0]))(a[1], a[2])),
}


def _cmd_kernel_eval(args):
    if args.name not in _KERNELS:
        raise UsageError(f"unknown kernel {args.name!r}; choose from "
                         + ", ".join(sorted(_KERNELS)))
    nargs, fn = _KERNELS[args.name]
    try:
        vals = json.loads(args.args)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--args must be a JSON list: {exc}") from None
    if not isinstance(vals, list) or len(vals) != nargs:
        raise UsageError(f"kernel {args.name!r} takes {nargs} arguments")
    _emit(repr(float(fn([float(v) for v in vals]))) + "\n", args.out)
    return 0


def _suite_kernel_identities(seed):
    return [harness.kernel_identity_suite()]


def _suite_exact_vs_mc(seed):
    specs = [
        harness.ExperimentSpec("g-cdf", {"M": 4, "N": 6, "q": 0.5},
                               10000, seed, {"kind": "se", "k": 3.0}),
        harness.ExperimentSpec("lis-cdf", {"alpha": 4.0},
                               20000, seed, {"kind": "se", "k": 3.0}),
        harness.ExperimentSpec("aztec-lastline", {"n": 8, "a": 0.7, "r": 4},
                               2000, seed, {"kind": "se", "k": 3.0}),
        harness.ExperimentSpec("plancherel-rho1", {"alpha": 4.0},
                               20000, seed, {"kind": "se", "k": 3.0}),
        harness.ExperimentSpec("gue-rho1", {"N": 8},
                               20000, seed, {"kind": "se", "k": 3.0}),
    ]
    return [harness.run_exact_vs_mc(s) for s in specs]


def _suite_sweeps(seed):
    return [harness.convergence_sweep(t, seed=seed)
            for t in harness.SWEEP_TARGETS]


def _suite_two_time(seed):
    return [
        harness.two_time_check(64, (0.0, 0.5), (0.0, 0.0), samples=2000,
                               seed=seed),
        harness.two_time_check(64, (-2.0, 2.0), (0.0, 0.0), samples=2000,
                               seed=seed, mode="product"),
    ]


_SUITES = {
    "kernel-identities": _suite_kernel_identities,
    "exact-vs-mc": _suite_exact_vs_mc,
    "sweeps": _suite_sweeps,
    "two-time": _suite_two_time,
}


def _cmd_verify(args):
    if args.suite == "all":
        names = list(_SUITES)
    elif args.suite in _SUITES:
        names = [args.suite]
    else:
        raise UsageError(f"unknown suite {args.suite!r}; choose from "
                         + ", ".join(list(_SUITES) + ["all"]))
    seed = args.seed if args.seed is not None else \
        int(os.environ.get("DETLAB_SEED", "0"))
    reports = []
    for name in names:
        reports.extend(_SUITES[name](seed))
    lines = [json.dumps(r.to_dict(), sort_keys=True, separators=(",", ":"))
             for r in reports]
    _emit("\n".join(lines) + "\n", args.out)
    if any(r.verdict != "pass" for r in reports):
        bad = [r.id for r in reports if r.verdict != "pass"]
        raise VerificationFailure(f"failed: {', '.join(bad)}")
    return 0


class VerificationFailure(Exception):
    pass


def _cmd_rsk(args):
    try:
        perm = PermutationRecord(int(v) for v in args.perm.split(","))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    shape = rsk_shape(perm.values)
    payload = {"schema": "rsk/1", "perm": list(perm.values),
               "shape": list(shape.parts), "lis": lis(perm.values)}
    _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n",
          args.out)
    return 0


def _cmd_sample_gue(args):
    eigs = sample_gue(args.N, _seed_of(args))
    if args.format == "csv":
        text = _csv(["index", "eigenvalue"], list(enumerate(eigs.tolist())))
    else:
        text = json.dumps({"schema": "spectrum/1", "N": args.N,
                           "eigenvalues": eigs.tolist()},
                          sort_keys=True, separators=(",", ":")) + "\n"
    _emit(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# Parser


def _build_parser():
    p = _Parser(
        prog="detlab",
        description="Determinantal processes and random growth models.",
        epilog="SVG domino colors: N=%(N)s S=%(S)s E=%(E)s W=%(W)s. "
               "Seeds fall back to the DETLAB_SEED environment variable."
               % SVG_COLORS)
    p.add_argument("--config", help="JSON file of flag defaults, merged "
                                    "under explicit flags")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        sp.add_argument("--out", help="output file (default: stdout)")
        return sp

    sp = add("sample-aztec", _cmd_sample_aztec,
             help="sample a diamond tiling by shuffling")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--a", type=float, required=True,
                    help="vertical-domino weight")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--svg", help="also render an SVG here")
    sp.add_argument("--paths", action="store_true",
                    help="overlay the lattice paths on the SVG")

    sp = add("corner-growth", _cmd_corner_growth,
             help="sample last-passage times G(M,N)")
    sp.add_argument("--M", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--samples", type=int, default=1)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = add("png-height", _cmd_png_height,
             help="sample the discrete droplet height h(x,t)")
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--seed", type=int)

    sp = add("tw", _cmd_tw, help="Tracy-Widom CDF")
    sp.add_argument("--t", type=float, required=True)

    sp = add("g-cdf", _cmd_g_cdf, help="exact P[G(M,N) <= t]")
    sp.add_argument("--M", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--t", type=int, required=True)

    sp = add("lis-cdf", _cmd_lis_cdf,
             help="exact Poissonized increasing-subsequence CDF")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("kernel-eval", _cmd_kernel_eval, help="evaluate a named kernel")
    sp.add_argument("--name", required=True,
                    help="one of: " + ", ".join(sorted(_KERNELS)))
    sp.add_argument("--args", required=True, help="JSON list of arguments")

    sp = add("verify", _cmd_verify, help="run a harness suite")
    sp.add_argument("--suite", required=True,
                    help="one of: " + ", ".join(list(_SUITES) + ["all"]))
    sp.add_argument("--seed", type=int)
    sp.add_argument("--workers", type=int, default=0,
                    help="worker count hint (0 = available parallelism)")

    sp = add("rsk", _cmd_rsk, help="RSK shape of a permutation")
    sp.add_argument("--perm", required=True,
                    help="comma-separated one-line permutation")

    sp = add("sample-gue", _cmd_sample_gue, help="sample a GUE spectrum")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--format", choices=("json", "csv"), default="json")

    return p


def _apply_config(parser, argv):
    """Pre-scan --config; file values become defaults under explicit flags."""
    path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
    if path is None:
        return
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad config file: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config file must hold a JSON object")
    known = set()
    for sp in parser._subparsers._group_actions[0].choices.values():
        for act in sp._actions:
            known.add(act.dest)
    unknown = set(cfg) - known
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    for sp in parser._subparsers._group_actions[0].choices.values():
        for act in sp._actions:
            if act.dest in cfg:
                act.required = False
        sp.set_defaults(**{k: v for k, v in cfg.items()
                           if k in {a.dest for a in sp._actions}})


def _error_json(code, message):
    sys.stderr.write(json.dumps(
        {"error": message, "exit": code}, separators=(",", ":")) + "\n")
    return code


def run(argv):
    """Entry point; returns the process exit code."""
    parser = _build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        return _error_json(2, str(exc))
    except VerificationFailure as exc:
        return _error_json(3, str(exc))
    except (NumericalConsistencyError, TailDivergenceError) as exc:
        return _error_json(4, str(exc))
    except ValueError as exc:
        return _error_json(2, str(exc))


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
