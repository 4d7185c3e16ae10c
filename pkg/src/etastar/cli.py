"""Command line interface: ``etastar <subcommand> [options]``.

Exit status: 0 success, 1 verification failure (or oracles disagreeing),
2 configuration error, 3 budget exhausted.

CSV output has the columns quantity, mode, seed, field, value: one row per
leaf of the result, with nested fields joined by dots.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import BudgetExhausted, ConfigurationError
from .fixtures import NAMED, named
from .projective import Configuration, load_config
from .reports import record, render

CACHE_ENV = "ETASTAR_CACHE_DIR"

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ConfigurationError):
    pass


def resolve_input(spec: str) -> Configuration:
    """A built-in name (E3, simplex2, line3, ...) or a path to a configuration file."""
    path = Path(spec)
    if path.is_file():
        return load_config(path)
    try:
        return named(spec)
    except ConfigurationError:
        raise UsageError(f"{spec!r} is neither a file nor one of {', '.join(NAMED)}") from None


def cache_dir(args) -> Path | None:
    d = args.cache_dir or os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def _config_inputs(H: Configuration, spec: str) -> dict:
    return {"input": spec, "ambient_dim": H.ambient_dim, "points": len(H),
            "content_hash": H.content_hash()}


def _stats_store(args):
    d = cache_dir(args)
    if d is None:
        return None
    from .ensembles.store import StatsStore
    return StatsStore(d)


def _cached(args, key, compute):
    store = _stats_store(args)
    if store is None:
        return compute()
    return store.get_or_compute(key, compute)


# -- subcommands -------------------------------------------------------------------

def cmd_chambers(args):
    from .lattice import LatticeCache, build_lattice, chambers_deletion_restriction, chambers_zaslavsky
    H = resolve_input(args.input)
    values, status = {}, EXIT_OK
    if args.method in ("zaslavsky", "both"):
        d = cache_dir(args)
        L = LatticeCache(d).get(H) if d else build_lattice(H)
        values["zaslavsky"] = chambers_zaslavsky(H, L)
    if args.method in ("deletion-restriction", "both"):
        values["deletion_restriction"] = chambers_deletion_restriction(H)
    if args.method == "both":
        values["agree"] = values["zaslavsky"] == values["deletion_restriction"]
        status = EXIT_OK if values["agree"] else EXIT_VERIFY
    return "chambers", _config_inputs(H, args.input), args.method, None, values, status


def cmd_eta(args):
    import random
    from .eta import eta_star_via_flags, eta_star_via_homology, eta_star_via_order
    H = resolve_input(args.input)
    order = None
    if args.seed is not None:
        order = list(range(len(H)))
        random.Random(args.seed).shuffle(order)
    values, status = {}, EXIT_OK
    if args.method in ("order", "all"):
        values["order"] = eta_star_via_order(H, order)
    if args.method in ("homology", "all"):
        values["homology"] = eta_star_via_homology(H)
    if args.method in ("flags", "all"):
        values["flags"] = eta_star_via_flags(H) if H.full_span() else 0
    if args.method == "all":
        values["agree"] = len({values["order"], values["homology"], values["flags"]}) == 1
        status = EXIT_OK if values["agree"] else EXIT_VERIFY
    return "eta_star", _config_inputs(H, args.input), args.method, args.seed, values, status


def cmd_threshold(args):
    from .ensembles.store import Key
    from .ensembles.threshold import threshold_count
    n = _need(args.n, "--n")

    def compute():
        r = threshold_count(n, cross_check=not args.fast)
        return {"count": r.count, "schlafli_upper": r.schlafli_upper,
                "lower_bound": r.lower_bound, "ratio_to_asym": r.ratio_to_asym,
                "oracles": r.oracles, "agree": r.agree}
    mode = "zaslavsky" if args.fast else "all-oracles"
    values = _cached(args, Key("threshold", n, None, mode), compute)
    return "threshold_count", {"n": n}, mode, None, values, EXIT_OK if values["agree"] else EXIT_VERIFY


def cmd_singular(args):
    from .ensembles import singular as sg
    from .ensembles.store import Key
    n = _need(args.n, "--n")
    if args.method == "exact":
        def compute():
            r = sg.singular_exact(n, jobs=args.jobs)
            return {"singular_count": r.singular_count, "total": r.total, "P": r.P,
                    "asym_ratio": r.asym_ratio}
        values = _cached(args, Key("singular", n, None, "exact"), compute)
        return "singular", {"n": n}, "exact", None, values, EXIT_OK
    if args.samples < 10**4:
        raise UsageError("--samples must be at least 10000")
    seed = 0 if args.seed is None else args.seed

    def compute():
        r = sg.singular_mc(n, args.samples, seed, jobs=args.jobs)
        return {"hits": r.estimate.hits, "samples": r.estimate.samples,
                "P": float(r.value), "ci95": list(r.ci),
                "asym_ratio": float(r.asym_ratio) if r.asym_ratio is not None else None}
    values = _cached(args, Key("singular", n, args.samples, "monte_carlo", seed), compute)
    return "singular", {"n": n, "samples": args.samples}, "monte_carlo", seed, values, EXIT_OK


def cmd_delta(args):
    from .ensembles.delta import DeltaTable, delta_exact, delta_mc
    from .ensembles.store import Key
    n = _need(args.n, "--n")
    ks = [args.k] if args.k else list(range(1, n + 2))
    if args.method == "exhaustive":
        values = {str(k): _cached(args, Key("delta", n, k, "exhaustive"),
                                  lambda k=k: delta_exact(n, k, jobs=args.jobs)) for k in ks}
        table = DeltaTable(n, {int(k): Fraction(v) for k, v in values.items()})
        if not args.k:
            table.check()
        return "delta", {"n": n, "k": ks}, "exhaustive", None, values, EXIT_OK
    seed = 0 if args.seed is None else args.seed
    values = {}
    for k in ks:
        e = delta_mc(n, k, args.samples, seed)
        values[str(k)] = {"estimate": float(e.value), "hits": e.hits, "ci95": list(e.ci)}
    return "delta", {"n": n, "k": ks, "samples": args.samples}, "monte_carlo", seed, values, EXIT_OK


def cmd_gamma(args):
    from .ensembles.delta import gamma_spectrum, telescoping_holds
    n = _need(args.n, "--n")
    k = args.k or n
    seed = 0 if args.seed is None else args.seed
    s = gamma_spectrum(n, k, seed=seed)
    ok = telescoping_holds(s)
    values = {"gamma": s.gamma, "epsilon": s.epsilon, "epsilon_direct": s.epsilon_direct,
              "delta_k": s.delta_k, "delta_k1": s.delta_k1, "projector": s.projector_mode,
              "telescoping": ok}
    return "gamma_spectrum", {"n": n, "k": k}, s.projector_mode, seed, values, EXIT_OK if ok else EXIT_VERIFY


def cmd_verify(args):
    from .verify import run_suite
    seed = 0 if args.seed is None else args.seed
    rep = run_suite(args.level, seed, args.only)
    values = {"status": rep["status"],
              "summary": {s: sum(c["status"] == s for c in rep["checks"]) for s in ("pass", "fail", "flagged")},
              "checks": rep["checks"]}
    status = EXIT_OK if rep["status"] == "pass" else EXIT_VERIFY
    return "verify", {"level": args.level, "only": args.only}, args.level, seed, values, status


def cmd_report(args):
    from .ensembles import singular as sg
    from .ensembles.threshold import bounds_report, threshold_count
    values = {"bounds": {}, "threshold_ratio": {}, "singular": {}}
    ok = True
    for n in range(1, min(args.n_max, 3) + 1):
        b = bounds_report(n)
        ok &= b.holds
        values["bounds"][n] = {"two_eta": 2 * b.eta_star, "count": b.count,
                               "schlafli_upper": b.schlafli_upper, "holds": b.holds}
    for n in range(1, args.n_max + 1):
        values["threshold_ratio"][n] = threshold_count(n, cross_check=False).ratio_to_asym
    for n in range(2, min(args.n_max + 1, sg.EXACT_MAX_N - 1) + 1):
        r = sg.singular_exact(n, jobs=args.jobs)
        values["singular"][n] = {"P": r.P, "asym_ratio": r.asym_ratio}
    values["holds"] = ok
    return "report", {"n_max": args.n_max}, "exact", None, values, EXIT_OK if ok else EXIT_VERIFY


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required")
    if value < 1:
        raise UsageError(f"{flag} must be positive")
    return value


# -- parser ---------------------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="seed for orders, samplers and MC streams")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes (results do not depend on it)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--cache-dir", default=None, help=f"result cache directory (default: ${CACHE_ENV})")
    common.add_argument("--deterministic", action="store_true", help="omit runtime and timestamp")

    p = argparse.ArgumentParser(prog="etastar", description=__doc__.splitlines()[0],
                                epilog="CSV columns: quantity, mode, seed, field, value.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("chambers", cmd_chambers, "chamber count of the arrangement normal to a configuration")
    sp.add_argument("--input", required=True, help=f"file or one of {', '.join(NAMED)}")
    sp.add_argument("--method", choices=("zaslavsky", "deletion-restriction", "both"), default="both")

    sp = add("eta", cmd_eta, "eta-star by order enumeration, homology or flags")
    sp.add_argument("--input", required=True)
    sp.add_argument("--method", choices=("order", "homology", "flags", "all"), default="all")

    sp = add("threshold", cmd_threshold, "number of threshold functions P(2,n)")
    sp.add_argument("--n", type=int)
    sp.add_argument("--fast", action="store_true", help="skip the cross-checking oracles")

    sp = add("singular", cmd_singular, "singularity of random +-1 matrices")
    sp.add_argument("--n", type=int)
    sp.add_argument("--method", choices=("exact", "mc"), default="exact")
    sp.add_argument("--samples", type=int, default=10**6)

    sp = add("delta", cmd_delta, "fraction of dependent k-tuples of the cube")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--method", choices=("exhaustive", "mc"), default="exhaustive")
    sp.add_argument("--samples", type=int, default=10**5)

    sp = add("gamma", cmd_gamma, "flag spectrum gamma^m and increment epsilon")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)

    sp = add("verify", cmd_verify, "run the invariant suite")
    sp.add_argument("--level", choices=("quick", "full"), default="quick")
    sp.add_argument("--only", default=None, help="restrict to one module or check name")

    sp = add("report", cmd_report, "bounds and finite-n asymptotic ratios")
    sp.add_argument("--n-max", type=_positive, default=3)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        quantity, inputs, mode, seed, values, status = args.func(args)
    except BudgetExhausted as exc:
        print(f"etastar: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConfigurationError, OSError) as exc:
        print(f"etastar: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    rec = record(quantity, inputs, mode, seed, values, time.perf_counter() - start, args.deterministic)
    sys.stdout.write(render(rec, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
