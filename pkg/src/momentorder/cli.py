"""Command-line front end: moments, comparisons, constructions, set
queries, games, and artifact verification.

Every construct invocation emits a replayable artifact: the exact command
parameters, the construction payload with all searched constants as
rational strings, a verification summary, and the tool version. Artifacts
are serialized deterministically (sorted keys, no timestamps), so re-running
a command reproduces the bytes and ``verify`` replays a recorded artifact by
rebuilding it from its own parameters.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 precision
budget exceeded, 4 construction failure, 5 unsupported set operation or
game size.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .config import DEFAULT, Settings, settings_from_json
from .constructions import (
    BumpSpec,
    ConstructionFailure,
    ac_alternating_cdf_pair,
    alternating_pair,
    discrete_alternating_cdf_pair,
    matched_moment_pair,
    mixed_incomparable_demo,
    run_padded_alternating,
    smooth_kernel_demo,
    staged_vanishing_kernel,
    unimodal_alternating_pair,
    vanishing_moment_kernel,
)
from .filters import (
    UnsupportedSetOperation,
    has_fip,
    in_frechet,
    in_msz_filter,
    is_msz_sequence,
    parse_set,
    theta_measure,
)
from .games import (
    DistGame,
    GameSizeError,
    MixedProfile,
    analyze_existence,
    check_lex_equilibrium,
    project,
    verify_report,
)
from .measures import (
    PrecisionExceeded,
    measure_from_json,
    measure_hash,
    measure_to_json,
    moment_table,
    rat,
    rat_str,
)
from .tailorder import (
    certify_cdf_dominance,
    compare_empirical,
    decide_piecewise,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_PRECISION = 3
EXIT_CONSTRUCTION = 4
EXIT_UNSUPPORTED = 5

CACHE_ENV = "MOMENTORDER_CACHE"


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def _emit(data, path: str | None) -> None:
    text = _dump(data) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _load_settings(args) -> Settings:
    if getattr(args, "config", None):
        return settings_from_json(_load_json(args.config))
    return DEFAULT


def _write_csv(path: str, rows: list[dict]) -> None:
    if not rows:
        return
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)


def _write_plot(path: str, columns: list[str], rows: list[list[float]]) -> None:
    with open(path, "w") as fh:
        fh.write("# " + " ".join(columns) + "\n")
        for row in rows:
            fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")


def make_artifact(command: str, params: dict, payload: dict, verification: dict) -> dict:
    return {
        "command": command,
        "params": params,
        "payload": payload,
        "verification": verification,
        "version": __version__,
    }


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------


def cmd_moments(args) -> int:
    settings = _load_settings(args)
    mu = measure_from_json(_load_json(args.measure))
    cache_dir = os.environ.get(CACHE_ENV)
    rows = None
    cache_file = None
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        cache_file = os.path.join(cache_dir, measure_hash(mu) + ".json")
        if os.path.exists(cache_file):
            cached = _load_json(cache_file)
            if cached["k_max"] >= args.k_max:
                rows = cached["rows"][: args.k_max + 1]
    if rows is None:
        rows = moment_table(mu, args.k_max, settings)
        if cache_file:
            with open(cache_file, "w") as fh:
                json.dump({"k_max": args.k_max, "rows": rows}, fh, sort_keys=True)
    if args.out:
        _write_csv(args.out, rows)
    else:
        _emit({"moments": rows}, None)
    return EXIT_OK


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------


def cmd_compare(args) -> int:
    settings = _load_settings(args)
    mu1 = measure_from_json(_load_json(args.measure1))
    mu2 = measure_from_json(_load_json(args.measure2))
    result = {"empirical": compare_empirical(mu1, mu2, args.depth, settings).to_json()}
    if args.certify:
        kind, _, arg = args.certify.partition(":")
        if kind == "piecewise":
            result["decision"] = decide_piecewise(mu1, mu2).to_json()
        elif kind == "cdf":
            result["cdf_certificate"] = certify_cdf_dominance(
                mu1, mu2, rat(arg), settings
            ).to_json()
        else:
            raise ValueError(f"unknown certifier {args.certify!r}")
    _emit(result, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def _density_plot_rows(densities: dict, points: int = 512) -> tuple[list, list]:
    los = [d.support[0] for d in densities.values()]
    his = [d.support[1] for d in densities.values()]
    lo, hi = min(los), max(his)
    rows = []
    for i in range(points + 1):
        x = lo + (hi - lo) * Fraction(i, points)
        rows.append(
            [float(x)] + [float(d.evaluate(x)) for d in densities.values()]
        )
    return ["x"] + list(densities), rows


def _cdf_step_plot(mu_f, mu_g, k_max: int) -> tuple[list, list]:
    from .measures import cdf

    fi, gi = mu_f.impl, mu_g.impl
    xs = sorted(
        {gi.location(0)}
        | {fi.location(i) for i in range(1, k_max + 1)}
        | {gi.location(i) for i in range(1, k_max + 1)}
    )
    rows = [
        [float(x), float(cdf(mu_f, x).value), float(cdf(mu_g, x).value)]
        for x in xs
    ]
    return ["x", "F_low", "F_high"], rows


def cmd_construct(args) -> int:
    settings = _load_settings(args)
    spec = BumpSpec(mode=args.mode, degree=args.degree)
    params = {
        "kind": args.kind,
        "a": rat_str(rat(args.a)),
        "b": rat_str(rat(args.b)),
        "n": args.n,
        "stages": args.stages,
        "k_max": args.k_max,
        "mode": args.mode,
        "degree": args.degree,
        "padded": args.padded,
    }
    payload, verification, plotdata, csvrows = build_construction(
        args.kind, params, spec, settings
    )
    artifact = make_artifact(f"construct {args.kind}", params, payload, verification)
    if args.artifact:
        _emit(artifact, args.artifact)
    if args.out and csvrows:
        _write_csv(args.out, csvrows)
    if args.plot and plotdata:
        _write_plot(args.plot, *plotdata)
    if not args.artifact:
        _emit(artifact, None)
    return EXIT_OK


def build_construction(kind: str, params: dict, spec: BumpSpec, settings: Settings):
    """Run one named construction; returns payload, verification summary,
    optional plot data and optional CSV rows. Deterministic in its inputs."""
    from .measures import moment

    a, b = rat(params["a"]), rat(params["b"])
    if kind == "kernel":
        if spec.mode == "smooth-quadrature":
            demo = smooth_kernel_demo(a, b, params["n"], spec)
            return demo.to_json(), {"residual_max": max(map(abs, demo.residuals))}, None, None
        kern = vanishing_moment_kernel(a, b, params["n"], spec, settings=settings)
        sweep = moment_table(kern.density, max(kern.vanished_orders) + 2, settings)
        verification = {
            "vanished": [r["k"] for r in sweep if r["value"] == "0"],
            "first_nonzero": next(
                (r["k"] for r in sweep if r["value"] != "0"), None
            ),
        }
        plot = _density_plot_rows({"kernel": kern.density})
        return kern.to_json(), verification, plot, sweep
    if kind == "staged":
        sk = staged_vanishing_kernel(a, b, params["stages"], spec=spec, settings=settings)
        checks = {
            str(k): rat_str(moment(sk.density, k, settings).value)
            for k in sk.all_vanishing
        }
        # the claim at k_j + 1 is nonvanishing: record the sign, not the
        # (enormous) exact value
        nonzero = {
            str(k + 1): "+" if moment(sk.density, k + 1, settings).value > 0 else "-"
            for k in sk.exponents
        }
        verification = {"vanishing": checks, "next_order_sign": nonzero}
        plot = _density_plot_rows({"staged": sk.density})
        return sk.to_json(), verification, plot, None
    if kind == "matched":
        mp = matched_moment_pair(a, b, params["stages"], spec, settings)
        sweep = [
            {
                "k": k,
                "difference": rat_str(
                    moment(mp.f2, k, settings).value
                    - moment(mp.f1, k, settings).value
                ),
            }
            for k in mp.agreement_indices
        ]
        verification = {
            "agreement": sweep,
            "mass_f1": rat_str(moment(mp.f1, 0, settings).value),
            "mass_f2": rat_str(moment(mp.f2, 0, settings).value),
        }
        plot = _density_plot_rows({"f1": mp.f1, "f2": mp.f2})
        return mp.to_json(), verification, plot, sweep
    if kind in ("alternating", "unimodal"):
        if kind == "alternating":
            pair = alternating_pair(
                a, b, params["stages"], spec, params["padded"], settings
            )
            payload = pair.to_json()
            f, g, indices = pair.f, pair.g, pair.indices
        else:
            uni = unimodal_alternating_pair(a, b, params["stages"], spec, settings)
            payload = uni.to_json()
            f, g, indices = uni.f, uni.g, uni.indices
        signs = []
        for n, ell in enumerate(indices):
            d = moment(f, ell, settings).value - moment(g, ell, settings).value
            signs.append({"exponent": ell, "sign": "+" if d > 0 else "-"})
        verification = {"alternation": signs}
        plot = _density_plot_rows({"f": f, "g": g})
        return payload, verification, plot, None
    if kind == "mixed-demo":
        pair = alternating_pair(a, b, params["stages"], spec, False, settings)
        demo = mixed_incomparable_demo(pair, settings)
        verification = {
            "low_vs_anchor": demo.low_certificate.to_json(),
            "anchor_vs_high": demo.high_certificate.to_json(),
            "mixture_equals_pair_f": True,
        }
        plot = _density_plot_rows(
            {"low": demo.low, "anchor": demo.anchor, "high": demo.high}
        )
        return demo.to_json(), verification, plot, None
    if kind == "padded-runs":
        pair = alternating_pair(a, b, params["stages"], spec, True, settings)
        report = run_padded_alternating(pair, settings)
        payload = {"pair": pair.to_json(), "report": report.to_json()}
        verification = {
            "runs": [list(r) for r in report.runs],
            "harmonic_sums": [rat_str(h) for h in report.harmonic_sums],
        }
        return payload, verification, None, None
    if kind == "discrete-cdf":
        mu_f, mu_g, report = discrete_alternating_cdf_pair(
            a, params["k_max"], settings=settings
        )
        payload = {
            "low": measure_to_json(mu_f),
            "high": measure_to_json(mu_g),
            "report": report.to_json(),
        }
        verification = {
            "cdf_alternations": len(report.cdf_checks),
            "dominance_depth": report.dominance_depth,
        }
        plot = _cdf_step_plot(mu_f, mu_g, params["k_max"])
        csvrows = [
            {
                "k": k,
                "G_at_y": rat_str(gy),
                "F_at_y": rat_str(fy),
                "G_at_x": rat_str(gx),
                "F_at_x": rat_str(fx),
            }
            for k, gy, fy, gx, fx in report.cdf_checks
        ]
        return payload, verification, plot, csvrows
    if kind == "ac-cdf":
        pair = ac_alternating_cdf_pair(a, params["k_max"], spec, settings=settings)
        verification = {"cdf_alternations": len(pair.cdf_checks)}
        plot = _density_plot_rows({"low": pair.low, "high": pair.high})
        return pair.to_json(), verification, plot, None
    raise ValueError(f"unknown construction kind {kind!r}")


# ---------------------------------------------------------------------------
# filters
# ---------------------------------------------------------------------------


def cmd_filters(args) -> int:
    settings = _load_settings(args)
    if args.query == "fip":
        exprs = [parse_set(e) for e in args.expr]
        _emit(has_fip(exprs, settings).to_json(), args.out)
        return EXIT_OK
    if args.query == "msz-seq":
        if args.sequence_file:
            data = _load_json(args.sequence_file)
            verdict = is_msz_sequence(
                data["prefix"], data.get("certificate")
            )
        else:
            verdict = is_msz_sequence(parse_set(args.expr[0]))
        _emit(verdict.to_json(), args.out)
        return EXIT_OK
    S = parse_set(args.expr[0])
    if args.query == "theta":
        _emit(theta_measure(S).to_json(), args.out)
    elif args.query == "frechet":
        _emit({"in_frechet": in_frechet(S)}, args.out)
    elif args.query == "msz":
        _emit({"in_msz_filter": in_msz_filter(S)}, args.out)
    else:
        raise ValueError(f"unknown query {args.query!r}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# game
# ---------------------------------------------------------------------------


def cmd_game(args) -> int:
    G = DistGame.from_json(_load_json(args.game))
    if args.action == "analyze":
        report = analyze_existence(G)
        out = report.to_json()
        out["verified"] = verify_report(G, report)
        _emit(out, args.out)
        return EXIT_OK
    if args.action == "check":
        profile = MixedProfile.from_json(_load_json(args.profile))
        _emit(check_lex_equilibrium(G, profile), args.out)
        return EXIT_OK
    if args.action == "project":
        matrix = project(G, args.coordinate)
        _emit(
            {"coordinate": args.coordinate,
             "matrix": [[rat_str(x) for x in row] for row in matrix]},
            args.out,
        )
        return EXIT_OK
    raise ValueError(f"unknown action {args.action!r}")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    settings = _load_settings(args)
    artifact = _load_json(args.artifact)
    command = artifact.get("command", "")
    if not command.startswith("construct "):
        print("only construction artifacts are verifiable", file=sys.stderr)
        return EXIT_INPUT
    params = artifact["params"]
    spec = BumpSpec(mode=params["mode"], degree=params["degree"])
    payload, verification, _, _ = build_construction(
        params["kind"], params, spec, settings
    )
    fresh = make_artifact(command, params, payload, verification)
    notes = []
    if artifact.get("version") != __version__:
        notes.append(
            f"artifact version {artifact.get('version')} != tool {__version__}"
        )
    ok = (
        _dump(fresh["payload"]) == _dump(artifact["payload"])
        and _dump(fresh["verification"]) == _dump(artifact["verification"])
    )
    _emit({"verified": ok, "notes": notes}, args.out)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="momentorder",
        description="exact computations on the tail order of moment sequences",
    )
    top.add_argument("--config", help="JSON file with settings overrides")
    sub = top.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("moments", help="moment table of a measure")
    p.add_argument("measure", help="measure description JSON file")
    p.add_argument("--k-max", type=int, default=20)
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("compare", help="tail-order comparison of two measures")
    p.add_argument("measure1")
    p.add_argument("measure2")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument(
        "--certify",
        help="'piecewise' for the exact decision or 'cdf:X0' for CDF dominance",
    )
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("construct", help="run a counterexample construction")
    p.add_argument(
        "kind",
        choices=[
            "kernel",
            "staged",
            "matched",
            "alternating",
            "unimodal",
            "mixed-demo",
            "padded-runs",
            "discrete-cdf",
            "ac-cdf",
        ],
    )
    p.add_argument("--a", default="1")
    p.add_argument("--b", default="2")
    p.add_argument("--n", type=int, default=4, help="vanishing orders for kernel")
    p.add_argument("--stages", type=int, default=4)
    p.add_argument("--k-max", dest="k_max", type=int, default=10)
    p.add_argument("--mode", choices=["polynomial", "smooth-quadrature"], default="polynomial")
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--padded", action="store_true")
    p.add_argument("--artifact", help="write the replayable artifact here")
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--plot", help="plain numeric plot data path")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("filters", help="structured-set and filter queries")
    p.add_argument("query", choices=["theta", "frechet", "msz", "msz-seq", "fip"])
    p.add_argument("expr", nargs="*", help="set expressions")
    p.add_argument("--sequence-file", help="JSON {prefix, certificate} for msz-seq")
    p.add_argument("--out")
    p.set_defaults(func=cmd_filters)

    p = sub.add_parser("game", help="distribution-valued game analysis")
    p.add_argument("game", help="game JSON file")
    p.add_argument("action", choices=["analyze", "check", "project"])
    p.add_argument("--profile", help="profile JSON file for 'check'")
    p.add_argument("--i", dest="coordinate", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("verify", help="replay a construction artifact")
    p.add_argument("artifact")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    return top


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PrecisionExceeded as exc:
        print(f"precision budget exceeded: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except ConstructionFailure as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except (UnsupportedSetOperation, GameSizeError) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
