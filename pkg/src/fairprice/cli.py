"""Command-line front end.

The CLI is a thin client of the HTTP service: by default it talks to the
FastAPI app in-process (no sockets), or to a remote instance via --server.
Parameter resolution (defaults, then config file, then flags) and CSV/SVG
emission happen here; every emitted file records each parameter's source.

Exit codes: 0 success, 1 selfcheck criterion failure, 2 usage error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys

import httpx

from . import __version__, csvio

PARAM_NAMES = ["epsilon", "theta", "gamma", "eta", "delta", "alpha", "psi",
               "nu", "chi", "mu_i", "mu_a", "xi"]
PARAM_DEFAULTS = {
    "epsilon": 2.23, "theta": 9.0, "gamma": 0.8, "eta": 1.1, "delta": 0.99,
    "alpha": 1.0, "psi": 1.5, "nu": 6.0, "chi": 0.0, "mu_i": 0.75,
    "mu_a": 0.9, "xi": 0.67,
}

USAGE_ERROR = 2
NUMERIC_ERROR = 3


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="line-oriented key = value file")
    common.add_argument("--out", help="output file path")
    common.add_argument("--plot", action="store_true",
                        help="also emit a minimal SVG line chart")
    common.add_argument("--server",
                        help="base URL of a running service "
                             "(default: in-process)")
    for name in PARAM_NAMES:
        if name == "chi":
            continue
        common.add_argument(f"--{name.replace('_', '-')}", type=float,
                            dest=name)
    common.add_argument("--chi", dest="chi",
                        help="acclimation degree; accepts a comma list for "
                             "the phillips command")

    parser = argparse.ArgumentParser(
        prog="fairprice",
        description="Fairness-based pricing experiments",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("monopoly", parents=[common],
                   help="markups and passthrough across the four regimes") \
        .add_argument("--marginal-cost", type=float, default=1.0)

    p = sub.add_parser("steady", parents=[common],
                       help="steady state at a given annual inflation rate")
    p.add_argument("--pi-annual", type=float, default=0.0,
                   help="annual inflation in percent")

    p = sub.add_parser("phillips", parents=[common],
                       help="long-run inflation-employment curves")
    p.add_argument("--pi-annual", type=float, default=4.0,
                   help="maximum annual inflation of the grid, in percent")

    p = sub.add_parser("irf", parents=[common], help="impulse responses")
    p.add_argument("--shock", choices=["monetary", "technology"],
                   default="monetary")
    p.add_argument("--model", choices=["fairness", "textbook"],
                   default="fairness")
    p.add_argument("--horizon", type=int, default=24)

    p = sub.add_parser("passthrough", parents=[common],
                       help="firm-level price path after a permanent "
                            "cost increase")
    p.add_argument("--horizon", type=int, default=200)
    p.add_argument("--discounting", choices=["constant", "revenue"],
                   default="constant")

    p = sub.add_parser("calibrate", parents=[common],
                       help="recover (theta, gamma, epsilon) from "
                            "passthrough moments")
    p.add_argument("--markup-target", type=float, default=1.5)
    p.add_argument("--beta0-target", type=float, default=0.4)
    p.add_argument("--beta-2yr-target", type=float, default=0.7)
    p.add_argument("--discounting", choices=["constant", "revenue"],
                   default="constant")

    p = sub.add_parser("selfcheck", parents=[common],
                       help="run the embedded acceptance suite")
    p.add_argument("--inject-lambda1", type=float, default=None,
                   help="fault-injection hook: wrong Phillips slope")
    return parser


def _read_config(path: str) -> dict[str, float]:
    values: dict[str, float] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in PARAM_NAMES:
            raise UsageError(f"{path}:{lineno}: unknown parameter {key!r}")
        try:
            values[key] = float(val.strip())
        except ValueError as exc:
            raise UsageError(
                f"{path}:{lineno}: invalid number {val.strip()!r}"
            ) from exc
    return values


def _resolve_params(args) -> dict[str, tuple[float, str]]:
    """Merge defaults, config file, and flags; remember each source."""
    resolved = {n: (PARAM_DEFAULTS[n], "default") for n in PARAM_NAMES}
    if args.config:
        for key, val in _read_config(args.config).items():
            resolved[key] = (val, "config-file")
    for name in PARAM_NAMES:
        val = getattr(args, name, None)
        if val is None:
            continue
        if name == "chi":
            continue  # handled per command (may be a list)
        resolved[name] = (float(val), "flag")
    return resolved


def _chi_values(args, resolved, allow_list: bool) -> tuple[list[float], str]:
    raw = getattr(args, "chi", None)
    if raw is None:
        val, source = resolved["chi"]
        return [float(val)], source
    parts = [p for p in str(raw).split(",") if p.strip()]
    try:
        values = [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"invalid --chi value {raw!r}") from exc
    if not values:
        raise UsageError("empty --chi list")
    if len(values) > 1 and not allow_list:
        raise UsageError("this command accepts a single --chi value")
    return values, "flag"


def _client(args) -> httpx.Client:
    if getattr(args, "server", None):
        return httpx.Client(base_url=args.server, timeout=120.0)
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app
    return TestClient(app, raise_server_exceptions=False)


def _out_path(args, default_name: str) -> str:
    if getattr(args, "out", None):
        path = args.out
    else:
        seed_dir = os.environ.get("FAIRPRICE_SEED_DIR", ".")
        path = os.path.join(seed_dir, default_name)
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    return path


def _macro_params(resolved, chi: float) -> dict[str, float]:
    return {
        "epsilon": resolved["epsilon"][0], "theta": resolved["theta"][0],
        "gamma": resolved["gamma"][0], "eta": resolved["eta"][0],
        "delta": resolved["delta"][0], "alpha": resolved["alpha"][0],
        "psi": resolved["psi"][0], "nu": resolved["nu"][0], "chi": chi,
        "mu_i": resolved["mu_i"][0], "mu_a": resolved["mu_a"][0],
    }


def _post(client: httpx.Client, path: str, payload: dict) -> dict:
    resp = client.post(path, json=payload)
    if resp.status_code == 422:
        body = resp.json()
        msg = body.get("error") or str(body)
        kind = body.get("kind", "NumericalError")
        raise RuntimeError(f"{kind}: {msg}")
    resp.raise_for_status()
    return resp.json()


def _headers(argv: list[str], provenance: dict) -> list[str]:
    return csvio.provenance_lines(
        "fairprice " + " ".join(argv), __version__, provenance,
    )


def _flag_source(argv: list[str], flag: str) -> str:
    return "flag" if flag in argv else "default"


def _provenance(resolved, extra: dict[str, tuple[object, str]] | None = None):
    prov = dict(resolved)
    if extra:
        prov.update(extra)
    return prov


def _maybe_plot(args, csv_path: str, x, series: dict, title: str) -> None:
    if getattr(args, "plot", False):
        svg_path = os.path.splitext(csv_path)[0] + ".svg"
        csvio.write_svg(svg_path, x, series, title)
        print(f"wrote {svg_path}")


def _cmd_monopoly(args, argv) -> int:
    resolved = _resolve_params(args)
    chi, chi_src = _chi_values(args, resolved, allow_list=False)
    with _client(args) as client:
        data = _post(client, "/api/monopoly", {
            "params": _macro_params(resolved, chi[0]),
            "marginal_cost": args.marginal_cost,
        })
    columns = ["regime", "markup", "price", "perceived_markup",
               "elasticity", "passthrough"]
    rows = [[r[c] for c in columns] for r in data["rows"]]
    out = _out_path(args, "monopoly.csv")
    prov = _provenance(resolved, {
        "chi": (chi[0], chi_src),
        "marginal_cost": (args.marginal_cost, _flag_source(argv, "--marginal-cost")),
    })
    csvio.write_csv(out, columns, rows, _headers(argv, prov))
    print(f"wrote {out}")
    for r in data["rows"]:
        print(f"  {r['regime']:<18} markup {r['markup']:.4f}  "
              f"passthrough {r['passthrough']:.4f}")
    return 0


def _cmd_steady(args, argv) -> int:
    resolved = _resolve_params(args)
    chi, chi_src = _chi_values(args, resolved, allow_list=False)
    with _client(args) as client:
        data = _post(client, "/api/steady", {
            "params": _macro_params(resolved, chi[0]),
            "pi_annual_pct": args.pi_annual,
        })
    columns = ["pi_annual_pct", "chi", "markup", "employment_dev_pct"]
    rows = [[data[c] for c in columns]]
    out = _out_path(args, "steady.csv")
    prov = _provenance(resolved, {
        "chi": (chi[0], chi_src),
        "pi_annual": (args.pi_annual, _flag_source(argv, "--pi-annual")),
    })
    csvio.write_csv(out, columns, rows, _headers(argv, prov))
    print(f"wrote {out}")
    print(f"  markup {data['markup']:.4f} at {args.pi_annual:g}% annual "
          f"inflation (chi={chi[0]:g}); employment vs zero inflation "
          f"{data['employment_dev_pct']:+.3f}%")
    return 0


def _cmd_phillips(args, argv) -> int:
    resolved = _resolve_params(args)
    chi_list, chi_src = _chi_values(args, resolved, allow_list=True)
    if getattr(args, "chi", None) is None:
        chi_list = [0.0, 0.3, 0.7, 1.0]
        chi_src = "default"
    if args.pi_annual <= 0:
        raise UsageError("--pi-annual must be > 0 for phillips")
    n_steps = int(round(args.pi_annual / 0.25))
    grid = [round(0.25 * i, 10) for i in range(n_steps + 1)]
    with _client(args) as client:
        data = _post(client, "/api/phillips", {
            "params": _macro_params(resolved, 0.0),
            "pi_annual_grid": grid,
            "chi_list": chi_list,
        })
    columns = ["pi_annual_pct", "chi", "markup", "employment_dev_pct"]
    rows = [[r[c] for c in columns] for r in data["rows"] if r["admissible"]]
    flagged = [r for r in data["rows"] if not r["admissible"]]
    out = _out_path(args, "phillips.csv")
    prov = _provenance(resolved, {
        "chi": (",".join(f"{c:g}" for c in chi_list), chi_src),
        "pi_annual": (args.pi_annual, _flag_source(argv, "--pi-annual")),
    })
    csvio.write_csv(out, columns, rows, _headers(argv, prov))
    print(f"wrote {out}")
    for chi in chi_list:
        at_one = [r for r in data["rows"]
                  if r["chi"] == chi and abs(r["pi_annual_pct"] - 1.0) < 1e-9]
        if at_one:
            print(f"  chi={chi:g}: 0->1% annual inflation moves employment "
                  f"by {at_one[0]['employment_dev_pct']:+.3f}%")
    if flagged:
        print(f"  note: {len(flagged)} grid points inadmissible "
              "(fairness factor would be negative)")
    series = {}
    for chi in chi_list:
        pts = [r for r in data["rows"] if r["chi"] == chi and r["admissible"]]
        series[f"chi={chi:g}"] = [r["employment_dev_pct"] for r in pts]
    _maybe_plot(args, out, grid[:len(next(iter(series.values()), []))],
                series, "employment gain (%) vs annual inflation (%)")
    return 0


def _cmd_irf(args, argv) -> int:
    resolved = _resolve_params(args)
    chi, chi_src = _chi_values(args, resolved, allow_list=False)
    with _client(args) as client:
        data = _post(client, "/api/irf", {
            "params": _macro_params(resolved, chi[0]),
            "shock": args.shock,
            "model": args.model,
            "horizon": args.horizon,
            "xi": resolved["xi"][0],
        })
    out = _out_path(args, f"irf_{args.shock}_{args.model}.csv")
    prov = _provenance(resolved, {
        "chi": (chi[0], chi_src),
        "shock": (args.shock, _flag_source(argv, "--shock")),
        "model": (args.model, _flag_source(argv, "--model")),
        "horizon": (args.horizon, _flag_source(argv, "--horizon")),
    })
    csvio.write_csv(out, data["columns"], data["rows"], _headers(argv, prov))
    print(f"wrote {out}")
    s = data["summary"]
    print(f"  peak n {s['peak_n_pct']:+.3f}%  trough n "
          f"{s['trough_n_pct']:+.3f}%  peak markup "
          f"{s['peak_markup_pct']:+.3f}%  trough markup "
          f"{s['trough_markup_pct']:+.3f}%  y(0) {s['initial_y_pct']:+.3f}%")
    cols = data["columns"]
    t = [row[0] for row in data["rows"]]
    series = {c: [row[j] for row in data["rows"]]
              for j, c in enumerate(cols) if c in
              ("pi_hat_annual", "m_hat", "n_hat", "y_hat")}
    _maybe_plot(args, out, t, series,
                f"{args.shock} shock, {args.model} model")
    return 0


def _cmd_passthrough(args, argv) -> int:
    resolved = _resolve_params(args)
    with _client(args) as client:
        data = _post(client, "/api/passthrough", {
            "epsilon": resolved["epsilon"][0],
            "theta": resolved["theta"][0],
            "gamma": resolved["gamma"][0],
            "delta": resolved["delta"][0],
            "horizon": args.horizon,
            "discounting": args.discounting,
        })
    columns = ["t", "beta_t", "price_dev_pct", "markup", "perceived_markup"]
    rows = [[r[c] for c in columns] for r in data["rows"]]
    out = _out_path(args, "passthrough.csv")
    prov = _provenance(resolved, {
        "horizon": (args.horizon, _flag_source(argv, "--horizon")),
        "discounting": (args.discounting, _flag_source(argv, "--discounting")),
    })
    csvio.write_csv(out, columns, rows, _headers(argv, prov))
    print(f"wrote {out}")
    s = data["summary"]
    print(f"  beta(0) {s['beta0']:.4f}  beta(8) {s['beta_2yr']:.4f}  "
          f"long run {s['beta_long_run']:.4f}  worst residual "
          f"{data['worst_residual']:.2e}")
    _maybe_plot(args, out, [r["t"] for r in data["rows"]],
                {"beta": [r["beta_t"] for r in data["rows"]]},
                "cost passthrough path")
    return 0


def _cmd_calibrate(args, argv) -> int:
    resolved = _resolve_params(args)
    with _client(args) as client:
        data = _post(client, "/api/calibrate", {
            "markup_target": args.markup_target,
            "beta0_target": args.beta0_target,
            "beta_2yr_target": args.beta_2yr_target,
            "delta": resolved["delta"][0],
            "discounting": args.discounting,
        })
    out = _out_path(args, "calibration.txt")
    prov = _provenance(resolved, {
        "markup_target": (args.markup_target, _flag_source(argv, "--markup-target")),
        "beta0_target": (args.beta0_target, _flag_source(argv, "--beta0-target")),
        "beta_2yr_target": (args.beta_2yr_target, _flag_source(argv, "--beta-2yr-target")),
        "discounting": (args.discounting, _flag_source(argv, "--discounting")),
    })
    lines = _headers(argv, prov)
    for key in ("theta", "gamma", "epsilon", "beta0", "beta_2yr",
                "markup_target", "converged", "boundary"):
        lines.append(f"{key} = {csvio.fmt(data[key])}")
    with open(out, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {out}")
    print(f"  theta {data['theta']:.4f}  gamma {data['gamma']:.4f}  "
          f"epsilon {data['epsilon']:.4f}  moments "
          f"({data['beta0']:.4f}, {data['beta_2yr']:.4f})")
    if data.get("boundary"):
        print(f"  boundary: {data['boundary']}")
    return 0


def _cmd_selfcheck(args, argv) -> int:
    with _client(args) as client:
        data = _post(client, "/api/selfcheck", {
            "lambda1_override": args.inject_lambda1,
        })
    for c in data["criteria"]:
        status = "PASS" if c["passed"] else "FAIL"
        print(f"[{status}] {c['index']}. {c['name']} "
              f"({c['seconds'] * 1e3:.1f} ms, budget "
              f"{c['budget_seconds'] * 1e3:.0f} ms): {c['detail']}")
    print(f"total {data['total_seconds']:.2f} s")
    return 0 if data["all_passed"] else 1


_DISPATCH = {
    "monopoly": _cmd_monopoly,
    "steady": _cmd_steady,
    "phillips": _cmd_phillips,
    "irf": _cmd_irf,
    "passthrough": _cmd_passthrough,
    "calibrate": _cmd_calibrate,
    "selfcheck": _cmd_selfcheck,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args, argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (RuntimeError, ValueError, httpx.HTTPError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return NUMERIC_ERROR


if __name__ == "__main__":
    sys.exit(main())
