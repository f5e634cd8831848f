"""Command-line front end.

Exit status: 0 on success, 1 when the physics has no answer (unstable
drift matrix, singular steady state), 2 for usage or configuration
errors. Data goes to stdout or ``--out``; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import config as cfg
from .dynamics import QUADRATURES, build_diffusion, build_drift, is_stable
from .exceptions import ConfigError, DomainError, MagnomechError, PhysicsError, UnstableSystemError
from .lyapunov import solve_lyapunov
from .model import mhz, to_mhz
from .steady_state import solve_steady_state
from .sweep import PRESETS, evaluate_point, fmt, params_meta, preset, run_sweep


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p, formats=True):
    p.add_argument("--config", help="flat key = value file (or JSON meta block)")
    p.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a config key; repeatable, applied after --config, last wins",
    )
    p.add_argument("--out", help="write output here instead of stdout")
    if formats:
        p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser():
    parser = _Parser(prog="magnomech", description="Steady-state entanglement in a squeezed cavity-magnomechanical system.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _common(sub.add_parser("steady", help="steady-state amplitudes as JSON"), formats=False)
    _common(sub.add_parser("matrix", help="drift and diffusion matrices"))
    _common(sub.add_parser("cm", help="steady-state covariance matrix"))
    _common(sub.add_parser("point", help="E_N for a single parameter set"))
    _common(sub.add_parser("sweep", help="generic sweep described by the config"))
    fig = sub.add_parser("figure", help="figure preset sweep")
    fig.add_argument("name", choices=PRESETS)
    fig.add_argument(
        "--gamma-gain-mhz-over-2pi",
        dest="gamma_gain",
        type=float,
        required=True,
        help="net cavity rate Gamma/2pi in MHz (negative: net loss)",
    )
    _common(fig)
    return parser


def _load(args):
    config = cfg.load(args.config) if args.config else {}
    config.update(cfg.parse_overrides(args.overrides))
    return config


def _matrix_csv(M, header=None):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header is not None:
        writer.writerow(header)
    for row in M:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _json(obj):
    return json.dumps(obj, indent=2) + "\n"


def cmd_steady(args, config):
    params = cfg.build_params(config)
    ss = solve_steady_state(params)
    return _json(
        {
            "m_s_re": ss.m_s.real,
            "m_s_im": ss.m_s.imag,
            "m_s_abs": abs(ss.m_s),
            "q_s": ss.q_s,
            "g_enh_mhz_over_2pi": to_mhz(ss.g_enh),
            "beta_re": ss.beta.real,
            "beta_im": ss.beta.imag,
            "meta": params_meta(params),
        }
    )


def cmd_matrix(args, config):
    params = cfg.build_params(config)
    A = build_drift(params, solve_steady_state(params))
    D = build_diffusion(params)
    if args.format == "json":
        return _json({"drift": A.tolist(), "diffusion": D.tolist(), "meta": params_meta(params)})
    return "# drift\n" + _matrix_csv(A) + "# diffusion\n" + _matrix_csv(D)


def cmd_cm(args, config):
    params = cfg.build_params(config)
    A = build_drift(params, solve_steady_state(params))
    V = solve_lyapunov(A, build_diffusion(params))
    if args.format == "json":
        return _json({"quadratures": list(QUADRATURES), "cm": V.tolist(), "meta": params_meta(params)})
    return _matrix_csv(V, header=QUADRATURES)


def cmd_point(args, config):
    params = cfg.build_params(config)
    res = evaluate_point(params)
    if res.error is not None and res.verdict is None:
        raise PhysicsError(res.error)
    if not res.stable:
        A = build_drift(params, solve_steady_state(params))
        report = is_stable(A)
        raise UnstableSystemError(f"no steady state: {report}", report=report)
    fields = ("en_am", "en_bm", "eta_am", "eta_bm", "ms_abs")
    if args.format == "json":
        out = {name: getattr(res, name) for name in fields}
        out.update(stable=res.stable, max_real_part=res.max_real_part, meta=params_meta(params))
        return _json(out)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields + ("stable",))
    writer.writerow([fmt(getattr(res, name)) for name in fields] + ["true"])
    return buf.getvalue()


def _sweep_output(result, fmt_name):
    return result.to_json() if fmt_name == "json" else result.to_csv()


def cmd_sweep(args, config):
    return _sweep_output(run_sweep(cfg.build_sweep(config)), args.format)


def cmd_figure(args, config):
    if cfg.has_sweep(config):
        raise ConfigError("figure presets define their own sweep; drop the sweep_* keys")
    base = cfg.build_params(config)
    spec = preset(args.name, mhz(args.gamma_gain), base=base)
    return _sweep_output(run_sweep(spec), args.format)


COMMANDS = {
    "steady": cmd_steady,
    "matrix": cmd_matrix,
    "cm": cmd_cm,
    "point": cmd_point,
    "sweep": cmd_sweep,
    "figure": cmd_figure,
}


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(stderr)
        print(f"magnomech: error: {exc}", file=stderr)
        return 2
    try:
        config = _load(args)
        text = COMMANDS[args.command](args, config)
    except (ConfigError, DomainError) as exc:
        print(f"magnomech: configuration error: {exc}", file=stderr)
        return 2
    except PhysicsError as exc:
        print(f"magnomech: {exc}", file=stderr)
        return 1
    except MagnomechError as exc:
        print(f"magnomech: numerical error: {exc}", file=stderr)
        return 1
    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"magnomech: cannot write {args.out}: {exc}", file=stderr)
            return 2
    else:
        stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
