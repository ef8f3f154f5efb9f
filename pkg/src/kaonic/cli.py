"""Command-line front end.

Curves (``oscillate``, ``complementarity``) are written as CSV with ``#``
metadata lines; verdict-style results (``constants``, ``pair``, ``bell``,
``eraser``) as JSON ``{"metadata": ..., "payload": ...}``.

Exit codes: 0 success, 2 usage or invalid argument, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import sys

import numpy as np

from . import __version__, bell, complementarity, evolution, pair
from .eraser import setups as eraser_setups
from .eraser.measurements import DEFAULT_CUT
from .errors import KaonError, SurvivalUnderflowError
from .states import (
    DELTA_M_EV,
    DELTA_M_TAU_S,
    HBAR_EV_S,
    K0,
    TAU_L_SECONDS,
    TAU_S_SECONDS,
    PhysParams,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _metadata(args: argparse.Namespace) -> dict:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "handler")}
    return {
        "tool": "kaonic",
        "version": __version__,
        "subcommand": args.command,
        "parameters": params,
        "seed": getattr(args, "seed", None),
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }


def _emit_json(args, payload, out) -> None:
    json.dump({"metadata": _metadata(args), "payload": payload}, out, indent=2, allow_nan=True)
    out.write("\n")


def _emit_csv(args, header: list[str], rows, out) -> None:
    for key, value in _metadata(args).items():
        out.write(f"# {key}: {json.dumps(value)}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format(float(x), ".17g") for x in row])


def _epsilon(args) -> complex:
    if getattr(args, "delta", None) is not None:
        return bell.epsilon_from_delta(args.delta)
    return complex(args.epsilon_re, args.epsilon_im)


def _params(args, with_epsilon: bool = True) -> PhysParams:
    eps = _epsilon(args) if with_epsilon else 0j
    return PhysParams(delta_m=args.delta_m, gamma_s=1.0, gamma_l=args.gamma_l, epsilon=eps)


def _time_grid(args) -> np.ndarray:
    if not args.tmax > 0:
        raise argparse.ArgumentTypeError(f"--tmax must be > 0, got {args.tmax}")
    if args.steps < 2:
        raise argparse.ArgumentTypeError(f"--steps must be >= 2, got {args.steps}")
    return np.linspace(0.0, args.tmax, args.steps)


# ---------------------------------------------------------------------------
# subcommands


def cmd_constants(args, out) -> None:
    p = PhysParams()
    payload = {
        "natural_units": {
            "time_unit": "tau_S",
            "delta_m_tau_s": p.delta_m,
            "gamma_s": p.gamma_s,
            "gamma_l": p.gamma_l,
            "delta_gamma": p.delta_gamma,
            "gamma_mean": p.gamma_mean,
            "tau_l_over_tau_s": TAU_L_SECONDS / TAU_S_SECONDS,
            "epsilon_re": p.epsilon.real,
            "epsilon_im": p.epsilon.imag,
        },
        "physical_units": {
            "tau_s_seconds": TAU_S_SECONDS,
            "tau_l_seconds": TAU_L_SECONDS,
            "delta_m_ev": DELTA_M_EV,
        },
        "conversions": {
            "hbar_ev_s": HBAR_EV_S,
            "seconds_per_time_unit": TAU_S_SECONDS,
            "ev_per_energy_unit": HBAR_EV_S / TAU_S_SECONDS,
            # the quoted mass difference in eV converts to about 0.472, the
            # default keeps the rounded 0.47
            "delta_m_tau_s_from_ev": DELTA_M_EV * TAU_S_SECONDS / HBAR_EV_S,
        },
        "presets": {
            "measured_delta": bell.MEASURED_DELTA,
            "epsilon_from_measured_delta": bell.measured_preset().real,
        },
    }
    _emit_json(args, payload, out)


def cmd_oscillate(args, out) -> None:
    params = _params(args)
    rows = []
    for t in _time_grid(args):
        p_k0, p_k0bar = evolution.strangeness_probabilities(params, t)
        survival = evolution.survival_probability(K0, params, t)
        cond = evolution.normalized_survivor(K0, params, t)
        rows.append((t, p_k0, p_k0bar, survival, abs(cond.amp_k0) ** 2, abs(cond.amp_k0bar) ** 2))
    header = ["t", "p_k0", "p_k0bar", "survival", "p_k0_conditional", "p_k0bar_conditional"]
    _emit_csv(args, header, rows, out)


def cmd_pair(args, out) -> None:
    params = _params(args)
    if args.stable:
        params = PhysParams.stable(params.delta_m, params.epsilon)
    if not (args.tl >= 0 and args.tr >= 0):
        raise argparse.ArgumentTypeError("--tl and --tr must be >= 0")
    ps = pair.make_entangled_pair(params.weights())
    probs = pair.joint_strangeness_probabilities(ps, params, args.tl, args.tr)
    payload = {
        "t_left": args.tl,
        "t_right": args.tr,
        "probabilities": probs,
        "survival": sum(probs.values()),
        "same_strangeness_surviving": pair.same_strangeness_probability(params, args.tl - args.tr),
    }
    _emit_json(args, payload, out)


def cmd_bell(args, out) -> None:
    eps = _epsilon(args)
    report = bell.bell_check(PhysParams(epsilon=eps).weights(), tol=args.tol)
    payload = {"epsilon_re": eps.real, "epsilon_im": eps.imag, **report.to_dict()}
    _emit_json(args, payload, out)


def cmd_complementarity(args, out) -> None:
    params = _params(args, with_epsilon=False)
    points = complementarity.duality_check(params, _time_grid(args), args.mixedness)
    rows = [(p.t, p.visibility, p.predictability, p.phase, p.residual) for p in points]
    _emit_csv(args, ["t", "visibility", "predictability", "phase", "duality_residual"], rows, out)


def cmd_eraser(args, out) -> None:
    params = _params(args, with_epsilon=False)
    config = eraser_setups.EraserConfig(
        setup=args.setup,
        t_l=args.tl,
        t_r0=args.tr0,
        branching_semileptonic=args.branching,
        n_events=args.events,
        seed=args.seed,
        cut=args.cut,
        meter=args.meter,
        dt_window=args.window,
    )
    result = eraser_setups.run_setup(config, params, shards=args.shards, workers=args.workers, order=args.order)
    payload = {
        "result": result.to_dict(),
        "analytic_surviving_pair": {
            "delta_t": config.delta_t,
            "probabilities": eraser_setups.surviving_pair_reference(params, config.delta_t),
        },
    }
    if args.compare:
        setups = [s.strip() for s in args.compare.split(",") if s.strip()]
        bad = [s for s in setups if s not in eraser_setups.SETUPS]
        if bad or len(setups) < 2:
            raise argparse.ArgumentTypeError(f"--compare needs two or more of a,b,c,d, got {args.compare!r}")
        results, comparison = eraser_setups.compare_setups(config, params, setups, shards=args.shards)
        payload["comparison"] = {
            **comparison.to_dict(),
            "strangeness_frequencies": {s: r.classes["SS"].frequencies for s, r in results.items()},
        }
    _emit_json(args, payload, out)


# ---------------------------------------------------------------------------
# parser


def _add_physics(p: argparse.ArgumentParser, epsilon: bool = True) -> None:
    d = PhysParams()
    p.add_argument("--delta-m", type=float, default=DELTA_M_TAU_S, help="mass difference in units of 1/tau_S")
    p.add_argument("--gamma-l", type=float, default=d.gamma_l, help="K_L width in units of Gamma_S")
    if epsilon:
        _add_epsilon(p)


def _add_epsilon(p: argparse.ArgumentParser) -> None:
    p.add_argument("--delta", type=float, default=None, help="leptonic asymmetry; sets a real epsilon")
    p.add_argument("--epsilon-re", type=float, default=None)
    p.add_argument("--epsilon-im", type=float, default=None)


def _add_grid(p: argparse.ArgumentParser, tmax: float) -> None:
    p.add_argument("--tmax", type=float, default=tmax, help="last time in units of tau_S")
    p.add_argument("--steps", type=int, default=201, help="number of grid points (>= 2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kaonic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="default constants in natural and physical units")
    p.set_defaults(handler=cmd_constants)

    p = sub.add_parser("oscillate", help="K0 -> K0 / K0bar probabilities versus time (CSV)")
    _add_physics(p)
    _add_grid(p, 20.0)
    p.set_defaults(handler=cmd_oscillate)

    p = sub.add_parser("pair", help="joint strangeness probabilities of the entangled pair (JSON)")
    _add_physics(p)
    p.add_argument("--tl", type=float, default=0.0)
    p.add_argument("--tr", type=float, default=0.0)
    p.add_argument("--stable", action="store_true", help="switch off decays")
    p.set_defaults(handler=cmd_pair)

    p = sub.add_parser("bell", help="Wigner-type inequality versus CP violation (JSON)")
    _add_epsilon(p)
    p.add_argument("--tol", type=float, default=bell.DEFAULT_TOL)
    p.set_defaults(handler=cmd_bell)

    p = sub.add_parser("complementarity", help="visibility and predictability versus time (CSV)")
    _add_physics(p, epsilon=False)
    _add_grid(p, 20.0)
    p.add_argument("--mixedness", type=float, default=1.0)
    p.set_defaults(handler=cmd_complementarity)

    p = sub.add_parser("eraser", help="quantum-eraser Monte Carlo (JSON)")
    _add_physics(p, epsilon=False)
    p.add_argument("--setup", choices=eraser_setups.SETUPS, default="a")
    p.add_argument("--events", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tl", type=float, default=1.0)
    p.add_argument("--tr0", type=float, default=1.0)
    p.add_argument("--branching", type=float, default=0.5)
    p.add_argument("--cut", type=float, default=DEFAULT_CUT)
    p.add_argument("--meter", choices=eraser_setups.METERS, default="strangeness")
    p.add_argument("--window", type=float, default=None, help="time-difference window for the SS class")
    p.add_argument("--order", choices=eraser_setups.ORDERS, default="chronological")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--compare", default=None, help="comma-separated setups to test for equality, e.g. a,b,c,d")
    p.set_defaults(handler=cmd_eraser)
    return parser


def main(argv=None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout if out is None else out

    if hasattr(args, "epsilon_re"):
        if args.delta is not None and (args.epsilon_re is not None or args.epsilon_im is not None):
            parser.error("give either --delta or --epsilon-re/--epsilon-im, not both")
        if args.delta is None:
            args.epsilon_re = 0.0 if args.epsilon_re is None else args.epsilon_re
            args.epsilon_im = 0.0 if args.epsilon_im is None else args.epsilon_im

    try:
        args.handler(args, out)
    except SurvivalUnderflowError as exc:
        print(f"kaonic: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (KaonError, argparse.ArgumentTypeError) as exc:
        print(f"kaonic {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
