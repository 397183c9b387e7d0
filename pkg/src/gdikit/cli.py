"""Command-line front end.

Subcommands: ``laws`` (randomized identity suite), ``measure`` (one
plasticity/empowerment evaluation of a named pair), ``sweep-epsilon`` and
``sweep-qinit`` (the two bandit sweeps), and ``corridor`` (per-room table for
the mouse corridor).  Each run writes CSV whose first line is a ``#`` comment
recording the fully expanded configuration, so identical configurations yield
byte-identical artifacts.

Configuration files are line-oriented ``key = value`` pairs using the flag
names below (without the leading dashes); explicit flags override file values.
Recognized keys per subcommand:

  common       seed, out, config
  laws         seeds
  measure      agent, env, na, no, a, b, c, d, arrow, method, samples, replicates
  sweep-epsilon  env, a, b, c, d, method, samples, replicates, grid-points, q0, alpha
  sweep-qinit    env, a, b, c, d, method, samples, replicates, grid-points, eps, alpha
  corridor     rooms, theta, horizon
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

import numpy as np

from .agency import AgencyQuery, TensionReport, check_tension, tension_bound
from .errors import CapExceededError, GDIKitError, PolicyContractError
from .estimator import bootstrap_ci, estimate_gdi, sample_trajectories
from .laws import LawSuiteConfig, run_law_suite, suite_to_csv
from .measures import Arrow, Interval, gdi
from .trajectory import Interface, enumerate_joint
from .zoo import (
    CorridorSpec,
    QLearnerSpec,
    corridor_env,
    corridor_stay_agent,
    make_agent,
    make_env,
    q_learning_agent,
)

_DEFAULTS = {
    "laws": {"seeds": "100", "seed": "0"},
    "measure": {
        "agent": "constant",
        "env": "uniform",
        "na": "2",
        "no": "2",
        "a": "1",
        "b": "3",
        "c": "2",
        "d": "5",
        "arrow": "delayed",
        "method": "exact",
        "samples": "100000",
        "replicates": "1000",
        "seed": "0",
    },
    "sweep-epsilon": {
        "env": "bandit(p0=0.4,p1=0.7)",
        "a": "1",
        "b": "3",
        "c": "2",
        "d": "5",
        "method": "exact",
        "samples": "100000",
        "replicates": "1000",
        "seed": "0",
        "grid-points": "21",
        "q0": "0",
        "alpha": "0.1",
    },
    "sweep-qinit": {
        "env": "bandit(p0=0.4,p1=0.7)",
        "a": "1",
        "b": "3",
        "c": "2",
        "d": "5",
        "method": "exact",
        "samples": "100000",
        "replicates": "1000",
        "seed": "0",
        "grid-points": "21",
        "eps": "0",
        "alpha": "0.1",
    },
    "corridor": {"rooms": "5", "theta": "0.5", "horizon": "4", "seed": "0"},
}


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"config line {raw.strip()!r} is not key = value")
            values[key.strip()] = value.strip()
    return values


def _merge(subcommand: str, cli: dict[str, str | None]) -> dict[str, str]:
    merged = dict(_DEFAULTS[subcommand])
    config_path = cli.get("config")
    if config_path:
        file_values = _read_config_file(config_path)
        unknown = set(file_values) - set(merged) - {"out"}
        if unknown:
            raise ValueError(f"unknown config keys for {subcommand}: {sorted(unknown)}")
        merged.update(file_values)
    for key, value in cli.items():
        if key in ("config",) or value is None:
            continue
        merged[key] = value
    return merged


def _config_comment(subcommand: str, cfg: dict[str, str]) -> str:
    body = " ".join(f"{k}={cfg[k]}" for k in sorted(cfg))
    return f"# subcommand={subcommand} {body}"


def _write(out: str | None, text: str) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _intervals(cfg: dict[str, str]) -> tuple[Interval, Interval]:
    obs = Interval(int(cfg["a"]), int(cfg["b"]))
    act = Interval(int(cfg["c"]), int(cfg["d"]))
    return obs, act


def _run_laws(cfg: dict[str, str], out: str | None) -> None:
    count = int(cfg["seeds"])
    base = int(cfg["seed"])
    suite = LawSuiteConfig(seeds=tuple(range(base, base + count)))
    reports = run_law_suite(suite)
    csv = _config_comment("laws", cfg) + "\n" + suite_to_csv(reports)
    _write(out, csv)
    failed = sum(not r.passed for r in reports)
    if failed:
        raise GDIKitError(f"{failed} law checks failed")


def _mc_plasticity(agent, env, interface, query, samples, replicates, seed):
    drawn = sample_trajectories(agent, env, query.horizon, samples, seed, interface)
    return bootstrap_ci(drawn, query.plasticity_query(), replicates=replicates, seed=seed)


def _run_measure(cfg: dict[str, str], out: str | None) -> None:
    interface = Interface(int(cfg["na"]), int(cfg["no"]))
    agent = make_agent(cfg["agent"], interface)
    env = make_env(cfg["env"], interface)
    obs, act = _intervals(cfg)
    arrow = Arrow(cfg["arrow"])
    query = AgencyQuery(act, obs, plasticity_arrow=arrow)
    if cfg["method"] == "exact":
        report = check_tension(agent, env, query, interface)
        dist = enumerate_joint(agent, env, query.horizon, interface)
        sys.stdout.write(gdi(dist, query.plasticity_query()).to_text())
    elif cfg["method"] == "mc":
        seed = int(cfg["seed"])
        n = int(cfg["samples"])
        drawn = sample_trajectories(agent, env, query.horizon, n, seed, interface)
        p = estimate_gdi(drawn, query.plasticity_query())
        e = estimate_gdi(drawn, query.empowerment_query())
        report = TensionReport(p, e, tension_bound(interface, query))
    else:
        raise ValueError(f"unknown method {cfg['method']!r}")
    csv = (
        _config_comment("measure", cfg)
        + "\nplasticity_bits,empowerment_bits,bound_bits,slack_bits\n"
        + report.to_csv_row()
        + "\n"
    )
    _write(out, csv)


def _run_sweep_epsilon(cfg: dict[str, str], out: str | None) -> None:
    interface = Interface(2, 2)
    env = make_env(cfg["env"], interface)
    obs, act = _intervals(cfg)
    points = int(cfg["grid-points"])
    seed = int(cfg["seed"])
    q0, alpha = float(cfg["q0"]), float(cfg["alpha"])
    rows = []
    for eps in np.linspace(0.0, 1.0, points):
        agent = q_learning_agent(QLearnerSpec(epsilon=float(eps), q_init=q0, alpha=alpha))
        for arrow in (Arrow.FORWARD, Arrow.DELAYED):
            query = AgencyQuery(act, obs, plasticity_arrow=arrow)
            if cfg["method"] == "exact":
                dist = enumerate_joint(agent, env, query.horizon, interface)
                value = gdi(dist, query.plasticity_query()).value
                lo = hi = value
            elif cfg["method"] == "mc":
                rep = _mc_plasticity(
                    agent, env, interface, query, int(cfg["samples"]), int(cfg["replicates"]), seed
                )
                value, lo, hi = rep.estimate, rep.ci_low, rep.ci_high
            else:
                raise ValueError(f"unknown method {cfg['method']!r}")
            rows.append(
                f"{eps:.17g},{arrow.value},{value:.17g},{lo:.17g},{hi:.17g},{cfg['method']},{seed}"
            )
    csv = (
        _config_comment("sweep-epsilon", cfg)
        + "\nepsilon,arrow,plasticity_bits,ci_low,ci_high,method,seed\n"
        + "\n".join(rows)
        + "\n"
    )
    _write(out, csv)


def _run_sweep_qinit(cfg: dict[str, str], out: str | None) -> None:
    interface = Interface(2, 2)
    env = make_env(cfg["env"], interface)
    obs, act = _intervals(cfg)
    points = int(cfg["grid-points"])
    seed = int(cfg["seed"])
    eps, alpha = float(cfg["eps"]), float(cfg["alpha"])
    rows = []
    for q0 in np.linspace(-1.0, 1.0, points):
        agent = q_learning_agent(QLearnerSpec(epsilon=eps, q_init=float(q0), alpha=alpha))
        query = AgencyQuery(act, obs)
        if cfg["method"] == "exact":
            report = check_tension(agent, env, query, interface)
            p, e = report.plasticity, report.empowerment
        elif cfg["method"] == "mc":
            drawn = sample_trajectories(
                agent, env, query.horizon, int(cfg["samples"]), seed, interface
            )
            p = estimate_gdi(drawn, query.plasticity_query())
            e = estimate_gdi(drawn, query.empowerment_query())
        else:
            raise ValueError(f"unknown method {cfg['method']!r}")
        m = tension_bound(interface, query)
        rows.append(
            f"{q0:.17g},{p:.17g},{e:.17g},{p + e:.17g},{m:.17g},{cfg['method']},{seed}"
        )
    csv = (
        _config_comment("sweep-qinit", cfg)
        + "\nq_init,plasticity_bits,empowerment_bits,sum_bits,bound_bits,method,seed\n"
        + "\n".join(rows)
        + "\n"
    )
    _write(out, csv)


def _run_corridor(cfg: dict[str, str], out: str | None) -> None:
    rooms = int(cfg["rooms"])
    theta = float(cfg["theta"])
    horizon = int(cfg["horizon"])
    interface = Interface(3, 2)
    full = Interval(1, horizon)
    query = AgencyQuery(full, full)
    rows = []
    for room in range(rooms):
        spec = CorridorSpec(rooms=rooms, theta=theta, start_room=room)
        report = check_tension(corridor_stay_agent(spec, room), corridor_env(spec), query, interface)
        rows.append(f"{room},{report.plasticity:.17g},{report.empowerment:.17g}")
    csv = (
        _config_comment("corridor", cfg)
        + "\nroom,plasticity_bits,empowerment_bits\n"
        + "\n".join(rows)
        + "\n"
    )
    _write(out, csv)


_RUNNERS = {
    "laws": _run_laws,
    "measure": _run_measure,
    "sweep-epsilon": _run_sweep_epsilon,
    "sweep-qinit": _run_sweep_qinit,
    "corridor": _run_corridor,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gdikit", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    specs = {
        "laws": ["seeds"],
        "measure": [
            "agent", "env", "na", "no", "a", "b", "c", "d", "arrow", "method", "samples", "replicates",
        ],
        "sweep-epsilon": [
            "env", "a", "b", "c", "d", "method", "samples", "replicates", "grid-points", "q0", "alpha",
        ],
        "sweep-qinit": [
            "env", "a", "b", "c", "d", "method", "samples", "replicates", "grid-points", "eps", "alpha",
        ],
        "corridor": ["rooms", "theta", "horizon"],
    }
    for name, keys in specs.items():
        p = sub.add_parser(name)
        for key in keys:
            if key == "arrow":
                p.add_argument("--arrow", choices=["forward", "delayed"], default=None)
            elif key == "method":
                p.add_argument("--method", choices=["exact", "mc"], default=None)
            else:
                p.add_argument(f"--{key}", default=None)
        p.add_argument("--seed", default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--config", default=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = vars(_build_parser().parse_args(argv))
    subcommand = args.pop("subcommand")
    out = args.pop("out")
    try:
        cfg = _merge(subcommand, {k.replace("_", "-"): v for k, v in args.items()})
        _RUNNERS[subcommand](cfg, out)
    except CapExceededError as exc:
        print(f"gdikit: enumeration cap exceeded: {exc}", file=sys.stderr)
        return 3
    except PolicyContractError as exc:
        print(f"gdikit: policy contract violation: {exc}", file=sys.stderr)
        return 4
    except (ValueError, GDIKitError) as exc:
        print(f"gdikit: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"gdikit: {exc}", file=sys.stderr)
        return 5
    return 0


if __name__ == "__main__":
    sys.exit(main())
