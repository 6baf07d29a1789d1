"""``templeflow`` command line: classify, solve and validate problem configs.

Exit codes: 0 Classical / success, 2 DeltaShock (classify only),
3 DegenerateNoSolution, 1 input error or failed validation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from .cauchy import CauchySolver
from .config import ConfigError, ProblemConfig, load_config
from .core import Hypotheses, eigenvalues, riemann_invariants
from .delta_shock import delta_condition_check, solve_delta
from .errors import ClassificationError, PreconditionError, TempleflowError
from .riemann import RiemannClassification, classify, gap_lemma_check, sample_fan_arrays, solve_classical
from .validation import cauchy_checks, classical_checks, delta_checks, format_table

log = logging.getLogger("templeflow")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DELTA = 2
EXIT_DEGENERATE = 3

CLASS_EXIT = {
    RiemannClassification.CLASSICAL: EXIT_OK,
    RiemannClassification.DELTA_SHOCK: EXIT_DELTA,
    RiemannClassification.DEGENERATE_NO_SOLUTION: EXIT_DEGENERATE,
}

PROFILE_HEADER = ["x", "rho", "u", "v"]


def _fmt(x) -> str:
    return "%.17g" % x


def setup_logging() -> None:
    name = os.environ.get("TEMPLEFLOW_LOG", "WARNING").upper()
    level = getattr(logging, name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


class Output:
    """Writes named artifacts to ``--out`` or, without it, to stdout."""

    def __init__(self, out_dir, stream):
        self.dir = Path(out_dir) if out_dir else None
        self.stream = stream
        if self.dir is not None:
            self.dir.mkdir(parents=True, exist_ok=True)

    def write(self, name: str, text: str) -> None:
        if self.dir is None:
            self.stream.write(text if text.endswith("\n") else text + "\n")
        else:
            (self.dir / name).write_text(text, encoding="utf-8")
            log.info("wrote %s", self.dir / name)


def profile_csv(x, rho, u, v) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PROFILE_HEADER)
    for row in zip(x, rho, u, v):
        w.writerow([_fmt(q) for q in row])
    return buf.getvalue()


def profile_json(t, x, rho, u, v) -> str:
    return json.dumps({"t": t, "x": list(map(float, x)), "rho": list(map(float, rho)),
                       "u": list(map(float, u)), "v": list(map(float, v))})


def _require_riemann(cfg: ProblemConfig, command: str) -> None:
    if cfg.kind != "riemann":
        raise ConfigError(f"{command} needs a riemann config, got kind={cfg.kind!r}")


def classification_report(cfg: ProblemConfig) -> dict:
    params = cfg.params
    ul, ur = cfg.left, cfg.right
    kind = classify(ul, ur, params)
    lam_l = eigenvalues(ul, params)
    lam_r = eigenvalues(ur, params)
    d_r2 = riemann_invariants(ur, params).R2 - riemann_invariants(ul, params).R2
    gap = lam_l[0] - lam_r[2]
    s2 = params.s ** 2
    return {
        "classification": kind.value,
        "eigenvalues_left": list(lam_l),
        "eigenvalues_right": list(lam_r),
        "gap_lemma": {
            "lhs_abs_dR2": abs(d_r2),
            "rhs_speed_gap_over_s": (lam_r[2] - lam_l[0]) / params.s,
            "holds": gap_lemma_check(ul, ur, params),
        },
        "delta_condition": {
            "lhs_half_gap_sq": 0.5 * gap * gap,
            "rhs": max(-s2 / ur.rho * d_r2, s2 / ul.rho * d_r2),
            "holds": delta_condition_check(ul, ur, params),
        },
    }


def cmd_classify(cfg: ProblemConfig, out: Output, fmt: str) -> int:
    _require_riemann(cfg, "classify")
    report = classification_report(cfg)
    if fmt == "json":
        out.write("classification.json", json.dumps(report, indent=2))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerow(["classification", report["classification"]])
        for side in ("left", "right"):
            for i, lam in enumerate(report[f"eigenvalues_{side}"]):
                w.writerow([f"lambda{i + 1}_{side}", _fmt(lam)])
        for group in ("gap_lemma", "delta_condition"):
            for key, value in report[group].items():
                w.writerow([f"{group}.{key}", value if isinstance(value, bool) else _fmt(value)])
        out.write("classification.csv", buf.getvalue())
    return CLASS_EXIT[RiemannClassification(report["classification"])]


def _write_profiles(out: Output, fmt: str, times, x, sample) -> None:
    for i, t in enumerate(times):
        keep, (rho, u, v) = sample(t, x)
        xs = x[keep]
        if fmt == "json":
            out.write(f"profile_{i:03d}.json", profile_json(t, xs, rho, u, v))
        else:
            out.write(f"profile_{i:03d}.csv", profile_csv(xs, rho, u, v))


def _hypotheses_for(cfg: ProblemConfig) -> Hypotheses:
    if cfg.hypotheses is not None:
        return cfg.hypotheses
    log.info("no hypothesis constants given; using the tightest bounds of the data")
    return Hypotheses.tightest(*cfg.initial_data.samples(), cfg.params)


def cmd_solve(cfg: ProblemConfig, out: Output, fmt: str) -> int:
    x = np.linspace(*cfg.output.x_range, cfg.output.n_samples)
    times = cfg.output.t
    params = cfg.params
    if cfg.kind == "cauchy":
        solver = CauchySolver(cfg.initial_data, params, _hypotheses_for(cfg), cfg.map_resolution)
        _write_profiles(out, fmt, times, x, lambda t, xs: (np.ones(xs.size, bool), solver.solve(t, xs)))
        return EXIT_OK
    if any(t <= 0.0 for t in times):
        raise ConfigError("riemann profiles need output times t > 0")
    kind = classify(cfg.left, cfg.right, params)
    if kind is RiemannClassification.CLASSICAL:
        fan = solve_classical(cfg.left, cfg.right, params)
        _write_profiles(out, fmt, times, x, lambda t, xs: (np.ones(xs.size, bool), sample_fan_arrays(fan, t, xs)))
        return EXIT_OK
    if kind is RiemannClassification.DELTA_SHOCK:
        wave = solve_delta(cfg.left, cfg.right, params)
        out.write("delta_shock.json", json.dumps(wave.as_dict(), indent=2))
        ul, ur = cfg.left, cfg.right

        def sample(t, xs):
            xd = wave.x(t)
            keep = xs != xd
            xs = xs[keep]
            left = xs < xd
            return keep, tuple(np.where(left, a, b) for a, b in zip((ul.rho, ul.u, ul.v), (ur.rho, ur.u, ur.v)))

        _write_profiles(out, fmt, times, x, sample)
        return EXIT_OK
    log.error("Riemann data admits no solution (%s)", kind.value)
    return EXIT_DEGENERATE


def cmd_validate(cfg: ProblemConfig, out: Output, fmt: str) -> int:
    params = cfg.params
    pairs = cfg.pairs()
    if cfg.kind == "cauchy":
        solver = CauchySolver(cfg.initial_data, params, _hypotheses_for(cfg), cfg.map_resolution)
        rows = cauchy_checks(solver, pairs, cfg.output.t, cfg.output.x_range, cfg.oracle)
    else:
        kind = classify(cfg.left, cfg.right, params)
        if kind is RiemannClassification.CLASSICAL:
            fan = solve_classical(cfg.left, cfg.right, params)
            rows = classical_checks(fan, params, pairs, cfg.oracle, cfg.output.x_range)
        elif kind is RiemannClassification.DELTA_SHOCK:
            wave = solve_delta(cfg.left, cfg.right, params)
            times = tuple(t for t in cfg.output.t if t > 0.0) or (0.5, 1.0, 5.0)
            rows = delta_checks(wave, cfg.left, cfg.right, params, times, cfg.oracle, cfg.output.x_range)
        else:
            log.error("Riemann data admits no solution (%s)", kind.value)
            return EXIT_DEGENERATE
    if fmt == "json":
        out.write("validation.json", json.dumps([r.as_dict() for r in rows], indent=2))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "value", "tol", "pass"])
        for r in rows:
            w.writerow([r.name, _fmt(r.value), _fmt(r.tol), r.passed])
        out.write("validation.csv", buf.getvalue())
    sys.stderr.write(format_table(rows) + "\n")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_INPUT


COMMANDS = {"classify": cmd_classify, "solve": cmd_solve, "validate": cmd_validate}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="templeflow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="problem config (JSON)")
        p.add_argument("--out", default=None, help="output directory (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def main(argv=None, stdout=None) -> int:
    setup_logging()
    args = build_parser().parse_args(argv)
    stdout = sys.stdout if stdout is None else stdout
    try:
        cfg = load_config(args.config)
        out = Output(args.out, stdout)
        return COMMANDS[args.command](cfg, out, args.format)
    except PreconditionError as exc:
        sys.stderr.write(f"error: hypothesis check failed: {', '.join(exc.failed)}\n")
        return EXIT_INPUT
    except ClassificationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DEGENERATE
    except (TempleflowError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
