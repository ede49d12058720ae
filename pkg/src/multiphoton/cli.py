"""Command-line front end: ``multiphoton sweep | distribution | peaks``.

All output is plain fixed-point CSV or text so that two runs with the same
flags produce byte-identical files.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from .fock_space import coherent_state, default_cutoff, photon_distribution
from .jc_dynamics import AtomFieldState, evolve_closed_form
from .schmidt_measure import Outcome, ZeroProbabilityError, conditional_project
from .sweep_engine import (
    DEFAULT_STEPS,
    DEFAULT_TAU_END,
    PHOTON_PROMINENCE,
    SweepRow,
    evaluate_row,
    find_peaks,
    n_plus_series,
    sweep_time,
)


@dataclass(frozen=True)
class RunConfig:
    alpha: float = 4.0
    n_max: int | None = None
    tau_start: float = 0.0
    tau_end: float = DEFAULT_TAU_END
    steps: int = DEFAULT_STEPS
    outcome: Outcome = Outcome.SCHMIDT_PLUS
    output_path: str | None = None
    precision: int = 12
    tau: float | None = None
    workers: int = 1

    def __post_init__(self):
        if not np.isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        if self.n_max is not None and self.n_max < 0:
            raise ValueError(f"n_max must be non-negative, got {self.n_max}")
        if self.steps < 2:
            raise ValueError(f"steps must be at least 2, got {self.steps}")
        if not 0 <= self.tau_start < self.tau_end:
            raise ValueError("need 0 <= tau_start < tau_end")
        if not 0 <= self.precision <= 17:
            raise ValueError("precision must be between 0 and 17 digits")
        if self.tau is not None and not (np.isfinite(self.tau) and self.tau >= 0):
            raise ValueError("tau must be finite and non-negative")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    @property
    def cutoff(self) -> int:
        return default_cutoff(self.alpha) if self.n_max is None else self.n_max


def format_number(value: float | None, precision: int) -> str:
    if value is None:
        return ""
    text = f"{value:.{precision}f}"
    # "-0.000" and "0.000" are the same number; keep fixtures stable
    if text.startswith("-") and float(text) == 0.0:
        text = text[1:]
    return text


def sweep_csv(config: RunConfig) -> str:
    rows = sweep_time(
        config.alpha, config.cutoff, config.tau_start, config.tau_end, config.steps, config.workers
    )
    lines = [",".join(SweepRow.columns())]
    for row in rows:
        lines.append(",".join(format_number(v, config.precision) for v in row.values()))
    return "\n".join(lines) + "\n"


def distribution_csv(config: RunConfig) -> str:
    if config.tau is None:
        raise ValueError("distribution needs --tau")
    initial = coherent_state(config.alpha, config.cutoff)
    state = evolve_closed_form(AtomFieldState.excited_atom(initial), config.tau)
    result = conditional_project(state, config.outcome)
    p_initial = photon_distribution(initial)
    p_conditional = photon_distribution(result.post_state)
    lines = ["n,p_initial,p_conditional"]
    for n, (a, b) in enumerate(zip(p_initial, p_conditional)):
        lines.append(
            f"{n},{format_number(a, config.precision)},{format_number(b, config.precision)}"
        )
    return "\n".join(lines) + "\n"


def peaks_report(config: RunConfig) -> str:
    rows = sweep_time(
        config.alpha, config.cutoff, config.tau_start, config.tau_end, config.steps, config.workers
    )
    mean0 = config.alpha**2
    p = config.precision
    lines = [
        f"# n_plus peaks for alpha={format_number(config.alpha, p)} n_max={config.cutoff} "
        f"(initial mean {format_number(mean0, p)}, prominence {PHOTON_PROMINENCE})",
        "# tau n_plus delta_n p_excited p_ground lambda_plus lambda_minus",
    ]
    for peak in find_peaks(n_plus_series(rows), PHOTON_PROMINENCE):
        at = evaluate_row(config.alpha, peak.tau_at, config.cutoff)
        values = [
            peak.tau_at,
            peak.value,
            peak.value - mean0,
            at.p_excited,
            at.p_ground,
            at.lambda_plus,
            at.lambda_minus,
        ]
        lines.append(" ".join(format_number(v, p) for v in values))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float, default=4.0, help="real coherent amplitude")
    common.add_argument(
        "--n-max", default="auto", help="Fock cutoff, or 'auto' for the default rule"
    )
    common.add_argument("--tau-start", type=float, default=0.0)
    common.add_argument("--tau-end", type=float, default=DEFAULT_TAU_END)
    common.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    common.add_argument(
        "--outcome",
        default=Outcome.SCHMIDT_PLUS.value,
        choices=[o.value for o in Outcome],
        help="atomic measurement outcome to condition on",
    )
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--precision", type=int, default=12, help="decimal digits")
    common.add_argument("--workers", type=int, default=1, help="threads for the time sweep")

    parser = argparse.ArgumentParser(
        prog="multiphoton",
        description="Conditional atom measurements after resonant atom-cavity interaction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sweep", parents=[common], help="CSV of all observables over a tau grid")
    dist = sub.add_parser(
        "distribution", parents=[common], help="photon distribution before and after measurement"
    )
    dist.add_argument("--tau", type=float, required=True)
    sub.add_parser("peaks", parents=[common], help="report photon-number peaks of |psi_+>")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    n_max = None if str(args.n_max).lower() == "auto" else int(args.n_max)
    return RunConfig(
        alpha=args.alpha,
        n_max=n_max,
        tau_start=args.tau_start,
        tau_end=args.tau_end,
        steps=args.steps,
        outcome=Outcome.parse(args.outcome),
        output_path=args.out,
        precision=args.precision,
        tau=getattr(args, "tau", None),
        workers=args.workers,
    )


COMMANDS = {"sweep": sweep_csv, "distribution": distribution_csv, "peaks": peaks_report}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        text = COMMANDS[args.command](config)
        if config.output_path is None:
            sys.stdout.write(text)
        else:
            with open(config.output_path, "w", newline="\n") as fh:
                fh.write(text)
    except ZeroProbabilityError as err:
        print(f"multiphoton: impossible measurement: {err}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as err:
        print(f"multiphoton: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
