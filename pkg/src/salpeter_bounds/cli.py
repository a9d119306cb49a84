"""
Command-line front end.

Usage::

    salpeter-bounds COMMAND [options]

Commands are ``classify``, ``bounds``, ``solve``, ``table1``, ``count``,
``optimize`` and ``profile``.  Options may also be read from a flat
``key = value`` file given with ``--config``; flags on the command line
win.  Exit status is 0 on success, 1 on a numerical failure and 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import re
import sys
from dataclasses import dataclass, fields, replace
from typing import Optional

from . import bounds, potentials
from .basis import TrialBasis
from .diagnostics import virial_residuals
from .errors import DomainError, NumericError, SalpeterError
from .operators import MassConfig, start_order
from .potentials import PotentialSpec
from .spectra import optimize_parameters, solve

COMMANDS = ("classify", "bounds", "solve", "table1", "count", "optimize", "profile")

TABLE1_COLUMNS = ((1, 0.5, 0.5), (2, 1.0, -1.0), (3, 1.0, -2.0))
TABLE1_STATES = ((0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0))


class UsageError(Exception):
    """Bad command line or configuration; maps to exit status 2."""


@dataclass
class RunConfig:
    command: str = "solve"
    potential: str = potentials.HELLMANN
    kappa: float = 0.0
    upsilon: float = 0.0
    b: float = 1.0
    v0: float = 1.0
    m: float = 1.0
    m1: Optional[float] = None
    m2: Optional[float] = None
    ell: int = 0
    beta: float = 1.0
    mu: float = 1.0
    dim: int = 32
    states: int = 3
    mode: str = bounds.BEST
    format: str = "text"
    output: Optional[str] = None
    target: int = 0
    mu_min: float = 0.1
    mu_max: float = 10.0
    beta_min: float = 0.6
    beta_max: float = 2.0
    r_min: float = 0.01
    r_max: float = 20.0
    samples: int = 200

    @property
    def masses(self):
        m1 = self.m if self.m1 is None else self.m1
        m2 = self.m if self.m2 is None else self.m2
        return MassConfig(m1, m2)

    @property
    def spec(self):
        if self.potential == potentials.HELLMANN:
            return PotentialSpec.hellmann(self.kappa, self.upsilon, self.b)
        return PotentialSpec.exponential_well(self.v0, self.b)

    @property
    def basis(self):
        return TrialBasis(self.ell, self.beta, self.mu, self.dim)


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}
_CHOICES = {
    "potential": (potentials.HELLMANN, potentials.EXPONENTIAL_WELL),
    "mode": (bounds.PAPER, bounds.BEST),
    "format": ("text", "csv"),
}


def _convert(key, raw):
    kind = _FIELD_TYPES[key]
    if key in _CHOICES:
        if raw not in _CHOICES[key]:
            raise UsageError(f"{key} must be one of {', '.join(_CHOICES[key])}, got {raw!r}")
        return raw
    try:
        if kind in ("int",):
            return int(raw)
        if kind in ("float", "Optional[float]"):
            val = float(raw)
            if not math.isfinite(val):
                raise ValueError
            return val
    except ValueError:
        raise UsageError(f"{key} expects a {kind.replace('Optional[', '').rstrip(']')}, got {raw!r}") from None
    return raw


def read_config_file(path):
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    values = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from None
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _FIELD_TYPES or key == "command":
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _convert(key, raw)
    return values


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let values such as "-2.5e-3" through as arguments rather than flags
        self._negative_number_matcher = re.compile(r"^-(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?$")

    def error(self, message):
        raise UsageError(message)


def _build_parser():
    parser = _Parser(prog="salpeter-bounds", description=__doc__.split("\n\n")[1])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="flat key = value configuration file")
    for f in fields(RunConfig):
        if f.name == "command":
            continue
        flag = "--" + f.name.replace("_", "-")
        parser.add_argument(flag, dest=f.name, default=argparse.SUPPRESS, metavar=f.name.upper())
    return parser


def validate(config):
    """Check flag domains, naming the violated precondition."""
    c = config
    checks = [
        (c.kappa >= 0, "kappa must be >= 0"),
        (c.b > 0, "b must be > 0"),
        (c.potential != potentials.EXPONENTIAL_WELL or c.v0 > 0, "v0 must be > 0"),
        (c.m >= 0, "m must be >= 0"),
        (c.m1 is None or c.m1 >= 0, "m1 must be >= 0"),
        (c.m2 is None or c.m2 >= 0, "m2 must be >= 0"),
        (c.ell >= 0, "ell must be >= 0"),
        (c.beta > -0.5, "beta must be > -1/2"),
        (c.mu > 0, "mu must be > 0"),
        (c.dim >= 1, "dim must be >= 1"),
        (1 <= c.states, "states must be >= 1"),
        (c.target >= 0, "target must be >= 0"),
        (0 < c.mu_min <= c.mu_max, "mu range requires 0 < mu_min <= mu_max"),
        (-0.5 < c.beta_min <= c.beta_max, "beta range requires -1/2 < beta_min <= beta_max"),
        (0 < c.r_min < c.r_max, "profile range requires 0 < r_min < r_max"),
        (c.samples >= 2, "samples must be >= 2"),
    ]
    for ok, message in checks:
        if not ok:
            raise UsageError(message)
    if c.command in ("classify", "bounds") and c.potential != potentials.HELLMANN:
        raise UsageError(f"{c.command} requires --potential hellmann")
    return config


def parse_config(argv, config_file=None):
    """Build a :class:`RunConfig` from command-line arguments.

    Defaults are overridden by the configuration file, which is
    overridden by explicit flags.
    """
    args = vars(_build_parser().parse_args(list(argv)))
    command = args.pop("command")
    path = args.pop("config", None) or config_file
    values = read_config_file(path) if path else {}
    for key, raw in args.items():
        values[key] = _convert(key, raw)
    return validate(replace(RunConfig(command=command), **values))


def _num(x, fmt):
    if x is None:
        return ""
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return format(x, fmt)


def _emit(rows, header, config, out):
    """Write rows as CSV (6 decimals) or aligned text (5 decimals)."""
    fmt = ".6f" if config.format == "csv" else ".5f"
    cells = [[_num(v, fmt) if isinstance(v, float) or v is None else str(v) for v in row] for row in rows]
    if config.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(cells)
        return
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h) for i, h in enumerate(header)]
    out.write("  ".join(h.rjust(w) for h, w in zip(header, widths)) + "\n")
    for row in cells:
        out.write("  ".join(c.rjust(w) for c, w in zip(row, widths)) + "\n")


def compute_table1(dim=32, mu=1.0, beta=1.0, m=1.0, order=None):
    """Binding energies, virial residuals and fixed-precedence (``mode="paper"``) lower bounds of the Hellmann reference table.

    Returns
    -------
    upper : list of dict
        Keys ``n_r``, ``ell``, ``column``, ``binding``, ``virial_residual``.
    lower : dict
        ``{column: binding lower bound}``.
    """
    masses = MassConfig.equal(m)
    upper, lower = [], {}
    ells = sorted({ell for _, ell in TABLE1_STATES})
    for column, kappa, upsilon in TABLE1_COLUMNS:
        spec = PotentialSpec.hellmann(kappa, upsilon, b=m)
        per_ell = {}
        for ell in ells:
            n_needed = 1 + max(n for n, e in TABLE1_STATES if e == ell)
            result = solve(TrialBasis(ell, beta, mu, dim), masses, spec, n_states=n_needed, order=order)
            per_ell[ell] = (result, virial_residuals(result))
        for n_r, ell in TABLE1_STATES:
            result, virial = per_ell[ell]
            upper.append(
                dict(
                    n_r=n_r,
                    ell=ell,
                    column=column,
                    binding=float(result.binding[n_r]),
                    virial_residual=virial[n_r].residual,
                )
            )
        lower[column] = bounds.hellmann_lower_bound(spec, m, bounds.PAPER).binding_bound
    return upper, lower


def _cmd_classify(config, out):
    profile = potentials.classify(config.spec)
    bounded = "bounded below" if profile.bounded_below else "unbounded below"
    origin = {
        potentials.ATTRACTIVE_SINGULAR: "singular at origin",
        potentials.FINITE: "finite at origin",
        potentials.REPULSIVE_SINGULAR: "repulsively singular at origin",
    }[profile.origin_behavior]
    r_star, v_min = profile.minimum if profile.minimum else (None, None)
    if config.format == "csv":
        _emit(
            [[profile.category, profile.bounded_below, profile.origin_behavior, r_star, v_min]],
            ["category", "bounded_below", "origin_behavior", "r_star", "v_min"],
            config,
            out,
        )
        return
    out.write(f"category: {profile.category}; {bounded}; {origin}\n")
    if profile.minimum:
        out.write(f"minimum: r* = {_num(r_star, '.5f')}, V_min = {_num(v_min, '.5f')}\n")


def _cmd_bounds(config, out):
    m = config.masses
    if m.m1 != m.m2:
        raise UsageError("lower bounds are available for equal masses only (m1 = m2)")
    report = bounds.hellmann_lower_bound(config.spec, m.m1, config.mode)
    _emit(
        [[report.mode, report.method or "none", report.bounded_below, report.alpha_eff,
          report.lower_bound, report.binding_bound]],
        ["mode", "method", "bounded_below", "alpha_eff", "lower_bound", "binding_bound"],
        config,
        out,
    )


def _cmd_solve(config, out):
    n = min(config.states, config.dim)
    result = solve(config.basis, config.masses, config.spec, n_states=n)
    virial = virial_residuals(result)
    rows = [
        [k, config.ell, float(result.eigenvalues[k]), float(result.binding[k]), virial[k].residual]
        for k in range(n)
    ]
    _emit(rows, ["n_r", "ell", "energy", "binding", "virial_residual"], config, out)


def _cmd_table1(config, out):
    upper, lower = compute_table1(config.dim, config.mu, config.beta, config.m)
    rows = [[r["n_r"], r["ell"], r["column"], r["binding"], r["virial_residual"]] for r in upper]
    rows += [["lower-bound", "", column, value, None] for column, value in lower.items()]
    _emit(rows, ["n_r", "ell", "column", "binding", "virial_residual"], config, out)


def _cmd_count(config, out):
    m = config.masses
    if m.m1 != m.m2:
        raise UsageError("the counting bound is available for equal masses only (m1 = m2)")
    report = bounds.count_bound(config.spec, m.m1)
    max_states = None if report.n_bound is None else math.floor(report.n_bound)
    _emit(
        [[report.condition_ok, report.failure_reason or "", report.c_used, report.n_bound,
          "" if max_states is None else max_states]],
        ["condition_ok", "failure_reason", "C", "N_bound", "max_states"],
        config,
        out,
    )


def _cmd_optimize(config, out):
    outcome = optimize_parameters(
        config.masses, config.spec, config.ell, config.dim, config.target,
        (config.mu_min, config.mu_max), (config.beta_min, config.beta_max),
    )
    _emit(
        [[config.ell, config.target, outcome.best_mu, outcome.best_beta, outcome.best_value,
          outcome.best_value - config.masses.threshold, outcome.evaluations]],
        ["ell", "n_r", "mu", "beta", "energy", "binding", "evaluations"],
        config,
        out,
    )


def _cmd_profile(config, out):
    samples = potentials.profile_samples(config.spec, config.r_min, config.r_max, config.samples)
    _emit([[float(r), float(v)] for r, v in samples], ["r", "V"], replace(config, format="csv"), out)


_HANDLERS = {
    "classify": _cmd_classify,
    "bounds": _cmd_bounds,
    "solve": _cmd_solve,
    "table1": _cmd_table1,
    "count": _cmd_count,
    "optimize": _cmd_optimize,
    "profile": _cmd_profile,
}


def run(config, out=None):
    """Execute a configured command; returns the exit status."""
    out = sys.stdout if out is None else out
    buffer = io.StringIO()
    try:
        start_order()
        _HANDLERS[config.command](config, buffer)
    except UsageError as exc:
        print(f"salpeter-bounds: error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"salpeter-bounds: numerical error: {exc}", file=sys.stderr)
        return 1
    except (DomainError, SalpeterError) as exc:
        print(f"salpeter-bounds: error: {exc}", file=sys.stderr)
        return 2
    text = buffer.getvalue()
    if config.output:
        try:
            with open(config.output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"salpeter-bounds: cannot write {config.output}: {exc.strerror}", file=sys.stderr)
            return 1
    else:
        out.write(text)
    return 0


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_config(argv)
    except UsageError as exc:
        print(f"salpeter-bounds: error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
