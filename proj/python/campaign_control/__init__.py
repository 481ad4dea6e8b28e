"""Budget-constrained campaign controls for SI spreading on networks."""

import json as _json

from ._campaign import (
    ConfigError,
    ControlSchedule,
    DegreeDistribution,
    InfeasibleBudget,
    ModelParams,
    Network,
    NumericalError,
    OptimalSolution,
    SolverOptions,
    TimeGrid,
    Trajectory,
    bang_bang_strategy,
    ensemble,
    full_intensity_spend,
    gradient,
    integrate,
    objective,
    power_law,
    preset,
    solve,
    spend,
    static_strategy,
    truncated_poisson,
)
from ._campaign import evaluate_scenario as _evaluate
from ._campaign import run as _run

__all__ = [
    "ConfigError", "ControlSchedule", "DegreeDistribution", "InfeasibleBudget",
    "ModelParams", "Network", "NumericalError", "OptimalSolution", "SolverOptions",
    "TimeGrid", "Trajectory", "bang_bang_strategy", "ensemble", "evaluate_scenario",
    "full_intensity_spend", "gradient", "integrate", "objective", "power_law", "preset",
    "run", "solve", "spend", "static_strategy", "truncated_poisson",
]


def _text(config):
    return config if isinstance(config, str) else _json.dumps(config)


def evaluate_scenario(config):
    """Summary dict for a scenario given as a dict or JSON text."""
    return _evaluate(_text(config))


def run(command, config):
    """Run a CLI subcommand ("solve", "sweep", "validate", "baseline").

    Returns (exit_code, written_paths)."""
    return _run(command, _text(config))
