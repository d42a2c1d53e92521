"""Scenario-file ingestion, validation, and run records.

Scenario files are JSON: a version tag, a station list (each station an
id plus an optional service rate that rescales its arrival rates), a
scenario list of per-station rate vectors with probabilities, and a
problem block carrying the risk budget (epsilon) or wait penalty
(delta), per-server prices, and solver/bound selections. Rates are
normalized to offered load (rate divided by service rate) when the
scenario sets are built, so the analytical core keeps its unit-service
convention.

Run records capture what a solve did: a digest of the canonical input,
the solver, the staffing, its cost, the exactly re-evaluated QoS, and
wall time. The recorded QoS always comes from the exact wait curve, so
re-invoking joint_constraint_value on the recorded solution reproduces
it regardless of which bound the solver used.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ._version import __version__
from .errors import ValidationError
from .frontier import BOUND_CHOICES
from .joint import joint_constraint_value
from .scenarios import JointScenarioSet

__all__ = [
    "SOLVER_MODES",
    "StationSpec",
    "ProblemSpec",
    "ScenarioFile",
    "RunRecord",
    "parse_scenario_data",
    "load_scenario_file",
    "write_scenario_file",
    "resolve_scenario_path",
    "make_run_record",
    "write_run_record",
]

SOLVER_MODES = (
    "det",
    "stoch-single",
    "stoch-multi-joint",
    "stoch-multi-decoupled",
    "stoch-multi-reduced",
)

PROBABILITY_SUM_TOL = 1e-9


def _fail(message, pointer):
    raise ValidationError(message, pointer=pointer)


def _require(data, key, kind, pointer):
    if not isinstance(data, dict):
        _fail("expected an object", pointer.rsplit(".", 1)[0] if "." in pointer else "")
    if key not in data:
        _fail("missing required field", pointer)
    value = data[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            _fail(f"expected a number, got {value!r}", pointer)
        return float(value)
    if not isinstance(value, kind):
        _fail(f"expected {kind.__name__}, got {value!r}", pointer)
    return value


def _positive_real(value, pointer):
    if isinstance(value, bool) or not isinstance(value, (int, float)) \
            or not math.isfinite(value) or value <= 0:
        _fail(f"expected a positive real, got {value!r}", pointer)
    return float(value)


@dataclass(frozen=True)
class StationSpec:
    id: str
    service_rate: float = 1.0


@dataclass(frozen=True)
class ProblemSpec:
    epsilon: float = None
    delta: float = None
    costs: tuple = ()
    solver: str = None
    bound: str = "exact"


@dataclass(frozen=True)
class ScenarioFile:
    """Parsed scenario file; rates are stored exactly as given."""

    version: int
    stations: tuple
    scenarios: tuple        # ((rates per station), probability) pairs
    problem: ProblemSpec

    @property
    def station_count(self):
        return len(self.stations)

    def joint_set(self):
        """Offered-load scenario set: rates over service rates, with the
        probabilities renormalized to sum to one exactly."""
        total = math.fsum(p for _, p in self.scenarios)
        vectors = tuple(
            tuple(rate / station.service_rate
                  for rate, station in zip(rates, self.stations))
            for rates, _ in self.scenarios)
        probs = tuple(p / total for _, p in self.scenarios)
        return JointScenarioSet(vectors, probs)

    def to_data(self):
        return {
            "version": self.version,
            "stations": [
                {"id": s.id, "service_rate": s.service_rate}
                for s in self.stations
            ],
            "scenarios": [
                {"rates": list(rates), "probability": p}
                for rates, p in self.scenarios
            ],
            "problem": {
                key: value
                for key, value in (
                    ("epsilon", self.problem.epsilon),
                    ("delta", self.problem.delta),
                    ("costs", list(self.problem.costs)),
                    ("solver", self.problem.solver),
                    ("bound", self.problem.bound),
                )
                if value is not None
            },
        }

    def digest(self):
        canonical = json.dumps(self.to_data(), sort_keys=True,
                               separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()


def _parse_stations(data):
    stations = _require(data, "stations", list, "stations")
    if not stations:
        _fail("at least one station is required", "stations")
    specs = []
    seen = set()
    for i, entry in enumerate(stations):
        if not isinstance(entry, dict):
            _fail("expected an object", f"stations[{i}]")
        name = _require(entry, "id", str, f"stations[{i}].id")
        if not name:
            _fail("station id must be non-empty", f"stations[{i}].id")
        if name in seen:
            _fail(f"duplicate station id {name!r}", f"stations[{i}].id")
        seen.add(name)
        rate = 1.0
        if "service_rate" in entry:
            rate = _positive_real(entry["service_rate"],
                                  f"stations[{i}].service_rate")
        specs.append(StationSpec(id=name, service_rate=rate))
    return tuple(specs)


def _parse_scenarios(data, station_count):
    scenarios = _require(data, "scenarios", list, "scenarios")
    if not scenarios:
        _fail("at least one scenario is required", "scenarios")
    parsed = []
    for i, entry in enumerate(scenarios):
        if not isinstance(entry, dict):
            _fail("expected an object", f"scenarios[{i}]")
        rates = _require(entry, "rates", list, f"scenarios[{i}].rates")
        if len(rates) != station_count:
            _fail(f"expected {station_count} rates, got {len(rates)}",
                  f"scenarios[{i}].rates")
        values = tuple(_positive_real(r, f"scenarios[{i}].rates[{j}]")
                       for j, r in enumerate(rates))
        prob = _require(entry, "probability", float,
                        f"scenarios[{i}].probability")
        if not math.isfinite(prob) or not 0.0 < prob <= 1.0:
            _fail(f"probability must lie in (0, 1], got {prob!r}",
                  f"scenarios[{i}].probability")
        parsed.append((values, prob))
    total = math.fsum(p for _, p in parsed)
    if abs(total - 1.0) > PROBABILITY_SUM_TOL:
        _fail(f"probabilities sum to {total!r}, expected 1 within "
              f"{PROBABILITY_SUM_TOL}", "scenarios")
    return tuple(parsed)


def _parse_problem(data, station_count):
    problem = _require(data, "problem", dict, "problem")
    has_eps = "epsilon" in problem
    has_delta = "delta" in problem
    if has_eps == has_delta:
        _fail("exactly one of epsilon and delta is required", "problem")
    epsilon = delta = None
    if has_eps:
        epsilon = _require(problem, "epsilon", float, "problem.epsilon")
        if not math.isfinite(epsilon) or not 0.0 < epsilon < 1.0:
            _fail(f"epsilon must lie strictly between 0 and 1, got {epsilon!r}",
                  "problem.epsilon")
    else:
        delta = _positive_real(problem["delta"], "problem.delta")
    costs = (1.0,) * station_count
    if "costs" in problem:
        raw = problem["costs"]
        if not isinstance(raw, list) or len(raw) != station_count:
            _fail(f"expected a list of {station_count} per-server prices",
                  "problem.costs")
        costs = tuple(_positive_real(c, f"problem.costs[{j}]")
                      for j, c in enumerate(raw))
    solver = None
    if "solver" in problem:
        solver = _require(problem, "solver", str, "problem.solver")
        if solver not in SOLVER_MODES:
            _fail(f"unknown solver {solver!r}; choose from {', '.join(SOLVER_MODES)}",
                  "problem.solver")
    bound = "exact"
    if "bound" in problem:
        bound = _require(problem, "bound", str, "problem.bound")
        if bound not in BOUND_CHOICES:
            _fail(f"unknown bound {bound!r}; choose from {', '.join(BOUND_CHOICES)}",
                  "problem.bound")
    return ProblemSpec(epsilon=epsilon, delta=delta, costs=costs,
                       solver=solver, bound=bound)


def parse_scenario_data(data):
    """Validate a decoded scenario document and build a ScenarioFile.

    Raises ValidationError with a pointer to the offending field.
    """
    if not isinstance(data, dict):
        _fail("top level must be an object", "")
    version = _require(data, "version", int, "version")
    if isinstance(version, bool) or version < 1:
        _fail(f"version must be a positive integer, got {version!r}", "version")
    stations = _parse_stations(data)
    scenarios = _parse_scenarios(data, len(stations))
    problem = _parse_problem(data, len(stations))
    return ScenarioFile(version=version, stations=stations,
                        scenarios=scenarios, problem=problem)


def load_scenario_file(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}", pointer="file")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON: {exc}", pointer="file")
    return parse_scenario_data(data)


def write_scenario_file(scenario_file, path):
    Path(path).write_text(json.dumps(scenario_file.to_data(), indent=2) + "\n")


def resolve_scenario_path(name):
    """Resolve a CLI file argument: an existing path, or the name of a
    bundled fixture such as example1."""
    path = Path(name)
    if path.exists():
        return path
    stem = path.name.removesuffix(".json")
    bundled = resources.files("qstaff") / "data" / f"{stem}.json"
    if bundled.is_file():
        return Path(str(bundled))
    raise ValidationError(f"no such file or bundled fixture: {name}",
                          pointer="file")


@dataclass(frozen=True)
class RunRecord:
    input_digest: str
    solver: str
    solution: tuple
    objective: float
    achieved_qos: float      # exact no-wait probability, never a bound
    wall_time_s: float
    tool_version: str

    def to_data(self):
        return {
            "input_digest": self.input_digest,
            "solver": self.solver,
            "solution": list(self.solution),
            "objective": self.objective,
            "achieved_qos": self.achieved_qos,
            "wall_time_s": self.wall_time_s,
            "tool_version": self.tool_version,
        }


def make_run_record(scenario_file, solver, solution, objective, wall_time_s):
    achieved = joint_constraint_value(scenario_file.joint_set(), solution)
    return RunRecord(
        input_digest=scenario_file.digest(),
        solver=solver,
        solution=tuple(int(x) for x in solution),
        objective=float(objective),
        achieved_qos=achieved,
        wall_time_s=float(wall_time_s),
        tool_version=__version__,
    )


def write_run_record(record, path):
    Path(path).write_text(json.dumps(record.to_data(), indent=2) + "\n")
