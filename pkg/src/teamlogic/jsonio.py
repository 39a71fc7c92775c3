"""JSON serialization for teams, models and KS configurations.

Team JSON::

    {"domain": ["m1", ...],
     "universe": ["a1", ...],            # optional; defaults to active values
     "rows": [["a1", "b1", "+", "+"], ...],
     "weights": ["1/5", ...]}            # optional; present iff probabilistic

Weights are strings ``"p/q"`` in lowest terms (or ``"1"``), parallel to
``rows``.  Model JSON is team JSON plus ``{"kind": "empirical"|"hidden",
"arity": n}``.  Values encode as JSON scalars (strings, integers) or
nested lists for tuple values; rationals inside values encode as "p/q"
strings prefixed with ``"frac:"`` to keep them apart from symbols.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import InvalidArgumentError
from .models import EmpiricalModel, HVModel, from_team
from .teams import ProbTeam, Team, Value


def value_to_json(value: Value):
    if isinstance(value, bool):
        raise InvalidArgumentError("booleans are not valid team values")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return f"frac:{value}"
    if isinstance(value, str):
        return value
    if isinstance(value, tuple):
        return [value_to_json(v) for v in value]
    raise InvalidArgumentError(f"cannot serialize value {value!r}")


def value_from_json(obj) -> Value:
    if isinstance(obj, bool):
        raise InvalidArgumentError("booleans are not valid team values")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        if obj.startswith("frac:"):
            return Fraction(obj[5:])
        return obj
    if isinstance(obj, list):
        return tuple(value_from_json(v) for v in obj)
    raise InvalidArgumentError(f"cannot decode value {obj!r}")


def team_to_dict(data: Team | ProbTeam) -> dict:
    team = data.team if isinstance(data, ProbTeam) else data
    payload = {
        "domain": list(team.domain),
        "universe": [value_to_json(v) for v in team.universe],
        "rows": [[value_to_json(v) for v in row] for row in team.rows],
    }
    if isinstance(data, ProbTeam):
        payload["weights"] = [str(data.weight(row)) for row in team.rows]
    return payload


def team_from_dict(payload: dict) -> Team | ProbTeam:
    try:
        domain = tuple(payload["domain"])
        raw_rows = payload["rows"]
    except KeyError as exc:
        raise InvalidArgumentError(f"team JSON is missing field {exc.args[0]!r}") from None
    rows = [tuple(value_from_json(v) for v in row) for row in raw_rows]
    universe = None
    if "universe" in payload:
        universe = [value_from_json(v) for v in payload["universe"]]
    team = Team(domain, rows, universe)
    if "weights" not in payload:
        return team
    weights = payload["weights"]
    if len(weights) != len(rows):
        raise InvalidArgumentError("weights must be parallel to rows")
    return ProbTeam(team, {row: Fraction(w) for row, w in zip(rows, weights)})


def model_to_dict(model: EmpiricalModel | HVModel) -> dict:
    payload = team_to_dict(model.data)
    payload["kind"] = model.kind
    payload["arity"] = model.arity
    return payload


def model_from_dict(payload: dict) -> EmpiricalModel | HVModel:
    kind = payload.get("kind")
    if kind not in ("empirical", "hidden"):
        raise InvalidArgumentError(f"model JSON needs kind empirical|hidden, got {kind!r}")
    data = team_from_dict(payload)
    model = from_team(data, kind)
    if "arity" in payload and payload["arity"] != model.arity:
        raise InvalidArgumentError(
            f"declared arity {payload['arity']} does not match domain arity {model.arity}"
        )
    return model


def dump_json(payload: dict) -> str:
    """Deterministic JSON text: sorted keys, stable separators, newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def load_path(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidArgumentError(f"cannot read {path}: {exc}") from None
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError(f"malformed JSON in {path}: {exc}") from None
    if not isinstance(payload, dict):
        raise InvalidArgumentError(f"expected a JSON object in {path}")
    return payload


def load_team(path: str | Path) -> Team | ProbTeam:
    return team_from_dict(load_path(path))


def load_model(path: str | Path) -> EmpiricalModel | HVModel:
    return model_from_dict(load_path(path))


def save_model(model: EmpiricalModel | HVModel, path: str | Path):
    Path(path).write_text(dump_json(model_to_dict(model)))
