"""JSON problem configurations for the command line."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .cauchy import DEFAULT_RESOLUTION, PiecewiseConstantData, SampledData
from .core import Hypotheses, Params, PrimitiveState
from .entropy import EntropyPair
from .errors import ArgumentError, DomainError

__all__ = [
    "ConfigError",
    "OutputSpec",
    "OracleSpec",
    "ProblemConfig",
    "default_pairs",
    "load_config",
]


class ConfigError(ArgumentError):
    """Malformed or schema-invalid configuration."""


def default_pairs() -> list[dict]:
    # three convex pairs exercising F, G and H separately and together
    return [
        {"F": {"family": "quadratic", "a": 1.0, "b": 0.0}, "G": {"family": "zero"}, "H": {"family": "zero"}},
        {"F": {"family": "zero"}, "G": {"family": "quadratic", "a": 1.0, "b": 0.5}, "H": {"family": "zero"}},
        {
            "F": {"family": "quadratic", "a": 0.5, "b": 0.1},
            "G": {"family": "quadratic", "a": 1.0, "b": -0.2},
            "H": {"family": "quadratic", "a": 2.0, "b": 1.0},
        },
    ]


def _num(obj, key, default=None, where="config"):
    if key not in obj:
        if default is None:
            raise ConfigError(f"{where}: missing key {key!r}")
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}.{key} must be a number, got {value!r}")
    return float(value)


def _num_list(obj, key, where):
    value = obj.get(key)
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{where}.{key} must be a non-empty list of numbers")
    out = []
    for item in value:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ConfigError(f"{where}.{key} contains a non-number: {item!r}")
        out.append(float(item))
    return out


def _state(obj, where) -> PrimitiveState:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where} must be an object with rho, u, v")
    try:
        return PrimitiveState(_num(obj, "rho", where=where), _num(obj, "u", where=where), _num(obj, "v", where=where))
    except DomainError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _state_dict(p: PrimitiveState) -> dict:
    return {"rho": p.rho, "u": p.u, "v": p.v}


@dataclass(frozen=True)
class OutputSpec:
    t: tuple = (0.5,)
    x_range: tuple = (-1.0, 1.0)
    n_samples: int = 201

    @classmethod
    def from_dict(cls, obj) -> "OutputSpec":
        if obj is None:
            return cls()
        if not isinstance(obj, dict):
            raise ConfigError("output must be an object")
        t = tuple(_num_list(obj, "t", "output")) if "t" in obj else cls.t
        if any(ti < 0.0 for ti in t):
            raise ConfigError("output.t values must be nonnegative")
        x_range = tuple(_num_list(obj, "x_range", "output")) if "x_range" in obj else cls.x_range
        if len(x_range) != 2 or not x_range[1] > x_range[0]:
            raise ConfigError("output.x_range must be [x_min, x_max] with x_min < x_max")
        n = obj.get("n_samples", cls.n_samples)
        if isinstance(n, bool) or not isinstance(n, int) or n < 2:
            raise ConfigError("output.n_samples must be an integer >= 2")
        return cls(t, x_range, n)

    def to_dict(self) -> dict:
        return {"t": list(self.t), "x_range": list(self.x_range), "n_samples": self.n_samples}


@dataclass(frozen=True)
class OracleSpec:
    n_cells: int = 800
    cfl: float = 0.45
    t_end: float = 0.2

    @classmethod
    def from_dict(cls, obj) -> "OracleSpec":
        if obj is None:
            return cls()
        if not isinstance(obj, dict):
            raise ConfigError("oracle must be an object")
        n = obj.get("n_cells", cls.n_cells)
        if isinstance(n, bool) or not isinstance(n, int) or n < 4:
            raise ConfigError("oracle.n_cells must be an integer >= 4")
        cfl = _num(obj, "cfl", cls.cfl, "oracle")
        if not 0.0 < cfl <= 0.5:
            raise ConfigError("oracle.cfl must lie in (0, 0.5]")
        t_end = _num(obj, "t_end", cls.t_end, "oracle")
        if not t_end > 0.0:
            raise ConfigError("oracle.t_end must be positive")
        return cls(n, cfl, t_end)

    def to_dict(self) -> dict:
        return {"n_cells": self.n_cells, "cfl": self.cfl, "t_end": self.t_end}


def _initial_data(obj):
    if not isinstance(obj, dict):
        raise ConfigError("initial_data must be an object")
    kind = obj.get("type")
    try:
        if kind == "piecewise":
            return PiecewiseConstantData(
                _num_list(obj, "edges", "initial_data"),
                _num_list(obj, "rho", "initial_data"),
                _num_list(obj, "u", "initial_data"),
                _num_list(obj, "v", "initial_data"),
            )
        if kind == "sampled":
            return SampledData(
                _num(obj, "x_min", where="initial_data"),
                _num(obj, "x_max", where="initial_data"),
                _num_list(obj, "rho", "initial_data"),
                _num_list(obj, "u", "initial_data"),
                _num_list(obj, "v", "initial_data"),
            )
    except (ArgumentError, DomainError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"initial_data: {exc}") from exc
    raise ConfigError(f"initial_data.type must be 'piecewise' or 'sampled', got {kind!r}")


def _initial_data_dict(data) -> dict:
    if isinstance(data, PiecewiseConstantData):
        return {
            "type": "piecewise",
            "edges": data.edges.tolist(),
            "rho": data.rho.tolist(),
            "u": data.u.tolist(),
            "v": data.v.tolist(),
        }
    return {
        "type": "sampled",
        "x_min": data.x_min,
        "x_max": data.x_max,
        "rho": data.rho.tolist(),
        "u": data.u.tolist(),
        "v": data.v.tolist(),
    }


def _hypotheses(obj) -> Optional[Hypotheses]:
    if obj is None:
        return None
    if not isinstance(obj, dict):
        raise ConfigError("hypotheses must be an object")
    keys = ("c1", "c2", "c3", "c4", "c5", "tv_bound")
    try:
        return Hypotheses(*(_num(obj, k, where="hypotheses") for k in keys))
    except ConfigError:
        raise
    except ArgumentError as exc:
        raise ConfigError(f"hypotheses: {exc}") from exc


@dataclass
class ProblemConfig:
    s: float
    kind: str
    left: Optional[PrimitiveState] = None
    right: Optional[PrimitiveState] = None
    initial_data: object = None
    hypotheses: Optional[Hypotheses] = None
    output: OutputSpec = field(default_factory=OutputSpec)
    oracle: OracleSpec = field(default_factory=OracleSpec)
    entropy_pairs: list = field(default_factory=default_pairs)
    map_resolution: int = DEFAULT_RESOLUTION

    @property
    def params(self) -> Params:
        return Params(self.s)

    def pairs(self) -> list[EntropyPair]:
        return [EntropyPair.from_config(p) for p in self.entropy_pairs]

    @classmethod
    def from_dict(cls, obj) -> "ProblemConfig":
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
        s = _num(obj, "s")
        if not s > 0.0:
            raise ConfigError(f"s must be positive, got {s!r}")
        kind = obj.get("kind")
        left = right = data = None
        if kind == "riemann":
            left = _state(obj.get("left"), "left")
            right = _state(obj.get("right"), "right")
        elif kind == "cauchy":
            data = _initial_data(obj.get("initial_data"))
        else:
            raise ConfigError(f"kind must be 'riemann' or 'cauchy', got {kind!r}")
        pairs = obj.get("entropy_pairs", default_pairs())
        if not isinstance(pairs, list):
            raise ConfigError("entropy_pairs must be a list")
        for p in pairs:
            try:
                EntropyPair.from_config(p)
            except (ArgumentError, AttributeError) as exc:
                raise ConfigError(f"entropy_pairs: {exc}") from exc
        res = obj.get("map_resolution", DEFAULT_RESOLUTION)
        if isinstance(res, bool) or not isinstance(res, int) or res < 2:
            raise ConfigError("map_resolution must be an integer >= 2")
        return cls(
            s=s,
            kind=kind,
            left=left,
            right=right,
            initial_data=data,
            hypotheses=_hypotheses(obj.get("hypotheses")),
            output=OutputSpec.from_dict(obj.get("output")),
            oracle=OracleSpec.from_dict(obj.get("oracle")),
            entropy_pairs=[EntropyPair.from_config(p).to_config() for p in pairs],
            map_resolution=res,
        )

    def to_dict(self) -> dict:
        out = {"s": self.s, "kind": self.kind}
        if self.kind == "riemann":
            out["left"] = _state_dict(self.left)
            out["right"] = _state_dict(self.right)
        else:
            out["initial_data"] = _initial_data_dict(self.initial_data)
        if self.hypotheses is not None:
            h = self.hypotheses
            out["hypotheses"] = {"c1": h.c1, "c2": h.c2, "c3": h.c3, "c4": h.c4, "c5": h.c5, "tv_bound": h.tv_bound}
        out["output"] = self.output.to_dict()
        out["oracle"] = self.oracle.to_dict()
        out["entropy_pairs"] = list(self.entropy_pairs)
        out["map_resolution"] = self.map_resolution
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "ProblemConfig":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(obj)


def load_config(path) -> ProblemConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return ProblemConfig.loads(text)
