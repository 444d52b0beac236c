"""JSON grid configuration: schema validation and GridSpec construction.

Schema (all fields required unless noted):

    {
      "master_seed": 7,
      "replications": 100,
      "graphs": [
        {"name": "ba1000", "type": "ba", "n": 1000, "m": 3, "seed": 1},
        {"name": "er1000", "type": "er", "n": 1000, "p": 0.006, "seed": 2},
        {"name": "mynet", "type": "edgelist", "path": "edges.txt"}
      ],
      "pp": [0.05, 0.1],
      "sp": [0.01, 0.05],
      "rankings": ["random", "degree", "degree2", "pagerank", "eigenvector"],
      "strategies": ["SN", "SQ_1PS", "SQ_1PS_R",
                     {"kind": "SQ_kPS", "k": 2},
                     {"kind": "SQ_TSN"}]
    }

TSN strategies take their reference duration from each configuration's SN
block, so "t_sn" is normally omitted.
"""
from __future__ import annotations

import json
import os
import random
from typing import List, Tuple

from .experiment import GridSpec, derive_rng
from .graphs import Graph, ParameterError, generate_ba, generate_er, load_edge_list
from .ranking import RankingMethod
from .strategies import StrategySpec


class ConfigError(ValueError):
    """Grid config violates the schema; message names the offending field."""


def _require(obj: dict, field: str, types, where: str):
    if field not in obj:
        raise ConfigError(f"{where}: missing field {field!r}")
    value = obj[field]
    if not isinstance(value, types) or isinstance(value, bool):
        raise ConfigError(f"{where}.{field}: wrong type {type(value).__name__}")
    return value


def _build_graph(entry: dict, index: int, base_dir: str) -> Tuple[str, Graph]:
    where = f"graphs[{index}]"
    if not isinstance(entry, dict):
        raise ConfigError(f"{where}: expected an object")
    name = _require(entry, "name", str, where)
    kind = _require(entry, "type", str, where)
    if kind == "ba":
        n = _require(entry, "n", int, where)
        m = _require(entry, "m", int, where)
        seed = _require(entry, "seed", int, where)
        return name, generate_ba(n, m, random.Random(seed))
    if kind == "er":
        n = _require(entry, "n", int, where)
        p = _require(entry, "p", (int, float), where)
        seed = _require(entry, "seed", int, where)
        return name, generate_er(n, float(p), random.Random(seed))
    if kind == "edgelist":
        path = _require(entry, "path", str, where)
        if not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        with open(path, encoding="utf-8") as fh:
            return name, load_edge_list(fh)
    raise ConfigError(f"{where}.type: unknown graph type {kind!r}")


def _build_strategy(entry, index: int) -> StrategySpec:
    where = f"strategies[{index}]"
    try:
        if isinstance(entry, str):
            return StrategySpec.parse(entry)
        if isinstance(entry, dict):
            kind = _require(entry, "kind", str, where)
            return StrategySpec.parse(kind, k=entry.get("k"),
                                      t_sn=entry.get("t_sn"))
    except ParameterError as exc:
        raise ConfigError(f"{where}: {exc}") from None
    raise ConfigError(f"{where}: expected a name or an object")


def load_grid_config(data, base_dir: str = ".") -> GridSpec:
    """Build a GridSpec from parsed JSON (dict) or a JSON string."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict):
        raise ConfigError("config root must be an object")
    master_seed = _require(data, "master_seed", int, "config")
    replications = _require(data, "replications", int, "config")
    raw_graphs = _require(data, "graphs", list, "config")
    if not raw_graphs:
        raise ConfigError("config.graphs: must not be empty")
    graphs = [_build_graph(g, i, base_dir) for i, g in enumerate(raw_graphs)]
    names = [n for n, _ in graphs]
    if len(set(names)) != len(names):
        raise ConfigError("config.graphs: duplicate graph names")
    pp_values = [float(x) for x in _require(data, "pp", list, "config")]
    sp_values = [float(x) for x in _require(data, "sp", list, "config")]
    raw_rankings = _require(data, "rankings", list, "config")
    if not raw_rankings:
        raise ConfigError("config.rankings: must not be empty")
    try:
        rankings = [RankingMethod.from_string(r) for r in raw_rankings]
    except ValueError as exc:
        raise ConfigError(f"config.rankings: {exc}") from None
    raw_strategies = _require(data, "strategies", list, "config")
    if not raw_strategies:
        raise ConfigError("config.strategies: must not be empty")
    strategies = [_build_strategy(s, i) for i, s in enumerate(raw_strategies)]
    try:
        return GridSpec(graphs, pp_values, sp_values, rankings, strategies,
                        replications, master_seed)
    except ParameterError as exc:
        raise ConfigError(str(exc)) from None


def load_grid_config_file(path: str) -> GridSpec:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    return load_grid_config(data, base_dir=os.path.dirname(os.path.abspath(path)))
