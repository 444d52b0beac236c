"""Single-stage and sequential seeding strategies over the IC engine.

All strategies spend at most n seeds, always on the highest-ranked nodes that
are still inactive at the moment of injection. Budget that cannot be placed
because every node is already active is forfeited and reported on the trace.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .diffusion import DiffusionState, DiffusionTrace, activate_seeds, ic_step, run_until_stop
from .graphs import Graph, ParameterError
from .ranking import Ranking

STRATEGY_KINDS = ("SN", "SQ_kPS", "SQ_kPS_R", "SQ_kPS_B", "SQ_TSN", "SQ_TSN_R")


@dataclass(frozen=True)
class StrategySpec:
    kind: str
    k: Optional[int] = None
    t_sn: Optional[int] = None

    def __post_init__(self):
        if self.kind not in STRATEGY_KINDS:
            raise ParameterError(f"unknown strategy kind: {self.kind!r}")
        if self.kind.startswith("SQ_kPS"):
            if self.k is None or self.k < 1:
                raise ParameterError(f"{self.kind} requires k >= 1")
        elif self.k is not None:
            raise ParameterError(f"{self.kind} takes no k parameter")
        if not self.kind.startswith("SQ_TSN") and self.t_sn is not None:
            raise ParameterError(f"{self.kind} takes no t_sn parameter")
        if self.t_sn is not None and self.t_sn < 1:
            raise ParameterError("t_sn must be >= 1")

    @property
    def label(self) -> str:
        if self.kind.startswith("SQ_kPS"):
            return f"SQ_{self.k}PS" + self.kind[6:]
        return self.kind

    @classmethod
    def parse(cls, name: str, k: Optional[int] = None,
              t_sn: Optional[int] = None) -> "StrategySpec":
        """Accepts canonical kinds (SQ_kPS + k=2) and inline labels (SQ_2PS)."""
        name = name.strip()
        m = re.fullmatch(r"SQ_(\d+)PS(_R|_B)?", name)
        if m:
            return cls("SQ_kPS" + (m.group(2) or ""), k=int(m.group(1)))
        if name in ("SQ_kPS", "SQ_kPS_R", "SQ_kPS_B"):
            return cls(name, k=k)
        if name in ("SQ_TSN", "SQ_TSN_R"):
            return cls(name, t_sn=t_sn)
        if name == "SN":
            return cls(name)
        raise ParameterError(f"unknown strategy: {name!r}")


def seed_count(graph: Graph, sp: float) -> int:
    """Seed budget n = max(1, round(sp * N)) for a seeding percentage sp."""
    if not 0.0 < sp <= 1.0:
        raise ParameterError("sp must be in (0, 1]")
    return max(1, math.floor(sp * graph.node_count + 0.5))


def _next_batch(ranking: Ranking, state: DiffusionState, cursor: int,
                want: int) -> Tuple[List[int], int]:
    # nodes before the cursor are active forever, so the cursor is monotone
    order = ranking.order
    flags = state.flags
    batch: List[int] = []
    while cursor < len(order) and len(batch) < want:
        v = order[cursor]
        cursor += 1
        if not flags[v]:
            batch.append(v)
    return batch, cursor


def _check_budget(graph: Graph, n: int) -> None:
    if not 1 <= n <= graph.node_count:
        raise ParameterError(f"need 1 <= n <= {graph.node_count}, got {n}")


def run_sn(graph: Graph, ranking: Ranking, n: int, pp: float, rng) -> DiffusionTrace:
    """Single stage: inject the top n ranked nodes at step 0, then diffuse."""
    _check_budget(graph, n)
    state = DiffusionState(graph)
    batch, _ = _next_batch(ranking, state, 0, n)
    activate_seeds(state, batch)
    run_until_stop(state, graph, pp, rng)
    return state.trace()


def run_sq_kps(graph: Graph, ranking: Ranking, n: int, k: int, pp: float,
               rng) -> DiffusionTrace:
    """k seeds per stage, one diffusion step per stage, free tail diffusion."""
    _check_budget(graph, n)
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got k={k}")
    state = DiffusionState(graph)
    cursor = 0
    remaining = n
    while remaining:
        batch, cursor = _next_batch(ranking, state, cursor, min(k, remaining))
        if not batch:
            state.forfeited = remaining
            break
        activate_seeds(state, batch)
        remaining -= len(batch)
        if remaining:
            ic_step(state, graph, pp, rng)
    run_until_stop(state, graph, pp, rng)
    return state.trace()


def run_sq_kps_r(graph: Graph, ranking: Ranking, n: int, k: int, pp: float,
                 rng) -> DiffusionTrace:
    """k seeds per stage with revival: reseed only once diffusion has stopped."""
    _check_budget(graph, n)
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got k={k}")
    state = DiffusionState(graph)
    cursor = 0
    remaining = n
    while remaining:
        batch, cursor = _next_batch(ranking, state, cursor, min(k, remaining))
        if not batch:
            state.forfeited = remaining
            break
        activate_seeds(state, batch)
        remaining -= len(batch)
        run_until_stop(state, graph, pp, rng)
    return state.trace()


def run_sq_kps_b(graph: Graph, ranking: Ranking, n: int, k: int, pp: float,
                 rng) -> DiffusionTrace:
    """k per stage with buffering.

    Walks the initial top-n list at k entries per step; entries that diffusion
    already activated are banked instead of spent. Banked budget is spent on
    the best still-inactive nodes once diffusion terminates.
    """
    _check_budget(graph, n)
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got k={k}")
    state = DiffusionState(graph)
    schedule = ranking.order[:n]
    buffer = 0
    idx = 0
    while idx < n:
        chunk = schedule[idx:idx + k]
        idx += k
        batch = [v for v in chunk if not state.flags[v]]
        buffer += len(chunk) - len(batch)
        if batch:
            activate_seeds(state, batch)
        ic_step(state, graph, pp, rng)
    run_until_stop(state, graph, pp, rng)
    cursor = 0
    while buffer:
        batch, cursor = _next_batch(ranking, state, cursor, buffer)
        if not batch:
            state.forfeited = buffer
            break
        activate_seeds(state, batch)
        buffer -= len(batch)
        run_until_stop(state, graph, pp, rng)
    return state.trace()


def _stage_sizes(n: int, stages: int) -> List[int]:
    # remainder seeds go to the earliest stages
    base, rem = divmod(n, stages)
    return [base + 1] * rem + [base] * (stages - rem)


def run_sq_tsn(graph: Graph, ranking: Ranking, n: int, t_sn: int, pp: float,
               rng) -> DiffusionTrace:
    """T_SN stages of ~n/T_SN seeds at steps 0..T_SN-1; SQ_1PS when n < T_SN."""
    _check_budget(graph, n)
    if t_sn < 1:
        raise ParameterError("t_sn must be >= 1")
    if n < t_sn:
        return run_sq_kps(graph, ranking, n, 1, pp, rng)
    sizes = _stage_sizes(n, t_sn)
    state = DiffusionState(graph)
    cursor = 0
    spent = 0
    for i, size in enumerate(sizes):
        batch, cursor = _next_batch(ranking, state, cursor, size)
        if batch:
            activate_seeds(state, batch)
            spent += len(batch)
        if len(batch) < size:
            state.forfeited = n - spent
            break
        if i < len(sizes) - 1:
            ic_step(state, graph, pp, rng)
    run_until_stop(state, graph, pp, rng)
    return state.trace()


def run_sq_tsn_r(graph: Graph, ranking: Ranking, n: int, t_sn: int, pp: float,
                 rng) -> DiffusionTrace:
    """Same allocation as SQ_TSN, but each stage waits for diffusion to stop."""
    _check_budget(graph, n)
    if t_sn < 1:
        raise ParameterError("t_sn must be >= 1")
    if n < t_sn:
        return run_sq_kps_r(graph, ranking, n, 1, pp, rng)
    sizes = _stage_sizes(n, t_sn)
    state = DiffusionState(graph)
    cursor = 0
    spent = 0
    for size in sizes:
        batch, cursor = _next_batch(ranking, state, cursor, size)
        if batch:
            activate_seeds(state, batch)
            spent += len(batch)
        if len(batch) < size:
            state.forfeited = n - spent
            break
        run_until_stop(state, graph, pp, rng)
    run_until_stop(state, graph, pp, rng)
    return state.trace()


def run_strategy(graph: Graph, ranking: Ranking, spec: StrategySpec, n: int,
                 pp: float, rng, t_sn: Optional[int] = None) -> DiffusionTrace:
    """Dispatch a StrategySpec; TSN variants take t_sn from the spec or arg."""
    if spec.kind == "SN":
        return run_sn(graph, ranking, n, pp, rng)
    if spec.kind == "SQ_kPS":
        return run_sq_kps(graph, ranking, n, spec.k, pp, rng)
    if spec.kind == "SQ_kPS_R":
        return run_sq_kps_r(graph, ranking, n, spec.k, pp, rng)
    if spec.kind == "SQ_kPS_B":
        return run_sq_kps_b(graph, ranking, n, spec.k, pp, rng)
    ref = spec.t_sn if spec.t_sn is not None else t_sn
    if ref is None:
        raise ParameterError(f"{spec.kind} needs a reference t_sn")
    if spec.kind == "SQ_TSN":
        return run_sq_tsn(graph, ranking, n, ref, pp, rng)
    return run_sq_tsn_r(graph, ranking, n, ref, pp, rng)
