"""Simulation engine: produce, broadcast, observe/evaluate, update."""

import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

import networkx as nx
from pydantic import ValidationError

from src.agents.models import Agent
from src.agents.services import apply_update, build_agent, evaluate, observe, produce
from src.core.logger import logger as root_logger
from src.core.serialization import digest, read_document
from src.exceptions import ConfigurationException, InvariantViolationException, UsageException
from src.exceptions.exception_handlers import validation_error_to_exception
from src.network.schemas import GraphFile
from src.network.services import generate_ba, graph_from_file, sorted_neighbors
from src.society.enums import EventTypeEnum, GraphKindEnum
from src.society.models import GlobalRegistry, RunResult, SocietyState
from src.society.schemas import (
    AgentSnapshot,
    EvaluatedEvent,
    GeneratedEvent,
    HCreativeEvent,
    ObservedEvent,
    PCreativeEvent,
    ProducedEmptyEvent,
    Snapshot,
    SocietyConfig,
    UpdatedEvent,
)
from src.space.schemas import Artefact

logger = logging.getLogger(__name__)


def config_record(config: SocietyConfig) -> dict:
    return config.model_dump(mode="json", by_alias=True, exclude_none=True)


def config_hash(config: SocietyConfig) -> str:
    """SHA-256 of the canonical effective config, seed included."""
    return digest(config_record(config))


def resolve_graph(config: SocietyConfig, base_dir: Optional[Path] = None) -> nx.Graph:
    """Build the network a config declares; fails before tick 0 on any mismatch."""
    spec = config.graph
    if spec.kind == GraphKindEnum.BA:
        graph = generate_ba(spec.n, spec.m, config.seed if spec.seed is None else spec.seed)
    elif spec.kind == GraphKindEnum.INLINE:
        try:
            graph = graph_from_file(GraphFile(n=spec.n, edges=spec.edges))
        except ValidationError as e:
            raise validation_error_to_exception(e)
    else:
        path = Path(spec.path)
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        try:
            graph = graph_from_file(GraphFile.model_validate(read_document(path)))
        except ValidationError as e:
            raise validation_error_to_exception(e)

    if graph.number_of_nodes() != len(config.agents):
        raise ConfigurationException(
            f"graph has {graph.number_of_nodes()} nodes but {len(config.agents)} agents are declared", "graph"
        )
    return graph


def is_h_creative(registry: GlobalRegistry, a: Artefact) -> bool:
    """New to society: the artefact was never registered."""
    return not a.is_empty and a not in registry


def is_p_creative(agent: Agent, a: Artefact) -> bool:
    """New to the system itself: the artefact is not in its memory."""
    return not a.is_empty and a not in agent.memory


def take_snapshot(state: SocietyState) -> Snapshot:
    snapshot = Snapshot(
        tick=state.tick,
        agents=tuple(
            AgentSnapshot(
                id=agent.id,
                external=agent.external,
                theta=agent.params.theta,
                beta=agent.params.beta,
                memory_size=len(agent.memory),
            )
            for agent in state.agents
        ),
    )
    state.snapshots.append(snapshot)
    return snapshot


def build_state(config: SocietyConfig, graph: Optional[nx.Graph] = None, base_dir: Optional[Path] = None) -> SocietyState:
    """Resolve the graph, build every agent and record the tick-0 snapshot."""
    graph = resolve_graph(config, base_dir) if graph is None else graph
    agents = [build_agent(spec, config.space, config.seed, config.enumeration_cap) for spec in config.agents]
    state = SocietyState(config, graph, agents, sorted_neighbors(graph))
    take_snapshot(state)
    return state


def _update(state: SocietyState, agent: Agent, a: Artefact, e, artefact_id: int) -> None:
    for target in agent.update_flags.enabled_targets():
        apply_update(agent, target, a, e)
        state.emit(UpdatedEvent, agent=agent.id, target=target, artefact_id=artefact_id)


def step(state: SocietyState) -> list:
    """Advance one tick; agents act in ascending id order. Returns the tick's events."""
    state.tick += 1
    start = len(state.events)

    for agent in state.agents:
        memory_before = len(agent.memory)
        a, attempts = produce(agent, state.tick)
        if a.is_empty:
            state.emit(ProducedEmptyEvent, agent=agent.id, attempts=attempts)
            continue

        p_creative = len(agent.memory) > memory_before
        h_creative = is_h_creative(state.registry, a)
        record = state.registry.register(a, agent.id, state.tick)
        self_eval = agent.last_self_evaluation
        state.emit(
            GeneratedEvent,
            agent=agent.id,
            artefact=a.coords,
            artefact_id=record.artefact_id,
            attempts=attempts,
            eval_class=self_eval.eval_class,
            strength=self_eval.strength,
        )
        if p_creative:
            state.emit(PCreativeEvent, agent=agent.id, artefact_id=record.artefact_id)
        if h_creative:
            state.emit(HCreativeEvent, agent=agent.id, artefact_id=record.artefact_id)
        if agent.update_flags.self_update:
            _update(state, agent, a, self_eval, record.artefact_id)

        for neighbor_id in state.neighbors[agent.id]:
            neighbor = state.agents[neighbor_id]
            stored = observe(neighbor, a, state.tick)
            state.emit(ObservedEvent, agent=neighbor_id, artefact_id=record.artefact_id, stored=stored)

            e = evaluate(neighbor, a)
            state.emit(
                EvaluatedEvent,
                agent=neighbor_id,
                artefact_id=record.artefact_id,
                eval_class=e.eval_class,
                strength=e.strength,
            )
            # non-decidable evaluations never update
            if e.is_decidable:
                _update(state, neighbor, a, e, record.artefact_id)

    return state.events[start:]


def internal_digests(agents: Sequence[Agent]) -> list[str]:
    return [digest(agent.internal.model_dump(mode="json")) for agent in agents]


def verify_run_invariants(result: RunResult, initial_digests: list[str]) -> None:
    """Internal configs are unchanged and every evaluation refers to a registered artefact."""
    breaches = [
        f"agent {agent.id}: internal config changed during the run"
        for agent, before in zip(result.agents, initial_digests)
        if internal_digests([agent])[0] != before
    ]
    registered = len(result.registry.records)
    breaches += [
        f"event {event.seq} evaluates unregistered artefact {event.artefact_id}"
        for event in result.events
        if event.type == EventTypeEnum.EVALUATED and not 0 <= event.artefact_id < registered
    ]

    for breach in breaches:
        logger.error(breach)
    if breaches:
        raise InvariantViolationException(breaches[0])


def run(config: SocietyConfig, graph: Optional[nx.Graph] = None, base_dir: Optional[Path] = None) -> RunResult:
    """Execute `rounds` ticks; the config and its seed fully determine the result."""
    state = build_state(config, graph, base_dir)
    initial = internal_digests(state.agents)
    root_logger.info(
        f"run start: config_hash={config_hash(config)[:12]} seed={config.seed} agents={len(state.agents)} "
        f"edges={state.graph.number_of_edges()} rounds={config.rounds}"
    )

    for _ in range(config.rounds):
        step(state)
        if state.tick % config.snapshot_every == 0 or state.tick == config.rounds:
            take_snapshot(state)
            logger.debug(f"tick {state.tick}: {len(state.events)} events, {len(state.registry)} distinct artefacts")

    result = RunResult(state)
    verify_run_invariants(result, initial)
    root_logger.info(f"run end: seed={config.seed} events={len(result.events)}")
    return result


def load_config(path: Path, seed: Optional[int] = None) -> SocietyConfig:
    """Parse and validate a JSON or YAML society config; --seed overrides the file's seed."""
    try:
        config = SocietyConfig.model_validate(read_document(path))
        return config.with_seed(seed)
    except ValidationError as e:
        raise validation_error_to_exception(e)


def _run_with_seed(config: SocietyConfig, seed: int, base_dir: Optional[Path]) -> RunResult:
    return run(config.with_seed(seed), base_dir=base_dir)


def run_panel(
    config: SocietyConfig, seeds: Sequence[int], jobs: int = 1, base_dir: Optional[Path] = None
) -> list[RunResult]:
    """Independent runs, one per seed, returned in seed order."""
    if jobs <= 1:
        return [_run_with_seed(config, seed, base_dir) for seed in seeds]

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run_with_seed, config, seed, base_dir) for seed in seeds]
        return [future.result() for future in futures]


class SocietyService:
    """Runs of one society config; relative graph paths resolve against `base_dir`."""

    def __init__(self, config: SocietyConfig, base_dir: Optional[Path] = None):
        self.config = config
        self.base_dir = base_dir

    @classmethod
    def from_file(cls, path: Path, seed: Optional[int] = None) -> "SocietyService":
        return cls(load_config(path, seed), path.parent)

    def build_state(self) -> SocietyState:
        return build_state(self.config, base_dir=self.base_dir)

    def run(self, seed: Optional[int] = None) -> RunResult:
        return run(self.config.with_seed(seed), base_dir=self.base_dir)

    def run_panel(self, seeds: Sequence[int], jobs: int = 1) -> list[RunResult]:
        if len(set(seeds)) != len(seeds):
            raise UsageException("--seeds must not repeat")
        return run_panel(self.config, seeds, jobs, self.base_dir)
