"""Runtime state of a society run."""

import networkx as nx

from src.agents.models import Agent
from src.society.schemas import ArtefactRecord, EventBase, Snapshot, SocietyConfig
from src.space.schemas import Artefact


class GlobalRegistry:
    """Insertion-only record of every artefact output in a run.

    Each output gets a sequential artefact id; `first` keeps the first record of every
    distinct point, which is the reference set for society-level novelty.
    """

    def __init__(self):
        self.records: list[ArtefactRecord] = []
        self.first: dict[tuple[int, ...], ArtefactRecord] = {}

    def __contains__(self, a: Artefact) -> bool:
        return a.coords in self.first

    def __len__(self) -> int:
        return len(self.first)

    def register(self, a: Artefact, creator: int, tick: int) -> ArtefactRecord:
        if a.coords is None:
            raise ValueError("the empty artefact is never registered")
        record = ArtefactRecord(artefact_id=len(self.records), artefact=a.coords, creator=creator, tick=tick)
        self.records.append(record)
        self.first.setdefault(a.coords, record)
        return record


class SocietyState:
    """Mutable state threaded through the ticks of one run."""

    def __init__(self, config: SocietyConfig, graph: nx.Graph, agents: list[Agent], neighbors: list[list[int]]):
        self.config = config
        self.graph = graph
        self.agents = agents
        self.neighbors = neighbors
        self.registry = GlobalRegistry()
        self.events: list[EventBase] = []
        self.snapshots: list[Snapshot] = []
        self.tick = 0
        self._seq = 0

    def emit(self, event_cls: type[EventBase], **fields) -> EventBase:
        event = event_cls(tick=self.tick, seq=self._seq, **fields)
        self._seq += 1
        self.events.append(event)
        return event


class RunResult:
    """Outcome of a run: event log, final agents, registry and snapshots."""

    def __init__(self, state: SocietyState):
        self.config = state.config
        self.graph = state.graph
        self.events = state.events
        self.agents = state.agents
        self.registry = state.registry
        self.snapshots = state.snapshots

    def __repr__(self) -> str:
        return f"<RunResult(seed={self.config.seed}, events={len(self.events)}, artefacts={len(self.registry)})>"
