"""Society schemas: run configuration, event records and state snapshots."""

from typing import Annotated, Literal, Optional, Union

from pydantic import ConfigDict, Field, TypeAdapter, model_validator

from src.agents.enums import ArchetypeEnum, EvalClassEnum, UpdateTargetEnum
from src.agents.schemas import AgentSpec, OperatorParams, UpdateFlags
from src.constraints.enums import CategoryEnum
from src.constraints.schemas import ExternalConfig, InternalConfig
from src.core.random import MAX_SEED
from src.core.schemas import FrozenModel
from src.network.schemas import GraphFile
from src.society.enums import EventTypeEnum, GraphKindEnum
from src.space.schemas import SpaceConfig


# Graph declarations
class BAGraphSpec(FrozenModel):
    """Preferential-attachment graph grown at run start; seed defaults to the run seed."""

    kind: Literal["ba"] = "ba"
    n: int = Field(ge=2)
    m: int = Field(default=2, ge=1)
    seed: Optional[int] = Field(default=None, ge=0, le=MAX_SEED)


class InlineGraphSpec(FrozenModel):
    kind: Literal["inline"] = "inline"
    n: int = Field(ge=1)
    edges: tuple[tuple[int, int], ...] = ()


class FileGraphSpec(FrozenModel):
    """Reference to a graph file, relative to the config file's directory."""

    kind: Literal["file"] = "file"
    path: str


GraphSpec = Annotated[Union[BAGraphSpec, InlineGraphSpec, FileGraphSpec], Field(discriminator="kind")]


class SocietyConfig(FrozenModel):
    """Everything a run needs; together with the seed it determines the event log."""

    space: SpaceConfig = SpaceConfig()
    graph: GraphSpec
    agents: tuple[AgentSpec, ...] = Field(min_length=1)
    rounds: int = Field(default=100, ge=1)
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    snapshot_every: int = Field(default=1, ge=1)
    enumeration_cap: Optional[int] = Field(default=None, ge=1)

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        json_schema_extra={
            "example": {
                "space": {"d": 2, "rho": 10},
                "graph": {"kind": "ba", "n": 2, "m": 1},
                "agents": [{"id": 0}, {"id": 1}],
                "rounds": 10,
                "seed": 7,
            }
        },
    )

    @model_validator(mode="after")
    def agents_match_nodes(self):
        ids = [agent.id for agent in self.agents]
        if ids != list(range(len(ids))):
            raise ValueError("agent ids must be 0..n-1 in ascending order")
        if self.graph.kind != GraphKindEnum.FILE and self.graph.n != len(self.agents):
            raise ValueError(f"graph has {self.graph.n} nodes but {len(self.agents)} agents are declared")
        for agent in self.agents:
            regions = [c.region for c in agent.external.constraints]
            if agent.internal is not None:
                regions += [c.region for group in agent.internal.groups for c in group]
            if any(region.d != self.space.d for region in regions):
                raise ValueError(f"agent {agent.id} declares regions outside the {self.space.d}-dimensional space")
        return self

    def with_seed(self, seed: Optional[int]) -> "SocietyConfig":
        if seed is None:
            return self
        return SocietyConfig.model_validate(self.model_dump(by_alias=True) | {"seed": seed})


class ArtefactRecord(FrozenModel):
    artefact_id: int = Field(ge=0)
    artefact: tuple[int, ...]
    creator: int
    tick: int


# Event records; key order of the serialized record follows field order
class EventBase(FrozenModel):
    tick: int
    seq: int
    type: EventTypeEnum
    agent: int

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    def to_record(self) -> dict:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)


class GeneratedEvent(EventBase):
    type: Literal["generated"] = "generated"
    artefact: tuple[int, ...]
    artefact_id: int
    attempts: int
    eval_class: EvalClassEnum = Field(alias="class")
    strength: float


class ProducedEmptyEvent(EventBase):
    type: Literal["produced_empty"] = "produced_empty"
    artefact: None = None
    attempts: int

    def to_record(self) -> dict:
        return self.model_dump(mode="json", by_alias=True)


class ObservedEvent(EventBase):
    type: Literal["observed"] = "observed"
    artefact_id: int
    stored: bool


class EvaluatedEvent(EventBase):
    type: Literal["evaluated"] = "evaluated"
    artefact_id: int
    eval_class: EvalClassEnum = Field(alias="class")
    strength: float


class UpdatedEvent(EventBase):
    type: Literal["updated"] = "updated"
    target: UpdateTargetEnum
    artefact_id: int


class PCreativeEvent(EventBase):
    type: Literal["p_creative"] = "p_creative"
    artefact_id: int


class HCreativeEvent(EventBase):
    type: Literal["h_creative"] = "h_creative"
    artefact_id: int


Event = Annotated[
    Union[
        GeneratedEvent,
        ProducedEmptyEvent,
        ObservedEvent,
        EvaluatedEvent,
        UpdatedEvent,
        PCreativeEvent,
        HCreativeEvent,
    ],
    Field(discriminator="type"),
]
event_adapter: TypeAdapter[Event] = TypeAdapter(Event)


# State records
class AgentSnapshot(FrozenModel):
    id: int
    external: ExternalConfig
    theta: float
    beta: float
    memory_size: int


class Snapshot(FrozenModel):
    tick: int
    agents: tuple[AgentSnapshot, ...]


class MemoryEntry(FrozenModel):
    tick: int
    artefact: tuple[int, ...]


class AgentState(FrozenModel):
    """Final state of one agent, enough to rebuild it for analysis."""

    id: int
    category: CategoryEnum
    archetype: ArchetypeEnum
    internal: InternalConfig
    external: ExternalConfig
    params: OperatorParams
    update_flags: UpdateFlags
    memory: tuple[MemoryEntry, ...] = ()
    support: Optional[tuple[tuple[int, ...], ...]] = None


class FinalState(FrozenModel):
    graph: GraphFile
    agents: tuple[AgentState, ...]
    registry: tuple[ArtefactRecord, ...] = Field(description="First record of every distinct artefact")
