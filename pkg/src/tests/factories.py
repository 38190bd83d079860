"""Small builders shared by the test modules."""

from src.agents.enums import EvalClassEnum
from src.constraints.schemas import ExternalConfig, InternalConfig, Region, WeightedConstraint
from src.constraints.templates import ball
from src.society.schemas import EvaluatedEvent, GeneratedEvent, UpdatedEvent


def external_at(center: tuple[float, ...], radius: float, weight: float = 1.0) -> ExternalConfig:
    """External config with a single ball preference."""
    return ExternalConfig(constraints=(WeightedConstraint(weight=weight, region=Region(center=center, radius=radius)),))


def single_ball(center: float, radius: float, d: int) -> InternalConfig:
    return InternalConfig(groups=((ball(center, radius, d),),))


class EventLog:
    """Builds hand-written event logs with consecutive sequence numbers."""

    def __init__(self):
        self.events = []

    def _seq(self) -> int:
        return len(self.events)

    def generated(self, tick: int, agent: int, artefact: tuple[int, ...], artefact_id: int) -> "EventLog":
        self.events.append(
            GeneratedEvent(
                tick=tick,
                seq=self._seq(),
                agent=agent,
                artefact=artefact,
                artefact_id=artefact_id,
                attempts=1,
                eval_class=EvalClassEnum.POSITIVE,
                strength=1.0,
            )
        )
        return self

    def evaluated(self, tick: int, agent: int, artefact_id: int, eval_class: EvalClassEnum) -> "EventLog":
        strength = 0.0 if eval_class == EvalClassEnum.NON_DECIDABLE else 0.5
        self.events.append(
            EvaluatedEvent(
                tick=tick, seq=self._seq(), agent=agent, artefact_id=artefact_id, eval_class=eval_class, strength=strength
            )
        )
        return self

    def updated(self, tick: int, agent: int, artefact_id: int) -> "EventLog":
        self.events.append(
            UpdatedEvent(tick=tick, seq=self._seq(), agent=agent, target="external", artefact_id=artefact_id)
        )
        return self
