"""Agent schemas: evaluations, operator parameters and agent specs."""

from typing import Optional

from pydantic import ConfigDict, Field, model_validator

from src.agents.enums import ArchetypeEnum, EvalClassEnum, UpdateTargetEnum
from src.constraints.enums import CategoryEnum
from src.constraints.schemas import ExternalConfig, InternalConfig
from src.core.schemas import FrozenModel


class Evaluation(FrozenModel):
    """Pair (c, r) returned by the evaluation operator."""

    eval_class: EvalClassEnum = Field(alias="class")
    strength: float = Field(ge=0.0, le=1.0)

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    @model_validator(mode="after")
    def null_has_no_strength(self):
        if self.eval_class == EvalClassEnum.NON_DECIDABLE and self.strength != 0.0:
            raise ValueError("a non-decidable evaluation has strength 0")
        return self

    @property
    def is_decidable(self) -> bool:
        return self.eval_class != EvalClassEnum.NON_DECIDABLE


NULL_EVALUATION = Evaluation(eval_class=EvalClassEnum.NON_DECIDABLE, strength=0.0)


class OperatorParams(FrozenModel):
    """Internals of the generation, evaluation and update operators."""

    lambda_: float = Field(default=0.7, ge=0.0, le=1.0, alias="lambda", description="Alignment vs novelty mix")
    theta: float = Field(default=0.5, gt=0.0, lt=1.0, description="Acceptance threshold")
    theta_min: float = Field(default=0.1, ge=0.0, le=1.0)
    theta_max: float = Field(default=0.9, ge=0.0, le=1.0)
    beta: float = Field(default=2.0, gt=0.0, description="Generation sharpness")
    beta_min: float = Field(default=0.25, gt=0.0)
    beta_max: float = Field(default=16.0, gt=0.0)
    k: int = Field(default=16, ge=1, description="Candidates per generation")
    n_attempts: int = Field(default=8, ge=1, description="Self-filter retries")
    eta_c: float = Field(default=0.1, ge=0.0, description="Center learning rate")
    eta_theta: float = Field(default=0.05, ge=0.0, description="Threshold learning rate")
    eta_beta: float = Field(default=0.1, ge=0.0, description="Sharpness learning rate")

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    @model_validator(mode="after")
    def bounds_ordered(self):
        if self.theta_min > self.theta_max:
            raise ValueError("theta_min must not exceed theta_max")
        if self.beta_min > self.beta_max:
            raise ValueError("beta_min must not exceed beta_max")
        return self


class UpdateFlags(FrozenModel):
    """Which update targets fire, and whether a creator learns from its own artefacts."""

    upd_external: bool = True
    upd_evaluation: bool = False
    upd_generation: bool = False
    self_update: bool = False

    def enabled_targets(self) -> list[UpdateTargetEnum]:
        targets = []
        if self.upd_external:
            targets.append(UpdateTargetEnum.EXTERNAL)
        if self.upd_evaluation:
            targets.append(UpdateTargetEnum.EVALUATION)
        if self.upd_generation:
            targets.append(UpdateTargetEnum.GENERATION)
        return targets


class AgentSpec(FrozenModel):
    """Declarative description of one agent; omitted parts come from its category template."""

    id: int = Field(ge=0)
    category: CategoryEnum = CategoryEnum.HUMAN
    archetype: ArchetypeEnum = ArchetypeEnum.NONE
    internal: Optional[InternalConfig] = None
    external: ExternalConfig = ExternalConfig()
    params: Optional[OperatorParams] = None
    update_flags: UpdateFlags = UpdateFlags()

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        json_schema_extra={
            "example": {
                "id": 0,
                "category": "human",
                "archetype": "none",
                "external": {"constraints": [{"weight": 1.0, "region": {"center": [0.3, 0.3], "radius": 0.4}}]},
                "params": {"lambda": 0.7, "theta": 0.5},
                "update_flags": {"upd_external": True},
            }
        },
    )
