"""Constraint schemas: weighted geometric rules and their configurations."""

from pydantic import Field, field_validator, model_validator

from src.constraints.enums import CategoryEnum
from src.core.schemas import FrozenModel


class Region(FrozenModel):
    """Ball in [0, 1]^d, radius measured in normalized distance units."""

    center: tuple[float, ...] = Field(min_length=1, description="Center in [0, 1]^d")
    radius: float = Field(gt=0, description="Radius in norm_distance units")

    @field_validator("center")
    @classmethod
    def center_in_unit_cube(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if any(c < 0.0 or c > 1.0 for c in value):
            raise ValueError("center components must lie in [0, 1]")
        return value

    @property
    def d(self) -> int:
        return len(self.center)


class WeightedConstraint(FrozenModel):
    """A rule coupled with its relevance weight."""

    weight: float = Field(ge=0.0, le=1.0)
    region: Region


def _dims(constraints) -> set[int]:
    return {c.region.d for c in constraints}


class InternalConfig(FrozenModel):
    """Disjunction of groups, each group a conjunction of hard constraints.

    Members with weight 0 are inactive. Internal configs never change after construction.
    """

    groups: tuple[tuple[WeightedConstraint, ...], ...] = Field(min_length=1)

    @field_validator("groups")
    @classmethod
    def groups_not_empty(cls, value):
        if any(len(group) == 0 for group in value):
            raise ValueError("every constraint group needs at least one constraint")
        return value

    @model_validator(mode="after")
    def same_dimension(self):
        if len(_dims(c for group in self.groups for c in group)) > 1:
            raise ValueError("all regions of an internal config must share one dimension")
        return self

    @property
    def d(self) -> int:
        return self.groups[0][0].region.d


class ExternalConfig(FrozenModel):
    """Soft cultural preferences; an empty or all-zero list is a legal configuration."""

    constraints: tuple[WeightedConstraint, ...] = ()

    @model_validator(mode="after")
    def same_dimension(self):
        if len(_dims(self.constraints)) > 1:
            raise ValueError("all regions of an external config must share one dimension")
        return self

    @property
    def total_weight(self) -> float:
        return sum(c.weight for c in self.constraints)

    def with_centers(self, centers) -> "ExternalConfig":
        """Copy with new centers; weights and radii are kept."""
        constraints = tuple(
            WeightedConstraint.model_construct(
                weight=c.weight,
                region=Region.model_construct(center=tuple(float(x) for x in center), radius=c.region.radius),
            )
            for c, center in zip(self.constraints, centers)
        )
        return ExternalConfig.model_construct(constraints=constraints)

    def with_zero_weights(self) -> "ExternalConfig":
        return ExternalConfig(
            constraints=tuple(WeightedConstraint(weight=0.0, region=c.region) for c in self.constraints)
        )


class CategoryTemplate(FrozenModel):
    """Internal constraint structure shared by the systems of one category."""

    name: CategoryEnum
    internal: InternalConfig
