from pydantic import BaseModel, ConfigDict


class FrozenModel(BaseModel):
    """Immutable value object shared by every configuration schema."""

    model_config = ConfigDict(frozen=True, extra="forbid")
