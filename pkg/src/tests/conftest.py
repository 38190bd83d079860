from typing import Optional

import pytest

from src.agents.enums import ArchetypeEnum
from src.agents.models import Agent
from src.agents.schemas import AgentSpec, OperatorParams, UpdateFlags
from src.agents.services import build_agent
from src.constraints.schemas import ExternalConfig, InternalConfig
from src.constraints.templates import full_space
from src.space.schemas import SpaceConfig


@pytest.fixture
def space() -> SpaceConfig:
    return SpaceConfig(d=2, rho=10)


@pytest.fixture
def make_agent():
    """Factory for agents over a full-space internal config unless told otherwise."""

    def _make(
        space: SpaceConfig = SpaceConfig(d=2, rho=10),
        internal: Optional[InternalConfig] = None,
        external: ExternalConfig = ExternalConfig(),
        params: OperatorParams = OperatorParams(),
        archetype: ArchetypeEnum = ArchetypeEnum.NONE,
        id: int = 0,
        seed: int = 0,
        update_flags: UpdateFlags = UpdateFlags(),
    ) -> Agent:
        spec = AgentSpec(
            id=id,
            archetype=archetype,
            internal=internal or full_space(space.d),
            external=external,
            params=params,
            update_flags=update_flags,
        )
        return build_agent(spec, space, seed)

    return _make
