"""Preset society configurations."""

from typing import Callable, Optional

from src.agents.enums import ArchetypeEnum
from src.agents.schemas import AgentSpec, OperatorParams, UpdateFlags
from src.constraints.enums import CategoryEnum
from src.constraints.schemas import ExternalConfig, Region, WeightedConstraint
from src.constraints.templates import CCS_CENTER, HUMAN_CENTER, ball, full_space
from src.core.random import SCENARIO_STREAM, stream
from src.society.enums import PresetEnum
from src.society.schemas import BAGraphSpec, SocietyConfig
from src.space.schemas import SpaceConfig

CONFORMIST_CENTER, CONFORMIST_RADIUS = 0.3, 0.4
PERMISSIVE_THETA = 0.3


def minimal(nodes: int = 2, seed: int = 0, rounds: int = 10) -> SocietyConfig:
    """Human agents on a preferential-attachment tree, all sharing one cultural preference."""
    space = SpaceConfig()
    external = ExternalConfig(constraints=(ball(HUMAN_CENTER, 0.3, space.d),))
    return SocietyConfig(
        space=space,
        graph=BAGraphSpec(n=nodes, m=1),
        agents=tuple(AgentSpec(id=i, external=external) for i in range(nodes)),
        rounds=rounds,
        seed=seed,
    )


def hub_influence(nodes: int = 50, seed: int = 0, rounds: int = 200) -> SocietyConfig:
    """Full-space agents with scattered preferences that learn from their neighbours."""
    space = SpaceConfig(d=2, rho=10)
    internal = full_space(space.d)
    params = OperatorParams(theta=PERMISSIVE_THETA)
    centers = stream(seed, SCENARIO_STREAM).uniform(0.0, 1.0, size=(nodes, space.d))

    agents = tuple(
        AgentSpec(
            id=i,
            internal=internal,
            external=ExternalConfig(
                constraints=(
                    WeightedConstraint(weight=1.0, region=Region(center=tuple(float(x) for x in center), radius=1.0)),
                )
            ),
            params=params,
            update_flags=UpdateFlags(upd_external=True),
        )
        for i, center in enumerate(centers)
    )
    return SocietyConfig(space=space, graph=BAGraphSpec(n=nodes, m=2), agents=agents, rounds=rounds, seed=seed)


def conformist_genius(nodes: int = 21, seed: int = 0, rounds: int = 200) -> SocietyConfig:
    """Conformists sharing one external template; the last node is a misunderstood genius."""
    space = SpaceConfig(d=2, rho=10)
    internal = full_space(space.d)
    params = OperatorParams(theta=PERMISSIVE_THETA)
    external = ExternalConfig(constraints=(ball(CONFORMIST_CENTER, CONFORMIST_RADIUS, space.d),))

    agents = tuple(
        AgentSpec(
            id=i,
            archetype=ArchetypeEnum.MISUNDERSTOOD_GENIUS if i == nodes - 1 else ArchetypeEnum.NONE,
            internal=internal,
            external=external.with_zero_weights() if i == nodes - 1 else external,
            params=params,
        )
        for i in range(nodes)
    )
    return SocietyConfig(space=space, graph=BAGraphSpec(n=nodes, m=2), agents=agents, rounds=rounds, seed=seed)


def mixed_categories(nodes: int = 30, seed: int = 0, rounds: int = 100) -> SocietyConfig:
    """Humans, computational and computer-aided systems in turn, with category templates."""
    space = SpaceConfig(d=2, rho=10)
    categories = (CategoryEnum.HUMAN, CategoryEnum.CCS, CategoryEnum.CAD)
    preference = {
        CategoryEnum.HUMAN: ball(HUMAN_CENTER, 0.3, space.d),
        CategoryEnum.CCS: ball(CCS_CENTER, 0.3, space.d),
        CategoryEnum.CAD: ball(HUMAN_CENTER, 0.3, space.d),
    }

    agents = []
    for i in range(nodes):
        category = categories[i % len(categories)]
        agents.append(
            AgentSpec(id=i, category=category, external=ExternalConfig(constraints=(preference[category],)))
        )
    return SocietyConfig(space=space, graph=BAGraphSpec(n=nodes, m=2), agents=tuple(agents), rounds=rounds, seed=seed)


PRESETS: dict[PresetEnum, Callable[..., SocietyConfig]] = {
    PresetEnum.MINIMAL: minimal,
    PresetEnum.HUB_INFLUENCE: hub_influence,
    PresetEnum.CONFORMIST_GENIUS: conformist_genius,
    PresetEnum.MIXED_CATEGORIES: mixed_categories,
}


def build_preset(
    preset: PresetEnum, nodes: Optional[int] = None, seed: int = 0, rounds: Optional[int] = None
) -> SocietyConfig:
    """Preset config; omitted sizes keep the preset's own defaults."""
    kwargs = {"seed": seed}
    if nodes is not None:
        kwargs["nodes"] = nodes
    if rounds is not None:
        kwargs["rounds"] = rounds
    return PRESETS[preset](**kwargs)
