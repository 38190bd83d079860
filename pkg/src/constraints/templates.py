"""Category templates for humans, computational and computer-aided systems.

The computer-aided template is the human one extended by a group that lies outside every
human region, so its feasible set splits into a human part and a disjoint extension.
"""

import math

from src.constraints.enums import CategoryEnum
from src.constraints.schemas import CategoryTemplate, InternalConfig, Region, WeightedConstraint

HUMAN_CENTER, HUMAN_RADIUS = 0.3, 0.3
CCS_CENTER, CCS_RADIUS = 0.7, 0.3
EXTENSION_CENTER, EXTENSION_RADIUS = 0.85, 0.12

# Parameter overrides applied when an agent spec omits its params
CATEGORY_PARAM_DEFAULTS: dict[CategoryEnum, dict[str, float]] = {
    CategoryEnum.HUMAN: {},
    CategoryEnum.CCS: {"eta_c": 0.2},
    CategoryEnum.CAD: {},
}


def ball(center: float, radius: float, d: int, weight: float = 1.0) -> WeightedConstraint:
    return WeightedConstraint(weight=weight, region=Region(center=(center,) * d, radius=radius))


def full_space(d: int) -> InternalConfig:
    """Internal config admitting every point of [0, 1]^d."""
    return InternalConfig(groups=((ball(0.5, 1.0, d),),))


def human_groups(d: int) -> tuple[tuple[WeightedConstraint, ...], ...]:
    return ((ball(HUMAN_CENTER, HUMAN_RADIUS, d),),)


def extension_group(d: int) -> tuple[WeightedConstraint, ...]:
    return (ball(EXTENSION_CENTER, EXTENSION_RADIUS, d),)


def category_template(name: CategoryEnum, d: int) -> CategoryTemplate:
    """Template of a category for a d-dimensional space."""
    if name == CategoryEnum.HUMAN:
        groups = human_groups(d)
    elif name == CategoryEnum.CCS:
        groups = ((ball(CCS_CENTER, CCS_RADIUS, d),),)
    else:
        groups = human_groups(d) + (extension_group(d),)

    template = CategoryTemplate(name=name, internal=InternalConfig(groups=groups))
    if name == CategoryEnum.CAD and not check_cad_template(template, category_template(CategoryEnum.HUMAN, d)):
        raise ValueError("computer-aided extension overlaps the human regions")
    return template


def regions_disjoint(r1: Region, r2: Region) -> bool:
    """True when the two balls cannot share a point."""
    gap = math.dist(r1.center, r2.center) / math.sqrt(r1.d)
    return gap > r1.radius + r2.radius


def group_disjoint(g1, g2) -> bool:
    """Two conjunction groups are disjoint if some pair of their active regions is disjoint."""
    return any(regions_disjoint(a.region, b.region) for a in g1 if a.weight > 0 for b in g2 if b.weight > 0)


def check_cad_template(cad: CategoryTemplate, human: CategoryTemplate) -> bool:
    """The computer-aided template holds a group disjoint from every human group."""
    return any(
        all(group_disjoint(group, human_group) for human_group in human.internal.groups)
        for group in cad.internal.groups
    )
