import numpy as np
import pytest
from pydantic import ValidationError

from src.constraints.enums import CategoryEnum
from src.constraints.schemas import ExternalConfig, InternalConfig, Region, WeightedConstraint
from src.constraints.services import (
    alignment,
    config_distance,
    feasible,
    feasible_mask,
    internal_arrays,
    potential_generation_space,
)
from src.constraints.templates import (
    ball,
    category_template,
    check_cad_template,
    extension_group,
    full_space,
    human_groups,
    regions_disjoint,
)
from src.exceptions import ConfigShapeException, EmptyArtefactException
from src.space.schemas import EMPTY, Artefact, SpaceConfig
from src.space.services import enumerate_grid, grid_to_real
from src.tests.factories import external_at, single_ball


def test_empty_artefact_is_never_feasible(space):
    assert feasible(EMPTY, full_space(2), space) is False


def test_full_space_ball_admits_every_point(space):
    mask = feasible_mask(grid_to_real(enumerate_grid(space, 1000), space), internal_arrays(full_space(2)))
    assert mask.all()


def test_groups_are_disjunctive(space):
    ic = InternalConfig(groups=((ball(0.1, 0.1, 2),), (ball(0.9, 0.1, 2),)))
    assert feasible(Artefact.point(9, 9), ic, space)
    assert feasible(Artefact.point(1, 1), ic, space)
    assert not feasible(Artefact.point(5, 5), ic, space)


def test_zero_weight_members_are_inactive(space):
    narrow = ball(0.0, 0.05, 2, weight=0.0)
    ic = InternalConfig(groups=((ball(0.5, 1.0, 2), narrow),))
    assert feasible(Artefact.point(10, 10), ic, space)


def test_adding_a_group_never_shrinks_the_feasible_set():
    cfg = SpaceConfig(d=2, rho=12)
    points = grid_to_real(enumerate_grid(cfg, 1000), cfg)
    base = InternalConfig(groups=((ball(0.2, 0.2, 2),),))
    wider = InternalConfig(groups=base.groups + ((ball(0.7, 0.25, 2),),))
    narrower = InternalConfig(groups=((ball(0.2, 0.2, 2), ball(0.3, 0.1, 2)),))

    base_mask = feasible_mask(points, internal_arrays(base))
    assert (feasible_mask(points, internal_arrays(wider)) >= base_mask).all()
    assert (feasible_mask(points, internal_arrays(narrower)) <= base_mask).all()


def test_alignment_kernel():
    cfg = SpaceConfig(d=1, rho=10)
    ec = external_at((0.5,), 0.5)
    assert alignment(Artefact.point(5), ec, cfg) == pytest.approx(1.0)
    assert alignment(Artefact.point(0), ec, cfg) == pytest.approx(0.0)


def test_alignment_without_weight_is_neutral(space):
    assert alignment(Artefact.point(3, 3), external_at((0.3, 0.3), 0.2, weight=0.0), space) == 0.5
    assert alignment(Artefact.point(3, 3), ExternalConfig(), space) == 0.5


def test_alignment_is_invariant_under_weight_scaling(space):
    def config(scale):
        return ExternalConfig(
            constraints=(
                WeightedConstraint(weight=0.2 * scale, region=Region(center=(0.1, 0.2), radius=0.6)),
                WeightedConstraint(weight=0.4 * scale, region=Region(center=(0.8, 0.5), radius=0.4)),
            )
        )

    for coords in [(0, 0), (4, 6), (8, 5), (10, 10)]:
        a = Artefact(coords=coords)
        assert 0.0 <= alignment(a, config(1), space) <= 1.0
        assert alignment(a, config(1), space) == pytest.approx(alignment(a, config(2), space))


def test_alignment_of_empty_artefact_fails(space):
    with pytest.raises(EmptyArtefactException):
        alignment(EMPTY, ExternalConfig(), space)


def test_potential_space_of_a_genius_is_the_feasible_set():
    cfg = SpaceConfig(d=1, rho=2)
    genius = external_at((0.5,), 0.1, weight=0.0)
    assert potential_generation_space(full_space(1), genius, cfg, cap=10) == {
        Artefact.point(0),
        Artefact.point(1),
        Artefact.point(2),
    }


def test_potential_space_is_empty_when_nothing_is_feasible():
    cfg = SpaceConfig(d=1, rho=1)
    assert potential_generation_space(single_ball(0.05, 0.01, 1), ExternalConfig(), cfg, cap=10) == frozenset()


def test_potential_space_needs_positive_alignment():
    cfg = SpaceConfig(d=1, rho=10)
    space = potential_generation_space(full_space(1), external_at((0.0,), 0.35), cfg, cap=100)
    assert space == {Artefact.point(i) for i in range(4)}


def test_config_distance():
    cfg = SpaceConfig(d=2, rho=10)
    a = external_at((0.0, 0.0), 0.3)
    assert config_distance(a, a, cfg) == 0.0
    assert config_distance(a, external_at((1.0, 1.0), 0.3), cfg) == pytest.approx(1.0)
    assert config_distance(
        external_at((0.4, 0.4), 0.3, weight=0.2), external_at((0.4, 0.4), 0.3, weight=0.7), cfg
    ) == pytest.approx(0.5)


def test_config_distance_shape_mismatch(space):
    with pytest.raises(ConfigShapeException):
        config_distance(external_at((0.0, 0.0), 0.3), ExternalConfig(), space)


def test_region_and_weight_bounds():
    with pytest.raises(ValidationError):
        Region(center=(0.5, 0.5), radius=0.0)
    with pytest.raises(ValidationError):
        Region(center=(1.5, 0.5), radius=0.2)
    with pytest.raises(ValidationError):
        WeightedConstraint(weight=1.5, region=Region(center=(0.5,), radius=0.2))


def test_internal_config_needs_a_non_empty_group():
    with pytest.raises(ValidationError):
        InternalConfig(groups=())
    with pytest.raises(ValidationError):
        InternalConfig(groups=((),))


def test_cad_template_is_human_plus_a_disjoint_extension():
    d = 2
    cfg = SpaceConfig(d=d, rho=20)
    points = grid_to_real(enumerate_grid(cfg, 1000), cfg)
    cad = category_template(CategoryEnum.CAD, d)
    human = category_template(CategoryEnum.HUMAN, d)

    human_part = feasible_mask(points, internal_arrays(InternalConfig(groups=human_groups(d))))
    extension_part = feasible_mask(points, internal_arrays(InternalConfig(groups=(extension_group(d),))))
    cad_mask = feasible_mask(points, internal_arrays(cad.internal))

    assert check_cad_template(cad, human)
    assert np.array_equal(cad_mask, human_part | extension_part)
    assert not (human_part & extension_part).any()
    assert extension_part.any()


def test_regions_disjoint():
    assert regions_disjoint(Region(center=(0.1, 0.1), radius=0.1), Region(center=(0.9, 0.9), radius=0.1))
    assert not regions_disjoint(Region(center=(0.4, 0.4), radius=0.2), Region(center=(0.5, 0.5), radius=0.2))
