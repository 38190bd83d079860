"""Feasibility, alignment and potential generation space."""

import math
from typing import NamedTuple

import numpy as np

from src.constraints.schemas import ExternalConfig, InternalConfig
from src.core.config import settings
from src.exceptions import ConfigShapeException, EmptyArtefactException
from src.space.schemas import Artefact, SpaceConfig
from src.space.services import enumerate_grid, grid_to_real, real_coords


class ExternalArrays(NamedTuple):
    """Array view of an ExternalConfig used by the vectorized kernels."""

    centers: np.ndarray  # (k, d)
    radii: np.ndarray  # (k,)
    weights: np.ndarray  # (k,)
    total_weight: float


class InternalArrays(NamedTuple):
    """Per group, (centers, radii) of the positive-weight members."""

    groups: tuple[tuple[np.ndarray, np.ndarray], ...]


def external_arrays(ec: ExternalConfig, d: int) -> ExternalArrays:
    k = len(ec.constraints)
    centers = np.asarray([c.region.center for c in ec.constraints], dtype=float).reshape(k, d)
    radii = np.asarray([c.region.radius for c in ec.constraints], dtype=float)
    weights = np.asarray([c.weight for c in ec.constraints], dtype=float)
    return ExternalArrays(centers, radii, weights, float(weights.sum()) if k else 0.0)


def internal_arrays(ic: InternalConfig) -> InternalArrays:
    groups = []
    for group in ic.groups:
        active = [c for c in group if c.weight > 0]
        centers = np.asarray([c.region.center for c in active], dtype=float).reshape(len(active), ic.d)
        radii = np.asarray([c.region.radius for c in active], dtype=float)
        groups.append((centers, radii))
    return InternalArrays(tuple(groups))


def _distances(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """(n, k) normalized distances between rows of `points` and rows of `centers`."""
    d = points.shape[-1]
    return np.linalg.norm(points[:, None, :] - centers[None, :, :], axis=-1) / math.sqrt(d)


def feasible_mask(points: np.ndarray, arrays: InternalArrays) -> np.ndarray:
    """Feasibility of each row of `points` (real coordinates)."""
    mask = np.zeros(len(points), dtype=bool)
    for centers, radii in arrays.groups:
        if len(centers) == 0:
            # a group whose members are all inactive admits everything
            return np.ones(len(points), dtype=bool)
        mask |= (_distances(points, centers) <= radii).all(axis=1)
    return mask


def alignment_scores(points: np.ndarray, arrays: ExternalArrays) -> np.ndarray:
    """Weighted triangular-kernel alignment of each row of `points`."""
    if arrays.total_weight == 0.0:
        return np.full(len(points), settings.NEUTRAL_ALIGNMENT)
    kernel = np.maximum(0.0, 1.0 - _distances(points, arrays.centers) / arrays.radii)
    return (kernel @ arrays.weights) / arrays.total_weight


def feasible(a: Artefact, ic: InternalConfig, cfg: SpaceConfig) -> bool:
    """True iff some group admits the point; the empty artefact is never feasible."""
    if a.is_empty:
        return False
    return bool(feasible_mask(real_coords(a, cfg)[None, :], internal_arrays(ic))[0])


def alignment(a: Artefact, ec: ExternalConfig, cfg: SpaceConfig) -> float:
    """Alignment in [0, 1]; the neutral constant when the total weight is zero."""
    if a.is_empty:
        raise EmptyArtefactException("empty artefact has no alignment")
    return float(alignment_scores(real_coords(a, cfg)[None, :], external_arrays(ec, cfg.d))[0])


def potential_mask(points: np.ndarray, ic: InternalConfig, ec: ExternalConfig) -> np.ndarray:
    """Feasible points that the external config does not rule out."""
    mask = feasible_mask(points, internal_arrays(ic))
    arrays = external_arrays(ec, points.shape[-1])
    if arrays.total_weight == 0.0:
        return mask
    return mask & (alignment_scores(points, arrays) > 0.0)


def potential_generation_space(
    ic: InternalConfig, ec: ExternalConfig, cfg: SpaceConfig, cap: int | None = None
) -> frozenset[Artefact]:
    """Every artefact the configurations let a system generate."""
    grid = enumerate_grid(cfg, settings.ENUMERATION_CAP if cap is None else cap)
    mask = potential_mask(grid_to_real(grid, cfg), ic, ec)
    return frozenset(Artefact(coords=tuple(int(c) for c in row)) for row in grid[mask])


def config_distance(ea: ExternalConfig, eb: ExternalConfig, cfg: SpaceConfig) -> float:
    """Mean, over matched positions, of normalized center distance plus weight difference."""
    if len(ea.constraints) != len(eb.constraints):
        raise ConfigShapeException(
            f"cannot compare external configs of {len(ea.constraints)} and {len(eb.constraints)} constraints"
        )
    if not ea.constraints:
        return 0.0

    a = external_arrays(ea, cfg.d)
    b = external_arrays(eb, cfg.d)
    center_part = np.linalg.norm(a.centers - b.centers, axis=1) / math.sqrt(cfg.d)
    return float(np.mean(center_part + np.abs(a.weights - b.weights)))
