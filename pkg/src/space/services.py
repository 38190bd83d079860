"""Metric and enumeration over the artefact space."""

import itertools
import math
from typing import Iterable

import numpy as np

from src.exceptions import EmptyArtefactException, SpaceTooLargeException
from src.space.schemas import Artefact, SpaceConfig


def _check_point(a: Artefact, cfg: SpaceConfig) -> tuple[int, ...]:
    if a.coords is None:
        raise EmptyArtefactException()
    if len(a.coords) != cfg.d or any(c < 0 or c > cfg.rho for c in a.coords):
        raise ValueError(f"{a!r} is not a point of the {cfg.d}-dimensional grid with rho={cfg.rho}")
    return a.coords


def real_coords(a: Artefact, cfg: SpaceConfig) -> np.ndarray:
    """Position in [0, 1]^d; component i is the IEEE-754 quotient coords[i] / rho."""
    return np.asarray(_check_point(a, cfg), dtype=float) / cfg.rho


def norm_distance(a: Artefact, b: Artefact, cfg: SpaceConfig) -> float:
    """Euclidean distance between the real positions, divided by sqrt(d)."""
    diff = np.asarray(_check_point(a, cfg), dtype=float) - np.asarray(_check_point(b, cfg), dtype=float)
    return float(np.linalg.norm(diff / cfg.rho) / math.sqrt(cfg.d))


def grid_to_real(coords: np.ndarray, cfg: SpaceConfig) -> np.ndarray:
    return np.asarray(coords, dtype=float) / cfg.rho


def enumerate_space(cfg: SpaceConfig, cap: int) -> list[Artefact]:
    """Every point of the grid exactly once, in lexicographic coordinate order."""
    if cfg.size > cap:
        raise SpaceTooLargeException(cfg.size, cap)
    return [Artefact(coords=coords) for coords in itertools.product(range(cfg.rho + 1), repeat=cfg.d)]


def enumerate_grid(cfg: SpaceConfig, cap: int) -> np.ndarray:
    """Integer coordinates of the whole grid as an (size, d) array, lexicographic order."""
    if cfg.size > cap:
        raise SpaceTooLargeException(cfg.size, cap)
    axes = np.meshgrid(*[np.arange(cfg.rho + 1)] * cfg.d, indexing="ij")
    return np.stack([axis.ravel() for axis in axes], axis=-1)


def as_grid_array(artefacts: Iterable[Artefact], cfg: SpaceConfig) -> np.ndarray:
    """Stack point artefacts into an (n, d) integer array."""
    rows = [_check_point(a, cfg) for a in artefacts]
    if not rows:
        return np.empty((0, cfg.d), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64)
