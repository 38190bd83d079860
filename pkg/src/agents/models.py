"""Runtime state of a creative system."""

from typing import Optional

import numpy as np

from src.agents.enums import ArchetypeEnum
from src.agents.schemas import NULL_EVALUATION, Evaluation, OperatorParams, UpdateFlags
from src.constraints.enums import CategoryEnum
from src.constraints.schemas import ExternalConfig, InternalConfig
from src.constraints.services import (
    ExternalArrays,
    InternalArrays,
    external_arrays,
    feasible_mask,
    internal_arrays,
)
from src.space.schemas import Artefact, SpaceConfig
from src.space.services import real_coords


class Memory:
    """Set of observed artefacts plus the append-order audit trail."""

    def __init__(self, d: int):
        self._points: set[tuple[int, ...]] = set()
        self.history: list[tuple[int, Artefact]] = []
        self._grid = np.empty((16, d), dtype=np.int64)

    def __len__(self) -> int:
        return len(self.history)

    def __contains__(self, a: Artefact) -> bool:
        return a.coords in self._points

    def __repr__(self) -> str:
        return f"<Memory(size={len(self)})>"

    def add(self, a: Artefact, tick: int) -> bool:
        """Store a point; returns False when it is already present."""
        if a.coords is None or a.coords in self._points:
            return False

        size = len(self.history)
        if size == len(self._grid):
            self._grid = np.concatenate([self._grid, np.empty_like(self._grid)])
        self._grid[size] = a.coords
        self._points.add(a.coords)
        self.history.append((tick, a))
        return True

    @property
    def grid(self) -> np.ndarray:
        """Integer coordinates of the stored artefacts, append order."""
        return self._grid[: len(self.history)]

    def artefacts(self) -> list[Artefact]:
        return [a for _, a in self.history]


class Agent:
    """A creative system: configurations, memory, operator parameters and its own random stream.

    The internal config is fixed at construction and exposed read-only.
    """

    def __init__(
        self,
        id: int,
        space: SpaceConfig,
        internal: InternalConfig,
        external: ExternalConfig,
        params: OperatorParams,
        rng: np.random.Generator,
        category: CategoryEnum = CategoryEnum.HUMAN,
        archetype: ArchetypeEnum = ArchetypeEnum.NONE,
        update_flags: UpdateFlags = UpdateFlags(),
        support: Optional[np.ndarray] = None,
    ):
        if archetype == ArchetypeEnum.MISUNDERSTOOD_GENIUS and external.total_weight != 0.0:
            raise ValueError("a misunderstood genius has no external constraint weight")

        self.id = id
        self.space = space
        self.category = category
        self.archetype = archetype
        self.params = params
        self.update_flags = update_flags
        self.rng = rng
        self.memory = Memory(space.d)
        self.support = support
        self.last_self_evaluation: Evaluation = NULL_EVALUATION

        self._internal = internal
        self._internal_arrays = internal_arrays(internal)
        self._admits: dict[tuple[int, ...], bool] = {}
        self.external = external

    def __repr__(self) -> str:
        return f"<Agent(id={self.id}, category={self.category.value}, archetype={self.archetype.value})>"

    @property
    def internal(self) -> InternalConfig:
        return self._internal

    @property
    def internal_arrays(self) -> InternalArrays:
        return self._internal_arrays

    def admits(self, a: Artefact) -> bool:
        """Feasibility of an artefact under the internal config, memoized per point."""
        feasible = self._admits.get(a.coords)
        if feasible is None:
            point = real_coords(a, self.space)[None, :]
            feasible = self._admits[a.coords] = bool(feasible_mask(point, self._internal_arrays)[0])
        return feasible

    @property
    def external(self) -> ExternalConfig:
        """Current external config; rebuilt from the center array after updates."""
        if self._external is None:
            self._external = self._external_base.with_centers(self._external_arrays.centers)
        return self._external

    @external.setter
    def external(self, value: ExternalConfig) -> None:
        self._external_base = value
        self._external = value
        self._external_arrays = external_arrays(value, self.space.d)

    @property
    def external_arrays(self) -> ExternalArrays:
        return self._external_arrays

    def move_external_centers(self, centers: np.ndarray) -> None:
        """Replace the external centers; weights and radii are kept."""
        self._external_arrays = self._external_arrays._replace(centers=centers)
        self._external = None

    def set_params(self, **changes) -> None:
        """Replace operator parameters (theta, beta) after an update."""
        self.params = self.params.model_copy(update=changes)
