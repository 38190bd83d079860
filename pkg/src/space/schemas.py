"""Artefact space schemas."""

from math import prod
from typing import Optional

from pydantic import Field

from src.core.schemas import FrozenModel


class SpaceConfig(FrozenModel):
    """Finite grid of (rho + 1)^d artefacts inside [0, 1]^d."""

    d: int = Field(default=2, ge=1, description="Number of dimensions")
    rho: int = Field(default=10, ge=1, description="Grid resolution per dimension")

    @property
    def size(self) -> int:
        """Number of non-empty artefacts."""
        return prod([self.rho + 1] * self.d)


class Artefact(FrozenModel):
    """A grid point, or the empty artefact when `coords` is None.

    Two points are equal iff their coordinate vectors are identical; the empty artefact
    equals only itself.
    """

    coords: Optional[tuple[int, ...]] = None

    @classmethod
    def point(cls, *coords: int) -> "Artefact":
        return cls(coords=tuple(int(c) for c in coords))

    @classmethod
    def empty(cls) -> "Artefact":
        return EMPTY

    @property
    def is_empty(self) -> bool:
        return self.coords is None

    def __repr__(self) -> str:
        return "Artefact(⊤)" if self.coords is None else f"Artefact{self.coords}"


EMPTY = Artefact()
