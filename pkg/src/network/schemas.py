"""Network schemas."""

from pydantic import Field, model_validator

from src.core.schemas import FrozenModel


class GraphFile(FrozenModel):
    """On-disk graph: sorted edge pairs, lexicographically sorted list."""

    n: int = Field(ge=1)
    m: int = Field(default=0, ge=0, description="Attachment count, 0 for graphs not grown by preferential attachment")
    seed: int = Field(default=0, ge=0)
    edges: tuple[tuple[int, int], ...] = ()

    @model_validator(mode="after")
    def simple_graph(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside nodes 0..{self.n - 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        return self


class DegreeStats(FrozenModel):
    degrees: tuple[int, ...]
    max_degree: int
    mean_degree: float
    ccdf: tuple[tuple[int, float], ...] = Field(description="(k, fraction of nodes with degree >= k)")
