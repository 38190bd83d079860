"""Analysis records: evaluation distributions, forms and per-agent tallies."""

from typing import Optional

from pydantic import Field, model_validator

from src.constraints.enums import CategoryEnum
from src.core.schemas import FrozenModel
from src.metrics.enums import CreativityFamilyEnum, FormEnum


class EvalDistribution(FrozenModel):
    """Empirical class pmf plus fixed-bin strength histograms of the two decidable classes."""

    positive: int = Field(default=0, ge=0)
    negative: int = Field(default=0, ge=0)
    non_decidable: int = Field(default=0, ge=0)
    positive_hist: tuple[int, ...]
    negative_hist: tuple[int, ...]

    @model_validator(mode="after")
    def histograms_match_counts(self):
        if sum(self.positive_hist) != self.positive or sum(self.negative_hist) != self.negative:
            raise ValueError("strength histograms must sum to their class counts")
        return self

    @property
    def total(self) -> int:
        return self.positive + self.negative + self.non_decidable

    @property
    def pmf(self) -> dict[str, float]:
        """Class probabilities; all zero when nothing was evaluated."""
        total = self.total
        if total == 0:
            return {"+": 0.0, "-": 0.0, "null": 0.0}
        return {"+": self.positive / total, "-": self.negative / total, "null": self.non_decidable / total}

    def __add__(self, other: "EvalDistribution") -> "EvalDistribution":
        return EvalDistribution(
            positive=self.positive + other.positive,
            negative=self.negative + other.negative,
            non_decidable=self.non_decidable + other.non_decidable,
            positive_hist=tuple(a + b for a, b in zip(self.positive_hist, other.positive_hist)),
            negative_hist=tuple(a + b for a, b in zip(self.negative_hist, other.negative_hist)),
        )

    def to_report(self) -> dict:
        return {
            "counts": {"+": self.positive, "-": self.negative, "null": self.non_decidable},
            "pmf": self.pmf,
            "positive_hist": list(self.positive_hist),
            "negative_hist": list(self.negative_hist),
        }


class Form(FrozenModel):
    form: FormEnum
    generator: CategoryEnum
    evaluator: CategoryEnum

    @property
    def label(self) -> str:
        if self.form == FormEnum.OTHER:
            return f"other({self.generator.value},{self.evaluator.value})"
        return self.form.value


class CreativityCounts(FrozenModel):
    p_creative: dict[int, int] = {}
    h_creative: dict[int, int] = {}

    @property
    def p_total(self) -> int:
        return sum(self.p_creative.values())

    @property
    def h_total(self) -> int:
        return sum(self.h_creative.values())


class ReceivedCounts(FrozenModel):
    """Evaluations an agent's artefacts received from its peers."""

    positive: int = 0
    negative: int = 0
    null: int = 0

    @property
    def total(self) -> int:
        return self.positive + self.negative + self.null

    @property
    def positive_rate(self) -> float:
        return self.positive / self.total if self.total else 0.0


class FormCell(FrozenModel):
    """One (creator category, evaluator category) pair observed in a log."""

    generator: CategoryEnum
    evaluator: CategoryEnum
    form: str
    family: CreativityFamilyEnum
    evaluations: int
    positive_rate: float


class CategoryMixing(FrozenModel):
    cross_fraction: float = Field(description="Share of edges joining different categories")
    assortativity: Optional[float] = Field(default=None, description="Undefined with a single category")
