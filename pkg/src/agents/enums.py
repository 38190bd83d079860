"""Agent enums for evaluation classes, archetypes and update targets."""

from enum import Enum


class EvalClassEnum(str, Enum):
    """Qualitative outcome of an evaluation.
    POSITIVE: '+'
    NEGATIVE: '-'
    NON_DECIDABLE: 'null', the artefact is outside the evaluator's internal constraints
    """

    POSITIVE = "+"
    NEGATIVE = "-"
    NON_DECIDABLE = "null"


class ArchetypeEnum(str, Enum):
    """Limiting behaviours of a creative system."""

    NONE = "none"
    MISUNDERSTOOD_GENIUS = "misunderstood_genius"
    ALWAYS_SATISFIED = "always_satisfied"
    ALWAYS_UNSATISFIED = "always_unsatisfied"
    FINITE_GENERATOR = "finite_generator"
    RANDOM_WALK = "random_walk"


class UpdateTargetEnum(str, Enum):
    """Components the update operator may change."""

    EXTERNAL = "external"
    EVALUATION = "evaluation"
    GENERATION = "generation"
