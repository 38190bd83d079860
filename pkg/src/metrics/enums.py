"""Metrics enums."""

from enum import Enum


class FormEnum(str, Enum):
    """Form of creativity of a (generator category, evaluator category) pair.
    TWO_H: humans for humans
    CH: computer-aided systems for humans
    AIH: computational systems for humans
    TWO_AI: computational systems for computational systems
    OTHER: any pair left unnamed
    """

    TWO_H = "2H"
    CH = "CH"
    AIH = "AIH"
    TWO_AI = "2AI"
    OTHER = "other"


class CreativityFamilyEnum(str, Enum):
    """Whether the evaluating side of a form is human."""

    ANTHROPOCENTRIC = "anthropocentric"
    NON_ANTHROPOCENTRIC = "non_anthropocentric"
