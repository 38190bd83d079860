"""Constraint enums."""

from enum import Enum


class CategoryEnum(str, Enum):
    """Categories of creative systems.
    HUMAN: human creative systems
    CCS: computational creative systems
    CAD: computer-aided (human + machine) systems
    """

    HUMAN = "human"
    CCS = "ccs"
    CAD = "cad"
