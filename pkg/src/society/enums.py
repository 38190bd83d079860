"""Society enums."""

from enum import Enum


class EventTypeEnum(str, Enum):
    """Type tag of an event-log record."""

    GENERATED = "generated"
    PRODUCED_EMPTY = "produced_empty"
    OBSERVED = "observed"
    EVALUATED = "evaluated"
    UPDATED = "updated"
    P_CREATIVE = "p_creative"
    H_CREATIVE = "h_creative"


class GraphKindEnum(str, Enum):
    """How a society config declares its network."""

    BA = "ba"
    INLINE = "inline"
    FILE = "file"


class PresetEnum(str, Enum):
    """Ready-made society configurations."""

    MINIMAL = "minimal"
    HUB_INFLUENCE = "hub-influence"
    CONFORMIST_GENIUS = "conformist-genius"
    MIXED_CATEGORIES = "mixed-categories"
