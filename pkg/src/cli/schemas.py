"""Run directory records."""

from datetime import datetime

from pydantic import Field

from src.core.schemas import FrozenModel

EVENTS_FILE = "events.jsonl"
SNAPSHOTS_FILE = "snapshots.jsonl"
FINAL_STATE_FILE = "final_state.json"
MANIFEST_FILE = "manifest.json"
CONFIG_FILE = "config.json"
RUN_FILES = (EVENTS_FILE, SNAPSHOTS_FILE, FINAL_STATE_FILE, MANIFEST_FILE, CONFIG_FILE)


class RunManifest(FrozenModel):
    """Provenance of one run directory; file paths are relative to it."""

    config_hash: str = Field(description="SHA-256 of the canonical effective config")
    seed: int
    tool_version: str
    started_at: datetime
    finished_at: datetime
    files: dict[str, str]

    @property
    def run_id(self) -> str:
        return f"{self.config_hash[:12]}-{self.seed}"
