"""Run-directory persistence and analysis exports."""

import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

import networkx as nx
import numpy as np
import pandas as pd
from pydantic import ValidationError

from src.agents.models import Agent
from src.agents.schemas import AgentSpec
from src.agents.services import build_agent
from src.cli.schemas import (
    CONFIG_FILE,
    EVENTS_FILE,
    FINAL_STATE_FILE,
    MANIFEST_FILE,
    RUN_FILES,
    SNAPSHOTS_FILE,
    RunManifest,
)
from src.constraints.enums import CategoryEnum
from src.core.config import settings
from src.core.serialization import read_document, read_jsonl, write_canonical, write_jsonl
from src.exceptions import SpaceTooLargeException, UsageException
from src.exceptions.exception_handlers import validation_error_to_exception
from src.metrics.services import (
    category_eval_spaces,
    category_mixing,
    classify_form,
    coverage,
    creativity_counts,
    creativity_family,
    exhaustion_tick,
    form_matrix,
    influence_by_degree,
    metrics_table,
    positive_rate_received,
    received_evaluations,
)
from src.network.services import graph_from_file, to_graph_file
from src.society.models import RunResult
from src.society.schemas import (
    AgentState,
    FinalState,
    MemoryEntry,
    Snapshot,
    SocietyConfig,
    event_adapter,
)
from src.society.services import config_hash, config_record
from src.space.schemas import Artefact
from src.space.services import enumerate_space

logger = logging.getLogger(__name__)


def agent_state(agent: Agent) -> AgentState:
    return AgentState(
        id=agent.id,
        category=agent.category,
        archetype=agent.archetype,
        internal=agent.internal,
        external=agent.external,
        params=agent.params,
        update_flags=agent.update_flags,
        memory=tuple(MemoryEntry(tick=tick, artefact=a.coords) for tick, a in agent.memory.history),
        support=None if agent.support is None else tuple(tuple(int(c) for c in row) for row in agent.support),
    )


def final_state(result: RunResult) -> FinalState:
    return FinalState(
        graph=to_graph_file(result.graph),
        agents=tuple(agent_state(agent) for agent in result.agents),
        registry=tuple(result.registry.first.values()),
    )


def write_run(result: RunResult, out_dir: Path, started_at: datetime) -> RunManifest:
    """Write every file of a run directory; the manifest is written last."""
    out_dir.mkdir(parents=True, exist_ok=True)
    write_jsonl(out_dir / EVENTS_FILE, (event.to_record() for event in result.events))
    write_jsonl(out_dir / SNAPSHOTS_FILE, (snapshot.model_dump(mode="json") for snapshot in result.snapshots))
    write_canonical(out_dir / FINAL_STATE_FILE, final_state(result).model_dump(mode="json", by_alias=True))
    write_canonical(out_dir / CONFIG_FILE, config_record(result.config))

    manifest = RunManifest(
        config_hash=config_hash(result.config),
        seed=result.config.seed,
        tool_version=settings.TOOL_VERSION,
        started_at=started_at,
        finished_at=datetime.now(timezone.utc),
        files={name.split(".")[0]: name for name in RUN_FILES},
    )
    write_canonical(out_dir / MANIFEST_FILE, manifest.model_dump(mode="json"))
    return manifest


class LoadedRun:
    """A run directory read back for analysis."""

    def __init__(self, run_dir: Path):
        missing = [name for name in RUN_FILES if not (run_dir / name).is_file()]
        if missing:
            raise UsageException(f"run directory {run_dir} is missing {', '.join(missing)}")

        try:
            self.manifest = RunManifest.model_validate(read_document(run_dir / MANIFEST_FILE))
            self.config = SocietyConfig.model_validate(read_document(run_dir / CONFIG_FILE))
            self.final = FinalState.model_validate(read_document(run_dir / FINAL_STATE_FILE))
            self.events = [event_adapter.validate_python(record) for record in read_jsonl(run_dir / EVENTS_FILE)]
            self.snapshots = [Snapshot.model_validate(record) for record in read_jsonl(run_dir / SNAPSHOTS_FILE)]
        except ValidationError as e:
            raise validation_error_to_exception(e)

        self.graph: nx.Graph = graph_from_file(self.final.graph)
        self.agents = [restore_agent(state, self.config) for state in self.final.agents]

    @property
    def categories(self) -> dict[int, CategoryEnum]:
        return {agent.id: agent.category for agent in self.agents}


def restore_agent(state: AgentState, config: SocietyConfig) -> Agent:
    """Rebuild an agent from its final state, memory included."""
    spec = AgentSpec(
        id=state.id,
        category=state.category,
        internal=state.internal,
        external=state.external,
        params=state.params,
        update_flags=state.update_flags,
    )
    agent = build_agent(spec, config.space, config.seed)
    agent.archetype = state.archetype
    if state.support is not None:
        agent.support = np.asarray(state.support, dtype=np.int64).reshape(len(state.support), config.space.d)
    for entry in state.memory:
        agent.memory.add(Artefact(coords=entry.artefact), entry.tick)
    return agent


class AnalysisService:
    """Tables and report of one loaded run directory."""

    def __init__(self, run: LoadedRun, cap: Optional[int] = None):
        self.run = run
        self.cap = settings.ENUMERATION_CAP if cap is None else cap
        self.cfg = run.config.space

    def _enumerated(self) -> Optional[list[Artefact]]:
        try:
            return enumerate_space(self.cfg, self.cap)
        except SpaceTooLargeException as e:
            logger.warning(f"{e.detail}; coverage and evaluation spaces are skipped")
            return None

    def write_tables(self, out_dir: Path) -> tuple[pd.DataFrame, list]:
        """Write metrics.csv, influence.csv and forms.csv; return the metrics table and form cells."""
        metrics = metrics_table(self.run.snapshots, self.run.events, self.cfg)
        metrics.insert(0, "run_id", self.run.manifest.run_id)
        metrics.to_csv(out_dir / "metrics.csv", index=False, lineterminator="\n")

        influence = influence_by_degree(self.run.events, self.run.graph)
        influence.to_csv(out_dir / "influence.csv", index=False, lineterminator="\n")

        forms = form_matrix(self.run.events, self.run.categories)
        pd.DataFrame(
            [cell.model_dump(mode="json") for cell in forms],
            columns=["generator", "evaluator", "form", "family", "evaluations", "positive_rate"],
        ).to_csv(out_dir / "forms.csv", index=False, lineterminator="\n")
        return metrics, forms

    def agents_report(self, artefacts: Optional[list[Artefact]]) -> list[dict]:
        events = self.run.events
        counts = creativity_counts(events)
        received = received_evaluations(events)

        entries = []
        for agent in self.run.agents:
            entry = {
                "agent_id": agent.id,
                "category": agent.category.value,
                "archetype": agent.archetype.value,
                "p_creative": counts.p_creative.get(agent.id, 0),
                "h_creative": counts.h_creative.get(agent.id, 0),
                "positive_rate_received": positive_rate_received(agent.id, received),
                "coverage": None if artefacts is None else coverage(agent, events, self.cfg, self.cap),
            }
            if agent.support is not None:
                entry["exhaustion_tick"] = exhaustion_tick(agent.id, events, len(agent.support))
            entries.append(entry)
        return entries

    def analyze(self, out_dir: Path) -> dict:
        """Write metrics.csv, influence.csv, forms.csv and report.json; return the report."""
        run = self.run
        out_dir.mkdir(parents=True, exist_ok=True)
        metrics, forms = self.write_tables(out_dir)
        artefacts = self._enumerated()
        counts = creativity_counts(run.events)
        series = metrics["mean_pairwise_config_distance"]
        present = sorted({agent.category for agent in run.agents}, key=list(CategoryEnum).index)

        report = {
            "run_id": run.manifest.run_id,
            "seed": run.config.seed,
            "ticks": run.config.rounds,
            "events": len(run.events),
            "creativity": {"p_total": counts.p_total, "h_total": counts.h_total},
            "convergence": None
            if series.isna().any()
            else {"initial": float(series.iloc[0]), "final": float(series.iloc[-1])},
            "agents": self.agents_report(artefacts),
            "forms": [cell.model_dump(mode="json") for cell in forms],
            "form_matrix": {
                f"{g.value}->{e.value}": {
                    "form": classify_form(g, e).label,
                    "family": creativity_family(classify_form(g, e)).value,
                }
                for g in present
                for e in present
            },
            "category_mixing": category_mixing(run.graph, run.categories).model_dump(mode="json"),
            "eval_spaces": None
            if artefacts is None
            else {
                category.value: distribution.to_report()
                for category, distribution in category_eval_spaces(run.agents, artefacts).items()
            },
            "notes": {
                "external_samples": "each agent's final external config stands in for the space of all configurations",
                "memory": "each agent evaluates with its own final memory",
            },
        }
        write_canonical(out_dir / "report.json", report)
        return report
