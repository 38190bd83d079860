"""Post-hoc analysis of agents and run logs."""

import logging
import math
from collections import Counter, defaultdict
from itertools import combinations
from typing import Iterable, Optional, Sequence

import networkx as nx
import numpy as np
import pandas as pd

from src.agents.enums import EvalClassEnum
from src.agents.models import Agent
from src.agents.services import NEGATIVE, NON_DECIDABLE, POSITIVE, evaluate_points
from src.constraints.enums import CategoryEnum
from src.constraints.schemas import ExternalConfig
from src.constraints.services import external_arrays, potential_generation_space
from src.core.config import settings
from src.exceptions import ConfigShapeException
from src.metrics.enums import CreativityFamilyEnum, FormEnum
from src.metrics.schemas import (
    CategoryMixing,
    CreativityCounts,
    EvalDistribution,
    Form,
    FormCell,
    ReceivedCounts,
)
from src.society.enums import EventTypeEnum
from src.society.schemas import Snapshot
from src.space.schemas import Artefact, SpaceConfig
from src.space.services import as_grid_array

logger = logging.getLogger(__name__)

NAMED_FORMS = {
    (CategoryEnum.HUMAN, CategoryEnum.HUMAN): FormEnum.TWO_H,
    (CategoryEnum.CAD, CategoryEnum.HUMAN): FormEnum.CH,
    (CategoryEnum.CCS, CategoryEnum.HUMAN): FormEnum.AIH,
    (CategoryEnum.CCS, CategoryEnum.CCS): FormEnum.TWO_AI,
}


def _evaluate_all(
    agent: Agent, artefacts: Sequence[Artefact], external: Optional[ExternalConfig] = None
) -> tuple[np.ndarray, np.ndarray]:
    """Codes and strengths for a mixed sequence; the empty artefact is non-decidable."""
    codes = np.full(len(artefacts), NON_DECIDABLE, dtype=np.int8)
    strengths = np.zeros(len(artefacts))
    points = [i for i, a in enumerate(artefacts) if not a.is_empty]
    if not points:
        return codes, strengths

    arrays = None if external is None else external_arrays(external, agent.space.d)
    grid = as_grid_array([artefacts[i] for i in points], agent.space)
    codes[points], strengths[points] = evaluate_points(agent, grid, external=arrays)
    return codes, strengths


def eval_partition(agent: Agent, artefacts: Iterable[Artefact]) -> tuple[set, set, set]:
    """Split artefacts into the agent's positive, negative and non-decidable spaces."""
    artefacts = list(artefacts)
    codes, _ = _evaluate_all(agent, artefacts)
    spaces: tuple[set, set, set] = (set(), set(), set())
    for a, code in zip(artefacts, codes):
        spaces[code].add(a)
    return spaces


def _histogram(strengths: np.ndarray) -> tuple[int, ...]:
    counts, _ = np.histogram(strengths, bins=settings.HISTOGRAM_BINS, range=(0.0, 1.0))
    return tuple(int(c) for c in counts)


def distribution_of(codes: np.ndarray, strengths: np.ndarray) -> EvalDistribution:
    """Tabulate evaluation outcomes into class counts and strength histograms."""
    return EvalDistribution(
        positive=int(np.count_nonzero(codes == POSITIVE)),
        negative=int(np.count_nonzero(codes == NEGATIVE)),
        non_decidable=int(np.count_nonzero(codes == NON_DECIDABLE)),
        positive_hist=_histogram(strengths[codes == POSITIVE]),
        negative_hist=_histogram(strengths[codes == NEGATIVE]),
    )


def empty_distribution() -> EvalDistribution:
    zeros = (0,) * settings.HISTOGRAM_BINS
    return EvalDistribution(positive_hist=zeros, negative_hist=zeros)


def estimate_eval_distribution(
    agents: Sequence[Agent], external_samples: Sequence[ExternalConfig], artefacts: Sequence[Artefact]
) -> tuple[list[EvalDistribution], EvalDistribution]:
    """Per-artefact and pooled evaluation distributions over (agent memory, external sample) pairs.

    The sampled external configs stand in for the space of all configurations; each agent
    evaluates with its own memory. With no samples, every agent uses its own external config.
    """
    if not agents:
        raise ValueError("at least one agent is required")
    internal = agents[0].internal
    if any(agent.internal != internal for agent in agents[1:]):
        raise ConfigShapeException("agents must share one internal config")

    artefacts = list(artefacts)
    rows_codes, rows_strengths = [], []
    for agent in agents:
        for external in external_samples or (None,):
            codes, strengths = _evaluate_all(agent, artefacts, external)
            rows_codes.append(codes)
            rows_strengths.append(strengths)

    codes = np.vstack(rows_codes) if artefacts else np.empty((len(rows_codes), 0), dtype=np.int8)
    strengths = np.vstack(rows_strengths) if artefacts else np.empty((len(rows_codes), 0))
    per_artefact = [distribution_of(codes[:, j], strengths[:, j]) for j in range(len(artefacts))]
    return per_artefact, distribution_of(codes.ravel(), strengths.ravel())


def union_generation_space(agents: Sequence[Agent], cfg: SpaceConfig, cap: Optional[int] = None) -> frozenset:
    """Union of the agents' potential generation spaces."""
    union: frozenset = frozenset()
    for agent in agents:
        union |= potential_generation_space(agent.internal, agent.external, cfg, cap)
    return union


def category_eval_spaces(
    agents: Sequence[Agent], artefacts: Sequence[Artefact]
) -> dict[CategoryEnum, EvalDistribution]:
    """Pooled evaluation distribution of each category present among the agents."""
    groups: dict[CategoryEnum, list[list[Agent]]] = defaultdict(list)
    for agent in agents:
        same_internal = next((g for g in groups[agent.category] if g[0].internal == agent.internal), None)
        if same_internal is None:
            groups[agent.category].append([agent])
        else:
            same_internal.append(agent)

    spaces = {}
    for category in CategoryEnum:
        if category not in groups:
            continue
        pooled = empty_distribution()
        for group in groups[category]:
            pooled = pooled + estimate_eval_distribution(group, (), artefacts)[1]
        spaces[category] = pooled
    return spaces


def _mean_pairwise_distance(snapshot: Snapshot, cfg: SpaceConfig) -> float:
    externals = [agent.external for agent in snapshot.agents]
    if len({len(ec.constraints) for ec in externals}) > 1:
        raise ConfigShapeException(f"tick {snapshot.tick}: agents hold external configs of different lengths")
    if len(externals) < 2 or not externals[0].constraints:
        return 0.0

    arrays = [external_arrays(ec, cfg.d) for ec in externals]
    centers = np.stack([a.centers for a in arrays])  # (n, k, d)
    weights = np.stack([a.weights for a in arrays])  # (n, k)
    pairs = np.asarray(list(combinations(range(len(arrays)), 2)))
    i, j = pairs[:, 0], pairs[:, 1]
    center_part = np.linalg.norm(centers[i] - centers[j], axis=-1) / math.sqrt(cfg.d)
    per_pair = (center_part + np.abs(weights[i] - weights[j])).mean(axis=1)
    return float(per_pair.mean())


def convergence_series(snapshots: Sequence[Snapshot], cfg: SpaceConfig) -> list[float]:
    """Mean pairwise config distance at each snapshot; 0 for societies of one agent."""
    return [_mean_pairwise_distance(snapshot, cfg) for snapshot in snapshots]


def creators(events) -> dict[int, int]:
    """artefact_id -> creating agent, from the Generated events."""
    return {e.artefact_id: e.agent for e in events if e.type == EventTypeEnum.GENERATED}


def influence_counts(events) -> Counter:
    """Updated events each creator triggered in other agents."""
    creator_of = creators(events)
    counts: Counter = Counter()
    for e in events:
        if e.type == EventTypeEnum.UPDATED and creator_of[e.artefact_id] != e.agent:
            counts[creator_of[e.artefact_id]] += 1
    return counts


def influence(agent_id: int, events) -> int:
    return influence_counts(events)[agent_id]


def received_evaluations(events) -> dict[int, ReceivedCounts]:
    """Per creator, the classes of the peer evaluations its artefacts received."""
    creator_of = creators(events)
    tallies: dict[int, Counter] = defaultdict(Counter)
    for e in events:
        if e.type == EventTypeEnum.EVALUATED:
            tallies[creator_of[e.artefact_id]][e.eval_class] += 1
    return {
        agent_id: ReceivedCounts(
            positive=tally[EvalClassEnum.POSITIVE],
            negative=tally[EvalClassEnum.NEGATIVE],
            null=tally[EvalClassEnum.NON_DECIDABLE],
        )
        for agent_id, tally in sorted(tallies.items())
    }


def positive_rate_received(agent_id: int, received: dict[int, ReceivedCounts]) -> float:
    """Share of positive evaluations among all evaluations of the agent's artefacts; 0 if none.

    `received` is the tally from `received_evaluations`.
    """
    return received.get(agent_id, ReceivedCounts()).positive_rate


def influence_by_degree(events, graph: nx.Graph) -> pd.DataFrame:
    """Influence and received evaluations joined with node degree, one row per agent."""
    counts = influence_counts(events)
    received = received_evaluations(events)
    rows = []
    for node in range(graph.number_of_nodes()):
        r = received.get(node, ReceivedCounts())
        rows.append(
            {
                "agent_id": node,
                "degree": graph.degree(node),
                "influence": counts[node],
                "positive_received": r.positive,
                "negative_received": r.negative,
                "null_received": r.null,
            }
        )
    return pd.DataFrame(
        rows,
        columns=["agent_id", "degree", "influence", "positive_received", "negative_received", "null_received"],
    )


def distinct_outputs(agent_id: int, events) -> set[tuple[int, ...]]:
    return {e.artefact for e in events if e.type == EventTypeEnum.GENERATED and e.agent == agent_id}


def coverage(agent: Agent, events, cfg: SpaceConfig, cap: Optional[int] = None) -> float:
    """Share of the agent's potential generation space it has actually output.

    A finite generator is measured against its support.
    """
    if agent.support is not None:
        potential = {tuple(int(c) for c in row) for row in agent.support}
    else:
        potential = {a.coords for a in potential_generation_space(agent.internal, agent.external, cfg, cap)}
    if not potential:
        return 0.0
    return len(distinct_outputs(agent.id, events) & potential) / len(potential)


def exhaustion_tick(agent_id: int, events, support_size: int) -> Optional[int]:
    """First tick by which the agent has output `support_size` distinct artefacts."""
    seen: set = set()
    for e in events:
        if e.type == EventTypeEnum.GENERATED and e.agent == agent_id:
            seen.add(e.artefact)
            if len(seen) >= support_size:
                return e.tick
    return None


def classify_form(gen_category: CategoryEnum, eval_category: CategoryEnum) -> Form:
    form = NAMED_FORMS.get((gen_category, eval_category), FormEnum.OTHER)
    return Form(form=form, generator=gen_category, evaluator=eval_category)


def creativity_family(form: Form) -> CreativityFamilyEnum:
    """Anthropocentric when humans evaluate."""
    if form.evaluator == CategoryEnum.HUMAN:
        return CreativityFamilyEnum.ANTHROPOCENTRIC
    return CreativityFamilyEnum.NON_ANTHROPOCENTRIC


def creativity_counts(events) -> CreativityCounts:
    p_counts: Counter = Counter()
    h_counts: Counter = Counter()
    for e in events:
        if e.type == EventTypeEnum.P_CREATIVE:
            p_counts[e.agent] += 1
        elif e.type == EventTypeEnum.H_CREATIVE:
            h_counts[e.agent] += 1
    return CreativityCounts(p_creative=dict(sorted(p_counts.items())), h_creative=dict(sorted(h_counts.items())))


def form_matrix(events, categories: dict[int, CategoryEnum]) -> list[FormCell]:
    """Evaluation counts and positive rate of every category pair seen in the log."""
    creator_of = creators(events)
    totals: Counter = Counter()
    positives: Counter = Counter()
    for e in events:
        if e.type != EventTypeEnum.EVALUATED:
            continue
        pair = (categories[creator_of[e.artefact_id]], categories[e.agent])
        totals[pair] += 1
        if e.eval_class == EvalClassEnum.POSITIVE:
            positives[pair] += 1

    order = list(CategoryEnum)
    cells = []
    for generator, evaluator in sorted(totals, key=lambda p: (order.index(p[0]), order.index(p[1]))):
        form = classify_form(generator, evaluator)
        cells.append(
            FormCell(
                generator=generator,
                evaluator=evaluator,
                form=form.label,
                family=creativity_family(form),
                evaluations=totals[(generator, evaluator)],
                positive_rate=positives[(generator, evaluator)] / totals[(generator, evaluator)],
            )
        )
    return cells


def category_mixing(graph: nx.Graph, categories: dict[int, CategoryEnum]) -> CategoryMixing:
    """How strongly edges stay within one category; the network itself is never rewired."""
    edges = graph.number_of_edges()
    if edges == 0:
        return CategoryMixing(cross_fraction=0.0)

    cross = sum(1 for u, v in graph.edges() if categories[u] != categories[v])
    labelled = nx.Graph(graph)
    nx.set_node_attributes(labelled, {node: category.value for node, category in categories.items()}, "category")
    with np.errstate(invalid="ignore", divide="ignore"):
        assortativity = nx.attribute_assortativity_coefficient(labelled, "category")
    return CategoryMixing(
        cross_fraction=cross / edges,
        assortativity=None if math.isnan(assortativity) else float(assortativity),
    )


def metrics_table(snapshots: Sequence[Snapshot], events, cfg: SpaceConfig) -> pd.DataFrame:
    """Per-snapshot convergence and cumulative creativity counts.

    The convergence column is null when agents hold external configs of different lengths.
    """
    p_ticks = np.sort([e.tick for e in events if e.type == EventTypeEnum.P_CREATIVE])
    h_ticks = np.sort([e.tick for e in events if e.type == EventTypeEnum.H_CREATIVE])
    ticks = [snapshot.tick for snapshot in snapshots]
    try:
        distances = convergence_series(snapshots, cfg)
    except ConfigShapeException as e:
        logger.warning(f"{e.detail}; convergence is not reported")
        distances = [None] * len(snapshots)
    return pd.DataFrame(
        {
            "tick": ticks,
            "mean_pairwise_config_distance": pd.Series(distances, dtype="float64"),
            "p_creative_cum": np.searchsorted(p_ticks, ticks, side="right").astype(int),
            "h_creative_cum": np.searchsorted(h_ticks, ticks, side="right").astype(int),
        }
    )


