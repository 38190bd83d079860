"""Generation, evaluation and update operators of a creative system."""

import logging
from typing import Optional

import numpy as np

from src.agents.enums import ArchetypeEnum, EvalClassEnum, UpdateTargetEnum
from src.agents.models import Agent, Memory
from src.agents.schemas import NULL_EVALUATION, AgentSpec, Evaluation, OperatorParams
from src.constraints.services import (
    ExternalArrays,
    alignment_scores,
    feasible_mask,
    potential_generation_space,
)
from src.constraints.templates import CATEGORY_PARAM_DEFAULTS, category_template
from src.core.config import settings
from src.core.random import agent_stream
from src.exceptions import EmptyArtefactException
from src.space.schemas import EMPTY, Artefact, SpaceConfig
from src.space.services import grid_to_real, real_coords

logger = logging.getLogger(__name__)

# Integer codes used by the vectorized evaluation
POSITIVE, NEGATIVE, NON_DECIDABLE = 0, 1, 2
CLASS_BY_CODE = (EvalClassEnum.POSITIVE, EvalClassEnum.NEGATIVE, EvalClassEnum.NON_DECIDABLE)
SATISFIED = Evaluation(eval_class=EvalClassEnum.POSITIVE, strength=1.0)
UNSATISFIED = Evaluation(eval_class=EvalClassEnum.NEGATIVE, strength=1.0)


def _novelty_scores(points: np.ndarray, memory_grid: np.ndarray, cfg: SpaceConfig) -> np.ndarray:
    """Distance from each row of `points` (real) to the nearest remembered artefact."""
    if len(memory_grid) == 0:
        return np.ones(len(points))
    remembered = grid_to_real(memory_grid, cfg)
    distances = np.linalg.norm(points[:, None, :] - remembered[None, :, :], axis=-1) / np.sqrt(cfg.d)
    return distances.min(axis=1)


def novelty(a: Artefact, m: Memory, cfg: SpaceConfig) -> float:
    """1 for an empty memory, otherwise the distance to the closest stored artefact."""
    if a.is_empty:
        raise EmptyArtefactException("empty artefact has no novelty")
    return float(_novelty_scores(real_coords(a, cfg)[None, :], m.grid, cfg)[0])


def observe(agent: Agent, a: Artefact, tick: int = 0) -> bool:
    """Store a recognisable, not yet known artefact; returns whether it was stored."""
    if a.is_empty or a in agent.memory or not agent.admits(a):
        return False
    return agent.memory.add(a, tick)


def _classify(scores: np.ndarray, theta: float) -> tuple[np.ndarray, np.ndarray]:
    codes = np.where(scores >= theta, POSITIVE, NEGATIVE).astype(np.int8)
    strengths = np.clip(np.abs(scores - theta) / max(theta, 1.0 - theta), 0.0, 1.0)
    return codes, strengths


def _scores(agent: Agent, points: np.ndarray, external: ExternalArrays, memory_grid: np.ndarray) -> np.ndarray:
    lam = agent.params.lambda_
    return lam * alignment_scores(points, external) + (1.0 - lam) * _novelty_scores(points, memory_grid, agent.space)


def evaluate_points(
    agent: Agent, grid: np.ndarray, external: Optional[ExternalArrays] = None, memory_grid: Optional[np.ndarray] = None
) -> tuple[np.ndarray, np.ndarray]:
    """Class codes and strengths for each row of an integer grid array.

    `external` and `memory_grid` substitute the agent's own state when given.
    """
    points = grid_to_real(grid, agent.space)
    n = len(points)
    codes = np.full(n, NON_DECIDABLE, dtype=np.int8)
    strengths = np.zeros(n)

    decidable = feasible_mask(points, agent.internal_arrays)
    if not decidable.any():
        return codes, strengths

    if agent.archetype == ArchetypeEnum.ALWAYS_SATISFIED:
        codes[decidable] = POSITIVE
        strengths[decidable] = 1.0
        return codes, strengths
    if agent.archetype == ArchetypeEnum.ALWAYS_UNSATISFIED:
        codes[decidable] = NEGATIVE
        strengths[decidable] = 1.0
        return codes, strengths

    scores = _scores(
        agent,
        points[decidable],
        agent.external_arrays if external is None else external,
        agent.memory.grid if memory_grid is None else memory_grid,
    )
    codes[decidable], strengths[decidable] = _classify(scores, agent.params.theta)
    return codes, strengths


def evaluate(agent: Agent, a: Artefact) -> Evaluation:
    """Evaluate an artefact against the agent's constraints and memory.

    Empty or infeasible artefacts are non-decidable. Otherwise the score
    lambda * alignment + (1 - lambda) * novelty is compared with theta.
    """
    if a.is_empty or not agent.admits(a):
        return NULL_EVALUATION
    if agent.archetype == ArchetypeEnum.ALWAYS_SATISFIED:
        return SATISFIED
    if agent.archetype == ArchetypeEnum.ALWAYS_UNSATISFIED:
        return UNSATISFIED

    point = real_coords(a, agent.space)[None, :]
    codes, strengths = _classify(_scores(agent, point, agent.external_arrays, agent.memory.grid), agent.params.theta)
    return Evaluation(eval_class=CLASS_BY_CODE[codes[0]], strength=float(strengths[0]))


def _sample_feasible(agent: Agent) -> np.ndarray:
    """Up to K feasible grid points by rejection sampling, within a budget of REJECTION_FACTOR * K draws."""
    cfg = agent.space
    k = agent.params.k
    budget = settings.REJECTION_FACTOR * k

    found: list[np.ndarray] = []
    n_found = drawn = 0
    while n_found < k and drawn < budget:
        batch = min(k, budget - drawn)
        draws = agent.rng.integers(0, cfg.rho + 1, size=(batch, cfg.d))
        drawn += batch
        accepted = draws[feasible_mask(grid_to_real(draws, cfg), agent.internal_arrays)]
        found.append(accepted)
        n_found += len(accepted)

    return np.concatenate(found)[:k]


def generate(agent: Agent) -> Artefact:
    """Draw K feasible candidates and pick one with probability proportional to alignment^beta.

    Returns the empty artefact when no candidate is found or every candidate has zero alignment.
    """
    params = agent.params
    if agent.support is not None:
        if len(agent.support) == 0:
            return EMPTY
        candidates = agent.support[agent.rng.integers(0, len(agent.support), size=params.k)]
    else:
        candidates = _sample_feasible(agent)
        if len(candidates) == 0:
            return EMPTY

    weights = alignment_scores(grid_to_real(candidates, agent.space), agent.external_arrays) ** params.beta
    cumulative = np.cumsum(weights)
    total = cumulative[-1]
    if total <= 0.0:
        return EMPTY

    index = int(np.searchsorted(cumulative, agent.rng.random() * total, side="right"))
    chosen = candidates[min(index, len(candidates) - 1)]
    return Artefact(coords=tuple(int(c) for c in chosen))


def produce(agent: Agent, tick: int = 0) -> tuple[Artefact, int]:
    """Generate and self-evaluate up to N_attempts times; keep the first positive artefact.

    The accepted artefact enters the agent's own memory. Returns (EMPTY, N_attempts) when
    nothing passes.
    """
    n_attempts = agent.params.n_attempts
    for attempt in range(1, n_attempts + 1):
        a = generate(agent)
        if a.is_empty:
            continue

        e = evaluate(agent, a)
        if e.eval_class == EvalClassEnum.POSITIVE:
            agent.last_self_evaluation = e
            observe(agent, a, tick)
            return a, attempt

    agent.last_self_evaluation = NULL_EVALUATION
    return EMPTY, n_attempts


def update_external(agent: Agent, a: Artefact, e: Evaluation) -> None:
    """Move external centers toward (positive) or away from (negative) the artefact."""
    if a.is_empty:
        logger.debug(f"agent {agent.id}: external update on the empty artefact ignored")
        return

    params = agent.params
    centers = agent.external_arrays.centers
    if len(centers) == 0:
        return

    if agent.archetype == ArchetypeEnum.RANDOM_WALK:
        steps = agent.rng.uniform(-params.eta_c, params.eta_c, size=centers.shape)
        agent.move_external_centers(np.clip(centers + steps, 0.0, 1.0))
        return

    if not e.is_decidable:
        return

    step = params.eta_c * e.strength * (real_coords(a, agent.space) - centers)
    if e.eval_class == EvalClassEnum.POSITIVE:
        agent.move_external_centers(centers + step)
    else:
        agent.move_external_centers(np.clip(centers - step, 0.0, 1.0))


def update_evaluation(agent: Agent, a: Artefact, e: Evaluation) -> None:
    """Aspiration adaptation of the acceptance threshold."""
    params = agent.params
    if agent.archetype == ArchetypeEnum.RANDOM_WALK:
        theta = params.theta + agent.rng.uniform(-params.eta_theta, params.eta_theta)
    elif e.eval_class == EvalClassEnum.POSITIVE:
        theta = params.theta + params.eta_theta * e.strength
    elif e.eval_class == EvalClassEnum.NEGATIVE:
        theta = params.theta - params.eta_theta * e.strength
    else:
        return
    agent.set_params(theta=min(params.theta_max, max(params.theta_min, theta)))


def update_generation(agent: Agent, a: Artefact, e: Evaluation) -> None:
    """Sharpen generation after positive outcomes, flatten it after negative ones."""
    params = agent.params
    if agent.archetype == ArchetypeEnum.RANDOM_WALK:
        beta = params.beta * (1.0 + params.eta_beta) ** agent.rng.uniform(-1.0, 1.0)
    elif e.eval_class == EvalClassEnum.POSITIVE:
        beta = params.beta * (1.0 + params.eta_beta * e.strength)
    elif e.eval_class == EvalClassEnum.NEGATIVE:
        beta = params.beta / (1.0 + params.eta_beta * e.strength)
    else:
        return
    agent.set_params(beta=min(params.beta_max, max(params.beta_min, beta)))


UPDATERS = {
    UpdateTargetEnum.EXTERNAL: update_external,
    UpdateTargetEnum.EVALUATION: update_evaluation,
    UpdateTargetEnum.GENERATION: update_generation,
}


def apply_update(agent: Agent, target: UpdateTargetEnum, a: Artefact, e: Evaluation) -> None:
    UPDATERS[target](agent, a, e)


def resolve_spec(spec: AgentSpec, d: int) -> AgentSpec:
    """Fill the internal config and parameters a spec leaves to its category."""
    changes = {}
    if spec.internal is None:
        changes["internal"] = category_template(spec.category, d).internal
    if spec.params is None:
        changes["params"] = OperatorParams(**CATEGORY_PARAM_DEFAULTS[spec.category])
    return spec.model_copy(update=changes) if changes else spec


def make_archetype(
    kind: ArchetypeEnum, base: AgentSpec, space: SpaceConfig, run_seed: int = 0, cap: Optional[int] = None
) -> Agent:
    """Build an agent from a spec and apply the defining change of an archetype.

    A misunderstood genius has every external weight forced to 0; a finite generator
    precomputes its support by enumeration and fails when the space is not enumerable.
    """
    spec = resolve_spec(base, space.d)
    external = spec.external
    support = None

    if kind == ArchetypeEnum.MISUNDERSTOOD_GENIUS:
        external = external.with_zero_weights()
    elif kind == ArchetypeEnum.FINITE_GENERATOR:
        points = potential_generation_space(spec.internal, external, space, cap)
        support = np.asarray(sorted(a.coords for a in points), dtype=np.int64).reshape(len(points), space.d)
        logger.debug(f"agent {spec.id}: finite support of {len(support)} artefacts")

    return Agent(
        id=spec.id,
        space=space,
        internal=spec.internal,
        external=external,
        params=spec.params,
        rng=agent_stream(run_seed, spec.id),
        category=spec.category,
        archetype=kind,
        update_flags=spec.update_flags,
        support=support,
    )


def build_agent(spec: AgentSpec, space: SpaceConfig, run_seed: int = 0, cap: Optional[int] = None) -> Agent:
    return make_archetype(spec.archetype, spec, space, run_seed, cap)
