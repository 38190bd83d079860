"""Scale-free network generation and degree analysis."""

import logging

import networkx as nx
import numpy as np

from src.core.random import stream
from src.exceptions import GraphSizeException, InsufficientTailException
from src.network.schemas import DegreeStats, GraphFile

logger = logging.getLogger(__name__)

MIN_TAIL_POINTS = 10


def seed_size(m: int) -> int:
    """Number of nodes in the seed path."""
    return max(m, 2)


def generate_ba(n: int, m: int, seed: int) -> nx.Graph:
    """Grow a graph by preferential attachment.

    Seed graph: a path over the first m0 = max(m, 2) nodes. Every later node links to m
    distinct existing nodes drawn with probability proportional to their current degree.
    """
    if m < 1:
        raise GraphSizeException("m must be >= 1")
    m0 = seed_size(m)
    if n < m0:
        raise GraphSizeException(f"nodes must be >= max(m, 2) = {m0} (got {n})")

    rng = stream(seed)
    graph = nx.Graph(m=m, seed=seed)
    graph.add_nodes_from(range(n))
    graph.add_edges_from((i, i + 1) for i in range(m0 - 1))

    degree = np.zeros(n, dtype=float)
    degree[: m0 - 1] += 1
    degree[1:m0] += 1

    for node in range(m0, n):
        weights = degree[:node]
        targets = rng.choice(node, size=m, replace=False, p=weights / weights.sum())
        for target in sorted(int(t) for t in targets):
            graph.add_edge(node, target)
        degree[targets] += 1
        degree[node] = m

    logger.debug(f"BA graph n={n} m={m} seed={seed}: {graph.number_of_edges()} edges")
    return graph


def expected_edge_count(n: int, m: int) -> int:
    m0 = seed_size(m)
    return (m0 - 1) + (n - m0) * m


def graph_from_file(data: GraphFile) -> nx.Graph:
    graph = nx.Graph(m=data.m, seed=data.seed)
    graph.add_nodes_from(range(data.n))
    graph.add_edges_from(data.edges)
    return graph


def to_graph_file(graph: nx.Graph) -> GraphFile:
    """Canonical file form: each pair ascending, pairs sorted lexicographically."""
    edges = sorted((min(u, v), max(u, v)) for u, v in graph.edges())
    return GraphFile(
        n=graph.number_of_nodes(),
        m=graph.graph.get("m", 0),
        seed=graph.graph.get("seed", 0),
        edges=tuple(edges),
    )


def sorted_neighbors(graph: nx.Graph) -> list[list[int]]:
    """Adjacency lists in ascending id order."""
    return [sorted(graph.neighbors(node)) for node in range(graph.number_of_nodes())]


def degree_stats(graph: nx.Graph) -> DegreeStats:
    """Exact degree sequence, maximum, mean and CCDF points."""
    degrees = np.asarray([graph.degree(node) for node in range(graph.number_of_nodes())], dtype=np.int64)
    distinct = np.unique(degrees)
    ccdf = tuple((int(k), float(np.count_nonzero(degrees >= k)) / len(degrees)) for k in distinct)
    return DegreeStats(
        degrees=tuple(int(k) for k in degrees),
        max_degree=int(degrees.max()),
        mean_degree=float(degrees.mean()),
        ccdf=ccdf,
    )


def fit_ccdf_slope(points) -> float:
    """Least-squares slope of log CCDF against log k."""
    k = np.asarray([p[0] for p in points], dtype=float)
    ccdf = np.asarray([p[1] for p in points], dtype=float)
    slope, _ = np.polyfit(np.log(k), np.log(ccdf), 1)
    return float(slope)


def ccdf_tail_slope(graph: nx.Graph, k_min: int) -> float:
    """Slope of the degree CCDF tail over degrees >= k_min (needs >= 10 distinct degrees)."""
    tail = [(k, p) for k, p in degree_stats(graph).ccdf if k >= k_min and k > 0]
    if len(tail) < MIN_TAIL_POINTS:
        raise InsufficientTailException(
            f"need at least {MIN_TAIL_POINTS} distinct degrees >= {k_min}, found {len(tail)}"
        )
    return fit_ccdf_slope(tail)
