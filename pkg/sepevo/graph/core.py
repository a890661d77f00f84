# sepevo/graph/core.py

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from collections import deque
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from sepevo.errors import InvalidSolutionError
from sepevo.types import Edge, ValidityReport, Violation

logger = logging.getLogger(__name__)

# ==================== Graph ====================

class Graph:
    """
    Immutable undirected graph in CSR form with positive integer node and edge weights.
    Every undirected edge {u, v} is stored twice, once per direction, with equal weight.
    """

    def __init__(
        self,
        offsets: np.ndarray,
        targets: np.ndarray,
        node_weight: np.ndarray,
        edge_weight: np.ndarray,
    ):
        self.offsets = np.asarray(offsets, dtype=np.int64)
        self.targets = np.asarray(targets, dtype=np.int64)
        self.node_weight = np.asarray(node_weight, dtype=np.int64)
        self.edge_weight = np.asarray(edge_weight, dtype=np.int64)
        for arr in (self.offsets, self.targets, self.node_weight, self.edge_weight):
            arr.setflags(write=False)
        if len(self.offsets) != len(self.node_weight) + 1:
            raise ValueError("offsets must have n + 1 entries")
        if len(self.targets) != len(self.edge_weight):
            raise ValueError("targets and edge weights differ in length")

    @classmethod
    def from_edges(
        cls,
        n: int,
        sources: Sequence[int],
        targets: Sequence[int],
        weights: Optional[Sequence[int]] = None,
        node_weight: Optional[Sequence[int]] = None,
    ) -> "Graph":
        """Build a graph from undirected edges; parallel edges are merged by summing weights."""
        src = np.asarray(sources, dtype=np.int64)
        dst = np.asarray(targets, dtype=np.int64)
        w = np.ones(len(src), dtype=np.int64) if weights is None else np.asarray(weights, dtype=np.int64)
        vw = np.ones(n, dtype=np.int64) if node_weight is None else np.asarray(node_weight, dtype=np.int64)

        if len(vw) != n:
            raise ValueError(f"expected {n} node weights, got {len(vw)}")
        if n and vw.min() < 1:
            raise ValueError("node weights must be at least 1")
        if len(src):
            if min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= n:
                raise ValueError("edge endpoint out of range")
            if np.any(src == dst):
                raise ValueError("self-loops are not allowed")
            if w.min() < 1:
                raise ValueError("edge weights must be at least 1")

        lo = np.minimum(src, dst)
        hi = np.maximum(src, dst)
        keys, inverse = np.unique(lo * max(n, 1) + hi, return_inverse=True)
        merged = np.bincount(inverse, weights=w, minlength=len(keys)).astype(np.int64)
        lo = keys // max(n, 1)
        hi = keys % max(n, 1)

        all_src = np.concatenate([lo, hi])
        all_dst = np.concatenate([hi, lo])
        all_w = np.concatenate([merged, merged])
        order = np.lexsort((all_dst, all_src))
        degrees = np.bincount(all_src, minlength=n)
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degrees, out=offsets[1:])
        return cls(offsets, all_dst[order], vw, all_w[order])

    # ========== Sizes ==========

    @property
    def n(self) -> int:
        return len(self.node_weight)

    @property
    def m(self) -> int:
        return len(self.targets) // 2

    @cached_property
    def total_weight(self) -> int:
        return int(self.node_weight.sum())

    @cached_property
    def max_node_weight(self) -> int:
        return int(self.node_weight.max()) if self.n else 0

    # ========== Python-side views for hot loops ==========

    @cached_property
    def weights(self) -> List[int]:
        return self.node_weight.tolist()

    @cached_property
    def adjacency(self) -> List[List[int]]:
        targets = self.targets.tolist()
        offsets = self.offsets.tolist()
        return [targets[offsets[v]:offsets[v + 1]] for v in range(self.n)]

    @cached_property
    def adjacency_weights(self) -> List[List[int]]:
        weights = self.edge_weight.tolist()
        offsets = self.offsets.tolist()
        return [weights[offsets[v]:offsets[v + 1]] for v in range(self.n)]

    @cached_property
    def edge_array(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(u, v, weight) arrays with one entry per undirected edge, u < v."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.offsets))
        mask = src < self.targets
        return src[mask], self.targets[mask], self.edge_weight[mask]

    def neighbors(self, v: int) -> List[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    def edges(self) -> Iterator[Tuple[int, int, int]]:
        src, dst, w = self.edge_array
        return zip(src.tolist(), dst.tolist(), w.tolist())

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    # ========== Derived graphs ==========

    def subgraph(self, nodes: Sequence[int]) -> Tuple["Graph", List[int]]:
        """Induced subgraph on `nodes`; local node i corresponds to nodes[i]."""
        local = {v: i for i, v in enumerate(nodes)}
        src, dst, wgt = [], [], []
        adjacency, adjacency_weights = self.adjacency, self.adjacency_weights
        for i, u in enumerate(nodes):
            for v, w in zip(adjacency[u], adjacency_weights[u]):
                j = local.get(v)
                if j is not None and i < j:
                    src.append(i)
                    dst.append(j)
                    wgt.append(w)
        node_weight = [self.weights[v] for v in nodes]
        return Graph.from_edges(len(nodes), src, dst, wgt, node_weight), list(nodes)

    def components(self) -> List[int]:
        """Connected component id per node, numbered in order of smallest member."""
        comp = [-1] * self.n
        current = 0
        for root in range(self.n):
            if comp[root] != -1:
                continue
            comp[root] = current
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for v in self.adjacency[u]:
                    if comp[v] == -1:
                        comp[v] = current
                        queue.append(v)
            current += 1
        return comp

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, c(V)={self.total_weight})"

# ==================== Separator Solution ====================

def max_block_weight(total_weight: int, k: int, epsilon: float) -> float:
    """L_max = (1 + eps) * ceil(c(V) / k), compared as a real number."""
    return (1.0 + epsilon) * (-(-total_weight // k))


class SeparatorSolution:
    """
    Assignment of every node to one of k blocks or to the separator (label k).
    Block weights and the separator weight are cached and kept current by `move`.
    """

    def __init__(
        self,
        assignment: Sequence[int],
        k: int,
        weights: Sequence[int],
        epsilon: float,
        max_block_weight: Optional[float] = None,
        total_weight: Optional[int] = None,
    ):
        if k < 1:
            raise ValueError("k must be at least 1")
        if len(assignment) != len(weights):
            raise ValueError("assignment length does not match node count")
        self.assignment: List[int] = list(assignment)
        self.k = k
        self.epsilon = epsilon
        self._weights = weights
        self.total_weight = sum(weights) if total_weight is None else total_weight
        self._max_block_weight = max_block_weight
        self.block_weight: List[int] = [0] * k
        self.separator_weight = 0
        for v, label in enumerate(self.assignment):
            if label == k:
                self.separator_weight += weights[v]
            elif 0 <= label < k:
                self.block_weight[label] += weights[v]
            else:
                raise ValueError(f"node {v} has label {label} outside 0..{k}")

    @classmethod
    def for_graph(
        cls,
        g: Graph,
        assignment: Sequence[int],
        k: int,
        epsilon: float,
        max_block_weight: Optional[float] = None,
    ) -> "SeparatorSolution":
        return cls(assignment, k, g.weights, epsilon, max_block_weight, g.total_weight)

    @property
    def separator(self) -> int:
        return self.k

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def l_max(self) -> float:
        if self._max_block_weight is not None:
            return self._max_block_weight
        return max_block_weight(self.total_weight, self.k, self.epsilon)

    @property
    def fitness(self) -> int:
        return self.separator_weight

    def weight(self, v: int) -> int:
        return self._weights[v]

    def move(self, v: int, label: int) -> None:
        old = self.assignment[v]
        if old == label:
            return
        w = self._weights[v]
        if old == self.k:
            self.separator_weight -= w
        else:
            self.block_weight[old] -= w
        if label == self.k:
            self.separator_weight += w
        else:
            self.block_weight[label] += w
        self.assignment[v] = label

    def copy(self) -> "SeparatorSolution":
        clone = SeparatorSolution.__new__(SeparatorSolution)
        clone.assignment = list(self.assignment)
        clone.k = self.k
        clone.epsilon = self.epsilon
        clone._weights = self._weights
        clone.total_weight = self.total_weight
        clone._max_block_weight = self._max_block_weight
        clone.block_weight = list(self.block_weight)
        clone.separator_weight = self.separator_weight
        return clone

    def separator_nodes(self) -> List[int]:
        k = self.k
        return [v for v, label in enumerate(self.assignment) if label == k]

    def separator_set(self) -> frozenset:
        return frozenset(self.separator_nodes())

    def block_nodes(self, block: int) -> List[int]:
        return [v for v, label in enumerate(self.assignment) if label == block]

    def is_balanced(self) -> bool:
        l_max = self.l_max
        return all(w <= l_max for w in self.block_weight)

    def excess(self) -> float:
        l_max = self.l_max
        return sum(w - l_max for w in self.block_weight if w > l_max)

    def heaviest_block(self) -> int:
        return max(range(self.k), key=lambda b: (self.block_weight[b], -b))

    def lightest_block(self) -> int:
        return min(range(self.k), key=lambda b: (self.block_weight[b], b))

    def __repr__(self) -> str:
        return (
            f"SeparatorSolution(k={self.k}, separator_weight={self.separator_weight}, "
            f"block_weight={self.block_weight})"
        )

# ==================== Contraction ====================

@dataclass(frozen=True)
class ContractionMap:
    fine: Graph
    coarse: Graph
    fine_to_coarse: np.ndarray

    @cached_property
    def mapping(self) -> List[int]:
        return self.fine_to_coarse.tolist()


def contract(g: Graph, matching: Iterable[Edge]) -> ContractionMap:
    """Contract every matched pair into one node; parallel coarse edges get summed weights."""
    mate = [-1] * g.n
    for u, v in matching:
        if u == v or mate[u] != -1 or mate[v] != -1:
            raise ValueError(f"matching edges share a node at ({u}, {v})")
        if not g.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge of the graph")
        mate[u], mate[v] = v, u

    coarse_id = [-1] * g.n
    count = 0
    for v in range(g.n):
        if coarse_id[v] == -1:
            coarse_id[v] = count
            if mate[v] != -1:
                coarse_id[mate[v]] = count
            count += 1

    f2c = np.asarray(coarse_id, dtype=np.int64)
    node_weight = np.bincount(f2c, weights=g.node_weight, minlength=count).astype(np.int64)
    src, dst, w = g.edge_array
    cs, cd = f2c[src], f2c[dst]
    keep = cs != cd
    coarse = Graph.from_edges(count, cs[keep], cd[keep], w[keep], node_weight)
    return ContractionMap(fine=g, coarse=coarse, fine_to_coarse=f2c)


def project_solution(coarse_sol: SeparatorSolution, cmap: ContractionMap) -> SeparatorSolution:
    """Every fine node inherits the label of its coarse representative."""
    labels = coarse_sol.assignment
    fine = coarse_sol.copy()
    fine.assignment = [labels[c] for c in cmap.mapping]
    fine._weights = cmap.fine.weights
    return fine


def restrict_solution(fine_sol: SeparatorSolution, cmap: ContractionMap) -> SeparatorSolution:
    """Carry a fine solution to the coarse graph; needs label-uniform coarse nodes."""
    coarse_labels = [-1] * cmap.coarse.n
    for v, c in enumerate(cmap.mapping):
        label = fine_sol.assignment[v]
        if coarse_labels[c] == -1:
            coarse_labels[c] = label
        elif coarse_labels[c] != label:
            raise InvalidSolutionError(f"coarse node {c} covers differently labelled fine nodes")
    coarse = fine_sol.copy()
    coarse.assignment = coarse_labels
    coarse._weights = cmap.coarse.weights
    return coarse


def cut_edges(g: Graph, sol: SeparatorSolution) -> Set[Edge]:
    """Edges whose endpoints carry different labels (block/separator boundaries)."""
    labels = np.asarray(sol.assignment, dtype=np.int64)
    src, dst, _ = g.edge_array
    mask = labels[src] != labels[dst]
    return set(zip(src[mask].tolist(), dst[mask].tolist()))

# ==================== Quotient Graph ====================

@dataclass
class QuotientGraph:
    k: int
    witnesses: Dict[Tuple[int, int], List[int]] = field(default_factory=dict)

    @property
    def edges(self) -> Set[Tuple[int, int]]:
        return set(self.witnesses)

    def neighbors(self, block: int) -> List[int]:
        result = set()
        for a, b in self.witnesses:
            if a == block:
                result.add(b)
            elif b == block:
                result.add(a)
        return sorted(result)

    def shortest_path(self, source: int, target: int) -> Optional[List[int]]:
        """Hop-count BFS over blocks; ties resolved towards smaller block ids."""
        adjacency = {b: self.neighbors(b) for b in range(self.k)}
        parent = {source: None}
        queue = deque([source])
        while queue:
            a = queue.popleft()
            if a == target:
                break
            for b in adjacency[a]:
                if b not in parent:
                    parent[b] = a
                    queue.append(b)
        if target not in parent:
            return None
        path = [target]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        return path[::-1]


def adjacent_blocks(g: Graph, sol: SeparatorSolution, v: int) -> Set[int]:
    """Blocks (not the separator) holding at least one neighbor of v."""
    k = sol.k
    labels = sol.assignment
    return {labels[u] for u in g.adjacency[v] if labels[u] != k}


def quotient(g: Graph, sol: SeparatorSolution) -> QuotientGraph:
    q = QuotientGraph(k=sol.k)
    for s in sol.separator_nodes():
        for pair in combinations(sorted(adjacent_blocks(g, sol, s)), 2):
            q.witnesses.setdefault(pair, []).append(s)
    return q

# ==================== Validation ====================

def is_valid(g: Graph, sol: SeparatorSolution) -> ValidityReport:
    violations: List[Violation] = []
    warnings: List[str] = []
    k = sol.k

    if len(sol.assignment) != g.n:
        violations.append(Violation(kind="cache", detail=f"assignment has {len(sol.assignment)} entries for {g.n} nodes"))
        return ValidityReport(valid=False, balanced=False, violations=violations)

    labels = np.asarray(sol.assignment, dtype=np.int64)
    if len(labels) and (labels.min() < 0 or labels.max() > k):
        violations.append(Violation(kind="cache", detail=f"labels outside 0..{k}"))
        return ValidityReport(valid=False, balanced=False, violations=violations)

    src, dst, _ = g.edge_array
    ls, ld = labels[src], labels[dst]
    bad = (ls != ld) & (ls != k) & (ld != k)
    for u, v in zip(src[bad].tolist(), dst[bad].tolist()):
        violations.append(Violation(
            kind="edge",
            edge=(u, v),
            detail=f"edge ({u}, {v}) joins blocks {sol.assignment[u]} and {sol.assignment[v]}",
        ))

    recomputed = np.bincount(labels, weights=g.node_weight, minlength=k + 1).astype(np.int64)
    if recomputed[:k].tolist() != list(sol.block_weight) or int(recomputed[k]) != sol.separator_weight:
        violations.append(Violation(kind="cache", detail="cached weights differ from recomputation"))

    balanced = True
    l_max = sol.l_max
    for block, weight in enumerate(recomputed[:k].tolist()):
        if weight > l_max:
            balanced = False
            violations.append(Violation(
                kind="block",
                block=block,
                detail=f"block {block} weighs {weight} > L_max {l_max:.2f}",
            ))
        elif weight == 0 and k > 1:
            warnings.append(f"block {block} is empty")

    for message in warnings:
        logger.warning(message)

    valid = not any(v.kind in ("edge", "cache") for v in violations)
    return ValidityReport(valid=valid, balanced=balanced, violations=violations, warnings=warnings)
