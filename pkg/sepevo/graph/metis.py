# sepevo/graph/metis.py

import logging
from pathlib import Path
from typing import Dict, List, TextIO, Tuple, Union

from sepevo.errors import GraphFormatError
from sepevo.graph.core import Graph, SeparatorSolution

logger = logging.getLogger(__name__)

# ========== Reader ==========

def _is_comment(line: str) -> bool:
    return line.lstrip().startswith("%")


def _parse_ints(line: str, lineno: int) -> List[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise GraphFormatError(f"non-integer token in {line.strip()!r}", lineno)


def load_metis(text: Union[str, TextIO]) -> Graph:
    """
    Parse a METIS/Chaco graph. Supports fmt codes 0, 1, 10 and 11; parallel edges are
    merged by summing their weights, self-loops and asymmetric adjacency are rejected.
    """
    if not isinstance(text, str):
        text = text.read()
    lines = text.splitlines()

    pos = 0
    while pos < len(lines) and (not lines[pos].strip() or _is_comment(lines[pos])):
        pos += 1
    if pos == len(lines):
        raise GraphFormatError("malformed header: file is empty", 1)

    header_line = pos + 1
    header = lines[pos].split()
    if len(header) < 2 or len(header) > 4:
        raise GraphFormatError("malformed header: expected 'n m [fmt [ncon]]'", header_line)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphFormatError("malformed header: n and m must be integers", header_line)
    if n < 0 or m < 0:
        raise GraphFormatError("malformed header: negative counts", header_line)

    fmt = header[2] if len(header) > 2 else "0"
    if len(fmt) > 3 or any(ch not in "01" for ch in fmt):
        raise GraphFormatError(f"malformed header: unknown fmt code {fmt!r}", header_line)
    fmt = fmt.zfill(3)
    if fmt[0] == "1":
        raise GraphFormatError("malformed header: node sizes (fmt 100) are not supported", header_line)
    has_node_weights = fmt[1] == "1"
    has_edge_weights = fmt[2] == "1"
    if len(header) == 4 and header[3] != "1":
        raise GraphFormatError("malformed header: only ncon = 1 is supported", header_line)

    node_weight = [1] * n
    directed: Dict[Tuple[int, int], int] = {}
    first_seen: Dict[Tuple[int, int], int] = {}
    pos += 1
    node = 0
    while node < n:
        if pos >= len(lines):
            raise GraphFormatError(f"expected {n} adjacency lines, found {node}", pos)
        raw = lines[pos]
        lineno = pos + 1
        pos += 1
        if _is_comment(raw):
            continue
        tokens = _parse_ints(raw, lineno)
        if has_node_weights:
            if not tokens:
                raise GraphFormatError("missing node weight", lineno)
            node_weight[node] = tokens[0]
            if tokens[0] < 1:
                raise GraphFormatError(f"node weight {tokens[0]} must be at least 1", lineno)
            tokens = tokens[1:]
        if has_edge_weights:
            if len(tokens) % 2:
                raise GraphFormatError("missing edge weight", lineno)
            pairs = list(zip(tokens[0::2], tokens[1::2]))
        else:
            pairs = [(t, 1) for t in tokens]
        for target, weight in pairs:
            if target < 1 or target > n:
                raise GraphFormatError(f"index out of range ({target} not in 1..{n})", lineno)
            if target - 1 == node:
                raise GraphFormatError(f"self-loop at node {target}", lineno)
            if weight < 1:
                raise GraphFormatError(f"edge weight {weight} must be at least 1", lineno)
            key = (node, target - 1)
            directed[key] = directed.get(key, 0) + weight
            first_seen.setdefault(key, lineno)
        node += 1

    for rest in range(pos, len(lines)):
        if lines[rest].strip() and not _is_comment(lines[rest]):
            raise GraphFormatError(f"more than {n} adjacency lines", rest + 1)

    sources, targets, weights = [], [], []
    for (u, v), w in directed.items():
        if directed.get((v, u)) != w:
            raise GraphFormatError(
                f"asymmetric adjacency: {u + 1} -> {v + 1} has weight {w}, "
                f"reverse is {directed.get((v, u), 'missing')}",
                first_seen[(u, v)],
            )
        if u < v:
            sources.append(u)
            targets.append(v)
            weights.append(w)

    if len(sources) != m:
        logger.warning("header announces %d edges, found %d after merging parallel edges", m, len(sources))
    return Graph.from_edges(n, sources, targets, weights, node_weight)


def read_metis(path: Union[str, Path]) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise GraphFormatError(f"cannot read {path}: {e}")
    return load_metis(text)

# ========== Writer ==========

def write_metis(g: Graph) -> str:
    has_node_weights = bool((g.node_weight != 1).any())
    has_edge_weights = bool((g.edge_weight != 1).any())
    header = f"{g.n} {g.m}"
    if has_node_weights:
        header += " 11" if has_edge_weights else " 10"
    elif has_edge_weights:
        header += " 1"

    out = [header]
    for v in range(g.n):
        tokens = [str(g.weights[v])] if has_node_weights else []
        for u, w in zip(g.adjacency[v], g.adjacency_weights[v]):
            tokens.append(str(u + 1))
            if has_edge_weights:
                tokens.append(str(w))
        out.append(" ".join(tokens))
    return "\n".join(out) + "\n"

# ========== Separator Files ==========

def write_separator(sol: SeparatorSolution) -> str:
    lines = [f"{sol.n} {sol.k} {sol.separator_weight}"]
    lines.extend(str(label) for label in sol.assignment)
    return "\n".join(lines) + "\n"


def read_separator(text: str, g: Graph, epsilon: float) -> SeparatorSolution:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise GraphFormatError("empty separator file", 1)
    header = _parse_ints(lines[0], 1)
    if len(header) != 3:
        raise GraphFormatError("separator header must be 'n k separator_weight'", 1)
    n, k, weight = header
    if n != g.n:
        raise GraphFormatError(f"separator file is for {n} nodes, graph has {g.n}", 1)
    if len(lines) - 1 != n:
        raise GraphFormatError(f"expected {n} labels, found {len(lines) - 1}", len(lines))
    labels = []
    for i, line in enumerate(lines[1:]):
        try:
            labels.append(int(line))
        except ValueError:
            raise GraphFormatError(f"non-integer label {line.strip()!r}", i + 2)
    sol = SeparatorSolution.for_graph(g, labels, k, epsilon)
    if sol.separator_weight != weight:
        raise GraphFormatError(f"header weight {weight} differs from labels ({sol.separator_weight})", 1)
    return sol
