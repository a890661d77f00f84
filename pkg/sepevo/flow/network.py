# sepevo/flow/network.py

from collections import deque
from typing import List


class FlowNetwork:
    """
    Directed network with integer capacities solved by Dinic's algorithm: BFS level graph,
    then blocking flow by an iterative DFS with a current-arc pointer per node.
    Arc 2i is a forward arc and 2i+1 its residual twin.
    """

    def __init__(self, num_nodes: int):
        self.num_nodes = num_nodes
        self.adj: List[List[int]] = [[] for _ in range(num_nodes)]
        self.to: List[int] = []
        self.cap: List[int] = []
        self.flow_value = 0

    def add_arc(self, u: int, v: int, capacity: int) -> int:
        arc = len(self.to)
        self.to.extend((v, u))
        self.cap.extend((capacity, 0))
        self.adj[u].append(arc)
        self.adj[v].append(arc + 1)
        return arc

    # ========== Dinic ==========

    def _levels(self, source: int, sink: int) -> List[int]:
        level = [-1] * self.num_nodes
        level[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            if u == sink:
                break
            for arc in self.adj[u]:
                v = self.to[arc]
                if self.cap[arc] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level

    def _blocking_flow(self, source: int, sink: int, level: List[int]) -> int:
        to, cap, adj = self.to, self.cap, self.adj
        ptr = [0] * self.num_nodes
        total = 0
        stack = [source]
        path: List[int] = []
        while stack:
            u = stack[-1]
            if u == sink:
                pushed = min(cap[a] for a in path)
                for a in path:
                    cap[a] -= pushed
                    cap[a ^ 1] += pushed
                total += pushed
                stack, path = [source], []
                continue
            arcs = adj[u]
            while ptr[u] < len(arcs):
                a = arcs[ptr[u]]
                v = to[a]
                if cap[a] > 0 and level[v] == level[u] + 1:
                    stack.append(v)
                    path.append(a)
                    break
                ptr[u] += 1
            else:
                # dead end
                level[u] = -1
                stack.pop()
                if path:
                    path.pop()
        return total

    def max_flow(self, source: int, sink: int) -> int:
        if source == sink:
            raise ValueError("source and sink must differ")
        while True:
            level = self._levels(source, sink)
            if level[sink] < 0:
                return self.flow_value
            self.flow_value += self._blocking_flow(source, sink, level)

    # ========== Residual reachability ==========

    def reachable_from(self, source: int) -> List[bool]:
        seen = [False] * self.num_nodes
        seen[source] = True
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for arc in self.adj[u]:
                v = self.to[arc]
                if self.cap[arc] > 0 and not seen[v]:
                    seen[v] = True
                    queue.append(v)
        return seen

    def reaching(self, sink: int) -> List[bool]:
        """Nodes with a residual path into `sink`."""
        seen = [False] * self.num_nodes
        seen[sink] = True
        queue = deque([sink])
        while queue:
            v = queue.popleft()
            for arc in self.adj[v]:
                u = self.to[arc]
                if self.cap[arc ^ 1] > 0 and not seen[u]:
                    seen[u] = True
                    queue.append(u)
        return seen
