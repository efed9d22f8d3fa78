"""Reachability helpers shared by the state graph and the symbolic graphs."""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Mapping

import networkx as nx


def reachable(succ: Mapping, sources: Iterable[Hashable]) -> set:
    seen = set(sources)
    todo = deque(seen)
    while todo:
        v = todo.popleft()
        for w in succ.get(v, ()):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def reverse(succ: Mapping) -> dict:
    pred: dict = {}
    for v, ws in succ.items():
        for w in ws:
            pred.setdefault(w, set()).add(v)
    return pred


def cyclic_nodes(succ: Mapping, nodes: Iterable[Hashable]) -> set:
    """Nodes among ``nodes`` that lie on a directed cycle inside ``nodes``."""
    nodes = set(nodes)
    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    g.add_edges_from((v, w) for v in nodes for w in succ.get(v, ()) if w in nodes)
    out = set()
    for comp in nx.strongly_connected_components(g):
        if len(comp) > 1:
            out |= comp
        else:
            (v,) = comp
            if g.has_edge(v, v):
                out.add(v)
    return out


def downstream_of_cycles(succ: Mapping, start: Hashable) -> set:
    """Nodes reachable from ``start`` by some path that repeats a node."""
    reach = reachable(succ, [start])
    return reachable(succ, cyclic_nodes(succ, reach))
