"""Separator decompositions: balanced-separator search and recursive construction.

A separator decomposition is a full binary tree of (V_i, S_i) pairs: the root
holds all vertices, leaves are empty, and at every internal node the separator
S_i splits V_i into the two children's vertex sets with no crossing edge.  Its
width is the maximum of |boundary(V_i)| and |S_i| over all nodes.

Balanced separators are found the standard FPT way: enumerate the trace
{S_W, X_W, Y_W} of the separator on the target set W, then complete each trace
with a minimum X-Y vertex cut computed by unit-capacity max-flow on the
vertex-split graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import InvalidArgumentError, ResourceExhaustedError
from .graphcore import Graph, vertex_boundary


@dataclass(frozen=True)
class BalancedSeparator:
    """A separator splitting W into two sides of at most two thirds each.

    ``x_side``/``y_side`` extend the W-restricted sides ``x_w``/``y_w`` to a full
    partition of the remaining vertices, as needed by the recursive construction.
    """

    w_set: frozenset
    separator: frozenset
    x_w: frozenset
    y_w: frozenset
    x_side: frozenset
    y_side: frozenset


@dataclass(frozen=True)
class DecompositionNode:
    id: int
    parent: Optional[int]
    v_set: frozenset
    s_set: frozenset
    children: tuple = ()

    def is_leaf(self):
        return not self.children


@dataclass
class SeparatorDecomposition:
    nodes: list
    width: int
    s_param: Optional[int] = None

    @property
    def root(self) -> DecompositionNode:
        return self.nodes[0]

    def __iter__(self):
        return iter(self.nodes)

    def to_text(self) -> str:
        lines = []
        for node in self.nodes:
            pid = "-" if node.parent is None else str(node.parent)
            vs = ",".join(str(v) for v in sorted(node.v_set))
            ss = ",".join(str(v) for v in sorted(node.s_set))
            lines.append(f"node {node.id} parent {pid} V {{{vs}}} S {{{ss}}}")
        lines.append(f"width {self.width}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# minimum vertex cut via vertex-split max-flow

_COST_BASE = 1 << 20  # cardinality dominates; per-vertex costs only break ties


def _min_vertex_cut(graph: Graph, removed, x_set, y_set, budget, costs=None):
    """Smallest vertex set (disjoint from x/y) cutting X from Y in G - removed.

    Returns (cut, reachable_vertices) or None when every cut exceeds ``budget``
    vertices.  With ``costs`` given, ties between minimum-cardinality cuts are
    broken toward vertices of smaller cost.
    """
    alive = [v for v in range(graph.n) if v not in removed]
    index = {v: i for i, v in enumerate(alive)}
    unit = _COST_BASE if costs is not None else 1
    cost_cap = _COST_BASE // (graph.n + 2)
    big = unit * (graph.n + 5)
    node_count = 2 * len(alive) + 2
    src = node_count - 2
    snk = node_count - 1
    adj = [[] for _ in range(node_count)]

    def add_arc(a, b, cap):
        adj[a].append([b, cap, len(adj[b])])
        adj[b].append([a, 0, len(adj[a]) - 1])

    for v in alive:
        i = index[v]
        if v in x_set or v in y_set:
            cap = big
        elif costs is None:
            cap = 1
        else:
            cap = unit + min(max(int(costs[v]), 0), cost_cap)
        add_arc(2 * i, 2 * i + 1, cap)
    for u, w in graph.edges:
        if u in removed or w in removed:
            continue
        add_arc(2 * index[u] + 1, 2 * index[w], big)
        add_arc(2 * index[w] + 1, 2 * index[u], big)
    for v in x_set:
        add_arc(src, 2 * index[v], big)
    for v in y_set:
        add_arc(2 * index[v] + 1, snk, big)

    flow = 0
    flow_limit = budget * unit + (unit - 1)  # any heavier flow needs > budget vertices
    while flow <= flow_limit:
        parent = [None] * node_count
        parent[src] = (src, -1)
        queue = deque([src])
        while queue and parent[snk] is None:
            a = queue.popleft()
            for idx, arc in enumerate(adj[a]):
                if arc[1] > 0 and parent[arc[0]] is None:
                    parent[arc[0]] = (a, idx)
                    queue.append(arc[0])
        if parent[snk] is None:
            break
        bottleneck = big
        b = snk
        while b != src:
            a, idx = parent[b]
            bottleneck = min(bottleneck, adj[a][idx][1])
            b = a
        b = snk
        while b != src:
            a, idx = parent[b]
            arc = adj[a][idx]
            arc[1] -= bottleneck
            adj[arc[0]][arc[2]][1] += bottleneck
            b = a
        flow += bottleneck
    if flow > flow_limit:
        return None

    reach = [False] * node_count
    reach[src] = True
    queue = deque([src])
    while queue:
        a = queue.popleft()
        for arc in adj[a]:
            if arc[1] > 0 and not reach[arc[0]]:
                reach[arc[0]] = True
                queue.append(arc[0])
    cut = frozenset(v for v in alive if reach[2 * index[v]] and not reach[2 * index[v] + 1])
    if len(cut) > budget:
        return None
    reachable = frozenset(v for v in alive if reach[2 * index[v]] and v not in cut)
    return cut, reachable


def _components(graph: Graph):
    seen = [False] * graph.n
    comps = []
    for start in range(graph.n):
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            v = queue.popleft()
            comp.append(v)
            for u in graph.neighbors(v):
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
        comps.append(frozenset(comp))
    return comps


def _component_split(graph: Graph, w_sorted):
    """An empty separator splitting W across connected components, if balance allows."""
    comps = _components(graph)
    w_set = set(w_sorted)
    counts = [len(c & w_set) for c in comps]
    if sum(1 for c in counts if c) < 2:
        return None
    total = len(w_set)
    lo = -(-total // 3)  # ceil(total/3): both sides <= 2/3 total
    hi = 2 * total // 3
    # subset-sum over component counts, tracking one witness subset
    witness = {0: ()}
    for i, c in enumerate(counts):
        new = {}
        for t, sub in witness.items():
            if t + c not in witness and t + c not in new and t + c <= total:
                new[t + c] = sub + (i,)
        witness.update(new)
    choice = None
    for t in range(lo, hi + 1):
        if t in witness and 0 < t < total:
            choice = witness[t]
            break
    if choice is None:
        return None
    chosen = set(choice)
    x_side = frozenset().union(*(comps[i] for i in chosen))
    y_side = frozenset(v for v in range(graph.n) if v not in x_side)
    return BalancedSeparator(
        w_set=frozenset(w_set),
        separator=frozenset(),
        x_w=frozenset(x_side & w_set),
        y_w=frozenset(y_side & w_set),
        x_side=x_side,
        y_side=y_side,
    )


def balanced_separator(
    graph: Graph,
    w_vertices,
    s_max: int,
    *,
    component_fast_path: bool = True,
    vertex_costs=None,
    must_split=None,
) -> Optional[BalancedSeparator]:
    """Find a balanced W-separator of size at most s_max, or None.

    Enumerates {S_W, X_W, Y_W} partitions of W (smallest S_W first, then
    lexicographic) and completes each with a minimum X-Y vertex cut; the first
    acceptable partition wins.  A trivial empty separator between connected
    components is taken before any flow search unless disabled.

    With ``vertex_costs``, the accepted separator is post-processed by local
    search (dropping redundant vertices, swapping vertices for cheaper
    neighbors) to steer the downstream dynamic program away from
    high-branching vertices; every improvement step re-validates balance.
    """
    w_sorted = sorted(set(w_vertices))
    if len(w_sorted) < 2:
        raise InvalidArgumentError("balanced separator needs |W| >= 2")
    total = len(w_sorted)
    limit = 2 * total  # balance: 3|X|,3|Y| <= 2|W|

    if component_fast_path:
        comp_split = _component_split(graph, w_sorted)
        if comp_split is not None:
            return comp_split

    neighbor = graph.neighbors
    for s_size in range(min(s_max, total - 2) + 1):
        for s_w in combinations(w_sorted, s_size):
            s_w_set = set(s_w)
            rest = [v for v in w_sorted if v not in s_w_set]
            if len(rest) < 2:
                continue
            anchor, others = rest[0], rest[1:]
            for mask in range(1 << len(others)):
                x_w = {anchor}
                y_w = set()
                for i, v in enumerate(others):
                    (y_w if mask >> i & 1 else x_w).add(v)
                if not y_w or 3 * len(x_w) > limit or 3 * len(y_w) > limit:
                    continue
                if any(u in neighbor(v) for v in x_w for u in y_w):
                    continue
                got = _min_vertex_cut(graph, s_w_set, x_w, y_w, s_max - s_size, vertex_costs)
                if got is None:
                    continue
                cut, reachable = got
                separator = frozenset(s_w_set) | cut
                x_side = reachable
                y_side = frozenset(
                    v for v in range(graph.n) if v not in separator and v not in x_side
                )
                found = BalancedSeparator(
                    w_set=frozenset(w_sorted),
                    separator=separator,
                    x_w=frozenset(x_w),
                    y_w=frozenset(y_w),
                    x_side=x_side,
                    y_side=y_side,
                )
                if vertex_costs is not None:
                    found = _improve_separator(graph, found, vertex_costs, must_split)
                return found
    return None


def _splits(sep: BalancedSeparator, region) -> bool:
    return sep.x_side & region != region and sep.y_side & region != region


def _rebalanced(graph: Graph, separator, w_set) -> Optional[BalancedSeparator]:
    """Rebuild a BalancedSeparator for a candidate vertex set, or None if unbalanced."""
    rest = w_set - separator
    if not rest:
        return None
    comps = _components_without(graph, separator)
    total = len(w_set)
    counts = [len(c & w_set) for c in comps]
    witness = {0: ()}
    for i, c in enumerate(counts):
        for t, sub in list(witness.items()):
            if t + c not in witness:
                witness[t + c] = sub + (i,)
    lo = max(1, len(rest) - 2 * total // 3)
    hi = min(2 * total // 3, len(rest) - 1)
    choice = None
    for t in range(lo, hi + 1):
        if t in witness:
            choice = witness[t]
            break
    if choice is None:
        return None
    chosen = set(choice)
    x_side = frozenset().union(*(comps[i] for i in chosen)) if chosen else frozenset()
    y_side = frozenset(v for v in range(graph.n) if v not in separator and v not in x_side)
    return BalancedSeparator(
        w_set=frozenset(w_set),
        separator=frozenset(separator),
        x_w=frozenset(x_side & w_set),
        y_w=frozenset(y_side & w_set),
        x_side=x_side,
        y_side=y_side,
    )


def _components_without(graph: Graph, removed):
    seen = set(removed)
    comps = []
    for start in range(graph.n):
        if start in seen:
            continue
        comp = []
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for u in graph.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        comps.append(frozenset(comp))
    return comps


def _components_within(graph: Graph, region):
    inside = set(region)
    comps = []
    seen = set()
    for start in sorted(inside):
        if start in seen:
            continue
        comp = []
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for u in graph.neighbors(v):
                if u in inside and u not in seen:
                    seen.add(u)
                    queue.append(u)
        comps.append(frozenset(comp))
    return comps


def _improve_separator(graph: Graph, sep: BalancedSeparator, costs, must_split=None) -> BalancedSeparator:
    """Greedy cost reduction: drop redundant separator vertices, then swap
    vertices for cheaper neighbors, re-validating balance (and, when given,
    that the ``must_split`` region still ends up split) at every step."""
    w_set = set(sep.w_set)

    def ok(candidate):
        return candidate is not None and (must_split is None or _splits(candidate, must_split))

    current = sep
    improved = True
    while improved:
        improved = False
        for v in sorted(current.separator, key=lambda v: -costs[v]):
            smaller = _rebalanced(graph, current.separator - {v}, w_set)
            if ok(smaller):
                current = smaller
                improved = True
                break
        if improved:
            continue
        for v in sorted(current.separator, key=lambda v: -costs[v]):
            for u in sorted(graph.neighbors(v)):
                if u in current.separator or costs[u] >= costs[v]:
                    continue
                swapped = _rebalanced(graph, current.separator - {v} | {u}, w_set)
                if ok(swapped):
                    current = swapped
                    improved = True
                    break
            if improved:
                break
    return current


# ---------------------------------------------------------------------------
# decomposition construction

def build_decomposition(
    graph: Graph, s: int, vertex_costs=None, base_size: Optional[int] = None
) -> Optional[SeparatorDecomposition]:
    """Recursively split the graph with balanced separators; width at most 6s on success.

    Regions of at most ``base_size`` vertices (default 4s) become base nodes
    with S_i = V_i.  Smaller base sizes keep every local subproblem tiny, which
    pays off for large domains; regions of at most 4s vertices that resist
    further splitting still fall back to a base node, so the width bound and
    the guarantee of success are those of the 4s construction either way.
    Optional per-vertex costs steer separator choice toward cheap vertices
    without affecting which values of s succeed.
    """
    if s < 1:
        raise InvalidArgumentError("separator parameter must be >= 1")
    n = graph.n
    w_size = min(6 * s, n)
    base = 4 * s if base_size is None else max(1, base_size)
    nodes = []

    def emit(parent, v_set, s_set, children):
        node = DecompositionNode(len(nodes), parent, v_set, s_set, children)
        nodes.append(node)
        return node.id

    def base_node(nid, parent, region):
        a = emit(nid, frozenset(), frozenset(), ())
        b = emit(nid, frozenset(), frozenset(), ())
        nodes[nid] = DecompositionNode(nid, parent, region, region, (a, b))
        return nid

    def attach(nid, parent, region, s_set, x, y) -> Optional[int]:
        a = rec(x, nid)
        if a is None:
            return None
        b = rec(y, nid)
        if b is None:
            return None
        nodes[nid] = DecompositionNode(nid, parent, region, s_set, (a, b))
        return nid

    def rec(region: frozenset, parent) -> Optional[int]:
        if not region:
            return emit(parent, frozenset(), frozenset(), ())
        nid = emit(parent, region, frozenset(), ())  # placeholder, patched below
        if len(region) <= base:
            return base_node(nid, parent, region)

        # a disconnected region splits for free, and child boundaries only shrink
        comps = _components_within(graph, region)
        if len(comps) >= 2:
            x = comps[0]
            y = frozenset(region - comps[0])
            return attach(nid, parent, region, frozenset(), x, y)

        boundary = vertex_boundary(graph, region)
        w = set(boundary)
        for v in sorted(region):
            if len(w) >= w_size:
                break
            w.add(v)
        if len(w) < w_size:
            for v in range(n):
                if len(w) >= w_size:
                    break
                w.add(v)
        sep = balanced_separator(graph, w, 2 * s, vertex_costs=vertex_costs, must_split=region)
        if sep is not None and not _splits(sep, region):
            # the component fast path may fail to split this region; the trace
            # enumeration with boundary-first padding always makes progress
            sep = balanced_separator(
                graph, w, 2 * s,
                component_fast_path=False, vertex_costs=vertex_costs, must_split=region,
            )
        if (sep is None or not _splits(sep, region)) and vertex_costs is not None:
            sep = balanced_separator(graph, w, 2 * s, component_fast_path=False)
        if sep is None or not _splits(sep, region):
            # guaranteed progress only holds for |R| > 4s; smaller stubborn
            # regions are peeled one vertex at a time while the width budget
            # allows, and become base nodes otherwise
            if len(region) > 4 * s:
                return None
            peeled = _peel(region, boundary)
            if peeled is None:
                return base_node(nid, parent, region)
            s_set, x, y = peeled
            return attach(nid, parent, region, s_set, x, y)
        s_set = sep.separator & region
        x = sep.x_side & region
        y = sep.y_side & region
        return attach(nid, parent, region, s_set, x, y)

    def _peel(region, boundary):
        if base >= 4 * s or len(region) < 2:
            return None
        order = sorted(region, key=lambda v: (-(vertex_costs[v] if vertex_costs else 0), v))
        for v in order:
            rest = frozenset(region - {v})
            comps = _components_within(graph, rest)
            x = comps[0] if len(comps) >= 2 else frozenset()
            y = frozenset(rest - x)
            if len(vertex_boundary(graph, x)) <= 6 * s and len(vertex_boundary(graph, y)) <= 6 * s:
                return frozenset({v}), x, y
        return None

    if rec(frozenset(range(n)), None) is None:
        return None
    width = 0
    for node in nodes:
        width = max(width, len(node.s_set), len(vertex_boundary(graph, node.v_set)))
    return SeparatorDecomposition(nodes, width, s_param=s)


def find_min_width(
    graph: Graph, s_cap: int, vertex_costs=None, base_size: Optional[int] = None
) -> tuple[SeparatorDecomposition, int]:
    """Try s = 1, 2, ... up to s_cap; return the first decomposition that succeeds."""
    if s_cap < 1:
        raise InvalidArgumentError("s_cap must be >= 1")
    for s in range(1, s_cap + 1):
        decomp = build_decomposition(graph, s, vertex_costs, base_size)
        if decomp is not None:
            return decomp, s
    raise ResourceExhaustedError(
        f"no separator decomposition found up to s={s_cap}", last_attempt=s_cap
    )


def validate(graph: Graph, decomp: SeparatorDecomposition) -> Optional[str]:
    """Check every decomposition invariant; None if ok, else the first violation."""
    nodes = decomp.nodes
    if not nodes:
        return "decomposition has no nodes"
    if nodes[0].v_set != frozenset(range(graph.n)):
        return "node 0: root vertex set is not V"
    if nodes[0].parent is not None:
        return "node 0: root must have no parent"
    width = 0
    for pos, node in enumerate(nodes):
        if node.id != pos:
            return f"node {node.id}: inconsistent id"
        if pos > 0 and node.parent is None:
            return f"node {node.id}: non-root without parent"
        if node.is_leaf():
            if node.v_set or node.s_set:
                return f"node {node.id}: leaf must have empty V and S"
            continue
        if len(node.children) != 2:
            return f"node {node.id}: internal node needs exactly 2 children"
        j, k = node.children
        if not (0 <= j < len(nodes) and 0 <= k < len(nodes)):
            return f"node {node.id}: child id out of range"
        vj, vk = nodes[j].v_set, nodes[k].v_set
        if nodes[j].parent != node.id or nodes[k].parent != node.id:
            return f"node {node.id}: child parent pointer mismatch"
        if vj & vk or vj & node.s_set or vk & node.s_set:
            return f"node {node.id}: children and separator overlap"
        if (vj | vk | node.s_set) != node.v_set:
            return f"node {node.id}: children and separator do not partition V_i"
        for u, w in graph.edges:
            if u in node.v_set and w in node.v_set:
                if (u in vj and w in vk) or (u in vk and w in vj):
                    return f"node {node.id}: edge ({u},{w}) crosses the separator"
        width = max(width, len(node.s_set))
    for node in nodes:
        width = max(width, len(vertex_boundary(graph, node.v_set)))
    if width != decomp.width:
        return f"recorded width {decomp.width} differs from actual {width}"
    return None
