"""Graph orientation solvers: prescribed in-degree vectors, dec-min
orientations (plain, degree-bounded, T-specified, capacitated,
k-edge-connected), the orientation form of the canonical decomposition,
and cheapest dec-min bounded orientations.

The in-degree vectors of orientations of G are the integral points of the
base-polyhedron of the induced-edge-count function, so every solver here
is an instance of the generic engine with reachability standing in for
tight-set oracles: reversing an s->t dipath is exactly the exchange
m + chi_s - chi_t.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import netflow
from .core import (
    BaseHandle,
    CeilingExceeded,
    GraphInducedOracle,
    NEG_INF,
    POS_INF,
    as_intvec,
    register_fast_path,
)
from .canonical import CanonicalDecomposition
from .netflow import Digraph, FlowProblem, arc_disjoint_paths_at_least


class InfeasibleOrientationError(RuntimeError):
    """No orientation satisfies the requirements; carries a witness set."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotDecMinOrientationError(ValueError):
    pass


@dataclass
class Graph:
    """Undirected multigraph; optional per-edge capacities and per-direction
    costs: cost[j] = (price when u is the head, price when v is the head)
    for edge j = (u, v)."""

    n: int
    edges: list
    ell: Optional[np.ndarray] = None
    cost: Optional[list] = None

    def __post_init__(self):
        self.edges = [(int(u), int(v)) for u, v in self.edges]
        for u, v in self.edges:
            if u == v:
                raise ValueError("loops are not allowed")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError("edge endpoint out of range")
        if self.ell is not None:
            self.ell = as_intvec(self.ell, len(self.edges))
            if np.any(self.ell < 1):
                raise ValueError("edge capacities must be >= 1")
        if self.cost is not None:
            self.cost = [(int(a), int(b)) for a, b in self.cost]
            if len(self.cost) != len(self.edges):
                raise ValueError("one cost pair per edge required")

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return d

    def induced_oracle(self) -> GraphInducedOracle:
        return GraphInducedOracle(self.n, self.edges, self.ell)

    def expand(self) -> "Graph":
        """Replace each edge by ell(e) parallel copies (drops capacities)."""
        if self.ell is None:
            return Graph(self.n, list(self.edges))
        out = []
        for (u, v), k in zip(self.edges, self.ell):
            out.extend([(u, v)] * int(k))
        return Graph(self.n, out)


@dataclass
class OrientationSpec:
    """What to solve: in-degree bounds, exact specification on a node set,
    connectivity requirement, and the objective."""

    lower: Optional[np.ndarray] = None
    upper: Optional[np.ndarray] = None
    t_set: Optional[frozenset] = None
    t_degrees: Optional[np.ndarray] = None
    connectivity: int = 0
    objective: str = "decmin"  # decmin | cheapest-decmin | min-indeg-T

    def __post_init__(self):
        if self.objective not in ("decmin", "cheapest-decmin", "min-indeg-T"):
            raise ValueError(f"unknown objective {self.objective!r}")


def solve_orientation_spec(G: Graph, spec: OrientationSpec):
    """Dispatch an OrientationSpec to the matching solver."""
    lower, upper = spec.lower, spec.upper
    if spec.t_degrees is not None:
        t_nodes = sorted(spec.t_set or range(len(spec.t_degrees)))
        lower = np.full(G.n, NEG_INF) if lower is None else np.asarray(lower, float)
        upper = np.full(G.n, POS_INF) if upper is None else np.asarray(upper, float)
        for v, d in zip(t_nodes, spec.t_degrees):
            lower[v] = upper[v] = int(d)
    if spec.objective == "min-indeg-T":
        if spec.t_set is None:
            raise ValueError("min-indeg-T needs a node set")
        return decmin_orientation_minT(G, lower, upper, spec.t_set)
    if spec.objective == "cheapest-decmin":
        if spec.connectivity:
            raise ValueError("costs and connectivity cannot be combined")
        return cheapest_decmin_orientation_bounded(G, lower, upper, G.cost)
    if spec.connectivity > 0:
        return decmin_korient(G, spec.connectivity, lower, upper)
    if lower is None and upper is None:
        return decmin_orientation(G)
    return decmin_orientation_bounded(G, lower, upper)


@dataclass
class Orientation:
    """An orientation of every edge copy; heads[j] is the head of edge j."""

    graph: Graph
    heads: np.ndarray

    def __post_init__(self):
        self.heads = as_intvec(self.heads, self.graph.m)
        for (u, v), h in zip(self.graph.edges, self.heads):
            if h != u and h != v:
                raise ValueError("head must be one of the edge endpoints")

    @property
    def indeg(self) -> np.ndarray:
        d = np.zeros(self.graph.n, dtype=np.int64)
        for h in self.heads:
            d[h] += 1
        return d

    @property
    def outdeg(self) -> np.ndarray:
        return self.graph.degrees() - self.indeg

    def arcs(self) -> list:
        return [
            ((v if h == u else u), int(h))
            for (u, v), h in zip(self.graph.edges, self.heads)
        ]

    def digraph(self) -> Digraph:
        return Digraph(self.graph.n, self.arcs(), np.ones(self.graph.m, np.int64))


@dataclass
class CapacitatedOrientation:
    """Orientation of the ell(e)-fold parallel class of each edge:
    toward_head[j] copies of edge j = (u, v) get head v, the rest head u."""

    graph: Graph
    toward_head: np.ndarray

    def __post_init__(self):
        self.toward_head = as_intvec(self.toward_head, self.graph.m)
        ell = self.graph.ell
        if ell is None:
            ell = np.ones(self.graph.m, dtype=np.int64)
        if np.any(self.toward_head < 0) or np.any(self.toward_head > ell):
            raise ValueError("copy counts must lie in [0, ell]")

    @property
    def indeg(self) -> np.ndarray:
        ell = self.graph.ell
        if ell is None:
            ell = np.ones(self.graph.m, dtype=np.int64)
        d = np.zeros(self.graph.n, dtype=np.int64)
        for (u, v), z, k in zip(self.graph.edges, self.toward_head, ell):
            d[v] += int(z)
            d[u] += int(k - z)
        return d


# ---------------------------------------------------------------------------
# constructing orientations with a prescribed in-degree vector
# ---------------------------------------------------------------------------


def orient_with_indegrees(G: Graph, m) -> Orientation:
    """An orientation whose in-degree vector is m, or
    InfeasibleOrientationError carrying a set X with m~(X) < i_G(X)."""
    m = as_intvec(m, G.n)
    if int(m.sum()) != G.m:
        raise ValueError("in-degree sum must equal the number of edges")
    if np.any(m < 0):
        v = int(np.argmin(m))
        raise InfeasibleOrientationError(
            f"negative in-degree at node {v}", witness=frozenset({v})
        )
    # bipartite-style flow: edge j must push its unit into one endpoint
    n, mm = G.n, G.m
    src, snk = n + mm, n + mm + 1
    arcs = []
    caps = []
    for j, (u, v) in enumerate(G.edges):
        arcs.append((src, n + j))
        caps.append(1)
        arcs.append((n + j, u))
        caps.append(1)
        arcs.append((n + j, v))
        caps.append(1)
    for v in range(n):
        arcs.append((v, snk))
        caps.append(int(m[v]))
    D = Digraph(n + mm + 2, arcs, np.array(caps, dtype=np.int64))
    value, flow, cut = netflow.max_flow(D, src, snk)
    if value == G.m:
        heads = np.zeros(mm, dtype=np.int64)
        for j, (u, v) in enumerate(G.edges):
            heads[j] = u if flow[3 * j + 1] == 1 else v
        return Orientation(G, heads)
    witness = frozenset(v for v in cut if v < n)
    if _ig(G, witness) <= sum(int(m[v]) for v in witness):
        witness = _brute_ig_witness(G, m)
    raise InfeasibleOrientationError(
        "no orientation matches the in-degree vector", witness=witness
    )


def _ig(G: Graph, X) -> int:
    return sum(1 for u, v in G.edges if u in X and v in X)


def _brute_ig_witness(G: Graph, m) -> frozenset:
    if G.n > 22:
        raise CeilingExceeded("witness scan too large")
    best = None
    for mask in range(1, 1 << G.n):
        X = frozenset(v for v in range(G.n) if mask >> v & 1)
        gap = _ig(G, X) - sum(int(m[v]) for v in X)
        if gap > 0 and (best is None or gap > best[0]):
            best = (gap, X)
    if best is None:
        raise RuntimeError("flow said infeasible but no violating set exists")
    return best[1]


# ---------------------------------------------------------------------------
# dec-min orientations via improving dipath reversals
# ---------------------------------------------------------------------------


def _adjacency(orient: Orientation):
    adj = [[] for _ in range(orient.graph.n)]
    for j, (tail, head) in enumerate(orient.arcs()):
        adj[tail].append((head, j))
    return adj


def _reach_from(adj, s: int, n: int, allowed=None) -> np.ndarray:
    seen = np.zeros(n, dtype=bool)
    seen[s] = True
    stack = [s]
    while stack:
        u = stack.pop()
        for v, j in adj[u]:
            if allowed is not None and not allowed[j]:
                continue
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    return seen


def _find_path(adj, s: int, t: int, n: int, allowed=None):
    """BFS dipath from s to t as a list of edge ids, or None."""
    prev = {s: (None, None)}
    queue = [s]
    while queue:
        nxt = []
        for u in queue:
            for v, j in adj[u]:
                if allowed is not None and not allowed[j]:
                    continue
                if v not in prev:
                    prev[v] = (u, j)
                    if v == t:
                        path = []
                        while v != s:
                            u0, j0 = prev[v]
                            path.append(j0)
                            v = u0
                        return path[::-1]
                    nxt.append(v)
        queue = nxt
    return None


def _reverse_path(orient: Orientation, path):
    for j in path:
        u, v = orient.graph.edges[j]
        orient.heads[j] = u if orient.heads[j] == v else v


def _improve_to_decmin(orient: Orientation, lower, upper, connectivity=0,
                       allowed_fn=None):
    """Reverse improving dipaths until none exists.  An s->t dipath is
    improving when indeg(t) >= indeg(s) + 2, t is above its lower bound, s
    below its upper bound and, for connectivity k, at least k+1
    arc-disjoint s->t dipaths exist (so one reversal keeps every cut
    in-degree at k or more)."""
    n = orient.graph.n
    while True:
        deg = orient.indeg
        adj = _adjacency(orient)
        radj = [[] for _ in range(n)]
        for u in range(n):
            for v, j in adj[u]:
                radj[v].append((u, j))
        allowed = allowed_fn(orient) if allowed_fn is not None else None
        improved = False
        for t in sorted(range(n), key=lambda v: (-int(deg[v]), v)):
            if deg[t] - 1 < lower[t]:
                continue
            reach = _reach_from(radj, t, n, allowed)
            cands = [
                s
                for s in range(n)
                if s != t and reach[s] and deg[s] + 1 <= upper[s]
                and deg[t] - deg[s] >= 2
            ]
            for s in sorted(cands, key=lambda v: (int(deg[v]), v)):
                if connectivity > 0 and not arc_disjoint_paths_at_least(
                    orient.digraph(), s, t, connectivity + 1
                ):
                    continue
                path = _find_path(adj, s, t, n, allowed)
                if path is None:
                    continue
                _reverse_path(orient, path)
                improved = True
                break
            if improved:
                break
        if not improved:
            return orient


def _has_improving_dipath(orient: Orientation, lower, upper, connectivity=0,
                          allowed_fn=None) -> bool:
    n = orient.graph.n
    deg = orient.indeg
    adj = _adjacency(orient)
    allowed = allowed_fn(orient) if allowed_fn is not None else None
    for s in range(n):
        if deg[s] + 1 > upper[s]:
            continue
        reach = _reach_from(adj, s, n, allowed)
        for t in range(n):
            if t == s or not reach[t]:
                continue
            if deg[t] - deg[s] < 2 or deg[t] - 1 < lower[t]:
                continue
            if connectivity > 0 and not arc_disjoint_paths_at_least(
                orient.digraph(), s, t, connectivity + 1
            ):
                continue
            return True
    return False


def _resolve_bounds(G: Graph, lower, upper):
    deg = G.degrees()
    lo = np.zeros(G.n, dtype=np.int64)
    hi = deg.copy()
    if lower is not None:
        lraw = np.asarray(lower, dtype=np.float64)
        lo = np.maximum(lo, np.where(np.isfinite(lraw), lraw, 0)).astype(np.int64)
    if upper is not None:
        uraw = np.asarray(upper, dtype=np.float64)
        hi = np.minimum(hi, np.where(np.isfinite(uraw), uraw, deg)).astype(np.int64)
    return lo, hi


def _initial_bounded(G: Graph, lo, hi) -> Orientation:
    """Any (lo, hi)-bounded orientation via one feasibility flow."""
    if np.any(lo > hi):
        bad = frozenset(int(v) for v in np.flatnonzero(lo > hi))
        raise InfeasibleOrientationError("empty in-degree box", witness=bad)
    n, mm = G.n, G.m
    src, snk = n + mm, n + mm + 1
    arcs = [(src, n + j) for j in range(mm)]
    lows = [1] * mm
    caps = [1] * mm
    for j, (u, v) in enumerate(G.edges):
        arcs.append((n + j, u))
        lows.append(0)
        caps.append(1)
        arcs.append((n + j, v))
        lows.append(0)
        caps.append(1)
    for v in range(n):
        arcs.append((v, snk))
        lows.append(int(lo[v]))
        caps.append(int(hi[v]))
    arcs.append((snk, src))
    lows.append(mm)
    caps.append(mm)
    target = np.zeros(n + mm + 2, dtype=np.int64)
    P = FlowProblem(
        Digraph(n + mm + 2, arcs, np.array(caps, dtype=np.int64)),
        np.array(lows, dtype=np.int64),
        np.array(caps, dtype=np.int64),
        target,
    )
    res = netflow.feasible_m_flow(P)
    if not res.feasible:
        witness = frozenset(v for v in res.witness if v < n)
        raise InfeasibleOrientationError(
            "no in-degree-bounded orientation exists", witness=witness
        )
    heads = np.zeros(mm, dtype=np.int64)
    for j, (u, v) in enumerate(G.edges):
        heads[j] = u if res.flow[mm + 2 * j] == 1 else v
    return Orientation(G, heads)


def decmin_orientation(G: Graph) -> Orientation:
    """Orientation whose in-degree vector is decreasingly minimal: reverse
    any dipath whose end in-degree exceeds its start in-degree by 2+."""
    orient = Orientation(G, np.array([v for _, v in G.edges], dtype=np.int64))
    lo = np.zeros(G.n, dtype=np.int64)
    hi = G.degrees()
    return _improve_to_decmin(orient, lo, hi)


def decmin_orientation_bounded(G: Graph, lower=None, upper=None) -> Orientation:
    """Dec-min among orientations with f(v) <= indeg(v) <= g(v)."""
    lo, hi = _resolve_bounds(G, lower, upper)
    if np.any(lo > hi):
        bad = frozenset(int(v) for v in np.flatnonzero(lo > hi))
        raise InfeasibleOrientationError("empty in-degree box", witness=bad)
    orient = _initial_bounded(G, lo, hi)
    return _improve_to_decmin(orient, lo, hi)


def decmin_orientation_tspec(G: Graph, t_set, t_degrees) -> Orientation:
    """Dec-min among orientations with exact in-degrees on the nodes of
    t_set (a T-specified orientation)."""
    t_set = sorted(set(int(v) for v in t_set))
    spec = as_intvec(t_degrees, len(t_set))
    lo = np.full(G.n, -np.inf)
    hi = np.full(G.n, np.inf)
    for v, d in zip(t_set, spec):
        lo[v] = hi[v] = int(d)
    return decmin_orientation_bounded(G, lo, hi)


def orientation_canonical(
    G: Graph, orient: Orientation, lower=None, upper=None
) -> CanonicalDecomposition:
    """Canonical chain/partition/value-sequence read off a dec-min
    orientation, with smallest tight sets realized as reachability sets
    (in-degree-zero sets are exactly the tight ones)."""
    lo, hi = _resolve_bounds(G, lower, upper)
    deg = orient.indeg
    if np.any(deg < lo) or np.any(deg > hi):
        raise NotDecMinOrientationError("orientation violates the bounds")
    if _has_improving_dipath(orient, lo, hi):
        raise NotDecMinOrientationError("orientation is not dec-min")
    n = G.n
    adj = _adjacency(orient)
    radj = [[] for _ in range(n)]
    for u in range(n):
        for v, j in adj[u]:
            radj[v].append((u, j))

    def tight(t: int) -> frozenset:
        if deg[t] == lo[t]:
            return frozenset({t})
        reach = _reach_from(radj, t, n)
        return frozenset(
            s
            for s in range(n)
            if reach[s] and (s == t or deg[s] < hi[s])
        )

    tights = {t: tight(t) for t in range(n)}
    chain, partition, betas, counts = [], [], [], []
    covered = frozenset()
    while len(covered) < n:
        beta = max(int(deg[v]) for v in range(n) if v not in covered)
        members = set()
        for u in range(n):
            if deg[u] >= beta:
                members |= tights[u]
        ci = frozenset(members)
        si = ci - covered
        betas.append(beta)
        chain.append(ci)
        partition.append(si)
        counts.append(sum(1 for v in si if deg[v] == beta))
        covered = ci
    delta = np.zeros(n, dtype=np.int64)
    pi = np.zeros(n, dtype=np.int64)
    value_fixed = []
    for i, si in enumerate(partition):
        for v in si:
            delta[v] = betas[i] - 1
            pi[v] = 2 * betas[i] - 1
        fixed = set()
        for s in si:
            if deg[s] != betas[i]:
                continue
            if all(deg[v] == betas[i] for v in tights[s] & si):
                fixed.add(s)
        value_fixed.append(frozenset(fixed))
    return CanonicalDecomposition(
        n=n,
        chain=chain,
        partition=partition,
        betas=betas,
        counts=counts,
        delta_star=delta,
        pi_star=pi,
        value_fixed=value_fixed,
        witness=deg.copy(),
    )


# ---------------------------------------------------------------------------
# cheapest dec-min bounded orientations
# ---------------------------------------------------------------------------


def _min_cost_orientation(G: Graph, lo, hi, cost, fixed_heads: dict, blocks=None):
    """Min-cost orientation within per-node in-degree bounds, with some
    edges pre-oriented (the mixed-graph min-cost subroutine) and, when
    ``blocks`` is given, exact in-degree sums over node blocks.  The flow
    network is a DAG, so arbitrary integer costs are safe."""
    n, mm = G.n, G.m
    src, snk = n + mm, n + mm + 1
    base = n + mm + 2
    extra = 0 if blocks is None else len(blocks)
    arcs = [(src, n + j) for j in range(mm)]
    lows = [1] * mm
    caps = [1] * mm
    costs = [0] * mm
    for j, (u, v) in enumerate(G.edges):
        cu, cv = (0, 0) if cost is None else cost[j]
        allowed = fixed_heads.get(j)
        for endpoint, w in ((u, cu), (v, cv)):
            arcs.append((n + j, endpoint))
            lows.append(0)
            caps.append(1 if allowed in (None, endpoint) else 0)
            costs.append(int(w))
    if blocks is None:
        for v in range(n):
            arcs.append((v, snk))
            lows.append(int(lo[v]))
            caps.append(int(hi[v]))
            costs.append(0)
    else:
        for i, (members, sigma) in enumerate(blocks):
            for v in members:
                arcs.append((v, base + i))
                lows.append(int(lo[v]))
                caps.append(int(hi[v]))
                costs.append(0)
            arcs.append((base + i, snk))
            lows.append(int(sigma))
            caps.append(int(sigma))
            costs.append(0)
    arcs.append((snk, src))
    lows.append(mm)
    caps.append(mm)
    costs.append(0)
    P = FlowProblem(
        Digraph(base + extra, arcs, np.array(caps, dtype=np.int64)),
        np.array(lows, dtype=np.int64),
        np.array(caps, dtype=np.int64),
        np.zeros(base + extra, dtype=np.int64),
        cost=np.array(costs, dtype=np.int64),
    )
    res = netflow.min_cost_flow(P)
    if not res.feasible:
        witness = frozenset(v for v in res.witness if v < n)
        raise InfeasibleOrientationError("no such orientation", witness=witness)
    heads = np.zeros(mm, dtype=np.int64)
    for j, (u, v) in enumerate(G.edges):
        heads[j] = u if res.flow[mm + 2 * j] == 1 else v
    return Orientation(G, heads)


def orientation_cost(orient: Orientation, cost) -> int:
    total = 0
    for j, (u, v) in enumerate(orient.graph.edges):
        cu, cv = cost[j]
        total += int(cv) if orient.heads[j] == v else int(cu)
    return total


def cheapest_decmin_orientation_bounded(
    G: Graph, lower=None, upper=None, cost=None
) -> Orientation:
    """Cheapest (per-arc costs) among all dec-min (f, g)-bounded
    orientations.

    Pipeline: dec-min bounded orientation -> canonical data -> the exact
    description of the dec-min set (in-degrees inside the small canonical
    box AND every canonical block keeping its in-degree sum) -> one
    min-cost flow over exactly that set.
    """
    if cost is None:
        cost = G.cost
    if cost is None:
        cost = [(0, 0)] * G.m
    lo, hi = _resolve_bounds(G, lower, upper)
    base = decmin_orientation_bounded(G, lo, hi)
    D = orientation_canonical(G, base, lo, hi)
    deg = base.indeg
    f_star = np.array([D.betas[D.block_of(v)] - 1 for v in range(G.n)])
    g_star = np.array([D.betas[D.block_of(v)] for v in range(G.n)])
    f_star = np.maximum(f_star, lo)
    g_star = np.minimum(g_star, hi)
    blocks = [
        (sorted(si), sum(int(deg[v]) for v in si)) for si in D.partition
    ]
    return _min_cost_orientation(G, f_star, g_star, cost, {}, blocks=blocks)


def decmin_orientation_of_mixed_graph(*args, **kwargs):
    """Dec-min orientation of a mixed graph is rejected: the in-degree
    vectors of strong/mixed orientations form an intersection of two
    M-convex sets, where dec-min and inc-max genuinely differ, so the
    single-base-polyhedron machinery here does not apply.  Pre-oriented
    arcs are supported only inside the min-cost subroutine."""
    raise NotImplementedError(decmin_orientation_of_mixed_graph.__doc__)


# ---------------------------------------------------------------------------
# minimizing the in-degree of a node set T first
# ---------------------------------------------------------------------------


def decmin_orientation_minT(G: Graph, lower, upper, t_set) -> Orientation:
    """Among (f, g)-bounded orientations minimizing the total in-degree of
    T, a dec-min one.

    First reverse s->t dipaths (s outside T below its upper bound, t in T
    above its lower bound) until the in-degree of T is minimum; the nodes
    reaching an unsaturated T-node then form the set X_T whose edges to the
    outside get frozen, and dec-min improvement continues on both sides of
    the frozen cut independently."""
    t_set = frozenset(int(v) for v in t_set)
    lo, hi = _resolve_bounds(G, lower, upper)
    orient = _initial_bounded(G, lo, hi)
    n = G.n
    while True:
        deg = orient.indeg
        adj = _adjacency(orient)
        moved = False
        for t in sorted(t_set):
            if deg[t] - 1 < lo[t]:
                continue
            radj = [[] for _ in range(n)]
            for u in range(n):
                for v, j in adj[u]:
                    radj[v].append((u, j))
            reach = _reach_from(radj, t, n)
            for s in range(n):
                if s in t_set or not reach[s] or deg[s] + 1 > hi[s]:
                    continue
                path = _find_path(adj, s, t, n)
                _reverse_path(orient, path)
                moved = True
                break
            if moved:
                break
        if not moved:
            break
    deg = orient.indeg
    adj = _adjacency(orient)
    xt = np.zeros(n, dtype=bool)
    radj = [[] for _ in range(n)]
    for u in range(n):
        for v, j in adj[u]:
            radj[v].append((u, j))
    for t in sorted(t_set):
        if deg[t] > lo[t]:
            xt |= _reach_from(radj, t, n)
    f2 = lo.copy()
    g2 = hi.copy()
    for v in range(n):
        if xt[v] and v not in t_set:
            f2[v] = hi[v]
        if (not xt[v]) and v in t_set:
            g2[v] = lo[v]

    def same_side(ornt: Orientation):
        return np.array(
            [xt[u] == xt[v] for u, v in G.edges], dtype=bool
        )

    return _improve_to_decmin(orient, f2, g2, allowed_fn=same_side)


# ---------------------------------------------------------------------------
# k-edge-connected dec-min orientations
# ---------------------------------------------------------------------------


def _is_k_connected(orient: Orientation, k: int) -> bool:
    if k == 0:
        return True
    D = orient.digraph()
    if orient.graph.n == 1:
        return True
    v0 = 0
    for v in range(1, orient.graph.n):
        if not arc_disjoint_paths_at_least(D, v0, v, k):
            return False
        if not arc_disjoint_paths_at_least(D, v, v0, k):
            return False
    return True


def _initial_korient(G: Graph, k: int, lo, hi) -> Orientation:
    """Backtracking over edge orientations; desk-scale constructor for a
    k-edge-connected in-degree-bounded starting point."""
    if G.m > 22:
        raise CeilingExceeded("initial k-connected search too large")
    heads = np.zeros(G.m, dtype=np.int64)
    indeg = np.zeros(G.n, dtype=np.int64)
    incident_left = G.degrees().astype(np.int64)

    def feasible_partial():
        # each node must still be able to reach its lower bound
        for v in range(G.n):
            if indeg[v] + incident_left[v] < lo[v]:
                return False
        return True

    def rec(j):
        if j == G.m:
            orient = Orientation(G, heads.copy())
            if np.all(indeg >= lo) and _is_k_connected(orient, k):
                return orient
            return None
        u, v = G.edges[j]
        incident_left[u] -= 1
        incident_left[v] -= 1
        for h in (v, u):
            if indeg[h] + 1 > hi[h]:
                continue
            heads[j] = h
            indeg[h] += 1
            if feasible_partial():
                got = rec(j + 1)
                if got is not None:
                    return got
            indeg[h] -= 1
        incident_left[u] += 1
        incident_left[v] += 1
        return None

    got = rec(0)
    if got is None:
        raise InfeasibleOrientationError(
            f"no {k}-edge-connected orientation within the bounds"
        )
    return got


def decmin_korient(G: Graph, k: int, lower=None, upper=None) -> Orientation:
    """Dec-min among k-edge-connected (f, g)-bounded orientations.

    Improvement step: reverse an s->t dipath when indeg(t) >= indeg(s)+2,
    the bounds permit, and k+1 arc-disjoint s->t dipaths exist (so every
    directed cut keeps in-degree at least k after the reversal)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    lo, hi = _resolve_bounds(G, lower, upper)
    if np.any(lo > hi):
        bad = frozenset(int(v) for v in np.flatnonzero(lo > hi))
        raise InfeasibleOrientationError("empty in-degree box", witness=bad)
    if k == 0:
        return decmin_orientation_bounded(G, lo, hi)
    orient = _initial_korient(G, k, lo, hi)
    return _improve_to_decmin(orient, lo, hi, connectivity=k)


# ---------------------------------------------------------------------------
# capacitated orientations through the net-in-flow base-polyhedron
# ---------------------------------------------------------------------------


def capacitated_decmin_orientation(G: Graph) -> CapacitatedOrientation:
    """Dec-min orientation of the graph in which edge e stands for ell(e)
    parallel copies, without expanding the edges: the in-degree vectors
    form the base-polyhedron of the capacity-weighted induced-edge
    function, and the copy counts are recovered by one feasibility flow."""
    if G.ell is None:
        raise ValueError("graph carries no edge capacities")
    from .engine import strongly_poly_decmin  # local import, cycle-free

    handle = BaseHandle(G.induced_oracle())
    m = strongly_poly_decmin(handle)
    # net-in-flow target relative to the all-capacity reference orientation
    delta_g = np.zeros(G.n, dtype=np.int64)
    for (u, v), cap in zip(G.edges, G.ell):
        delta_g[u] += int(cap)
    target = m - delta_g
    P = FlowProblem(
        Digraph(G.n, list(G.edges), G.ell),
        np.zeros(G.m, dtype=np.int64),
        G.ell,
        target,
    )
    res = netflow.feasible_m_flow(P)
    if not res.feasible:
        raise RuntimeError("dec-min in-degree vector was not realizable")
    return CapacitatedOrientation(G, res.flow)


# ---------------------------------------------------------------------------
# registry: flow-backed membership for graph-induced oracles
# ---------------------------------------------------------------------------


def _graph_membership(B: BaseHandle, m) -> bool:
    p: GraphInducedOracle = B.oracle
    total = int(np.sum(p.weights))
    if int(m.sum()) != total:
        return False
    delta_g = np.zeros(p.n, dtype=np.int64)
    for (u, v), cap in zip(p.edges, p.weights):
        delta_g[u] += int(cap)
    P = FlowProblem(
        Digraph(p.n, list(p.edges), p.weights),
        np.zeros(len(p.edges), dtype=np.int64),
        p.weights,
        as_intvec(m, p.n) - delta_g,
    )
    return netflow.feasible_m_flow(P).feasible


def _graph_exchange(B: BaseHandle, m, s: int, t: int) -> bool:
    m2 = as_intvec(m, B.n).copy()
    m2[s] += 1
    m2[t] -= 1
    return _graph_membership(B, m2)


register_fast_path(
    "graph-induced", membership=_graph_membership, exchange=_graph_exchange
)


# ---------------------------------------------------------------------------
# text format: "p orient n m", "e u v [mult] [ell] [cost_uv cost_vu]",
# bounds lines "b v f g" (1-indexed nodes; "-inf"/"inf" allowed in bounds)
# ---------------------------------------------------------------------------


def parse_graph(text: str):
    """Parse the orientation problem text format; returns (Graph, lower,
    upper) where the bounds are None when no 'b' lines appear."""
    n = None
    edges = []
    ells = []
    costs = []
    bounds = {}
    saw_ell = False
    saw_cost = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "p":
            if len(tok) < 4 or tok[1] != "orient":
                raise ValueError(f"bad problem line: {raw!r}")
            n = int(tok[2])
        elif tok[0] == "e":
            if n is None:
                raise ValueError("edge line before problem line")
            u, v = int(tok[1]) - 1, int(tok[2]) - 1
            mult = int(tok[3]) if len(tok) >= 4 else 1
            ell = int(tok[4]) if len(tok) >= 5 else 1
            if len(tok) >= 7:
                cost_uv, cost_vu = int(tok[5]), int(tok[6])
                saw_cost = True
            else:
                cost_uv = cost_vu = 0
            if len(tok) >= 5:
                saw_ell = True
            for _ in range(mult):
                edges.append((u, v))
                ells.append(ell)
                # file gives arc costs (u->v, v->u); internally head-indexed
                costs.append((cost_vu, cost_uv))
        elif tok[0] == "b":
            v = int(tok[1]) - 1
            lo = NEG_INF if tok[2] in ("-inf", "-") else int(tok[2])
            hi = POS_INF if tok[3] in ("inf", "-") else int(tok[3])
            bounds[v] = (lo, hi)
        else:
            raise ValueError(f"unknown line: {raw!r}")
    if n is None:
        raise ValueError("missing problem line")
    G = Graph(
        n,
        edges,
        ell=np.array(ells, dtype=np.int64) if saw_ell else None,
        cost=costs if saw_cost else None,
    )
    lower = upper = None
    if bounds:
        lower = np.full(n, NEG_INF)
        upper = np.full(n, POS_INF)
        for v, (lo, hi) in bounds.items():
            lower[v] = lo
            upper[v] = hi
    return G, lower, upper
