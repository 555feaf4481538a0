"""Ground sets, integer vectors, decreasing/increasing orders, set-function
oracles and base-polyhedron primitives.

A base-polyhedron is presented here by an integer-valued supermodular
set-function p with p(empty) = 0 and p(full ground set) finite:

    B'(p) = {x : x~(S) = p(S), x~(Z) >= p(Z) for every Z},

optionally intersected with an integral box f <= x <= g.  The integral
points of B'(p) form the discrete sets all solvers in this package work
on.  Everything in this module is exact integer arithmetic; minus
infinity is represented by ``float("-inf")`` and saturates.

This module also hosts the brute-force enumeration used as a
verification oracle by every other module.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

NEG_INF = float("-inf")
POS_INF = float("inf")

DEFAULT_SUBSET_CEILING = 20
DEFAULT_VOLUME_CEILING = 10**6


class CeilingExceeded(RuntimeError):
    """Raised when a brute-force scan would exceed the configured ceiling."""


class EmptyBaseError(RuntimeError):
    """Raised when the base-polyhedron has no integral element."""


def subset_ceiling() -> int:
    """Largest ground-set size for which 2^n subset scans are allowed."""
    raw = os.environ.get("DECMIN_BRUTE_CEILING")
    return int(raw) if raw else DEFAULT_SUBSET_CEILING


def volume_ceiling() -> int:
    """Largest number of lattice points an exhaustive point scan may touch."""
    raw = os.environ.get("DECMIN_BRUTE_CEILING")
    if raw:
        return max(DEFAULT_VOLUME_CEILING, 2 ** int(raw))
    return DEFAULT_VOLUME_CEILING


# ---------------------------------------------------------------------------
# ground set and integer vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroundSet:
    """A finite non-empty ground set with distinct external labels."""

    labels: tuple

    def __post_init__(self):
        if len(self.labels) == 0:
            raise ValueError("ground set must be non-empty")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        return self.labels.index(label)


def ground(n: int) -> GroundSet:
    return GroundSet(tuple(range(n)))


def as_intvec(values: Sequence, n: Optional[int] = None) -> np.ndarray:
    v = np.asarray(values, dtype=np.int64)
    if v.ndim != 1:
        raise ValueError("integer vector must be one-dimensional")
    if n is not None and v.shape[0] != n:
        raise ValueError(f"expected length {n}, got {v.shape[0]}")
    return v


class Ordering(Enum):
    SMALLER = "smaller"
    VALUE_EQUIVALENT = "value-equivalent"
    LARGER = "larger"


def sorted_dec(x) -> tuple:
    """Components rearranged in decreasing order."""
    return tuple(sorted(x, reverse=True))


def sorted_inc(x) -> tuple:
    return tuple(sorted(x))


def dec_compare(x, y) -> Ordering:
    """Compare two vectors in the decreasing (lexicographic on sorted-desc)
    quasi-order.  Returns SMALLER iff x is decreasingly smaller than y."""
    x, y = list(x), list(y)
    if len(x) != len(y):
        raise ValueError("dec_compare needs vectors of equal length")
    sx, sy = sorted_dec(x), sorted_dec(y)
    if sx == sy:
        return Ordering.VALUE_EQUIVALENT
    return Ordering.SMALLER if sx < sy else Ordering.LARGER


def inc_compare(x, y) -> Ordering:
    """Compare in the increasing order: LARGER iff x is increasingly larger
    than y (first differing component of the sorted-asc vectors is bigger)."""
    x, y = list(x), list(y)
    if len(x) != len(y):
        raise ValueError("inc_compare needs vectors of equal length")
    sx, sy = sorted_inc(x), sorted_inc(y)
    if sx == sy:
        return Ordering.VALUE_EQUIVALENT
    return Ordering.LARGER if sx > sy else Ordering.SMALLER


def value_equivalent(x, y) -> bool:
    return sorted_dec(x) == sorted_dec(y)


def k_largest_sum(x, k: int):
    """Sum of the k largest components."""
    s = sorted_dec(x)
    return sum(s[:k])


# ---------------------------------------------------------------------------
# subset machinery (masks are plain ints, bit v <-> element v)
# ---------------------------------------------------------------------------


def subset_sums(values: Sequence) -> np.ndarray:
    """All 2^n subset sums of ``values`` as a float array indexed by mask.

    Works with +-inf entries (sums saturate the numpy way, which is the
    saturation the oracle contract asks for)."""
    sums = np.zeros(1, dtype=np.float64)
    for v in values:
        sums = np.concatenate([sums, sums + v])
    return sums


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements_of(mask: int, n: int) -> frozenset:
    return frozenset(v for v in range(n) if mask >> v & 1)


def iter_masks(n: int):
    return range(1 << n)


def popcounts(n: int) -> np.ndarray:
    """Array of |X| for every mask X, shape (2^n,)."""
    return subset_sums(np.ones(n)).astype(np.int64)


_IND_CACHE: dict = {}


def _indicator_stack(n: int) -> np.ndarray:
    """Row v holds the 0/1 array 'mask contains v' over all masks."""
    if n not in _IND_CACHE:
        _IND_CACHE[n] = np.stack(
            [subset_sums(np.eye(n)[v]) for v in range(n)]
        )
    return _IND_CACHE[n]


# ---------------------------------------------------------------------------
# set-function oracles
# ---------------------------------------------------------------------------


class SetFunctionOracle:
    """Integer-valued set-function on a ground set of size n.

    ``value(mask)`` returns a python int or NEG_INF.  Subclasses must keep
    value(0) == 0 and value(full) finite when used in the supermodular role.
    """

    kind = "abstract"

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("ground set must be non-empty")
        self._n = n
        self._table: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return self._n

    def value(self, mask: int):
        raise NotImplementedError

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    def table(self) -> np.ndarray:
        """All 2^n values as a float array (cached).  Guarded by the subset
        ceiling since it materializes the whole lattice."""
        if self._table is None:
            if self._n > subset_ceiling():
                raise CeilingExceeded(
                    f"n={self._n} exceeds subset ceiling {subset_ceiling()}"
                )
            self._table = np.array(
                [self.value(m) for m in iter_masks(self._n)], dtype=np.float64
            )
        return self._table

    def is_supermodular(self) -> bool:
        """Exhaustive supermodularity check (test/verification helper)."""
        tab = self.table()
        n = self._n
        for x in iter_masks(n):
            for y in range(x + 1, 1 << n):
                px, py = tab[x], tab[y]
                if px == NEG_INF or py == NEG_INF:
                    continue
                if px + py > tab[x | y] + tab[x & y]:
                    return False
        return True


class TableOracle(SetFunctionOracle):
    """Explicit table of 2^n values."""

    kind = "explicit-table"

    def __init__(self, values):
        values = list(values)
        n = len(values).bit_length() - 1
        if 1 << n != len(values):
            raise ValueError("table length must be a power of two")
        super().__init__(n)
        if values[0] != 0:
            raise ValueError("value on the empty set must be 0")
        if values[-1] == NEG_INF:
            raise ValueError("value on the full ground set must be finite")
        self._vals = [
            NEG_INF if v == NEG_INF else int(v) for v in values
        ]

    def value(self, mask: int):
        return self._vals[mask]


class GraphInducedOracle(SetFunctionOracle):
    """i_G: number (or total capacity) of edges induced by a node set.

    Fully supermodular; defines the base-polyhedron of in-degree vectors of
    (capacitated) orientations.
    """

    kind = "graph-induced"

    def __init__(self, n_nodes: int, edges: Sequence, weights=None):
        super().__init__(n_nodes)
        self.edges = [(int(u), int(v)) for (u, v) in edges]
        for u, v in self.edges:
            if u == v:
                raise ValueError("loops are not allowed")
        if weights is None:
            self.weights = np.ones(len(self.edges), dtype=np.int64)
        else:
            self.weights = as_intvec(weights, len(self.edges))
            if np.any(self.weights < 1):
                raise ValueError("edge capacities must be >= 1")
        self._edge_masks = [mask_of((u, v)) for u, v in self.edges]

    def value(self, mask: int):
        return int(
            sum(
                w
                for em, w in zip(self._edge_masks, self.weights)
                if em & mask == em
            )
        )


class GraphCoverOracle(SetFunctionOracle):
    """e_G: number of edges with at least one end in the set (submodular
    complement of i_G)."""

    kind = "graph-cover"

    def __init__(self, n_nodes: int, edges: Sequence, weights=None):
        super().__init__(n_nodes)
        self._induced = GraphInducedOracle(n_nodes, edges, weights)

    def value(self, mask: int):
        full = self.full_mask
        total = self._induced.value(full)
        return total - self._induced.value(full & ~mask)


class FlowOracle(SetFunctionOracle):
    """p_fg(Z) = rho_f(Z) - delta_g(Z) for a digraph with arc bounds f <= g.

    Fully supermodular; B'(p_fg) is the polyhedron of net-in-flow vectors.
    """

    kind = "flow-induced"

    def __init__(self, n_nodes: int, arcs: Sequence, lower, upper):
        super().__init__(n_nodes)
        self.arcs = [(int(u), int(v)) for (u, v) in arcs]
        self.lower = as_intvec(lower, len(self.arcs))
        self.upper = as_intvec(upper, len(self.arcs))
        if np.any(self.lower > self.upper):
            raise ValueError("need lower <= upper on every arc")

    def value(self, mask: int):
        total = 0
        for (u, v), f, g in zip(self.arcs, self.lower, self.upper):
            tail_in = mask >> u & 1
            head_in = mask >> v & 1
            if head_in and not tail_in:
                total += int(f)
            elif tail_in and not head_in:
                total -= int(g)
        return total


class RootVectorOracle(SetFunctionOracle):
    """p(X) = k - rho_D(X) for nonempty X (intersecting supermodular);
    integral points of B'(p) in the nonnegative orthant are exactly the
    root-vectors of packings of k arc-disjoint spanning arborescences."""

    kind = "root-vector"

    def __init__(self, n_nodes: int, arcs: Sequence, k: int):
        super().__init__(n_nodes)
        self.arcs = [(int(u), int(v)) for (u, v) in arcs]
        self.k = int(k)

    def value(self, mask: int):
        if mask == 0:
            return 0
        indeg = sum(
            1 for u, v in self.arcs if (mask >> v & 1) and not (mask >> u & 1)
        )
        return self.k - indeg


class ShiftedOracle(SetFunctionOracle):
    """p(X) + w~(X): translates the base-polyhedron by the integer vector w."""

    kind = "shifted"

    def __init__(self, inner: SetFunctionOracle, shift):
        super().__init__(inner.n)
        self.inner = inner
        self.shift = as_intvec(shift, inner.n)

    def value(self, mask: int):
        v = self.inner.value(mask)
        if v == NEG_INF:
            return NEG_INF
        return v + int(sum(self.shift[i] for i in range(self._n) if mask >> i & 1))


class RestrictedOracle(SetFunctionOracle):
    """p | Z: restriction to the elements of Z (keeps their relative order)."""

    kind = "restricted"

    def __init__(self, inner: SetFunctionOracle, keep: Sequence[int]):
        keep = sorted(set(int(i) for i in keep))
        if not keep:
            raise ValueError("restriction to the empty set")
        super().__init__(len(keep))
        self.inner = inner
        self.keep = keep

    def embed(self, mask: int) -> int:
        out = 0
        for j, orig in enumerate(self.keep):
            if mask >> j & 1:
                out |= 1 << orig
        return out

    def value(self, mask: int):
        return self.inner.value(self.embed(mask))


class ContractedOracle(SetFunctionOracle):
    """p / Z: contraction, (p/Z)(X) = p(X u Z) - p(Z) on the elements
    outside Z.  Nested contractions fuse into a single one."""

    kind = "contracted"

    def __init__(self, inner: SetFunctionOracle, zmask: int):
        if isinstance(inner, ContractedOracle):
            zmask = inner.zmask | inner.embed(zmask)
            inner = inner.inner
        pz = inner.value(zmask)
        if pz == NEG_INF:
            raise ValueError("cannot contract a set with value -inf")
        keep = [v for v in range(inner.n) if not zmask >> v & 1]
        if not keep:
            raise ValueError("contraction would empty the ground set")
        super().__init__(len(keep))
        self.inner = inner
        self.zmask = zmask
        self.keep = keep
        self._pz = pz

    def embed(self, mask: int) -> int:
        out = 0
        for j, orig in enumerate(self.keep):
            if mask >> j & 1:
                out |= 1 << orig
        return out

    def value(self, mask: int):
        v = self.inner.value(self.embed(mask) | self.zmask)
        if v == NEG_INF:
            return NEG_INF
        return v - self._pz


class ComplementOracle(SetFunctionOracle):
    """h-bar(X) = h(S) - h(S - X); complement of a complement is the inner
    function again."""

    kind = "complemented"

    def __init__(self, inner: SetFunctionOracle):
        super().__init__(inner.n)
        self.inner = inner
        self._total = inner.value(inner.full_mask)
        if self._total == NEG_INF:
            raise ValueError("complement needs a finite value on the full set")

    def value(self, mask: int):
        v = self.inner.value(self.full_mask & ~mask)
        if v == NEG_INF:
            return POS_INF
        return self._total - v


def restrict(p: SetFunctionOracle, keep) -> SetFunctionOracle:
    return RestrictedOracle(p, keep)


def contract(p: SetFunctionOracle, zap) -> SetFunctionOracle:
    zmask = zap if isinstance(zap, int) else mask_of(zap)
    return ContractedOracle(p, zmask)


def complement(p: SetFunctionOracle) -> SetFunctionOracle:
    if isinstance(p, ComplementOracle):
        return p.inner
    return ComplementOracle(p)


def shift(p: SetFunctionOracle, w) -> SetFunctionOracle:
    return ShiftedOracle(p, w)


# ---------------------------------------------------------------------------
# base handles and the membership / exchange / tight-set primitives
# ---------------------------------------------------------------------------

# fast paths keyed by oracle kind; each entry may provide membership,
# exchange, tight-set and initial-member routines
_FAST_PATHS: dict = {}


def register_fast_path(kind: str, *, membership=None, exchange=None,
                       tight_set=None, member=None):
    entry = _FAST_PATHS.setdefault(kind, {})
    if membership is not None:
        entry["membership"] = membership
    if exchange is not None:
        entry["exchange"] = exchange
    if tight_set is not None:
        entry["tight_set"] = tight_set
    if member is not None:
        entry["member"] = member


def fast_path(kind: str, op: str):
    return _FAST_PATHS.get(kind, {}).get(op)


@dataclass
class BaseHandle:
    """An M-convex set: supermodular oracle, modularity flag and an
    optional integral box f <= x <= g."""

    oracle: SetFunctionOracle
    modularity: str = "full"
    lower: Optional[np.ndarray] = None
    upper: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.modularity not in ("full", "intersecting", "crossing"):
            raise ValueError("modularity must be full/intersecting/crossing")
        n = self.oracle.n
        if self.lower is not None:
            self.lower = np.asarray(self.lower, dtype=np.float64)
            if self.lower.shape != (n,):
                raise ValueError("box lower bound has wrong length")
        if self.upper is not None:
            self.upper = np.asarray(self.upper, dtype=np.float64)
            if self.upper.shape != (n,):
                raise ValueError("box upper bound has wrong length")
        if (
            self.lower is not None
            and self.upper is not None
            and np.any(self.lower > self.upper)
        ):
            raise ValueError("box must satisfy f <= g")

    @property
    def n(self) -> int:
        return self.oracle.n

    @property
    def has_box(self) -> bool:
        return self.lower is not None or self.upper is not None

    def in_box(self, m: np.ndarray) -> bool:
        if self.lower is not None and np.any(m < self.lower):
            return False
        if self.upper is not None and np.any(m > self.upper):
            return False
        return True


class BoxedOracle(SetFunctionOracle):
    """The unique fully supermodular function of B'(p) intersected with a
    box: p_box(Y) = max_X [p(X) + f~(Y - X) - g~(X - Y)].

    Evaluation is a vectorized scan over all X, so it is desk-scale only.
    """

    kind = "boxed"

    def __init__(self, inner: SetFunctionOracle, lower, upper):
        super().__init__(inner.n)
        self.inner = inner
        n = inner.n
        self.lower = (
            np.full(n, NEG_INF) if lower is None else np.asarray(lower, float)
        )
        self.upper = (
            np.full(n, POS_INF) if upper is None else np.asarray(upper, float)
        )
        self._fsums = subset_sums(self.lower)
        self._gsums = subset_sums(self.upper)
        self._masks = None
        self._cache: dict = {}

    def value(self, mask: int):
        if mask in self._cache:
            return self._cache[mask]
        ptab = self.inner.table()
        if self._masks is None:
            self._masks = np.arange(1 << self._n, dtype=np.int64)
        xm = self._masks
        f_part = self._fsums[mask & ~xm]  # f~(Y - X)
        g_part = self._gsums[xm & ~mask]  # g~(X - Y)
        with np.errstate(invalid="ignore"):
            vals = ptab + f_part - g_part
        vals[np.isnan(vals)] = NEG_INF
        best = float(np.max(vals))
        if best != NEG_INF and best != POS_INF:
            best = int(round(best))
        self._cache[mask] = best
        return best


def effective_oracle(B: BaseHandle) -> SetFunctionOracle:
    """The fully supermodular function describing B including its box
    (cached on the handle so repeated calls share memoized values)."""
    if not B.has_box:
        return B.oracle
    if getattr(B, "_eff", None) is None:
        B._eff = BoxedOracle(B.oracle, B.lower, B.upper)
    return B._eff


def is_member(B: BaseHandle, m) -> bool:
    """Exact membership test of an integer vector in the M-convex set."""
    m = as_intvec(m, B.n)
    if not B.in_box(m):
        return False
    fp = fast_path(B.oracle.kind, "membership")
    if fp is not None:
        return fp(B, m)
    tab = B.oracle.table()
    sums = subset_sums(m)
    if sums[-1] != tab[-1]:
        return False
    return bool(np.all(sums >= tab))


def exchange_feasible(B: BaseHandle, m, s: int, t: int) -> bool:
    """True iff m + chi_s - chi_t stays in the set (box included).

    This is the membership-delta primitive: for m in the set it is
    equivalent to the absence of an m-tight set containing t and avoiding s.
    """
    if s == t:
        raise ValueError("exchange needs distinct elements")
    m = as_intvec(m, B.n)
    if B.upper is not None and m[s] + 1 > B.upper[s]:
        return False
    if B.lower is not None and m[t] - 1 < B.lower[t]:
        return False
    fp = fast_path(B.oracle.kind, "exchange")
    if fp is not None:
        return fp(B, m, s, t)
    m2 = m.copy()
    m2[s] += 1
    m2[t] -= 1
    # box already checked, go straight to the oracle inequalities
    tab = B.oracle.table()
    sums = subset_sums(m2)
    return bool(sums[-1] == tab[-1] and np.all(sums >= tab))


def smallest_tight_set(B: BaseHandle, m, t: int) -> frozenset:
    """T_m(t): the unique smallest m-tight set containing t; computed via
    exchanges (s is in T_m(t) iff m + chi_s - chi_t stays in the set).

    When the handle carries a box this is the boxed variant: {t} alone if
    m(t) sits on the lower bound, otherwise the unboxed set minus the
    elements saturating their upper bound.
    """
    m = as_intvec(m, B.n)
    fp = fast_path(B.oracle.kind, "tight_set")
    if fp is not None:
        return fp(B, m, t)
    if B.lower is not None and m[t] - 1 < B.lower[t]:
        return frozenset({t})
    n = B.n
    try:
        tab = B.oracle.table()
    except CeilingExceeded:
        # beyond table scale: one exchange query per element (fast paths
        # registered for the oracle kind keep this polynomial)
        members = {t}
        for s in range(n):
            if s != t and exchange_feasible(B, m, s, t):
                members.add(s)
        return frozenset(members)
    sums = subset_sums(m)
    ind = _indicator_stack(n)
    cand = sums[None, :] + ind - ind[t][None, :]
    ok = np.all(cand >= tab[None, :], axis=1)
    members = {t}
    for s in range(n):
        if s == t or not ok[s]:
            continue
        if B.upper is not None and m[s] + 1 > B.upper[s]:
            continue
        members.add(s)
    return frozenset(members)


def box_intersection_feasible(B: BaseHandle, lower, upper) -> bool:
    """Feasibility of B'(p) intersected with the box T(f, g):
    p <= g~ and f~ <= p-bar on every subset."""
    n = B.n
    f = np.asarray(lower, dtype=np.float64)
    g = np.asarray(upper, dtype=np.float64)
    if np.any(f > g):
        raise ValueError("need f <= g")
    tab = B.oracle.table()
    gs = subset_sums(g)
    fs = subset_sums(f)
    with np.errstate(invalid="ignore"):
        if np.any(tab > gs):
            return False
    full = (1 << n) - 1
    pbar = np.array([tab[-1] - tab[full & ~x] for x in iter_masks(n)])
    with np.errstate(invalid="ignore"):
        ok = fs <= pbar
    ok[np.isnan(pbar)] = True
    return bool(np.all(ok))


# ---------------------------------------------------------------------------
# brute-force enumeration (the verification oracle)
# ---------------------------------------------------------------------------


@dataclass
class EnumeratedSet:
    """Explicit list of the integral points of an M-convex set."""

    points: np.ndarray  # shape (count, n)

    def __post_init__(self):
        if self.points.size and len({int(r.sum()) for r in self.points}) > 1:
            raise ValueError("points of an M-convex set share a component sum")

    def __len__(self):
        return self.points.shape[0]

    def __iter__(self):
        return iter(self.points)


def natural_bounds(B: BaseHandle):
    """Coordinatewise min/max of the set, from p and its complement, merged
    with the handle's box."""
    tab = B.oracle.table()
    n = B.n
    full = (1 << n) - 1
    lo = np.array([tab[1 << v] for v in range(n)])
    hi = np.array(
        [
            POS_INF if tab[full ^ (1 << v)] == NEG_INF
            else tab[full] - tab[full ^ (1 << v)]
            for v in range(n)
        ]
    )
    if B.lower is not None:
        lo = np.maximum(lo, B.lower)
    if B.upper is not None:
        hi = np.minimum(hi, B.upper)
    return lo, hi


def enumerate_integral_points(
    B: BaseHandle, search_box=None
) -> EnumeratedSet:
    """Exhaustive scan for every integral point of B inside ``search_box``
    (defaults to the natural coordinate bounds).  Desk-scale only."""
    n = B.n
    if search_box is not None:
        lo = np.asarray(search_box[0], dtype=np.float64)
        hi = np.asarray(search_box[1], dtype=np.float64)
        blo, bhi = natural_bounds(B)
        lo = np.maximum(lo, blo)
        hi = np.minimum(hi, bhi)
    else:
        lo, hi = natural_bounds(B)
    if np.any(np.isinf(lo)) or np.any(np.isinf(hi)):
        raise CeilingExceeded("unbounded coordinate range; pass a search box")
    lo = lo.astype(np.int64)
    hi = hi.astype(np.int64)
    if np.any(hi < lo):
        return EnumeratedSet(np.zeros((0, n), dtype=np.int64))
    widths = hi - lo + 1
    volume = int(np.prod(widths.astype(np.float64)))
    if volume > volume_ceiling():
        raise CeilingExceeded(f"search volume {volume} exceeds ceiling")
    grids = np.meshgrid(*[np.arange(l, h + 1) for l, h in zip(lo, hi)],
                        indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)
    tab = B.oracle.table()
    maskmat = np.zeros((n, 1 << n), dtype=np.float64)
    for v in range(n):
        for mk in iter_masks(n):
            if mk >> v & 1:
                maskmat[v, mk] = 1.0
    keep = np.zeros(pts.shape[0], dtype=bool)
    chunk = 4096
    for i in range(0, pts.shape[0], chunk):
        block = pts[i : i + chunk].astype(np.float64)
        sums = block @ maskmat
        ok = np.all(sums >= tab[None, :], axis=1) & (sums[:, -1] == tab[-1])
        keep[i : i + chunk] = ok
    pts = pts[keep]
    if B.lower is not None:
        pts = pts[np.all(pts >= B.lower[None, :], axis=1)]
    if B.upper is not None:
        pts = pts[np.all(pts <= B.upper[None, :], axis=1)]
    order = np.lexsort(pts.T[::-1]) if pts.size else np.arange(0)
    return EnumeratedSet(pts[order])


def brute_decmin_set(points: np.ndarray):
    """All dec-min elements of an enumerated set plus the optimal sorted
    signature; the independent oracle for the solvers."""
    if points.shape[0] == 0:
        raise EmptyBaseError("no integral points")
    signatures = [sorted_dec(row) for row in points]
    best = min(signatures)
    sel = np.array([sig == best for sig in signatures])
    return points[sel], best


def brute_incmax_set(points: np.ndarray):
    if points.shape[0] == 0:
        raise EmptyBaseError("no integral points")
    signatures = [sorted_inc(row) for row in points]
    best = max(signatures)
    sel = np.array([sig == best for sig in signatures])
    return points[sel], best


# ---------------------------------------------------------------------------
# explicit-table JSON interface
# ---------------------------------------------------------------------------


def load_table_json(text: str) -> TableOracle:
    """Set-function table format: {"n": k, "values": {"<mask>": int|"-inf"}}.
    Missing masks default to -inf except the empty set, which is 0."""
    doc = json.loads(text)
    n = int(doc["n"])
    vals = [NEG_INF] * (1 << n)
    vals[0] = 0
    for key, raw in doc.get("values", {}).items():
        mask = int(key)
        if not 0 <= mask < (1 << n):
            raise ValueError(f"mask {key} out of range for n={n}")
        vals[mask] = NEG_INF if raw == "-inf" else int(raw)
    return TableOracle(vals)


def dump_table_json(p: SetFunctionOracle) -> str:
    values = {}
    for mask in iter_masks(p.n):
        v = p.value(mask)
        if mask == 0:
            continue
        values[str(mask)] = "-inf" if v == NEG_INF else int(v)
    return json.dumps({"n": p.n, "values": values})
