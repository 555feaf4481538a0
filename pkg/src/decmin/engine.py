"""Dec-min solvers over M-convex sets: the 1-tightening basic algorithm,
the Newton-Dinkelbach routine for the largest essential value, and the
strongly polynomial peak-set recursion, plus local/global optimality tests
and the uniformity measures (square-sum, difference-sum, k-largest-sums).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import (
    BaseHandle,
    EmptyBaseError,
    NEG_INF,
    SetFunctionOracle,
    as_intvec,
    contract,
    effective_oracle,
    enumerate_integral_points,
    fast_path,
    is_member,
    popcounts,
    smallest_tight_set,
)


class NoGoodMuError(RuntimeError):
    """Raised when ceil(p/b) has no finite maximum (no good integer)."""


def greedy_member(B: BaseHandle, order=None, validate: bool = False) -> np.ndarray:
    """Edmonds' greedy member: m(s_i) = p(Z_i) - p(Z_{i-1}) along a chain.

    Requires the effective supermodular function to be finite along the
    chain of the chosen order; raises EmptyBaseError otherwise.
    """
    p = effective_oracle(B)
    n = p.n
    if order is None:
        order = list(range(n))
    m = np.zeros(n, dtype=np.int64)
    prev = 0
    mask = 0
    for v in order:
        mask |= 1 << v
        cur = p.value(mask)
        if cur == NEG_INF:
            raise EmptyBaseError(
                "greedy chain hit a -inf value; use initial_member instead"
            )
        m[v] = cur - prev
        prev = cur
    if validate and not is_member(B, m):
        raise EmptyBaseError("greedy produced a non-member (p not supermodular?)")
    return m


def initial_member(B: BaseHandle) -> np.ndarray:
    """Some integral element of the set.

    Fully supermodular oracles go through the greedy; intersecting/crossing
    ones fall back to a registered constructor or, at desk scale, an
    exhaustive scan.  An empty crossing base-polyhedron surfaces as
    EmptyBaseError.
    """
    ctor = fast_path(B.oracle.kind, "member")
    if ctor is not None:
        return ctor(B)
    if B.modularity == "full":
        m = greedy_member(B)
        if not is_member(B, m):
            raise EmptyBaseError(
                "greedy member infeasible (empty box intersection, or the "
                "oracle is not fully supermodular)"
            )
        return m
    pts = enumerate_integral_points(B)
    if len(pts) == 0:
        raise EmptyBaseError("base-polyhedron is empty")
    return pts.points[0].copy()


def one_tightening(B: BaseHandle, m) -> Optional[tuple]:
    """One 1-tightening step: (s, t, m') with m(t) >= m(s) + 2 and m' in the
    set, or None iff m is dec-min.

    Targets t are scanned by decreasing m(t) (the
    highest-in-degree-end heuristic); for each t the smallest m-tight set
    answers every candidate s at once, and the smallest m(s) inside it wins.
    """
    m = as_intvec(m, B.n)
    order = sorted(range(B.n), key=lambda v: (-int(m[v]), v))
    for t in order:
        tight = smallest_tight_set(B, m, t)
        cands = [s for s in tight if s != t and m[t] - m[s] >= 2]
        if not cands:
            continue
        s = min(cands, key=lambda v: (int(m[v]), v))
        m2 = m.copy()
        m2[s] += 1
        m2[t] -= 1
        return s, t, m2
    return None


def basic_decmin(B: BaseHandle, m0=None) -> np.ndarray:
    """The basic algorithm: 1-tightening steps until none applies.

    Polynomial in n + |p(S)| (the square-sum strictly drops each step)."""
    m = initial_member(B) if m0 is None else as_intvec(m0, B.n).copy()
    while True:
        step = one_tightening(B, m)
        if step is None:
            return m
        m = step[2]


def is_decmin(B: BaseHandle, m) -> tuple:
    """(True, None) iff m is dec-min; otherwise (False, (s, t)) with a
    feasible 1-tightening witness."""
    step = one_tightening(B, m)
    if step is None:
        return True, None
    return False, (step[0], step[1])


# ---------------------------------------------------------------------------
# Newton-Dinkelbach for max ceil(p(X)/b(X))
# ---------------------------------------------------------------------------


@dataclass
class NDTrace:
    """Run record of the Newton-Dinkelbach ascent.

    mus[0] is the starting (bad) value, mus[-1] the first good one, which
    equals the result; witnesses[j] maximizes p(X) - mus[j] b(X)."""

    mus: list
    witnesses: list  # subset masks
    result: int

    @property
    def iterations(self) -> int:
        return len(self.mus) - 1


def _default_argmax(p: SetFunctionOracle, b: SetFunctionOracle):
    ptab = p.table()
    btab = b.table()

    def argmax(mu: int) -> int:
        vals = ptab - mu * btab
        return int(np.argmax(vals))

    return argmax


def newton_dinkelbach(
    p: SetFunctionOracle,
    b: SetFunctionOracle,
    argmax_oracle: Optional[Callable[[int], int]] = None,
) -> NDTrace:
    """Smallest integer mu with mu*b(X) >= p(X) for all X, i.e.
    max ceil(p(X)/b(X)) over b(X) > 0.

    b must be nonnegative and finite, and p(X) <= 0 must hold wherever
    b(X) = 0 (otherwise no good mu exists and NoGoodMuError is raised).
    The ascent from any bad start strictly increases mu while b of the
    witness strictly decreases, so it ends within max(b) iterations.
    """
    if argmax_oracle is None:
        argmax_oracle = _default_argmax(p, b)

    def best(mu):
        x = argmax_oracle(mu)
        px, bx = p.value(x), b.value(x)
        gap = NEG_INF if px == NEG_INF else px - mu * bx
        return x, px, bx, gap

    mu = 0
    x, px, bx, gap = best(mu)
    if gap > 0 and bx == 0:
        raise NoGoodMuError("p(X) > 0 on a set with b(X) = 0")
    if gap <= 0:
        # mu = 0 already good: probe downward with the same oracle until a
        # bad value (or a usable lower bound) appears
        step = 1
        probes = 0
        while True:
            probes += 1
            if probes > 128:
                raise NoGoodMuError("no bad mu found; b vanishes where p is finite")
            mu = -step
            step *= 2
            x, px, bx, gap = best(mu)
            if gap > 0:
                if bx == 0:
                    raise NoGoodMuError("p(X) > 0 on a set with b(X) = 0")
                break
            if bx > 0 and px != NEG_INF:
                # ceil(p(x)/b(x)) <= mu_min: restart the ascent there
                mu = math.ceil(px / bx)
                x, px, bx, gap = best(mu)
                if gap <= 0:
                    return NDTrace([mu], [], int(mu))
                break
    mus = [mu]
    witnesses = [x]
    while True:
        mu = math.ceil(px / bx)
        x, px, bx, gap = best(mu)
        mus.append(mu)
        if gap <= 0:
            return NDTrace(mus, witnesses, int(mu))
        if bx == 0:
            raise NoGoodMuError("p(X) > 0 on a set with b(X) = 0")
        witnesses.append(x)


class _CardinalityOracle(SetFunctionOracle):
    kind = "cardinality"

    def __init__(self, n):
        super().__init__(n)

    def value(self, mask: int):
        return bin(mask).count("1")

    def table(self):
        if self._table is None:
            self._table = popcounts(self._n).astype(np.float64)
        return self._table


def largest_essential_value(p: SetFunctionOracle) -> int:
    """beta_1 = max over nonempty X of ceil(p(X)/|X|), via Newton-Dinkelbach."""
    return newton_dinkelbach(p, _CardinalityOracle(p.n)).result


# ---------------------------------------------------------------------------
# beta-covered members, pre-dec-min tightening, peak sets
# ---------------------------------------------------------------------------


def beta_covered_member(B: BaseHandle, beta: int) -> np.ndarray:
    """A member with every component <= beta, built by the greedy
    m(s_i) := min {z : (m(s_1), ..., z, beta, ..., beta) in S'(p)}.

    Requires beta >= beta_1(B); raises EmptyBaseError when some component
    would have to exceed beta.
    """
    p = effective_oracle(B)
    n = p.n
    ptab = p.table()
    pops = popcounts(n)
    m = np.zeros(n, dtype=np.int64)
    done_sums = np.zeros(1 << n, dtype=np.float64)
    future = (1 << n) - 1
    masks = np.arange(1 << n, dtype=np.int64)
    for i in range(n):
        future &= ~(1 << i)
        rest = pops[masks & future]
        sel = (masks >> i & 1) == 1
        need = ptab[sel] - done_sums[sel] - beta * rest[sel]
        z = float(np.max(need))
        if z == NEG_INF:
            z = ptab[-1]  # cannot happen for finite p(S); defensive
        z = int(math.ceil(z))
        if z > beta:
            raise EmptyBaseError(f"no {beta}-covered member (component {i})")
        m[i] = z
        done_sums = done_sums + np.where(sel, z, 0.0)
    return m


def pre_decmin_tighten(B: BaseHandle, m, beta: int) -> np.ndarray:
    """Turn a beta-covered member into a pre-dec-min one: repeatedly move a
    unit off a beta-valued component onto one at most beta - 2, while some
    exchange allows it."""
    m = as_intvec(m, B.n).copy()
    changed = True
    while changed:
        changed = False
        for t in sorted(range(B.n), key=lambda v: v):
            if m[t] != beta:
                continue
            tight = smallest_tight_set(B, m, t)
            cands = [s for s in tight if s != t and m[s] <= beta - 2]
            if not cands:
                continue
            s = min(cands, key=lambda v: (int(m[v]), v))
            m[s] += 1
            m[t] -= 1
            changed = True
            break
    return m


def peak_set(B: BaseHandle, beta1: int, m=None) -> frozenset:
    """S_1: the smallest maximizer of h_1(X) = p(X) - (beta_1 - 1)|X|,
    computed from a pre-dec-min member as the union of the smallest tight
    sets of its beta_1-valued components."""
    if m is None:
        m = pre_decmin_tighten(B, beta_covered_member(B, beta1), beta1)
    else:
        m = as_intvec(m, B.n)
    out = set()
    for t in range(B.n):
        if m[t] == beta1:
            out |= smallest_tight_set(B, m, t)
    return frozenset(out)


def strongly_poly_decmin(B: BaseHandle) -> np.ndarray:
    """Dec-min element via the peak-set recursion: find beta_i by
    Newton-Dinkelbach, fix a near-uniform block on the peak set S_i,
    contract it, and recurse on the rest."""
    if B.modularity != "full":
        # the recursion relies on p being the unique fully supermodular
        # description; weaker oracles go through the basic algorithm
        return basic_decmin(B)
    if B.has_box:
        from .core import box_intersection_feasible

        lo = np.full(B.n, NEG_INF) if B.lower is None else B.lower
        hi = np.full(B.n, np.inf) if B.upper is None else B.upper
        if not box_intersection_feasible(BaseHandle(B.oracle), lo, hi):
            raise EmptyBaseError("box intersection is empty")
    eff = effective_oracle(B)
    n = eff.n
    result = np.zeros(n, dtype=np.int64)
    remaining = list(range(n))  # original indices of the current ground set
    cur: SetFunctionOracle = eff
    prev_beta = None
    while remaining:
        handle = BaseHandle(cur)
        beta = largest_essential_value(cur)
        if prev_beta is not None and beta >= prev_beta:
            raise RuntimeError("essential values failed to decrease")
        prev_beta = beta
        m = beta_covered_member(handle, beta)
        m = pre_decmin_tighten(handle, m, beta)
        s1 = peak_set(handle, beta, m)
        for local in s1:
            result[remaining[local]] = m[local]
        if len(s1) == len(remaining):
            break
        cur = contract(cur, s1)
        remaining = [orig for j, orig in enumerate(remaining) if j not in s1]
    return result


# ---------------------------------------------------------------------------
# uniformity measures
# ---------------------------------------------------------------------------


@dataclass
class MeasureReport:
    """Square-sum, difference-sum (ordered pairs), k-largest-sums and the
    optional capped difference measure."""

    square_sum: int
    diff_sum: int
    k_largest: tuple
    diff_k: Optional[int] = None


def measures(m, K: Optional[int] = None) -> MeasureReport:
    v = np.asarray(list(m), dtype=np.int64)
    square = int(np.sum(v * v))
    diffs = np.abs(v[:, None] - v[None, :])
    diff_sum = int(diffs.sum())  # ordered pairs: each unordered pair twice
    s = np.sort(v)[::-1]
    klg = tuple(int(x) for x in np.cumsum(s))
    diff_k = None
    if K is not None:
        clipped = np.maximum(diffs - K, 0)
        np.fill_diagonal(clipped, 0)
        diff_k = int(clipped.sum())
    return MeasureReport(square, diff_sum, klg, diff_k)
