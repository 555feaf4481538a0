import itertools

import numpy as np
import pytest

from decmin.applications import (
    InfeasibleProblemError,
    MegiddoProblem,
    SemiMatchingProblem,
    decmin_root_vector,
    decmin_semimatching,
    load_semimatching_json,
    max_sendable,
    megiddo_discrete,
    parse_digraph,
    parse_megiddo,
)
from decmin.core import sorted_dec, sorted_inc, value_equivalent
from decmin.netflow import Digraph, net_in_flow

import util


def brute_semimatchings(P: SemiMatchingProblem):
    """All feasible multiplicity vectors by exhaustive scan."""
    caps = P.edge_caps if P.edge_caps is not None else np.ones(P.m, np.int64)
    out = []
    for z in itertools.product(*[range(int(c) + 1) for c in caps]):
        degS = np.zeros(P.n_left, dtype=np.int64)
        degT = np.zeros(P.n_right, dtype=np.int64)
        for (s, t), zz in zip(P.edges, z):
            degS[s] += zz
            degT[t] += zz
        if P.t_degrees is not None and not (degT == P.t_degrees).all():
            continue
        if P.lower_right is not None and np.any(degT < P.lower_right):
            continue
        if P.upper_right is not None and np.any(degT > P.upper_right):
            continue
        if P.t_degrees is None and P.lower_right is None and P.upper_right is None:
            if not (degT == 1).all():
                continue
        if P.lower_left is not None and np.any(degS < P.lower_left):
            continue
        if P.upper_left is not None and np.any(degS > P.upper_left):
            continue
        if P.gamma is not None and sum(z) != P.gamma:
            continue
        out.append((np.array(z, np.int64), degS))
    return out


class TestSemiMatching:
    def test_two_user_instance(self):
        P = SemiMatchingProblem(2, 1, [(0, 0), (1, 0)])
        res = decmin_semimatching(P)
        assert value_equivalent(res.left_degrees, (1, 0))
        assert int(res.multiplicity.sum()) == 1

    def test_k22_perfect_matching(self):
        P = SemiMatchingProblem(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
        res = decmin_semimatching(P)
        assert res.left_degrees.tolist() == [1, 1]

    def test_forced_double(self):
        P = SemiMatchingProblem(1, 2, [(0, 0), (0, 1)])
        res = decmin_semimatching(P)
        assert res.left_degrees.tolist() == [2]

    def test_infeasible(self):
        P = SemiMatchingProblem(1, 2, [(0, 0)])
        with pytest.raises(InfeasibleProblemError):
            decmin_semimatching(P)

    def test_harvey_objective_equivalence_random(self):
        rng = np.random.default_rng(3)
        done = 0
        while done < 12:
            nl, nr, edges = util.random_bipartite(rng, 4, 3, 9)
            P = SemiMatchingProblem(nl, nr, edges)
            feas = brute_semimatchings(P)
            if not feas:
                continue
            done += 1
            res = decmin_semimatching(P)
            _, best = util.decmin_rows(np.stack([d for _, d in feas]))
            assert sorted_dec(res.left_degrees) == best
            harvey = lambda d: int(np.sum(d * (d + 1)))
            best_h = min(harvey(d) for _, d in feas)
            assert harvey(res.left_degrees) == best_h
            dec_set = {tuple(sorted_dec(d)) for _, d in feas if sorted_dec(d) == best}
            harvey_set = {
                tuple(sorted_dec(d)) for _, d in feas if harvey(d) == best_h
            }
            assert dec_set == harvey_set

    def test_bounded_gamma_variant_random(self):
        rng = np.random.default_rng(7)
        done = 0
        while done < 10:
            nl, nr, edges = util.random_bipartite(rng, 3, 3, 7)
            P = SemiMatchingProblem(
                nl,
                nr,
                edges,
                lower_right=np.zeros(nr, np.int64),
                upper_right=rng.integers(1, 3, size=nr),
                upper_left=rng.integers(1, 4, size=nl),
                gamma=int(rng.integers(1, 4)),
            )
            feas = brute_semimatchings(P)
            if not feas:
                with pytest.raises(InfeasibleProblemError):
                    decmin_semimatching(P)
                continue
            done += 1
            res = decmin_semimatching(P)
            _, best = util.decmin_rows(np.stack([d for _, d in feas]))
            assert sorted_dec(res.left_degrees) == best
            assert int(res.multiplicity.sum()) == P.gamma

    def test_capacitated_random(self):
        rng = np.random.default_rng(11)
        done = 0
        while done < 8:
            nl, nr, edges = util.random_bipartite(rng, 3, 2, 5)
            P = SemiMatchingProblem(
                nl,
                nr,
                edges,
                t_degrees=rng.integers(0, 3, size=nr),
                edge_caps=rng.integers(1, 3, size=len(edges)),
            )
            feas = brute_semimatchings(P)
            if not feas:
                with pytest.raises(InfeasibleProblemError):
                    decmin_semimatching(P)
                continue
            done += 1
            res = decmin_semimatching(P)
            _, best = util.decmin_rows(np.stack([d for _, d in feas]))
            assert sorted_dec(res.left_degrees) == best

    def test_min_cost_variant_random(self):
        rng = np.random.default_rng(13)
        done = 0
        while done < 10:
            nl, nr, edges = util.random_bipartite(rng, 3, 3, 7)
            cost = rng.integers(0, 5, size=len(edges))
            P = SemiMatchingProblem(nl, nr, edges, cost=cost)
            feas = brute_semimatchings(P)
            if not feas:
                continue
            done += 1
            res = decmin_semimatching(P)
            _, best = util.decmin_rows(np.stack([d for _, d in feas]))
            assert sorted_dec(res.left_degrees) == best
            want = min(
                int(np.dot(z, cost))
                for z, d in feas
                if sorted_dec(d) == best
            )
            assert res.cost == want

    def test_json_loader(self):
        P = load_semimatching_json(
            '{"n_left": 2, "n_right": 1, "edges": [[0,0],[1,0]]}'
        )
        assert P.n_left == 2 and P.m == 2


class TestMegiddo:
    def test_examples(self):
        D = Digraph(3, [(0, 2), (1, 2)], [1, 1])
        res = megiddo_discrete(MegiddoProblem(D, {0, 1}, {2}))
        assert res.outflow.tolist() == [1, 1]
        D2 = Digraph(3, [(0, 2), (0, 2), (1, 2)], [1, 1, 1])
        res2 = megiddo_discrete(MegiddoProblem(D2, {0, 1}, {2}, 2))
        assert res2.outflow.tolist() == [1, 1]
        res0 = megiddo_discrete(MegiddoProblem(D2, {0, 1}, {2}, 0))
        assert res0.outflow.tolist() == [0, 0]
        assert res0.flow.tolist() == [0, 0, 0]

    def test_amount_over_max(self):
        D = Digraph(3, [(0, 2), (1, 2)], [1, 1])
        with pytest.raises(InfeasibleProblemError):
            megiddo_discrete(MegiddoProblem(D, {0, 1}, {2}, 5))

    def test_incmax_brute_random(self):
        rng = np.random.default_rng(17)
        done = 0
        while done < 10:
            n = int(rng.integers(3, 5))
            m = int(rng.integers(2, 6))
            arcs = []
            while len(arcs) < m:
                u, v = rng.choice(n, size=2, replace=False)
                arcs.append((int(u), int(v)))
            caps = rng.integers(0, 3, size=m)
            D = Digraph(n, arcs, caps)
            sources = {0}
            sinks = {n - 1}
            if n > 3:
                sources = {0, 1}
            P = MegiddoProblem(D, sources, sinks)
            limit = max_sendable(P)
            amount = int(rng.integers(0, limit + 1))
            P = MegiddoProblem(D, sources, sinks, amount)
            res = megiddo_discrete(P)
            done += 1
            # verify flow validity
            z = res.flow
            assert np.all(z >= 0) and np.all(z <= caps)
            psi = net_in_flow(D, z)
            srcs = sorted(sources)
            for v in range(n):
                if v in sources:
                    assert psi[v] <= 0
                elif v in sinks:
                    assert psi[v] >= 0
                else:
                    assert psi[v] == 0
            assert (res.outflow == -psi[srcs]).all()
            assert int(res.outflow.sum()) == amount
            # brute force over all integral arc vectors
            best = None
            for zz in itertools.product(*[range(int(c) + 1) for c in caps]):
                psi = net_in_flow(D, np.array(zz, np.int64))
                if any(psi[v] > 0 for v in sources):
                    continue
                if any(psi[v] < 0 for v in sinks):
                    continue
                if any(
                    psi[v] != 0
                    for v in range(n)
                    if v not in sources and v not in sinks
                ):
                    continue
                if -int(psi[srcs].sum()) != amount:
                    continue
                sig = sorted_inc(-psi[srcs])
                best = sig if best is None or sig > best else best
            assert sorted_inc(res.outflow) == best

    def test_parsers(self):
        P = parse_megiddo(
            "p digraph 3 2\na 1 3 2\na 2 3 1\nS: 1 2\nT: 3\nM: 2\n"
        )
        assert P.amount == 2 and P.sources == {0, 1}
        D = parse_digraph("p digraph 2 1\na 1 2 3\n")
        assert D.cap.tolist() == [3]


class TestRootVectors:
    def test_examples(self):
        c3 = Digraph(3, [(0, 1), (1, 2), (2, 0)], [1] * 3)
        m = decmin_root_vector(c3, 1)
        assert value_equivalent(m, (1, 0, 0))
        doubled = Digraph(3, [(0, 1), (1, 2), (2, 0)] * 2, [1] * 6)
        m2 = decmin_root_vector(doubled, 2)
        assert value_equivalent(m2, (1, 1, 0))

    def test_isolated_nodes_infeasible(self):
        lonely = Digraph(2, [(0, 1)], [1])
        m = decmin_root_vector(lonely, 1)
        assert m.tolist() == [1, 0]  # root at 0 spans via the arc
        no_arcs = Digraph(2, [], np.zeros(0, dtype=np.int64))
        with pytest.raises(InfeasibleProblemError):
            decmin_root_vector(no_arcs, 1)

    def test_edmonds_condition_random(self):
        rng = np.random.default_rng(23)
        done = 0
        while done < 10:
            n = int(rng.integers(2, 5))
            m = int(rng.integers(1, 7))
            arcs = []
            while len(arcs) < m:
                u, v = rng.choice(n, size=2, replace=False)
                arcs.append((int(u), int(v)))
            k = int(rng.integers(1, 3))
            D = Digraph(n, arcs, np.ones(m, np.int64))
            # brute feasibility and dec-min over root vectors
            feas = []
            for vec in itertools.product(range(k + 1), repeat=n):
                if sum(vec) != k:
                    continue
                ok = True
                for mask in range(1, 1 << n):
                    X = [v for v in range(n) if mask >> v & 1]
                    indeg = sum(
                        1 for u, v in arcs if v in X and u not in X
                    )
                    if sum(vec[v] for v in X) < k - indeg:
                        ok = False
                        break
                if ok:
                    feas.append(np.array(vec, np.int64))
            done += 1
            if not feas:
                with pytest.raises(InfeasibleProblemError):
                    decmin_root_vector(D, k)
                continue
            got = decmin_root_vector(D, k)
            _, best = util.decmin_rows(np.stack(feas))
            assert sorted_dec(got) == best
            # returned vector satisfies the packing condition everywhere
            for mask in range(1, 1 << n):
                X = [v for v in range(n) if mask >> v & 1]
                indeg = sum(1 for u, v in arcs if v in X and u not in X)
                assert sum(int(got[v]) for v in X) >= k - indeg


def test_membership_respects_left_bounds():
    # pinned degree queries must still honor the S-side degree bounds
    from decmin.applications import SemiMatchingOracle
    from decmin.core import BaseHandle, is_member

    P = SemiMatchingProblem(
        2, 2, [(0, 0), (0, 1), (1, 1)], t_degrees=[1, 1], upper_left=[1, 2]
    )
    handle = BaseHandle(SemiMatchingOracle(P))
    assert is_member(handle, [1, 1])
    assert not is_member(handle, [2, 0])
    res = decmin_semimatching(P)
    assert res.left_degrees.tolist() == [1, 1]
