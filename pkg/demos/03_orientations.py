"""Graph orientation solvers: egalitarian (dec-min) orientations, degree
bounds, exact degree specifications, connectivity requirements, edge
capacities, and cheapest dec-min orientations.

Run:  python demos/03_orientations.py
"""

from decmin.orientation import (
    Graph,
    capacitated_decmin_orientation,
    cheapest_decmin_orientation_bounded,
    decmin_korient,
    decmin_orientation,
    decmin_orientation_bounded,
    decmin_orientation_minT,
    decmin_orientation_tspec,
    orient_with_indegrees,
    orientation_canonical,
    orientation_cost,
)

# ---------------------------------------------------------------------------
# 1. orientations with a prescribed in-degree vector
# ---------------------------------------------------------------------------
path = Graph(3, [(0, 1), (1, 2)])
o = orient_with_indegrees(path, [0, 1, 1])
print("path with in-degrees (0,1,1):", o.arcs())
print()

# ---------------------------------------------------------------------------
# 2. dec-min orientations: reverse any dipath whose end in-degree beats its
#    start in-degree by two or more, until none exists
# ---------------------------------------------------------------------------
wheelish = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (1, 3)])
o = decmin_orientation(wheelish)
print("dec-min in-degrees:", o.indeg, "(7 edges over 5 nodes)")
D = orientation_canonical(wheelish, o)
print("essential values:", D.betas, " partition:",
      [sorted(s) for s in D.partition])
print()

# a density-split example: K4 plus a far-away edge gives two blocks
import itertools
k4_plus = Graph(6, list(itertools.combinations(range(4), 2)) + [(4, 5)])
ok4 = decmin_orientation(k4_plus)
Dk4 = orientation_canonical(k4_plus, ok4)
print("K4 + edge in-degrees:", ok4.indeg)
print("two canonical blocks:", [sorted(s) for s in Dk4.partition],
      "values", Dk4.betas)
print()

# ---------------------------------------------------------------------------
# 3. bounds, exact specifications, and minimizing a node set first
# ---------------------------------------------------------------------------
print("bounded (node 1 must take both edges):",
      decmin_orientation_bounded(path, [0, 2, 0], None).indeg)
print("T-specified (in-degree 2 at node 1):",
      decmin_orientation_tspec(path, [1], [2]).indeg)
print("minimize in-degree of {1} first:",
      decmin_orientation_minT(path, None, None, {1}).indeg)
print()

# ---------------------------------------------------------------------------
# 4. connectivity: dec-min among strongly connected orientations
# ---------------------------------------------------------------------------
c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
print("strong dec-min of a 4-cycle:", decmin_korient(c4, 1).indeg)
doubled = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)] * 2)
print("2-edge-connected dec-min of the doubled 4-cycle:",
      decmin_korient(doubled, 2).indeg)
print()

# ---------------------------------------------------------------------------
# 5. capacities: each edge stands for ell(e) parallel copies, solved
#    without expanding them
# ---------------------------------------------------------------------------
heavy = Graph(2, [(0, 1)], ell=[5])
cap = capacitated_decmin_orientation(heavy)
print("single edge of capacity 5 splits:", sorted(cap.indeg.tolist()))
grid = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)], ell=[3, 1, 3, 1])
print("capacitated 4-cycle in-degrees:",
      capacitated_decmin_orientation(grid).indeg)
print()

# ---------------------------------------------------------------------------
# 6. cheapest dec-min orientation under per-direction arc costs
# ---------------------------------------------------------------------------
cost = [(0, 0)] * 4
cost[0] = (0, 9)  # orienting edge (0, 1) with head 1 is expensive
o = cheapest_decmin_orientation_bounded(c4, cost=cost)
print("cheapest dec-min rotation of the 4-cycle:", o.arcs(),
      "cost", orientation_cost(o, cost))
