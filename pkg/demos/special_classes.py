"""
Closed-form rules for stars and complete bipartite graphs
=========================================================

Stars, K_{n,n} and clan structures of K_{m,n} have exact stability rules.
Here they are checked against the exhaustive solver.
"""

import itertools

from cohesion_lab import GroupStructure, complete_bipartite, is_core_stable, star_graph
from cohesion_lab.characterizations import kmn_clan_stable, knn_stable, star_stable

# a star is stable when the centre keeps at least half of its tails
m = 6
g = star_graph(m)
for tails in range(m + 1):
    chosen = list(range(1, tails + 1))
    w = GroupStructure.of(m + 1, [[0, *chosen]] + [[u] for u in range(tails + 1, m + 1)])
    print(f"{tails} tails with the centre: rule={star_stable(m, w)} solver={is_core_stable(g, w).cohesive}")

# K_{3,3}: stable exactly when every coalition is balanced between the sides
k33 = complete_bipartite(3, 3)
for part in ([[0, 3], [1, 4], [2, 5]], [[0, 1, 3, 4], [2, 5]], [[0, 3, 4], [1, 5], [2]]):
    w = GroupStructure.of(6, part)
    print(part, knn_stable(3, w), is_core_stable(k33, w).cohesive)

# clans of K_{4,2}: the clan needs the whole small side and enough of the large side
k42 = complete_bipartite(4, 2)
for extra in (e for r in range(1, 5) for e in itertools.combinations(range(4), r)):
    clan = [*extra, 4, 5]
    w = GroupStructure.of(6, [clan] + [[u] for u in range(4) if u not in extra])
    print(clan, kmn_clan_stable(4, 2, w), is_core_stable(k42, w).cohesive)
