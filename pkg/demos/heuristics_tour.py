"""
Community detection versus greedy neighbourhoods
================================================

Louvain communities and the greedy average-payoff rule both propose
coalitions. Any coalition that blocks the grand coalition proves the
network is not socially cohesive.
"""

import numpy as np

from cohesion_lab import datasets
from cohesion_lab.game import payoffs
from cohesion_lab.heuristics import AP, LM, group_structure, heuristic_cohesion_test, improved_nodes

g = datasets.load("karate")
print(g.n, "members,", g.num_edges, "ties")

for method in (LM, AP):
    w = group_structure(g, method)
    pay = np.array([float(p) for p in payoffs(g, w)])
    verdict = heuristic_cohesion_test(g, method)
    print(f"{method}: {len(w)} coalitions, median payoff {np.median(pay):.3f}, "
          f"{improved_nodes(g, w)}/{g.n} better off than together, verdict {verdict.status.value}")
