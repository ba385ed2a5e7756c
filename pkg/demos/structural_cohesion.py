"""
Vertex cuts and social cohesion
===============================

Fragile graphs (a single cut node, or a small cut leaving many pieces)
cannot be socially cohesive. The cut profile gives the connectivity kappa,
the smallest piece chi and the largest piece count mu.
"""

from cohesion_lab import Graph, complete_bipartite, cut_profile, is_socially_cohesive, star_graph
from cohesion_lab.characterizations import structural_certificate, structural_semi_test
from cohesion_lab.graph import from_mask

bowtie = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])

for name, g in [("bowtie", bowtie), ("star", star_graph(4)),
                ("K_2,3", complete_bipartite(2, 3)), ("K_2,4", complete_bipartite(2, 4))]:
    p = cut_profile(g)
    verdict = structural_semi_test(g, p)
    print(f"{name:6s} kappa={p.kappa} chi={p.chi} mu={p.mu} semi-test={verdict.value:12s} "
          f"exact={is_socially_cohesive(g, quick=False).status.value}")

# the blocking set behind the bowtie verdict is a piece left over by the cut node
print(sorted(from_mask(structural_certificate(bowtie))))
