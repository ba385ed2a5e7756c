"""
Popularity payoffs and blocking sets
====================================

Each player's payoff is its share of ties inside its own coalition. A set
blocks a partition when every member is strictly better off inside it.
"""

from cohesion_lab import Graph, GroupStructure, is_blocking, is_socially_cohesive, popularity

# two triangles abc and def held together by the ties ae and cd
g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 4), (2, 3)],
                     labels=list("abcdef"))

everyone = range(g.n)
for u in everyone:
    print(g.label(u), popularity(g, u, everyone))

# inside its own triangle every node gets 2/3, which beats 1/2 and 1/3
grand = GroupStructure.grand(g.n)
print("abc blocks the grand coalition:", is_blocking(g, {0, 1, 2}, grand))

verdict = is_socially_cohesive(g)
print(verdict.to_json(g))

# one more tie across the triangles is enough to keep everybody together
print(is_socially_cohesive(g.add_edge(0, 3)).status.value)
