"""
Universal nodes and the clique reduction
========================================

When some players know everybody, only subsets of the others can block.
Padding a graph with isolated nodes and enough universal nodes turns
"has a k-clique" into "is not socially cohesive".
"""

from cohesion_lab import complete_graph, cycle_graph, path_graph
from cohesion_lab.characterizations import lambda_value, ndu2_cohesive, turan_sufficient
from cohesion_lab.graph import clique_number
from cohesion_lab.reduction import build_instance, verify_reduction

for name, g in [("K3", complete_graph(3)), ("P3", path_graph(3)), ("C5", cycle_graph(5))]:
    inst = build_instance(g, 3)
    verdict = ndu2_cohesive(inst.h, inst.partition)
    print(f"{name}: omega={clique_number(g)} |V1|={len(inst.v1)} |V2|={len(inst.v2)} "
          f"H is {verdict.status.value}; sufficient test says {turan_sufficient(inst.h, inst.partition).value}")

# for the triangle, each member's lambda exceeds the number of universal nodes
inst = build_instance(complete_graph(3), 3)
print([lambda_value(inst.h, inst.partition, u, {0, 1, 2}) for u in range(3)], len(inst.v1))

print(all(verify_reduction(g, k) for g in (complete_graph(4), cycle_graph(4)) for k in (3, 4)))
